//! Acceptance criteria, one PASS/FAIL line each.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quivinj::fixtures;
use quivinj::oracle::{self, hom_space, representation_of_injective, representation_of_projective, simple_representation};
use quivinj::{
    build_projective_tree, build_simple_tree, decide_self_injective, enumerate_graph_maps, is_nakayama_algebra,
    leaf_socle, nakayama_permutation, parse, path_basis, render, verify_equivalences, ClassificationResult,
    CorpusBounds, VerificationReport, VertexId,
};

type Check = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn quivinj(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quivinj"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn v(n: usize) -> VertexId {
    VertexId(n)
}

/// Parses the indented tree outline into (depth, arrow, vertex) rows.
fn outline_rows(text: &str) -> Vec<(usize, String, usize)> {
    let mut rows = Vec::new();
    for line in text.lines().skip(1) {
        let depth = (line.len() - line.trim_start().len()) / 2;
        let body = line.trim_start();
        let (arrow, node) = match body.split_once(" -> ") {
            Some((a, n)) => (a.to_string(), n),
            None => (String::new(), body),
        };
        let vertex = node
            .trim_end_matches(')')
            .rsplit(", ")
            .next()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0);
        rows.push((depth, arrow, vertex));
    }
    rows
}

fn figure_tree() -> Check {
    let start = Instant::now();
    let file = fixture("fig1.quiver");
    let (code, out, err) = quivinj(&["tree", file.to_str().unwrap(), "--vertex", "1"]);
    let elapsed = start.elapsed();
    ensure(code == 0, format!("exit {code}: {err}"))?;
    let rows = outline_rows(&out);
    ensure(rows.len() == 6, format!("{} vertices", rows.len()))?;
    ensure(rows[0] == (0, String::new(), 1), "root is not over 1")?;
    let depth1: Vec<_> = rows.iter().filter(|r| r.0 == 1).collect();
    ensure(depth1.len() == 2 && depth1.iter().all(|r| r.2 == 2), "depth-1 vertices are not two copies of 2")?;
    let leaves: Vec<_> = rows.iter().filter(|r| r.0 == 2).collect();
    ensure(leaves.len() == 3 && leaves.iter().all(|r| r.2 == 3), "leaves are not three copies of 3")?;
    let beta = rows.iter().position(|r| r.1 == "beta").ok_or("no beta child")?;
    let under_beta: Vec<&str> = rows[beta + 1..]
        .iter()
        .take_while(|r| r.0 > 1)
        .map(|r| r.1.as_str())
        .collect();
    ensure(under_beta == ["gamma"], format!("under beta: {under_beta:?}"))?;
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("6 vertices, beta-child has only gamma, {elapsed:.0?}"))
}

fn fig1_numbers() -> Check {
    let start = Instant::now();
    let p = fixtures::fig1();
    let q = p.quiver();
    let basis = path_basis(&p).map_err(|e| e.to_string())?;
    ensure(basis.dimension() == 10, format!("dim = {}", basis.dimension()))?;
    ensure(basis.dimension_vector_from(v(1)) == [1, 2, 3], "P(1) dimension vector")?;

    let t1 = build_projective_tree(&p, v(1)).map_err(|e| e.to_string())?;
    let p1 = representation_of_projective(&p, v(1)).map_err(|e| e.to_string())?;
    ensure(p1.total_dimension() == 6 && p1.dims() == [1, 2, 3], "oracle P(1)")?;
    let socle = leaf_socle(&t1);
    ensure(socle.entries.len() == 1 && socle.multiplicity(v(3)) == 3, "soc P(1) from leaves")?;
    ensure(oracle::socle(q, &p1) == [0, 0, 3], "oracle soc P(1)")?;

    let s3 = build_simple_tree(&p, v(3)).map_err(|e| e.to_string())?;
    let graph = enumerate_graph_maps(&s3, &t1).map_err(|e| e.to_string())?.dimension();
    let exact = hom_space(q, &simple_representation(&p, v(3)).unwrap(), &p1).dimension();
    ensure(graph == 3 && exact == 3, format!("Hom(S(3), P(1)): {graph} graph maps, oracle {exact}"))?;

    let t2 = build_projective_tree(&p, v(2)).map_err(|e| e.to_string())?;
    let graph = enumerate_graph_maps(&t2, &t1).map_err(|e| e.to_string())?.dimension();
    let exact = hom_space(q, &representation_of_projective(&p, v(2)).unwrap(), &p1).dimension();
    ensure(graph == 2 && exact == 2, format!("Hom(P(2), P(1)): {graph} graph maps, oracle {exact}"))?;

    let verdict = decide_self_injective(&p, true).map_err(|e| e.to_string())?;
    let conditions = [verdict.cond1_oracle, verdict.cond2, verdict.cond3, verdict.cond4];
    ensure(conditions == [Some(false); 4], format!("conditions {conditions:?}"))?;
    ensure(verdict.final_verdict == Some(false), "final verdict")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("dim 10, (1,2,3), 3 S(3), Hom dims 3 and 2, not self-injective, {elapsed:.0?}"))
}

fn nak2() -> Check {
    let start = Instant::now();
    let p = fixtures::nak2();
    let q = p.quiver();
    let verdict = decide_self_injective(&p, true).map_err(|e| e.to_string())?;
    let conditions = [verdict.cond1_oracle, verdict.cond2, verdict.cond3, verdict.cond4];
    ensure(conditions == [Some(true); 4], format!("conditions {conditions:?}"))?;
    let nu = nakayama_permutation(&p).map_err(|e| e.to_string())?.permutation;
    ensure(nu == Some(vec![v(2), v(1)]), format!("nu = {nu:?}"))?;
    // i + (l - 1) mod 2 with l = 2
    let shifted: Vec<VertexId> = (1..=2).map(|i| v((i - 1 + 1) % 2 + 1)).collect();
    ensure(nu.as_deref() == Some(&shifted[..]), "nu is not the shift by l - 1")?;
    for (i, j) in [(1, 2), (2, 1)] {
        let proj = representation_of_projective(&p, v(i)).unwrap();
        let inj = representation_of_injective(&p, v(j)).unwrap();
        ensure(oracle::is_isomorphic(q, &proj, &inj), format!("P({i}) is not I({j})"))?;
    }
    ensure(verdict.oracle_permutation == Some(vec![v(2), v(1)]), "oracle bijection")?;
    ensure(is_nakayama_algebra(&p).map_err(|e| e.to_string())?, "not a Nakayama algebra")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("all conditions true, nu = (1 -> 2, 2 -> 1), {elapsed:.0?}"))
}

fn equivalence(report: &VerificationReport) -> Check {
    ensure(report.instances_valid > 0, "empty corpus")?;
    ensure(
        report.agreements + report.disagreements.len() == report.instances_valid,
        "counts do not add up",
    )?;
    ensure(
        report.disagreements.is_empty(),
        format!("{} disagreements, first: {:?}", report.disagreements.len(), report.disagreements.first()),
    )?;
    ensure(
        report.elapsed <= Duration::from_secs(300),
        format!("took {:.1?}", report.elapsed),
    )?;
    Ok(format!(
        "{} instances, 0 disagreements, {:.1?}",
        report.instances_valid, report.elapsed
    ))
}

fn cross_check(name: &str, count: &quivinj::harness::CheckCount) -> Check {
    ensure(count.checked > 0, format!("no {name} checked"))?;
    ensure(count.failed == 0, format!("{} of {} {name} mismatched", count.failed, count.checked))?;
    Ok(format!("{} {name} checked, 0 mismatches", count.checked))
}

fn classification(report: &VerificationReport) -> Check {
    cross_check("self-injective shapes", &report.cross_checks.classification_shape)?;
    for s in &report.self_injective_instances {
        ensure(
            matches!(
                s.classification,
                Some(ClassificationResult::IsK) | Some(ClassificationResult::Cyclic { .. })
            ),
            format!("self-injective but {:?}:\n{}", s.classification, s.presentation),
        )?;
    }
    // The converse (K or cyclic implies self-injective) is the agreement of
    // condition (4) with the others, which criterion 4 covers.
    ensure(report.disagreements.is_empty(), "conditions disagree somewhere")?;
    let loops = report
        .self_injective_instances
        .iter()
        .filter(|s| matches!(s.classification, Some(ClassificationResult::Cyclic { n: 1, .. })))
        .count();
    ensure(loops == 0 || !report.notes.is_empty(), "single-loop cases are not reported")?;
    Ok(format!(
        "{} self-injective instances, all K or cyclic; {loops} single-loop C_1 cases reported in notes",
        report.self_injective_instances.len()
    ))
}

fn nakayama(report: &VerificationReport) -> Check {
    let c = &report.cross_checks.nakayama_algebra;
    ensure(
        c.checked == report.self_injective_instances.len(),
        "not every self-injective instance was checked",
    )?;
    cross_check("self-injective instances", c)
}

fn zero_one(report: &VerificationReport) -> Check {
    let c = &report.cross_checks.restriction_zero_one;
    ensure(c.checked == report.instances_valid, "not every instance was checked")?;
    cross_check("restriction matrices", c)
}

fn robustness() -> Check {
    let kx = fixture("kx.quiver");
    let (code, _, err) = quivinj(&["basis", kx.to_str().unwrap()]);
    ensure(code == 1, format!("kx exit {code}"))?;
    ensure(err.contains("infinite-dimensional"), format!("kx diagnostic: {err}"))?;

    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("acceptance-bad.quiver");
    std::fs::write(&bad, "quiver bad {\n  vertices: 1 2;\n  arrows: a: 1 -> 2\n  relations:;\n}\n").unwrap();
    let (code, _, err) = quivinj(&["check", bad.to_str().unwrap()]);
    ensure(code == 1 && err.contains(":4:3:"), format!("syntax error: exit {code}, {err}"))?;

    let unknown = dir.join("acceptance-unknown.quiver");
    std::fs::write(
        &unknown,
        "quiver bad {\n  vertices: 1 2;\n  arrows: a: 1 -> 2;\n  relations: b*a;\n}\n",
    )
    .unwrap();
    let (code, _, err) = quivinj(&["check", unknown.to_str().unwrap()]);
    ensure(code == 1 && err.contains(":4:14:"), format!("semantic error: exit {code}, {err}"))?;

    for text in fixtures::ALL {
        let p = parse(text).map_err(|e| e.to_string())?;
        ensure(render(&p) == *text, format!("round trip changed:\n{text}"))?;
    }
    Ok("kx exits 1 as infinite-dimensional, errors located, fixtures round-trip".into())
}

fn main() -> ExitCode {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let bounds = CorpusBounds::new(3, 4, 3, 4).unwrap();
    let report = verify_equivalences(&bounds, jobs);
    let c = &report.cross_checks;

    let results: Vec<(&str, Check)> = vec![
        ("figure tree T_1 over FIG1", figure_tree()),
        ("FIG1 dimensions, socle, Hom and verdict", fig1_numbers()),
        ("NAK2 self-injective with nu = shift", nak2()),
        ("equivalence of conditions on corpus (3,4,3,4)", equivalence(&report)),
        (
            "graph-map counts equal oracle Hom dimensions",
            cross_check("pairs", &c.hom_dimensions),
        ),
        ("leaf socles equal oracle socles", cross_check("projectives", &c.socles)),
        ("self-injective shapes are K or cyclic", classification(&report)),
        ("self-injective implies Nakayama algebra", nakayama(&report)),
        ("restriction matrices are 0/1", zero_one(&report)),
        ("robustness: KX, located errors, round trip", robustness()),
    ];
    let mut failed = 0;
    for (k, (name, result)) in results.iter().enumerate() {
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
