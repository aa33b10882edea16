//! The `quivinj` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::classify::{evaluate, structural_classification, ConditionSet, Verdict};
use crate::dsl::{parse, render, Dot};
use crate::error::{Error, Result};
use crate::graph_hom::enumerate_graph_maps;
use crate::harness::{enumerate_presentations, verify_equivalences, CorpusBounds};
use crate::oracle::{hom_space, representation_of_projective, simple_representation};
use crate::quiver::{path_basis, MonomialPresentation, VertexId};
use crate::tree::{build_projective_tree, build_simple_tree, leaf_socle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DISAGREEMENT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "quivinj", version, about = "Self-injectivity checks for monomial bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Presentation file.
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide self-injectivity.
    Check {
        #[command(flatten)]
        input: Input,
        /// 1, 2, 3, 4 or all.
        #[arg(long, default_value = "all")]
        condition: String,
        /// Skip the linear-algebra check of condition (1).
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the path basis.
    Basis {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print the tree of the projective at a vertex.
    Tree {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Socles of the indecomposable projectives.
    Socle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Graph maps between tree modules.
    Hom {
        #[command(flatten)]
        input: Input,
        /// `P I` or `S I`.
        #[arg(long, num_args = 2, value_names = ["KIND", "I"])]
        from: Vec<String>,
        /// `P J`.
        #[arg(long, num_args = 2, value_names = ["KIND", "J"])]
        to: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Structural classification.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate small presentations, optionally verifying every condition.
    Enumerate {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_arrows: usize,
        #[arg(long)]
        max_rel_len: usize,
        #[arg(long)]
        max_rels: usize,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// Outcome of a subcommand that ran to completion.
enum Done {
    Ok,
    Disagreement,
}

struct Io<'a> {
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn json(&mut self, v: &serde_json::Value) {
        self.line(serde_json::to_string_pretty(v).expect("json value"));
    }
}

/// Runs the command line. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    let mut io = Io { out };
    match dispatch(cli.command, &mut io) {
        Ok(Done::Ok) => EXIT_OK,
        Ok(Done::Disagreement) => EXIT_DISAGREEMENT,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INVALID
        }
    }
}

fn load(input: &Input) -> std::result::Result<MonomialPresentation, String> {
    let text = std::fs::read_to_string(&input.file).map_err(|e| format!("{}: {e}", input.file.display()))?;
    parse(&text).map_err(|e| format!("{}:{e}", input.file.display()))
}

fn vertex(p: &MonomialPresentation, v: usize) -> Result<VertexId> {
    let v = VertexId(v);
    p.check_vertex(v)?;
    Ok(v)
}

fn dispatch(command: Command, io: &mut Io<'_>) -> std::result::Result<Done, String> {
    let show = |e: Error| e.to_string();
    match command {
        Command::Check {
            input,
            condition,
            no_oracle,
            json,
        } => {
            let p = load(&input)?;
            let conditions = match condition.as_str() {
                "all" => ConditionSet::all(!no_oracle),
                c => {
                    let set = c
                        .parse::<u8>()
                        .ok()
                        .and_then(ConditionSet::only)
                        .ok_or_else(|| format!("unknown condition `{c}`; expected 1, 2, 3, 4 or all"))?;
                    if set.oracle && no_oracle {
                        return Err("condition 1 is the oracle; it cannot be combined with --no-oracle".into());
                    }
                    set
                }
            };
            let verdict = evaluate(&p, conditions).map_err(show)?;
            if json {
                io.json(&verdict.to_json(&p));
            } else {
                print_verdict(io, &p, &verdict);
            }
            Ok(if verdict.agreement { Done::Ok } else { Done::Disagreement })
        }
        Command::Basis { input, json } => {
            let p = load(&input)?;
            let basis = path_basis(&p).map_err(show)?;
            let q = p.quiver();
            if json {
                let paths: Vec<_> = basis
                    .paths()
                    .iter()
                    .map(|path| {
                        json!({
                            "source": path.source(),
                            "target": path.target(),
                            "path": path.display(q).to_string(),
                        })
                    })
                    .collect();
                let vectors: Vec<_> = p.vertices().map(|i| basis.dimension_vector_from(i)).collect();
                io.json(&json!({
                    "presentation": p.name(),
                    "dimension": basis.dimension(),
                    "projective_dimension_vectors": vectors,
                    "paths": paths,
                }));
            } else {
                io.line(format!("dim = {}", basis.dimension()));
                for i in p.vertices() {
                    let names: Vec<String> = basis.paths_from(i).map(|path| path.display(q).to_string()).collect();
                    io.line(format!(
                        "P({i}) {:?}: {}",
                        basis.dimension_vector_from(i),
                        names.join(", ")
                    ));
                }
            }
            Ok(Done::Ok)
        }
        Command::Tree { input, vertex: v, dot } => {
            let p = load(&input)?;
            let i = vertex(&p, v).map_err(show)?;
            let tree = build_projective_tree(&p, i).map_err(show)?;
            if dot {
                io.line(tree.to_dot().trim_end());
            } else {
                io.line(tree.outline().trim_end());
            }
            Ok(Done::Ok)
        }
        Command::Socle { input, vertex: v, json } => {
            let p = load(&input)?;
            path_basis(&p).map_err(show)?;
            let vertices: Vec<VertexId> = match v {
                Some(v) => vec![vertex(&p, v).map_err(show)?],
                None => p.vertices().collect(),
            };
            let mut rows = Vec::new();
            for i in vertices {
                let socle = leaf_socle(&build_projective_tree(&p, i).map_err(show)?);
                if json {
                    let entries: Vec<_> = socle
                        .entries
                        .iter()
                        .map(|(s, m)| json!({"simple": s, "multiplicity": m}))
                        .collect();
                    rows.push(json!({
                        "vertex": i,
                        "socle": entries,
                        "dimension_vector": socle.dimension_vector(p.vertex_count()),
                    }));
                } else {
                    let terms: Vec<String> = socle
                        .entries
                        .iter()
                        .map(|(s, m)| if *m == 1 { format!("S({s})") } else { format!("{m} S({s})") })
                        .collect();
                    io.line(format!("soc P({i}) = {}", terms.join(" + ")));
                }
            }
            if json {
                io.json(&serde_json::Value::Array(rows));
            }
            Ok(Done::Ok)
        }
        Command::Hom { input, from, to, json } => {
            let p = load(&input)?;
            path_basis(&p).map_err(show)?;
            let (from_kind, from_v) = module_arg(&from, &["P", "S"])?;
            let (_, to_v) = module_arg(&to, &["P"])?;
            let i = vertex(&p, from_v).map_err(show)?;
            let j = vertex(&p, to_v).map_err(show)?;
            let source = if from_kind == "S" {
                build_simple_tree(&p, i)
            } else {
                build_projective_tree(&p, i)
            }
            .map_err(show)?;
            let target = build_projective_tree(&p, j).map_err(show)?;
            let maps = enumerate_graph_maps(&source, &target).map_err(show)?;
            let x = if from_kind == "S" {
                simple_representation(&p, i)
            } else {
                representation_of_projective(&p, i)
            }
            .map_err(show)?;
            let y = representation_of_projective(&p, j).map_err(show)?;
            let exact = hom_space(p.quiver(), &x, &y).dimension();
            let label = format!("Hom({from_kind}({i}), P({j}))");
            let described: Vec<Vec<(String, String)>> = maps
                .maps
                .iter()
                .map(|g| {
                    g.sigma
                        .iter()
                        .map(|&(a, b)| (source.tree().name(a).to_string(), target.tree().name(b).to_string()))
                        .collect()
                })
                .collect();
            if json {
                io.json(&json!({
                    "hom": label,
                    "dimension": maps.dimension(),
                    "oracle_dimension": exact,
                    "maps": described,
                }));
            } else {
                io.line(format!("dim {label} = {}", maps.dimension()));
                for (k, g) in described.iter().enumerate() {
                    let pairs: Vec<String> = g.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                    io.line(format!("  f{}: {}", k + 1, pairs.join(", ")));
                }
            }
            if exact != maps.dimension() {
                io.line(format!("oracle dimension {exact} differs from the graph-map count"));
                return Ok(Done::Disagreement);
            }
            Ok(Done::Ok)
        }
        Command::Classify { input, json } => {
            let p = load(&input)?;
            path_basis(&p).map_err(show)?;
            let shape = structural_classification(&p).map_err(show)?;
            if json {
                io.json(&json!({ "presentation": p.name(), "classification": shape }));
            } else {
                io.line(shape.to_string());
            }
            Ok(Done::Ok)
        }
        Command::Enumerate {
            max_vertices,
            max_arrows,
            max_rel_len,
            max_rels,
            verify,
            jobs,
            json,
        } => {
            let bounds = CorpusBounds::new(max_vertices, max_arrows, max_rel_len, max_rels).map_err(show)?;
            let jobs = jobs
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
                .max(1);
            if !verify {
                let corpus = enumerate_presentations(&bounds);
                if json {
                    let texts: Vec<String> = corpus.iter().map(render).collect();
                    io.json(&json!({ "bounds": bounds, "count": corpus.len(), "presentations": texts }));
                } else {
                    for p in &corpus {
                        io.line(render(p).trim_end());
                    }
                    io.line(format!("{} presentations", corpus.len()));
                }
                return Ok(Done::Ok);
            }
            let report = verify_equivalences(&bounds, jobs);
            if json {
                io.line(report.to_json());
            } else {
                io.line(format!("instances: {}", report.instances_valid));
                io.line(format!("agreements: {}", report.agreements));
                io.line(format!("disagreements: {}", report.disagreements.len()));
                io.line(format!("self-injective: {}", report.self_injective_instances.len()));
                let c = &report.cross_checks;
                for (name, count) in [
                    ("hom dimensions", &c.hom_dimensions),
                    ("socles", &c.socles),
                    ("push-down", &c.push_down),
                    ("restriction 0/1", &c.restriction_zero_one),
                    ("classification shape", &c.classification_shape),
                    ("permutation shift", &c.permutation_shift),
                    ("nakayama algebra", &c.nakayama_algebra),
                ] {
                    io.line(format!("{name}: {} checked, {} failed", count.checked, count.failed));
                }
                for d in &report.disagreements {
                    io.line(format!("DISAGREEMENT\n{}{}", d.presentation, d.problems.join("\n")));
                }
                for note in &report.notes {
                    io.line(format!("note: {note}"));
                }
                io.line(format!("elapsed: {:.2?}", report.elapsed));
            }
            Ok(if report.disagreements.is_empty() {
                Done::Ok
            } else {
                Done::Disagreement
            })
        }
    }
}

fn module_arg(values: &[String], kinds: &[&str]) -> std::result::Result<(String, usize), String> {
    let [kind, v] = values else {
        return Err("expected a module as KIND VERTEX".into());
    };
    if !kinds.contains(&kind.as_str()) {
        return Err(format!("module kind `{kind}` is not one of {}", kinds.join(", ")));
    }
    let v = v.parse().map_err(|_| format!("`{v}` is not a vertex number"))?;
    Ok((kind.clone(), v))
}

fn print_verdict(io: &mut Io<'_>, p: &MonomialPresentation, v: &Verdict) {
    let show = |b: Option<bool>| b.map(|b| b.to_string());
    io.line(format!("presentation: {}", p.name()));
    if let Some(c1) = show(v.cond1_oracle) {
        let detail = match &v.oracle_permutation {
            Some(pi) => format!("  P(i) = I(pi(i)), pi = {}", mapping(pi)),
            None => String::new(),
        };
        io.line(format!("c1 (regular module injective): {c1}{detail}"));
    }
    if let (Some(c2), Some(report)) = (show(v.cond2), &v.nakayama) {
        let detail = match (&report.permutation, &report.failure) {
            (Some(nu), _) => format!("  nu = {}", mapping(nu)),
            (None, Some(f)) => format!("  {}", serde_json::to_string(f).expect("json")),
            _ => String::new(),
        };
        io.line(format!("c2 (Nakayama permutation): {c2}{detail}"));
    }
    if let (Some(c3), Some(r)) = (show(v.cond3), &v.restriction) {
        io.line(format!(
            "c3 (socle-injective): {c3}  rank {} of {} leaf pairs",
            r.rank, r.rows
        ));
    }
    if let (Some(c4), Some(shape)) = (show(v.cond4), &v.classification) {
        io.line(format!("c4 (K or truncated cycle): {c4}  {shape}"));
    }
    for note in &v.notes {
        io.line(format!("note: {note}"));
    }
    match v.final_verdict {
        Some(true) => io.line("final: self-injective"),
        Some(false) => io.line("final: not self-injective"),
        None => io.line("final: DISAGREEMENT"),
    }
}

fn mapping(pi: &[VertexId]) -> String {
    let parts: Vec<String> = pi.iter().enumerate().map(|(k, j)| format!("{} -> {j}", k + 1)).collect();
    format!("({})", parts.join(", "))
}
