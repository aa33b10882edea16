use quivinj::{enumerate_presentations, render, verify_equivalences, ClassificationResult, CorpusBounds};

fn bounds(v: usize, a: usize, l: usize, r: usize) -> CorpusBounds {
    CorpusBounds::new(v, a, l, r).unwrap()
}

#[test]
fn corpus_sizes_are_frozen() {
    for (b, size) in [
        (bounds(1, 0, 2, 0), 1),
        (bounds(1, 1, 2, 1), 2),
        (bounds(2, 1, 2, 1), 3),
        (bounds(2, 2, 2, 2), 10),
        (bounds(2, 3, 3, 3), 141),
        (bounds(3, 3, 3, 3), 275),
    ] {
        assert_eq!(enumerate_presentations(&b).len(), size, "{b:?}");
    }
}

#[test]
fn enumeration_is_deterministic_and_duplicate_free() {
    let b = bounds(3, 3, 3, 3);
    let first: Vec<String> = enumerate_presentations(&b).iter().map(render).collect();
    let second: Vec<String> = enumerate_presentations(&b).iter().map(render).collect();
    assert_eq!(first, second);
    let bodies: std::collections::BTreeSet<&str> = first.iter().map(|t| t.split_once('{').unwrap().1).collect();
    assert_eq!(bodies.len(), first.len());
}

#[test]
fn self_injective_instances_up_to_three_vertices() {
    let report = verify_equivalences(&bounds(3, 3, 3, 3), 2);
    assert!(report.disagreements.is_empty(), "{:#?}", report.disagreements);
    let shapes: Vec<ClassificationResult> = report
        .self_injective_instances
        .iter()
        .filter_map(|s| s.classification.clone())
        .collect();
    let mut expected = vec![ClassificationResult::IsK];
    for n in 1..=3 {
        for l in 2..=3 {
            expected.push(ClassificationResult::Cyclic { n, l });
        }
    }
    assert_eq!(shapes, expected);
}

#[test]
fn report_does_not_depend_on_jobs() {
    let b = bounds(2, 3, 3, 3);
    assert_eq!(verify_equivalences(&b, 1).to_json(), verify_equivalences(&b, 3).to_json());
}
