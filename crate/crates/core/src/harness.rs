//! Exhaustive enumeration of small presentations and the equivalence
//! verifier run over them.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::Serialize;

use crate::classify::{evaluate, is_nakayama_algebra, ClassificationResult, ConditionSet, Verdict};
use crate::dsl::render;
use crate::error::{Error, Result};
use crate::graph_hom::enumerate_graph_maps;
use crate::oracle::{hom_space, is_isomorphic_indecomposable, representation_of_projective, simple_representation, socle};
use crate::quiver::{Arrow, ArrowId, MonomialPresentation, Path, Quiver, VertexId};
use crate::tree::{build_projective_tree, build_simple_tree, leaf_socle, push_down};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusBounds {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_relation_length: usize,
    pub max_relations: usize,
}

impl CorpusBounds {
    /// Arrow and relation bounds may be zero; at least one vertex and a
    /// relation length of at least two are required.
    pub fn new(max_vertices: usize, max_arrows: usize, max_relation_length: usize, max_relations: usize) -> Result<Self> {
        if max_vertices == 0 {
            return Err(Error::Bounds("max-vertices must be at least 1".into()));
        }
        if max_relation_length < 2 {
            return Err(Error::Bounds("max-rel-len must be at least 2".into()));
        }
        Ok(CorpusBounds {
            max_vertices,
            max_arrows,
            max_relation_length,
            max_relations,
        })
    }
}

/// A quiver on `0..n` with arrows sorted by `(source, target)`.
#[derive(Clone, Debug)]
struct Shape {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

impl Shape {
    fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for &(s, t) in &self.arrows {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.n).all(|v| find(&mut parent, v) == root)
    }

    fn relabelled(&self, perm: &[usize]) -> Vec<(usize, usize)> {
        let mut image: Vec<_> = self.arrows.iter().map(|&(s, t)| (perm[s], perm[t])).collect();
        image.sort_unstable();
        image
    }

    /// Arrow maps `k -> k'` induced by vertex permutations fixing the arrow
    /// multiset, combined with every reordering of parallel arrows.
    fn symmetries(&self) -> Vec<Vec<usize>> {
        let m = self.arrows.len();
        let mut out = Vec::new();
        for perm in (0..self.n).permutations(self.n) {
            if self.relabelled(&perm) != self.arrows {
                continue;
            }
            let classes: Vec<((usize, usize), Vec<usize>)> = self
                .arrows
                .iter()
                .enumerate()
                .chunk_by(|(_, &st)| st)
                .into_iter()
                .map(|(st, group)| (st, group.map(|(k, _)| k).collect()))
                .collect();
            let preimages: Vec<Vec<usize>> = classes
                .iter()
                .map(|(st, _)| {
                    (0..m)
                        .filter(|&k| (perm[self.arrows[k].0], perm[self.arrows[k].1]) == *st)
                        .collect()
                })
                .collect();
            let choices: Vec<Vec<Vec<usize>>> = classes
                .iter()
                .map(|(_, positions)| positions.iter().copied().permutations(positions.len()).collect())
                .collect();
            if choices.is_empty() {
                out.push(Vec::new());
                continue;
            }
            for pick in choices.into_iter().multi_cartesian_product() {
                let mut map = vec![0; m];
                for (pre, targets) in preimages.iter().zip(&pick) {
                    for (&k, &k2) in pre.iter().zip(targets) {
                        map[k] = k2;
                    }
                }
                out.push(map);
            }
        }
        out
    }

    fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&k| self.arrows[k].0 == v)
    }

    /// Every path of length `2..=max_len`, shortest first.
    fn paths(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.arrows.len()).map(|k| vec![k]).collect();
        for _ in 2..=max_len {
            let mut next = Vec::new();
            for path in &frontier {
                let end = self.arrows[*path.last().unwrap()].1;
                for k in self.arrows_from(end) {
                    let mut longer = path.clone();
                    longer.push(k);
                    next.push(longer);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Simple cycles up to rotation, as arrow sequences.
    fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn extend(shape: &Shape, start: usize, at: usize, used: &mut Vec<usize>, seen: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            for k in shape.arrows_from(at) {
                let t = shape.arrows[k].1;
                if t == start {
                    let mut cycle = used.clone();
                    cycle.push(k);
                    out.push(cycle);
                } else if t > start && !seen[t] {
                    seen[t] = true;
                    used.push(k);
                    extend(shape, start, t, used, seen, out);
                    used.pop();
                    seen[t] = false;
                }
            }
        }
        for start in 0..self.n {
            let mut seen = vec![false; self.n];
            seen[start] = true;
            extend(self, start, start, &mut Vec::new(), &mut seen, &mut out);
        }
        out
    }

    /// Whether no relation-free path is longer than any bound.
    fn is_finite(&self, relations: &[&[usize]], max_len: usize) -> bool {
        // States are (vertex, last up to max_len - 1 arrows read).
        type State = (usize, Vec<usize>);
        fn visit(shape: &Shape, relations: &[&[usize]], window: usize, state: State, colour: &mut HashMap<State, bool>) -> bool {
            match colour.get(&state) {
                Some(true) => return false,
                Some(false) => return true,
                None => {}
            }
            colour.insert(state.clone(), true);
            for k in shape.arrows_from(state.0) {
                let mut word = state.1.clone();
                word.push(k);
                if relations.iter().any(|r| word.ends_with(r)) {
                    continue;
                }
                if word.len() > window {
                    word.remove(0);
                }
                if !visit(shape, relations, window, (shape.arrows[k].1, word), colour) {
                    return false;
                }
            }
            colour.insert(state, false);
            true
        }
        let window = max_len.saturating_sub(1).max(1);
        let mut colour = HashMap::new();
        (0..self.n).all(|v| visit(self, relations, window, (v, Vec::new()), &mut colour))
    }
}

/// Connected arrow multisets that are minimal under vertex relabelling.
fn shapes(b: &CorpusBounds) -> Vec<Shape> {
    let mut out = Vec::new();
    for n in 1..=b.max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).cartesian_product(0..n).collect();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        for m in 0..=b.max_arrows {
            for arrows in pairs.iter().copied().combinations_with_replacement(m) {
                let shape = Shape { n, arrows };
                if !shape.is_connected() {
                    continue;
                }
                if perms.iter().all(|p| shape.relabelled(p) >= shape.arrows) {
                    out.push(shape);
                }
            }
        }
    }
    out
}

fn is_factor(host: &[usize], candidate: &[usize]) -> bool {
    candidate.len() <= host.len() && host.windows(candidate.len()).any(|w| w == candidate)
}

/// Canonical relation sets on one shape, in increasing encoded order.
fn relation_sets(shape: &Shape, b: &CorpusBounds) -> Vec<Vec<Vec<usize>>> {
    let candidates = shape.paths(b.max_relation_length);
    let symmetries = shape.symmetries();
    // For each simple cycle, the candidates that are factors of its powers:
    // a finite-dimensional quotient must contain one of them.
    let killers: Vec<Vec<bool>> = shape
        .simple_cycles()
        .iter()
        .map(|cycle| {
            let reps = b.max_relation_length / cycle.len() + 2;
            let power: Vec<usize> = cycle.iter().copied().cycle().take(cycle.len() * reps).collect();
            candidates.iter().map(|c| is_factor(&power, c)).collect()
        })
        .collect();

    struct Search<'a> {
        shape: &'a Shape,
        b: &'a CorpusBounds,
        candidates: &'a [Vec<usize>],
        killers: &'a [Vec<bool>],
        symmetries: &'a [Vec<usize>],
        chosen: Vec<usize>,
        found: Vec<Vec<Vec<usize>>>,
    }

    impl Search<'_> {
        fn encoding(&self) -> Vec<Vec<usize>> {
            let mut e: Vec<Vec<usize>> = self.chosen.iter().map(|&c| self.candidates[c].clone()).collect();
            e.sort_unstable();
            e
        }

        fn is_canonical(&self, own: &[Vec<usize>]) -> bool {
            self.symmetries.iter().all(|map| {
                let mut image: Vec<Vec<usize>> = own.iter().map(|r| r.iter().map(|&k| map[k]).collect()).collect();
                image.sort_unstable();
                image.as_slice() >= own
            })
        }

        fn hopeless(&self, next: usize) -> bool {
            let budget = self.b.max_relations - self.chosen.len();
            let mut unhit = 0;
            for kill in self.killers {
                if self.chosen.iter().any(|&c| kill[c]) {
                    continue;
                }
                if !(next..self.candidates.len()).any(|c| kill[c]) {
                    return true;
                }
                unhit += 1;
            }
            // Distinct cycles may share killers, so this only bounds loosely.
            unhit > 0 && budget == 0
        }

        fn run(&mut self, next: usize) {
            if self.hopeless(next) {
                return;
            }
            let relations: Vec<&[usize]> = self.chosen.iter().map(|&c| self.candidates[c].as_slice()).collect();
            if self.killers.iter().all(|kill| self.chosen.iter().any(|&c| kill[c]))
                && self.shape.is_finite(&relations, self.b.max_relation_length)
            {
                let own = self.encoding();
                if self.is_canonical(&own) {
                    self.found.push(own);
                }
            }
            if self.chosen.len() == self.b.max_relations {
                return;
            }
            for c in next..self.candidates.len() {
                let candidate = &self.candidates[c];
                let comparable = self.chosen.iter().any(|&d| {
                    let other = &self.candidates[d];
                    is_factor(candidate, other) || is_factor(other, candidate)
                });
                if comparable {
                    continue;
                }
                self.chosen.push(c);
                self.run(c + 1);
                self.chosen.pop();
            }
        }
    }

    let mut search = Search {
        shape,
        b,
        candidates: &candidates,
        killers: &killers,
        symmetries: &symmetries,
        chosen: Vec::new(),
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found;
    found.sort();
    found
}

fn build(shape: &Shape, relations: &[Vec<usize>], name: String) -> MonomialPresentation {
    let arrows = shape
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| Arrow::new(format!("a{}", k + 1), s + 1, t + 1))
        .collect();
    let quiver = Quiver::with_vertex_count(shape.n, arrows);
    let paths = relations
        .iter()
        .map(|r| {
            let source = VertexId::from_index(shape.arrows[r[0]].0);
            Path::new(&quiver, source, r.iter().map(|&k| ArrowId(k)).collect()).expect("enumerated paths are chains")
        })
        .collect();
    MonomialPresentation::new(name, quiver, paths)
}

fn ordered_map<T: Sync, U: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if jobs > 1 {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                return pool.install(|| items.par_iter().map(&f).collect());
            }
        }
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

fn enumerate_with_jobs(b: &CorpusBounds, jobs: usize) -> Vec<MonomialPresentation> {
    let shapes = shapes(b);
    let per_shape = ordered_map(&shapes, jobs, |shape| relation_sets(shape, b));
    let mut out = Vec::new();
    for (shape, sets) in shapes.iter().zip(per_shape) {
        for relations in sets {
            let name = format!("q{}", out.len() + 1);
            out.push(build(shape, &relations, name));
        }
    }
    out
}

/// All connected, finite-dimensional presentations within the bounds, one
/// per isomorphism class of labelled data, named `q1, q2, ...` in order.
///
/// Vertices are `1..=n`, arrows `a1, a2, ...` sorted by endpoints. Order is
/// by vertex count, arrow count, arrow endpoints, then relations.
pub fn enumerate_presentations(b: &CorpusBounds) -> Vec<MonomialPresentation> {
    enumerate_with_jobs(b, 1)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub checked: usize,
    pub failed: usize,
}

impl CheckCount {
    fn add(&mut self, other: &CheckCount) {
        self.checked += other.checked;
        self.failed += other.failed;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossChecks {
    /// Graph-map counts against oracle Hom dimensions, for `(S(i), P(j))`
    /// and `(P(i), P(j))`.
    pub hom_dimensions: CheckCount,
    /// Leaf socles against oracle socles of `P(i)`.
    pub socles: CheckCount,
    /// Push-down of `T_i` against the oracle's `P(i)`.
    pub push_down: CheckCount,
    /// Restriction matrices with 0/1 entries.
    pub restriction_zero_one: CheckCount,
    /// Self-injective instances that are `K` or cyclic with all length-`l`
    /// paths as relations.
    pub classification_shape: CheckCount,
    /// Self-injective instances whose Nakayama permutation is the shift by
    /// `l - 1` along the cycle, and matches the oracle's bijection.
    pub permutation_shift: CheckCount,
    /// Self-injective instances that are Nakayama algebras.
    pub nakayama_algebra: CheckCount,
}

impl CrossChecks {
    fn add(&mut self, other: &CrossChecks) {
        self.hom_dimensions.add(&other.hom_dimensions);
        self.socles.add(&other.socles);
        self.push_down.add(&other.push_down);
        self.restriction_zero_one.add(&other.restriction_zero_one);
        self.classification_shape.add(&other.classification_shape);
        self.permutation_shift.add(&other.permutation_shift);
        self.nakayama_algebra.add(&other.nakayama_algebra);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub presentation: String,
    pub verdict: Option<Verdict>,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfInjectiveInstance {
    pub presentation: String,
    pub classification: Option<ClassificationResult>,
    pub nakayama_permutation: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub bounds: CorpusBounds,
    pub instances_enumerated: usize,
    pub instances_valid: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    pub self_injective_instances: Vec<SelfInjectiveInstance>,
    pub cross_checks: CrossChecks,
    pub notes: Vec<String>,
    /// Wall-clock time; left out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

struct Outcome {
    presentation: String,
    verdict: Option<Verdict>,
    problems: Vec<String>,
    checks: CrossChecks,
}

fn tally(count: &mut CheckCount, ok: bool, problems: &mut Vec<String>, what: impl FnOnce() -> String) {
    count.checked += 1;
    if !ok {
        count.failed += 1;
        problems.push(what());
    }
}

fn cross_check(p: &MonomialPresentation, verdict: &Verdict, checks: &mut CrossChecks, problems: &mut Vec<String>) -> Result<()> {
    let q = p.quiver();
    let n = p.vertex_count();
    let trees = p.vertices().map(|i| build_projective_tree(p, i)).collect::<Result<Vec<_>>>()?;
    let simples = p.vertices().map(|i| build_simple_tree(p, i)).collect::<Result<Vec<_>>>()?;
    let projectives = p
        .vertices()
        .map(|i| representation_of_projective(p, i))
        .collect::<Result<Vec<_>>>()?;
    let simple_reps = p
        .vertices()
        .map(|i| simple_representation(p, i))
        .collect::<Result<Vec<_>>>()?;

    for j in 0..n {
        for i in 0..n {
            let graph = enumerate_graph_maps(&simples[i], &trees[j])?.dimension();
            let exact = hom_space(q, &simple_reps[i], &projectives[j]).dimension();
            tally(&mut checks.hom_dimensions, graph == exact, problems, || {
                format!("Hom(S({}), P({})): {graph} graph maps, oracle dimension {exact}", i + 1, j + 1)
            });
            let graph = enumerate_graph_maps(&trees[i], &trees[j])?.dimension();
            let exact = hom_space(q, &projectives[i], &projectives[j]).dimension();
            tally(&mut checks.hom_dimensions, graph == exact, problems, || {
                format!("Hom(P({}), P({})): {graph} graph maps, oracle dimension {exact}", i + 1, j + 1)
            });
        }
    }
    for i in 0..n {
        let leaves = leaf_socle(&trees[i]).dimension_vector(n);
        let exact = socle(q, &projectives[i]);
        tally(&mut checks.socles, leaves == exact, problems, || {
            format!("soc P({}): leaves give {leaves:?}, oracle gives {exact:?}", i + 1)
        });
        let pushed = push_down(&trees[i])?;
        tally(&mut checks.push_down, is_isomorphic_indecomposable(q, &projectives[i], &pushed), problems, || {
            format!("push-down of T_{} is not isomorphic to P({})", i + 1, i + 1)
        });
    }
    if let Some(r) = &verdict.restriction {
        tally(&mut checks.restriction_zero_one, r.zero_one, problems, || {
            "restriction matrix has entries outside {0, 1}".to_string()
        });
    }

    if verdict.final_verdict == Some(true) {
        let shape_ok = match &verdict.classification {
            Some(ClassificationResult::IsK) => true,
            Some(ClassificationResult::Cyclic { l, .. }) => {
                let all: BTreeSet<Vec<ArrowId>> = all_paths_of_length(q, *l);
                let relations: BTreeSet<Vec<ArrowId>> = p.relations().iter().map(|r| r.arrows().to_vec()).collect();
                relations == all
            }
            _ => false,
        };
        tally(&mut checks.classification_shape, shape_ok, problems, || {
            "self-injective but not K or a cyclic quiver with all length-l paths killed".to_string()
        });

        let expected: Option<Vec<VertexId>> = match &verdict.classification {
            Some(ClassificationResult::IsK) => Some(vec![VertexId(1)]),
            Some(ClassificationResult::Cyclic { l, .. }) => Some(
                p.vertices()
                    .map(|i| {
                        let mut v = i;
                        for _ in 1..*l {
                            let a = q.arrows_from(v).next().expect("cyclic quiver");
                            v = q.arrow(a).target;
                        }
                        v
                    })
                    .collect(),
            ),
            _ => None,
        };
        let nakayama = verdict.nakayama.as_ref().and_then(|r| r.permutation.clone());
        let shift_ok = expected.is_some() && nakayama == expected && verdict.oracle_permutation == expected;
        tally(&mut checks.permutation_shift, shift_ok, problems, || {
            format!(
                "Nakayama permutation {nakayama:?}, oracle bijection {:?}, expected shift {expected:?}",
                verdict.oracle_permutation
            )
        });

        tally(&mut checks.nakayama_algebra, is_nakayama_algebra(p)?, problems, || {
            "self-injective but not a Nakayama algebra".to_string()
        });
    }
    Ok(())
}

fn all_paths_of_length(q: &Quiver, l: usize) -> BTreeSet<Vec<ArrowId>> {
    let mut frontier: Vec<Vec<ArrowId>> = q.arrow_ids().map(|a| vec![a]).collect();
    for _ in 1..l {
        frontier = frontier
            .into_iter()
            .flat_map(|path| {
                let end = q.arrow(*path.last().unwrap()).target;
                q.arrows_from(end)
                    .map(|a| {
                        let mut longer = path.clone();
                        longer.push(a);
                        longer
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    frontier.into_iter().collect()
}

fn verify_one(p: &MonomialPresentation) -> Outcome {
    let presentation = render(p);
    let mut problems = Vec::new();
    let mut checks = CrossChecks::default();
    let verdict = match evaluate(p, ConditionSet::all(true)) {
        Ok(v) => v,
        Err(e) => {
            return Outcome {
                presentation,
                verdict: None,
                problems: vec![format!("checker failed: {e}")],
                checks,
            }
        }
    };
    if !verdict.agreement {
        problems.push(format!("conditions disagree: {}", verdict.summary()));
    }
    if let Err(e) = cross_check(p, &verdict, &mut checks, &mut problems) {
        problems.push(format!("cross-check failed: {e}"));
    }
    Outcome {
        presentation,
        verdict: Some(verdict),
        problems,
        checks,
    }
}

/// Runs every condition checker and cross-check on the corpus. Cross-check
/// failures count as disagreements; the report does not depend on `jobs`.
pub fn verify_equivalences(b: &CorpusBounds, jobs: usize) -> VerificationReport {
    let start = Instant::now();
    let corpus = enumerate_with_jobs(b, jobs);
    let outcomes = ordered_map(&corpus, jobs, verify_one);

    let mut report = VerificationReport {
        bounds: *b,
        instances_enumerated: corpus.len(),
        instances_valid: 0,
        agreements: 0,
        disagreements: Vec::new(),
        self_injective_instances: Vec::new(),
        cross_checks: CrossChecks::default(),
        notes: Vec::new(),
        elapsed: Duration::ZERO,
    };
    let mut single_loops = 0;
    for outcome in outcomes {
        report.instances_valid += 1;
        report.cross_checks.add(&outcome.checks);
        if let Some(v) = &outcome.verdict {
            if v.final_verdict == Some(true) {
                if let Some(ClassificationResult::Cyclic { n: 1, .. }) = v.classification {
                    single_loops += 1;
                }
                report.self_injective_instances.push(SelfInjectiveInstance {
                    presentation: outcome.presentation.clone(),
                    classification: v.classification.clone(),
                    nakayama_permutation: v.nakayama.as_ref().and_then(|r| r.permutation.clone()),
                });
            }
        }
        if outcome.problems.is_empty() {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement {
                presentation: outcome.presentation,
                verdict: outcome.verdict,
                problems: outcome.problems,
            });
        }
    }
    if single_loops > 0 {
        report.notes.push(format!(
            "{single_loops} self-injective instance(s) are single loops C_1, accepted by condition (4) with n = 1"
        ));
    }
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn bounds(v: usize, a: usize, l: usize, r: usize) -> CorpusBounds {
        CorpusBounds::new(v, a, l, r).unwrap()
    }

    fn same(a: &MonomialPresentation, b: &MonomialPresentation) -> bool {
        let strip = |p: &MonomialPresentation| render(p).split_once('{').unwrap().1.to_string();
        strip(a) == strip(b)
    }

    #[test]
    fn one_vertex_one_arrow() {
        let corpus = enumerate_presentations(&bounds(1, 1, 2, 1));
        assert_eq!(corpus.len(), 2);
        assert!(same(&corpus[0], &fixtures::point()));
        let loop2 = crate::dsl::parse("quiver q { vertices: 1; arrows: a1: 1 -> 1; relations: a1*a1; }").unwrap();
        assert!(same(&corpus[1], &loop2));
    }

    #[test]
    fn arrowless_bounds_give_the_point() {
        let corpus = enumerate_presentations(&bounds(1, 0, 2, 0));
        assert_eq!(corpus.len(), 1);
        assert!(same(&corpus[0], &fixtures::point()));
    }

    #[test]
    fn two_vertices_include_a2() {
        let corpus = enumerate_presentations(&bounds(2, 1, 2, 1));
        let a2 = crate::dsl::parse("quiver q { vertices: 1 2; arrows: a1: 1 -> 2; relations:; }").unwrap();
        assert!(corpus.iter().any(|p| same(p, &a2)));
        assert!(corpus.iter().all(|p| crate::quiver::path_basis(p).is_ok()));
        // POINT, LOOP2, A2.
        assert_eq!(corpus.len(), 3);
    }

    #[test]
    fn relabelled_duplicates_are_removed() {
        // Two vertices, one arrow each way: the relation sets {a1*a2} and
        // {a2*a1} are swapped by exchanging the vertices.
        let corpus = enumerate_presentations(&bounds(2, 2, 2, 2));
        let texts: Vec<String> = corpus
            .iter()
            .map(|p| render(p).split_once('{').unwrap().1.to_string())
            .collect();
        let unique: BTreeSet<&String> = texts.iter().collect();
        assert_eq!(unique.len(), texts.len());
        let two_cycle_single = texts
            .iter()
            .filter(|t| t.contains("a1: 1 -> 2, a2: 2 -> 1") && t.matches('*').count() == 1)
            .count();
        assert_eq!(two_cycle_single, 1);
    }

    #[test]
    fn finiteness_filter() {
        let shape = Shape { n: 1, arrows: vec![(0, 0), (0, 0)] };
        let xx: &[usize] = &[0, 0];
        let yy: &[usize] = &[1, 1];
        let xy: &[usize] = &[0, 1];
        let yx: &[usize] = &[1, 0];
        assert!(!shape.is_finite(&[xx, yy], 2));
        assert!(shape.is_finite(&[xx, yy, xy, yx], 2));
        assert!(!shape.is_finite(&[], 2));
    }

    #[test]
    fn small_corpus_verifies() {
        let report = verify_equivalences(&bounds(1, 1, 2, 1), 1);
        assert_eq!(report.instances_valid, 2);
        assert_eq!(report.agreements, 2);
        assert_eq!(report.self_injective_instances.len(), 2);

        let report = verify_equivalences(&bounds(2, 2, 2, 2), 1);
        assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
        assert_eq!(report.agreements, report.instances_valid);
        assert!(report
            .self_injective_instances
            .iter()
            .any(|s| s.classification == Some(ClassificationResult::Cyclic { n: 2, l: 2 })));
    }

    #[test]
    fn report_is_independent_of_jobs() {
        let b = bounds(2, 3, 3, 2);
        assert_eq!(verify_equivalences(&b, 1).to_json(), verify_equivalences(&b, 4).to_json());
    }

    #[test]
    fn bounds_are_checked() {
        assert!(matches!(CorpusBounds::new(0, 1, 2, 1), Err(Error::Bounds(_))));
        assert!(matches!(CorpusBounds::new(1, 1, 1, 1), Err(Error::Bounds(_))));
    }
}
