//! The four equivalent characterisations of self-injectivity, and the
//! combined verdict.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_hom::RegularModule;
use crate::oracle::{self, radical_series_uniserial, representation_of_injective};
use crate::quiver::{path_basis, MonomialPresentation, VertexId};
use crate::tree::{leaf_socle, SocleSummary};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NakayamaFailure {
    /// `soc P(vertex)` is not simple.
    NonSimpleSocle { vertex: VertexId, socle: SocleSummary },
    /// `soc P(first) = soc P(second) = S(simple)`.
    Collision { first: VertexId, second: VertexId, simple: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaReport {
    pub socles: Vec<SocleSummary>,
    /// `nu(i)` at position `i - 1` when the socle map is a permutation.
    pub permutation: Option<Vec<VertexId>>,
    pub failure: Option<NakayamaFailure>,
}

impl NakayamaReport {
    pub fn holds(&self) -> bool {
        self.permutation.is_some()
    }
}

fn nakayama_from(socles: Vec<SocleSummary>) -> NakayamaReport {
    let mut image: Vec<VertexId> = Vec::with_capacity(socles.len());
    let mut failure = None;
    for (k, socle) in socles.iter().enumerate() {
        let i = VertexId::from_index(k);
        if !socle.is_simple() {
            failure = Some(NakayamaFailure::NonSimpleSocle {
                vertex: i,
                socle: socle.clone(),
            });
            break;
        }
        let simple = *socle.entries.keys().next().expect("simple socle has one entry");
        if let Some(first) = image.iter().position(|&s| s == simple) {
            failure = Some(NakayamaFailure::Collision {
                first: VertexId::from_index(first),
                second: i,
                simple,
            });
            break;
        }
        image.push(simple);
    }
    NakayamaReport {
        permutation: failure.is_none().then_some(image),
        socles,
        failure,
    }
}

/// Condition (2): every `soc P(i)` is simple and `i -> soc P(i)` is a permutation.
pub fn nakayama_permutation(p: &MonomialPresentation) -> Result<NakayamaReport> {
    let regular = RegularModule::new(p)?;
    Ok(nakayama_from(regular.trees().iter().map(leaf_socle).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeWitness {
    OutDegree { vertex: VertexId, degree: usize },
    InDegree { vertex: VertexId, degree: usize },
    RelationCount { expected: usize, found: usize },
    MissingRelationSource { vertex: VertexId },
    UnequalRelationLengths { vertex: VertexId, length: usize, expected: usize },
}

impl fmt::Display for ShapeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeWitness::OutDegree { vertex, degree } => write!(f, "vertex {vertex} has out-degree {degree}"),
            ShapeWitness::InDegree { vertex, degree } => write!(f, "vertex {vertex} has in-degree {degree}"),
            ShapeWitness::RelationCount { expected, found } => {
                write!(f, "{found} relations on a {expected}-cycle")
            }
            ShapeWitness::MissingRelationSource { vertex } => write!(f, "no relation starts at vertex {vertex}"),
            ShapeWitness::UnequalRelationLengths { vertex, length, expected } => write!(
                f,
                "relation at vertex {vertex} has length {length}, others have length {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassificationResult {
    /// One vertex, no arrows.
    IsK,
    /// `C_n` with all paths of length `l` killed.
    Cyclic { n: usize, l: usize },
    NotSelfInjectiveShape { witness: ShapeWitness },
}

impl ClassificationResult {
    pub fn is_self_injective_shape(&self) -> bool {
        !matches!(self, ClassificationResult::NotSelfInjectiveShape { .. })
    }
}

impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationResult::IsK => write!(f, "K"),
            ClassificationResult::Cyclic { n, l } => write!(f, "cyclic C_{n} with paths of length {l} killed"),
            ClassificationResult::NotSelfInjectiveShape { witness } => write!(f, "not self-injective: {witness}"),
        }
    }
}

/// Condition (4), accepting the one-vertex loop `C_1` alongside `n > 1`.
pub fn structural_classification(p: &MonomialPresentation) -> Result<ClassificationResult> {
    let q = p.quiver();
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = q.vertex_count();
    if n == 1 && q.arrows().is_empty() {
        return Ok(ClassificationResult::IsK);
    }
    let not = |witness| Ok(ClassificationResult::NotSelfInjectiveShape { witness });
    for v in q.vertices() {
        let degree = q.out_degree(v);
        if degree != 1 {
            return not(ShapeWitness::OutDegree { vertex: v, degree });
        }
    }
    for v in q.vertices() {
        let degree = q.in_degree(v);
        if degree != 1 {
            return not(ShapeWitness::InDegree { vertex: v, degree });
        }
    }
    // Connected with all degrees 1: a single directed n-cycle.
    let relations = p.relations();
    if relations.len() != n {
        return not(ShapeWitness::RelationCount {
            expected: n,
            found: relations.len(),
        });
    }
    for v in q.vertices() {
        if !relations.iter().any(|r| r.source() == v) {
            return not(ShapeWitness::MissingRelationSource { vertex: v });
        }
    }
    let l = relations[0].len();
    if let Some(r) = relations.iter().find(|r| r.len() != l) {
        return not(ShapeWitness::UnequalRelationLengths {
            vertex: r.source(),
            length: r.len(),
            expected: l,
        });
    }
    Ok(ClassificationResult::Cyclic { n, l })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionSet {
    pub oracle: bool,
    pub nakayama: bool,
    pub socle_injective: bool,
    pub shape: bool,
}

impl ConditionSet {
    pub fn all(with_oracle: bool) -> Self {
        ConditionSet {
            oracle: with_oracle,
            nakayama: true,
            socle_injective: true,
            shape: true,
        }
    }

    pub fn only(condition: u8) -> Option<Self> {
        let none = ConditionSet {
            oracle: false,
            nakayama: false,
            socle_injective: false,
            shape: false,
        };
        match condition {
            1 => Some(ConditionSet { oracle: true, ..none }),
            2 => Some(ConditionSet { nakayama: true, ..none }),
            3 => Some(ConditionSet { socle_injective: true, ..none }),
            4 => Some(ConditionSet { shape: true, ..none }),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionRank {
    pub rank: usize,
    pub rows: usize,
    pub columns: usize,
    pub zero_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub cond1_oracle: Option<bool>,
    pub cond2: Option<bool>,
    pub cond3: Option<bool>,
    pub cond4: Option<bool>,
    pub agreement: bool,
    pub final_verdict: Option<bool>,
    pub nakayama: Option<NakayamaReport>,
    pub classification: Option<ClassificationResult>,
    pub restriction: Option<RestrictionRank>,
    pub oracle_permutation: Option<Vec<VertexId>>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn summary(&self) -> String {
        let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
        format!(
            "c1={} c2={} c3={} c4={}",
            show(self.cond1_oracle),
            show(self.cond2),
            show(self.cond3),
            show(self.cond4)
        )
    }

    /// The machine-readable report for `p`.
    pub fn to_json(&self, p: &MonomialPresentation) -> serde_json::Value {
        serde_json::json!({
            "presentation": crate::dsl::render(p),
            "conditions": {
                "c2": self.cond2,
                "c3": self.cond3,
                "c4": self.cond4,
                "c1_oracle": self.cond1_oracle,
            },
            "final": self.final_verdict,
            "nakayama_permutation": self.nakayama.as_ref().and_then(|r| r.permutation.as_ref()),
            "classification": self.classification,
            "notes": self.notes,
        })
    }

    fn computed(&self) -> Vec<bool> {
        [self.cond1_oracle, self.cond2, self.cond3, self.cond4]
            .into_iter()
            .flatten()
            .collect()
    }
}

pub const SINGLE_LOOP_NOTE: &str =
    "single-loop quiver C_1 accepted as cyclic (n = 1); the literal statement of condition (4) asks for n > 1";

/// Runs the selected condition checkers and compares their answers. The
/// verdict is returned even when they disagree, with `agreement` unset.
pub fn evaluate(p: &MonomialPresentation, conditions: ConditionSet) -> Result<Verdict> {
    if !p.quiver().is_connected() {
        return Err(Error::Disconnected);
    }
    path_basis(p)?;
    let regular = RegularModule::new(p)?;
    let mut verdict = Verdict {
        cond1_oracle: None,
        cond2: None,
        cond3: None,
        cond4: None,
        agreement: true,
        final_verdict: None,
        nakayama: None,
        classification: None,
        restriction: None,
        oracle_permutation: None,
        notes: Vec::new(),
    };
    if conditions.nakayama {
        let report = nakayama_from(regular.trees().iter().map(leaf_socle).collect());
        verdict.cond2 = Some(report.holds());
        verdict.nakayama = Some(report);
    }
    if conditions.socle_injective {
        let restriction = regular.restriction_matrix()?;
        verdict.cond3 = Some(restriction.is_surjective());
        verdict.restriction = Some(RestrictionRank {
            rank: restriction.rank(),
            rows: restriction.rows.len(),
            columns: restriction.columns.len(),
            zero_one: restriction.is_zero_one(),
        });
    }
    if conditions.shape {
        let shape = structural_classification(p)?;
        verdict.cond4 = Some(shape.is_self_injective_shape());
        if let ClassificationResult::Cyclic { n: 1, .. } = shape {
            verdict.notes.push(SINGLE_LOOP_NOTE.to_string());
        }
        verdict.classification = Some(shape);
    }
    if conditions.oracle {
        let report = oracle::self_injective_oracle(p)?;
        verdict.cond1_oracle = Some(report.self_injective);
        verdict.oracle_permutation = report.permutation();
    }
    let computed = verdict.computed();
    verdict.agreement = computed.windows(2).all(|w| w[0] == w[1]);
    verdict.final_verdict = if verdict.agreement {
        computed.first().copied()
    } else {
        None
    };
    Ok(verdict)
}

/// All condition checkers; disagreement is an error carrying the evidence.
pub fn decide_self_injective(p: &MonomialPresentation, with_oracle: bool) -> Result<Verdict> {
    let verdict = evaluate(p, ConditionSet::all(with_oracle))?;
    if verdict.agreement {
        Ok(verdict)
    } else {
        Err(Error::Disagreement(Box::new(verdict)))
    }
}

/// Every `P(i)` is a chain and every `I(j)` has a radical series with layers
/// of dimension at most one.
pub fn is_nakayama_algebra(p: &MonomialPresentation) -> Result<bool> {
    let regular = RegularModule::new(p)?;
    if !regular.trees().iter().all(|t| t.is_uniserial()) {
        return Ok(false);
    }
    for j in p.vertices() {
        let injective = representation_of_injective(p, j)?;
        if !radical_series_uniserial(p.quiver(), &injective) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeMap;

    fn v(n: usize) -> VertexId {
        VertexId(n)
    }

    #[test]
    fn nakayama_permutations() {
        let nak2 = nakayama_permutation(&fixtures::nak2()).unwrap();
        assert_eq!(nak2.permutation, Some(vec![v(2), v(1)]));

        let fig1 = nakayama_permutation(&fixtures::fig1()).unwrap();
        assert_eq!(
            fig1.failure,
            Some(NakayamaFailure::NonSimpleSocle {
                vertex: v(1),
                socle: SocleSummary {
                    entries: BTreeMap::from([(v(3), 3)])
                }
            })
        );

        let a2 = nakayama_permutation(&fixtures::a2()).unwrap();
        assert_eq!(
            a2.failure,
            Some(NakayamaFailure::Collision {
                first: v(1),
                second: v(2),
                simple: v(2)
            })
        );

        let point = nakayama_permutation(&fixtures::point()).unwrap();
        assert_eq!(point.permutation, Some(vec![v(1)]));
    }

    #[test]
    fn shapes() {
        assert_eq!(
            structural_classification(&fixtures::nak2()).unwrap(),
            ClassificationResult::Cyclic { n: 2, l: 2 }
        );
        assert_eq!(structural_classification(&fixtures::point()).unwrap(), ClassificationResult::IsK);
        assert_eq!(
            structural_classification(&fixtures::loop2()).unwrap(),
            ClassificationResult::Cyclic { n: 1, l: 2 }
        );
        assert_eq!(
            structural_classification(&fixtures::fig1()).unwrap(),
            ClassificationResult::NotSelfInjectiveShape {
                witness: ShapeWitness::OutDegree { vertex: v(1), degree: 2 }
            }
        );
    }

    #[test]
    fn shape_witnesses_on_cycles() {
        let unequal = crate::dsl::parse(
            "quiver c { vertices: 1 2; arrows: a: 1 -> 2, b: 2 -> 1; relations: b*a, a*b*a; }",
        );
        // a*b*a contains b*a? a*b*a = a then b then a; b*a = a then b: yes, comparable.
        assert!(unequal.is_err());

        let missing = crate::dsl::parse("quiver c { vertices: 1 2; arrows: a: 1 -> 2, b: 2 -> 1; relations: b*a; }")
            .unwrap();
        assert_eq!(
            structural_classification(&missing).unwrap(),
            ClassificationResult::NotSelfInjectiveShape {
                witness: ShapeWitness::RelationCount { expected: 2, found: 1 }
            }
        );

        let c3 = crate::dsl::parse(
            "quiver c { vertices: 1 2 3; arrows: a: 1 -> 2, b: 2 -> 3, c: 3 -> 1; relations: b*a, a*c*b, c*b*a*c; }",
        );
        // c*b*a*c contains b*a
        assert!(c3.is_err());

        let uneven = crate::dsl::parse(
            "quiver c { vertices: 1 2 3; arrows: a: 1 -> 2, b: 2 -> 3, c: 3 -> 1; relations: c*b*a, a*c*b, c*b; }",
        );
        assert!(uneven.is_err(), "c*b is a factor of c*b*a");

        let path = fixtures::a2();
        assert_eq!(
            structural_classification(&path).unwrap(),
            ClassificationResult::NotSelfInjectiveShape {
                witness: ShapeWitness::OutDegree { vertex: v(2), degree: 0 }
            }
        );
    }

    #[test]
    fn disconnected_inputs_are_refused() {
        let p = crate::dsl::parse("quiver d { vertices: 1 2; arrows:; relations:; }").unwrap();
        assert!(matches!(structural_classification(&p), Err(Error::Disconnected)));
        assert!(matches!(decide_self_injective(&p, true), Err(Error::Disconnected)));
    }

    #[test]
    fn verdicts() {
        let nak2 = decide_self_injective(&fixtures::nak2(), true).unwrap();
        assert_eq!(nak2.final_verdict, Some(true));
        assert_eq!(
            [nak2.cond1_oracle, nak2.cond2, nak2.cond3, nak2.cond4],
            [Some(true); 4]
        );

        let fig1 = decide_self_injective(&fixtures::fig1(), true).unwrap();
        assert_eq!(fig1.final_verdict, Some(false));
        assert_eq!(
            [fig1.cond1_oracle, fig1.cond2, fig1.cond3, fig1.cond4],
            [Some(false); 4]
        );

        let a2 = decide_self_injective(&fixtures::a2(), false).unwrap();
        assert_eq!(a2.final_verdict, Some(false));
        assert_eq!(a2.cond1_oracle, None);

        let loop2 = decide_self_injective(&fixtures::loop2(), true).unwrap();
        assert_eq!(loop2.final_verdict, Some(true));
        assert_eq!(loop2.notes, vec![SINGLE_LOOP_NOTE.to_string()]);
    }

    #[test]
    fn single_condition_selection() {
        let v = evaluate(&fixtures::fig1(), ConditionSet::only(3).unwrap()).unwrap();
        assert_eq!(v.cond3, Some(false));
        assert_eq!((v.cond1_oracle, v.cond2, v.cond4), (None, None, None));
        assert_eq!(v.final_verdict, Some(false));
        assert!(ConditionSet::only(5).is_none());
    }

    #[test]
    fn nakayama_algebras() {
        assert!(is_nakayama_algebra(&fixtures::nak2()).unwrap());
        assert!(!is_nakayama_algebra(&fixtures::fig1()).unwrap());
        assert!(is_nakayama_algebra(&fixtures::point()).unwrap());
        // A_2 is Nakayama without being self-injective.
        assert!(is_nakayama_algebra(&fixtures::a2()).unwrap());
    }
}
