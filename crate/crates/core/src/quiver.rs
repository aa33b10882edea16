//! Quivers, paths and monomial presentations `KQ/<rho>`.
//!
//! Paths are stored in traversal order (first arrow first). Textual forms
//! use the composition convention `a_n*...*a_1`, see [`Path::display`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A quiver vertex, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    /// Zero-based position, for indexing per-vertex tables.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(index: usize) -> Self {
        VertexId(index + 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Position of an arrow in its quiver's arrow sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: usize, target: usize) -> Self {
        Arrow {
            name: name.into(),
            source: VertexId(source),
            target: VertexId(target),
        }
    }
}

/// A finite quiver. Construction does not validate; use
/// [`validate_presentation`] (or [`MonomialPresentation::validated`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Self {
        Quiver { vertices, arrows }
    }

    /// Quiver on vertices `1..=count`.
    pub fn with_vertex_count(count: usize, arrows: Vec<Arrow>) -> Self {
        Quiver::new((1..=count).map(VertexId).collect(), arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Declared vertices, as given.
    pub fn declared_vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        (1..=self.vertices.len()).map(VertexId)
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        v.0 >= 1 && v.0 <= self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// Arrows starting at `v`, in arrow order.
    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.arrow(a).source == v)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arrows.iter().filter(|a| a.source == v).count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arrows.iter().filter(|a| a.target == v).count()
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for arrow in &self.arrows {
            if !self.has_vertex(arrow.source) || !self.has_vertex(arrow.target) {
                continue;
            }
            let a = find(&mut parent, arrow.source.index());
            let b = find(&mut parent, arrow.target.index());
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }
}

/// A path in a quiver, stored in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

#[allow(clippy::len_without_is_empty)]
impl Path {
    /// The stationary path `e_v`.
    pub fn stationary(v: VertexId) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrow(quiver: &Quiver, arrow: ArrowId) -> Self {
        let a = quiver.arrow(arrow);
        Path {
            source: a.source,
            target: a.target,
            arrows: vec![arrow],
        }
    }

    /// Builds a path starting at `source` and checks the chain condition.
    pub fn new(quiver: &Quiver, source: VertexId, arrows: Vec<ArrowId>) -> Result<Self> {
        let mut at = source;
        for &id in &arrows {
            let arrow = quiver.arrow(id);
            if arrow.source != at {
                return Err(Error::ChainMismatch {
                    arrow: arrow.name.clone(),
                    expected: at,
                    found: arrow.source,
                });
            }
            at = arrow.target;
        }
        Ok(Path {
            source,
            target: at,
            arrows,
        })
    }

    /// Builds a positive-length path from arrow names in traversal order.
    pub fn from_names(quiver: &Quiver, names: &[&str]) -> Result<Self> {
        let ids = names
            .iter()
            .map(|n| quiver.arrow_by_name(n).ok_or_else(|| Error::UnknownArrow(n.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let source = match ids.first() {
            Some(&first) => quiver.arrow(first).source,
            None => return Err(Error::ZeroLengthCandidate),
        };
        Path::new(quiver, source, ids)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The path traversing `self` and then `second`.
    pub fn concatenate(&self, second: &Path) -> Result<Path> {
        if self.target != second.source {
            return Err(Error::ChainMismatch {
                arrow: format!("path starting at {}", second.source),
                expected: self.target,
                found: second.source,
            });
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&second.arrows);
        Ok(Path {
            source: self.source,
            target: second.target,
            arrows,
        })
    }

    /// Appends one arrow; the caller guarantees the chain condition.
    pub(crate) fn extended(&self, quiver: &Quiver, arrow: ArrowId) -> Path {
        debug_assert_eq!(quiver.arrow(arrow).source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path {
            source: self.source,
            target: quiver.arrow(arrow).target,
            arrows,
        }
    }

    /// Whether `self` occurs as a contiguous factor of `host`.
    pub fn is_factor_of(&self, host: &Path) -> Result<bool> {
        if self.is_stationary() {
            return Err(Error::ZeroLengthCandidate);
        }
        Ok(contains_factor(&host.arrows, &self.arrows))
    }

    /// Composition-order text: `delta*beta` for beta then delta, `e_i` when stationary.
    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }

    /// Arrow names in traversal order.
    pub fn names<'a>(&'a self, quiver: &'a Quiver) -> Vec<&'a str> {
        self.arrows.iter().map(|&a| quiver.arrow(a).name.as_str()).collect()
    }

    /// Canonical order: source, then length, then arrows in declaration order.
    pub fn cmp_canonical(&self, other: &Path) -> Ordering {
        self.source
            .cmp(&other.source)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.arrows.cmp(&other.arrows))
    }
}

pub(crate) fn contains_factor(host: &[ArrowId], candidate: &[ArrowId]) -> bool {
    !candidate.is_empty()
        && candidate.len() <= host.len()
        && host.windows(candidate.len()).any(|w| w == candidate)
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_stationary() {
            return write!(f, "e_{}", self.path.source);
        }
        for (k, &a) in self.path.arrows.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.quiver.arrow(a).name)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyVertexSet,
    DuplicateVertex { vertex: VertexId },
    /// Vertices must be exactly `1..=m`.
    NonContiguousVertices { vertices: Vec<VertexId> },
    DanglingEndpoint { arrow: String, vertex: VertexId },
    DuplicateArrowName { name: String },
    ShortRelation { relation: String, length: usize },
    DuplicateRelation { relation: String },
    ComparableRelations { factor: String, host: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyVertexSet => write!(f, "vertex set is empty"),
            Violation::DuplicateVertex { vertex } => write!(f, "vertex {vertex} listed twice"),
            Violation::NonContiguousVertices { vertices } => {
                let list: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
                write!(f, "vertices must be numbered 1..m, got {}", list.join(" "))
            }
            Violation::DanglingEndpoint { arrow, vertex } => {
                write!(f, "arrow `{arrow}` uses undeclared vertex {vertex}")
            }
            Violation::DuplicateArrowName { name } => write!(f, "arrow name `{name}` used twice"),
            Violation::ShortRelation { relation, length } => {
                write!(f, "relation `{relation}` has length {length}, relations need length >= 2")
            }
            Violation::DuplicateRelation { relation } => write!(f, "relation `{relation}` listed twice"),
            Violation::ComparableRelations { factor, host } => {
                write!(f, "relation `{factor}` is a factor of relation `{host}`")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A quiver with a set of zero relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPresentation {
    name: String,
    quiver: Quiver,
    relations: Vec<Path>,
}

impl MonomialPresentation {
    /// Unchecked; relations are kept in canonical order.
    pub fn new(name: impl Into<String>, quiver: Quiver, mut relations: Vec<Path>) -> Self {
        relations.sort_by(|a, b| a.cmp_canonical(b));
        MonomialPresentation {
            name: name.into(),
            quiver,
            relations,
        }
    }

    pub fn validated(name: impl Into<String>, quiver: Quiver, relations: Vec<Path>) -> Result<Self> {
        let p = MonomialPresentation::new(name, quiver, relations);
        let report = validate_presentation(&p);
        if report.is_valid() {
            Ok(p)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        self.quiver.vertices()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.quiver.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// True iff no relation is a factor of `path`.
    pub fn is_relation_free(&self, path: &Path) -> bool {
        !self
            .relations
            .iter()
            .any(|r| contains_factor(&path.arrows, &r.arrows))
    }

    pub fn relation_text(&self, r: &Path) -> String {
        r.display(&self.quiver).to_string()
    }
}

pub fn validate_presentation(p: &MonomialPresentation) -> ValidationReport {
    let mut violations = Vec::new();
    let q = &p.quiver;

    if q.vertices.is_empty() {
        violations.push(Violation::EmptyVertexSet);
    }
    let mut seen = HashSet::new();
    for &v in &q.vertices {
        if !seen.insert(v) {
            violations.push(Violation::DuplicateVertex { vertex: v });
        }
    }
    let expected: HashSet<VertexId> = (1..=seen.len()).map(VertexId).collect();
    if !seen.is_empty() && seen != expected {
        let mut sorted: Vec<VertexId> = seen.iter().copied().collect();
        sorted.sort();
        violations.push(Violation::NonContiguousVertices { vertices: sorted });
    }

    let mut names = HashSet::new();
    for arrow in &q.arrows {
        for v in [arrow.source, arrow.target] {
            if !seen.contains(&v) {
                violations.push(Violation::DanglingEndpoint {
                    arrow: arrow.name.clone(),
                    vertex: v,
                });
            }
        }
        if !names.insert(arrow.name.as_str()) {
            violations.push(Violation::DuplicateArrowName {
                name: arrow.name.clone(),
            });
        }
    }

    for (k, r) in p.relations.iter().enumerate() {
        if r.len() < 2 {
            violations.push(Violation::ShortRelation {
                relation: p.relation_text(r),
                length: r.len(),
            });
        }
        for (m, other) in p.relations.iter().enumerate() {
            if m == k || r.is_stationary() {
                continue;
            }
            if r == other {
                if m > k {
                    violations.push(Violation::DuplicateRelation {
                        relation: p.relation_text(r),
                    });
                }
            } else if contains_factor(&other.arrows, &r.arrows) {
                violations.push(Violation::ComparableRelations {
                    factor: p.relation_text(r),
                    host: p.relation_text(other),
                });
            }
        }
    }
    ValidationReport { violations }
}

/// Relation-free paths of a finite-dimensional monomial algebra.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    blocks: BTreeMap<(VertexId, VertexId), Vec<Path>>,
    vertex_count: usize,
}

impl AlgebraBasis {
    pub fn dimension(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    /// Relation-free paths from `i` to `j`, in canonical order.
    pub fn block(&self, i: VertexId, j: VertexId) -> &[Path] {
        self.blocks.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All paths with source `i`, ordered by target then canonically.
    pub fn paths_from(&self, i: VertexId) -> impl Iterator<Item = &Path> {
        self.blocks
            .range((i, VertexId(0))..=(i, VertexId(usize::MAX)))
            .flat_map(|(_, paths)| paths.iter())
    }

    /// Relation-free paths ending at `j`, grouped by source.
    pub fn paths_to(&self, j: VertexId) -> impl Iterator<Item = &Path> {
        self.blocks
            .iter()
            .filter(move |((_, t), _)| *t == j)
            .flat_map(|(_, paths)| paths.iter())
    }

    /// Every basis path, in canonical order.
    pub fn paths(&self) -> Vec<&Path> {
        let mut all: Vec<&Path> = self.blocks.values().flatten().collect();
        all.sort_by(|a, b| a.cmp_canonical(b));
        all
    }

    /// `dim P(i)_j` for all `j`.
    pub fn dimension_vector_from(&self, i: VertexId) -> Vec<usize> {
        (1..=self.vertex_count)
            .map(|j| self.block(i, VertexId(j)).len())
            .collect()
    }
}

/// Forbidden-factor automaton over the arrows of a presentation.
///
/// A state is a vertex together with the longest suffix of the path read so
/// far that is a proper prefix of some relation. Completing a relation is
/// the dead state, which is not materialised.
struct FactorAutomaton<'a> {
    p: &'a MonomialPresentation,
    prefixes: HashSet<Vec<ArrowId>>,
}

impl<'a> FactorAutomaton<'a> {
    fn new(p: &'a MonomialPresentation) -> Self {
        let mut prefixes = HashSet::new();
        for r in &p.relations {
            for k in 0..r.arrows.len() {
                prefixes.insert(r.arrows[..k].to_vec());
            }
        }
        FactorAutomaton { p, prefixes }
    }

    /// Next state after reading `arrow`, or `None` if a relation completes.
    fn step(&self, state: &[ArrowId], arrow: ArrowId) -> Option<Vec<ArrowId>> {
        let mut word = state.to_vec();
        word.push(arrow);
        if self
            .p
            .relations
            .iter()
            .any(|r| word.ends_with(&r.arrows))
        {
            return None;
        }
        for start in 0..=word.len() {
            let suffix = &word[start..];
            if self.prefixes.contains(suffix) {
                return Some(suffix.to_vec());
            }
        }
        Some(Vec::new())
    }
}

pub fn path_basis(p: &MonomialPresentation) -> Result<AlgebraBasis> {
    let q = &p.quiver;
    let automaton = FactorAutomaton::new(p);

    // Live product states: (vertex, prefix). Detect a cycle by DFS colouring.
    type State = (VertexId, Vec<ArrowId>);
    let mut colour: HashMap<State, u8> = HashMap::new();
    fn visit(
        state: State,
        automaton: &FactorAutomaton<'_>,
        q: &Quiver,
        colour: &mut HashMap<State, u8>,
    ) -> std::result::Result<(), ArrowId> {
        match colour.get(&state) {
            Some(1) => return Ok(()),
            Some(_) => unreachable!(),
            None => {}
        }
        colour.insert(state.clone(), 2);
        for a in q.arrows_from(state.0) {
            if let Some(next) = automaton.step(&state.1, a) {
                let next_state = (q.arrow(a).target, next);
                if colour.get(&next_state) == Some(&2) {
                    return Err(a);
                }
                visit(next_state, automaton, q, colour)?;
            }
        }
        colour.insert(state, 1);
        Ok(())
    }
    for v in q.vertices() {
        if let Err(a) = visit((v, Vec::new()), &automaton, q, &mut colour) {
            return Err(Error::InfiniteDimensional {
                witness: q.arrow(a).name.clone(),
            });
        }
    }

    let mut blocks: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    for v in q.vertices() {
        let mut stack = vec![(Path::stationary(v), Vec::new())];
        while let Some((path, state)) = stack.pop() {
            for a in q.arrows_from(path.target()) {
                if let Some(next) = automaton.step(&state, a) {
                    stack.push((path.extended(q, a), next));
                }
            }
            blocks.entry((v, path.target())).or_default().push(path);
        }
    }
    for paths in blocks.values_mut() {
        paths.sort_by(|a, b| a.cmp_canonical(b));
    }
    Ok(AlgebraBasis {
        blocks,
        vertex_count: q.vertex_count(),
    })
}

pub fn is_connected(q: &Quiver) -> bool {
    q.is_connected()
}
