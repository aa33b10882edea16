//! Tree modules: rooted trees wound into the quiver, and their push-downs.
//!
//! `P(i)` is realised by the tree of relation-free paths starting at `i`,
//! grown one arrow at a time until no path extends without hitting a
//! relation. `S(i)` is the one-vertex tree over `i`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{Matrix, MatrixRepresentation, Scalar};
use crate::quiver::{path_basis, ArrowId, MonomialPresentation, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeArrow {
    pub source: usize,
    pub target: usize,
    pub name: String,
}

/// A finite tree with a distinguished root. Vertices are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    names: Vec<String>,
    arrows: Vec<TreeArrow>,
    root: usize,
}

impl RootedTree {
    /// Checks that the underlying graph is a tree. Rootedness (every vertex
    /// reachable from `root` along arrows) is a separate check, see
    /// [`RootedTree::is_rooted`].
    pub fn new(names: Vec<String>, arrows: Vec<TreeArrow>, root: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if root >= n {
            return Err(Error::NotATree(format!("root {root} out of range")));
        }
        if arrows.len() + 1 != n {
            return Err(Error::NotATree(format!("{} vertices but {} arrows", n, arrows.len())));
        }
        let mut adjacency = vec![Vec::new(); n];
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::NotATree(format!("arrow `{}` has an endpoint out of range", a.name)));
            }
            adjacency[a.source].push(a.target);
            adjacency[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotATree("underlying graph is disconnected".into()));
        }
        Ok(RootedTree { names, arrows, root })
    }

    pub fn single(name: impl Into<String>) -> Self {
        RootedTree {
            names: vec![name.into()],
            arrows: Vec::new(),
            root: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn arrows(&self) -> &[TreeArrow] {
        &self.arrows
    }

    /// `(arrow index, target)` for each arrow leaving `v`.
    pub fn children(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(k, a)| (k, a.target))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.children(v).count()
    }

    pub fn is_rooted(&self) -> bool {
        let mut reached = vec![false; self.vertex_count()];
        let mut stack = vec![self.root];
        reached[self.root] = true;
        while let Some(v) = stack.pop() {
            for (_, w) in self.children(v) {
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        reached.into_iter().all(|r| r)
    }

    /// Vertices without outgoing arrows.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.out_degree(v) == 0).collect()
    }
}

/// A quiver morphism from a tree: images of vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Winding {
    pub vertex_map: Vec<VertexId>,
    pub arrow_map: Vec<ArrowId>,
}

/// Tree with a winding into a presentation's quiver.
#[derive(Clone, Debug)]
pub struct TreeModule<'a> {
    presentation: &'a MonomialPresentation,
    tree: RootedTree,
    winding: Winding,
    title: String,
}

impl<'a> TreeModule<'a> {
    pub fn new(presentation: &'a MonomialPresentation, tree: RootedTree, winding: Winding) -> Result<Self> {
        if winding.vertex_map.len() != tree.vertex_count() || winding.arrow_map.len() != tree.arrows().len() {
            return Err(Error::Shape("winding does not cover the tree".into()));
        }
        Ok(TreeModule {
            presentation,
            tree,
            winding,
            title: "T".into(),
        })
    }

    pub fn presentation(&self) -> &'a MonomialPresentation {
        self.presentation
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn winding(&self) -> &Winding {
        &self.winding
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn vertex_image(&self, v: usize) -> VertexId {
        self.winding.vertex_map[v]
    }

    pub fn arrow_image(&self, k: usize) -> ArrowId {
        self.winding.arrow_map[k]
    }

    /// Position of each tree vertex inside the push-down's space at its image.
    pub fn coordinates(&self) -> Vec<usize> {
        let mut next = vec![0; self.presentation.vertex_count()];
        self.winding
            .vertex_map
            .iter()
            .map(|v| {
                let c = next[v.index()];
                next[v.index()] += 1;
                c
            })
            .collect()
    }

    /// Quiver-arrow words read along directed paths starting at `v`,
    /// mapped to the vertex where each word ends.
    pub fn words_from(&self, v: usize) -> BTreeMap<Vec<ArrowId>, usize> {
        let mut out = BTreeMap::new();
        let mut stack = vec![(v, Vec::new())];
        while let Some((at, word)) = stack.pop() {
            for (k, w) in self.tree.children(at) {
                let mut next = word.clone();
                next.push(self.arrow_image(k));
                stack.push((w, next));
            }
            out.insert(word, at);
        }
        out
    }

    /// Indented text form: the root as `(name, vertex)`, then one line per
    /// tree arrow as `arrow -> (name, vertex)`, two spaces per level.
    pub fn outline(&self) -> String {
        let q = self.presentation.quiver();
        let mut out = format!("{}\n", self.title);
        let root = self.tree.root();
        out.push_str(&format!("({}, {})\n", self.tree.name(root), self.vertex_image(root)));
        let mut stack: Vec<(usize, usize)> = self.tree.children(root).map(|(k, _)| (k, 1)).collect();
        stack.reverse();
        while let Some((k, depth)) = stack.pop() {
            let w = self.tree.arrows()[k].target;
            out.push_str(&format!(
                "{}{} -> ({}, {})\n",
                "  ".repeat(depth),
                q.arrow(self.arrow_image(k)).name,
                self.tree.name(w),
                self.vertex_image(w)
            ));
            let mut children: Vec<(usize, usize)> = self.tree.children(w).map(|(c, _)| (c, depth + 1)).collect();
            children.reverse();
            stack.extend(children);
        }
        out
    }

    /// Whether the tree is a single directed chain.
    pub fn is_uniserial(&self) -> bool {
        self.tree.is_rooted() && (0..self.tree.vertex_count()).all(|v| self.tree.out_degree(v) <= 1)
    }
}

fn is_locally_injective(t: &TreeModule<'_>) -> bool {
    let arrows = t.tree.arrows();
    for (k, a) in arrows.iter().enumerate() {
        for (m, b) in arrows.iter().enumerate().skip(k + 1) {
            let shared = a.source == b.source || a.target == b.target;
            if shared && t.arrow_image(k) == t.arrow_image(m) {
                return false;
            }
        }
    }
    true
}

fn is_quiver_morphism(t: &TreeModule<'_>) -> bool {
    let q = t.presentation.quiver();
    t.winding.vertex_map.iter().all(|&v| q.has_vertex(v))
        && t.tree.arrows().iter().enumerate().all(|(k, a)| {
            let id = t.arrow_image(k);
            id.0 < q.arrows().len()
                && q.arrow(id).source == t.vertex_image(a.source)
                && q.arrow(id).target == t.vertex_image(a.target)
        })
}

/// No directed tree path is sent onto a relation.
fn avoids_relations(t: &TreeModule<'_>) -> bool {
    let relations: BTreeSet<&[ArrowId]> = t.presentation.relations().iter().map(Path::arrows).collect();
    let longest = relations.iter().map(|r| r.len()).max().unwrap_or(0);
    (0..t.tree.vertex_count()).all(|v| {
        let mut stack = vec![(v, Vec::new())];
        while let Some((at, word)) = stack.pop() {
            if relations.contains(word.as_slice()) {
                return false;
            }
            if word.len() < longest {
                for (k, w) in t.tree.children(at) {
                    let mut next = word.clone();
                    next.push(t.arrow_image(k));
                    stack.push((w, next));
                }
            }
        }
        true
    })
}

pub fn validate_winding(t: &TreeModule<'_>) -> bool {
    is_quiver_morphism(t) && is_locally_injective(t) && avoids_relations(t)
}

/// The tree `T_i` of `P(i)`: vertices are relation-free paths from `i`,
/// children added in arrow order.
pub fn build_projective_tree(p: &MonomialPresentation, i: VertexId) -> Result<TreeModule<'_>> {
    p.check_vertex(i)?;
    path_basis(p)?;
    let q = p.quiver();
    let mut names = vec![format!("*_{i}")];
    let mut vertex_map = vec![i];
    let mut arrows = Vec::new();
    let mut arrow_map = Vec::new();
    let mut queue = VecDeque::from([(0usize, Path::stationary(i))]);
    while let Some((v, path)) = queue.pop_front() {
        for a in q.arrows_from(path.target()) {
            let longer = path.extended(q, a);
            if !p.is_relation_free(&longer) {
                continue;
            }
            let w = names.len();
            names.push(longer.display(q).to_string());
            vertex_map.push(q.arrow(a).target);
            arrows.push(TreeArrow {
                source: v,
                target: w,
                name: format!("t{}", arrows.len() + 1),
            });
            arrow_map.push(a);
            queue.push_back((w, longer));
        }
    }
    let tree = RootedTree::new(names, arrows, 0)?;
    let mut module = TreeModule::new(p, tree, Winding { vertex_map, arrow_map })?;
    module.title = format!("T_{i}");
    Ok(module)
}

/// `S(i)` as the one-vertex tree over `i`.
pub fn build_simple_tree(p: &MonomialPresentation, i: VertexId) -> Result<TreeModule<'_>> {
    p.check_vertex(i)?;
    let mut module = TreeModule::new(
        p,
        RootedTree::single("*"),
        Winding {
            vertex_map: vec![i],
            arrow_map: Vec::new(),
        },
    )?;
    module.title = format!("S_{i}");
    Ok(module)
}

/// Simple summands of a socle with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SocleSummary {
    pub entries: BTreeMap<VertexId, usize>,
}

impl SocleSummary {
    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, v: VertexId) -> usize {
        self.entries.get(&v).copied().unwrap_or(0)
    }

    /// Per-vertex dimensions, as the oracle reports them.
    pub fn dimension_vector(&self, vertex_count: usize) -> Vec<usize> {
        (1..=vertex_count).map(|j| self.multiplicity(VertexId(j))).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.total() == 1
    }
}

pub fn leaf_socle(t: &TreeModule<'_>) -> SocleSummary {
    let mut entries = BTreeMap::new();
    for leaf in t.tree.leaves() {
        *entries.entry(t.vertex_image(leaf)).or_insert(0) += 1;
    }
    SocleSummary { entries }
}

/// `soc P(i)`, one simple per leaf of `T_i`.
pub fn socle_of_projective(p: &MonomialPresentation, i: VertexId) -> Result<SocleSummary> {
    Ok(leaf_socle(&build_projective_tree(p, i)?))
}

/// The push-down `F_lambda V_T`: at `j` a basis vector per tree vertex over
/// `j`; arrow `alpha` sends `v` to `w` for each tree arrow `v -> w` over it.
pub fn push_down(t: &TreeModule<'_>) -> Result<MatrixRepresentation> {
    let p = t.presentation;
    let q = p.quiver();
    let coords = t.coordinates();
    let mut dims = vec![0; q.vertex_count()];
    for v in &t.winding.vertex_map {
        dims[v.index()] += 1;
    }
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target.index()], dims[a.source.index()]))
        .collect();
    for (k, a) in t.tree.arrows().iter().enumerate() {
        maps[t.arrow_image(k).0].set(coords[a.target], coords[a.source], Scalar::one());
    }
    MatrixRepresentation::new(p, dims, maps)
}

/// Arrow-name words read along all directed paths starting at `v`.
pub fn label_path_set(t: &TreeModule<'_>, v: usize) -> BTreeSet<Vec<String>> {
    let q = t.presentation.quiver();
    t.words_from(v)
        .into_keys()
        .map(|word| word.iter().map(|&a| q.arrow(a).name.clone()).collect())
        .collect()
}

pub fn is_uniserial(t: &TreeModule<'_>) -> bool {
    t.is_uniserial()
}
