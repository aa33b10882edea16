//! Graph maps between tree modules with rooted sources, and the
//! socle-injectivity test built on them.
//!
//! For a rooted source `X` every factor subtree contains the root, so a
//! graph map is pinned down by where the root goes. Anchored matching tries
//! every vertex `v` of `Y` over the root's image: the map exists iff every
//! word read downward from `v` in `Y` is also read downward from the root
//! of `X`, and then it is unique because windings are locally injective.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{socle_basis, Matrix, MatrixRepresentation, RepMorphism, Scalar};
use crate::quiver::{MonomialPresentation, VertexId};
use crate::tree::{build_projective_tree, push_down, TreeModule};

/// `(factor subtree of X, image subtree of Y, sigma)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMap {
    /// `(x, sigma(x))` for every `x` in the factor subtree, sorted by `x`.
    pub sigma: Vec<(usize, usize)>,
}

impl GraphMap {
    pub fn factor(&self) -> BTreeSet<usize> {
        self.sigma.iter().map(|&(x, _)| x).collect()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.sigma.iter().map(|&(_, y)| y).collect()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.sigma.iter().find(|&&(a, _)| a == x).map(|&(_, y)| y)
    }
}

#[derive(Clone, Debug)]
pub struct HomBasis {
    pub maps: Vec<GraphMap>,
}

impl HomBasis {
    pub fn dimension(&self) -> usize {
        self.maps.len()
    }
}

fn same_presentation(x: &TreeModule<'_>, y: &TreeModule<'_>) -> Result<()> {
    if std::ptr::eq(x.presentation(), y.presentation()) || x.presentation() == y.presentation() {
        Ok(())
    } else {
        Err(Error::Shape("tree modules over different presentations".into()))
    }
}

pub fn enumerate_graph_maps(x: &TreeModule<'_>, y: &TreeModule<'_>) -> Result<HomBasis> {
    same_presentation(x, y)?;
    if !x.tree().is_rooted() {
        return Err(Error::NotRooted);
    }
    let root = x.tree().root();
    let from_root = x.words_from(root);
    let target = x.vertex_image(root);
    let mut maps = Vec::new();
    for anchor in 0..y.tree().vertex_count() {
        if y.vertex_image(anchor) != target {
            continue;
        }
        let below = y.words_from(anchor);
        let sigma: Option<Vec<(usize, usize)>> = below
            .iter()
            .map(|(word, &w)| from_root.get(word).map(|&u| (u, w)))
            .collect();
        if let Some(mut sigma) = sigma {
            sigma.sort_unstable();
            maps.push(GraphMap { sigma });
        }
    }
    Ok(HomBasis { maps })
}

pub fn hom_dim(x: &TreeModule<'_>, y: &TreeModule<'_>) -> Result<usize> {
    Ok(enumerate_graph_maps(x, y)?.dimension())
}

/// The linear map of a graph map between push-downs: the basis vector of
/// `u` goes to that of `sigma(u)` on the factor, to zero elsewhere.
pub fn graph_map_as_matrices(x: &TreeModule<'_>, y: &TreeModule<'_>, g: &GraphMap) -> RepMorphism {
    let n = x.presentation().vertex_count();
    let count = |t: &TreeModule<'_>| {
        let mut dims = vec![0; n];
        for v in &t.winding().vertex_map {
            dims[v.index()] += 1;
        }
        dims
    };
    let (dx, dy) = (count(x), count(y));
    let mut components: Vec<Matrix> = (0..n).map(|k| Matrix::zeros(dy[k], dx[k])).collect();
    let (cx, cy) = (x.coordinates(), y.coordinates());
    for &(u, w) in &g.sigma {
        let k = x.vertex_image(u).index();
        components[k].set(cy[w], cx[u], Scalar::one());
    }
    RepMorphism { components }
}

/// A basis element of `Hom(soc P(i), P(j))`: the socle vector at leaf
/// `source_leaf` of `T_i` goes to leaf `target_leaf` of `T_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LeafPair {
    pub source: VertexId,
    pub source_leaf: usize,
    pub target: VertexId,
    pub target_leaf: usize,
}

/// All `T_i`, built once.
pub struct RegularModule<'a> {
    presentation: &'a MonomialPresentation,
    trees: Vec<TreeModule<'a>>,
}

impl<'a> RegularModule<'a> {
    pub fn new(p: &'a MonomialPresentation) -> Result<Self> {
        let trees = p
            .vertices()
            .map(|i| build_projective_tree(p, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(RegularModule { presentation: p, trees })
    }

    pub fn tree(&self, i: VertexId) -> &TreeModule<'a> {
        &self.trees[i.index()]
    }

    pub fn trees(&self) -> &[TreeModule<'a>] {
        &self.trees
    }

    pub fn socle_hom_basis(&self) -> Vec<LeafPair> {
        let mut pairs = Vec::new();
        for (i, ti) in self.presentation.vertices().zip(&self.trees) {
            for (j, tj) in self.presentation.vertices().zip(&self.trees) {
                for x in ti.tree().leaves() {
                    for y in tj.tree().leaves() {
                        if ti.vertex_image(x) == tj.vertex_image(y) {
                            pairs.push(LeafPair {
                                source: i,
                                source_leaf: x,
                                target: j,
                                target_leaf: y,
                            });
                        }
                    }
                }
            }
        }
        pairs
    }

    /// Columns: graph maps `P(i) -> P(j)`. Rows: leaf pairs. Each column is
    /// the composite with the socle inclusion, written in the leaf-pair basis
    /// by an exact linear solve against the oracle's socle.
    pub fn restriction_matrix(&self) -> Result<RestrictionMatrix> {
        let q = self.presentation.quiver();
        let rows = self.socle_hom_basis();
        let push_downs: Vec<MatrixRepresentation> = self.trees.iter().map(push_down).collect::<Result<_>>()?;
        let socles: Vec<Vec<Matrix>> = push_downs.iter().map(|x| socle_basis(q, x)).collect();

        let mut columns = Vec::new();
        let mut entries: Vec<Vec<Scalar>> = Vec::new();
        for (i, ti) in self.presentation.vertices().zip(&self.trees) {
            for (j, tj) in self.presentation.vertices().zip(&self.trees) {
                let block: Vec<usize> = (0..rows.len())
                    .filter(|&r| rows[r].source == i && rows[r].target == j)
                    .collect();
                // Each candidate row as a map soc P(i) -> P(j), flattened.
                let row_maps: Vec<Vec<Scalar>> = block
                    .iter()
                    .map(|&r| {
                        let pair = &rows[r];
                        let g = crate::graph_hom::GraphMap {
                            sigma: vec![(pair.source_leaf, pair.target_leaf)],
                        };
                        flatten_on_socle(&graph_map_as_matrices(ti, tj, &g), &socles[i.index()])
                    })
                    .collect();
                let system = Matrix::from_columns(
                    row_maps.first().map_or_else(
                        || flatten_len(&push_downs[j.index()], &socles[i.index()]),
                        Vec::len,
                    ),
                    &row_maps,
                );
                for g in enumerate_graph_maps(ti, tj)?.maps {
                    let composite = flatten_on_socle(&graph_map_as_matrices(ti, tj, &g), &socles[i.index()]);
                    let coefficients = system.solve(&composite).ok_or_else(|| {
                        Error::Inconsistent(format!(
                            "graph map P({i}) -> P({j}) does not restrict into the leaf-pair span"
                        ))
                    })?;
                    let mut column = vec![Scalar::zero(); rows.len()];
                    for (&r, c) in block.iter().zip(coefficients) {
                        column[r] = c;
                    }
                    entries.push(column);
                    columns.push((i, j, g));
                }
            }
        }
        let matrix = Matrix::from_columns(rows.len(), &entries);
        Ok(RestrictionMatrix { rows, columns, matrix })
    }
}

fn flatten_len(y: &MatrixRepresentation, socle: &[Matrix]) -> usize {
    y.dims().iter().zip(socle).map(|(d, s)| d * s.cols()).sum()
}

/// Entries of `f_k * S_k` over all vertices, where `S_k` spans the socle at `k`.
fn flatten_on_socle(f: &RepMorphism, socle: &[Matrix]) -> Vec<Scalar> {
    f.components
        .iter()
        .zip(socle)
        .flat_map(|(m, s)| (m * s).entries().to_vec())
        .collect()
}

#[derive(Clone, Debug)]
pub struct RestrictionMatrix {
    pub rows: Vec<LeafPair>,
    pub columns: Vec<(VertexId, VertexId, GraphMap)>,
    pub matrix: Matrix,
}

impl RestrictionMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether restriction `Hom(L, L) -> Hom(soc L, L)` is onto.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows.len()
    }

    /// Every entry is 0 or 1, and no column has two nonzero entries for the
    /// same source leaf.
    pub fn is_zero_one(&self) -> bool {
        let m = &self.matrix;
        if !m.entries().iter().all(|e| e.is_zero() || e.is_one()) {
            return false;
        }
        (0..m.cols()).all(|c| {
            let mut seen = BTreeSet::new();
            (0..m.rows())
                .filter(|&r| !m.get(r, c).is_zero())
                .all(|r| seen.insert((self.rows[r].source, self.rows[r].source_leaf)))
        })
    }
}

pub fn socle_hom_basis(p: &MonomialPresentation) -> Result<Vec<LeafPair>> {
    Ok(RegularModule::new(p)?.socle_hom_basis())
}

pub fn restriction_matrix(p: &MonomialPresentation) -> Result<RestrictionMatrix> {
    RegularModule::new(p)?.restriction_matrix()
}

/// Condition (3): every map `soc L -> L` extends to an endomorphism of `L`.
pub fn is_socle_injective(p: &MonomialPresentation) -> Result<bool> {
    Ok(restriction_matrix(p)?.is_surjective())
}
