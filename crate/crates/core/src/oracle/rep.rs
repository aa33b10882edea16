use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::quiver::{path_basis, ArrowId, MonomialPresentation, Path, Quiver, VertexId};

/// A bound representation: a vector space per vertex, a matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRepresentation {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl MatrixRepresentation {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(p: &MonomialPresentation, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = p.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::Shape(format!(
                "expected {} vertex spaces and {} arrow maps",
                q.vertex_count(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            let expected = (dims[a.target.index()], dims[a.source.index()]);
            if m.shape() != expected {
                return Err(Error::Shape(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.name,
                    expected.0,
                    expected.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let rep = MatrixRepresentation { dims, maps };
        for r in p.relations() {
            if !rep.path_action(r).is_zero() {
                return Err(Error::NotBound(p.relation_text(r)));
            }
        }
        Ok(rep)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v.index()]
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a.0]
    }

    /// Matrix of a path: the product of its arrow matrices, last arrow leftmost.
    pub fn path_action(&self, path: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.dim(path.source()));
        for &a in path.arrows() {
            acc = self.map(a) * &acc;
        }
        acc
    }
}

/// The simple module at `i`.
pub fn simple_representation(p: &MonomialPresentation, i: VertexId) -> Result<MatrixRepresentation> {
    p.check_vertex(i)?;
    let q = p.quiver();
    let dims: Vec<usize> = q.vertices().map(|v| usize::from(v == i)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.target.index()], dims[a.source.index()]))
        .collect();
    MatrixRepresentation::new(p, dims, maps)
}

/// `P(i)` from the path basis: paths `i -> j` at `j`, arrows act by
/// left multiplication.
pub fn representation_of_projective(p: &MonomialPresentation, i: VertexId) -> Result<MatrixRepresentation> {
    p.check_vertex(i)?;
    let q = p.quiver();
    let basis = path_basis(p)?;
    let blocks: Vec<&[Path]> = q.vertices().map(|j| basis.block(i, j)).collect();
    let index: Vec<HashMap<&Path, usize>> = blocks
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, path)| (path, k)).collect())
        .collect();
    let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let maps = q
        .arrow_ids()
        .map(|a| {
            let arrow = q.arrow(a);
            let (s, t) = (arrow.source.index(), arrow.target.index());
            let mut m = Matrix::zeros(dims[t], dims[s]);
            for (col, path) in blocks[s].iter().enumerate() {
                let longer = path.extended(q, a);
                if let Some(&row) = index[t].get(&longer) {
                    m.set(row, col, Scalar::one());
                }
            }
            m
        })
        .collect();
    MatrixRepresentation::new(p, dims, maps)
}

/// `I(j)` as the dual of the paths ending at `j`: at `k` the dual basis of
/// paths `k -> j`; an arrow `alpha: k -> k'` sends `(q alpha)^*` to `q^*`.
pub fn representation_of_injective(p: &MonomialPresentation, j: VertexId) -> Result<MatrixRepresentation> {
    p.check_vertex(j)?;
    let q = p.quiver();
    let basis = path_basis(p)?;
    let blocks: Vec<&[Path]> = q.vertices().map(|k| basis.block(k, j)).collect();
    let index: Vec<HashMap<&[ArrowId], usize>> = blocks
        .iter()
        .map(|b| b.iter().enumerate().map(|(n, path)| (path.arrows(), n)).collect())
        .collect();
    let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let maps = q
        .arrow_ids()
        .map(|a| {
            let arrow = q.arrow(a);
            let (s, t) = (arrow.source.index(), arrow.target.index());
            let mut m = Matrix::zeros(dims[t], dims[s]);
            for (col, path) in blocks[s].iter().enumerate() {
                if path.arrows().first() == Some(&a) {
                    let rest = &path.arrows()[1..];
                    if let Some(&row) = index[t].get(rest) {
                        m.set(row, col, Scalar::one());
                    }
                }
            }
            m
        })
        .collect();
    MatrixRepresentation::new(p, dims, maps)
}

/// A family of linear maps, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub components: Vec<Matrix>,
}

impl RepMorphism {
    pub fn identity(x: &MatrixRepresentation) -> Self {
        RepMorphism {
            components: x.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// `g_t M_a = N_a f_s` for every arrow `a: s -> t`.
    pub fn intertwines(&self, q: &Quiver, x: &MatrixRepresentation, y: &MatrixRepresentation) -> bool {
        q.arrow_ids().all(|a| {
            let arrow = q.arrow(a);
            let left = &self.components[arrow.target.index()] * x.map(a);
            let right = y.map(a) * &self.components[arrow.source.index()];
            left == right
        })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Matrix::rank).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    fn combination(basis: &[RepMorphism], coefficients: &[Scalar]) -> RepMorphism {
        let mut components: Vec<Matrix> = basis[0]
            .components
            .iter()
            .map(|m| Matrix::zeros(m.rows(), m.cols()))
            .collect();
        for (f, c) in basis.iter().zip(coefficients) {
            if c.is_zero() {
                continue;
            }
            for (acc, m) in components.iter_mut().zip(&f.components) {
                *acc = acc.add(&m.scaled(c));
            }
        }
        RepMorphism { components }
    }
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<RepMorphism>,
}

impl HomSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// All intertwiners `x -> y`, as the kernel of the stacked intertwiner system.
pub fn hom_space(q: &Quiver, x: &MatrixRepresentation, y: &MatrixRepresentation) -> HomSpace {
    // Unknown f_k is a dim_y(k) x dim_x(k) block laid out row-major.
    let mut offsets = Vec::with_capacity(x.dims.len());
    let mut unknowns = 0;
    for (dx, dy) in x.dims.iter().zip(&y.dims) {
        offsets.push(unknowns);
        unknowns += dx * dy;
    }
    let var = |k: usize, r: usize, c: usize| offsets[k] + r * x.dims[k] + c;

    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for a in q.arrow_ids() {
        let arrow = q.arrow(a);
        let (s, t) = (arrow.source.index(), arrow.target.index());
        let (m, n) = (x.map(a), y.map(a));
        // (f_t M - N f_s)[r][c] = 0 for r < dim_y(t), c < dim_x(s)
        for r in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..x.dims[t] {
                    let coeff = m.get(k, c);
                    if !coeff.is_zero() {
                        let v = var(t, r, k);
                        row[v] = &row[v] + coeff;
                    }
                }
                for k in 0..y.dims[s] {
                    let coeff = n.get(r, k);
                    if !coeff.is_zero() {
                        let v = var(s, k, c);
                        row[v] = &row[v] - coeff;
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    equations.push(row);
                }
            }
        }
    }

    let mut system = Matrix::zeros(equations.len(), unknowns);
    for (r, row) in equations.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            if !v.is_zero() {
                system.set(r, c, v);
            }
        }
    }
    let basis = system
        .nullspace()
        .into_iter()
        .map(|v| {
            let components = (0..x.dims.len())
                .map(|k| {
                    let mut f = Matrix::zeros(y.dims[k], x.dims[k]);
                    for r in 0..y.dims[k] {
                        for c in 0..x.dims[k] {
                            f.set(r, c, v[var(k, r, c)].clone());
                        }
                    }
                    f
                })
                .collect();
            RepMorphism { components }
        })
        .collect();
    HomSpace { basis }
}

/// Per-vertex socle bases: at `j`, the common kernel of all arrows leaving `j`.
pub fn socle_basis(q: &Quiver, x: &MatrixRepresentation) -> Vec<Matrix> {
    q.vertices()
        .map(|j| {
            let d = x.dim(j);
            let stacked = q
                .arrows_from(j)
                .map(|a| x.map(a).clone())
                .fold(Matrix::zeros(0, d), |acc, m| acc.vstack(&m));
            stacked.kernel_matrix()
        })
        .collect()
}

pub fn socle(q: &Quiver, x: &MatrixRepresentation) -> Vec<usize> {
    socle_basis(q, x).iter().map(Matrix::cols).collect()
}

/// Exact isomorphism test.
///
/// The product of the vertex determinants of `sum c_k f_k` is a polynomial of
/// total degree at most `D = dim x` in the hom-space coordinates, so it is
/// nonzero iff it is nonzero somewhere on the grid `{0..=D}^d`.
pub fn is_isomorphic(q: &Quiver, x: &MatrixRepresentation, y: &MatrixRepresentation) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let total = x.total_dimension();
    if total == 0 {
        return true;
    }
    let hom = hom_space(q, x, y);
    let d = hom.dimension();
    if d == 0 {
        return false;
    }
    let invertible = |f: &RepMorphism| {
        f.components
            .iter()
            .all(|m| m.rows() == 0 || !m.determinant().is_zero())
    };
    if hom.basis.iter().any(invertible) {
        return true;
    }
    let mut point = vec![0usize; d];
    loop {
        let mut k = 0;
        while k < d && point[k] == total {
            point[k] = 0;
            k += 1;
        }
        if k == d {
            return false;
        }
        point[k] += 1;
        let coefficients: Vec<Scalar> = point.iter().map(|&c| Scalar::from_integer(c as i64)).collect();
        if invertible(&RepMorphism::combination(&hom.basis, &coefficients)) {
            return true;
        }
    }
}

/// Isomorphism test for an indecomposable `x`.
///
/// `End(x)` is local, so its non-units form an ideal and `x = y` iff
/// `g f` is a unit for some basis elements `f: x -> y`, `g: y -> x`.
/// Every `P(i)` and `I(j)` is indecomposable.
pub fn is_isomorphic_indecomposable(q: &Quiver, x: &MatrixRepresentation, y: &MatrixRepresentation) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let unit = |f: &RepMorphism| {
        f.components
            .iter()
            .all(|m| m.rows() == 0 || !m.determinant().is_zero())
    };
    let forward = hom_space(q, x, y);
    if forward.basis.iter().any(unit) {
        return true;
    }
    if forward.basis.is_empty() {
        return false;
    }
    let backward = hom_space(q, y, x);
    forward.basis.iter().any(|f| {
        backward.basis.iter().any(|g| {
            unit(&RepMorphism {
                components: g.components.iter().zip(&f.components).map(|(g, f)| g * f).collect(),
            })
        })
    })
}

/// Whether every radical layer `rad^k / rad^(k+1)` has dimension at most one.
pub fn radical_series_uniserial(q: &Quiver, x: &MatrixRepresentation) -> bool {
    let mut current: Vec<Matrix> = x.dims.iter().map(|&d| Matrix::identity(d)).collect();
    loop {
        let size: usize = current.iter().map(Matrix::cols).sum();
        if size == 0 {
            return true;
        }
        let next: Vec<Matrix> = q
            .vertices()
            .map(|t| {
                let images: Vec<Vec<Scalar>> = q
                    .arrow_ids()
                    .filter(|&a| q.arrow(a).target == t)
                    .flat_map(|a| {
                        let image = x.map(a) * &current[q.arrow(a).source.index()];
                        (0..image.cols()).map(move |c| image.column(c))
                    })
                    .collect();
                Matrix::from_columns(x.dim(t), &images).column_space()
            })
            .collect();
        let next_size: usize = next.iter().map(Matrix::cols).sum();
        if size - next_size > 1 {
            return false;
        }
        if next_size == size {
            // Arrows do not act nilpotently; not a bound module of a finite algebra.
            return false;
        }
        current = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// For each `i`, the `j` with `P(i) = I(j)`, if any.
    pub matches: Vec<Option<VertexId>>,
    pub self_injective: bool,
}

impl OracleReport {
    pub fn permutation(&self) -> Option<Vec<VertexId>> {
        if self.self_injective {
            self.matches.iter().copied().collect()
        } else {
            None
        }
    }
}

/// Condition (1): the regular module is injective iff each `P(i)` is some
/// `I(pi(i))` with `pi` a bijection.
pub fn self_injective_oracle(p: &MonomialPresentation) -> Result<OracleReport> {
    let q = p.quiver();
    let projectives = p
        .vertices()
        .map(|i| representation_of_projective(p, i))
        .collect::<Result<Vec<_>>>()?;
    let injectives = p
        .vertices()
        .map(|j| representation_of_injective(p, j))
        .collect::<Result<Vec<_>>>()?;
    let matches: Vec<Option<VertexId>> = projectives
        .iter()
        .map(|proj| {
            injectives
                .iter()
                .position(|inj| is_isomorphic_indecomposable(q, proj, inj))
                .map(VertexId::from_index)
        })
        .collect();
    let mut hit = vec![false; q.vertex_count()];
    let mut bijective = true;
    for m in &matches {
        match m {
            Some(j) if !hit[j.index()] => hit[j.index()] = true,
            _ => bijective = false,
        }
    }
    Ok(OracleReport {
        matches,
        self_injective: bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(n: usize) -> VertexId {
        VertexId(n)
    }

    #[test]
    fn fig1_projective_at_one() {
        let p = fixtures::fig1();
        let q = p.quiver();
        let proj = representation_of_projective(&p, v(1)).unwrap();
        assert_eq!(proj.dims(), &[1, 2, 3]);
        // Basis at 2: alpha, beta; at 3: gamma*alpha, delta*alpha, gamma*beta.
        let delta = q.arrow_by_name("delta").unwrap();
        assert_eq!(
            proj.map(delta),
            &Matrix::from_rows(&[vec![0, 0], vec![1, 0], vec![0, 0]])
        );
    }

    #[test]
    fn small_projectives() {
        let point = fixtures::point();
        assert_eq!(representation_of_projective(&point, v(1)).unwrap().dims(), &[1]);

        let nak2 = fixtures::nak2();
        let q = nak2.quiver();
        let p2 = representation_of_projective(&nak2, v(2)).unwrap();
        assert_eq!(p2.dims(), &[1, 1]);
        assert_eq!(p2.map(q.arrow_by_name("a2").unwrap()), &Matrix::from_rows(&[vec![1]]));
        assert_eq!(p2.map(q.arrow_by_name("a1").unwrap()), &Matrix::from_rows(&[vec![0]]));
    }

    #[test]
    fn injectives() {
        let a2 = fixtures::a2();
        let q = a2.quiver();
        let i2 = representation_of_injective(&a2, v(2)).unwrap();
        assert_eq!(i2.dims(), &[1, 1]);
        assert!(!i2.map(ArrowId(0)).determinant().is_zero());
        let p1 = representation_of_projective(&a2, v(1)).unwrap();
        assert!(is_isomorphic(q, &p1, &i2));

        let point = fixtures::point();
        assert_eq!(representation_of_injective(&point, v(1)).unwrap().dims(), &[1]);

        let nak2 = fixtures::nak2();
        let q = nak2.quiver();
        let i2 = representation_of_injective(&nak2, v(2)).unwrap();
        assert_eq!(i2.dims(), &[1, 1]);
        let p1 = representation_of_projective(&nak2, v(1)).unwrap();
        let p2 = representation_of_projective(&nak2, v(2)).unwrap();
        assert!(is_isomorphic(q, &p1, &i2));
        assert!(!is_isomorphic(q, &p1, &p2));
        assert!(is_isomorphic(q, &p2, &p2));
        for (a, b) in [(&p1, &i2), (&p1, &p2), (&p2, &p2), (&p2, &i2)] {
            assert_eq!(is_isomorphic_indecomposable(q, a, b), is_isomorphic(q, a, b));
        }
    }

    #[test]
    fn hom_dimensions_on_fig1() {
        let p = fixtures::fig1();
        let q = p.quiver();
        let p1 = representation_of_projective(&p, v(1)).unwrap();
        let p2 = representation_of_projective(&p, v(2)).unwrap();
        let s3 = simple_representation(&p, v(3)).unwrap();
        let hom = hom_space(q, &p2, &p1);
        assert_eq!(hom.dimension(), 2);
        assert!(hom.basis.iter().all(|f| f.intertwines(q, &p2, &p1)));
        assert_eq!(hom_space(q, &s3, &p1).dimension(), 3);

        let end = hom_space(q, &p1, &p1);
        let id = RepMorphism::identity(&p1);
        let stacked: Vec<Vec<Scalar>> = end
            .basis
            .iter()
            .map(|f| f.components.iter().flat_map(|m| m.entries().to_vec()).collect())
            .collect();
        let target: Vec<Scalar> = id.components.iter().flat_map(|m| m.entries().to_vec()).collect();
        let a = Matrix::from_columns(target.len(), &stacked);
        assert!(a.solve(&target).is_some(), "identity lies in End(P(1))");
    }

    #[test]
    fn socles() {
        let p = fixtures::fig1();
        let p1 = representation_of_projective(&p, v(1)).unwrap();
        assert_eq!(socle(p.quiver(), &p1), vec![0, 0, 3]);

        let nak2 = fixtures::nak2();
        let p1 = representation_of_projective(&nak2, v(1)).unwrap();
        assert_eq!(socle(nak2.quiver(), &p1), vec![0, 1]);

        for i in p.vertices() {
            let s = simple_representation(&p, i).unwrap();
            let expected: Vec<usize> = p.vertices().map(|j| usize::from(j == i)).collect();
            assert_eq!(socle(p.quiver(), &s), expected);
        }
    }

    #[test]
    fn relations_are_enforced_at_construction() {
        let nak2 = fixtures::nak2();
        let one = Matrix::from_rows(&[vec![1]]);
        let err = MatrixRepresentation::new(&nak2, vec![1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::NotBound(_)));
    }

    #[test]
    fn oracle_condition_one() {
        let nak2 = oracle_of(fixtures::nak2());
        assert!(nak2.self_injective);
        assert_eq!(nak2.permutation(), Some(vec![v(2), v(1)]));
        assert!(!oracle_of(fixtures::a2()).self_injective);
        assert!(!oracle_of(fixtures::fig1()).self_injective);
        assert!(oracle_of(fixtures::point()).self_injective);
        assert!(oracle_of(fixtures::loop2()).self_injective);
    }

    fn oracle_of(p: MonomialPresentation) -> OracleReport {
        self_injective_oracle(&p).unwrap()
    }

    #[test]
    fn radical_layers() {
        let nak2 = fixtures::nak2();
        let p1 = representation_of_projective(&nak2, v(1)).unwrap();
        assert!(radical_series_uniserial(nak2.quiver(), &p1));

        let fig1 = fixtures::fig1();
        let p1 = representation_of_projective(&fig1, v(1)).unwrap();
        assert!(!radical_series_uniserial(fig1.quiver(), &p1));
        let s2 = simple_representation(&fig1, v(2)).unwrap();
        assert!(radical_series_uniserial(fig1.quiver(), &s2));
    }
}
