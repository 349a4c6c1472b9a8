//! Real Lie algebras given by structure constants.
//!
//! The bracket of basis vectors is `[e_i, e_j] = sum_k c[i][j][k] e_k`. The
//! tensor is stored densely, with a per-pair list of nonzero entries kept
//! alongside so that brackets of sparse vectors (the common case for the
//! product and orthogonal algebras) skip the zero constants.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Ring, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S> {
    dim: usize,
    constants: Vec<S>,
    sparse: Vec<Vec<(usize, S)>>,
    labels: Vec<String>,
    name: Option<String>,
}

/// Default labels `e1, e2, ...` (1-based, as shown to users).
pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl<S: Scalar> LieAlgebra<S> {
    /// Build and validate an algebra from sparse entries `(i, j, k, c)`
    /// meaning `c_{ij}^k = c`. The `(j, i)` entry is filled by antisymmetry;
    /// giving both orders is allowed only if they agree.
    pub fn new<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, S)>,
    {
        let mut constants = vec![S::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, k, c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            if seen[idx(i, j, k)] && constants[idx(i, j, k)] != c {
                return Err(Error::AntisymmetryViolation { i, j, k });
            }
            seen[idx(i, j, k)] = true;
            seen[idx(j, i, k)] = true;
            constants[idx(j, i, k)] = -c.clone();
            constants[idx(i, j, k)] = c;
        }
        let g = Self::from_dense(dim, constants);
        g.validate()?;
        Ok(g)
    }

    /// Antisymmetry and Jacobi checks (exact for rationals, `1e-9` for floats).
    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-9;
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = self.constant(i, j, k).clone() + self.constant(j, i, k).clone();
                    if !s.is_negligible(TOL) {
                        return Err(Error::AntisymmetryViolation { i, j, k });
                    }
                }
            }
        }
        // triples with a repeated index vanish by antisymmetry
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let r = self.jacobi_residual(i, j, k);
                    if r.iter().any(|x| !x.is_negligible(TOL)) {
                        return Err(Error::JacobiViolation {
                            i,
                            j,
                            k,
                            residual: r.iter().map(|x| format!("{x:?}")).collect(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The algebra in the basis given by the columns of `p`:
    /// `f_a = sum_i p[i][a] e_i`.
    pub fn change_of_basis(&self, p: &Matrix<S>) -> Result<Self> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.rows().max(p.cols()),
            });
        }
        let p_inv = p.inverse()?;
        let cols: Vec<Vec<S>> = (0..d).map(|a| p.column(a)).collect();
        let mut constants = vec![S::zero(); d * d * d];
        for a in 0..d {
            for b in a + 1..d {
                let br = self.bracket(&cols[a], &cols[b])?;
                let coords = p_inv.mul_vec(&br)?;
                for (c, x) in coords.into_iter().enumerate() {
                    constants[(b * d + a) * d + c] = -x.clone();
                    constants[(a * d + b) * d + c] = x;
                }
            }
        }
        let mut g = Self::from_dense(d, constants);
        g.name = self.name.clone();
        Ok(g)
    }
}

impl<S: Ring> LieAlgebra<S> {
    fn from_dense(dim: usize, constants: Vec<S>) -> Self {
        let sparse = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &constants[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Self {
            dim,
            constants,
            sparse,
            labels: default_labels(dim),
            name: None,
        }
    }

    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        Self::from_dense(dim, vec![S::zero(); dim * dim * dim])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `c_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        v
    }

    pub fn is_abelian(&self) -> bool {
        self.sparse.iter().all(Vec::is_empty)
    }

    fn check_len(&self, x: &[S]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `[x, y] = sum_{i,j} x_i y_j [e_i, e_j]`.
    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let sparse = self.basis_bracket(i, j);
                if sparse.is_empty() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, c) in sparse {
                    out[*k] = out[*k].clone() + w.clone() * c.clone();
                }
            }
        }
        Ok(out)
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, x) in self.basis_bracket(a, b) {
                for (l, y) in self.basis_bracket(*m, c) {
                    out[*l] = out[*l].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }

    /// Matrix of `[u, .]` in the standard basis: column `j` is `[u, e_j]`.
    pub fn adjoint_matrix(&self, u: &[S]) -> Result<Matrix<S>> {
        self.check_len(u)?;
        let mut m: Matrix<S> = Matrix::zeros(self.dim, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.basis_bracket(i, j) {
                    m[(*k, j)] = m[(*k, j)].clone() + ui.clone() * c.clone();
                }
            }
        }
        Ok(m)
    }

    /// Apply a ring map to every structure constant (e.g. rationals to floats).
    pub fn map_scalars<T: Ring>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        let mut g = LieAlgebra::from_dense(self.dim, self.constants.iter().map(f).collect());
        g.labels = self.labels.clone();
        g.name = self.name.clone();
        g
    }
}

/// `g x h` with bracket `[(u,v),(t,s)] = ([u,t],[v,s])`. Indices of `h`
/// are shifted by `g.dim()`; labels of the second factor get a `*` suffix.
pub fn direct_product<S: Ring>(g: &LieAlgebra<S>, h: &LieAlgebra<S>) -> LieAlgebra<S> {
    let (m, n) = (g.dim, h.dim);
    let d = m + n;
    let mut constants = vec![S::zero(); d * d * d];
    for i in 0..m {
        for j in 0..m {
            for (k, c) in g.basis_bracket(i, j) {
                constants[(i * d + j) * d + k] = c.clone();
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (k, c) in h.basis_bracket(i, j) {
                constants[((m + i) * d + m + j) * d + m + k] = c.clone();
            }
        }
    }
    let mut p = LieAlgebra::from_dense(d, constants);
    p.labels = g
        .labels
        .iter()
        .cloned()
        .chain(h.labels.iter().map(|l| format!("{l}*")))
        .collect();
    p.name = match (&g.name, &h.name) {
        (Some(a), Some(b)) => Some(format!("{a} x {b}")),
        _ => None,
    };
    p
}

impl LieAlgebra<Rational> {
    pub fn to_f64(&self) -> LieAlgebra<f64> {
        self.map_scalars(Scalar::to_f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::Zero;

    fn type8() -> LieAlgebra<Rational> {
        // [e1,e3] = -e2, [e2,e3] = e1, [e1,e2] = e3
        LieAlgebra::new(
            3,
            [
                (0, 2, 1, rat(-1, 1)),
                (1, 2, 0, rat(1, 1)),
                (0, 1, 2, rat(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn type8_is_valid() {
        let g = type8();
        assert_eq!(
            g.bracket(&g.basis_vector(0), &g.basis_vector(1)).unwrap(),
            g.basis_vector(2)
        );
        assert_eq!(*g.constant(2, 0, 1), rat(1, 1));
    }

    #[test]
    fn abelian_is_valid() {
        let g = LieAlgebra::<Rational>::new(3, []).unwrap();
        assert!(g.is_abelian());
    }

    #[test]
    fn index_out_of_range() {
        let r = LieAlgebra::new(3, [(0, 3, 1, rat(1, 1))]);
        assert!(matches!(
            r,
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn conflicting_orders_rejected() {
        let r = LieAlgebra::new(3, [(0, 1, 2, rat(1, 1)), (1, 0, 2, rat(1, 1))]);
        assert!(matches!(r, Err(Error::AntisymmetryViolation { .. })));
        // consistent reversed entry is fine
        let ok = LieAlgebra::new(3, [(0, 1, 2, rat(1, 1)), (1, 0, 2, rat(-1, 1))]);
        assert!(ok.is_ok());
    }

    #[test]
    fn jacobi_violation_reports_triple() {
        // [e1,e2] = e3, [e1,e3] = e1: only [[e3,e1],e2] = -e3 survives
        let r = LieAlgebra::new(3, [(0, 1, 2, rat(1, 1)), (0, 2, 0, rat(1, 1))]);
        match r {
            Err(Error::JacobiViolation { i, j, k, residual }) => {
                assert_eq!((i, j, k), (0, 1, 2));
                assert_eq!(residual.len(), 3);
            }
            other => panic!("expected JacobiViolation, got {other:?}"),
        }
    }

    #[test]
    fn three_dim_with_one_triple_can_still_be_lie() {
        // [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=e3: the (1,2,3) cycle expands to
        // [e1,e3] + [e3,e1] + [-e2,e2] = 0, so this is a Lie algebra.
        let g = LieAlgebra::new(
            3,
            [
                (0, 1, 0, rat(1, 1)),
                (0, 2, 1, rat(1, 1)),
                (1, 2, 2, rat(1, 1)),
            ],
        )
        .unwrap();
        assert!(g.jacobi_residual(0, 1, 2).iter().all(Zero::is_zero));
    }

    #[test]
    fn adjoint_zero_vector() {
        let g = type8();
        let m = g
            .adjoint_matrix(&[rat(0, 1), rat(0, 1), rat(0, 1)])
            .unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let g = type8();
        assert!(matches!(
            g.bracket(&[rat(1, 1)], &g.basis_vector(0)),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 1
            })
        ));
        assert!(g.adjoint_matrix(&[rat(1, 1)]).is_err());
    }

    #[test]
    fn product_blocks() {
        let g = type8();
        let p = direct_product(&g, &g);
        assert_eq!(p.dim(), 6);
        p.validate().unwrap();
        // [e1 + 0, e2 + 0] = e3 + 0, [e1 + 0, 0 + e2] = 0
        assert_eq!(
            p.bracket(&p.basis_vector(0), &p.basis_vector(1)).unwrap(),
            p.basis_vector(2)
        );
        assert!(p
            .bracket(&p.basis_vector(0), &p.basis_vector(4))
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        assert_eq!(p.labels()[4], "e2*");
    }

    #[test]
    fn identity_change_of_basis() {
        let g = type8();
        let h = g.change_of_basis(&Matrix::identity(3)).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn singular_change_of_basis() {
        let g = type8();
        assert!(matches!(
            g.change_of_basis(&Matrix::zeros(3, 3)),
            Err(Error::SingularMatrix)
        ));
    }
}
