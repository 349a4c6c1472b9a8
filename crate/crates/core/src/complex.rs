//! Candidate complex structures, the Nijenhuis tensor and integrability.

use nalgebra::{DMatrix, Schur};
use rayon::prelude::*;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Ring, Scalar};

/// Tolerance on `||J^2 + I||_inf` in the numeric profile.
pub const NUMERIC_SQUARE_TOL: f64 = 1e-9;
/// Tolerance on Nijenhuis components in the numeric profile.
pub const NUMERIC_NIJENHUIS_TOL: f64 = 1e-9;

/// A linear map of the algebra to itself, stored as its matrix in the
/// standard basis (column `j` is the image of `e_j`).
#[derive(Debug, Clone, PartialEq)]
pub struct Endomorphism<S> {
    m: Matrix<S>,
}

impl<S: Ring> Endomorphism<S> {
    pub fn new(m: Matrix<S>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self { m })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.m
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        self.m.mul_vec(v)
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Endomorphism<T> {
        Endomorphism { m: self.m.map(f) }
    }

    /// `J^2 + I`.
    pub fn square_plus_identity(&self) -> Matrix<S> {
        let mut sq = self.m.mul(&self.m).expect("square matrix");
        for i in 0..self.dim() {
            sq[(i, i)] = sq[(i, i)].clone() + S::one();
        }
        sq
    }
}

impl<S: Scalar> Endomorphism<S> {
    /// `J^2 = -I`, exactly for rationals, within [`NUMERIC_SQUARE_TOL`]
    /// (max absolute row sum of `J^2 + I`) for floats.
    pub fn is_complex_structure(&self) -> bool {
        let r = self.square_plus_identity();
        if S::EXACT {
            return r.is_zero();
        }
        (0..r.rows())
            .map(|i| r.row(i).iter().map(|x| x.to_f64().abs()).sum::<f64>())
            .fold(0.0, f64::max)
            <= NUMERIC_SQUARE_TOL
    }

    pub fn to_f64(&self) -> Endomorphism<f64> {
        self.map(Scalar::to_f64)
    }
}

fn check_dims<S: Ring>(g: &LieAlgebra<S>, j: &Endomorphism<S>) -> Result<()> {
    if g.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: j.dim(),
        });
    }
    Ok(())
}

/// `N(v,w) = [v,w] + J[Jv,w] + J[v,Jw] - [Jv,Jw]`, evaluated as written:
/// `J` need not square to `-I`.
pub fn nijenhuis<S: Ring>(
    g: &LieAlgebra<S>,
    j: &Endomorphism<S>,
    v: &[S],
    w: &[S],
) -> Result<Vec<S>> {
    check_dims(g, j)?;
    let jv = j.apply(v)?;
    let jw = j.apply(w)?;
    let t1 = g.bracket(v, w)?;
    let t2 = j.apply(&g.bracket(&jv, w)?)?;
    let t3 = j.apply(&g.bracket(v, &jw)?)?;
    let t4 = g.bracket(&jv, &jw)?;
    Ok(t1
        .into_iter()
        .zip(t2)
        .zip(t3)
        .zip(t4)
        .map(|(((a, b), c), d)| a + b + c - d)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairValue<S> {
    pub a: usize,
    pub b: usize,
    pub value: Vec<S>,
}

impl<S: Scalar> PairValue<S> {
    pub fn is_zero(&self) -> bool {
        let tol = NUMERIC_NIJENHUIS_TOL;
        self.value.iter().all(|x| x.is_negligible(tol))
    }

    pub fn norm(&self) -> f64 {
        self.value
            .iter()
            .map(|x| x.to_f64().powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Nijenhuis tensor on every basis pair `a < b`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrabilityReport<S> {
    pub dim: usize,
    pub pairs: Vec<PairValue<S>>,
    pub integrable: bool,
    pub max_residual_norm: f64,
}

impl<S: Scalar> IntegrabilityReport<S> {
    pub fn nonzero_pairs(&self) -> impl Iterator<Item = &PairValue<S>> {
        self.pairs.iter().filter(|p| !p.is_zero())
    }
}

/// Evaluate `N(e_a, e_b)` for all `a < b`.
///
/// `N` is bilinear and antisymmetric, so it vanishes identically iff it
/// vanishes on every unordered pair of basis vectors; diagonal pairs are
/// zero by antisymmetry.
pub fn is_integrable<S: Scalar>(
    g: &LieAlgebra<S>,
    j: &Endomorphism<S>,
) -> Result<IntegrabilityReport<S>> {
    check_dims(g, j)?;
    if !j.is_complex_structure() {
        return Err(Error::NotAComplexStructure);
    }
    let d = g.dim();
    let basis: Vec<Vec<S>> = (0..d).map(|i| g.basis_vector(i)).collect();
    let index_pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
        .collect();
    let pairs = index_pairs
        .into_par_iter()
        .map(|(a, b)| nijenhuis(g, j, &basis[a], &basis[b]).map(|value| PairValue { a, b, value }))
        .collect::<Result<Vec<_>>>()?;
    let integrable = pairs.iter().all(PairValue::is_zero);
    let max_residual_norm = pairs.iter().map(PairValue::norm).fold(0.0, f64::max);
    Ok(IntegrabilityReport {
        dim: d,
        pairs,
        integrable,
        max_residual_norm,
    })
}

/// A real eigenpair of the `g -> g` block of a complex structure.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

const IMAG_TOL: f64 = 1e-6;
const CLUSTER_TOL: f64 = 1e-6;
const NULL_TOL: f64 = 1e-7;

/// Real eigenpairs of the top-left `split_dim x split_dim` block of `J`.
///
/// These are the quasi-invariant vectors: `u` in the first factor whose
/// image has first-factor part `lambda u`. Each eigenspace is reported by a
/// canonical basis (reduced row echelon form of its span), every vector
/// scaled to unit norm with its first nonzero coordinate positive. Output is
/// sorted by eigenvalue.
pub fn quasi_invariant_vectors<S: Scalar>(
    j: &Endomorphism<S>,
    split_dim: usize,
) -> Result<Vec<EigenPair>> {
    if split_dim == 0 || j.dim() != 2 * split_dim {
        return Err(Error::DimensionMismatch {
            expected: 2 * split_dim,
            found: j.dim(),
        });
    }
    let k = split_dim;
    let block = DMatrix::from_fn(k, k, |r, c| j.matrix()[(r, c)].to_f64());
    let scale = block.amax().max(1.0);
    let eig = Schur::try_new(block.clone(), f64::EPSILON, 100_000)
        .map(|s| s.complex_eigenvalues())
        .ok_or(Error::SingularMatrix)?;

    let mut reals: Vec<f64> = eig
        .iter()
        .filter(|z| z.im.abs() <= IMAG_TOL * scale)
        .map(|z| z.re)
        .collect();
    reals.sort_by(f64::total_cmp);
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for x in reals {
        match clusters.last_mut() {
            Some(c) if (x - c[c.len() - 1]).abs() <= CLUSTER_TOL * scale => c.push(x),
            _ => clusters.push(vec![x]),
        }
    }

    let mut out = Vec::new();
    for c in clusters {
        let lambda = c.iter().sum::<f64>() / c.len() as f64;
        let lambda = if lambda.abs() < 1e-12 { 0.0 } else { lambda };
        let shifted = &block - DMatrix::identity(k, k) * lambda;
        for vector in null_space_basis(shifted, NULL_TOL * scale) {
            out.push(EigenPair {
                value: lambda,
                vector,
            });
        }
    }
    Ok(out)
}

fn null_space_basis(a: DMatrix<f64>, tol: f64) -> Vec<Vec<f64>> {
    let k = a.ncols();
    // pad to square so the SVD returns a full right basis
    let mut sq = DMatrix::zeros(k.max(a.nrows()), k);
    sq.rows_mut(0, a.nrows()).copy_from(&a);
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut basis: Vec<Vec<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= tol)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect();
    if basis.is_empty() {
        // the eigenvalue was real but the null space is numerically empty:
        // fall back to the least singular direction
        let i = svd.singular_values.argmin().0;
        basis.push(v_t.row(i).iter().copied().collect());
    }
    canonical_span(basis, k)
}

/// Reduced row echelon form of the span of `vectors`, then normalized.
fn canonical_span(vectors: Vec<Vec<f64>>, k: usize) -> Vec<Vec<f64>> {
    let mut rows = vectors;
    let mut lead = 0;
    let mut r = 0;
    while r < rows.len() && lead < k {
        let p = (r..rows.len())
            .max_by(|&a, &b| rows[a][lead].abs().total_cmp(&rows[b][lead].abs()))
            .expect("nonempty range");
        if rows[p][lead].abs() <= 1e-9 {
            lead += 1;
            continue;
        }
        rows.swap(p, r);
        let piv = rows[r][lead];
        rows[r].iter_mut().for_each(|x| *x /= piv);
        for s in 0..rows.len() {
            if s != r {
                let f = rows[s][lead];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[s].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
        lead += 1;
    }
    rows.truncate(r);
    rows.into_iter().map(normalize_vector).collect()
}

fn normalize_vector(mut v: Vec<f64>) -> Vec<f64> {
    for x in v.iter_mut() {
        if x.abs() < 1e-14 {
            *x = 0.0;
        }
    }
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let sign = v
        .iter()
        .find(|x| x.abs() > 1e-12)
        .map_or(1.0, |x| x.signum());
    v.iter_mut().for_each(|x| *x = *x * sign / n + 0.0);
    v
}

/// `true` if every component is exactly (or negligibly) zero.
pub fn is_zero_vector<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_negligible(NUMERIC_NIJENHUIS_TOL))
}

/// Exact equality helper for ring vectors.
pub fn vectors_equal<S: Ring>(a: &[S], b: &[S]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x.clone() - y.clone()).is_zero())
}
