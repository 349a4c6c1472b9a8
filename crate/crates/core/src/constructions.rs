//! Explicit algebras and integrable complex structures: the Bianchi
//! catalog of 3-dimensional algebras, the Jordan-triple construction on
//! `g x g`, and the pairing structure on `o(n) x o(n)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{direct_product, LieAlgebra};
use crate::complex::{vectors_equal, Endomorphism};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, rat, Rational};

/// One of the eight parametrized types of 3-dimensional real Lie algebras.
/// Types 4 and 6 carry a nonzero parameter `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct BianchiSpec {
    type_id: u8,
    theta: Option<Rational>,
}

impl BianchiSpec {
    pub fn new(type_id: u8, theta: Option<Rational>) -> Result<Self> {
        if !(1..=8).contains(&type_id) {
            return Err(Error::InvalidType(type_id));
        }
        let takes_theta = matches!(type_id, 4 | 6);
        match (&theta, takes_theta) {
            (None, true) => return Err(Error::ThetaRequired(type_id)),
            (Some(_), false) => return Err(Error::ThetaForbidden(type_id)),
            (Some(t), true) if t.is_zero() => return Err(Error::ThetaZero),
            _ => {}
        }
        Ok(Self { type_id, theta })
    }

    /// Shorthand for parameterless types.
    pub fn plain(type_id: u8) -> Result<Self> {
        Self::new(type_id, None)
    }

    pub fn with_theta(type_id: u8, theta: Rational) -> Result<Self> {
        Self::new(type_id, Some(theta))
    }

    pub fn type_id(&self) -> u8 {
        self.type_id
    }

    pub fn theta(&self) -> Option<&Rational> {
        self.theta.as_ref()
    }

    /// Whether `g x g` carries an integrable complex structure.
    pub fn admits_structure(&self) -> bool {
        match self.type_id {
            5 => false,
            4 => self.theta.as_ref().is_some_and(One::is_one),
            _ => true,
        }
    }
}

impl fmt::Display for BianchiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.theta {
            Some(t) => write!(f, "({}) theta={}", self.type_id, format_rational(t)),
            None => write!(f, "({})", self.type_id),
        }
    }
}

/// All specs with the parameters used in regression runs:
/// `theta` in `{1, 2, 1/2, -1}` for types 4 and 6.
pub fn catalog_specs() -> Vec<BianchiSpec> {
    let thetas = [rat(1, 1), rat(2, 1), rat(1, 2), rat(-1, 1)];
    let mut out = Vec::new();
    for t in 1..=8u8 {
        if matches!(t, 4 | 6) {
            for th in &thetas {
                out.push(BianchiSpec::with_theta(t, th.clone()).expect("valid spec"));
            }
        } else {
            out.push(BianchiSpec::plain(t).expect("valid spec"));
        }
    }
    out
}

/// The seven specs whose products admit an integrable complex structure:
/// types 1, 2, 3, 6 (theta = 1), 7, 8 and 4 with theta = 1.
pub fn existence_specs() -> Vec<BianchiSpec> {
    vec![
        BianchiSpec::plain(1).unwrap(),
        BianchiSpec::plain(2).unwrap(),
        BianchiSpec::plain(3).unwrap(),
        BianchiSpec::with_theta(4, rat(1, 1)).unwrap(),
        BianchiSpec::with_theta(6, rat(1, 1)).unwrap(),
        BianchiSpec::plain(7).unwrap(),
        BianchiSpec::plain(8).unwrap(),
    ]
}

/// Nonzero brackets `[e_i, e_j] = sum c e_k` of a Bianchi type, 0-based,
/// `i < j`.
pub fn bianchi_brackets(spec: &BianchiSpec) -> Vec<(usize, usize, usize, Rational)> {
    let one = || rat(1, 1);
    let th = || spec.theta.clone().expect("validated spec");
    let (e1, e2, e3) = (0, 1, 2);
    let all = match spec.type_id {
        1 => vec![],
        2 => vec![(e1, e2, e1, one())],
        3 => vec![(e1, e2, e3, one())],
        4 => vec![(e1, e3, e1, one()), (e2, e3, e2, th())],
        5 => vec![
            (e1, e3, e1, one()),
            (e2, e3, e1, one()),
            (e2, e3, e2, one()),
        ],
        6 => vec![
            (e1, e3, e1, th()),
            (e1, e3, e2, -one()),
            (e2, e3, e1, one()),
            (e2, e3, e2, th()),
        ],
        7 => vec![
            (e1, e3, e2, one()),
            (e2, e3, e1, one()),
            (e1, e2, e3, one()),
        ],
        8 => vec![
            (e1, e3, e2, -one()),
            (e2, e3, e1, one()),
            (e1, e2, e3, one()),
        ],
        _ => unreachable!("validated spec"),
    };
    all.into_iter().filter(|e| !e.3.is_zero()).collect()
}

pub fn bianchi(spec: &BianchiSpec) -> LieAlgebra<Rational> {
    LieAlgebra::new(3, bianchi_brackets(spec))
        .expect("catalog algebras satisfy Jacobi")
        .with_name(format!("type {spec}"))
}

/// Relation satisfied by the adjoint of `u` on `v, w`.
#[derive(Debug, Clone, PartialEq)]
pub enum JordanCase {
    /// `[u,v] = a v + b w`, `[u,w] = -b v + a w`, `b != 0`.
    ComplexPair { a: Rational, b: Rational },
    /// `[u,v] = alpha v`, `[u,w] = alpha w`.
    RealEigen { alpha: Rational },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanTriple {
    pub u: Vec<Rational>,
    pub v: Vec<Rational>,
    pub w: Vec<Rational>,
    pub case: JordanCase,
}

fn combo(a: &Rational, x: &[Rational], b: &Rational, y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

/// Check the case relations and that `{u, v, w}` is a basis.
pub fn validate_jordan_triple(g: &LieAlgebra<Rational>, t: &JordanTriple) -> Result<bool> {
    if g.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: g.dim(),
        });
    }
    let uv = g.bracket(&t.u, &t.v)?;
    let uw = g.bracket(&t.u, &t.w)?;
    g.bracket(&t.v, &t.w)?;
    let relations = match &t.case {
        JordanCase::ComplexPair { a, b } => {
            !b.is_zero()
                && vectors_equal(&uv, &combo(a, &t.v, b, &t.w))
                && vectors_equal(&uw, &combo(&-b, &t.v, a, &t.w))
        }
        JordanCase::RealEigen { alpha } => {
            let zero = Rational::zero();
            vectors_equal(&uv, &combo(alpha, &t.v, &zero, &t.w))
                && vectors_equal(&uw, &combo(&zero, &t.v, alpha, &t.w))
        }
    };
    let independent = Matrix::from_columns(&[t.u.clone(), t.v.clone(), t.w.clone()])?.rank() == 3;
    Ok(relations && independent)
}

/// The complex structure on `g x g` with `J u = u*`, `J v = w`, `J v* = w*`
/// (and hence `J u* = -u`, `J w = -v`, `J w* = -v*`), written in the
/// standard product basis.
pub fn build_product_j(
    g: &LieAlgebra<Rational>,
    t: &JordanTriple,
) -> Result<Endomorphism<Rational>> {
    if g.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: g.dim(),
        });
    }
    let independent = Matrix::from_columns(&[t.u.clone(), t.v.clone(), t.w.clone()])?.rank() == 3;
    if !independent {
        return Err(Error::SingularBasis);
    }
    if !validate_jordan_triple(g, t)? {
        return Err(Error::InvalidJordanTriple);
    }
    let z = vec![Rational::zero(); 3];
    let first = |x: &Vec<Rational>| [x.clone(), z.clone()].concat();
    let second = |x: &Vec<Rational>| [z.clone(), x.clone()].concat();
    // adapted basis {u, v, w, u*, v*, w*}
    let p = Matrix::from_columns(&[
        first(&t.u),
        first(&t.v),
        first(&t.w),
        second(&t.u),
        second(&t.v),
        second(&t.w),
    ])?;
    let mut j0 = Matrix::<Rational>::zeros(6, 6);
    let one = rat(1, 1);
    for (src, dst, sign) in [
        (0, 3, 1),
        (3, 0, -1),
        (1, 2, 1),
        (2, 1, -1),
        (4, 5, 1),
        (5, 4, -1),
    ] {
        j0[(dst, src)] = if sign > 0 { one.clone() } else { -one.clone() };
    }
    let p_inv = p.inverse().map_err(|_| Error::SingularBasis)?;
    Endomorphism::new(p.mul(&j0)?.mul(&p_inv)?)
}

fn e(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 3];
    v[i] = rat(1, 1);
    v
}

/// The adapted triple for each existence case. The `(a, b)` or `alpha`
/// parameters come from evaluating `[u, v]` and `[u, w]` in the catalog
/// algebra; see `jordan_table_matches_brackets` in the tests.
pub fn standard_triple(spec: &BianchiSpec) -> Result<JordanTriple> {
    let (e1, e2, e3) = (e(0), e(1), e(2));
    let zero = Rational::zero;
    let triple = |u, v, w, case| JordanTriple { u, v, w, case };
    Ok(match spec.type_id {
        1 => triple(e1, e2, e3, JordanCase::RealEigen { alpha: zero() }),
        2 | 3 => triple(e3, e1, e2, JordanCase::RealEigen { alpha: zero() }),
        4 if spec.admits_structure() => {
            triple(e3, e1, e2, JordanCase::RealEigen { alpha: rat(-1, 1) })
        }
        6 => {
            let theta = spec.theta.clone().expect("validated spec");
            triple(
                e3,
                e1,
                e2,
                JordanCase::ComplexPair {
                    a: -theta,
                    b: rat(1, 1),
                },
            )
        }
        7 => triple(
            e2,
            e1,
            e3,
            JordanCase::ComplexPair {
                a: zero(),
                b: rat(-1, 1),
            },
        ),
        8 => triple(
            e3,
            e1,
            e2,
            JordanCase::ComplexPair {
                a: zero(),
                b: rat(1, 1),
            },
        ),
        4 => {
            return Err(Error::NoKnownStructure {
                label: spec.to_string(),
                reason: "one exists only for theta = 1".into(),
            })
        }
        5 => {
            return Err(Error::NoKnownStructure {
                label: spec.to_string(),
                reason: "none exists".into(),
            })
        }
        _ => unreachable!("validated spec"),
    })
}

/// The product algebra `g x g` and its standard integrable structure.
pub fn standard_structure(
    spec: &BianchiSpec,
) -> Result<(LieAlgebra<Rational>, Endomorphism<Rational>)> {
    let t = standard_triple(spec)?;
    let g = bianchi(spec);
    let j = build_product_j(&g, &t)?;
    Ok((direct_product(&g, &g), j))
}

/// Index of `e_{ij}` (1-based `i < j`) in the lexicographic basis of `o(n)`.
pub fn orthogonal_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // elements with first index < i, then offset within row i
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// Basis pairs `(i, j)` of `o(n)`, 1-based, lexicographic.
pub fn orthogonal_basis(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

fn orthogonal_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("e{i}{j}")
    } else {
        format!("e{i}_{j}")
    }
}

/// `e_{ij}` as an `n x n` integer matrix: `+1` at `(i, j)`, `-1` at `(j, i)`.
fn elementary(n: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i - 1][j - 1] = 1;
    m[j - 1][i - 1] = -1;
    m
}

fn commutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for r in 0..n {
        for s in 0..n {
            for k in 0..n {
                c[r][s] += a[r][k] * b[k][s] - b[r][k] * a[k][s];
            }
        }
    }
    c
}

/// `o(n)`, structure constants from matrix commutators of the elementary
/// antisymmetric matrices. Satisfies `[e_ij, e_jk] = e_ik` for `i < j < k`.
pub fn orthogonal_algebra(n: usize) -> Result<LieAlgebra<Rational>> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let basis = orthogonal_basis(n);
    let mats: Vec<_> = basis.iter().map(|&(i, j)| elementary(n, i, j)).collect();
    let mut entries = Vec::new();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let c = commutator(&mats[a], &mats[b]);
            // an antisymmetric matrix is sum_{i<j} c[i][j] e_ij
            for (k, &(i, j)) in basis.iter().enumerate() {
                let x = c[i - 1][j - 1];
                if x != 0 {
                    entries.push((a, b, k, rat(x, 1)));
                }
            }
        }
    }
    let labels = basis.iter().map(|&(i, j)| orthogonal_label(i, j)).collect();
    LieAlgebra::new(basis.len(), entries)?
        .with_labels(labels)
        .map(|g| g.with_name(format!("o({n})")))
}

/// Where the pairing sends `e_{ij}` (1-based, `i < j`) inside its own copy,
/// or `None` if `e_{ij}` is quasi-invariant and goes to the other copy.
///
/// Indices are grouped in blocks (1,2), (3,4), ...; `e_{ij}` belongs to the
/// block of `i`. The block's own element `e_{(2k-1)(2k)}` is sent to its
/// starred copy, and the rest of the block pairs `e_{(2k-1)j}` with
/// `e_{(2k)j}`. For odd `n` the last index has no partner, which is why the
/// elements `e_{in}` need no special case.
fn pairing_target(i: usize, j: usize) -> Option<(usize, usize, bool)> {
    if i % 2 == 1 && j == i + 1 {
        None
    } else if i % 2 == 1 {
        Some((i + 1, j, true))
    } else {
        Some((i - 1, j, false))
    }
}

/// The integrable complex structure on `o(n) x o(n)`:
/// `J e_12 = e_12*`, `J e_1i = e_2i`, `J e_1i* = e_2i*` for `i > 2`,
/// `J e_34 = e_34*`, `J e_3i = e_4i`, and so on.
pub fn orthogonal_pairing(n: usize) -> Result<Endomorphism<Rational>> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let m = n * (n - 1) / 2;
    let mut mat = Matrix::<Rational>::zeros(2 * m, 2 * m);
    let one = rat(1, 1);
    for (i, j) in orthogonal_basis(n) {
        let p = orthogonal_index(n, i, j);
        match pairing_target(i, j) {
            None => {
                mat[(m + p, p)] = one.clone();
                mat[(p, m + p)] = -one.clone();
            }
            Some((ti, tj, positive)) => {
                let q = orthogonal_index(n, ti, tj);
                let s = if positive { one.clone() } else { -one.clone() };
                mat[(q, p)] = s.clone();
                mat[(m + q, m + p)] = s;
            }
        }
    }
    Endomorphism::new(mat)
}
