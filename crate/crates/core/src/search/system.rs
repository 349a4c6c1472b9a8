//! The integrability conditions as a polynomial system in the entries of
//! an unknown matrix `J`.
//!
//! Unknown `r * d + c` is the entry `J[r][c]` (0-based); text and JSON
//! renderings call it `x_{r+1,c+1}`. Equations are
//!
//! * `(J^2 + I)[r][c] = 0` for every entry, and
//! * `N(e_a, e_b)[k] = 0` for every pair `a < b` and component `k`.
//!
//! Both families are at most quadratic. The Nijenhuis equations are built by
//! running the generic [`nijenhuis`] evaluator over polynomial scalars, so
//! they share no code with the float objective in [`super::objective`].
//!
//! The unknowns of the hand-derived systems in the non-existence arguments
//! are specializations: work in an adapted basis (`change_of_basis`), fix
//! the entries that encode the choice of quasi-invariant vector, and read
//! off the first-factor components of the Nijenhuis equations on pairs
//! inside the first factor. For the adapted basis `{u, e1, e2}` of type (4),
//! the correspondence is `lambda = x_{1,1}`, `X, Y, Z = x_{1,2}, x_{2,2},
//! x_{3,2}`, `A, B, C = x_{1,3}, x_{2,3}, x_{3,3}` with `x_{2,1} = x_{3,1} = 0`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use super::poly::{Monomial, Poly};
use crate::algebra::LieAlgebra;
use crate::complex::{nijenhuis, Endomorphism};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Entry `(row, col)` of `J^2 + I`.
    SquareIdentity { row: usize, col: usize },
    /// Component `component` of `N(e_a, e_b)`.
    Nijenhuis {
        a: usize,
        b: usize,
        component: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equation {
    pub provenance: Provenance,
    pub poly: Poly,
}

#[derive(Debug, Clone, Default)]
pub struct EmitOptions {
    /// Keep only Nijenhuis equations for pairs inside the first half of the
    /// basis. By `N(Jv, w) = -J N(v, w)` and `N(Jv, Jw) = -N(v, w)` these
    /// determine the rest whenever the first factor and its image under `J`
    /// together span the algebra, which holds in the non-existence arguments
    /// but not for every `J`.
    pub reduce: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    pub dim: usize,
    pub n_unknowns: usize,
    pub fixed: BTreeMap<usize, Rational>,
    pub equations: Vec<Equation>,
}

/// Unknown index of `J[row][col]`.
pub fn unknown_index(dim: usize, row: usize, col: usize) -> usize {
    row * dim + col
}

/// `x_{r,c}` label, 1-based.
pub fn unknown_label(dim: usize, index: usize) -> String {
    format!("x_{{{},{}}}", index / dim + 1, index % dim + 1)
}

pub fn emit_polynomial_system(
    g: &LieAlgebra<Rational>,
    fixed: &[(usize, Rational)],
) -> Result<PolynomialSystem> {
    emit_polynomial_system_with(g, fixed, &EmitOptions::default())
}

pub fn emit_polynomial_system_with(
    g: &LieAlgebra<Rational>,
    fixed: &[(usize, Rational)],
    options: &EmitOptions,
) -> Result<PolynomialSystem> {
    let d = g.dim();
    let n = d * d;
    let mut fixing = BTreeMap::new();
    for (index, value) in fixed {
        if *index >= n {
            return Err(Error::InconsistentFixing { index: *index });
        }
        if let Some(prev) = fixing.insert(*index, value.clone()) {
            if prev != *value {
                return Err(Error::InconsistentFixing { index: *index });
            }
        }
    }

    let entries: Vec<Vec<Poly>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let i = unknown_index(d, r, c);
                    match fixing.get(&i) {
                        Some(v) => Poly::constant(v.clone()),
                        None => Poly::var(i),
                    }
                })
                .collect()
        })
        .collect();
    let j = Endomorphism::new(Matrix::from_rows(entries)?)?;
    let gp: LieAlgebra<Poly> = g.map_scalars(|c| Poly::constant(c.clone()));

    let mut equations = Vec::new();
    let sq = j.square_plus_identity();
    for row in 0..d {
        for col in 0..d {
            equations.push(Equation {
                provenance: Provenance::SquareIdentity { row, col },
                poly: sq[(row, col)].clone(),
            });
        }
    }

    let limit = if options.reduce { d / 2 } else { d };
    for a in 0..limit {
        for b in a + 1..limit {
            let n_ab = nijenhuis(&gp, &j, &gp.basis_vector(a), &gp.basis_vector(b))?;
            for (component, poly) in n_ab.into_iter().enumerate() {
                if !poly.is_zero() {
                    equations.push(Equation {
                        provenance: Provenance::Nijenhuis { a, b, component },
                        poly,
                    });
                }
            }
        }
    }

    Ok(PolynomialSystem {
        dim: d,
        n_unknowns: n,
        fixed: fixing,
        equations,
    })
}

impl PolynomialSystem {
    /// Sum of squared equation values at a full assignment of the unknowns
    /// (fixed unknowns take their fixed values).
    pub fn sum_of_squares(&self, x: &[f64]) -> f64 {
        self.equations
            .iter()
            .map(|e| e.poly.eval_f64(x).powi(2))
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.equations
            .iter()
            .map(|e| e.poly.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let d = self.dim;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# {} unknowns, {} equations; x_{{r,c}} is entry (r, c) of J (1-based)",
            self.n_unknowns,
            self.equations.len()
        );
        for i in 0..self.n_unknowns {
            match self.fixed.get(&i) {
                Some(v) => {
                    let _ = writeln!(
                        s,
                        "# {i} -> {} = {}",
                        unknown_label(d, i),
                        format_rational(v)
                    );
                }
                None => {
                    let _ = writeln!(s, "# {i} -> {}", unknown_label(d, i));
                }
            }
        }
        for e in &self.equations {
            let _ = writeln!(
                s,
                "{} = 0  # {}",
                render_poly(d, &e.poly),
                e.provenance.label()
            );
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim;
        let unknowns: Vec<_> = (0..self.n_unknowns)
            .map(|i| UnknownJson {
                index: i,
                row: i / d + 1,
                col: i % d + 1,
                fixed: self.fixed.get(&i).map(format_rational),
            })
            .collect();
        let equations: Vec<_> = self
            .equations
            .iter()
            .map(|e| EquationJson {
                provenance: e.provenance.into(),
                terms: e
                    .poly
                    .terms()
                    .into_iter()
                    .map(|(m, c)| TermJson {
                        coefficient: format_rational(c),
                        monomial: m.iter().map(|&i| [i / d + 1, i % d + 1]).collect(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(SystemJson {
            dim: d,
            n_unknowns: self.n_unknowns,
            unknowns,
            equations,
        })
        .expect("serializable")
    }
}

impl Provenance {
    /// 1-based human label, e.g. `N(e1,e2)[3]` or `(J^2+I)[1,1]`.
    pub fn label(&self) -> String {
        match *self {
            Provenance::SquareIdentity { row, col } => format!("(J^2+I)[{},{}]", row + 1, col + 1),
            Provenance::Nijenhuis { a, b, component } => {
                format!("N(e{},e{})[{}]", a + 1, b + 1, component + 1)
            }
        }
    }
}

/// `c * x_{r,c} * x_{r',c'} + ...`, canonical term order.
pub fn render_poly(dim: usize, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms()
        .into_iter()
        .map(|(m, c)| render_term(dim, m, c))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn render_term(dim: usize, m: &Monomial, c: &Rational) -> String {
    let mut s = format_rational(c);
    for &i in m {
        s.push_str(" * ");
        s.push_str(&unknown_label(dim, i));
    }
    s
}

#[derive(Serialize)]
struct SystemJson {
    dim: usize,
    n_unknowns: usize,
    unknowns: Vec<UnknownJson>,
    equations: Vec<EquationJson>,
}

#[derive(Serialize)]
struct UnknownJson {
    index: usize,
    row: usize,
    col: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed: Option<String>,
}

#[derive(Serialize)]
struct EquationJson {
    provenance: ProvenanceJson,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ProvenanceJson {
    SquareIdentity {
        row: usize,
        col: usize,
    },
    Nijenhuis {
        a: usize,
        b: usize,
        component: usize,
    },
}

impl From<Provenance> for ProvenanceJson {
    fn from(p: Provenance) -> Self {
        match p {
            Provenance::SquareIdentity { row, col } => ProvenanceJson::SquareIdentity {
                row: row + 1,
                col: col + 1,
            },
            Provenance::Nijenhuis { a, b, component } => ProvenanceJson::Nijenhuis {
                a: a + 1,
                b: b + 1,
                component: component + 1,
            },
        }
    }
}

#[derive(Serialize)]
struct TermJson {
    coefficient: String,
    monomial: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn abelian_system_is_square_identity_only() {
        let g = LieAlgebra::<Rational>::abelian(6);
        let sys = emit_polynomial_system(&g, &[]).unwrap();
        assert_eq!(sys.equations.len(), 36);
        assert!(sys
            .equations
            .iter()
            .all(|e| matches!(e.provenance, Provenance::SquareIdentity { .. })));
        assert_eq!(sys.max_degree(), 2);
    }

    #[test]
    fn fixing_errors() {
        let g = LieAlgebra::<Rational>::abelian(2);
        assert!(matches!(
            emit_polynomial_system(&g, &[(4, rat(1, 1))]),
            Err(Error::InconsistentFixing { index: 4 })
        ));
        assert!(matches!(
            emit_polynomial_system(&g, &[(1, rat(1, 1)), (1, rat(2, 1))]),
            Err(Error::InconsistentFixing { index: 1 })
        ));
        assert!(emit_polynomial_system(&g, &[(1, rat(1, 1)), (1, rat(1, 1))]).is_ok());
    }

    #[test]
    fn text_rendering() {
        let g = LieAlgebra::<Rational>::abelian(2);
        let sys = emit_polynomial_system(&g, &[(1, rat(-1, 1)), (2, rat(1, 1))]).unwrap();
        let text = sys.to_text();
        assert!(text.contains("# 1 -> x_{1,2} = -1"));
        // (J^2+I)[1,1] = x11^2 + x12 x21 + 1 = x11^2 - 1 + 1
        assert!(
            text.contains("1 * x_{1,1} * x_{1,1} = 0  # (J^2+I)[1,1]"),
            "{text}"
        );
    }
}
