//! Least-squares objective `F(J) = ||J^2 + I||_F^2 + sum_{a<b} ||N(e_a, e_b)||^2`
//! with its residual vector and analytic Jacobian, written directly as
//! tensor contractions over the structure constants.

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Float structure constants plus bookkeeping for residual evaluation.
#[derive(Debug, Clone)]
pub struct Objective {
    d: usize,
    c: Vec<f64>,
    pairs: Vec<(usize, usize)>,
}

impl Objective {
    pub fn new(g: &LieAlgebra<Rational>) -> Self {
        let d = g.dim();
        let mut c = vec![0.0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for (k, x) in g.basis_bracket(i, j) {
                    c[(i * d + j) * d + k] = x.to_f64();
                }
            }
        }
        let pairs = (0..d)
            .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
            .collect();
        Self { d, c, pairs }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_params(&self) -> usize {
        self.d * self.d
    }

    pub fn n_residuals(&self) -> usize {
        self.d * self.d + self.pairs.len() * self.d
    }

    #[inline]
    fn cc(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.d + j) * self.d + k]
    }

    /// Residuals: `(J^2 + I)` row-major, then `N(e_a, e_b)` for `a < b`.
    /// When `jac` is given it receives the row-major `m x n` Jacobian.
    pub fn residuals(&self, x: &[f64], r: &mut Vec<f64>, mut jac: Option<&mut Vec<f64>>) {
        let d = self.d;
        let n = d * d;
        let jm = |i: usize, k: usize| x[i * d + k];
        r.clear();
        if let Some(jac) = jac.as_deref_mut() {
            jac.clear();
            jac.resize(self.n_residuals() * n, 0.0);
        }

        for i in 0..d {
            for j in 0..d {
                let mut s = if i == j { 1.0 } else { 0.0 };
                for k in 0..d {
                    s += jm(i, k) * jm(k, j);
                }
                let row = i * d + j;
                r.push(s);
                if let Some(jac) = jac.as_deref_mut() {
                    let base = row * n;
                    // d/dJ[i][s] += J[s][j];  d/dJ[r][j] += J[i][r]
                    for t in 0..d {
                        jac[base + i * d + t] += jm(t, j);
                        jac[base + t * d + j] += jm(i, t);
                    }
                }
            }
        }

        let mut m = vec![0.0; d];
        let mut q = vec![0.0; d];
        for (p, &(a, b)) in self.pairs.iter().enumerate() {
            // m = [J e_a, e_b], q = [e_a, J e_b]
            for k in 0..d {
                let mut sm = 0.0;
                let mut sq = 0.0;
                for t in 0..d {
                    sm += jm(t, a) * self.cc(t, b, k);
                    sq += self.cc(a, t, k) * jm(t, b);
                }
                m[k] = sm;
                q[k] = sq;
            }
            for l in 0..d {
                let mut v = self.cc(a, b, l);
                for k in 0..d {
                    v += jm(l, k) * (m[k] + q[k]);
                }
                // - [J e_a, J e_b]
                for s in 0..d {
                    let js = jm(s, a);
                    if js == 0.0 {
                        continue;
                    }
                    for t in 0..d {
                        v -= js * jm(t, b) * self.cc(s, t, l);
                    }
                }
                r.push(v);

                if let Some(jac) = jac.as_deref_mut() {
                    let base = (n + p * d + l) * n;
                    for s in 0..d {
                        jac[base + l * d + s] += m[s] + q[s];
                    }
                    for rr in 0..d {
                        let mut ua = 0.0;
                        let mut ub = 0.0;
                        for k in 0..d {
                            ua += jm(l, k) * self.cc(rr, b, k) - jm(k, b) * self.cc(rr, k, l);
                            ub += jm(l, k) * self.cc(a, rr, k) - jm(k, a) * self.cc(k, rr, l);
                        }
                        jac[base + rr * d + a] += ua;
                        jac[base + rr * d + b] += ub;
                    }
                }
            }
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let mut r = Vec::with_capacity(self.n_residuals());
        self.residuals(x, &mut r, None);
        r.iter().map(|v| v * v).sum()
    }
}

/// `F(x)` and its gradient `2 J^T r`, with `x` the row-major entries of `J`.
pub fn residual_and_gradient(g: &LieAlgebra<Rational>, x: &[f64]) -> Result<(f64, Vec<f64>)> {
    let obj = Objective::new(g);
    let n = obj.n_params();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let mut r = Vec::new();
    let mut jac = Vec::new();
    obj.residuals(x, &mut r, Some(&mut jac));
    let value = r.iter().map(|v| v * v).sum();
    let mut grad = vec![0.0; n];
    for (i, ri) in r.iter().enumerate() {
        for (gk, jk) in grad.iter_mut().zip(&jac[i * n..(i + 1) * n]) {
            *gk += 2.0 * ri * jk;
        }
    }
    Ok((value, grad))
}
