//! Multistart Levenberg-Marquardt over the entries of `J`.
//!
//! A small residual is evidence, never proof: non-existence can only be
//! reported as "nothing found below the floor after N starts". Existence is
//! certified separately by exact verification of a rounded candidate.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::objective::Objective;
use super::rationalize::rationalize_and_certify;
use crate::algebra::LieAlgebra;
use crate::complex::Endomorphism;
use crate::scalar::{format_rational, Rational, Scalar};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub starts: usize,
    pub seed: u64,
    pub max_iters: usize,
    /// A start converges once the residual is at most `tol`.
    pub tol: f64,
    /// Initial entries are uniform on `[-init_range, init_range]`.
    pub init_range: f64,
    pub mu_init: f64,
    pub mu_increase: f64,
    pub mu_decrease: f64,
    /// How many converged starts (lowest index first) to try to certify.
    pub certify_attempts: usize,
    pub max_denominator: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            starts: 1,
            seed: DEFAULT_SEED,
            max_iters: 500,
            tol: 1e-12,
            init_range: 2.0,
            mu_init: 1e-3,
            mu_increase: 10.0,
            mu_decrease: 0.1,
            certify_attempts: 4,
            max_denominator: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StartOutcome {
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub start: usize,
    /// Whether the candidate needed the rational snapping pass.
    pub snapped: bool,
    pub matrix: Endomorphism<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_residual: f64,
    pub best_start: usize,
    pub best_matrix: Endomorphism<f64>,
    pub starts: usize,
    pub converged_starts: usize,
    pub seed: u64,
    pub per_start: Vec<StartOutcome>,
    pub certified: Option<Certificate>,
}

impl SearchResult {
    pub fn per_start_residuals(&self) -> Vec<f64> {
        self.per_start.iter().map(|s| s.residual).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct CertJson {
            start: usize,
            snapped: bool,
            rows: Vec<Vec<String>>,
        }
        #[derive(Serialize)]
        struct Json<'a> {
            best_residual: f64,
            best_start: usize,
            best_matrix: Vec<Vec<f64>>,
            starts: usize,
            converged_starts: usize,
            seed: u64,
            per_start_residuals: Vec<f64>,
            per_start: &'a [StartOutcome],
            certified: Option<CertJson>,
        }
        let certified = self.certified.as_ref().map(|c| CertJson {
            start: c.start,
            snapped: c.snapped,
            rows: c
                .matrix
                .matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        });
        serde_json::to_value(Json {
            best_residual: self.best_residual,
            best_start: self.best_start,
            best_matrix: self.best_matrix.matrix().to_rows(),
            starts: self.starts,
            converged_starts: self.converged_starts,
            seed: self.seed,
            per_start_residuals: self.per_start_residuals(),
            per_start: &self.per_start,
            certified,
        })
        .expect("finite floats serialize")
    }
}

/// Damped Gauss-Newton on a subset of the unknowns.
struct Solver<'a> {
    obj: &'a Objective,
    cfg: &'a SearchConfig,
}

const MU_MAX: f64 = 1e20;
const MU_MIN: f64 = 1e-20;

impl Solver<'_> {
    /// Minimize in place over the coordinates with `free[i]`; returns the
    /// final residual and the number of damped solves performed.
    fn minimize(&self, x: &mut [f64], free: &[bool], max_iters: usize) -> (f64, usize) {
        let n = self.obj.n_params();
        let m = self.obj.n_residuals();
        let idx: Vec<usize> = (0..n).filter(|&i| free[i]).collect();
        let mut r = Vec::with_capacity(m);
        let mut jac = Vec::with_capacity(m * n);
        let mut r_trial = Vec::with_capacity(m);
        self.obj.residuals(x, &mut r, Some(&mut jac));
        let mut f: f64 = r.iter().map(|v| v * v).sum();
        let mut mu = self.cfg.mu_init;
        let mut iters = 0;
        let mut trial = x.to_vec();

        'outer: while iters < max_iters && f > self.cfg.tol && !idx.is_empty() {
            let jf = DMatrix::from_fn(m, idx.len(), |i, p| jac[i * n + idx[p]]);
            let jt = jf.transpose();
            let normal = &jt * &jf;
            let grad = &jt * DVector::from_column_slice(&r);
            loop {
                iters += 1;
                let mut h = normal.clone();
                for p in 0..idx.len() {
                    h[(p, p)] += mu;
                }
                let Some(chol) = h.cholesky() else {
                    mu *= self.cfg.mu_increase;
                    if mu > MU_MAX || iters >= max_iters {
                        break 'outer;
                    }
                    continue;
                };
                let step = chol.solve(&(-&grad));
                trial.copy_from_slice(x);
                for (p, &i) in idx.iter().enumerate() {
                    trial[i] += step[p];
                }
                self.obj.residuals(&trial, &mut r_trial, None);
                let f_trial: f64 = r_trial.iter().map(|v| v * v).sum();
                if f_trial < f {
                    x.copy_from_slice(&trial);
                    self.obj.residuals(x, &mut r, Some(&mut jac));
                    f = f_trial;
                    mu = (mu * self.cfg.mu_decrease).max(MU_MIN);
                    break;
                }
                mu *= self.cfg.mu_increase;
                if mu > MU_MAX || iters >= max_iters {
                    break 'outer;
                }
            }
        }
        (f, iters)
    }

    fn initial_point(&self, start: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(start as u64);
        let a = self.cfg.init_range;
        (0..self.obj.n_params())
            .map(|_| rng.gen_range(-a..=a))
            .collect()
    }

    /// Move a converged point onto a nearby exact solution. First pin as
    /// many coordinates as possible to zero (smallest first), then pin the
    /// rest to nearby rationals with small denominators, re-solving for the
    /// free coordinates after each pin. Coordinates that cannot be pinned
    /// stay free and are left to the final continued-fraction rounding.
    fn snap(&self, x0: &[f64]) -> Vec<f64> {
        const MAX_DEN: i64 = 6;
        const CANDIDATES: usize = 3;
        const ITERS: usize = 100;
        let n = x0.len();
        let mut x = x0.to_vec();
        let mut free = vec![true; n];

        let mut tried = vec![false; n];
        while let Some(i) = (0..n)
            .filter(|&i| free[i] && !tried[i])
            .min_by(|&a, &b| x[a].abs().total_cmp(&x[b].abs()).then(a.cmp(&b)))
        {
            tried[i] = true;
            if let Some(y) = self.try_pin(&x, &mut free, i, 0.0, ITERS) {
                x = y;
            }
        }

        let mut stuck = vec![false; n];
        loop {
            let pick = (0..n)
                .filter(|&i| free[i] && !stuck[i])
                .map(|i| (i, snap_candidates(x[i], MAX_DEN)))
                .min_by(|a, b| {
                    let da = (a.1[0] - x[a.0]).abs();
                    let db = (b.1[0] - x[b.0]).abs();
                    da.total_cmp(&db).then(a.0.cmp(&b.0))
                });
            let Some((i, cands)) = pick else { break };
            match cands
                .into_iter()
                .take(CANDIDATES)
                .find_map(|c| self.try_pin(&x, &mut free, i, c, ITERS))
            {
                Some(y) => x = y,
                None => stuck[i] = true,
            }
        }
        x
    }

    /// Fix coordinate `i` at `value` and re-solve; on success the coordinate
    /// stays pinned and the new point is returned.
    fn try_pin(
        &self,
        x: &[f64],
        free: &mut [bool],
        i: usize,
        value: f64,
        iters: usize,
    ) -> Option<Vec<f64>> {
        let mut y = x.to_vec();
        y[i] = value;
        free[i] = false;
        let (f, _) = self.minimize(&mut y, free, iters);
        if f <= self.cfg.tol {
            Some(y)
        } else {
            free[i] = true;
            None
        }
    }
}

/// Rationals `p/q` with `q <= max_den` nearest to `v`, closest first.
fn snap_candidates(v: f64, max_den: i64) -> Vec<f64> {
    let mut c: Vec<(f64, i64, f64)> = Vec::new();
    for q in 1..=max_den {
        let p = (v * q as f64).round();
        let val = p / q as f64;
        if !c.iter().any(|e| e.2 == val) {
            c.push(((v - val).abs(), q, val));
        }
    }
    c.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    c.into_iter().map(|e| e.2).collect()
}

fn endomorphism_from_flat(d: usize, x: &[f64]) -> Endomorphism<f64> {
    Endomorphism::from_rows(x.chunks(d).map(<[f64]>::to_vec).collect()).expect("square")
}

/// Multistart search for an integrable complex structure on `g`.
///
/// Deterministic for fixed inputs: each start draws from its own ChaCha
/// stream, results are aggregated by start index, and ties go to the lowest
/// index.
pub fn numeric_search(g: &LieAlgebra<Rational>, config: &SearchConfig) -> SearchResult {
    let obj = Objective::new(g);
    let d = obj.dim();
    let solver = Solver {
        obj: &obj,
        cfg: config,
    };
    let starts = config.starts.max(1);
    let runs: Vec<(StartOutcome, Vec<f64>)> = (0..starts)
        .into_par_iter()
        .map(|s| {
            let mut x = solver.initial_point(s);
            let free = vec![true; x.len()];
            let (residual, iterations) = solver.minimize(&mut x, &free, config.max_iters);
            let outcome = StartOutcome {
                residual,
                iterations,
                converged: residual <= config.tol,
            };
            (outcome, x)
        })
        .collect();

    let mut best = 0;
    for (s, (o, _)) in runs.iter().enumerate() {
        if o.residual < runs[best].0.residual {
            best = s;
        }
    }

    let certified = runs
        .iter()
        .enumerate()
        .filter(|(_, (o, _))| o.converged)
        .take(config.certify_attempts)
        .find_map(|(s, (_, x))| {
            let raw = endomorphism_from_flat(d, x);
            if let Some(m) = rationalize_and_certify(g, &raw, config.max_denominator) {
                return Some(Certificate {
                    start: s,
                    snapped: false,
                    matrix: m,
                });
            }
            let snapped = endomorphism_from_flat(d, &solver.snap(x));
            rationalize_and_certify(g, &snapped, config.max_denominator).map(|m| Certificate {
                start: s,
                snapped: true,
                matrix: m,
            })
        });

    SearchResult {
        best_residual: runs[best].0.residual,
        best_start: best,
        best_matrix: endomorphism_from_flat(d, &runs[best].1),
        starts,
        converged_starts: runs.iter().filter(|(o, _)| o.converged).count(),
        seed: config.seed,
        per_start: runs.into_iter().map(|(o, _)| o).collect(),
        certified,
    }
}

/// Flatten an exact matrix to the float parameter vector used by the search.
pub fn flatten<S: Scalar>(j: &Endomorphism<S>) -> Vec<f64> {
    j.matrix().as_slice().iter().map(Scalar::to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_sorted_by_distance() {
        let c = snap_candidates(0.49, 4);
        assert_eq!(c[0], 0.5);
        assert!(c.contains(&0.0));
        assert!(c.contains(&(1.0 / 3.0)));
        assert!(!c.contains(&0.25));
    }

    #[test]
    fn abelian_single_start_converges() {
        let g = LieAlgebra::<Rational>::abelian(6);
        let cfg = SearchConfig {
            starts: 1,
            ..SearchConfig::default()
        };
        let r = numeric_search(&g, &cfg);
        assert!(r.best_residual <= cfg.tol);
        assert_eq!(r.converged_starts, 1);
        assert!(r.certified.is_some());
    }
}
