//! Acceptance suite: one pass/fail line per criterion.
//!
//! cargo test -p lie-cx-core --test acceptance -- --nocapture

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use lie_cx::search::{
    emit_polynomial_system_with, numeric_search, residual_and_gradient, unknown_index, EmitOptions,
    Objective, Provenance, SearchConfig,
};
use lie_cx::{
    bianchi, catalog_specs, direct_product, existence_specs, is_integrable, nijenhuis,
    orthogonal_algebra, orthogonal_pairing, rat, standard_structure, BianchiSpec, LieAlgebra,
    Matrix, Rational,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(
        elapsed < limit,
        format!("{what} took {elapsed:.2?}, limit {limit:?}"),
    )
}

fn exact_existence() -> Outcome {
    let t = Instant::now();
    for spec in existence_specs() {
        let (g, j) = standard_structure(&spec).map_err(|e| format!("{spec}: {e}"))?;
        check(j.is_complex_structure(), format!("{spec}: J^2 != -I"))?;
        let report = is_integrable(&g, &j).map_err(|e| e.to_string())?;
        check(
            report.pairs.len() == 15,
            format!("{spec}: {} pairs", report.pairs.len()),
        )?;
        check(
            report
                .pairs
                .iter()
                .all(|p| p.value.iter().all(Zero::is_zero)),
            format!("{spec}: nonzero Nijenhuis value"),
        )?;
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(1), "exact verification")?;
    Ok(format!(
        "7 structures, 105 pairs exactly zero in {elapsed:.2?}"
    ))
}

fn orthogonal_products() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    for n in 2..=8 {
        let g = orthogonal_algebra(n).map_err(|e| e.to_string())?;
        let p = direct_product(&g, &g);
        let j = orthogonal_pairing(n).map_err(|e| e.to_string())?;
        check(j.is_complex_structure(), format!("n={n}: J^2 != -I"))?;
        let report = is_integrable(&p, &j).map_err(|e| e.to_string())?;
        check(report.integrable, format!("n={n}: not integrable"))?;
        pairs = report.pairs.len();
    }
    check(pairs == 1540, format!("n=8 checked {pairs} pairs"))?;
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(30), "o(n) x o(n) verification")?;
    Ok(format!(
        "n = 2..8 integrable, 1540 pairs at n = 8, {elapsed:.2?}"
    ))
}

fn jacobi_exact(g: &LieAlgebra<Rational>) -> bool {
    let d = g.dim();
    (0..d).all(|i| {
        (i + 1..d).all(|j| (j + 1..d).all(|k| g.jacobi_residual(i, j, k).iter().all(Zero::is_zero)))
    }) && g.validate().is_ok()
}

fn jacobi_validity() -> Outcome {
    let mut count = 0;
    for g in catalog_with_products() {
        check(jacobi_exact(&g), format!("{:?}", g.name()))?;
        count += 1;
    }
    for n in 2..=8 {
        let g = orthogonal_algebra(n).map_err(|e| e.to_string())?;
        check(jacobi_exact(&g), format!("o({n})"))?;
        count += 1;
    }
    Ok(format!("{count} algebras with zero Jacobi residual"))
}

fn nijenhuis_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let specs: Vec<_> = catalog_specs()
        .into_iter()
        .filter(|s| s.admits_structure())
        .collect();
    for spec in &specs {
        let (g, j) = standard_structure(spec).map_err(|e| e.to_string())?;
        let n = |a: &[Rational], b: &[Rational]| nijenhuis(&g, &j, a, b).unwrap();
        let jx = |a: &[Rational]| j.apply(a).unwrap();
        for _ in 0..1000 {
            let v = random_vector(&mut rng, 6);
            let w = random_vector(&mut rng, 6);
            let base = n(&v, &w);
            check(
                base == neg(&n(&jx(&v), &jx(&w))),
                format!("{spec}: N(v,w) != -N(Jv,Jw)"),
            )?;
            check(
                base == jx(&n(&jx(&v), &w)),
                format!("{spec}: N(v,w) != J N(Jv,w)"),
            )?;
            check(
                base == jx(&n(&v, &jx(&w))),
                format!("{spec}: N(v,w) != J N(v,Jw)"),
            )?;
        }
        for _ in 0..1000 {
            let v = random_vector(&mut rng, 6);
            check(
                n(&v, &jx(&v)).iter().all(Zero::is_zero),
                format!("{spec}: N(v,Jv) != 0"),
            )?;
        }
    }
    Ok(format!(
        "{} products, 1000 pair and 1000 vector trials each",
        specs.len()
    ))
}

fn emitted_system() -> Outcome {
    let g = bianchi(&BianchiSpec::with_theta(4, rat(2, 1)).unwrap());
    let p = Matrix::from_columns(&[
        vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        unit(3, 0),
        unit(3, 1),
    ])
    .unwrap();
    let h = g.change_of_basis(&p).map_err(|e| e.to_string())?;
    let fixed = [
        (unknown_index(6, 1, 0), rat(0, 1)),
        (unknown_index(6, 2, 0), rat(0, 1)),
    ];
    let sys = emit_polynomial_system_with(
        &direct_product(&h, &h),
        &fixed,
        &EmitOptions { reduce: true },
    )
    .map_err(|e| e.to_string())?;
    let emitted: BTreeSet<String> = sys
        .equations
        .iter()
        .filter(
            |e| matches!(e.provenance, Provenance::Nijenhuis { component, .. } if component < 3),
        )
        .map(|e| normalized(&e.poly))
        .collect();
    let golden = golden_type_four_system();
    check(
        golden.len() == 9,
        "golden file does not hold nine equations",
    )?;
    let missing = golden.difference(&emitted).count();
    check(
        missing == 0,
        format!("{missing} golden equations not emitted"),
    )?;
    check(
        emitted.len() == 9,
        format!("{} first-factor equations emitted", emitted.len()),
    )?;
    Ok("first-factor equations equal the nine golden equations".into())
}

fn gradient_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    let products = catalog_products();
    for g in &products {
        let obj = Objective::new(g);
        for _ in 0..100 {
            let x: Vec<f64> = (0..36).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let (_, grad) = residual_and_gradient(g, &x).map_err(|e| e.to_string())?;
            let h = 1e-6;
            let mut diff = 0.0;
            let mut norm = 0.0;
            for i in 0..36 {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[i] += h;
                xm[i] -= h;
                let fd = (obj.value(&xp) - obj.value(&xm)) / (2.0 * h);
                diff += (grad[i] - fd).powi(2);
                norm += grad[i].powi(2);
            }
            let rel = diff.sqrt() / norm.sqrt();
            worst = worst.max(rel);
            check(
                rel <= 1e-6,
                format!("{:?}: relative error {rel:e}", g.name()),
            )?;
        }
    }
    Ok(format!(
        "{} products x 100 points, worst relative error {worst:.1e}",
        products.len()
    ))
}

fn numeric_existence() -> Outcome {
    let t = Instant::now();
    let cfg = SearchConfig {
        starts: 200,
        seed: 42,
        ..SearchConfig::default()
    };
    let mut missed = Vec::new();
    for spec in existence_specs() {
        let g = bianchi(&spec);
        let r = numeric_search(&direct_product(&g, &g), &cfg);
        check(
            r.best_residual < 1e-8,
            format!("{spec}: best residual {:e}", r.best_residual),
        )?;
        if r.certified.is_none() {
            check(
                !matches!(spec.type_id(), 1 | 8),
                format!("{spec}: no certified structure"),
            )?;
            missed.push(spec.to_string());
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(300), "numeric existence")?;
    if missed.is_empty() {
        Ok(format!(
            "7 products below 1e-8, all certified, {elapsed:.2?}"
        ))
    } else {
        Ok(format!(
            "7 products below 1e-8; rationalization missed for {missed:?}, {elapsed:.2?}"
        ))
    }
}

#[derive(Deserialize)]
struct Floors {
    floors: Vec<Floor>,
}

#[derive(Deserialize)]
struct Floor {
    #[serde(rename = "type")]
    type_id: u8,
    theta: Option<String>,
    floor: f64,
}

fn numeric_non_existence() -> Outcome {
    let floors: Floors = serde_json::from_str(include_str!("data/residual_floors.json"))
        .map_err(|e| e.to_string())?;
    check(floors.floors.len() == 4, "expected four recorded floors")?;
    let cfg = SearchConfig {
        starts: 500,
        seed: 42,
        ..SearchConfig::default()
    };
    let mut lines = Vec::new();
    for f in &floors.floors {
        let theta = f
            .theta
            .as_deref()
            .map(lie_cx::parse_rational)
            .transpose()
            .map_err(|e| e.to_string())?;
        let spec = BianchiSpec::new(f.type_id, theta).map_err(|e| e.to_string())?;
        let g = bianchi(&spec);
        let r = numeric_search(&direct_product(&g, &g), &cfg);
        check(
            r.certified.is_none(),
            format!("{spec}: certified a structure"),
        )?;
        check(
            r.best_residual > f.floor / 2.0,
            format!(
                "{spec}: best residual {:e} below half the floor {:e}",
                r.best_residual, f.floor
            ),
        )?;
        lines.push(format!(
            "{spec} {:.2e} > {:.2e}",
            r.best_residual,
            f.floor / 2.0
        ));
    }
    Ok(format!("no certificates; {}", lines.join(", ")))
}

fn determinism() -> Outcome {
    let cfg = SearchConfig {
        starts: 16,
        seed: 42,
        ..SearchConfig::default()
    };
    let mut checked = 0;
    for spec in [
        BianchiSpec::plain(8).unwrap(),
        BianchiSpec::plain(5).unwrap(),
    ] {
        let g = bianchi(&spec);
        let p = direct_product(&g, &g);
        let reference = numeric_search(&p, &cfg).to_json().to_string();
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| e.to_string())?;
            let again = pool
                .install(|| numeric_search(&p, &cfg))
                .to_json()
                .to_string();
            check(
                again == reference,
                format!("{spec}: output differs with {threads} threads"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} repeated runs serialize identically"))
}

#[test]
fn acceptance_suite() {
    let criteria: [Criterion; 9] = [
        ("exact existence verification", exact_existence),
        ("o(n) x o(n) integrability", orthogonal_products),
        ("Jacobi validity", jacobi_validity),
        ("Nijenhuis identity suite", nijenhuis_identities),
        ("emitted-system consistency", emitted_system),
        ("gradient check", gradient_check),
        ("numeric existence", numeric_existence),
        ("numeric non-existence corroboration", numeric_non_existence),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(*run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {} {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
