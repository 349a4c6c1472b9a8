#![allow(dead_code)]

use std::collections::BTreeSet;

use lie_cx::search::{unknown_index, Poly};
use lie_cx::{bianchi, catalog_specs, direct_product, parse_rational, rat, LieAlgebra, Rational};
use num_traits::Zero;
use rand::Rng;

/// Rational with numerator in `-20..=20` and denominator in `1..=7`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))
}

pub fn random_vector(rng: &mut impl Rng, d: usize) -> Vec<Rational> {
    (0..d).map(|_| random_rational(rng)).collect()
}

pub fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat(0, 1); d];
    v[i] = rat(1, 1);
    v
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(s: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| s * x).collect()
}

pub fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

/// Every catalog algebra together with its product `g x g`.
pub fn catalog_with_products() -> Vec<LieAlgebra<Rational>> {
    catalog_specs()
        .iter()
        .flat_map(|s| {
            let g = bianchi(s);
            let p = direct_product(&g, &g);
            [g, p]
        })
        .collect()
}

pub fn catalog_products() -> Vec<LieAlgebra<Rational>> {
    catalog_specs()
        .iter()
        .map(|s| {
            let g = bianchi(s);
            direct_product(&g, &g)
        })
        .collect()
}

/// Parse `c * x_{r,c} * ... + ... = 0` over the 36 unknowns of a 6-dim product.
pub fn parse_equation(line: &str) -> Poly {
    let lhs = line.split(" = 0").next().unwrap();
    let mut p = Poly::zero();
    for term in lhs.split(" + ") {
        let mut factors = term.split(" * ");
        let mut t = Poly::constant(parse_rational(factors.next().unwrap().trim()).unwrap());
        for f in factors {
            let inner = f.trim().trim_start_matches("x_{").trim_end_matches('}');
            let (r, c) = inner.split_once(',').unwrap();
            let (r, c): (usize, usize) = (r.parse().unwrap(), c.parse().unwrap());
            t = t * Poly::var(unknown_index(6, r - 1, c - 1));
        }
        p = p + t;
    }
    p
}

/// Scale so that the leading coefficient in canonical order is 1.
pub fn normalized(p: &Poly) -> String {
    let lead = p.terms()[0].1.clone();
    let q = p.clone() * Poly::constant(lead.recip());
    format!("{:?}", q.terms())
}

/// The nine equations of the golden file, normalized.
pub fn golden_type_four_system() -> BTreeSet<String> {
    include_str!("../data/type4_theta2_system.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| normalized(&parse_equation(l)))
        .collect()
}
