//! Continued-fraction rounding of float matrices and exact certification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::LieAlgebra;
use crate::complex::{is_integrable, Endomorphism};
use crate::scalar::Rational;

/// Closest rational to `x` with denominator at most `max_denominator`,
/// computed from the exact binary value of `x` by continued fractions
/// (convergents plus the last admissible semiconvergent).
pub fn best_rational(x: f64, max_denominator: u64) -> Option<Rational> {
    if !x.is_finite() || max_denominator == 0 {
        return None;
    }
    let exact = Rational::from_float(x)?;
    let max_q = BigInt::from(max_denominator);
    let negative = exact.is_negative();
    let target = exact.abs();

    // h/k convergents, (p0/q0, p1/q1) = previous and current
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (target.numer().div_floor(target.denom()), BigInt::one());
    let mut rem = target.clone() - Rational::from_integer(p1.clone());
    while !rem.is_zero() {
        let y = rem.recip();
        let a = y.numer().div_floor(y.denom());
        let q2 = &a * &q1 + &q0;
        if q2 > max_q {
            let t = (&max_q - &q0) / &q1;
            if !t.is_zero() {
                let semi = Rational::new(&t * &p1 + &p0, &t * &q1 + &q0);
                let conv = Rational::new(p1.clone(), q1.clone());
                if (semi.clone() - &target).abs() < (conv - &target).abs() {
                    return Some(if negative { -semi } else { semi });
                }
            }
            break;
        }
        let p2 = &a * &p1 + &p0;
        rem = y - Rational::from_integer(a);
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    let r = Rational::new(p1, q1);
    Some(if negative { -r } else { r })
}

/// Entrywise [`best_rational`].
pub fn round_matrix(j: &Endomorphism<f64>, max_denominator: u64) -> Option<Endomorphism<Rational>> {
    let rows = j
        .matrix()
        .to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| best_rational(x, max_denominator))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Endomorphism::from_rows(rows).ok()
}

/// Round every entry of `j` to a nearby rational and return the exact
/// matrix only if it is a complex structure and integrable.
pub fn rationalize_and_certify(
    g: &LieAlgebra<Rational>,
    j: &Endomorphism<f64>,
    max_denominator: u64,
) -> Option<Endomorphism<Rational>> {
    if g.dim() != j.dim() {
        return None;
    }
    let exact = round_matrix(j, max_denominator)?;
    if !exact.is_complex_structure() {
        return None;
    }
    match is_integrable(g, &exact) {
        Ok(report) if report.integrable => Some(exact),
        _ => None,
    }
}
