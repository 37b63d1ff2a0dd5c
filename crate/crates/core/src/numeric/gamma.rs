//! Gamma, reciprocal gamma and beta at arbitrary precision.
//!
//! Positive arguments use Spouge's approximation, with the parameter `a`
//! picked from the requested precision so the truncation error
//! `a^(-1/2) (2 pi)^(-(a + 1/2))` sits below `2^-(prec + 10)`. Arguments
//! below 1 are shifted up with `Gamma(x + 1) = x Gamma(x)`; negative
//! non-integers go through the reflection formula.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::bigfloat::{pi, BigFloat};
use super::combinatorics::factorial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

struct SpougeTable {
    a: i64,
    wp: u32,
    coeffs: Vec<BigFloat>,
}

fn spouge_table(prec: u32) -> Arc<SpougeTable> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<SpougeTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = tables.read().expect("spouge cache poisoned").get(&prec) {
        return t.clone();
    }
    let table = Arc::new(build_spouge_table(prec));
    tables
        .write()
        .expect("spouge cache poisoned")
        .entry(prec)
        .or_insert(table)
        .clone()
}

fn build_spouge_table(prec: u32) -> SpougeTable {
    let log2_two_pi = (2.0 * std::f64::consts::PI).log2();
    let a = ((prec as f64 + 10.0) / log2_two_pi).ceil() as i64;
    // the alternating coefficient sum cancels roughly a*log2(2 pi) bits
    let wp = 2 * prec + 64;
    let mut coeffs = Vec::with_capacity(a as usize);
    coeffs.push(pi(wp).mul_pow2(1).sqrt());
    let half = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(2), wp);
    let mut fact = BigInt::one(); // (k-1)!
    for k in 1..a {
        if k > 1 {
            fact *= k - 1;
        }
        let base = BigFloat::from_i64(a - k, wp);
        let power = BigFloat::from_i64(k, wp).sub_prec(&half, wp);
        let log_mag = base.ln().mul_prec(&power, wp).add_prec(&BigFloat::from_i64(a - k, wp), wp);
        let mut c = log_mag.exp().div_prec(&BigFloat::from_bigint(&fact, wp), wp);
        if k % 2 == 0 {
            c = -c;
        }
        coeffs.push(c);
    }
    SpougeTable { a, wp, coeffs }
}

/// Spouge evaluation for `x >= 1`, at the table's working precision.
fn spouge_gamma(x: &BigFloat, prec: u32) -> BigFloat {
    let table = spouge_table(prec);
    let wp = table.wp;
    let z = x.with_precision(wp).sub_prec(&BigFloat::one(wp), wp);
    let mut sum = table.coeffs[0].clone();
    for (k, c) in table.coeffs.iter().enumerate().skip(1) {
        let denom = z.add_prec(&BigFloat::from_i64(k as i64, wp), wp);
        sum = sum.add_prec(&c.div_prec(&denom, wp), wp);
    }
    let za = z.add_prec(&BigFloat::from_i64(table.a, wp), wp);
    let half = BigFloat::from_ratio(&BigInt::one(), &BigInt::from(2), wp);
    let log_part = z
        .add_prec(&half, wp)
        .mul_prec(&za.ln(), wp)
        .sub_prec(&za, wp);
    log_part.exp().mul_prec(&sum, wp)
}

/// Gamma of a non-integer, or of an integer >= 1, at working precision.
fn gamma_float(x: &BigFloat, prec: u32) -> BigFloat {
    let wp = prec + 32;
    let one = BigFloat::one(wp);
    if x.is_negative() {
        // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        let s = pi(wp).mul_prec(x, wp).sin();
        let g = gamma_float(&one.sub_prec(x, wp), prec);
        return pi(wp).div_prec(&s.mul_prec(&g, wp), wp);
    }
    let mut shifted = x.with_precision(wp);
    let mut divisor = BigFloat::one(wp);
    while shifted < one {
        divisor = divisor.mul_prec(&shifted, wp);
        shifted = shifted.add_prec(&one, wp);
    }
    spouge_gamma(&shifted, prec).div_prec(&divisor, wp)
}

fn positive_integer_or_pole(x: &Scalar) -> Option<std::result::Result<BigInt, ()>> {
    x.as_integer()
        .map(|n| if n.is_positive() { Ok(n) } else { Err(()) })
}

fn factorial_of(n: &BigInt) -> BigInt {
    factorial(n.to_u64().expect("factorial argument too large"))
}

/// `Gamma(x)` rounded to `prec` bits.
pub fn gamma(x: &Scalar, prec: u32) -> Result<BigFloat> {
    gamma_scalar(x, prec).map(|g| g.to_float(prec))
}

/// `Gamma(x)`, exact `(x - 1)!` when `x` is a positive integer.
pub fn gamma_scalar(x: &Scalar, prec: u32) -> Result<Scalar> {
    match positive_integer_or_pole(x) {
        Some(Ok(n)) => Ok(Scalar::from_bigint(factorial_of(&(n - 1)))),
        Some(Err(())) => Err(Error::Pole(x.to_string())),
        None => Ok(Scalar::Float(
            gamma_float(&x.to_float(prec + 32), prec).with_precision(prec),
        )),
    }
}

/// `1 / Gamma(x)`; entire, so exactly zero at the poles.
pub fn reciprocal_gamma(x: &Scalar, prec: u32) -> BigFloat {
    reciprocal_gamma_scalar(x, prec).to_float(prec)
}

/// `1 / Gamma(x)`, exact at integers (zero at the poles, `1/(x-1)!` above them).
pub fn reciprocal_gamma_scalar(x: &Scalar, prec: u32) -> Scalar {
    match positive_integer_or_pole(x) {
        Some(Ok(n)) => Scalar::Exact(num_rational::BigRational::new(
            BigInt::one(),
            factorial_of(&(n - 1)),
        )),
        Some(Err(())) => Scalar::zero(),
        None => {
            let wp = prec + 32;
            let xf = x.to_float(wp);
            let r = if xf.is_negative() {
                // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
                let s = pi(wp).mul_prec(&xf, wp).sin();
                let g = gamma_float(&BigFloat::one(wp).sub_prec(&xf, wp), prec);
                s.mul_prec(&g, wp).div_prec(&pi(wp), wp)
            } else {
                BigFloat::one(wp).div_prec(&gamma_float(&xf, prec), wp)
            };
            Scalar::Float(r.with_precision(prec))
        }
    }
}

/// `B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)` for positive arguments.
pub fn beta(x: &Scalar, y: &Scalar, prec: u32) -> Result<BigFloat> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::Domain(format!("beta({x}, {y}) needs positive arguments")));
    }
    let wp = prec + 16;
    let num = gamma_scalar(x, wp)? * gamma_scalar(y, wp)?;
    let den = gamma_scalar(&(x + y), wp)?;
    Ok((num / den).to_float(prec))
}
