//! Bernoulli-, Euler- and Genocchi-type polynomials generated by
//!
//! ```text
//! z e^{xz} / (lambda E_a(z) - 1)
//! 2 e^{xz} / (lambda E_a(z) + 1)
//! 2z e^{xz} / (lambda E_a(z) + 1)
//! ```
//!
//! With `a = 1` these are the Apostol families, and with `a = lambda = 1`
//! the classical ones. Higher order `h` raises the Bernoulli generating
//! function to the `h`-th power and is only defined for `a = 1`.
//!
//! For the Bernoulli kind with `lambda = 1` the denominator has no constant
//! term; the division cancels one power of `z` (see
//! [`TruncatedSeries::divide_with_valuation`]). The generating functions are
//! formal here: the convergence disc `|z + log lambda| < 2 pi` of the
//! Apostol case never enters, since only truncated coefficients are used.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mittag_leffler::{ml_series, MLParams};
use crate::numeric::{binomial, compositions, multinomial, Scalar};
use crate::polynomial::Polynomial;
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Bernoulli,
    Euler,
    Genocchi,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::Bernoulli, FamilyKind::Euler, FamilyKind::Genocchi];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Bernoulli => "bernoulli",
            FamilyKind::Euler => "euler",
            FamilyKind::Genocchi => "genocchi",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" | "b" => Ok(FamilyKind::Bernoulli),
            "euler" | "e" => Ok(FamilyKind::Euler),
            "genocchi" | "g" => Ok(FamilyKind::Genocchi),
            other => Err(Error::InvalidParams(format!(
                "unknown family `{other}` (expected bernoulli, euler or genocchi)"
            ))),
        }
    }
}

/// Selects one generating function: kind, Mittag-Leffler index `alpha`,
/// Apostol parameter `lambda` and order `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub kind: FamilyKind,
    pub alpha: Scalar,
    pub lambda: Scalar,
    pub order: u32,
}

impl FamilyParams {
    pub fn new(kind: FamilyKind, alpha: Scalar, lambda: Scalar, order: u32) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
        }
        if !lambda.is_positive() {
            return Err(Error::InvalidParams(format!("lambda must be positive, got {lambda}")));
        }
        if order == 0 {
            return Err(Error::InvalidParams("order h must be at least 1".into()));
        }
        if order >= 2 && (kind != FamilyKind::Bernoulli || alpha != Scalar::one()) {
            return Err(Error::InvalidParams(format!(
                "order h = {order} is only defined for the Bernoulli kind with alpha = 1"
            )));
        }
        Ok(FamilyParams {
            kind,
            alpha,
            lambda,
            order,
        })
    }

    /// Order-1 family with Mittag-Leffler index `alpha`.
    pub fn typed(kind: FamilyKind, alpha: Scalar, lambda: Scalar) -> Result<Self> {
        Self::new(kind, alpha, lambda, 1)
    }

    /// Apostol family (`alpha = 1`).
    pub fn apostol(kind: FamilyKind, lambda: Scalar) -> Result<Self> {
        Self::new(kind, Scalar::one(), lambda, 1)
    }

    /// Classical family (`alpha = lambda = 1`).
    pub fn classical(kind: FamilyKind) -> Self {
        Self::new(kind, Scalar::one(), Scalar::one(), 1).expect("classical parameters are valid")
    }

    /// Whether the numbers come out as exact rationals.
    pub fn is_exact(&self) -> bool {
        self.alpha.as_integer().is_some() && self.lambda.is_exact()
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(alpha={}, lambda={}, h={})",
            self.kind, self.alpha, self.lambda, self.order
        )
    }
}

/// Ordinary coefficients of the order-1 generating function at `x = 0`,
/// truncated at `order`.
fn base_series(kind: FamilyKind, alpha: &Scalar, lambda: &Scalar, order: usize, prec: u32) -> Result<TruncatedSeries> {
    let ml = MLParams::one_parameter(alpha.clone())?;
    let n1 = order + 1;
    let lam_e = ml_series(&ml, n1, prec).scale(lambda);
    let one = TruncatedSeries::one(n1);
    let two = Scalar::from_int(2);
    match kind {
        FamilyKind::Bernoulli => {
            let den = lam_e.sub(&one)?;
            let q = TruncatedSeries::divide_with_valuation(&TruncatedSeries::z(n1), &den)
                .map_err(|e| match e {
                    Error::ZeroSeries(n) => Error::DegenerateDenominator(n),
                    other => other,
                })?;
            Ok(q.truncate(order))
        }
        FamilyKind::Euler | FamilyKind::Genocchi => {
            let den = lam_e.add(&one)?.truncate(order);
            let r = den.reciprocal().map_err(|_| Error::DegenerateDenominator(order))?.scale(&two);
            Ok(if kind == FamilyKind::Genocchi { r.shift_up(1) } else { r })
        }
    }
}

/// The number generating function (the family at `x = 0`) as a truncated
/// series of the given order.
pub fn generating_series(p: &FamilyParams, order: usize, prec: u32) -> Result<TruncatedSeries> {
    let base = base_series(p.kind, &p.alpha, &p.lambda, order, prec)?;
    Ok(base.pow(p.order))
}

/// Family numbers `F_0..=F_N`: EGF coefficients of the generating function
/// at `x = 0`.
pub fn family_numbers(p: &FamilyParams, max_index: usize, prec: u32) -> Result<Vec<Scalar>> {
    Ok(generating_series(p, max_index, prec)?.egf_coefficients())
}

/// `sum_k C(n, k) F_k x^(n-k)` built from a number list.
pub fn polynomial_from_numbers(numbers: &[Scalar], n: usize) -> Polynomial {
    let mut coeffs = vec![Scalar::zero(); n + 1];
    for (k, f) in numbers.iter().take(n + 1).enumerate() {
        coeffs[n - k] = f * Scalar::from_bigint(binomial(n as u64, k as u64));
    }
    Polynomial::new(coeffs)
}

/// Degree-`n` member of the family, from the binomial sum over its numbers.
pub fn family_polynomial(p: &FamilyParams, n: usize, prec: u32) -> Result<Polynomial> {
    Ok(polynomial_from_numbers(&family_numbers(p, n, prec)?, n))
}

/// `P_n(x)` read off as the EGF coefficient of `F(z) e^{xz}`.
pub fn family_value_via_series(p: &FamilyParams, n: usize, x: &Scalar, prec: u32) -> Result<Scalar> {
    generating_series(p, n, prec)?.multiply_exp(x).egf_coefficient(n)
}

pub fn eval_polynomial(q: &Polynomial, x: &Scalar) -> Scalar {
    q.eval(x)
}

pub fn poly_derivative(q: &Polynomial) -> Polynomial {
    q.derivative()
}

/// `integral_x^{x+1} P_n(y) dy` from the exact antiderivative.
pub fn integral_over_unit_interval(p: &FamilyParams, n: usize, x: &Scalar, prec: u32) -> Result<Scalar> {
    let anti = family_polynomial(p, n, prec)?.antiderivative();
    Ok(anti.eval(&(x + Scalar::one())) - anti.eval(x))
}

/// `(P_{n+1}(x+1) - P_{n+1}(x)) / (n+1)`, the Appell-derived value of the
/// unit-interval integral.
pub fn unit_interval_difference(p: &FamilyParams, n: usize, x: &Scalar, prec: u32) -> Result<Scalar> {
    let next = family_polynomial(p, n + 1, prec)?;
    Ok((next.eval(&(x + Scalar::one())) - next.eval(x)) / Scalar::from_int(n as i64 + 1))
}

/// Higher-order Apostol-Bernoulli numbers `B_r^(h)(lambda)`, `r = 0..=N`:
/// EGF coefficients of `(z / (lambda e^z - 1))^h`.
pub fn higher_order_numbers(lambda: &Scalar, h: u32, max_index: usize, prec: u32) -> Result<Vec<Scalar>> {
    let p = FamilyParams::new(FamilyKind::Bernoulli, Scalar::one(), lambda.clone(), h)?;
    family_numbers(&p, max_index, prec)
}

/// `sum over s_1+..+s_h = r` of `multinomial(s) * prod_j B_{s_j}` for a
/// given list of order-1 numbers.
pub fn multinomial_product_from_numbers(numbers: &[Scalar], h: u32, r: usize) -> Scalar {
    compositions(r as u64, h as usize)
        .iter()
        .map(|parts| {
            let weight = Scalar::from_bigint(multinomial(parts));
            parts
                .iter()
                .fold(weight, |acc, &s| acc * &numbers[s as usize])
        })
        .sum()
}

/// The multinomial convolution of Apostol-Bernoulli numbers; equals
/// `higher_order_numbers(lambda, h, r)[r]`.
pub fn multinomial_number_product(lambda: &Scalar, h: u32, r: usize, prec: u32) -> Result<Scalar> {
    if h == 0 {
        return Err(Error::InvalidParams("order h must be at least 1".into()));
    }
    let p = FamilyParams::apostol(FamilyKind::Bernoulli, lambda.clone())?;
    let numbers = family_numbers(&p, r, prec)?;
    Ok(multinomial_product_from_numbers(&numbers, h, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::DEFAULT_PRECISION as P;

    fn r(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    fn classical(kind: FamilyKind) -> FamilyParams {
        FamilyParams::classical(kind)
    }

    #[test]
    fn classical_numbers() {
        let b = family_numbers(&classical(FamilyKind::Bernoulli), 4, P).unwrap();
        assert_eq!(b, vec![r(1, 1), r(-1, 2), r(1, 6), r(0, 1), r(-1, 30)]);
        let g = family_numbers(&classical(FamilyKind::Genocchi), 4, P).unwrap();
        assert_eq!(g, vec![r(0, 1), r(1, 1), r(-1, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn apostol_bernoulli_lambda_two() {
        let p = FamilyParams::apostol(FamilyKind::Bernoulli, r(2, 1)).unwrap();
        let b = family_numbers(&p, 2, P).unwrap();
        assert_eq!(b, vec![r(0, 1), r(1, 1), r(-4, 1)]);
    }

    #[test]
    fn polynomial_examples() {
        let b2 = family_polynomial(&classical(FamilyKind::Bernoulli), 2, P).unwrap();
        assert_eq!(b2, Polynomial::new(vec![r(1, 6), r(-1, 1), r(1, 1)]));
        let e1 = family_polynomial(&classical(FamilyKind::Euler), 1, P).unwrap();
        assert_eq!(e1, Polynomial::new(vec![r(-1, 2), r(1, 1)]));
        let p = FamilyParams::typed(FamilyKind::Bernoulli, r(2, 1), r(3, 1)).unwrap();
        let b0 = family_polynomial(&p, 0, P).unwrap();
        assert_eq!(b0, Polynomial::constant(Scalar::zero()));
    }

    #[test]
    fn appell_genocchi_example() {
        let p = FamilyParams::typed(FamilyKind::Genocchi, r(2, 1), r(3, 1)).unwrap();
        let g3 = family_polynomial(&p, 3, P).unwrap();
        let g2 = family_polynomial(&p, 2, P).unwrap();
        assert_eq!(g3.derivative(), g2.scale(&r(3, 1)));
    }

    #[test]
    fn unit_interval_examples() {
        let b = classical(FamilyKind::Bernoulli);
        assert_eq!(integral_over_unit_interval(&b, 1, &Scalar::zero(), P).unwrap(), Scalar::zero());
        assert_eq!(integral_over_unit_interval(&b, 2, &Scalar::zero(), P).unwrap(), Scalar::zero());
        let e = classical(FamilyKind::Euler);
        assert_eq!(integral_over_unit_interval(&e, 0, &Scalar::zero(), P).unwrap(), Scalar::one());
        for n in 0..6 {
            let x = r(1, 2);
            assert_eq!(
                integral_over_unit_interval(&e, n, &x, P).unwrap(),
                unit_interval_difference(&e, n, &x, P).unwrap()
            );
        }
    }

    #[test]
    fn higher_order_examples() {
        let one = Scalar::one();
        assert_eq!(
            higher_order_numbers(&one, 1, 6, P).unwrap(),
            family_numbers(&classical(FamilyKind::Bernoulli), 6, P).unwrap()
        );
        assert_eq!(higher_order_numbers(&one, 2, 2, P).unwrap(), vec![r(1, 1), r(-1, 1), r(5, 6)]);
        // sum_k C(2,k) B_k(2) B_{2-k}(2) with B(2) = [0, 1, -4]
        assert_eq!(higher_order_numbers(&r(2, 1), 2, 2, P).unwrap(), vec![r(0, 1), r(0, 1), r(2, 1)]);
    }

    #[test]
    fn multinomial_examples() {
        let lam = r(3, 1);
        let b = family_numbers(&FamilyParams::apostol(FamilyKind::Bernoulli, lam.clone()).unwrap(), 5, P).unwrap();
        for (rr, want) in b.iter().enumerate() {
            assert_eq!(multinomial_number_product(&lam, 1, rr, P).unwrap(), *want);
        }
        assert_eq!(multinomial_number_product(&Scalar::one(), 2, 2, P).unwrap(), r(5, 6));
        assert_eq!(multinomial_number_product(&Scalar::one(), 3, 0, P).unwrap(), r(1, 1));
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyParams::new(FamilyKind::Euler, r(1, 1), r(1, 1), 2).is_err());
        assert!(FamilyParams::new(FamilyKind::Bernoulli, r(2, 1), r(1, 1), 2).is_err());
        assert!(FamilyParams::new(FamilyKind::Bernoulli, r(0, 1), r(1, 1), 1).is_err());
        assert!(FamilyParams::new(FamilyKind::Bernoulli, r(1, 1), r(-1, 1), 1).is_err());
        assert!(FamilyParams::new(FamilyKind::Bernoulli, r(1, 1), r(1, 1), 3).is_ok());
        assert_eq!("Genocchi".parse::<FamilyKind>().unwrap(), FamilyKind::Genocchi);
        assert!("hermite".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn fractional_alpha_gives_floats() {
        let p = FamilyParams::typed(FamilyKind::Bernoulli, r(1, 2), r(1, 1)).unwrap();
        assert!(!p.is_exact());
        let b = family_numbers(&p, 4, P).unwrap();
        // B_0 = Gamma(3/2) for z / (E_{1/2}(z) - 1)
        let want = crate::numeric::gamma(&r(3, 2), P).unwrap();
        let diff = (b[0].to_float(P) - want).abs();
        assert!(diff.to_f64() < 1e-36);
    }
}
