//! Fractional operators on polynomials.
//!
//! Everything here acts termwise on `t^j` through the power rules
//!
//! ```text
//! Caputo      D^a t^j   = Gamma(j+1) / Gamma(j-a+1) t^(j-a)   (j >= ceil(a), else 0)
//! RL integral I^a t^j   = Gamma(j+1) / Gamma(j+a+1) t^(j+a)
//! RL deriv.   D^a t^b   = Gamma(b+1) / Gamma(b-a+1) t^(b-a)   (a < 0 integrates)
//! ```
//!
//! using the reciprocal gamma so that poles degrade to zero coefficients.
//! Integer orders reduce to ordinary derivatives with exact coefficients.
//! [`caputo_quadrature_oracle`] evaluates the defining singular integral
//! directly and shares no code path with the power rules.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{
    binomial, factorial, gamma_scalar, generalized_binomial, reciprocal_gamma_scalar, BigFloat,
    Scalar,
};
use crate::poly_families::{
    family_numbers, multinomial_product_from_numbers, FamilyKind, FamilyParams,
};
use crate::polynomial::Polynomial;
use crate::quadrature::GaussJacobi;

/// Exponents closer than this are treated as the same power of `t`.
const EXPONENT_MERGE_TOL: f64 = 1e-30;

#[derive(Clone, Debug, PartialEq)]
pub struct FracTerm {
    pub coeff: Scalar,
    pub exponent: Scalar,
}

impl FracTerm {
    pub fn new(coeff: Scalar, exponent: Scalar) -> Self {
        FracTerm { coeff, exponent }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// Finite sum `sum c_k t^(e_k)` with strictly increasing, pairwise distinct
/// exponents and no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FracExpansion {
    terms: Vec<FracTerm>,
}

fn same_exponent(a: &Scalar, b: &Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        return a == b;
    }
    (a - b).abs().to_f64() < EXPONENT_MERGE_TOL
}

impl FracExpansion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = FracTerm>) -> Self {
        let mut terms: Vec<FracTerm> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        terms.sort_by(|a, b| a.exponent.partial_cmp(&b.exponent).expect("ordered exponents"));
        let mut merged: Vec<FracTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if same_exponent(&last.exponent, &t.exponent) => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.is_zero());
        FracExpansion { terms: merged }
    }

    pub fn from_polynomial(q: &Polynomial) -> Self {
        Self::from_terms(
            q.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| FracTerm::new(c.clone(), Scalar::from_int(j as i64))),
        )
    }

    pub fn terms(&self) -> &[FracTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| FracTerm::new(&t.coeff * c, t.exponent.clone())),
        )
    }

    /// Product with an ordinary polynomial in `t`.
    pub fn mul_polynomial(&self, q: &Polynomial) -> Self {
        let mut out = Vec::new();
        for (i, c) in q.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in &self.terms {
                out.push(FracTerm::new(
                    c * &t.coeff,
                    &t.exponent + Scalar::from_int(i as i64),
                ));
            }
        }
        Self::from_terms(out)
    }

    /// Coefficient attached to `exponent`, zero when absent.
    pub fn coefficient_of(&self, exponent: &Scalar) -> Scalar {
        self.terms
            .iter()
            .find(|t| same_exponent(&t.exponent, exponent))
            .map(|t| t.coeff.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for FracExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*t^({})", t.coeff, t.exponent)?;
        }
        Ok(())
    }
}

/// Coefficientwise comparison of two expansions.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionDiff {
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    /// Exponents carrying a nonzero coefficient on one side only.
    pub unmatched: Vec<Scalar>,
    pub compared: usize,
}

impl ExpansionDiff {
    pub fn agrees(&self, tol: f64) -> bool {
        self.unmatched.is_empty() && self.max_rel_err <= tol
    }
}

pub fn compare_expansions(a: &FracExpansion, b: &FracExpansion) -> ExpansionDiff {
    let exponents = FracExpansion::from_terms(
        a.terms()
            .iter()
            .chain(b.terms())
            .map(|t| FracTerm::new(Scalar::one(), t.exponent.clone())),
    );
    let mut diff = ExpansionDiff {
        max_abs_err: 0.0,
        max_rel_err: 0.0,
        unmatched: Vec::new(),
        compared: 0,
    };
    for t in exponents.terms() {
        let (x, y) = (a.coefficient_of(&t.exponent), b.coefficient_of(&t.exponent));
        diff.compared += 1;
        if x.is_zero() != y.is_zero() {
            diff.unmatched.push(t.exponent.clone());
        }
        let (abs, rel) = scalar_error(&x, &y);
        diff.max_abs_err = diff.max_abs_err.max(abs);
        diff.max_rel_err = diff.max_rel_err.max(rel);
    }
    diff
}

/// Absolute and relative difference; exact equality reports zero.
pub fn scalar_error(a: &Scalar, b: &Scalar) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let d = (a - b).abs();
    let scale = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    let rel = match d.checked_div(&scale) {
        Some(r) => r.to_f64(),
        None => f64::INFINITY,
    };
    (d.to_f64(), rel)
}

/// Order of a Caputo derivative together with `n = ceil(alpha)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CaputoOrder {
    pub alpha: Scalar,
    pub n: usize,
}

impl CaputoOrder {
    pub fn new(alpha: Scalar) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::Domain(format!("fractional order must be positive, got {alpha}")));
        }
        let n = alpha
            .ceil()
            .try_into()
            .map_err(|_| Error::Domain(format!("fractional order {alpha} is too large")))?;
        Ok(CaputoOrder { alpha, n })
    }

    pub fn is_integer(&self) -> bool {
        self.alpha.as_integer().is_some()
    }
}

fn j_scalar(j: usize) -> Scalar {
    Scalar::from_int(j as i64)
}

/// Caputo derivative of `t^j`.
pub fn caputo_power_rule(j: usize, ord: &CaputoOrder, prec: u32) -> FracTerm {
    let exponent = j_scalar(j) - &ord.alpha;
    if j < ord.n {
        return FracTerm::new(Scalar::zero(), exponent);
    }
    let coeff = Scalar::from_bigint(factorial(j as u64))
        * reciprocal_gamma_scalar(&(&exponent + Scalar::one()), prec);
    FracTerm::new(coeff, exponent)
}

pub fn caputo_derivative_poly(q: &Polynomial, ord: &CaputoOrder, prec: u32) -> FracExpansion {
    FracExpansion::from_terms(q.coeffs().iter().enumerate().map(|(j, c)| {
        let term = caputo_power_rule(j, ord, prec);
        FracTerm::new(c * term.coeff, term.exponent)
    }))
}

/// Riemann-Liouville integral of order `alpha > 0`.
pub fn rl_integral_poly(q: &Polynomial, alpha: &Scalar, prec: u32) -> Result<FracExpansion> {
    if !alpha.is_positive() {
        return Err(Error::Domain(format!("integral order must be positive, got {alpha}")));
    }
    Ok(FracExpansion::from_terms(q.coeffs().iter().enumerate().map(
        |(j, c)| {
            let exponent = j_scalar(j) + alpha;
            let coeff = Scalar::from_bigint(factorial(j as u64))
                * reciprocal_gamma_scalar(&(&exponent + Scalar::one()), prec);
            FracTerm::new(c * coeff, exponent)
        },
    )))
}

/// Riemann-Liouville derivative of order `alpha` applied to `t^beta`;
/// a negative `alpha` gives the integral of order `-alpha`.
pub fn rl_derivative_term(beta: &Scalar, alpha: &Scalar, prec: u32) -> Result<FracTerm> {
    if *beta <= Scalar::from_int(-1) {
        return Err(Error::Domain(format!("power t^{beta} needs beta > -1")));
    }
    let exponent = beta - alpha;
    let coeff = gamma_scalar(&(beta + Scalar::one()), prec)?
        * reciprocal_gamma_scalar(&(&exponent + Scalar::one()), prec);
    Ok(FracTerm::new(coeff, exponent))
}

/// Termwise [`rl_derivative_term`] over an expansion.
pub fn rl_derivative_expansion(e: &FracExpansion, alpha: &Scalar, prec: u32) -> Result<FracExpansion> {
    let terms = e
        .terms()
        .iter()
        .map(|t| {
            let d = rl_derivative_term(&t.exponent, alpha, prec)?;
            Ok(FracTerm::new(&t.coeff * d.coeff, d.exponent))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FracExpansion::from_terms(terms))
}

pub fn rl_derivative_poly(q: &Polynomial, alpha: &Scalar, prec: u32) -> Result<FracExpansion> {
    rl_derivative_expansion(&FracExpansion::from_polynomial(q), alpha, prec)
}

/// Outcome of evaluating `D^k [I^(k - alpha) q]` beside the Caputo
/// derivative of `q`.
#[derive(Clone, Debug)]
pub struct Composition {
    pub composed: FracExpansion,
    pub caputo: FracExpansion,
    pub diff: ExpansionDiff,
}

impl Composition {
    /// `None` when the two routes agree to `tol`, otherwise the diff.
    pub fn mismatch(&self, tol: f64) -> Option<&ExpansionDiff> {
        if self.diff.agrees(tol) {
            None
        } else {
            Some(&self.diff)
        }
    }
}

/// Applies the RL integral of order `n - alpha` and then the ordinary
/// `n`-th derivative. The two routes differ on polynomial parts of degree
/// below `n`, which the Caputo derivative annihilates and this one does not;
/// that shows up as a mismatch in the returned diff.
pub fn composition_check(q: &Polynomial, ord: &CaputoOrder, prec: u32) -> Result<Composition> {
    let k = j_scalar(ord.n);
    let lift = &k - &ord.alpha;
    let integrated = if lift.is_zero() {
        FracExpansion::from_polynomial(q)
    } else {
        rl_integral_poly(q, &lift, prec)?
    };
    let composed = rl_derivative_expansion(&integrated, &k, prec)?;
    let caputo = caputo_derivative_poly(q, ord, prec);
    let diff = compare_expansions(&composed, &caputo);
    Ok(Composition {
        composed,
        caputo,
        diff,
    })
}

/// `sum_k C(alpha, k) f^(k)(t) D^(alpha - k) g(t)` with the RL derivative on
/// the `g` factor; finite because `f^(k)` vanishes past `deg f`.
pub fn leibniz_product(f: &Polynomial, g: &Polynomial, alpha: &Scalar, prec: u32) -> Result<FracExpansion> {
    let g_exp = FracExpansion::from_polynomial(g);
    let mut acc = FracExpansion::empty();
    let mut fk = f.clone();
    for k in 0..=f.formal_degree() {
        if !fk.is_zero() {
            let order = alpha - j_scalar(k);
            let dg = rl_derivative_expansion(&g_exp, &order, prec)?;
            let c = generalized_binomial(alpha, k as u64);
            acc = acc.add(&dg.mul_polynomial(&fk).scale(&c));
        }
        fk = fk.derivative();
    }
    Ok(acc)
}

/// `m! / (m - n)! sum_k k! C(m-n, k) F_(m-n-k) / Gamma(n+k-alpha+1) t^(k-alpha+n)`
/// for a number sequence `F`; the Caputo derivative of the Appell polynomial
/// `sum_k C(m, k) F_k t^(m-k)`.
pub fn caputo_closed_form(numbers: &[Scalar], m: usize, ord: &CaputoOrder, prec: u32) -> Result<FracExpansion> {
    let n = ord.n;
    if m < n {
        return Err(Error::DegreeTooLow { degree: m, n });
    }
    let top = m - n;
    if numbers.len() <= top {
        return Err(Error::IndexOutOfOrder {
            index: top,
            order: numbers.len().saturating_sub(1),
        });
    }
    let lead = Scalar::from_bigint(factorial(m as u64) / factorial(top as u64));
    let terms = (0..=top).map(|k| {
        let exponent = j_scalar(k + n) - &ord.alpha;
        let weight = Scalar::from_bigint(factorial(k as u64) * binomial(top as u64, k as u64));
        let coeff = &lead
            * weight
            * &numbers[top - k]
            * reciprocal_gamma_scalar(&(&exponent + Scalar::one()), prec);
        FracTerm::new(coeff, exponent)
    });
    Ok(FracExpansion::from_terms(terms))
}

fn check_degree(m: usize, ord: &CaputoOrder) -> Result<()> {
    if m < ord.n {
        Err(Error::DegreeTooLow { degree: m, n: ord.n })
    } else {
        Ok(())
    }
}

/// Caputo derivative of the Apostol-Bernoulli polynomial `B_m(t | lambda)`
/// in closed form.
pub fn caputo_apostol_bernoulli(m: usize, lambda: &Scalar, ord: &CaputoOrder, prec: u32) -> Result<FracExpansion> {
    check_degree(m, ord)?;
    let p = FamilyParams::apostol(FamilyKind::Bernoulli, lambda.clone())?;
    caputo_closed_form(&family_numbers(&p, m - ord.n, prec)?, m, ord, prec)
}

/// Caputo derivative of `B_m^(h)(t | lambda)` with the higher-order numbers
/// expanded as multinomial convolutions of the order-1 numbers.
pub fn caputo_apostol_bernoulli_higher(
    m: usize,
    h: u32,
    lambda: &Scalar,
    ord: &CaputoOrder,
    prec: u32,
) -> Result<FracExpansion> {
    check_degree(m, ord)?;
    if h == 0 {
        return Err(Error::InvalidParams("order h must be at least 1".into()));
    }
    let top = m - ord.n;
    let p = FamilyParams::apostol(FamilyKind::Bernoulli, lambda.clone())?;
    let base = family_numbers(&p, top, prec)?;
    let numbers: Vec<Scalar> = (0..=top)
        .map(|r| multinomial_product_from_numbers(&base, h, r))
        .collect();
    caputo_closed_form(&numbers, m, ord, prec)
}

/// Caputo derivative of the degree-`m` member of any family in closed form.
pub fn caputo_family_poly(p: &FamilyParams, m: usize, ord: &CaputoOrder, prec: u32) -> Result<FracExpansion> {
    check_degree(m, ord)?;
    caputo_closed_form(&family_numbers(p, m - ord.n, prec)?, m, ord, prec)
}

/// The type-family closed form exactly as printed, with the fixed number
/// `F_n` (`n = ceil(alpha)`) in place of `F_(m-n-k)` in every summand.
pub fn caputo_family_poly_as_printed(p: &FamilyParams, m: usize, ord: &CaputoOrder, prec: u32) -> Result<FracExpansion> {
    check_degree(m, ord)?;
    let numbers = family_numbers(p, ord.n.max(m - ord.n), prec)?;
    let fixed = vec![numbers[ord.n].clone(); m - ord.n + 1];
    caputo_closed_form(&fixed, m, ord, prec)
}

/// `(1 / Gamma(n - alpha)) integral_0^t q^(n)(s) (t - s)^(n - alpha - 1) ds`
/// by Gauss-Jacobi quadrature. Integer orders return `q^(n)(t)`.
pub fn caputo_quadrature_oracle(q: &Polynomial, ord: &CaputoOrder, t: &Scalar, prec: u32) -> Result<BigFloat> {
    if !t.is_positive() {
        return Err(Error::Domain(format!("evaluation point must be positive, got {t}")));
    }
    let wp = prec + 32;
    let dq = q.nth_derivative(ord.n);
    if ord.is_integer() {
        return Ok(dq.eval(t).to_float(prec));
    }
    let Some(deg) = dq.degree() else {
        return Ok(BigFloat::zero(prec));
    };
    let lift = j_scalar(ord.n) - &ord.alpha;
    let weight_exp = &lift - Scalar::one();
    let rule = GaussJacobi::unit_interval(&weight_exp, deg + 2, prec);
    let tf = t.to_float(wp);
    let coeffs: Vec<BigFloat> = dq.coeffs().iter().map(|c| c.to_float(wp)).collect();
    let integral = rule.integrate(
        |u| {
            let s = tf.mul_prec(u, wp);
            coeffs
                .iter()
                .rev()
                .fold(BigFloat::zero(wp), |acc, c| acc.mul_prec(&s, wp).add_prec(c, wp))
        },
        wp,
    );
    // s = t u maps the kernel to t^(n - alpha) (1 - u)^(n - alpha - 1) du
    let scale = power(&tf, &lift, wp);
    let g = gamma_scalar(&lift, wp)?.to_float(wp);
    Ok(integral.mul_prec(&scale, wp).div_prec(&g, wp).with_precision(prec))
}

fn power(t: &BigFloat, e: &Scalar, wp: u32) -> BigFloat {
    match e.as_integer().and_then(|k| i64::try_from(k).ok()) {
        Some(k) if k >= 0 => t.with_precision(wp).powi(k as u32),
        Some(k) => BigFloat::one(wp).div_prec(&t.with_precision(wp).powi((-k) as u32), wp),
        None => t.with_precision(wp).pow(&e.to_float(wp)),
    }
}

/// `sum c_k t^(e_k)` for `t > 0`.
pub fn eval_frac_expansion(e: &FracExpansion, t: &Scalar, prec: u32) -> Result<BigFloat> {
    if !t.is_positive() {
        return Err(Error::Domain(format!("evaluation point must be positive, got {t}")));
    }
    let wp = prec + 32;
    let tf = t.to_float(wp);
    let sum = e.terms().iter().fold(BigFloat::zero(wp), |acc, term| {
        acc.add_prec(&term.coeff.to_float(wp).mul_prec(&power(&tf, &term.exponent, wp), wp), wp)
    });
    Ok(sum.with_precision(prec))
}
