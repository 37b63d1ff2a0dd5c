//! Mittag-Leffler functions `E_a(z) = sum z^n / Gamma(a n + 1)` and
//! `E_{a,b}(z) = sum z^n / Gamma(a n + b)`.

use crate::error::{Error, Result};
use crate::numeric::{factorial, reciprocal_gamma_scalar, BigFloat, Scalar};
use crate::series::TruncatedSeries;

/// Largest `|z|` accepted by [`ml_eval`].
pub const EVALUATION_ENVELOPE: f64 = 50.0;

/// Below this `|z|` the closed form for `E_{1,m}` cancels too many leading
/// terms and [`ml_one_m_closed`] falls back to the series.
pub const CANCELLATION_THRESHOLD: f64 = 0.25;

#[derive(Clone, Debug, PartialEq)]
pub struct MLParams {
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl MLParams {
    pub fn new(alpha: Scalar, beta: Scalar) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::Domain(format!(
                "Mittag-Leffler parameters need alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(MLParams { alpha, beta })
    }

    /// `E_a = E_{a,1}`.
    pub fn one_parameter(alpha: Scalar) -> Result<Self> {
        Self::new(alpha, Scalar::one())
    }

    fn integral(&self) -> bool {
        self.alpha.as_integer().is_some() && self.beta.as_integer().is_some()
    }

    fn gamma_argument(&self, n: usize) -> Scalar {
        &self.alpha * Scalar::from_int(n as i64) + &self.beta
    }
}

/// Coefficients `1 / Gamma(a n + b)` for `n = 0..=order`. Exact rationals
/// when both parameters are positive integers, floats at `prec` otherwise.
pub fn ml_series(p: &MLParams, order: usize, prec: u32) -> TruncatedSeries {
    let exact = p.integral();
    TruncatedSeries::new(
        (0..=order)
            .map(|n| {
                let c = reciprocal_gamma_scalar(&p.gamma_argument(n), prec);
                if exact {
                    c
                } else {
                    c.into_float(prec)
                }
            })
            .collect(),
    )
}

fn round_up_to(v: u32, step: u32) -> u32 {
    v.div_ceil(step) * step
}

/// Point value of `E_{a,b}(z)` to relative tolerance `tol`.
///
/// Terms are summed until the next one is below `tol |S|` while the term
/// ratio is under 1/2; the ratio `Gamma(a n + b) / Gamma(a n + a + b)` falls
/// monotonically in `n`, so the tail is then bounded by twice that term.
pub fn ml_eval(p: &MLParams, z: &Scalar, tol: f64, prec: u32) -> Result<BigFloat> {
    let zf = z.to_f64();
    if zf.abs() > EVALUATION_ENVELOPE {
        return Err(Error::ConvergenceEnvelopeExceeded(zf.abs()));
    }
    let min_tol = 2f64.powi(-(prec as i32) + 4);
    if tol.is_nan() || tol <= 0.0 || tol < min_tol {
        return Err(Error::ToleranceUnreachable {
            tol,
            precision: prec,
        });
    }
    let alpha = p.alpha.to_f64();
    // the largest term grows like exp(|z|^(1/a))
    let growth = zf.abs().powf(1.0 / alpha) * std::f64::consts::LOG2_E;
    let wp = round_up_to(prec + 32 + growth.ceil() as u32, 64);
    let zw = z.to_float(wp);

    let term = |n: usize, zpow: &BigFloat| -> BigFloat {
        reciprocal_gamma_scalar(&p.gamma_argument(n), wp)
            .to_float(wp)
            .mul_prec(zpow, wp)
    };

    let half = 0.5f64;
    let mut zpow = BigFloat::one(wp);
    let mut current = term(0, &zpow);
    let mut sum = current.clone();
    let mut largest = current.abs();
    let mut n = 0usize;
    loop {
        n += 1;
        if n > 200_000 {
            return Err(Error::ToleranceUnreachable {
                tol,
                precision: prec,
            });
        }
        zpow = zpow.mul_prec(&zw, wp);
        let next = term(n, &zpow);
        sum = sum.add_prec(&next, wp);
        if next.abs() > largest {
            largest = next.abs();
        }
        if next.is_zero() && zw.is_zero() {
            break;
        }
        let ratio_small = current.is_zero()
            || next.abs().div_prec(&current.abs(), 64).to_f64() < half;
        let bound = next.abs().mul_pow2(1);
        let scale = if sum.is_zero() { BigFloat::one(wp) } else { sum.abs() };
        if ratio_small && bound.to_f64() <= tol * scale.to_f64() && bound < scale {
            break;
        }
        current = next;
    }
    if !sum.is_zero() {
        let lost = (largest.top() - sum.top()).max(0) as f64;
        let need = -tol.log2() + 8.0;
        if wp as f64 - lost < need {
            return Err(Error::ToleranceUnreachable {
                tol,
                precision: prec,
            });
        }
    }
    Ok(sum.with_precision(prec))
}

/// `E_{1,m}(z) = (e^z - sum_{k=0}^{m-2} z^k / k!) / z^(m-1)` for `m >= 2`,
/// switching to the series for `|z| < 1/4`.
pub fn ml_one_m_closed(m: u32, z: &Scalar, prec: u32) -> Result<BigFloat> {
    if m < 2 {
        return Err(Error::Domain(format!(
            "closed form for E_(1,m) needs m >= 2, got {m}"
        )));
    }
    if z.to_f64().abs() < CANCELLATION_THRESHOLD {
        let p = MLParams::new(Scalar::one(), Scalar::from_int(m as i64))?;
        return ml_eval(&p, z, 2f64.powi(8 - prec as i32), prec);
    }
    let wp = prec + 64 + 3 * m;
    let zf = z.to_float(wp);
    let mut partial = BigFloat::zero(wp);
    let mut zpow = BigFloat::one(wp);
    for k in 0..=(m as u64 - 2) {
        let fk = BigFloat::from_bigint(&factorial(k), wp);
        partial = partial.add_prec(&zpow.div_prec(&fk, wp), wp);
        zpow = zpow.mul_prec(&zf, wp);
    }
    // zpow is now z^(m-1)
    let value = zf.exp().sub_prec(&partial, wp).div_prec(&zpow, wp);
    Ok(value.with_precision(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::DEFAULT_PRECISION as P;

    fn s(v: &str) -> Scalar {
        Scalar::parse(v).unwrap()
    }

    fn params(a: &str, b: &str) -> MLParams {
        MLParams::new(s(a), s(b)).unwrap()
    }

    fn rel(a: &BigFloat, b: f64) -> f64 {
        ((a.to_f64() - b) / b).abs()
    }

    #[test]
    fn invalid_parameters() {
        assert!(MLParams::new(s("0"), s("1")).is_err());
        assert!(MLParams::new(s("1"), s("-1")).is_err());
    }

    #[test]
    fn series_examples() {
        let e = ml_series(&params("1", "1"), 5, P);
        assert_eq!(e, TruncatedSeries::exp(&Scalar::one(), 5));
        let e12 = ml_series(&params("1", "2"), 3, P);
        for n in 0..=3 {
            let want = Scalar::Exact(num_rational::BigRational::new(
                1.into(),
                factorial(n as u64 + 1),
            ));
            assert_eq!(*e12.coeff(n), want);
        }
        let e2 = ml_series(&params("2", "1"), 4, P);
        for n in 0..=4 {
            let want = Scalar::Exact(num_rational::BigRational::new(
                1.into(),
                factorial(2 * n as u64),
            ));
            assert_eq!(*e2.coeff(n), want);
        }
        let frac = ml_series(&params("1/2", "1"), 3, P);
        assert!(frac.coeffs().iter().all(|c| !c.is_exact()));
    }

    #[test]
    fn eval_examples() {
        let e = ml_eval(&params("1", "1"), &s("1"), 1e-30, P).unwrap();
        assert_eq!(e.to_decimal_string(16), "2.718281828459045");
        let v = ml_eval(&params("1", "2"), &s("1"), 1e-30, P).unwrap();
        assert_eq!(v.to_decimal_string(16), "1.718281828459045");
        let c = ml_eval(&params("2", "1"), &s("1"), 1e-30, P).unwrap();
        // independent sum of 1/(2n)!
        let mut want = 0.0f64;
        let mut f = 1.0f64;
        for n in 0..20 {
            if n > 0 {
                f *= (2 * n - 1) as f64 * (2 * n) as f64;
            }
            want += 1.0 / f;
        }
        assert!(rel(&c, want) < 1e-15);
        assert!(c.to_decimal_string(16).starts_with("1.54308063481524"));
        let zero = ml_eval(&params("2", "1"), &s("0"), 1e-20, P).unwrap();
        assert_eq!(zero, BigFloat::one(P));
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(
            ml_eval(&params("1", "1"), &s("51"), 1e-10, P),
            Err(Error::ConvergenceEnvelopeExceeded(_))
        ));
        assert!(matches!(
            ml_eval(&params("1", "1"), &s("1"), 1e-60, 128),
            Err(Error::ToleranceUnreachable { .. })
        ));
    }

    #[test]
    fn negative_argument_at_envelope_edge() {
        let v = ml_eval(&params("1", "1"), &s("-50"), 1e-20, P).unwrap();
        assert!(rel(&v, (-50f64).exp()) < 1e-14);
    }

    #[test]
    fn closed_form_examples() {
        let e = std::f64::consts::E;
        assert!(rel(&ml_one_m_closed(2, &s("1"), P).unwrap(), e - 1.0) < 1e-15);
        assert!(rel(&ml_one_m_closed(3, &s("1"), P).unwrap(), e - 2.0) < 1e-15);
        let small = ml_one_m_closed(2, &s("1e-6"), P).unwrap();
        let z = 1e-6f64;
        assert!(rel(&small, 1.0 + z / 2.0 + z * z / 6.0) < 1e-15);
        assert!(small.to_decimal_string(12).starts_with("1.0000005"));
        assert!(ml_one_m_closed(1, &s("1"), P).is_err());
    }
}
