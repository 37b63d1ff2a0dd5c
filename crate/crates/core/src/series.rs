//! Truncated power series in `z`.
//!
//! Coefficients are stored in the ordinary convention (`a_k` multiplies
//! `z^k`); the factorial of the exponential-generating-function view is
//! applied only by [`TruncatedSeries::egf_coefficient`].

use crate::error::{Error, Result};
use crate::numeric::{factorial, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    /// Series from coefficients `a_0..=a_N`. An empty vector is the zero
    /// series of order 0.
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Scalar::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// `z` truncated at `order` (zero when `order == 0`).
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Scalar::one();
        }
        s
    }

    /// `e^(xz)`: coefficients `x^k / k!`.
    pub fn exp(x: &Scalar, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Scalar::one();
        coeffs.push(term.clone());
        for k in 1..=order {
            term = term * x / Scalar::from_int(k as i64);
            coeffs.push(term.clone());
        }
        Self::new(coeffs)
    }

    /// Builds a series from EGF coefficients `c_k` (so `a_k = c_k / k!`).
    pub fn from_egf(egf: &[Scalar]) -> Self {
        Self::new(
            egf.iter()
                .enumerate()
                .map(|(k, c)| c / Scalar::from_bigint(factorial(k as u64)))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop coefficients beyond `order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `z^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Scalar::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Self::new(coeffs)
    }

    /// Divide by `z^k`; the low `k` coefficients are discarded and the order
    /// drops by `k`.
    fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k..].to_vec())
    }

    fn check_orders(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        Ok(Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    /// `c_n = sum_{k<=n} a_k b_(n-k)` through the common order.
    pub fn cauchy_product(&self, other: &Self) -> Result<Self> {
        self.check_orders(other)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|i| {
                (0..=i)
                    .filter(|&k| !self.coeffs[k].is_zero() && !other.coeffs[i - k].is_zero())
                    .map(|k| &self.coeffs[k] * &other.coeffs[i - k])
                    .sum()
            })
            .collect();
        Ok(Self::new(coeffs))
    }

    /// Multiplicative inverse via the triangular recurrence
    /// `b_n = -(sum_{k=1}^{n} a_k b_(n-k)) / a_0`.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut b: Vec<Scalar> = Vec::with_capacity(n + 1);
        b.push(Scalar::one() / a0);
        for i in 1..=n {
            let acc: Scalar = (1..=i)
                .filter(|&k| !self.coeffs[k].is_zero())
                .map(|k| &self.coeffs[k] * &b[i - k])
                .sum();
            b.push(-(acc / a0));
        }
        Ok(Self::new(b))
    }

    /// `num / den` where `den` may have positive valuation `v`. Both are
    /// divided by `z^v` first, so the result has order `N - v` and every
    /// returned coefficient is determined by the inputs.
    pub fn divide_with_valuation(num: &Self, den: &Self) -> Result<Self> {
        num.check_orders(den)?;
        let n = den.order();
        let v = den.valuation().ok_or(Error::ZeroSeries(n))?;
        if let Some(vn) = num.valuation() {
            if vn < v {
                return Err(Error::Valuation { num: vn, den: v });
            }
        }
        let num = num.shift_down(v);
        let den = den.shift_down(v);
        num.cauchy_product(&den.reciprocal()?)
    }

    /// `a(z) e^(xz)` through the same order.
    pub fn multiply_exp(&self, x: &Scalar) -> Self {
        self.cauchy_product(&Self::exp(x, self.order()))
            .expect("orders agree by construction")
    }

    /// `n! a_n`, the coefficient of `z^n / n!`.
    pub fn egf_coefficient(&self, n: usize) -> Result<Scalar> {
        if n > self.order() {
            return Err(Error::IndexOutOfOrder {
                index: n,
                order: self.order(),
            });
        }
        Ok(&self.coeffs[n] * Scalar::from_bigint(factorial(n as u64)))
    }

    /// All EGF coefficients `0..=N`.
    pub fn egf_coefficients(&self) -> Vec<Scalar> {
        (0..=self.order())
            .map(|n| self.egf_coefficient(n).expect("index within order"))
            .collect()
    }

    /// `self^h` by repeated products; `h = 0` gives 1.
    pub fn pow(&self, h: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..h {
            acc = acc.cauchy_product(self).expect("orders agree");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(cs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::new(cs.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect())
    }

    fn ints(cs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn add_examples() {
        assert_eq!(ints(&[1, 1]).add(&ints(&[1, -1])).unwrap(), ints(&[2, 0]));
        let a = ints(&[3, 1, 4]);
        assert_eq!(a.add(&TruncatedSeries::zero(2)).unwrap(), a);
        assert_eq!(
            ints(&[1, 1, 1]).add(&ints(&[0, 0, 1])).unwrap(),
            ints(&[1, 1, 2])
        );
        assert_eq!(
            ints(&[1]).add(&ints(&[1, 2])),
            Err(Error::OrderMismatch(0, 1))
        );
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            ints(&[1, 1, 0]).cauchy_product(&ints(&[1, 1, 0])).unwrap(),
            ints(&[1, 2, 1])
        );
        let a = ints(&[2, -3, 5]);
        assert_eq!(a.cauchy_product(&TruncatedSeries::one(2)).unwrap(), a);
        let e = TruncatedSeries::exp(&Scalar::one(), 4);
        assert_eq!(
            e.cauchy_product(&e).unwrap(),
            s(&[(1, 1), (2, 1), (2, 1), (4, 3), (2, 3)])
        );
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(ints(&[1, -1, 0, 0, 0]).reciprocal().unwrap(), ints(&[1; 5]));
        assert_eq!(ints(&[1]).reciprocal().unwrap(), ints(&[1]));
        let sq = ints(&[1, 2, 1, 0, 0]);
        let r = sq.reciprocal().unwrap();
        assert_eq!(r, ints(&[1, -2, 3, -4, 5]));
        assert_eq!(sq.cauchy_product(&r).unwrap(), TruncatedSeries::one(4));
        assert_eq!(ints(&[0, 1]).reciprocal(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn valuation_division() {
        let n = 6;
        let em1 = TruncatedSeries::exp(&Scalar::one(), n).sub(&TruncatedSeries::one(n)).unwrap();
        let b = TruncatedSeries::divide_with_valuation(&TruncatedSeries::z(n), &em1).unwrap();
        assert_eq!(b.order(), n - 1);
        let egf = b.egf_coefficients();
        let want = [(1, 1), (-1, 2), (1, 6), (0, 1), (-1, 30), (0, 1)];
        for (c, &(p, q)) in egf.iter().zip(&want) {
            assert_eq!(*c, Scalar::ratio(p, q));
        }
        let z = TruncatedSeries::z(3);
        assert_eq!(
            TruncatedSeries::divide_with_valuation(&z, &z).unwrap(),
            ints(&[1, 0, 0])
        );
        assert_eq!(
            TruncatedSeries::divide_with_valuation(&TruncatedSeries::one(3), &z),
            Err(Error::Valuation { num: 0, den: 1 })
        );
        assert_eq!(
            TruncatedSeries::divide_with_valuation(&z, &TruncatedSeries::zero(3)),
            Err(Error::ZeroSeries(3))
        );
    }

    #[test]
    fn scaled_bernoulli_division() {
        // 2z / (e^{2z} - 1) has EGF coefficients 2^n B_n
        let n = 5;
        let two = Scalar::from_int(2);
        let num = TruncatedSeries::z(n).scale(&two);
        let den = TruncatedSeries::exp(&two, n).sub(&TruncatedSeries::one(n)).unwrap();
        let q = TruncatedSeries::divide_with_valuation(&num, &den).unwrap();
        assert_eq!(q.egf_coefficient(0).unwrap(), Scalar::one());
        assert_eq!(q.egf_coefficient(1).unwrap(), Scalar::from_int(-1));
        assert_eq!(q.egf_coefficient(2).unwrap(), Scalar::ratio(2, 3));
        let back = q.cauchy_product(&den.shift_down(1)).unwrap();
        assert_eq!(back, num.shift_down(1));
    }

    #[test]
    fn multiply_exp_examples() {
        let x = Scalar::ratio(3, 2);
        let e = TruncatedSeries::one(3).multiply_exp(&x);
        assert_eq!(e, TruncatedSeries::exp(&x, 3));
        let a = ints(&[4, 0, -1, 7]);
        assert_eq!(a.multiply_exp(&Scalar::zero()), a);
        let n = 4;
        let em1 = TruncatedSeries::exp(&Scalar::one(), n).sub(&TruncatedSeries::one(n)).unwrap();
        let b = TruncatedSeries::divide_with_valuation(&TruncatedSeries::z(n), &em1).unwrap();
        let b1 = b.multiply_exp(&Scalar::one());
        assert_eq!(b1.egf_coefficient(1).unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn egf_extraction() {
        let e = TruncatedSeries::exp(&Scalar::one(), 8);
        assert_eq!(e.egf_coefficient(7).unwrap(), Scalar::one());
        assert_eq!(TruncatedSeries::zero(4).egf_coefficient(3).unwrap(), Scalar::zero());
        assert_eq!(
            e.egf_coefficient(9),
            Err(Error::IndexOutOfOrder { index: 9, order: 8 })
        );
        let round = TruncatedSeries::from_egf(&e.egf_coefficients());
        assert_eq!(round, e);
    }

    #[test]
    fn shift_up_keeps_order() {
        assert_eq!(ints(&[1, 2, 3]).shift_up(1), ints(&[0, 1, 2]));
        assert_eq!(ints(&[1, 2]).shift_up(5), ints(&[0, 0]));
    }
}
