use std::fmt;

use crate::numeric::Scalar;

/// Dense polynomial, coefficients in ascending degree.
///
/// The stored length is the formal degree plus one; trailing zero
/// coefficients are allowed (a degree-`n` family member may have a vanishing
/// leading term) and ignored by equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![Scalar::zero()])
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c t^j`.
    pub fn monomial(j: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); j + 1];
        coeffs[j] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Formal degree (length - 1), which may exceed the true degree.
    pub fn formal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree of the highest nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * Scalar::from_int(j as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![Scalar::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c / Scalar::from_int(j as i64 + 1)),
        );
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        Self::new(coeffs)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|j| self.coeff(j) == other.coeff(j))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> Polynomial {
        Polynomial::new(vec![Scalar::ratio(1, 6), Scalar::from_int(-1), Scalar::one()])
    }

    #[test]
    fn horner_evaluation() {
        assert_eq!(b2().eval(&Scalar::zero()), Scalar::ratio(1, 6));
        assert_eq!(b2().eval(&Scalar::one()), Scalar::ratio(1, 6));
        assert_eq!(Polynomial::zero().eval(&Scalar::from_int(7)), Scalar::zero());
    }

    #[test]
    fn derivative_examples() {
        let d = b2().derivative();
        assert_eq!(d, Polynomial::new(vec![Scalar::from_int(-1), Scalar::from_int(2)]));
        assert!(Polynomial::constant(Scalar::from_int(5)).derivative().is_zero());
        assert_eq!(b2().antiderivative().derivative(), b2());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        let a = Polynomial::new(vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(a, Polynomial::constant(Scalar::one()));
        assert_eq!(a.degree(), Some(0));
        assert_eq!(a.formal_degree(), 2);
    }

    #[test]
    fn product() {
        let x = Polynomial::monomial(1, Scalar::one());
        let p = x.mul(&x).sub(&x);
        assert_eq!(p.eval(&Scalar::from_int(3)), Scalar::from_int(6));
    }
}
