use num_bigint::BigInt;
use num_traits::One;

use super::scalar::Scalar;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    // running product stays integral: C(n-k+i, i) at each step
    (1..=k).fold(BigInt::one(), |acc, i| acc * (n - k + i) / i)
}

/// `alpha (alpha - 1) ... (alpha - k + 1) / k!` for a real upper index.
/// Exact when `alpha` is exact.
pub fn generalized_binomial(alpha: &Scalar, k: u64) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..k {
        let factor = alpha - Scalar::from_int(i as i64);
        acc = acc * factor / Scalar::from_int(i as i64 + 1);
    }
    acc
}

/// `(sum parts)! / prod(parts_i!)`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Every composition of `total` into exactly `parts` non-negative summands,
/// in lexicographic order.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            rec(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![BigInt::one()];
        for n in 1..=64u64 {
            let mut next = vec![BigInt::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize]);
            }
        }
        assert_eq!(binomial(12, 6), BigInt::from(924));
    }

    #[test]
    fn generalized_binomial_values() {
        let half = Scalar::ratio(1, 2);
        assert_eq!(generalized_binomial(&half, 0), Scalar::one());
        assert_eq!(generalized_binomial(&half, 2), Scalar::ratio(-1, 8));
        assert_eq!(generalized_binomial(&Scalar::from_int(3), 2), Scalar::from_int(3));
        assert_eq!(generalized_binomial(&Scalar::from_int(3), 5), Scalar::zero());
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[2]), BigInt::from(1));
        assert_eq!(multinomial(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[]), BigInt::from(1));
    }

    #[test]
    fn multinomials_over_compositions_sum_to_power() {
        for h in 1..=4usize {
            for r in 0..=8u64 {
                let total: BigInt = compositions(r, h).iter().map(|c| multinomial(c)).sum();
                assert_eq!(total, BigInt::from(h).pow(r as u32), "h={h} r={r}");
            }
        }
    }

    #[test]
    fn composition_counts() {
        // C(r + h - 1, h - 1)
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }
}
