//! Gauss-Jacobi quadrature for `integral_0^1 f(u) (1 - u)^a du`, `a > -1`.
//!
//! Nodes are the roots of the Jacobi polynomial `P_N^(a,0)` mapped from
//! `[-1, 1]` to `[0, 1]`. They are bracketed in `f64` using the interlacing
//! of consecutive orthogonal polynomials, then polished by Newton's method
//! at the working precision. With `b = 0` the weight formula loses its
//! gamma-ratio prefactor, which leaves
//! `W_i = 1 / ((1 - x_i^2) P_N'(x_i)^2)` on the unit interval.
//! A rule with `N` nodes is exact for polynomials of degree `2N - 1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::numeric::{BigFloat, Scalar};

#[derive(Clone, Debug)]
pub struct GaussJacobi {
    nodes: Vec<BigFloat>,
    weights: Vec<BigFloat>,
}

type RuleKey = (String, usize, u32);

fn jacobi_f64(n: usize, a: f64, x: f64) -> (f64, f64) {
    // returns (P_n, P_{n-1}) for b = 0
    let mut p0 = 1.0;
    if n == 0 {
        return (p0, 0.0);
    }
    let mut p1 = (a + 1.0) + (a + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + a;
        let num = (c - 1.0) * (c * (c - 2.0) * x + a * a) * p1 - 2.0 * (kf + a - 1.0) * (kf - 1.0) * c * p0;
        let p2 = num / (2.0 * kf * (kf + a) * (c - 2.0));
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn bisect(n: usize, a: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = jacobi_f64(n, a, lo).0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = jacobi_f64(n, a, mid).0;
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `P_n^(a,0)` in increasing order, to `f64` accuracy.
fn roots_f64(n: usize, a: f64) -> Vec<f64> {
    let mut roots = vec![1.0 - 2.0 * (a + 1.0) / (a + 2.0)];
    for k in 2..=n {
        let mut brackets = Vec::with_capacity(k + 1);
        brackets.push(-1.0);
        brackets.extend(&roots);
        brackets.push(1.0);
        roots = brackets
            .windows(2)
            .map(|w| bisect(k, a, w[0], w[1]))
            .collect();
    }
    roots
}

/// `(P_n, P_n')` at `x` in working precision, for `b = 0`.
fn jacobi_with_derivative(n: usize, a: &BigFloat, x: &BigFloat, wp: u32) -> (BigFloat, BigFloat) {
    let one = BigFloat::one(wp);
    let two = BigFloat::from_i64(2, wp);
    let mut p0 = one.clone();
    let mut p1 = a
        .add_prec(&one, wp)
        .add_prec(&a.add_prec(&two, wp).mul_prec(&x.sub_prec(&one, wp), wp).mul_pow2(-1), wp);
    for k in 2..=n {
        let kf = BigFloat::from_i64(k as i64, wp);
        let c = kf.mul_pow2(1).add_prec(a, wp);
        let cm1 = c.sub_prec(&one, wp);
        let cm2 = c.sub_prec(&two, wp);
        let lead = cm1.mul_prec(&c.mul_prec(&cm2, wp).mul_prec(x, wp).add_prec(&a.mul_prec(a, wp), wp), wp);
        let back = kf
            .add_prec(a, wp)
            .sub_prec(&one, wp)
            .mul_prec(&kf.sub_prec(&one, wp), wp)
            .mul_prec(&c, wp)
            .mul_pow2(1);
        let num = lead.mul_prec(&p1, wp).sub_prec(&back.mul_prec(&p0, wp), wp);
        let den = kf.mul_prec(&kf.add_prec(a, wp), wp).mul_prec(&cm2, wp).mul_pow2(1);
        let p2 = num.div_prec(&den, wp);
        p0 = p1;
        p1 = p2;
    }
    // (2n + a)(1 - x^2) P_n' = n (a - (2n + a) x) P_n + 2 n (n + a) P_{n-1}
    let nf = BigFloat::from_i64(n as i64, wp);
    let c = nf.mul_pow2(1).add_prec(a, wp);
    let first = nf.mul_prec(&a.sub_prec(&c.mul_prec(x, wp), wp), wp).mul_prec(&p1, wp);
    let second = nf.mul_prec(&nf.add_prec(a, wp), wp).mul_prec(&p0, wp).mul_pow2(1);
    let one_minus_x2 = one.sub_prec(&x.mul_prec(x, wp), wp);
    let deriv = first
        .add_prec(&second, wp)
        .div_prec(&c.mul_prec(&one_minus_x2, wp), wp);
    (p1, deriv)
}

impl GaussJacobi {
    /// Rule with `n >= 1` nodes for the weight `(1 - u)^a` on `[0, 1]`.
    pub fn unit_interval(a: &Scalar, n: usize, prec: u32) -> Arc<GaussJacobi> {
        static RULES: OnceLock<RwLock<HashMap<RuleKey, Arc<GaussJacobi>>>> = OnceLock::new();
        let rules = RULES.get_or_init(|| RwLock::new(HashMap::new()));
        let key = (a.to_string(), n, prec);
        if let Some(rule) = rules.read().expect("rule cache poisoned").get(&key) {
            return rule.clone();
        }
        let rule = Arc::new(Self::build(a, n, prec));
        rules
            .write()
            .expect("rule cache poisoned")
            .entry(key)
            .or_insert(rule)
            .clone()
    }

    fn build(a: &Scalar, n: usize, prec: u32) -> GaussJacobi {
        assert!(n >= 1, "a quadrature rule needs at least one node");
        let wp = prec + 32;
        let af = a.to_float(wp);
        let one = BigFloat::one(wp);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for guess in roots_f64(n, a.to_f64()) {
            let mut x = BigFloat::from_f64(guess, wp).expect("finite root");
            let mut deriv = one.clone();
            for _ in 0..40 {
                let (p, d) = jacobi_with_derivative(n, &af, &x, wp);
                deriv = d;
                let step = p.div_prec(&deriv, wp);
                x = x.sub_prec(&step, wp);
                if step.is_zero() || step.top() < x.top().max(0) - wp as i64 + 4 {
                    break;
                }
            }
            let (_, d) = jacobi_with_derivative(n, &af, &x, wp);
            if !d.is_zero() {
                deriv = d;
            }
            let one_minus_x2 = one.sub_prec(&x.mul_prec(&x, wp), wp);
            let w = one.div_prec(&one_minus_x2.mul_prec(&deriv.mul_prec(&deriv, wp), wp), wp);
            nodes.push(x.add_prec(&one, wp).mul_pow2(-1));
            weights.push(w);
        }
        GaussJacobi { nodes, weights }
    }

    pub fn nodes(&self) -> &[BigFloat] {
        &self.nodes
    }

    pub fn weights(&self) -> &[BigFloat] {
        &self.weights
    }

    /// `sum_i W_i f(u_i)`.
    pub fn integrate(&self, f: impl Fn(&BigFloat) -> BigFloat, prec: u32) -> BigFloat {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(BigFloat::zero(prec), |acc, (u, w)| {
                acc.add_prec(&w.mul_prec(&f(u), prec), prec)
            })
    }
}
