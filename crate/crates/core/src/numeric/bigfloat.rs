//! Binary floating point with an arbitrary-precision mantissa.
//!
//! A value is `mant * 2^exp`, rounded to at most `prec` significant bits
//! (round half to even). The representation is canonical: the mantissa is
//! odd or zero, so two values compare equal exactly when their mantissa and
//! exponent match, independent of the precision they carry.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Smallest precision a float may carry.
pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && self.exp == other.exp
    }
}

impl Eq for BigFloat {}

fn round_magnitude(mag: BigUint, exp: i64, prec: u32, sticky: bool) -> (BigUint, i64) {
    let bits = mag.bits() as i64;
    if bits <= prec as i64 {
        return (mag, exp);
    }
    let shift = (bits - prec as i64) as u64;
    let mut q = &mag >> shift;
    let rem = &mag - (&q << shift);
    let half = BigUint::one() << (shift - 1);
    let round_up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Equal => sticky || q.is_odd(),
        Ordering::Less => false,
    };
    if round_up {
        q += 1u32;
    }
    (q, exp + shift as i64)
}

impl BigFloat {
    fn from_parts(sign: Sign, mag: BigUint, exp: i64, prec: u32, sticky: bool) -> Self {
        let prec = prec.max(2);
        if mag.is_zero() {
            return Self::zero(prec);
        }
        let (mut mag, mut exp) = round_magnitude(mag, exp, prec, sticky);
        let tz = mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mag >>= tz;
            exp += tz as i64;
        }
        BigFloat {
            mant: BigInt::from_biguint(sign, mag),
            exp,
            prec,
        }
    }

    fn normalize(mant: BigInt, exp: i64, prec: u32) -> Self {
        let (sign, mag) = mant.into_parts();
        Self::from_parts(sign, mag, exp, prec, false)
    }

    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::normalize(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::normalize(v.clone(), 0, prec)
    }

    /// Exact decode of a finite `f64`, rounded to `prec` bits.
    pub fn from_f64(v: f64, prec: u32) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Self::zero(prec));
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { Sign::Minus } else { Sign::Plus };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Self::from_parts(sign, BigUint::from(mant), exp, prec, false))
    }

    /// Quotient `num / den` correctly rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "BigFloat::from_ratio: zero denominator");
        Self::quotient(num, 0, den, 0, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), prec)
    }

    fn quotient(a: &BigInt, ae: i64, b: &BigInt, be: i64, prec: u32) -> Self {
        if a.is_zero() {
            return Self::zero(prec);
        }
        let sign = if a.sign() == b.sign() { Sign::Plus } else { Sign::Minus };
        let am = a.magnitude();
        let bm = b.magnitude();
        let shift = (prec as i64 + 3 + bm.bits() as i64 - am.bits() as i64).max(0) as u64;
        let (q, r) = (am << shift).div_rem(bm);
        Self::from_parts(sign, q, ae - be - shift as i64, prec, !r.is_zero())
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same value re-rounded to a new precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        Self::normalize(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Position of the leading bit: `|self|` lies in `[2^(top-1), 2^top)`.
    /// Zero reports `i64::MIN`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exp >= 0
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest integer (ties away from zero).
    pub fn round_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mant << self.exp as u64;
        }
        let shift = (-self.exp) as u64;
        let mag = self.mant.magnitude();
        let half = BigUint::one() << (shift - 1);
        let q = (mag + half) >> shift;
        BigInt::from_biguint(self.mant.sign(), q)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 60 {
            let s = (bits - 60) as u64;
            ((&self.mant >> s).to_f64().unwrap_or(0.0), self.exp + s as i64)
        } else {
            (self.mant.to_f64().unwrap_or(0.0), self.exp)
        };
        let e = e.clamp(-2200, 2200) as i32;
        // split the scaling so intermediate powers stay finite
        let half = e / 2;
        m * 2f64.powi(half) * 2f64.powi(e - half)
    }

    pub fn add_prec(&self, other: &Self, prec: u32) -> Self {
        if other.is_zero() {
            return self.with_precision(prec);
        }
        if self.is_zero() {
            return other.with_precision(prec);
        }
        let (hi, lo) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        if hi.top() - lo.top() > prec as i64 + 3 {
            // lo only affects rounding of hi; nudge with a sticky term
            let shift = (prec as i64 + 4 - hi.mant.bits() as i64).max(0) as u64;
            let mut m = &hi.mant << shift;
            if lo.is_negative() == hi.is_negative() {
                m += 1;
            } else {
                m -= 1;
            }
            return Self::normalize(m, hi.exp - shift as i64, prec);
        }
        let e = self.exp.min(other.exp);
        let m = (&self.mant << (self.exp - e) as u64) + (&other.mant << (other.exp - e) as u64);
        Self::normalize(m, e, prec)
    }

    pub fn sub_prec(&self, other: &Self, prec: u32) -> Self {
        self.add_prec(&other.neg_ref(), prec)
    }

    pub fn mul_prec(&self, other: &Self, prec: u32) -> Self {
        Self::normalize(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    pub fn div_prec(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        Self::quotient(&self.mant, self.exp, &other.mant, other.exp, prec)
    }

    fn neg_ref(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::normalize(&self.mant * k, self.exp, self.prec)
    }

    pub fn div_int(&self, k: i64) -> Self {
        Self::quotient(&self.mant, self.exp, &BigInt::from(k), 0, self.prec)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "BigFloat::sqrt of a negative value");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let want = 2 * (prec as i64 + 4);
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = self.mant.magnitude() << shift as u64;
        let r = m.sqrt();
        let sticky = &r * &r != m;
        Self::from_parts(Sign::Plus, r, (self.exp - shift) / 2, prec, sticky)
    }

    /// `e^self`.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return Self::one(prec);
        }
        let mag_bits = self.top().max(0) as u32;
        let wp = prec + 24 + mag_bits;
        let ln2 = ln2(wp + mag_bits);
        let k = self.div_prec(&ln2, 64).round_to_bigint();
        let k = k.to_i64().expect("exp argument out of range");
        let r = self.sub_prec(&ln2.mul_int(k), wp);
        let squarings = 12u32;
        let r = r.mul_pow2(-(squarings as i64));
        let mut sum = Self::one(wp);
        let mut term = Self::one(wp);
        let mut i = 1i64;
        loop {
            term = term.mul_prec(&r, wp).div_int(i);
            if term.is_zero() || term.top() < sum.top() - wp as i64 - 2 {
                break;
            }
            sum = sum.add_prec(&term, wp);
            i += 1;
        }
        for _ in 0..squarings {
            sum = sum.mul_prec(&sum, wp);
        }
        sum.mul_pow2(k).with_precision(prec)
    }

    /// Natural logarithm; panics on non-positive input.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "BigFloat::ln of a non-positive value");
        let prec = self.prec;
        let wp = prec + 24;
        let mut e = self.top() - 1;
        let mut m = self.mul_pow2(-e).with_precision(wp);
        // center m in [1/sqrt2, sqrt2)
        if m.to_f64() > std::f64::consts::SQRT_2 {
            m = m.mul_pow2(-1);
            e += 1;
        }
        let one = Self::one(wp);
        let y = m.sub_prec(&one, wp).div_prec(&m.add_prec(&one, wp), wp);
        let y2 = y.mul_prec(&y, wp);
        let mut sum = y.clone();
        let mut pow = y;
        let mut k = 1i64;
        loop {
            pow = pow.mul_prec(&y2, wp);
            let term = pow.div_int(2 * k + 1);
            if term.is_zero() || term.top() < -(wp as i64) - 4 {
                break;
            }
            sum = sum.add_prec(&term, wp);
            k += 1;
        }
        let ln_m = sum.mul_pow2(1);
        let mag = (e.unsigned_abs().max(1) as f64).log2().ceil() as u32;
        ln_m
            .add_prec(&ln2(wp + mag).mul_int(e), wp)
            .with_precision(prec)
    }

    pub fn sin(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return self.clone();
        }
        let mag_bits = self.top().max(0) as u32;
        let wp = prec + 24 + mag_bits;
        let two_pi = pi(wp + mag_bits).mul_pow2(1);
        let n = self.div_prec(&two_pi, 64).round_to_bigint();
        let n = n.to_i64().expect("sin argument out of range");
        let r = self.sub_prec(&two_pi.mul_int(n), wp);
        let r2 = r.mul_prec(&r, wp);
        let mut sum = r.clone();
        let mut term = r;
        let mut i = 1i64;
        loop {
            term = term.mul_prec(&r2, wp).div_int(-(2 * i) * (2 * i + 1));
            if term.is_zero() || term.top() < -(wp as i64) - 4 {
                break;
            }
            sum = sum.add_prec(&term, wp);
            i += 1;
        }
        sum.with_precision(prec)
    }

    /// `self^y` for positive `self`.
    pub fn pow(&self, y: &Self) -> Self {
        let prec = self.prec.max(y.prec);
        let wp = prec + 16 + y.top().max(0) as u32;
        self.with_precision(wp)
            .ln()
            .mul_prec(y, wp)
            .exp()
            .with_precision(prec)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_prec(&base, self.prec);
            }
            base = base.mul_prec(&base, self.prec);
            k >>= 1;
        }
        acc
    }

    /// Round to `digits` significant decimal digits; returns the digit string
    /// and the decimal exponent of its leading digit.
    fn decimal_digits(&self, digits: usize) -> (String, i64) {
        let r = self.to_rational().abs();
        let mut e10 = (self.top() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let p = digits as i64 - 1 - e10;
            let scaled = if p >= 0 {
                &r * BigRational::from_integer(BigInt::from(10).pow(p as u32))
            } else {
                &r / BigRational::from_integer(BigInt::from(10).pow((-p) as u32))
            };
            let n = scaled.round().to_integer();
            let s = n.to_string();
            if s.len() > digits {
                e10 += 1;
            } else if s.len() < digits {
                e10 -= 1;
            } else {
                return (s, e10);
            }
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (s, e10) = self.decimal_digits(digits.max(1));
        let sign = if self.is_negative() { "-" } else { "" };
        let trimmed = s.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        if (-7..21).contains(&e10) {
            if e10 >= 0 {
                let int_len = e10 as usize + 1;
                if trimmed.len() <= int_len {
                    format!("{sign}{}{}", trimmed, "0".repeat(int_len - trimmed.len()))
                } else {
                    format!("{sign}{}.{}", &trimmed[..int_len], &trimmed[int_len..])
                }
            } else {
                format!("{sign}0.{}{}", "0".repeat((-e10 - 1) as usize), trimmed)
            }
        } else if trimmed.len() == 1 {
            format!("{sign}{trimmed}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &trimmed[..1], &trimmed[1..])
        }
    }

    /// Shortest decimal string that parses back to this exact value at this
    /// value's precision.
    pub fn to_shortest_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let max_digits = (self.prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        for d in 1..=max_digits {
            let s = self.to_decimal_string(d);
            if let Some(back) = parse_decimal(&s) {
                if BigFloat::from_rational(&back, self.prec) == *self {
                    return s;
                }
            }
        }
        self.to_decimal_string(max_digits)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mant.sign(), other.mant.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = self.mant.magnitude() << (self.exp - e) as u64;
                let b = other.mant.magnitude() << (other.exp - e) as u64;
                a.cmp(&b)
            }
            o => o,
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_decimal_string(d)),
            None => f.write_str(&self.to_shortest_string()),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                self.$inner(rhs, self.prec.max(rhs.prec))
            }
        }
        impl $trait<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &BigFloat) -> BigFloat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_prec);
forward_binop!(Sub, sub, sub_prec);
forward_binop!(Mul, mul, mul_prec);
forward_binop!(Div, div, div_prec);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.neg_ref()
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        self.neg_ref()
    }
}

/// Parses `[-]digits[.digits][e[-]digits]` or `p/q` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp10) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i64>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / 10;
    let scale = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

type ConstCache = OnceLock<Mutex<HashMap<u32, BigFloat>>>;

fn cached(cache: &ConstCache, prec: u32, compute: impl FnOnce(u32) -> BigFloat) -> BigFloat {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("constant cache poisoned").get(&prec) {
        return v.clone();
    }
    let v = compute(prec);
    map.lock()
        .expect("constant cache poisoned")
        .insert(prec, v.clone());
    v
}

/// `sum 1/((2k+1) x^(2k+1))` scaled by `2^bits`, with alternating sign when `alternate`.
fn inverse_series(x: u64, bits: u32, alternate: bool) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut pow = (BigInt::one() << bits) / BigInt::from(x);
    let mut sum = pow.clone();
    let mut k = 1u64;
    while !pow.is_zero() {
        pow /= &x2;
        let term = &pow / BigInt::from(2 * k + 1);
        if alternate && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

pub fn pi(prec: u32) -> BigFloat {
    static CACHE: ConstCache = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let bits = prec + 32;
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let v = inverse_series(5, bits, true) * 16 - inverse_series(239, bits, true) * 4;
        BigFloat::normalize(v, -(bits as i64), prec)
    })
}

pub fn ln2(prec: u32) -> BigFloat {
    static CACHE: ConstCache = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let bits = prec + 32;
        // ln 2 = 2 atanh(1/3)
        let v = inverse_series(3, bits, false) * 2;
        BigFloat::normalize(v, -(bits as i64), prec)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: f64) -> BigFloat {
        BigFloat::from_f64(v, 128).unwrap()
    }

    fn close(a: &BigFloat, b: f64, tol: f64) -> bool {
        ((a.to_f64() - b) / b).abs() <= tol
    }

    #[test]
    fn canonical_equality_ignores_precision() {
        let a = BigFloat::from_i64(12, 64);
        let b = BigFloat::from_i64(12, 200);
        assert_eq!(a, b);
        assert_eq!(a.mant, BigInt::from(3));
        assert_eq!(a.exp, 2);
    }

    #[test]
    fn rounding_is_half_even() {
        // 2^70 + 1 does not fit in 64 bits and rounds to 2^70
        let v = (BigInt::one() << 70u32) + 1;
        let f = BigFloat::from_bigint(&v, 64);
        assert_eq!(f, BigFloat::from_bigint(&(BigInt::one() << 70u32), 64));
    }

    #[test]
    fn arithmetic_basics() {
        let third = BigFloat::from_ratio(&BigInt::from(1), &BigInt::from(3), 128);
        let sum = &(&third + &third) + &third;
        assert!((sum.to_f64() - 1.0).abs() < 1e-30);
        let x = bf(2.5) * bf(4.0);
        assert_eq!(x, BigFloat::from_i64(10, 128));
        assert_eq!(bf(1.0) - bf(1.0), BigFloat::zero(128));
        assert!(bf(-3.0) < bf(2.0));
        assert!(bf(-3.0) < bf(-2.0));
    }

    #[test]
    fn constants_match_f64() {
        assert!(close(&pi(128), std::f64::consts::PI, 1e-16));
        assert!(close(&ln2(128), std::f64::consts::LN_2, 1e-16));
        let s = pi(256).to_decimal_string(40);
        assert_eq!(s, "3.141592653589793238462643383279502884197");
    }

    #[test]
    fn transcendental_functions() {
        assert!(close(&bf(1.0).exp(), std::f64::consts::E, 1e-15));
        assert!(close(&bf(-20.5).exp(), (-20.5f64).exp(), 1e-14));
        assert!(close(&bf(10.0).ln(), 10f64.ln(), 1e-15));
        assert!(close(&bf(0.001).ln(), 0.001f64.ln(), 1e-15));
        assert!(close(&bf(1.0).sin(), 1f64.sin(), 1e-15));
        assert!(close(&bf(-7.25).sin(), (-7.25f64).sin(), 1e-14));
        assert!(close(&bf(2.0).sqrt(), std::f64::consts::SQRT_2, 1e-16));
        let e = BigFloat::one(256).exp();
        assert_eq!(
            e.to_decimal_string(30),
            "2.71828182845904523536028747135"
        );
        // ln(exp(x)) round trip at high precision
        let x = BigFloat::from_ratio(&BigInt::from(7), &BigInt::from(3), 200);
        let back = x.exp().ln();
        assert!((&back - &x).abs().top() < -190);
    }

    #[test]
    fn decimal_round_trip() {
        for v in [1.0, -0.5, 1e-12, 123456.789, 2f64.sqrt(), -1e30] {
            let f = bf(v);
            let s = f.to_shortest_string();
            let back = BigFloat::from_rational(&parse_decimal(&s).unwrap(), 128);
            assert_eq!(back, f, "{s}");
        }
        assert_eq!(bf(0.5).to_shortest_string(), "0.5");
        assert_eq!(BigFloat::from_i64(24, 128).to_shortest_string(), "24");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            parse_decimal("-1/30").unwrap(),
            BigRational::new((-1).into(), 30.into())
        );
        assert_eq!(
            parse_decimal("0.3").unwrap(),
            BigRational::new(3.into(), 10.into())
        );
        assert_eq!(
            parse_decimal("1e-10").unwrap(),
            BigRational::new(1.into(), BigInt::from(10).pow(10))
        );
        assert!(parse_decimal("abc").is_none());
        assert!(parse_decimal("1/0").is_none());
    }
}
