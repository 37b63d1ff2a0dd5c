//! Identity-verification suites and their reports.
//!
//! Each suite checks one identity over a parameter grid and folds every
//! comparison into a [`VerificationReport`]. Family numbers enter through a
//! single accessor so that a [`Tamper`] can corrupt one stored number and
//! show which suites notice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frac_calc::{
    caputo_closed_form, caputo_quadrature_oracle, compare_expansions, composition_check,
    eval_frac_expansion, leibniz_product, rl_derivative_poly, CaputoOrder, ExpansionDiff,
};
use crate::mittag_leffler::{ml_eval, ml_one_m_closed, MLParams};
use crate::numeric::{binomial, BigFloat, Scalar, DEFAULT_PRECISION};
use crate::poly_families::{
    family_numbers, generating_series, higher_order_numbers, multinomial_product_from_numbers,
    polynomial_from_numbers, FamilyKind, FamilyParams,
};
use crate::polynomial::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    KnownDiscrepancy,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::KnownDiscrepancy => "known-discrepancy",
        }
    }

    pub fn is_ok(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub comparisons: usize,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParams(format!(
                "unknown format `{other}` (expected text, csv or json)"
            ))),
        }
    }
}

/// Adds `delta` to one stored family number. Optional `alpha`/`lambda`
/// narrow the corruption to one parameter set; otherwise every order-1
/// list of that kind is affected.
#[derive(Clone, Debug, PartialEq)]
pub struct Tamper {
    pub kind: FamilyKind,
    pub alpha: Option<Scalar>,
    pub lambda: Option<Scalar>,
    pub index: usize,
    pub delta: Scalar,
}

impl Tamper {
    fn matches(&self, p: &FamilyParams) -> bool {
        p.order == 1
            && p.kind == self.kind
            && self.alpha.as_ref().is_none_or(|a| *a == p.alpha)
            && self.lambda.as_ref().is_none_or(|l| *l == p.lambda)
    }
}

/// Grid overrides and numeric settings shared by all suites. `None` fields
/// fall back to each suite's own default grid.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub family: Option<FamilyKind>,
    pub alpha: Option<Scalar>,
    pub lambda: Option<Scalar>,
    pub h: Option<u32>,
    pub max_degree: Option<usize>,
    pub orders: Option<Vec<Scalar>>,
    pub points: Option<Vec<Scalar>>,
    pub precision: u32,
    pub tolerance: f64,
    pub format: OutputFormat,
    pub tamper: Option<Tamper>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: None,
            alpha: None,
            lambda: None,
            h: None,
            max_degree: None,
            orders: None,
            points: None,
            precision: DEFAULT_PRECISION,
            tolerance: 1e-10,
            format: OutputFormat::Text,
            tamper: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.precision < 64 {
            return Err(Error::InvalidParams(format!(
                "precision must be at least 64 bits, got {}",
                self.precision
            )));
        }
        Ok(())
    }

    /// Tolerance for float-domain identities that hold to working
    /// precision: about 1e-24 at 128 bits.
    pub fn fine_tolerance(&self) -> f64 {
        2f64.powi(48 - self.precision as i32)
    }

    fn kinds(&self) -> Vec<FamilyKind> {
        self.family.map_or_else(|| FamilyKind::ALL.to_vec(), |k| vec![k])
    }

    fn alphas(&self, default: &[i64]) -> Vec<Scalar> {
        self.alpha
            .clone()
            .map_or_else(|| ints(default), |a| vec![a])
    }

    fn lambdas(&self, default: &[(i64, i64)]) -> Vec<Scalar> {
        self.lambda.clone().map_or_else(
            || default.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect(),
            |l| vec![l],
        )
    }

    fn orders_or(&self, default: &[(i64, i64)]) -> Vec<Scalar> {
        self.orders.clone().unwrap_or_else(|| {
            default.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect()
        })
    }

    fn points_or(&self, default: &[(i64, i64)]) -> Vec<Scalar> {
        self.points.clone().unwrap_or_else(|| {
            default.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect()
        })
    }

    fn degree_or(&self, default: usize) -> usize {
        self.max_degree.unwrap_or(default)
    }

    /// Family numbers `0..=max_index`, with the tamper applied.
    pub fn numbers(&self, p: &FamilyParams, max_index: usize) -> Result<Vec<Scalar>> {
        let mut v = family_numbers(p, max_index, self.precision)?;
        if let Some(t) = &self.tamper {
            if t.matches(p) && t.index < v.len() {
                v[t.index] = &v[t.index] + &t.delta;
            }
        }
        Ok(v)
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&a| Scalar::from_int(a)).collect()
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Classical,
    Addition,
    Appell,
    UnitIntegral,
    UnitIntegralLiteral,
    MlClosedForm,
    Composition,
    Leibniz,
    CaputoApostol,
    CaputoHigher,
    CaputoTyped,
    CaputoTypedLiteral,
    Specialization,
    GenocchiEuler,
    HigherOrder,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::Classical,
        Suite::Addition,
        Suite::Appell,
        Suite::UnitIntegral,
        Suite::UnitIntegralLiteral,
        Suite::MlClosedForm,
        Suite::Composition,
        Suite::Leibniz,
        Suite::CaputoApostol,
        Suite::CaputoHigher,
        Suite::CaputoTyped,
        Suite::CaputoTypedLiteral,
        Suite::Specialization,
        Suite::GenocchiEuler,
        Suite::HigherOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Classical => "classical",
            Suite::Addition => "addition",
            Suite::Appell => "appell",
            Suite::UnitIntegral => "unit-integral",
            Suite::UnitIntegralLiteral => "unit-integral-literal",
            Suite::MlClosedForm => "ml-closed-form",
            Suite::Composition => "composition",
            Suite::Leibniz => "leibniz",
            Suite::CaputoApostol => "caputo-apostol",
            Suite::CaputoHigher => "caputo-higher",
            Suite::CaputoTyped => "caputo-typed",
            Suite::CaputoTypedLiteral => "caputo-typed-literal",
            Suite::Specialization => "specialization",
            Suite::GenocchiEuler => "genocchi-euler",
            Suite::HigherOrder => "higher-order",
        }
    }

    /// Literal suites reproduce a statement as printed and expect it to fail.
    pub fn is_literal(self) -> bool {
        matches!(self, Suite::UnitIntegralLiteral | Suite::CaputoTypedLiteral)
    }

    pub fn names() -> String {
        Suite::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                Error::InvalidParams(format!(
                    "unknown suite `{s}`; valid suites: all, {}",
                    Suite::names()
                ))
            })
    }
}

/// Expands `all` and removes duplicates, keeping first-seen order.
pub fn parse_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>> {
    let mut out: Vec<Suite> = Vec::new();
    for name in names {
        let batch = match name.as_ref() {
            "all" => Suite::ALL.to_vec(),
            other => vec![other.parse()?],
        };
        for s in batch {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    if out.is_empty() {
        out = Suite::ALL.to_vec();
    }
    Ok(out)
}

#[derive(Debug, Default)]
struct Tally {
    comparisons: usize,
    max_abs: f64,
    max_rel: f64,
    exact_mismatch: bool,
}

impl Tally {
    fn record(&mut self, abs: f64, rel: f64) {
        self.comparisons += 1;
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    /// Exact pairs must agree exactly; anything else is compared relatively.
    fn scalars(&mut self, got: &Scalar, want: &Scalar) {
        if got.is_exact() && want.is_exact() && got != want {
            self.exact_mismatch = true;
        }
        let (abs, rel) = crate::frac_calc::scalar_error(got, want);
        self.record(abs, rel);
    }

    fn floats(&mut self, got: &BigFloat, want: &BigFloat, floor: f64) {
        let prec = got.precision().max(want.precision());
        let diff = got.sub_prec(want, prec).abs().to_f64();
        let scale = got.abs().to_f64().max(want.abs().to_f64()).max(floor);
        let rel = if diff == 0.0 { 0.0 } else { diff / scale };
        self.record(diff, rel);
    }

    fn expansions(&mut self, d: &ExpansionDiff) {
        if !d.unmatched.is_empty() {
            self.exact_mismatch = true;
        }
        self.comparisons += d.compared;
        self.max_abs = self.max_abs.max(d.max_abs_err);
        self.max_rel = self.max_rel.max(d.max_rel_err);
    }

    fn agrees(&self, tol: f64) -> bool {
        !self.exact_mismatch && self.max_rel <= tol
    }
}

struct Outcome {
    params: BTreeMap<String, String>,
    tally: Tally,
    tolerance: f64,
}

impl Outcome {
    fn new(tolerance: f64) -> Self {
        Outcome {
            params: BTreeMap::new(),
            tally: Tally::default(),
            tolerance,
        }
    }

    fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.insert(key.to_string(), value.to_string());
    }
}

/// Runs one suite. Errors raised inside a suite become a failing report
/// carrying the message.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> VerificationReport {
    let result = match suite {
        Suite::Classical => classical(cfg),
        Suite::Addition => addition(cfg),
        Suite::Appell => appell(cfg),
        Suite::UnitIntegral => unit_integral(cfg, false),
        Suite::UnitIntegralLiteral => unit_integral(cfg, true),
        Suite::MlClosedForm => ml_closed_form(cfg),
        Suite::Composition => composition(cfg),
        Suite::Leibniz => leibniz(cfg),
        Suite::CaputoApostol => caputo_apostol(cfg),
        Suite::CaputoHigher => caputo_higher(cfg),
        Suite::CaputoTyped => caputo_typed(cfg, false),
        Suite::CaputoTypedLiteral => caputo_typed(cfg, true),
        Suite::Specialization => specialization(cfg),
        Suite::GenocchiEuler => genocchi_euler(cfg),
        Suite::HigherOrder => higher_order(cfg),
    };
    match result {
        Ok(o) => {
            let ok = o.tally.agrees(o.tolerance);
            let verdict = match (ok, suite.is_literal()) {
                (true, _) => Verdict::Pass,
                (false, true) => Verdict::KnownDiscrepancy,
                (false, false) => Verdict::Fail,
            };
            VerificationReport {
                identity: suite.name().to_string(),
                params: o.params,
                comparisons: o.tally.comparisons,
                max_abs_err: o.tally.max_abs,
                max_rel_err: o.tally.max_rel,
                tolerance: o.tolerance,
                verdict,
                note: None,
            }
        }
        Err(e) => VerificationReport {
            identity: suite.name().to_string(),
            params: BTreeMap::new(),
            comparisons: 0,
            max_abs_err: 0.0,
            max_rel_err: 0.0,
            tolerance: cfg.tolerance,
            verdict: Verdict::Fail,
            note: Some(e.to_string()),
        },
    }
}

/// Runs suites concurrently; reports come back in the requested order.
pub fn run_suites(suites: &[Suite], cfg: &RunConfig) -> Vec<VerificationReport> {
    suites.par_iter().map(|&s| run_suite(s, cfg)).collect()
}

pub fn all_ok(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.verdict.is_ok())
}

/// Classical Bernoulli numbers from `sum_{k<=n} C(n+1, k) B_k = 0`.
pub fn bernoulli_oracle(max_index: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max_index + 1);
    b.push(BigRational::one());
    for n in 1..=max_index {
        let s = (0..n).fold(BigRational::zero(), |acc, k| {
            acc + &b[k] * BigRational::from_integer(binomial(n as u64 + 1, k as u64))
        });
        b.push(-s / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Classical numbers of each kind: `B_n`, `E_n(0) = -2 (2^(n+1) - 1) B_(n+1) / (n+1)`
/// and `G_n = 2 (1 - 2^n) B_n`.
pub fn classical_oracle(kind: FamilyKind, max_index: usize) -> Vec<BigRational> {
    let b = bernoulli_oracle(max_index + 1);
    let two = |n: usize| BigRational::from_integer(BigInt::from(2).pow(n as u32));
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    (0..=max_index)
        .map(|n| match kind {
            FamilyKind::Bernoulli => b[n].clone(),
            FamilyKind::Euler => {
                int(-2) * (two(n + 1) - int(1)) * &b[n + 1] / int(n as i64 + 1)
            }
            FamilyKind::Genocchi => int(2) * (int(1) - two(n)) * &b[n],
        })
        .collect()
}

/// Apostol numbers from the recurrence obtained by multiplying the
/// generating function by its denominator. Bernoulli needs `lambda != 1`.
pub fn apostol_oracle(kind: FamilyKind, lambda: &BigRational, max_index: usize) -> Vec<BigRational> {
    let one = BigRational::one();
    let (lead, rhs_index, rhs) = match kind {
        FamilyKind::Bernoulli => (lambda - &one, 1, one.clone()),
        FamilyKind::Euler => (lambda + &one, 0, &one + &one),
        FamilyKind::Genocchi => (lambda + &one, 1, &one + &one),
    };
    let mut f: Vec<BigRational> = Vec::with_capacity(max_index + 1);
    for n in 0..=max_index {
        let conv = (0..n).fold(BigRational::zero(), |acc, k| {
            acc + &f[k] * BigRational::from_integer(binomial(n as u64, k as u64))
        });
        let delta = if n == rhs_index { rhs.clone() } else { BigRational::zero() };
        f.push((delta - lambda * conv) / &lead);
    }
    f
}

fn classical(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.degree_or(24);
    let kinds = cfg.kinds();
    let mut o = Outcome::new(cfg.tolerance);
    o.param("kinds", join(&kinds));
    o.param("max_index", n);
    for kind in kinds {
        let got = cfg.numbers(&FamilyParams::classical(kind), n)?;
        for (g, w) in got.iter().zip(classical_oracle(kind, n)) {
            o.tally.scalars(g, &Scalar::from(w));
        }
    }
    Ok(o)
}

/// Order-1 parameter sets over the family grid, skipping invalid ones.
fn family_grid(cfg: &RunConfig, alphas: &[i64], lambdas: &[(i64, i64)]) -> (Vec<FamilyParams>, Outcome) {
    let kinds = cfg.kinds();
    let alphas = cfg.alphas(alphas);
    let lambdas = cfg.lambdas(lambdas);
    let float = alphas.iter().any(|a| a.as_integer().is_none()) || lambdas.iter().any(|l| !l.is_exact());
    let mut o = Outcome::new(if float { cfg.fine_tolerance() } else { cfg.tolerance });
    o.param("kinds", join(&kinds));
    o.param("alpha", join(&alphas));
    o.param("lambda", join(&lambdas));
    let mut grid = Vec::new();
    for &kind in &kinds {
        for a in &alphas {
            for l in &lambdas {
                if let Ok(p) = FamilyParams::typed(kind, a.clone(), l.clone()) {
                    grid.push(p);
                }
            }
        }
    }
    (grid, o)
}

const FAMILY_ALPHAS: [i64; 3] = [1, 2, 3];
const FAMILY_LAMBDAS: [(i64, i64); 4] = [(1, 2), (1, 1), (2, 1), (3, 1)];

fn addition(cfg: &RunConfig) -> Result<Outcome> {
    let max = cfg.degree_or(16);
    let (grid, mut o) = family_grid(cfg, &FAMILY_ALPHAS, &FAMILY_LAMBDAS);
    o.param("max_degree", max);
    let points: Vec<Scalar> = (0..=max as i64).map(|k| Scalar::ratio(k - 8, 3)).collect();
    for p in &grid {
        let numbers = cfg.numbers(p, max)?;
        let series = generating_series(p, max, cfg.precision)?;
        for (i, x) in points.iter().enumerate() {
            let via_series = series.multiply_exp(x).egf_coefficients();
            // n + 1 distinct points pin down a degree-n polynomial
            for (n, want) in via_series.iter().enumerate().skip(i) {
                o.tally.scalars(&polynomial_from_numbers(&numbers, n).eval(x), want);
            }
        }
    }
    Ok(o)
}

fn appell(cfg: &RunConfig) -> Result<Outcome> {
    let max = cfg.degree_or(16);
    let (grid, mut o) = family_grid(cfg, &FAMILY_ALPHAS, &FAMILY_LAMBDAS);
    o.param("max_degree", max);
    for p in &grid {
        let numbers = cfg.numbers(p, max)?;
        let polys: Vec<Polynomial> = (0..=max).map(|n| polynomial_from_numbers(&numbers, n)).collect();
        for n in 1..=max {
            let lhs = polys[n].derivative();
            let rhs = polys[n - 1].scale(&Scalar::from_int(n as i64));
            for j in 0..n {
                o.tally.scalars(&lhs.coeff(j), &rhs.coeff(j));
            }
        }
    }
    Ok(o)
}

/// `integral_x^{x+1} P_n` against the difference of `P_(n+1)`; the literal
/// form subtracts `P_n(x)` instead.
fn unit_integral(cfg: &RunConfig, literal: bool) -> Result<Outcome> {
    let max = cfg.degree_or(12);
    let (grid, mut o) = family_grid(cfg, &FAMILY_ALPHAS, &FAMILY_LAMBDAS);
    o.param("max_degree", max);
    o.param("form", if literal { "as-printed" } else { "corrected" });
    let xs = cfg.points_or(&[(0, 1), (1, 2), (-1, 1), (3, 1)]);
    o.param("x", join(&xs));
    for p in &grid {
        let numbers = cfg.numbers(p, max + 1)?;
        let polys: Vec<Polynomial> = (0..=max + 1).map(|n| polynomial_from_numbers(&numbers, n)).collect();
        for n in 0..=max {
            let anti = polys[n].antiderivative();
            let scale = Scalar::from_int(n as i64 + 1);
            for x in &xs {
                let x1 = x + Scalar::one();
                let integral = anti.eval(&x1) - anti.eval(x);
                let lower = if literal { &polys[n] } else { &polys[n + 1] };
                let rhs = (polys[n + 1].eval(&x1) - lower.eval(x)) / &scale;
                o.tally.scalars(&integral, &rhs);
            }
        }
    }
    Ok(o)
}

fn ml_closed_form(cfg: &RunConfig) -> Result<Outcome> {
    let mut o = Outcome::new(1e-12);
    let zs = cfg.points_or(&[(1, 2), (-1, 2), (1, 1), (-1, 1), (2, 1)]);
    o.param("m", "2..6");
    o.param("z", join(&zs));
    let tol = 2f64.powi(16 - cfg.precision as i32).max(1e-300);
    for m in 2..=6u32 {
        let p = MLParams::new(Scalar::one(), Scalar::from_int(m as i64))?;
        for z in &zs {
            let series = ml_eval(&p, z, tol, cfg.precision)?;
            let closed = ml_one_m_closed(m, z, cfg.precision)?;
            o.tally.floats(&series, &closed, 0.0);
        }
    }
    Ok(o)
}

fn caputo_orders(cfg: &RunConfig, default: &[(i64, i64)]) -> Result<Vec<CaputoOrder>> {
    cfg.orders_or(default).into_iter().map(CaputoOrder::new).collect()
}

fn composition(cfg: &RunConfig) -> Result<Outcome> {
    let max = cfg.degree_or(12);
    let orders = caputo_orders(cfg, &[(3, 10), (1, 2), (3, 2)])?;
    let mut o = Outcome::new(cfg.fine_tolerance());
    o.param("alpha", join(&orders.iter().map(|c| c.alpha.clone()).collect::<Vec<_>>()));
    o.param("max_degree", max);
    for ord in &orders {
        for j in ord.n..=max {
            let c = composition_check(&Polynomial::monomial(j, Scalar::one()), ord, cfg.precision)?;
            o.tally.expansions(&c.diff);
        }
    }
    Ok(o)
}

fn leibniz(cfg: &RunConfig) -> Result<Outcome> {
    let max = cfg.degree_or(8);
    let alphas = cfg.orders_or(&[(1, 2), (3, 2)]);
    let mut o = Outcome::new(cfg.fine_tolerance());
    o.param("alpha", join(&alphas));
    o.param("max_degree", max);
    for a in &alphas {
        for i in 0..=max {
            for j in 0..=(max - i) {
                let f = Polynomial::monomial(i, Scalar::one());
                let g = Polynomial::monomial(j, Scalar::one());
                let got = leibniz_product(&f, &g, a, cfg.precision)?;
                let want = rl_derivative_poly(&f.mul(&g), a, cfg.precision)?;
                o.tally.expansions(&compare_expansions(&got, &want));
            }
        }
    }
    Ok(o)
}

const CAPUTO_ORDERS: [(i64, i64); 4] = [(3, 10), (1, 2), (3, 2), (5, 2)];
const CAPUTO_POINTS: [(i64, i64); 3] = [(1, 2), (1, 1), (2, 1)];

/// Closed form built from `closed_numbers` against the quadrature oracle on
/// the polynomial built from `oracle_numbers`, over degrees, orders and points.
fn closed_vs_oracle(
    o: &mut Outcome,
    cfg: &RunConfig,
    closed_numbers: &[Scalar],
    oracle_numbers: &[Scalar],
    max: usize,
    orders: &[CaputoOrder],
    ts: &[Scalar],
) -> Result<()> {
    for ord in orders {
        for m in ord.n..=max {
            let closed = caputo_closed_form(closed_numbers, m, ord, cfg.precision)?;
            let q = polynomial_from_numbers(oracle_numbers, m);
            for t in ts {
                let got = eval_frac_expansion(&closed, t, cfg.precision)?;
                let want = caputo_quadrature_oracle(&q, ord, t, cfg.precision)?;
                o.tally.floats(&got, &want, 1.0);
            }
        }
    }
    Ok(())
}

fn caputo_setup(cfg: &RunConfig, o: &mut Outcome) -> Result<(usize, Vec<CaputoOrder>, Vec<Scalar>)> {
    let max = cfg.degree_or(8);
    let orders = caputo_orders(cfg, &CAPUTO_ORDERS)?;
    let ts = cfg.points_or(&CAPUTO_POINTS);
    o.param("max_degree", max);
    o.param("order", join(&orders.iter().map(|c| c.alpha.clone()).collect::<Vec<_>>()));
    o.param("t", join(&ts));
    Ok((max, orders, ts))
}

fn caputo_apostol(cfg: &RunConfig) -> Result<Outcome> {
    let mut o = Outcome::new(cfg.tolerance);
    let (max, orders, ts) = caputo_setup(cfg, &mut o)?;
    let lambdas = cfg.lambdas(&[(2, 1), (3, 1)]);
    o.param("lambda", join(&lambdas));
    for l in &lambdas {
        let p = FamilyParams::apostol(FamilyKind::Bernoulli, l.clone())?;
        let stored = cfg.numbers(&p, max)?;
        let reference = family_numbers(&p, max, cfg.precision)?;
        closed_vs_oracle(&mut o, cfg, &stored, &reference, max, &orders, &ts)?;
    }
    Ok(o)
}

/// Higher-order closed form via the multinomial convolution of stored
/// order-1 numbers, checked against the polynomial built from the `h`-th
/// power of the generating function.
fn caputo_higher(cfg: &RunConfig) -> Result<Outcome> {
    let mut o = Outcome::new(cfg.tolerance);
    let (max, orders, ts) = caputo_setup(cfg, &mut o)?;
    let lambdas = cfg.lambdas(&[(2, 1), (3, 1)]);
    let hs = cfg.h.map_or_else(|| vec![1, 2], |h| vec![h]);
    o.param("lambda", join(&lambdas));
    o.param("h", join(&hs));
    for l in &lambdas {
        let base = cfg.numbers(&FamilyParams::apostol(FamilyKind::Bernoulli, l.clone())?, max)?;
        for &h in &hs {
            let stored: Vec<Scalar> = (0..=max)
                .map(|r| multinomial_product_from_numbers(&base, h, r))
                .collect();
            let reference = higher_order_numbers(l, h, max, cfg.precision)?;
            closed_vs_oracle(&mut o, cfg, &stored, &reference, max, &orders, &ts)?;
        }
    }
    Ok(o)
}

/// Typed families. The literal form repeats the single number `F_n`,
/// `n = ceil(alpha)`, in every summand.
fn caputo_typed(cfg: &RunConfig, literal: bool) -> Result<Outcome> {
    let mut o = Outcome::new(cfg.tolerance);
    let (max, orders, ts) = caputo_setup(cfg, &mut o)?;
    let (grid, grid_o) = family_grid(cfg, &[1, 2], &[(1, 1), (2, 1), (3, 1)]);
    o.params.extend(grid_o.params.into_iter().map(|(k, v)| (format!("family_{k}"), v)));
    o.param("form", if literal { "as-printed" } else { "corrected" });
    let top_n = orders.iter().map(|c| c.n).max().unwrap_or(0);
    for p in &grid {
        let count = max.max(top_n);
        let stored = cfg.numbers(p, count)?;
        let reference = family_numbers(p, count, cfg.precision)?;
        if literal {
            for ord in &orders {
                let fixed = vec![stored[ord.n].clone(); count + 1];
                closed_vs_oracle(&mut o, cfg, &fixed, &reference, max, std::slice::from_ref(ord), &ts)?;
            }
        } else {
            closed_vs_oracle(&mut o, cfg, &stored, &reference, max, &orders, &ts)?;
        }
    }
    Ok(o)
}

/// `alpha = 1` numbers against Apostol recurrences (classical recurrence at
/// `lambda = 1` for Bernoulli), plus the known closed forms of `B_1(lambda)`
/// and `B_2(lambda)`.
fn specialization(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.degree_or(24);
    let kinds = cfg.kinds();
    let lambdas = cfg.lambdas(&[(1, 2), (1, 1), (2, 1), (3, 1)]);
    let mut o = Outcome::new(cfg.tolerance);
    o.param("kinds", join(&kinds));
    o.param("lambda", join(&lambdas));
    o.param("max_index", n);
    for &kind in &kinds {
        for l in &lambdas {
            let p = FamilyParams::apostol(kind, l.clone())?;
            let got = cfg.numbers(&p, n)?;
            let lr = l.to_rational();
            let want = if kind == FamilyKind::Bernoulli && lr.is_one() {
                classical_oracle(kind, n)
            } else {
                apostol_oracle(kind, &lr, n)
            };
            for (g, w) in got.iter().zip(want) {
                o.tally.scalars(g, &Scalar::from(w));
            }
            if kind == FamilyKind::Bernoulli && !lr.is_one() && n >= 2 {
                let lm1 = l - Scalar::one();
                o.tally.scalars(&got[1], &(Scalar::one() / &lm1));
                o.tally.scalars(&got[2], &(Scalar::from_int(-2) * l / lm1.pow(2)));
            }
        }
    }
    Ok(o)
}

/// `G_n(x | lambda) = n E_(n-1)(x | lambda)` at `alpha = 1`.
fn genocchi_euler(cfg: &RunConfig) -> Result<Outcome> {
    let max = cfg.degree_or(16);
    let lambdas = cfg.lambdas(&FAMILY_LAMBDAS);
    let mut o = Outcome::new(cfg.tolerance);
    o.param("lambda", join(&lambdas));
    o.param("max_degree", max);
    for l in &lambdas {
        let g = cfg.numbers(&FamilyParams::apostol(FamilyKind::Genocchi, l.clone())?, max)?;
        let e = cfg.numbers(&FamilyParams::apostol(FamilyKind::Euler, l.clone())?, max)?;
        for n in 1..=max {
            let lhs = polynomial_from_numbers(&g, n);
            let rhs = polynomial_from_numbers(&e, n - 1).scale(&Scalar::from_int(n as i64));
            for j in 0..=n {
                o.tally.scalars(&lhs.coeff(j), &rhs.coeff(j));
            }
        }
    }
    Ok(o)
}

fn higher_order(cfg: &RunConfig) -> Result<Outcome> {
    let max = cfg.degree_or(10);
    let lambdas = cfg.lambdas(&FAMILY_LAMBDAS);
    let hs: Vec<u32> = cfg.h.map_or_else(|| (1..=4).collect(), |h| vec![h]);
    let mut o = Outcome::new(cfg.tolerance);
    o.param("lambda", join(&lambdas));
    o.param("h", join(&hs));
    o.param("max_index", max);
    for l in &lambdas {
        let base = cfg.numbers(&FamilyParams::apostol(FamilyKind::Bernoulli, l.clone())?, max)?;
        for &h in &hs {
            let want = higher_order_numbers(l, h, max, cfg.precision)?;
            for (r, w) in want.iter().enumerate() {
                o.tally.scalars(&multinomial_product_from_numbers(&base, h, r), w);
            }
        }
    }
    Ok(o)
}

fn params_string(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn render_reports(reports: &[VerificationReport], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&format!(
                    "{:<17} {:<22} comparisons={:<6} max_abs_err={:.3e} max_rel_err={:.3e} tolerance={:.1e} {}\n",
                    r.verdict.as_str(),
                    r.identity,
                    r.comparisons,
                    r.max_abs_err,
                    r.max_rel_err,
                    r.tolerance,
                    params_string(&r.params),
                ));
                if let Some(note) = &r.note {
                    out.push_str(&format!("  note: {note}\n"));
                }
            }
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InvalidParams(e.to_string());
            w.write_record([
                "identity",
                "params",
                "comparisons",
                "max_abs_err",
                "max_rel_err",
                "tolerance",
                "verdict",
                "note",
            ])
            .map_err(io)?;
            for r in reports {
                w.write_record([
                    r.identity.clone(),
                    params_string(&r.params),
                    r.comparisons.to_string(),
                    format!("{:e}", r.max_abs_err),
                    format!("{:e}", r.max_rel_err),
                    format!("{:e}", r.tolerance),
                    r.verdict.to_string(),
                    r.note.clone().unwrap_or_default(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidParams(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(reports)
                .map_err(|e| Error::InvalidParams(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> RunConfig {
        RunConfig {
            max_degree: Some(4),
            ..RunConfig::default()
        }
    }

    #[test]
    fn oracles_match_known_values() {
        let b = bernoulli_oracle(4);
        let want = ["1", "-1/2", "1/6", "0", "-1/30"];
        for (g, w) in b.iter().zip(want) {
            assert_eq!(Scalar::from(g.clone()), Scalar::parse(w).unwrap());
        }
        let g = classical_oracle(FamilyKind::Genocchi, 2);
        assert_eq!(g, vec![BigRational::zero(), BigRational::one(), -BigRational::one()]);
        let e = classical_oracle(FamilyKind::Euler, 1);
        assert_eq!(Scalar::from(e[1].clone()), Scalar::ratio(-1, 2));
        let two = BigRational::from_integer(BigInt::from(2));
        let ab = apostol_oracle(FamilyKind::Bernoulli, &two, 2);
        assert_eq!(Scalar::from(ab[2].clone()), Scalar::from_int(-4));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites(&["all"]).unwrap().len(), Suite::ALL.len());
        assert_eq!(parse_suites(&["appell", "appell"]).unwrap(), vec![Suite::Appell]);
        let err = parse_suites(&["nope"]).unwrap_err().to_string();
        assert!(err.contains("unit-integral"));
    }

    #[test]
    fn exact_suites_pass() {
        for s in [Suite::Classical, Suite::Appell, Suite::UnitIntegral, Suite::Specialization] {
            let r = run_suite(s, &quick());
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            assert_eq!(r.max_abs_err, 0.0);
        }
    }

    #[test]
    fn literal_unit_integral_is_a_known_discrepancy() {
        let r = run_suite(Suite::UnitIntegralLiteral, &quick());
        assert_eq!(r.verdict, Verdict::KnownDiscrepancy);
    }

    #[test]
    fn tamper_flips_classical() {
        let cfg = RunConfig {
            tamper: Some(Tamper {
                kind: FamilyKind::Euler,
                alpha: None,
                lambda: None,
                index: 3,
                delta: Scalar::one(),
            }),
            ..quick()
        };
        assert_eq!(run_suite(Suite::Classical, &cfg).verdict, Verdict::Fail);
        assert_eq!(run_suite(Suite::Addition, &cfg).verdict, Verdict::Fail);
    }

    #[test]
    fn errors_become_failing_reports() {
        let cfg = RunConfig {
            orders: Some(vec![Scalar::from_int(-1)]),
            ..quick()
        };
        let r = run_suite(Suite::Composition, &cfg);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.note.is_some());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            precision: 32,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            tolerance: 0.0,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn json_rendering_has_the_schema_keys() {
        let reports = run_suites(&[Suite::Appell], &quick());
        let s = render_reports(&reports, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let obj = v[0].as_object().unwrap();
        for key in ["identity", "params", "comparisons", "max_abs_err", "max_rel_err", "tolerance", "verdict"] {
            assert!(obj.contains_key(key), "{key}");
        }
        assert_eq!(obj["verdict"], "pass");
    }
}
