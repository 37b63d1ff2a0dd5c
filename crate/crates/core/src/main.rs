use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fracpoly::frac_calc::{
    caputo_apostol_bernoulli_higher, caputo_family_poly, caputo_quadrature_oracle, eval_frac_expansion,
    rl_integral_poly, CaputoOrder, FracExpansion,
};
use fracpoly::mittag_leffler::{ml_eval, ml_one_m_closed, MLParams};
use fracpoly::poly_families::{
    family_numbers, family_value_via_series, polynomial_from_numbers, FamilyKind, FamilyParams,
};
use fracpoly::verify::{all_ok, parse_suites, render_reports, OutputFormat, RunConfig};
use fracpoly::{BigFloat, Error, Polynomial, Scalar};

#[derive(Parser)]
#[command(name = "fracpoly", version, about = "Mittag-Leffler type Bernoulli, Euler and Genocchi polynomials and their fractional calculus")]
struct Cli {
    /// Working precision in bits for non-rational quantities.
    #[arg(long, global = true, env = "FRACPOLY_PRECISION", default_value_t = 128)]
    precision: u32,
    /// Relative tolerance for verification verdicts.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Output format: text, csv or json.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// bernoulli, euler or genocchi.
    #[arg(long, default_value = "bernoulli", value_parser = parse_kind)]
    family: FamilyKind,
    /// Mittag-Leffler index of the generating function.
    #[arg(long, default_value = "1", value_parser = parse_scalar)]
    alpha: Scalar,
    #[arg(long, default_value = "1", value_parser = parse_scalar)]
    lambda: Scalar,
    /// Order h (Bernoulli kind with alpha = 1 only when h > 1).
    #[arg(long, default_value_t = 1)]
    h: u32,
}

impl FamilyArgs {
    fn params(&self) -> Result<FamilyParams, Error> {
        FamilyParams::new(self.family, self.alpha.clone(), self.lambda.clone(), self.h)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Table of family numbers F_0..F_N.
    Numbers {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, visible_alias = "max-degree", default_value_t = 10)]
        max: usize,
    },
    /// Coefficients of the degree-n polynomial, ascending powers of x.
    Poly {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        degree: usize,
    },
    /// P_n(x) from the binomial sum and from the generating function.
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_parser = parse_scalar)]
        at: Scalar,
    },
    /// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
    Mleval {
        #[arg(long, value_parser = parse_scalar)]
        alpha: Scalar,
        #[arg(long, default_value = "1", value_parser = parse_scalar)]
        beta: Scalar,
        #[arg(long, value_parser = parse_scalar)]
        z: Scalar,
        /// Relative tolerance of the series; defaults to 2^(8 - precision).
        /// Values are printed to the digits this tolerance supports.
        #[arg(long)]
        tol: Option<f64>,
        /// Also evaluate the closed form (alpha = 1, integer beta >= 2).
        #[arg(long)]
        closed_form: bool,
    },
    /// Caputo derivative of the degree-m family member.
    Fracderiv {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        degree: usize,
        /// Fractional order.
        #[arg(long, default_value = "1/2", value_parser = parse_scalar)]
        order: Scalar,
        /// Evaluation point t > 0; adds the quadrature cross-check.
        #[arg(long, value_parser = parse_scalar)]
        at: Option<Scalar>,
    },
    /// Riemann-Liouville integral of the degree-m family member.
    Fracint {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "1/2", value_parser = parse_scalar)]
        order: Scalar,
        #[arg(long, value_parser = parse_scalar)]
        at: Option<Scalar>,
    },
    /// Run identity-verification suites (default: all).
    Verify {
        suites: Vec<String>,
        #[arg(long, value_parser = parse_kind)]
        family: Option<FamilyKind>,
        #[arg(long, value_parser = parse_scalar)]
        alpha: Option<Scalar>,
        #[arg(long, value_parser = parse_scalar)]
        lambda: Option<Scalar>,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long, visible_alias = "degree")]
        max_degree: Option<usize>,
        /// Fractional orders, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_scalar)]
        order: Option<Vec<Scalar>>,
        /// Evaluation points, comma separated.
        #[arg(long, value_delimiter = ',', value_parser = parse_scalar)]
        at: Option<Vec<Scalar>>,
    },
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    Scalar::parse(s).ok_or_else(|| format!("`{s}` is not a number (expected p/q or a decimal)"))
}

fn parse_kind(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: OutputFormat) -> Result<String, Error> {
        let err = |e: String| Error::InvalidParams(e);
        match format {
            OutputFormat::Text => {
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|c| {
                        self.rows
                            .iter()
                            .map(|r| r[c].len())
                            .chain([self.columns[c].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut out = line(self.columns.clone());
                for r in &self.rows {
                    out.push_str(&line(r.iter().map(String::as_str).collect()));
                }
                Ok(out)
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).map_err(|e| err(e.to_string()))?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| err(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| err(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
            }
            OutputFormat::Json => {
                let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        self.columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                            .collect()
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows).map_err(|e| err(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

fn expansion_table(e: &FracExpansion) -> Table {
    let mut t = Table::new(&["term", "coefficient", "exponent"]);
    for (i, term) in e.terms().iter().enumerate() {
        t.push(vec![i.to_string(), term.coeff.to_string(), term.exponent.to_string()]);
    }
    t
}

fn family_polynomial_of(p: &FamilyParams, m: usize, prec: u32) -> Result<Polynomial, Error> {
    Ok(polynomial_from_numbers(&family_numbers(p, m, prec)?, m))
}

enum Failure {
    Usage(Error),
    Verification,
}

fn run(cli: Cli) -> Result<String, (String, Failure)> {
    let prec = cli.precision;
    let format = cli.format;
    let usage = |e: Error| (String::new(), Failure::Usage(e));
    if prec < 64 {
        return Err(usage(Error::InvalidParams(format!(
            "precision must be at least 64 bits, got {prec}"
        ))));
    }
    let table = |t: Table| t.render(format).map_err(usage);
    match cli.command {
        Command::Numbers { family, max } => {
            let p = family.params().map_err(usage)?;
            let numbers = family_numbers(&p, max, prec).map_err(usage)?;
            let mut t = Table::new(&["index", "value"]);
            for (i, v) in numbers.iter().enumerate() {
                t.push(vec![i.to_string(), v.to_string()]);
            }
            table(t)
        }
        Command::Poly { family, degree } => {
            let p = family.params().map_err(usage)?;
            let q = family_polynomial_of(&p, degree, prec).map_err(usage)?;
            let mut t = Table::new(&["power", "coefficient"]);
            for (j, c) in q.coeffs().iter().enumerate() {
                t.push(vec![j.to_string(), c.to_string()]);
            }
            table(t)
        }
        Command::Eval { family, degree, at } => {
            let p = family.params().map_err(usage)?;
            let direct = family_polynomial_of(&p, degree, prec).map_err(usage)?.eval(&at);
            let series = family_value_via_series(&p, degree, &at, prec).map_err(usage)?;
            let mut t = Table::new(&["method", "value"]);
            t.push(vec!["binomial-sum".into(), direct.to_string()]);
            t.push(vec!["generating-function".into(), series.to_string()]);
            table(t)
        }
        Command::Mleval {
            alpha,
            beta,
            z,
            tol,
            closed_form,
        } => {
            let p = MLParams::new(alpha.clone(), beta.clone()).map_err(usage)?;
            let tol = tol.unwrap_or_else(|| 2f64.powi(8 - prec as i32).max(1e-300));
            let value = ml_eval(&p, &z, tol, prec).map_err(usage)?;
            let digits = (-tol.log10()).floor().max(1.0) as usize;
            let mut t = Table::new(&["method", "value"]);
            t.push(vec!["series".into(), value.to_decimal_string(digits)]);
            if closed_form {
                let m = match beta.as_integer().and_then(|b| u32::try_from(b).ok()) {
                    Some(m) if m >= 2 && alpha == Scalar::one() => m,
                    _ => {
                        return Err(usage(Error::Domain(
                            "closed form needs alpha = 1 and an integer beta >= 2".into(),
                        )))
                    }
                };
                let closed = ml_one_m_closed(m, &z, prec).map_err(usage)?;
                t.push(vec!["closed-form".into(), closed.to_decimal_string(digits)]);
            }
            table(t)
        }
        Command::Fracderiv {
            family,
            degree,
            order,
            at,
        } => {
            let p = family.params().map_err(usage)?;
            let ord = CaputoOrder::new(order).map_err(usage)?;
            let mut note = String::new();
            let expansion = if degree < ord.n {
                note = format!(
                    "note: degree {degree} is below n = ceil(order) = {}; the derivative vanishes identically\n",
                    ord.n
                );
                FracExpansion::empty()
            } else if p.order > 1 {
                caputo_apostol_bernoulli_higher(degree, p.order, &p.lambda, &ord, prec).map_err(usage)?
            } else {
                caputo_family_poly(&p, degree, &ord, prec).map_err(usage)?
            };
            let mut t = expansion_table(&expansion);
            if let Some(at) = at {
                let value = eval_frac_expansion(&expansion, &at, prec).map_err(usage)?;
                let q = family_polynomial_of(&p, degree, prec).map_err(usage)?;
                let oracle = caputo_quadrature_oracle(&q, &ord, &at, prec).map_err(usage)?;
                t.push(vec!["value".into(), value.to_string(), String::new()]);
                t.push(vec!["quadrature".into(), oracle.to_string(), String::new()]);
            }
            if !note.is_empty() {
                eprint!("{note}");
            }
            table(t)
        }
        Command::Fracint {
            family,
            degree,
            order,
            at,
        } => {
            let p = family.params().map_err(usage)?;
            let q = family_polynomial_of(&p, degree, prec).map_err(usage)?;
            let expansion = rl_integral_poly(&q, &order, prec).map_err(usage)?;
            let mut t = expansion_table(&expansion);
            if let Some(at) = at {
                let value: BigFloat = eval_frac_expansion(&expansion, &at, prec).map_err(usage)?;
                t.push(vec!["value".into(), value.to_string(), String::new()]);
            }
            table(t)
        }
        Command::Verify {
            suites,
            family,
            alpha,
            lambda,
            h,
            max_degree,
            order,
            at,
        } => {
            let suites = parse_suites(&suites).map_err(usage)?;
            let cfg = RunConfig {
                family,
                alpha,
                lambda,
                h,
                max_degree,
                orders: order,
                points: at,
                precision: prec,
                tolerance: cli.tolerance,
                format,
                tamper: None,
            };
            cfg.validate().map_err(usage)?;
            let reports = fracpoly::verify::run_suites(&suites, &cfg);
            let out = render_reports(&reports, format).map_err(usage)?;
            if all_ok(&reports) {
                Ok(out)
            } else {
                Err((out, Failure::Verification))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err((out, Failure::Verification)) => {
            let _ = stdout.write_all(out.as_bytes());
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err((_, Failure::Usage(e))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
