//! Command-line front end.
//!
//! Every command prints an [`OutputEnvelope`]: `key=value` lines, numbers
//! with 17 significant digits, optionally followed by a CSV table.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 numerical failure,
//! 4 selftest failure.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::certify::{
    certify_firstcond, certify_invertibility, certify_p2_sharp, firstcond_boundary,
    is_monotone_prefix, region_scan, write_region_csv_file, Boundary, CertificateReport,
    ModulusSet,
};
use crate::eigen::{interior_grid, EigenPair};
use crate::error::{Error, Result};
use crate::fourier::{rho_sum, step2_lower_bound, tau_k_bound, FourierProfile, DEFAULT_K_MAX};
use crate::pelliptic::{kp, kp_at_zero, kp_via_2f1, kp_with_error, PModulus};
use crate::qtheta::{
    agm_complete_k, agm_jacobi_sn, fraenkel_s, lambert_l, lambert_via_digamma, mu0, mu0_complement,
    odd_lambert_sum, q0, sharp_equation,
};
use crate::sign::Sign;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SELFTEST: i32 = 4;

/// Terms allowed for `kp --method series`.
const SERIES_TERMS: usize = 100_000;

/// A scalar in an envelope.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Integer(i64),
    Text(String),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Number(x) => Some(*x),
            Value::Integer(i) => Some(*i as f64),
            Value::Text(_) => None,
        }
    }

    fn parse(s: &str) -> Value {
        if let Ok(i) = s.parse::<i64>() {
            return Value::Integer(i);
        }
        match s.parse::<f64>() {
            Ok(x) => Value::Number(x),
            Err(_) => Value::Text(s.to_string()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{}", format_number(*x)),
            Value::Integer(i) => write!(f, "{i}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Number(x)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Integer(i)
    }
}

impl From<usize> for Value {
    fn from(i: usize) -> Self {
        Value::Integer(i as i64)
    }
}

impl From<u32> for Value {
    fn from(i: u32) -> Self {
        Value::Integer(i as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// `x` with 17 significant digits (`1.5707963267948966e0`).
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

/// Output of one command.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputEnvelope {
    pub command: String,
    pub inputs: Vec<(String, Value)>,
    pub result: Vec<(String, Value)>,
    pub warnings: Vec<String>,
    pub table: Option<Table>,
}

impl OutputEnvelope {
    pub fn new(command: &str) -> Self {
        OutputEnvelope {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.push((key.to_string(), v.into()));
        self
    }

    pub fn put(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.result.push((key.to_string(), v.into()));
        self
    }

    pub fn warn(&mut self, msg: impl Into<String>) -> &mut Self {
        self.warnings.push(msg.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.result.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.get(key).and_then(Value::as_f64)
    }

    /// Parses the text produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut env = OutputEnvelope::default();
        let mut lines = text.lines();
        while let Some(line) = lines.next() {
            if line.is_empty() {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("malformed envelope line: {line}")))?;
            if key == "command" {
                env.command = val.to_string();
            } else if key == "warning" {
                env.warnings.push(val.to_string());
            } else if let Some(k) = key.strip_prefix("input.") {
                env.inputs.push((k.to_string(), Value::parse(val)));
            } else if let Some(k) = key.strip_prefix("result.") {
                env.result.push((k.to_string(), Value::parse(val)));
            } else if key == "table" {
                let columns = val.split(',').map(str::to_string).collect();
                let rows = lines
                    .by_ref()
                    .filter(|l| !l.is_empty())
                    .map(|l| l.split(',').map(Value::parse).collect())
                    .collect();
                env.table = Some(Table { columns, rows });
            } else {
                return Err(Error::domain(format!("unknown envelope key: {key}")));
            }
        }
        Ok(env)
    }
}

impl fmt::Display for OutputEnvelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command={}", self.command)?;
        for (k, v) in &self.inputs {
            writeln!(f, "input.{k}={v}")?;
        }
        for (k, v) in &self.result {
            writeln!(f, "result.{k}={v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning={w}")?;
        }
        if let Some(t) = &self.table {
            writeln!(f, "table={}", t.columns.join(","))?;
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(Value::to_string).collect();
                writeln!(f, "{}", cells.join(","))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "riesz-snp",
    version,
    about = "Generalized elliptic functions, p-Laplacian eigenpairs and Riesz basis certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Quad,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Firstcond,
    Invert,
    P2sharp,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected lo:hi:n, got {s}"));
    }
    let lo = parts[0].parse().map_err(|e| format!("bad lo: {e}"))?;
    let hi = parts[1].parse().map_err(|e| format!("bad hi: {e}"))?;
    let n = parts[2].parse().map_err(|e| format!("bad n: {e}"))?;
    Ok(GridSpec { lo, hi, n })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complete integral K_p(mu).
    Kp {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, value_enum, default_value = "quad")]
        method: Method,
    },
    /// sn_p(y, mu) and its first two derivatives.
    Snp {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// Eigenpair (phi_n, lambda_n) with samples of phi on [0, 1].
    Eigen {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        sign: Sign,
        #[arg(long, default_value_t = 11)]
        x_samples: usize,
    },
    /// Sine coefficients tau_1..tau_kmax of the profile.
    Tau {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
    },
    /// Sharp nome q0.
    Q0,
    /// Sharp modulus mu0.
    Mu0,
    /// s = +-4 pi sqrt(q) / (1 - q).
    S {
        #[arg(long)]
        q: f64,
        #[arg(long, allow_hyphen_values = true)]
        sign: Sign,
    },
    /// Riesz basis certificate.
    Certify {
        #[arg(long, value_enum)]
        criterion: CriterionArg,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Comma-separated moduli.
        #[arg(long, value_delimiter = ',', group = "moduli")]
        mu_list: Option<Vec<f64>>,
        #[arg(long, group = "moduli")]
        mu_const: Option<f64>,
        /// lo:hi:n
        #[arg(long, value_parser = parse_grid, group = "moduli")]
        mu_grid: Option<GridSpec>,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
    },
    /// Scan of the (1/p, mu) plane, written as CSV.
    Region {
        #[arg(long)]
        pgrid: usize,
        #[arg(long)]
        mugrid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs the built-in invariant checks.
    Selftest,
}

/// Parses `args` (including the program name), runs the command and writes
/// the envelope to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((env, code)) => {
            let _ = write!(out, "{env}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command.
pub fn execute(cmd: &Command) -> Result<(OutputEnvelope, i32)> {
    let env = match cmd {
        Command::Kp { p, mu, method } => cmd_kp(*p, *mu, *method)?,
        Command::Snp { p, mu, y } => cmd_snp(*p, *mu, *y)?,
        Command::Eigen {
            p,
            mu,
            n,
            sign,
            x_samples,
        } => cmd_eigen(*p, *mu, *n, *sign, *x_samples)?,
        Command::Tau { p, mu, kmax } => cmd_tau(*p, *mu, *kmax)?,
        Command::Q0 => cmd_q0()?,
        Command::Mu0 => cmd_mu0()?,
        Command::S { q, sign } => cmd_s(*q, *sign)?,
        Command::Certify {
            criterion,
            p,
            mu_list,
            mu_const,
            mu_grid,
            kmax,
        } => {
            let (ms, spec) = modulus_set(mu_list.as_deref(), *mu_const, *mu_grid)?;
            cmd_certify(*criterion, *p, &ms, &spec, *kmax)?
        }
        Command::Region { pgrid, mugrid, out } => cmd_region(*pgrid, *mugrid, out)?,
        Command::Selftest => {
            let env = cmd_selftest();
            let code = if env.get_f64("failures") == Some(0.0) {
                EXIT_OK
            } else {
                EXIT_SELFTEST
            };
            return Ok((env, code));
        }
    };
    Ok((env, EXIT_OK))
}

pub fn cmd_kp(p: f64, mu: f64, method: Method) -> Result<OutputEnvelope> {
    let mut env = OutputEnvelope::new("kp");
    env.input("p", p).input("mu", mu);
    match method {
        Method::Quad => {
            env.input("method", "quad");
            let (value, err) = kp_with_error(p, mu)?;
            env.put("value", value).put("abs_error_estimate", err);
        }
        Method::Series => {
            env.input("method", "series");
            env.put("value", kp_via_2f1(p, mu, SERIES_TERMS)?);
        }
    }
    Ok(env)
}

pub fn cmd_snp(p: f64, mu: f64, y: f64) -> Result<OutputEnvelope> {
    let m = PModulus::new(p, mu)?;
    let mut env = OutputEnvelope::new("snp");
    env.input("p", p).input("mu", mu).input("y", y);
    let v = m.snp_value(y)?;
    env.put("value", v.value)
        .put("deriv", m.snp_deriv(y)?)
        .put("branch_period_index", v.branch_period_index)
        .put("kp", m.kp());
    match m.snp_second_deriv(y) {
        Ok(d2) => {
            env.put("second_deriv", d2);
        }
        Err(Error::SingularPoint(_)) => {
            env.warn("second derivative is singular at this point");
        }
        Err(e) => return Err(e),
    }
    Ok(env)
}

pub fn cmd_eigen(p: f64, mu: f64, n: u32, sign: Sign, x_samples: usize) -> Result<OutputEnvelope> {
    let e = EigenPair::new(p, mu, n, sign)?;
    let mut env = OutputEnvelope::new("eigen");
    env.input("p", p)
        .input("mu", mu)
        .input("n", n)
        .input("sign", sign.to_string())
        .input("x_samples", x_samples);
    env.put("lambda", e.lambda())
        .put("c", e.c())
        .put("alpha", e.alpha())
        .put("beta", e.beta())
        .put("kp", e.kp())
        .put("frequency", e.frequency())
        .put("amplitude", e.amplitude());

    let grid = interior_grid(200);
    let fi = e.first_integral_residual(&grid)?;
    env.put("first_integral_residual", fi.max_abs_residual)
        .put("first_integral_tolerance", e.first_integral_tolerance());
    let ode = e.ode_residual(&grid)?;
    env.put("ode_residual", ode.max_abs_residual)
        .put("ode_tolerance", e.ode_tolerance())
        .put("ode_excluded_points", ode.excluded_points);
    if fi.excluded_points + ode.excluded_points > 0 {
        env.warn("residual points next to the extrema of phi were excluded");
    }

    let mut rows = Vec::with_capacity(x_samples);
    for i in 0..x_samples {
        let x = if x_samples == 1 {
            0.0
        } else {
            i as f64 / (x_samples - 1) as f64
        };
        rows.push(vec![Value::from(x), e.eval(x)?.into(), e.deriv(x)?.into()]);
    }
    env.table = Some(Table {
        columns: vec!["x".into(), "phi".into(), "dphi".into()],
        rows,
    });
    Ok(env)
}

pub fn cmd_tau(p: f64, mu: f64, kmax: usize) -> Result<OutputEnvelope> {
    let prof = FourierProfile::compute(p, mu, kmax)?;
    let mut env = OutputEnvelope::new("tau");
    env.input("p", p).input("mu", mu).input("kmax", kmax);
    env.put("kp", prof.kp)
        .put("tau1_margin", prof.tau(1) - step2_lower_bound())
        .put("tail_bound", prof.tail_bound)
        .put("abs_error_estimate", prof.abs_error_estimate);
    let rows = (1..=kmax)
        .map(|k| {
            vec![
                Value::from(k),
                prof.tau(k).into(),
                if k % 2 == 1 {
                    tau_k_bound(prof.kp, k).into()
                } else {
                    0.0.into()
                },
            ]
        })
        .collect();
    env.table = Some(Table {
        columns: vec!["k".into(), "tau".into(), "bound".into()],
        rows,
    });
    Ok(env)
}

pub fn cmd_q0() -> Result<OutputEnvelope> {
    let q = q0()?;
    let mut env = OutputEnvelope::new("q0");
    env.put("q0", q)
        .put("sharp_equation_residual", sharp_equation(q)?);
    Ok(env)
}

pub fn cmd_mu0() -> Result<OutputEnvelope> {
    let mut env = OutputEnvelope::new("mu0");
    env.put("mu0", mu0()?)
        .put("one_minus_mu0", mu0_complement()?)
        .put("q0", q0()?);
    Ok(env)
}

pub fn cmd_s(q: f64, sign: Sign) -> Result<OutputEnvelope> {
    let mut env = OutputEnvelope::new("s");
    env.input("q", q).input("sign", sign.to_string());
    env.put("s", fraenkel_s(q, sign)?);
    Ok(env)
}

fn modulus_set(
    list: Option<&[f64]>,
    constant: Option<f64>,
    grid: Option<GridSpec>,
) -> Result<(ModulusSet, String)> {
    match (list, constant, grid) {
        (Some(v), None, None) => Ok((
            ModulusSet::explicit(v.to_vec())?,
            v.iter()
                .map(|x| format_number(*x))
                .collect::<Vec<_>>()
                .join(";"),
        )),
        (None, Some(mu), None) => Ok((ModulusSet::constant(mu)?, format_number(mu))),
        (None, None, Some(g)) => Ok((
            ModulusSet::interval_grid(g.lo, g.hi, g.n)?,
            format!("{}:{}:{}", format_number(g.lo), format_number(g.hi), g.n),
        )),
        _ => Err(Error::domain(
            "exactly one of --mu-list, --mu-const, --mu-grid is required",
        )),
    }
}

pub fn cmd_certify(
    criterion: CriterionArg,
    p: f64,
    ms: &ModulusSet,
    ms_text: &str,
    kmax: usize,
) -> Result<OutputEnvelope> {
    let report = match criterion {
        CriterionArg::Firstcond => certify_firstcond(p, ms)?,
        CriterionArg::Invert => certify_invertibility(p, ms, kmax)?,
        CriterionArg::P2sharp => {
            if p != 2.0 {
                return Err(Error::domain(format!("p2sharp requires p = 2 (got {p})")));
            }
            certify_p2_sharp(ms)?
        }
    };
    let mut env = OutputEnvelope::new("certify");
    env.input("criterion", report.criterion.to_string())
        .input("p", p)
        .input("moduli", ms_text.to_string());
    if criterion == CriterionArg::Invert {
        env.input("kmax", kmax);
    }
    report_into(&report, &mut env);
    Ok(env)
}

fn report_into(r: &CertificateReport, env: &mut OutputEnvelope) {
    env.put("verdict", r.verdict.to_string())
        .put("lhs", r.lhs)
        .put("rhs", r.rhs)
        .put("margin", r.margin)
        .put("truncation_k", r.truncation_k)
        .put("tail_bound", r.tail_bound);
    for (k, v) in &r.diagnostics {
        env.put(&format!("diag.{k}"), *v);
    }
    for c in &r.caveats {
        env.warn(c.clone());
    }
}

pub fn cmd_region(pgrid: usize, mugrid: usize, out: &std::path::Path) -> Result<OutputEnvelope> {
    let rows = region_scan(pgrid, mugrid)?;
    write_region_csv_file(&rows, out)?;
    let mut env = OutputEnvelope::new("region");
    env.input("pgrid", pgrid)
        .input("mugrid", mugrid)
        .input("out", out.display().to_string());
    env.put("rows", rows.len())
        .put("inside", rows.iter().filter(|r| r.inside).count())
        .put(
            "monotone_prefix",
            if is_monotone_prefix(&rows) {
                "true"
            } else {
                "false"
            },
        );
    match firstcond_boundary(2.0)? {
        Boundary::At(mu) => {
            env.put("p2_boundary_mu", mu);
        }
        other => {
            env.warn(format!("no p = 2 boundary: {other:?}"));
        }
    }
    env.warn("moduli are capped at 0.999; values near 1 are the least accurate");
    Ok(env)
}

type Check = (&'static str, fn() -> Result<bool>);

fn selftest_checks() -> Vec<Check> {
    vec![
        ("kp_closed_forms", || {
            Ok((kp(2.0, 0.0)? - std::f64::consts::FRAC_PI_2).abs() < 1e-12
                && (kp(3.0, 0.0)? - kp_at_zero(3.0)).abs() < 1e-12)
        }),
        ("kp_matches_agm", || {
            for i in 1..10 {
                let mu = i as f64 / 10.0;
                if (kp(2.0, mu)? - agm_complete_k(mu)).abs() > 1e-10 {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("snp_matches_jacobi_sn", || {
            for i in 1..10 {
                let mu = i as f64 / 10.0;
                let m = PModulus::new(2.0, mu)?;
                for j in 0..20 {
                    let y = m.period() * j as f64 / 20.0;
                    if (m.snp(y)? - agm_jacobi_sn(y, mu)).abs() > 1e-9 {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }),
        ("sharp_nome", || Ok((q0()? - 0.768062).abs() < 1e-4)),
        ("sharp_modulus", || Ok(mu0_complement()? < 1e-7)),
        ("lambert_identities", || {
            for i in 1..10 {
                let q = i as f64 / 10.0;
                if (lambert_l(q)? - lambert_via_digamma(q)?).abs() > 1e-10 {
                    return Ok(false);
                }
                odd_lambert_sum(q)?;
            }
            Ok((rho_sum(q0()?)? - 1.0).abs() < 1e-4)
        }),
        ("fourier_bounds", || {
            for &(p, mu) in &[(1.5, 0.3), (2.0, 0.6), (3.0, 0.9)] {
                let prof = FourierProfile::compute(p, mu, 21)?;
                if prof.tau(1) < step2_lower_bound() - 1e-10 {
                    return Ok(false);
                }
                for k in 2..=21 {
                    let t = prof.tau(k);
                    let ok = if k % 2 == 0 {
                        t.abs() < 1e-10
                    } else {
                        t.abs() <= tau_k_bound(prof.kp, k) + 1e-10
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }),
        ("eigen_residuals", || {
            let grid = interior_grid(100);
            for &(p, mu, n) in &[(2.0, 0.6, 1), (3.0, 0.2, 2), (1.5, 0.6, 3)] {
                let e = EigenPair::new(p, mu, n, Sign::Plus)?;
                if !e
                    .first_integral_residual(&grid)?
                    .passes(e.first_integral_tolerance())
                    || !e.ode_residual(&grid)?.passes(e.ode_tolerance())
                    || e.eval(0.0)?.abs() > 1e-10
                    || e.eval(1.0)?.abs() > 1e-10
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("region_monotone", || {
            Ok(is_monotone_prefix(&region_scan(10, 10)?))
        }),
    ]
}

pub fn cmd_selftest() -> OutputEnvelope {
    let mut env = OutputEnvelope::new("selftest");
    let mut failures = 0usize;
    for (name, check) in selftest_checks() {
        let ok = match check() {
            Ok(ok) => ok,
            Err(e) => {
                env.warn(format!("{name}: {e}"));
                false
            }
        };
        if !ok {
            failures += 1;
        }
        env.put(&format!("check.{name}"), if ok { "PASS" } else { "FAIL" });
    }
    env.put("failures", failures);
    env
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("riesz-snp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn number_format_has_17_digits() {
        assert_eq!(
            format_number(std::f64::consts::FRAC_PI_2),
            "1.5707963267948966e0"
        );
        assert_eq!(format_number(-0.25), "-2.5000000000000000e-1");
        assert_eq!(format_number(f64::INFINITY), "inf");
    }

    #[test]
    fn kp_command() {
        let (code, out, _) = run_args(&["kp", "--p", "2", "--mu", "0"]);
        assert_eq!(code, 0);
        let env = OutputEnvelope::parse(&out).unwrap();
        assert_eq!(env.command, "kp");
        assert!((env.get_f64("value").unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-14);

        let (code, out, _) = run_args(&["kp", "--p", "3", "--mu", "0", "--method", "series"]);
        assert_eq!(code, 0);
        let v = OutputEnvelope::parse(&out)
            .unwrap()
            .get_f64("value")
            .unwrap();
        assert!((v - 1.209_199_576_156_145).abs() < 1e-12);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["kp", "--p", "2", "--mu", "1.5"]).0, 2);
        assert_eq!(run_args(&["kp", "--p", "2"]).0, 1);
        assert_eq!(run_args(&["kp", "--p", "x", "--mu", "0.5"]).0, 1);
        assert_eq!(run_args(&["nope"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
        assert_eq!(run_args(&["--version"]).0, 0);
        assert_eq!(
            run_args(&["kp", "--p", "2", "--mu", "0.95", "--method", "series"]).0,
            3
        );
        assert_eq!(run_args(&["certify", "--criterion", "firstcond"]).0, 2);
        assert_eq!(
            run_args(&[
                "certify",
                "--criterion",
                "firstcond",
                "--mu-grid",
                "0.1:0.2"
            ])
            .0,
            1
        );
        assert_eq!(
            run_args(&[
                "certify",
                "--criterion",
                "p2sharp",
                "--p",
                "3",
                "--mu-const",
                "0.5"
            ])
            .0,
            2
        );
    }

    #[test]
    fn sign_arguments() {
        let (code, out, _) = run_args(&["s", "--q", "0.25", "--sign", "-1"]);
        assert_eq!(code, 0);
        let s = OutputEnvelope::parse(&out).unwrap().get_f64("s").unwrap();
        assert!((s + 4.0 * std::f64::consts::PI * 0.5 / 0.75).abs() < 1e-13);
    }

    #[test]
    fn certify_command() {
        let (code, out, _) =
            run_args(&["certify", "--criterion", "p2sharp", "--mu-const", "0.9909"]);
        assert_eq!(code, 0);
        let env = OutputEnvelope::parse(&out).unwrap();
        assert_eq!(env.get("verdict"), Some(&Value::Text("PASS".into())));

        let (code, out, _) = run_args(&[
            "certify",
            "--criterion",
            "firstcond",
            "--mu-grid",
            "0.1:0.5:5",
        ]);
        assert_eq!(code, 0);
        let env = OutputEnvelope::parse(&out).unwrap();
        assert_eq!(env.get("verdict"), Some(&Value::Text("PASS".into())));
        assert!(!env.warnings.is_empty());
    }

    #[test]
    fn eigen_table() {
        let (code, out, _) = run_args(&[
            "eigen",
            "--p",
            "2",
            "--mu",
            "0.5",
            "--n",
            "2",
            "--x-samples",
            "5",
        ]);
        assert_eq!(code, 0);
        let env = OutputEnvelope::parse(&out).unwrap();
        let t = env.table.unwrap();
        assert_eq!(t.columns, ["x", "phi", "dphi"]);
        assert_eq!(t.rows.len(), 5);
        assert!(t.rows[0][1].as_f64().unwrap().abs() < 1e-12);
    }

    #[test]
    fn deterministic_output() {
        let a = run_args(&["tau", "--p", "3", "--mu", "0.4", "--kmax", "9"]);
        let b = run_args(&["tau", "--p", "3", "--mu", "0.4", "--kmax", "9"]);
        assert_eq!(a, b);
    }

    fn value_strategy() -> impl Strategy<Value = Value> {
        prop_oneof![
            any::<f64>()
                .prop_filter("NaN never compares equal", |x| !x.is_nan())
                .prop_map(Value::Number),
            any::<i64>().prop_map(Value::Integer),
            "[A-Za-z][A-Za-z ._:-]{0,20}"
                .prop_filter("text must not read as a number", |s| s
                    .parse::<f64>()
                    .is_err())
                .prop_map(Value::Text),
        ]
    }

    proptest! {
        #[test]
        fn envelope_round_trip(
            inputs in proptest::collection::vec(("[a-z_]{1,8}", value_strategy()), 0..5),
            result in proptest::collection::vec(("[a-z_.]{1,8}", value_strategy()), 0..8),
            warnings in proptest::collection::vec("[A-Za-z][A-Za-z ,;]{0,30}", 0..3),
            rows in proptest::collection::vec(
                proptest::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 3),
                0..4
            ),
        ) {
            let env = OutputEnvelope {
                command: "probe".into(),
                inputs,
                result,
                warnings,
                table: if rows.is_empty() {
                    None
                } else {
                    Some(Table {
                        columns: vec!["a".into(), "b".into(), "c".into()],
                        rows: rows.into_iter().map(|r| r.into_iter().map(Value::Number).collect()).collect(),
                    })
                },
            };
            let text = env.to_string();
            let back = OutputEnvelope::parse(&text).unwrap();
            prop_assert_eq!(&back, &env);
            for ((_, a), (_, b)) in back.result.iter().zip(&env.result) {
                if let (Value::Number(x), Value::Number(y)) = (a, b) {
                    prop_assert_eq!(x.to_bits(), y.to_bits());
                }
            }
        }
    }
}
