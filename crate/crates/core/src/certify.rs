//! Riesz-basis certificates.
//!
//! * `firstcond`: `sup K_p(mu_n) < 8 / (pi^2 - 8)`.
//! * `invertibility`: `sum_{odd k >= 3} sup_n |tau_k(mu_n)| < inf_n tau_1(mu_n)`,
//!   with the terms past the truncation index replaced by a tail bound.
//! * `p2-sharp` (`p = 2`): `sup mu_n < mu0`.
//!
//! Also the scan of the `(1/p, mu)` plane for `K_p(mu) < 8 / (pi^2 - 8)`.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{tau_tail_bound, FourierProfile};
use crate::pelliptic::{kp, PModulus};
use crate::qtheta::{mu0, mu0_complement, nome_from_modulus_complement};
use crate::quadrature::bracketed_root;

/// Slack used by the verdict rules.
pub const NUMERIC_SLACK: f64 = 1e-9;
/// Largest modulus sampled by [`region_scan`].
pub const REGION_MU_CAP: f64 = 0.999;

/// `8 / (pi^2 - 8)`.
pub fn firstcond_rhs() -> f64 {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    8.0 / (pi2 - 8.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusSetKind {
    ExplicitList,
    Constant,
    IntervalGrid,
}

/// A finite set of moduli in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusSet {
    kind: ModulusSetKind,
    values: Vec<f64>,
    grid_resolution: Option<usize>,
}

fn check_open_unit(mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::domain(format!(
            "modulus must lie in (0, 1) (got {mu})"
        )));
    }
    Ok(())
}

impl ModulusSet {
    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("modulus list is empty"));
        }
        for &v in &values {
            check_open_unit(v)?;
        }
        Ok(ModulusSet {
            kind: ModulusSetKind::ExplicitList,
            values,
            grid_resolution: None,
        })
    }

    pub fn constant(mu: f64) -> Result<Self> {
        check_open_unit(mu)?;
        Ok(ModulusSet {
            kind: ModulusSetKind::Constant,
            values: vec![mu],
            grid_resolution: None,
        })
    }

    /// `n` equally spaced points from `lo` to `hi` inclusive.
    pub fn interval_grid(lo: f64, hi: f64, n: usize) -> Result<Self> {
        check_open_unit(lo)?;
        check_open_unit(hi)?;
        if !(lo <= hi) || n == 0 || (n == 1 && lo != hi) {
            return Err(Error::domain(format!("invalid grid {lo}:{hi}:{n}")));
        }
        let values = if n == 1 {
            vec![lo]
        } else {
            (0..n)
                .map(|i| {
                    if i + 1 == n {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / (n - 1) as f64
                    }
                })
                .collect()
        };
        Ok(ModulusSet {
            kind: ModulusSetKind::IntervalGrid,
            values,
            grid_resolution: Some(n),
        })
    }

    pub fn kind(&self) -> ModulusSetKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid_resolution(&self) -> Option<usize> {
        self.grid_resolution
    }

    pub fn sup(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn inf(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    FirstCond,
    Invertibility,
    P2Sharp,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::FirstCond => "firstcond",
            Criterion::Invertibility => "invertibility",
            Criterion::P2Sharp => "p2-sharp",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// `PASS` if `lhs + tail < rhs - slack`, `INCONCLUSIVE` if
/// `|rhs - lhs| <= tail + slack`, else `FAIL`.
pub fn verdict_for(lhs: f64, rhs: f64, tail_bound: f64) -> Verdict {
    let margin = rhs - lhs;
    if lhs + tail_bound < rhs - NUMERIC_SLACK {
        Verdict::Pass
    } else if margin.abs() <= tail_bound + NUMERIC_SLACK {
        Verdict::Inconclusive
    } else {
        Verdict::Fail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub criterion: Criterion,
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub margin: f64,
    pub truncation_k: usize,
    pub tail_bound: f64,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
    /// Named auxiliary quantities.
    pub diagnostics: Vec<(String, f64)>,
}

impl CertificateReport {
    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }
}

const GRID_CAVEAT: &str =
    "sup and inf are taken over the grid points only; not rigorous between grid nodes";

/// `max K_p(mu) < 8 / (pi^2 - 8)` over the set.
pub fn certify_firstcond(p: f64, ms: &ModulusSet) -> Result<CertificateReport> {
    let kps = ms
        .values()
        .par_iter()
        .map(|&mu| kp(p, mu))
        .collect::<Result<Vec<f64>>>()?;
    let lhs = kps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rhs = firstcond_rhs();
    let mut caveats = Vec::new();
    if ms.kind() == ModulusSetKind::IntervalGrid {
        caveats.push(
            "K_p is increasing in mu, so the grid maximum at the upper end is the interval maximum"
                .to_string(),
        );
    }
    Ok(CertificateReport {
        criterion: Criterion::FirstCond,
        p,
        lhs,
        rhs,
        margin: rhs - lhs,
        truncation_k: 0,
        tail_bound: 0.0,
        verdict: verdict_for(lhs, rhs, 0.0),
        caveats,
        diagnostics: vec![("sup_mu".into(), ms.sup())],
    })
}

/// The truncated invertibility inequality, with `tau_k` computed for
/// `k <= k_trunc` and a tail bound for odd `k >= k_trunc + 2`.
pub fn certify_invertibility(p: f64, ms: &ModulusSet, k_trunc: usize) -> Result<CertificateReport> {
    if k_trunc < 5 || k_trunc.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "truncation index must be odd and at least 5 (got {k_trunc})"
        )));
    }
    let profiles = ms
        .values()
        .par_iter()
        .map(|&mu| FourierProfile::compute(p, mu, k_trunc))
        .collect::<Result<Vec<_>>>()?;

    let lhs: f64 = (3..=k_trunc)
        .step_by(2)
        .map(|k| profiles.iter().map(|f| f.tau(k).abs()).fold(0.0, f64::max))
        .sum();
    let rhs = profiles
        .iter()
        .map(|f| f.tau(1))
        .fold(f64::INFINITY, f64::min);
    let sup_kp = profiles.iter().map(|f| f.kp).fold(0.0, f64::max);
    let tail_bound = tau_tail_bound(sup_kp, k_trunc + 2)?;
    let quad_err: f64 = profiles
        .iter()
        .map(|f| f.abs_error_estimate)
        .fold(0.0, f64::max);
    let max_even = profiles
        .iter()
        .flat_map(|f| (2..=k_trunc).step_by(2).map(move |k| f.tau(k).abs()))
        .fold(0.0, f64::max);

    let verdict = verdict_for(lhs, rhs, tail_bound);
    let mut caveats = Vec::new();
    if ms.kind() == ModulusSetKind::IntervalGrid {
        caveats.push(GRID_CAVEAT.to_string());
    }
    if verdict == Verdict::Inconclusive {
        caveats.push("the tail bound straddles the margin; increase the truncation index".into());
    }
    Ok(CertificateReport {
        criterion: Criterion::Invertibility,
        p,
        lhs,
        rhs,
        margin: rhs - lhs,
        truncation_k: k_trunc,
        tail_bound,
        verdict,
        caveats,
        diagnostics: vec![
            ("sup_kp".into(), sup_kp),
            ("max_even_coefficient".into(), max_even),
            ("quadrature_error".into(), quad_err),
        ],
    })
}

/// `sup mu < mu0` for `p = 2`, with `S(q) = sum_{j>=1} rho_j(q)` at the nome
/// of the supremum reported alongside. Moduli are compared through their
/// distance to 1, since `1 - mu0` is below the spacing of doubles near 1.
pub fn certify_p2_sharp(ms: &ModulusSet) -> Result<CertificateReport> {
    let lhs = ms.sup();
    let lhs_c = 1.0 - lhs;
    let rhs_c = mu0_complement()?;
    let rhs = mu0()?;
    let margin = lhs_c - rhs_c;
    let q_sup = nome_from_modulus_complement(lhs_c)?;
    let s = crate::fourier::rho_sum(q_sup)?;

    let below = margin > 0.0;
    let mut caveats = Vec::new();
    let verdict = if below == (s < 1.0) {
        if below {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else {
        caveats.push(format!(
            "rho sum S = {s} disagrees with the comparison against mu0"
        ));
        Verdict::Inconclusive
    };
    Ok(CertificateReport {
        criterion: Criterion::P2Sharp,
        p: 2.0,
        lhs,
        rhs,
        margin,
        truncation_k: 0,
        tail_bound: 0.0,
        verdict,
        caveats,
        diagnostics: vec![
            ("one_minus_sup_mu".into(), lhs_c),
            ("one_minus_mu0".into(), rhs_c),
            ("nome_of_sup".into(), q_sup),
            ("rho_sum".into(), s),
        ],
    })
}

/// Location of `K_p(mu) = 8 / (pi^2 - 8)` in `mu` for fixed `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// `K_p(mu)` is below the threshold for every sampled `mu < 1`.
    AllInside,
    /// `K_p(0)` already exceeds the threshold.
    AllOutside,
    At(f64),
}

/// Modulus where `K_p(mu)` crosses `8 / (pi^2 - 8)`, by bracketed root finding.
pub fn firstcond_boundary(p: f64) -> Result<Boundary> {
    let rhs = firstcond_rhs();
    let g = |mu: f64| kp(p, mu).map(|k| k - rhs);
    if g(0.0)? >= 0.0 {
        return Ok(Boundary::AllOutside);
    }
    let hi = 1.0 - 1e-15;
    if g(hi)? < 0.0 {
        return Ok(Boundary::AllInside);
    }
    let mu = bracketed_root(|mu| g(mu).unwrap_or(f64::NAN), 0.0, hi, 1e-13)?;
    Ok(Boundary::At(mu))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRow {
    pub one_over_p: f64,
    pub mu: f64,
    pub kp: f64,
    pub inside: bool,
}

/// `1/p = i / (p_points + 1)`, `i = 1..=p_points`.
pub fn region_p_grid(p_points: usize) -> Vec<f64> {
    (1..=p_points)
        .map(|i| i as f64 / (p_points + 1) as f64)
        .collect()
}

/// `mu = 0.999 j / mu_points`, `j = 1..=mu_points`.
pub fn region_mu_grid(mu_points: usize) -> Vec<f64> {
    (1..=mu_points)
        .map(|j| REGION_MU_CAP * (j as f64 / mu_points as f64))
        .collect()
}

/// `K_p(mu)` and `K_p(mu) < 8 / (pi^2 - 8)` over the product grid, sorted by
/// `(1/p, mu)`.
pub fn region_scan(p_points: usize, mu_points: usize) -> Result<Vec<RegionRow>> {
    region_scan_on(&region_p_grid(p_points), &region_mu_grid(mu_points))
}

/// As [`region_scan`] on explicit grids of `1/p` and `mu`.
pub fn region_scan_on(one_over_p: &[f64], mus: &[f64]) -> Result<Vec<RegionRow>> {
    for &t in one_over_p {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::domain(format!("1/p must lie in (0, 1) (got {t})")));
        }
    }
    for &mu in mus {
        if !(0.0..=REGION_MU_CAP).contains(&mu) {
            return Err(Error::domain(format!(
                "scan moduli must lie in [0, {REGION_MU_CAP}] (got {mu})"
            )));
        }
    }
    let rhs = firstcond_rhs();
    let cells: Vec<(f64, f64)> = one_over_p
        .iter()
        .flat_map(|&t| mus.iter().map(move |&mu| (t, mu)))
        .collect();
    let mut rows = cells
        .par_iter()
        .map(|&(t, mu)| {
            let k = kp(1.0 / t, mu)?;
            Ok(RegionRow {
                one_over_p: t,
                mu,
                kp: k,
                inside: k < rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        a.one_over_p
            .total_cmp(&b.one_over_p)
            .then(a.mu.total_cmp(&b.mu))
    });
    Ok(rows)
}

/// True when, for every value of `1/p`, the inside rows come before the
/// outside rows in increasing `mu`.
pub fn is_monotone_prefix(rows: &[RegionRow]) -> bool {
    rows.chunk_by(|a, b| a.one_over_p == b.one_over_p)
        .all(|row| row.windows(2).all(|w| w[0].inside || !w[1].inside))
}

/// Writes the scan as CSV with header `one_over_p,mu,kp,inside`.
pub fn write_region_csv<W: Write>(rows: &[RegionRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::domain(format!("cannot write CSV: {e}"));
    w.write_record(["one_over_p", "mu", "kp", "inside"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            format!("{:.16e}", r.one_over_p),
            format!("{:.16e}", r.mu),
            format!("{:.16e}", r.kp),
            if r.inside { "1" } else { "0" }.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::domain(format!("cannot write CSV: {e}")))
}

/// Writes the scan to a file.
pub fn write_region_csv_file(rows: &[RegionRow], path: &Path) -> Result<()> {
    let f = std::fs::File::create(path)
        .map_err(|e| Error::domain(format!("cannot create {}: {e}", path.display())))?;
    write_region_csv(rows, std::io::BufWriter::new(f))
}

/// Reads a file produced by [`write_region_csv`].
pub fn read_region_csv<R: std::io::Read>(input: R) -> Result<Vec<RegionRow>> {
    let mut rd = csv::Reader::from_reader(input);
    let bad = |e: String| Error::domain(format!("malformed region CSV: {e}"));
    let headers = rd.headers().map_err(|e| bad(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["one_over_p", "mu", "kp", "inside"] {
        return Err(bad(format!("unexpected header {headers:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse::<f64>()
                .map_err(|e| bad(format!("{e} in {:?}", &rec[i])))
        };
        rows.push(RegionRow {
            one_over_p: num(0)?,
            mu: num(1)?,
            kp: num(2)?,
            inside: match &rec[3] {
                "1" => true,
                "0" => false,
                other => return Err(bad(format!("inside flag {other:?}"))),
            },
        });
    }
    Ok(rows)
}

/// A `PModulus` for each value of the set.
pub fn moduli(p: f64, ms: &ModulusSet) -> Result<Vec<PModulus>> {
    ms.values().iter().map(|&mu| PModulus::new(p, mu)).collect()
}
