//! Sine coefficients of the profiles `x -> sn_p(2 K_p x, mu)` on `(0, 1)`,
//! their lower and tail bounds, and the closed-form classical coefficients
//! `rho_j(q)` with the series `g(x)` built from them.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::pelliptic::PModulus;
use crate::qtheta::odd_lambert_sum;
use crate::quadrature::integrate_singular_vec;

/// Default number of coefficients in a [`FourierProfile`].
pub const DEFAULT_K_MAX: usize = 201;
/// Quadrature tolerance for the coefficients.
pub const TAU_TOL: f64 = 1e-11;

/// `4 sqrt(2) / pi^2`, the lower bound for `tau_1`.
pub fn step2_lower_bound() -> f64 {
    4.0 * SQRT_2 / (PI * PI)
}

/// `4 sqrt(2) K_p / (pi^2 k^2)`, the bound for `|tau_k|`.
pub fn tau_k_bound(kp: f64, k: usize) -> f64 {
    let kf = k as f64;
    step2_lower_bound() * kp / (kf * kf)
}

/// Sine coefficients `tau_1..tau_{k_max}` of one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierProfile {
    pub p: f64,
    pub mu: f64,
    pub kp: f64,
    /// `coefficients[k - 1] = tau_k`
    pub coefficients: Vec<f64>,
    pub k_max: usize,
    /// Bound on `sum |tau_k|` over odd `k > k_max`.
    pub tail_bound: f64,
    /// Largest quadrature error estimate among the coefficients.
    pub abs_error_estimate: f64,
}

impl FourierProfile {
    pub fn compute(p: f64, mu: f64, k_max: usize) -> Result<Self> {
        let m = PModulus::new(p, mu)?;
        Self::from_modulus(&m, k_max)
    }

    pub fn from_modulus(m: &PModulus, k_max: usize) -> Result<Self> {
        if k_max == 0 {
            return Err(Error::domain("k_max must be at least 1"));
        }
        let results = sine_coefficients(m, k_max)?;
        let first_odd_after = if k_max.is_multiple_of(2) {
            k_max + 1
        } else {
            k_max + 2
        };
        Ok(FourierProfile {
            p: m.p(),
            mu: m.mu(),
            kp: m.kp(),
            coefficients: results.iter().map(|r| r.0).collect(),
            k_max,
            tail_bound: tau_tail_bound(m.kp(), first_odd_after.max(3))?,
            abs_error_estimate: results.iter().map(|r| r.1).fold(0.0, f64::max),
        })
    }

    /// `tau_k`, `1 <= k <= k_max`.
    pub fn tau(&self, k: usize) -> f64 {
        self.coefficients[k - 1]
    }

    /// `sum_k tau_k^2`.
    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|t| t * t).sum()
    }
}

/// `sqrt(2) int_0^1 sn_p(2 K_p x) sin(k pi x) dx` for `k = 1..k_max`, with
/// error estimates. Each half of `(0, 1)` is integrated separately so that
/// the kink of the profile at `x = 1/2` sits on an endpoint.
fn sine_coefficients(m: &PModulus, k_max: usize) -> Result<Vec<(f64, f64)>> {
    let two_k = 2.0 * m.kp();
    let mut total = vec![(0.0, 0.0); k_max];
    for half in 0..2 {
        let offset = 0.5 * half as f64;
        let mut failure: Option<Error> = None;
        let res = integrate_singular_vec(
            |s, _, out: &mut [f64]| {
                let x = offset + 0.5 * s;
                let f = match m.snp(two_k * x) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                };
                fill_sines(x, f, out);
            },
            0.0,
            0.0,
            k_max,
            TAU_TOL,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        for (acc, r) in total.iter_mut().zip(res?) {
            acc.0 += SQRT_2 * 0.5 * r.value;
            acc.1 += SQRT_2 * 0.5 * r.abs_error_estimate;
        }
    }
    Ok(total)
}

/// `out[k-1] = f sin(k pi x)` by the Chebyshev recurrence.
fn fill_sines(x: f64, f: f64, out: &mut [f64]) {
    let (s1, c1) = (PI * x).sin_cos();
    let mut prev = 0.0;
    let mut cur = s1;
    for slot in out.iter_mut() {
        *slot = f * cur;
        let next = 2.0 * c1 * cur - prev;
        prev = cur;
        cur = next;
    }
}

/// `tau_k(p, mu)`.
pub fn tau_k(p: f64, mu: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let m = PModulus::new(p, mu)?;
    Ok(sine_coefficients(&m, k)?[k - 1].0)
}

/// `tau_1(p, mu) - 4 sqrt(2) / pi^2`.
pub fn tau1_margin(p: f64, mu: f64) -> Result<f64> {
    Ok(tau_k(p, mu, 1)? - step2_lower_bound())
}

/// `T(K) = 1 / (2 (K - 2))`, an upper bound for `sum_{odd k >= K} k^-2`.
pub fn odd_inverse_square_tail(k_start: usize) -> Result<f64> {
    if k_start < 3 || k_start.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "tail start must be odd and at least 3 (got {k_start})"
        )));
    }
    Ok(0.5 / (k_start as f64 - 2.0))
}

/// Bound on `sum_{odd k >= k_start} |tau_k|` for every modulus whose
/// `K_p` is at most `sup_kp`.
pub fn tau_tail_bound(sup_kp: f64, k_start: usize) -> Result<f64> {
    Ok(step2_lower_bound() * sup_kp * odd_inverse_square_tail(k_start)?)
}

/// `rho_j(q) = (1 - q) q^j / (1 - q^(2j+1))`.
pub fn rho_coeff(q: f64, j: u32) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1) (got {q})")));
    }
    let lq = q.ln();
    let jf = j as f64;
    Ok((1.0 - q) * (lq * jf).exp() / -(lq * (2.0 * jf + 1.0)).exp_m1())
}

/// `S(q) = sum_{j>=1} rho_j(q)`.
pub fn rho_sum(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1) (got {q})")));
    }
    Ok((1.0 - q) * odd_lambert_sum(q)?)
}

/// A truncated series value with a bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
}

/// `g(x) = sum_{j < terms} rho_j(q) sqrt(2) sin((2j+1) pi x)`.
pub fn g_eval(q: f64, x: f64, terms: u32) -> Result<SeriesValue> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1) (got {q})")));
    }
    let mut sum = 0.0;
    for j in 0..terms {
        let k = (2 * j + 1) as f64;
        sum += rho_coeff(q, j)? * (k * PI * x).sin();
    }
    Ok(SeriesValue {
        value: SQRT_2 * sum,
        tail_bound: SQRT_2 * q.powf(terms as f64) / (1.0 - q),
    })
}

/// `4 pi n sqrt(q) / (1 - q)`, the factor carrying `g(n x)` to the
/// classical eigenfunction of index `n` with nome `q`.
pub fn g_series_prefactor(q: f64, n: u32) -> f64 {
    4.0 * PI * n as f64 * q.sqrt() / (1.0 - q)
}

/// The classical eigenfunction `u_n(x)` reconstructed from `g(n x)`.
pub fn g_series_eigenfunction(q: f64, n: u32, x: f64, terms: u32) -> Result<SeriesValue> {
    let g = g_eval(q, n as f64 * x, terms)?;
    let f = g_series_prefactor(q, n);
    Ok(SeriesValue {
        value: f * g.value,
        tail_bound: f * g.tail_bound,
    })
}
