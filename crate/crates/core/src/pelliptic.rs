//! The generalized complete integral `K_p(mu)`, the incomplete integral
//! `w_p(z)` and its inverse `sn_p(y, mu)` with first and second derivatives.
//!
//! ```text
//! w_p(z)   = int_0^z (1 - s^p)^(-1/p) (1 - mu^p s^p)^(-1/p) ds
//! K_p(mu)  = w_p(1)
//! sn_p     = w_p^(-1) on [0, K_p], extended oddly and 4 K_p-periodically,
//!            even about K_p
//! ```
//!
//! `sn_p` is evaluated by folding `y` into `[0, K_p]` and inverting `w_p`
//! with a bracketed root finder. On `[0, 1/2]` the root is sought in `z`;
//! past `1/2` it is sought through the complement `1 - z`, so that
//! `1 - sn_p` stays accurate near the quarter period.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_interval, integrate_singular, try_bracketed_root, SingularIntegrand, DEFAULT_TOL,
};

/// Quadrature tolerance used internally for `w_p` evaluations.
const W_TOL: f64 = 1e-13;
/// Root tolerance for the inversion of `w_p` (absolute, in `z` or in the
/// complement variable).
const ROOT_TOL: f64 = 1e-15;

/// Validated `(p, mu)` with `K_p(mu)` and two half-interval integrals
/// computed eagerly at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PModulus {
    p: f64,
    mu: f64,
    kp: f64,
    mu_p: f64,
    /// `1 - mu^p`
    delta: f64,
    /// `w_p(1/2)`
    head_half: f64,
    /// `K_p - w_p(1/2)`
    tail_half: f64,
}

/// `sn_p(y)` together with the number of whole periods `4 K_p` removed from `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnpValue {
    pub y: f64,
    pub value: f64,
    pub branch_period_index: i64,
}

/// `y` folded onto the monotone branch `[0, K_p]`.
#[derive(Debug, Clone, Copy)]
struct Folded {
    /// `-1` on `[2K, 4K)` (mod `4K`), else `+1`.
    sign: f64,
    /// True on `(K, 2K)` (mod `2K`), where `sn_p` decreases in magnitude.
    descending: bool,
    /// Folded argument in `[0, K]`.
    y: f64,
    /// `K - y`, computed without cancellation.
    to_quarter: f64,
    period: i64,
}

/// `sn_p` and its complement `1 - sn_p` on the monotone branch.
#[derive(Debug, Clone, Copy)]
struct Branch {
    s: f64,
    c: f64,
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::domain(format!("p must satisfy p > 1 (got {p})")));
    }
    Ok(())
}

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if !(0.0..1.0).contains(&mu) {
        return Err(Error::domain(format!("mu must lie in [0, 1) (got {mu})")));
    }
    Ok(())
}

/// `(1 - (1 - c)^p) / c`, with the limit `p` at `c = 0`.
fn one_minus_pow_ratio(c: f64, p: f64) -> f64 {
    if c.abs() < 1e-20 {
        // avoids subnormal intermediates
        p * (1.0 - 0.5 * (p - 1.0) * c)
    } else {
        -(p * (-c).ln_1p()).exp_m1() / c
    }
}

/// `ln s` given `s` and `1 - s`.
fn ln_unit(s: f64, c: f64) -> f64 {
    if c < 0.5 {
        (-c).ln_1p()
    } else {
        s.ln()
    }
}

impl PModulus {
    pub fn new(p: f64, mu: f64) -> Result<Self> {
        check_p(p)?;
        check_mu(mu)?;
        let mut m = PModulus::bare(p, mu);
        m.head_half = m.head(0.5)?;
        m.tail_half = m.tail(0.5)?;
        m.kp = m.head_half + m.tail_half;
        Ok(m)
    }

    fn bare(p: f64, mu: f64) -> Self {
        let (mu_p, delta) = if mu == 0.0 {
            (0.0, 1.0)
        } else {
            let e = p * mu.ln();
            (e.exp(), -e.exp_m1())
        };
        PModulus {
            p,
            mu,
            kp: 0.0,
            mu_p,
            delta,
            head_half: 0.0,
            tail_half: 0.0,
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `K_p(mu)`.
    pub fn kp(&self) -> f64 {
        self.kp
    }

    /// Period of `sn_p`.
    pub fn period(&self) -> f64 {
        4.0 * self.kp
    }

    /// `1 - mu^p t^p` for `t` given with its complement.
    fn one_minus_mu_pow(&self, t: f64, ct: f64) -> f64 {
        if self.mu == 0.0 || t == 0.0 {
            return 1.0;
        }
        -(self.p * (self.mu.ln() + ln_unit(t, ct))).exp_m1()
    }

    /// `1 - t^p` for `t` given with its complement.
    fn one_minus_pow(&self, t: f64, ct: f64) -> f64 {
        if ct < 0.5 {
            ct * one_minus_pow_ratio(ct, self.p)
        } else {
            -(self.p * t.ln()).exp_m1()
        }
    }

    fn complete_integral(&self, tol: f64) -> Result<(f64, f64)> {
        let (h, he) = self.head_with_error(0.5, 0.5 * tol)?;
        let (t, te) = self.tail_kernel_with_error(0.5, 0.5 * tol)?;
        let scale = 0.5f64.powf(1.0 - 1.0 / self.p);
        Ok((h + scale * t, he + scale * te))
    }

    /// `w_p(z)` for `z in [0, 1/2]`, via `s = z r`.
    fn head(&self, z: f64) -> Result<f64> {
        Ok(self.head_with_error(z, W_TOL)?.0)
    }

    fn head_with_error(&self, z: f64, tol: f64) -> Result<(f64, f64)> {
        if z == 0.0 {
            return Ok((0.0, 0.0));
        }
        let inv_p = 1.0 / self.p;
        let f = SingularIntegrand::new(|r, _| {
            let t = z * r;
            let ct = 1.0 - t;
            (self.one_minus_pow(t, ct) * self.one_minus_mu_pow(t, ct)).powf(-inv_p)
        });
        let r = integrate_singular(&f, tol / z)?;
        Ok((z * r.value, z * r.abs_error_estimate))
    }

    /// `K_p - w_p(1 - c)` for `c in [0, 1/2]`, via `s = 1 - c w`.
    fn tail(&self, c: f64) -> Result<f64> {
        if c == 0.0 {
            return Ok(0.0);
        }
        Ok(c.powf(1.0 - 1.0 / self.p) * self.tail_kernel(c)?)
    }

    /// `tail(c) / c^(1 - 1/p)`.
    fn tail_kernel(&self, c: f64) -> Result<f64> {
        Ok(self.tail_kernel_with_error(c, W_TOL)?.0)
    }

    /// `int_0^1 w^(-1/p) ((1 - (1-cw)^p) / (cw))^(-1/p) (1 - mu^p (1-cw)^p)^(-1/p) dw`.
    ///
    /// The last factor is written as `(delta + mu^p cw ratio)^(-1/p)` with
    /// `delta = 1 - mu^p`. When `delta` is small it varies on the scale
    /// `w0 = delta / (mu^p c)`; the range is then split at `w0`, and
    /// `[w0, 1]` is integrated in `ln w`.
    fn tail_kernel_with_error(&self, c: f64, tol: f64) -> Result<(f64, f64)> {
        let p = self.p;
        let inv_p = 1.0 / p;
        let (mu_p, delta) = (self.mu_p, self.delta);
        let smooth = |w: f64| {
            let cw = c * w;
            let r = one_minus_pow_ratio(cw, p);
            r.powf(-inv_p) * (delta + mu_p * cw * r).powf(-inv_p)
        };
        let w0 = if mu_p > 0.0 {
            delta / (mu_p * c)
        } else {
            f64::INFINITY
        };
        if w0 >= 0.25 {
            let f = SingularIntegrand::with_exponents(|w, _| smooth(w), -inv_p, 0.0)?;
            let r = integrate_singular(&f, tol)?;
            return Ok((r.value, r.abs_error_estimate));
        }
        let near = integrate_interval(|w, _, _| smooth(w), 0.0, w0, -inv_p, 0.0, 0.5 * tol)?;
        let log_w0 = w0.ln();
        let far = integrate_singular(
            &SingularIntegrand::new(|u, _| {
                let w = (log_w0 * (1.0 - u)).exp();
                -log_w0 * w.powf(1.0 - inv_p) * smooth(w)
            }),
            0.5 * tol,
        )?;
        Ok((
            near.value + far.value,
            near.abs_error_estimate + far.abs_error_estimate,
        ))
    }

    /// `w_p(z)` for `z in [0, 1]`.
    pub fn wp(&self, z: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::domain(format!("z must lie in [0, 1] (got {z})")));
        }
        if z <= 0.5 {
            self.head(z)
        } else {
            Ok(self.kp - self.tail(1.0 - z)?)
        }
    }

    fn fold(&self, y: f64) -> Result<Folded> {
        if !y.is_finite() {
            return Err(Error::domain(format!("argument must be finite (got {y})")));
        }
        let k = self.kp;
        let period = 4.0 * k;
        let mut r = y.rem_euclid(period);
        let index = (y / period).floor() as i64;
        let mut sign = 1.0;
        if r >= 2.0 * k {
            r -= 2.0 * k;
            sign = -1.0;
        }
        let (descending, y_red, to_quarter) = if r <= k {
            (false, r, k - r)
        } else {
            let d = r - k;
            (true, k - d, d)
        };
        Ok(Folded {
            sign,
            descending,
            y: y_red.max(0.0),
            to_quarter: to_quarter.max(0.0),
            period: index,
        })
    }

    fn invert(&self, f: &Folded) -> Result<Branch> {
        if f.y <= self.head_half {
            let tol = ROOT_TOL * f.y.min(1.0);
            let s = try_bracketed_root(|z| Ok(self.head(z)? - f.y), 0.0, 0.5, tol)?;
            return Ok(Branch { s, c: 1.0 - s });
        }
        // Solve tail(c) = K - y in v = c^((p-1)/p), in which tail is nearly linear.
        let expo = self.p / (self.p - 1.0);
        let v_half = 0.5f64.powf(1.0 / expo);
        if self.tail_half <= f.to_quarter {
            return Ok(Branch { s: 0.5, c: 0.5 });
        }
        let v = try_bracketed_root(
            |v| {
                if v == 0.0 {
                    return Ok(-f.to_quarter);
                }
                let c = v.powf(expo).min(0.5);
                Ok(v * self.tail_kernel(c)? - f.to_quarter)
            },
            0.0,
            v_half,
            ROOT_TOL,
        )?;
        let c = v.powf(expo).min(0.5);
        Ok(Branch { s: 1.0 - c, c })
    }

    /// `sn_p(y, mu)`.
    pub fn snp(&self, y: f64) -> Result<f64> {
        Ok(self.snp_value(y)?.value)
    }

    pub fn snp_value(&self, y: f64) -> Result<SnpValue> {
        let f = self.fold(y)?;
        let b = self.invert(&f)?;
        Ok(SnpValue {
            y,
            value: f.sign * b.s,
            branch_period_index: f.period,
        })
    }

    /// `1 - |sn_p(y)|`, accurate near the quarter periods.
    pub fn snp_complement(&self, y: f64) -> Result<f64> {
        let f = self.fold(y)?;
        Ok(self.invert(&f)?.c)
    }

    /// `d/dy sn_p(y) = +-(1 - s^p)^(1/p) (1 - mu^p s^p)^(1/p)`, `s = |sn_p(y)|`.
    pub fn snp_deriv(&self, y: f64) -> Result<f64> {
        let f = self.fold(y)?;
        let b = self.invert(&f)?;
        let mag =
            (self.one_minus_pow(b.s, b.c) * self.one_minus_mu_pow(b.s, b.c)).powf(1.0 / self.p);
        let dir = if f.descending { -1.0 } else { 1.0 };
        Ok(f.sign * dir * mag)
    }

    /// `d^2/dy^2 sn_p(y)`.
    ///
    /// On the first quarter period this is
    /// `-s^(p-1) (1-s^p)^(2/p-1) (1-mu^p s^p)^(2/p-1) (1 + mu^p - 2 mu^p s^p)`,
    /// which is negative on `(0, K_p)`; it is extended as an odd function of
    /// `sn_p`, consistent with the symmetries of `sn_p`. For `p > 2` it is
    /// unbounded at odd multiples of `K_p`.
    pub fn snp_second_deriv(&self, y: f64) -> Result<f64> {
        let f = self.fold(y)?;
        let b = self.invert(&f)?;
        let p = self.p;
        if p > 2.0 && b.c == 0.0 {
            return Err(Error::SingularPoint(y));
        }
        let a = self.one_minus_pow(b.s, b.c);
        let m = self.one_minus_mu_pow(b.s, b.c);
        let mu_p = self.mu.powf(p);
        // 1 + mu^p - 2 mu^p s^p, split to avoid cancellation
        let bracket = m + mu_p * a;
        let expo = 2.0 / p - 1.0;
        let mag = b.s.powf(p - 1.0) * a.powf(expo) * m.powf(expo) * bracket;
        if !mag.is_finite() {
            return Err(Error::SingularPoint(y));
        }
        Ok(-f.sign * mag)
    }

    /// `(sn_p(y)/y - 1/K_p, 1 - sn_p(y)/y)` for `y in (0, K_p)`.
    pub fn jordan_margins(&self, y: f64) -> Result<(f64, f64)> {
        if !(y > 0.0 && y < self.kp) {
            return Err(Error::domain(format!(
                "y must lie in (0, K_p) = (0, {}) (got {y})",
                self.kp
            )));
        }
        let ratio = self.snp(y)? / y;
        Ok((ratio - 1.0 / self.kp, 1.0 - ratio))
    }
}

/// `K_p(mu)`.
pub fn kp(p: f64, mu: f64) -> Result<f64> {
    check_p(p)?;
    check_mu(mu)?;
    let m = PModulus::bare(p, mu);
    Ok(m.complete_integral(DEFAULT_TOL)?.0)
}

/// `K_p(mu)` together with its quadrature error estimate.
pub fn kp_with_error(p: f64, mu: f64) -> Result<(f64, f64)> {
    check_p(p)?;
    check_mu(mu)?;
    let m = PModulus::bare(p, mu);
    m.complete_integral(DEFAULT_TOL)
}

/// `K_p(0) = B(1/p, 1 - 1/p) / p = pi / (p sin(pi/p))`.
pub fn kp_at_zero(p: f64) -> f64 {
    PI / (p * (PI / p).sin())
}

/// `K_p(mu)` as `B(1/p, 1/p') / p * 2F1(1/p, 1/p; 1; mu^p)`, summing at most
/// `terms` terms of the Gauss series.
pub fn kp_via_2f1(p: f64, mu: f64, terms: usize) -> Result<f64> {
    check_p(p)?;
    check_mu(mu)?;
    let z = mu.powf(p);
    if z > 0.9 {
        return Err(Error::SlowConvergence(format!(
            "mu^p = {z} exceeds 0.9 for the 2F1 series"
        )));
    }
    let a = 1.0 / p;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0usize;
    while k < terms {
        let kf = k as f64;
        term *= (a + kf) * (a + kf) / ((1.0 + kf) * (1.0 + kf)) * z;
        sum += term;
        k += 1;
        if term <= f64::EPSILON * 0.01 * sum {
            return Ok(kp_at_zero(p) * sum);
        }
    }
    // successive-term ratio is below z, so the tail is at most term z / (1 - z)
    let tail = term * z / (1.0 - z);
    if tail > 1e-12 * sum {
        return Err(Error::SlowConvergence(format!(
            "{terms} terms leave a tail of {tail:e}"
        )));
    }
    Ok(kp_at_zero(p) * sum)
}

/// `w_p(z)` for `z in [0, 1]`.
pub fn wp(p: f64, mu: f64, z: f64) -> Result<f64> {
    PModulus::new(p, mu)?.wp(z)
}

/// `sn_p(y, mu)`.
pub fn snp(p: f64, mu: f64, y: f64) -> Result<f64> {
    PModulus::new(p, mu)?.snp(y)
}

/// `d/dy sn_p(y, mu)`.
pub fn snp_deriv(p: f64, mu: f64, y: f64) -> Result<f64> {
    PModulus::new(p, mu)?.snp_deriv(y)
}

/// `d^2/dy^2 sn_p(y, mu)`.
pub fn snp_second_deriv(p: f64, mu: f64, y: f64) -> Result<f64> {
    PModulus::new(p, mu)?.snp_second_deriv(y)
}

/// Margins of the bounds `1/K_p <= sn_p(y)/y <= 1` on `(0, K_p)`.
pub fn jordan_margins(p: f64, mu: f64, y: f64) -> Result<(f64, f64)> {
    PModulus::new(p, mu)?.jordan_margins(y)
}
