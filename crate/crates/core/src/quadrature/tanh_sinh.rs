//! Double-exponential quadrature on `[0, 1]` for integrands of the form
//! `f(s) * s^a * (1 - s)^b`.
//!
//! The interval is split at `s = 1/2`. On each half the algebraic endpoint
//! factor is removed exactly by a power substitution (`s = v^(1/(1+a)) / 2`
//! on the left, `1 - s = v^(1/(1+b)) / 2` on the right), and the resulting
//! bounded integrand over `v in [0, 1]` is integrated with the tanh-sinh
//! rule `v = (1 + tanh(pi/2 sinh t)) / 2`.
//!
//! A tolerance below the floating-point resolution of the integral cannot be
//! met, so the effective tolerance is `max(tol, ROUNDOFF * int |f|)`.
//!
//! Smooth parts always receive both `s` and `1 - s`, each computed without
//! cancellation, so factors such as `(1 - s^p)` stay accurate near `s = 1`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default absolute tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Smallest tolerance accepted by [`integrate_singular`].
pub const MIN_TOL: f64 = 1e-14;

/// Relative resolution floor, in units of `int |f|`.
pub const ROUNDOFF: f64 = 32.0 * f64::EPSILON;

const STEP0: f64 = 0.5;
const T_MAX: f64 = 4.5;
const MAX_LEVEL: usize = 10;
const MIN_ACCEPT_LEVEL: usize = 2;

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Difference between the returned value and the previous refinement
    /// level, made non-increasing across levels.
    pub abs_error_estimate: f64,
    pub nodes_used: usize,
}

/// An integrand `smooth(s, 1 - s) * s^a * (1 - s)^b` on `[0, 1]`.
pub struct SingularIntegrand<F> {
    smooth: F,
    left_exponent: f64,
    right_exponent: f64,
}

impl<F> SingularIntegrand<F>
where
    F: Fn(f64, f64) -> f64,
{
    /// Integrand without endpoint factors (`a = b = 0`).
    pub fn new(smooth: F) -> Self {
        SingularIntegrand {
            smooth,
            left_exponent: 0.0,
            right_exponent: 0.0,
        }
    }

    pub fn with_exponents(smooth: F, left_exponent: f64, right_exponent: f64) -> Result<Self> {
        check_exponent(left_exponent)?;
        check_exponent(right_exponent)?;
        Ok(SingularIntegrand {
            smooth,
            left_exponent,
            right_exponent,
        })
    }

    pub fn left_exponent(&self) -> f64 {
        self.left_exponent
    }

    pub fn right_exponent(&self) -> f64 {
        self.right_exponent
    }
}

/// Compensated summation.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

fn check_exponent(e: f64) -> Result<()> {
    if !(e > -1.0) || !e.is_finite() {
        return Err(Error::InvalidExponent(e));
    }
    Ok(())
}

/// Integrates `f` over `[0, 1]` to absolute tolerance `tol`.
pub fn integrate_singular<F>(f: &SingularIntegrand<F>, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> f64,
{
    let res = integrate_singular_vec(
        |s, c, out: &mut [f64]| out[0] = (f.smooth)(s, c),
        f.left_exponent,
        f.right_exponent,
        1,
        tol,
    )?;
    Ok(res[0])
}

/// Integrates `dim` integrands sharing the same endpoint exponents on one
/// node set. `smooth(s, 1 - s, out)` writes the smooth parts into `out`.
///
/// Every component must reach `tol`; the node count reported is shared.
pub fn integrate_singular_vec<F>(
    mut smooth: F,
    left_exponent: f64,
    right_exponent: f64,
    dim: usize,
    tol: f64,
) -> Result<Vec<QuadratureResult>>
where
    F: FnMut(f64, f64, &mut [f64]),
{
    check_exponent(left_exponent)?;
    check_exponent(right_exponent)?;
    if !(tol >= MIN_TOL) {
        return Err(Error::domain(format!(
            "quadrature tolerance {tol:e} below minimum {MIN_TOL:e}"
        )));
    }
    if dim == 0 {
        return Ok(Vec::new());
    }

    let alpha = 1.0 / (1.0 + left_exponent);
    let beta = 1.0 / (1.0 + right_exponent);
    let left_scale = alpha / 2f64.powf(1.0 + left_exponent);
    let right_scale = beta / 2f64.powf(1.0 + right_exponent);

    let table = table();
    let mut sums = vec![Neumaier::default(); dim];
    let mut abs_sums = vec![0.0; dim];
    let mut prev = vec![f64::NAN; dim];
    let mut est = vec![f64::INFINITY; dim];
    let mut buf = vec![0.0; dim];
    let mut nodes = 0usize;
    let mut h = STEP0;

    for (level, layer) in table.iter().enumerate() {
        if level > 0 {
            h *= 0.5;
        }
        for node in layer {
            // left half: s = v^alpha / 2
            let s = 0.5 * pow_unit(node.v, node.c, alpha);
            let cs = 1.0 - s;
            smooth(s, cs, &mut buf);
            let lw = node.w * left_scale * endpoint_factor(cs, right_exponent);
            for ((acc, abs), &val) in sums.iter_mut().zip(abs_sums.iter_mut()).zip(&buf) {
                check_finite(val, s)?;
                acc.add(lw * val);
                *abs += (lw * val).abs();
            }

            // right half: 1 - s = v^beta / 2
            let c = 0.5 * pow_unit(node.v, node.c, beta);
            let s = 1.0 - c;
            smooth(s, c, &mut buf);
            let rw = node.w * right_scale * endpoint_factor(s, left_exponent);
            for ((acc, abs), &val) in sums.iter_mut().zip(abs_sums.iter_mut()).zip(&buf) {
                check_finite(val, s)?;
                acc.add(rw * val);
                *abs += (rw * val).abs();
            }
        }
        nodes += 2 * layer.len();

        let mut done = level >= MIN_ACCEPT_LEVEL;
        for i in 0..dim {
            let value = h * sums[i].total();
            if level > 0 {
                est[i] = est[i].min((value - prev[i]).abs());
            }
            prev[i] = value;
            if !(est[i] <= tol.max(ROUNDOFF * h * abs_sums[i])) {
                done = false;
            }
        }
        if done {
            return Ok(prev
                .iter()
                .zip(&est)
                .map(|(&value, &e)| QuadratureResult {
                    value,
                    abs_error_estimate: e,
                    nodes_used: nodes,
                })
                .collect());
        }
    }

    let worst = est.iter().cloned().fold(0.0, f64::max);
    Err(Error::NonConvergence {
        estimate: worst,
        tol,
        nodes,
    })
}

/// Integrates `f(x, x - lo, hi - x) * (x - lo)^a * (hi - x)^b` over `[lo, hi]`.
pub fn integrate_interval<F>(
    f: F,
    lo: f64,
    hi: f64,
    left_exponent: f64,
    right_exponent: f64,
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(f64, f64, f64) -> f64,
{
    if !(hi > lo) {
        return Err(Error::domain(format!("empty interval [{lo}, {hi}]")));
    }
    let width = hi - lo;
    let jac = width.powf(1.0 + left_exponent + right_exponent);
    let inner = SingularIntegrand::with_exponents(
        |s: f64, c: f64| {
            let x = if s <= 0.5 {
                lo + width * s
            } else {
                hi - width * c
            };
            f(x, width * s, width * c)
        },
        left_exponent,
        right_exponent,
    )?;
    let r = integrate_singular(&inner, tol / jac.max(f64::MIN_POSITIVE))?;
    Ok(QuadratureResult {
        value: jac * r.value,
        abs_error_estimate: jac * r.abs_error_estimate,
        nodes_used: r.nodes_used,
    })
}

fn check_finite(val: f64, s: f64) -> Result<()> {
    if val.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "integrand is not finite at s = {s:e}"
        )))
    }
}

/// `x^e` for the smooth-side factor; `x` is at least 1/2 here.
fn endpoint_factor(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

/// `v^e` for `v in (0, 1)` given `v` and `1 - v`.
fn pow_unit(v: f64, c: f64, e: f64) -> f64 {
    if e == 1.0 {
        v
    } else if v > 0.5 {
        (e * (-c).ln_1p()).exp()
    } else {
        v.powf(e)
    }
}

struct Node {
    v: f64,
    c: f64,
    w: f64,
}

fn node(t: f64) -> Node {
    let u = 0.5 * PI * t.sinh();
    let v = 1.0 / (1.0 + (-2.0 * u).exp());
    let c = 1.0 / (1.0 + (2.0 * u).exp());
    Node {
        v,
        c,
        w: PI * t.cosh() * v * c,
    }
}

fn table() -> &'static [Vec<Node>] {
    static TABLE: OnceLock<Vec<Vec<Node>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut levels = Vec::with_capacity(MAX_LEVEL + 1);
        let n0 = (T_MAX / STEP0).floor() as i64;
        levels.push((-n0..=n0).map(|k| node(k as f64 * STEP0)).collect());
        let mut h = STEP0;
        for _ in 1..=MAX_LEVEL {
            h *= 0.5;
            let kmax = ((T_MAX / h - 1.0) / 2.0).floor() as i64;
            let layer = (-kmax - 1..=kmax)
                .map(|k| (2 * k + 1) as f64 * h)
                .filter(|t| t.abs() <= T_MAX)
                .map(node)
                .collect();
            levels.push(layer);
        }
        levels
    })
}
