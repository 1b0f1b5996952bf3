//! Bracketed root finding (Brent's method).

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Finds a root of `g` in `[lo, hi]` given `g(lo) * g(hi) <= 0`.
///
/// Inverse-quadratic / secant steps are taken only while they stay inside
/// the current bracket; otherwise the bracket is bisected. Returns an exact
/// zero when one is hit, else the bracket midpoint once its width is at
/// most `tol` (plus a few ulps).
pub fn bracketed_root<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: FnMut(f64) -> f64,
{
    try_bracketed_root(|x| Ok(g(x)), lo, hi, tol)
}

/// As [`bracketed_root`] for a fallible function.
pub fn try_bracketed_root<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    if !(lo <= hi) {
        return Err(Error::domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    if !(tol >= 0.0) {
        return Err(Error::domain(format!("invalid tolerance {tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = g(a)?;
    let mut fb = g(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            g_lo: fa,
            g_hi: fb,
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if fb == 0.0 {
            return Ok(b);
        }
        if xm.abs() <= tol1 {
            return Ok(0.5 * (b + c));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = g(b)?;
        if fb.is_nan() {
            return Err(Error::domain(format!("root function is NaN at {b}")));
        }
    }
    Err(Error::MaxIterations(MAX_ITER))
}
