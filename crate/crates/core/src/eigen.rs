//! Eigenpairs of the one-dimensional p-Laplacian Schrodinger problem
//!
//! ```text
//! (sgn(phi') |phi'|^(p-1))' - (p-1) sgn(phi) |phi|^(2p-1) + lambda (p-1) sgn(phi) |phi|^(p-1) = 0,
//! phi(0) = phi(1) = 0,
//! ```
//!
//! given by `phi(x) = +-A sn_p(2 n K_p x, mu)` with
//! `A = 2^((p+1)/p) n mu K_p(mu)` and `lambda = 2^p n^p (1 + mu^p) K_p(mu)^p`.

use crate::error::{Error, Result};
use crate::pelliptic::PModulus;
use crate::sign::Sign;

/// Points closer than this to a critical point of `phi` are left out of the
/// residual checks where the second derivative may be singular.
pub const EXCLUSION_MARGIN: f64 = 1e-6;
/// Relative tolerance of the first-integral check, scaled by `max(1, lambda^2)`.
pub const FIRST_INTEGRAL_TOL: f64 = 1e-7;
/// Relative tolerance of the ODE residual check, scaled by `max(1, lambda^2)`.
pub const ODE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    modulus: PModulus,
    n: u32,
    sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub max_abs_residual: f64,
    pub grid_size: usize,
    pub excluded_points: usize,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs_residual <= tol
    }
}

/// `points` equally spaced interior points `i / (points + 1)` of `(0, 1)`.
pub fn interior_grid(points: usize) -> Vec<f64> {
    (1..=points)
        .map(|i| i as f64 / (points + 1) as f64)
        .collect()
}

/// Constructs the eigenpair with index `n`.
pub fn eigenpair(p: f64, mu: f64, n: u32, sign: Sign) -> Result<EigenPair> {
    EigenPair::new(p, mu, n, sign)
}

impl EigenPair {
    pub fn new(p: f64, mu: f64, n: u32, sign: Sign) -> Result<Self> {
        EigenPair::with_modulus(PModulus::new(p, mu)?, n, sign)
    }

    pub fn with_modulus(modulus: PModulus, n: u32, sign: Sign) -> Result<Self> {
        let mu = modulus.mu();
        if !(mu > 0.0) {
            return Err(Error::domain(format!("mu must lie in (0, 1) (got {mu})")));
        }
        if n == 0 {
            return Err(Error::domain("n must be at least 1"));
        }
        Ok(EigenPair { modulus, n, sign })
    }

    pub fn modulus(&self) -> &PModulus {
        &self.modulus
    }

    pub fn p(&self) -> f64 {
        self.modulus.p()
    }

    pub fn mu(&self) -> f64 {
        self.modulus.mu()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn kp(&self) -> f64 {
        self.modulus.kp()
    }

    /// `2 n K_p`, the argument scale of `sn_p`.
    pub fn frequency(&self) -> f64 {
        2.0 * self.n as f64 * self.kp()
    }

    /// `2^((p+1)/p) n mu K_p(mu)`.
    pub fn amplitude(&self) -> f64 {
        let p = self.p();
        2f64.powf((p + 1.0) / p) * self.n as f64 * self.mu() * self.kp()
    }

    /// `2^p n^p (1 + mu^p) K_p(mu)^p`.
    pub fn lambda(&self) -> f64 {
        let p = self.p();
        (2.0 * self.n as f64 * self.kp()).powf(p) * (1.0 + self.mu().powf(p))
    }

    /// `c = phi'(0)` (for the `+` sign), `amplitude * 2 n K_p`.
    pub fn c(&self) -> f64 {
        self.amplitude() * self.frequency()
    }

    /// Larger root `alpha` of `t^2 - 2 lambda t + 2 c^p`, equal to `2 (2 n K_p)^p`.
    pub fn alpha(&self) -> f64 {
        2.0 * self.frequency().powf(self.p())
    }

    /// Smaller root `beta = amplitude^p`.
    pub fn beta(&self) -> f64 {
        self.amplitude().powf(self.p())
    }

    /// `(lambda + d, lambda - d)` with `d = sqrt(lambda^2 - 2 c^p)`.
    pub fn alpha_beta_from_quadratic(&self) -> (f64, f64) {
        let l = self.lambda();
        let d = (l * l - 2.0 * self.c().powf(self.p())).max(0.0).sqrt();
        (l + d, l - d)
    }

    /// `phi(x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.sign.value() * self.amplitude() * self.modulus.snp(self.frequency() * x)?)
    }

    /// `phi'(x)`.
    pub fn deriv(&self, x: f64) -> Result<f64> {
        let b = self.frequency();
        Ok(self.sign.value() * self.amplitude() * b * self.modulus.snp_deriv(b * x)?)
    }

    /// `phi''(x)`.
    pub fn second_deriv(&self, x: f64) -> Result<f64> {
        let b = self.frequency();
        Ok(self.sign.value() * self.amplitude() * b * b * self.modulus.snp_second_deriv(b * x)?)
    }

    /// Interior zeros `k / n`, `k = 1..n-1`.
    pub fn interior_zeros(&self) -> Vec<f64> {
        (1..self.n).map(|k| k as f64 / self.n as f64).collect()
    }

    /// Sign changes of `phi` on the midpoints of a `samples`-cell grid of `(0, 1)`.
    pub fn sign_changes(&self, samples: usize) -> Result<usize> {
        let mut changes = 0;
        let mut last = 0.0f64;
        for i in 0..samples {
            let v = self.eval((i as f64 + 0.5) / samples as f64)?;
            if v != 0.0 {
                if last != 0.0 && v.signum() != last.signum() {
                    changes += 1;
                }
                last = v;
            }
        }
        Ok(changes)
    }

    /// Distance from `x` to the nearest critical point `(2j+1) / (2n)` of `phi`.
    fn distance_to_critical(&self, x: f64) -> f64 {
        let t = 2.0 * self.n as f64 * x;
        let nearest_odd = 2.0 * ((t - 1.0) / 2.0).round() + 1.0;
        (t - nearest_odd).abs() / (2.0 * self.n as f64)
    }

    fn residual_over<F>(&self, grid: &[f64], exclude: bool, mut r: F) -> Result<ResidualReport>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut max_abs = 0.0f64;
        let mut used = 0;
        let mut excluded = 0;
        for &x in grid {
            if exclude && self.distance_to_critical(x) < EXCLUSION_MARGIN {
                excluded += 1;
                continue;
            }
            let v = r(x)?;
            if !v.is_finite() {
                return Err(Error::SingularPoint(x));
            }
            max_abs = max_abs.max(v.abs());
            used += 1;
        }
        if used < 2 {
            return Err(Error::GridTooCoarse(format!(
                "{used} usable points out of {}",
                grid.len()
            )));
        }
        Ok(ResidualReport {
            max_abs_residual: max_abs,
            grid_size: used,
            excluded_points: excluded,
        })
    }

    /// `|phi'|^p - (alpha - |phi|^p)(beta - |phi|^p) / 2` over `grid`.
    pub fn first_integral_residual(&self, grid: &[f64]) -> Result<ResidualReport> {
        let (p, a, b) = (self.p(), self.alpha(), self.beta());
        self.residual_over(grid, true, |x| {
            let u = self.eval(x)?.abs().powf(p);
            let d = self.deriv(x)?.abs().powf(p);
            Ok(d - 0.5 * (a - u) * (b - u))
        })
    }

    /// Residual of the differential equation, with `(sgn(phi')|phi'|^(p-1))'`
    /// expanded as `(p-1) |phi'|^(p-2) phi''`.
    pub fn ode_residual(&self, grid: &[f64]) -> Result<ResidualReport> {
        let p = self.p();
        let lambda = self.lambda();
        self.residual_over(grid, p != 2.0, |x| {
            let phi = self.eval(x)?;
            let d = self.deriv(x)?;
            let dd = self.second_deriv(x)?;
            let lead = if p == 2.0 {
                dd
            } else {
                d.abs().powf(p - 2.0) * dd
            };
            let s = phi.signum();
            let a = phi.abs();
            Ok((p - 1.0) * (lead - s * a.powf(2.0 * p - 1.0) + lambda * s * a.powf(p - 1.0)))
        })
    }

    /// `FIRST_INTEGRAL_TOL * max(1, lambda^2)`.
    pub fn first_integral_tolerance(&self) -> f64 {
        FIRST_INTEGRAL_TOL * self.lambda().powi(2).max(1.0)
    }

    /// `ODE_TOL * max(1, lambda^2)`.
    pub fn ode_tolerance(&self) -> f64 {
        ODE_TOL * self.lambda().powi(2).max(1.0)
    }
}
