//! Classical elliptic machinery and q-series: the AGM Jacobi `sn`, theta
//! constants, the nome/modulus maps, Lambert series, the q-digamma function
//! and the sharp threshold `q0` with its modulus `mu0`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quadrature::{bracketed_root, try_bracketed_root};
use crate::sign::Sign;

/// Largest base accepted by the Lambert and q-digamma series.
pub const SERIES_BASE_MAX: f64 = 0.995;
/// Value of the sharp nome quoted to six digits.
pub const Q0_APPROX: f64 = 0.768062;

const SERIES_REL_EPS: f64 = 1e-17;
const MAX_SERIES_TERMS: usize = 100_000;
/// `e^(-pi)`, the self-dual nome where `k = k' = 1/sqrt(2)`.
fn self_dual_nome() -> f64 {
    (-PI).exp()
}

/// Nome `q` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Nome(f64);

impl Nome {
    pub fn new(q: f64) -> Result<Self> {
        check_nome(q)?;
        Ok(Nome(q))
    }

    pub fn q(self) -> f64 {
        self.0
    }

    /// The nome of the complementary modulus, `exp(pi^2 / ln q)`.
    pub fn complementary(self) -> Nome {
        if self.0 == 0.0 {
            Nome(1.0 - f64::EPSILON / 2.0)
        } else {
            Nome((PI * PI / self.0.ln()).exp())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaConstants {
    pub q: f64,
    /// `theta_2(0, q) = 2 sum_{n>=0} q^((n+1/2)^2)`
    pub theta2: f64,
    /// `theta_3(0, q) = 1 + 2 sum_{n>=1} q^(n^2)`
    pub theta3: f64,
    pub terms_used: usize,
}

fn check_nome(q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::domain(format!("nome must lie in [0, 1) (got {q})")));
    }
    Ok(())
}

fn check_series_base(x: f64, what: &str) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!(
            "{what} must lie in (0, 1) (got {x})"
        )));
    }
    if x > SERIES_BASE_MAX {
        return Err(Error::SlowConvergence(format!(
            "{what} = {x} exceeds {SERIES_BASE_MAX}"
        )));
    }
    Ok(())
}

/// Arithmetic-geometric mean of `a` and `b`.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 2.0 * f64::EPSILON * a {
            break;
        }
        let m = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = m;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind with modulus `mu`.
pub fn agm_complete_k(mu: f64) -> f64 {
    PI / (2.0 * agm(1.0, ((1.0 - mu) * (1.0 + mu)).sqrt()))
}

/// Jacobi `sn(y, mu)` by the descending Landen transformation.
pub fn agm_jacobi_sn(y: f64, mu: f64) -> f64 {
    if mu == 0.0 {
        return y.sin();
    }
    let mut a = vec![1.0];
    let mut c = vec![mu];
    let mut b = ((1.0 - mu) * (1.0 + mu)).sqrt();
    while c.last().unwrap().abs() > f64::EPSILON && a.len() < 64 {
        let an = *a.last().unwrap();
        let next_a = 0.5 * (an + b);
        let next_c = 0.5 * (an - b);
        b = (an * b).sqrt();
        a.push(next_a);
        c.push(next_c);
    }
    let n = a.len() - 1;
    let mut phi = 2f64.powi(n as i32) * a[n] * y;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    phi.sin()
}

/// `theta_2(0, q)` and `theta_3(0, q)`.
pub fn theta_constants(q: f64) -> Result<ThetaConstants> {
    check_nome(q)?;
    if q == 0.0 {
        return Ok(ThetaConstants {
            q,
            theta2: 0.0,
            theta3: 1.0,
            terms_used: 0,
        });
    }
    let lq = q.ln();
    // theta2 = 2 q^(1/4) sum_{n>=0} q^(n(n+1))
    let mut s2 = 0.0;
    let mut s3 = 0.0;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let t2 = (lq * nf * (nf + 1.0)).exp();
        let t3 = if n == 0 { 0.0 } else { (lq * nf * nf).exp() };
        s2 += t2;
        s3 += t3;
        n += 1;
        if (n > 1 && t2 < 1e-16 * s2 && t3 < 1e-16 * (0.5 + s3)) || n > MAX_SERIES_TERMS {
            break;
        }
    }
    Ok(ThetaConstants {
        q,
        theta2: 2.0 * (0.25 * lq).exp() * s2,
        theta3: 1.0 + 2.0 * s3,
        terms_used: n,
    })
}

/// `ln(theta_2^2 / theta_3^2)` for `ln q = t`, accurate for very small `q`.
fn ln_modulus_direct(t: f64) -> f64 {
    let mut s2 = 0.0;
    let mut s3 = 0.0;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        let t2 = (t * nf * (nf + 1.0)).exp();
        let t3 = if n == 0 { 0.0 } else { (t * nf * nf).exp() };
        s2 += t2;
        s3 += t3;
        if n > 0 && t2 < 1e-17 * s2 && t3 < 1e-17 {
            break;
        }
    }
    2.0 * (2f64.ln() + 0.25 * t + s2.ln()) - 2.0 * (2.0 * s3).ln_1p()
}

/// `k = theta_2^2(0,q) / theta_3^2(0,q)`.
pub fn modulus_from_nome(q: f64) -> Result<f64> {
    check_nome(q)?;
    if q == 0.0 {
        return Ok(0.0);
    }
    if q <= self_dual_nome() {
        let th = theta_constants(q)?;
        Ok((th.theta2 / th.theta3).powi(2))
    } else {
        let kc = ln_modulus_direct(PI * PI / q.ln()).exp();
        Ok(((1.0 - kc) * (1.0 + kc)).sqrt())
    }
}

/// `k' = sqrt(1 - k^2)` for the nome `q`, accurate when `k` is close to 1.
pub fn complementary_modulus_from_nome(q: f64) -> Result<f64> {
    check_nome(q)?;
    if q == 0.0 {
        return Ok(1.0);
    }
    if q <= self_dual_nome() {
        let k = modulus_from_nome(q)?;
        Ok(((1.0 - k) * (1.0 + k)).sqrt())
    } else {
        Ok(ln_modulus_direct(PI * PI / q.ln()).exp())
    }
}

/// `1 - k(q)`, accurate when `k` is close to 1.
pub fn modulus_complement_from_nome(q: f64) -> Result<f64> {
    let k = modulus_from_nome(q)?;
    let kc = complementary_modulus_from_nome(q)?;
    Ok(kc * kc / (1.0 + k))
}

/// `ln q` of the nome with modulus `k <= 1/sqrt(2)`.
fn ln_nome_small_modulus(k: f64) -> Result<f64> {
    let target = k.ln();
    bracketed_root(|t| ln_modulus_direct(t) - target, -1600.0, -PI, 1e-15)
}

/// The nome `q` with `modulus_from_nome(q) = mu`.
pub fn nome_from_modulus(mu: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&mu) {
        return Err(Error::domain(format!(
            "modulus must lie in [0, 1) (got {mu})"
        )));
    }
    nome_from_moduli(mu, ((1.0 - mu) * (1.0 + mu)).sqrt())
}

/// The nome for a modulus given together with its complement `k'`.
pub fn nome_from_moduli(mu: f64, mu_c: f64) -> Result<f64> {
    if mu == 0.0 {
        return Ok(0.0);
    }
    if mu <= FRAC_1_SQRT_2 {
        Ok(ln_nome_small_modulus(mu)?.exp())
    } else {
        if !(mu_c > 0.0) {
            return Err(Error::domain("complementary modulus must be positive"));
        }
        let t_c = ln_nome_small_modulus(mu_c)?;
        Ok((PI * PI / t_c).exp())
    }
}

/// The nome `q` for which `1 - modulus_from_nome(q) = one_minus_mu`.
pub fn nome_from_modulus_complement(one_minus_mu: f64) -> Result<f64> {
    if !(one_minus_mu > 0.0 && one_minus_mu <= 1.0) {
        return Err(Error::domain(format!(
            "1 - mu must lie in (0, 1] (got {one_minus_mu})"
        )));
    }
    let mu = 1.0 - one_minus_mu;
    let mu_c = (one_minus_mu * (2.0 - one_minus_mu)).sqrt();
    nome_from_moduli(mu, mu_c)
}

/// `L(beta) = sum_{n>=1} beta^n / (1 - beta^n)`.
pub fn lambert_l(beta: f64) -> Result<f64> {
    check_series_base(beta, "beta")?;
    let lb = beta.ln();
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let x = lb * n as f64;
        let term = x.exp() / -x.exp_m1();
        sum += term;
        if term < SERIES_REL_EPS * (1.0 + sum) {
            return Ok(sum);
        }
    }
    Err(Error::SlowConvergence(format!("Lambert series at {beta}")))
}

/// `psi_q(x) = -ln(1-q) + ln q sum_{n>=1} q^(nx) / (1 - q^n)`.
pub fn q_digamma(q: f64, x: f64) -> Result<f64> {
    check_series_base(q, "q")?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be positive (got {x})")));
    }
    let lq = q.ln();
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let nf = n as f64;
        let term = (lq * nf * x).exp() / -(lq * nf).exp_m1();
        sum += term;
        if term < SERIES_REL_EPS * (1.0 + sum) {
            return Ok(-(-q).ln_1p() + lq * sum);
        }
    }
    Err(Error::SlowConvergence(format!(
        "q-digamma series at q = {q}"
    )))
}

/// `psi_q(x)` from the logarithmic derivative of the product form of the
/// q-gamma function: `-ln(1-q) + ln q sum_{n>=0} q^(n+x) / (1 - q^(n+x))`.
pub fn q_digamma_product(q: f64, x: f64) -> Result<f64> {
    check_series_base(q, "q")?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be positive (got {x})")));
    }
    let lq = q.ln();
    let mut sum = 0.0;
    for n in 0..MAX_SERIES_TERMS {
        let e = lq * (n as f64 + x);
        let term = e.exp() / -e.exp_m1();
        sum += term;
        if term < SERIES_REL_EPS * (1.0 + sum) {
            return Ok(-(-q).ln_1p() + lq * sum);
        }
    }
    Err(Error::SlowConvergence(format!(
        "q-digamma product at q = {q}"
    )))
}

/// `L(beta) = (psi_beta(1) + ln(1 - beta)) / ln beta`.
pub fn lambert_via_digamma(beta: f64) -> Result<f64> {
    let psi = q_digamma(beta, 1.0)?;
    Ok((psi + (-beta).ln_1p()) / beta.ln())
}

fn odd_lambert_direct(q: f64) -> f64 {
    let lq = q.ln();
    let mut sum = 0.0;
    for n in 1..=MAX_SERIES_TERMS {
        let nf = n as f64;
        let term = (lq * nf).exp() / -(lq * (2.0 * nf + 1.0)).exp_m1();
        sum += term;
        if term < SERIES_REL_EPS * (1.0 + sum) {
            break;
        }
    }
    sum
}

/// `(L(sqrt q) - 2 L(q) + L(q^2)) / sqrt q`.
fn lambert_combination(q: f64) -> Result<f64> {
    let r = q.sqrt();
    Ok((lambert_l(r)? - 2.0 * lambert_l(q)? + lambert_l(q * q)?) / r)
}

/// `sum_{n>=1} q^n / (1 - q^(2n+1))`, checked against
/// `(L(sqrt q) - 2 L(q) + L(q^2)) / sqrt q - 1/(1-q)`.
pub fn odd_lambert_sum(q: f64) -> Result<f64> {
    check_series_base(q.sqrt(), "sqrt(q)")?;
    let direct = odd_lambert_direct(q);
    let via = lambert_combination(q)? - 1.0 / (1.0 - q);
    let difference = (direct - via).abs();
    if difference > 1e-9 * direct.max(1.0) {
        return Err(Error::IdentityMismatch {
            what: format!("odd Lambert sum at q = {q}"),
            difference,
        });
    }
    Ok(direct)
}

/// `F(q) = (L(sqrt q) - 2 L(q) + L(q^2)) / sqrt q - 2 / (1 - q)`; its zero is `q0`.
pub fn sharp_equation(q: f64) -> Result<f64> {
    check_series_base(q.sqrt(), "sqrt(q)")?;
    Ok(lambert_combination(q)? - 2.0 / (1.0 - q))
}

/// Zero of [`sharp_equation`], searched in `(0.5, 0.95)` and then once in
/// `(0.01, 0.99)`.
pub fn solve_q0(tol: f64) -> Result<f64> {
    if !(tol >= 1e-12) {
        return Err(Error::domain(format!(
            "tolerance must be >= 1e-12 (got {tol})"
        )));
    }
    match try_bracketed_root(sharp_equation, 0.5, 0.95, tol) {
        Err(Error::NoSignChange { .. }) => try_bracketed_root(sharp_equation, 0.01, 0.99, tol),
        r => r,
    }
}

struct SharpModulus {
    q0: f64,
    mu0: f64,
    complement: f64,
}

fn sharp_modulus() -> Result<&'static SharpModulus> {
    static CELL: OnceLock<std::result::Result<SharpModulus, Error>> = OnceLock::new();
    CELL.get_or_init(|| {
        let q0 = solve_q0(1e-12)?;
        Ok(SharpModulus {
            q0,
            mu0: modulus_from_nome(q0)?,
            complement: modulus_complement_from_nome(q0)?,
        })
    })
    .as_ref()
    .map_err(Clone::clone)
}

/// `q0` at full tolerance (cached).
pub fn q0() -> Result<f64> {
    Ok(sharp_modulus()?.q0)
}

/// `mu0 = theta_2^2(0, q0) / theta_3^2(0, q0)` (cached).
pub fn mu0() -> Result<f64> {
    Ok(sharp_modulus()?.mu0)
}

/// `1 - mu0`, which is below the spacing of doubles near 1.
pub fn mu0_complement() -> Result<f64> {
    Ok(sharp_modulus()?.complement)
}

/// Fraenkel's parameter `s = +-4 pi sqrt(q) / (1 - q)`.
pub fn fraenkel_s(q: f64, sign: Sign) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("q must lie in (0, 1) (got {q})")));
    }
    Ok(sign.value() * 4.0 * PI * q.sqrt() / (1.0 - q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn agm_k_values() {
        assert_abs_diff_eq!(agm_complete_k(0.0), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(agm_complete_k(0.5), 1.685_750_354_812_596, epsilon = 1e-14);
    }

    #[test]
    fn sn_degenerate_and_quarter_period() {
        for &y in &[0.3, 1.0, 2.5] {
            assert_abs_diff_eq!(agm_jacobi_sn(y, 0.0), y.sin(), epsilon = 1e-12);
        }
        for &mu in &[0.1, 0.5, 0.9, 0.99] {
            assert_abs_diff_eq!(agm_jacobi_sn(agm_complete_k(mu), mu), 1.0, epsilon = 1e-10);
        }
        // sn(y, k) ~ tanh(y) as k -> 1
        assert_abs_diff_eq!(
            agm_jacobi_sn(0.8, 1.0 - 1e-12),
            0.8f64.tanh(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn sn_pythagorean_derivative() {
        // (sn')^2 = (1 - sn^2)(1 - k^2 sn^2)
        let (k, y, h) = (0.7, 0.9, 1e-5);
        let s = agm_jacobi_sn(y, k);
        let d = (agm_jacobi_sn(y + h, k) - agm_jacobi_sn(y - h, k)) / (2.0 * h);
        assert_abs_diff_eq!(d * d, (1.0 - s * s) * (1.0 - k * k * s * s), epsilon = 1e-9);
    }

    #[test]
    fn theta_values() {
        let t = theta_constants(0.0).unwrap();
        assert_eq!((t.theta2, t.theta3), (0.0, 1.0));
        let t = theta_constants(0.1).unwrap();
        assert_abs_diff_eq!(t.theta3, 1.200_200_002, epsilon = 1e-12);
        assert!(t.theta2 > 0.0 && t.terms_used > 0);
        assert!(matches!(theta_constants(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn jacobi_identity_on_thetas() {
        // theta_3^4 = theta_2^4 + theta_4^4, with theta_4(q) = theta_3(-q)
        for &q in &[0.01, 0.1, 0.3] {
            let t = theta_constants(q).unwrap();
            let mut t4 = 1.0;
            for n in 1..50 {
                let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
                t4 += 2.0 * sgn * q.powi(n * n);
            }
            assert_relative_eq!(
                t.theta3.powi(4),
                t.theta2.powi(4) + t4.powi(4),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn modulus_map_basics() {
        assert_eq!(modulus_from_nome(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            modulus_from_nome((-PI).exp()).unwrap(),
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        let mut last = -1.0;
        for i in 0..50 {
            let k = modulus_from_nome(0.6 * i as f64 / 50.0).unwrap();
            assert!(k > last);
            last = k;
        }
    }

    #[test]
    fn both_branches_agree_near_self_dual_point() {
        let q = (-PI).exp() * 1.001;
        let th = theta_constants(q).unwrap();
        assert_abs_diff_eq!(
            modulus_from_nome(q).unwrap(),
            (th.theta2 / th.theta3).powi(2),
            epsilon = 1e-14
        );
    }

    #[test]
    fn nome_matches_complete_integral_ratio() {
        for &mu in &[0.01f64, 0.3, 0.7, 0.9, 0.99] {
            let kc = ((1.0 - mu) * (1.0 + mu)).sqrt();
            let q = (-PI * agm_complete_k(kc) / agm_complete_k(mu)).exp();
            assert_relative_eq!(nome_from_modulus(mu).unwrap(), q, max_relative = 1e-12);
        }
    }

    #[test]
    fn nome_round_trips() {
        assert_eq!(nome_from_modulus(0.0).unwrap(), 0.0);
        for &q in &[1e-9, 1e-3, 0.1, 0.3, 0.5, 0.6] {
            let mu = modulus_from_nome(q).unwrap();
            assert_abs_diff_eq!(nome_from_modulus(mu).unwrap(), q, epsilon = 1e-10);
        }
        for &mu in &[1e-300, 1e-8, 0.2, 0.9999] {
            let q = nome_from_modulus(mu).unwrap();
            assert_relative_eq!(modulus_from_nome(q).unwrap(), mu, max_relative = 1e-12);
        }
        assert!(matches!(nome_from_modulus(1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn nome_at_the_firstcond_crossing() {
        // K(mu) = 8/(pi^2 - 8) at mu = 0.998455, i.e. mu^2 = 0.996912
        let q = nome_from_modulus(0.998_454_919_040_821).unwrap();
        assert_abs_diff_eq!(q, 0.315_323, epsilon = 1e-5);
        let q_of_square = nome_from_modulus(0.996_912).unwrap();
        assert!((q_of_square - 0.315_323).abs() > 1e-2);
    }

    #[test]
    fn nome_near_unit_modulus() {
        let q = nome_from_modulus_complement(1e-12).unwrap();
        assert_relative_eq!(
            modulus_complement_from_nome(q).unwrap(),
            1e-12,
            max_relative = 1e-9
        );
        let q2 = nome_from_modulus(1.0 - 1e-12).unwrap();
        assert_abs_diff_eq!(q, q2, epsilon = 1e-6);
    }

    #[test]
    fn small_nome_asymptotics() {
        // k ~ 4 sqrt(q) as q -> 0
        let q = 1e-12;
        assert_relative_eq!(
            modulus_from_nome(q).unwrap() / q.sqrt(),
            4.0,
            max_relative = 1e-11
        );
    }

    #[test]
    fn lambert_values() {
        assert_abs_diff_eq!(
            lambert_l(0.5).unwrap(),
            1.606_695_152_415_291_8,
            epsilon = 1e-14
        );
        assert!((lambert_l(1e-8).unwrap() - 1e-8).abs() < 1e-15);
        assert!(matches!(lambert_l(0.0), Err(Error::Domain(_))));
        assert!(matches!(lambert_l(0.999), Err(Error::SlowConvergence(_))));
    }

    #[test]
    fn lambert_identity_grid() {
        for i in 1..=9 {
            let b = i as f64 / 10.0;
            assert_abs_diff_eq!(
                lambert_l(b).unwrap(),
                lambert_via_digamma(b).unwrap(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn lambert_against_divisor_sums() {
        // L(b) = sum d(n) b^n
        let b: f64 = 0.3;
        let mut s = 0.0;
        for n in 1..200u32 {
            let d = (1..=n).filter(|k| n % k == 0).count() as f64;
            s += d * b.powi(n as i32);
        }
        assert_abs_diff_eq!(lambert_l(b).unwrap(), s, epsilon = 1e-14);
    }

    #[test]
    fn digamma_values() {
        let l = lambert_l(0.5).unwrap();
        let expected = 2f64.ln() - 2f64.ln() * l;
        assert_abs_diff_eq!(q_digamma(0.5, 1.0).unwrap(), expected, epsilon = 1e-14);
        let a = q_digamma(0.5, 0.5).unwrap();
        let b = q_digamma(0.5, 1.0).unwrap();
        let c = q_digamma(0.5, 2.0).unwrap();
        assert!(a < b && b < c);
        assert!(matches!(q_digamma(0.5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn digamma_series_matches_product_form() {
        for &q in &[0.1, 0.5, 0.9] {
            for &x in &[0.25, 0.5, 1.0, 2.7] {
                assert_abs_diff_eq!(
                    q_digamma(q, x).unwrap(),
                    q_digamma_product(q, x).unwrap(),
                    epsilon = 1e-11
                );
            }
        }
    }

    #[test]
    fn digamma_recurrence() {
        // psi_q(x + 1) = psi_q(x) - ln q * q^x / (1 - q^x)
        let (q, x) = (0.6f64, 0.8f64);
        let qx = q.powf(x);
        assert_abs_diff_eq!(
            q_digamma(q, x + 1.0).unwrap(),
            q_digamma(q, x).unwrap() - q.ln() * qx / (1.0 - qx),
            epsilon = 1e-12
        );
    }

    #[test]
    fn odd_lambert_identity() {
        for i in 1..=9 {
            odd_lambert_sum(i as f64 / 10.0).unwrap();
        }
        assert_relative_eq!(odd_lambert_sum(1e-6).unwrap(), 1e-6, max_relative = 1e-5);
    }

    #[test]
    fn sharp_nome() {
        assert!(sharp_equation(0.5).unwrap() * sharp_equation(0.95).unwrap() < 0.0);
        let q = solve_q0(1e-10).unwrap();
        assert!((q - Q0_APPROX).abs() < 1e-4);
        assert_abs_diff_eq!(q, 0.768_062_448_625_985, epsilon = 1e-9);
        assert_abs_diff_eq!((1.0 - q) * odd_lambert_sum(q).unwrap(), 1.0, epsilon = 1e-9);
        assert!(matches!(solve_q0(1e-13), Err(Error::Domain(_))));
    }

    #[test]
    fn sharp_modulus() {
        let m = mu0().unwrap();
        let c = mu0_complement().unwrap();
        assert!(m < 1.0 || c > 0.0);
        assert!(c < 1e-7 && c > 0.0);
        assert_relative_eq!(c, 4.570_110_5e-16, max_relative = 1e-6);
        assert!(m > 0.9909);
        assert_abs_diff_eq!(q0().unwrap(), 0.768_062_448_625_985, epsilon = 1e-9);
    }

    #[test]
    fn s_parameter() {
        let sp = fraenkel_s(0.25, Sign::Plus).unwrap();
        assert_abs_diff_eq!(sp, 8.0 * PI / 3.0, epsilon = 1e-14);
        assert_eq!(fraenkel_s(0.25, Sign::Minus).unwrap(), -sp);
        assert!((fraenkel_s(1e-10, Sign::Plus).unwrap() / 1e-5 - 4.0 * PI).abs() < 1e-8);
        assert!(matches!(fraenkel_s(0.0, Sign::Plus), Err(Error::Domain(_))));
        assert_eq!(Sign::parse("-1").unwrap(), Sign::Minus);
        assert!(Sign::parse("2").is_err());
    }

    #[test]
    fn nome_type() {
        assert!(Nome::new(1.0).is_err());
        let n = Nome::new(0.3).unwrap();
        let c = n.complementary();
        assert_abs_diff_eq!(c.complementary().q(), 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(
            complementary_modulus_from_nome(0.3).unwrap(),
            modulus_from_nome(c.q()).unwrap(),
            epsilon = 1e-14
        );
    }
}
