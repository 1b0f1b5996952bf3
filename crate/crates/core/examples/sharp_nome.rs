//! The sharp nome q0, the modulus mu0 and the rho sum around them.

use riesz_snp::fourier::{rho_coeff, rho_sum};
use riesz_snp::qtheta::{
    lambert_l, lambert_via_digamma, mu0, mu0_complement, nome_from_modulus, q0, sharp_equation,
    theta_constants,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = q0()?;
    let th = theta_constants(q)?;
    println!("q0        = {q:.15}");
    println!("F(q0)     = {:.3e}", sharp_equation(q)?);
    println!("theta2    = {:.15}, theta3 = {:.15}", th.theta2, th.theta3);
    println!("mu0       = {:.17}", mu0()?);
    println!("1 - mu0   = {:.6e}", mu0_complement()?);

    println!("\nL(beta) two ways:");
    for beta in [0.1, 0.5, 0.9] {
        println!(
            "  {beta}: {:.15} {:.15}",
            lambert_l(beta)?,
            lambert_via_digamma(beta)?
        );
    }

    println!("\nrho_1..rho_5 at q0:");
    for j in 1..=5 {
        println!("  rho_{j} = {:.12}", rho_coeff(q, j)?);
    }

    println!("\nsum of rho_j against the modulus:");
    for mu in [0.5, 0.9, 0.9909, 0.999999] {
        let qm = nome_from_modulus(mu)?;
        println!("  mu = {mu:<9} q = {qm:.9}  S = {:.9}", rho_sum(qm)?);
    }
    println!("  q = q0           S = {:.12}", rho_sum(q)?);
    Ok(())
}
