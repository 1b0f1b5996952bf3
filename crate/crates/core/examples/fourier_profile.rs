//! Sine coefficients of the sn_p profile with the Step-2 and Step-3 bounds.
//!
//! cargo run --example fourier_profile -- 4 0.9 31

use riesz_snp::fourier::{step2_lower_bound, tau_k_bound, FourierProfile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4.0);
    let mu: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(0.9);
    let k_max: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(31);

    let prof = FourierProfile::compute(p, mu, k_max)?;
    println!("p = {p}, mu = {mu}, K_p = {:.12}", prof.kp);
    println!(
        "tau_1 = {:.12} (lower bound {:.12})",
        prof.tau(1),
        step2_lower_bound()
    );
    println!("{:>4} {:>20} {:>20}", "k", "tau_k", "bound");
    for k in (3..=k_max).step_by(2) {
        println!(
            "{k:>4} {:20.12e} {:20.12e}",
            prof.tau(k),
            tau_k_bound(prof.kp, k)
        );
    }
    let even = (2..=k_max)
        .step_by(2)
        .map(|k| prof.tau(k).abs())
        .fold(0.0, f64::max);
    println!("largest even coefficient: {even:.2e}");
    println!("tail bound past k = {k_max}: {:.3e}", prof.tail_bound);
    println!("sum of squares: {:.12}", prof.energy());
    Ok(())
}
