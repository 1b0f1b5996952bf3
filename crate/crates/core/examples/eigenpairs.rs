//! Builds the first few eigenpairs and checks them against the first
//! integral and the differential equation.
//!
//! cargo run --example eigenpairs -- 2.5 0.6

use riesz_snp::eigen::{interior_grid, EigenPair};
use riesz_snp::Sign;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let p = args.first().copied().unwrap_or(2.5);
    let mu = args.get(1).copied().unwrap_or(0.6);
    let grid = interior_grid(500);

    println!("p = {p}, mu = {mu}");
    println!(
        "{:>3} {:>16} {:>14} {:>12} {:>12} {:>7}",
        "n", "lambda", "amplitude", "first int.", "ode", "zeros"
    );
    for n in 1..=5 {
        let e = EigenPair::new(p, mu, n, Sign::Plus)?;
        let fi = e.first_integral_residual(&grid)?;
        let ode = e.ode_residual(&grid)?;
        println!(
            "{n:>3} {:16.8} {:14.8} {:12.3e} {:12.3e} {:>7}",
            e.lambda(),
            e.amplitude(),
            fi.max_abs_residual,
            ode.max_abs_residual,
            e.sign_changes(1000)?
        );
    }

    let e = EigenPair::new(p, mu, 2, Sign::Minus)?;
    println!("\nphi_2 with the minus sign:");
    for i in 0..=8 {
        let x = i as f64 / 8.0;
        println!("  x = {x:.3}  phi = {:+.12}", e.eval(x)?);
    }
    Ok(())
}
