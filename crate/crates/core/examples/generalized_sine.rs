//! Tabulates sn_p and its derivatives over one period.
//!
//! cargo run --example generalized_sine -- 3 0.7

use riesz_snp::pelliptic::PModulus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let p = args.first().copied().unwrap_or(3.0);
    let mu = args.get(1).copied().unwrap_or(0.7);

    let m = PModulus::new(p, mu)?;
    println!(
        "p = {p}, mu = {mu}, K_p = {:.15}, period = {:.15}",
        m.kp(),
        m.period()
    );
    println!(
        "{:>10} {:>20} {:>20} {:>20}",
        "y/K", "sn_p", "sn_p'", "sn_p''"
    );
    for i in 0..=16 {
        let y = m.kp() * i as f64 / 4.0;
        let s = m.snp(y)?;
        // sn_p'' blows up at odd multiples of K when p > 2
        let d2 = match m.snp_second_deriv(y) {
            Ok(v) if p <= 2.0 || 1.0 - s.abs() > 1e-12 => format!("{v:20.12e}"),
            _ => format!("{:>20}", "singular"),
        };
        println!(
            "{:>10.2} {:20.15} {:20.15} {d2}",
            i as f64 / 4.0,
            s,
            m.snp_deriv(y)?
        );
    }

    // Jordan-type bounds y/K <= sn_p(y) <= y on (0, K)
    let worst = (1..100)
        .map(|i| m.jordan_margins(m.kp() * i as f64 / 100.0))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(f64::INFINITY, |acc, (lo, hi)| acc.min(lo).min(hi));
    println!("smallest Jordan margin on (0, K): {worst:.3e}");
    Ok(())
}
