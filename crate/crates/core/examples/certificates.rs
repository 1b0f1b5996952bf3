//! The three certificates on a few modulus sets.

use riesz_snp::certify::{
    certify_firstcond, certify_invertibility, certify_p2_sharp, CertificateReport, ModulusSet,
};

fn show(r: &CertificateReport) {
    println!(
        "{:<14} p = {:<4} lhs = {:<22.15e} rhs = {:<22.15e} tail = {:.2e}  {}",
        r.criterion.to_string(),
        r.p,
        r.lhs,
        r.rhs,
        r.tail_bound,
        r.verdict
    );
    for (k, v) in &r.diagnostics {
        println!("    {k} = {v:.6e}");
    }
    for c in &r.caveats {
        println!("    caveat: {c}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let small = ModulusSet::explicit(vec![0.1, 0.2, 0.3])?;
    show(&certify_firstcond(2.0, &small)?);
    show(&certify_invertibility(2.0, &small, 51)?);
    show(&certify_p2_sharp(&small)?);

    println!();
    let near = ModulusSet::constant(0.9909)?;
    show(&certify_firstcond(2.0, &near)?);
    show(&certify_p2_sharp(&near)?);

    println!();
    let close = ModulusSet::constant(0.9995)?;
    show(&certify_firstcond(2.0, &close)?);
    show(&certify_p2_sharp(&close)?);

    println!();
    let grid = ModulusSet::interval_grid(0.2, 0.7, 6)?;
    show(&certify_invertibility(3.0, &grid, 31)?);
    Ok(())
}
