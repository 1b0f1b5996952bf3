//! Scans the (1/p, mu) plane for K_p(mu) < 8/(pi^2 - 8) and writes the CSV.
//!
//! cargo run --release --example region_scan -- 50 50 region.csv

use std::path::PathBuf;

use riesz_snp::certify::{
    firstcond_boundary, is_monotone_prefix, region_scan, write_region_csv_file, Boundary,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p_points: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(50);
    let mu_points: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(50);
    let out = args.next().map(PathBuf::from);

    let rows = region_scan(p_points, mu_points)?;
    println!(
        "{} rows, {} inside, monotone in mu on every row: {}",
        rows.len(),
        rows.iter().filter(|r| r.inside).count(),
        is_monotone_prefix(&rows)
    );

    println!("{:>8} {:>8} {:>16}", "1/p", "p", "boundary mu");
    for t in [0.2, 0.4, 0.5, 0.6, 0.7, 0.8] {
        let p = 1.0 / t;
        let b = match firstcond_boundary(p)? {
            Boundary::At(mu) => format!("{mu:.10}"),
            Boundary::AllInside => "none (inside)".into(),
            Boundary::AllOutside => "none (outside)".into(),
        };
        println!("{t:>8.2} {p:>8.4} {b:>16}");
    }

    if let Some(path) = out {
        write_region_csv_file(&rows, &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
