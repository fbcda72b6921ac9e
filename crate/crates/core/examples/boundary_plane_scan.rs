//! Scan of the boundary plane; writes the CSV to the path given as the first
//! argument (standard output otherwise) and prints verdict counts.

use std::fs::File;
use std::io::{self, Write};

use magic_simplex::regions::{scan, write_scan_csv, AxisRange, GridSpec};

fn main() -> magic_simplex::Result<()> {
    let grid = GridSpec::BoundaryPlane {
        gamma: AxisRange::new(0.0, 1.0, 0.02)?,
        beta: AxisRange::new(-1.0 / 3.0, 0.1, 0.02)?,
    };
    let res = scan(&grid, None)?;
    let out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    };
    write_scan_csv(&res.rows, out)?;
    for (verdict, n) in &res.summary.counts {
        eprintln!("{verdict:>15}: {n}");
    }
    Ok(())
}
