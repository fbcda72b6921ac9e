//! Minimal mixing parameter for the two named starting points.

use magic_simplex::witness::{
    lambda_min, lambda_pl3_exact, lambda_tot_exact, pl3_start, tot_start, LAMBDA_TOL,
};

fn main() -> magic_simplex::Result<()> {
    for (name, start, exact) in [
        ("global", tot_start()?, lambda_tot_exact()),
        ("third plane", pl3_start()?, lambda_pl3_exact()),
    ] {
        let lm = lambda_min(start, LAMBDA_TOL)?;
        println!("{name}: start {start}");
        println!(
            "  lambda_min {:.12} (closed form {:.12}, exact {:.12}, {} probes)",
            lm.lambda, lm.closed_form, exact, lm.probes
        );
        if let Some((lo, hi)) = lm.witness.a_interval() {
            println!("  scale interval [{lo:.6}, {hi:.6}]");
        }
    }
    Ok(())
}
