//! The three named witness planes: reference coefficients against the ones
//! rebuilt from their constructions.

use magic_simplex::witness::NamedPlane;

fn main() -> magic_simplex::Result<()> {
    for name in NamedPlane::ALL {
        let r = name.resolve()?;
        let (t, c) = (r.reference, r.constructed);
        println!("{name}: alpha = b*beta + g*gamma + c");
        println!(
            "  reference   b {:+.10} g {:+.10} c {:+.10}",
            t.b_coeff, t.g_coeff, t.constant
        );
        println!(
            "  constructed b {:+.10} g {:+.10} c {:+.10}",
            c.b_coeff, c.g_coeff, c.constant
        );
        println!("  max difference {:.2e}", r.discrepancy);
    }
    Ok(())
}
