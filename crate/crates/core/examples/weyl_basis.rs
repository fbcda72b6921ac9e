//! Qutrit Weyl operators and the coefficients of a Bell projector in the
//! `U_nm ⊗ U_{-n,m}` basis.

use magic_simplex::weyl::{bell_projector, weyl_operator, weyl_tensor_decompose, WeylIndex};

fn main() -> magic_simplex::Result<()> {
    let u = weyl_operator(WeylIndex::new(1, 1, 3)?);
    println!("U_11 =");
    for r in 0..3 {
        let row: Vec<String> = (0..3)
            .map(|c| format!("{:+.3}{:+.3}i", u[(r, c)].re, u[(r, c)].im))
            .collect();
        println!("  {}", row.join("  "));
    }

    let p00 = bell_projector(WeylIndex::new(0, 0, 3)?);
    let t = weyl_tensor_decompose(&p00, 3)?;
    println!("P00 coefficients (residual {:.1e}):", t.residual());
    for (n, m, z) in t.iter() {
        println!("  t[{n}{m}] = {:.6} {:+.6}i", z.re, z.im);
    }
    Ok(())
}
