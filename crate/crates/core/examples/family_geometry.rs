//! Bell weights, pyramid margin and partial-transpose spectrum of a few
//! family members.

use magic_simplex::family::{bell_spectrum, is_ppt, pyramid_margin, FamilyPoint};

fn main() -> magic_simplex::Result<()> {
    let points = [
        FamilyPoint::MAXIMALLY_MIXED,
        FamilyPoint::new(1.0 / 3.0, 2.0 / 3.0, 0.0),
        FamilyPoint::new(0.5, 0.0, 0.0),
        FamilyPoint::new(0.0, 0.0, 1.0),
        FamilyPoint::new(1.0, 1.0, 0.0),
    ];
    for p in points {
        let q = bell_spectrum(p);
        print!(
            "{p}: margin {:+.4}, min weight {:+.4}",
            pyramid_margin(p),
            q.min()
        );
        match is_ppt(p) {
            Ok(r) => println!(
                ", PT min eig {:+.4} ({})",
                r.pt_min_eig,
                if r.ppt { "PPT" } else { "NPT" }
            ),
            Err(e) => println!(", {e}"),
        }
    }
    Ok(())
}
