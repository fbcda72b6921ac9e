//! Vertices and facets of the certified separable polygon.

use magic_simplex::regions::build_polygon;
use magic_simplex::FamilyPoint;

fn main() -> magic_simplex::Result<()> {
    let poly = build_polygon()?;
    println!("vertices:");
    for v in &poly.vertices {
        println!("  {} from {:?}", v.point, v.source);
    }
    println!("facets (n . x <= offset):");
    for f in &poly.facets {
        println!(
            "  [{:+.4}, {:+.4}, {:+.4}] . x <= {:+.4}",
            f.normal[0], f.normal[1], f.normal[2], f.offset
        );
    }
    let p = FamilyPoint::new(0.05, 0.05, 0.2);
    match poly.membership(p) {
        Some(w) => println!("{p} = convex combination with weights {w:.4?}"),
        None => println!("{p} is outside"),
    }
    Ok(())
}
