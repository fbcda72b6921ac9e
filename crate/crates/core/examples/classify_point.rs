//! Classification with evidence for points given as `alpha beta gamma`
//! triples on the command line, or a default set.

use magic_simplex::{classify, FamilyPoint};

fn main() -> magic_simplex::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let points: Vec<FamilyPoint> = if args.len() >= 3 {
        args.chunks_exact(3)
            .map(|c| FamilyPoint::new(c[0], c[1], c[2]))
            .collect()
    } else {
        vec![
            FamilyPoint::MAXIMALLY_MIXED,
            FamilyPoint::new(1.0, 0.0, 0.0),
            FamilyPoint::on_boundary_plane(0.5, -0.09),
            FamilyPoint::new(0.1, 0.2, 0.3),
            FamilyPoint::new(2.0, 0.0, 0.0),
        ]
    };
    for p in points {
        let c = classify(p)?;
        println!("{p}: {}", c.verdict);
        println!("  {}", serde_json::to_string(&c.evidence)?);
    }
    Ok(())
}
