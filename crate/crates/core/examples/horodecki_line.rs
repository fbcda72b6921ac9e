//! Labels and verdicts along the Horodecki line, plus how often the literal
//! map γ → −γ (keeping α and β) preserves the verdict.

use magic_simplex::family::{
    horodecki_classification, horodecki_gamma, horodecki_point, FamilyPoint,
};
use magic_simplex::regions::Classifier;

fn main() -> magic_simplex::Result<()> {
    let cl = Classifier::shared()?;
    println!(
        "{:>5} {:>8}  {:<15} {:<15}",
        "b", "gamma", "label", "classified"
    );
    for i in 0..=20 {
        let b = i as f64 * 0.25;
        let p = horodecki_point(b)?;
        println!(
            "{b:>5.2} {:>8.4}  {:<15} {:<15}",
            horodecki_gamma(b),
            horodecki_classification(b)?.to_string(),
            cl.classify(p).verdict.to_string()
        );
    }

    let (mut same, mut total) = (0, 0);
    for i in 0..=200 {
        let p = horodecki_point(5.0 * i as f64 / 200.0)?;
        let literal = FamilyPoint::new(p.alpha, p.beta, -p.gamma);
        total += 1;
        same += usize::from(cl.classify(p).verdict == cl.classify(literal).verdict);
    }
    println!("literal gamma -> -gamma keeps the verdict at {same} of {total} points");
    Ok(())
}
