//! Closure of the ten Poincaré generators with spin.

use relrabi::poincare::{check_many, poisson_bracket, random_points, GeneratorLabel, PhaseSpacePoint};

fn main() -> relrabi::Result<()> {
    let p = PhaseSpacePoint::new([0.1, -0.4, 0.7], [0.5, 0.2, -1.0], [0.3, 0.1, 0.2], 1.5)?;
    let k1 = GeneratorLabel::J(0, 1);
    let k2 = GeneratorLabel::J(0, 2);
    println!("{{K1, K2}} = {:.12}", poisson_bracket(k1, k2, &p)?);
    println!("{{K1, P1}} = {:.12}", poisson_bracket(GeneratorLabel::J(0, 1), GeneratorLabel::P(1), &p)?);

    let points = random_points(42, 200);
    let report = check_many(&points, 1e-10);
    println!(
        "{} relations checked, max residual {:e}, {}",
        report.records.len(),
        report.max_residual,
        if report.passed() { "closed" } else { "NOT closed" }
    );
    Ok(())
}
