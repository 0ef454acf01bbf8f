//! Dirac brackets of the pseudoclassical atom variables.

use relrabi::grassmann::{dirac_bracket, reduced_spec, AtomAlgebra};
use relrabi::kinematics::{RapidityVector, Signature};

fn main() -> relrabi::Result<()> {
    let atom = AtomAlgebra::new(Signature::Plus);
    println!("fundamental brackets:\n{}", atom.spec().dump());

    let chi = atom.second_class_constraints();
    for mu in 0..4 {
        let b = dirac_bracket(&atom.xi(mu), &atom.xi(mu), &chi, atom.spec())?;
        println!("{{xi{mu}, xi{mu}}}* = {b}");
    }
    let b = dirac_bracket(&atom.alpha(), &atom.alpha_star(), &chi, atom.spec())?;
    println!("{{alpha, alpha*}}* = {b}");

    // rest frame: add P.xi = 0 and look at the transverse components
    let h = RapidityVector::new([0.4, -0.3, 0.8])?;
    let phi = atom.rest_frame_constraints(&h);
    let perp = atom.xi_perp(&h)?;
    let reduced = reduced_spec(&phi, atom.spec())?;
    for r in 0..3 {
        let b = relrabi::grassmann::graded_poisson_bracket(&perp[r], &perp[r], &reduced)?;
        println!("{{xi_perp{r}, xi_perp{r}}}* = {}", b.pruned(1e-13));
    }

    let spin = atom.spin(&perp);
    let s12 = dirac_bracket(&spin[0], &spin[1], &phi, atom.spec())?;
    println!("{{S1, S2}}* + S3 = {}", (&s12 + &spin[2]).pruned(1e-13));

    let d = atom.level_bilinear();
    println!("(beta* alpha + alpha* beta)^2 = {}", &d * &d);
    Ok(())
}
