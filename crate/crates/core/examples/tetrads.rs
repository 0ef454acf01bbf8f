//! Wigner boost tetrads and their checks.

use relrabi::kinematics::{
    center_of_mass_shift, embed_rest_frame, inverse_tetrad, tetrad_derivative, wigner_tetrad, FourVector,
    RapidityVector, Signature, Units,
};
use relrabi::grassmann::AtomAlgebra;

fn main() -> relrabi::Result<()> {
    for sgn in [Signature::Plus, Signature::Minus] {
        let h = RapidityVector::new([1.5, -2.0, 0.5])?;
        let t = wigner_tetrad(&h, sgn)?;
        println!("sgn {:+}: gamma = {:.6}", sgn.sign(), h.gamma());
        for row in &t.m {
            println!("  {:>10.6} {:>10.6} {:>10.6} {:>10.6}", row[0], row[1], row[2], row[3]);
        }
        println!(
            "  orthonormality residual {:e}, det {:.15}",
            t.orthonormality_residual(),
            t.determinant()
        );
        let inv = inverse_tetrad(&t);
        println!("  inverse residual {:e}", inv.orthonormality_residual());
    }

    let h = RapidityVector::new([0.3, 0.0, 0.4])?;
    let x0 = FourVector::new([0.0, 1.0, 2.0, 3.0], Units::Length, Signature::Plus);
    let x = embed_rest_frame(&x0, &h, [0.0, 0.1, 0.0, 0.0])?;
    println!("point of the rest-frame hyperplane: {:?}", x.components);

    let d = tetrad_derivative(&h, 2.0, Signature::Plus)?;
    println!("d eps^1_0 / dP_1 = {:.6}", d[1][1][0]);

    let atom = AtomAlgebra::new(Signature::Plus);
    let perp = atom.xi_perp(&h)?;
    let shift = center_of_mass_shift(&h, 2.0, &perp, Signature::Plus)?;
    for (mu, x) in shift.iter().enumerate() {
        println!("center-of-mass shift x^{mu} = {}", x.pruned(1e-14));
    }
    Ok(())
}
