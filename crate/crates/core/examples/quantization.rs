//! From Grassmann variables to the two-level atom operators.

use relrabi::linalg;
use relrabi::quantize::QuantizationMap;

fn main() -> relrabi::Result<()> {
    let q = QuantizationMap::new(1.0)?;
    let (_, _, constraint) = q.level_number_and_constraint();
    println!("b'b - a'a =\n{}", constraint.matrix());
    println!("kernel dimension {}", 4 - linalg::rank(constraint.matrix(), 1e-12));

    let sector = q.physical_projector_and_c();
    println!("c on (Phi(+), Phi(-)):\n{}", sector.c.matrix());
    let n = sector.c_dag.mul(&sector.c)?;
    println!("c'c:\n{}", n.matrix());

    let d = q.dipole_operator(0.5);
    for (r, op) in d.iter().enumerate() {
        println!("d{}:\n{}", r + 1, op.matrix());
    }
    Ok(())
}
