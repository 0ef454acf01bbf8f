//! Collapse and revival of the inversion with a coherent field.

use relrabi::dynamics::collapse_revival_scan;
use relrabi::hamiltonian::{CouplingForm, ModelParams};
use relrabi::Complex64;

fn main() -> relrabi::Result<()> {
    let g = 0.05;
    for nbar in [4.0f64, 9.0, 16.0] {
        let p = ModelParams { fock_cutoff: 45, coupling_form: CouplingForm::ScalarAligned, ..Default::default() }
            .with_coupling(g);
        let predicted = 2.0 * std::f64::consts::PI * nbar.sqrt() / g;
        let scan = collapse_revival_scan(&p, Complex64::new(nbar.sqrt(), 0.0), 1.5 * predicted, 4096)?;
        println!(
            "n = {nbar:>4}: collapse at {:>7.2}, revival at {:>7.2} (2 pi sqrt(n)/g = {predicted:.2})",
            scan.estimated_collapse.unwrap_or(f64::NAN),
            scan.estimated_revival.unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
