//! Low-lying spectra of the four Hamiltonians.

use relrabi::hamiltonian::{build, EnergyOffset, HamiltonianKind, ModelParams};
use relrabi::linalg;

fn main() -> relrabi::Result<()> {
    let p = ModelParams { fock_cutoff: 15, energy_offset: EnergyOffset::RestMass, ..Default::default() }
        .with_nonrelativistic_link()
        .with_coupling(0.1);
    for kind in [
        HamiltonianKind::NonRelativisticRabi,
        HamiltonianKind::RelativisticRabi,
        HamiltonianKind::JaynesCummings,
        HamiltonianKind::RelativisticJaynesCummings,
    ] {
        let h = build(&p, kind)?;
        let vals = linalg::eigvalsh(h.h.matrix());
        let low: Vec<String> = vals.iter().take(8).map(|e| format!("{e:.6}")).collect();
        println!("{kind:?}: {}", low.join(" "));
    }
    // the JC doublets split by 2g√(n+1) on resonance
    Ok(())
}
