//! Relativistic Hamiltonian against its non-relativistic limit as c grows.

use relrabi::dynamics::{relativistic_comparison, FieldState, InitialState, LevelLink};
use relrabi::hamiltonian::ModelParams;

fn main() -> relrabi::Result<()> {
    let p = ModelParams { fock_cutoff: 8, kappa: [0.5, 0.0, 0.0], ..Default::default() }.with_coupling(0.05);
    let c_list = [10.0, 100.0, 1000.0, 1e4];
    for link in [LevelLink::NonRelativistic, LevelLink::Mass] {
        let report = relativistic_comparison(&p, &c_list, link, InitialState::excited(FieldState::Fock(0)), 5.0)?;
        println!("{link:?} link:");
        for pt in &report.points {
            println!(
                "  c = {:>7}: Omega = {:.3e}, max |d sigma3| = {:.3e}, spectral {:.3e}",
                pt.c, pt.level_splitting, pt.max_sigma3_deviation, pt.relative_spectral_deviation
            );
        }
        println!("  monotone: {}", report.monotone);
    }
    Ok(())
}
