//! Vacuum Rabi oscillation on resonance.

use relrabi::dynamics::vacuum_rabi;
use relrabi::hamiltonian::ModelParams;

fn main() -> relrabi::Result<()> {
    let g = 0.05;
    let p = ModelParams { fock_cutoff: 4, ..Default::default() }.with_coupling(g);
    let traj = vacuum_rabi(&p, 2.0, 41)?;
    println!("{:>10} {:>12} {:>12} {:>10}", "t", "<sigma3>", "cos(2gt)", "<n>");
    for r in &traj.records {
        println!("{:>10.3} {:>12.8} {:>12.8} {:>10.6}", r.t, r.sigma3, (2.0 * g * r.t).cos(), r.photons);
    }
    Ok(())
}
