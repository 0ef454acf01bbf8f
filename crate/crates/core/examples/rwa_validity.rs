//! How far the rotating-wave approximation drifts from the full Rabi model.

use relrabi::dynamics::rwa_validity;
use relrabi::hamiltonian::ModelParams;

fn main() -> relrabi::Result<()> {
    let p = ModelParams { fock_cutoff: 12, ..Default::default() };
    let report = rwa_validity(&p, &[0.0, 1e-3, 1e-2, 0.05, 0.1, 0.3], 10.0)?;
    for pt in &report.points {
        println!("g/hw = {:<6} max trace distance {:.3e}", pt.ratio, pt.max_trace_distance);
    }
    println!("monotone: {}", report.monotone);
    Ok(())
}
