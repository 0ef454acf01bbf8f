use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    evolve_with, excited_state, product_state, hilbert_envelope, moving_average, reduced_level_state, trace_distance_2x2,
    uniform_grid, FieldState, Propagator, StateVector, Trajectory,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{build, build_jaynes_cummings, build_nonrel_rabi, EnergyOffset, HamiltonianKind, ModelParams};
use crate::quantize::Leg;
use crate::Complex64;

/// Resonant JC evolution from `|Φ(+)⟩ ⊗ |0⟩` over `periods` vacuum Rabi periods `πħ/g`.
pub fn vacuum_rabi(p: &ModelParams, periods: f64, samples: usize) -> Result<Trajectory> {
    let g = p.coupling();
    if g == 0.0 {
        return Err(Error::InvalidParameter { name: "dipole", reason: "vacuum Rabi needs a nonzero coupling".into() });
    }
    let h = build_jaynes_cummings(p, false)?;
    let psi = excited_state(p, FieldState::Fock(0))?;
    evolve_with(&Propagator::new(&h)?, p, &psi, &uniform_grid(periods * PI * p.hbar / g, samples))
}

/// Inversion trace and revival estimate from a coherent-field run.
#[derive(Debug, Clone, Serialize)]
pub struct CollapseRevival {
    pub trajectory: Trajectory,
    pub mean_photons: f64,
    /// `2πħ√n̄/g`.
    pub predicted_revival: f64,
    pub estimated_revival: Option<f64>,
    pub estimated_collapse: Option<f64>,
    /// Smoothed envelope of `⟨σ₃⟩`, one value per grid point.
    pub envelope: Vec<f64>,
}

fn required_cutoff(nbar: f64) -> usize {
    (nbar + 6.0 * nbar.sqrt()).ceil() as usize
}

/// JC evolution from `|Φ(+)⟩ ⊗ |α⟩` up to `t_max` with `samples` grid points, plus the
/// first revival time read off the window-smoothed Hilbert envelope of `⟨σ₃⟩`.
pub fn collapse_revival_scan(
    p: &ModelParams,
    amplitude: Complex64,
    t_max: f64,
    samples: usize,
) -> Result<CollapseRevival> {
    let nbar = amplitude.norm_sqr();
    let required = required_cutoff(nbar);
    if p.fock_cutoff < required {
        return Err(Error::InsufficientCutoff { cutoff: p.fock_cutoff, required });
    }
    if !(t_max > 0.0) {
        return Err(Error::TimeGrid);
    }
    let g = p.coupling();
    let h = build_jaynes_cummings(p, false)?;
    let psi = excited_state(p, FieldState::Coherent(amplitude))?;
    let times = uniform_grid(t_max, samples);
    let trajectory = evolve_with(&Propagator::new(&h)?, p, &psi, &times)?;

    let predicted_revival = if g > 0.0 { 2.0 * PI * p.hbar * nbar.sqrt() / g } else { f64::INFINITY };
    let inversion = trajectory.series(|r| r.sigma3);
    let dt = times[1] - times[0];
    // smoothing window: one Rabi period at the mean photon number
    let rabi_period = if g > 0.0 { PI * p.hbar / (g * (nbar + 1.0).sqrt()) } else { t_max };
    let half = ((rabi_period / dt) / 2.0).round().max(1.0) as usize;
    let envelope = moving_average(&hilbert_envelope(&inversion), half);
    let (collapse, revival) = revival_from_envelope(&envelope, half);
    Ok(CollapseRevival {
        trajectory,
        mean_photons: nbar,
        predicted_revival,
        estimated_revival: revival.map(|i| times[i]),
        estimated_collapse: collapse.map(|i| times[i]),
        envelope,
    })
}

/// Indices of the collapse (envelope first below half its initial level) and of the
/// first local maximum after the plateau that rises clearly above it.
fn revival_from_envelope(env: &[f64], half: usize) -> (Option<usize>, Option<usize>) {
    let n = env.len();
    let start = half.min(n.saturating_sub(1));
    let initial = env[..=start].iter().cloned().fold(0.0, f64::max);
    let Some(collapse) = (start..n).find(|&i| env[i] < 0.5 * initial) else {
        return (None, None);
    };
    let mut floor = env[collapse];
    for i in collapse..n {
        floor = floor.min(env[i]);
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(n);
        let is_peak = env[lo..hi].iter().all(|&v| v <= env[i]) && hi < n;
        if is_peak && env[i] - floor > 0.25 * (initial - floor) {
            return (Some(collapse), Some(i));
        }
    }
    (Some(collapse), None)
}

/// Distance between Rabi and JC reduced level states at one coupling ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RwaPoint {
    /// `g/ħω`.
    pub ratio: f64,
    pub t_max: f64,
    pub max_trace_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RwaReport {
    pub points: Vec<RwaPoint>,
    /// Distances strictly increase with the ratio.
    pub monotone: bool,
}

/// For each `g/ħω`, evolve `|Φ(+)⟩ ⊗ |0⟩` under the non-relativistic Rabi and JC
/// Hamiltonians on resonance (`Ω̃ = ω`) for `periods` Rabi periods `πħ/g` and record
/// the largest trace distance of the reduced level states.
pub fn rwa_validity(p: &ModelParams, ratios: &[f64], periods: f64) -> Result<RwaReport> {
    let mut points: Vec<RwaPoint> = ratios
        .par_iter()
        .map(|&ratio| rwa_point(p, ratio, periods))
        .collect::<Result<_>>()?;
    points.sort_by(|a, b| a.ratio.total_cmp(&b.ratio));
    let monotone = points.windows(2).all(|w| w[0].max_trace_distance < w[1].max_trace_distance);
    Ok(RwaReport { points, monotone })
}

fn rwa_point(base: &ModelParams, ratio: f64, periods: f64) -> Result<RwaPoint> {
    if !(ratio >= 0.0) || !ratio.is_finite() {
        return Err(Error::InvalidParameter { name: "ratio", reason: format!("must be non-negative, got {ratio}") });
    }
    let mut p = ModelParams { level_frequency: base.mode_frequency, ..base.clone() };
    let g = ratio * p.hbar * p.mode_frequency;
    p = p.with_coupling(g);
    let fast = 2.0 * PI / p.mode_frequency;
    let t_max = if g > 0.0 { periods * PI * p.hbar / g } else { periods * fast };
    let samples = ((t_max / fast) * 16.0).ceil() as usize + 1;
    let rabi = Propagator::new(&build_nonrel_rabi(&p)?)?;
    let jc = Propagator::new(&build_jaynes_cummings(&p, false)?)?;
    let psi = excited_state(&p, FieldState::Fock(0))?;
    let mut worst: f64 = 0.0;
    for t in uniform_grid(t_max, samples) {
        let a = reduced_level_state(&rabi.evolve(&psi, t)?);
        let b = reduced_level_state(&jc.evolve(&psi, t)?);
        worst = worst.max(trace_distance_2x2(&a, &b));
    }
    Ok(RwaPoint { ratio, t_max, max_trace_distance: worst })
}

/// Level amplitudes of `(Φ(+), Φ(−))` and the photon state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    pub level: [Complex64; 2],
    pub field: FieldState,
}

impl InitialState {
    pub fn excited(field: FieldState) -> Self {
        Self { level: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], field }
    }
}

/// How `Ω` follows from `Ω̃` when `c` is varied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelLink {
    /// `Ω = mΩ̃`.
    Mass,
    /// `Ω = ħΩ̃/(2c)`.
    #[default]
    NonRelativistic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonPoint {
    pub c: f64,
    pub level_splitting: f64,
    pub max_sigma3_deviation: f64,
    /// Sup-norm over level, photon and dipole curves.
    pub max_observable_deviation: f64,
    /// `max_k |E_k^rel − E_k^nr| / max_k |E_k^nr|` over the full truncated spectrum.
    pub relative_spectral_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelativisticComparison {
    pub link: LevelLink,
    pub coupling: f64,
    pub t_max: f64,
    pub points: Vec<ComparisonPoint>,
    /// Observable and spectral deviations strictly decrease with `c`.
    pub monotone: bool,
}

/// Relativistic (rest mass subtracted) vs non-relativistic Rabi evolution from
/// `initial` for each `c`, holding `g` and `Ω̃` fixed, over `periods` Rabi periods.
pub fn relativistic_comparison(
    p: &ModelParams,
    c_list: &[f64],
    link: LevelLink,
    initial: InitialState,
    periods: f64,
) -> Result<RelativisticComparison> {
    let g = p.coupling();
    let t_max = if g > 0.0 {
        periods * PI * p.hbar / g
    } else {
        periods * 2.0 * PI / p.level_frequency.abs().max(p.mode_frequency)
    };
    let samples = (periods * 64.0).ceil() as usize + 1;
    let grid = uniform_grid(t_max, samples);
    let mut points: Vec<ComparisonPoint> = c_list
        .par_iter()
        .map(|&c| {
            let mut q = ModelParams { c, energy_offset: EnergyOffset::RestMass, ..p.clone() };
            q = match link {
                LevelLink::Mass => q.with_mass_link(),
                LevelLink::NonRelativistic => q.with_nonrelativistic_link(),
            };
            if g > 0.0 {
                q = q.with_coupling(g);
            }
            let rel = build(&q, HamiltonianKind::RelativisticRabi)?;
            let nr = build(&q, HamiltonianKind::NonRelativisticRabi)?;
            let psi = product_state(&q, initial.level, initial.field)?;
            let prop_rel = Propagator::new(&rel)?;
            let prop_nr = Propagator::new(&nr)?;
            let a = evolve_with(&prop_rel, &q, &psi, &grid)?;
            let b = evolve_with(&prop_nr, &q, &psi, &grid)?;
            let max_sigma3 = a
                .records
                .iter()
                .zip(&b.records)
                .map(|(x, y)| (x.sigma3 - y.sigma3).abs())
                .fold(0.0, f64::max);
            let scale = prop_nr.energies.iter().map(|e| e.abs()).fold(0.0, f64::max);
            let spectral = prop_rel
                .energies
                .iter()
                .zip(&prop_nr.energies)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
                / scale;
            Ok(ComparisonPoint {
                c,
                level_splitting: q.level_splitting,
                max_sigma3_deviation: max_sigma3,
                max_observable_deviation: a.max_deviation(&b),
                relative_spectral_deviation: spectral,
            })
        })
        .collect::<Result<_>>()?;
    points.sort_by(|a, b| a.c.total_cmp(&b.c));
    let monotone = points.windows(2).all(|w| {
        w[0].max_observable_deviation > w[1].max_observable_deviation
            && w[0].relative_spectral_deviation > w[1].relative_spectral_deviation
    });
    Ok(RelativisticComparison { link, coupling: g, t_max, points, monotone })
}

/// `κ⃗ + (ħω/c) k̂ ⟨n̂⟩`: the single-mode stand-in for the internal momentum that the
/// rest-frame conditions would set to zero. Reported only.
pub fn rest_frame_diagnostics(psi: &StateVector, p: &ModelParams) -> Result<[f64; 3]> {
    let Some(&Leg::Fock(n)) = psi.layout.legs().last() else {
        return Err(Error::LayoutMismatch(format!("no photon leg in {}", psi.layout)));
    };
    let photons: f64 = psi
        .data
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm_sqr() * (i % (n + 1)) as f64)
        .sum::<f64>()
        / psi.data.norm_squared();
    let k = p.hbar * p.mode_frequency / p.c * photons;
    Ok([0, 1, 2].map(|r| p.kappa[r] + k * p.mode_direction[r]))
}

/// Sup-norm deviation between a scenario run at `fock_cutoff` and at `fock_cutoff + 5`.
pub fn cutoff_convergence<F>(p: &ModelParams, run: F) -> Result<f64>
where
    F: Fn(&ModelParams) -> Result<Trajectory> + Sync,
{
    let bigger = ModelParams { fock_cutoff: p.fock_cutoff + 5, ..p.clone() };
    let (a, b) = rayon::join(|| run(p), || run(&bigger));
    Ok(a?.max_deviation(&b?))
}
