//! Unitary evolution, observables and the physics scenarios.

mod envelope;
mod scenarios;

pub use envelope::{hilbert_envelope, moving_average};
pub use scenarios::{
    collapse_revival_scan, cutoff_convergence, relativistic_comparison, rest_frame_diagnostics,
    rwa_validity, vacuum_rabi, CollapseRevival, ComparisonPoint, InitialState, LevelLink, RelativisticComparison,
    RwaPoint, RwaReport,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::{CouplingForm, HamiltonianBundle, ModelParams};
use crate::linalg::{self, c, real, CMatrix, CVector, ONE, ZERO};
use crate::quantize::{Layout, Leg};
use crate::Complex64;

/// Normalized state on a model layout.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub data: CVector,
    pub layout: Layout,
}

impl StateVector {
    pub fn new(data: CVector, layout: Layout) -> Result<Self> {
        if data.len() != layout.dim() {
            return Err(Error::LayoutMismatch(format!(
                "state of length {} on layout {layout}",
                data.len()
            )));
        }
        Ok(Self { data, layout })
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        self.data.unscale_mut(n);
        self
    }
}

/// Photon-mode initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldState {
    Fock(usize),
    Coherent(Complex64),
}

/// Coherent-state amplitudes `e^{−|α|²/2} αⁿ/√n!` for `n = 0..=N`, renormalized
/// on the truncated space.
pub fn coherent_amplitudes(alpha: Complex64, cutoff: usize) -> CVector {
    let mut v = CVector::zeros(cutoff + 1);
    let mut term = real((-alpha.norm_sqr() / 2.0).exp());
    for n in 0..=cutoff {
        v[n] = term;
        term = term * alpha / ((n + 1) as f64).sqrt();
    }
    let norm = v.norm();
    v.unscale(norm)
}

fn field_vector(field: FieldState, cutoff: usize) -> Result<CVector> {
    Ok(match field {
        FieldState::Fock(n) => {
            if n > cutoff {
                return Err(Error::InsufficientCutoff { cutoff, required: n });
            }
            CVector::from_fn(cutoff + 1, |i, _| if i == n { ONE } else { ZERO })
        }
        FieldState::Coherent(alpha) => coherent_amplitudes(alpha, cutoff),
    })
}

/// `+` eigenvector (or `−` for a negative `aligned_sign`) of `σ·ê` with `ê = 𝓔/|𝓔|`;
/// `+ẑ` for a vanishing field.
fn dipole_eigenvector(p: &ModelParams) -> CVector {
    let norm = p.field.iter().map(|x| x * x).sum::<f64>().sqrt();
    let e = if norm > 0.0 { p.field.map(|x| x / norm) } else { [0.0, 0.0, 1.0] };
    let s = f64::from(p.aligned_sign);
    let m = CMatrix::from_row_slice(2, 2, &[real(e[2]), c(e[0], -e[1]), c(e[0], e[1]), real(-e[2])]);
    let (_, vecs) = linalg::eigh(&m);
    let col = if s > 0.0 { 1 } else { 0 };
    vecs.column(col).into_owned()
}

/// Product state `level ⊗ dipole ⊗ field` on the model layout. `level` holds the
/// amplitudes of `(Φ(+), Φ(−))`. The dipole leg, when present, is prepared in the
/// eigenstate of `d̂·𝓔` selected by `aligned_sign`.
pub fn product_state(p: &ModelParams, level: [Complex64; 2], field: FieldState) -> Result<StateVector> {
    p.validate()?;
    let lvl = CVector::from_column_slice(&level);
    let photon = field_vector(field, p.fock_cutoff)?;
    let data = match p.coupling_form {
        CouplingForm::FullDipole => lvl.kronecker(&dipole_eigenvector(p)).kronecker(&photon),
        CouplingForm::ScalarAligned => lvl.kronecker(&photon),
    };
    Ok(StateVector::new(data, p.layout())?.normalized())
}

/// Upper level, field in the given state.
pub fn excited_state(p: &ModelParams, field: FieldState) -> Result<StateVector> {
    product_state(p, [ONE, ZERO], field)
}

/// Eigen-decomposition propagator `exp(−iHt/ħ)`.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub energies: Vec<f64>,
    pub vectors: CMatrix,
    pub hbar: f64,
    layout: Layout,
}

impl Propagator {
    pub fn new(h: &HamiltonianBundle) -> Result<Self> {
        let defect = h.relative_hermiticity_defect();
        if defect > 1e-10 {
            return Err(Error::NotHermitian(defect));
        }
        let (energies, vectors) = linalg::eigh(h.h.matrix());
        Ok(Self { energies, vectors, hbar: h.params.hbar, layout: h.layout().clone() })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Coefficients of `ψ` in the eigenbasis.
    pub fn project(&self, psi: &StateVector) -> Result<CVector> {
        if psi.layout != self.layout {
            return Err(Error::LayoutMismatch(format!("{} vs {}", psi.layout, self.layout)));
        }
        Ok(self.vectors.adjoint() * &psi.data)
    }

    fn evolve_coefficients(&self, coeffs: &CVector, t: f64) -> CVector {
        let phased = CVector::from_fn(coeffs.len(), |k, _| {
            coeffs[k] * Complex64::from_polar(1.0, -self.energies[k] * t / self.hbar)
        });
        &self.vectors * phased
    }

    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        let coeffs = self.project(psi)?;
        StateVector::new(self.evolve_coefficients(&coeffs, t), self.layout.clone())
    }
}

/// Expectation values at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableRecord {
    pub t: f64,
    /// `⟨σ₃⟩` of the level.
    pub sigma3: f64,
    /// `⟨σ₁⟩`, `⟨σ₂⟩` of the level (Bloch components).
    pub sigma_x: f64,
    pub sigma_y: f64,
    /// `⟨n̂⟩`.
    pub photons: f64,
    /// `⟨d̂^r⟩`; in scalar-aligned mode the projection `±ħd` along `𝓔`.
    pub dipole: [f64; 3],
    /// Populations of `Φ(+)` and `Φ(−)`.
    pub populations: [f64; 2],
    pub norm: f64,
    pub energy: f64,
    /// `⟨ĉ†ĉ + n̂⟩`.
    pub excitation: f64,
    /// `⟨σ₃ (−1)^n̂⟩`.
    pub parity: f64,
}

impl ObservableRecord {
    pub const CSV_HEADER: &'static str =
        "t,sigma3,sigma_x,sigma_y,photons,dipole_x,dipole_y,dipole_z,pop_upper,pop_lower,norm,energy,excitation,parity";

    pub fn csv_row(&self) -> String {
        let vals = [
            self.t,
            self.sigma3,
            self.sigma_x,
            self.sigma_y,
            self.photons,
            self.dipole[0],
            self.dipole[1],
            self.dipole[2],
            self.populations[0],
            self.populations[1],
            self.norm,
            self.energy,
            self.excitation,
            self.parity,
        ];
        vals.iter().map(|v| format!("{:?}", v + 0.0)).collect::<Vec<_>>().join(",")
    }
}

/// Reduced level density matrix `ρ_level` in the `(Φ(+), Φ(−))` basis.
pub fn reduced_level_state(psi: &StateVector) -> CMatrix {
    let rest = psi.data.len() / 2;
    let mut rho = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = ZERO;
            for k in 0..rest {
                acc += psi.data[i * rest + k] * psi.data[j * rest + k].conj();
            }
            rho[(i, j)] = acc;
        }
    }
    rho
}

/// Trace distance `½‖ρ − σ‖₁` of two 2×2 density matrices.
pub fn trace_distance_2x2(a: &CMatrix, b: &CMatrix) -> f64 {
    let d = a - b;
    // eigenvalues of a Hermitian 2×2 matrix: m ± r
    let m = 0.5 * (d[(0, 0)].re + d[(1, 1)].re);
    let h = 0.5 * (d[(0, 0)].re - d[(1, 1)].re);
    let r = (h * h + d[(0, 1)].norm_sqr()).sqrt();
    0.5 * ((m + r).abs() + (m - r).abs())
}

fn observables(p: &ModelParams, layout: &Layout, psi: &CVector, energy: f64, t: f64) -> ObservableRecord {
    let legs = layout.legs();
    let photon_dim = p.fock_cutoff + 1;
    let has_dipole = legs.contains(&Leg::Dipole);
    let ddim = if has_dipole { 2 } else { 1 };
    let block = ddim * photon_dim;

    let mut rho_level = [[ZERO; 2]; 2];
    let mut rho_dip = [[ZERO; 2]; 2];
    let mut photons = 0.0;
    let mut parity = 0.0;
    let mut norm_sq = 0.0;
    for l in 0..2 {
        for d in 0..ddim {
            for n in 0..photon_dim {
                let idx = l * block + d * photon_dim + n;
                let w = psi[idx].norm_sqr();
                norm_sq += w;
                photons += w * n as f64;
                let s3 = if l == 0 { 1.0 } else { -1.0 };
                parity += w * s3 * if n % 2 == 0 { 1.0 } else { -1.0 };
                for d2 in 0..ddim {
                    rho_dip[d][d2] += psi[idx] * psi[l * block + d2 * photon_dim + n].conj();
                }
            }
        }
        for l2 in 0..2 {
            let mut acc = ZERO;
            for k in 0..block {
                acc += psi[l * block + k] * psi[l2 * block + k].conj();
            }
            rho_level[l][l2] = acc;
        }
    }
    let up = rho_level[0][0].re;
    let down = rho_level[1][1].re;
    let dipole = if has_dipole {
        let scale = p.hbar * p.dipole;
        // Tr(ρ σ^r) with ρ = rho_dip
        [
            scale * 2.0 * rho_dip[1][0].re,
            scale * 2.0 * rho_dip[1][0].im,
            scale * (rho_dip[0][0].re - rho_dip[1][1].re),
        ]
    } else {
        let norm = p.field.iter().map(|x| x * x).sum::<f64>().sqrt();
        let e = if norm > 0.0 { p.field.map(|x| x / norm) } else { [0.0, 0.0, 1.0] };
        let v = f64::from(p.aligned_sign) * p.hbar * p.dipole * norm_sq;
        e.map(|x| x * v)
    };
    ObservableRecord {
        t,
        sigma3: up - down,
        // σ₁ = |+⟩⟨−| + |−⟩⟨+|: ⟨σ₁⟩ = 2 Re ρ_{−+}, ⟨σ₂⟩ = 2 Im ρ_{−+}... in (+, −) index order
        sigma_x: 2.0 * rho_level[1][0].re,
        sigma_y: 2.0 * rho_level[1][0].im,
        photons,
        dipole,
        populations: [up, down],
        norm: norm_sq.sqrt(),
        energy,
        excitation: up + photons,
        parity,
    }
}

/// Observables along a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub records: Vec<ObservableRecord>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.t).collect()
    }

    pub fn series(&self, f: impl Fn(&ObservableRecord) -> f64) -> Vec<f64> {
        self.records.iter().map(f).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(ObservableRecord::CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    /// Sup-norm distance between the level, photon and dipole curves of two
    /// trajectories on the same grid.
    pub fn max_deviation(&self, other: &Trajectory) -> f64 {
        self.records
            .iter()
            .zip(&other.records)
            .map(|(a, b)| {
                let diffs = [
                    a.sigma3 - b.sigma3,
                    a.sigma_x - b.sigma_x,
                    a.sigma_y - b.sigma_y,
                    a.photons - b.photons,
                    a.dipole[0] - b.dipole[0],
                    a.dipole[1] - b.dipole[1],
                    a.dipole[2] - b.dipole[2],
                ];
                diffs.iter().map(|x| x.abs()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }
}

fn check_grid(times: &[f64]) -> Result<()> {
    if times.windows(2).all(|w| w[0] < w[1]) && times.iter().all(|t| t.is_finite()) {
        Ok(())
    } else {
        Err(Error::TimeGrid)
    }
}

/// Evenly spaced grid `0, dt, …, t_max` with `samples` points.
pub fn uniform_grid(t_max: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect()
}

/// `ψ(t) = exp(−iHt/ħ) ψ0` sampled on `times`.
pub fn evolve(h: &HamiltonianBundle, psi0: &StateVector, times: &[f64]) -> Result<Trajectory> {
    check_grid(times)?;
    let prop = Propagator::new(h)?;
    evolve_with(&prop, &h.params, psi0, times)
}

/// Like [`evolve`], reusing a propagator.
pub fn evolve_with(prop: &Propagator, p: &ModelParams, psi0: &StateVector, times: &[f64]) -> Result<Trajectory> {
    check_grid(times)?;
    let coeffs = prop.project(psi0)?;
    let energy: f64 = coeffs.iter().zip(&prop.energies).map(|(c, e)| c.norm_sqr() * e).sum();
    let records = times
        .iter()
        .map(|&t| observables(p, &prop.layout, &prop.evolve_coefficients(&coeffs, t), energy, t))
        .collect();
    Ok(Trajectory { records })
}

/// Final state of [`evolve`] at time `t`.
pub fn evolve_state(h: &HamiltonianBundle, psi0: &StateVector, t: f64) -> Result<StateVector> {
    Propagator::new(h)?.evolve(psi0, t)
}

/// One segment of a piecewise-constant field schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSegment {
    pub duration: f64,
    pub field: [f64; 3],
}

/// Evolution with `𝓔` constant on each segment; `samples` points per segment
/// (the first point of each later segment coincides with the previous end and is skipped).
pub fn evolve_schedule(
    base: &ModelParams,
    kind: crate::hamiltonian::HamiltonianKind,
    segments: &[FieldSegment],
    psi0: &StateVector,
    samples: usize,
) -> Result<Trajectory> {
    let mut records = Vec::new();
    let mut psi = psi0.clone();
    let mut t0 = 0.0;
    for (k, seg) in segments.iter().enumerate() {
        if !(seg.duration > 0.0) {
            return Err(Error::TimeGrid);
        }
        let p = ModelParams { field: seg.field, ..base.clone() };
        let h = crate::hamiltonian::build(&p, kind)?;
        let prop = Propagator::new(&h)?;
        let grid = uniform_grid(seg.duration, samples);
        let traj = evolve_with(&prop, &p, &psi, &grid)?;
        let skip = usize::from(k > 0);
        records.extend(traj.records.into_iter().skip(skip).map(|mut r| {
            r.t += t0;
            r
        }));
        psi = prop.evolve(&psi, seg.duration)?;
        t0 += seg.duration;
    }
    Ok(Trajectory { records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build, build_jaynes_cummings, build_nonrel_rabi, HamiltonianKind};

    fn params(n: usize) -> ModelParams {
        ModelParams { fock_cutoff: n, ..Default::default() }.with_coupling(0.1)
    }

    #[test]
    fn eigenstate_populations_are_constant() {
        let p = ModelParams { dipole: 0.0, fock_cutoff: 4, ..Default::default() };
        let h = build_nonrel_rabi(&p).unwrap();
        let psi = product_state(&p, [ZERO, ONE], FieldState::Fock(2)).unwrap();
        let traj = evolve(&h, &psi, &uniform_grid(50.0, 101)).unwrap();
        for r in &traj.records {
            assert!((r.populations[1] - 1.0).abs() < 1e-14);
            assert!((r.photons - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn vacuum_rabi_cosine() {
        let g = 0.1;
        for form in [CouplingForm::FullDipole, CouplingForm::ScalarAligned] {
            let p = ModelParams { coupling_form: form, fock_cutoff: 3, ..params(3) };
            let h = build_jaynes_cummings(&p, false).unwrap();
            let psi = excited_state(&p, FieldState::Fock(0)).unwrap();
            let period = std::f64::consts::PI / g;
            let traj = evolve(&h, &psi, &uniform_grid(5.0 * period, 2001)).unwrap();
            let worst = traj
                .records
                .iter()
                .map(|r| (r.sigma3 - (2.0 * g * r.t).cos()).abs())
                .fold(0.0, f64::max);
            assert!(worst < 1e-9, "{form:?}: {worst}");
        }
    }

    #[test]
    fn full_dipole_matches_scalar_aligned() {
        for sign in [1i8, -1] {
            let base = ModelParams { fock_cutoff: 10, aligned_sign: sign, energy_offset: crate::hamiltonian::EnergyOffset::RestMass, ..params(10) };
            let full = ModelParams { coupling_form: CouplingForm::FullDipole, ..base.clone() };
            let red = ModelParams { coupling_form: CouplingForm::ScalarAligned, ..base };
            let grid = uniform_grid(60.0, 301);
            let field = FieldState::Coherent(c(1.0, 0.5));
            let run = |p: &ModelParams| {
                let h = build(p, HamiltonianKind::RelativisticRabi).unwrap();
                evolve(&h, &excited_state(p, field).unwrap(), &grid).unwrap()
            };
            let (a, b) = (run(&full), run(&red));
            for (x, y) in a.records.iter().zip(&b.records) {
                assert!((x.sigma3 - y.sigma3).abs() < 1e-10, "{sign} {} {} {}", x.t, x.sigma3, y.sigma3);
                assert!((x.photons - y.photons).abs() < 1e-10);
                assert!((x.sigma_x - y.sigma_x).abs() < 1e-10);
                for r in 0..3 {
                    assert!((x.dipole[r] - y.dipole[r]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn conserved_quantities() {
        let p = ModelParams { fock_cutoff: 15, field: [0.2, 0.1, 1.0], ..params(15) }.with_coupling(0.2);
        let psi = excited_state(&p, FieldState::Coherent(c(1.2, 0.0))).unwrap();
        let grid = uniform_grid(100.0, 1001);
        let rabi = evolve(&build_nonrel_rabi(&p).unwrap(), &psi, &grid).unwrap();
        let jc = evolve(&build_jaynes_cummings(&p, false).unwrap(), &psi, &grid).unwrap();
        let spread = |t: &Trajectory, f: fn(&ObservableRecord) -> f64| {
            let v = t.series(f);
            v.iter().fold(f64::MIN, |a, &b| a.max(b)) - v.iter().fold(f64::MAX, |a, &b| a.min(b))
        };
        assert!(spread(&rabi, |r| r.parity) < 1e-11);
        assert!(spread(&jc, |r| r.excitation) < 1e-11);
        for t in [&rabi, &jc] {
            assert!(t.records.iter().all(|r| (r.norm - 1.0).abs() < 1e-12));
        }
        // energy from a direct ⟨ψ(t)|H|ψ(t)⟩ at the last instant
        let h = build_nonrel_rabi(&p).unwrap();
        let last = evolve_state(&h, &psi, 100.0).unwrap();
        let e = linalg::expectation(h.h.matrix(), &last.data).re;
        assert!((e - rabi.records[0].energy).abs() < 1e-11 * e.abs());
    }

    #[test]
    fn time_reversal() {
        let p = params(8);
        let h = build_nonrel_rabi(&p).unwrap();
        let psi = excited_state(&p, FieldState::Coherent(c(0.5, -0.3))).unwrap();
        let prop = Propagator::new(&h).unwrap();
        let back = prop.evolve(&prop.evolve(&psi, 37.0).unwrap(), -37.0).unwrap();
        assert!((back.data - psi.data).norm() < 1e-11);
    }

    #[test]
    fn rejects_bad_grids_and_layouts() {
        let p = params(4);
        let h = build_nonrel_rabi(&p).unwrap();
        let psi = excited_state(&p, FieldState::Fock(0)).unwrap();
        assert!(matches!(evolve(&h, &psi, &[0.0, 1.0, 1.0]), Err(Error::TimeGrid)));
        let other = excited_state(&params(5), FieldState::Fock(0)).unwrap();
        assert!(matches!(evolve(&h, &other, &[0.0, 1.0]), Err(Error::LayoutMismatch(_))));
        assert!(matches!(
            excited_state(&p, FieldState::Fock(9)),
            Err(Error::InsufficientCutoff { .. })
        ));
    }

    #[test]
    fn schedule_chains_segments() {
        let p = params(6);
        let psi = excited_state(&p, FieldState::Fock(0)).unwrap();
        let seg = FieldSegment { duration: 10.0, field: p.field };
        let two = evolve_schedule(&p, HamiltonianKind::JaynesCummings, &[seg, seg], &psi, 11).unwrap();
        let h = build_jaynes_cummings(&p, false).unwrap();
        let one = evolve(&h, &psi, &uniform_grid(20.0, 21)).unwrap();
        assert_eq!(two.records.len(), 21);
        for (a, b) in two.records.iter().zip(&one.records) {
            assert!((a.t - b.t).abs() < 1e-12);
            assert!((a.sigma3 - b.sigma3).abs() < 1e-11);
        }
        // switching the field off freezes the level populations
        let off = FieldSegment { duration: 10.0, field: [0.0; 3] };
        let frozen = evolve_schedule(&p, HamiltonianKind::JaynesCummings, &[seg, off], &psi, 11).unwrap();
        let tail = &frozen.records[10..];
        assert!(tail.iter().all(|r| (r.sigma3 - tail[0].sigma3).abs() < 1e-12));
    }

    #[test]
    fn trace_distance_of_pure_states() {
        let up = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
        let down = CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]);
        let plus = CMatrix::from_element(2, 2, real(0.5));
        assert!((trace_distance_2x2(&up, &down) - 1.0).abs() < 1e-15);
        assert!((trace_distance_2x2(&up, &plus) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(trace_distance_2x2(&up, &up), 0.0);
    }

    #[test]
    fn csv_shape() {
        let p = params(2);
        let h = build_nonrel_rabi(&p).unwrap();
        let psi = excited_state(&p, FieldState::Fock(0)).unwrap();
        let csv = evolve(&h, &psi, &[0.0, 0.5]).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
        let first: Vec<f64> = lines[1].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(first[0], 0.0);
        assert!((first[1] - 1.0).abs() < 1e-15 && first[4].abs() < 1e-15);
        assert!(lines[2].starts_with("0.5,"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn evolution_preserves_norm_energy_and_symmetry(
                g in 0.0f64..0.4,
                detuning in -0.5f64..0.5,
                re in -1.5f64..1.5,
                im in -1.5f64..1.5,
                fx in -1.0f64..1.0,
                rotating in any::<bool>(),
                relativistic in any::<bool>(),
            ) {
                let p = ModelParams {
                    fock_cutoff: 14,
                    field: [fx, 0.2, 1.0],
                    level_frequency: 1.0 + detuning,
                    energy_offset: crate::hamiltonian::EnergyOffset::RestMass,
                    ..Default::default()
                }
                .with_nonrelativistic_link()
                .with_coupling(g);
                let kind = match (rotating, relativistic) {
                    (true, true) => HamiltonianKind::RelativisticJaynesCummings,
                    (true, false) => HamiltonianKind::JaynesCummings,
                    (false, true) => HamiltonianKind::RelativisticRabi,
                    (false, false) => HamiltonianKind::NonRelativisticRabi,
                };
                let h = build(&p, kind).unwrap();
                let psi = excited_state(&p, FieldState::Coherent(c(re, im))).unwrap();
                let times = uniform_grid(200.0, 1001);
                let traj = evolve(&h, &psi, &times).unwrap();
                let conserved = |r: &ObservableRecord| if rotating { r.excitation } else { r.parity };
                let first = conserved(&traj.records[0]);
                for r in &traj.records {
                    prop_assert!((r.norm - 1.0).abs() <= 1e-12);
                    prop_assert!((conserved(r) - first).abs() <= 1e-11 * first.abs().max(1.0));
                }
                let last = Propagator::new(&h).unwrap().evolve(&psi, 200.0).unwrap();
                let e0 = linalg::expectation(h.h.matrix(), &psi.data).re;
                let e1 = linalg::expectation(h.h.matrix(), &last.data).re;
                prop_assert!((e1 - e0).abs() <= 1e-11 * e0.abs().max(1.0));
            }
        }
    }
}
