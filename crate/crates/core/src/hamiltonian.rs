//! Relativistic and non-relativistic Rabi and Jaynes-Cummings Hamiltonians.
//!
//! All builders return energies. The relativistic atom energy is
//! `c√(m²c² + 2mcΩσ₃ + κ²)`, evaluated branch-wise on the `σ₃` eigenspaces
//! because `κ` is a c-number sector label. See [`crate::units`] for the
//! dimensional bookkeeping of `Ω` and `Ω̃`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{AtomAlgebra, GrassmannElement};
use crate::kinematics::RapidityVector;
use crate::linalg::{real, CMatrix};
use crate::quantize::{
    fock_operators, level_pauli, tensor_lift, Layout, Leg, OperatorMatrix, QuantizationMap,
};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingForm {
    /// Dipole kept as an explicit Pauli leg, `d̂ = ħ d σ`.
    #[default]
    FullDipole,
    /// `d̂·𝓔` replaced by its eigenvalue `±ħ d |𝓔|`; the dipole leg is dropped.
    ScalarAligned,
}

/// Constant subtracted from the relativistic atom energy on both branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnergyOffset {
    #[default]
    None,
    /// `m c²`.
    RestMass,
    /// `c √(m²c² + κ²)`.
    RestEnergy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelParams {
    /// `m`.
    pub mass: f64,
    /// `c`.
    pub c: f64,
    /// `ħ`.
    pub hbar: f64,
    /// `Ω`, momentum units.
    pub level_splitting: f64,
    /// `Ω̃`, angular frequency of the non-relativistic level gap.
    pub level_frequency: f64,
    /// `ω`, mode angular frequency.
    pub mode_frequency: f64,
    /// `d`.
    pub dipole: f64,
    /// `κ`, atom momentum.
    pub kappa: [f64; 3],
    /// `𝓔`, single-mode field amplitude.
    pub field: [f64; 3],
    /// Photon cutoff `N`.
    pub fock_cutoff: usize,
    pub coupling_form: CouplingForm,
    /// Eigenvalue sign of `d̂·𝓔` in scalar-aligned mode.
    pub aligned_sign: i8,
    /// Unit propagation direction `k̂` of the mode.
    pub mode_direction: [f64; 3],
    pub energy_offset: EnergyOffset,
}

impl Default for ModelParams {
    fn default() -> Self {
        let c = 100.0;
        let level_frequency = 1.0;
        let coupling = 0.05;
        Self {
            mass: 1.0,
            c,
            hbar: 1.0,
            level_splitting: level_frequency / (2.0 * c),
            level_frequency,
            mode_frequency: 1.0,
            dipole: coupling / c,
            kappa: [0.0; 3],
            field: [0.0, 0.0, 1.0],
            fock_cutoff: 20,
            coupling_form: CouplingForm::FullDipole,
            aligned_sign: 1,
            mode_direction: [1.0, 0.0, 0.0],
            energy_offset: EnergyOffset::None,
        }
    }
}

fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mass", self.mass),
            ("c", self.c),
            ("hbar", self.hbar),
            ("mode_frequency", self.mode_frequency),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be positive and finite, got {v}"),
                });
            }
        }
        let finite = [
            ("level_splitting", self.level_splitting),
            ("level_frequency", self.level_frequency),
            ("dipole", self.dipole),
        ];
        for (name, v) in finite {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, reason: format!("must be finite, got {v}") });
            }
        }
        for (name, v) in [("kappa", self.kappa), ("field", self.field), ("mode_direction", self.mode_direction)] {
            if !v.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidParameter { name, reason: "components must be finite".into() });
            }
        }
        if self.fock_cutoff < 1 {
            return Err(Error::InvalidParameter { name: "fock_cutoff", reason: "must be at least 1".into() });
        }
        if self.aligned_sign != 1 && self.aligned_sign != -1 {
            return Err(Error::InvalidParameter {
                name: "aligned_sign",
                reason: format!("must be +1 or -1, got {}", self.aligned_sign),
            });
        }
        if (norm3(&self.mode_direction) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "mode_direction",
                reason: "must be a unit vector".into(),
            });
        }
        Ok(())
    }

    /// `g = c ħ d |𝓔|`.
    pub fn coupling(&self) -> f64 {
        self.c * self.hbar * self.dipole * norm3(&self.field)
    }

    /// Set `d` so that [`Self::coupling`] equals `g`; requires a nonzero field.
    pub fn with_coupling(mut self, g: f64) -> Self {
        self.dipole = g / (self.c * self.hbar * norm3(&self.field));
        self
    }

    /// Link `Ω = ħΩ̃/(2c)`, under which the relativistic gap tends to `ħΩ̃`.
    pub fn with_nonrelativistic_link(mut self) -> Self {
        self.level_splitting = self.hbar * self.level_frequency / (2.0 * self.c);
        self
    }

    /// Link `Ω = mΩ̃`.
    pub fn with_mass_link(mut self) -> Self {
        self.level_splitting = self.mass * self.level_frequency;
        self
    }

    pub fn kappa_sq(&self) -> f64 {
        self.kappa.iter().map(|x| x * x).sum()
    }

    pub fn layout(&self) -> Layout {
        let legs = match self.coupling_form {
            CouplingForm::FullDipole => vec![Leg::Level, Leg::Dipole, Leg::Fock(self.fock_cutoff)],
            CouplingForm::ScalarAligned => vec![Leg::Level, Leg::Fock(self.fock_cutoff)],
        };
        Layout::new(legs).expect("distinct legs")
    }

    /// Atom energies on the `σ₃ = +1` and `σ₃ = −1` branches, offset subtracted.
    pub fn relativistic_branch_energies(&self) -> Result<[f64; 2]> {
        self.validate()?;
        let (m, c) = (self.mass, self.c);
        let mc = m * c;
        let a = mc * mc + self.kappa_sq();
        let b = 2.0 * mc * self.level_splitting;
        let mut out = [0.0; 2];
        for (k, (sign, branch)) in [(1.0, "sigma3=+1"), (-1.0, "sigma3=-1")].into_iter().enumerate() {
            let rad = a + sign * b;
            if !(rad > 0.0) {
                return Err(Error::NonPositiveRadicand { branch, value: rad });
            }
            let root = rad.sqrt();
            // differences of square roots written as quotients to avoid cancellation
            out[k] = match self.energy_offset {
                EnergyOffset::None => c * root,
                EnergyOffset::RestMass => c * (self.kappa_sq() + sign * b) / (root + mc),
                EnergyOffset::RestEnergy => c * sign * b / (root + a.sqrt()),
            };
        }
        Ok(out)
    }

    /// `c · mc/√(m²c² + κ²)`, the prefactor of `d̂·𝓔` in the relativistic coupling.
    pub fn relativistic_coupling_factor(&self) -> f64 {
        let mc = self.mass * self.c;
        self.c * mc / (mc * mc + self.kappa_sq()).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HamiltonianKind {
    RelativisticRabi,
    NonRelativisticRabi,
    RelativisticJaynesCummings,
    JaynesCummings,
}

impl HamiltonianKind {
    pub fn is_relativistic(self) -> bool {
        matches!(self, HamiltonianKind::RelativisticRabi | HamiltonianKind::RelativisticJaynesCummings)
    }

    pub fn is_rotating_wave(self) -> bool {
        matches!(self, HamiltonianKind::JaynesCummings | HamiltonianKind::RelativisticJaynesCummings)
    }
}

/// Operators of the model lifted onto its full layout.
#[derive(Debug, Clone)]
pub struct ModelOperators {
    pub layout: Layout,
    pub identity: OperatorMatrix,
    pub sigma3: OperatorMatrix,
    pub sigma_plus: OperatorMatrix,
    pub sigma_minus: OperatorMatrix,
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub number: OperatorMatrix,
    /// `d̂^r` on the dipole leg; absent in scalar-aligned mode.
    pub dipole: Option<[OperatorMatrix; 3]>,
}

impl ModelOperators {
    pub fn new(p: &ModelParams) -> Result<Self> {
        p.validate()?;
        let layout = p.layout();
        let lift = |op: &OperatorMatrix| tensor_lift(op, &layout);
        let (s3, sp, sm) = level_pauli();
        let (a, ad, n) = fock_operators(p.fock_cutoff)?;
        let dipole = match p.coupling_form {
            CouplingForm::FullDipole => {
                let d = QuantizationMap::new(p.hbar)?.dipole_operator(p.dipole);
                Some([lift(&d[0])?, lift(&d[1])?, lift(&d[2])?])
            }
            CouplingForm::ScalarAligned => None,
        };
        Ok(Self {
            identity: OperatorMatrix::identity(&layout),
            sigma3: lift(&s3)?,
            sigma_plus: lift(&sp)?,
            sigma_minus: lift(&sm)?,
            a: lift(&a)?,
            a_dag: lift(&ad)?,
            number: lift(&n)?,
            dipole,
            layout,
        })
    }

    /// `d̂·𝓔`, or `±ħd|𝓔|·1` in scalar-aligned mode.
    pub fn dipole_field(&self, p: &ModelParams) -> OperatorMatrix {
        match &self.dipole {
            Some(d) => (0..3).fold(OperatorMatrix::zeros(&self.layout), |acc, r| {
                acc.add(&d[r].scale(p.field[r])).expect("same layout")
            }),
            None => self
                .identity
                .scale(f64::from(p.aligned_sign) * p.hbar * p.dipole * norm3(&p.field)),
        }
    }

    /// `σ₃ (−1)^n̂`.
    pub fn parity(&self) -> OperatorMatrix {
        let d = self.number.dim();
        let sign = CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                real(if (self.number.matrix()[(i, i)].re.round() as i64) % 2 == 0 { 1.0 } else { -1.0 })
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let sign = OperatorMatrix::new(sign, self.layout.clone()).expect("same layout");
        self.sigma3.mul(&sign).expect("same layout")
    }

    /// `ĉ†ĉ + n̂`, with `ĉ†ĉ = σ₊σ₋`.
    pub fn excitation(&self) -> OperatorMatrix {
        self.sigma_plus
            .mul(&self.sigma_minus)
            .and_then(|x| x.add(&self.number))
            .expect("same layout")
    }

    fn field_energy(&self, p: &ModelParams) -> OperatorMatrix {
        self.number
            .add(&self.identity.scale(0.5))
            .expect("same layout")
            .scale(p.hbar * p.mode_frequency)
    }

    fn interaction(&self, p: &ModelParams, rotating: bool, prefactor: f64) -> OperatorMatrix {
        let df = self.dipole_field(p).scale(prefactor);
        let level_field = if rotating {
            let up = self.sigma_plus.mul(&self.a).expect("same layout");
            let down = self.sigma_minus.mul(&self.a_dag).expect("same layout");
            up.add(&down)
        } else {
            let x = self.sigma_plus.add(&self.sigma_minus).expect("same layout");
            let q = self.a.add(&self.a_dag).expect("same layout");
            x.mul(&q)
        }
        .expect("same layout");
        df.mul(&level_field).expect("same layout")
    }
}

#[derive(Debug, Clone)]
pub struct HamiltonianBundle {
    pub h: OperatorMatrix,
    pub kind: HamiltonianKind,
    pub params: ModelParams,
}

impl HamiltonianBundle {
    pub fn layout(&self) -> &Layout {
        self.h.layout()
    }

    /// `‖H − H†‖ / ‖H‖` (0 for the zero operator).
    pub fn relative_hermiticity_defect(&self) -> f64 {
        let n = self.h.norm();
        if n == 0.0 {
            0.0
        } else {
            self.h.hermiticity_defect() / n
        }
    }
}

fn relativistic(p: &ModelParams, rotating: bool) -> Result<HamiltonianBundle> {
    let ops = ModelOperators::new(p)?;
    let [e_plus, e_minus] = p.relativistic_branch_energies()?;
    // diagonal on σ₃ eigenspaces: (e₊ + e₋)/2 + (e₊ − e₋)/2 σ₃
    let atom = ops
        .identity
        .scale(0.5 * (e_plus + e_minus))
        .add(&ops.sigma3.scale(0.5 * (e_plus - e_minus)))?;
    let h = atom
        .add(&ops.field_energy(p))?
        .add(&ops.interaction(p, rotating, p.relativistic_coupling_factor()))?;
    Ok(HamiltonianBundle {
        h,
        kind: if rotating {
            HamiltonianKind::RelativisticJaynesCummings
        } else {
            HamiltonianKind::RelativisticRabi
        },
        params: p.clone(),
    })
}

fn nonrelativistic(p: &ModelParams, rotating: bool) -> Result<HamiltonianBundle> {
    let ops = ModelOperators::new(p)?;
    let kinetic = ops.identity.scale(p.kappa_sq() / (2.0 * p.mass));
    let level = ops.sigma3.scale(0.5 * p.hbar * p.level_frequency);
    let h = kinetic
        .add(&level)?
        .add(&ops.field_energy(p))?
        .add(&ops.interaction(p, rotating, p.c))?;
    Ok(HamiltonianBundle {
        h,
        kind: if rotating {
            HamiltonianKind::JaynesCummings
        } else {
            HamiltonianKind::NonRelativisticRabi
        },
        params: p.clone(),
    })
}

/// `c√(m²c² + 2mcΩσ₃ + κ²) + ħω(n̂ + ½) + c·mc/√(m²c²+κ²) (d̂·𝓔)(ĉ† + ĉ)(â + â†)`.
pub fn build_relativistic_rabi(p: &ModelParams) -> Result<HamiltonianBundle> {
    relativistic(p, false)
}

/// `κ²/2m + (ħ/2)Ω̃σ₃ + ħω(n̂ + ½) + c(d̂·𝓔)(σ₊ + σ₋)(â + â†)`.
pub fn build_nonrel_rabi(p: &ModelParams) -> Result<HamiltonianBundle> {
    nonrelativistic(p, false)
}

/// Rotating-wave form with interaction `(d̂·𝓔)(σ₊â + σ₋â†)` and the prefactor of
/// the relativistic or non-relativistic model.
pub fn build_jaynes_cummings(p: &ModelParams, relativistic_form: bool) -> Result<HamiltonianBundle> {
    if relativistic_form {
        relativistic(p, true)
    } else {
        nonrelativistic(p, true)
    }
}

pub fn build(p: &ModelParams, kind: HamiltonianKind) -> Result<HamiltonianBundle> {
    match kind {
        HamiltonianKind::RelativisticRabi => relativistic(p, false),
        HamiltonianKind::NonRelativisticRabi => nonrelativistic(p, false),
        HamiltonianKind::RelativisticJaynesCummings => relativistic(p, true),
        HamiltonianKind::JaynesCummings => nonrelativistic(p, true),
    }
}

/// Closed-form spectrum at `d = 0`, ascending: `E_σ + ħω(n + ½)` for both level
/// branches and `n = 0..=N`, each twice degenerate with the dipole leg present.
pub fn uncoupled_spectrum(p: &ModelParams, kind: HamiltonianKind) -> Result<Vec<f64>> {
    p.validate()?;
    let [up, down] = if kind.is_relativistic() {
        p.relativistic_branch_energies()?
    } else {
        let kinetic = p.kappa_sq() / (2.0 * p.mass);
        let half = 0.5 * p.hbar * p.level_frequency;
        [kinetic + half, kinetic - half]
    };
    let copies = match p.coupling_form {
        CouplingForm::FullDipole => 2,
        CouplingForm::ScalarAligned => 1,
    };
    let mut out = Vec::with_capacity(2 * copies * (p.fock_cutoff + 1));
    for level in [up, down] {
        for n in 0..=p.fock_cutoff {
            for _ in 0..copies {
                out.push(level + p.hbar * p.mode_frequency * (n as f64 + 0.5));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Pseudo-classical invariant mass (momentum units) with a single field mode:
///
/// `Mc = √(m²c² + 2mcΩ β*β + κ²) + mc/√(m²c²+κ²) (β*α + α*β) d·π + E_field`,
///
/// where `d = −i d ξ⊥ × ξ⊥` is built from the transverse dipole of direction `h`,
/// `field` is the electric field `π` at the atom and `field_energy` the mode energy.
pub fn classical_invariant_mass(
    p: &ModelParams,
    algebra: &AtomAlgebra,
    h: &RapidityVector,
    field: [f64; 3],
    field_energy: f64,
) -> Result<GrassmannElement> {
    p.validate()?;
    let table = algebra.table();
    let mc = p.mass * p.c;
    let a = mc * mc + p.kappa_sq();
    let occupation = &algebra.beta_star() * &algebra.beta();
    let radicand =
        &GrassmannElement::scalar(table, real(a)) + &occupation.scale_re(2.0 * mc * p.level_splitting);
    let xp = algebra.xi_perp(h)?;
    let mut d_dot_pi = GrassmannElement::zero(table);
    for r in 0..3 {
        let (u, v) = ((r + 1) % 3, (r + 2) % 3);
        // (ξ⊥ × ξ⊥)^r = 2 ξ^u ξ^v for the cyclic pair
        let cross = (&xp[u] * &xp[v]).scale_re(2.0);
        d_dot_pi = &d_dot_pi + &cross.scale(Complex64::new(0.0, -p.dipole * field[r]));
    }
    let coupling = (&algebra.level_bilinear() * &d_dot_pi).scale_re(mc / a.sqrt());
    Ok(&(&radicand.sqrt() + &coupling) + &GrassmannElement::scalar(table, real(field_energy)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Signature;
    use crate::linalg::{eigvalsh, norm};

    fn aligned(p: ModelParams) -> ModelParams {
        ModelParams { coupling_form: CouplingForm::ScalarAligned, ..p }
    }

    #[test]
    fn defaults_are_valid() {
        let p = ModelParams::default();
        p.validate().unwrap();
        assert!((p.coupling() - 0.05).abs() < 1e-15);
        assert_eq!(p.layout().dim(), 2 * 2 * 21);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let bad = [
            ModelParams { mass: 0.0, ..Default::default() },
            ModelParams { fock_cutoff: 0, ..Default::default() },
            ModelParams { aligned_sign: 0, ..Default::default() },
            ModelParams { mode_direction: [1.0, 1.0, 0.0], ..Default::default() },
            ModelParams { kappa: [f64::NAN, 0.0, 0.0], ..Default::default() },
        ];
        for p in bad {
            assert!(build_nonrel_rabi(&p).is_err());
        }
    }

    #[test]
    fn radicand_violation_names_branch() {
        let p = ModelParams { level_splitting: -0.6, c: 1.0, ..Default::default() };
        match build_relativistic_rabi(&p) {
            Err(Error::NonPositiveRadicand { branch, .. }) => assert_eq!(branch, "sigma3=+1"),
            other => panic!("unexpected {other:?}"),
        }
        let p = ModelParams { level_splitting: 0.6, c: 1.0, ..Default::default() };
        assert!(matches!(
            build_relativistic_rabi(&p),
            Err(Error::NonPositiveRadicand { branch: "sigma3=-1", .. })
        ));
    }

    #[test]
    fn builders_are_hermitian() {
        for form in [CouplingForm::FullDipole, CouplingForm::ScalarAligned] {
            let p = ModelParams {
                coupling_form: form,
                kappa: [0.3, -0.2, 0.5],
                field: [0.2, 0.4, 1.0],
                fock_cutoff: 8,
                ..Default::default()
            };
            for kind in [
                HamiltonianKind::RelativisticRabi,
                HamiltonianKind::NonRelativisticRabi,
                HamiltonianKind::RelativisticJaynesCummings,
                HamiltonianKind::JaynesCummings,
            ] {
                let h = build(&p, kind).unwrap();
                assert!(h.relative_hermiticity_defect() <= 1e-13, "{kind:?}");
                assert_eq!(h.kind, kind);
            }
        }
    }

    #[test]
    fn free_relativistic_spectrum() {
        let p = aligned(ModelParams {
            level_splitting: 0.0,
            dipole: 0.0,
            kappa: [0.4, 0.0, 0.0],
            c: 3.0,
            fock_cutoff: 4,
            ..Default::default()
        });
        let h = build_relativistic_rabi(&p).unwrap();
        let vals = eigvalsh(h.h.matrix());
        let rest = 3.0 * (9.0f64 + 0.16).sqrt();
        for n in 0..=4 {
            let e = rest + n as f64 + 0.5;
            assert_eq!(vals.iter().filter(|v| (*v - e).abs() < 1e-12).count(), 2);
        }
    }

    #[test]
    fn relativistic_gap_closed_form() {
        let p = aligned(ModelParams { dipole: 0.0, c: 2.0, level_splitting: 0.3, kappa: [0.0, 0.5, 0.0], ..Default::default() });
        let h = build_relativistic_rabi(&p).unwrap();
        let ops = ModelOperators::new(&p).unwrap();
        let (a, b): (f64, f64) = (4.0 + 0.25, 2.0 * 2.0 * 0.3);
        let gap = 2.0 * ((a + b).sqrt() - (a - b).sqrt());
        // ground photon state: ⟨+,0|H|+,0⟩ − ⟨−,0|H|−,0⟩
        let d = ops.layout.dim();
        let upper = 0;
        let lower = d / 2;
        let diff = h.h.matrix()[(upper, upper)] - h.h.matrix()[(lower, lower)];
        assert!((diff.re - gap).abs() < 1e-12);
    }

    #[test]
    fn offsets_are_stable_differences() {
        let p = ModelParams { c: 1e4, kappa: [0.1, 0.0, 0.0], ..Default::default() };
        let [np, nm] = p.relativistic_branch_energies().unwrap();
        let [mp, mm] = ModelParams { energy_offset: EnergyOffset::RestMass, ..p.clone() }
            .relativistic_branch_energies()
            .unwrap();
        let [rp, rm] = ModelParams { energy_offset: EnergyOffset::RestEnergy, ..p.clone() }
            .relativistic_branch_energies()
            .unwrap();
        assert!((np - mp - 1e8).abs() < 1e-6);
        assert!((nm - mm - 1e8).abs() < 1e-6);
        assert!((mp - rp - (mm - rm)).abs() < 1e-12);
        assert!(rp > 0.0 && rm < 0.0);
    }

    #[test]
    fn nonrelativistic_free_spectrum() {
        let p = aligned(ModelParams { dipole: 0.0, kappa: [0.0, 0.0, 2.0], level_frequency: 1.5, fock_cutoff: 3, ..Default::default() });
        let vals = eigvalsh(build_nonrel_rabi(&p).unwrap().h.matrix());
        let mut expected: Vec<f64> = (0..=3)
            .flat_map(|n| [2.0 + 0.75 + n as f64 + 0.5, 2.0 - 0.75 + n as f64 + 0.5])
            .collect();
        expected.sort_by(f64::total_cmp);
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetries() {
        let p = ModelParams { fock_cutoff: 12, field: [0.3, 0.0, 1.0], ..Default::default() }.with_coupling(0.2);
        let ops = ModelOperators::new(&p).unwrap();
        let rabi = build_nonrel_rabi(&p).unwrap();
        assert!(rabi.h.commutator(&ops.parity()).unwrap().norm() <= 1e-13);
        let jc = build_jaynes_cummings(&p, false).unwrap();
        assert!(jc.h.commutator(&ops.excitation()).unwrap().norm() <= 1e-13);
        let rjc = build_jaynes_cummings(&p, true).unwrap();
        assert!(rjc.h.commutator(&ops.excitation()).unwrap().norm() <= 1e-13);
        // the counter-rotating terms break excitation conservation
        assert!(rabi.h.commutator(&ops.excitation()).unwrap().norm() > 1e-3);
    }

    #[test]
    fn vacuum_rabi_splitting() {
        let g = 0.03;
        let p = aligned(ModelParams { fock_cutoff: 3, ..Default::default() }.with_coupling(g));
        let jc = build_jaynes_cummings(&p, false).unwrap();
        // block {|+,0⟩, |−,1⟩} in the layout [level, fock]
        let d = p.fock_cutoff + 1;
        let idx = [0, d + 1];
        let block = CMatrix::from_fn(2, 2, |i, j| jc.h.matrix()[(idx[i], idx[j])]);
        let vals = eigvalsh(&block);
        assert!(((vals[1] - vals[0]) - 2.0 * g).abs() < 1e-14);
    }

    #[test]
    fn zero_coupling_is_block_diagonal() {
        let p = ModelParams { dipole: 0.0, fock_cutoff: 4, ..Default::default() };
        let jc = build_jaynes_cummings(&p, false).unwrap();
        let off = jc.h.matrix() - CMatrix::from_diagonal(&jc.h.matrix().diagonal());
        assert_eq!(norm(&off), 0.0);
    }

    #[test]
    fn literal_mass_link_diverges() {
        // gap of the rest-mass-subtracted relativistic atom versus ħΩ̃
        let gap = |c: f64, link_mass: bool| {
            let p = ModelParams { c, energy_offset: EnergyOffset::RestMass, ..Default::default() };
            let p = if link_mass { p.with_mass_link() } else { p.with_nonrelativistic_link() };
            let [e1, e2] = p.relativistic_branch_energies().unwrap();
            e1 - e2
        };
        let errs: Vec<f64> = [10.0, 100.0, 1000.0].iter().map(|&c| (gap(c, true) - 1.0).abs()).collect();
        assert!(errs[0] < errs[1] && errs[1] < errs[2]);
        assert!((gap(1e4, false) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn invariant_mass_expansion() {
        let alg = AtomAlgebra::new(Signature::Plus);
        let h = RapidityVector::new([0.2, -0.1, 0.3]).unwrap();
        let p = ModelParams { c: 3.0, level_splitting: 0.4, dipole: 0.7, kappa: [0.5, 0.0, 1.0], ..Default::default() };
        let field = [0.1, -0.4, 0.9];
        let mass = classical_invariant_mass(&p, &alg, &h, field, 2.5).unwrap();
        let a = 9.0f64 + 1.25;
        assert!((mass.body() - real(a.sqrt() + 2.5)).norm() < 1e-14);
        let bb = &alg.beta_star() * &alg.beta();
        let (mask, coeff) = bb.terms().next().unwrap();
        let expect = 3.0 * 0.4 / a.sqrt() * coeff;
        assert!((mass.coefficient(mask) - expect).norm() < 1e-14);
        // no Grassmann inputs besides the numbers: body only
        let p0 = ModelParams { level_splitting: 0.0, dipole: 0.0, ..p.clone() };
        let m0 = classical_invariant_mass(&p0, &alg, &h, field, 2.5).unwrap();
        assert!(m0.soul().is_zero());
    }

    #[test]
    fn invariant_mass_dipole_term_at_rest_momentum() {
        let alg = AtomAlgebra::new(Signature::Plus);
        let h = RapidityVector::zero();
        let p = ModelParams { level_splitting: 0.0, dipole: 0.5, kappa: [0.0; 3], ..Default::default() };
        let field = [0.0, 0.0, 2.0];
        let mass = classical_invariant_mass(&p, &alg, &h, field, 0.0).unwrap();
        // d·π = −i d (ξ⊥ × ξ⊥)^3 π^3 = −2i d ξ^1 ξ^2 π^3 at h = 0, prefactor 1
        let expected = &alg.level_bilinear()
            * &(&alg.xi(1) * &alg.xi(2)).scale(Complex64::new(0.0, -2.0 * 0.5 * 2.0));
        assert!(mass.soul().approx_eq(&expected, 1e-15), "{}", mass.soul());
    }

    #[test]
    fn uncoupled_spectrum_matches_diagonalization() {
        for kind in [HamiltonianKind::RelativisticRabi, HamiltonianKind::NonRelativisticRabi] {
            let p = ModelParams { dipole: 0.0, c: 5.0, kappa: [0.2, 0.1, 0.0], fock_cutoff: 5, ..Default::default() };
            let vals = eigvalsh(build(&p, kind).unwrap().h.matrix());
            let want = uncoupled_spectrum(&p, kind).unwrap();
            assert_eq!(vals.len(), want.len());
            for (v, e) in vals.iter().zip(&want) {
                assert!((v - e).abs() < 1e-12 * e.abs().max(1.0), "{kind:?}: {v} vs {e}");
            }
        }
    }
}
