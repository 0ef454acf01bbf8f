use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::{FaultInjection, RunConfig};
use crate::error::Result;
use crate::grassmann::{dirac_bracket, AtomAlgebra, GrassmannElement};
use crate::hamiltonian::{self, uncoupled_spectrum, HamiltonianKind, ModelOperators, ModelParams};
use crate::kinematics::{inverse_tetrad, wigner_tetrad, RapidityVector, Signature, Tetrad};
use crate::linalg::{self, c, CMatrix, ONE, ZERO};
use crate::poincare::{check_many, random_points};
use crate::quantize::{level_pauli, QuantizationMap};
use crate::Complex64;

/// One verified relation: the largest residual seen and its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub suite: &'static str,
    pub relation: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl RelationCheck {
    fn new(suite: &'static str, relation: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { suite, relation: relation.into(), residual, tolerance, passed: residual <= tolerance }
    }
}

fn numeric_residual(e: &GrassmannElement, expected: Complex64) -> f64 {
    (e.body() - expected).norm().max(e.soul().max_abs_coefficient())
}

/// Seeded rapidities with `|h| ≤ radius`.
pub fn random_rapidities(seed: u64, n: usize, radius: f64) -> Vec<RapidityVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let h: [f64; 3] = std::array::from_fn(|_| rng.random_range(-radius..=radius));
        if h.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
            out.push(RapidityVector(h));
        }
    }
    out
}

pub fn grassmann_suite(cfg: &RunConfig, seed: u64, scale: f64) -> Result<Vec<RelationCheck>> {
    let tol = cfg.tol_grassmann * scale;
    let atom = AtomAlgebra::new(cfg.signature);
    let spec = atom.spec();
    let chi = atom.second_class_constraints();
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let b = dirac_bracket(&atom.xi(mu), &atom.xi(nu), &chi, spec)?;
            worst = worst.max(numeric_residual(&b, c(0.0, -cfg.signature.eta(mu, nu))));
        }
    }
    out.push(RelationCheck::new("grassmann", "{xi^mu, xi^nu}* = -i eta^{mu nu}", worst, tol));

    let pairs = [
        ("{alpha, alpha*}* = -i", atom.alpha(), atom.alpha_star(), c(0.0, -1.0)),
        ("{beta, beta*}* = -i", atom.beta(), atom.beta_star(), c(0.0, -1.0)),
        ("{alpha, beta*}* = 0", atom.alpha(), atom.beta_star(), ZERO),
        ("{alpha, alpha}* = 0", atom.alpha(), atom.alpha(), ZERO),
    ];
    for (name, a, b, want) in pairs {
        out.push(RelationCheck::new("grassmann", name, numeric_residual(&dirac_bracket(&a, &b, &chi, spec)?, want), tol));
    }

    let mut worst: f64 = 0.0;
    for g in 0..atom.table().len() {
        let gen = GrassmannElement::generator(atom.table(), g);
        for k in &chi {
            worst = worst.max(dirac_bracket(k, &gen, &chi, spec)?.max_abs_coefficient());
        }
    }
    out.push(RelationCheck::new("grassmann", "{chi, g}* = 0 for every generator", worst, tol));

    // transverse sector; residuals relative to the tetrad scale 1 + |h|²
    let mut worst_perp: f64 = 0.0;
    let mut worst_spin: f64 = 0.0;
    for h in random_rapidities(seed, 3, 2.0) {
        let phi = atom.rest_frame_constraints(&h);
        let perp = atom.xi_perp(&h)?;
        let weight = 1.0 + h.norm_sq();
        for r in 0..3 {
            for s in 0..3 {
                let want = if r == s { c(0.0, 1.0) } else { ZERO };
                let b = dirac_bracket(&perp[r], &perp[s], &phi, spec)?;
                worst_perp = worst_perp.max(numeric_residual(&b, want) / weight);
            }
        }
        let spin = atom.spin(&perp);
        for r in 0..3 {
            let (s, u) = ((r + 1) % 3, (r + 2) % 3);
            let b = dirac_bracket(&spin[r], &spin[s], &phi, spec)?;
            worst_spin = worst_spin.max((&b + &spin[u]).max_abs_coefficient() / (weight * weight));
        }
    }
    out.push(RelationCheck::new("grassmann", "{xi_perp^r, xi_perp^s}* = i delta^{rs}", worst_perp, tol));
    out.push(RelationCheck::new("grassmann", "{S^r, S^s}* = -eps^{rsu} S^u", worst_spin, tol));
    Ok(out)
}

pub fn tetrad_suite(cfg: &RunConfig, seed: u64, scale: f64) -> Result<Vec<RelationCheck>> {
    let tol = cfg.tol_tetrad * scale;
    let sgn: Signature = cfg.signature;
    let (mut ortho, mut column, mut inverse, mut det): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for h in random_rapidities(seed.wrapping_add(1), cfg.tetrad_points, 10.0) {
        let mut t: Tetrad = wigner_tetrad(&h, sgn)?;
        if cfg.fault_injection == Some(FaultInjection::Tetrad) {
            t.m[1][1] *= 1.0 + 1e-6;
        }
        ortho = ortho.max(t.orthonormality_residual());
        let u = h.four_velocity(sgn).components;
        column = column.max((0..4).map(|mu| (t.m[mu][0] - u[mu]).abs()).fold(0.0, f64::max));
        let inv = inverse_tetrad(&t);
        for a in 0..4 {
            for b in 0..4 {
                let prod: f64 = (0..4).map(|mu| inv.m[a][mu] * t.m[mu][b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                inverse = inverse.max((prod - want).abs());
            }
        }
        det = det.max((t.determinant() - 1.0).abs());
    }
    Ok(vec![
        RelationCheck::new("tetrad", "orthonormality eps_A . eta . eps_B = eta_AB", ortho, tol),
        RelationCheck::new("tetrad", "timelike column eps^mu_tau = h^mu", column, tol),
        RelationCheck::new("tetrad", "inverse tetrad", inverse, tol),
        // det involves products of four entries of size up to γ
        RelationCheck::new("tetrad", "det = 1", det, tol * 1e3),
    ])
}

pub fn poincare_suite(cfg: &RunConfig, seed: u64, scale: f64) -> Vec<RelationCheck> {
    let tol = cfg.tol_poincare * scale;
    let report = check_many(&random_points(seed.wrapping_add(2), cfg.points), tol);
    let mut worst: BTreeMap<String, f64> = BTreeMap::new();
    for r in &report.records {
        let e = worst.entry(r.relation.clone()).or_insert(0.0);
        *e = e.max(r.residual);
    }
    worst.into_iter().map(|(rel, res)| RelationCheck::new("poincare", rel, res, tol)).collect()
}

pub fn quantize_suite(cfg: &RunConfig, scale: f64) -> Result<Vec<RelationCheck>> {
    let tol = cfg.tol_quantize * scale;
    let q = QuantizationMap::new(cfg.hbar)?;
    let mut out = Vec::new();
    let (_, _, constraint) = q.level_number_and_constraint();
    let kernel_dim = 4 - linalg::rank(constraint.matrix(), 1e-12);
    out.push(RelationCheck::new("quantize", "dim ker(b'b - a'a) = 2", (kernel_dim as f64 - 2.0).abs(), 0.0));
    let (plus, minus) = QuantizationMap::physical_states();
    let span = (constraint.matrix() * &plus).norm().max((constraint.matrix() * &minus).norm());
    out.push(RelationCheck::new("quantize", "kernel spanned by Phi(+), Phi(-)", span, tol));

    let sector = q.physical_projector_and_c();
    let (_, sp, sm) = level_pauli();
    out.push(RelationCheck::new("quantize", "c = sigma_-", linalg::max_abs(&(sector.c.matrix() - sm.matrix())), tol));
    out.push(RelationCheck::new("quantize", "c' = sigma_+", linalg::max_abs(&(sector.c_dag.matrix() - sp.matrix())), tol));
    let number = sector.c_dag.mul(&sector.c)?;
    let upper = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
    out.push(RelationCheck::new("quantize", "c'c = |Phi(+)><Phi(+)|", linalg::max_abs(&(number.matrix() - upper)), tol));
    let anti = sector.c.anticommutator(&sector.c_dag)?;
    out.push(RelationCheck::new(
        "quantize",
        "[c, c']_+ = 1",
        linalg::max_abs(&(anti.matrix() - CMatrix::identity(2, 2))),
        tol,
    ));

    let d = 0.37;
    let dip = q.dipole_operator(d);
    let paulis = crate::quantize::pauli();
    let mut worst: f64 = 0.0;
    for r in 0..3 {
        worst = worst.max(linalg::max_abs(&(dip[r].matrix() - paulis[r].scale(cfg.hbar * d))));
    }
    out.push(RelationCheck::new("quantize", "d^r = hbar d sigma^r", worst, tol * cfg.hbar.max(1.0)));
    Ok(out)
}

pub fn hamiltonian_suite(cfg: &RunConfig, scale: f64) -> Result<Vec<RelationCheck>> {
    let tol = cfg.tol_hamiltonian * scale;
    let p = cfg.params()?;
    let ops = ModelOperators::new(&p)?;
    let kinds = [
        HamiltonianKind::RelativisticRabi,
        HamiltonianKind::NonRelativisticRabi,
        HamiltonianKind::RelativisticJaynesCummings,
        HamiltonianKind::JaynesCummings,
    ];
    let mut out = Vec::new();
    for kind in kinds {
        let h = hamiltonian::build(&p, kind)?;
        let name = serde_json::to_string(&kind)?;
        out.push(RelationCheck::new(
            "hamiltonian",
            format!("hermiticity {}", name.trim_matches('"')),
            h.relative_hermiticity_defect(),
            tol,
        ));
        let conserved = if kind.is_rotating_wave() { ops.excitation() } else { ops.parity() };
        let label = if kind.is_rotating_wave() { "[H, c'c + n] = 0" } else { "[H, sigma3 (-1)^n] = 0" };
        let scale_h = linalg::norm(h.h.matrix()).max(1.0);
        out.push(RelationCheck::new(
            "hamiltonian",
            format!("{label} {}", name.trim_matches('"')),
            h.h.commutator(&conserved)?.norm() / scale_h,
            tol,
        ));
        let free = ModelParams { dipole: 0.0, ..p.clone() };
        let vals = linalg::eigvalsh(hamiltonian::build(&free, kind)?.h.matrix());
        let want = uncoupled_spectrum(&free, kind)?;
        let dev = vals
            .iter()
            .zip(&want)
            .map(|(v, e)| (v - e).abs() / e.abs().max(1.0))
            .fold(0.0, f64::max);
        out.push(RelationCheck::new("hamiltonian", format!("d = 0 spectrum {}", name.trim_matches('"')), dev, tol));
    }
    Ok(out)
}
