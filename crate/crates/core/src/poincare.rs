//! External Poincaré generators on Jacobi data `(z, h)` and rest spin `S`,
//! with a numerical closure checker.
//!
//! The ten generators are indexed `0..4 → P^μ` and
//! `4..10 → J^{01}, J^{02}, J^{03}, J^{12}, J^{13}, J^{23}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::grassmann::{AtomAlgebra, GrassmannElement};
use crate::kinematics::FourVector;
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub z: [f64; 3],
    pub h: [f64; 3],
    pub s: [f64; 3],
    pub mc: f64,
}

impl PhaseSpacePoint {
    pub fn new(z: [f64; 3], h: [f64; 3], s: [f64; 3], mc: f64) -> Result<Self> {
        if !z.iter().chain(&h).chain(&s).all(|x| x.is_finite()) {
            return Err(Error::NonFinite("phase-space point"));
        }
        if !(mc > 0.0) || !mc.is_finite() {
            return Err(Error::InvalidParameter {
                name: "Mc",
                reason: format!("must be positive and finite, got {mc}"),
            });
        }
        Ok(Self { z, h, s, mc })
    }

    fn coordinates(&self) -> [f64; 9] {
        let mut out = [0.0; 9];
        out[..3].copy_from_slice(&self.z);
        out[3..6].copy_from_slice(&self.h);
        out[6..].copy_from_slice(&self.s);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorLabel {
    P(usize),
    J(usize, usize),
}

pub const GENERATOR_LABELS: [GeneratorLabel; 10] = [
    GeneratorLabel::P(0),
    GeneratorLabel::P(1),
    GeneratorLabel::P(2),
    GeneratorLabel::P(3),
    GeneratorLabel::J(0, 1),
    GeneratorLabel::J(0, 2),
    GeneratorLabel::J(0, 3),
    GeneratorLabel::J(1, 2),
    GeneratorLabel::J(1, 3),
    GeneratorLabel::J(2, 3),
];

impl GeneratorLabel {
    /// Position in [`GENERATOR_LABELS`] and the sign relating it to the stored
    /// component (`J^{νμ} = −J^{μν}`). `None` for `J^{μμ}` or out-of-range indices.
    pub fn slot(self) -> Option<(usize, f64)> {
        match self {
            GeneratorLabel::P(mu) if mu < 4 => Some((mu, 1.0)),
            GeneratorLabel::J(a, b) if a < 4 && b < 4 && a != b => {
                let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
                let k = GENERATOR_LABELS
                    .iter()
                    .position(|l| *l == GeneratorLabel::J(lo, hi))
                    .expect("ordered pair is listed");
                Some((k, sign))
            }
            _ => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            GeneratorLabel::P(mu) => format!("P{mu}"),
            GeneratorLabel::J(a, b) => format!("J{a}{b}"),
        }
    }
}

/// `{G_a, G_b} = Σ_k c_k G_k` for `a < b`, as frozen from an independent
/// finite-difference fit of the realization (see the module tests).
#[rustfmt::skip]
pub const STRUCTURE_TABLE: [(usize, usize, &[(usize, f64)]); 45] = [
    (0, 1, &[]),
    (0, 2, &[]),
    (0, 3, &[]),
    (0, 4, &[(1, 1.0)]),
    (0, 5, &[(2, 1.0)]),
    (0, 6, &[(3, 1.0)]),
    (0, 7, &[]),
    (0, 8, &[]),
    (0, 9, &[]),
    (1, 2, &[]),
    (1, 3, &[]),
    (1, 4, &[(0, 1.0)]),
    (1, 5, &[]),
    (1, 6, &[]),
    (1, 7, &[(2, -1.0)]),
    (1, 8, &[(3, -1.0)]),
    (1, 9, &[]),
    (2, 3, &[]),
    (2, 4, &[]),
    (2, 5, &[(0, 1.0)]),
    (2, 6, &[]),
    (2, 7, &[(1, 1.0)]),
    (2, 8, &[]),
    (2, 9, &[(3, -1.0)]),
    (3, 4, &[]),
    (3, 5, &[]),
    (3, 6, &[(0, 1.0)]),
    (3, 7, &[]),
    (3, 8, &[(1, 1.0)]),
    (3, 9, &[(2, 1.0)]),
    (4, 5, &[(7, -1.0)]),
    (4, 6, &[(8, -1.0)]),
    (4, 7, &[(5, -1.0)]),
    (4, 8, &[(6, -1.0)]),
    (4, 9, &[]),
    (5, 6, &[(9, -1.0)]),
    (5, 7, &[(4, 1.0)]),
    (5, 8, &[]),
    (5, 9, &[(6, -1.0)]),
    (6, 7, &[]),
    (6, 8, &[(4, 1.0)]),
    (6, 9, &[(5, 1.0)]),
    (7, 8, &[(9, 1.0)]),
    (7, 9, &[(8, -1.0)]),
    (8, 9, &[(7, 1.0)]),
];

/// The ten generator values at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorSet {
    pub p: [f64; 4],
    pub j: [[f64; 4]; 4],
}

impl GeneratorSet {
    pub fn get(&self, label: GeneratorLabel) -> f64 {
        match label {
            GeneratorLabel::P(mu) => self.p[mu],
            GeneratorLabel::J(a, b) => self.j[a][b],
        }
    }

    pub fn as_array(&self) -> [f64; 10] {
        std::array::from_fn(|k| self.get(GENERATOR_LABELS[k]))
    }
}

fn levi(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || i == k {
        0.0
    } else if (i + 1) % 3 == j && (j + 1) % 3 == k {
        1.0
    } else {
        -1.0
    }
}

/// Generators in [`GENERATOR_LABELS`] order for any scalar type.
fn generators_generic<S: Scalar>(z: [S; 3], h: [S; 3], s: [S; 3], mc: f64) -> [S; 10] {
    let gamma = (S::one() + h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt();
    let mut out = [S::zero(); 10];
    out[0] = gamma.scale(mc);
    for i in 0..3 {
        out[i + 1] = h[i].scale(mc);
    }
    for i in 0..3 {
        // J^{0i} = −γ z^i − ε^{ijr} h^j S^r / (1 + γ)
        let mut spin = S::zero();
        for j in 0..3 {
            for r in 0..3 {
                let e = levi(i, j, r);
                if e != 0.0 {
                    spin = spin + (h[j] * s[r]).scale(e);
                }
            }
        }
        out[4 + i] = -(gamma * z[i]) - spin / (S::one() + gamma);
    }
    // J^{ij} = z^i h^j − z^j h^i + ε^{ijr} S^r for (1,2), (1,3), (2,3)
    for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        let r = 3 - i - j;
        out[7 + k] = z[i] * h[j] - z[j] * h[i] + s[r].scale(levi(i, j, r));
    }
    out
}

pub fn external_generators(p: &PhaseSpacePoint) -> GeneratorSet {
    let g = generators_generic(p.z, p.h, p.s, p.mc);
    let mut j = [[0.0; 4]; 4];
    for (k, label) in GENERATOR_LABELS.iter().enumerate().skip(4) {
        if let GeneratorLabel::J(a, b) = *label {
            j[a][b] = g[k];
            j[b][a] = -g[k];
        }
    }
    GeneratorSet {
        p: [g[0], g[1], g[2], g[3]],
        j,
    }
}

/// `grad[k][d]`: derivative of generator `k` along coordinate `d` of `(z, h, S)`.
fn gradients(p: &PhaseSpacePoint) -> [[f64; 9]; 10] {
    let x = p.coordinates();
    let mut grad = [[0.0; 9]; 10];
    for d in 0..9 {
        let v: [Dual; 9] =
            std::array::from_fn(|k| if k == d { Dual::variable(x[k]) } else { Dual::constant(x[k]) });
        let g = generators_generic(
            [v[0], v[1], v[2]],
            [v[3], v[4], v[5]],
            [v[6], v[7], v[8]],
            p.mc,
        );
        for k in 0..10 {
            grad[k][d] = g[k].eps;
        }
    }
    grad
}

fn bracket_from_gradients(f: &[f64; 9], g: &[f64; 9], s: &[f64; 3]) -> f64 {
    let mut out = 0.0;
    for i in 0..3 {
        out += f[i] * g[3 + i] - f[3 + i] * g[i];
    }
    for r in 0..3 {
        for t in 0..3 {
            let u = 3usize.wrapping_sub(r + t);
            if r == t || u > 2 {
                continue;
            }
            out += levi(r, t, u) * s[u] * f[6 + r] * g[6 + t];
        }
    }
    out
}

/// Canonical bracket with `{z^i, h^j} = δ^{ij}` and `{S^r, S^s} = ε^{rsu} S^u`.
pub fn poisson_bracket(f: GeneratorLabel, g: GeneratorLabel, p: &PhaseSpacePoint) -> Result<f64> {
    let bad = |l: GeneratorLabel| Error::InvalidParameter {
        name: "generator",
        reason: format!("{l:?} is not a Poincaré generator"),
    };
    let (kf, sf) = f.slot().ok_or_else(|| bad(f))?;
    let (kg, sg) = g.slot().ok_or_else(|| bad(g))?;
    let grad = gradients(p);
    Ok(sf * sg * bracket_from_gradients(&grad[kf], &grad[kg], &p.s))
}

/// Expected `{G_a, G_b}` from [`STRUCTURE_TABLE`].
pub fn expected_bracket(a: usize, b: usize, values: &[f64; 10]) -> f64 {
    if a == b {
        return 0.0;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let (_, _, rhs) = STRUCTURE_TABLE
        .iter()
        .find(|(x, y, _)| *x == lo && *y == hi)
        .expect("table covers every ordered pair");
    sign * rhs.iter().map(|(k, c)| c * values[*k]).sum::<f64>()
}

pub fn relation_name(a: usize, b: usize) -> String {
    format!("{{{}, {}}}", GENERATOR_LABELS[a].name(), GENERATOR_LABELS[b].name())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureRecord {
    pub point: PhaseSpacePoint,
    pub relation: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub max_residual: f64,
    pub failing: Vec<ClosureRecord>,
    pub records: Vec<ClosureRecord>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failing.is_empty()
    }

    fn merge(mut self, other: ClosureReport) -> ClosureReport {
        self.max_residual = self.max_residual.max(other.max_residual);
        self.failing.extend(other.failing);
        self.records.extend(other.records);
        self
    }
}

/// Evaluate all 45 bracket relations at `p` against the frozen structure constants.
pub fn check_poincare_algebra(p: &PhaseSpacePoint, tol: f64) -> ClosureReport {
    let grad = gradients(p);
    let values = external_generators(p).as_array();
    let mut records = Vec::with_capacity(45);
    for a in 0..10 {
        for b in a + 1..10 {
            let got = bracket_from_gradients(&grad[a], &grad[b], &p.s);
            let residual = (got - expected_bracket(a, b, &values)).abs();
            records.push(ClosureRecord {
                point: *p,
                relation: relation_name(a, b),
                residual,
            });
        }
    }
    let max_residual = records.iter().map(|r| r.residual).fold(0.0, f64::max);
    let failing = records
        .iter()
        .filter(|r| !(r.residual <= tol))
        .cloned()
        .collect();
    ClosureReport {
        max_residual,
        failing,
        records,
    }
}

/// Closure check over many points in parallel; records keep the input order.
pub fn check_many(points: &[PhaseSpacePoint], tol: f64) -> ClosureReport {
    points
        .par_iter()
        .map(|p| check_poincare_algebra(p, tol))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            ClosureReport {
                max_residual: 0.0,
                failing: Vec::new(),
                records: Vec::new(),
            },
            ClosureReport::merge,
        )
}

/// Seeded random points with `|z_i|, |h_i|, |S_i| ≤ 2` and `Mc ∈ [0.5, 3]`.
pub fn random_points(seed: u64, n: usize) -> Vec<PhaseSpacePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v3 = |rng: &mut ChaCha8Rng| std::array::from_fn(|_| rng.random_range(-2.0..=2.0));
    (0..n)
        .map(|_| {
            let z = v3(&mut rng);
            let h = v3(&mut rng);
            let s = v3(&mut rng);
            let mc = rng.random_range(0.5..=3.0);
            PhaseSpacePoint { z, h, s, mc }
        })
        .collect()
}

/// Spin bilinears `S^r = −(i/2) ε^{ruv} ξ^u_⊥ ξ^v_⊥`.
pub fn spin_from_grassmann(xi_perp: &[GrassmannElement; 3]) -> [GrassmannElement; 3] {
    std::array::from_fn(|r| {
        let (u, v) = ((r + 1) % 3, (r + 2) % 3);
        (&xi_perp[u] * &xi_perp[v]).scale(Complex64::new(0.0, -1.0))
    })
}

/// Boost part of the spin tensor, `S̃^{0i} = −ε^{ijr} P^j S^r / (P^0 + √(sgn P²))`.
pub fn boost_spin(p: &FourVector, spin: &[GrassmannElement; 3]) -> [GrassmannElement; 3] {
    let mass = (p.sgn.sign() * p.square()).sqrt();
    let denom = p.components[0] + mass;
    std::array::from_fn(|i| {
        let mut out = GrassmannElement::zero(spin[0].table());
        for j in 0..3 {
            for r in 0..3 {
                let e = levi(i, j, r);
                if e != 0.0 {
                    out = &out + &spin[r].scale_re(-e * p.components[j + 1] / denom);
                }
            }
        }
        out
    })
}

/// Spin bilinears built directly on the atom algebra for momentum direction `h`.
pub fn atom_spin(
    algebra: &AtomAlgebra,
    h: &crate::kinematics::RapidityVector,
) -> Result<[GrassmannElement; 3]> {
    Ok(spin_from_grassmann(&algebra.xi_perp(h)?))
}
