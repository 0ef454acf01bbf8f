//! Minkowski four-vectors, Wigner-boost tetrads and their momentum derivatives.
//!
//! Index conventions: a forward tetrad stores `ε^μ_A` as `m[μ][A]` (column `A`
//! is the `A`-th frame vector), an inverse tetrad stores `ε^A_μ` as `m[A][μ]`.
//! Frame index 0 is `τ`, indices 1..=3 are the spatial `r`.

use serde::{Deserialize, Serialize};

use crate::dual::{Dual, Scalar};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::Complex64;

/// Metric signature: `η = sgn · diag(+1, -1, -1, -1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Signature {
    #[default]
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Signature {
    pub fn from_sign(sgn: i32) -> Result<Self> {
        match sgn {
            1 => Ok(Signature::Plus),
            -1 => Ok(Signature::Minus),
            _ => Err(Error::InvalidParameter {
                name: "sgn",
                reason: format!("must be +1 or -1, got {sgn}"),
            }),
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Signature::Plus => 1.0,
            Signature::Minus => -1.0,
        }
    }

    /// `η_{μν}` (numerically equal to `η^{μν}`).
    pub fn eta(self, mu: usize, nu: usize) -> f64 {
        if mu != nu {
            0.0
        } else if mu == 0 {
            self.sign()
        } else {
            -self.sign()
        }
    }

    pub fn metric(self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            row[mu] = self.eta(mu, mu);
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Units {
    Length,
    Momentum,
    Dimensionless,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub components: [f64; 4],
    pub units: Units,
    pub sgn: Signature,
}

impl FourVector {
    pub fn new(components: [f64; 4], units: Units, sgn: Signature) -> Self {
        Self { components, units, sgn }
    }

    /// `η_{μν} a^μ b^ν`.
    pub fn dot(&self, other: &FourVector) -> f64 {
        (0..4)
            .map(|mu| self.sgn.eta(mu, mu) * self.components[mu] * other.components[mu])
            .sum()
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    /// Covariant components `a_μ = η_{μν} a^ν`.
    pub fn lower(&self) -> [f64; 4] {
        let mut out = self.components;
        for (mu, c) in out.iter_mut().enumerate() {
            *c *= self.sgn.eta(mu, mu);
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RapidityVector(pub [f64; 3]);

impl RapidityVector {
    pub fn new(h: [f64; 3]) -> Result<Self> {
        if h.iter().all(|x| x.is_finite()) {
            Ok(Self(h))
        } else {
            Err(Error::NonFinite("rapidity vector"))
        }
    }

    pub fn zero() -> Self {
        Self([0.0; 3])
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// `√(1 + h²)`.
    pub fn gamma(&self) -> f64 {
        (1.0 + self.norm_sq()).sqrt()
    }

    /// Unit timelike vector `h^μ = (√(1+h²); h)`.
    pub fn four_velocity(&self, sgn: Signature) -> FourVector {
        let [a, b, c] = self.0;
        FourVector::new([self.gamma(), a, b, c], Units::Dimensionless, sgn)
    }

    /// Total momentum `P^μ = Mc h^μ`.
    pub fn momentum(&self, mc: f64, sgn: Signature) -> FourVector {
        let u = self.four_velocity(sgn);
        FourVector::new(u.components.map(|x| mc * x), Units::Momentum, sgn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TetradKind {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tetrad {
    pub m: [[f64; 4]; 4],
    pub kind: TetradKind,
    pub sgn: Signature,
}

impl Tetrad {
    /// Frame vector `ε^μ_A` of a forward tetrad.
    pub fn column(&self, a: usize) -> [f64; 4] {
        std::array::from_fn(|mu| self.m[mu][a])
    }

    /// Largest entry of `|ε^μ_A η_{μν} ε^ν_B − η_{AB}|` for a forward tetrad.
    pub fn orthonormality_residual(&self) -> f64 {
        let fwd = match self.kind {
            TetradKind::Forward => *self,
            TetradKind::Inverse => inverse_tetrad(self),
        };
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let g: f64 = (0..4)
                    .map(|mu| fwd.m[mu][a] * self.sgn.eta(mu, mu) * fwd.m[mu][b])
                    .sum();
                worst = worst.max((g - self.sgn.eta(a, b)).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        nalgebra::Matrix4::from_fn(|i, j| self.m[i][j]).determinant()
    }
}

/// Standard Wigner boost columns for any scalar type (used with duals for derivatives).
pub fn wigner_tetrad_generic<S: Scalar>(h: [S; 3]) -> [[S; 4]; 4] {
    let h2 = h[0] * h[0] + h[1] * h[1] + h[2] * h[2];
    let gamma = (S::one() + h2).sqrt();
    let denom = S::one() + gamma;
    let mut m = [[S::zero(); 4]; 4];
    m[0][0] = gamma;
    for i in 0..3 {
        m[i + 1][0] = h[i];
        m[0][i + 1] = h[i];
        for r in 0..3 {
            let delta = if i == r { S::one() } else { S::zero() };
            m[i + 1][r + 1] = delta + h[i] * h[r] / denom;
        }
    }
    m
}

/// `ε^A_μ = η^{AB} η_{μν} ε^ν_B`; the signature cancels so this holds for both signs.
fn flip_generic<S: Scalar>(m: &[[S; 4]; 4]) -> [[S; 4]; 4] {
    let d = |i: usize| if i == 0 { 1.0 } else { -1.0 };
    std::array::from_fn(|a| std::array::from_fn(|mu| m[mu][a].scale(d(a) * d(mu))))
}

pub fn wigner_tetrad(h: &RapidityVector, sgn: Signature) -> Result<Tetrad> {
    let h = RapidityVector::new(h.0)?;
    Ok(Tetrad {
        m: wigner_tetrad_generic(h.0),
        kind: TetradKind::Forward,
        sgn,
    })
}

/// Inverse of a tetrad via the metric; applied to an inverse tetrad it returns the forward one.
pub fn inverse_tetrad(t: &Tetrad) -> Tetrad {
    Tetrad {
        m: flip_generic(&t.m),
        kind: match t.kind {
            TetradKind::Forward => TetradKind::Inverse,
            TetradKind::Inverse => TetradKind::Forward,
        },
        sgn: t.sgn,
    }
}

/// Point `x0^μ + ε^μ_A(h) σ^A` of the rest-frame embedding; `sigma = (τ, σ^1, σ^2, σ^3)`.
pub fn embed_rest_frame(
    x0: &FourVector,
    h: &RapidityVector,
    sigma: [f64; 4],
) -> Result<FourVector> {
    let t = wigner_tetrad(h, x0.sgn)?;
    let mut out = x0.components;
    for (mu, x) in out.iter_mut().enumerate() {
        *x += (0..4).map(|a| t.m[mu][a] * sigma[a]).sum::<f64>();
    }
    Ok(FourVector::new(out, x0.units, x0.sgn))
}

/// `d[μ][B][ρ] = ∂ε^B_ρ(h) / ∂P_μ` with `P^μ = Mc h^μ`.
pub type TetradDerivative = [[[f64; 4]; 4]; 4];

pub fn tetrad_derivative(h: &RapidityVector, mc: f64, sgn: Signature) -> Result<TetradDerivative> {
    let h = RapidityVector::new(h.0)?;
    if !(mc > 0.0) || !mc.is_finite() {
        return Err(Error::InvalidParameter {
            name: "Mc",
            reason: format!("must be positive and finite, got {mc}"),
        });
    }
    let p = h.momentum(mc, Signature::Plus).components;
    // derivative with respect to the contravariant component P^ν
    let mut upper = [[[0.0; 4]; 4]; 4];
    for (nu, slot) in upper.iter_mut().enumerate() {
        let pd: [Dual; 4] = std::array::from_fn(|k| {
            if k == nu {
                Dual::variable(p[k])
            } else {
                Dual::constant(p[k])
            }
        });
        let mass = (pd[0] * pd[0] - pd[1] * pd[1] - pd[2] * pd[2] - pd[3] * pd[3]).sqrt();
        let hd = [pd[1] / mass, pd[2] / mass, pd[3] / mass];
        let inv = flip_generic(&wigner_tetrad_generic(hd));
        for b in 0..4 {
            for rho in 0..4 {
                slot[b][rho] = inv[b][rho].eps;
            }
        }
    }
    // ∂/∂P_μ = η^{μν} ∂/∂P^ν
    let mut d = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        for b in 0..4 {
            for rho in 0..4 {
                d[mu][b][rho] = sgn.eta(mu, mu) * upper[mu][b][rho];
            }
        }
    }
    Ok(d)
}

/// Coefficients `K^μ_{rs} = ε^A_ν η_{AB} ∂ε^B_ρ/∂P_μ ε^ρ_r ε^ν_s` (spatial `r, s` in 0..3).
pub fn center_of_mass_kernel(
    h: &RapidityVector,
    mc: f64,
    sgn: Signature,
) -> Result<[[[f64; 3]; 3]; 4]> {
    let d = tetrad_derivative(h, mc, sgn)?;
    let fwd = wigner_tetrad(h, sgn)?;
    let inv = inverse_tetrad(&fwd);
    let mut k = [[[0.0; 3]; 3]; 4];
    for (mu, kmu) in k.iter_mut().enumerate() {
        for r in 0..3 {
            for s in 0..3 {
                let mut acc = 0.0;
                for a in 0..4 {
                    for nu in 0..4 {
                        let left = inv.m[a][nu] * sgn.eta(a, a) * fwd.m[nu][s + 1];
                        if left == 0.0 {
                            continue;
                        }
                        for rho in 0..4 {
                            acc += left * d[mu][a][rho] * fwd.m[rho][r + 1];
                        }
                    }
                }
                kmu[r][s] = acc;
            }
        }
    }
    Ok(k)
}

/// Grassmann-even correction `(i/2) K^μ_{rs} ξ^r_⊥ ξ^s_⊥` to the center of mass.
pub fn center_of_mass_shift(
    h: &RapidityVector,
    mc: f64,
    xi_perp: &[GrassmannElement; 3],
    sgn: Signature,
) -> Result<[GrassmannElement; 4]> {
    let k = center_of_mass_kernel(h, mc, sgn)?;
    let table = xi_perp[0].table();
    let half_i = Complex64::new(0.0, 0.5);
    let mut out: [GrassmannElement; 4] = std::array::from_fn(|_| GrassmannElement::zero(table));
    for (mu, slot) in out.iter_mut().enumerate() {
        for r in 0..3 {
            for s in 0..3 {
                if k[mu][r][s] == 0.0 {
                    continue;
                }
                let term = xi_perp[r].product(&xi_perp[s])?.scale(half_i * k[mu][r][s]);
                *slot = slot.try_add(&term)?;
            }
        }
    }
    Ok(out)
}
