//! Quantum operators: Fermi oscillators for the level variables, the Pauli
//! dipole, the truncated photon mode and the physical two-level projection.
//!
//! Operators carry a [`Layout`], the ordered list of tensor legs they act on.
//! Leg bases: on [`Leg::Alpha`] and [`Leg::Beta`] index 0 is empty and 1 is
//! occupied; on [`Leg::Level`] index 0 is `Φ(+)` (upper) and 1 is `Φ(−)`;
//! on [`Leg::Dipole`] the standard Pauli basis; on [`Leg::Fock`] photon number.

mod matrix_io;

pub use matrix_io::{read_binary, read_text, write_binary, write_text, MAGIC};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, real, CMatrix, CVector, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Leg {
    /// Fermi mode of the lower level variable, dimension 2.
    Alpha,
    /// Fermi mode of the upper level variable, dimension 2.
    Beta,
    /// Physical two-level space spanned by `Φ(+)`, `Φ(−)`.
    Level,
    /// Pauli space of the transverse dipole.
    Dipole,
    /// Photon number `0..=N`.
    Fock(usize),
}

impl Leg {
    pub fn dim(self) -> usize {
        match self {
            Leg::Fock(n) => n + 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leg::Alpha => write!(f, "alpha"),
            Leg::Beta => write!(f, "beta"),
            Leg::Level => write!(f, "level"),
            Leg::Dipole => write!(f, "dipole"),
            Leg::Fock(n) => write!(f, "fock:{n}"),
        }
    }
}

impl std::str::FromStr for Leg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => Leg::Alpha,
            "beta" => Leg::Beta,
            "level" => Leg::Level,
            "dipole" => Leg::Dipole,
            _ => {
                let n = s
                    .strip_prefix("fock:")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::MatrixFormat(format!("unknown leg `{s}`")))?;
                Leg::Fock(n)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout(Vec<Leg>);

impl Layout {
    pub fn new(legs: Vec<Leg>) -> Result<Self> {
        for (i, l) in legs.iter().enumerate() {
            let kind = std::mem::discriminant(l);
            if legs[..i].iter().any(|o| std::mem::discriminant(o) == kind) {
                return Err(Error::LayoutMismatch(format!("leg `{l}` appears twice")));
            }
        }
        Ok(Self(legs))
    }

    pub fn legs(&self) -> &[Leg] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(|l| l.dim()).product()
    }

    /// Layout of `self ⊗ other`.
    pub fn join(&self, other: &Layout) -> Result<Layout> {
        Layout::new(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

/// Dense complex operator together with the tensor legs it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    matrix: CMatrix,
    layout: Layout,
}

impl OperatorMatrix {
    pub fn new(matrix: CMatrix, layout: Layout) -> Result<Self> {
        let d = layout.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::LayoutMismatch(format!(
                "{}x{} matrix does not fit layout {layout} of dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix, layout })
    }

    fn on_leg(matrix: CMatrix, leg: Leg) -> Self {
        Self::new(matrix, Layout(vec![leg])).expect("leg-sized matrix")
    }

    pub fn identity(layout: &Layout) -> Self {
        let d = layout.dim();
        Self { matrix: CMatrix::identity(d, d), layout: layout.clone() }
    }

    pub fn zeros(layout: &Layout) -> Self {
        let d = layout.dim();
        Self { matrix: CMatrix::zeros(d, d), layout: layout.clone() }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), layout: self.layout.clone() }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.layout == other.layout {
            Ok(())
        } else {
            Err(Error::LayoutMismatch(format!("{} vs {}", self.layout, other.layout)))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { matrix: &self.matrix * &other.matrix, layout: self.layout.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { matrix: &self.matrix + &other.matrix, layout: self.layout.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { matrix: &self.matrix - &other.matrix, layout: self.layout.clone() })
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { matrix: self.matrix.scale(k), layout: self.layout.clone() }
    }

    pub fn scale_c(&self, k: crate::Complex64) -> Self {
        Self { matrix: &self.matrix * k, layout: self.layout.clone() }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            matrix: linalg::commutator(&self.matrix, &other.matrix),
            layout: self.layout.clone(),
        })
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            matrix: linalg::anticommutator(&self.matrix, &other.matrix),
            layout: self.layout.clone(),
        })
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: linalg::kron(&self.matrix, &other.matrix),
            layout: self.layout.join(&other.layout)?,
        })
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.matrix)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }
}

/// Embed `op` into `target`, acting as the identity on legs `op` does not carry.
/// The legs of `op` must appear in `target` in the same order.
pub fn tensor_lift(op: &OperatorMatrix, target: &Layout) -> Result<OperatorMatrix> {
    let mismatch = || Error::LayoutMismatch(format!("{} is not a sub-layout of {target}", op.layout));
    let mut positions = Vec::with_capacity(op.layout.0.len());
    let mut next = 0;
    for leg in &op.layout.0 {
        let found = target.0[next..].iter().position(|t| t == leg).ok_or_else(mismatch)?;
        positions.push(next + found);
        next += found + 1;
    }
    let dims: Vec<usize> = target.0.iter().map(|l| l.dim()).collect();
    let total = target.dim();
    // strides of each target leg in the row-major composite index
    let mut strides = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let op_dims: Vec<usize> = op.layout.0.iter().map(|l| l.dim()).collect();
    let op_dim = op.dim();
    // offset in the target index contributed by each local op index
    let local_offsets: Vec<usize> = (0..op_dim)
        .map(|mut j| {
            let mut off = 0;
            for k in (0..op_dims.len()).rev() {
                off += (j % op_dims[k]) * strides[positions[k]];
                j /= op_dims[k];
            }
            off
        })
        .collect();
    let mut out = CMatrix::zeros(total, total);
    for row in 0..total {
        let mut local_row = 0;
        let mut base = row;
        for (k, &p) in positions.iter().enumerate() {
            let digit = (row / strides[p]) % dims[p];
            local_row = local_row * op_dims[k] + digit;
            base -= digit * strides[p];
        }
        for (local_col, off) in local_offsets.iter().enumerate() {
            let v = op.matrix[(local_row, local_col)];
            if v != ZERO {
                out[(row, base + off)] = v;
            }
        }
    }
    OperatorMatrix::new(out, target.clone())
}

/// Pauli matrices `σ^1, σ^2, σ^3`.
pub fn pauli() -> [CMatrix; 3] {
    [
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]),
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, real(-1.0)]),
    ]
}

/// Single-mode lowering matrix `|0⟩⟨1|`.
fn lowering() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])
}

/// Level-space Pauli operators `(σ₃, σ₊, σ₋)` in the `(Φ(+), Φ(−))` basis.
pub fn level_pauli() -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
    let [_, _, s3] = pauli();
    let sp = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]);
    (
        OperatorMatrix::on_leg(s3, Leg::Level),
        OperatorMatrix::on_leg(sp.clone(), Leg::Level),
        OperatorMatrix::on_leg(sp.adjoint(), Leg::Level),
    )
}

/// Pauli matrices on any two-dimensional leg.
pub fn pauli_on(leg: Leg) -> Result<[OperatorMatrix; 3]> {
    if leg.dim() != 2 {
        return Err(Error::LayoutMismatch(format!("leg `{leg}` is not two-dimensional")));
    }
    Ok(pauli().map(|m| OperatorMatrix::on_leg(m, leg)))
}

/// Truncated photon operators `(â, â†, n̂)` on `0..=N` photons.
pub fn fock_operators(n: usize) -> Result<(OperatorMatrix, OperatorMatrix, OperatorMatrix)> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "fock_cutoff",
            reason: "must be at least 1".into(),
        });
    }
    let d = n + 1;
    let a = CMatrix::from_fn(d, d, |i, j| if j == i + 1 { real((j as f64).sqrt()) } else { ZERO });
    let num = CMatrix::from_fn(d, d, |i, j| if i == j { real(i as f64) } else { ZERO });
    let leg = Leg::Fock(n);
    Ok((
        OperatorMatrix::on_leg(a.clone(), leg),
        OperatorMatrix::on_leg(a.adjoint(), leg),
        OperatorMatrix::on_leg(num, leg),
    ))
}

/// `±` labels of the level states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
pub struct FermiOscillators {
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub b: OperatorMatrix,
    pub b_dag: OperatorMatrix,
}

#[derive(Debug, Clone)]
pub struct PhysicalSector {
    /// 2×4 isometry with rows `Φ(+)†`, `Φ(−)†`.
    pub projector: CMatrix,
    pub c: OperatorMatrix,
    pub c_dag: OperatorMatrix,
}

/// Classical-to-quantum operator dictionary at a fixed `ħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizationMap {
    hbar: f64,
}

impl QuantizationMap {
    pub fn new(hbar: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter {
                name: "hbar",
                reason: format!("must be positive and finite, got {hbar}"),
            });
        }
        Ok(Self { hbar })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn level_layout() -> Layout {
        Layout(vec![Leg::Alpha, Leg::Beta])
    }

    /// `â = √ħ |0⟩⟨1|` on the α leg, `b̂` likewise on the β leg; the two commute.
    pub fn fermi_oscillators(&self) -> FermiOscillators {
        let layout = Self::level_layout();
        let low = lowering().scale(self.hbar.sqrt());
        let a = tensor_lift(&OperatorMatrix::on_leg(low.clone(), Leg::Alpha), &layout)
            .expect("α is a leg of the level layout");
        let b = tensor_lift(&OperatorMatrix::on_leg(low, Leg::Beta), &layout)
            .expect("β is a leg of the level layout");
        FermiOscillators { a_dag: a.adjoint(), b_dag: b.adjoint(), a, b }
    }

    /// `(N̂_a, N̂_b, Ĉ = N̂_b − N̂_a)`.
    pub fn level_number_and_constraint(&self) -> (OperatorMatrix, OperatorMatrix, OperatorMatrix) {
        let f = self.fermi_oscillators();
        let na = f.a_dag.mul(&f.a).expect("same layout");
        let nb = f.b_dag.mul(&f.b).expect("same layout");
        let cst = nb.sub(&na).expect("same layout");
        (na, nb, cst)
    }

    /// Basis vector `Ψ_α(s_α) ⊗ Ψ_β(s_β)`: `α(+)`, `β(−)` empty and `α(−)`, `β(+)` occupied.
    pub fn level_state(alpha: Sign, beta: Sign) -> CVector {
        let a_occ = usize::from(alpha == Sign::Minus);
        let b_occ = usize::from(beta == Sign::Plus);
        let mut v = CVector::zeros(4);
        v[2 * a_occ + b_occ] = ONE;
        v
    }

    /// Physical states `Φ(+) = Ψ_α(−)⊗Ψ_β(+)` and `Φ(−) = Ψ_α(+)⊗Ψ_β(−)`.
    pub fn physical_states() -> (CVector, CVector) {
        (
            Self::level_state(Sign::Minus, Sign::Plus),
            Self::level_state(Sign::Plus, Sign::Minus),
        )
    }

    /// Projection onto the physical span and `ĉ = Π b̂ â Π†/ħ`, `ĉ† = Π â† b̂† Π†/ħ`.
    pub fn physical_projector_and_c(&self) -> PhysicalSector {
        let (plus, minus) = Self::physical_states();
        let mut projector = CMatrix::zeros(2, 4);
        projector.row_mut(0).copy_from(&plus.adjoint());
        projector.row_mut(1).copy_from(&minus.adjoint());
        // b̂â/ħ evaluated as (b̂/√ħ)(â/√ħ) so the entries stay exact
        let layout = Self::level_layout();
        let unit = |leg| tensor_lift(&OperatorMatrix::on_leg(lowering(), leg), &layout).expect("level leg");
        let lower = unit(Leg::Beta).mul(&unit(Leg::Alpha)).expect("same layout");
        let c_mat = &projector * lower.matrix() * projector.adjoint();
        let c = OperatorMatrix::on_leg(c_mat, Leg::Level);
        PhysicalSector { projector, c_dag: c.adjoint(), c }
    }

    /// Dipole image `ξ̂^r = √(ħ/2) σ^r`.
    pub fn xi_operators(&self) -> [OperatorMatrix; 3] {
        pauli().map(|s| OperatorMatrix::on_leg(s.scale((self.hbar / 2.0).sqrt()), Leg::Dipole))
    }

    /// `d̂^r = −i d ε^{ruv} ξ̂^u ξ̂^v`, which equals `ħ d σ^r`.
    pub fn dipole_operator(&self, d: f64) -> [OperatorMatrix; 3] {
        let xi = self.xi_operators();
        std::array::from_fn(|r| {
            let (u, v) = ((r + 1) % 3, (r + 2) % 3);
            let uv = xi[u].mul(&xi[v]).expect("dipole leg");
            let vu = xi[v].mul(&xi[u]).expect("dipole leg");
            uv.sub(&vu).expect("dipole leg").scale_c(c(0.0, -d))
        })
    }
}
