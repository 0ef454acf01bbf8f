use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{bits, GeneratorTable, GrassmannElement};
use crate::error::{Error, Result};
use crate::kinematics::Signature;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fundamental brackets `ω_{ij} = {g_i, g_j}` between odd generators (symmetric).
#[derive(Debug, Clone, PartialEq)]
pub struct BracketSpec {
    table: Arc<GeneratorTable>,
    omega: Vec<Complex64>,
    sgn: Signature,
}

impl BracketSpec {
    pub fn new(table: &Arc<GeneratorTable>, sgn: Signature) -> Self {
        let n = table.len();
        Self {
            table: Arc::clone(table),
            omega: vec![ZERO; n * n],
            sgn,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn sgn(&self) -> Signature {
        self.sgn
    }

    /// Set `{g_i, g_j} = {g_j, g_i} = value`.
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        let n = self.table.len();
        self.omega[i * n + j] = value;
        self.omega[j * n + i] = value;
    }

    pub fn fundamental(&self, i: usize, j: usize) -> Complex64 {
        self.omega[i * self.table.len() + j]
    }

    /// Stable textual dump of the nonzero fundamental brackets.
    pub fn dump(&self) -> String {
        let n = self.table.len();
        let mut out = String::new();
        for i in 0..n {
            for j in i..n {
                let w = self.fundamental(i, j);
                if w != ZERO {
                    out.push_str(&format!(
                        "{{{}, {}}} = ({}, {})\n",
                        self.table.name(i),
                        self.table.name(j),
                        w.re + 0.0,
                        w.im + 0.0
                    ));
                }
            }
        }
        out
    }
}

/// Left derivatives `∂^L_j a` for every generator `j`.
fn left_derivatives(a: &GrassmannElement) -> Vec<GrassmannElement> {
    let mut out = vec![GrassmannElement::zero(&a.table); a.table.len()];
    for (m, c) in a.terms() {
        for (pos, j) in bits(m).enumerate() {
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            out[j].accumulate(m & !(1 << j), c * sign);
        }
    }
    out
}

/// Right derivatives `∂^R_i a` for every generator `i`.
fn right_derivatives(a: &GrassmannElement) -> Vec<GrassmannElement> {
    let mut out = vec![GrassmannElement::zero(&a.table); a.table.len()];
    for (m, c) in a.terms() {
        let k = m.count_ones() as usize;
        for (pos, i) in bits(m).enumerate() {
            let after = k - 1 - pos;
            let sign = if after % 2 == 0 { 1.0 } else { -1.0 };
            out[i].accumulate(m & !(1 << i), c * sign);
        }
    }
    out
}

/// Graded Poisson bracket `{a, b} = Σ_{ij} (∂^R_i a) ω_{ij} (∂^L_j b)`.
pub fn graded_poisson_bracket(
    a: &GrassmannElement,
    b: &GrassmannElement,
    spec: &BracketSpec,
) -> Result<GrassmannElement> {
    if !a.same_table(b) || *a.table != *spec.table {
        return Err(Error::TableMismatch);
    }
    let n = spec.table.len();
    let da = right_derivatives(a);
    let db = left_derivatives(b);
    let mut out = GrassmannElement::zero(&a.table);
    for i in 0..n {
        if da[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let w = spec.fundamental(i, j);
            if w == ZERO || db[j].is_zero() {
                continue;
            }
            out = &out + &(&da[i] * &db[j]).scale(w);
        }
    }
    Ok(out)
}

/// Numeric inverse of the constraint matrix `C_{kl} = {χ_k, χ_l}`.
fn constraint_inverse(
    constraints: &[GrassmannElement],
    spec: &BracketSpec,
) -> Result<DMatrix<Complex64>> {
    let k = constraints.len();
    let mut c = DMatrix::from_element(k, k, ZERO);
    for i in 0..k {
        for j in 0..k {
            let entry = graded_poisson_bracket(&constraints[i], &constraints[j], spec)?;
            if entry.soul().max_abs_coefficient() > 1e-14 {
                return Err(Error::NonNumericConstraintBracket(i, j));
            }
            c[(i, j)] = entry.body();
        }
    }
    if k == 0 {
        return Ok(c);
    }
    let sv = c.clone().svd(false, false).singular_values;
    let max = sv.max();
    let min = sv.min();
    if !(max > 0.0) || min / max < 1e-12 {
        return Err(Error::NotSecondClass);
    }
    c.try_inverse().ok_or(Error::NotSecondClass)
}

/// Dirac bracket `{a,b}* = {a,b} − {a,χ_k} (C⁻¹)_{kl} {χ_l,b}`.
pub fn dirac_bracket(
    a: &GrassmannElement,
    b: &GrassmannElement,
    constraints: &[GrassmannElement],
    spec: &BracketSpec,
) -> Result<GrassmannElement> {
    let cinv = constraint_inverse(constraints, spec)?;
    dirac_with_inverse(a, b, constraints, &cinv, spec)
}

fn dirac_with_inverse(
    a: &GrassmannElement,
    b: &GrassmannElement,
    constraints: &[GrassmannElement],
    cinv: &DMatrix<Complex64>,
    spec: &BracketSpec,
) -> Result<GrassmannElement> {
    let mut out = graded_poisson_bracket(a, b, spec)?;
    let left: Vec<_> = constraints
        .iter()
        .map(|chi| graded_poisson_bracket(a, chi, spec))
        .collect::<Result<_>>()?;
    let right: Vec<_> = constraints
        .iter()
        .map(|chi| graded_poisson_bracket(chi, b, spec))
        .collect::<Result<_>>()?;
    for (k, l_elem) in left.iter().enumerate() {
        if l_elem.is_zero() {
            continue;
        }
        for (l, r_elem) in right.iter().enumerate() {
            let w = cinv[(k, l)];
            if w == ZERO || r_elem.is_zero() {
                continue;
            }
            out = &out - &(l_elem * r_elem).scale(w);
        }
    }
    Ok(out)
}

/// Bracket table `ω*_{ij} = {g_i, g_j}*` induced by constraints.
///
/// For constraints linear in the generators the Dirac bracket of arbitrary
/// elements equals the graded Poisson bracket built on this reduced table.
pub fn reduced_spec(constraints: &[GrassmannElement], spec: &BracketSpec) -> Result<BracketSpec> {
    let cinv = constraint_inverse(constraints, spec)?;
    let table = &spec.table;
    let gens: Vec<_> = (0..table.len())
        .map(|i| GrassmannElement::generator(table, i))
        .collect();
    let mut out = BracketSpec::new(table, spec.sgn);
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let w = dirac_with_inverse(&gens[i], &gens[j], constraints, &cinv, spec)?;
            out.set(i, j, w.body());
        }
    }
    Ok(out)
}
