//! Exact algebra of anticommuting (Grassmann-odd) generators.
//!
//! Elements are sparse sums of monomials. A monomial is a bitmask over the
//! generators of a [`GeneratorTable`], always read in ascending index order,
//! so `ξ2 ξ0` is stored as `-ξ0 ξ2`.

mod atom;
mod bracket;

pub use atom::AtomAlgebra;
pub use bracket::{dirac_bracket, graded_poisson_bracket, reduced_spec, BracketSpec};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_GENERATORS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Component `μ` of the real dipole 4-vector ξ^μ.
    XiVector(usize),
    Alpha,
    AlphaStar,
    Beta,
    BetaStar,
    /// Canonical momentum of the generator at the given table index.
    MomentumOf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
}

/// Ordered list of odd generators. Index order is the canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    entries: Vec<Generator>,
    conjugates: Vec<usize>,
}

impl GeneratorTable {
    pub fn new(entries: Vec<Generator>) -> Result<Arc<Self>> {
        if entries.len() > MAX_GENERATORS {
            return Err(Error::InvalidTable(format!(
                "{} generators exceed the limit of {MAX_GENERATORS}",
                entries.len()
            )));
        }
        for (i, g) in entries.iter().enumerate() {
            if entries[..i].iter().any(|o| o.name == g.name) {
                return Err(Error::InvalidTable(format!("duplicate name `{}`", g.name)));
            }
            if let GeneratorKind::MomentumOf(target) = g.kind {
                match entries.get(target) {
                    Some(t) if !matches!(t.kind, GeneratorKind::MomentumOf(_)) => {}
                    _ => {
                        return Err(Error::InvalidTable(format!(
                            "momentum `{}` must reference a non-momentum generator",
                            g.name
                        )))
                    }
                }
                let twins = entries
                    .iter()
                    .filter(|o| o.kind == GeneratorKind::MomentumOf(target))
                    .count();
                if twins > 1 {
                    return Err(Error::InvalidTable(format!(
                        "generator `{}` has more than one momentum",
                        entries[target].name
                    )));
                }
            }
        }

        let find = |kind: GeneratorKind| entries.iter().position(|g| g.kind == kind);
        let partner = |kind: GeneratorKind| -> Option<GeneratorKind> {
            Some(match kind {
                GeneratorKind::XiVector(mu) => GeneratorKind::XiVector(mu),
                GeneratorKind::Alpha => GeneratorKind::AlphaStar,
                GeneratorKind::AlphaStar => GeneratorKind::Alpha,
                GeneratorKind::Beta => GeneratorKind::BetaStar,
                GeneratorKind::BetaStar => GeneratorKind::Beta,
                GeneratorKind::MomentumOf(_) => return None,
            })
        };
        let mut conjugates = Vec::with_capacity(entries.len());
        for g in &entries {
            let base = match g.kind {
                GeneratorKind::MomentumOf(t) => entries[t].kind,
                k => k,
            };
            let conj_base = partner(base).expect("base kinds are never momenta");
            let idx = match g.kind {
                GeneratorKind::MomentumOf(_) => {
                    find(conj_base).and_then(|b| find(GeneratorKind::MomentumOf(b)))
                }
                _ => find(conj_base),
            };
            let idx = idx.ok_or_else(|| {
                Error::InvalidTable(format!("conjugate partner of `{}` is missing", g.name))
            })?;
            conjugates.push(idx);
        }
        Ok(Arc::new(Self { entries, conjugates }))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn name(&self, index: usize) -> &str {
        &self.entries[index].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.entries
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn index_of_kind(&self, kind: GeneratorKind) -> Option<usize> {
        self.entries.iter().position(|g| g.kind == kind)
    }

    pub fn conjugate_index(&self, index: usize) -> usize {
        self.conjugates[index]
    }
}

/// Sign of moving monomial `b` past monomial `a` into canonical order.
fn merge_sign(a: u64, b: u64) -> f64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += a.checked_shr(j + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Grassmann parity of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of_mask(mask: u64) -> Self {
        if mask.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

#[derive(Debug, Clone)]
pub struct GrassmannElement {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<u64, Complex64>,
}

impl GrassmannElement {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Self {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(table: &Arc<GeneratorTable>, value: Complex64) -> Self {
        Self::monomial(table, 0, value)
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::scalar(table, Complex64::new(1.0, 0.0))
    }

    pub fn generator(table: &Arc<GeneratorTable>, index: usize) -> Self {
        assert!(index < table.len(), "generator index {index} out of range");
        Self::monomial(table, 1 << index, Complex64::new(1.0, 0.0))
    }

    pub fn named(table: &Arc<GeneratorTable>, name: &str) -> Result<Self> {
        Ok(Self::generator(table, table.index_of(name)?))
    }

    /// Monomial from a canonical (ascending) bitmask.
    pub fn monomial(table: &Arc<GeneratorTable>, mask: u64, coefficient: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if coefficient != Complex64::new(0.0, 0.0) {
            terms.insert(mask, coefficient);
        }
        Self {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn same_table(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u64) -> Complex64 {
        self.terms.get(&mask).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Numeric part (coefficient of the empty monomial).
    pub fn body(&self) -> Complex64 {
        self.coefficient(0)
    }

    pub fn soul(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }

    /// Part of degree exactly `k`.
    pub fn grade(&self, k: u32) -> Self {
        Self {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == k)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// Parity if homogeneous; `None` for mixed elements. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|&m| Parity::of_mask(m));
        match it.next() {
            None => Some(Parity::Even),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }

    /// Split into even and odd parts.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Self::zero(&self.table);
        let mut odd = Self::zero(&self.table);
        for (&m, &c) in &self.terms {
            match Parity::of_mask(m) {
                Parity::Even => even.terms.insert(m, c),
                Parity::Odd => odd.terms.insert(m, c),
            };
        }
        (even, odd)
    }

    fn accumulate(&mut self, mask: u64, value: Complex64) {
        let entry = self.terms.entry(mask).or_default();
        *entry += value;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&mask);
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        if k == Complex64::new(0.0, 0.0) {
            return Self::zero(&self.table);
        }
        Self {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(&m, &c)| (m, c * k)).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.same_table(other) {
            return Err(Error::TableMismatch);
        }
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.accumulate(m, c);
        }
        Ok(out)
    }

    /// Graded product. Fails when the operands use different tables.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if !self.same_table(other) {
            return Err(Error::TableMismatch);
        }
        let mut out = Self::zero(&self.table);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                out.accumulate(ma | mb, ca * cb * merge_sign(ma, mb));
            }
        }
        Ok(out)
    }

    /// Complex/Grassmann conjugation: conjugates coefficients, maps each
    /// generator to its partner and reverses the order of every monomial.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(&self.table);
        for (&m, &c) in &self.terms {
            // reversed list of conjugated generators, then sorted into canonical order
            let mut seq: Vec<usize> = bits(m).map(|i| self.table.conjugate_index(i)).collect();
            seq.reverse();
            let (mask, sign) = canonicalize(&seq);
            out.accumulate(mask, c.conj() * sign);
        }
        out
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut masks: Vec<u64> = self.terms.keys().copied().collect();
        masks.extend(other.terms.keys().copied());
        masks
            .into_iter()
            .map(|m| (self.coefficient(m) - other.coefficient(m)).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Drop coefficients with modulus at or below `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// Apply an analytic function given its Taylor coefficients around the body:
    /// `f(b + s) = Σ_k f^(k)(b)/k! s^k`. The series terminates because the
    /// soul is nilpotent; `derivatives[k]` must hold `f^(k)(b)`.
    pub fn apply_series(&self, derivatives: impl Fn(usize) -> Complex64) -> Self {
        let soul = self.soul();
        let mut out = Self::scalar(&self.table, derivatives(0));
        let mut power = Self::one(&self.table);
        let mut factorial = 1.0;
        for k in 1.. {
            power = &power * &soul;
            if power.is_zero() {
                break;
            }
            factorial *= k as f64;
            out = &out + &power.scale(derivatives(k) / factorial);
        }
        out
    }

    /// Square root of an element with positive real body.
    pub fn sqrt(&self) -> Self {
        let b = self.body();
        // d^k/dx^k sqrt(x) = (1/2)(1/2 - 1)...(1/2 - k + 1) x^(1/2 - k)
        self.apply_series(|k| {
            let mut falling = 1.0;
            for j in 0..k {
                falling *= 0.5 - j as f64;
            }
            b.powf(0.5 - k as f64) * falling
        })
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        }
    })
}

/// Canonical mask and sign of the ordered product of distinct generators.
fn canonicalize(seq: &[usize]) -> (u64, f64) {
    let mut mask = 0u64;
    let mut sign = 1.0;
    for &g in seq {
        let bit = 1u64 << g;
        if mask & bit != 0 {
            return (0, 0.0);
        }
        // appending g on the right of `mask`: move past generators above it
        if mask.checked_shr(g as u32 + 1).unwrap_or(0).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= bit;
    }
    (mask, sign)
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other) && self.terms == other.terms
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;
    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_add(rhs).expect("Grassmann sum across tables")
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;
    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.try_add(&-rhs).expect("Grassmann difference across tables")
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;
    fn neg(self) -> GrassmannElement {
        self.scale_re(-1.0)
    }
}

/// Panics on table mismatch; use [`GrassmannElement::product`] for a fallible product.
impl Mul for &GrassmannElement {
    type Output = GrassmannElement;
    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        self.product(rhs).expect("Grassmann product across tables")
    }
}

fn fmt_coefficient(c: Complex64) -> String {
    // adding zero folds -0 into 0
    format!("({}, {})", c.re + 0.0, c.im + 0.0)
}

/// Stable textual dump: terms in ascending monomial order.
impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&m, &c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_coefficient(c))?;
            for i in bits(m) {
                write!(f, " {}", self.table.name(i))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xi_table(n: usize) -> Arc<GeneratorTable> {
        GeneratorTable::new(
            (0..n)
                .map(|mu| Generator {
                    name: format!("xi{mu}"),
                    kind: GeneratorKind::XiVector(mu),
                })
                .collect(),
        )
        .unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generators_are_nilpotent() {
        let t = xi_table(4);
        for i in 0..4 {
            let g = GrassmannElement::generator(&t, i);
            assert!((&g * &g).is_zero());
        }
    }

    #[test]
    fn distinct_generators_anticommute() {
        let t = xi_table(4);
        let x1 = GrassmannElement::generator(&t, 1);
        let x2 = GrassmannElement::generator(&t, 2);
        assert!((&(&x1 * &x2) + &(&x2 * &x1)).is_zero());
        assert_eq!((&x2 * &x1).coefficient(0b110), c(-1.0, 0.0));
    }

    #[test]
    fn product_rejects_foreign_table() {
        let a = GrassmannElement::generator(&xi_table(3), 0);
        let b = GrassmannElement::generator(&xi_table(2), 0);
        assert!(matches!(a.product(&b), Err(Error::TableMismatch)));
    }

    #[test]
    fn conjugation_reverses_order() {
        let t = xi_table(3);
        let x1 = GrassmannElement::generator(&t, 1);
        let x2 = GrassmannElement::generator(&t, 2);
        let prod = &x1 * &x2;
        // (ξ1 ξ2)* = ξ2 ξ1 = -ξ1 ξ2
        assert_eq!(prod.conjugate(), -&prod);
        assert_eq!(prod.conjugate().conjugate(), prod);
    }

    #[test]
    fn table_validation() {
        let dup = GeneratorTable::new(vec![
            Generator { name: "a".into(), kind: GeneratorKind::XiVector(0) },
            Generator { name: "a".into(), kind: GeneratorKind::XiVector(1) },
        ]);
        assert!(matches!(dup, Err(Error::InvalidTable(_))));
        let dangling = GeneratorTable::new(vec![Generator {
            name: "p".into(),
            kind: GeneratorKind::MomentumOf(3),
        }]);
        assert!(dangling.is_err());
        let lonely_alpha = GeneratorTable::new(vec![Generator {
            name: "alpha".into(),
            kind: GeneratorKind::Alpha,
        }]);
        assert!(lonely_alpha.is_err());
    }

    #[test]
    fn sqrt_of_nilpotent_shift_terminates() {
        let t = xi_table(4);
        let x0 = GrassmannElement::generator(&t, 0);
        let x1 = GrassmannElement::generator(&t, 1);
        let bil = &x0 * &x1;
        let arg = &GrassmannElement::scalar(&t, c(4.0, 0.0)) + &bil.scale_re(2.0);
        // sqrt(4 + 2s) = 2 + s/2 exactly since s^2 = 0
        let root = arg.sqrt();
        assert!((root.body() - c(2.0, 0.0)).norm() < 1e-15);
        assert!((root.coefficient(0b11) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((&root * &root).approx_eq(&arg, 1e-15));
    }

    #[test]
    fn display_is_stable() {
        let t = xi_table(3);
        let x0 = GrassmannElement::generator(&t, 0);
        let x2 = GrassmannElement::generator(&t, 2);
        let e = &(&x2 * &x0).scale(c(0.0, 1.0)) + &GrassmannElement::scalar(&t, c(0.5, 0.0));
        assert_eq!(e.to_string(), "(0.5, 0) + (0, -1) xi0 xi2");
        assert_eq!(GrassmannElement::zero(&t).to_string(), "0");
    }

    fn element(table: Arc<GeneratorTable>) -> impl Strategy<Value = GrassmannElement> {
        let n = table.len();
        proptest::collection::vec((0u64..(1 << n), -2i32..=2, -2i32..=2), 0..6).prop_map(
            move |terms| {
                let mut e = GrassmannElement::zero(&table);
                for (m, re, im) in terms {
                    e = &e + &GrassmannElement::monomial(&table, m, c(re as f64, im as f64));
                }
                e
            },
        )
    }

    proptest! {
        #[test]
        fn product_is_associative(
            (a, b, d) in Just(xi_table(5)).prop_flat_map(|t| (element(t.clone()), element(t.clone()), element(t)))
        ) {
            let left = &(&a * &b) * &d;
            let right = &a * &(&b * &d);
            prop_assert!(left.approx_eq(&right, 1e-14));
        }

        #[test]
        fn conjugation_is_antihomomorphic(
            (a, b) in Just(xi_table(4)).prop_flat_map(|t| (element(t.clone()), element(t)))
        ) {
            let lhs = (&a * &b).conjugate();
            let rhs = &b.conjugate() * &a.conjugate();
            prop_assert!(lhs.approx_eq(&rhs, 1e-14));
            prop_assert!(a.conjugate().conjugate().approx_eq(&a, 0.0));
        }
    }
}
