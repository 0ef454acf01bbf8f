use std::sync::Arc;

use num_complex::Complex64;

use super::{BracketSpec, Generator, GeneratorKind, GeneratorTable, GrassmannElement};
use crate::error::Result;
use crate::kinematics::{wigner_tetrad, FourVector, RapidityVector, Signature};

/// Generator table, fundamental brackets and constraints of the pseudo-classical
/// two-level atom: the dipole vector `ξ^μ`, the level variables `α, α*, β, β*`
/// and their momenta.
#[derive(Debug, Clone)]
pub struct AtomAlgebra {
    table: Arc<GeneratorTable>,
    spec: BracketSpec,
}

const XI: usize = 0;
const ALPHA: usize = 4;
const ALPHA_STAR: usize = 5;
const BETA: usize = 6;
const BETA_STAR: usize = 7;
const PI_XI: usize = 8;
const PI_ALPHA: usize = 12;
const PI_ALPHA_STAR: usize = 13;
const PI_BETA: usize = 14;
const PI_BETA_STAR: usize = 15;

impl AtomAlgebra {
    pub fn new(sgn: Signature) -> Self {
        let mut entries = Vec::with_capacity(16);
        for mu in 0..4 {
            entries.push(Generator {
                name: format!("xi{mu}"),
                kind: GeneratorKind::XiVector(mu),
            });
        }
        for (name, kind) in [
            ("alpha", GeneratorKind::Alpha),
            ("alpha*", GeneratorKind::AlphaStar),
            ("beta", GeneratorKind::Beta),
            ("beta*", GeneratorKind::BetaStar),
        ] {
            entries.push(Generator { name: name.into(), kind });
        }
        for mu in 0..4 {
            entries.push(Generator {
                name: format!("pi_xi{mu}"),
                kind: GeneratorKind::MomentumOf(XI + mu),
            });
        }
        for (name, target) in [
            ("pi_alpha", ALPHA),
            ("pi_alpha*", ALPHA_STAR),
            ("pi_beta", BETA),
            ("pi_beta*", BETA_STAR),
        ] {
            entries.push(Generator {
                name: name.into(),
                kind: GeneratorKind::MomentumOf(target),
            });
        }
        let table = GeneratorTable::new(entries).expect("atom table is well formed");

        let mut spec = BracketSpec::new(&table, sgn);
        let minus_one = Complex64::new(-1.0, 0.0);
        for mu in 0..4 {
            spec.set(XI + mu, PI_XI + mu, Complex64::new(-sgn.eta(mu, mu), 0.0));
        }
        spec.set(ALPHA, PI_ALPHA, minus_one);
        spec.set(ALPHA_STAR, PI_ALPHA_STAR, minus_one);
        spec.set(BETA, PI_BETA, minus_one);
        spec.set(BETA_STAR, PI_BETA_STAR, minus_one);
        Self { table, spec }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn spec(&self) -> &BracketSpec {
        &self.spec
    }

    pub fn sgn(&self) -> Signature {
        self.spec.sgn()
    }

    fn gen(&self, i: usize) -> GrassmannElement {
        GrassmannElement::generator(&self.table, i)
    }

    pub fn xi(&self, mu: usize) -> GrassmannElement {
        assert!(mu < 4);
        self.gen(XI + mu)
    }

    pub fn pi_xi(&self, mu: usize) -> GrassmannElement {
        assert!(mu < 4);
        self.gen(PI_XI + mu)
    }

    pub fn alpha(&self) -> GrassmannElement {
        self.gen(ALPHA)
    }

    pub fn alpha_star(&self) -> GrassmannElement {
        self.gen(ALPHA_STAR)
    }

    pub fn beta(&self) -> GrassmannElement {
        self.gen(BETA)
    }

    pub fn beta_star(&self) -> GrassmannElement {
        self.gen(BETA_STAR)
    }

    pub fn pi_alpha(&self) -> GrassmannElement {
        self.gen(PI_ALPHA)
    }

    pub fn pi_alpha_star(&self) -> GrassmannElement {
        self.gen(PI_ALPHA_STAR)
    }

    pub fn pi_beta(&self) -> GrassmannElement {
        self.gen(PI_BETA)
    }

    pub fn pi_beta_star(&self) -> GrassmannElement {
        self.gen(PI_BETA_STAR)
    }

    fn constraints_with_sign(&self, s: f64) -> Vec<GrassmannElement> {
        let half_i = Complex64::new(0.0, 0.5 * s);
        let mut out = Vec::with_capacity(8);
        for mu in 0..4 {
            out.push(&self.pi_xi(mu) + &self.xi(mu).scale(half_i));
        }
        out.push(&self.pi_alpha() + &self.alpha_star().scale(half_i));
        out.push(&self.pi_alpha_star() + &self.alpha().scale(half_i));
        out.push(&self.pi_beta() + &self.beta_star().scale(half_i));
        out.push(&self.pi_beta_star() + &self.beta().scale(half_i));
        out
    }

    /// Second-class constraints `χ^μ = π^μ_ξ + (i/2) ξ^μ`,
    /// `χ_α = π_α + (i/2) α*`, `χ*_α = π*_α + (i/2) α`, and likewise for β.
    pub fn second_class_constraints(&self) -> Vec<GrassmannElement> {
        self.constraints_with_sign(1.0)
    }

    /// The same constraints with `−(i/2)` on the ξ and conjugate-level terms.
    /// The level block of their bracket matrix vanishes, so they are not
    /// second class; kept for regression tests.
    pub fn opposite_sign_constraints(&self) -> Vec<GrassmannElement> {
        let half_i = Complex64::new(0.0, 0.5);
        let mut out = Vec::with_capacity(8);
        for mu in 0..4 {
            out.push(&self.pi_xi(mu) - &self.xi(mu).scale(half_i));
        }
        out.push(&self.pi_alpha() + &self.alpha_star().scale(half_i));
        out.push(&self.pi_alpha_star() - &self.alpha().scale(half_i));
        out.push(&self.pi_beta() + &self.beta_star().scale(half_i));
        out.push(&self.pi_beta_star() - &self.beta().scale(half_i));
        out
    }

    /// Transversality constraint `Φ = P_μ ξ^μ` at a fixed numeric momentum.
    pub fn transversality(&self, p: &FourVector) -> GrassmannElement {
        let lower = p.lower();
        let mut phi = GrassmannElement::zero(&self.table);
        for (mu, p_mu) in lower.iter().enumerate() {
            phi = &phi + &self.xi(mu).scale_re(*p_mu);
        }
        phi
    }

    /// Second-class constraints together with `Φ` for momentum direction `h`.
    pub fn rest_frame_constraints(&self, h: &RapidityVector) -> Vec<GrassmannElement> {
        let mut out = self.second_class_constraints();
        out.push(self.transversality(&h.four_velocity(self.sgn())));
        out
    }

    /// Transverse dipole components `ξ^r_⊥ = ε^r_μ(h) ξ^μ`.
    pub fn xi_perp(&self, h: &RapidityVector) -> Result<[GrassmannElement; 3]> {
        let inv = crate::kinematics::inverse_tetrad(&wigner_tetrad(h, self.sgn())?);
        Ok(std::array::from_fn(|r| {
            let mut out = GrassmannElement::zero(&self.table);
            for mu in 0..4 {
                out = &out + &self.xi(mu).scale_re(inv.m[r + 1][mu]);
            }
            out
        }))
    }

    /// Spin vector `S^r = −(i/2) ε^{ruv} ξ^u_⊥ ξ^v_⊥`.
    pub fn spin(&self, xi_perp: &[GrassmannElement; 3]) -> [GrassmannElement; 3] {
        std::array::from_fn(|r| {
            let (u, v) = ((r + 1) % 3, (r + 2) % 3);
            // ε^{ruv} ξ^u ξ^v summed over u,v = 2 ξ^u ξ^v for the cyclic pair
            (&xi_perp[u] * &xi_perp[v]).scale(Complex64::new(0.0, -1.0))
        })
    }

    /// Level bilinear `β* α + α* β` entering the electric dipole.
    pub fn level_bilinear(&self) -> GrassmannElement {
        &(&self.beta_star() * &self.alpha()) + &(&self.alpha_star() * &self.beta())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::grassmann::{dirac_bracket, graded_poisson_bracket, reduced_spec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_numeric(e: &GrassmannElement, expected: Complex64) {
        assert!(e.soul().is_zero(), "unexpected soul in {e}");
        assert!((e.body() - expected).norm() <= 1e-14, "{e} vs {expected}");
    }

    #[test]
    fn fundamental_brackets() {
        for sgn in [Signature::Plus, Signature::Minus] {
            let a = AtomAlgebra::new(sgn);
            for mu in 0..4 {
                for nu in 0..4 {
                    let b = graded_poisson_bracket(&a.xi(mu), &a.pi_xi(nu), a.spec()).unwrap();
                    assert_numeric(&b, c(-sgn.eta(mu, nu), 0.0));
                    let xx = graded_poisson_bracket(&a.xi(mu), &a.xi(nu), a.spec()).unwrap();
                    assert!(xx.is_zero());
                }
            }
            let b = graded_poisson_bracket(&a.alpha(), &a.pi_alpha(), a.spec()).unwrap();
            assert_numeric(&b, c(-1.0, 0.0));
        }
    }

    #[test]
    fn level_bilinear_square() {
        let a = AtomAlgebra::new(Signature::Plus);
        let d = a.level_bilinear();
        let down = &a.beta_star() * &a.alpha();
        let up = &a.alpha_star() * &a.beta();
        // each half is nilpotent, the cross terms are not
        assert!((&down * &down).is_zero());
        assert!((&up * &up).is_zero());
        let square = &d * &d;
        assert_eq!(square, (&down * &up).scale_re(2.0));
        assert!(!square.is_zero());
    }

    #[test]
    fn quartic_transverse_dipole_vanishes() {
        let a = AtomAlgebra::new(Signature::Plus);
        let h = RapidityVector::new([0.7, -0.1, 0.4]).unwrap();
        let xp = a.xi_perp(&h).unwrap();
        let cubic = &(&xp[0] * &xp[1]) * &xp[2];
        assert!(!cubic.is_zero());
        for x in &xp {
            assert!((&cubic * x).max_abs_coefficient() < 1e-14);
        }
    }

    #[test]
    fn dipole_dirac_brackets() {
        for sgn in [Signature::Plus, Signature::Minus] {
            let a = AtomAlgebra::new(sgn);
            let chi = a.second_class_constraints();
            for mu in 0..4 {
                for nu in 0..4 {
                    let b = dirac_bracket(&a.xi(mu), &a.xi(nu), &chi, a.spec()).unwrap();
                    assert_numeric(&b, c(0.0, -sgn.eta(mu, nu)));
                }
            }
        }
    }

    #[test]
    fn level_dirac_brackets() {
        let a = AtomAlgebra::new(Signature::Plus);
        let chi = a.second_class_constraints();
        let levels = [a.alpha(), a.alpha_star(), a.beta(), a.beta_star()];
        for (i, x) in levels.iter().enumerate() {
            for (j, y) in levels.iter().enumerate() {
                let b = dirac_bracket(x, y, &chi, a.spec()).unwrap();
                let paired = matches!((i, j), (0, 1) | (1, 0) | (2, 3) | (3, 2));
                assert_numeric(&b, if paired { c(0.0, -1.0) } else { c(0.0, 0.0) });
            }
        }
    }

    #[test]
    fn opposite_sign_constraints_are_not_second_class() {
        let a = AtomAlgebra::new(Signature::Plus);
        let chi = a.opposite_sign_constraints();
        let err = dirac_bracket(&a.xi(0), &a.xi(0), &chi, a.spec()).unwrap_err();
        assert!(matches!(err, Error::NotSecondClass));
    }

    #[test]
    fn transverse_dirac_brackets() {
        let a = AtomAlgebra::new(Signature::Plus);
        for h in [[0.0, 0.0, 0.0], [0.3, -0.4, 1.2], [2.0, 1.0, -3.0]] {
            let h = RapidityVector::new(h).unwrap();
            let chi = a.rest_frame_constraints(&h);
            let xp = a.xi_perp(&h).unwrap();
            for r in 0..3 {
                for s in 0..3 {
                    let b = dirac_bracket(&xp[r], &xp[s], &chi, a.spec()).unwrap();
                    let expected = if r == s { c(0.0, 1.0) } else { c(0.0, 0.0) };
                    assert!(b.soul().is_zero());
                    assert!((b.body() - expected).norm() <= 1e-12 * (1.0 + h.norm_sq()));
                }
            }
        }
    }

    #[test]
    fn dirac_bracket_annihilates_constraints() {
        let a = AtomAlgebra::new(Signature::Plus);
        let chi = a.second_class_constraints();
        let probe = &(&a.xi(1) * &a.alpha()) + &(&a.beta_star() * &a.pi_xi(2));
        for k in &chi {
            let b = dirac_bracket(&probe, k, &chi, a.spec()).unwrap();
            assert!(b.max_abs_coefficient() <= 1e-14, "{b}");
        }
    }

    #[test]
    fn reduced_table_matches_dirac_bracket_on_composites() {
        let a = AtomAlgebra::new(Signature::Plus);
        let chi = a.second_class_constraints();
        let star = reduced_spec(&chi, a.spec()).unwrap();
        let x = &(&a.xi(0) * &a.xi(3)) + &a.alpha();
        let y = &(&a.alpha_star() * &a.xi(3)) + &(&a.beta() * &a.beta_star());
        let direct = dirac_bracket(&x, &y, &chi, a.spec()).unwrap();
        let via = graded_poisson_bracket(&x, &y, &star).unwrap();
        assert!(direct.approx_eq(&via, 1e-14), "{direct} vs {via}");
    }

    #[test]
    fn spin_algebra() {
        let a = AtomAlgebra::new(Signature::Plus);
        let h = RapidityVector::new([0.2, 0.5, -0.1]).unwrap();
        let chi = a.rest_frame_constraints(&h);
        let star = reduced_spec(&chi, a.spec()).unwrap();
        let s = a.spin(&a.xi_perp(&h).unwrap());
        for r in 0..3 {
            let (u, v) = ((r + 1) % 3, (r + 2) % 3);
            let b = graded_poisson_bracket(&s[u], &s[v], &star).unwrap();
            // {S^u, S^v}* = −ε^{uvr} S^r for the odd realization
            assert!(b.approx_eq(&-&s[r], 1e-12), "{b}");
        }
    }

    #[test]
    fn bracket_dump_is_stable() {
        let a = AtomAlgebra::new(Signature::Plus);
        let dump = a.spec().dump();
        assert!(dump.starts_with("{xi0, pi_xi0} = (-1, 0)\n{xi1, pi_xi1} = (1, 0)\n"));
        assert_eq!(dump.lines().count(), 8);
    }

    fn homogeneous(odd: bool) -> impl Strategy<Value = Vec<(Vec<usize>, i32, i32)>> {
        let mono = proptest::collection::btree_set(0usize..16, 0..4).prop_filter_map(
            "parity",
            move |set| (set.len() % 2 == usize::from(odd)).then(|| set.into_iter().collect()),
        );
        proptest::collection::vec((mono, -3i32..=3, -3i32..=3), 1..4)
    }

    fn build(a: &AtomAlgebra, terms: &[(Vec<usize>, i32, i32)]) -> GrassmannElement {
        let mut out = GrassmannElement::zero(a.table());
        for (gens, re, im) in terms {
            let mut m = GrassmannElement::scalar(a.table(), c(*re as f64, *im as f64));
            for &g in gens {
                m = &m * &GrassmannElement::generator(a.table(), g);
            }
            out = &out + &m;
        }
        out
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn graded_jacobi_identity(
            (pa, ta, pb, tb, pc, tc) in (any::<bool>(), any::<bool>(), any::<bool>())
                .prop_flat_map(|(pa, pb, pc)| {
                    (Just(pa), homogeneous(pa), Just(pb), homogeneous(pb), Just(pc), homogeneous(pc))
                }),
        ) {
            let alg = AtomAlgebra::new(Signature::Plus);
            let (a, b, cc) = (build(&alg, &ta), build(&alg, &tb), build(&alg, &tc));
            let sign = |x: bool, y: bool| if x && y { -1.0 } else { 1.0 };
            let br = |x: &GrassmannElement, y: &GrassmannElement| {
                graded_poisson_bracket(x, y, alg.spec()).unwrap()
            };
            let total = &(&br(&a, &br(&b, &cc)).scale_re(sign(pa, pc))
                + &br(&b, &br(&cc, &a)).scale_re(sign(pb, pa)))
                + &br(&cc, &br(&a, &b)).scale_re(sign(pc, pb));
            prop_assert!(total.max_abs_coefficient() < 1e-12, "{}", total);
        }

        #[test]
        fn dirac_bracket_with_any_constraint_vanishes(
            terms in homogeneous(true), even_terms in homogeneous(false), k in 0usize..8,
        ) {
            let alg = AtomAlgebra::new(Signature::Plus);
            let chi = alg.second_class_constraints();
            for probe in [build(&alg, &terms), build(&alg, &even_terms)] {
                let b = dirac_bracket(&probe, &chi[k], &chi, alg.spec()).unwrap();
                prop_assert!(b.max_abs_coefficient() < 1e-13, "{}", b);
            }
        }
    }
}
