//! Invariants over randomly generated inputs.

use modcancel::modular::{build_basis, solve_in_basis, Side};
use modcancel::pushforward::pi_star;
use modcancel::qseries::{QSeries, HALF, UNIT};
use modcancel::ring::RootBasis;
use modcancel::theta::ModularGenerators;
use modcancel::{FormPoly, Rational, RingSpec};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

/// Random polynomial in a ring with `d` roots and the Euler variable.
fn poly(spec: RingSpec) -> impl Strategy<Value = FormPoly> {
    let nvars = spec.num_vars();
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), rational()), 0..6).prop_map(move |terms| {
        FormPoly::from_terms(
            spec,
            terms.into_iter().map(|(e, c)| (spec.mono_from_exponents(&e), c)).collect::<Vec<_>>(),
        )
    })
}

fn ring() -> RingSpec {
    RingSpec::new(2, true, 8).unwrap()
}

/// A symmetric even form: random polynomial symmetrized over `x1 ↔ x2`
/// and `x_j ↦ −x_j`.
fn symmetric(f: &FormPoly) -> FormPoly {
    let spec = *f.spec();
    let flips = [Rational::one(), -Rational::one()];
    let mut out = FormPoly::zero(spec);
    for s0 in &flips {
        for s1 in &flips {
            let g = f.scale_var(0, s0).scale_var(1, s1);
            let swapped =
                FormPoly::from_terms(spec, g.terms().map(|(m, c)| (m.swap(0, 1), c.clone())).collect::<Vec<_>>());
            out = &out + &(&g + &swapped);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn ring_laws(a in poly(ring()), b in poly(ring()), c in poly(ring())) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_of_a_unit(a in poly(ring()), c in 1i64..5) {
        let unit = &FormPoly::constant(ring(), Rational::from_int(c)) + &(&a - &FormPoly::constant(ring(), a.constant_term()));
        let inv = unit.poly_invert().unwrap();
        prop_assert_eq!(&unit * &inv, FormPoly::one(ring()));
    }

    #[test]
    fn pontryagin_round_trip(a in poly(ring())) {
        let s = symmetric(&a);
        let p = s.to_pontryagin().unwrap();
        prop_assert_eq!(p.to_roots(ring()).unwrap(), s.clone());
        let sums = s.change_basis(RootBasis::PowerSums).unwrap();
        prop_assert_eq!(sums.change_basis(RootBasis::Roots).unwrap(), s);
    }

    #[test]
    fn pushforward_is_linear(a in poly(ring()), b in poly(ring()), x in rational(), y in rational()) {
        let lhs = pi_star(&(&a.scale(&x) + &b.scale(&y))).unwrap();
        let rhs = &pi_star(&a).unwrap().scale(&x) + &pi_star(&b).unwrap().scale(&y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn solve_recovers_coefficients_and_is_linear(
        f in prop::collection::vec(poly(ring()), 3),
        g in prop::collection::vec(poly(ring()), 3),
        noise in poly(ring()),
    ) {
        let spec = ring();
        let gens = ModularGenerators::new(5 * HALF).unwrap();
        let basis = build_basis(8, Side::Upper, &gens).unwrap();
        let combine = |forms: &[FormPoly]| {
            basis.elements.iter().zip(forms).fold(QSeries::zero(spec, basis.q_cap()), |acc, (b, f)| {
                &acc + &b.embed_scalar(spec).mul_form(f).unwrap()
            })
        };
        let (p, q) = (combine(&f), combine(&g));
        let sp = solve_in_basis(&p, &basis).unwrap();
        prop_assert!(sp.residual_is_zero());
        prop_assert_eq!(&sp.h, &f);
        // Linearity holds for non-modular inputs as well.
        let junk = QSeries::monomial(noise, UNIT, basis.q_cap());
        let sum = solve_in_basis(&(&(&p + &q) + &junk), &basis).unwrap();
        let sj = solve_in_basis(&junk, &basis).unwrap();
        let sq = solve_in_basis(&q, &basis).unwrap();
        for r in 0..3 {
            prop_assert_eq!(&sum.h[r], &(&(&sp.h[r] + &sq.h[r]) + &sj.h[r]));
        }
    }
}
