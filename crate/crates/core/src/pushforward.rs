//! Integration along the fibre of a plane bundle, and the two derivations
//! it supports: the degree-(8k+2) formula from the twisted one on the total
//! space, and the `(d, n)` general formula from the `(d+1, ·)` one.
//!
//! On the total space the tangent roots are `x ∪ {u}` and the pulled-back
//! bundle has Euler class `u`; the Thom class rule `π_*(u^k) = e^{k−1}`
//! (and `π_*` of a `u`-free form is zero) is applied termwise.

use crate::charforms::{euler_hyperbolic, BundleExpr, Hyperbolic};
use crate::error::{Error, Result};
use crate::modular::{build_basis, dual_basis_check, solve_in_basis, HSolution, Side};
use crate::qseries::render_exponent;
use crate::rational::Rational;
use crate::report::{params, VerificationReport};
use crate::ring::{FormPoly, RingSpec};
use crate::theorems::{
    block_sum, general_series, general_shape, int, resolve_q_cap, ring, thm31_with_h, top_series, total_genera,
    verify_thm33, RunConfig,
};
use crate::theta::ModularGenerators;
use crate::witten::{build_theta, ThetaConfig, Variant};

/// `π_*` on forms in `x, u`: lowers the cap by 2.
pub fn pi_star(f: &FormPoly) -> Result<FormPoly> {
    let spec = *f.spec();
    let u =
        spec.euler_var().ok_or_else(|| Error::InvalidParameters("pushforward needs the fibre variable u".into()))?;
    let target = spec.with_cap(spec.degree_cap.saturating_sub(2))?;
    Ok(FormPoly::from_terms(
        target,
        f.terms().filter_map(|(m, c)| m.div_var(u, 1, spec.var_weight(u)).map(|q| (q, c.clone()))),
    ))
}

fn total_tangent() -> BundleExpr {
    BundleExpr::TANGENT + BundleExpr::EULER
}

/// Pushes the twisted formula on the total space of `N → B`, `dim B = 8k+2`,
/// down to `B` and compares with the direct degree-(8k+2) computation.
pub fn verify_fiber_to_31(k: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    let d = 4 * k as usize + 1;
    let w = d as u32 + 1;
    let q_cap = resolve_q_cap(w, cfg.q_cap)?;
    let deg = 2 * d as u32 + 2;
    let spec = ring(d, true, deg, cfg.basis)?;
    let (ahat, lhat) = total_genera(&spec, total_tangent())?;
    let cosh = euler_hyperbolic(Hyperbolic::Cosh, 1, &spec)?;
    let inv_cosh2 = euler_hyperbolic(Hyperbolic::Cosh, -2, &spec)?;

    let theta = |trivial| build_theta(&ThetaConfig::total_space(Variant::TB2, trivial, q_cap), &spec);
    let p_triv = top_series(&theta(true)?.mul_form(&ahat)?, deg);
    let p_xi = top_series(&theta(false)?.mul_form(&(&ahat * &cosh))?, deg);
    let gens = ModularGenerators::new(q_cap)?;
    let basis = build_basis(w, Side::Upper, &gens)?;
    let sol_triv = solve_in_basis(&p_triv, &basis)?;
    let sol_xi = solve_in_basis(&p_xi, &basis)?;
    let lead = &int(cfg.constants.factor_8k2) * &Rational::pow2(cfg.constants.block_exp * k as i64);

    let total_lhs = (&lhat * &(&FormPoly::one(spec) - &inv_cosh2)).top_component(deg);
    let integrands: Vec<FormPoly> = sol_triv.h.iter().zip(&sol_xi.h).map(|(a, b)| a - b).collect();
    let pushed_lhs = pi_star(&total_lhs)?;
    let pushed: Vec<FormPoly> = integrands.iter().map(pi_star).collect::<Result<_>>()?;
    let base = *pushed_lhs.spec();
    let rhs = block_sum(&pushed, base, cfg.constants.block_exp).scale(&lead);

    let mut report = VerificationReport::new(
        "fiber-31",
        params([("k", k.into()), ("base_dim", (2 * d).into()), ("q_cap", render_exponent(q_cap).into())]),
        &pushed_lhs,
        &rhs,
    )?;
    let combined = HSolution {
        h: pushed.clone(),
        combo: sol_triv.combo.clone(),
        residual: &sol_triv.residual + &sol_xi.residual,
        side: Side::Upper,
    };
    report.attach_solution(&combined)?;
    report.check("same_combinations", sol_triv.combo == sol_xi.combo);
    report.check(
        "total_space_trivial_xi",
        lhat.top_component(deg) == block_sum(&sol_triv.h, spec, cfg.constants.block_exp).scale(&lead),
    );
    report.check(
        "total_space_twisted_xi",
        (&lhat * &inv_cosh2).top_component(deg) == block_sum(&sol_xi.h, spec, cfg.constants.block_exp).scale(&lead),
    );

    let base_lhat = crate::charforms::genus_form(crate::charforms::GenusKind::LHat, &base);
    let tanh = euler_hyperbolic(Hyperbolic::Tanh, 1, &base)?;
    report.check("pushforward_of_lhs", pushed_lhs == (&base_lhat * &tanh).top_component(base.degree_cap));
    let (direct, direct_h) = thm31_with_h(k, cfg)?;
    report.check("direct_route_passes", direct.passed());
    report.check("pushforward_of_coefficients", pushed == direct_h);
    Ok(report)
}

/// Derives the `(d, n)` general formula by pushing forward the
/// `(d + 1, n + (d mod 2))` formula on the total space of a plane bundle.
pub fn verify_fiber_reduction(d: usize, n: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    let shape = general_shape(d, n)?;
    let source = general_shape(d + 1, n + (d % 2) as u32)?;
    if source.weight <= 0 {
        return Err(Error::InvalidParameters(format!(
            "source instance ({}, {}) has weight {} and is degenerate",
            d + 1,
            n + (d % 2) as u32,
            source.weight
        )));
    }
    let w = source.weight as u32;
    let q_cap = resolve_q_cap(w, cfg.q_cap)?;
    let deg = 2 * d as u32 + 2;
    let spec = ring(d, true, deg, cfg.basis)?;
    let s = shape.s;
    let total = general_series(spec, total_tangent(), s + 1, q_cap)?;

    let gens = ModularGenerators::new(q_cap)?;
    let dual = dual_basis_check(&total.p1, &total.p2, w, &Rational::pow2(d as i64 + 1), &gens)?;
    let sol = &dual.upper;
    let total_rhs = block_sum(&sol.h, spec, cfg.constants.block_exp).scale(&Rational::pow2(source.lead_exp));

    let pushed_lhs = pi_star(&total.lhs)?;
    let pushed: Vec<FormPoly> = sol.h.iter().map(pi_star).collect::<Result<_>>()?;
    let base: RingSpec = *pushed_lhs.spec();
    let rhs = block_sum(&pushed, base, cfg.constants.block_exp).scale(&Rational::pow2(source.lead_exp));

    let mut report = VerificationReport::new(
        "fiber-reduce",
        params([
            ("d", d.into()),
            ("n", n.into()),
            ("source_d", (d + 1).into()),
            ("source_n", (n + (d % 2) as u32).into()),
            ("q_cap", render_exponent(q_cap).into()),
        ]),
        &pushed_lhs,
        &rhs,
    )?;
    report.attach_solution(sol)?;
    report.check("dual", dual.agree);
    report.check("total_space_identity", total.lhs == total_rhs);
    report.check("lead_exponent_shift", source.lead_exp == shape.lead_exp + 1);

    let collapsed = ThetaConfig { tangent: total_tangent(), ..ThetaConfig::prime(Variant::Prime2, s + 1, q_cap) };
    report.check(
        "k_theory_collapse",
        build_theta(&collapsed, &spec)? == build_theta(&ThetaConfig::prime(Variant::Prime2, s, q_cap), &spec)?,
    );

    let direct = verify_thm33(d, n, cfg)?;
    report.check("direct_route_passes", direct.passed());
    report.check("pushforward_of_lhs", report.lhs_form == direct.lhs_form);
    let doubled: Vec<_> = pushed.iter().map(|h| h.scale(&int(2)).to_pontryagin()).collect::<Result<_>>()?;
    report.check("pushforward_halves_coefficients", doubled == direct.h_forms);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::univariate;

    #[test]
    fn thom_rule() {
        let spec = RingSpec::new(1, true, 8).unwrap();
        let u = spec.euler_var().unwrap();
        let u2 = FormPoly::term(spec, spec.mono(u, 2), Rational::one());
        assert_eq!(pi_star(&u2).unwrap().render(), "u");
        assert!(pi_star(&FormPoly::one(spec)).unwrap().is_zero());
        assert_eq!(pi_star(&u2).unwrap().spec().degree_cap, 6);
    }

    #[test]
    fn pushforward_of_u_tanh() {
        let spec = RingSpec::new(0, true, 12).unwrap();
        let u = spec.euler_var().unwrap();
        let tanh = euler_hyperbolic(Hyperbolic::Tanh, 1, &spec).unwrap();
        let f = &FormPoly::var(spec, u) * &tanh;
        let base = spec.with_cap(10).unwrap();
        assert_eq!(pi_star(&f).unwrap(), euler_hyperbolic(Hyperbolic::Tanh, 1, &base).unwrap());
        // π_*((u/2)/sinh(u/2) · sinh(u/2)) = 1/2
        let ahat_u = FormPoly::univariate(spec, u, &univariate::ahat_factor(13));
        let sinh = euler_hyperbolic(Hyperbolic::Sinh, 1, &spec).unwrap();
        assert_eq!(pi_star(&(&ahat_u * &sinh)).unwrap(), FormPoly::constant(base, Rational::new(1, 2)));
    }

    #[test]
    fn fiber_routes() {
        let cfg = RunConfig::default();
        let r = verify_fiber_to_31(0, &cfg).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        for (d, n) in [(2, 0), (3, 0), (4, 0), (4, 1), (5, 0), (6, 0), (6, 1)] {
            let r = verify_fiber_reduction(d, n, &cfg).unwrap();
            assert!(r.passed(), "({d},{n}) {}", r.render_text());
        }
        assert!(verify_fiber_reduction(2, 1, &cfg).is_err());
    }
}
