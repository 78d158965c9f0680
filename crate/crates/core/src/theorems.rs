//! End-to-end drivers: each assembles both sides of one cancellation
//! formula, runs the modular expansion that produces the coefficient forms,
//! and compares top-degree components exactly.

use crate::charforms::{ch_bundle, det_half_2cosh, euler_hyperbolic, genus_form, BundleExpr, GenusKind, Hyperbolic};
use crate::error::{Error, Result};
use crate::modular::{basis_len, dual_basis_check, HSolution, Side};
use crate::qseries::{render_exponent, QSeries, HALF, UNIT};
use crate::rational::Rational;
use crate::report::{params, Constants, VerificationReport};
use crate::ring::{FormPoly, RingSpec, RootBasis};
use crate::theta::ModularGenerators;
use crate::witten::{build_theta, ThetaConfig, Variant};

/// Knobs shared by every driver.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub constants: Constants,
    /// Overrides the q-expansion cap (in units of `q^{1/8}`).
    pub q_cap: Option<u32>,
    pub basis: RootBasis,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { constants: Constants::default(), q_cap: None, basis: RootBasis::PowerSums }
    }
}

/// Smallest cap that solves a weight-`w` system with two half-integer
/// orders of overdetermination and leaves room for the `q`-step solve.
pub fn min_q_cap(w: u32) -> u32 {
    let len = basis_len(w) as u32;
    ((len + 1) * HALF).max((len - 1) * UNIT)
}

/// Default cap: four half-integer orders past the last pivot.
pub fn default_q_cap(w: u32) -> u32 {
    let len = basis_len(w) as u32;
    ((len + 3) * HALF).max((len - 1) * UNIT)
}

/// The cap to use for weight `w`, validating an override.
pub fn resolve_q_cap(w: u32, requested: Option<u32>) -> Result<u32> {
    match requested {
        None => Ok(default_q_cap(w)),
        Some(c) if c >= min_q_cap(w) => Ok(c),
        Some(c) => Err(Error::InvalidParameters(format!(
            "q cap q^{{{}}} is below the {} pivots of weight {w}; at least q^{{{}}} is needed",
            render_exponent(c),
            basis_len(w),
            render_exponent(min_q_cap(w))
        ))),
    }
}

pub(crate) fn ring(d: usize, euler: bool, cap: u32, basis: RootBasis) -> Result<RingSpec> {
    let s = RingSpec::new(d, euler, cap)?;
    Ok(if basis == RootBasis::PowerSums { s.power_sums() } else { s })
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

pub(crate) fn top_series(q: &QSeries, deg: u32) -> QSeries {
    q.map_coeffs(*q.spec(), |f| f.top_component(deg))
}

/// `Σ_r 2^{−br} h_r` with `b` the block exponent (6).
pub(crate) fn block_sum(h: &[FormPoly], spec: RingSpec, b: i64) -> FormPoly {
    h.iter().enumerate().fold(FormPoly::zero(spec), |acc, (r, f)| &acc + &f.scale(&Rational::pow2(-b * r as i64)))
}

/// `sinh(u/2)^s` (or `tanh`), with `s = 0` allowed in rings without `u`.
pub(crate) fn euler_power(kind: Hyperbolic, s: u32, spec: &RingSpec) -> Result<FormPoly> {
    if s == 0 {
        return Ok(FormPoly::one(*spec));
    }
    euler_hyperbolic(kind, s as i32, spec)
}

fn check_dim(d: usize) -> Result<()> {
    let limit = crate::ring::MAX_VARS - 1;
    if d == 0 || d > limit {
        return Err(Error::InvalidParameters(format!("manifold dimension {} is outside 2..={}", 2 * d, 2 * limit)));
    }
    Ok(())
}

fn basis_name(b: RootBasis) -> &'static str {
    match b {
        RootBasis::Roots => "roots",
        RootBasis::PowerSums => "power-sums",
    }
}

/// `{L̂}^{(12)} = {8Â ch(T_ℂM) − 32Â}^{(12)}`.
pub fn verify_agw(cfg: &RunConfig) -> Result<VerificationReport> {
    let c = &cfg.constants;
    let spec = ring(6, false, 12, cfg.basis)?;
    let ahat = genus_form(GenusKind::AHat, &spec);
    let lhs = genus_form(GenusKind::LHat, &spec).top_component(12);
    let twist =
        &ch_bundle(&BundleExpr::TANGENT, &spec)?.scale(&int(c.agw_twist)) - &FormPoly::constant(spec, int(c.agw_shift));
    let rhs = (&ahat * &twist).top_component(12);
    VerificationReport::new("agw", params([("dim", 12.into())]), &lhs, &rhs)
}

/// Real bundle `V` in the twisted formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VConfig {
    Tangent,
    /// `TM ⊕ ℝ^s` with `s` even.
    TangentPlusTrivial(u32),
}

impl VConfig {
    pub fn bundle(&self) -> BundleExpr {
        match self {
            VConfig::Tangent => BundleExpr::TANGENT,
            VConfig::TangentPlusTrivial(s) => BundleExpr::TANGENT + BundleExpr::trivial(*s as i64),
        }
    }

    pub fn label(&self) -> String {
        match self {
            VConfig::Tangent => "tm".to_string(),
            VConfig::TangentPlusTrivial(s) => format!("tm-plus-trivial:{s}"),
        }
    }
}

impl std::str::FromStr for VConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "tm" {
            return Ok(VConfig::Tangent);
        }
        let rank = s
            .strip_prefix("tm-plus-trivial:")
            .and_then(|r| r.parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown V configuration {s:?}; expected tm or tm-plus-trivial:S")))?;
        if rank % 2 != 0 {
            return Err(Error::InvalidParameters(format!("trivial summand rank {rank} must be even")));
        }
        Ok(VConfig::TangentPlusTrivial(rank))
    }
}

/// Twisted formula on an `(8k+4)`-manifold with bundles `V` and `ξ`:
/// `{Â det^{1/2}(2cosh V)/cosh²(e/2)} = 2^{l+2k+1} Σ_r 2^{−6r} {Â ch(b_r) cosh(e/2)}`.
pub fn verify_han_zhang(k: u32, v: VConfig, xi_trivial: bool, cfg: &RunConfig) -> Result<VerificationReport> {
    let d = 4 * k as usize + 2;
    check_dim(d)?;
    let w = d as u32;
    let q_cap = resolve_q_cap(w, cfg.q_cap)?;
    let deg = 2 * d as u32;
    let spec = ring(d, !xi_trivial, deg, cfg.basis)?;
    let vb = v.bundle();
    let l = vb.rank(&spec) / 2;

    let ahat = genus_form(GenusKind::AHat, &spec);
    let det = det_half_2cosh(&vb, &spec)?;
    let (cosh, inv_cosh2) = if xi_trivial {
        (FormPoly::one(spec), FormPoly::one(spec))
    } else {
        (euler_hyperbolic(Hyperbolic::Cosh, 1, &spec)?, euler_hyperbolic(Hyperbolic::Cosh, -2, &spec)?)
    };
    let lhs_full = &(&ahat * &det) * &inv_cosh2;
    let lhs = lhs_full.top_component(deg);

    let theta2 = build_theta(&ThetaConfig::hz(Variant::HZ2, vb, xi_trivial, q_cap), &spec)?;
    let p2 = top_series(&theta2.mul_form(&(&ahat * &cosh))?, deg);
    let theta1 = build_theta(&ThetaConfig::hz(Variant::HZ1, vb, xi_trivial, q_cap), &spec)?;
    let p1 = top_series(&theta1.mul_form(&lhs_full)?, deg);

    let gens = ModularGenerators::new(q_cap)?;
    let dual = dual_basis_check(&p1, &p2, w, &Rational::pow2(l), &gens)?;
    let sol = &dual.upper;
    let lead = Rational::pow2(l + 2 * k as i64 + 1);
    let rhs = block_sum(&sol.h, spec, cfg.constants.block_exp).scale(&lead);

    let mut report = VerificationReport::new(
        "han-zhang",
        params([
            ("k", k.into()),
            ("dim", (2 * d).into()),
            ("v_config", v.label().into()),
            ("xi_trivial", xi_trivial.into()),
            ("q_cap", render_exponent(q_cap).into()),
            ("basis", basis_name(cfg.basis).into()),
        ]),
        &lhs,
        &rhs,
    )?;
    report.attach_solution(sol)?;
    report.check("dual", dual.agree);
    report.check("integral", sol.combos_integral());

    // Coefficient of each Fourier layer P_j in the right-hand side.
    let gamma = layer_coefficients(sol, &lead, cfg.constants.block_exp);
    report
        .note(format!("layer coefficients: [{}]", gamma.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")));

    if k == 1 && v == VConfig::Tangent && !xi_trivial {
        let [a, b, c] = cfg.constants.twisted_12;
        let ch_t = ch_bundle(&BundleExpr::TANGENT, &spec)?;
        let ch_xi = ch_bundle(&BundleExpr::EULER, &spec)?;
        let bracket = &(&ch_t.scale(&int(a)) + &FormPoly::constant(spec, int(b)))
            + &(&ch_xi - &FormPoly::constant(spec, int(2))).scale(&int(c));
        let twisted = (&(&ahat * &bracket) * &cosh).top_component(deg);
        report.check("twisted_12", twisted == lhs);
        // The q⁰ and q^{1/2} layers: 64·P₀ − 8·P₁ is the same form.
        report.check("twisted_12_layers", gamma == vec![int(64), int(-8)]);
    }
    Ok(report)
}

/// `γ_j = lead · Σ_r 2^{−6r} c_{r,j}`: the right-hand side as a
/// combination of the Fourier layers.
pub fn layer_coefficients(sol: &HSolution, lead: &Rational, b: i64) -> Vec<Rational> {
    let n = sol.combo.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| {
            let s = sol
                .combo
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (r, row)| &acc + &(&row[j] * &Rational::pow2(-b * r as i64)));
            &s * lead
        })
        .collect()
}

/// The untwisted degree-(8k+4) formula via the twisted route with `V = TM`, `ξ` trivial,
/// cross-checked against the `(4k+2, 0)` instance of the general formula.
pub fn verify_liu(k: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    let mut hz = verify_han_zhang(k, VConfig::Tangent, true, cfg)?;
    let general = verify_thm33(4 * k as usize + 2, 0, cfg)?;
    hz.theorem = "liu".to_string();
    hz.check("general_formula_passes", general.passed());
    hz.check("routes_agree", hz.lhs_form == general.lhs_form && hz.rhs_form == general.rhs_form);
    hz.check("coefficients_agree", hz.h_forms == general.h_forms);
    Ok(hz)
}

/// Shared pipeline of the two formulas over an `(8k+2)`- or
/// `(8k+6)`-manifold `B` with a plane bundle `N`.
pub(crate) struct BaseWithPlane {
    pub spec: RingSpec,
    pub weight: u32,
    pub q_cap: u32,
    pub p1: QSeries,
    pub p2: QSeries,
    pub lhs: FormPoly,
    /// `{Â(1 − cosh)/(2sinh)}`.
    pub p0_closed: FormPoly,
    /// `{Â(B₁(ℂ²) − cosh B₁(N) − c(1 − cosh))/(2sinh)}` for a given `c`.
    pub b1_bracket: Box<dyn Fn(&Rational) -> Result<FormPoly>>,
}

pub(crate) fn base_with_plane(d: usize, cfg: &RunConfig) -> Result<BaseWithPlane> {
    check_dim(d)?;
    let w = d as u32 + 1;
    let q_cap = resolve_q_cap(w, cfg.q_cap)?;
    let deg = 2 * d as u32;
    let hi = ring(d, true, deg + 2, cfg.basis)?;
    let spec = ring(d, true, deg, cfg.basis)?;

    let cosh_hi = euler_hyperbolic(Hyperbolic::Cosh, 1, &hi)?;
    let sinh_hi = euler_hyperbolic(Hyperbolic::Sinh, 1, &hi)?;
    let denom = sinh_hi.scale(&int(cfg.constants.sinh_scale));
    let ahat = genus_form(GenusKind::AHat, &spec);

    let t2_triv = build_theta(&ThetaConfig::total_space(Variant::TB2, true, q_cap), &hi)?;
    let t2_n = build_theta(&ThetaConfig::total_space(Variant::TB2, false, q_cap), &hi)?;
    let num2 = &t2_triv - &t2_n.mul_form(&cosh_hi)?;
    let q2 = num2.try_map_coeffs(spec, |f| Ok(&f.divide_exact(&denom)? * &ahat))?;
    let p2 = top_series(&q2, deg);

    let lhat_hi = genus_form(GenusKind::LHat, &hi);
    let inv_cosh2 = euler_hyperbolic(Hyperbolic::Cosh, -2, &hi)?;
    let t1_triv = build_theta(&ThetaConfig::total_space(Variant::TB1, true, q_cap), &hi)?;
    let t1_n = build_theta(&ThetaConfig::total_space(Variant::TB1, false, q_cap), &hi)?;
    let num1 = (&t1_triv - &t1_n.mul_form(&inv_cosh2)?).mul_form(&(&lhat_hi * &cosh_hi))?;
    let q1 = num1.try_map_coeffs(spec, |f| f.divide_exact(&sinh_hi))?;
    let p1 = top_series(&q1, deg);

    let lhat = genus_form(GenusKind::LHat, &spec);
    let lhs = (&lhat * &euler_hyperbolic(Hyperbolic::Tanh, 1, &spec)?).top_component(deg);

    let one_minus_cosh = &FormPoly::one(hi) - &cosh_hi;
    let p0_closed = (&one_minus_cosh.divide_exact(&denom)? * &ahat).top_component(deg);
    let b1_triv = t2_triv.qs_coeff(HALF)?;
    let b1_n = t2_n.qs_coeff(HALF)?;
    let b1_bracket = Box::new(move |c: &Rational| -> Result<FormPoly> {
        let bracket = &(&b1_triv - &(&cosh_hi * &b1_n)) - &one_minus_cosh.scale(c);
        Ok((&bracket.divide_exact(&denom)? * &ahat).top_component(deg))
    });
    Ok(BaseWithPlane { spec, weight: w, q_cap, p1, p2, lhs, p0_closed, b1_bracket })
}

fn verify_base_with_plane(
    name: &str,
    k: u32,
    d: usize,
    factor: i64,
    cfg: &RunConfig,
) -> Result<(VerificationReport, Vec<FormPoly>)> {
    let data = base_with_plane(d, cfg)?;
    let w = data.weight;
    let gens = ModularGenerators::new(data.q_cap)?;
    let dual = dual_basis_check(&data.p1, &data.p2, w, &Rational::pow2(w as i64), &gens)?;
    let sol = &dual.upper;
    let lead = &int(factor) * &Rational::pow2(cfg.constants.block_exp * k as i64);
    let rhs = block_sum(&sol.h, data.spec, cfg.constants.block_exp).scale(&lead);
    let mut report = VerificationReport::new(
        name,
        params([
            ("k", k.into()),
            ("dim", (2 * d).into()),
            ("q_cap", render_exponent(data.q_cap).into()),
            ("basis", basis_name(cfg.basis).into()),
        ]),
        &data.lhs,
        &rhs,
    )?;
    report.attach_solution(sol)?;
    report.check("dual", dual.agree);
    report.check("integral", sol.combos_integral());
    report.note(format!("sum runs over r = 0..={}", sol.h.len() - 1));

    // Closed forms of the first two coefficients when w/2 = 2k+1.
    if w % 4 == 2 {
        report.check("h0_closed_form", sol.h[0] == -&data.p0_closed);
        if sol.h.len() > 1 {
            let c = &int(cfg.constants.h1_shift) * &int(2 * k as i64 + 1);
            report.check("h1_closed_form", sol.h[1] == -&(data.b1_bracket)(&c)?);
        }
    }
    Ok((report, sol.h.clone()))
}

/// `{L̂(TB) tanh(e/2)}^{(8k+2)} = 8 Σ_r 2^{6k−6r} h_r`.
pub fn verify_thm31(k: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    Ok(thm31_with_h(k, cfg)?.0)
}

pub(crate) fn thm31_with_h(k: u32, cfg: &RunConfig) -> Result<(VerificationReport, Vec<FormPoly>)> {
    verify_base_with_plane("thm31", k, 4 * k as usize + 1, cfg.constants.factor_8k2, cfg)
}

/// `{L̂(TB) tanh(e/2)}^{(8k+6)} = 64 Σ_r 2^{6k−6r} h_r`, `r = 0..=k+1`.
pub fn verify_thm32(k: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    Ok(verify_base_with_plane("thm32", k, 4 * k as usize + 3, cfg.constants.factor_8k6, cfg)?.0)
}

/// Parameters of the general formula for `(d, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralShape {
    /// Power of `sinh(e/2)`: `2n + (d mod 2)`.
    pub s: u32,
    /// Modular weight `d − s`; may be zero or negative.
    pub weight: i64,
    /// Exponent of the leading power of two.
    pub lead_exp: i64,
}

pub fn general_shape(d: usize, n: u32) -> Result<GeneralShape> {
    check_dim(d)?;
    if n > 64 {
        return Err(Error::InvalidParameters(format!("n = {n} is unreasonably large")));
    }
    let eps = (d % 2) as u32;
    let s = 2 * n + eps;
    let weight = d as i64 - s as i64;
    let lead_exp = (3 * d as i64 - eps as i64) / 2 - n as i64;
    Ok(GeneralShape { s, weight, lead_exp })
}

/// Data of the general formula on a `2d`-manifold.
pub(crate) struct General {
    pub lhs: FormPoly,
    pub p1: QSeries,
    pub p2: QSeries,
}

/// Builds `P′₁`, `P′₂` and the left-hand side for a tangent bundle
/// `tangent` (either `T` or `T + E`) twisted by `m` copies of `Ñ`.
pub(crate) fn general_series(spec: RingSpec, tangent: BundleExpr, m: u32, q_cap: u32) -> Result<General> {
    let deg = spec.degree_cap;
    let sinh = euler_power(Hyperbolic::Sinh, m, &spec)?;
    let tanh = euler_power(Hyperbolic::Tanh, m, &spec)?;
    let (ahat, lhat) = total_genera(&spec, tangent)?;
    let cfg = |variant| ThetaConfig { tangent, ..ThetaConfig::prime(variant, m, q_cap) };
    let t2 = build_theta(&cfg(Variant::Prime2), &spec)?;
    let t1 = build_theta(&cfg(Variant::Prime1), &spec)?;
    let p2 = top_series(&t2.mul_form(&(&ahat * &sinh))?, deg);
    let lhs_full = &lhat * &tanh;
    let p1 = top_series(&t1.mul_form(&lhs_full)?, deg);
    Ok(General { lhs: lhs_full.top_component(deg), p1, p2 })
}

/// `Â` and `L̂` of `T` or of `T + E` (the latter treating `u` as one more
/// tangent root).
pub(crate) fn total_genera(spec: &RingSpec, tangent: BundleExpr) -> Result<(FormPoly, FormPoly)> {
    let mut ahat = genus_form(GenusKind::AHat, spec);
    let mut lhat = genus_form(GenusKind::LHat, spec);
    if tangent.euler != 0 {
        let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("ring needs the Euler variable".into()))?;
        let n = spec.max_weight() as usize + 1;
        use crate::ring::univariate;
        ahat = &ahat * &FormPoly::univariate(*spec, u, &univariate::ahat_factor(n));
        lhat = &lhat * &FormPoly::univariate(*spec, u, &univariate::lhat_factor(n));
    }
    Ok((ahat, lhat))
}

/// `2^{−K}{L̂ tanh^s(e/2)}^{(2d)} = Σ_r 2^{−6r} {d_r sinh^s(e/2)}^{(2d)}`
/// with `s = 2n + (d mod 2)`; reported with `2^K` moved to the right.
pub fn verify_thm33(d: usize, n: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    let shape = general_shape(d, n)?;
    if shape.weight <= 0 {
        return verify_degenerate(d, n, cfg);
    }
    let w = shape.weight as u32;
    let q_cap = resolve_q_cap(w, cfg.q_cap)?;
    let deg = 2 * d as u32;
    let spec = ring(d, shape.s > 0, deg, cfg.basis)?;
    let g = general_series(spec, BundleExpr::TANGENT, shape.s, q_cap)?;
    let gens = ModularGenerators::new(q_cap)?;
    let dual = dual_basis_check(&g.p1, &g.p2, w, &Rational::pow2(d as i64), &gens)?;
    let sol = &dual.upper;
    let rhs = block_sum(&sol.h, spec, cfg.constants.block_exp).scale(&Rational::pow2(shape.lead_exp));
    let mut report = VerificationReport::new(
        "thm33",
        params([
            ("d", d.into()),
            ("n", n.into()),
            ("dim", (2 * d).into()),
            ("sinh_power", shape.s.into()),
            ("weight", shape.weight.into()),
            ("q_cap", render_exponent(q_cap).into()),
            ("basis", basis_name(cfg.basis).into()),
        ]),
        &g.lhs,
        &rhs,
    )?;
    report.attach_solution(sol)?;
    report.check("dual", dual.agree);
    report.note(format!("leading constant 2^{}; m = {}", shape.lead_exp, sol.h.len() - 1));
    if let Some(twist) = corollary_twist(d, n, &cfg.constants) {
        let form = twisted_form(&spec, twist, shape.s)?;
        report.check("corollary", form == g.lhs);
    }
    Ok(report)
}

/// `(a, b, c)` such that the right-hand side is
/// `{Â (a ch(T) + b + c(ch(N) − 2)) sinh^s(e/2)}`.
fn corollary_twist(d: usize, n: u32, c: &Constants) -> Option<[i64; 3]> {
    match (d, n) {
        (6, 0) => Some([c.agw_twist, -c.agw_shift, 0]),
        (6, 1) => Some(c.cor_6_1),
        (6, 2) => Some([0, c.cor_6_2, 0]),
        (5, 0) => Some(c.cor_5_0),
        (5, 1) => Some([0, c.cor_5_1, 0]),
        _ => None,
    }
}

fn twisted_form(spec: &RingSpec, [a, b, c]: [i64; 3], s: u32) -> Result<FormPoly> {
    let mut bracket = &ch_bundle(&BundleExpr::TANGENT, spec)?.scale(&int(a)) + &FormPoly::constant(*spec, int(b));
    if c != 0 {
        bracket =
            &bracket + &(&ch_bundle(&BundleExpr::EULER, spec)? - &FormPoly::constant(*spec, int(2))).scale(&int(c));
    }
    let ahat = genus_form(GenusKind::AHat, spec);
    Ok((&(&ahat * &bracket) * &euler_power(Hyperbolic::Sinh, s, spec)?).top_component(spec.degree_cap))
}

/// The general formula when `d − s ≤ 0`: both sides vanish for a negative
/// weight and agree (as a multiple of `e^d`) for weight zero.
pub fn verify_degenerate(d: usize, n: u32, cfg: &RunConfig) -> Result<VerificationReport> {
    let shape = general_shape(d, n)?;
    if shape.weight > 0 {
        return Err(Error::InvalidParameters(format!("(d, n) = ({d}, {n}) has positive weight {}", shape.weight)));
    }
    let q_cap = cfg.q_cap.unwrap_or(2 * UNIT);
    let deg = 2 * d as u32;
    let spec = ring(d, true, deg, cfg.basis)?;
    let g = general_series(spec, BundleExpr::TANGENT, shape.s, q_cap)?;
    let prm = params([
        ("d", d.into()),
        ("n", n.into()),
        ("dim", (2 * d).into()),
        ("sinh_power", shape.s.into()),
        ("weight", shape.weight.into()),
        ("q_cap", render_exponent(q_cap).into()),
        ("basis", basis_name(cfg.basis).into()),
    ]);
    if shape.weight < 0 {
        let mut report = VerificationReport::new("degenerate", prm, &g.lhs, &FormPoly::zero(spec))?;
        report.check("lhs_zero", g.lhs.is_zero());
        report.check("series_zero", g.p2.is_zero() && g.p1.is_zero());
        report.note("both sides zero");
        return Ok(report);
    }
    // Weight zero: the series must be constant in q.
    let h0 = g.p2.qs_coeff(0)?;
    let residual = &g.p2 - &QSeries::constant(h0.clone(), q_cap);
    let sol = HSolution { h: vec![h0.clone()], combo: vec![vec![Rational::one()]], residual, side: Side::Upper };
    let rhs = h0.scale(&Rational::pow2(shape.lead_exp));
    let mut report = VerificationReport::new("degenerate", prm, &g.lhs, &rhs)?;
    report.attach_solution(&sol)?;
    let lower = g.p1.scale(&Rational::pow2(-(d as i64)));
    report.check("dual", lower == QSeries::constant(h0, q_cap));
    let u = spec.euler_var().expect("ring has u");
    let e_d = FormPoly::term(spec, spec.mono(u, d as u32), Rational::one());
    report.check("equals_e_to_the_d", g.lhs == e_d);
    report.note(format!("common value {}", report.lhs));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_cap_policy() {
        assert_eq!(default_q_cap(2), 4 * HALF);
        assert_eq!(default_q_cap(6), 5 * HALF);
        assert!(resolve_q_cap(38, Some(UNIT)).is_err());
        assert_eq!(resolve_q_cap(6, Some(3 * HALF)).unwrap(), 3 * HALF);
    }

    #[test]
    fn shapes() {
        let s = general_shape(6, 1).unwrap();
        assert_eq!((s.s, s.weight, s.lead_exp), (2, 4, 8));
        let s = general_shape(5, 0).unwrap();
        assert_eq!((s.s, s.weight, s.lead_exp), (1, 4, 7));
        assert!(general_shape(0, 0).is_err());
    }

    #[test]
    fn agw_passes_and_lhs_is_the_l_polynomial() {
        let r = verify_agw(&RunConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert_eq!(r.lhs, "2/945*p1^3 - 13/945*p1*p2 + 62/945*p3");
    }

    #[test]
    fn agw_mutation_fails() {
        let cfg = RunConfig { constants: Constants { agw_shift: 31, ..Constants::default() }, ..RunConfig::default() };
        let r = verify_agw(&cfg).unwrap();
        assert!(!r.passed());
        assert_ne!(r.difference, "0");
    }

    #[test]
    fn small_instances_pass_in_both_bases() {
        for basis in [RootBasis::Roots, RootBasis::PowerSums] {
            let cfg = RunConfig { basis, ..RunConfig::default() };
            for r in [
                verify_thm31(0, &cfg).unwrap(),
                verify_thm32(0, &cfg).unwrap(),
                verify_han_zhang(0, VConfig::Tangent, false, &cfg).unwrap(),
                verify_thm33(3, 0, &cfg).unwrap(),
                verify_thm33(4, 1, &cfg).unwrap(),
            ] {
                assert!(r.passed(), "{basis:?}: {}", r.render_text());
            }
        }
    }

    #[test]
    fn degenerate_cases() {
        let cfg = RunConfig::default();
        for (d, n) in [(1, 0), (2, 1), (3, 1), (2, 3), (4, 3)] {
            let r = verify_degenerate(d, n, &cfg).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
        assert_eq!(verify_thm33(2, 3, &cfg).unwrap().theorem, "degenerate");
        assert!(verify_degenerate(6, 0, &cfg).is_err());
    }

    #[test]
    fn trivialized_plane_bundle_kills_both_sides() {
        let cfg = RunConfig::default();
        let data = base_with_plane(1, &cfg).unwrap();
        let u = data.spec.euler_var().unwrap();
        assert!(data.lhs.scale_var(u, &Rational::zero()).is_zero());
        for (_, f) in data.p2.iter() {
            assert!(f.scale_var(u, &Rational::zero()).is_zero());
        }
    }
}
