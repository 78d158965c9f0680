//! The acceptance suite: every verification the crate promises, grouped
//! into numbered criteria with runtime budgets, plus seeded randomized
//! property checks and a constant-mutation harness.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charforms::{
    ch_bundle, ch_lambda, ch_sym, det_half_2cosh, euler_hyperbolic, genus_form, BundleExpr, GenusKind, Hyperbolic,
};
use crate::error::Result;
use crate::modular::basis_len;
use crate::pushforward::{pi_star, verify_fiber_reduction, verify_fiber_to_31};
use crate::qseries::{QSeries, HALF, UNIT};
use crate::rational::Rational;
use crate::report::{Constants, VerificationReport};
use crate::ring::{FormPoly, RingSpec};
use crate::theorems::{
    default_q_cap, general_shape, verify_agw, verify_degenerate, verify_han_zhang, verify_liu, verify_thm31,
    verify_thm32, verify_thm33, RunConfig, VConfig,
};
use crate::theta::{jacobi_identity_holds, q_numerator_from_ratios, q_prime_from_ratios, ModularGenerators, ThetaKind};
use crate::witten::{build_theta, ThetaConfig, Variant};

/// Number of criteria.
pub const CRITERIA: u32 = 12;

/// Randomized cases per property.
pub const PROPERTY_CASES: usize = 1000;

const SEED: u64 = 0x5eed_ca11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// `k ≤ 1`, `d ≤ 7`.
    Quick,
    /// `k ≤ 3`, `d ≤ 11`.
    Full,
}

impl Depth {
    fn max_k(self) -> u32 {
        match self {
            Depth::Quick => 1,
            Depth::Full => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub depth: Depth,
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
}

/// Collects sub-results of one criterion.
struct Tally {
    ok: bool,
    details: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { ok: true, details: Vec::new() }
    }

    fn expect(&mut self, label: impl Into<String>, passed: bool) {
        let label = label.into();
        self.ok &= passed;
        self.details.push(format!("{label}: {}", if passed { "pass" } else { "fail" }));
    }

    fn report(&mut self, label: impl Into<String>, r: Result<VerificationReport>) -> Option<VerificationReport> {
        let label = label.into();
        match r {
            Ok(r) => {
                let failed = r.failed_checks();
                if failed.is_empty() {
                    self.expect(label, true);
                } else {
                    self.expect(format!("{label} [{}]", failed.join(", ")), false);
                }
                Some(r)
            }
            Err(e) => {
                self.expect(format!("{label} ({e})"), false);
                None
            }
        }
    }

    fn fallible(&mut self, label: impl Into<String>, r: Result<bool>) {
        let label = label.into();
        match r {
            Ok(b) => self.expect(label, b),
            Err(e) => self.expect(format!("{label} ({e})"), false),
        }
    }
}

pub fn title(id: u32) -> &'static str {
    match id {
        1 => "twelve-dimensional formula",
        2 => "modular generator expansions",
        3 => "Jacobi identity",
        4 => "twisted formula instances",
        5 => "degree 8k+2 formula",
        6 => "degree 8k+6 formula",
        7 => "general (d, n) formula and corollaries",
        8 => "degenerate cases",
        9 => "route consistency",
        10 => "pushforward derivations",
        11 => "randomized property checks",
        12 => "mutation sensitivity",
        _ => "unknown",
    }
}

pub fn budget_seconds(id: u32) -> f64 {
    match id {
        1 | 8 => 5.0,
        2 | 3 => 1.0,
        4 => 8.0 * 60.0,
        5 => 610.0,
        6 | 10 => 60.0,
        7 | 11 => 120.0,
        9 => 120.0,
        _ => 600.0,
    }
}

/// Runs one criterion. A criterion that overruns its budget fails.
pub fn criterion(id: u32, depth: Depth) -> CriterionOutcome {
    let start = Instant::now();
    let cfg = RunConfig::default();
    let mut t = Tally::new();
    match id {
        1 => {
            t.report("agw", verify_agw(&cfg));
        }
        2 => generators(&mut t),
        3 => t.fallible("θ'(0) = π θ₁(0) θ₂(0) θ₃(0) through q^5", jacobi_identity_holds(5 * UNIT)),
        4 => twisted(&mut t, depth, &cfg),
        5 => {
            for k in 0..=depth.max_k() {
                let w = 4 * k + 2;
                let extra = default_q_cap(w) / HALF + 1 - basis_len(w) as u32;
                t.expect(format!("thm31 k={k}: {extra} orders past the last pivot"), extra >= 3);
                t.report(format!("thm31 k={k} (dim {})", 8 * k + 2), verify_thm31(k, &cfg));
            }
        }
        6 => {
            for k in 0..=depth.max_k() {
                t.report(format!("thm32 k={k} (dim {})", 8 * k + 6), verify_thm32(k, &cfg));
            }
        }
        7 => general_grid(&mut t, depth, &cfg),
        8 => {
            for (d, n) in degenerate_grid() {
                t.report(format!("degenerate d={d} n={n}"), verify_degenerate(d, n, &cfg));
            }
        }
        9 => {
            for k in 0..=depth.max_k() {
                t.report(format!("liu k={k}"), verify_liu(k, &cfg));
            }
        }
        10 => {
            t.report("fiber-31 k=0", verify_fiber_to_31(0, &cfg));
            let mut pairs = vec![(2, 0), (4, 0), (4, 1), (6, 0), (6, 1)];
            if depth == Depth::Full {
                for k in 1..=2 {
                    t.report(format!("fiber-31 k={k}"), verify_fiber_to_31(k, &cfg));
                }
                pairs.extend([(5, 0), (6, 2), (7, 0), (8, 1), (10, 0)]);
            }
            for (d, n) in pairs {
                t.report(format!("fiber-reduce ({},·) -> ({d},{n})", d + 1), verify_fiber_reduction(d, n, &cfg));
            }
        }
        11 => properties(&mut t, PROPERTY_CASES),
        12 => mutations(&mut t),
        _ => t.expect(format!("criterion {id} does not exist"), false),
    }
    let seconds = start.elapsed().as_secs_f64();
    let budget = budget_seconds(id);
    if seconds > budget {
        t.expect(format!("runtime {seconds:.2}s within {budget}s"), false);
    }
    CriterionOutcome {
        id,
        title: title(id).to_string(),
        passed: t.ok,
        seconds,
        budget_seconds: budget,
        details: t.details,
    }
}

pub fn run_suite(depth: Depth) -> SuiteSummary {
    let criteria: Vec<CriterionOutcome> = (1..=CRITERIA).map(|id| criterion(id, depth)).collect();
    SuiteSummary { depth, passed: criteria.iter().all(|c| c.passed), criteria }
}

fn generators(t: &mut Tally) {
    let cap = 6 * UNIT;
    let g = match ModularGenerators::new(cap) {
        Ok(g) => g,
        Err(e) => return t.expect(format!("generators ({e})"), false),
    };
    let coeff = |s: &QSeries, e: u32| s.scalar_coeff(e).unwrap_or_else(|_| Rational::from_int(i64::MAX));
    let r = Rational::new;
    t.expect("δ₁ = 1/4 + 6q + …", coeff(&g.delta1, 0) == r(1, 4) && coeff(&g.delta1, UNIT) == r(6, 1));
    t.expect("ε₁ = 1/16 − q + …", coeff(&g.eps1, 0) == r(1, 16) && coeff(&g.eps1, UNIT) == r(-1, 1));
    t.expect("δ₂ = −1/8 − 3q^{1/2} + …", coeff(&g.delta2, 0) == r(-1, 8) && coeff(&g.delta2, HALF) == r(-3, 1));
    t.expect("ε₂ = q^{1/2} + …", coeff(&g.eps2, 0).is_zero() && coeff(&g.eps2, HALF) == r(1, 1));
    let integral =
        |s: &QSeries, c: i64| s.iter().all(|(_, f)| (&f.constant_term() * &Rational::from_int(c)).is_integer());
    t.expect("4δ₁ integral", integral(&g.delta1, 4));
    t.expect("16ε₁ integral", integral(&g.eps1, 16));
    t.expect("δ₁, ε₁ on the integral lattice", g.delta1.on_lattice(UNIT) && g.eps1.on_lattice(UNIT));
}

fn twisted(t: &mut Tally, depth: Depth, cfg: &RunConfig) {
    for k in 0..=depth.max_k() {
        for v in [VConfig::Tangent, VConfig::TangentPlusTrivial(4)] {
            for xi in [true, false] {
                let label = format!("han-zhang k={k} V={} ξ {}", v.label(), if xi { "trivial" } else { "nontrivial" });
                let r = t.report(label, verify_han_zhang(k, v, xi, cfg));
                if k == 1 && v == VConfig::Tangent && !xi {
                    let layers = r.map(|r| r.checks.iter().any(|c| c.name == "twisted_12_layers" && c.passed));
                    t.expect("q-layer coefficients {8, −32, −24}", layers.unwrap_or(false));
                }
            }
        }
    }
}

/// `(d, n)` with positive weight on the grid `d ≤ 7` (`≤ 11` in full depth).
pub fn general_grid_pairs(depth: Depth) -> Vec<(usize, u32)> {
    let max_d = if depth == Depth::Full { 11 } else { 7 };
    (1..=max_d)
        .flat_map(|d| (0..=d as u32 / 2).map(move |n| (d, n)))
        .filter(|&(d, n)| general_shape(d, n).map(|s| s.weight > 0).unwrap_or(false))
        .collect()
}

fn degenerate_grid() -> Vec<(usize, u32)> {
    (1..=7usize)
        .flat_map(|d| (0..=d as u32 / 2 + 1).map(move |n| (d, n)))
        .filter(|&(d, n)| general_shape(d, n).map(|s| s.weight <= 0).unwrap_or(false))
        .collect()
}

fn general_grid(t: &mut Tally, depth: Depth, cfg: &RunConfig) {
    for (d, n) in general_grid_pairs(depth) {
        let r = t.report(format!("thm33 d={d} n={n}"), verify_thm33(d, n, cfg));
        if let (Some(r), Ok(shape)) = (r, general_shape(d, n)) {
            let eps = (d % 2) as i64;
            let expected = (3 * d as i64 - eps) / 2 - n as i64;
            let m = (d as i64 - 2 * n as i64 - eps).div_euclid(4);
            t.expect(
                format!("thm33 d={d} n={n}: constant 2^{expected}, {} coefficient forms", m + 1),
                shape.lead_exp == expected && r.h.len() as i64 == m + 1,
            );
        }
    }
    for (d, n, name) in [(6, 1, "{−4, 112, 8}"), (6, 2, "{−128}"), (5, 0, "{−2, 52, 2}"), (5, 1, "{−64}")] {
        let ok = verify_thm33(d, n, cfg).map(|r| r.checks.iter().any(|c| c.name == "corollary" && c.passed));
        t.fallible(format!("corollary d={d} n={n} {name}"), ok);
    }
}

type Mutation = (&'static str, fn(&mut Constants), &'static [&'static str]);

/// Each entry perturbs one constant by one and names the verifications
/// that must notice.
pub fn mutation_table() -> Vec<Mutation> {
    vec![
        ("8 (twist in the twelve-dimensional formula)", |c| c.agw_twist += 1, &["agw"]),
        ("32 (shift in the twelve-dimensional formula)", |c| c.agw_shift += 1, &["agw"]),
        ("8 (leading factor, degree 8k+2)", |c| c.factor_8k2 += 1, &["thm31:0", "thm31:1"]),
        ("64 (leading factor, degree 8k+6)", |c| c.factor_8k6 += 1, &["thm32:0", "thm32:1"]),
        ("24 (correction in h₁)", |c| c.h1_shift += 1, &["thm31:1"]),
        ("2 (in 2 sinh(e/2))", |c| c.sinh_scale += 1, &["thm31:0"]),
        ("8 (twisted, dimension 12)", |c| c.twisted_12[0] += 1, &["hz:1"]),
        ("32 (twisted, dimension 12)", |c| c.twisted_12[1] += 1, &["hz:1"]),
        ("24 (twisted, dimension 12)", |c| c.twisted_12[2] += 1, &["hz:1"]),
        ("4 (d=6, n=1)", |c| c.cor_6_1[0] += 1, &["thm33:6:1"]),
        ("112 (d=6, n=1)", |c| c.cor_6_1[1] += 1, &["thm33:6:1"]),
        ("8 (d=6, n=1)", |c| c.cor_6_1[2] += 1, &["thm33:6:1"]),
        ("128 (d=6, n=2)", |c| c.cor_6_2 += 1, &["thm33:6:2"]),
        ("2 (d=5, n=0, first)", |c| c.cor_5_0[0] += 1, &["thm33:5:0"]),
        ("52 (d=5, n=0)", |c| c.cor_5_0[1] += 1, &["thm33:5:0"]),
        ("2 (d=5, n=0, last)", |c| c.cor_5_0[2] += 1, &["thm33:5:0"]),
        ("64 (d=5, n=1)", |c| c.cor_5_1 += 1, &["thm33:5:1"]),
        ("6 (block exponent)", |c| c.block_exp += 1, &["thm31:1", "thm32:1"]),
    ]
}

/// Runs the verification named by a mutation target.
pub fn run_target(target: &str, cfg: &RunConfig) -> Result<VerificationReport> {
    let parts: Vec<&str> = target.split(':').collect();
    let num = |i: usize| parts.get(i).and_then(|s| s.parse::<u32>().ok()).unwrap_or(0);
    match parts[0] {
        "agw" => verify_agw(cfg),
        "thm31" => verify_thm31(num(1), cfg),
        "thm32" => verify_thm32(num(1), cfg),
        "hz" => verify_han_zhang(num(1), VConfig::Tangent, false, cfg),
        "thm33" => verify_thm33(num(1) as usize, num(2), cfg),
        other => Err(crate::error::Error::InvalidParameters(format!("unknown target {other}"))),
    }
}

fn mutations(t: &mut Tally) {
    let baseline = RunConfig::default();
    for (name, mutate, targets) in mutation_table() {
        let mut cfg = baseline.clone();
        mutate(&mut cfg.constants);
        for target in targets.iter() {
            let base_ok = run_target(target, &baseline).map(|r| r.passed()).unwrap_or(false);
            let mutated_ok = run_target(target, &cfg).map(|r| r.passed()).unwrap_or(false);
            t.expect(format!("mutating {name} fails {target}"), base_ok && !mutated_ok);
        }
    }
}

// ---------------------------------------------------------------------------
// Randomized properties

fn random_spec(rng: &mut ChaCha8Rng, max_roots: usize, euler: bool, max_cap: u32) -> RingSpec {
    let d = rng.gen_range(1..=max_roots);
    let cap = 2 * rng.gen_range(2..=max_cap / 2);
    let spec = RingSpec::new(d, euler, cap).expect("small ring");
    if rng.gen_bool(0.5) {
        spec.power_sums()
    } else {
        spec
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_poly(rng: &mut ChaCha8Rng, spec: RingSpec, terms: usize) -> FormPoly {
    FormPoly::from_terms(
        spec,
        (0..terms)
            .map(|_| {
                let exps: Vec<u32> = (0..spec.num_vars()).map(|_| rng.gen_range(0..=2)).collect();
                (spec.mono_from_exponents(&exps), random_rational(rng))
            })
            .collect::<Vec<_>>(),
    )
}

fn random_bundle(rng: &mut ChaCha8Rng, euler: bool) -> BundleExpr {
    BundleExpr {
        tangent: rng.gen_range(0..=2),
        euler: if euler { rng.gen_range(0..=1) } else { 0 },
        aux: 0,
        trivial: rng.gen_range(0..=3),
    }
}

/// Adams operation `ψ²` on forms: the degree-`2j` part is scaled by `2^j`.
fn psi2(f: &FormPoly) -> FormPoly {
    FormPoly::from_terms(
        *f.spec(),
        f.terms().map(|(m, c)| (*m, c * &Rational::pow2(m.weight() as i64))).collect::<Vec<_>>(),
    )
}

fn run_property(
    t: &mut Tally,
    name: &str,
    cases: usize,
    seed: u64,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<bool>,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut first = None;
    for i in 0..cases {
        match case(&mut rng) {
            Ok(true) => {}
            Ok(false) => {
                failures += 1;
                first.get_or_insert(format!("case {i}"));
            }
            Err(e) => {
                failures += 1;
                first.get_or_insert(format!("case {i}: {e}"));
            }
        }
    }
    let label = match first {
        None => format!("{name}: {cases} cases"),
        Some(f) => format!("{name}: {failures}/{cases} failed, first at {f}"),
    };
    t.expect(label, failures == 0);
}

/// The randomized property checks, each over `cases` seeded cases.
fn properties(t: &mut Tally, cases: usize) {
    run_property(t, "ring axioms", cases, SEED, |rng| {
        let euler = rng.gen_bool(0.5);
        let spec = random_spec(rng, 3, euler, 8);
        let [a, b, c] = [0; 3].map(|_| random_poly(rng, spec, 4));
        let one = FormPoly::one(spec);
        Ok(&a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &one == a
            && (&a + &(-&a)).is_zero())
    });

    run_property(t, "truncation coherence", cases, SEED + 1, |rng| {
        let euler = rng.gen_bool(0.5);
        let spec = random_spec(rng, 3, euler, 10);
        let a = random_poly(rng, spec, 4);
        let b = random_poly(rng, spec, 4);
        let low = 2 * rng.gen_range(0..=spec.max_weight());
        Ok((&a * &b).truncate(low)? == &a.truncate(low)? * &b.truncate(low)?
            && (&a + &b).truncate(low)? == &a.truncate(low)? + &b.truncate(low)?)
    });

    run_property(t, "Λ/S identities", cases, SEED + 2, |rng| {
        let spec = random_spec(rng, 2, true, 6);
        let (e, f) = (random_bundle(rng, true), random_bundle(rng, true));
        let exp = if rng.gen_bool(0.5) { HALF } else { UNIT };
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let cap = 2 * exp;
        let lam = |b: &BundleExpr| ch_lambda(b, sign, exp, &spec, cap);
        let additive = lam(&(e + f))? == &lam(&e)? * &lam(&f)?;
        let inverse =
            &ch_sym(&e, sign, exp, &spec, cap)? * &ch_lambda(&e, -sign, exp, &spec, cap)? == QSeries::one(spec, cap);
        // t² coefficients: ch Λ²E = (ch(E)² − ψ²ch E)/2, ch S²E = (ch(E)² + ψ²ch E)/2.
        let ch = ch_bundle(&e, &spec)?;
        let sq = &ch * &ch;
        let half = Rational::new(1, 2);
        let lam2 = (&sq - &psi2(&ch)).scale(&half);
        let sym2 = (&sq + &psi2(&ch)).scale(&half);
        let l = ch_lambda(&e, 1, exp, &spec, cap)?;
        let s = ch_sym(&e, 1, exp, &spec, cap)?;
        Ok(additive && inverse && l.qs_coeff(cap)? == lam2 && s.qs_coeff(cap)? == sym2 && l.qs_coeff(exp)? == ch)
    });

    run_property(t, "ch additivity", cases, SEED + 3, |rng| {
        let spec = random_spec(rng, 3, true, 10);
        let (e, f) = (random_bundle(rng, true), random_bundle(rng, true));
        let m = rng.gen_range(-3..=3);
        Ok(ch_bundle(&(e + f), &spec)? == &ch_bundle(&e, &spec)? + &ch_bundle(&f, &spec)?
            && ch_bundle(&e.scale(m), &spec)? == ch_bundle(&e, &spec)?.scale(&Rational::from_int(m))
            && ch_bundle(&e, &spec)?.constant_term() == Rational::from_int(e.rank(&spec))
            && ch_bundle(&e.tilde(&spec), &spec)?.constant_term().is_zero())
    });

    run_property(t, "signature relation", cases, SEED + 4, |rng| {
        let spec = random_spec(rng, 3, false, 12);
        let twist = random_poly(rng, spec, 3);
        let trivial = 2 * rng.gen_range(0..=2);
        let v = BundleExpr::TANGENT + BundleExpr::trivial(trivial);
        let lhat = genus_form(GenusKind::LHat, &spec);
        let rhs = &genus_form(GenusKind::AHat, &spec) * &det_half_2cosh(&v, &spec)?;
        Ok((&lhat * &twist).scale(&Rational::pow2(trivial / 2)) == &rhs * &twist)
    });

    run_property(t, "theta ratios vs bundle products", cases, SEED + 5, |rng| {
        let spec = random_spec(rng, 2, true, 6);
        let cap = rng.gen_range(1..=2) * HALF;
        let ahat = genus_form(GenusKind::AHat, &spec);
        let lhat = genus_form(GenusKind::LHat, &spec);
        let cosh = euler_hyperbolic(Hyperbolic::Cosh, 1, &spec)?;
        let twist = random_poly(rng, spec, 2);
        let ts = |v, triv| build_theta(&ThetaConfig::total_space(v, triv, cap), &spec);
        let lhs = match rng.gen_range(0..4) {
            0 => {
                let q2 = (&ts(Variant::TB2, true)? - &ts(Variant::TB2, false)?.mul_form(&cosh)?).mul_form(&ahat)?;
                q2 == q_numerator_from_ratios(ThetaKind::Theta2, &spec, cap)?
            }
            1 => {
                let inv_c2 = euler_hyperbolic(Hyperbolic::Cosh, -2, &spec)?;
                let q1 = (&ts(Variant::TB1, true)? - &ts(Variant::TB1, false)?.mul_form(&inv_c2)?)
                    .mul_form(&(&lhat * &cosh))?;
                q1 == q_numerator_from_ratios(ThetaKind::Theta1, &spec, cap)?
            }
            2 => {
                let s = rng.gen_range(0..=2);
                let sinh_s = euler_hyperbolic(Hyperbolic::Sinh, s as i32, &spec)?;
                let p2 = build_theta(&ThetaConfig::prime(Variant::Prime2, s, cap), &spec)?;
                p2.mul_form(&(&ahat * &sinh_s))?.mul_form(&twist)?
                    == q_prime_from_ratios(ThetaKind::Theta2, s, &spec, cap)?.mul_form(&twist)?
            }
            _ => {
                let s = rng.gen_range(0..=2);
                let tanh_s = euler_hyperbolic(Hyperbolic::Tanh, s as i32, &spec)?;
                let p1 = build_theta(&ThetaConfig::prime(Variant::Prime1, s, cap), &spec)?;
                p1.mul_form(&(&lhat * &tanh_s))?.mul_form(&twist)?
                    == q_prime_from_ratios(ThetaKind::Theta1, s, &spec, cap)?.mul_form(&twist)?
            }
        };
        Ok(lhs)
    });

    run_property(t, "pushforward linearity, module property, degree drop", cases, SEED + 6, |rng| {
        let spec = random_spec(rng, 2, true, 10);
        let u = spec.euler_var().expect("euler ring");
        let f = random_poly(rng, spec, 5);
        let g = random_poly(rng, spec, 5);
        let (a, b) = (random_rational(rng), random_rational(rng));
        let linear = pi_star(&(&f.scale(&a) + &g.scale(&b)))? == &pi_star(&f)?.scale(&a) + &pi_star(&g)?.scale(&b);
        // α pulled back from the base: u-free.
        let alpha = FormPoly::from_terms(
            spec,
            random_poly(rng, spec, 3)
                .terms()
                .filter(|(m, _)| m.exponent(u) == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect::<Vec<_>>(),
        );
        let pushed = pi_star(&f)?;
        let module = pi_star(&(&alpha * &f))? == &alpha.truncate(pushed.spec().degree_cap)? * &pushed;
        let drop = f.terms().filter(|(m, _)| m.exponent(u) > 0).all(|(m, c)| {
            let q = m.div_var(u, 1, 1).expect("divisible");
            pushed.coeff(&q) == *c && q.degree() + 2 == m.degree()
        });
        Ok(linear && module && drop && pi_star(&alpha)?.is_zero())
    });
}

/// The property checks alone, with a custom case count.
pub fn property_outcomes(cases: usize) -> Vec<String> {
    let mut t = Tally::new();
    properties(&mut t, cases);
    t.details
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn properties_small() {
        let mut t = Tally::new();
        properties(&mut t, 25);
        assert!(t.ok, "{:#?}", t.details);
    }

    #[test]
    fn psi2_scales_by_degree() {
        let spec = RingSpec::new(1, true, 8).unwrap();
        let u = FormPoly::euler(spec);
        assert_eq!(psi2(&(&u * &u)), (&u * &u).scale(&Rational::from_int(4)));
    }

    #[test]
    fn grids() {
        assert!(general_grid_pairs(Depth::Quick).contains(&(7, 1)));
        assert!(!general_grid_pairs(Depth::Quick).contains(&(2, 1)));
        assert!(degenerate_grid().contains(&(2, 1)));
        assert!(degenerate_grid().contains(&(2, 2)));
    }
}
