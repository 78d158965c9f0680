//! Witten-type Θ-series and their Fourier coefficients.
//!
//! Every variant is a product of families `⊗_{j≥1} Λ_{±q^{a+j−1}}(W)` or
//! `⊗_{j≥1} S_{q^{a+j−1}}(W)` with `a ∈ {1/2, 1}` and `W` a combination of
//! the tangent bundle, the plane bundle and trivial bundles. The Chern
//! character of each family splits into a per-tangent-root factor, a factor
//! in `u`, and a scalar, so the whole series is assembled as one product
//! over the roots times a series in `u`.

use crate::charforms::{pair_factor, root_product_q, root_ring, BundleExpr};
use crate::error::{Error, Result};
use crate::qseries::{qs_product, QSeries, HALF, UNIT};
use crate::rational::Rational;
use crate::ring::{FormPoly, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `Θ₁(T, V, ξ)`.
    HZ1,
    /// `Θ₂(T, V, ξ)`.
    HZ2,
    /// `Θ₁(T_B + N, ξ)`: `HZ1` with `T = V = T_B + N`.
    TB1,
    /// `Θ₂(T_B + N, ξ)`.
    TB2,
    /// `Θ′₁(T, m, N)`.
    Prime1,
    /// `Θ′₂(T, m, N)`.
    Prime2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaConfig {
    pub variant: Variant,
    pub tangent: BundleExpr,
    /// `V`; ignored by the primed variants.
    pub aux: BundleExpr,
    /// `ξ` (or `N`): either [`BundleExpr::EULER`] or `trivial(2)`.
    pub line: BundleExpr,
    /// Multiplicity of `Ñ` in the primed variants.
    pub m: u32,
    pub q_cap: u32,
}

impl ThetaConfig {
    pub fn hz(variant: Variant, v: BundleExpr, xi_trivial: bool, q_cap: u32) -> Self {
        ThetaConfig { variant, tangent: BundleExpr::TANGENT, aux: v, line: line(xi_trivial), m: 0, q_cap }
    }

    /// `Θ_i(T_B + N, ξ)` with `ξ ∈ {ℂ², N}`.
    pub fn total_space(variant: Variant, xi_trivial: bool, q_cap: u32) -> Self {
        let t = BundleExpr::TANGENT + BundleExpr::EULER;
        ThetaConfig { variant, tangent: t, aux: t, line: line(xi_trivial), m: 0, q_cap }
    }

    pub fn prime(variant: Variant, m: u32, q_cap: u32) -> Self {
        ThetaConfig { variant, tangent: BundleExpr::TANGENT, aux: BundleExpr::ZERO, line: BundleExpr::EULER, m, q_cap }
    }
}

fn line(xi_trivial: bool) -> BundleExpr {
    if xi_trivial {
        BundleExpr::trivial(2)
    } else {
        BundleExpr::EULER
    }
}

/// `⊗_{j≥1} Op_{t_j}(bundle)` with `t_j = sign · q^{start + (j−1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub bundle: BundleExpr,
    pub symmetric: bool,
    pub sign: i64,
    pub start: u32,
}

/// The families making up a variant.
pub fn families(cfg: &ThetaConfig, spec: &RingSpec) -> Result<Vec<Family>> {
    let lam = |bundle, sign, start| Family { bundle, symmetric: false, sign, start };
    let sym = |bundle| Family { bundle, symmetric: true, sign: 1, start: UNIT };
    match cfg.variant {
        Variant::HZ1 | Variant::HZ2 | Variant::TB1 | Variant::TB2 => {
            if cfg.aux.rank(spec) % 2 != 0 {
                return Err(Error::InvalidParameters(format!("V = {} has odd rank", cfg.aux)));
            }
            if cfg.line != BundleExpr::EULER && cfg.line != BundleExpr::trivial(2) {
                return Err(Error::InvalidParameters(format!("ξ = {} is not a plane bundle", cfg.line)));
            }
            let t = cfg.tangent.tilde(spec);
            let xi = cfg.line.tilde(spec);
            let v = cfg.aux.tilde(spec) - xi.scale(2);
            Ok(if matches!(cfg.variant, Variant::HZ1 | Variant::TB1) {
                vec![sym(t), lam(v, 1, UNIT), lam(xi, 1, HALF), lam(xi, -1, HALF)]
            } else {
                vec![sym(t), lam(v, -1, HALF), lam(xi, 1, HALF), lam(xi, 1, UNIT)]
            })
        }
        Variant::Prime1 | Variant::Prime2 => {
            let w = cfg.tangent.tilde(spec) - cfg.line.tilde(spec).scale(cfg.m as i64);
            Ok(if cfg.variant == Variant::Prime1 {
                vec![sym(w), lam(w, 1, UNIT)]
            } else {
                vec![sym(w), lam(w, -1, HALF)]
            })
        }
    }
}

/// `(1 + t e^w)(1 + t e^{−w}) / (1 + t)²` for `t = sign · q^{exp/8}`.
fn normalized_pair(spec: &RingSpec, var: usize, sign: i64, exp: u32, q_cap: u32) -> Result<QSeries> {
    let t = QSeries::from_coeffs(
        *spec,
        q_cap,
        [(0, FormPoly::one(*spec)), (exp, FormPoly::constant(*spec, Rational::from_int(sign)))],
    );
    pair_factor(spec, var, sign, exp, q_cap).qs_mul(&t.pow(2).qs_invert()?)
}

fn signed_pow(s: &QSeries, k: i64) -> Result<QSeries> {
    Ok(if k >= 0 { s.pow(k as u32) } else { s.qs_invert()?.pow(k.unsigned_abs() as u32) })
}

/// `ch` of one family, split as (per-root series, series in `u`, scalar).
fn family_parts(fam: &Family, spec: &RingSpec, q_cap: u32) -> Result<(QSeries, QSeries, QSeries)> {
    let uni = root_ring(spec);
    let b = fam.bundle;
    // Λ_t(E) = [∏ pair(x_j)/(1+t)²]^a · [pair(u)/(1+t)²]^c · (1+t)^{rank}
    let rank = b.rank(spec);
    if b.aux != 0 {
        return Err(Error::InvalidParameters("auxiliary roots are not used by Θ-series".into()));
    }
    let sign = if fam.symmetric { -fam.sign } else { fam.sign };
    let power = if fam.symmetric { -1 } else { 1 };
    let u = spec.euler_var();
    let starts = (0..).map(|j| fam.start + j * UNIT);

    let root_factors = starts.clone().map(|e| {
        (e, move || {
            signed_pow(&normalized_pair(&uni, 0, sign, e, q_cap).expect("unit"), power * b.tangent).expect("unit")
        })
    });
    let roots = if b.tangent != 0 { qs_product(uni, q_cap, root_factors)? } else { QSeries::one(uni, q_cap) };

    let euler = if b.euler != 0 {
        let u = u.ok_or_else(|| Error::InvalidParameters("bundle involves u but ring has no Euler variable".into()))?;
        let fs = starts.clone().map(|e| {
            (e, move || {
                signed_pow(&normalized_pair(spec, u, sign, e, q_cap).expect("unit"), power * b.euler).expect("unit")
            })
        });
        qs_product(*spec, q_cap, fs)?
    } else {
        QSeries::one(*spec, q_cap)
    };

    let scalar = RingSpec::scalar();
    let fs = starts.map(|e| {
        (e, move || {
            let t = QSeries::scalar(q_cap, &[(0, Rational::one()), (e, Rational::from_int(sign))]);
            signed_pow(&t, power * rank).expect("unit")
        })
    });
    let trivial = if rank != 0 { qs_product(scalar, q_cap, fs)? } else { QSeries::one(scalar, q_cap) };
    Ok((roots, euler, trivial))
}

/// Chern character of the Θ-series, as a q-series of forms in `spec`.
pub fn build_theta(cfg: &ThetaConfig, spec: &RingSpec) -> Result<QSeries> {
    let q_cap = cfg.q_cap;
    let mut roots = QSeries::one(root_ring(spec), q_cap);
    let mut euler = QSeries::one(*spec, q_cap);
    let mut trivial = QSeries::one(RingSpec::scalar(), q_cap);
    for fam in families(cfg, spec)? {
        let (r, e, t) = family_parts(&fam, spec, q_cap)?;
        roots = &roots * &r;
        euler = &euler * &e;
        trivial = &trivial * &t;
    }
    let tangent = root_product_q(spec, &roots)?;
    Ok(&(&tangent * &euler) * &trivial.embed_scalar(*spec))
}

/// Coefficients at `q^0, q^{1/2}, …, q^{j_max/2}`.
pub fn fourier_coefficients(series: &QSeries, j_max: u32) -> Result<Vec<FormPoly>> {
    (0..=j_max).map(|j| series.qs_coeff(j * HALF)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charforms::ch_bundle;
    use crate::ring::RootBasis;

    #[test]
    fn constant_term_is_one() {
        let spec = RingSpec::new(2, true, 8).unwrap();
        let cap = 2 * UNIT;
        let cfgs = [
            ThetaConfig::hz(Variant::HZ1, BundleExpr::TANGENT, false, cap),
            ThetaConfig::hz(Variant::HZ2, BundleExpr::TANGENT, true, cap),
            ThetaConfig::total_space(Variant::TB1, false, cap),
            ThetaConfig::total_space(Variant::TB2, true, cap),
            ThetaConfig::prime(Variant::Prime1, 1, cap),
            ThetaConfig::prime(Variant::Prime2, 2, cap),
        ];
        for cfg in cfgs {
            let s = build_theta(&cfg, &spec).unwrap();
            assert_eq!(s.qs_coeff(0).unwrap(), FormPoly::one(spec), "{cfg:?}");
            assert!(s.on_lattice(HALF));
        }
    }

    #[test]
    fn first_coefficients() {
        let spec = RingSpec::new(2, true, 8).unwrap();
        let cap = UNIT;
        let two_d = 2 * spec.num_roots as i64;
        // HZ2 with ξ trivial: B₁ = −ch(Ṽ) = 2l − ch(V).
        let s = build_theta(&ThetaConfig::hz(Variant::HZ2, BundleExpr::TANGENT, true, cap), &spec).unwrap();
        let ch_t = ch_bundle(&BundleExpr::TANGENT, &spec).unwrap();
        let expect = &FormPoly::constant(spec, Rational::from_int(two_d)) - &ch_t;
        assert_eq!(s.qs_coeff(HALF).unwrap(), expect);
        // Prime2 with m = 0: B′₁ = 2d − ch(T).
        let p = build_theta(&ThetaConfig::prime(Variant::Prime2, 0, cap), &spec).unwrap();
        assert_eq!(p.qs_coeff(HALF).unwrap(), expect);
    }

    #[test]
    fn power_sums_agree_with_roots() {
        let roots = RingSpec::new(3, true, 8).unwrap();
        let sums = roots.power_sums();
        let cap = 2 * UNIT;
        for cfg in [ThetaConfig::total_space(Variant::TB2, false, cap), ThetaConfig::prime(Variant::Prime1, 1, cap)] {
            let a = build_theta(&cfg, &roots).unwrap();
            let b = build_theta(&cfg, &sums).unwrap();
            let b_roots = b.try_map_coeffs(roots, |p| p.change_basis(RootBasis::Roots)).unwrap();
            assert_eq!(a, b_roots, "{cfg:?}");
        }
    }

    fn ratio_cross_check(spec: RingSpec) {
        use crate::charforms::{euler_hyperbolic, genus_form, GenusKind, Hyperbolic};
        use crate::theta::{q_numerator_from_ratios, q_prime_from_ratios, ThetaKind};
        let cap = 2 * UNIT;
        let ahat = genus_form(GenusKind::AHat, &spec);
        let lhat = genus_form(GenusKind::LHat, &spec);
        let cosh = euler_hyperbolic(Hyperbolic::Cosh, 1, &spec).unwrap();
        let c = |v, triv| build_theta(&ThetaConfig::total_space(v, triv, cap), &spec).unwrap();

        let q2 = (&c(Variant::TB2, true) - &c(Variant::TB2, false).mul_form(&cosh).unwrap()).mul_form(&ahat).unwrap();
        assert_eq!(q2, q_numerator_from_ratios(ThetaKind::Theta2, &spec, cap).unwrap());

        let inv_c2 = euler_hyperbolic(Hyperbolic::Cosh, -2, &spec).unwrap();
        let q1 = (&c(Variant::TB1, true) - &c(Variant::TB1, false).mul_form(&inv_c2).unwrap())
            .mul_form(&(&lhat * &cosh))
            .unwrap();
        assert_eq!(q1, q_numerator_from_ratios(ThetaKind::Theta1, &spec, cap).unwrap());

        for s in 0..3u32 {
            let sinh_s = euler_hyperbolic(Hyperbolic::Sinh, s as i32, &spec).unwrap();
            let tanh_s = euler_hyperbolic(Hyperbolic::Tanh, s as i32, &spec).unwrap();
            let p2 = build_theta(&ThetaConfig::prime(Variant::Prime2, s, cap), &spec).unwrap();
            assert_eq!(
                p2.mul_form(&(&ahat * &sinh_s)).unwrap(),
                q_prime_from_ratios(ThetaKind::Theta2, s, &spec, cap).unwrap()
            );
            let p1 = build_theta(&ThetaConfig::prime(Variant::Prime1, s, cap), &spec).unwrap();
            assert_eq!(
                p1.mul_form(&(&lhat * &tanh_s)).unwrap(),
                q_prime_from_ratios(ThetaKind::Theta1, s, &spec, cap).unwrap()
            );
        }
    }

    #[test]
    fn ratio_assemblies_match_bundle_products() {
        ratio_cross_check(RingSpec::new(2, true, 8).unwrap());
        ratio_cross_check(RingSpec::new(3, true, 10).unwrap().power_sums());
    }
}
