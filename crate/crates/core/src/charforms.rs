//! Characteristic forms: Â, L̂, Chern characters, Λ/S operations and
//! hyperbolic functions of the Euler class.
//!
//! Everything is expressed through the ring's roots. Products over the
//! tangent roots go through [`root_product`] and [`root_product_q`], which
//! multiply per-root factors in the root basis and exponentiate a sum of
//! logarithms in the power-sum basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rational::Rational;
use crate::ring::{univariate, FormPoly, RingSpec};

/// A formal integer combination of the bundles a ring can see.
///
/// Ranks are complex: the complexified tangent bundle has rank `2d`, a
/// complexified oriented plane bundle (roots `±u`) rank 2, the auxiliary
/// bundle rank `2l`, and each trivial unit rank 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct BundleExpr {
    pub tangent: i64,
    pub euler: i64,
    pub aux: i64,
    pub trivial: i64,
}

impl BundleExpr {
    pub const ZERO: BundleExpr = BundleExpr { tangent: 0, euler: 0, aux: 0, trivial: 0 };
    pub const TANGENT: BundleExpr = BundleExpr { tangent: 1, euler: 0, aux: 0, trivial: 0 };
    pub const EULER: BundleExpr = BundleExpr { tangent: 0, euler: 1, aux: 0, trivial: 0 };
    pub const AUX: BundleExpr = BundleExpr { tangent: 0, euler: 0, aux: 1, trivial: 0 };

    pub fn trivial(m: i64) -> Self {
        BundleExpr { trivial: m, ..Self::ZERO }
    }

    pub fn rank(&self, spec: &RingSpec) -> i64 {
        self.tangent * 2 * spec.num_roots as i64
            + self.euler * 2
            + self.aux * 2 * spec.extra_roots as i64
            + self.trivial
    }

    /// `W̃ = W − ℂ^{rank W}`.
    pub fn tilde(&self, spec: &RingSpec) -> Self {
        BundleExpr { trivial: self.trivial - self.rank(spec), ..*self }
    }

    pub fn scale(&self, k: i64) -> Self {
        BundleExpr { tangent: k * self.tangent, euler: k * self.euler, aux: k * self.aux, trivial: k * self.trivial }
    }
}

impl std::ops::Add for BundleExpr {
    type Output = BundleExpr;
    fn add(self, o: BundleExpr) -> BundleExpr {
        BundleExpr {
            tangent: self.tangent + o.tangent,
            euler: self.euler + o.euler,
            aux: self.aux + o.aux,
            trivial: self.trivial + o.trivial,
        }
    }
}

impl std::ops::Sub for BundleExpr {
    type Output = BundleExpr;
    fn sub(self, o: BundleExpr) -> BundleExpr {
        self + o.scale(-1)
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, name) in [(self.tangent, "T"), (self.euler, "E"), (self.aux, "V"), (self.trivial, "C")] {
            match k {
                0 => {}
                1 => parts.push(name.to_string()),
                -1 => parts.push(format!("-{name}")),
                k => parts.push(format!("{k}{name}")),
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + ").replace("+ -", "- "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusKind {
    AHat,
    LHat,
}

/// Number of univariate coefficients needed to fill a ring.
fn series_len(spec: &RingSpec) -> usize {
    spec.max_weight() as usize + 1
}

/// The univariate ring matching `spec`'s cap.
pub fn root_ring(spec: &RingSpec) -> RingSpec {
    RingSpec::univariate(spec.degree_cap)
}

fn check_even(f: &[Rational]) -> Result<()> {
    if f.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(Error::InvalidParameters("power-sum products need even root factors".into()));
    }
    Ok(())
}

/// `Σ_k g_{2k} s_k + d·g_0` for an even univariate `g`, i.e. `Σ_j g(x_j)`.
fn power_sum_linear(spec: &RingSpec, g: &FormPoly) -> Result<FormPoly> {
    let coeffs: Vec<Rational> =
        (0..series_len(spec)).map(|k| g.coeff(&crate::ring::Monomial::var_pow(0, k as u32))).collect();
    check_even(&coeffs)?;
    let mut out = FormPoly::constant(*spec, &coeffs[0] * &Rational::from_int(spec.num_roots as i64));
    for k in 1..=spec.num_roots {
        if let Some(c) = coeffs.get(2 * k) {
            out = &out + &FormPoly::var(*spec, k - 1).scale(c);
        }
    }
    Ok(out)
}

/// `Σ_j g(x_j)` over the tangent roots.
pub fn root_sum(spec: &RingSpec, g: &[Rational]) -> Result<FormPoly> {
    let uni = FormPoly::univariate(root_ring(spec), 0, g);
    if spec.is_power_sums() {
        return power_sum_linear(spec, &uni);
    }
    Ok((0..spec.num_roots).fold(FormPoly::zero(*spec), |acc, j| &acc + &uni.embed(*spec, &[j])))
}

/// `∏_j f(x_j)` over the tangent roots; `f(0)` must be nonzero.
pub fn root_product(spec: &RingSpec, f: &[Rational]) -> Result<FormPoly> {
    let uni = FormPoly::univariate(root_ring(spec), 0, f);
    if !spec.is_power_sums() {
        return Ok((0..spec.num_roots).fold(FormPoly::one(*spec), |acc, j| &acc * &uni.embed(*spec, &[j])));
    }
    let c = uni.constant_term();
    if c.is_zero() {
        return Err(Error::NotUnit("root factor vanishes at 0".into()));
    }
    let normalized = uni.scale(&c.recip());
    let log_coeffs = log_series(series_len(spec));
    let log = (&normalized - &FormPoly::one(*normalized.spec())).apply_univariate_series(&log_coeffs)?;
    let lin = power_sum_linear(spec, &log)?;
    let cd = c.pow(spec.num_roots as i32);
    Ok(lin.apply_univariate_series(&univariate::exp(series_len(spec)))?.scale(&cd))
}

/// `∏_j F(x_j)` for a q-series `F` with coefficients in [`root_ring`].
pub fn root_product_q(spec: &RingSpec, f: &QSeries) -> Result<QSeries> {
    let uni = root_ring(spec);
    uni.check_same(f.spec())?;
    if !spec.is_power_sums() {
        let mut acc = QSeries::one(*spec, f.q_cap());
        for j in 0..spec.num_roots {
            acc = acc.qs_mul(&f.map_coeffs(*spec, |p| p.embed(*spec, &[j])))?;
        }
        return Ok(acc);
    }
    let c = f.qs_coeff(0)?.constant_term();
    if c.is_zero() {
        return Err(Error::NotUnit("root factor vanishes at q = 0, x = 0".into()));
    }
    let log = f.scale(&c.recip()).log()?;
    let lin = log.try_map_coeffs(*spec, |p| power_sum_linear(spec, p))?;
    Ok(lin.exp()?.scale(&c.pow(spec.num_roots as i32)))
}

fn log_series(n: usize) -> Vec<Rational> {
    (0..n)
        .map(|k| if k == 0 { Rational::zero() } else { Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64) })
        .collect()
}

/// Â or L̂ of the tangent bundle.
pub fn genus_form(kind: GenusKind, spec: &RingSpec) -> FormPoly {
    let n = series_len(spec);
    let f = match kind {
        GenusKind::AHat => univariate::ahat_factor(n),
        GenusKind::LHat => univariate::lhat_factor(n),
    };
    root_product(spec, &f).expect("genus factors are even units")
}

/// A univariate form `f(var)` in `spec`, from coefficients in the variable.
pub fn in_var(spec: &RingSpec, var: usize, coeffs: &[Rational]) -> FormPoly {
    FormPoly::univariate(*spec, var, coeffs)
}

/// `e^{c·var}`.
pub fn exp_var(spec: &RingSpec, var: usize, c: &Rational) -> FormPoly {
    in_var(spec, var, &univariate::scale(&univariate::exp(series_len(spec)), c))
}

/// Chern character of a bundle expression.
pub fn ch_bundle(b: &BundleExpr, spec: &RingSpec) -> Result<FormPoly> {
    let n = series_len(spec);
    let two_cosh: Vec<Rational> = univariate::cosh(n).iter().map(|c| c * &Rational::from_int(2)).collect();
    let mut out = FormPoly::constant(*spec, Rational::from_int(b.trivial));
    if b.tangent != 0 {
        out = &out + &root_sum(spec, &two_cosh)?.scale(&Rational::from_int(b.tangent));
    }
    if b.euler != 0 {
        let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("no Euler variable in ring".into()))?;
        out = &out + &in_var(spec, u, &two_cosh).scale(&Rational::from_int(b.euler));
    }
    if b.aux != 0 {
        for i in 0..spec.extra_roots {
            out = &out + &in_var(spec, spec.aux_var(i), &two_cosh).scale(&Rational::from_int(b.aux));
        }
    }
    Ok(out)
}

/// The univariate q-series `(1 + t e^{ω})(1 + t e^{−ω})` for one root pair,
/// with `t = sign · q^{exp/8}`, in the variable `var` of `spec`.
pub fn pair_factor(spec: &RingSpec, var: usize, sign: i64, exp: u32, q_cap: u32) -> QSeries {
    let s = Rational::from_int(sign);
    let one = FormPoly::one(*spec);
    let ep = exp_var(spec, var, &Rational::one());
    let em = exp_var(spec, var, &-Rational::one());
    // 1 + t(e^ω + e^{−ω}) + t²
    let c1 = (&ep + &em).scale(&s);
    QSeries::from_coeffs(*spec, q_cap, [(0, one.clone()), (exp, c1), (2 * exp, one)])
}

/// `ch(Λ_t(b))` with `t = sign · q^{exp/8}`, using `Λ_t(E − F) = Λ_t(E)/Λ_t(F)`.
pub fn ch_lambda(b: &BundleExpr, sign: i64, exp: u32, spec: &RingSpec, q_cap: u32) -> Result<QSeries> {
    if exp == 0 {
        return Err(Error::InvalidParameters("Λ_t needs t = ±q^a with a > 0".into()));
    }
    let mut pos = QSeries::one(*spec, q_cap);
    let mut neg = QSeries::one(*spec, q_cap);
    let mut push = |f: QSeries, mult: i64| {
        let target = if mult > 0 { &mut pos } else { &mut neg };
        *target = target.qs_mul(&f.pow(mult.unsigned_abs() as u32)).expect("same ring");
    };
    if b.trivial != 0 {
        let t = QSeries::from_coeffs(
            *spec,
            q_cap,
            [(0, FormPoly::one(*spec)), (exp, FormPoly::constant(*spec, Rational::from_int(sign)))],
        );
        push(t, b.trivial);
    }
    if b.tangent != 0 {
        let uni = root_ring(spec);
        let f = root_product_q(spec, &pair_factor(&uni, 0, sign, exp, q_cap))?;
        push(f, b.tangent);
    }
    if b.euler != 0 {
        let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("no Euler variable in ring".into()))?;
        push(pair_factor(spec, u, sign, exp, q_cap), b.euler);
    }
    if b.aux != 0 {
        for i in 0..spec.extra_roots {
            push(pair_factor(spec, spec.aux_var(i), sign, exp, q_cap), b.aux);
        }
    }
    pos.qs_mul(&neg.qs_invert()?)
}

/// `ch(S_t(b)) = 1/ch(Λ_{−t}(b))`.
pub fn ch_sym(b: &BundleExpr, sign: i64, exp: u32, spec: &RingSpec, q_cap: u32) -> Result<QSeries> {
    ch_lambda(b, -sign, exp, spec, q_cap)?.qs_invert()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hyperbolic {
    Cosh,
    Sinh,
    Tanh,
}

/// `cosh`, `sinh` or `tanh` of `u/2`, raised to `power`.
///
/// Negative powers are only available for `cosh`; a negative power of
/// `sinh` is not a form and must go through [`FormPoly::divide_exact`].
pub fn euler_hyperbolic(kind: Hyperbolic, power: i32, spec: &RingSpec) -> Result<FormPoly> {
    let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("no Euler variable in ring".into()))?;
    let n = series_len(spec);
    let half = Rational::new(1, 2);
    let cosh = in_var(spec, u, &univariate::scale(&univariate::cosh(n), &half));
    let sinh = in_var(spec, u, &univariate::scale(&univariate::sinh(n), &half));
    let pw = |f: &FormPoly, p: i32| -> Result<FormPoly> {
        let base = if p < 0 { f.poly_invert()? } else { f.clone() };
        Ok(base.pow(p.unsigned_abs()))
    };
    match kind {
        Hyperbolic::Cosh => pw(&cosh, power),
        Hyperbolic::Sinh if power >= 0 => pw(&sinh, power),
        Hyperbolic::Tanh if power >= 0 => Ok(&pw(&sinh, power)? * &pw(&cosh, -power)?),
        _ => Err(Error::NotUnit(format!("{kind:?}(u/2)^{power} is not a form"))),
    }
}

/// `det^{1/2}(2cosh(·/2))` of a real bundle given by its complexification.
///
/// Each root pair `±ω` contributes `2cosh(ω/2)`; a trivial summand of
/// complex rank `2m` contributes `2^m`.
pub fn det_half_2cosh(v: &BundleExpr, spec: &RingSpec) -> Result<FormPoly> {
    if v.tangent < 0 || v.euler < 0 || v.aux < 0 || v.trivial < 0 || v.trivial % 2 != 0 {
        return Err(Error::InvalidParameters(format!("{v} is not an honest real bundle")));
    }
    let n = series_len(spec);
    let half = Rational::new(1, 2);
    let two_cosh_half: Vec<Rational> =
        univariate::scale(&univariate::cosh(n), &half).iter().map(|c| c * &Rational::from_int(2)).collect();
    let mut out = FormPoly::constant(*spec, Rational::pow2(v.trivial / 2));
    if v.tangent > 0 {
        out = &out * &root_product(spec, &two_cosh_half)?.pow(v.tangent as u32);
    }
    if v.euler > 0 {
        let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("no Euler variable in ring".into()))?;
        out = &out * &in_var(spec, u, &two_cosh_half).pow(v.euler as u32);
    }
    for i in 0..spec.extra_roots {
        if v.aux > 0 {
            out = &out * &in_var(spec, spec.aux_var(i), &two_cosh_half).pow(v.aux as u32);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{HALF, UNIT};
    use crate::ring::RootBasis;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn genus_low_degrees() {
        let spec = RingSpec::new(2, false, 8).unwrap();
        let a = genus_form(GenusKind::AHat, &spec).to_pontryagin().unwrap();
        assert_eq!(a.render(), "1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2");
        // L̂ = ∏ x/tanh(x/2) = 2^d ∏ (x/2)/tanh(x/2): compare top parts with L.
        let l = genus_form(GenusKind::LHat, &spec).to_pontryagin().unwrap();
        assert_eq!(l.render(), "4 + 1/3*p1 - 1/180*p1^2 + 7/180*p2");
        assert_eq!(genus_form(GenusKind::AHat, &RingSpec::manifold(0)), FormPoly::one(RingSpec::manifold(0)));
    }

    #[test]
    fn power_sums_match_roots() {
        let roots = RingSpec::new(3, true, 12).unwrap();
        let sums = roots.power_sums();
        for kind in [GenusKind::AHat, GenusKind::LHat] {
            let a = genus_form(kind, &roots);
            let b = genus_form(kind, &sums).change_basis(RootBasis::Roots).unwrap();
            assert_eq!(a, b);
        }
        let t = BundleExpr::TANGENT;
        assert_eq!(
            ch_bundle(&t, &roots).unwrap(),
            ch_bundle(&t, &sums).unwrap().change_basis(RootBasis::Roots).unwrap()
        );
        let cap = 2 * UNIT;
        let lam_r = ch_lambda(&t.tilde(&roots), -1, HALF, &roots, cap).unwrap();
        let lam_s = ch_lambda(&t.tilde(&sums), -1, HALF, &sums, cap).unwrap();
        let back = lam_s.try_map_coeffs(roots, |p| p.change_basis(RootBasis::Roots)).unwrap();
        assert_eq!(lam_r, back);
    }

    #[test]
    fn ch_examples() {
        let spec = RingSpec::new(2, true, 8).unwrap();
        assert_eq!(ch_bundle(&BundleExpr::trivial(5), &spec).unwrap().render(), "5");
        let e = ch_bundle(&BundleExpr::EULER, &spec).unwrap();
        assert_eq!(e.render(), "2 + u^2 + 1/12*u^4");
        let t = ch_bundle(&BundleExpr::TANGENT.tilde(&spec), &spec).unwrap();
        let t0 = ch_bundle(&BundleExpr::TANGENT, &spec).unwrap();
        assert_eq!(&t0 - &t, FormPoly::constant(spec, Rational::from_int(4)));
    }

    #[test]
    fn lambda_examples() {
        let spec = RingSpec::new(1, true, 4).unwrap();
        let cap = 2 * UNIT;
        let l = ch_lambda(&BundleExpr::trivial(2), 1, UNIT, &spec, cap).unwrap();
        assert_eq!(l.render(), "1 + 2*q + q^2");
        let n = ch_lambda(&BundleExpr::EULER, 1, UNIT, &spec, cap).unwrap();
        assert_eq!(n.qs_coeff(UNIT).unwrap(), ch_bundle(&BundleExpr::EULER, &spec).unwrap());
        assert!(ch_lambda(&BundleExpr::EULER, 1, 0, &spec, cap).is_err());
    }

    #[test]
    fn signature_relation() {
        let spec = RingSpec::manifold(4);
        let lhs = genus_form(GenusKind::LHat, &spec);
        let rhs = &genus_form(GenusKind::AHat, &spec) * &det_half_2cosh(&BundleExpr::TANGENT, &spec).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(det_half_2cosh(&BundleExpr::trivial(4), &spec).unwrap().render(), "4");
    }

    #[test]
    fn hyperbolics() {
        let spec = RingSpec::new(0, true, 8).unwrap();
        assert_eq!(euler_hyperbolic(Hyperbolic::Cosh, 1, &spec).unwrap().render(), "1 + 1/8*u^2 + 1/384*u^4");
        assert_eq!(euler_hyperbolic(Hyperbolic::Sinh, 1, &spec).unwrap().render(), "1/2*u + 1/48*u^3");
        let c2 = euler_hyperbolic(Hyperbolic::Cosh, 2, &spec).unwrap();
        let cm2 = euler_hyperbolic(Hyperbolic::Cosh, -2, &spec).unwrap();
        assert_eq!(&c2 * &cm2, FormPoly::one(spec));
        let t = euler_hyperbolic(Hyperbolic::Tanh, 1, &spec).unwrap();
        assert_eq!(t.coeff(&spec.mono(0, 1)), r(1, 2));
        assert!(euler_hyperbolic(Hyperbolic::Sinh, -1, &spec).is_err());
    }
}
