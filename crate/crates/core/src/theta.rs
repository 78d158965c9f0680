//! Jacobi theta functions as truncated q-products.
//!
//! With `q = e^{2π√−1τ}` and the multiplicative variable `e^{2π√−1v} ↦ e^w`
//! for a nilpotent ring element `w`, the ratios used by the cancellation
//! formulas become
//!
//! ```text
//! Θ(w)  = w·θ'(0)/θ(w)   = ((w/2)/sinh(w/2)) · ∏ (1−q^j)² / ((1−q^j e^w)(1−q^j e^{−w}))
//! T₁(w) = θ₁(w)/θ₁(0)    = cosh(w/2) · ∏ (1+q^j e^w)(1+q^j e^{−w}) / (1+q^j)²
//! T₂(w) = θ₂(w)/θ₂(0)    = ∏ (1−q^{j−½} e^w)(1−q^{j−½} e^{−w}) / (1−q^{j−½})²
//! T₃(w) = θ₃(w)/θ₃(0)    = ∏ (1+q^{j−½} e^w)(1+q^{j−½} e^{−w}) / (1+q^{j−½})²
//! ```
//!
//! and `θ'(0)/θ(w)` itself is `R(w)/sinh(w/2)` where `R` is the product in
//! `Θ`. The factor `π` only enters `θ'(0)`; it is carried as a separate
//! power so the coefficient field stays ℚ.

use crate::charforms::{in_var, pair_factor, root_product_q, root_ring};
use crate::error::{Error, Result};
use crate::qseries::{qs_product, QSeries, HALF, UNIT};
use crate::rational::Rational;
use crate::ring::{univariate, FormPoly, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

/// `∏_{j≥1} (1 + sign·q^{start + (j−1)·UNIT})^power` as a scalar series.
fn scalar_product(sign: i64, start: u32, power: u32, q_cap: u32) -> Result<QSeries> {
    let factors = (0..).map(move |j| {
        let e = start + j * UNIT;
        (e, move || QSeries::scalar(q_cap, &[(0, Rational::one()), (e, Rational::from_int(sign))]).pow(power))
    });
    qs_product(RingSpec::scalar(), q_cap, factors)
}

/// `θ_k(0, τ)` for `k = 1, 2, 3`; `θ(0, τ)` vanishes and is rejected.
pub fn theta_null(kind: ThetaKind, q_cap: u32) -> Result<QSeries> {
    let euler = scalar_product(-1, UNIT, 1, q_cap)?;
    match kind {
        ThetaKind::Theta => Err(Error::InvalidParameters("θ(0, τ) is identically zero".into())),
        ThetaKind::Theta1 => {
            let p = &euler * &scalar_product(1, UNIT, 2, q_cap)?;
            Ok(p.shift(1).scale(&Rational::from_int(2)))
        }
        ThetaKind::Theta2 => Ok(&euler * &scalar_product(-1, HALF, 2, q_cap)?),
        ThetaKind::Theta3 => Ok(&euler * &scalar_product(1, HALF, 2, q_cap)?),
    }
}

/// A scalar series times `π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiTagged {
    pub pi_power: u32,
    pub series: QSeries,
}

/// `θ'(0, τ) = π · 2q^{1/8} ∏ (1−q^j)³`.
pub fn theta_prime_null(q_cap: u32) -> Result<PiTagged> {
    let cube = scalar_product(-1, UNIT, 3, q_cap)?;
    Ok(PiTagged { pi_power: 1, series: cube.shift(1).scale(&Rational::from_int(2)) })
}

/// Checks `θ'(0) = π θ₁(0) θ₂(0) θ₃(0)` to the cap.
pub fn jacobi_identity_holds(q_cap: u32) -> Result<bool> {
    let lhs = theta_prime_null(q_cap)?;
    let rhs = PiTagged {
        pi_power: 1,
        series: &(&theta_null(ThetaKind::Theta1, q_cap)? * &theta_null(ThetaKind::Theta2, q_cap)?)
            * &theta_null(ThetaKind::Theta3, q_cap)?,
    };
    Ok(lhs == rhs)
}

/// `δ₁, ε₁` (level Γ₀(2)) and `δ₂, ε₂` (level Γ⁰(2)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularGenerators {
    pub delta1: QSeries,
    pub eps1: QSeries,
    pub delta2: QSeries,
    pub eps2: QSeries,
}

impl ModularGenerators {
    /// Builds the generators from fourth powers of theta nulls and checks
    /// the known leading terms and the integrality of `4δ₁` and `16ε₁`.
    pub fn new(q_cap: u32) -> Result<Self> {
        let t1 = theta_null(ThetaKind::Theta1, q_cap)?.pow(4);
        let t2 = theta_null(ThetaKind::Theta2, q_cap)?.pow(4);
        let t3 = theta_null(ThetaKind::Theta3, q_cap)?.pow(4);
        let g = ModularGenerators {
            delta1: (&t2 + &t3).scale(&Rational::new(1, 8)),
            eps1: (&t2 * &t3).scale(&Rational::new(1, 16)),
            delta2: (&t1 + &t3).scale(&Rational::new(-1, 8)),
            eps2: (&t1 * &t3).scale(&Rational::new(1, 16)),
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let cap = self.delta1.q_cap();
        let expect = |s: &QSeries, name: &str, terms: &[(u32, Rational)]| -> Result<()> {
            for (e, c) in terms {
                if *e <= cap && s.scalar_coeff(*e)? != *c {
                    return Err(Error::Inconsistent(format!(
                        "{name} has coefficient {} at exponent {e}/8",
                        s.scalar_coeff(*e)?
                    )));
                }
            }
            Ok(())
        };
        expect(
            &self.delta1,
            "δ₁",
            &[(0, Rational::new(1, 4)), (HALF, Rational::zero()), (UNIT, Rational::from_int(6))],
        )?;
        expect(
            &self.eps1,
            "ε₁",
            &[(0, Rational::new(1, 16)), (HALF, Rational::zero()), (UNIT, Rational::from_int(-1))],
        )?;
        expect(&self.delta2, "δ₂", &[(0, Rational::new(-1, 8)), (HALF, Rational::from_int(-3))])?;
        expect(&self.eps2, "ε₂", &[(0, Rational::zero()), (HALF, Rational::one())])?;
        for (s, scale, name) in [(&self.delta1, 4, "4δ₁"), (&self.eps1, 16, "16ε₁")] {
            for (e, c) in s.iter() {
                if !(&c.constant_term() * &Rational::from_int(scale)).is_integer() {
                    return Err(Error::Inconsistent(format!(
                        "{name} has a non-integral coefficient at exponent {e}/8"
                    )));
                }
            }
        }
        for s in [&self.delta1, &self.eps1, &self.delta2, &self.eps2] {
            if !s.on_lattice(HALF) {
                return Err(Error::Inconsistent("generator leaves the q^{1/2} lattice".into()));
            }
        }
        Ok(())
    }
}

/// `∏_{j≥1} (1 + sign q^{e_j} e^{w})(1 + sign q^{e_j} e^{−w})` with
/// `e_j = start + (j−1)`, in the variable `var` of `spec`.
fn pair_product(spec: &RingSpec, var: usize, sign: i64, start: u32, q_cap: u32) -> Result<QSeries> {
    let factors = (0..).map(move |j| {
        let e = start + j * UNIT;
        (e, move || pair_factor(spec, var, sign, e, q_cap))
    });
    qs_product(*spec, q_cap, factors)
}

/// The ratio attached to `kind`, as a function of the variable `var`:
/// `Θ(w)`, `T₁(w)`, `T₂(w)` or `T₃(w)` from the module table.
pub fn theta_ratio(kind: ThetaKind, spec: &RingSpec, var: usize, q_cap: u32) -> Result<QSeries> {
    let n = spec.max_weight() as usize + 1;
    let half = Rational::new(1, 2);
    let (sign, start) = match kind {
        ThetaKind::Theta => (-1, UNIT),
        ThetaKind::Theta1 => (1, UNIT),
        ThetaKind::Theta2 => (-1, HALF),
        ThetaKind::Theta3 => (1, HALF),
    };
    let num_or_den = pair_product(spec, var, sign, start, q_cap)?;
    let norm = scalar_product(sign, start, 2, q_cap)?.embed_scalar(*spec);
    let prefactor = match kind {
        ThetaKind::Theta => in_var(spec, var, &univariate::ahat_factor(n)),
        ThetaKind::Theta1 => in_var(spec, var, &univariate::scale(&univariate::cosh(n), &half)),
        _ => FormPoly::one(*spec),
    };
    let body = match kind {
        ThetaKind::Theta => &norm * &num_or_den.qs_invert()?,
        _ => &num_or_den * &norm.qs_invert()?,
    };
    body.mul_form(&prefactor)
}

/// `R(w) = Θ(w)·sinh(w/2)/(w/2)`, so that `θ'(0)/θ(w) ↦ R(w)/sinh(w/2)`.
pub fn theta_r(spec: &RingSpec, var: usize, q_cap: u32) -> Result<QSeries> {
    let norm = scalar_product(-1, UNIT, 2, q_cap)?.embed_scalar(*spec);
    Ok(&norm * &pair_product(spec, var, -1, UNIT, q_cap)?.qs_invert()?)
}

/// `∏_j Θ(x_j)·T_k(x_j)` over the tangent roots, for `k ∈ {1, 2}`.
pub fn tangent_theta_product(kind: ThetaKind, spec: &RingSpec, q_cap: u32) -> Result<QSeries> {
    let uni = root_ring(spec);
    let f = &theta_ratio(ThetaKind::Theta, &uni, 0, q_cap)? * &theta_ratio(kind, &uni, 0, q_cap)?;
    root_product_q(spec, &f)
}

/// The two theta-ratio assemblies of the degree-(8k+2) pair, before the
/// division by `sinh(u/2)`:
///
/// * kind `Theta1`: `2^d ∏ΘT₁(x_j) · R(u) · (T₁(u) − T₂(u)T₃(u)/T₁(u))`, which
///   equals `sinh(u/2) · Q₁`;
/// * kind `Theta2`: `∏ΘT₂(x_j) · R(u) · (T₂(u) − T₁(u)T₃(u)/T₂(u))`, which
///   equals `2 sinh(u/2) · Q₂`.
pub fn q_numerator_from_ratios(kind: ThetaKind, spec: &RingSpec, q_cap: u32) -> Result<QSeries> {
    let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("ring needs the Euler variable".into()))?;
    let t1 = theta_ratio(ThetaKind::Theta1, spec, u, q_cap)?;
    let t2 = theta_ratio(ThetaKind::Theta2, spec, u, q_cap)?;
    let t3 = theta_ratio(ThetaKind::Theta3, spec, u, q_cap)?;
    let (main, other, scale) = match kind {
        ThetaKind::Theta1 => (&t1, &t2, Rational::pow2(spec.num_roots as i64)),
        ThetaKind::Theta2 => (&t2, &t1, Rational::one()),
        _ => return Err(Error::InvalidParameters("only Θ₁/Θ₂ assemblies exist".into())),
    };
    let bracket = main - &(&(other * &t3) * &main.qs_invert()?);
    let roots = tangent_theta_product(kind, spec, q_cap)?;
    Ok((&(&roots * &theta_r(spec, u, q_cap)?) * &bracket).scale(&scale))
}

/// Theta-ratio forms of `Q′₁` (kind `Theta1`) and `Q′₂` (kind `Theta2`):
/// `c ∏ΘT_k(x_j) · (sinh(u/2) / (R(u) T_k(u)))^s` with `c = 2^d` for `Q′₁`
/// and `c = 1` for `Q′₂`.
pub fn q_prime_from_ratios(kind: ThetaKind, s: u32, spec: &RingSpec, q_cap: u32) -> Result<QSeries> {
    let u = spec.euler_var().ok_or_else(|| Error::InvalidParameters("ring needs the Euler variable".into()))?;
    let scale = match kind {
        ThetaKind::Theta1 => Rational::pow2(spec.num_roots as i64),
        ThetaKind::Theta2 => Rational::one(),
        _ => return Err(Error::InvalidParameters("only Θ′₁/Θ′₂ assemblies exist".into())),
    };
    let n = spec.max_weight() as usize + 1;
    let sinh = in_var(spec, u, &univariate::scale(&univariate::sinh(n), &Rational::new(1, 2)));
    let per_u = (&theta_r(spec, u, q_cap)? * &theta_ratio(kind, spec, u, q_cap)?).qs_invert()?.mul_form(&sinh)?;
    let roots = tangent_theta_product(kind, spec, q_cap)?;
    Ok((&roots * &per_u.pow(s)).scale(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn theta_null_expansions() {
        let cap = 2 * UNIT;
        let t3 = theta_null(ThetaKind::Theta3, cap).unwrap();
        assert_eq!(t3.render(), "1 + 2*q^{1/2} + 2*q^2");
        let t2 = theta_null(ThetaKind::Theta2, cap).unwrap();
        assert_eq!(t2.render(), "1 - 2*q^{1/2} + 2*q^2");
        assert!(theta_null(ThetaKind::Theta, cap).is_err());
    }

    #[test]
    fn theta_prime_and_jacobi() {
        let cap = 2 * UNIT + 1;
        let tp = theta_prime_null(cap).unwrap();
        assert_eq!(tp.pi_power, 1);
        assert_eq!(tp.series.render(), "2*q^{1/8} - 6*q^{9/8}");
        assert!(jacobi_identity_holds(5 * UNIT).unwrap());
        assert!(jacobi_identity_holds(0).unwrap());
    }

    #[test]
    fn generators_leading_terms() {
        let g = ModularGenerators::new(3 * UNIT).unwrap();
        assert_eq!(g.delta1.scalar_coeff(0).unwrap(), Rational::new(1, 4));
        assert_eq!(g.delta1.scalar_coeff(UNIT).unwrap(), int(6));
        assert_eq!(g.eps1.scalar_coeff(UNIT).unwrap(), int(-1));
        assert_eq!(g.delta2.scalar_coeff(HALF).unwrap(), int(-3));
        assert_eq!(g.eps2.scalar_coeff(HALF).unwrap(), int(1));
    }

    #[test]
    fn ratios_at_zero_and_q0() {
        let spec = RingSpec::new(0, true, 8).unwrap();
        for kind in [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
            let r = theta_ratio(kind, &spec, 0, 2 * UNIT).unwrap();
            for (_, c) in r.iter().skip(1) {
                assert!(c.constant_term().is_zero());
            }
            assert_eq!(r.qs_coeff(0).unwrap().constant_term(), Rational::one());
        }
        let t1 = theta_ratio(ThetaKind::Theta1, &spec, 0, 2 * UNIT).unwrap();
        assert_eq!(t1.qs_coeff(0).unwrap().render(), "1 + 1/8*u^2 + 1/384*u^4");
    }
}
