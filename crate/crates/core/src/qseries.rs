//! Formal power series in `q^{1/8}` with [`FormPoly`] coefficients.
//!
//! Exponents are stored as nonnegative integers in units of `1/8`, so
//! `q^{1/2}` has stored exponent 4 and `q` has stored exponent 8. Scalar
//! series use coefficients in [`RingSpec::scalar`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::{render_terms, FormPoly, RingSpec};

/// Number of lattice steps in `q^1`.
pub const UNIT: u32 = 8;
/// Lattice steps in `q^{1/2}`.
pub const HALF: u32 = 4;

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    spec: RingSpec,
    q_cap: u32,
    coeffs: BTreeMap<u32, FormPoly>,
}

impl QSeries {
    pub fn zero(spec: RingSpec, q_cap: u32) -> Self {
        QSeries { spec, q_cap, coeffs: BTreeMap::new() }
    }

    pub fn one(spec: RingSpec, q_cap: u32) -> Self {
        Self::constant(FormPoly::one(spec), q_cap)
    }

    pub fn constant(c: FormPoly, q_cap: u32) -> Self {
        Self::monomial(c, 0, q_cap)
    }

    /// `c · q^{exp/8}`, or zero if `exp` is above the cap.
    pub fn monomial(c: FormPoly, exp: u32, q_cap: u32) -> Self {
        let mut s = Self::zero(*c.spec(), q_cap);
        s.add_at(exp, c);
        s
    }

    /// A scalar series from `(exponent, coefficient)` pairs.
    pub fn scalar(q_cap: u32, terms: &[(u32, Rational)]) -> Self {
        let spec = RingSpec::scalar();
        let mut s = Self::zero(spec, q_cap);
        for (e, c) in terms {
            s.add_at(*e, FormPoly::constant(spec, c.clone()));
        }
        s
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, FormPoly)>>(spec: RingSpec, q_cap: u32, coeffs: I) -> Self {
        let mut s = Self::zero(spec, q_cap);
        for (e, c) in coeffs {
            assert_eq!(*c.spec(), spec, "coefficient ring mismatch");
            s.add_at(e, c);
        }
        s
    }

    fn add_at(&mut self, exp: u32, c: FormPoly) {
        if exp > self.q_cap || c.is_zero() {
            return;
        }
        match self.coeffs.remove(&exp) {
            None => {
                self.coeffs.insert(exp, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.coeffs.insert(exp, sum);
                }
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn q_cap(&self) -> u32 {
        self.q_cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &FormPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient at `q^{exp/8}`.
    pub fn qs_coeff(&self, exp: u32) -> Result<FormPoly> {
        if exp > self.q_cap {
            return Err(Error::AboveCap(render_exponent(exp), render_exponent(self.q_cap)));
        }
        Ok(self.coeffs.get(&exp).cloned().unwrap_or_else(|| FormPoly::zero(self.spec)))
    }

    /// Coefficient of a scalar series as a rational.
    pub fn scalar_coeff(&self, exp: u32) -> Result<Rational> {
        Ok(self.qs_coeff(exp)?.constant_term())
    }

    fn check(&self, other: &QSeries) -> Result<()> {
        self.spec.check_same(&other.spec)?;
        if self.q_cap != other.q_cap {
            return Err(Error::SpecMismatch(format!("q caps {} and {}", self.q_cap, other.q_cap)));
        }
        Ok(())
    }

    pub fn qs_add(&self, other: &QSeries) -> Result<QSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_at(*e, c.clone());
        }
        Ok(out)
    }

    pub fn qs_sub(&self, other: &QSeries) -> Result<QSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_at(*e, c.neg());
        }
        Ok(out)
    }

    /// Cauchy product truncated at the q cap.
    pub fn qs_mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check(other)?;
        let a: Vec<(u32, &FormPoly)> = self.iter().collect();
        let b: Vec<(u32, &FormPoly)> = other.iter().collect();
        let mut targets: Vec<u32> =
            a.iter().flat_map(|(ea, _)| b.iter().map(move |(eb, _)| ea + eb)).filter(|e| *e <= self.q_cap).collect();
        targets.sort_unstable();
        targets.dedup();
        let spec = self.spec;
        // Each output exponent is independent; the inner sum order is fixed.
        let coeffs: Vec<(u32, FormPoly)> = targets
            .par_iter()
            .map(|&n| {
                let mut acc = FormPoly::zero(spec);
                for (ea, ca) in &a {
                    if *ea > n {
                        break;
                    }
                    if let Ok(i) = b.binary_search_by_key(&(n - ea), |(e, _)| *e) {
                        acc = &acc + &(*ca * b[i].1);
                    }
                }
                (n, acc)
            })
            .collect();
        Ok(QSeries::from_coeffs(spec, self.q_cap, coeffs))
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries::from_coeffs(self.spec, self.q_cap, self.iter().map(|(e, p)| (e, p.scale(c))))
    }

    pub fn neg(&self) -> QSeries {
        self.scale(&-Rational::one())
    }

    /// Multiplies every coefficient by a form.
    pub fn mul_form(&self, f: &FormPoly) -> Result<QSeries> {
        self.spec.check_same(f.spec())?;
        Ok(QSeries::from_coeffs(self.spec, self.q_cap, self.iter().map(|(e, p)| (e, p * f))))
    }

    /// Multiplies by `q^{shift/8}`.
    pub fn shift(&self, shift: u32) -> QSeries {
        QSeries::from_coeffs(self.spec, self.q_cap, self.iter().map(|(e, p)| (e + shift, p.clone())))
    }

    /// Applies `f` to every coefficient, landing in `spec`.
    pub fn map_coeffs<F: Fn(&FormPoly) -> FormPoly + Sync>(&self, spec: RingSpec, f: F) -> QSeries {
        QSeries::from_coeffs(spec, self.q_cap, self.iter().map(|(e, p)| (e, f(p))))
    }

    /// Fallible version of [`QSeries::map_coeffs`].
    pub fn try_map_coeffs<F: Fn(&FormPoly) -> Result<FormPoly>>(&self, spec: RingSpec, f: F) -> Result<QSeries> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (e, p) in self.iter() {
            out.push((e, f(p)?));
        }
        Ok(QSeries::from_coeffs(spec, self.q_cap, out))
    }

    /// Views a scalar series as having constant coefficients in `spec`.
    pub fn embed_scalar(&self, spec: RingSpec) -> QSeries {
        assert_eq!(self.spec.num_vars(), 0, "not a scalar series");
        self.map_coeffs(spec, |p| FormPoly::constant(spec, p.constant_term()))
    }

    /// Same series with a smaller q cap.
    pub fn truncate_q(&self, q_cap: u32) -> QSeries {
        assert!(q_cap <= self.q_cap, "cannot raise a q cap");
        QSeries::from_coeffs(self.spec, q_cap, self.iter().map(|(e, p)| (e, p.clone())))
    }

    pub fn pow(&self, exp: u32) -> QSeries {
        let mut acc = QSeries::one(self.spec, self.q_cap);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `Σ_k coeffs[k] · self^k`. The constant term (q⁰ constant) must be
    /// zero so that powers vanish under the two truncations.
    pub fn apply_series(&self, coeffs: &[Rational]) -> Result<QSeries> {
        if !self.qs_coeff(0)?.constant_term().is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        let mut out =
            QSeries::constant(FormPoly::constant(self.spec, coeffs.first().cloned().unwrap_or_default()), self.q_cap);
        let mut power = self.clone();
        for c in coeffs.iter().skip(1) {
            if power.is_zero() {
                break;
            }
            if !c.is_zero() {
                out = &out + &power.scale(c);
            }
            power = &power * self;
        }
        Ok(out)
    }

    /// Largest number of nonzero powers `self^k` can have before both
    /// truncations kill it.
    pub fn nilpotency_bound(&self) -> usize {
        (self.spec.max_weight() + self.q_cap + 2) as usize
    }

    /// Multiplicative inverse to the q cap.
    pub fn qs_invert(&self) -> Result<QSeries> {
        let c0 = self.qs_coeff(0)?;
        if c0.constant_term().is_zero() {
            return Err(Error::NotUnit(format!("leading coefficient of {self} is not a unit")));
        }
        let inv_c0 = c0.poly_invert()?;
        // self = c0 (1 − t)  ⇒  self⁻¹ = c0⁻¹ Σ t^k
        let normalized = self.mul_form(&inv_c0)?;
        let t = &QSeries::one(self.spec, self.q_cap) - &normalized;
        let ones = vec![Rational::one(); self.nilpotency_bound()];
        t.apply_series(&ones)?.mul_form(&inv_c0)
    }

    /// `exp(self)`; requires a nilpotent argument.
    pub fn exp(&self) -> Result<QSeries> {
        self.apply_series(&crate::ring::univariate::exp(self.nilpotency_bound()))
    }

    /// `log(self)` for a series whose leading constant is 1.
    pub fn log(&self) -> Result<QSeries> {
        let c = self.qs_coeff(0)?.constant_term();
        if !c.is_one() {
            return Err(Error::NotUnit(format!("log needs constant term 1, found {c}")));
        }
        let t = self - &QSeries::one(self.spec, self.q_cap);
        let n = self.nilpotency_bound();
        let coeffs: Vec<Rational> = (0..n)
            .map(|k| if k == 0 { Rational::zero() } else { Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64) })
            .collect();
        t.apply_series(&coeffs)
    }

    /// True if every nonzero exponent is a multiple of `step`.
    pub fn on_lattice(&self, step: u32) -> bool {
        self.coeffs.keys().all(|e| e % step == 0)
    }

    pub fn render(&self) -> String {
        if self.coeffs.values().all(|c| c.is_constant()) {
            let consts: Vec<(Rational, String)> = self.iter().map(|(e, c)| (c.constant_term(), q_power(e))).collect();
            return render_terms(consts.iter().map(|(c, m)| (c, m.clone())));
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(e, c)| {
                let q = q_power(e);
                if q.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{q}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// A lattice exponent as a reduced fraction, e.g. `4 ↦ "1/2"`.
pub fn render_exponent(exp: u32) -> String {
    Rational::new(exp as i64, UNIT as i64).to_string()
}

fn q_power(exp: u32) -> String {
    match exp {
        0 => String::new(),
        UNIT => "q".into(),
        e if e % UNIT == 0 => format!("q^{}", e / UNIT),
        e => format!("q^{{{}}}", render_exponent(e)),
    }
}

/// Truncated infinite product of lazily built factors.
///
/// Each item is `(bound, build)`: the factor must equal 1 below the
/// lattice exponent `bound`, and bounds must strictly increase. Factors
/// whose bound exceeds `q_cap` are never built.
pub fn qs_product<I, F>(spec: RingSpec, q_cap: u32, factors: I) -> Result<QSeries>
where
    I: IntoIterator<Item = (u32, F)>,
    F: FnOnce() -> QSeries,
{
    let mut acc = QSeries::one(spec, q_cap);
    let mut last: Option<u32> = None;
    for (bound, build) in factors {
        if bound == 0 || last.is_some_and(|b| bound <= b) {
            return Err(Error::BadFactor(format!("bound {bound} does not strictly increase from {last:?}")));
        }
        if bound > q_cap {
            break;
        }
        last = Some(bound);
        let f = build();
        let one = QSeries::one(spec, q_cap);
        let diff = &f - &one;
        if let Some(o) = diff.order() {
            if o < bound {
                return Err(Error::BadFactor(format!(
                    "factor differs from 1 at q^{} below its bound q^{}",
                    render_exponent(o),
                    render_exponent(bound)
                )));
            }
        }
        acc = acc.qs_mul(&f)?;
    }
    Ok(acc)
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}]", self.render())
    }
}

macro_rules! series_op {
    ($tr:ident, $m:ident, $f:ident) => {
        /// Panics on mismatched rings or caps.
        impl std::ops::$tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                self.$f(rhs).expect("series mismatch")
            }
        }
    };
}

series_op!(Add, add, qs_add);
series_op!(Sub, sub, qs_sub);
series_op!(Mul, mul, qs_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn mul_examples() {
        let cap = 2 * UNIT;
        let a = QSeries::scalar(cap, &[(0, int(1)), (UNIT, int(-1))]);
        let b = QSeries::scalar(cap, &[(0, int(1)), (UNIT, int(1)), (2 * UNIT, int(1))]);
        assert_eq!(&a * &b, QSeries::one(RingSpec::scalar(), cap));
        assert_eq!(&a * &QSeries::one(RingSpec::scalar(), cap), a);
        let h = QSeries::scalar(cap, &[(HALF, int(1))]);
        assert_eq!((&h * &h).render(), "q");
    }

    #[test]
    fn invert_examples() {
        let cap = 3 * UNIT;
        let a = QSeries::scalar(cap, &[(0, int(1)), (UNIT, int(-1))]);
        assert_eq!(a.qs_invert().unwrap().render(), "1 + q + q^2 + q^3");
        let one = QSeries::one(RingSpec::scalar(), cap);
        assert_eq!(one.qs_invert().unwrap(), one);
        let q = QSeries::scalar(cap, &[(UNIT, int(1))]);
        assert!(matches!(q.qs_invert(), Err(Error::NotUnit(_))));
    }

    #[test]
    fn coeff_above_cap() {
        let a = QSeries::scalar(HALF, &[(0, int(1)), (HALF, int(3))]);
        assert_eq!(a.scalar_coeff(HALF).unwrap(), int(3));
        assert!(matches!(a.qs_coeff(UNIT), Err(Error::AboveCap(..))));
    }

    #[test]
    fn product_contract() {
        let cap = UNIT;
        let s = RingSpec::scalar();
        let empty: Vec<(u32, fn() -> QSeries)> = vec![];
        assert_eq!(qs_product(s, cap, empty).unwrap(), QSeries::one(s, cap));
        let bad = vec![(UNIT, move || QSeries::scalar(cap, &[(0, int(1)), (HALF, int(1))]))];
        assert!(matches!(qs_product(s, cap, bad), Err(Error::BadFactor(_))));
    }

    #[test]
    fn exp_log_roundtrip() {
        let cap = 2 * UNIT;
        let spec = RingSpec::new(0, true, 4).unwrap();
        let u = FormPoly::euler(spec);
        let a = QSeries::from_coeffs(spec, cap, [(0, u.clone()), (HALF, FormPoly::one(spec)), (UNIT, &u * &u)]);
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
    }

    #[test]
    fn render_fractional() {
        let a = QSeries::scalar(UNIT, &[(1, int(2)), (HALF, int(-3))]);
        assert_eq!(a.render(), "2*q^{1/8} - 3*q^{1/2}");
    }
}
