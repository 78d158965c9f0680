//! Truncated graded polynomial ring over ℚ in formal Chern roots.
//!
//! Variables are ordered `x1..xd` (tangent roots), `v1..vl` (auxiliary roots
//! of a twisting bundle), then `u` (Euler class of a rank-two bundle). Each
//! variable has cohomological degree 2 and anything above the ring's
//! `degree_cap` is discarded on every operation.
//!
//! The roots are normalized so that `Â = ∏ (x/2)/sinh(x/2)` and
//! `L̂ = ∏ x/tanh(x/2)` have rational coefficients; the usual `2π√−1` factors
//! only rescale each homogeneous component and every identity checked by
//! this crate is invariant under that rescaling.

mod pontryagin;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use pontryagin::{PMonomial, PontPoly};

/// Hard limit on the number of ring variables (one byte each in a `u128`).
pub const MAX_VARS: usize = 16;

/// Largest supported `degree_cap`; exponents are stored in one byte.
pub const MAX_DEGREE_CAP: u32 = 500;

/// How the tangent roots are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootBasis {
    /// One variable `x_j` per root.
    Roots,
    /// Symmetric even forms only, through the power sums
    /// `s_i = Σ_j x_j^{2i}` (degree `4i`) for `i = 1..d`.
    PowerSums,
}

/// Shape of a truncated graded ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub num_roots: usize,
    pub extra_roots: usize,
    pub has_euler: bool,
    /// Maximum cohomological degree retained; always even.
    pub degree_cap: u32,
    pub basis: RootBasis,
}

impl RingSpec {
    pub fn new(num_roots: usize, has_euler: bool, degree_cap: u32) -> Result<Self> {
        Self::with_aux(num_roots, 0, has_euler, degree_cap)
    }

    pub fn with_aux(num_roots: usize, extra_roots: usize, has_euler: bool, degree_cap: u32) -> Result<Self> {
        let spec = RingSpec { num_roots, extra_roots, has_euler, degree_cap, basis: RootBasis::Roots };
        if spec.num_vars() > MAX_VARS {
            return Err(Error::InvalidParameters(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                spec.num_vars()
            )));
        }
        if degree_cap % 2 != 0 || degree_cap > MAX_DEGREE_CAP {
            return Err(Error::InvalidParameters(format!(
                "degree cap must be even and at most {MAX_DEGREE_CAP}, got {degree_cap}"
            )));
        }
        Ok(spec)
    }

    /// `d` roots, no Euler variable, capped at the top degree `2d`.
    pub fn manifold(d: usize) -> Self {
        Self::new(d, false, 2 * d as u32).expect("manifold ring")
    }

    /// `d` roots plus the Euler variable, capped at `2d`.
    pub fn manifold_with_euler(d: usize) -> Self {
        Self::new(d, true, 2 * d as u32).expect("manifold ring")
    }

    /// The ring with no variables (plain rationals).
    pub fn scalar() -> Self {
        RingSpec { num_roots: 0, extra_roots: 0, has_euler: false, degree_cap: 0, basis: RootBasis::Roots }
    }

    /// Same ring with the tangent roots replaced by their power sums.
    pub fn power_sums(self) -> Self {
        RingSpec { basis: RootBasis::PowerSums, ..self }
    }

    pub fn is_power_sums(&self) -> bool {
        self.basis == RootBasis::PowerSums
    }

    /// Weight of one power of `var` (cohomological degree / 2).
    pub fn var_weight(&self, var: usize) -> u32 {
        if self.is_power_sums() && var < self.num_roots {
            2 * (var as u32 + 1)
        } else {
            1
        }
    }

    /// The monomial `var^exp` with this ring's weights.
    pub fn mono(&self, var: usize, exp: u32) -> Monomial {
        assert!(var < self.num_vars(), "variable {var} not in ring");
        Monomial::weighted(var, exp, self.var_weight(var))
    }

    pub fn mono_from_exponents(&self, exps: &[u32]) -> Monomial {
        exps.iter().enumerate().fold(Monomial::ONE, |m, (v, &e)| m * self.mono(v, e))
    }

    /// A single root `x1`.
    pub fn univariate(degree_cap: u32) -> Self {
        Self::new(1, false, degree_cap).expect("univariate ring")
    }

    pub fn num_vars(&self) -> usize {
        self.num_roots + self.extra_roots + usize::from(self.has_euler)
    }

    pub fn root_var(&self, j: usize) -> usize {
        assert!(j < self.num_roots, "root index {j} out of range");
        j
    }

    pub fn aux_var(&self, i: usize) -> usize {
        assert!(i < self.extra_roots, "aux root index {i} out of range");
        self.num_roots + i
    }

    pub fn euler_var(&self) -> Option<usize> {
        self.has_euler.then_some(self.num_roots + self.extra_roots)
    }

    /// Largest total exponent retained (`degree_cap / 2`).
    pub fn max_weight(&self) -> u32 {
        self.degree_cap / 2
    }

    pub fn with_cap(self, degree_cap: u32) -> Result<Self> {
        Ok(RingSpec {
            basis: self.basis,
            ..Self::with_aux(self.num_roots, self.extra_roots, self.has_euler, degree_cap)?
        })
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.num_roots {
            let letter = if self.is_power_sums() { 's' } else { 'x' };
            format!("{letter}{}", var + 1)
        } else if var < self.num_roots + self.extra_roots {
            format!("v{}", var - self.num_roots + 1)
        } else {
            "u".to_string()
        }
    }

    pub(crate) fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{self:?} vs {other:?}")))
        }
    }
}

/// A monomial: one exponent byte per variable, variable 0 most significant.
///
/// Ordering is graded: lower total degree first, and within one degree the
/// lexicographically larger exponent vector first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    packed: u128,
    weight: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { packed: 0, weight: 0 };

    fn shift(var: usize) -> u32 {
        8 * (MAX_VARS - 1 - var) as u32
    }

    pub fn var(var: usize) -> Self {
        Self::var_pow(var, 1)
    }

    pub fn var_pow(var: usize, exp: u32) -> Self {
        Self::weighted(var, exp, 1)
    }

    /// `var^exp` where one power of `var` has weight `w`.
    pub fn weighted(var: usize, exp: u32, w: u32) -> Self {
        assert!(var < MAX_VARS && exp < 256);
        Monomial { packed: (exp as u128) << Self::shift(var), weight: (exp * w) as u16 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        exps.iter().enumerate().fold(Monomial::ONE, |m, (v, &e)| m * Monomial::var_pow(v, e))
    }

    pub fn exponent(&self, var: usize) -> u32 {
        ((self.packed >> Self::shift(var)) & 0xff) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|v| self.exponent(v)).collect()
    }

    /// Total exponent; the cohomological degree is twice this.
    pub fn weight(&self) -> u32 {
        self.weight as u32
    }

    pub fn degree(&self) -> u32 {
        2 * self.weight as u32
    }

    /// Divides out `var^exp` (one power weighing `w`), or `None` if the
    /// exponent is too small.
    pub fn div_var(&self, var: usize, exp: u32, w: u32) -> Option<Self> {
        if self.exponent(var) < exp {
            return None;
        }
        Some(Monomial {
            packed: self.packed - ((exp as u128) << Self::shift(var)),
            weight: self.weight - (exp * w) as u16,
        })
    }

    /// Replaces the exponent of `var`. Unit-weight variables only.
    pub fn with_exponent(&self, var: usize, exp: u32) -> Self {
        let old = self.exponent(var);
        let cleared =
            Monomial { packed: self.packed & !(0xffu128 << Self::shift(var)), weight: self.weight - old as u16 };
        cleared * Monomial::var_pow(var, exp)
    }

    /// Swaps the exponents of two unit-weight variables.
    pub fn swap(&self, a: usize, b: usize) -> Self {
        let (ea, eb) = (self.exponent(a), self.exponent(b));
        self.with_exponent(a, eb).with_exponent(b, ea)
    }

    fn render(&self, spec: &RingSpec) -> String {
        let mut parts = Vec::new();
        for v in 0..spec.num_vars() {
            match self.exponent(v) {
                0 => {}
                1 => parts.push(spec.var_name(v)),
                e => parts.push(format!("{}^{e}", spec.var_name(v))),
            }
        }
        parts.join("*")
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { packed: self.packed + rhs.packed, weight: self.weight + rhs.weight }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight.cmp(&other.weight).then_with(|| other.packed.cmp(&self.packed))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// A truncated polynomial in the roots of a [`RingSpec`].
///
/// Canonical: no zero coefficients, nothing above the cap. Equality is
/// equality of term maps.
#[derive(Clone, PartialEq, Eq)]
pub struct FormPoly {
    spec: RingSpec,
    terms: BTreeMap<Monomial, Rational>,
}

impl FormPoly {
    pub fn zero(spec: RingSpec) -> Self {
        FormPoly { spec, terms: BTreeMap::new() }
    }

    pub fn one(spec: RingSpec) -> Self {
        Self::constant(spec, Rational::one())
    }

    pub fn constant(spec: RingSpec, c: Rational) -> Self {
        Self::term(spec, Monomial::ONE, c)
    }

    /// A single term, dropped if above the cap or zero.
    pub fn term(spec: RingSpec, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(spec);
        p.add_term(m, c);
        p
    }

    pub fn var(spec: RingSpec, var: usize) -> Self {
        assert!(var < spec.num_vars(), "variable {var} not in ring");
        Self::term(spec, spec.mono(var, 1), Rational::one())
    }

    /// The Euler variable `u`. Panics if the ring has none.
    pub fn euler(spec: RingSpec) -> Self {
        Self::var(spec, spec.euler_var().expect("ring has no Euler variable"))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(spec: RingSpec, terms: I) -> Self {
        let mut p = Self::zero(spec);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `Σ_k coeffs[k] · var^k`, truncated.
    pub fn univariate(spec: RingSpec, var: usize, coeffs: &[Rational]) -> Self {
        assert!(var < spec.num_vars());
        let top = (spec.max_weight() / spec.var_weight(var)) as usize;
        Self::from_terms(
            spec,
            coeffs.iter().enumerate().take(top + 1).map(|(k, c)| (spec.mono(var, k as u32), c.clone())),
        )
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// True if every term is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.weight == 0)
    }

    /// Smallest total exponent among terms (`None` for zero).
    pub fn min_weight(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.weight())
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.weight())
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || m.weight() > self.spec.max_weight() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn poly_add(&self, other: &FormPoly) -> Result<FormPoly> {
        self.spec.check_same(&other.spec)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn poly_sub(&self, other: &FormPoly) -> Result<FormPoly> {
        self.spec.check_same(&other.spec)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    /// Product, discarding every monomial above the cap.
    pub fn poly_mul(&self, other: &FormPoly) -> Result<FormPoly> {
        self.spec.check_same(&other.spec)?;
        let cap = self.spec.max_weight();
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut out = FormPoly::zero(self.spec);
        for (ma, ca) in &small.terms {
            let room = cap - ma.weight();
            // Terms iterate in increasing weight, so stop at the first overflow.
            for (mb, cb) in big.terms.iter().take_while(|(mb, _)| mb.weight() <= room) {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> FormPoly {
        if c.is_zero() {
            return FormPoly::zero(self.spec);
        }
        FormPoly { spec: self.spec, terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn neg(&self) -> FormPoly {
        FormPoly { spec: self.spec, terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect() }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: Monomial, c: &Rational) -> FormPoly {
        FormPoly::from_terms(self.spec, self.terms.iter().map(|(k, a)| (*k * m, a * c)))
    }

    pub fn pow(&self, exp: u32) -> FormPoly {
        let mut acc = FormPoly::one(self.spec);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The homogeneous part of cohomological degree exactly `deg`.
    pub fn top_component(&self, deg: u32) -> FormPoly {
        FormPoly {
            spec: self.spec,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Drops everything above `degree_cap` and records the smaller cap.
    pub fn truncate(&self, degree_cap: u32) -> Result<FormPoly> {
        if degree_cap > self.spec.degree_cap {
            return Err(Error::SpecMismatch(format!(
                "cannot raise a cap from {} to {degree_cap}: higher terms are unknown",
                self.spec.degree_cap
            )));
        }
        let spec = self.spec.with_cap(degree_cap)?;
        Ok(FormPoly::from_terms(spec, self.terms.iter().map(|(m, c)| (*m, c.clone()))))
    }

    /// Re-homes the polynomial in a ring with the same variables but a
    /// larger cap. Only valid when the caller knows the higher terms vanish
    /// (e.g. a polynomial built exactly).
    pub fn reinterpret_cap(&self, degree_cap: u32) -> Result<FormPoly> {
        let spec = self.spec.with_cap(degree_cap)?;
        Ok(FormPoly::from_terms(spec, self.terms.iter().map(|(m, c)| (*m, c.clone()))))
    }

    /// Substitutes `var ↦ factor · var`.
    pub fn scale_var(&self, var: usize, factor: &Rational) -> FormPoly {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        FormPoly::from_terms(
            self.spec,
            self.terms.iter().map(|(m, c)| {
                let e = m.exponent(var) as usize;
                while powers.len() <= e {
                    let next = powers.last().unwrap() * factor;
                    powers.push(next);
                }
                (*m, c * &powers[e])
            }),
        )
    }

    /// Moves a polynomial in the variables of `self` into `target`, sending
    /// variable `i` to `var_map[i]`.
    pub fn embed(&self, target: RingSpec, var_map: &[usize]) -> FormPoly {
        let nvars = self.spec.num_vars();
        assert_eq!(var_map.len(), nvars, "variable map has the wrong length");
        FormPoly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mono = (0..nvars).fold(Monomial::ONE, |acc, v| acc * target.mono(var_map[v], m.exponent(v)));
                (mono, c.clone())
            }),
        )
    }

    /// Divides by `var^exp`; fails if some term has a smaller exponent.
    pub fn div_var_pow(&self, var: usize, exp: u32) -> Result<FormPoly> {
        let w = self.spec.var_weight(var);
        let spec = self.spec.with_cap(self.spec.degree_cap.saturating_sub(2 * exp * w))?;
        let mut out = FormPoly::zero(spec);
        for (m, c) in &self.terms {
            match m.div_var(var, exp, w) {
                Some(q) => out.add_term(q, c.clone()),
                None => {
                    return Err(Error::NotDivisible(format!(
                        "term {} is not divisible by {}^{exp}",
                        m.render(&self.spec),
                        self.spec.var_name(var)
                    )))
                }
            }
        }
        Ok(out)
    }

    /// True if no term involves `var`.
    pub fn is_free_of(&self, var: usize) -> bool {
        self.terms.keys().all(|m| m.exponent(var) == 0)
    }

    /// Canonical text: terms in graded order, coefficients as `num/den`.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(m, c)| (c, m.render(&self.spec))))
    }
}

/// Joins `(coefficient, monomial)` pairs as `a + b*m - c*m2`.
pub(crate) fn render_terms<'a, I: Iterator<Item = (&'a Rational, String)>>(terms: I) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for FormPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FormPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormPoly[{}]", self.render())
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $f:ident) => {
        /// Panics if the operands live in different rings; use the
        /// `poly_*` methods for a fallible version.
        impl std::ops::$tr<&FormPoly> for &FormPoly {
            type Output = FormPoly;
            fn $m(self, rhs: &FormPoly) -> FormPoly {
                self.$f(rhs).expect("ring mismatch")
            }
        }
        impl std::ops::$tr<FormPoly> for FormPoly {
            type Output = FormPoly;
            fn $m(self, rhs: FormPoly) -> FormPoly {
                self.$f(&rhs).expect("ring mismatch")
            }
        }
    };
}

poly_op!(Add, add, poly_add);
poly_op!(Sub, sub, poly_sub);
poly_op!(Mul, mul, poly_mul);

impl std::ops::Neg for &FormPoly {
    type Output = FormPoly;
    fn neg(self) -> FormPoly {
        FormPoly::neg(self)
    }
}

impl FormPoly {
    /// `Σ_k coeffs[k] · f^k`, stopping once `f^k` truncates to zero.
    ///
    /// Requires a zero constant term so that powers eventually vanish.
    pub fn apply_univariate_series(&self, coeffs: &[Rational]) -> Result<FormPoly> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        let mut out = FormPoly::constant(self.spec, coeffs.first().cloned().unwrap_or_default());
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

    /// Multiplicative inverse under truncation.
    pub fn poly_invert(&self) -> Result<FormPoly> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotUnit(format!("constant term of {self} is zero")));
        }
        let inv_c = c.recip();
        // self = c (1 - t)  ⇒  self⁻¹ = c⁻¹ Σ t^k
        let t = &FormPoly::one(self.spec) - &self.scale(&inv_c);
        let ones = vec![Rational::one(); self.spec.max_weight() as usize + 1];
        Ok(t.apply_univariate_series(&ones)?.scale(&inv_c))
    }

    /// Exact quotient `self / g` where `g = u^m · h` with `h(0) ≠ 0`.
    ///
    /// The result is only known up to `degree_cap − 2m` and lives in a ring
    /// with that cap. Fails with [`Error::NotDivisible`] if some term of
    /// `self` has fewer than `m` factors of `u`.
    pub fn divide_exact(&self, g: &FormPoly) -> Result<FormPoly> {
        self.spec.check_same(&g.spec)?;
        if g.is_zero() {
            return Err(Error::NotUnit("division by zero".into()));
        }
        if !g.constant_term().is_zero() {
            return self.poly_mul(&g.poly_invert()?);
        }
        let u = self.spec.euler_var().ok_or_else(|| Error::NotUnit(format!("{g} has zero constant term")))?;
        let m = g.terms.keys().map(|k| k.exponent(u)).min().unwrap_or(0);
        let h = g.div_var_pow(u, m)?;
        if h.constant_term().is_zero() {
            return Err(Error::NotUnit(format!("{g} is not a power of u times a unit")));
        }
        let f = self.div_var_pow(u, m)?;
        f.poly_mul(&h.poly_invert()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let x1 = Monomial::var(0);
        let x2 = Monomial::var(1);
        let mut v = vec![x2 * x2, Monomial::ONE, x1 * x2, x2, x1 * x1, x1];
        v.sort();
        assert_eq!(v, vec![Monomial::ONE, x1, x2, x1 * x1, x1 * x2, x2 * x2]);
    }

    #[test]
    fn add_cancels_and_identity() {
        let s = RingSpec::new(1, true, 4).unwrap();
        let u = FormPoly::euler(s);
        let one = FormPoly::one(s);
        assert_eq!(&(&one + &u) + &(&one - &u), FormPoly::constant(s, Rational::from_int(2)));
        assert_eq!(&u + &FormPoly::zero(s), u);
        let x1 = FormPoly::var(s, 0);
        let sum = &(&x1 * &x1) + &(&u * &u);
        assert_eq!(sum.render(), "x1^2 + u^2");
    }

    #[test]
    fn mul_truncates() {
        let s = RingSpec::new(2, true, 4).unwrap();
        let u = FormPoly::euler(s);
        assert_eq!((&u * &u).render(), "u^2");
        assert!((&(&u * &u) * &(&u * &u)).is_zero());
        let x = FormPoly::var(s, 0);
        let one = FormPoly::one(s);
        assert_eq!((&(&one + &x) * &(&one - &x)).render(), "1 - x1^2");
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = FormPoly::one(RingSpec::manifold(2));
        let b = FormPoly::one(RingSpec::manifold(3));
        assert!(matches!(a.poly_add(&b), Err(Error::SpecMismatch(_))));
        assert!(matches!(a.poly_mul(&b), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn exp_and_cosh_series() {
        let s = RingSpec::new(0, true, 8).unwrap();
        let u = FormPoly::euler(s);
        let e = u.apply_univariate_series(&univariate::exp(10)).unwrap();
        assert_eq!(e.render(), "1 + u + 1/2*u^2 + 1/6*u^3 + 1/24*u^4");
        let c = u.scale(&r(1, 2)).apply_univariate_series(&univariate::cosh(10)).unwrap();
        assert_eq!(c.render(), "1 + 1/8*u^2 + 1/384*u^4");
        let zero = FormPoly::zero(s);
        assert_eq!(zero.apply_univariate_series(&univariate::exp(5)).unwrap(), FormPoly::one(s));
        assert!(matches!(
            FormPoly::one(s).apply_univariate_series(&univariate::exp(3)),
            Err(Error::NonNilpotentArgument)
        ));
    }

    #[test]
    fn invert_examples() {
        let s = RingSpec::new(0, true, 6).unwrap();
        let u = FormPoly::euler(s);
        let inv = (&FormPoly::one(s) - &u).poly_invert().unwrap();
        assert_eq!(inv.render(), "1 + u + u^2 + u^3");
        let two = FormPoly::constant(s, Rational::from_int(2));
        assert_eq!(two.poly_invert().unwrap().render(), "1/2");
        let c = u.scale(&r(1, 2)).apply_univariate_series(&univariate::cosh(8)).unwrap();
        let c2 = &c * &c;
        assert_eq!(&c2.poly_invert().unwrap() * &c2, FormPoly::one(s));
        assert!(matches!(u.poly_invert(), Err(Error::NotUnit(_))));
    }

    #[test]
    fn divide_exact_examples() {
        let s = RingSpec::new(1, true, 8).unwrap();
        let u = FormPoly::euler(s);
        let q = (&u * &u).divide_exact(&u).unwrap();
        assert_eq!(q.render(), "u");
        assert_eq!(q.spec().degree_cap, 6);

        let half_u = u.scale(&r(1, 2));
        let cosh = half_u.apply_univariate_series(&univariate::cosh(9)).unwrap();
        let sinh = half_u.apply_univariate_series(&univariate::sinh(9)).unwrap();
        let t = (&cosh - &FormPoly::one(s)).divide_exact(&sinh).unwrap();
        // tanh(u/4) = u/4 − u³/192 + ... to the reduced cap 6.
        assert_eq!(t.render(), "1/4*u - 1/192*u^3");

        let x1 = FormPoly::var(s, 0);
        assert!(matches!((&x1 * &x1).divide_exact(&u), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn top_component_examples() {
        let s = RingSpec::new(0, true, 4).unwrap();
        let u = FormPoly::euler(s);
        let f = &(&FormPoly::one(s) + &u) + &(&u * &u);
        assert_eq!(f.top_component(4).render(), "u^2");
        assert!(FormPoly::one(s).top_component(2).is_zero());
    }

    #[test]
    fn scale_var_and_embed() {
        let s = RingSpec::new(2, true, 6).unwrap();
        let uni = FormPoly::univariate(RingSpec::univariate(6), 0, &univariate::exp(4));
        let e = uni.embed(s, &[1]);
        assert_eq!(e.render(), "1 + x2 + 1/2*x2^2 + 1/6*x2^3");
        assert_eq!(e.scale_var(1, &r(-1, 1)).render(), "1 - x2 + 1/2*x2^2 - 1/6*x2^3");
    }
}
