//! Rewriting symmetric even forms in Pontryagin classes.
//!
//! `p_i` is the i-th elementary symmetric polynomial in `x_1², …, x_d²` and
//! `e` is the Euler variable `u`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{render_terms, FormPoly, Monomial, RingSpec};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `p_1^{a_1} ⋯ p_d^{a_d} · e^b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PMonomial {
    pub p: Vec<u32>,
    pub e: u32,
}

impl PMonomial {
    /// Total exponent in root units (cohomological degree / 2).
    pub fn weight(&self) -> u32 {
        self.p.iter().enumerate().map(|(i, a)| 2 * (i as u32 + 1) * a).sum::<u32>() + self.e
    }

    fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.p.iter().enumerate() {
            match a {
                0 => {}
                1 => parts.push(format!("p{}", i + 1)),
                _ => parts.push(format!("p{}^{a}", i + 1)),
            }
        }
        match self.e {
            0 => {}
            1 => parts.push("e".into()),
            b => parts.push(format!("e^{b}")),
        }
        parts.join("*")
    }
}

impl Ord for PMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.p.cmp(&self.p)).then_with(|| other.e.cmp(&self.e))
    }
}

impl PartialOrd for PMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `p_1..p_d` and `e`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PontPoly {
    d: usize,
    terms: BTreeMap<PMonomial, Rational>,
}

impl PontPoly {
    pub fn new(d: usize) -> Self {
        PontPoly { d, terms: BTreeMap::new() }
    }

    pub fn num_roots(&self) -> usize {
        self.d
    }

    pub fn add_term(&mut self, m: PMonomial, c: Rational) {
        assert_eq!(m.p.len(), self.d);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a p-monomial given as `(exponents of p_1.., e exponent)`.
    pub fn coeff(&self, p: &[u32], e: u32) -> Rational {
        let mut key = p.to_vec();
        key.resize(self.d, 0);
        self.terms.get(&PMonomial { p: key, e }).cloned().unwrap_or_default()
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(m, c)| (c, m.render())))
    }

    /// Product, dropping terms of weight above `max_weight`.
    pub fn mul(&self, other: &PontPoly, max_weight: u32) -> PontPoly {
        assert_eq!(self.d, other.d);
        let mut out = PontPoly::new(self.d);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = PMonomial { p: a.p.iter().zip(&b.p).map(|(x, y)| x + y).collect(), e: a.e + b.e };
                if m.weight() <= max_weight {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    fn one(d: usize) -> PontPoly {
        let mut p = PontPoly::new(d);
        p.add_term(PMonomial { p: vec![0; d], e: 0 }, Rational::one());
        p
    }

    /// Expands back into roots in the given ring.
    pub fn to_roots(&self, spec: RingSpec) -> Result<FormPoly> {
        if spec.num_roots != self.d {
            return Err(Error::SpecMismatch(format!("{} Pontryagin classes into {} roots", self.d, spec.num_roots)));
        }
        let mut cache = Expander::new(spec);
        let mut out = FormPoly::zero(spec);
        for (m, c) in &self.terms {
            out = &out + &cache.expand(m)?.scale(c);
        }
        Ok(out)
    }
}

impl fmt::Display for PontPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Builds and caches root expansions of `p_i` and their powers.
struct Expander {
    spec: RingSpec,
    elementary: Vec<FormPoly>,
    powers: HashMap<(usize, u32), FormPoly>,
}

impl Expander {
    fn new(spec: RingSpec) -> Self {
        let d = spec.num_roots;
        let mut elementary = vec![FormPoly::one(spec)];
        if spec.is_power_sums() {
            // Newton: i·p_i = Σ_{j=1}^{i} (−1)^{j−1} p_{i−j} s_j.
            for i in 1..=d {
                let mut acc = FormPoly::zero(spec);
                for j in 1..=i {
                    let sj = FormPoly::var(spec, j - 1);
                    let t = &elementary[i - j] * &sj;
                    acc = if j % 2 == 1 { &acc + &t } else { &acc - &t };
                }
                elementary.push(acc.scale(&Rational::new(1, i as i64)));
            }
            return Expander { spec, elementary, powers: HashMap::new() };
        }
        // e_i(x²) via ∏ (1 + t·x_j²), collecting by t-degree.
        for j in 0..d {
            let sq = Monomial::var_pow(j, 2);
            let mut next = elementary.clone();
            next.push(FormPoly::zero(spec));
            for i in 0..elementary.len() {
                next[i + 1] = &next[i + 1] + &elementary[i].mul_monomial(sq, &Rational::one());
            }
            elementary = next;
        }
        Expander { spec, elementary, powers: HashMap::new() }
    }

    fn power(&mut self, i: usize, a: u32) -> FormPoly {
        if a == 0 {
            return FormPoly::one(self.spec);
        }
        if let Some(p) = self.powers.get(&(i, a)) {
            return p.clone();
        }
        let p = &self.power(i, a - 1) * &self.elementary[i];
        self.powers.insert((i, a), p.clone());
        p
    }

    fn expand(&mut self, m: &PMonomial) -> Result<FormPoly> {
        let mut acc = FormPoly::one(self.spec);
        for (i, &a) in m.p.iter().enumerate() {
            if a > 0 {
                acc = &acc * &self.power(i + 1, a);
            }
        }
        if m.e > 0 {
            let u = self.spec.euler_var().ok_or_else(|| Error::SpecMismatch("ring has no Euler variable".into()))?;
            acc = acc.mul_monomial(self.spec.mono(u, m.e), &Rational::one());
        }
        Ok(acc)
    }
}

impl FormPoly {
    /// Rewrites a symmetric, even form in `p_1..p_d` and `e`.
    ///
    /// Fails with a witness pair of monomials if the form is odd in some
    /// root or not symmetric under swapping two adjacent roots. Auxiliary
    /// roots are not supported and must not appear.
    pub fn to_pontryagin(&self) -> Result<PontPoly> {
        let spec = *self.spec();
        let d = spec.num_roots;
        if spec.is_power_sums() {
            return self.power_sums_to_pontryagin();
        }
        for (m, c) in self.terms() {
            if let Some(i) = (0..spec.extra_roots).find(|&i| m.exponent(spec.aux_var(i)) > 0) {
                return Err(Error::InvalidParameters(format!(
                    "auxiliary root {} present; only tangent roots and e can be rewritten",
                    spec.var_name(spec.aux_var(i))
                )));
            }
            for j in 0..d {
                if m.exponent(j) % 2 == 1 {
                    let name = m.render(&spec);
                    return Err(Error::NotSymmetric {
                        left: name.clone(),
                        left_coeff: c.to_string(),
                        right: format!("{name} (x{} -> -x{})", j + 1, j + 1),
                        right_coeff: (-c).to_string(),
                    });
                }
            }
            for j in 0..d.saturating_sub(1) {
                let swapped = m.swap(j, j + 1);
                let c2 = self.coeff(&swapped);
                if &c2 != c {
                    return Err(Error::NotSymmetric {
                        left: m.render(&spec),
                        left_coeff: c.to_string(),
                        right: swapped.render(&spec),
                        right_coeff: c2.to_string(),
                    });
                }
            }
        }

        let mut expander = Expander::new(spec);
        let mut rest = self.clone();
        let mut out = PontPoly::new(d);
        let lex_key = |m: &Monomial| m.exponents(d);
        while let Some((lead, c)) = rest
            .terms()
            .max_by(|a, b| lex_key(a.0).cmp(&lex_key(b.0)).then_with(|| b.0.cmp(a.0)))
            .map(|(m, c)| (*m, c.clone()))
        {
            // Symmetry makes the lex-leading exponents non-increasing, and
            // p_1^{b1-b2} ⋯ p_d^{bd} has leading monomial x^{2b}.
            let half: Vec<u32> = (0..d).map(|j| lead.exponent(j) / 2).collect();
            let p: Vec<u32> = (0..d).map(|i| half[i] - half.get(i + 1).copied().unwrap_or(0)).collect();
            let e = spec.euler_var().map_or(0, |u| lead.exponent(u));
            let pm = PMonomial { p, e };
            let expansion = expander.expand(&pm)?;
            rest = &rest - &expansion.scale(&c);
            out.add_term(pm, c);
        }
        Ok(out)
    }
}

impl FormPoly {
    fn power_sums_to_pontryagin(&self) -> Result<PontPoly> {
        let spec = *self.spec();
        if spec.extra_roots > 0
            && self.terms().any(|(m, _)| (0..spec.extra_roots).any(|i| m.exponent(spec.aux_var(i)) > 0))
        {
            return Err(Error::InvalidParameters("auxiliary roots cannot be rewritten".into()));
        }
        let d = spec.num_roots;
        let top = spec.max_weight();
        // s_k in Pontryagin classes, by Newton's identities:
        // s_k = Σ_{i=1}^{k−1} (−1)^{i−1} p_i s_{k−i} + (−1)^{k−1} k p_k.
        let p_mono = |i: usize| {
            let mut p = vec![0; d];
            p[i - 1] = 1;
            PMonomial { p, e: 0 }
        };
        let mut s: Vec<PontPoly> = vec![PontPoly::one(d)];
        for k in 1..=d {
            let mut acc = PontPoly::new(d);
            for i in 1..k {
                let mut pi = PontPoly::new(d);
                pi.add_term(p_mono(i), if i % 2 == 1 { Rational::one() } else { -Rational::one() });
                for (m, c) in pi.mul(&s[k - i], top).terms {
                    acc.add_term(m, c);
                }
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc.add_term(p_mono(k), Rational::from_int(sign * k as i64));
            s.push(acc);
        }
        let mut out = PontPoly::new(d);
        for (m, c) in self.terms() {
            let mut acc = PontPoly::one(d);
            for k in 1..=d {
                for _ in 0..m.exponent(k - 1) {
                    acc = acc.mul(&s[k], top);
                }
            }
            let e = spec.euler_var().map_or(0, |u| m.exponent(u));
            for (pm, pc) in acc.terms {
                out.add_term(PMonomial { p: pm.p, e: pm.e + e }, &pc * c);
            }
        }
        Ok(out)
    }

    /// Re-expresses a form between the root and power-sum bases of the
    /// same ring shape. Forms in the root basis must be symmetric and even.
    pub fn change_basis(&self, target: super::RootBasis) -> Result<FormPoly> {
        let spec = *self.spec();
        if spec.basis == target {
            return Ok(self.clone());
        }
        self.to_pontryagin()?.to_roots(RingSpec { basis: target, ..spec })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_powers(spec: RingSpec, k: u32) -> FormPoly {
        (0..spec.num_roots)
            .fold(FormPoly::zero(spec), |acc, j| &acc + &FormPoly::term(spec, Monomial::var_pow(j, k), Rational::one()))
    }

    #[test]
    fn newton_examples() {
        let spec = RingSpec::new(3, false, 8).unwrap();
        assert_eq!(sum_of_powers(spec, 2).to_pontryagin().unwrap().render(), "p1");
        assert_eq!(sum_of_powers(spec, 4).to_pontryagin().unwrap().render(), "p1^2 - 2*p2");
    }

    #[test]
    fn odd_is_rejected() {
        let spec = RingSpec::manifold(2);
        let err = FormPoly::var(spec, 0).to_pontryagin().unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
    }

    #[test]
    fn asymmetric_is_rejected_with_witness() {
        let spec = RingSpec::manifold(2);
        let f = FormPoly::term(spec, Monomial::var_pow(0, 2), Rational::one());
        match f.to_pontryagin().unwrap_err() {
            Error::NotSymmetric { left, right, .. } => {
                assert_eq!(left, "x1^2");
                assert_eq!(right, "x2^2");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn euler_passes_through() {
        let spec = RingSpec::new(2, true, 6).unwrap();
        let u = FormPoly::euler(spec);
        let f = &(&sum_of_powers(spec, 2) * &u) + &u;
        assert_eq!(f.to_pontryagin().unwrap().render(), "e + p1*e");
    }

    #[test]
    fn power_sums_agree_with_roots() {
        let roots = RingSpec::manifold_with_euler(4);
        let sums = roots.power_sums();
        let s2 = FormPoly::var(sums, 1);
        let u = FormPoly::euler(sums);
        let f = &(&s2 * &u) + &FormPoly::var(sums, 0);
        let in_roots = f.change_basis(super::super::RootBasis::Roots).unwrap();
        let expect = &(&sum_of_powers(roots, 4) * &FormPoly::euler(roots)) + &sum_of_powers(roots, 2);
        assert_eq!(in_roots, expect);
        assert_eq!(in_roots.change_basis(super::super::RootBasis::PowerSums).unwrap(), f);
        assert_eq!(FormPoly::var(sums, 1).to_pontryagin().unwrap().render(), "p1^2 - 2*p2");
    }

    #[test]
    fn roundtrip_all_monomials() {
        let spec = RingSpec::manifold_with_euler(3);
        for a1 in 0..=3u32 {
            for a2 in 0..=1u32 {
                for a3 in 0..=1u32 {
                    for e in 0..=2u32 {
                        let pm = PMonomial { p: vec![a1, a2, a3], e };
                        if pm.weight() > spec.max_weight() {
                            continue;
                        }
                        let mut p = PontPoly::new(3);
                        p.add_term(pm, Rational::from_int(3));
                        let back = p.to_roots(spec).unwrap().to_pontryagin().unwrap();
                        assert_eq!(back, p);
                    }
                }
            }
        }
    }
}
