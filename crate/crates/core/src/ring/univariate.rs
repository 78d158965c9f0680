//! Truncated power series in one variable, as coefficient vectors.
//!
//! Every function returns coefficients `c_0..c_{n-1}` of the series in `t`.

use crate::rational::Rational;

pub fn exp(n: usize) -> Vec<Rational> {
    (0..n).map(|k| Rational::inv_factorial(k as u32)).collect()
}

pub fn cosh(n: usize) -> Vec<Rational> {
    (0..n).map(|k| if k % 2 == 0 { Rational::inv_factorial(k as u32) } else { Rational::zero() }).collect()
}

pub fn sinh(n: usize) -> Vec<Rational> {
    (0..n).map(|k| if k % 2 == 1 { Rational::inv_factorial(k as u32) } else { Rational::zero() }).collect()
}

/// `1/(1-t)`.
pub fn geometric(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

pub fn mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += &(ai * bj);
        }
    }
    out
}

/// Reciprocal series; panics if `a[0] == 0`.
pub fn inverse(a: &[Rational], n: usize) -> Vec<Rational> {
    assert!(!a.is_empty() && !a[0].is_zero(), "series is not invertible");
    let inv0 = a[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        if k == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut s = Rational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &(&a[j] * &out[k - j]);
        }
        out.push(-(&s * &inv0));
    }
    out
}

/// Substitutes `t ↦ c·t`.
pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut p = Rational::one();
    a.iter()
        .map(|x| {
            let v = x * &p;
            p = &p * c;
            v
        })
        .collect()
}

/// `t / sinh t`.
pub fn t_over_sinh(n: usize) -> Vec<Rational> {
    let s: Vec<Rational> =
        (0..n).map(|k| if k % 2 == 0 { Rational::inv_factorial(k as u32 + 1) } else { Rational::zero() }).collect();
    inverse(&s, n)
}

/// `t / tanh t`.
pub fn t_over_tanh(n: usize) -> Vec<Rational> {
    mul(&cosh(n), &t_over_sinh(n), n)
}

/// The Â root factor `(t/2)/sinh(t/2)`.
pub fn ahat_factor(n: usize) -> Vec<Rational> {
    scale(&t_over_sinh(n), &Rational::new(1, 2))
}

/// The L̂ root factor `t/tanh(t/2)`.
pub fn lhat_factor(n: usize) -> Vec<Rational> {
    scale(&t_over_tanh(n), &Rational::new(1, 2)).iter().map(|c| c * &Rational::from_int(2)).collect()
}

/// The standard L root factor `t/tanh t`.
pub fn l_factor(n: usize) -> Vec<Rational> {
    t_over_tanh(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_over_sinh_known_terms() {
        let s = t_over_sinh(5);
        assert_eq!(s[0], Rational::one());
        assert_eq!(s[2], Rational::new(-1, 6));
        assert_eq!(s[4], Rational::new(7, 360));
    }

    #[test]
    fn t_over_tanh_known_terms() {
        let s = t_over_tanh(7);
        assert_eq!(s[2], Rational::new(1, 3));
        assert_eq!(s[4], Rational::new(-1, 45));
        assert_eq!(s[6], Rational::new(2, 945));
    }

    #[test]
    fn inverse_roundtrip() {
        let e = exp(8);
        let p = mul(&e, &inverse(&e, 8), 8);
        assert_eq!(p[0], Rational::one());
        assert!(p[1..].iter().all(|c| c.is_zero()));
    }
}
