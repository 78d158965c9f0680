//! Expansion of modular q-series in the bases `(8δ)^{w/2−2b} ε^b`.
//!
//! A degree-`2d` component of a Θ-series assembly is a modular form of
//! weight `w`; the ring of such forms over Γ⁰(2) (resp. Γ₀(2)) is
//! polynomial in `δ₂, ε₂` (resp. `δ₁, ε₁`). Writing the form in that basis
//! with form-valued coefficients `h_b` is a finite linear solve, and the
//! remaining q-coefficients up to the cap must then vanish identically.

use crate::error::{Error, Result};
use crate::qseries::{render_exponent, QSeries, HALF, UNIT};
use crate::rational::Rational;
use crate::ring::FormPoly;
use crate::theta::ModularGenerators;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Γ⁰(2): generators `δ₂, ε₂`, expansions in `q^{1/2}`.
    Upper,
    /// Γ₀(2): generators `δ₁, ε₁`, expansions in `q`.
    Lower,
}

impl Side {
    /// Lattice step between consecutive solve exponents.
    pub fn step(&self) -> u32 {
        match self {
            Side::Upper => HALF,
            Side::Lower => UNIT,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModularBasis {
    pub weight: u32,
    pub side: Side,
    /// Element `b` is `(8δ)^{w/2−2b} ε^b`.
    pub elements: Vec<QSeries>,
}

impl ModularBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn q_cap(&self) -> u32 {
        self.elements[0].q_cap()
    }

    /// Lattice exponents the square system is solved on.
    pub fn solve_exponents(&self) -> Vec<u32> {
        (0..self.len() as u32).map(|j| j * self.side.step()).collect()
    }
}

/// Number of basis elements in weight `w`.
pub fn basis_len(w: u32) -> usize {
    (w / 4) as usize + 1
}

pub fn build_basis(w: u32, side: Side, gens: &ModularGenerators) -> Result<ModularBasis> {
    if w == 0 || w % 2 != 0 {
        return Err(Error::InvalidParameters(format!("modular weight must be even and positive, got {w}")));
    }
    let (delta, eps) = match side {
        Side::Upper => (&gens.delta2, &gens.eps2),
        Side::Lower => (&gens.delta1, &gens.eps1),
    };
    let eight_delta = delta.scale(&Rational::from_int(8));
    let elements = (0..basis_len(w) as u32).map(|b| &eight_delta.pow(w / 2 - 2 * b) * &eps.pow(b)).collect();
    let basis = ModularBasis { weight: w, side, elements };
    if side == Side::Upper {
        check_upper_triangular(&basis)?;
    }
    Ok(basis)
}

fn check_upper_triangular(basis: &ModularBasis) -> Result<()> {
    let w = basis.weight;
    for (b, el) in basis.elements.iter().enumerate() {
        if el.q_cap() < (b as u32) * HALF {
            continue;
        }
        let lead = el.order().unwrap_or(u32::MAX);
        let sign = if (w / 2 - 2 * b as u32) % 2 == 0 { 1 } else { -1 };
        if lead != b as u32 * HALF || el.scalar_coeff(lead)? != Rational::from_int(sign) {
            return Err(Error::Inconsistent(format!("basis element {b} of weight {w} has the wrong leading term")));
        }
    }
    Ok(())
}

/// Result of expanding a form-valued series in a modular basis.
#[derive(Clone, Debug)]
pub struct HSolution {
    pub h: Vec<FormPoly>,
    /// `combo[r][j]`: `h_r = Σ_j combo[r][j] · P_j`, with `P_j` the
    /// coefficient of the input at the `j`-th solve exponent.
    pub combo: Vec<Vec<Rational>>,
    /// Input minus the reconstruction; zero for a modular input.
    pub residual: QSeries,
    pub side: Side,
}

impl HSolution {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn combos_integral(&self) -> bool {
        self.combo.iter().flatten().all(Rational::is_integer)
    }

    /// Highest q exponent at which the residual was inspected.
    pub fn max_order_checked(&self) -> String {
        render_exponent(self.residual.q_cap())
    }
}

/// Exact inverse of a square rational matrix.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (ac, ic) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= &ac;
                    inv[r][j] -= &ic;
                }
            }
        }
    }
    Some(inv)
}

/// Writes `p` as `Σ_b h_b · element_b` and records the residual over every
/// exponent up to the cap.
pub fn solve_in_basis(p: &QSeries, basis: &ModularBasis) -> Result<HSolution> {
    let exps = basis.solve_exponents();
    let cap = p.q_cap();
    if cap != basis.q_cap() {
        return Err(Error::SpecMismatch(format!("series cap {cap} vs basis cap {}", basis.q_cap())));
    }
    if exps.last().is_some_and(|&e| e > cap) {
        return Err(Error::InvalidParameters(format!(
            "q cap {} is below the {} pivots of weight {}",
            render_exponent(cap),
            basis.len(),
            basis.weight
        )));
    }
    let a: Vec<Vec<Rational>> = exps
        .iter()
        .map(|&e| basis.elements.iter().map(|el| el.scalar_coeff(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let combo = invert(a).ok_or_else(|| Error::Inconsistent(format!("weight-{} basis is degenerate", basis.weight)))?;
    let spec = *p.spec();
    let pj: Vec<FormPoly> = exps.iter().map(|&e| p.qs_coeff(e)).collect::<Result<_>>()?;
    let h: Vec<FormPoly> = combo
        .iter()
        .map(|row| row.iter().zip(&pj).fold(FormPoly::zero(spec), |acc, (c, f)| &acc + &f.scale(c)))
        .collect();
    let mut recon = QSeries::zero(spec, cap);
    for (hb, el) in h.iter().zip(&basis.elements) {
        recon = &recon + &el.embed_scalar(spec).mul_form(hb)?;
    }
    Ok(HSolution { h, combo, residual: p - &recon, side: basis.side })
}

/// Outcome of solving both members of a dual pair.
#[derive(Clone, Debug)]
pub struct DualCheck {
    pub upper: HSolution,
    pub lower: HSolution,
    pub agree: bool,
}

/// Solves `p2` over Γ⁰(2) and `p1 / scale` over Γ₀(2) and compares the
/// coefficient forms. This is the finite-order shadow of
/// `P₁(−1/τ) = scale · P₂(τ)`.
pub fn dual_basis_check(
    p1: &QSeries,
    p2: &QSeries,
    weight: u32,
    scale: &Rational,
    gens: &ModularGenerators,
) -> Result<DualCheck> {
    let upper = solve_in_basis(p2, &build_basis(weight, Side::Upper, gens)?)?;
    let lower = solve_in_basis(&p1.scale(&scale.recip()), &build_basis(weight, Side::Lower, gens)?)?;
    let agree = upper.h == lower.h && upper.residual_is_zero() && lower.residual_is_zero();
    Ok(DualCheck { upper, lower, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn gens() -> ModularGenerators {
        ModularGenerators::new(4 * UNIT).unwrap()
    }

    #[test]
    fn basis_examples() {
        let g = gens();
        let b2 = build_basis(2, Side::Upper, &g).unwrap();
        assert_eq!(b2.len(), 1);
        assert_eq!(b2.elements[0].scalar_coeff(0).unwrap(), Rational::from_int(-1));
        assert_eq!(b2.elements[0].scalar_coeff(HALF).unwrap(), Rational::from_int(-24));
        let b4 = build_basis(4, Side::Upper, &g).unwrap();
        assert_eq!(b4.elements[1].order(), Some(HALF));
        let l2 = build_basis(2, Side::Lower, &g).unwrap();
        assert_eq!(l2.elements[0].scalar_coeff(0).unwrap(), Rational::from_int(2));
        assert_eq!(l2.elements[0].scalar_coeff(UNIT).unwrap(), Rational::from_int(48));
        assert!(build_basis(3, Side::Upper, &g).is_err());
        assert!(build_basis(0, Side::Upper, &g).is_err());
    }

    #[test]
    fn basis_element_solves_to_unit_vector() {
        let g = gens();
        let spec = RingSpec::scalar();
        for side in [Side::Upper, Side::Lower] {
            let basis = build_basis(8, side, &g).unwrap();
            for (b, el) in basis.elements.iter().enumerate() {
                let sol = solve_in_basis(&el.embed_scalar(spec), &basis).unwrap();
                assert!(sol.residual_is_zero());
                for (r, h) in sol.h.iter().enumerate() {
                    let expect = if r == b { Rational::one() } else { Rational::zero() };
                    assert_eq!(h.constant_term(), expect);
                }
            }
        }
    }

    #[test]
    fn non_modular_input_leaves_residual() {
        let g = gens();
        let basis = build_basis(2, Side::Upper, &g).unwrap();
        let mut p = basis.elements[0].clone();
        p = &p + &QSeries::scalar(p.q_cap(), &[(UNIT, Rational::one())]);
        let sol = solve_in_basis(&p, &basis).unwrap();
        assert!(!sol.residual_is_zero());
    }

    #[test]
    fn cap_below_pivots_is_rejected() {
        let g = ModularGenerators::new(HALF).unwrap();
        let basis = build_basis(8, Side::Upper, &g).unwrap();
        let p = basis.elements[0].clone();
        assert!(matches!(solve_in_basis(&p, &basis), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn dual_check_detects_a_defect_on_one_side() {
        let g = gens();
        let upper = build_basis(4, Side::Upper, &g).unwrap();
        let lower = build_basis(4, Side::Lower, &g).unwrap();
        let scale = Rational::from_int(16);
        let p2 = &upper.elements[0] + &upper.elements[1];
        let p1 = (&lower.elements[0] + &lower.elements[1]).scale(&scale);
        assert!(dual_basis_check(&p1, &p2, 4, &scale, &g).unwrap().agree);
        let bad = &p1 + &QSeries::scalar(p1.q_cap(), &[(HALF, Rational::one())]);
        let check = dual_basis_check(&bad, &p2, 4, &scale, &g).unwrap();
        assert!(!check.agree);
        assert!(check.upper.residual_is_zero());
    }
}
