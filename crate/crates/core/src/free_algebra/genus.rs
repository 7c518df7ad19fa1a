//! Relations on `X, Y, Z` for a constraint `C = ½(P(x) + y²)² + ½z²`.
//!
//! These rules are not compatible with any degree order (the right-hand side
//! of `ZY` has degree `2g + 1`), so they are returned as plain rules rather
//! than a checked [`ReductionSystem`](super::ReductionSystem).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Coeff, Rational};

use super::poly::NcPoly;
use super::rewrite::Rule;
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusRelations {
    pub phi_x: NcPoly,
    pub phi_y: NcPoly,
    /// `ZY → YZ − φ̂_X`, `ZX → XZ + φ̂_Y`, `YX → XY − iħZ`.
    pub rules: Vec<Rule>,
}

fn x_pow(r: usize) -> NcPoly {
    NcPoly::word(Word::letter('X').pow(r))
}

/// `iħ` as an exact coefficient with `h² = hbar_sq`.
pub fn i_hbar(hbar_sq: &Rational) -> Coeff {
    &Coeff::i() * &Coeff::root(hbar_sq.clone())
}

fn trimmed(p_coeffs: &[Rational]) -> Result<&[Rational]> {
    let len = p_coeffs
        .iter()
        .rposition(|a| !a.is_zero())
        .map_or(0, |k| k + 1);
    if len < 2 {
        return Err(Error::DegreeZero);
    }
    Ok(&p_coeffs[..len])
}

/// `P(X) = Σ a_r X^r`.
pub fn p_of_x(p_coeffs: &[Rational]) -> NcPoly {
    NcPoly::from_terms(
        p_coeffs
            .iter()
            .enumerate()
            .map(|(r, a)| (Word::letter('X').pow(r), Coeff::from(a.clone()))),
    )
}

/// `φ̂_X = iħ Σ_r a_r Σ_i X^i (Q + Y²) X^{r−1−i}`, where the outer weights
/// come from `outer` and the inner `Q` from `inner`. Normally both equal `P`.
pub fn phi_x_mixed(outer: &[Rational], inner: &[Rational], hbar_sq: &Rational) -> NcPoly {
    let q = &p_of_x(inner) + &NcPoly::word(Word::from_bytes(b"YY"));
    let mut sum = NcPoly::zero();
    for (r, a) in outer.iter().enumerate().skip(1) {
        if a.is_zero() {
            continue;
        }
        let mut group = NcPoly::zero();
        for i in 0..r {
            group = &group + &(&(&x_pow(i) * &q) * &x_pow(r - 1 - i));
        }
        sum = &sum + &group.scale_rational(a);
    }
    sum.scale(&i_hbar(hbar_sq))
}

pub fn phi_x(p_coeffs: &[Rational], hbar_sq: &Rational) -> NcPoly {
    phi_x_mixed(p_coeffs, p_coeffs, hbar_sq)
}

/// `φ̂_Y = iħ (2Y³ + Y P + P Y)`.
pub fn phi_y(p_coeffs: &[Rational], hbar_sq: &Rational) -> NcPoly {
    let p = p_of_x(p_coeffs);
    let y = NcPoly::letter('Y');
    let y3 = NcPoly::monomial(Word::from_bytes(b"YYY"), Coeff::from(2));
    let inner = &(&y3 + &(&y * &p)) + &(&p * &y);
    inner.scale(&i_hbar(hbar_sq))
}

pub fn build_genus_relations(p_coeffs: &[Rational], hbar_sq: &Rational) -> Result<GenusRelations> {
    let p = trimmed(p_coeffs)?;
    let phi_x = phi_x(p, hbar_sq);
    let phi_y = phi_y(p, hbar_sq);
    let word = |s: &[u8]| Word::from_bytes(s);
    let ih_z = NcPoly::monomial(Word::letter('Z'), i_hbar(hbar_sq));
    let rules = vec![
        Rule::new(word(b"ZY"), &NcPoly::word(word(b"YZ")) - &phi_x),
        Rule::new(word(b"ZX"), &NcPoly::word(word(b"XZ")) + &phi_y),
        Rule::new(word(b"YX"), &NcPoly::word(word(b"XY")) - &ih_z),
    ];
    Ok(GenusRelations {
        phi_x,
        phi_y,
        rules,
    })
}

/// `[X, φ̂_X] + [Y, φ̂_Y]`, expanded without reduction.
pub fn consistency_residual(phi_x: &NcPoly, phi_y: &NcPoly) -> NcPoly {
    &NcPoly::commutator(&NcPoly::letter('X'), phi_x)
        + &NcPoly::commutator(&NcPoly::letter('Y'), phi_y)
}

pub fn check_consistency_identity(p_coeffs: &[Rational], hbar_sq: &Rational) -> Result<bool> {
    let rel = build_genus_relations(p_coeffs, hbar_sq)?;
    Ok(consistency_residual(&rel.phi_x, &rel.phi_y).is_zero())
}
