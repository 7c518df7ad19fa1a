//! The torus/sphere algebra on generators `W = X + iY`, `V = X - iY`.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, to_f64, Coeff, Rational};

use super::poly::NcPoly;
use super::rewrite::{ReductionSystem, Rule};
use super::word::{Alphabet, Word};

/// Exact parameters `(μ, ħ²)` of the algebra, with `0 < ħ² < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraParams {
    pub mu: Rational,
    pub hbar_sq: Rational,
}

impl AlgebraParams {
    pub fn new(mu: Rational, hbar_sq: Rational) -> Result<Self> {
        if !hbar_sq.is_positive() || hbar_sq >= Rational::one() {
            return Err(Error::DomainError(format!(
                "hbar^2 = {hbar_sq} must lie in (0, 1)"
            )));
        }
        Ok(AlgebraParams { mu, hbar_sq })
    }

    pub fn hbar(&self) -> f64 {
        to_f64(&self.hbar_sq).sqrt()
    }

    /// `θ = arctan ħ`, in `(0, π/4)`.
    pub fn theta(&self) -> f64 {
        self.hbar().atan()
    }

    /// `q = e^{2iθ}`.
    pub fn q(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * self.theta())
    }

    /// `(4μħ²/(1+ħ²), 2(1−ħ²)/(1+ħ²))`, the coefficients of both rules.
    pub fn rule_coefficients(&self) -> (Rational, Rational) {
        let one = Rational::one();
        let denom = &one + &self.hbar_sq;
        let linear = int(4) * &self.mu * &self.hbar_sq / &denom;
        let cubic = int(2) * (&one - &self.hbar_sq) / &denom;
        (linear, cubic)
    }
}

pub fn torus_overlap() -> Word {
    Word::from_bytes(b"WWVV")
}

fn w(s: &str) -> Word {
    Word::from_bytes(s.as_bytes())
}

fn term(word: &str, c: Coeff) -> (Word, Coeff) {
    (w(word), c)
}

/// `σ₁: W²V → aW + bWVW − VW²` and `σ₂: WV² → aV + bVWV − V²W`.
pub fn torus_rules(linear: &Rational, cubic: &Rational) -> [Rule; 2] {
    let a = Coeff::from(linear.clone());
    let b = Coeff::from(cubic.clone());
    let m1 = Coeff::from(int(-1));
    [
        Rule::new(
            w("WWV"),
            NcPoly::from_terms([
                term("W", a.clone()),
                term("WVW", b.clone()),
                term("VWW", m1.clone()),
            ]),
        ),
        Rule::new(
            w("WVV"),
            NcPoly::from_terms([term("V", a), term("VWV", b), term("VVW", m1)]),
        ),
    ]
}

pub fn build_torus_system(params: &AlgebraParams) -> ReductionSystem {
    let (linear, cubic) = params.rule_coefficients();
    ReductionSystem::new(Alphabet::torus(), torus_rules(&linear, &cubic).to_vec())
        .expect("torus rules are compatible with the misordering order")
}

/// `(D + D̃ − 2μ)² + weight·(D − D̃)²` with `D = WV`, `D̃ = VW`.
pub fn casimir_element_weighted(params: &AlgebraParams, weight: &Rational) -> NcPoly {
    let d = NcPoly::word(w("WV"));
    let dt = NcPoly::word(w("VW"));
    let two_mu = NcPoly::constant(Coeff::from(int(2) * &params.mu));
    let sum = &(&d + &dt) - &two_mu;
    let diff = &d - &dt;
    &(&sum * &sum) + &(&diff * &diff).scale_rational(weight)
}

/// The central element `Ĉ = (D + D̃ − 2μ)² + (D − D̃)²/ħ²`.
pub fn casimir_element(params: &AlgebraParams) -> NcPoly {
    casimir_element_weighted(params, &(Rational::one() / &params.hbar_sq))
}

/// Normal forms of `[W, Ĉ]`, `[V, Ĉ]` and `[D, D̃]`.
pub fn casimir_residuals(params: &AlgebraParams, weight: &Rational) -> Result<[NcPoly; 3]> {
    let sys = build_torus_system(params);
    let c = casimir_element_weighted(params, weight);
    let wl = NcPoly::letter('W');
    let vl = NcPoly::letter('V');
    let d = NcPoly::word(w("WV"));
    let dt = NcPoly::word(w("VW"));
    Ok([
        sys.reduce(&NcPoly::commutator(&wl, &c))?,
        sys.reduce(&NcPoly::commutator(&vl, &c))?,
        sys.reduce(&NcPoly::commutator(&d, &dt))?,
    ])
}

pub fn casimir_centrality(params: &AlgebraParams) -> Result<bool> {
    let weight = Rational::one() / &params.hbar_sq;
    Ok(casimir_residuals(params, &weight)?
        .iter()
        .all(NcPoly::is_zero))
}

/// Irreducible words `V^i (WV)^j W^k` with `i + 2j + k ≤ max_degree`, graded order.
pub fn enumerate_basis(max_degree: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let wv = w("WV");
    for j in 0..=max_degree / 2 {
        for i in 0..=(max_degree - 2 * j) {
            for k in 0..=(max_degree - 2 * j - i) {
                out.push(w("V").pow(i).concat(&wv.pow(j)).concat(&w("W").pow(k)));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `ħ² = 3ħ'²/(3 − ħ'²)`: maps the fully symmetrized ordering's parameter onto
/// the one used by the torus rules.
pub fn symmetrized_rescale(hbar_prime_sq: &Rational) -> Result<Rational> {
    let three = int(3);
    if hbar_prime_sq.is_negative() || *hbar_prime_sq >= three {
        return Err(Error::DomainError(format!(
            "hbar'^2 = {hbar_prime_sq} must lie in [0, 3)"
        )));
    }
    if hbar_prime_sq.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(&three * hbar_prime_sq / (&three - hbar_prime_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn p(mu: (i64, i64), h2: (i64, i64)) -> AlgebraParams {
        AlgebraParams::new(rational(mu.0, mu.1), rational(h2.0, h2.1)).unwrap()
    }

    #[test]
    fn params_domain() {
        assert!(AlgebraParams::new(int(1), int(1)).is_err());
        assert!(AlgebraParams::new(int(1), int(0)).is_err());
        let a = p((1, 1), (1, 3));
        assert!((a.theta() - std::f64::consts::PI / 6.0).abs() < 1e-15);
        assert!((a.q() - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn sigma1_examples() {
        let sys = build_torus_system(&p((0, 1), (1, 3)));
        // μ = 0, ħ² = 1/3: cubic coefficient 2(2/3)/(4/3) = 1, no linear term.
        assert_eq!(sys.rules()[0].replacement.to_string(), "(-1)*VWW + (1)*WVW");
        let sys = build_torus_system(&p((1, 1), (1, 2)));
        assert_eq!(
            sys.rules()[0].replacement.coeff(&w("W")),
            Coeff::from(rational(4, 3))
        );
        assert_eq!(sys.rules()[0].replacement.len(), 3);
        assert_eq!(sys.rules()[1].replacement.len(), 3);
        let sys0 = build_torus_system(&p((0, 1), (1, 2)));
        assert_eq!(sys0.rules()[0].replacement.len(), 2);
    }

    #[test]
    fn reduce_examples() {
        let params = p((2, 5), (1, 4));
        let sys = build_torus_system(&params);
        let (a, b) = params.rule_coefficients();
        let expected = NcPoly::from_terms([
            (w("W"), Coeff::from(a)),
            (w("WVW"), Coeff::from(b)),
            (w("VWW"), Coeff::from(int(-1))),
        ]);
        assert_eq!(sys.reduce(&NcPoly::word(w("WWV"))).unwrap(), expected);
        assert_eq!(sys.reduce(&NcPoly::one()).unwrap(), NcPoly::one());
        let basis_word = NcPoly::word(w("VWVW"));
        assert_eq!(sys.reduce(&basis_word).unwrap(), basis_word);
    }

    #[test]
    fn basis_enumeration() {
        let shown = |d| {
            enumerate_basis(d)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(shown(0), ["1"]);
        assert_eq!(shown(1), ["1", "V", "W"]);
        assert_eq!(shown(2), ["1", "V", "W", "VV", "VW", "WV", "WW"]);
        // count of (i, j, k) with i + 2j + k ≤ d
        for d in 0..7usize {
            let brute = (0..=d)
                .flat_map(|i| (0..=d).flat_map(move |j| (0..=d).map(move |k| (i, j, k))))
                .filter(|&(i, j, k)| i + 2 * j + k <= d)
                .count();
            assert_eq!(enumerate_basis(d).len(), brute);
        }
        let sys = build_torus_system(&p((1, 1), (1, 3)));
        assert!(enumerate_basis(6).iter().all(|b| sys.is_irreducible(b)));
    }

    #[test]
    fn rescale_examples() {
        assert_eq!(
            symmetrized_rescale(&rational(1, 3)).unwrap(),
            rational(3, 8)
        );
        assert_eq!(symmetrized_rescale(&int(0)).unwrap(), int(0));
        let boundary = symmetrized_rescale(&rational(3, 4)).unwrap();
        assert_eq!(boundary, int(1));
        assert!(AlgebraParams::new(int(0), boundary).is_err());
        assert!(symmetrized_rescale(&int(3)).is_err());
    }
}
