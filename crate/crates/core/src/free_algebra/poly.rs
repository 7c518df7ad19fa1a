use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{Coeff, Rational};

use super::word::Word;

/// Element of the free algebra with exact coefficients. Zero coefficients are
/// never stored, and terms iterate in graded order of their words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Word, Coeff>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn monomial(word: Word, c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn word(word: Word) -> Self {
        Self::monomial(word, Coeff::one())
    }

    pub fn letter(c: char) -> Self {
        Self::word(Word::letter(c))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Coeff)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Coeff)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coeff) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    pub fn scale_rational(&self, q: &Rational) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a.scale(q))))
    }

    pub fn pow(&self, n: u32) -> NcPoly {
        (0..n).fold(NcPoly::one(), |acc, _| &acc * self)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(a: &NcPoly, b: &NcPoly) -> NcPoly {
        &(a * b) - &(b * a)
    }

    /// `left · self · right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NcPoly {
        NcPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone())),
        )
    }

    /// Evaluates with commuting scalar values for the letters.
    pub fn eval_commutative(&self, value: impl Fn(char) -> Coeff) -> Coeff {
        let mut total = Coeff::zero();
        for (w, c) in &self.terms {
            let mut term = c.clone();
            for &b in w.as_bytes() {
                term = &term * &value(b as char);
            }
            total += &term;
        }
        total
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, o: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), -c);
        }
        r
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, o: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                r.add_term(w1.concat(w2), c1 * c2);
            }
        }
        r
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), -c)))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, o: NcPoly) -> NcPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Canonical text: terms in graded word order, `(coeff)*WORD` joined by ` + `.
impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}
