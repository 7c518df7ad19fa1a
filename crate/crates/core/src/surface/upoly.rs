//! Univariate polynomials over Q with Sturm-sequence root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{int, to_f64, Rational};

/// Positive multiple of a rational polynomial with coprime integer
/// coefficients; signs of values are those of the original.
#[derive(Clone, Debug)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn new(p: &UPoly) -> Self {
        let lcm = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let mut ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|a| a.numer() * (&lcm / a.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        if !g.is_zero() && !g.is_one() {
            for a in &mut ints {
                *a /= &g;
            }
        }
        IntPoly(ints)
    }

    fn to_upoly(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .map(|a| Rational::from_integer(a.clone()))
                .collect(),
        )
    }

    /// Sign of the value at `x = p/q`: `Σ a_i p^i q^{d−i}` with `q > 0`.
    fn sign_at(&self, x: &Rational) -> i8 {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for a in self.0.iter().rev() {
            acc = acc * p + a * &qpow;
            qpow *= q;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }
}

/// Dense polynomial, coefficients from the constant term up. Trailing zeros
/// are stripped, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + to_f64(a))
    }

    /// Certified enclosure of the values on `[lo, hi]` by interval Horner.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for a in self.coeffs.iter().rev() {
            let products = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = products.iter().min().unwrap().clone();
            let max = products.iter().max().unwrap().clone();
            acc = (min + a, max + a);
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, q: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * q).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = Rational::zero();
        UPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + o.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&int(-1)))
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// `Q(x²)`.
    pub fn compose_square(&self) -> UPoly {
        let mut out = vec![Rational::zero(); 2 * self.coeffs.len()];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[2 * k] = a.clone();
        }
        UPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &f * b;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree_part(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Sturm chain `p, p', −rem, …`, each member rescaled by a positive
    /// constant to a primitive integer polynomial.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        self.int_sturm().iter().map(IntPoly::to_upoly).collect()
    }

    fn int_sturm(&self) -> Vec<IntPoly> {
        let mut seq = vec![IntPoly::new(self), IntPoly::new(&self.derivative())];
        let mut polys: Vec<UPoly> = seq.iter().map(IntPoly::to_upoly).collect();
        while !polys.last().unwrap().is_zero() {
            let n = polys.len();
            let r = polys[n - 2].div_rem(&polys[n - 1]).1.scale(&int(-1));
            let ip = IntPoly::new(&r);
            polys.push(ip.to_upoly());
            seq.push(ip);
        }
        seq.pop();
        seq
    }

    /// Bound on the absolute value of every real root (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let max = self
            .coeffs
            .iter()
            .rev()
            .skip(1)
            .map(|a| a.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + max
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_between(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.int_sturm();
        sign_changes(&seq, a) - sign_changes(&seq, b)
    }

    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let at_inf = |neg: bool| {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| {
                    let s = sign(&p.leading());
                    if neg && p.degree().unwrap_or(0) % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                })
                .collect();
            changes(&signs)
        };
        at_inf(true) - at_inf(false)
    }

    /// Disjoint rational intervals `(lo, hi]`, sorted, each holding exactly one
    /// distinct real root.
    pub fn isolate_roots(&self) -> Vec<(Rational, Rational)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = self.int_sturm();
        let bound = self.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / int(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort();
        out
    }

    /// Shrinks an isolating interval `(lo, hi]` of a simple root until its
    /// width is at most `width`.
    pub fn refine_root(
        &self,
        lo: &Rational,
        hi: &Rational,
        width: &Rational,
    ) -> (Rational, Rational) {
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let ip = IntPoly::new(self);
        let s_hi = ip.sign_at(&hi);
        if s_hi == 0 {
            return (hi.clone(), hi);
        }
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / int(2);
            let v = ip.sign_at(&mid);
            if v == 0 {
                return (mid.clone(), mid);
            }
            if v == s_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// Real roots as floats, each within about 1e-14 relative error.
    pub fn real_roots_f64(&self) -> Vec<f64> {
        let sf = self.squarefree_part();
        sf.isolate_roots()
            .into_iter()
            .map(|(lo, hi)| sf.root_to_f64(&lo, &hi))
            .collect()
    }

    /// Midpoint of an isolating interval after shrinking it to within one
    /// ulp-scale of the root's own magnitude.
    pub fn root_to_f64(&self, lo: &Rational, hi: &Rational) -> f64 {
        let ulp = |a: &Rational, b: &Rational| {
            // the smaller endpoint magnitude bounds |root| from below unless
            // the interval straddles 0
            let m = if a.is_negative() != b.is_negative() {
                Rational::zero()
            } else {
                a.abs().min(b.abs())
            };
            m.max(Rational::new(1.into(), 1024.into()))
                * Rational::new(1.into(), BigInt::one() << 53)
        };
        let (mut a, mut b) = (lo.clone(), hi.clone());
        loop {
            let w = ulp(&a, &b);
            if &b - &a <= w {
                break;
            }
            (a, b) = self.refine_root(&a, &b, &w);
        }
        to_f64(&((a + b) / int(2)))
    }
}

pub(crate) fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn changes(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_changes(seq: &[IntPoly], x: &Rational) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| p.sign_at(x)).collect();
    changes(&signs)
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if a.is_negative() { " - " } else { " + " })?;
            } else if a.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let m = a.abs();
            match k {
                0 => write!(f, "{m}")?,
                1 => write!(f, "{m}*x")?,
                _ => write!(f, "{m}*x^{k}")?,
            }
        }
        Ok(())
    }
}
