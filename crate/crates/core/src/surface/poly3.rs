//! Commutative polynomials in `x, y, z` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, Rational};

use super::upoly::UPoly;

pub type Exponents = [u32; 3];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommPolynomial3 {
    terms: BTreeMap<Exponents, Rational>,
}

impl CommPolynomial3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: Exponents, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// The coordinate `x`, `y` or `z` (index 0, 1, 2).
    pub fn var(k: usize) -> Self {
        let mut e = [0; 3];
        e[k] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    /// `p(x)` as a polynomial in three variables.
    pub fn from_upoly_x(p: &UPoly) -> Self {
        let mut out = Self::zero();
        for (k, a) in p.coeffs().iter().enumerate() {
            out.add_term([k as u32, 0, 0], a.clone());
        }
        out
    }

    pub fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * q);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut d = *e;
            d[k] -= 1;
            out.add_term(d, c * int(e[k] as i64));
        }
        out
    }

    pub fn gradient(&self) -> [Self; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    pub fn eval_f64(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                crate::exact::to_f64(c)
                    * p[0].powi(e[0] as i32)
                    * p[1].powi(e[1] as i32)
                    * p[2].powi(e[2] as i32)
            })
            .sum()
    }

    /// Parses expressions such as `x^2*y - 3/2*z + (x+y)^2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected `{}` in `{text}`",
                p.chars[p.pos]
            )));
        }
        Ok(out)
    }
}

/// `{f, g}_C = ∇C · (∇f × ∇g)`.
pub fn poisson_bracket(
    f: &CommPolynomial3,
    g: &CommPolynomial3,
    c: &CommPolynomial3,
) -> CommPolynomial3 {
    let df = f.gradient();
    let dg = g.gradient();
    let dc = c.gradient();
    let cross = [
        &(&df[1] * &dg[2]) - &(&df[2] * &dg[1]),
        &(&df[2] * &dg[0]) - &(&df[0] * &dg[2]),
        &(&df[0] * &dg[1]) - &(&df[1] * &dg[0]),
    ];
    let mut out = CommPolynomial3::zero();
    for k in 0..3 {
        out = &out + &(&dc[k] * &cross[k]);
    }
    out
}

/// `(P(x) + y²)² + z² − level`, optionally with the halved normalization
/// `½(P + y²)² + ½z² − level`.
pub fn constraint_polynomial(p: &UPoly, level: &Rational, halved: bool) -> CommPolynomial3 {
    let y2 = CommPolynomial3::y().pow(2);
    let inner = &CommPolynomial3::from_upoly_x(p) + &y2;
    let sum = &inner.pow(2) + &CommPolynomial3::z().pow(2);
    let sum = if halved {
        sum.scale(&Rational::new(1.into(), 2.into()))
    } else {
        sum
    };
    &sum - &CommPolynomial3::constant(level.clone())
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<CommPolynomial3> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op) = self.peek() {
            if op != '+' && op != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CommPolynomial3> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<CommPolynomial3> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: u32 = digits.parse().map_err(|_| self.err("expected exponent"))?;
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<CommPolynomial3> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c @ ('x' | 'y' | 'z')) => {
                self.pos += 1;
                Ok(CommPolynomial3::var((c as u8 - b'x') as usize))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == '.' || c == '/')
                {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                Ok(CommPolynomial3::constant(parse_rational(&lit)?))
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

impl Add<&CommPolynomial3> for &CommPolynomial3 {
    type Output = CommPolynomial3;
    fn add(self, o: &CommPolynomial3) -> CommPolynomial3 {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub<&CommPolynomial3> for &CommPolynomial3 {
    type Output = CommPolynomial3;
    fn sub(self, o: &CommPolynomial3) -> CommPolynomial3 {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c);
        }
        r
    }
}

impl Mul<&CommPolynomial3> for &CommPolynomial3 {
    type Output = CommPolynomial3;
    fn mul(self, o: &CommPolynomial3) -> CommPolynomial3 {
        let mut r = CommPolynomial3::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        r
    }
}

impl Neg for &CommPolynomial3 {
    type Output = CommPolynomial3;
    fn neg(self) -> CommPolynomial3 {
        self.scale(&int(-1))
    }
}

impl fmt::Display for CommPolynomial3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let m = c.abs();
            let mut factors = Vec::new();
            if !m.is_one() || e.iter().all(|&p| p == 0) {
                factors.push(m.to_string());
            }
            for (v, &p) in ["x", "y", "z"].iter().zip(e) {
                match p {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{p}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn parse(s: &str) -> CommPolynomial3 {
        CommPolynomial3::parse(s).unwrap()
    }

    #[test]
    fn parser_round_trip() {
        let p = parse("x^2*y - 3/2*z + (x+y)^2");
        let q = parse("x^2 + 2*x*y + y^2 + x^2*y - 1.5*z");
        assert_eq!(p, q);
        assert_eq!(parse(&p.to_string()), p);
        assert!(CommPolynomial3::parse("x+").is_err());
        assert!(CommPolynomial3::parse("w").is_err());
    }

    #[test]
    fn halved_torus_brackets() {
        // P = x² − μ, halved constraint
        let mu = rational(13, 10);
        let p = UPoly::new(vec![-mu.clone(), int(0), int(1)]);
        let c = constraint_polynomial(&p, &int(1), true);
        let (x, y, z) = (
            CommPolynomial3::x(),
            CommPolynomial3::y(),
            CommPolynomial3::z(),
        );
        assert_eq!(poisson_bracket(&x, &y, &c), z);
        let pp = CommPolynomial3::from_upoly_x(&p);
        let q = &pp + &y.pow(2);
        let dp = CommPolynomial3::from_upoly_x(&p.derivative());
        assert_eq!(poisson_bracket(&y, &z, &c), &dp * &q);
        assert_eq!(poisson_bracket(&z, &x, &c), &y.scale(&int(2)) * &q);
        assert!(poisson_bracket(&c, &x, &c).is_zero());
        assert!(poisson_bracket(&q, &q, &c).is_zero());
    }
}
