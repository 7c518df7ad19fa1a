//! Constraint surfaces `(P(x) + y²)² + z² = L` and Morse counting along `x`.
//!
//! Critical points of the height function `x` sit at `y = z = 0` with
//! `P(x)² = L`. Where `P = +√L` they are minima or maxima, where `P = −√L`
//! saddles, so `χ = #{P = √L} − #{P = −√L}`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, Rational};

use super::upoly::{sign, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceForm {
    /// `(P + y²)² + z² − μ²`, level constant `μ > 0`.
    GeneralGenus,
    /// `(x² + y² − μ)² + z² − c`, level `c > 0`.
    TorusSphere,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSpec {
    /// Genus the construction aims for (0 when not built for a genus).
    pub genus: u32,
    pub p: UPoly,
    /// `μ` for the general form, `c` for the torus/sphere form.
    pub level_const: Rational,
    pub form: SurfaceForm,
    /// Certified upper bound on `max G` over `[0, g²+1]`, when built from `G`.
    pub g_max: Option<Rational>,
}

impl SurfaceSpec {
    /// The right-hand side `L` of `P(x)² = L` at the critical points.
    pub fn level(&self) -> Rational {
        match self.form {
            SurfaceForm::GeneralGenus => &self.level_const * &self.level_const,
            SurfaceForm::TorusSphere => self.level_const.clone(),
        }
    }

    /// General form for a user polynomial; `P` must have even degree and a
    /// positive leading coefficient.
    pub fn general(p: UPoly, mu: Rational) -> Result<Self> {
        if !mu.is_positive() {
            return Err(Error::invalid("mu", "level constant must be positive"));
        }
        match p.degree() {
            Some(d) if d > 0 && d % 2 == 0 && p.leading().is_positive() => {}
            _ => {
                return Err(Error::invalid(
                    "P",
                    "need even positive degree and a positive leading coefficient",
                ))
            }
        }
        let spec = SurfaceSpec {
            genus: 0,
            p,
            level_const: mu,
            form: SurfaceForm::GeneralGenus,
            g_max: None,
        };
        spec.check_regular()?;
        Ok(spec)
    }

    /// `P = x² − μ`, level `c`.
    pub fn torus_sphere(mu: Rational, c: Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::invalid("c", "level must be positive"));
        }
        let spec = SurfaceSpec {
            genus: 0,
            p: UPoly::new(vec![-mu, int(0), int(1)]),
            level_const: c,
            form: SurfaceForm::TorusSphere,
            g_max: None,
        };
        spec.check_regular()?;
        Ok(spec)
    }

    fn critical_polynomial(&self) -> UPoly {
        self.p.mul(&self.p).sub(&UPoly::constant(self.level()))
    }

    pub fn check_regular(&self) -> Result<()> {
        if self.critical_polynomial().is_squarefree() {
            Ok(())
        } else {
            Err(Error::NotRegular(format!(
                "P(x)^2 - {} has a repeated root for P = {}",
                self.level(),
                self.p
            )))
        }
    }
}

/// `G(t) = (t − 1)(t − 4)⋯(t − g²)`.
pub fn genus_g_polynomial(g: u32) -> UPoly {
    (1..=g as i64).fold(UPoly::constant(Rational::one()), |acc, j| {
        acc.mul(&UPoly::from_ints(&[-(j * j), 1]))
    })
}

/// Certified upper bound for `max p` on `[a, b]`, plus whether it is exact.
///
/// Interior critical points are isolated as roots of `p'` and bounded by
/// interval evaluation on a tight enclosure; when every such bound stays below
/// the larger endpoint value, that value is the exact maximum.
pub fn certified_max(p: &UPoly, a: &Rational, b: &Rational) -> (Rational, bool) {
    let endpoint = p.eval(a).max(p.eval(b));
    let dp = p.derivative().squarefree_part();
    let width = Rational::new(1.into(), num_bigint::BigInt::one() << 64);
    let mut best = endpoint.clone();
    let mut exact = true;
    if dp.degree().unwrap_or(0) > 0 {
        for (lo, hi) in dp.isolate_roots() {
            if &hi <= a || &lo >= b {
                continue;
            }
            let (lo, hi) = dp.refine_root(&lo, &hi, &width);
            let lo = lo.max(a.clone());
            let hi = hi.min(b.clone());
            let (_, upper) = p.eval_interval(&lo, &hi);
            if upper > endpoint {
                exact = false;
                best = best.max(upper);
            }
        }
    }
    (best, exact)
}

/// `P(x) = αG(x²) − μ`, requiring `0 < α < 2μ/M` with `M = max G on [0, g²+1]`.
pub fn build_genus_polynomial(g: u32, mu: &Rational, alpha: &Rational) -> Result<SurfaceSpec> {
    if g == 0 {
        return Err(Error::invalid("g", "genus must be at least 1"));
    }
    if !mu.is_positive() {
        return Err(Error::invalid("mu", "must be positive"));
    }
    let gpoly = genus_g_polynomial(g);
    let top = int((g * g + 1) as i64);
    let (m, _) = certified_max(&gpoly, &Rational::zero(), &top);
    let upper = int(2) * mu / &m;
    if !alpha.is_positive() || *alpha >= upper {
        return Err(Error::AlphaOutOfRange {
            upper: upper.to_string(),
        });
    }
    let q = gpoly.scale(alpha).sub(&UPoly::constant(mu.clone()));
    let spec = SurfaceSpec {
        genus: g,
        p: q.compose_square(),
        level_const: mu.clone(),
        form: SurfaceForm::GeneralGenus,
        g_max: Some(m),
    };
    spec.check_regular()?;
    Ok(spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootCount {
    pub total_real: usize,
    pub all_simple: bool,
}

pub fn count_simple_roots(p: &UPoly) -> RootCount {
    RootCount {
        total_real: p.count_real_roots(),
        all_simple: p.is_squarefree(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalData {
    /// Critical points with `P = +√L` (minima and maxima).
    pub n_plus: usize,
    /// Critical points with `P = −√L` (saddles).
    pub n_minus: usize,
    pub chi: i64,
    pub genus: u32,
    pub critical_x: Vec<f64>,
}

pub fn euler_characteristic(spec: &SurfaceSpec) -> Result<CriticalData> {
    spec.check_regular()?;
    let f = spec.critical_polynomial();
    let mut n_plus = 0;
    let mut n_minus = 0;
    let mut critical_x = Vec::new();
    for (lo, hi) in f.isolate_roots() {
        // shrink until P keeps one sign on the enclosure; P ≠ 0 at these roots
        let (mut a, mut b) = (lo, hi);
        let s = loop {
            let (vlo, vhi) = spec.p.eval_interval(&a, &b);
            if vlo.is_positive() {
                break 1;
            }
            if vhi.is_negative() {
                break -1;
            }
            let w = (&b - &a) / int(4);
            (a, b) = f.refine_root(&a, &b, &w);
            if a == b {
                break sign(&spec.p.eval(&a));
            }
        };
        if s > 0 {
            n_plus += 1;
        } else {
            n_minus += 1;
        }
        critical_x.push(f.root_to_f64(&a, &b));
    }
    let chi = n_plus as i64 - n_minus as i64;
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::NotRegular(format!(
            "chi = {chi} does not describe a connected closed surface"
        )));
    }
    Ok(CriticalData {
        n_plus,
        n_minus,
        chi,
        genus: ((2 - chi) / 2) as u32,
        critical_x,
    })
}

/// Real solutions of `(x² − μ)² = c`, sorted.
pub fn critical_values_torus_sphere(mu: f64, c: f64) -> Result<Vec<f64>> {
    if !(c > 0.0) {
        return Err(Error::invalid("c", "must be positive"));
    }
    let s = c.sqrt();
    if mu <= -s {
        return Err(Error::DomainError(format!(
            "mu = {mu} must exceed -sqrt(c) = {}",
            -s
        )));
    }
    let outer = (mu + s).sqrt();
    let inner_sq = mu - s;
    let mut out = vec![-outer, outer];
    if inner_sq.abs() <= 4.0 * f64::EPSILON * (mu.abs() + s) {
        out.push(0.0);
    } else if inner_sq > 0.0 {
        out.push(-inner_sq.sqrt());
        out.push(inner_sq.sqrt());
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}
