//! The affine map `s` on diagonal pairs `(d, d̃)` and its invariant ellipses.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipsePoint {
    pub d: f64,
    pub d_tilde: f64,
}

impl EllipsePoint {
    pub fn new(d: f64, d_tilde: f64) -> Self {
        EllipsePoint { d, d_tilde }
    }

    /// `(d + d̃ − 2μ)² + (d − d̃)²/ħ²`, which equals `4c` on the level set.
    pub fn quadratic_form(&self, mu: f64, theta: f64) -> f64 {
        let h = theta.tan();
        let s = self.d + self.d_tilde - 2.0 * mu;
        let t = self.d - self.d_tilde;
        s * s + t * t / (h * h)
    }
}

/// `s(d, d̃) = (4μ sin²θ + 2d cos 2θ − d̃, d)`.
pub fn ellipse_map_s(x: EllipsePoint, mu: f64, theta: f64) -> EllipsePoint {
    let s = theta.sin();
    EllipsePoint::new(
        4.0 * mu * s * s + 2.0 * x.d * (2.0 * theta).cos() - x.d_tilde,
        x.d,
    )
}

pub fn ellipse_map_s_inv(x: EllipsePoint, mu: f64, theta: f64) -> EllipsePoint {
    let s = theta.sin();
    EllipsePoint::new(
        x.d_tilde,
        4.0 * mu * s * s + 2.0 * x.d_tilde * (2.0 * theta).cos() - x.d,
    )
}

/// Point on the level-`c` ellipse with `s^l(x(β₀)) = x(β₀ + 2lθ)`.
pub fn ellipse_point(beta0: f64, mu: f64, c: f64, theta: f64) -> EllipsePoint {
    let r = c.sqrt() / theta.cos();
    EllipsePoint::new(mu + r * (beta0 + 2.0 * theta).cos(), mu + r * beta0.cos())
}

/// `(a₋, a₊)` with `a± = 2 sinθ [μ sinθ ± √(c − μ² cos²θ)]`: the ellipse meets
/// the axes at `(0, a±)` and `(a±, 0)`.
pub fn axis_crossings(mu: f64, c: f64, theta: f64) -> Result<(f64, f64)> {
    let disc = c - mu * mu * theta.cos().powi(2);
    if disc < 0.0 {
        return Err(Error::NoRealCrossing);
    }
    let (s, r) = (theta.sin(), disc.sqrt());
    Ok((2.0 * s * (mu * s - r), 2.0 * s * (mu * s + r)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Degenerate,
    Spherical,
    CriticalToral,
    Toral,
    Invalid,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Degenerate => "degenerate",
            Regime::Spherical => "spherical",
            Regime::CriticalToral => "critical-toral",
            Regime::Toral => "toral",
            Regime::Invalid => "invalid",
        }
    }
}

/// Right ends are closed: `μ/√c = 1` is spherical and `μ/√c = 1/cos θ` is
/// critical-toral. `μ/√c = −1` counts as spherical (the trivial string).
pub fn classify_regime(mu: f64, c: f64, theta: f64) -> Regime {
    if c == 0.0 {
        return Regime::Degenerate;
    }
    if c < 0.0 || !c.is_finite() || !mu.is_finite() {
        return Regime::Invalid;
    }
    let r = mu / c.sqrt();
    if r < -1.0 {
        Regime::Invalid
    } else if r <= 1.0 {
        Regime::Spherical
    } else if r <= 1.0 / theta.cos() {
        Regime::CriticalToral
    } else {
        Regime::Toral
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fixed_point_and_example() {
        let t = PI / 6.0;
        let p = ellipse_map_s(EllipsePoint::new(0.7, 0.7), 0.7, t);
        assert!((p.d - 0.7).abs() < 1e-15 && (p.d_tilde - 0.7).abs() < 1e-15);
        let q = ellipse_map_s(EllipsePoint::new(2.0, 0.0), 1.0, t);
        assert!((q.d - 3.0).abs() < 1e-14 && q.d_tilde == 2.0);
        let back = ellipse_map_s_inv(q, 1.0, t);
        assert!((back.d - 2.0).abs() < 1e-14 && back.d_tilde.abs() < 1e-14);
    }

    #[test]
    fn orbit_advances_by_two_theta() {
        let (mu, c, t) = (1.3, 1.0, PI / 7.0);
        for k in 0..10 {
            let b = -1.0 + 0.37 * k as f64;
            let next = ellipse_map_s(ellipse_point(b, mu, c, t), mu, t);
            let want = ellipse_point(b + 2.0 * t, mu, c, t);
            assert!((next.d - want.d).abs() < 1e-12);
            assert!((next.d_tilde - want.d_tilde).abs() < 1e-12);
            assert!((want.quadratic_form(mu, t) - 4.0 * c).abs() < 1e-12);
        }
        let sym = ellipse_point(-t, 0.0, 1.0, t);
        assert!((sym.d - 1.0).abs() < 1e-15 && (sym.d_tilde - 1.0).abs() < 1e-15);
    }

    #[test]
    fn crossings() {
        let t = PI / 9.0;
        let (am, ap) = axis_crossings(0.0, 1.0, t).unwrap();
        assert!((ap - 2.0 * t.sin()).abs() < 1e-15 && (am + 2.0 * t.sin()).abs() < 1e-15);
        let (am, ap) = axis_crossings(0.4, 1.0, t).unwrap();
        let end = ellipse_map_s(EllipsePoint::new(0.0, ap), 0.4, t);
        assert!((end.d - am).abs() < 1e-14 && end.d_tilde.abs() < 1e-15);
        assert_eq!(
            axis_crossings(1.3, 1.0, PI / 30.0),
            Err(Error::NoRealCrossing)
        );
    }

    #[test]
    fn regimes() {
        assert_eq!(classify_regime(0.9, 1.0, PI / 30.0), Regime::Spherical);
        assert_eq!(classify_regime(1.3, 1.0, PI / 30.0), Regime::Toral);
        assert_eq!(
            classify_regime(1.003, 1.0, PI / 30.0),
            Regime::CriticalToral
        );
        assert_eq!(classify_regime(-2.0, 1.0, 0.1), Regime::Invalid);
        assert_eq!(classify_regime(-1.0, 1.0, 0.1), Regime::Spherical);
        assert_eq!(classify_regime(1.0, 1.0, 0.1), Regime::Spherical);
        assert_eq!(classify_regime(5.0, 0.0, 0.1), Regime::Degenerate);
        let t: f64 = 0.3;
        assert_eq!(
            classify_regime(1.0 / t.cos(), 1.0, t),
            Regime::CriticalToral
        );
    }
}
