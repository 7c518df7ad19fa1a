use serde::Serialize;

use crate::linalg::{c, CMatrix, I};

use super::ellipse::Regime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepKind {
    Loop,
    /// Block-cyclic loop with `m × m` unitary blocks.
    BlockLoop {
        block_dim: usize,
    },
    String,
    Degenerate,
    /// Anything else, e.g. a direct sum or user-supplied matrix.
    General,
}

/// A hermitian representation given by the image `W` of `X + iY`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub w: CMatrix,
    pub mu: f64,
    /// Target Casimir value: `Ĉ` acts as `4c`.
    pub c: f64,
    /// `ħ = tan θ`.
    pub theta: f64,
    pub regime: Regime,
    pub kind: RepKind,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    pub fn hbar(&self) -> f64 {
        self.theta.tan()
    }

    /// `D = W W†`.
    pub fn d(&self) -> CMatrix {
        &self.w * self.w.adjoint()
    }

    /// `D̃ = W† W`.
    pub fn d_tilde(&self) -> CMatrix {
        self.w.adjoint() * &self.w
    }

    pub fn x(&self) -> CMatrix {
        (&self.w + self.w.adjoint()) * c(0.5)
    }

    pub fn y(&self) -> CMatrix {
        (&self.w - self.w.adjoint()) * (-0.5 * I)
    }

    /// `Z = [X, Y]/(iħ)`.
    pub fn z(&self) -> CMatrix {
        let (x, y) = (self.x(), self.y());
        (&x * &y - &y * &x) / (I * self.hbar())
    }

    /// `(D + D̃ − 2μ)² + (D − D̃)²/ħ²` as a matrix.
    pub fn casimir_matrix(&self) -> CMatrix {
        let n = self.dim();
        let (d, dt) = (self.d(), self.d_tilde());
        let s = &d + &dt - CMatrix::identity(n, n) * c(2.0 * self.mu);
        let t = &d - &dt;
        let h2 = self.hbar().powi(2);
        &s * &s + (&t * &t) / c(h2)
    }

    /// `tr Ĉ / (4N)`.
    pub fn c_estimate(&self) -> f64 {
        self.casimir_matrix().trace().re / (4.0 * self.dim() as f64)
    }

    /// Same parameters, different matrix.
    pub fn with_matrix(&self, w: CMatrix, kind: RepKind) -> Representation {
        Representation {
            w,
            kind,
            ..self.clone()
        }
    }
}
