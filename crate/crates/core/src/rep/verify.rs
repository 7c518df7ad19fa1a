//! Residuals of the defining relations for a concrete matrix.

use serde::Serialize;

use crate::linalg::{c, commutator, hermitian_defect, CMatrix, I};

use super::ellipse::{ellipse_map_s, EllipsePoint};
use super::graph::matrix_graph;
use super::representation::Representation;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    /// `(WD + D̃W)(1+ħ²) − 4μħ²W − (1−ħ²)(WD̃ + DW)`, over `max(1, ‖W‖³)`.
    pub residual_wwd: f64,
    /// `‖Ĉ − 4c I‖ / (4c)`, or unnormalized when `c ≈ 0`.
    pub residual_casimir: f64,
    pub c_estimate: f64,
    /// `‖WD̃ − DW‖`.
    pub intertwine_residual: f64,
    /// `[Y, Z] − iħ(2X³ + XY² + Y²X − 2μX)`, over `max(1, ‖W‖³)`.
    pub residual_yz: f64,
    /// `[Z, X] − iħ(2Y³ + YX² + X²Y − 2μY)`, over `max(1, ‖W‖³)`.
    pub residual_zx: f64,
    /// Relative anti-hermitian part of `Z`.
    pub z_hermitian_defect: f64,
    /// Largest `|x_j − s(x_i)|` over graph edges `i → j`.
    pub edge_residual: f64,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.residual_wwd,
            self.residual_casimir,
            self.intertwine_residual,
            self.residual_yz,
            self.residual_zx,
            self.z_hermitian_defect,
            self.edge_residual,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

fn casimir_scale(rep: &Representation) -> f64 {
    if rep.c > 1e-12 * (1.0 + rep.mu * rep.mu) {
        4.0 * rep.c
    } else {
        1.0
    }
}

pub fn verify_relations(rep: &Representation) -> RelationReport {
    let n = rep.dim();
    let w = &rep.w;
    let (d, dt) = (rep.d(), rep.d_tilde());
    let h = rep.hbar();
    let h2 = h * h;
    let id = CMatrix::identity(n, n);
    let cube = w.norm().powi(3).max(1.0);

    let lhs = (w * &d + &dt * w) * c(1.0 + h2);
    let rhs = w * c(4.0 * rep.mu * h2) + (w * &dt + &d * w) * c(1.0 - h2);
    let residual_wwd = (lhs - rhs).norm() / cube;

    let cas = rep.casimir_matrix();
    let c_estimate = cas.trace().re / (4.0 * n as f64);
    let residual_casimir = (&cas - &id * c(4.0 * rep.c)).norm() / casimir_scale(rep);

    let intertwine_residual = (w * &dt - &d * w).norm();

    let (x, y) = (rep.x(), rep.y());
    let z = commutator(&x, &y) / (I * h);
    // lhs − iħ(2u³ + uv² + v²u − 2μu)
    let rel = |lhs: CMatrix, u: &CMatrix, v: &CMatrix| {
        let v2 = v * v;
        let rhs = (u * u * u * c(2.0) + u * &v2 + &v2 * u - u * c(2.0 * rep.mu)) * (I * h);
        (lhs - rhs).norm() / cube
    };
    let residual_yz = rel(commutator(&y, &z), &x, &y);
    let residual_zx = rel(commutator(&z, &x), &y, &x);

    let z_hermitian_defect = if z.norm() > 0.0 {
        hermitian_defect(&z)
    } else {
        0.0
    };

    let graph = matrix_graph(w, None);
    let point = |i: usize| EllipsePoint::new(d[(i, i)].re, dt[(i, i)].re);
    let edge_residual = graph
        .edges
        .iter()
        .map(|&(i, j)| {
            let s = ellipse_map_s(point(i), rep.mu, rep.theta);
            let xj = point(j);
            (s.d - xj.d).abs().max((s.d_tilde - xj.d_tilde).abs())
        })
        .fold(0.0, f64::max);

    RelationReport {
        residual_wwd,
        residual_casimir,
        c_estimate,
        intertwine_residual,
        residual_yz,
        residual_zx,
        z_hermitian_defect,
        edge_residual,
    }
}
