//! Hermitian eigenvalue solvers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::registry::{Named, Registry};

/// Relative Frobenius tolerance on `H − H†` accepted as hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

pub trait EigenSolver: Named + Send + Sync {
    /// Eigenvalues of a hermitian matrix, in any order.
    fn eigenvalues(&self, h: &CMatrix) -> Vec<f64>;
}

/// Cyclic complex Jacobi rotations.
pub struct JacobiSolver;

/// Householder tridiagonalization and implicit QR from `nalgebra`.
pub struct NalgebraSolver;

impl Named for JacobiSolver {
    fn name(&self) -> &'static str {
        "jacobi"
    }
}

impl Named for NalgebraSolver {
    fn name(&self) -> &'static str {
        "nalgebra"
    }
}

impl EigenSolver for NalgebraSolver {
    fn eigenvalues(&self, h: &CMatrix) -> Vec<f64> {
        h.clone().symmetric_eigenvalues().iter().copied().collect()
    }
}

impl EigenSolver for JacobiSolver {
    fn eigenvalues(&self, h: &CMatrix) -> Vec<f64> {
        let n = h.nrows();
        let mut a = h.clone();
        let total = a.norm();
        if total == 0.0 {
            return vec![0.0; n];
        }
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            if off <= 1e-15 * total {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, p, q);
                }
            }
        }
        (0..n).map(|i| a[(i, i)].re).collect()
    }
}

/// Annihilates `a[p, q]` with `A ← G† A G`,
/// `G = [[c, s], [−s e^{−iφ}, c e^{−iφ}]]` on the `(p, q)` plane.
fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let w = apq / mag;
    let wc = w.conj();
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.nrows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c - akq * wc * s;
        a[(k, q)] = akp * s + akq * wc * c;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c - aqk * w * s;
        a[(q, k)] = apk * s + aqk * w * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

pub fn eigen_solvers() -> Registry<dyn EigenSolver> {
    let mut reg: Registry<dyn EigenSolver> = Registry::new("eigensolver");
    reg.register(Box::new(NalgebraSolver))
        .register(Box::new(JacobiSolver));
    reg
}

pub fn check_hermitian(h: &CMatrix) -> Result<()> {
    let defect = (h - h.adjoint()).norm();
    if defect > HERMITIAN_TOL * h.norm() {
        return Err(Error::NotHermitian(defect));
    }
    Ok(())
}

/// Sorted eigenvalues with the given solver.
pub fn hermitian_eigenvalues_with(h: &CMatrix, solver: &dyn EigenSolver) -> Result<Vec<f64>> {
    if h.nrows() != h.ncols() {
        return Err(Error::invalid("H", "must be square"));
    }
    check_hermitian(h)?;
    let mut eig = solver.eigenvalues(h);
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Sorted eigenvalues with the default (`nalgebra`) solver.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues_with(h, &NalgebraSolver)
}
