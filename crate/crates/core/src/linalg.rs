//! Dense complex matrix helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// `‖A − A†‖_F / max(‖A‖_F, tiny)`.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    let n = a.norm();
    (a - a.adjoint()).norm() / n.max(f64::MIN_POSITIVE)
}

pub fn diag_real(a: &CMatrix) -> Vec<f64> {
    (0..a.nrows()).map(|i| a[(i, i)].re).collect()
}

pub fn from_diag(d: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d))
}

/// Haar-like random unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let gauss = |rng: &mut R| {
        // Box-Muller
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let a = CMatrix::from_fn(n, n, |_, _| Complex64::new(gauss(rng), gauss(rng)));
    let (q, r) = a.qr().unpack();
    // fix the phases of R's diagonal so the distribution is uniform
    let phases: Vec<Complex64> = (0..n)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                c(1.0)
            }
        })
        .collect();
    q * from_diag(&phases)
}

/// `P A Pᵀ` for the permutation sending index `i` to `perm[i]`.
pub fn permute(a: &CMatrix, perm: &[usize]) -> CMatrix {
    let n = a.nrows();
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(perm[i], perm[j])] = a[(i, j)];
        }
    }
    out
}

pub fn block_diagonal(blocks: &[&CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        let m = b.nrows();
        out.view_mut((at, at), (m, m)).copy_from(*b);
        at += m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let u = random_unitary(6, &mut rng);
        assert!((u.adjoint() * &u - identity(6)).norm() < 1e-13);
    }

    #[test]
    fn permutation_round_trip() {
        let a = CMatrix::from_fn(3, 3, |i, j| c((3 * i + j) as f64));
        let p = [2, 0, 1];
        let b = permute(&a, &p);
        assert_eq!(b[(2, 0)], a[(0, 1)]);
        let inv = [1, 2, 0];
        assert_eq!(permute(&b, &inv), a);
    }
}
