//! Clock-and-shift matrices, the Berezin-Toeplitz torus triple and its
//! comparison with the single-loop representation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, commutator, from_diag, identity, CMatrix, I};
use crate::rep::{classify_regime, construct_loop_rep, LoopSpec, Regime, RepKind, Representation};

#[derive(Clone, Debug, PartialEq)]
pub struct ClockShift {
    pub n: usize,
    /// `S[j−1, j] = S[N−1, 0] = 1`, so `S diag(d) S⁻¹` shifts `d` up by one.
    pub s: CMatrix,
    /// `diag(1, q, …, q^{N−1})`.
    pub t: CMatrix,
    /// `e^{−2πi/N}`.
    pub q: Complex64,
    /// `e^{−πi/N}`, a square root of `q`.
    pub chi: Complex64,
}

pub fn clock_shift(n: usize) -> Result<ClockShift> {
    if n < 5 {
        return Err(Error::NTooSmall(n));
    }
    let q = Complex64::from_polar(1.0, -2.0 * PI / n as f64);
    let chi = Complex64::from_polar(1.0, -PI / n as f64);
    Ok(ClockShift {
        n,
        s: shift_power(n, 1),
        t: clock_power(n, 1),
        q,
        chi,
    })
}

/// `S^m`, any integer `m`.
fn shift_power(n: usize, m: i64) -> CMatrix {
    let mut out = CMatrix::zeros(n, n);
    for j in 0..n {
        let row = (j as i64 - m).rem_euclid(n as i64) as usize;
        out[(row, j)] = c(1.0);
    }
    out
}

/// `T^m`; phases are reduced mod `N` before evaluation.
fn clock_power(n: usize, m: i64) -> CMatrix {
    let d: Vec<Complex64> = (0..n as i64)
        .map(|l| {
            let k = (l * m).rem_euclid(n as i64);
            Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64)
        })
        .collect();
    from_diag(&d)
}

/// `χ^{r₁r₂} S^{−r₁} T^{r₂}`.
pub fn face_function_matrix(r1: i64, r2: i64, cs: &ClockShift) -> CMatrix {
    let k = (r1 * r2).rem_euclid(2 * cs.n as i64);
    let phase = Complex64::from_polar(1.0, -PI * k as f64 / cs.n as f64);
    shift_power(cs.n, -r1) * clock_power(cs.n, r2) * phase
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BTSpec {
    pub mu: f64,
    pub nu: f64,
    pub n: usize,
}

impl BTSpec {
    pub fn new(mu: f64, nu: f64, n: usize) -> Self {
        BTSpec { mu, nu, n }
    }

    /// `ν = 1/cos(π/N)`, which makes the Casimir exactly 1.
    pub fn unit_casimir(mu: f64, n: usize) -> Self {
        BTSpec::new(mu, 1.0 / (PI / n as f64).cos(), n)
    }

    pub fn theta(&self) -> f64 {
        PI / self.n as f64
    }

    pub fn hbar(&self) -> f64 {
        self.theta().tan()
    }

    /// `(ν cos θ)²`.
    pub fn casimir(&self) -> f64 {
        (self.nu * self.theta().cos()).powi(2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BTMatrices {
    pub x: CMatrix,
    pub y: CMatrix,
    pub z: CMatrix,
    /// `diag(x_1, …, x_N)`, `x_l = √(μ + ν cos(2πl/N + π/N))`.
    pub d: CMatrix,
    pub cs: ClockShift,
}

impl BTMatrices {
    pub fn w(&self) -> CMatrix {
        &self.x + &self.y * I
    }
}

pub fn bt_matrices(spec: &BTSpec) -> Result<BTMatrices> {
    if !(spec.nu > 0.0) {
        return Err(Error::invalid("nu", "must be positive"));
    }
    let cs = clock_shift(spec.n)?;
    let n = spec.n as f64;
    let mut d = Vec::with_capacity(spec.n);
    let mut z = Vec::with_capacity(spec.n);
    for l in 1..=spec.n {
        let a = 2.0 * PI * l as f64 / n;
        let v = spec.mu + spec.nu * (a + PI / n).cos();
        if v < 0.0 {
            return Err(Error::ComplexSqrt(v));
        }
        d.push(c(v.sqrt()));
        z.push(c(-spec.nu * a.sin()));
    }
    let d = from_diag(&d);
    let ds = &d * &cs.s;
    let sd = cs.s.adjoint() * &d;
    let x = (&ds + &sd) * c(0.5);
    let y = (&ds - &sd) * Complex64::new(0.0, -0.5);
    Ok(BTMatrices {
        x,
        y,
        z: from_diag(&z),
        d,
        cs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BTResiduals {
    /// `[X, Y] − iħ cosθ Z`.
    pub xy: f64,
    /// `[Y, cosθ Z] − iħ(XQ + QX)`, `Q = X² + Y² − μ`.
    pub yz: f64,
    /// `[cosθ Z, X] − iħ(YQ + QY)`.
    pub zx: f64,
    /// `Q² + (cosθ Z)² − (ν cosθ)²`.
    pub casimir: f64,
}

impl BTResiduals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.xy, self.yz, self.zx, self.casimir]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }
}

/// Frobenius norms of the four defining relations.
pub fn verify_bt_relations(x: &CMatrix, y: &CMatrix, z: &CMatrix, spec: &BTSpec) -> BTResiduals {
    let n = x.nrows();
    let (ct, ih) = (spec.theta().cos(), I * spec.hbar());
    let zc = z * c(ct);
    let q = x * x + y * y - identity(n) * c(spec.mu);
    BTResiduals {
        xy: (commutator(x, y) - &zc * ih).norm(),
        yz: (commutator(y, &zc) - (x * &q + &q * x) * ih).norm(),
        zx: (commutator(&zc, x) - (y * &q + &q * y) * ih).norm(),
        casimir: (&q * &q + &zc * &zc - identity(n) * c(spec.casimir())).norm(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopComparison {
    /// Smallest max-entry difference between `X + iY` and the loop `W` over
    /// cyclic relabelings.
    pub max_entry_diff: f64,
    pub equivalent: bool,
    /// Casimir value of the matched loop, `(ν cos θ)²`.
    pub c: f64,
    /// The same distance against the loop with `c = ν²`, i.e. ignoring the
    /// `cos θ` factor. Shrinks like `θ²`.
    pub unit_casimir_gap: f64,
}

/// Tolerance on `max_entry_diff` for `equivalent`.
pub const BT_EQUIV_TOL: f64 = 1e-10;

/// `min_r max_ij |A_ij − B_{i+r, j+r}|`.
pub fn cyclic_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    (0..n)
        .map(|r| {
            let mut m: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    m = m.max((a[(i, j)] - b[((i + r) % n, (j + r) % n)]).norm());
                }
            }
            m
        })
        .fold(f64::INFINITY, f64::min)
}

/// The loop with `n = N, k = 1, β = π/N` and the given Casimir value.
pub fn matching_loop(spec: &BTSpec, casimir: f64) -> Result<Representation> {
    let theta = spec.theta();
    match classify_regime(spec.mu, casimir, theta) {
        Regime::Toral | Regime::CriticalToral => {}
        _ => return Err(Error::RegimeMismatch),
    }
    construct_loop_rep(&LoopSpec::new(spec.n, 1, theta), spec.mu, casimir)
}

pub fn compare_with_loop_rep(spec: &BTSpec) -> Result<LoopComparison> {
    let c0 = spec.casimir();
    let lp = matching_loop(spec, c0)?;
    let bt = bt_matrices(spec)?;
    let w = bt.w();
    let max_entry_diff = cyclic_distance(&w, &lp.w);
    let unit = matching_loop(spec, spec.nu * spec.nu)?;
    Ok(LoopComparison {
        max_entry_diff,
        equivalent: max_entry_diff <= BT_EQUIV_TOL,
        c: c0,
        unit_casimir_gap: cyclic_distance(&w, &unit.w),
    })
}

/// `X + iY` wrapped as a representation with Casimir `(ν cos θ)²`.
pub fn bt_representation(spec: &BTSpec) -> Result<Representation> {
    let bt = bt_matrices(spec)?;
    let c0 = spec.casimir();
    Ok(Representation {
        w: bt.w(),
        mu: spec.mu,
        c: c0,
        theta: spec.theta(),
        regime: classify_regime(spec.mu, c0, spec.theta()),
        kind: RepKind::Loop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_defect;
    use crate::rep::verify_relations;

    fn unitary_defect(u: &CMatrix) -> f64 {
        (u * u.adjoint() - identity(u.nrows())).norm()
    }

    #[test]
    fn clock_shift_identities() {
        let cs = clock_shift(5).unwrap();
        let mut s5 = identity(5);
        let mut t5 = identity(5);
        for _ in 0..5 {
            s5 = &s5 * &cs.s;
            t5 = &t5 * &cs.t;
        }
        assert!((s5 - identity(5)).norm() < 1e-14 && (t5 - identity(5)).norm() < 1e-14);
        assert!(cs.t.trace().norm() < 1e-13);
        let st = &cs.s * &cs.t;
        assert!((st - &cs.t * &cs.s * cs.q).norm() < 1e-14);
        let d: Vec<Complex64> = (1..=5).map(|k| c(k as f64)).collect();
        let conj = &cs.s * from_diag(&d) * cs.s.adjoint();
        let want: Vec<Complex64> = [2.0, 3.0, 4.0, 5.0, 1.0].map(c).to_vec();
        assert_eq!(conj, from_diag(&want));
        assert_eq!(clock_shift(4), Err(Error::NTooSmall(4)));
    }

    #[test]
    fn face_functions() {
        let cs = clock_shift(7).unwrap();
        assert!((face_function_matrix(0, 0, &cs) - identity(7)).norm() < 1e-15);
        assert!((face_function_matrix(1, 0, &cs) - cs.s.adjoint()).norm() < 1e-15);
        for (a, b) in [(1, 1), (-1, -1), (3, -2), (9, 4)] {
            let m = face_function_matrix(a, b, &cs);
            assert!(unitary_defect(&m) < 1e-13);
            assert!((m.determinant().norm() - 1.0).abs() < 1e-12);
        }
        let p = face_function_matrix(1, 1, &cs) * face_function_matrix(-1, -1, &cs);
        assert!(unitary_defect(&p) < 1e-13);
        let ratio = p[(0, 0)];
        assert!((p - identity(7) * ratio).norm() < 1e-13);
    }

    #[test]
    fn bt_matrix_entries() {
        let spec = BTSpec::new(1.3, 1.0, 30);
        let bt = bt_matrices(&spec).unwrap();
        for m in [&bt.x, &bt.y, &bt.z] {
            assert!(hermitian_defect(m) < 1e-13);
        }
        assert!((bt.w() - &bt.d * &bt.cs.s).norm() < 1e-14);
        for l in 1..=30 {
            let want = (1.3 + ((2 * l + 1) as f64 * PI / 30.0).cos()).sqrt();
            assert!((bt.d[(l - 1, l - 1)].re - want).abs() < 1e-15);
        }
        assert!(matches!(
            bt_matrices(&BTSpec::new(0.5, 1.0, 10)),
            Err(Error::ComplexSqrt(_))
        ));
    }

    #[test]
    fn relations_hold() {
        for n in [5, 17, 64] {
            let spec = BTSpec::new(1.3, 1.0, n);
            let bt = bt_matrices(&spec).unwrap();
            let r = verify_bt_relations(&bt.x, &bt.y, &bt.z, &spec);
            assert!(r.max() <= 1e-12 * n as f64, "{n}: {r:?}");
            let mut z = bt.z.clone();
            z[(0, 0)] += c(1e-3);
            assert!(verify_bt_relations(&bt.x, &bt.y, &z, &spec).casimir > 1e-6);
        }
        let u = BTSpec::unit_casimir(1.3, 20);
        assert!((u.casimir() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn loop_agreement() {
        let cmp = compare_with_loop_rep(&BTSpec::unit_casimir(1.3, 30)).unwrap();
        assert!(cmp.equivalent && cmp.max_entry_diff <= 1e-12);
        assert!((cmp.c - 1.0).abs() < 1e-14);
        let cmp = compare_with_loop_rep(&BTSpec::new(2.0, 1.0, 10)).unwrap();
        assert!(cmp.equivalent);
        assert!((cmp.c - (PI / 10.0).cos().powi(2)).abs() < 1e-15);
        let gaps: Vec<f64> = [10, 20, 40, 80]
            .iter()
            .map(|&n| {
                compare_with_loop_rep(&BTSpec::new(1.3, 1.0, n))
                    .unwrap()
                    .unit_casimir_gap
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
        assert_eq!(
            compare_with_loop_rep(&BTSpec::new(1.0, 1.2, 30)),
            Err(Error::RegimeMismatch)
        );
    }

    #[test]
    fn casimir_through_verifier() {
        let rep = bt_representation(&BTSpec::new(1.3, 1.0, 24)).unwrap();
        let rep_c = rep.c;
        let report = verify_relations(&rep);
        assert!(report.residual_casimir < 1e-10);
        assert!((rep.c_estimate() - rep_c).abs() < 1e-10 * rep_c);
    }
}
