use ncsurf::linalg::{c, CMatrix};
use ncsurf::spectral::{
    detect_branches, eigen_solvers, hermitian_eigenvalues, hermitian_eigenvalues_with, sweep_mu,
    SweepParams,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian() -> impl Strategy<Value = CMatrix> {
    (1usize..12).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
            let a = CMatrix::from_fn(n, n, |i, j| Complex64::new(v[i * n + j].0, v[i * n + j].1));
            (&a + a.adjoint()) * c(0.5)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_agree_and_keep_traces(h in hermitian()) {
        let fro = h.norm_squared();
        let reference = hermitian_eigenvalues(&h).unwrap();
        for s in eigen_solvers().iter() {
            let e = hermitian_eigenvalues_with(&h, s).unwrap();
            prop_assert!(e.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!((e.iter().sum::<f64>() - h.trace().re).abs() < 1e-10 * (1.0 + fro));
            prop_assert!((e.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-10 * (1.0 + fro));
            for (a, b) in e.iter().zip(&reference) {
                prop_assert!((a - b).abs() < 1e-10 * (1.0 + fro.sqrt()));
            }
        }
    }

    #[test]
    fn branches_ignore_input_order(mut eigs in prop::collection::vec(-2.0f64..2.0, 0..40), seed in any::<u64>()) {
        let crit = [-1.5, -0.4, 0.4, 1.5];
        let a = detect_branches(&eigs, &crit, 2.0);
        // deterministic shuffle
        let n = eigs.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            eigs.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(a, detect_branches(&eigs, &crit, 2.0));
    }
}

#[test]
fn sweep_output_is_reproducible() {
    let mut p = SweepParams::new(1.0, 20);
    let a = sweep_mu(&[0.8, 1.2, 1.6], &p).to_csv();
    p.workers = 2;
    let b = sweep_mu(&[0.8, 1.2, 1.6], &p).to_csv();
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 61);
    assert!(a.starts_with("mu,i,lambda,gap,interval,branches\n"));
}
