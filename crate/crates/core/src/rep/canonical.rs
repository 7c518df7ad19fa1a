//! Loop index, block-loop canonical form and equivalence of irreducibles.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c as cx, CMatrix};

use super::graph::{components, matrix_graph, ComponentKind};
use super::representation::{RepKind, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RepIndex {
    /// Product of the cycle entries, `√(ẽ_0⋯ẽ_{n−1}) e^{iγ}`.
    pub z: Complex64,
    /// `‖Wⁿ − zI‖ / max(1, |z|)`.
    pub power_residual: f64,
}

fn single_component(rep: &Representation) -> Result<(Vec<usize>, ComponentKind)> {
    let comps = components(&matrix_graph(&rep.w, None));
    match comps.as_slice() {
        [only] => Ok((only.vertices.clone(), only.kind)),
        _ => Err(Error::NotSingleLoop),
    }
}

pub fn rep_index(rep: &Representation) -> Result<RepIndex> {
    let (order, kind) = single_component(rep)?;
    let n = match kind {
        ComponentKind::Loop(n) => n,
        _ => return Err(Error::NotSingleLoop),
    };
    let z = (0..n)
        .map(|i| rep.w[(order[i], order[(i + 1) % n])])
        .fold(cx(1.0), |acc, e| acc * e);
    let power = rep.w.pow(n as u32);
    let power_residual = (power - CMatrix::identity(n, n) * z).norm() / z.norm().max(1.0);
    Ok(RepIndex { z, power_residual })
}

/// Equivalence by invariants: dimension and Casimir value for strings, plus
/// the index for loops. `tol` is absolute for `c` and relative to `max(1, |z|)`
/// for the index.
pub fn reps_equivalent(a: &Representation, b: &Representation, tol: f64) -> Result<bool> {
    let (_, ka) = single_component(a)?;
    let (_, kb) = single_component(b)?;
    let is_loop = |k| matches!(k, ComponentKind::Loop(_));
    let is_string = |k| matches!(k, ComponentKind::String(_));
    if !(is_loop(ka) || is_string(ka)) || !(is_loop(kb) || is_string(kb)) {
        return Err(Error::NotSingleLoop);
    }
    if is_loop(ka) != is_loop(kb) {
        return Err(Error::MixedKinds);
    }
    if a.dim() != b.dim() || (a.mu - b.mu).abs() > tol || (a.theta - b.theta).abs() > tol {
        return Ok(false);
    }
    if (a.c_estimate() - b.c_estimate()).abs() > tol {
        return Ok(false);
    }
    if is_loop(ka) {
        let (za, zb) = (rep_index(a)?.z, rep_index(b)?.z);
        return Ok((za - zb).norm() <= tol * za.norm().max(1.0));
    }
    Ok(true)
}

struct BlockLoop {
    n: usize,
    m: usize,
    /// `ẽ_l`, with `ẽ_0` on the corner block.
    weights: Vec<f64>,
    /// `U_l = B_l / √ẽ_l`.
    unitaries: Vec<CMatrix>,
}

fn detect_block_loop(w: &CMatrix) -> Option<BlockLoop> {
    let big = w.nrows();
    let scale = w.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let tol = 1e-9 * scale;
    'sizes: for m in 1..=big / 2 {
        if big % m != 0 {
            continue;
        }
        let n = big / m;
        let mut weights = vec![0.0; n];
        let mut unitaries = vec![CMatrix::zeros(m, m); n];
        for bi in 0..n {
            for bj in 0..n {
                let block = w.view((bi * m, bj * m), (m, m)).into_owned();
                let l = if bj == (bi + 1) % n { Some(bj) } else { None };
                match l {
                    None => {
                        if block.iter().any(|z| z.norm() > tol) {
                            continue 'sizes;
                        }
                    }
                    Some(l) => {
                        let gram = &block * block.adjoint();
                        let e = gram.trace().re / m as f64;
                        if !(e > tol * tol)
                            || (gram - CMatrix::identity(m, m) * cx(e)).norm() > 1e-9 * e
                        {
                            continue 'sizes;
                        }
                        weights[l] = e;
                        unitaries[l] = block / cx(e.sqrt());
                    }
                }
            }
        }
        return Some(BlockLoop {
            n,
            m,
            weights,
            unitaries,
        });
    }
    None
}

/// Splits a block loop with unitary blocks into `m` single loops.
///
/// With holonomy `H = U_1⋯U_{n−1}U_0 = S Λ S†`, conjugating by
/// `P = diag(S, P_1, …, P_{n−1})`, `P_l = (U_1⋯U_l)† S`, turns every block
/// into `√ẽ_l I` except the corner, which becomes `√ẽ_0 Λ`.
pub fn canonicalize_loop(rep: &Representation) -> Result<Vec<Representation>> {
    let bl = detect_block_loop(&rep.w).ok_or(Error::NotBlockCyclic)?;
    let BlockLoop {
        n,
        m,
        weights,
        unitaries,
    } = bl;
    let mut holonomy = CMatrix::identity(m, m);
    for u in unitaries.iter().skip(1) {
        holonomy *= u;
    }
    holonomy *= &unitaries[0];
    let (s, t) = holonomy.schur().unpack();
    let lambdas: Vec<Complex64> = (0..m).map(|j| t[(j, j)]).collect();

    // P_l = (U_1⋯U_l)† S, P_0 = S
    let mut p = vec![s.clone()];
    let mut prefix = CMatrix::identity(m, m);
    for u in unitaries.iter().take(n).skip(1) {
        prefix *= u;
        p.push(prefix.adjoint() * &s);
    }
    let mut big_p = CMatrix::zeros(n * m, n * m);
    for (l, pl) in p.iter().enumerate() {
        big_p.view_mut((l * m, l * m), (m, m)).copy_from(pl);
    }
    let conj = big_p.adjoint() * &rep.w * &big_p;

    Ok((0..m)
        .map(|j| {
            let mut w = CMatrix::zeros(n, n);
            for l in 0..n {
                let row = (l + n - 1) % n;
                w[(row, l)] = conj[(row * m + j, l * m + j)];
            }
            debug_assert!((w[(n - 1, 0)] - lambdas[j] * weights[0].sqrt()).norm() < 1e-8);
            rep.with_matrix(w, RepKind::Loop)
        })
        .collect())
}

/// `f(β) = ∏_l (μ + √c cos(2lθ + β)/cos θ)` with `θ = πk/n`.
pub fn f_beta(beta: f64, n: usize, k: usize, mu: f64, c: f64) -> f64 {
    let theta = std::f64::consts::PI * k as f64 / n as f64;
    let r = c.sqrt() / theta.cos();
    (0..n)
        .map(|l| mu + r * (2.0 * l as f64 * theta + beta).cos())
        .product()
}

/// `f(β) − (√c/cos θ)ⁿ (−½)^{n−1} cos nβ`, which does not depend on `β`.
pub fn f_beta_residual(beta: f64, n: usize, k: usize, mu: f64, c: f64) -> f64 {
    let theta = std::f64::consts::PI * k as f64 / n as f64;
    let r = c.sqrt() / theta.cos();
    f_beta(beta, n, k, mu, c)
        - r.powi(n as i32) * (-0.5f64).powi(n as i32 - 1) * (n as f64 * beta).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{block_diagonal, random_unitary};
    use crate::rep::{construct_loop_rep, construct_string_rep, LoopSpec, StringSpec};
    use rand::SeedableRng;
    use std::f64::consts::PI;

    #[test]
    fn index_examples() {
        let rep = construct_loop_rep(&LoopSpec::new(5, 1, 0.0), 1.3, 1.0).unwrap();
        let idx = rep_index(&rep).unwrap();
        let prod: f64 = (0..5).map(|i| rep.d()[(i, i)].re).product();
        assert!((idx.z - cx(prod.sqrt())).norm() < 1e-12);
        assert!(idx.power_residual < 1e-12);
        let phases = vec![PI / 2.0, PI / 4.0, 0.0, PI / 8.0, PI / 8.0];
        let neg =
            construct_loop_rep(&LoopSpec::new(5, 1, 0.0).with_phases(phases), 1.3, 1.0).unwrap();
        let z = rep_index(&neg).unwrap().z;
        assert!(z.re < 0.0 && z.im.abs() < 1e-12);
        let s = construct_string_rep(&StringSpec::with_casimir(3, PI / 6.0, 0.0, 1.0)).unwrap();
        assert_eq!(rep_index(&s), Err(Error::NotSingleLoop));
    }

    #[test]
    fn equivalence_examples() {
        let (n, k) = (9, 2);
        let a = construct_loop_rep(&LoopSpec::new(n, k, 0.3), 1.4, 1.0).unwrap();
        let b =
            construct_loop_rep(&LoopSpec::new(n, k, 0.3 + 2.0 * PI / n as f64), 1.4, 1.0).unwrap();
        assert!(reps_equivalent(&a, &b, 1e-10).unwrap());
        assert!(reps_equivalent(&a, &a, 1e-10).unwrap());
        let other = construct_loop_rep(&LoopSpec::new(n, k, 0.1), 1.4, 1.0).unwrap();
        assert!(!reps_equivalent(&a, &other, 1e-10).unwrap());
        let s = construct_string_rep(&StringSpec::solve(7, 0.5, 1.0).unwrap()).unwrap();
        assert_eq!(reps_equivalent(&a, &s, 1e-10), Err(Error::MixedKinds));
        assert!(reps_equivalent(&s, &s, 1e-10).unwrap());
    }

    #[test]
    fn canonicalize_block_loop() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let (n, m) = (5, 2);
        let blocks: Vec<CMatrix> = (0..n).map(|_| random_unitary(m, &mut rng)).collect();
        let rep =
            construct_loop_rep(&LoopSpec::new(n, 1, 0.2).with_blocks(blocks), 1.3, 1.0).unwrap();
        let parts = canonicalize_loop(&rep).unwrap();
        assert_eq!(parts.len(), 2);
        let mut got: Vec<Complex64> = parts.iter().map(|p| rep_index(p).unwrap().z).collect();
        // oracle: Wⁿ is block diagonal with blocks ∏ẽ^{1/2} times conjugates of H
        let wn = rep.w.pow(n as u32);
        let top = wn.view((0, 0), (m, m)).into_owned();
        let mut want: Vec<Complex64> = top
            .clone()
            .schur()
            .eigenvalues()
            .unwrap()
            .iter()
            .copied()
            .collect();
        let key = |z: &Complex64| z.arg();
        got.sort_by(|a, b| key(a).total_cmp(&key(b)));
        want.sort_by(|a, b| key(a).total_cmp(&key(b)));
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10, "{g} vs {w}");
        }
        for p in &parts {
            assert!(crate::rep::verify_relations(p).max_residual() < 1e-10);
        }

        // block-diagonal unitary conjugation keeps the indices
        let v = block_diagonal(
            &(0..n)
                .map(|_| random_unitary(m, &mut rng))
                .collect::<Vec<_>>()
                .iter()
                .collect::<Vec<_>>(),
        );
        let conj = rep.with_matrix(v.adjoint() * &rep.w * &v, rep.kind);
        let mut again: Vec<Complex64> = canonicalize_loop(&conj)
            .unwrap()
            .iter()
            .map(|p| rep_index(p).unwrap().z)
            .collect();
        again.sort_by(|a, b| key(a).total_cmp(&key(b)));
        for (g, w) in again.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10);
        }
    }

    #[test]
    fn single_loop_canonical_is_gauge() {
        let phases = vec![0.1, 0.2, 0.3, 0.4, 0.5];
        let rep =
            construct_loop_rep(&LoopSpec::new(5, 1, 0.0).with_phases(phases), 1.3, 1.0).unwrap();
        let parts = canonicalize_loop(&rep).unwrap();
        assert_eq!(parts.len(), 1);
        assert!((rep_index(&parts[0]).unwrap().z - rep_index(&rep).unwrap().z).norm() < 1e-12);
        let s = construct_string_rep(&StringSpec::solve(6, 0.5, 1.0).unwrap()).unwrap();
        assert_eq!(canonicalize_loop(&s), Err(Error::NotBlockCyclic));
    }

    #[test]
    fn f_beta_symmetries() {
        for &(n, k) in &[(7usize, 2usize), (9, 4)] {
            let (mu, c) = (1.7, 1.0);
            let p = 2.0 * PI / n as f64;
            let base = f_beta_residual(0.0, n, k, mu, c);
            for j in 0..10 {
                let b = 0.31 * j as f64 - 1.0;
                let f = f_beta(b, n, k, mu, c);
                assert!((f - f_beta(b + p, n, k, mu, c)).abs() < 1e-12 * f.abs());
                assert!((f - f_beta(p - b, n, k, mu, c)).abs() < 1e-12 * f.abs());
                assert!((f_beta_residual(b, n, k, mu, c) - base).abs() < 1e-12 * f.abs());
            }
        }
    }
}
