//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p ncsurf --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncsurf::bt::{bt_matrices, compare_with_loop_rep, verify_bt_relations, BTSpec};
use ncsurf::exact::{int, rational, Rational};
use ncsurf::free_algebra::{
    build_torus_system, casimir_residuals, check_consistency_identity, check_overlap_resolvable,
    consistency_residual, phi_x_mixed, phi_y, torus_overlap, AlgebraParams,
};
use ncsurf::linalg::{permute, CMatrix};
use ncsurf::rep::{
    construct_loop_rep, construct_string_rep, f_beta, f_beta_residual, rep_index, reps_equivalent,
    verify_relations, LoopSpec, RepKind, Representation, StringSpec,
};
use ncsurf::spectral::{commutator_vs_bracket, sweep_mu, two_branch_width, SweepParams};
use ncsurf::surface::{
    build_genus_polynomial, count_simple_roots, euler_characteristic, CommPolynomial3, UPoly,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const AC1_TIME: Duration = Duration::from_secs(1);
const AC4_TIME: Duration = Duration::from_secs(2);
const AC5_TOL: f64 = 1e-10;
const AC7_POWER_TOL: f64 = 1e-10;
const AC7_EQUIV_TOL: f64 = 1e-9;
const AC7_TRACE_TOL: f64 = 1e-8;
const AC8_TOL: f64 = 1e-12;
const AC9_RESIDUAL_PER_N: f64 = 1e-12;
const AC9_EQUIV_TOL: f64 = 1e-10;
const AC10_EXACT_TOL: f64 = 1e-10;
const AC10_RATIO: f64 = 0.25;

type Outcome = Result<String, String>;

fn random_params(rng: &mut StdRng) -> (Rational, Rational) {
    let mu = rational(rng.gen_range(-20..=20), rng.gen_range(1..=20));
    let q = rng.gen_range(2..=30);
    let h2 = rational(rng.gen_range(1..q), q);
    (mu, h2)
}

fn ac1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    for _ in 0..20 {
        let (mu, h2) = random_params(&mut rng);
        let params = AlgebraParams::new(mu.clone(), h2.clone()).map_err(|e| e.to_string())?;
        let check = check_overlap_resolvable(&build_torus_system(&params), &torus_overlap())
            .map_err(|e| e.to_string())?;
        if !check.witness.is_zero() || !check.resolvable {
            return Err(format!("mu={mu}, hbar^2={h2}: witness {}", check.witness));
        }
    }
    let t = start.elapsed();
    if t >= AC1_TIME {
        return Err(format!("20 pairs took {t:?}"));
    }
    Ok(format!("20/20 witnesses exactly 0 in {t:?}"))
}

fn ac2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let h2 = rational(1, 3);
    let torus = vec![-rational(7, 5), int(0), int(1)];
    if !check_consistency_identity(&torus, &h2).map_err(|e| e.to_string())? {
        return Err("x^2 - mu fails".into());
    }
    for trial in 0..20 {
        let deg = rng.gen_range(1..=8usize);
        let mut p: Vec<Rational> = (0..=deg)
            .map(|_| rational(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
            .collect();
        if p[deg] == int(0) {
            p[deg] = int(1);
        }
        let h2 = rational(rng.gen_range(1..10), 10);
        if !check_consistency_identity(&p, &h2).map_err(|e| e.to_string())? {
            return Err(format!("trial {trial}: identity fails"));
        }
        let mut outer = p.clone();
        let r = rng.gen_range(1..=deg);
        outer[r] = &outer[r] + rational(1, rng.gen_range(1..=5));
        if consistency_residual(&phi_x_mixed(&outer, &p, &h2), &phi_y(&p, &h2)).is_zero() {
            return Err(format!(
                "trial {trial}: perturbing a_{r} left the identity intact"
            ));
        }
    }
    Ok("x^2 - mu and 20 random P hold exactly, 20/20 perturbations break it".into())
}

fn ac3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..20 {
        let (mu, h2) = random_params(&mut rng);
        let params = AlgebraParams::new(mu.clone(), h2.clone()).map_err(|e| e.to_string())?;
        let weight = Rational::from_integer(1.into()) / &h2;
        let res = casimir_residuals(&params, &weight).map_err(|e| e.to_string())?;
        if let Some(k) = res.iter().position(|r| !r.is_zero()) {
            return Err(format!("mu={mu}, hbar^2={h2}: residual {k} = {}", res[k]));
        }
    }
    Ok("[W,C], [V,C], [D,D~] reduce to 0 for 20/20 pairs".into())
}

fn ac4() -> Outcome {
    let start = Instant::now();
    let mu = int(1);
    let mut chis = Vec::new();
    for (g, alpha) in [
        (1u32, rational(1, 10)),
        (2, rational(1, 10)),
        (3, rational(1, 100)),
        (4, rational(1, 1000)),
    ] {
        let spec = build_genus_polynomial(g, &mu, &alpha).map_err(|e| e.to_string())?;
        let data = euler_characteristic(&spec).map_err(|e| e.to_string())?;
        let up = count_simple_roots(&spec.p.sub(&UPoly::constant(mu.clone())));
        let down = count_simple_roots(&spec.p.add(&UPoly::constant(mu.clone())));
        let want_chi = 2 - 2 * g as i64;
        if data.chi != want_chi
            || up.total_real != 2
            || down.total_real != 2 * g as usize
            || !up.all_simple
            || !down.all_simple
        {
            return Err(format!(
                "g={g}: chi={} (want {want_chi}), #{{P=mu}}={}, #{{P=-mu}}={}",
                data.chi, up.total_real, down.total_real
            ));
        }
        chis.push(data.chi);
    }
    let t = start.elapsed();
    if t >= AC4_TIME {
        return Err(format!("took {t:?}"));
    }
    Ok(format!("chi = {chis:?} for g = 1..4 in {t:?}"))
}

fn ac5() -> Outcome {
    let mut reps = Vec::new();
    for mu in [1.1, 1.3] {
        reps.push(
            construct_loop_rep(&LoopSpec::new(30, 1, 0.0), mu, 1.0).map_err(|e| e.to_string())?,
        );
    }
    let spec = StringSpec::solve(30, 0.9, 1.0).map_err(|e| e.to_string())?;
    reps.push(construct_string_rep(&spec).map_err(|e| e.to_string())?);
    let mut worst: f64 = 0.0;
    for rep in &reps {
        let r = verify_relations(rep);
        let dc = (r.c_estimate - rep.c).abs();
        let m = r
            .residual_wwd
            .max(r.residual_casimir)
            .max(r.intertwine_residual);
        if m > AC5_TOL || dc > AC5_TOL {
            return Err(format!(
                "mu={}: residual {m:e}, |c_est - c| = {dc:e}",
                rep.mu
            ));
        }
        worst = worst.max(m).max(dc);
    }
    Ok(format!("3 reps, worst residual {worst:.2e}"))
}

fn ac6() -> Outcome {
    let table = sweep_mu(&[0.9, 1.1, 1.3], &SweepParams::new(1.0, 30));
    let mut pats = Vec::new();
    for e in &table.entries {
        let r = e
            .result
            .as_ref()
            .map_err(|err| format!("mu={}: {err}", e.mu))?;
        pats.push(r.branch_pattern());
    }
    let want = [
        vec![Some(1)],
        vec![Some(1), Some(2), Some(1)],
        vec![Some(1), Some(2), Some(1)],
    ];
    if pats != want {
        return Err(format!("patterns {pats:?}"));
    }
    let (w11, w13) = (two_branch_width(1.1, 1.0), two_branch_width(1.3, 1.0));
    if !(w11 < w13) {
        return Err(format!("widths {w11} vs {w13}"));
    }
    Ok(format!(
        "patterns (1), (1,2,1), (1,2,1); widths {w11:.4} < {w13:.4}"
    ))
}

/// Traces of all words in `W, W†` of length 1..=`max_len`.
fn trace_words(w: &CMatrix, max_len: usize) -> Vec<Complex64> {
    let wd = w.adjoint();
    let n = w.nrows();
    let mut layer = vec![CMatrix::identity(n, n)];
    let mut out = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for m in &layer {
            for f in [w, &wd] {
                let p = m * f;
                out.push(p.trace());
                next.push(p);
            }
        }
        layer = next;
    }
    out
}

fn traces_agree(a: &Representation, b: &Representation) -> bool {
    let ta = trace_words(&a.w, a.dim());
    let tb = trace_words(&b.w, b.dim());
    ta.iter()
        .zip(&tb)
        .all(|(x, y)| (x - y).norm() <= AC7_TRACE_TOL * x.norm().max(1.0))
}

fn random_loop(rng: &mut StdRng) -> (LoopSpec, f64, f64) {
    let (n, k) = [(5, 1), (7, 1), (9, 1), (9, 2), (11, 1), (11, 2)][rng.gen_range(0..6)];
    let theta = PI * k as f64 / n as f64;
    let c: f64 = rng.gen_range(0.5..2.0);
    let mu = c.sqrt() / theta.cos() * rng.gen_range(1.05..2.0);
    let phases = (0..n).map(|_| rng.gen_range(-PI..PI)).collect();
    let spec = LoopSpec::new(n, k, rng.gen_range(-PI..PI)).with_phases(phases);
    (spec, mu, c)
}

fn ac7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let (spec, mu, c) = random_loop(&mut rng);
        let rep = construct_loop_rep(&spec, mu, c).map_err(|e| e.to_string())?;
        let idx = rep_index(&rep).map_err(|e| e.to_string())?;
        if idx.power_residual > AC7_POWER_TOL {
            return Err(format!(
                "n={}: |W^n - zI| = {:e}",
                spec.n, idx.power_residual
            ));
        }
        worst = worst.max(idx.power_residual);
    }
    let mut agree = 0;
    let mut equivalent = 0;
    for trial in 0..10 {
        let (spec, mu, c) = random_loop(&mut rng);
        let a = construct_loop_rep(&spec, mu, c).map_err(|e| e.to_string())?;
        let n = spec.n;
        let shift = rng.gen_range(0..n) as f64;
        let mut phases = spec.phases.clone();
        let same = trial % 2 == 0;
        // redistribute phases; keep the sum for equivalent pairs
        let moved: f64 = rng.gen_range(-1.0..1.0);
        phases[0] += moved;
        phases[1] -= if same {
            moved
        } else {
            moved + rng.gen_range(0.3..2.5)
        };
        let b_spec =
            LoopSpec::new(n, spec.k, spec.beta + 2.0 * PI * shift / n as f64).with_phases(phases);
        let b = construct_loop_rep(&b_spec, mu, c).map_err(|e| e.to_string())?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(rng.gen_range(0..n));
        let b = b.with_matrix(permute(&b.w, &perm), RepKind::Loop);
        let predicate = reps_equivalent(&a, &b, AC7_EQUIV_TOL).map_err(|e| e.to_string())?;
        let oracle = traces_agree(&a, &b);
        if predicate != oracle {
            return Err(format!(
                "pair {trial}: predicate {predicate}, trace oracle {oracle}"
            ));
        }
        agree += 1;
        equivalent += predicate as usize;
    }
    Ok(format!(
        "10 specs, worst |W^n - zI| {worst:.1e}; {agree}/10 pairs agree ({equivalent} equivalent)"
    ))
}

fn ac8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let (mu, c) = (1.7, 1.0);
    for (n, k) in [(7usize, 2usize), (9, 4)] {
        let p = 2.0 * PI / n as f64;
        let base = f_beta_residual(0.0, n, k, mu, c);
        for _ in 0..10 {
            let b: f64 = rng.gen_range(-PI..PI);
            let f = f_beta(b, n, k, mu, c);
            let scale = f.abs().max(1.0);
            let per = (f - f_beta(b + p, n, k, mu, c)).abs() / scale;
            let refl = (f - f_beta(p - b, n, k, mu, c)).abs() / scale;
            let flat = (f_beta_residual(b, n, k, mu, c) - base).abs() / base.abs().max(1.0);
            if per > AC8_TOL || refl > AC8_TOL || flat > AC8_TOL {
                return Err(format!(
                    "(n,k)=({n},{k}), beta={b}: {per:e} {refl:e} {flat:e}"
                ));
            }
        }
    }
    Ok("periodicity, reflection and constant residual hold for (7,2), (9,4)".into())
}

fn ac9() -> Outcome {
    let mut worst_ratio: f64 = 0.0;
    for n in 5..=64 {
        let spec = BTSpec::new(1.3, 1.0, n);
        let bt = bt_matrices(&spec).map_err(|e| e.to_string())?;
        let r = verify_bt_relations(&bt.x, &bt.y, &bt.z, &spec);
        if r.max() > AC9_RESIDUAL_PER_N * n as f64 {
            return Err(format!("N={n}: residuals {:?}", r.as_array()));
        }
        worst_ratio = worst_ratio.max(r.max() / n as f64);
    }
    let exact = compare_with_loop_rep(&BTSpec::unit_casimir(1.3, 30)).map_err(|e| e.to_string())?;
    if exact.max_entry_diff > AC9_EQUIV_TOL || !exact.equivalent {
        return Err(format!(
            "nu = 1/cos: max entry diff {:e}",
            exact.max_entry_diff
        ));
    }
    let mut gaps = Vec::new();
    for n in [10, 20, 40, 80] {
        let cmp = compare_with_loop_rep(&BTSpec::new(1.3, 1.0, n)).map_err(|e| e.to_string())?;
        gaps.push(cmp.unit_casimir_gap);
    }
    if !gaps.windows(2).all(|w| w[1] < w[0]) {
        return Err(format!("nu = 1 gaps not decreasing: {gaps:?}"));
    }
    Ok(format!(
        "max residual/N {worst_ratio:.1e}; exact diff {:.1e}; nu=1 gaps {:.2e} -> {:.2e}",
        exact.max_entry_diff, gaps[0], gaps[3]
    ))
}

fn ac10() -> Outcome {
    let reps: Vec<Representation> = [10, 20, 40, 80]
        .iter()
        .map(|&n| construct_loop_rep(&LoopSpec::new(n, 1, 0.0), 1.3, 1.0))
        .collect::<ncsurf::Result<_>>()
        .map_err(|e| e.to_string())?;
    let poly = |s: &str| CommPolynomial3::parse(s).unwrap();
    let xy = commutator_vs_bracket(&poly("x"), &poly("y"), &reps).map_err(|e| e.to_string())?;
    if let Some(e) = xy.iter().find(|e| e.error > AC10_EXACT_TOL) {
        return Err(format!("(x, y) at N={}: {:e}", e.n, e.error));
    }
    let q = commutator_vs_bracket(&poly("x^2"), &poly("y^2"), &reps).map_err(|e| e.to_string())?;
    let errs: Vec<f64> = q.iter().map(|e| e.error).collect();
    if !errs.windows(2).all(|w| w[1] < w[0]) || errs[3] > AC10_RATIO * errs[0] {
        return Err(format!("(x^2, y^2) errors {errs:?}"));
    }
    Ok(format!(
        "(x,y) exact; (x^2,y^2) errors {}",
        errs.iter()
            .map(|e| format!("{e:.2e}"))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Outcome); 10] = [
        ("overlap W^2V^2 resolvable", ac1),
        ("genus-g consistency identity", ac2),
        ("Casimir centrality", ac3),
        ("Morse counts and genus", ac4),
        ("loop and string relations", ac5),
        ("eigenvalue branching", ac6),
        ("loop index and equivalence", ac7),
        ("f(beta) structure", ac8),
        ("Berezin-Toeplitz relations and loop match", ac9),
        ("commutator vs bracket convergence", ac10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in checks.iter().enumerate() {
        match run() {
            Ok(msg) => println!("[PASS] AC{} {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {msg}", k + 1);
            }
        }
    }
    println!(
        "{} passed, {failed} failed in {:?}",
        checks.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
