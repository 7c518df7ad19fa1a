use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ncsurf::bt::{bt_matrices, compare_with_loop_rep, verify_bt_relations, BTSpec};
use ncsurf::exact::Rational;
use ncsurf::free_algebra::{
    build_torus_system, casimir_centrality, check_overlap_resolvable, torus_overlap, AlgebraParams,
};
use ncsurf::linalg::CMatrix;
use ncsurf::rep::{
    classify_regime, decompose_with_indices, graph_classify, matrix_graph, rep_builders, rep_index,
    verify_relations, BuildRequest, RepKind, Representation,
};
use ncsurf::spectral::{
    commutator_vs_bracket, eigen_solvers, fmt_f64, position_spectrum_with, spectrum_csv_rows,
    sweep_mu, sweep_representation, SpectrumReport, SweepParams, CSV_HEADER,
};
use ncsurf::surface::{
    build_genus_polynomial, euler_characteristic, CommPolynomial3, SurfaceSpec, UPoly,
};
use ncsurf::Error;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::svg::{spectrum_svg, Series};
use crate::{
    BtArgs, Cli, Command, ConfluenceArgs, ConvergeArgs, Failure, GenusArgs, NuArg, RepArgs,
    RepCommand, SpectrumArgs, SweepArgs,
};

type Outcome = Result<(), Failure>;

/// Error text, naming the responsible flag where one is evident.
pub fn describe(e: &Error) -> String {
    let flag = match e {
        Error::NTooSmall(_) => Some("n"),
        Error::InvalidParameter { name, .. } => Some(*name),
        Error::AlphaOutOfRange { .. } => Some("alpha"),
        Error::UnknownStrategy { kind, .. } if *kind == "eigensolver" => Some("solver"),
        Error::UnknownStrategy { .. } => Some("kind"),
        Error::NoRoot | Error::WindowViolation => Some("mu"),
        Error::ComplexSqrt(_) | Error::RegimeMismatch => Some("nu"),
        Error::NegativeMu(_) => Some("mu"),
        Error::DegreeTooHigh(_) => Some("f"),
        _ => None,
    };
    match flag {
        Some(f) => format!("--{f}: {e}"),
        None => e.to_string(),
    }
}

fn usage(flag: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("--{flag}: {e}"))
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable report")
    );
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents)
        .map_err(|e| Failure::Check(format!("writing {}: {e}", path.display())))
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Genus(a) => genus(a, cli.json),
        Command::Confluence(a) => confluence(a, cli.json),
        Command::Rep(RepCommand::Construct(a)) => rep_construct(a, cli.json),
        Command::Rep(RepCommand::Verify(a)) => rep_verify(a, cli.json),
        Command::Rep(RepCommand::Classify(a)) => rep_classify(a, cli.json),
        Command::Spectrum(a) => spectrum(a, cli.json),
        Command::Sweep(a) => sweep(a, cli.json),
        Command::Bt(a) => bt(a, cli.json),
        Command::Converge(a) => converge(a, cli.json),
    }
}

fn genus(a: &GenusArgs, as_json: bool) -> Outcome {
    let spec = match (&a.g, &a.coeffs) {
        (Some(g), _) => {
            let alpha = a
                .alpha
                .as_ref()
                .ok_or_else(|| Failure::Usage("--alpha is required with --g".into()))?;
            build_genus_polynomial(*g, &a.mu.exact, &alpha.exact)?
        }
        (None, Some(c)) => {
            let p = UPoly::new(c.iter().map(|n| n.exact.clone()).collect());
            SurfaceSpec::general(p, a.mu.exact.clone()).map_err(usage("coeffs"))?
        }
        (None, None) => return Err(Failure::Usage("give --g or --coeffs".into())),
    };
    let data = euler_characteristic(&spec)?;
    let report = json!({
        "mu": a.mu.text,
        "alpha": a.alpha.as_ref().map(|x| x.text.clone()),
        "p": spec.p.to_string(),
        "g_max": spec.g_max.as_ref().map(Rational::to_string),
        "n_plus": data.n_plus,
        "n_minus": data.n_minus,
        "chi": data.chi,
        "genus": data.genus,
        "critical_x": data.critical_x,
    });
    if as_json {
        print_json(&report);
    } else {
        println!("P(x) = {}", spec.p);
        println!(
            "critical points: {} with P > 0, {} with P < 0",
            data.n_plus, data.n_minus
        );
        println!("chi: {}, genus: {}", data.chi, data.genus);
    }
    match a.g {
        Some(g) if g != data.genus => Err(Failure::Check(format!(
            "built for genus {g}, found {}",
            data.genus
        ))),
        _ => Ok(()),
    }
}

fn confluence(a: &ConfluenceArgs, as_json: bool) -> Outcome {
    let params =
        AlgebraParams::new(a.mu.exact.clone(), a.hbar2.exact.clone()).map_err(usage("hbar2"))?;
    let check = check_overlap_resolvable(&build_torus_system(&params), &torus_overlap())?;
    let central = casimir_centrality(&params)?;
    if as_json {
        print_json(&json!({
            "mu": a.mu.text,
            "hbar2": a.hbar2.text,
            "overlap": torus_overlap().to_string(),
            "resolvable": check.resolvable,
            "witness": check.witness.to_string(),
            "normal_forms": check.normal_forms.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "casimir_central": central,
        }));
    } else {
        println!(
            "resolvable: {}, witness: {}",
            check.resolvable, check.witness
        );
        println!("casimir central: {central}");
    }
    if !check.resolvable {
        return Err(Failure::Check(format!("overlap witness {}", check.witness)));
    }
    if !central {
        return Err(Failure::Check("Casimir element is not central".into()));
    }
    Ok(())
}

/// On-disk form of a representation; `w` is row-major `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct RepFile {
    kind: String,
    n: usize,
    mu: f64,
    c: f64,
    theta: f64,
    regime: String,
    w: Vec<Vec<[f64; 2]>>,
}

fn kind_name(k: RepKind) -> String {
    match k {
        RepKind::Loop => "loop".into(),
        RepKind::BlockLoop { block_dim } => format!("block-loop:{block_dim}"),
        RepKind::String => "string".into(),
        RepKind::Degenerate => "degenerate".into(),
        RepKind::General => "general".into(),
    }
}

fn parse_kind(s: &str) -> Result<RepKind, Failure> {
    Ok(match s {
        "loop" => RepKind::Loop,
        "string" => RepKind::String,
        "degenerate" => RepKind::Degenerate,
        "general" => RepKind::General,
        _ => match s.strip_prefix("block-loop:").and_then(|m| m.parse().ok()) {
            Some(block_dim) => RepKind::BlockLoop { block_dim },
            None => return Err(Failure::Usage(format!("--in: unknown kind `{s}`"))),
        },
    })
}

impl RepFile {
    fn from_rep(rep: &Representation) -> Self {
        let n = rep.dim();
        RepFile {
            kind: kind_name(rep.kind),
            n,
            mu: rep.mu,
            c: rep.c,
            theta: rep.theta,
            regime: rep.regime.as_str().into(),
            w: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| [rep.w[(i, j)].re, rep.w[(i, j)].im])
                        .collect()
                })
                .collect(),
        }
    }

    fn into_rep(self) -> Result<Representation, Failure> {
        let n = self.w.len();
        if self.w.iter().any(|row| row.len() != n) {
            return Err(Failure::Usage("--in: matrix is not square".into()));
        }
        let w = CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(self.w[i][j][0], self.w[i][j][1])
        });
        Ok(Representation {
            w,
            mu: self.mu,
            c: self.c,
            theta: self.theta,
            regime: classify_regime(self.mu, self.c, self.theta),
            kind: parse_kind(&self.kind)?,
        })
    }
}

fn load_or_build(a: &RepArgs) -> Result<Representation, Failure> {
    if let Some(path) = &a.input {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("--in: {}: {e}", path.display())))?;
        let file: RepFile =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--in: {e}")))?;
        return file.into_rep();
    }
    let kind = a
        .kind
        .as_deref()
        .ok_or_else(|| Failure::Usage("--kind or --in is required".into()))?;
    let mu =
        a.mu.as_ref()
            .ok_or_else(|| Failure::Usage("--mu is required".into()))?;
    let builders = rep_builders();
    let builder = builders.get(kind)?;
    let req = BuildRequest {
        n: a.n,
        k: a.k,
        mu: mu.f64(),
        c: a.c.f64(),
        beta: a.beta.f64(),
        theta: a.theta.as_ref().map(|t| t.f64()),
        phases: a
            .phases
            .as_ref()
            .map(|p| p.iter().map(|x| x.f64()).collect()),
    };
    Ok(builder.build(&req)?)
}

fn rep_construct(a: &RepArgs, as_json: bool) -> Outcome {
    let rep = load_or_build(a)?;
    let report = verify_relations(&rep);
    let file = RepFile::from_rep(&rep);
    let text = serde_json::to_string_pretty(&file).expect("serializable representation");
    match &a.out {
        Some(path) => write_file(path, &(text.clone() + "\n"))?,
        None if as_json => println!("{text}"),
        None => {}
    }
    if !as_json || a.out.is_some() {
        println!(
            "{} representation, N = {}, regime {}, max residual {:e}",
            file.kind,
            rep.dim(),
            file.regime,
            report.max_residual()
        );
    }
    check_report(&report, a.tol)
}

fn check_report(report: &ncsurf::rep::RelationReport, tol: f64) -> Outcome {
    if report.passes(tol) {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "max residual {:e} exceeds {tol:e}",
            report.max_residual()
        )))
    }
}

fn rep_verify(a: &RepArgs, as_json: bool) -> Outcome {
    let rep = load_or_build(a)?;
    let report = verify_relations(&rep);
    if as_json {
        print_json(
            &json!({ "c": rep.c, "tol": a.tol, "passes": report.passes(a.tol), "report": report }),
        );
    } else {
        println!("residual_wwd        {:e}", report.residual_wwd);
        println!("residual_casimir    {:e}", report.residual_casimir);
        println!("intertwine_residual {:e}", report.intertwine_residual);
        println!("residual_yz         {:e}", report.residual_yz);
        println!("residual_zx         {:e}", report.residual_zx);
        println!("z_hermitian_defect  {:e}", report.z_hermitian_defect);
        println!("edge_residual       {:e}", report.edge_residual);
        println!(
            "c_estimate          {} (target {})",
            report.c_estimate, rep.c
        );
    }
    check_report(&report, a.tol)
}

fn rep_classify(a: &RepArgs, as_json: bool) -> Outcome {
    if a.kind.is_none() && a.input.is_none() {
        return classify_parameters(a, as_json);
    }
    let rep = load_or_build(a)?;
    let g = matrix_graph(&rep.w, None);
    let cl = graph_classify(&g, &rep).map_err(|e| Failure::Check(e.to_string()))?;
    let parts: Vec<_> = decompose_with_indices(&rep)
        .into_iter()
        .map(|(idx, part)| {
            let index = rep_index(&part).ok().map(|i| [i.z.re, i.z.im]);
            json!({ "rows": idx, "kind": kind_name(part.kind), "index": index })
        })
        .collect();
    if as_json {
        print_json(&json!({ "edges": g.edges, "classification": cl, "components": parts }));
    } else {
        println!(
            "{} edges, {} components",
            g.edges.len(),
            cl.components.len()
        );
        for c in &cl.components {
            println!("  {:?}: {:?}", c.kind, c.vertices);
        }
        println!("transmitters: {:?}", cl.transmitters);
        println!("receivers: {:?}", cl.receivers);
    }
    Ok(())
}

/// Regime of `(mu, c, theta)` alone, no matrix involved.
fn classify_parameters(a: &RepArgs, as_json: bool) -> Outcome {
    let mu =
        a.mu.as_ref()
            .ok_or_else(|| Failure::Usage("--mu is required".into()))?;
    let theta = a
        .theta
        .as_ref()
        .map_or(std::f64::consts::PI / a.n as f64, |t| t.f64());
    let regime = classify_regime(mu.f64(), a.c.f64(), theta);
    if as_json {
        print_json(
            &json!({ "mu": mu.text, "c": a.c.text, "theta": theta, "regime": regime.as_str() }),
        );
    } else {
        println!("{}", regime.as_str());
    }
    Ok(())
}

fn pattern_text(r: &SpectrumReport) -> String {
    let parts: Vec<String> = r
        .branch_pattern()
        .iter()
        .map(|b| b.map_or("?".to_string(), |v| v.to_string()))
        .collect();
    format!("({})", parts.join(","))
}

fn spectrum(a: &SpectrumArgs, as_json: bool) -> Outcome {
    let rep = load_or_build(&a.rep)?;
    let solvers = eigen_solvers();
    let solver = solvers.get(&a.solver)?;
    let r = position_spectrum_with(&rep, a.threshold, solver)?;
    let mut csv = format!("{CSV_HEADER}\n");
    spectrum_csv_rows(&r, &mut csv);
    if let Some(path) = &a.rep.out {
        write_file(path, &csv)?;
    }
    if let Some(path) = &a.svg {
        let label = format!("mu={}", fmt_short(r.mu));
        let svg = spectrum_svg(
            &[Series {
                label: label.clone(),
                values: r.eigenvalues.clone(),
            }],
            &[Series {
                label,
                values: r.gaps.clone(),
            }],
        );
        write_file(path, &svg)?;
    }
    if as_json {
        print_json(&r);
    } else if a.rep.out.is_none() {
        print!("{csv}");
    } else {
        println!("N = {}, branches {}", r.n, pattern_text(&r));
    }
    Ok(())
}

fn fmt_short(x: f64) -> String {
    format!("{x}")
}

fn sweep(a: &SweepArgs, as_json: bool) -> Outcome {
    let params = SweepParams {
        c: a.c.f64(),
        n: a.n,
        beta: a.beta.f64(),
        threshold: a.threshold,
        workers: a.workers,
    };
    let mus: Vec<f64> = a.mu.iter().map(|m| m.f64()).collect();
    let table = sweep_mu(&mus, &params);
    let csv = table.to_csv();
    if let Some(path) = &a.out {
        write_file(path, &csv)?;
    }
    if let Some(path) = &a.svg {
        let ok: Vec<&SpectrumReport> = table
            .entries
            .iter()
            .filter_map(|e| e.result.as_ref().ok())
            .collect();
        let series = |f: fn(&SpectrumReport) -> Vec<f64>| -> Vec<Series> {
            ok.iter()
                .map(|r| Series {
                    label: format!("mu={}", fmt_short(r.mu)),
                    values: f(r),
                })
                .collect()
        };
        write_file(
            path,
            &spectrum_svg(
                &series(|r| r.eigenvalues.clone()),
                &series(|r| r.gaps.clone()),
            ),
        )?;
    }
    let mut summary = String::new();
    let mut rows = Vec::new();
    for (e, m) in table.entries.iter().zip(&a.mu) {
        match &e.result {
            Ok(r) => {
                let _ = writeln!(summary, "mu = {}: branches {}", m.text, pattern_text(r));
                rows.push(json!({ "mu": m.text, "pattern": r.branch_pattern(), "intervals": r.intervals }));
            }
            Err(err) => {
                let _ = writeln!(summary, "mu = {}: error: {err}", m.text);
                rows.push(json!({ "mu": m.text, "error": err.to_string() }));
            }
        }
    }
    if as_json {
        print_json(&json!({ "n": a.n, "c": a.c.text, "rows": table.data_rows(), "entries": rows }));
    } else if a.out.is_none() {
        print!("{csv}");
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn bt(a: &BtArgs, as_json: bool) -> Outcome {
    let spec = match &a.nu {
        NuArg::Auto => BTSpec::unit_casimir(a.mu.f64(), a.n),
        NuArg::Value(v) => BTSpec::new(a.mu.f64(), v.f64(), a.n),
    };
    let m = bt_matrices(&spec)?;
    let res = verify_bt_relations(&m.x, &m.y, &m.z, &spec);
    let cmp = compare_with_loop_rep(&spec)?;
    if as_json {
        print_json(&json!({
            "n": spec.n,
            "mu": a.mu.text,
            "nu": spec.nu,
            "residuals": res.as_array(),
            "loop_comparison": cmp,
        }));
    } else {
        println!("residuals [xy, yz, zx, casimir]: {:?}", res.as_array());
        println!(
            "loop comparison: max entry diff {:e}, equivalent {}, c = {}",
            cmp.max_entry_diff, cmp.equivalent, cmp.c
        );
        println!("gap to the c = nu^2 loop: {:e}", cmp.unit_casimir_gap);
    }
    let bound = a.tol * spec.n as f64;
    if res.max() > bound {
        return Err(Failure::Check(format!(
            "residual {:e} exceeds {bound:e}",
            res.max()
        )));
    }
    if !cmp.equivalent {
        return Err(Failure::Check(format!(
            "loop mismatch {:e}",
            cmp.max_entry_diff
        )));
    }
    Ok(())
}

fn converge(a: &ConvergeArgs, as_json: bool) -> Outcome {
    let f = CommPolynomial3::parse(&a.f).map_err(usage("f"))?;
    let g = CommPolynomial3::parse(&a.g).map_err(usage("g"))?;
    let reps =
        a.ns.iter()
            .map(|&n| sweep_representation(a.mu.f64(), a.c.f64(), n, 0.0))
            .collect::<ncsurf::Result<Vec<_>>>()?;
    let errs = commutator_vs_bracket(&f, &g, &reps)?;
    if as_json {
        print_json(&json!({ "f": a.f, "g": a.g, "mu": a.mu.text, "errors": errs }));
    } else {
        println!("N,error");
        for e in &errs {
            println!("{},{}", e.n, fmt_f64(e.error));
        }
    }
    Ok(())
}
