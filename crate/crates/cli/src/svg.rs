//! Bare-bones scatter plots: index against eigenvalue and against gap.

use std::fmt::Write as _;

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];
const W: f64 = 420.0;
const H: f64 = 300.0;
const PAD: f64 = 40.0;

pub struct Series {
    pub label: String,
    pub values: Vec<f64>,
}

fn panel(out: &mut String, x0: f64, title: &str, ylabel: &str, series: &[Series]) {
    let all: Vec<f64> = series
        .iter()
        .flat_map(|s| s.values.iter().copied())
        .collect();
    let n = series
        .iter()
        .map(|s| s.values.len())
        .max()
        .unwrap_or(0)
        .max(2);
    let (lo, hi) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let (lo, hi) = if lo.is_finite() && hi > lo {
        (lo, hi)
    } else {
        (-1.0, 1.0)
    };
    let sx = |i: usize| x0 + PAD + (W - 2.0 * PAD) * i as f64 / (n - 1) as f64;
    let sy = |v: f64| H - PAD - (H - 2.0 * PAD) * (v - lo) / (hi - lo);
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        x0 + PAD,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle">{title}</text>"#,
        x0 + W / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">i</text>"#,
        x0 + W / 2.0,
        H - 8.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" transform="rotate(-90 {} {})" text-anchor="middle">{ylabel}</text>"#,
        x0 + 12.0,
        H / 2.0,
        x0 + 12.0,
        H / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="10">{hi:.3}</text>"#,
        x0 + 2.0,
        PAD + 4.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="10">{lo:.3}</text>"#,
        x0 + 2.0,
        H - PAD
    );
    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        for (i, &v) in s.values.iter().enumerate() {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#,
                sx(i),
                sy(v)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="10" fill="{color}">{}</text>"#,
            x0 + W - PAD - 60.0,
            PAD + 14.0 + 12.0 * k as f64,
            s.label
        );
    }
}

/// Two panels side by side: `λ_i` and `λ_{i+1} − λ_i` against `i`.
pub fn spectrum_svg(eigs: &[Series], gaps: &[Series]) -> String {
    let mut out = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{H}" font-family="sans-serif">"#,
        2.0 * W
    );
    out.push('\n');
    panel(&mut out, 0.0, "eigenvalues", "lambda_i", eigs);
    panel(&mut out, W, "gaps", "lambda_(i+1) - lambda_i", gaps);
    out.push_str("</svg>\n");
    out
}
