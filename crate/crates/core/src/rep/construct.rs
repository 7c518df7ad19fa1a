//! Closed-form loop, string and degenerate representations.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::{c as cx, CMatrix};
use crate::registry::{Named, Registry};

use super::ellipse::{classify_regime, Regime};
use super::representation::{RepKind, Representation};

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < FRAC_PI_4 {
        Ok(())
    } else {
        Err(Error::DomainError(format!(
            "theta = {theta} must lie in (0, pi/4) so that 0 < hbar < 1"
        )))
    }
}

fn check_phases(phases: &[f64], want: usize) -> Result<()> {
    if phases.len() == want {
        Ok(())
    } else {
        Err(Error::invalid(
            "phases",
            format!("expected {want} phases, got {}", phases.len()),
        ))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LoopSpec {
    pub n: usize,
    /// `θ = πk/n` with `gcd(k, n) = 1`.
    pub k: usize,
    pub beta: f64,
    /// `α_0, …, α_{n−1}`.
    pub phases: Vec<f64>,
    /// Optional `m × m` unitaries `U_0, …, U_{n−1}` for a block loop.
    pub blocks: Option<Vec<CMatrix>>,
}

impl LoopSpec {
    pub fn new(n: usize, k: usize, beta: f64) -> Self {
        LoopSpec {
            n,
            k,
            beta,
            phases: vec![0.0; n],
            blocks: None,
        }
    }

    pub fn with_phases(mut self, phases: Vec<f64>) -> Self {
        self.phases = phases;
        self
    }

    pub fn with_blocks(mut self, blocks: Vec<CMatrix>) -> Self {
        self.blocks = Some(blocks);
        self
    }

    pub fn theta(&self) -> f64 {
        PI * self.k as f64 / self.n as f64
    }

    pub fn block_dim(&self) -> usize {
        self.blocks.as_ref().map_or(1, |b| b[0].nrows())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 5 {
            return Err(Error::NTooSmall(self.n));
        }
        if self.k == 0 || self.n.gcd(&self.k) != 1 {
            return Err(Error::invalid(
                "k",
                format!("need gcd(k, n) = 1, got k = {}", self.k),
            ));
        }
        check_theta(self.theta())?;
        check_phases(&self.phases, self.n)?;
        if let Some(blocks) = &self.blocks {
            let m = self.block_dim();
            if blocks.len() != self.n || blocks.iter().any(|b| b.nrows() != m || b.ncols() != m) {
                return Err(Error::invalid(
                    "blocks",
                    "need n square blocks of equal size",
                ));
            }
            for b in blocks {
                if (b.adjoint() * b - CMatrix::identity(m, m)).norm() > 1e-10 {
                    return Err(Error::invalid("blocks", "blocks must be unitary"));
                }
            }
        }
        Ok(())
    }
}

/// `ẽ_l = μ + √c cos(2lθ + β)/cos θ`.
pub fn loop_weights(n: usize, theta: f64, beta: f64, mu: f64, c: f64) -> Vec<f64> {
    let r = c.sqrt() / theta.cos();
    (0..n)
        .map(|l| mu + r * (2.0 * l as f64 * theta + beta).cos())
        .collect()
}

/// Cyclic matrix with `W[l−1, l] = √ẽ_l e^{iα_l} U_l` and corner
/// `W[n−1, 0] = √ẽ_0 e^{iα_0} U_0` (blocks of size `m`).
pub fn construct_loop_rep(spec: &LoopSpec, mu: f64, c: f64) -> Result<Representation> {
    spec.validate()?;
    if !(c > 0.0) {
        return Err(Error::invalid("c", "loop representations need c > 0"));
    }
    let theta = spec.theta();
    let weights = loop_weights(spec.n, theta, spec.beta, mu, c);
    if let Some((index, &value)) = weights.iter().enumerate().find(|(_, &e)| !(e > 0.0)) {
        return Err(Error::NonPositiveWeight { index, value });
    }
    let m = spec.block_dim();
    let n = spec.n;
    let mut w = CMatrix::zeros(n * m, n * m);
    for l in 0..n {
        let entry = Complex64::from_polar(weights[l].sqrt(), spec.phases[l]);
        let row = if l == 0 { n - 1 } else { l - 1 };
        let block = match &spec.blocks {
            Some(b) => &b[l] * entry,
            None => CMatrix::from_element(1, 1, entry),
        };
        w.view_mut((row * m, l * m), (m, m)).copy_from(&block);
    }
    Ok(Representation {
        w,
        mu,
        c,
        theta,
        regime: classify_regime(mu, c, theta),
        kind: if m == 1 {
            RepKind::Loop
        } else {
            RepKind::BlockLoop { block_dim: m }
        },
    })
}

/// The root of `cos nθ + (μ/√c) cos θ` in `(0, π/(n+1)]`, by bisection.
pub fn solve_string_theta(n: usize, mu: f64, c: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::invalid("n", "string equation needs n >= 2"));
    }
    if !(c > 0.0) {
        return Err(Error::invalid("c", "must be positive"));
    }
    let r = mu / c.sqrt();
    let f = |t: f64| (n as f64 * t).cos() + r * t.cos();
    let mut hi = PI / (n + 1) as f64;
    let mut lo = 0.0;
    let fhi = f(hi);
    let theta = if fhi.abs() <= 4.0 * f64::EPSILON * (1.0 + r.abs()) {
        hi
    } else {
        if f(lo) <= 0.0 || fhi > 0.0 {
            return Err(Error::NoRoot);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    check_theta(theta)?;
    Ok(theta)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StringSpec {
    pub n: usize,
    pub theta: f64,
    pub mu: f64,
    pub c: f64,
    /// `α_1, …, α_{n−1}`.
    pub phases: Vec<f64>,
}

impl StringSpec {
    /// `θ` from the string equation for given `(n, μ, c)`.
    pub fn solve(n: usize, mu: f64, c: f64) -> Result<Self> {
        let theta = solve_string_theta(n, mu, c)?;
        Ok(StringSpec {
            n,
            theta,
            mu,
            c,
            phases: vec![0.0; n.saturating_sub(1)],
        })
    }

    /// `c = μ² cos²θ / cos² nθ`. At `μ = 0` the formula is `0/0` and `c` must be
    /// given through [`StringSpec::with_casimir`].
    pub fn from_theta(n: usize, theta: f64, mu: f64) -> Result<Self> {
        if mu == 0.0 {
            return Err(Error::invalid("c", "c is not fixed by theta when mu = 0"));
        }
        let c = (mu * theta.cos() / (n as f64 * theta).cos()).powi(2);
        Ok(StringSpec {
            n,
            theta,
            mu,
            c,
            phases: vec![0.0; n.saturating_sub(1)],
        })
    }

    pub fn with_casimir(n: usize, theta: f64, mu: f64, c: f64) -> Self {
        StringSpec {
            n,
            theta,
            mu,
            c,
            phases: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn with_phases(mut self, phases: Vec<f64>) -> Self {
        self.phases = phases;
        self
    }
}

/// `ẽ_l = 2√c sin lθ sin (n−l)θ / cos θ` for `l = 1, …, n−1`.
pub fn string_weights(n: usize, theta: f64, c: f64) -> Vec<f64> {
    (1..n)
        .map(|l| {
            2.0 * c.sqrt() * (l as f64 * theta).sin() * ((n - l) as f64 * theta).sin() / theta.cos()
        })
        .collect()
}

/// Strictly upper bidiagonal `W[l−1, l] = √ẽ_l e^{iα_l}`.
pub fn construct_string_rep(spec: &StringSpec) -> Result<Representation> {
    let StringSpec {
        n, theta, mu, c, ..
    } = *spec;
    if n == 0 {
        return Err(Error::invalid("n", "must be at least 1"));
    }
    check_theta(theta)?;
    if !(c > 0.0) {
        return Err(Error::invalid("c", "string representations need c > 0"));
    }
    check_phases(&spec.phases, n - 1)?;
    let cn = (n as f64 * theta).cos();
    let eq = c.sqrt() * cn + mu * theta.cos();
    if eq.abs() > 1e-9 * (c.sqrt() + mu.abs()) {
        return Err(Error::invalid(
            "theta",
            format!("sqrt(c) cos(n theta) + mu cos(theta) = {eq:e}, not zero"),
        ));
    }
    if mu != 0.0 && cn.abs() > 1e-12 && cn.signum() == mu.signum() {
        return Err(Error::invalid(
            "theta",
            "cos(n theta) must have the sign of -mu",
        ));
    }
    let r = mu / c.sqrt();
    let spherical = (n + 1) as f64 * theta <= PI * (1.0 + 1e-12);
    let critical = r > 1.0 && r <= (1.0 + 1e-12) / theta.cos();
    if !spherical && !critical {
        return Err(Error::WindowViolation);
    }
    let weights = string_weights(n, theta, c);
    if let Some((i, &value)) = weights.iter().enumerate().find(|(_, &e)| !(e > 0.0)) {
        return Err(Error::NonPositiveWeight {
            index: i + 1,
            value,
        });
    }
    let mut w = CMatrix::zeros(n, n);
    for l in 1..n {
        w[(l - 1, l)] = Complex64::from_polar(weights[l - 1].sqrt(), spec.phases[l - 1]);
    }
    Ok(Representation {
        w,
        mu,
        c,
        theta,
        regime: classify_regime(mu, c, theta),
        kind: RepKind::String,
    })
}

/// `W = √μ U` with Casimir value 0.
pub fn construct_degenerate_rep(mu: f64, u: &CMatrix, theta: f64) -> Result<Representation> {
    if mu < 0.0 {
        return Err(Error::NegativeMu(mu));
    }
    check_theta(theta)?;
    let n = u.nrows();
    if u.ncols() != n || (u.adjoint() * u - CMatrix::identity(n, n)).norm() > 1e-10 {
        return Err(Error::invalid("U", "must be a square unitary matrix"));
    }
    Ok(Representation {
        w: u * cx(mu.sqrt()),
        mu,
        c: 0.0,
        theta,
        regime: Regime::Degenerate,
        kind: RepKind::Degenerate,
    })
}

/// Everything a builder may need; each builder reads the fields it uses.
#[derive(Clone, Debug, PartialEq)]
pub struct BuildRequest {
    pub n: usize,
    pub k: usize,
    pub mu: f64,
    pub c: f64,
    pub beta: f64,
    /// Overrides the default `θ` (`πk/n` for loops, solved for strings).
    pub theta: Option<f64>,
    pub phases: Option<Vec<f64>>,
}

impl BuildRequest {
    pub fn new(n: usize, mu: f64, c: f64) -> Self {
        BuildRequest {
            n,
            k: 1,
            mu,
            c,
            beta: 0.0,
            theta: None,
            phases: None,
        }
    }
}

pub trait RepBuilder: Named + Send + Sync {
    fn build(&self, req: &BuildRequest) -> Result<Representation>;
}

pub struct LoopBuilder;
pub struct StringBuilder;
/// `W = √μ · diag(e^{iα_j})`, with `θ = π/n` unless given.
pub struct DegenerateBuilder;

impl Named for LoopBuilder {
    fn name(&self) -> &'static str {
        "loop"
    }
}

impl RepBuilder for LoopBuilder {
    fn build(&self, req: &BuildRequest) -> Result<Representation> {
        let mut spec = LoopSpec::new(req.n, req.k, req.beta);
        if let Some(p) = &req.phases {
            spec = spec.with_phases(p.clone());
        }
        construct_loop_rep(&spec, req.mu, req.c)
    }
}

impl Named for StringBuilder {
    fn name(&self) -> &'static str {
        "string"
    }
}

impl RepBuilder for StringBuilder {
    fn build(&self, req: &BuildRequest) -> Result<Representation> {
        let mut spec = match req.theta {
            Some(t) => StringSpec::with_casimir(req.n, t, req.mu, req.c),
            None => StringSpec::solve(req.n, req.mu, req.c)?,
        };
        if let Some(p) = &req.phases {
            spec = spec.with_phases(p.clone());
        }
        construct_string_rep(&spec)
    }
}

impl Named for DegenerateBuilder {
    fn name(&self) -> &'static str {
        "degenerate"
    }
}

impl RepBuilder for DegenerateBuilder {
    fn build(&self, req: &BuildRequest) -> Result<Representation> {
        let phases = req.phases.clone().unwrap_or_else(|| vec![0.0; req.n]);
        check_phases(&phases, req.n)?;
        let diag: Vec<Complex64> = phases
            .iter()
            .map(|&a| Complex64::from_polar(1.0, a))
            .collect();
        let theta = req.theta.unwrap_or(PI / req.n.max(5) as f64);
        construct_degenerate_rep(req.mu, &crate::linalg::from_diag(&diag), theta)
    }
}

pub fn rep_builders() -> Registry<dyn RepBuilder> {
    let mut reg: Registry<dyn RepBuilder> = Registry::new("representation kind");
    reg.register(Box::new(LoopBuilder))
        .register(Box::new(StringBuilder))
        .register(Box::new(DegenerateBuilder));
    reg
}
