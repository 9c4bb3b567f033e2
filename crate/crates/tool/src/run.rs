use std::f64::consts::PI;
use std::io;
use std::path::PathBuf;

use minspace_core::estimators::{
    blaschke_cov_check, boundedness_profile, default_m_schedule, default_r_grid, default_schedule,
    essential_norm_proxy, lemma1_scan, nt_profile, DEFAULT_ANGLES,
};
use minspace_core::functionals::{carleson_sup, kappa};
use minspace_core::quadrature::monte_carlo_disk;
use minspace_core::symbol::{comp_second_derivative, RationalMap, SelfMapReport};
use minspace_core::{Complex, Executor, QuadConfig, Symbol};

use crate::config::{Command, ConfigError, RunConfig};
use crate::exec::RayonExecutor;
use crate::output::{format_float, Cell, Table};
use crate::spec::{parse_symbol, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNCONVERGED: i32 = 3;

pub const DEFAULT_SCHEDULE_DEPTH: u32 = 13;
pub const DEFAULT_SWEEP_RADII: [f64; 4] = [0.5, 0.9, 0.99, 0.999];
pub const DEFAULT_SWEEP_ANGLES: usize = 16;
pub const DEFAULT_GRID: usize = 50;
pub const DEFAULT_DYADIC_DEPTH: u32 = 6;
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Symbol(#[from] ParseError),
    #[error("{0}")]
    Compute(#[from] minspace_core::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Output { .. } => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub summary: String,
    /// Every quadrature behind the table converged.
    pub converged: bool,
    pub self_map: SelfMapReport,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.converged {
            EXIT_OK
        } else {
            EXIT_UNCONVERGED
        }
    }
}

/// Validates the config, loads the symbol, runs the command and writes the
/// table. The table is written even when some quadrature did not converge.
pub fn run(cfg: &RunConfig) -> Result<Outcome, RunError> {
    cfg.validate()?;
    let parsed = parse_symbol(&cfg.symbol_path)?;
    let (table, summary, converged) = compute(cfg, &parsed.symbol)?;
    table
        .write(&cfg.output_path, cfg.output_format)
        .map_err(|source| RunError::Output { path: cfg.output_path.clone(), source })?;
    Ok(Outcome { table, summary, converged, self_map: parsed.report })
}

fn cx(p: [f64; 2]) -> Complex {
    Complex::new(p[0], p[1])
}

fn point(z: Complex) -> String {
    format!("({}, {})", format_float(z.re), format_float(z.im))
}

fn circle_points(radii: &[f64], per_circle: usize) -> Vec<Complex> {
    radii
        .iter()
        .flat_map(|&r| (0..per_circle).map(move |j| Complex::from_polar(r, 2.0 * PI * j as f64 / per_circle as f64)))
        .collect()
}

/// Runs the command against an already parsed symbol.
pub fn compute(cfg: &RunConfig, psi: &Symbol) -> Result<(Table, String, bool), RunError> {
    let quad = cfg.quad();
    let exec = RayonExecutor;
    let name = cfg.command.name();
    match cfg.command {
        Command::Kappa => kappa_table(name, cfg, psi, &quad, &exec),
        Command::Sweep => sweep_table(name, cfg, psi, &quad, &exec),
        Command::Essnorm => essnorm_table(name, cfg, psi, &quad, &exec),
        Command::BlaschkeCheck => blaschke_table(name, cfg, psi, &quad, &exec),
        Command::ValencyMap => valency_table(name, cfg, psi, &exec),
        Command::Carleson => carleson_table(name, cfg, psi, &quad, &exec),
        Command::Lemma1 => lemma1_table(name, cfg, psi, &quad),
        Command::Ntprofile => nt_table(name, cfg, psi),
        Command::McCheck => mc_table(name, cfg, psi, &quad, &exec),
    }
}

type Computed = Result<(Table, String, bool), RunError>;

fn kappa_table(name: &'static str, cfg: &RunConfig, psi: &Symbol, quad: &QuadConfig, exec: &RayonExecutor) -> Computed {
    let alphas: Vec<Complex> = cfg.alphas.clone().unwrap_or_else(|| vec![[0.5, 0.0]]).into_iter().map(cx).collect();
    let results = exec.map(alphas.len(), |i| kappa(psi, alphas[i], quad));
    let mut t = Table::new(name, &["alpha_re", "alpha_im", "kappa", "error", "panels", "converged"]);
    let mut converged = true;
    let mut best = (f64::NEG_INFINITY, Complex::new(0.0, 0.0));
    for (a, r) in alphas.iter().zip(results) {
        let q = r?;
        converged &= q.converged;
        if q.value > best.0 {
            best = (q.value, *a);
        }
        t.push(vec![
            a.re.into(),
            a.im.into(),
            q.value.into(),
            q.error_estimate.into(),
            q.panels_used.into(),
            q.converged.into(),
        ]);
    }
    let summary = format!("kappa max = {} at alpha = {}", format_float(best.0), point(best.1));
    Ok((t, summary, converged))
}

fn sweep_table(name: &'static str, cfg: &RunConfig, psi: &Symbol, quad: &QuadConfig, exec: &RayonExecutor) -> Computed {
    let radii = cfg.radii.clone().unwrap_or_else(|| DEFAULT_SWEEP_RADII.to_vec());
    let angles = cfg.angles.unwrap_or(DEFAULT_SWEEP_ANGLES);
    let sweep = boundedness_profile(psi, &radii, angles, quad, exec)?;
    let mut t =
        Table::new(name, &["alpha_re", "alpha_im", "radius", "angle", "kappa", "error", "converged", "failure"]);
    for p in &sweep.points {
        let failure = p.failure.as_ref().map(|e| e.to_string()).unwrap_or_default();
        t.push(vec![
            p.alpha.re.into(),
            p.alpha.im.into(),
            p.alpha.norm().into(),
            p.alpha.arg().rem_euclid(2.0 * PI).into(),
            p.value.into(),
            p.error.into(),
            p.converged.into(),
            failure.into(),
        ]);
    }
    let converged = sweep.points.iter().all(|p| p.converged);
    let per_radius: Vec<String> =
        sweep.radius_sups().iter().map(|(r, v)| format!("{r}: {}", format_float(*v))).collect();
    let summary = match sweep.sup() {
        Some(p) => format!(
            "sweep sup = {} at alpha = {}; per-radius sups [{}]; {} failures",
            format_float(p.value),
            point(p.alpha),
            per_radius.join(", "),
            sweep.failures()
        ),
        None => "sweep: every point failed".to_owned(),
    };
    Ok((t, summary, converged))
}

fn essnorm_table(
    name: &'static str,
    cfg: &RunConfig,
    psi: &Symbol,
    quad: &QuadConfig,
    exec: &RayonExecutor,
) -> Computed {
    let schedule = default_schedule(cfg.schedule_depth.unwrap_or(DEFAULT_SCHEDULE_DEPTH))?;
    let est = essential_norm_proxy(psi, &schedule, cfg.angles.unwrap_or(DEFAULT_ANGLES), quad, exec)?;
    let mut t = Table::new(name, &["s", "tail_sup", "error", "argmax_re", "argmax_im", "converged"]);
    for l in &est.levels {
        t.push(vec![
            l.s.into(),
            l.sup.into(),
            l.error.into(),
            l.argmax.re.into(),
            l.argmax.im.into(),
            l.converged.into(),
        ]);
    }
    let summary = format!(
        "proxy = {} (error {:.3e}, converged = {}); {}",
        format_float(est.proxy),
        est.proxy_error,
        est.converged,
        est.diagnostics
    );
    let quad_ok = est.levels.iter().all(|l| l.converged);
    Ok((t, summary, quad_ok))
}

fn blaschke_table(
    name: &'static str,
    cfg: &RunConfig,
    psi: &Symbol,
    quad: &QuadConfig,
    exec: &RayonExecutor,
) -> Computed {
    let alphas: Vec<Complex> = match &cfg.alphas {
        Some(a) => a.iter().copied().map(cx).collect(),
        None => circle_points(&[0.3, 0.6, 0.9], 8),
    };
    let results = exec.map(alphas.len(), |i| blaschke_cov_check(psi, alphas[i], quad));
    let mut t = Table::new(name, &["alpha_re", "alpha_im", "lhs", "rhs", "degree", "discrepancy", "converged"]);
    let mut worst = 0.0f64;
    let mut converged = true;
    let mut degree = 0;
    for (a, r) in alphas.iter().zip(results) {
        let c = r?;
        worst = worst.max(c.discrepancy);
        converged &= c.converged;
        degree = c.degree;
        t.push(vec![
            a.re.into(),
            a.im.into(),
            c.lhs.into(),
            c.rhs.into(),
            c.degree.into(),
            c.discrepancy.into(),
            c.converged.into(),
        ]);
    }
    let summary = format!("max discrepancy = {:.3e} over {} points (degree {degree})", worst, alphas.len());
    Ok((t, summary, converged))
}

fn valency_table(name: &'static str, cfg: &RunConfig, psi: &Symbol, exec: &RayonExecutor) -> Computed {
    let n = cfg.grid.unwrap_or(DEFAULT_GRID);
    let map = RationalMap::new(psi);
    let points: Vec<Complex> = (0..n * n)
        .map(|k| Complex::from_polar((k / n) as f64 / n as f64 + 0.5 / n as f64, 2.0 * PI * (k % n) as f64 / n as f64))
        .collect();
    let reports = exec.map(points.len(), |i| map.report(points[i]));
    let mut t = Table::new(name, &["x", "y", "valency", "multiplicity", "flagged"]);
    let (mut lo, mut hi) = (usize::MAX, 0);
    for (z, r) in points.iter().zip(reports) {
        let r = r?;
        lo = lo.min(r.count);
        hi = hi.max(r.count);
        t.push(vec![
            z.re.into(),
            z.im.into(),
            r.count.into(),
            r.count_with_multiplicity().into(),
            r.flagged.len().into(),
        ]);
    }
    let summary = format!("valency range [{lo}, {hi}] over a {n}x{n} polar grid");
    Ok((t, summary, true))
}

fn carleson_table(
    name: &'static str,
    cfg: &RunConfig,
    psi: &Symbol,
    quad: &QuadConfig,
    exec: &RayonExecutor,
) -> Computed {
    let depth = cfg.dyadic_depth.unwrap_or(DEFAULT_DYADIC_DEPTH);
    let sup = carleson_sup(psi, quad, depth, exec)?;
    let mut t = Table::new(name, &["level", "index", "center_angle", "length", "ratio", "error", "converged"]);
    let mut converged = true;
    let mut k = 0;
    for level in 0..=depth {
        for j in 0..(1usize << level) {
            let (arc, q) = &sup.arcs[k];
            k += 1;
            converged &= q.converged;
            t.push(vec![
                level.into(),
                j.into(),
                arc.center_angle.into(),
                arc.length.into(),
                q.value.into(),
                q.error_estimate.into(),
                q.converged.into(),
            ]);
        }
    }
    let summary = format!(
        "carleson sup = {} on the arc centered at {} with length {}",
        format_float(sup.value),
        format_float(sup.arc.center_angle),
        format_float(sup.arc.length)
    );
    Ok((t, summary, converged))
}

fn lemma1_table(name: &'static str, cfg: &RunConfig, psi: &Symbol, quad: &QuadConfig) -> Computed {
    let radii = match &cfg.radii {
        Some(r) => r.clone(),
        None => default_r_grid(),
    };
    let scan = lemma1_scan(psi, &radii, quad)?;
    let mut t = Table::new(name, &["r", "mass", "ratio", "error", "converged"]);
    for row in &scan.rows {
        t.push(vec![row.r.into(), row.mass.into(), row.ratio.into(), row.error.into(), row.converged.into()]);
    }
    let converged = scan.rows.iter().all(|r| r.converged);
    let summary = format!("min mass/r = {} over {} radii", format_float(scan.min_ratio), scan.rows.len());
    Ok((t, summary, converged))
}

fn nt_table(name: &'static str, cfg: &RunConfig, psi: &Symbol) -> Computed {
    let xi = cx(cfg.xi.unwrap_or([1.0, 0.0]));
    let ms = cfg.m_schedule.clone().unwrap_or_else(default_m_schedule);
    let p = nt_profile(psi, xi, &ms)?;
    let mut t = Table::new(name, &["m", "trajectory", "beta_re", "beta_im", "zeta_re", "zeta_im", "ratio"]);
    for step in &p.steps {
        for (j, (beta, ratio)) in step.preimages.iter().zip(&step.ratios).enumerate() {
            let zeta = p.limits[j];
            t.push(vec![
                step.m.into(),
                j.into(),
                beta.re.into(),
                beta.im.into(),
                zeta.re.into(),
                zeta.im.into(),
                (*ratio).into(),
            ]);
        }
    }
    let mut summary = format!("(n, t) = ({}, {})", p.n, format_float(p.t));
    for f in &p.failures {
        summary += &format!("; matching failed at m = {}: {}", f.m, f.reason);
    }
    if !p.projected_limits.is_empty() {
        summary += &format!("; {} limits taken by radial projection", p.projected_limits.len());
    }
    Ok((t, summary, true))
}

fn mc_table(name: &'static str, cfg: &RunConfig, psi: &Symbol, quad: &QuadConfig, exec: &RayonExecutor) -> Computed {
    let alphas: Vec<Complex> =
        cfg.alphas.clone().unwrap_or_else(|| vec![[0.0, 0.0], [0.5, 0.0], [0.9, 0.0]]).into_iter().map(cx).collect();
    let samples = cfg.samples.unwrap_or(DEFAULT_MC_SAMPLES);
    let mut t = Table::new(
        name,
        &["alpha_re", "alpha_im", "quadrature", "quad_error", "mc_mean", "mc_std_error", "z_score", "within_3sigma"],
    );
    let mut converged = true;
    let mut worst = 0.0f64;
    for (i, &a) in alphas.iter().enumerate() {
        let q = kappa(psi, a, quad)?;
        converged &= q.converged;
        let integrand = |z| comp_second_derivative(a, psi, z).map(|v| v.norm()).unwrap_or(f64::NAN);
        let mc = monte_carlo_disk(integrand, samples, cfg.seed.wrapping_add(i as u64), exec)?;
        let z = if mc.std_error > 0.0 {
            (q.value - mc.value) / mc.std_error
        } else if q.value == mc.value {
            0.0
        } else {
            f64::INFINITY
        };
        worst = worst.max(z.abs());
        let row: Vec<Cell> = vec![
            a.re.into(),
            a.im.into(),
            q.value.into(),
            q.error_estimate.into(),
            mc.value.into(),
            mc.std_error.into(),
            z.into(),
            (z.abs() <= 3.0).into(),
        ];
        t.push(row);
    }
    let summary = format!("max |z| = {worst:.3} over {} points, {samples} samples each", alphas.len());
    Ok((t, summary, converged))
}
