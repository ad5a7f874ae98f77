use std::cmp::Ordering;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use spinsq::csv::{format_value, write_trajectory};
use spinsq::verify::{Suite, SuiteReport};
use spinsq::{collective_moments, make_dicke_state, trajectory, PointObservables};

use crate::config::{Couplings, RunConfig, ScanConfig, ScanPoint};
use crate::error::CliError;

/// Slack on `max ξ² ≤ 1` before a scan row is flagged.
pub const EXCEEDS_ONE_TOLERANCE: f64 = 1e-9;

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::io(format!("cannot create {}", p.display()), e)
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes a report to stdout.
fn emit(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io("cannot write stdout", e))
}

fn write_err(path: Option<&Path>) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| {
        let target = path.map_or("stdout".to_string(), |p| p.display().to_string());
        CliError::io(format!("cannot write {target}"), e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    pub min_xi2: f64,
    pub t_min_xi2: f64,
    pub max_xi2: f64,
    pub max_concurrence: f64,
    pub t_max_concurrence: f64,
    /// Worst `|ξ² - 1 + (N-1)C|` over points with `ξ² ≤ 1`.
    pub prop3_squeezed: f64,
    pub prop3_all: f64,
}

impl Extremes {
    fn of(times: &[f64], points: &[PointObservables]) -> Self {
        let mut e = Extremes {
            min_xi2: f64::INFINITY,
            t_min_xi2: f64::NAN,
            max_xi2: f64::NEG_INFINITY,
            max_concurrence: f64::NEG_INFINITY,
            t_max_concurrence: f64::NAN,
            prop3_squeezed: 0.0,
            prop3_all: 0.0,
        };
        for (&t, p) in times.iter().zip(points) {
            let xi2 = p.xi2();
            let c = p.concurrence.concurrence;
            if xi2 < e.min_xi2 {
                e.min_xi2 = xi2;
                e.t_min_xi2 = t;
            }
            e.max_xi2 = e.max_xi2.max(xi2);
            if c > e.max_concurrence {
                e.max_concurrence = c;
                e.t_max_concurrence = t;
            }
            let r = p.prop3_residual().abs();
            e.prop3_all = e.prop3_all.max(r);
            if xi2 <= 1.0 {
                e.prop3_squeezed = e.prop3_squeezed.max(r);
            }
        }
        e
    }
}

fn observe(
    spec: &spinsq::HamiltonianSpec,
    n_qubits: usize,
    t_max: f64,
    dt: f64,
) -> Result<(Vec<f64>, Vec<PointObservables>), CliError> {
    let tr = trajectory(spec, n_qubits, t_max, dt)?;
    let points = tr
        .states
        .iter()
        .map(PointObservables::from_state)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((tr.times, points))
}

pub fn evolve(cfg: &RunConfig) -> Result<(), CliError> {
    let (times, points) = observe(&cfg.spec(), cfg.n_qubits, cfg.t_max, cfg.dt)?;
    let path = cfg.output_path.as_deref();
    let mut out = open_output(path)?;
    write_trajectory(&mut out, &times, &points, cfg.precision)
        .and_then(|_| out.flush())
        .map_err(write_err(path))?;
    drop(out);

    let e = Extremes::of(&times, &points);
    let f = |x: f64| format_value(x, cfg.precision);
    let line = format!(
        "min xi2 = {} at t = {}; max C = {} at t = {}",
        f(e.min_xi2),
        f(e.t_min_xi2),
        f(e.max_concurrence),
        f(e.t_max_concurrence)
    );
    // Keep stdout pure CSV when no file was given.
    if path.is_some() {
        emit(&format!("{line}\n"))
    } else {
        eprintln!("{line}");
        Ok(())
    }
}

pub const SCAN_HEADER: [&str; 15] = [
    "model",
    "n",
    "mu",
    "chi",
    "gamma",
    "omega",
    "min_xi2",
    "t_at_min_xi2",
    "mu_bar_at_min_xi2",
    "max_xi2",
    "max_concurrence",
    "t_at_max_concurrence",
    "max_xi2_exceeds_one",
    "max_prop3_residual_where_squeezed",
    "max_prop3_residual",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub point: ScanPoint,
    pub extremes: Extremes,
}

impl ScanRow {
    pub fn exceeds_one(&self) -> bool {
        self.extremes.max_xi2.is_nan() || self.extremes.max_xi2 > 1.0 + EXCEEDS_ONE_TOLERANCE
    }

    fn format(&self, precision: usize) -> String {
        let f = |x: f64| format_value(x, precision);
        let opt = |x: Option<f64>| x.map(f).unwrap_or_default();
        let c = &self.point.couplings;
        let e = &self.extremes;
        let mu_bar =
            c.mu.filter(|_| self.point.model.uses_mu())
                .map(|mu| 2.0 * mu * e.t_min_xi2);
        [
            self.point.model.to_string(),
            self.point.n_qubits.to_string(),
            opt(c.mu),
            opt(c.chi),
            opt(c.gamma),
            opt(c.omega),
            f(e.min_xi2),
            f(e.t_min_xi2),
            opt(mu_bar),
            f(e.max_xi2),
            f(e.max_concurrence),
            f(e.t_max_concurrence),
            if self.exceeds_one() { "1" } else { "0" }.to_string(),
            f(e.prop3_squeezed),
            f(e.prop3_all),
        ]
        .join(",")
    }
}

fn cmp_opt(a: Option<f64>, b: Option<f64>) -> Ordering {
    match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (a, b) => a.is_some().cmp(&b.is_some()),
    }
}

fn cmp_point(a: &ScanPoint, b: &ScanPoint) -> Ordering {
    let key = |c: &Couplings| [c.mu, c.chi, c.gamma, c.omega];
    a.model
        .cmp(&b.model)
        .then(a.n_qubits.cmp(&b.n_qubits))
        .then_with(|| {
            key(&a.couplings)
                .into_iter()
                .zip(key(&b.couplings))
                .map(|(x, y)| cmp_opt(x, y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

pub fn scan_rows(cfg: &ScanConfig) -> Result<Vec<ScanRow>, CliError> {
    if cfg.points.is_empty() {
        return Err(CliError::usage("empty scan grid"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {} workers: {e}", cfg.workers)))?;
    let mut rows = pool.install(|| {
        cfg.points
            .par_iter()
            .map(|p| {
                let spec = p.couplings.spec(p.model, &cfg.f_coeffs);
                let (times, points) = observe(&spec, p.n_qubits, cfg.t_max, cfg.dt)?;
                Ok(ScanRow {
                    point: p.clone(),
                    extremes: Extremes::of(&times, &points),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    rows.sort_by(|a, b| cmp_point(&a.point, &b.point));
    Ok(rows)
}

pub fn scan(cfg: &ScanConfig) -> Result<(), CliError> {
    let rows = scan_rows(cfg)?;
    let path = cfg.output_path.as_deref();
    let mut out = open_output(path)?;
    let mut write = || -> io::Result<()> {
        writeln!(out, "{}", SCAN_HEADER.join(","))?;
        for row in &rows {
            writeln!(out, "{}", row.format(cfg.precision))?;
        }
        out.flush()
    };
    write().map_err(write_err(path))?;
    drop(out);

    let flagged = rows.iter().filter(|r| r.exceeds_one()).count();
    let line = format!("{} rows; {flagged} with max_xi2_exceeds_one", rows.len());
    if path.is_some() {
        emit(&format!("{line}\n"))
    } else {
        eprintln!("{line}");
        Ok(())
    }
}

pub fn dicke(n_qubits: usize, excitations: usize) -> Result<(), CliError> {
    if excitations > n_qubits {
        return Err(CliError::usage(format!(
            "excitation number {excitations} exceeds N = {n_qubits}"
        )));
    }
    let state = make_dicke_state(n_qubits, excitations)?;
    let p = PointObservables::from_moments(&collective_moments(&state))?;
    let f = |x: f64| format_value(x, 17);
    let r = &p.reduced;
    let lines = [
        format!("N = {n_qubits}, n = {excitations}"),
        format!("xi2 = {}", f(p.xi2())),
        format!(
            "concurrence = {} ({})",
            f(p.concurrence.concurrence),
            p.concurrence.branch.as_str()
        ),
        format!("v_plus = {}", f(r.v_plus)),
        format!("v_minus = {}", f(r.v_minus)),
        format!("y = {}", f(r.y)),
        format!("u = {} + {}i", f(r.u.re), f(r.u.im)),
        format!("x_plus = {} + {}i", f(r.x_plus.re), f(r.x_plus.im)),
        format!("x_minus = {} + {}i", f(r.x_minus.re), f(r.x_minus.im)),
        format!("sz_mean = {}", f(p.moments.mean_sz)),
        format!("sz2 = {}", f(p.moments.sz2)),
        format!("sp2 = {} + {}i", f(p.moments.sp2.re), f(p.moments.sp2.im)),
    ];
    let text = lines.join("\n") + "\n";
    emit(&text)
}

pub fn verify(suites: &[Suite], seed: u64) -> Result<(), CliError> {
    let reports = suites
        .par_iter()
        .map(|s| s.run(seed))
        .collect::<Result<Vec<SuiteReport>, _>>()?;
    let mut text: String = reports.iter().map(|r| r.to_string()).collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    if suites.len() > 1 {
        text += &format!("{passed}/{} suites passed\n", reports.len());
    }
    emit(&text)?;
    let all = passed == reports.len();
    if all {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}
