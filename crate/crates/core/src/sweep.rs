//! Parameter sweeps over chain models and their CSV output.
//!
//! Each grid point runs the whole pipeline (Hamiltonian, ground state, end
//! pair density matrix, entanglement, teleportation). Points are independent
//! and evaluated in parallel; rows come back in grid order.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{ground_state, SolverOptions};
use crate::entanglement::{concurrence_lower_bound, lhfs_free, lhfs_singlet, state_probability};
use crate::error::{Error, Result};
use crate::hamiltonian::{build, ModelSpec};
use crate::rdm::{two_site_rdm, TwoSiteDensityMatrix};
use crate::teleport::{bell_family, channel_output, hubbard_family, input_state_real, HubbardMode, ProjectorFamily};

pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable supplying the default number of worker threads.
pub const JOBS_ENV: &str = "HUBBARD_SWEEP_JOBS";
pub const DEFAULT_EPSILON: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    #[default]
    Uniform,
    AltBonds,
    AltHopping,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum FamilySelector {
    #[default]
    Bell,
    HubbardFixed,
    HubbardAdaptive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepParam {
    Delta,
    TauB,
    Alpha0,
    U,
}

macro_rules! kebab_names {
    ($ty:ty { $($variant:ident => $name:literal),* $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(Self::$variant => $name),* })
            }
        }
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(Self::$variant),)*
                    other => Err(Error::Config(format!("unknown {} {other:?}", stringify!($ty)))),
                }
            }
        }
    };
}

kebab_names!(ModelKind { Uniform => "uniform", AltBonds => "alt-bonds", AltHopping => "alt-hopping" });
kebab_names!(FamilySelector { Bell => "bell", HubbardFixed => "hubbard-fixed", HubbardAdaptive => "hubbard-adaptive" });
kebab_names!(SweepParam { Delta => "delta", TauB => "tau-b", Alpha0 => "alpha0", U => "U" });

/// Inclusive linear grid `start:stop:steps`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| if k + 1 == self.steps { self.stop } else { self.start + k as f64 * h })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("grid {s:?} is not start:stop:steps"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let grid = Grid {
            start: parts[0].trim().parse().map_err(|_| bad())?,
            stop: parts[1].trim().parse().map_err(|_| bad())?,
            steps: parts[2].trim().parse().map_err(|_| bad())?,
        };
        if grid.steps == 0 || !grid.start.is_finite() || !grid.stop.is_finite() {
            return Err(bad());
        }
        Ok(grid)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelKind,
    /// Chain lengths.
    #[serde(rename = "L")]
    pub sites: Vec<usize>,
    /// Interaction values (ignored when U itself is swept).
    #[serde(rename = "U")]
    pub u: Vec<f64>,
    pub delta: f64,
    pub tau_a: f64,
    pub tau_b: f64,
    pub sweep: Option<SweepParam>,
    pub grid: Option<Grid>,
    /// Input amplitudes before normalization.
    pub alpha: Vec<f64>,
    pub family: FamilySelector,
    /// Site pair to analyze; (1, L) when absent.
    pub end_sites: Option<(usize, usize)>,
    /// (N↑, N↓); half filling when absent.
    pub sector: Option<(usize, usize)>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    /// Distance kept from the decoupling limits δ = 1 and τ_a = 0.
    pub epsilon: f64,
    pub solver_tol: f64,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let solver = SolverOptions::default();
        SweepConfig {
            model: ModelKind::Uniform,
            sites: vec![4],
            u: vec![0.0],
            delta: 0.0,
            tau_a: 1.0,
            tau_b: 1.0,
            sweep: None,
            grid: None,
            alpha: vec![1.0; 4],
            family: FamilySelector::Bell,
            end_sites: None,
            sector: None,
            out: None,
            jobs: None,
            epsilon: DEFAULT_EPSILON,
            solver_tol: solver.tol,
            seed: solver.seed,
        }
    }
}

/// One fully specified evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSpec {
    pub model: ModelKind,
    pub sites: usize,
    pub u: f64,
    pub delta: f64,
    pub tau_a: f64,
    pub tau_b: f64,
    pub alpha: Vec<f64>,
    pub family: FamilySelector,
    pub pair: (usize, usize),
    pub sector: (usize, usize),
}

impl PointSpec {
    pub fn model_spec(&self) -> ModelSpec {
        match self.model {
            ModelKind::Uniform => ModelSpec::uniform(self.sites, self.u),
            ModelKind::AltBonds => ModelSpec::alternating_bonds(self.sites, self.delta, self.u),
            ModelKind::AltHopping => ModelSpec::alternating_hopping(self.sites, self.tau_a, self.tau_b, self.u),
        }
    }
}

impl SweepConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.solver_tol,
            seed: self.seed,
            ..SolverOptions::default()
        }
    }

    /// Worker count: explicit setting, then the environment, then all cores.
    pub fn resolved_jobs(&self) -> usize {
        self.jobs
            .or_else(|| std::env::var(JOBS_ENV).ok().and_then(|v| v.trim().parse().ok()))
            .filter(|&j| j > 0)
            .unwrap_or_else(rayon::current_num_threads)
    }

    fn clamp_delta(&self, delta: f64) -> f64 {
        delta.min(1.0 - self.epsilon)
    }

    fn clamp_tau_a(&self, tau_a: f64) -> f64 {
        tau_a.max(self.epsilon)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::Config(m));
        if self.sites.is_empty() {
            return err("no chain lengths given".into());
        }
        if self.sweep != Some(SweepParam::U) && self.u.is_empty() {
            return err("no interaction values given".into());
        }
        if self.alpha.len() != 4 {
            return err(format!("need four input amplitudes, got {}", self.alpha.len()));
        }
        if !(self.epsilon >= 0.0 && self.epsilon < 0.5) {
            return err(format!("epsilon {} outside [0, 0.5)", self.epsilon));
        }
        match (self.sweep, self.grid) {
            (Some(_), None) => return err("sweep parameter given without a grid".into()),
            (None, Some(_)) => return err("grid given without a sweep parameter".into()),
            _ => {}
        }
        if let Some(g) = self.grid {
            if g.steps == 0 {
                return err("empty grid".into());
            }
        }
        let expected = match self.sweep {
            Some(SweepParam::Delta) => Some(ModelKind::AltBonds),
            Some(SweepParam::TauB) => Some(ModelKind::AltHopping),
            _ => None,
        };
        if let Some(kind) = expected {
            if self.model != kind {
                return err(format!("sweeping {} needs --model {kind}", self.sweep.unwrap()));
            }
        }
        for p in self.points() {
            p.model_spec().validate().map_err(|e| Error::Config(e.to_string()))?;
            let (i, j) = p.pair;
            if !(1 <= i && i < j && j <= p.sites) {
                return err(format!("site pair ({i}, {j}) invalid for L = {}", p.sites));
            }
            if p.sector.0 > p.sites || p.sector.1 > p.sites {
                return err(format!("sector {:?} overfills L = {}", p.sector, p.sites));
            }
            if p.alpha.iter().all(|a| *a == 0.0) {
                return err("input amplitudes are all zero".into());
            }
        }
        Ok(())
    }

    /// Grid points in output order: L, then U, then the swept parameter.
    pub fn points(&self) -> Vec<PointSpec> {
        let grid = self.grid.map(|g| g.values()).unwrap_or_default();
        let mut out = Vec::new();
        for &l in &self.sites {
            let us: Vec<f64> = if self.sweep == Some(SweepParam::U) { vec![f64::NAN] } else { self.u.clone() };
            for &u in &us {
                let swept: Vec<Option<f64>> = if self.sweep.is_some() {
                    grid.iter().map(|&x| Some(x)).collect()
                } else {
                    vec![None]
                };
                for x in swept {
                    let mut p = PointSpec {
                        model: self.model,
                        sites: l,
                        u,
                        delta: self.clamp_delta(self.delta),
                        tau_a: self.clamp_tau_a(self.tau_a),
                        tau_b: self.tau_b,
                        alpha: self.alpha.clone(),
                        family: self.family,
                        pair: self.end_sites.unwrap_or((1, l)),
                        sector: self.sector.unwrap_or((l / 2, l / 2)),
                    };
                    match (self.sweep, x) {
                        (Some(SweepParam::Delta), Some(v)) => p.delta = self.clamp_delta(v),
                        (Some(SweepParam::TauB), Some(v)) => p.tau_b = v,
                        (Some(SweepParam::Alpha0), Some(v)) => p.alpha = vec![v, 1.0, 1.0, 1.0],
                        (Some(SweepParam::U), Some(v)) => p.u = v,
                        _ => {}
                    }
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Everything computed at one point.
#[derive(Clone, Debug)]
pub struct PointMetrics {
    pub energy: f64,
    pub gap: f64,
    pub degenerate: bool,
    pub concurrence: f64,
    pub p_lhfs_free: f64,
    pub p_lhfs_singlet: f64,
    /// The free form at U = 0, the singlet otherwise.
    pub p_lhfs: f64,
    pub fef: f64,
    pub fidelity: f64,
    pub avg_fidelity: f64,
    pub classical_threshold: f64,
    pub rho: TwoSiteDensityMatrix,
    pub warning: Option<String>,
}

fn family_for(sel: FamilySelector, rho: &TwoSiteDensityMatrix) -> Result<ProjectorFamily> {
    match sel {
        FamilySelector::Bell => bell_family(4),
        FamilySelector::HubbardFixed => hubbard_family(HubbardMode::Fixed, None),
        FamilySelector::HubbardAdaptive => hubbard_family(HubbardMode::Adaptive, Some(rho)),
    }
}

pub fn evaluate_point(p: &PointSpec, solver: &SolverOptions) -> Result<PointMetrics> {
    let model = p.model_spec();
    let h = build(&model, p.sector.0, p.sector.1)?;
    let g = ground_state(&h, solver)?;
    let rho = two_site_rdm(&g, h.basis(), p.pair.0, p.pair.1)?;
    rho.validate()?;
    let concurrence = concurrence_lower_bound(&rho)?.lower_bound;
    let p_lhfs_free = state_probability(&rho.entries, &lhfs_free())?;
    let p_lhfs_singlet = state_probability(&rho.entries, &lhfs_singlet())?;
    let family = family_for(p.family, &rho)?;
    let input = input_state_real(&p.alpha)?.density();
    let channel = channel_output(&rho.entries, &input, &family)?;
    let degenerate = g.degenerate.then(|| format!("degenerate ground manifold (gap {:.2e})", g.gap));
    let warning = match (degenerate, family.warning) {
        (Some(a), Some(b)) => Some(format!("{a}; {b}")),
        (a, b) => a.or(b),
    };
    Ok(PointMetrics {
        energy: g.energy,
        gap: g.gap,
        degenerate: g.degenerate,
        concurrence,
        p_lhfs_free,
        p_lhfs_singlet,
        p_lhfs: if p.u == 0.0 { p_lhfs_free } else { p_lhfs_singlet },
        fef: channel.fef,
        fidelity: channel.fidelity,
        avg_fidelity: channel.avg_fidelity,
        classical_threshold: channel.classical_threshold,
        rho,
        warning,
    })
}

#[derive(Clone, Debug)]
pub struct ResultRow {
    pub point: PointSpec,
    pub outcome: std::result::Result<PointMetrics, String>,
}

impl ResultRow {
    pub fn succeeded(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn status(&self) -> String {
        match &self.outcome {
            Ok(m) => match &m.warning {
                None => "ok".into(),
                Some(w) => format!("warn: {w}"),
            },
            Err(e) => format!("error: {e}"),
        }
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let solver = config.solver_options();
    let points = config.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.resolved_jobs())
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        points
            .into_par_iter()
            .map(|point| {
                let outcome = evaluate_point(&point, &solver).map_err(|e| e.to_string());
                ResultRow { point, outcome }
            })
            .collect()
    }))
}

/// Column names, in output order.
pub const COLUMNS: [&str; 27] = [
    "model",
    "L",
    "n_up",
    "n_down",
    "U",
    "delta",
    "tau_a",
    "tau_b",
    "alpha0",
    "alpha1",
    "alpha2",
    "alpha3",
    "family",
    "site_i",
    "site_j",
    "energy",
    "gap",
    "degenerate",
    "concurrence",
    "p_lhfs",
    "p_lhfs_free",
    "p_lhfs_singlet",
    "fef",
    "fidelity",
    "avg_fidelity",
    "classical_threshold",
    "status",
];

/// Shortest decimal form with 12 significant digits, like C's `%.12g`.
pub fn format_g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        trim(format!("{x:.*}", (11 - exp) as usize))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn record(row: &ResultRow) -> Vec<String> {
    let p = &row.point;
    let g = format_g12;
    let mut cells = vec![
        p.model.to_string(),
        p.sites.to_string(),
        p.sector.0.to_string(),
        p.sector.1.to_string(),
        g(p.u),
        if p.model == ModelKind::AltBonds { g(p.delta) } else { String::new() },
        if p.model == ModelKind::AltHopping { g(p.tau_a) } else { String::new() },
        if p.model == ModelKind::AltHopping { g(p.tau_b) } else { String::new() },
    ];
    cells.extend(p.alpha.iter().map(|&a| g(a)));
    cells.extend([p.family.to_string(), p.pair.0.to_string(), p.pair.1.to_string()]);
    match &row.outcome {
        Ok(m) => cells.extend([
            g(m.energy),
            g(m.gap),
            (m.degenerate as u8).to_string(),
            g(m.concurrence),
            g(m.p_lhfs),
            g(m.p_lhfs_free),
            g(m.p_lhfs_singlet),
            g(m.fef),
            g(m.fidelity),
            g(m.avg_fidelity),
            g(m.classical_threshold),
        ]),
        Err(_) => cells.extend(std::iter::repeat(String::new()).take(11)),
    }
    cells.push(row.status());
    cells
}

/// Writes the schema line, the header and one record per row.
pub fn write_csv<W: Write>(rows: &[ResultRow], mut out: W) -> std::result::Result<(), csv::Error> {
    writeln!(out, "#schema={SCHEMA_VERSION}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Config("no rows to write".into()));
    }
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

/// CSV text of a sweep, for writing to stdout.
pub fn csv_string(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}
