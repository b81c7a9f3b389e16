use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hubbard_teleport::sweep::{
    csv_string, emit_csv, evaluate_point, run_sweep, FamilySelector, Grid, ModelKind, SweepConfig, SweepParam,
};

const CSV_HELP: &str = "\
OUTPUT
  CSV, UTF-8. The first line is the schema marker `#schema=1`, the second the header:
    model,L,n_up,n_down,U,delta,tau_a,tau_b,alpha0..alpha3,family,site_i,site_j,
    energy,gap,degenerate,concurrence,p_lhfs,p_lhfs_free,p_lhfs_singlet,
    fef,fidelity,avg_fidelity,classical_threshold,status
  Numbers carry 12 significant digits. `concurrence` is the square root of the SO(4)
  bound; `p_lhfs` is p_lhfs_free at U = 0 and p_lhfs_singlet otherwise. `status` is
  `ok`, `warn: ...` or `error: ...`; failed rows leave the metric columns empty.

ENVIRONMENT
  HUBBARD_SWEEP_JOBS  default worker count when neither --jobs nor the config sets it

RDM DUMP (point --rdm-out)
  One `#` comment line, then 16 rows of 16 space-separated `re,im` pairs (row-major).
  Row/column index is 4a + b with a, b in {0: empty, 1: up, 2: down, 3: up-down}
  and a the first site of the pair.";

#[derive(Parser)]
#[command(name = "hubbard-sweep", version, about = "End-to-end entanglement and teleportation sweeps over Hubbard chains", after_help = CSV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the bond alternation δ (alternating-bond model)
    SweepDelta {
        #[arg(long, value_name = "START:STOP:STEPS")]
        delta_grid: Option<Grid>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the interaction U
    SweepU {
        #[arg(long = "U-grid", alias = "u-grid", value_name = "START:STOP:STEPS")]
        u_grid: Option<Grid>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep τ_b at fixed τ_a (alternating-hopping model)
    SweepTau {
        #[arg(long, value_name = "START:STOP:STEPS")]
        tau_b_grid: Option<Grid>,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep α₀ of the input (α₀, 1, 1, 1)
    SweepAlpha {
        #[arg(long, value_name = "START:STOP:STEPS")]
        alpha0_grid: Option<Grid>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one point and print every metric
    Point {
        /// Also write the pair density matrix as text
        #[arg(long, value_name = "FILE")]
        rdm_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in consistency checks
    Selftest,
}

#[derive(Args)]
struct Common {
    /// JSON file with SweepConfig fields; flags override it
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_model)]
    model: Option<ModelKind>,
    /// Chain lengths, comma separated
    #[arg(long = "L", value_delimiter = ',')]
    sites: Option<Vec<usize>>,
    /// Interaction values, comma separated
    #[arg(long = "U", value_delimiter = ',', allow_hyphen_values = true)]
    u: Option<Vec<f64>>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    tau_a: Option<f64>,
    #[arg(long)]
    tau_b: Option<f64>,
    /// Input amplitudes α₀,α₁,α₂,α₃ before normalization
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    #[arg(long, value_parser = parse_family)]
    family: Option<FamilySelector>,
    /// Particle sector N↑,N↓ (default: half filling)
    #[arg(long, value_parser = parse_pair)]
    sector: Option<(usize, usize)>,
    /// Site pair i,j (default: 1,L)
    #[arg(long, value_parser = parse_pair)]
    sites_pair: Option<(usize, usize)>,
    /// CSV destination (default: stdout)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Distance kept from δ = 1 and τ_a = 0
    #[arg(long)]
    epsilon: Option<f64>,
    /// Eigensolver residual tolerance
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: hubbard_teleport::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<FamilySelector, String> {
    s.parse().map_err(|e: hubbard_teleport::Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("{s:?} is not a,b"))?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad integer {a:?}"))?,
        b.trim().parse().map_err(|_| format!("bad integer {b:?}"))?,
    ))
}

impl Common {
    fn resolve(self, sweep: Option<(SweepParam, Option<Grid>)>) -> hubbard_teleport::Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::from_json_file(path)?,
            None => SweepConfig::default(),
        };
        macro_rules! take {
            ($($field:ident => $target:ident),*) => {
                $(if let Some(v) = self.$field { cfg.$target = v; })*
            };
        }
        take!(model => model, sites => sites, u => u, delta => delta, tau_a => tau_a, tau_b => tau_b,
              alpha => alpha, family => family, epsilon => epsilon, tol => solver_tol, seed => seed);
        if self.sector.is_some() {
            cfg.sector = self.sector;
        }
        if self.sites_pair.is_some() {
            cfg.end_sites = self.sites_pair;
        }
        if self.out.is_some() {
            cfg.out = self.out;
        }
        if self.jobs.is_some() {
            cfg.jobs = self.jobs;
        }
        match sweep {
            Some((param, grid)) => {
                if self.model.is_none() {
                    match param {
                        SweepParam::Delta => cfg.model = ModelKind::AltBonds,
                        SweepParam::TauB => cfg.model = ModelKind::AltHopping,
                        _ => {}
                    }
                }
                if cfg.sweep.is_some_and(|p| p != param) {
                    cfg.grid = None;
                }
                cfg.sweep = Some(param);
                if grid.is_some() {
                    cfg.grid = grid;
                }
                if cfg.grid.is_none() {
                    return Err(hubbard_teleport::Error::Config(format!("no grid given for the {param} sweep")));
                }
            }
            None => {
                cfg.sweep = None;
                cfg.grid = None;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run_grid(cfg: SweepConfig) -> ExitCode {
    let rows = match run_sweep(&cfg) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = emit_csv(&rows, path) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{}", csv_string(&rows)),
    }
    let failed: Vec<_> = rows.iter().enumerate().filter(|(_, r)| !r.succeeded()).collect();
    if failed.is_empty() {
        return ExitCode::SUCCESS;
    }
    eprintln!("{} of {} points failed:", failed.len(), rows.len());
    for (k, r) in failed {
        eprintln!("  point {k} (L={} U={} delta={} tau_b={}): {}", r.point.sites, r.point.u, r.point.delta, r.point.tau_b, r.status());
    }
    ExitCode::from(1)
}

fn run_point(cfg: SweepConfig, rdm_out: Option<PathBuf>) -> ExitCode {
    let point = cfg.points().remove(0);
    let m = match evaluate_point(&point, &cfg.solver_options()) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let spec = point.model_spec();
    println!("model               {} (bonds {:?})", point.model, spec.bond_strengths());
    println!("L                   {}", point.sites);
    println!("sector              {:?}", point.sector);
    println!("U                   {}", point.u);
    println!("pair                {:?}", point.pair);
    println!("family              {}", point.family);
    println!("alpha               {:?}", point.alpha);
    println!("energy              {:.12}", m.energy);
    println!("gap                 {:.6e}{}", m.gap, if m.degenerate { "  (degenerate)" } else { "" });
    println!("concurrence         {:.12}", m.concurrence);
    println!("p_lhfs_free         {:.12}", m.p_lhfs_free);
    println!("p_lhfs_singlet      {:.12}", m.p_lhfs_singlet);
    println!("fef                 {:.12}", m.fef);
    println!("fidelity            {:.12}", m.fidelity);
    println!("avg_fidelity        {:.12}", m.avg_fidelity);
    println!("classical_threshold {:.12}", m.classical_threshold);
    println!("purity              {:.12}", m.rho.purity());
    if let Some(w) = &m.warning {
        println!("warning             {w}");
    }
    if let Some(path) = rdm_out {
        if let Err(e) = m.rho.write_text(&path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let resolved = match cli.command {
        Command::Selftest => {
            let mut ok = true;
            for c in hubbard_teleport::selftest::run() {
                let tag = match c.passed {
                    Some(true) => "PASS",
                    Some(false) => {
                        ok = false;
                        "FAIL"
                    }
                    None => "SKIP",
                };
                println!("{tag} {}: {}", c.name, c.detail);
            }
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
        Command::Point { rdm_out, common } => common.resolve(None).map(|c| (c, Some(rdm_out))),
        Command::SweepDelta { delta_grid, common } => common.resolve(Some((SweepParam::Delta, delta_grid))).map(|c| (c, None)),
        Command::SweepU { u_grid, common } => common.resolve(Some((SweepParam::U, u_grid))).map(|c| (c, None)),
        Command::SweepTau { tau_b_grid, common } => common.resolve(Some((SweepParam::TauB, tau_b_grid))).map(|c| (c, None)),
        Command::SweepAlpha { alpha0_grid, common } => common.resolve(Some((SweepParam::Alpha0, alpha0_grid))).map(|c| (c, None)),
    };
    match resolved {
        Ok((cfg, Some(rdm_out))) => run_point(cfg, rdm_out),
        Ok((cfg, None)) => run_grid(cfg),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
