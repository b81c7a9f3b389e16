//! δ sweep of the alternating-bond chain through the sweep API, written as CSV.
//!
//!     cargo run --release --example alternating_bonds_sweep -- sweep.csv

use hubbard_teleport::sweep::{emit_csv, run_sweep, FamilySelector, ModelKind, SweepConfig, SweepParam};

fn main() -> hubbard_teleport::Result<()> {
    let cfg = SweepConfig {
        model: ModelKind::AltBonds,
        sites: vec![4, 6, 8],
        u: vec![0.0],
        sweep: Some(SweepParam::Delta),
        grid: Some("0:0.99:12".parse()?),
        family: FamilySelector::Bell,
        ..SweepConfig::default()
    };
    cfg.validate()?;
    let rows = run_sweep(&cfg)?;
    println!("{:>2} {:>6} {:>9} {:>9} {:>9}", "L", "delta", "C_lb", "P_lhfs", "F_bell");
    for r in &rows {
        match &r.outcome {
            Ok(m) => println!("{:>2} {:>6.3} {:>9.5} {:>9.5} {:>9.5}", r.point.sites, r.point.delta, m.concurrence, m.p_lhfs, m.fidelity),
            Err(e) => println!("{:>2} {:>6.3} {e}", r.point.sites, r.point.delta),
        }
    }
    if let Some(path) = std::env::args().nth(1) {
        emit_csv(&rows, path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
