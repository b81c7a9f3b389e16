//! τ_b sweep of the alternating-hopping chain at fixed τ_a = 1.
//!
//!     cargo run --release --example hopping_sweep

use hubbard_teleport::sweep::{run_sweep, FamilySelector, ModelKind, SweepConfig, SweepParam};

fn main() -> hubbard_teleport::Result<()> {
    let cfg = SweepConfig {
        model: ModelKind::AltHopping,
        sites: vec![8],
        u: vec![0.0, 8.0],
        tau_a: 1.0,
        sweep: Some(SweepParam::TauB),
        grid: Some("0.5:8:16".parse()?),
        family: FamilySelector::HubbardAdaptive,
        ..SweepConfig::default()
    };
    cfg.validate()?;
    println!("{:>4} {:>6} {:>9} {:>9} {:>9}", "U", "tau_b", "C_lb", "P_lhfs", "F_adapt");
    for r in run_sweep(&cfg)? {
        let m = r.outcome.map_err(hubbard_teleport::Error::NumericalIntegrity)?;
        println!("{:>4} {:>6.2} {:>9.5} {:>9.5} {:>9.5}", r.point.u, r.point.tau_b, m.concurrence, m.p_lhfs, m.fidelity);
    }
    Ok(())
}
