//! Qudit teleportation through a chain end pair with the three projector families.
//!
//!     cargo run --release --example teleport_channel -- 8 0.99 0.0

use hubbard_teleport::eigen::{ground_state, SolverOptions};
use hubbard_teleport::hamiltonian::{build, ModelSpec};
use hubbard_teleport::rdm::two_site_rdm;
use hubbard_teleport::teleport::{bell_family, channel_output, hubbard_family, input_state_real, HubbardMode};

fn main() -> hubbard_teleport::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let sites: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let delta: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.99);
    let u: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0.0);

    let model = ModelSpec::alternating_bonds(sites, delta, u);
    let (nu, nd) = model.half_filling();
    let h = build(&model, nu, nd)?;
    let g = ground_state(&h, &SolverOptions::default())?;
    let chi = two_site_rdm(&g, h.basis(), 1, sites)?;
    let rho_in = input_state_real(&[1.0, 1.0, 1.0, 1.0])?.density();

    println!("resource: end pair of L={sites}, δ={delta}, U={u}; input (1,1,1,1)/2");
    let families = [
        ("bell", bell_family(4)?),
        ("hubbard-fixed", hubbard_family(HubbardMode::Fixed, None)?),
        ("hubbard-adaptive", hubbard_family(HubbardMode::Adaptive, Some(&chi))?),
    ];
    for (name, fam) in &families {
        let r = channel_output(&chi.entries, &rho_in, fam)?;
        println!(
            "{name:<17} F = {:.6}  FEF = {:.6}  ⟨F⟩ = {:.6}  (classical {:.3}){}",
            r.fidelity,
            r.fef,
            r.avg_fidelity,
            r.classical_threshold,
            fam.warning.as_deref().map(|w| format!("  [{w}]")).unwrap_or_default()
        );
    }
    let r = channel_output(&chi.entries, &rho_in, &families[0].1)?;
    println!("bell outcome weights: {:.4?}", r.outcome_weights);
    Ok(())
}
