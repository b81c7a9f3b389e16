//! Teleportation fidelity of the input (α₀, 1, 1, 1) through a uniform chain.
//!
//!     cargo run --release --example input_state_dependence -- 4 0.0

use hubbard_teleport::eigen::{ground_state, SolverOptions};
use hubbard_teleport::hamiltonian::build_uniform;
use hubbard_teleport::rdm::two_site_rdm;
use hubbard_teleport::teleport::{bell_family, channel_output, input_state_real};

fn main() -> hubbard_teleport::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let sites: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let u: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.0);

    let h = build_uniform(sites, u, sites / 2, sites / 2)?;
    let g = ground_state(&h, &SolverOptions::default())?;
    let chi = two_site_rdm(&g, h.basis(), 1, sites)?;
    let bell = bell_family(4)?;
    for k in 0..=16 {
        let a0 = 0.25 * k as f64;
        let rho_in = input_state_real(&[a0, 1.0, 1.0, 1.0])?.density();
        let f = channel_output(&chi.entries, &rho_in, &bell)?.fidelity;
        println!("α₀ = {a0:>4.2}  F = {f:.6}  {}", "#".repeat((f * 100.0) as usize));
    }
    Ok(())
}
