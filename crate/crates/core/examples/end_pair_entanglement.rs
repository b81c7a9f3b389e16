//! Concurrence bound and LHFS weight of the end pair (1, L) along the
//! alternating-bond line.
//!
//!     cargo run --release --example end_pair_entanglement -- 8 0.0

use hubbard_teleport::eigen::{ground_state, SolverOptions};
use hubbard_teleport::entanglement::{concurrence_lower_bound, lhfs_free, lhfs_singlet, state_probability};
use hubbard_teleport::hamiltonian::{build, ModelSpec};
use hubbard_teleport::rdm::two_site_rdm;

fn main() -> hubbard_teleport::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let sites: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let u: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.0);

    println!("L={sites} U={u}");
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "delta", "C_lb", "P_free", "P_singlet", "gap");
    for delta in [0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 0.99] {
        let model = ModelSpec::alternating_bonds(sites, delta, u);
        let (nu, nd) = model.half_filling();
        let h = build(&model, nu, nd)?;
        let g = ground_state(&h, &SolverOptions::default())?;
        let rho = two_site_rdm(&g, h.basis(), 1, sites)?;
        let c = concurrence_lower_bound(&rho)?.lower_bound;
        let pf = state_probability(&rho.entries, &lhfs_free())?;
        let ps = state_probability(&rho.entries, &lhfs_singlet())?;
        println!("{delta:>6.2} {c:>10.6} {pf:>10.6} {ps:>10.6} {:>10.3e}", g.gap);
    }
    Ok(())
}
