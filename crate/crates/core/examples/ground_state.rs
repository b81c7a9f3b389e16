//! Ground state of a Hubbard chain: block Lanczos against dense diagonalization.
//!
//!     cargo run --release --example ground_state -- 6 4.0

use std::time::Instant;

use hubbard_teleport::eigen::{dense_spectrum, ground_state, SolverOptions};
use hubbard_teleport::hamiltonian::build_uniform;

fn main() -> hubbard_teleport::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let sites: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let u: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(4.0);

    let h = build_uniform(sites, u, sites / 2, sites / 2)?;
    println!("L={sites} U={u}: dimension {}, {} stored entries", h.dim(), h.nnz());

    let start = Instant::now();
    let g = ground_state(&h, &SolverOptions { dense_threshold: 0, ..SolverOptions::default() })?;
    println!(
        "{:?}: E0 = {:.12}  gap = {:.6}  residual = {:.1e}  matvecs = {}  parity = {:?}  ({:.2}s)",
        g.method,
        g.energy,
        g.gap,
        g.residual,
        g.matvecs,
        g.parity,
        start.elapsed().as_secs_f64()
    );
    if h.dim() <= 2000 {
        let exact = dense_spectrum(&h)?;
        println!("Dense:  E0 = {:.12}  E1 = {:.12}", exact[0], exact[1]);
    }
    Ok(())
}
