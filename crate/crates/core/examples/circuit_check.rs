//! Closed-form channel against an explicit three-qudit simulation.
//!
//!     cargo run --release --example circuit_check

use rand::SeedableRng;

use hubbard_teleport::selftest::{random_density_matrix, random_family, random_pure_state};
use hubbard_teleport::teleport::{bell_family, channel_output, circuit_oracle, hubbard_family, HubbardMode};

fn main() -> hubbard_teleport::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for k in 0..8 {
        let (name, fam) = match k % 3 {
            0 => ("bell", bell_family(4)?),
            1 => ("hubbard-fixed", hubbard_family(HubbardMode::Fixed, None)?),
            _ => ("random frame", random_family(4, &mut rng)),
        };
        let rank = 1 + 2 * k;
        let chi = random_density_matrix(16, rank, &mut rng);
        let psi = random_pure_state(4, &mut rng);
        let rho = &psi * psi.adjoint();
        let closed = channel_output(&chi, &rho, &fam)?;
        let circuit = circuit_oracle(&chi, &rho, &fam)?;
        println!(
            "{name:<14} rank χ = {rank:>2}  F = {:.6}  ‖Δ‖ = {:.1e}",
            closed.fidelity,
            (closed.output - circuit).norm()
        );
    }
    Ok(())
}
