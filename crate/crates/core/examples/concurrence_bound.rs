//! SO(4) concurrence lower bound on reference states and on a chain end pair.
//!
//!     cargo run --release --example concurrence_bound

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;

use hubbard_teleport::entanglement::{concurrence_lower_bound_of, lhfs_free, lhfs_singlet, projector, psi_plus};
use hubbard_teleport::selftest::random_pure_state;

fn werner(d: usize, p: f64) -> DMatrix<Complex64> {
    let mixed = DMatrix::<Complex64>::identity(d * d, d * d) / Complex64::new((d * d) as f64, 0.0);
    projector(&psi_plus(d)) * Complex64::new(p, 0.0) + mixed * Complex64::new(1.0 - p, 0.0)
}

fn main() -> hubbard_teleport::Result<()> {
    for (name, state) in [("ψ⁺ (d=4)", psi_plus(4)), ("LHFS, free", lhfs_free()), ("LHFS, singlet", lhfs_singlet())] {
        let r = concurrence_lower_bound_of(&projector(&state))?;
        println!("{name:<14} τ₂ = {:.6}  C_lb = {:.6}", r.tau2, r.lower_bound);
    }

    println!("\nisotropic states p|ψ⁺⟩⟨ψ⁺| + (1−p) I/16");
    for p in [0.1, 0.2, 0.3, 0.5, 0.8, 1.0] {
        println!("  p = {p:.1}  C_lb = {:.6}", concurrence_lower_bound_of(&werner(4, p))?.lower_bound);
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    println!("\nrandom pure states: bound vs exact √(4/3 (1 − Tr ρ_A²))");
    for _ in 0..5 {
        let psi = random_pure_state(16, &mut rng);
        let c = DMatrix::from_fn(4, 4, |a, b| psi[4 * a + b]);
        let rho_a = &c * c.adjoint();
        let exact = (4.0 / 3.0 * (1.0 - (&rho_a * &rho_a).trace().re)).sqrt();
        let bound = concurrence_lower_bound_of(&(&psi * psi.adjoint()))?.lower_bound;
        println!("  C_lb = {bound:.6}  C = {exact:.6}");
    }
    Ok(())
}
