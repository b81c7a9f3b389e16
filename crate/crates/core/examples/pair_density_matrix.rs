//! Two-site reduced density matrix of a chain ground state, in the qudit
//! basis |0⟩, |↑⟩, |↓⟩, |↑↓⟩ per site.
//!
//!     cargo run --release --example pair_density_matrix -- 6 0.9 2.0 rho.txt

use hubbard_teleport::eigen::{ground_state, SolverOptions};
use hubbard_teleport::fock::LocalConfig;
use hubbard_teleport::hamiltonian::{build, ModelSpec};
use hubbard_teleport::rdm::{pair_charges, two_site_rdm};

fn main() -> hubbard_teleport::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let sites: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let delta: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.9);
    let u: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(2.0);

    let model = ModelSpec::alternating_bonds(sites, delta, u);
    let (nu, nd) = model.half_filling();
    let h = build(&model, nu, nd)?;
    let g = ground_state(&h, &SolverOptions::default())?;
    let rho = two_site_rdm(&g, h.basis(), 1, sites)?;
    rho.validate()?;

    println!("ρ(1,{sites}) at δ={delta}, U={u}: purity {:.6}", rho.purity());
    let labels: Vec<String> = (0..16)
        .map(|k| format!("{}{}", LocalConfig::from_index(k / 4).unwrap(), LocalConfig::from_index(k % 4).unwrap()))
        .collect();
    for r in 0..16 {
        let row: Vec<String> = (0..16)
            .map(|c| {
                let x = rho.get(r, c).re;
                if x.abs() < 5e-5 { "      .".into() } else { format!("{x:>7.4}") }
            })
            .collect();
        println!("{:>6} {:?} {}", labels[r], pair_charges(r), row.join(""));
    }
    println!("eigenvalues: {:.5?}", rho.eigenvalues());
    println!("single-site marginal, site 1: {:.5?}", rho.first_site().diagonal().map(|z| z.re).as_slice());

    if let Some(path) = args.get(4) {
        rho.write_text(path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
