//! The end-pair matrix depends on the Jordan-Wigner mode order; the bound does not.

use hubbard_teleport::eigen::{ground_state, SolverOptions};
use hubbard_teleport::entanglement::{concurrence_lower_bound, lhfs_free, state_probability};
use hubbard_teleport::fock::{ModeLayout, ModeOrdering, SectorBasis, DEFAULT_DIM_CAP};
use hubbard_teleport::hamiltonian::{build_on, ModelSpec};
use hubbard_teleport::rdm::{two_site_rdm, TwoSiteDensityMatrix};
use hubbard_teleport::teleport::{bell_family, channel_output, input_state_real};

fn end_pair(ordering: ModeOrdering) -> TwoSiteDensityMatrix {
    let model = ModelSpec::alternating_bonds(8, 0.99, 0.0);
    let basis = SectorBasis::new(ModeLayout::new(8, ordering).unwrap(), 4, 4, DEFAULT_DIM_CAP).unwrap();
    let h = build_on(&model, basis.into());
    let g = ground_state(&h, &SolverOptions::default()).unwrap();
    two_site_rdm(&g, h.basis(), 1, 8).unwrap()
}

#[test]
fn interleaved_order_changes_phases_not_entanglement() {
    let species = end_pair(ModeOrdering::SpeciesMajor);
    let interleaved = end_pair(ModeOrdering::SiteInterleaved);
    let c_s = concurrence_lower_bound(&species).unwrap().lower_bound;
    let c_i = concurrence_lower_bound(&interleaved).unwrap().lower_bound;
    assert!((c_s - c_i).abs() < 1e-8, "{c_s} vs {c_i}");

    let rho_in = input_state_real(&[1.0, 1.0, 1.0, 1.0]).unwrap().density();
    let bell = bell_family(4).unwrap();
    let f = |rho: &TwoSiteDensityMatrix| channel_output(&rho.entries, &rho_in, &bell).unwrap().fidelity;
    let p = |rho: &TwoSiteDensityMatrix| state_probability(&rho.entries, &lhfs_free()).unwrap();
    assert!((f(&species) - 0.5).abs() < 1e-3);
    assert!((p(&species) - 1.0).abs() < 1e-3);
    assert!((f(&interleaved) - 0.25).abs() < 1e-3, "{}", f(&interleaved));
    assert!((p(&interleaved) - 0.25).abs() < 1e-3, "{}", p(&interleaved));
}
