use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hubbard_teleport::entanglement::{concurrence_lower_bound_of, pair_lambdas_of, so_generators};
use hubbard_teleport::fock::enumerate_sector;
use hubbard_teleport::rdm::{hermitian_eigenvalues, two_site_rdm_from_amplitudes};
use hubbard_teleport::selftest::{random_density_matrix, random_family, random_pure_state, random_unitary};
use hubbard_teleport::teleport::{
    bell_family, channel_output, completeness_defect, hubbard_family, weyl_operator, HubbardMode,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pure(psi: &DVector<Complex64>) -> DMatrix<Complex64> {
    psi * psi.adjoint()
}

/// C² = d/(d−1) (1 − Tr ρ_A²) for a pure state on C^d ⊗ C^d, normalised to 1
/// on the maximally entangled state like the bound.
fn exact_pure_concurrence_sq(psi: &DVector<Complex64>, d: usize) -> f64 {
    let c = DMatrix::from_fn(d, d, |a, b| psi[d * a + b]);
    let rho_a = &c * c.adjoint();
    d as f64 / (d as f64 - 1.0) * (1.0 - (&rho_a * &rho_a).trace().re)
}

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases(40))]

    #[test]
    fn projector_families_resolve_identity(seed in any::<u64>(), d in 2usize..=5) {
        let fam = random_family(d, &mut rng(seed));
        prop_assert!(completeness_defect(&fam) < 1e-12);
        let ps = fam.projectors();
        for (a, pa) in ps.iter().enumerate() {
            prop_assert!((pa * pa - pa).norm() < 1e-12);
            for pb in &ps[a + 1..] {
                prop_assert!((pa * pb).trace().norm() < 1e-12);
            }
        }
    }

    #[test]
    fn sector_states_give_valid_pair_matrices(
        seed in any::<u64>(),
        l in 2usize..=6,
        fill in (0usize..=6, 0usize..=6),
        pair in (1usize..=6, 1usize..=6),
    ) {
        let (nu, nd) = (fill.0.min(l), fill.1.min(l));
        let (i, j) = (pair.0.min(pair.1).min(l - 1), pair.0.max(pair.1).min(l));
        prop_assume!(i < j);
        let basis = enumerate_sector(l, nu, nd).unwrap();
        let mut r = rng(seed);
        let mut amps: Vec<f64> = (0..basis.len()).map(|_| r.gen_range(-1.0..1.0)).collect();
        let norm = amps.iter().map(|x| x * x).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|x| *x /= norm);
        let rho = two_site_rdm_from_amplitudes(&basis, &amps, i, j).unwrap();
        prop_assert!(rho.validate().is_ok(), "{:?}", rho.validate());
        prop_assert!(rho.superselection_violation() < 1e-14);
        prop_assert!((rho.entries.trace().re - 1.0).abs() < 1e-12);
        prop_assert!((&rho.entries - rho.entries.adjoint()).norm() < 1e-14);
        prop_assert!(rho.eigenvalues().iter().all(|&x| x > -1e-12));
    }

    #[test]
    fn channel_is_trace_preserving_and_positive(seed in any::<u64>(), rank in 1usize..=16) {
        let mut r = rng(seed);
        let families = [
            bell_family(4).unwrap(),
            hubbard_family(HubbardMode::Fixed, None).unwrap(),
            random_family(4, &mut r),
        ];
        let chi = random_density_matrix(16, rank, &mut r);
        let rho = random_density_matrix(4, 1 + rank % 4, &mut r);
        for fam in &families {
            let out = channel_output(&chi, &rho, fam).unwrap();
            prop_assert!((out.output.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            prop_assert!(hermitian_eigenvalues(&out.output).iter().all(|&x| x > -1e-12));
            prop_assert!(out.outcome_weights.iter().all(|&w| w > -1e-12));
            prop_assert!((out.outcome_weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn bound_never_exceeds_pure_state_concurrence() {
    let mut r = rng(6);
    for d in [2, 3, 4] {
        for _ in 0..100 {
            let psi = random_pure_state(d * d, &mut r);
            let tau2 = concurrence_lower_bound_of(&pure(&psi)).unwrap().tau2;
            let exact = exact_pure_concurrence_sq(&psi, d);
            assert!(tau2 <= exact + 1e-10, "d={d}: τ₂ = {tau2}, C² = {exact}");
        }
    }
}

#[test]
fn bound_is_tight_on_pure_states() {
    let mut r = rng(7);
    for d in [2, 3, 4] {
        for _ in 0..50 {
            let psi = random_pure_state(d * d, &mut r);
            let tau2 = concurrence_lower_bound_of(&pure(&psi)).unwrap().tau2;
            assert!((tau2 - exact_pure_concurrence_sq(&psi, d)).abs() < 1e-10);
        }
    }
}

#[test]
fn pure_states_have_rank_one_lambdas() {
    let mut r = rng(8);
    let set = so_generators(4).unwrap();
    for _ in 0..20 {
        let rho = pure(&random_pure_state(16, &mut r));
        for ga in &set.generators {
            for gb in &set.generators {
                let l = pair_lambdas_of(&rho, ga, gb).unwrap();
                assert!(l[1..].iter().all(|&x| x == 0.0), "{l:?}");
            }
        }
    }
}

#[test]
fn product_states_have_zero_bound() {
    let mut r = rng(9);
    for rank in 1..=4 {
        let a = random_density_matrix(4, rank, &mut r);
        let b = random_density_matrix(4, 5 - rank, &mut r);
        let report = concurrence_lower_bound_of(&a.kronecker(&b)).unwrap();
        assert!(report.tau2 < 1e-12, "rank {rank}: {}", report.tau2);
    }
}

#[test]
fn weyl_operators_form_an_orthogonal_unitary_basis() {
    for d in 2..=5 {
        let ops: Vec<_> = (0..d * d).map(|k| weyl_operator(d, k / d, k % d).unwrap()).collect();
        for (a, u) in ops.iter().enumerate() {
            assert!((u.adjoint() * u - DMatrix::<Complex64>::identity(d, d)).norm() < 1e-12);
            for (b, v) in ops.iter().enumerate() {
                let ip = (u.adjoint() * v).trace();
                let want = if a == b { d as f64 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-12, "d={d} ({a},{b})");
            }
        }
    }
}

// The SO(d) construction is not manifestly LU invariant; report the spread only.
#[test]
fn local_unitary_spread_of_bound() {
    let mut r = rng(10);
    let mut spread = 0.0f64;
    for _ in 0..20 {
        let rho = pure(&random_pure_state(16, &mut r));
        let w = random_unitary(4, &mut r).kronecker(&random_unitary(4, &mut r));
        let moved = &w * &rho * w.adjoint();
        let a = concurrence_lower_bound_of(&rho).unwrap().lower_bound;
        let b = concurrence_lower_bound_of(&moved).unwrap().lower_bound;
        spread = spread.max((a - b).abs());
    }
    eprintln!("max |C_lb(ρ) − C_lb(W ρ W†)| over 20 pure states: {spread:.3e}");
    assert!(spread.is_finite());
}
