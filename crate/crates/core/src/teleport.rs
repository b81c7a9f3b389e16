//! Standard d-dimensional teleportation through a two-qudit resource χ.
//!
//! A projector family is generated from one maximally entangled base state
//! Φ = (W ⊗ I)|ψ⁺⟩ by the Weyl operators on the first qudit. The channel maps
//! ρ to Σ_nm Tr[E^{nm} χ] U^{n,−m} ρ (U^{n,−m})†.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::entanglement::{lhfs_free, psi_plus};
use crate::error::{domain, Result};
use crate::rdm::TwoSiteDensityMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuditState {
    pub amplitudes: DVector<Complex64>,
}

impl QuditState {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn density(&self) -> DMatrix<Complex64> {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

/// Normalizes (α₀, …, α_{d−1}).
pub fn make_input_state(alphas: &[Complex64]) -> Result<QuditState> {
    let v = DVector::from_column_slice(alphas);
    let n = v.norm();
    if alphas.len() < 2 || n == 0.0 || !n.is_finite() {
        return domain(format!("cannot normalize input amplitudes {alphas:?}"));
    }
    Ok(QuditState { amplitudes: v / real(n) })
}

/// Real amplitudes convenience wrapper.
pub fn input_state_real(alphas: &[f64]) -> Result<QuditState> {
    make_input_state(&alphas.iter().map(|&a| real(a)).collect::<Vec<_>>())
}

/// U^{nm} = Σ_k e^{2πikn/d} |k⟩⟨k ⊕ m|.
pub fn weyl_operator(d: usize, n: usize, m: usize) -> Result<DMatrix<Complex64>> {
    if d < 2 || n >= d || m >= d {
        return domain(format!("Weyl operator ({n}, {m}) undefined for d = {d}"));
    }
    let mut u = DMatrix::zeros(d, d);
    for k in 0..d {
        u[(k, (k + m) % d)] = Complex64::from_polar(1.0, 2.0 * PI * (k * n) as f64 / d as f64);
    }
    Ok(u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Bell,
    HubbardFixed,
    HubbardAdaptive,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HubbardMode {
    Fixed,
    Adaptive,
}

#[derive(Clone, Debug)]
pub struct ProjectorFamily {
    pub d: usize,
    pub kind: FamilyKind,
    /// Φ, a maximally entangled two-qudit state.
    pub base_state: DVector<Complex64>,
    /// W with Φ = (W ⊗ I)|ψ⁺⟩.
    pub frame: DMatrix<Complex64>,
    /// (U^{nm} ⊗ I)|Φ⟩ at index n·d + m.
    pub states: Vec<DVector<Complex64>>,
    /// Set when an adaptive base state had to be pulled far from its source.
    pub warning: Option<String>,
}

/// Coefficient matrix C[a, b] of Σ C[a, b] |a, b⟩.
fn coefficients(state: &DVector<Complex64>, d: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(d, d, |a, b| state[a * d + b])
}

fn flatten(c: &DMatrix<Complex64>) -> DVector<Complex64> {
    let d = c.nrows();
    DVector::from_fn(d * d, |k, _| c[(k / d, k % d)])
}

fn embed_first(u: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    u.kronecker(&DMatrix::identity(u.nrows(), u.nrows()))
}

/// Makes the largest-magnitude entry real and positive.
fn fix_global_phase(v: &mut DVector<Complex64>) {
    let pivot = v
        .iter()
        .enumerate()
        .fold(0, |best, (k, z)| if z.norm() > v[best].norm() * (1.0 + 1e-12) { k } else { best });
    let p = v[pivot];
    if p.norm() > 0.0 {
        let phase = p.conj() / p.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

impl ProjectorFamily {
    fn from_frame(frame: DMatrix<Complex64>, kind: FamilyKind, warning: Option<String>) -> Result<Self> {
        let d = frame.nrows();
        let base_state = embed_first(&frame) * psi_plus(d);
        let mut states = Vec::with_capacity(d * d);
        for n in 0..d {
            for m in 0..d {
                states.push(embed_first(&weyl_operator(d, n, m)?) * &base_state);
            }
        }
        Ok(ProjectorFamily {
            d,
            kind,
            base_state,
            frame,
            states,
            warning,
        })
    }

    /// Family generated by an arbitrary maximally entangled base state.
    pub fn from_base_state(base: &DVector<Complex64>) -> Result<Self> {
        let d = (base.len() as f64).sqrt().round() as usize;
        if d < 2 || d * d != base.len() {
            return domain(format!("base state of length {} is not two qudits", base.len()));
        }
        if (base.norm() - 1.0).abs() > 1e-10 {
            return domain(format!("base state norm {} is not 1", base.norm()));
        }
        let frame = coefficients(base, d) * real((d as f64).sqrt());
        let defect = (&frame * frame.adjoint() - DMatrix::identity(d, d)).norm();
        if defect > 1e-10 {
            return domain(format!("base state is not maximally entangled (defect {defect:.2e})"));
        }
        Self::from_frame(frame, FamilyKind::Custom, None)
    }

    pub fn projector(&self, n: usize, m: usize) -> DMatrix<Complex64> {
        let v = &self.states[n * self.d + m];
        v * v.adjoint()
    }

    pub fn projectors(&self) -> Vec<DMatrix<Complex64>> {
        self.states.iter().map(|v| v * v.adjoint()).collect()
    }
}

pub fn bell_family(d: usize) -> Result<ProjectorFamily> {
    if d < 2 {
        return domain(format!("teleportation needs d ≥ 2, got {d}"));
    }
    ProjectorFamily::from_frame(DMatrix::identity(d, d), FamilyKind::Bell, None)
}

/// Singular-value ratio below which an adaptive base state is flagged.
pub const ADAPTIVE_WARN_RATIO: f64 = 0.1;

/// Family built on the local half filled state, either the fixed form or
/// the nearest maximally entangled state to the resource's dominant eigenvector.
pub fn hubbard_family(mode: HubbardMode, rho_resource: Option<&TwoSiteDensityMatrix>) -> Result<ProjectorFamily> {
    match mode {
        HubbardMode::Fixed => {
            let frame = coefficients(&lhfs_free(), 4) * real(2.0);
            ProjectorFamily::from_frame(frame, FamilyKind::HubbardFixed, None)
        }
        HubbardMode::Adaptive => {
            let rho = match rho_resource {
                Some(r) => r,
                None => return domain("adaptive Hubbard family needs the resource density matrix"),
            };
            let (frame, warning) = adaptive_frame(&rho.entries)?;
            ProjectorFamily::from_frame(frame, FamilyKind::HubbardAdaptive, warning)
        }
    }
}

/// Polar projection of the dominant eigenvector's coefficient matrix onto √d·unitary.
fn adaptive_frame(rho: &DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, Option<String>)> {
    let n = rho.nrows();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n || rho.ncols() != n {
        return domain(format!("{:?} is not a two-qudit density matrix", rho.shape()));
    }
    let eig = nalgebra::SymmetricEigen::new(rho.clone());
    let top = eig.eigenvalues.imax();
    let mut v: DVector<Complex64> = eig.eigenvectors.column(top).into_owned();
    fix_global_phase(&mut v);
    let svd = coefficients(&v, d).svd(true, true);
    let (u, vt) = (svd.u.expect("requested U"), svd.v_t.expect("requested Vᵀ"));
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let warning = (smin < ADAPTIVE_WARN_RATIO * smax).then(|| {
        format!("dominant resource state is far from maximally entangled (singular values {smin:.3e}..{smax:.3e})")
    });
    let q = u * vt;
    let mut base = flatten(&q) / real((d as f64).sqrt());
    fix_global_phase(&mut base);
    Ok((coefficients(&base, d) * real((d as f64).sqrt()), warning))
}

#[derive(Clone, Debug)]
pub struct ChannelResult {
    pub output: DMatrix<Complex64>,
    /// Tr(ρ_in ρ_out).
    pub fidelity: f64,
    /// ⟨Φ|χ|Φ⟩ for the family's base state.
    pub fef: f64,
    pub avg_fidelity: f64,
    pub classical_threshold: f64,
    /// Tr[E^{nm} χ] at index n·d + m.
    pub outcome_weights: Vec<f64>,
}

fn check_inputs(chi: &DMatrix<Complex64>, rho_in: &DMatrix<Complex64>, family: &ProjectorFamily) -> Result<()> {
    let d = family.d;
    if chi.shape() != (d * d, d * d) {
        return domain(format!("resource {:?} does not match d = {d}", chi.shape()));
    }
    if rho_in.shape() != (d, d) {
        return domain(format!("input {:?} does not match d = {d}", rho_in.shape()));
    }
    Ok(())
}

fn expectation(v: &DVector<Complex64>, m: &DMatrix<Complex64>) -> f64 {
    (v.adjoint() * m * v)[(0, 0)].re
}

pub fn channel_output(
    chi: &DMatrix<Complex64>,
    rho_in: &DMatrix<Complex64>,
    family: &ProjectorFamily,
) -> Result<ChannelResult> {
    check_inputs(chi, rho_in, family)?;
    let d = family.d;
    let mut output = DMatrix::zeros(d, d);
    let mut outcome_weights = Vec::with_capacity(d * d);
    for n in 0..d {
        for m in 0..d {
            let w = expectation(&family.states[n * d + m], chi);
            let u = weyl_operator(d, n, (d - m) % d)?;
            output += (&u * rho_in * u.adjoint()) * real(w);
            outcome_weights.push(w);
        }
    }
    let f = fully_entangled_fraction(chi, family);
    Ok(ChannelResult {
        fidelity: fidelity(rho_in, &output),
        output,
        fef: f,
        avg_fidelity: average_fidelity(f, d),
        classical_threshold: classical_threshold(d),
        outcome_weights,
    })
}

/// Tr(ρ_in ρ_out).
pub fn fidelity(rho_in: &DMatrix<Complex64>, rho_out: &DMatrix<Complex64>) -> f64 {
    (rho_in * rho_out).trace().re
}

pub fn fully_entangled_fraction(chi: &DMatrix<Complex64>, family: &ProjectorFamily) -> f64 {
    expectation(&family.base_state, chi)
}

pub fn average_fidelity(f: f64, d: usize) -> f64 {
    (d as f64 * f + 1.0) / (d as f64 + 1.0)
}

/// Best average fidelity reachable without entanglement.
pub fn classical_threshold(d: usize) -> f64 {
    2.0 / (d as f64 + 1.0)
}

/// Explicit three-qudit simulation of the protocol on (in, A, B).
///
/// Alice measures (in, A) in the Bell basis (U^{nm} ⊗ I)|ψ⁺⟩ and Bob applies
/// U^{nm} W̄, W being the family frame. Summed over outcomes this reproduces
/// `channel_output` for every family.
pub fn circuit_oracle(
    chi: &DMatrix<Complex64>,
    rho_in: &DMatrix<Complex64>,
    family: &ProjectorFamily,
) -> Result<DMatrix<Complex64>> {
    check_inputs(chi, rho_in, family)?;
    let d = family.d;
    let total = rho_in.kronecker(chi);
    let bell = bell_family(d)?;
    let w_conj = family.frame.conjugate();
    let mut output = DMatrix::<Complex64>::zeros(d, d);
    for n in 0..d {
        for m in 0..d {
            let v = &bell.states[n * d + m];
            // (⟨v| ⊗ I) total (|v⟩ ⊗ I)
            let mut bob = DMatrix::<Complex64>::zeros(d, d);
            for b in 0..d {
                for b2 in 0..d {
                    let mut acc = ZERO;
                    for i in 0..d * d {
                        if v[i] == ZERO {
                            continue;
                        }
                        for i2 in 0..d * d {
                            acc += v[i].conj() * total[(i * d + b, i2 * d + b2)] * v[i2];
                        }
                    }
                    bob[(b, b2)] = acc;
                }
            }
            let c = weyl_operator(d, n, m)? * &w_conj;
            output += &c * bob * c.adjoint();
        }
    }
    Ok(output)
}

/// Identity check helper for tests and diagnostics.
pub fn completeness_defect(family: &ProjectorFamily) -> f64 {
    let n = family.d * family.d;
    let sum = family
        .projectors()
        .into_iter()
        .fold(DMatrix::<Complex64>::zeros(n, n), |acc, p| acc + p);
    (sum - DMatrix::<Complex64>::identity(n, n) * ONE).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::projector;

    fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_operator(4, 0, 0).unwrap(), DMatrix::identity(4, 4));
        let shift = weyl_operator(4, 0, 1).unwrap();
        for k in 0..4 {
            assert_eq!(shift[(k, (k + 1) % 4)], ONE);
        }
        let z = weyl_operator(2, 1, 0).unwrap();
        assert!(close(&z, &DMatrix::from_diagonal(&DVector::from_vec(vec![ONE, -ONE])), 1e-15));
        assert!(weyl_operator(4, 4, 0).is_err());
        assert!(weyl_operator(4, 0, 7).is_err());
    }

    #[test]
    fn weyl_unitarity_and_orthogonality() {
        for d in 2..=5 {
            for n in 0..d {
                for m in 0..d {
                    let u = weyl_operator(d, n, m).unwrap();
                    assert!(close(&(u.adjoint() * &u), &DMatrix::identity(d, d), 1e-12));
                    for n2 in 0..d {
                        for m2 in 0..d {
                            let ip = (u.adjoint() * weyl_operator(d, n2, m2).unwrap()).trace();
                            let want = if (n, m) == (n2, m2) { d as f64 } else { 0.0 };
                            assert!((ip - real(want)).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_structure() {
        for family in [bell_family(4).unwrap(), bell_family(2).unwrap(), hubbard_family(HubbardMode::Fixed, None).unwrap()] {
            assert!(completeness_defect(&family) < 1e-12);
            let ps = family.projectors();
            for (a, pa) in ps.iter().enumerate() {
                for (b, pb) in ps.iter().enumerate() {
                    let t = (pa * pb).trace().re;
                    assert!((t - if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
                }
            }
        }
        let bell = bell_family(4).unwrap();
        assert_eq!(bell.states.len(), 16);
        assert!((bell.projector(0, 1) * bell.projector(0, 2)).trace().norm() < 1e-15);
        assert!(bell_family(1).is_err());
    }

    #[test]
    fn hubbard_base_state_has_no_diagonal_component() {
        let fixed = hubbard_family(HubbardMode::Fixed, None).unwrap();
        assert!((fixed.base_state.dotc(&psi_plus(4))).norm() < 1e-15);
        assert!((&fixed.base_state - lhfs_free()).norm() < 1e-15);
    }

    #[test]
    fn adaptive_mode_fixed_point() {
        let rho = TwoSiteDensityMatrix::from_matrix(projector(&psi_plus(4)), (1, 2)).unwrap();
        let family = hubbard_family(HubbardMode::Adaptive, Some(&rho)).unwrap();
        assert!((&family.base_state - psi_plus(4)).norm() < 1e-12);
        assert!(family.warning.is_none());
        assert!(hubbard_family(HubbardMode::Adaptive, None).is_err());

        let mut product = DVector::<Complex64>::zeros(16);
        product[5] = ONE;
        let rho = TwoSiteDensityMatrix::from_matrix(projector(&product), (1, 2)).unwrap();
        let family = hubbard_family(HubbardMode::Adaptive, Some(&rho)).unwrap();
        assert!(family.warning.is_some());
        assert!(completeness_defect(&family) < 1e-12);
    }

    #[test]
    fn custom_family_requires_maximal_entanglement() {
        let fixed = hubbard_family(HubbardMode::Fixed, None).unwrap();
        let custom = ProjectorFamily::from_base_state(&fixed.base_state).unwrap();
        assert!(close(&custom.frame, &fixed.frame, 1e-15));
        let mut product = DVector::<Complex64>::zeros(16);
        product[0] = ONE;
        assert!(ProjectorFamily::from_base_state(&product).is_err());
        assert!(ProjectorFamily::from_base_state(&DVector::zeros(15)).is_err());
    }

    #[test]
    fn ideal_resources_teleport_perfectly() {
        let rho_in = input_state_real(&[0.3, -0.1, 0.8, 0.5]).unwrap().density();
        let bell = bell_family(4).unwrap();
        let r = channel_output(&projector(&psi_plus(4)), &rho_in, &bell).unwrap();
        assert!(close(&r.output, &rho_in, 1e-12));
        assert!((r.fidelity - 1.0).abs() < 1e-12);
        assert!((r.fef - 1.0).abs() < 1e-12);

        let fixed = hubbard_family(HubbardMode::Fixed, None).unwrap();
        let r = channel_output(&projector(&lhfs_free()), &rho_in, &fixed).unwrap();
        assert!(close(&r.output, &rho_in, 1e-12));
        assert!((r.outcome_weights[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hubbard_resource_in_bell_basis() {
        let rho_in = input_state_real(&[1.0, 1.0, 1.0, 1.0]).unwrap().density();
        let r = channel_output(&projector(&lhfs_free()), &rho_in, &bell_family(4).unwrap()).unwrap();
        assert!((r.fidelity - 0.5).abs() < 1e-12);
        assert!(r.fef.abs() < 1e-15);
        assert!((r.outcome_weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circuit_matches_channel_on_ideal_cases() {
        let rho_in = input_state_real(&[0.2, 0.4, -0.6, 0.1]).unwrap().density();
        let fixed = hubbard_family(HubbardMode::Fixed, None).unwrap();
        let out = circuit_oracle(&projector(&lhfs_free()), &rho_in, &fixed).unwrap();
        assert!(close(&out, &rho_in, 1e-12));
        let out = circuit_oracle(&projector(&psi_plus(4)), &rho_in, &bell_family(4).unwrap()).unwrap();
        assert!(close(&out, &rho_in, 1e-12));
    }

    #[test]
    fn scalar_measures() {
        let a = input_state_real(&[1.0, 0.0, 0.0, 0.0]).unwrap().density();
        let b = input_state_real(&[0.0, 1.0, 0.0, 0.0]).unwrap().density();
        assert!((fidelity(&a, &a) - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&a, &b), 0.0);
        let mixed = DMatrix::<Complex64>::identity(4, 4) * real(0.25);
        assert!((fidelity(&a, &mixed) - 0.25).abs() < 1e-15);
        assert_eq!(average_fidelity(1.0, 4), 1.0);
        assert!((average_fidelity(0.25, 4) - 0.4).abs() < 1e-15);
        assert!((average_fidelity(0.0, 4) - 0.2).abs() < 1e-15);
        assert!((classical_threshold(4) - 0.4).abs() < 1e-15);
        let chi = DMatrix::<Complex64>::identity(16, 16) * real(1.0 / 16.0);
        for family in [bell_family(4).unwrap(), hubbard_family(HubbardMode::Fixed, None).unwrap()] {
            assert!((fully_entangled_fraction(&chi, &family) - 1.0 / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn input_states() {
        let s = input_state_real(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(s.amplitudes.iter().all(|z| (z - real(0.5)).norm() < 1e-15));
        let s = input_state_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.amplitudes[0], ONE);
        assert!(input_state_real(&[0.0; 4]).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let bell = bell_family(4).unwrap();
        let chi = DMatrix::<Complex64>::identity(9, 9);
        let rho = DMatrix::<Complex64>::identity(4, 4);
        assert!(channel_output(&chi, &rho, &bell).is_err());
        assert!(circuit_oracle(&DMatrix::identity(16, 16), &DMatrix::identity(3, 3), &bell).is_err());
    }
}
