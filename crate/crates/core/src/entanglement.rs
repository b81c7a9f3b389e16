//! Lower bound of the concurrence of two-qudit states built from SO(d)
//! generators, and overlaps with reference pure states.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::rdm::TwoSiteDensityMatrix;

/// Eigenvalues of ρρ̃ below this magnitude are treated as zero.
pub const CLIP_TOL: f64 = 1e-10;
/// Larger negative or imaginary parts than this are reported as errors.
pub const INTEGRITY_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SoGeneratorSet {
    pub d: usize,
    /// L_jk = |j⟩⟨k| − |k⟩⟨j| for j < k, lexicographic in (j, k).
    pub generators: Vec<DMatrix<f64>>,
    pub labels: Vec<(usize, usize)>,
}

pub fn so_generators(d: usize) -> Result<SoGeneratorSet> {
    if d < 2 {
        return domain(format!("SO(d) generators need d ≥ 2, got {d}"));
    }
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for j in 0..d {
        for k in j + 1..d {
            let mut g = DMatrix::zeros(d, d);
            g[(j, k)] = 1.0;
            g[(k, j)] = -1.0;
            generators.push(g);
            labels.push((j, k));
        }
    }
    Ok(SoGeneratorSet { d, generators, labels })
}

#[derive(Clone, Debug)]
pub struct ConcurrenceReport {
    pub tau2: f64,
    /// √τ₂.
    pub lower_bound: f64,
    /// C_αβ indexed by generator pair.
    pub per_pair: DMatrix<f64>,
}

fn complexify(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

fn local_dim(rho: &DMatrix<Complex64>) -> Result<usize> {
    let n = rho.nrows();
    let d = (n as f64).sqrt().round() as usize;
    if rho.ncols() != n || d * d != n || d < 2 {
        return domain(format!("{:?} is not a two-qudit density matrix", rho.shape()));
    }
    Ok(d)
}

/// Eigenvalues of a general complex matrix.
pub fn general_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(m.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::NumericalIntegrity("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}

/// ρ̃ = (G_α⊗G_β) ρ* (G_α⊗G_β).
pub fn tilde(rho: &DMatrix<Complex64>, ga: &DMatrix<f64>, gb: &DMatrix<f64>) -> DMatrix<Complex64> {
    let g = complexify(&ga.kronecker(gb));
    &g * rho.conjugate() * &g
}

/// Square roots of the eigenvalues of ρρ̃, descending and padded to four.
pub fn pair_lambdas_of(
    rho: &DMatrix<Complex64>,
    ga: &DMatrix<f64>,
    gb: &DMatrix<f64>,
) -> Result<Vec<f64>> {
    let product = rho * tilde(rho, ga, gb);
    let mut lambdas = Vec::with_capacity(product.nrows().max(4));
    for z in general_eigenvalues(&product)? {
        if z.im.abs() > INTEGRITY_TOL || z.re < -INTEGRITY_TOL {
            return Err(Error::NumericalIntegrity(format!(
                "eigenvalue {z:.3e} of ρρ̃ is not a non-negative real"
            )));
        }
        lambdas.push(if z.norm() < CLIP_TOL { 0.0 } else { z.re.max(0.0).sqrt() });
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    lambdas.resize(lambdas.len().max(4), 0.0);
    lambdas.truncate(4);
    Ok(lambdas)
}

pub fn pair_lambdas(rho: &TwoSiteDensityMatrix, alpha: usize, beta: usize) -> Result<Vec<f64>> {
    let set = so_generators(4)?;
    let n = set.generators.len();
    if alpha >= n || beta >= n {
        return domain(format!("generator index out of range 0..{n}"));
    }
    pair_lambdas_of(&rho.entries, &set.generators[alpha], &set.generators[beta])
}

pub fn concurrence_from_lambdas(l: &[f64]) -> f64 {
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Concurrence bound of an arbitrary d²×d² density matrix.
pub fn concurrence_lower_bound_of(rho: &DMatrix<Complex64>) -> Result<ConcurrenceReport> {
    let d = local_dim(rho)?;
    let set = so_generators(d)?;
    let n = set.generators.len();
    let values: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let l = pair_lambdas_of(rho, &set.generators[k / n], &set.generators[k % n])?;
            Ok(concurrence_from_lambdas(&l))
        })
        .collect::<Result<_>>()?;
    let per_pair = DMatrix::from_row_slice(n, n, &values);
    let tau2 = d as f64 / (2.0 * (d as f64 - 1.0)) * values.iter().map(|c| c * c).sum::<f64>();
    Ok(ConcurrenceReport {
        tau2,
        lower_bound: tau2.sqrt(),
        per_pair,
    })
}

pub fn concurrence_lower_bound(rho: &TwoSiteDensityMatrix) -> Result<ConcurrenceReport> {
    concurrence_lower_bound_of(&rho.entries)
}

/// ⟨φ|ρ|φ⟩ for a normalized pure state φ.
pub fn state_probability(rho: &DMatrix<Complex64>, phi: &DVector<Complex64>) -> Result<f64> {
    if phi.len() != rho.nrows() {
        return domain(format!("state of length {} for a {}-dim ρ", phi.len(), rho.nrows()));
    }
    if (phi.norm() - 1.0).abs() > 1e-10 {
        return domain(format!("state norm {} is not 1", phi.norm()));
    }
    Ok((phi.adjoint() * rho * phi)[(0, 0)].re)
}

/// Pair index of |a, b⟩ in the 16-dimensional two-site space.
pub fn pair_index(a: crate::fock::LocalConfig, b: crate::fock::LocalConfig) -> usize {
    4 * a.index() + b.index()
}

fn pair_state(terms: &[(usize, f64)]) -> DVector<Complex64> {
    let mut v = DVector::zeros(16);
    for &(k, c) in terms {
        v[k] = Complex64::new(c, 0.0);
    }
    v
}

/// ½(|↑,↓⟩ + |↓,↑⟩ + |↑↓,0⟩ + |0,↑↓⟩), the local half filled state of a free chain.
pub fn lhfs_free() -> DVector<Complex64> {
    use crate::fock::LocalConfig::*;
    pair_state(&[
        (pair_index(Up, Down), 0.5),
        (pair_index(Down, Up), 0.5),
        (pair_index(Double, Empty), 0.5),
        (pair_index(Empty, Double), 0.5),
    ])
}

/// (|↑,↓⟩ + |↓,↑⟩)/√2, the local half filled state at strong interaction.
pub fn lhfs_singlet() -> DVector<Complex64> {
    use crate::fock::LocalConfig::*;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    pair_state(&[(pair_index(Up, Down), s), (pair_index(Down, Up), s)])
}

/// (1/√d) Σ_k |k, k⟩.
pub fn psi_plus(d: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(d * d);
    for k in 0..d {
        v[k * d + k] = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    }
    v
}

pub fn projector(phi: &DVector<Complex64>) -> DMatrix<Complex64> {
    phi * phi.adjoint()
}
