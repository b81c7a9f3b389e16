//! Brute-force references in the 4^L site tensor product.
//!
//! Fermion operators are written out as Kronecker products of 4×4 site
//! matrices with explicit Jordan-Wigner strings. Nothing here touches the
//! bit-packed sector machinery, so agreement with it is a real cross-check.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{domain, Result};
use crate::fock::{LocalConfig, ModeOrdering, SectorBasis, Spin};
use crate::hamiltonian::ModelSpec;
use crate::rdm::TwoSiteDensityMatrix;

pub const MAX_ORACLE_SITES: usize = 4;

#[derive(Clone, Debug)]
pub struct DenseState {
    pub sites: usize,
    pub energy: f64,
    /// Amplitudes over the 4^L tensor basis, site 1 most significant.
    pub amplitudes: DVector<f64>,
}

fn local(entries: &[(usize, usize, f64)]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(4, 4);
    for &(r, c, v) in entries {
        m[(r, c)] = v;
    }
    m
}

fn z_up() -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 1.0, -1.0]))
}

fn z_down() -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0, -1.0]))
}

/// Annihilation of one spin on a site, ignoring all strings.
fn bare_annihilator(spin: Spin) -> DMatrix<f64> {
    match spin {
        // |↑⟩ → |0⟩, |↑↓⟩ → |↓⟩
        Spin::Up => local(&[(0, 1, 1.0), (2, 3, 1.0)]),
        // |↓⟩ → |0⟩, |↑↓⟩ → |↑⟩
        Spin::Down => local(&[(0, 2, 1.0), (1, 3, 1.0)]),
    }
}

fn kron_all(factors: &[DMatrix<f64>]) -> DMatrix<f64> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

/// c_{site,spin} on the 4^L space.
pub fn annihilator(sites: usize, ordering: ModeOrdering, site: usize, spin: Spin) -> DMatrix<f64> {
    assert!((1..=sites).contains(&site));
    let id = DMatrix::<f64>::identity(4, 4);
    let parity = z_up() * z_down();
    let factors: Vec<DMatrix<f64>> = (1..=sites)
        .map(|s| {
            if s < site {
                match spin {
                    Spin::Up => match ordering {
                        ModeOrdering::SiteInterleaved => parity.clone(),
                        ModeOrdering::SpeciesMajor => z_up(),
                    },
                    Spin::Down => parity.clone(),
                }
            } else if s == site {
                match spin {
                    Spin::Up => bare_annihilator(Spin::Up),
                    Spin::Down => z_up() * bare_annihilator(Spin::Down),
                }
            } else {
                match (spin, ordering) {
                    (Spin::Down, ModeOrdering::SpeciesMajor) => z_up(),
                    _ => id.clone(),
                }
            }
        })
        .collect();
    kron_all(&factors)
}

fn check_sites(sites: usize) -> Result<()> {
    if !(2..=MAX_ORACLE_SITES).contains(&sites) {
        return domain(format!("oracle handles 2..={MAX_ORACLE_SITES} sites, got {sites}"));
    }
    Ok(())
}

/// Full 4^L Hamiltonian assembled from fermion operators.
pub fn dense_hamiltonian(model: &ModelSpec, ordering: ModeOrdering) -> Result<DMatrix<f64>> {
    model.validate()?;
    let l = model.sites;
    check_sites(l)?;
    let dim = 4usize.pow(l as u32);
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    let ops: Vec<[DMatrix<f64>; 2]> = (1..=l)
        .map(|s| [annihilator(l, ordering, s, Spin::Up), annihilator(l, ordering, s, Spin::Down)])
        .collect();
    for (b, t) in model.bond_strengths().into_iter().enumerate() {
        for k in 0..2 {
            let hop = ops[b][k].transpose() * &ops[b + 1][k];
            h -= (&hop + hop.transpose()) * t;
        }
    }
    for op in &ops {
        let n_up = op[0].transpose() * &op[0];
        let n_down = op[1].transpose() * &op[1];
        h += (n_up * n_down) * model.u;
    }
    Ok(h)
}

/// Tensor index of local configurations, site 1 most significant.
pub fn tensor_index(configs: &[LocalConfig]) -> usize {
    configs.iter().fold(0, |acc, c| 4 * acc + c.index())
}

fn configs_of(index: usize, sites: usize) -> Vec<LocalConfig> {
    (0..sites)
        .map(|s| LocalConfig::from_index((index >> (2 * (sites - 1 - s))) & 3).expect("two bits"))
        .collect()
}

fn sector_indices(sites: usize, n_up: usize, n_down: usize) -> Vec<usize> {
    (0..4usize.pow(sites as u32))
        .filter(|&k| {
            let c = configs_of(k, sites);
            c.iter().filter(|x| x.has(Spin::Up)).count() == n_up
                && c.iter().filter(|x| x.has(Spin::Down)).count() == n_down
        })
        .collect()
}

/// Tensor index of every state of a sector basis, in basis order.
pub fn tensor_indices_of(basis: &SectorBasis) -> Vec<usize> {
    let layout = basis.layout();
    basis
        .states()
        .iter()
        .map(|&s| {
            let configs: Vec<LocalConfig> = (1..=basis.sites()).map(|site| layout.local_config(s, site)).collect();
            tensor_index(&configs)
        })
        .collect()
}

/// Ground state of the fixed-(N↑, N↓) block of the 4^L Hamiltonian.
pub fn dense_ground_state_in(
    model: &ModelSpec,
    ordering: ModeOrdering,
    n_up: usize,
    n_down: usize,
) -> Result<DenseState> {
    let h = dense_hamiltonian(model, ordering)?;
    let l = model.sites;
    let idx = sector_indices(l, n_up, n_down);
    if idx.is_empty() {
        return domain(format!("empty sector ({n_up}, {n_down}) on {l} sites"));
    }
    let block = DMatrix::from_fn(idx.len(), idx.len(), |r, c| h[(idx[r], idx[c])]);
    let eig = SymmetricEigen::new(block);
    let k = eig.eigenvalues.imin();
    let mut amplitudes = DVector::zeros(h.nrows());
    for (r, &i) in idx.iter().enumerate() {
        amplitudes[i] = eig.eigenvectors[(r, k)];
    }
    Ok(DenseState {
        sites: l,
        energy: eig.eigenvalues[k],
        amplitudes,
    })
}

/// Half-filled ground state in the default ordering.
pub fn dense_ground_state(model: &ModelSpec) -> Result<DenseState> {
    let (nu, nd) = model.half_filling();
    dense_ground_state_in(model, ModeOrdering::default(), nu, nd)
}

/// Literal partial trace over every site except `keep`.
pub fn dense_partial_trace(state: &DenseState, keep: (usize, usize)) -> Result<TwoSiteDensityMatrix> {
    let l = state.sites;
    let (i, j) = keep;
    if !(1 <= i && i < j && j <= l) {
        return domain(format!("cannot keep sites {keep:?} of {l}"));
    }
    let mut rho = DMatrix::<f64>::zeros(16, 16);
    let dim = state.amplitudes.len();
    // group tensor indices by environment
    let env_of = |k: usize| {
        let c = configs_of(k, l);
        let env: Vec<usize> = (1..=l).filter(|&s| s != i && s != j).map(|s| c[s - 1].index()).collect();
        let pair = 4 * c[i - 1].index() + c[j - 1].index();
        (env, pair)
    };
    let labelled: Vec<(Vec<usize>, usize)> = (0..dim).map(env_of).collect();
    for a in 0..dim {
        if state.amplitudes[a] == 0.0 {
            continue;
        }
        for b in 0..dim {
            if labelled[a].0 == labelled[b].0 {
                rho[(labelled[a].1, labelled[b].1)] += state.amplitudes[a] * state.amplitudes[b];
            }
        }
    }
    let tr = rho.trace();
    TwoSiteDensityMatrix::from_matrix(rho.map(|x| num_complex::Complex64::new(x / tr, 0.0)), keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_anticommutation() {
        for ordering in [ModeOrdering::SpeciesMajor, ModeOrdering::SiteInterleaved] {
            let l = 3;
            let ops: Vec<DMatrix<f64>> = (1..=l)
                .flat_map(|s| [annihilator(l, ordering, s, Spin::Up), annihilator(l, ordering, s, Spin::Down)])
                .collect();
            let id = DMatrix::<f64>::identity(64, 64);
            for (a, ca) in ops.iter().enumerate() {
                for (b, cb) in ops.iter().enumerate() {
                    let anti = ca * cb.transpose() + cb.transpose() * ca;
                    let want = if a == b { id.clone() } else { DMatrix::zeros(64, 64) };
                    assert_eq!(anti, want);
                    assert_eq!(ca * cb + cb * ca, DMatrix::zeros(64, 64));
                }
            }
        }
    }

    #[test]
    fn two_site_energies() {
        let g = dense_ground_state(&ModelSpec::uniform(2, 0.0)).unwrap();
        assert!((g.energy + 2.0).abs() < 1e-12);
        let g = dense_ground_state(&ModelSpec::uniform(2, 4.0)).unwrap();
        assert!((g.energy - (4.0 - 32f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_large_chains() {
        assert!(dense_ground_state(&ModelSpec::uniform(5, 0.0)).is_err());
    }

    #[test]
    fn two_site_trace_is_the_state() {
        let g = dense_ground_state(&ModelSpec::uniform(2, 1.0)).unwrap();
        let rho = dense_partial_trace(&g, (1, 2)).unwrap();
        let psi = g.amplitudes.map(|x| num_complex::Complex64::new(x, 0.0));
        assert!((&rho.entries - &psi * psi.adjoint()).norm() < 1e-12);
        assert!((rho.entries.trace().re - 1.0).abs() < 1e-12);
    }
}
