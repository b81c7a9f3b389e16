//! Reduced density matrices of one or two sites.
//!
//! Each sector basis state is a product of local configurations in the
//! Jordan-Wigner site representation, so the matrix element
//! ρ[(a,b),(c,d)] = ⟨ψ| (|c,d⟩⟨a,b|)_{ij} |ψ⟩ of a site-local transition
//! operator is a sum over environment configurations shared by the two
//! components. The string operators act on the environment identically for
//! both components and cancel in the product.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::eigen::GroundStateResult;
use crate::error::{domain, Error, Result};
use crate::fock::{LocalConfig, SectorBasis};

#[derive(Clone, Debug, PartialEq)]
pub struct TwoSiteDensityMatrix {
    /// Row/column index 4a + b, with a the configuration of the first site.
    pub entries: DMatrix<Complex64>,
    pub sites: (usize, usize),
}

/// Particle numbers (N↑, N↓) of a pair index 4a + b.
pub fn pair_charges(index: usize) -> (usize, usize) {
    let a = LocalConfig::from_index(index / 4).expect("pair index below 16");
    let b = LocalConfig::from_index(index % 4).expect("pair index below 16");
    let (mut up, mut down) = (0, 0);
    for c in [a, b] {
        up += c.has(crate::fock::Spin::Up) as usize;
        down += c.has(crate::fock::Spin::Down) as usize;
    }
    (up, down)
}

fn check_sites(basis: &SectorBasis, sites: &[usize]) -> Result<()> {
    let l = basis.sites();
    for &s in sites {
        if s == 0 || s > l {
            return domain(format!("site {s} outside 1..={l}"));
        }
    }
    if sites.windows(2).any(|w| w[0] >= w[1]) {
        return domain(format!("sites {sites:?} must be strictly increasing"));
    }
    Ok(())
}

/// Density matrix over the listed sites (4^k local states, first site most significant).
fn block_rdm(basis: &SectorBasis, amplitudes: &[f64], sites: &[usize]) -> Result<DMatrix<f64>> {
    check_sites(basis, sites)?;
    if amplitudes.len() != basis.len() {
        return domain(format!(
            "state has {} amplitudes for a basis of {}",
            amplitudes.len(),
            basis.len()
        ));
    }
    let layout = basis.layout();
    let mask = sites.iter().fold(0u64, |m, &s| m | layout.site_mask(s));
    let dim = 4usize.pow(sites.len() as u32);

    let mut groups: BTreeMap<u64, Vec<(usize, f64)>> = BTreeMap::new();
    for (state, &amp) in basis.states().iter().zip(amplitudes) {
        if amp == 0.0 {
            continue;
        }
        let local = sites
            .iter()
            .fold(0, |acc, &s| 4 * acc + layout.local_config(*state, s).index());
        groups.entry(state.bits() & !mask).or_default().push((local, amp));
    }

    let mut rho = DMatrix::<f64>::zeros(dim, dim);
    for members in groups.values() {
        for &(r, x) in members {
            for &(c, y) in members {
                rho[(r, c)] += x * y;
            }
        }
    }
    let trace = rho.trace();
    if trace <= 0.0 {
        return domain("state has zero norm");
    }
    Ok(rho / trace)
}

/// ρ_{ij} of a real state given by its amplitudes on `basis`.
pub fn two_site_rdm_from_amplitudes(
    basis: &SectorBasis,
    amplitudes: &[f64],
    i: usize,
    j: usize,
) -> Result<TwoSiteDensityMatrix> {
    if i >= j {
        return domain(format!("need i < j, got ({i}, {j})"));
    }
    let rho = block_rdm(basis, amplitudes, &[i, j])?;
    Ok(TwoSiteDensityMatrix {
        entries: rho.map(|x| Complex64::new(x, 0.0)),
        sites: (i, j),
    })
}

pub fn two_site_rdm(
    state: &GroundStateResult,
    basis: &SectorBasis,
    i: usize,
    j: usize,
) -> Result<TwoSiteDensityMatrix> {
    two_site_rdm_from_amplitudes(basis, &state.vector, i, j)
}

/// 4×4 density matrix of a single site, computed directly from the state.
pub fn one_site_rdm(basis: &SectorBasis, amplitudes: &[f64], site: usize) -> Result<DMatrix<Complex64>> {
    Ok(block_rdm(basis, amplitudes, &[site])?.map(|x| Complex64::new(x, 0.0)))
}

pub fn purity(rho: &DMatrix<Complex64>) -> f64 {
    (rho * rho).trace().re
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

impl TwoSiteDensityMatrix {
    pub fn from_matrix(entries: DMatrix<Complex64>, sites: (usize, usize)) -> Result<Self> {
        if entries.shape() != (16, 16) {
            return domain(format!("expected a 16×16 matrix, got {:?}", entries.shape()));
        }
        Ok(TwoSiteDensityMatrix { entries, sites })
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn purity(&self) -> f64 {
        purity(&self.entries)
    }

    /// Trace over the second site.
    pub fn first_site(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(4, 4, |a, c| (0..4).map(|b| self.entries[(4 * a + b, 4 * c + b)]).sum())
    }

    /// Trace over the first site.
    pub fn second_site(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(4, 4, |b, d| (0..4).map(|a| self.entries[(4 * a + b, 4 * a + d)]).sum())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    /// Largest element connecting pair configurations of different (N↑, N↓).
    pub fn superselection_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..16 {
            for c in 0..16 {
                if pair_charges(r) != pair_charges(c) {
                    worst = worst.max(self.entries[(r, c)].norm());
                }
            }
        }
        worst
    }

    /// Hermiticity, unit trace, positivity and block structure.
    pub fn validate(&self) -> Result<()> {
        let herm = (&self.entries - self.entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > 1e-12 {
            return Err(Error::NumericalIntegrity(format!("ρ not Hermitian ({herm:.2e})")));
        }
        let tr = self.entries.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::NumericalIntegrity(format!("Tr ρ = {tr}")));
        }
        let min = self.eigenvalues()[0];
        if min < -1e-10 {
            return Err(Error::NumericalIntegrity(format!("ρ has eigenvalue {min:.3e}")));
        }
        let leak = self.superselection_violation();
        if leak > 1e-12 {
            return Err(Error::NumericalIntegrity(format!(
                "ρ mixes particle-number sectors ({leak:.2e})"
            )));
        }
        Ok(())
    }

    /// Sixteen lines of sixteen space-separated `re,im` pairs, row-major.
    pub fn to_text(&self) -> String {
        let mut out = format!("# rho sites={},{} basis=0,up,down,updown (index 4a+b)\n", self.sites.0, self.sites.1);
        for r in 0..16 {
            let row: Vec<String> = (0..16)
                .map(|c| {
                    let z = self.entries[(r, c)];
                    format!("{:.15e},{:.15e}", z.re, z.im)
                })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn write_text(&self, path: &Path) -> Result<()> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut f = std::fs::File::create(path).map_err(io)?;
        f.write_all(self.to_text().as_bytes()).map_err(io)
    }

    pub fn parse_text(text: &str, sites: (usize, usize)) -> Result<Self> {
        let mut entries = DMatrix::zeros(16, 16);
        let rows: Vec<&str> = text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .collect();
        if rows.len() != 16 {
            return Err(Error::Config(format!("expected 16 rows, found {}", rows.len())));
        }
        for (r, line) in rows.iter().enumerate() {
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != 16 {
                return Err(Error::Config(format!("row {r} has {} entries", cells.len())));
            }
            for (c, cell) in cells.iter().enumerate() {
                let parsed = cell
                    .split_once(',')
                    .and_then(|(re, im)| Some(Complex64::new(re.parse().ok()?, im.parse().ok()?)));
                entries[(r, c)] =
                    parsed.ok_or_else(|| Error::Config(format!("bad entry {cell:?} at ({r}, {c})")))?;
            }
        }
        Ok(TwoSiteDensityMatrix { entries, sites })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{ground_state, SolverOptions};
    use crate::hamiltonian::{build_alternating_bonds, build_uniform};

    fn ground(h: &crate::hamiltonian::SparseHamiltonian) -> GroundStateResult {
        ground_state(h, &SolverOptions::default()).unwrap()
    }

    #[test]
    fn two_sites_without_environment_is_pure() {
        let h = build_uniform(2, 0.0, 1, 1).unwrap();
        let g = ground(&h);
        let rho = two_site_rdm(&g, h.basis(), 1, 2).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        rho.validate().unwrap();
    }

    #[test]
    fn strong_interaction_suppresses_doublons() {
        let h = build_uniform(2, 1e6, 1, 1).unwrap();
        let g = ground(&h);
        let rho = two_site_rdm(&g, h.basis(), 1, 2).unwrap();
        // |↑↓,0⟩ = 4·3 + 0 and |0,↑↓⟩ = 3
        let doublon = rho.get(12, 12).re + rho.get(3, 3).re;
        assert!(doublon <= 1e-5);
        let singlet = rho.get(6, 6).re + rho.get(9, 9).re;
        assert!((singlet - 1.0).abs() < 1e-5);
    }

    #[test]
    fn partial_traces_match_one_site_matrices() {
        let h = build_alternating_bonds(6, 0.4, 3.0, 3, 3).unwrap();
        let g = ground(&h);
        for (i, j) in [(1, 6), (2, 5), (1, 2), (3, 4)] {
            let rho = two_site_rdm(&g, h.basis(), i, j).unwrap();
            rho.validate().unwrap();
            let ri = one_site_rdm(h.basis(), &g.vector, i).unwrap();
            let rj = one_site_rdm(h.basis(), &g.vector, j).unwrap();
            assert!((rho.first_site() - ri).norm() < 1e-10);
            assert!((rho.second_site() - rj).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_sites() {
        let h = build_uniform(4, 0.0, 2, 2).unwrap();
        let g = ground(&h);
        for (i, j) in [(0, 2), (2, 2), (3, 1), (1, 5)] {
            assert!(matches!(two_site_rdm(&g, h.basis(), i, j), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn purity_reference_values() {
        let mut pure = DMatrix::<Complex64>::zeros(16, 16);
        pure[(5, 5)] = Complex64::new(1.0, 0.0);
        assert!((purity(&pure) - 1.0).abs() < 1e-15);
        let mixed = DMatrix::<Complex64>::identity(16, 16) / Complex64::new(16.0, 0.0);
        assert!((purity(&mixed) - 1.0 / 16.0).abs() < 1e-15);
        let mut half = DMatrix::<Complex64>::zeros(16, 16);
        half[(1, 1)] = Complex64::new(0.5, 0.0);
        half[(7, 7)] = Complex64::new(0.5, 0.0);
        assert!((purity(&half) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn charges_of_pair_indices() {
        assert_eq!(pair_charges(0), (0, 0));
        assert_eq!(pair_charges(4 + 2), (1, 1));
        assert_eq!(pair_charges(15), (2, 2));
        assert_eq!(pair_charges(3 * 4 + 1), (2, 1));
    }

    #[test]
    fn text_dump_round_trips() {
        let h = build_alternating_bonds(4, 0.5, 2.0, 2, 2).unwrap();
        let g = ground(&h);
        let rho = two_site_rdm(&g, h.basis(), 1, 4).unwrap();
        let text = rho.to_text();
        assert_eq!(text.lines().count(), 17);
        let back = TwoSiteDensityMatrix::parse_text(&text, (1, 4)).unwrap();
        assert!((back.entries - rho.entries).norm() < 1e-14);
        assert!(TwoSiteDensityMatrix::parse_text("1,0", (1, 2)).is_err());
    }
}
