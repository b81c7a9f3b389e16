//! Sector-restricted Hubbard Hamiltonians on open chains.
//!
//! H = −Σ_b t_b Σ_σ (c†_{b,σ} c_{b+1,σ} + h.c.) + U Σ_i n_{i↑} n_{i↓}
//!
//! with energies in units of the uniform hopping. The three variants differ
//! only in the bond amplitudes t_b, b = 1..L−1.

use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::fock::{ModeLayout, ModeOrdering, SectorBasis, Spin, DEFAULT_DIM_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum Variant {
    Uniform,
    /// Bond b carries 1 + (−1)^b δ, so both end bonds are the weak ones.
    AlternatingBonds { delta: f64 },
    /// Odd bonds (1,2), (3,4), … carry τ_a; even bonds carry τ_b.
    AlternatingHopping { tau_a: f64, tau_b: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub variant: Variant,
    pub sites: usize,
    /// Dimensionless on-site interaction u/t.
    pub u: f64,
}

impl ModelSpec {
    pub fn uniform(sites: usize, u: f64) -> Self {
        ModelSpec {
            variant: Variant::Uniform,
            sites,
            u,
        }
    }

    pub fn alternating_bonds(sites: usize, delta: f64, u: f64) -> Self {
        ModelSpec {
            variant: Variant::AlternatingBonds { delta },
            sites,
            u,
        }
    }

    pub fn alternating_hopping(sites: usize, tau_a: f64, tau_b: f64, u: f64) -> Self {
        ModelSpec {
            variant: Variant::AlternatingHopping { tau_a, tau_b },
            sites,
            u,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return domain(format!("chain length {} is below 2", self.sites));
        }
        if !self.u.is_finite() {
            return domain("interaction U must be finite");
        }
        match self.variant {
            Variant::Uniform => {}
            Variant::AlternatingBonds { delta } => {
                if self.sites % 2 != 0 {
                    return domain(format!(
                        "alternating bonds need an even chain, got L = {}",
                        self.sites
                    ));
                }
                if !(0.0..=1.0).contains(&delta) {
                    return domain(format!("bond alternation δ = {delta} outside [0, 1]"));
                }
            }
            Variant::AlternatingHopping { tau_a, tau_b } => {
                if self.sites % 2 != 0 {
                    return domain(format!(
                        "alternating hopping needs an even chain, got L = {}",
                        self.sites
                    ));
                }
                if !(tau_a >= 0.0 && tau_b >= 0.0 && tau_a.is_finite() && tau_b.is_finite()) {
                    return domain(format!(
                        "hopping amplitudes must be finite and non-negative (τ_a = {tau_a}, τ_b = {tau_b})"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Hopping amplitude of bond b (between sites b and b+1), b = 1..L−1.
    pub fn bond_strengths(&self) -> Vec<f64> {
        (1..self.sites)
            .map(|b| match self.variant {
                Variant::Uniform => 1.0,
                Variant::AlternatingBonds { delta } => {
                    if b % 2 == 0 {
                        1.0 + delta
                    } else {
                        1.0 - delta
                    }
                }
                Variant::AlternatingHopping { tau_a, tau_b } => {
                    if b % 2 == 1 {
                        tau_a
                    } else {
                        tau_b
                    }
                }
            })
            .collect()
    }

    /// Half filling, N↑ = N↓ = L/2 (rounded down).
    pub fn half_filling(&self) -> (usize, usize) {
        (self.sites / 2, self.sites / 2)
    }
}

/// Real symmetric Hamiltonian in compressed-row storage over a sector basis.
#[derive(Clone, Debug)]
pub struct SparseHamiltonian {
    basis: Arc<SectorBasis>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl SparseHamiltonian {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Arc<SectorBasis> {
        &self.basis
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// (column, value) pairs of one row, columns ascending.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0.0,
        }
    }

    /// y = H x
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        let kernel = |(r, out): (usize, &mut f64)| {
            let span = self.row_ptr[r]..self.row_ptr[r + 1];
            *out = self.cols[span.clone()]
                .iter()
                .zip(&self.values[span])
                .map(|(&c, &v)| v * x[c])
                .sum();
        };
        if self.dim() >= 1 << 14 {
            y.par_iter_mut().enumerate().for_each(kernel);
        } else {
            y.iter_mut().enumerate().for_each(kernel);
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for r in 0..n {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim()).all(|r| self.row(r).all(|(c, v)| self.get(c, r) == v))
    }
}

/// Builds the Hamiltonian of `model` on the sector (n_up, n_down), default
/// mode ordering and dimension cap.
pub fn build(model: &ModelSpec, n_up: usize, n_down: usize) -> Result<SparseHamiltonian> {
    model.validate()?;
    let layout = ModeLayout::new(model.sites, ModeOrdering::default())?;
    let basis = SectorBasis::new(layout, n_up, n_down, DEFAULT_DIM_CAP)?;
    Ok(build_on(model, Arc::new(basis)))
}

pub fn build_uniform(sites: usize, u: f64, n_up: usize, n_down: usize) -> Result<SparseHamiltonian> {
    build(&ModelSpec::uniform(sites, u), n_up, n_down)
}

pub fn build_alternating_bonds(
    sites: usize,
    delta: f64,
    u: f64,
    n_up: usize,
    n_down: usize,
) -> Result<SparseHamiltonian> {
    build(&ModelSpec::alternating_bonds(sites, delta, u), n_up, n_down)
}

pub fn build_alternating_hopping(
    sites: usize,
    tau_a: f64,
    tau_b: f64,
    u: f64,
    n_up: usize,
    n_down: usize,
) -> Result<SparseHamiltonian> {
    build(&ModelSpec::alternating_hopping(sites, tau_a, tau_b, u), n_up, n_down)
}

/// Builds on an existing basis. The model must already be validated and
/// its chain length must match the basis.
pub fn build_on(model: &ModelSpec, basis: Arc<SectorBasis>) -> SparseHamiltonian {
    assert_eq!(model.sites, basis.sites(), "model and basis disagree on L");
    let bonds = model.bond_strengths();
    let layout = *basis.layout();
    let u = model.u;

    let rows: Vec<Vec<(usize, f64)>> = (0..basis.len())
        .into_par_iter()
        .map(|r| {
            let state = basis.state(r);
            let mut row = Vec::with_capacity(4 * bonds.len() + 1);
            let diag = u * layout.double_occupancy(state) as f64;
            if diag != 0.0 {
                row.push((r, diag));
            }
            for (b, &t) in bonds.iter().enumerate() {
                if t == 0.0 {
                    continue;
                }
                let (i, j) = (b + 1, b + 2);
                for spin in Spin::BOTH {
                    for (to, from) in [(i, j), (j, i)] {
                        if let Some((next, sign)) = layout.apply_hop(state, to, from, spin) {
                            let c = basis
                                .index_of(next)
                                .expect("hopping left the particle-number sector");
                            row.push((c, -t * sign));
                        }
                    }
                }
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            row.dedup_by(|next, prev| {
                if next.0 == prev.0 {
                    prev.1 += next.1;
                    true
                } else {
                    false
                }
            });
            row
        })
        .collect();

    let mut row_ptr = Vec::with_capacity(rows.len() + 1);
    row_ptr.push(0);
    let nnz = rows.iter().map(Vec::len).sum();
    let mut cols = Vec::with_capacity(nnz);
    let mut values = Vec::with_capacity(nnz);
    for row in rows {
        for (c, v) in row {
            cols.push(c);
            values.push(v);
        }
        row_ptr.push(cols.len());
    }
    SparseHamiltonian {
        basis,
        row_ptr,
        cols,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::dense_spectrum;

    #[test]
    fn bond_patterns() {
        assert_eq!(
            ModelSpec::alternating_bonds(6, 0.5, 0.0).bond_strengths(),
            vec![0.5, 1.5, 0.5, 1.5, 0.5]
        );
        assert_eq!(
            ModelSpec::alternating_bonds(4, 1.0, 0.0).bond_strengths(),
            vec![0.0, 2.0, 0.0]
        );
        assert_eq!(
            ModelSpec::alternating_hopping(6, 1.0, 3.0, 0.0).bond_strengths(),
            vec![1.0, 3.0, 1.0, 3.0, 1.0]
        );
        assert_eq!(ModelSpec::uniform(3, 2.0).bond_strengths(), vec![1.0, 1.0]);
    }

    #[test]
    fn parameter_domains() {
        assert!(build_alternating_bonds(5, 0.5, 0.0, 2, 2).is_err());
        assert!(build_alternating_bonds(4, 1.5, 0.0, 2, 2).is_err());
        assert!(build_alternating_bonds(4, -0.1, 0.0, 2, 2).is_err());
        assert!(build_alternating_hopping(4, -1.0, 1.0, 0.0, 2, 2).is_err());
        assert!(build_alternating_hopping(4, 1.0, -1.0, 0.0, 2, 2).is_err());
        assert!(build_alternating_hopping(5, 1.0, 1.0, 0.0, 2, 2).is_err());
    }

    #[test]
    fn two_site_free_block() {
        let h = build_uniform(2, 0.0, 1, 1).unwrap();
        assert_eq!(h.dim(), 4);
        for r in 0..4 {
            assert_eq!(h.get(r, r), 0.0);
            for (c, v) in h.row(r) {
                assert_ne!(c, r);
                assert_eq!(v.abs(), 1.0);
            }
        }
    }

    #[test]
    fn diagonal_counts_doublons() {
        let h = build_uniform(4, 3.5, 2, 2).unwrap();
        let basis = h.basis().clone();
        for r in 0..h.dim() {
            let d = basis.layout().double_occupancy(basis.state(r));
            assert_eq!(h.get(r, r), 3.5 * d as f64);
        }
    }

    #[test]
    fn builders_are_symmetric() {
        for l in [2, 4, 6] {
            let (nu, nd) = (l / 2, l / 2);
            assert!(build_uniform(l, 4.0, nu, nd).unwrap().is_symmetric());
            assert!(build_alternating_bonds(l, 0.3, 2.0, nu, nd).unwrap().is_symmetric());
            assert!(build_alternating_hopping(l, 0.7, 1.9, 8.0, nu, nd)
                .unwrap()
                .is_symmetric());
        }
    }

    #[test]
    fn reductions_to_uniform_are_exact() {
        for l in [2, 4, 6] {
            for u in [0.0, 4.0] {
                let base = build_uniform(l, u, l / 2, l / 2).unwrap().to_dense();
                let bonds = build_alternating_bonds(l, 0.0, u, l / 2, l / 2).unwrap().to_dense();
                let hop = build_alternating_hopping(l, 1.0, 1.0, u, l / 2, l / 2)
                    .unwrap()
                    .to_dense();
                assert_eq!(base, bonds);
                assert_eq!(base, hop);
            }
        }
    }

    #[test]
    fn uniform_and_zero_delta_spectra_agree() {
        for l in [2, 4, 6] {
            let a = dense_spectrum(&build_uniform(l, 2.5, l / 2, l / 2).unwrap()).unwrap();
            let b =
                dense_spectrum(&build_alternating_bonds(l, 0.0, 2.5, l / 2, l / 2).unwrap()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn particle_hole_symmetry_at_zero_interaction() {
        for l in [2, 4, 6] {
            for h in [
                build_uniform(l, 0.0, l / 2, l / 2).unwrap(),
                build_alternating_bonds(l, 0.4, 0.0, l / 2, l / 2).unwrap(),
                build_alternating_hopping(l, 0.3, 1.2, 0.0, l / 2, l / 2).unwrap(),
            ] {
                let e = dense_spectrum(&h).unwrap();
                let n = e.len();
                for k in 0..n {
                    assert!((e[k] + e[n - 1 - k]).abs() < 1e-10, "L={l}: {} vs {}", e[k], e[n - 1 - k]);
                }
            }
        }
    }

    #[test]
    fn decoupled_dimers() {
        // τ_b = 0 on L = 4: two independent two-site blocks
        let h = build_alternating_hopping(4, 1.0, 0.0, 0.0, 2, 2).unwrap();
        let e0 = dense_spectrum(&h).unwrap()[0];
        assert!((e0 - 2.0 * -2.0).abs() < 1e-12);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let h = build_alternating_bonds(4, 0.37, 3.0, 2, 1).unwrap();
        let dense = h.to_dense();
        let x: Vec<f64> = (0..h.dim()).map(|k| ((k * 7 + 3) % 11) as f64 - 5.0).collect();
        let mut y = vec![0.0; h.dim()];
        h.apply(&x, &mut y);
        let reference = &dense * nalgebra::DVector::from_column_slice(&x);
        for k in 0..h.dim() {
            assert!((y[k] - reference[k]).abs() < 1e-12);
        }
    }
}
