//! Ground states of sector Hamiltonians.
//!
//! Small problems are diagonalized densely. Larger ones use a block Lanczos
//! iteration with full reorthogonalization and Rayleigh-Ritz extraction. A
//! block (rather than single-vector) Krylov space is essential here: near the
//! decoupling limits the two chain ends form clusters of eigenvalues split by
//! 1e−9 or less, and only a block at least as wide as the cluster resolves
//! the individual states.
//!
//! When N↑ = N↓ the search is restricted to the spin-flip parity sector
//! (−1)^{N↑}, which contains every total-spin singlet. By the Lieb-Mattis
//! theorem the ground state of an open chain lies there, and the restriction
//! removes the exponentially small singlet-triplet splitting between weakly
//! coupled end spins.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::hamiltonian::SparseHamiltonian;

/// Largest dimension handled by full dense diagonalization.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Residual tolerance ‖Hv − Ev‖ for the returned eigenpairs.
    pub tol: f64,
    /// Number of lowest eigenpairs to converge (at least 2, for the gap).
    pub nev: usize,
    pub block_size: usize,
    /// Krylov basis size that triggers a restart.
    pub max_basis: usize,
    pub max_matvecs: usize,
    /// Gaps below this flag the ground state as degenerate.
    pub degeneracy_tol: f64,
    /// Dimensions up to this use dense diagonalization.
    pub dense_threshold: usize,
    /// Restrict Sz = 0 sectors to the singlet spin-flip parity.
    pub spin_flip: bool,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            nev: 2,
            block_size: 4,
            max_basis: 160,
            max_matvecs: 200_000,
            degeneracy_tol: 1e-8,
            dense_threshold: DENSE_LIMIT,
            spin_flip: true,
            seed: 0x5eed_1234,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Dense,
    BlockLanczos,
}

#[derive(Clone, Debug)]
pub struct GroundStateResult {
    pub energy: f64,
    /// Real amplitudes over the sector basis, unit norm, largest entry positive.
    pub vector: Vec<f64>,
    /// E₁ − E₀ within the searched space; infinite for one-dimensional spaces.
    pub gap: f64,
    pub degenerate: bool,
    /// Lowest converged eigenvalues, ascending.
    pub lowest: Vec<f64>,
    /// ‖H v − E v‖ of the returned vector.
    pub residual: f64,
    pub method: SolveMethod,
    pub matvecs: usize,
    /// Spin-flip parity of the searched space, when restricted.
    pub parity: Option<i8>,
}

/// Orthonormal basis of one spin-flip parity sector, expressed in the sector basis.
struct ParityReduction {
    parity: i8,
    /// Full-basis members of each reduced vector with their coefficients.
    members: Vec<([usize; 2], [f64; 2], usize)>,
    /// Full index → (reduced index, coefficient); coefficient 0 if excluded.
    embed: Vec<(usize, f64)>,
}

impl ParityReduction {
    fn new(h: &SparseHamiltonian) -> Self {
        let basis = h.basis();
        let layout = basis.layout();
        let parity: i8 = if basis.n_up() % 2 == 0 { 1 } else { -1 };
        let p = parity as f64;
        let mut members = Vec::new();
        let mut embed = vec![(0usize, 0.0f64); basis.len()];
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for a in 0..basis.len() {
            let (flipped, sign) = layout.spin_flip(basis.state(a));
            let b = basis
                .index_of(flipped)
                .expect("spin flip left an Sz = 0 sector");
            if b == a {
                if sign == p {
                    embed[a] = (members.len(), 1.0);
                    members.push(([a, a], [1.0, 0.0], 1));
                }
            } else if a < b {
                let k = members.len();
                embed[a] = (k, inv_sqrt2);
                embed[b] = (k, p * sign * inv_sqrt2);
                members.push(([a, b], [inv_sqrt2, p * sign * inv_sqrt2], 2));
            }
        }
        ParityReduction {
            parity,
            members,
            embed,
        }
    }

    fn dim(&self) -> usize {
        self.members.len()
    }

    fn expand(&self, x: &[f64], full: &mut [f64]) {
        for (f, &(k, c)) in full.iter_mut().zip(&self.embed) {
            *f = c * x[k];
        }
    }

    fn restrict(&self, full: &[f64], x: &mut [f64]) {
        x.iter_mut().for_each(|v| *v = 0.0);
        for (&f, &(k, c)) in full.iter().zip(&self.embed) {
            if c != 0.0 {
                x[k] += c * f;
            }
        }
    }
}

/// The operator actually diagonalized: H itself or H restricted to a parity sector.
struct WorkingOperator<'a> {
    h: &'a SparseHamiltonian,
    reduction: Option<ParityReduction>,
    scratch_in: Vec<f64>,
    scratch_out: Vec<f64>,
}

impl<'a> WorkingOperator<'a> {
    fn new(h: &'a SparseHamiltonian, spin_flip: bool) -> Self {
        let basis = h.basis();
        let reduction = (spin_flip && basis.n_up() == basis.n_down()).then(|| ParityReduction::new(h));
        let scratch = if reduction.is_some() { h.dim() } else { 0 };
        WorkingOperator {
            h,
            reduction,
            scratch_in: vec![0.0; scratch],
            scratch_out: vec![0.0; scratch],
        }
    }

    fn dim(&self) -> usize {
        self.reduction.as_ref().map_or(self.h.dim(), ParityReduction::dim)
    }

    fn apply(&mut self, x: &[f64], y: &mut [f64]) {
        match &self.reduction {
            None => self.h.apply(x, y),
            Some(red) => {
                red.expand(x, &mut self.scratch_in);
                self.h.apply(&self.scratch_in, &mut self.scratch_out);
                red.restrict(&self.scratch_out, y);
            }
        }
    }

    fn lift(&self, x: &[f64]) -> Vec<f64> {
        match &self.reduction {
            None => x.to_vec(),
            Some(red) => {
                let mut full = vec![0.0; self.h.dim()];
                red.expand(x, &mut full);
                full
            }
        }
    }

    fn dense(&self) -> DMatrix<f64> {
        match &self.reduction {
            None => self.h.to_dense(),
            Some(red) => {
                let n = red.dim();
                let mut m = DMatrix::zeros(n, n);
                for (k, (idx, coef, count)) in red.members.iter().enumerate() {
                    for t in 0..*count {
                        for (col, v) in self.h.row(idx[t]) {
                            let (k2, c2) = red.embed[col];
                            if c2 != 0.0 {
                                m[(k2, k)] += c2 * v * coef[t];
                            }
                        }
                    }
                }
                m
            }
        }
    }
}

/// Eigenvalues of a dense symmetric matrix, ascending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

/// Full spectrum of a sector Hamiltonian by dense diagonalization.
pub fn dense_spectrum(h: &SparseHamiltonian) -> Result<Vec<f64>> {
    if h.dim() > DENSE_LIMIT {
        return domain(format!(
            "dense spectrum requested for dimension {} above {DENSE_LIMIT}",
            h.dim()
        ));
    }
    Ok(symmetric_eigenvalues(&h.to_dense()))
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(y, x)| *y += alpha * x);
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// C (m×b) = Aᵀ W for column-major A (n×m) and W (n×b).
fn gemm_tn(n: usize, m: usize, b: usize, a: &[f64], w: &[f64], c: &mut [f64]) {
    assert!(a.len() >= n * m && w.len() >= n * b && c.len() >= m * b);
    if m == 0 || b == 0 {
        return;
    }
    // SAFETY: bounds checked above; strides describe the stated shapes
    unsafe {
        matrixmultiply::dgemm(
            m, n, b, 1.0,
            a.as_ptr(), n as isize, 1,
            w.as_ptr(), 1, n as isize,
            0.0,
            c.as_mut_ptr(), 1, m as isize,
        );
    }
}

/// Y = beta·Y + alpha·A S for column-major A (n×m), S (m×k), Y (n×k).
fn gemm_nn(n: usize, m: usize, k: usize, alpha: f64, a: &[f64], s: &[f64], beta: f64, y: &mut [f64]) {
    assert!(a.len() >= n * m && s.len() >= m * k && y.len() >= n * k);
    if k == 0 || n == 0 {
        return;
    }
    // SAFETY: bounds checked above; strides describe the stated shapes
    unsafe {
        matrixmultiply::dgemm(
            n, m, k, alpha,
            a.as_ptr(), 1, n as isize,
            s.as_ptr(), 1, m as isize,
            beta,
            y.as_mut_ptr(), 1, n as isize,
        );
    }
}

/// Two passes of block classical Gram-Schmidt of W against the first `m`
/// columns of `a`; returns the accumulated coefficients (m×b).
fn block_orthogonalize(n: usize, m: usize, b: usize, a: &[f64], w: &mut [f64]) -> Vec<f64> {
    let mut total = vec![0.0; m * b];
    let mut c = vec![0.0; m * b];
    for _ in 0..2 {
        gemm_tn(n, m, b, a, w, &mut c);
        gemm_nn(n, m, b, -1.0, a, &c, 1.0, w);
        total.iter_mut().zip(&c).for_each(|(t, c)| *t += c);
    }
    total
}

/// Orthonormalizes the columns of W in place (modified Gram-Schmidt, two
/// passes), dropping columns whose norm falls below `floor`. Returns the
/// number of columns kept, packed at the front.
fn orthonormalize_block(n: usize, b: usize, w: &mut [f64], floor: f64) -> usize {
    let mut kept = 0;
    for j in 0..b {
        let (done, rest) = w.split_at_mut(j * n);
        let col = &mut rest[..n];
        for _ in 0..2 {
            for q in done[..kept * n].chunks_exact(n) {
                let c = dot(q, col);
                axpy(-c, q, col);
            }
        }
        let nc = norm(col);
        if nc > floor {
            col.iter_mut().for_each(|x| *x /= nc);
            if kept != j {
                w.copy_within(j * n..(j + 1) * n, kept * n);
            }
            kept += 1;
        }
    }
    kept
}

struct RitzPairs {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    matvecs: usize,
}

fn block_lanczos(op: &mut WorkingOperator<'_>, opts: &SolverOptions) -> Result<RitzPairs> {
    let n = op.dim();
    let nev = opts.nev.max(1).min(n);
    let block = opts.block_size.max(nev).min(n);
    let max_basis = opts.max_basis.max(3 * block).min(n);
    let cap = max_basis + block;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    // column-major Krylov basis
    let mut v = vec![0.0; n * cap];
    let mut start: Vec<f64> = (0..n * block).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut start_cols = block;
    let mut matvecs = 0usize;
    let mut best = f64::INFINITY;
    let mut hv = vec![0.0; n];

    loop {
        let kept = orthonormalize_block(n, start_cols, &mut start, 1e-12);
        if kept == 0 {
            return Err(Error::NumericalIntegrity("Krylov start block collapsed".into()));
        }
        v[..kept * n].copy_from_slice(&start[..kept * n]);
        let mut m = kept;
        let mut s0 = 0;
        let mut t = DMatrix::<f64>::zeros(0, 0);
        let mut steps = 0usize;

        loop {
            steps += 1;
            let b = m - s0;
            t = t.resize(m, m, 0.0);

            let mut w = vec![0.0; n * b];
            for (j, col) in w.chunks_exact_mut(n).enumerate() {
                op.apply(&v[(s0 + j) * n..(s0 + j + 1) * n], col);
                matvecs += 1;
            }
            let coeffs = block_orthogonalize(n, m, b, &v, &mut w);
            for j in 0..b {
                for i in 0..m {
                    let c = coeffs[j * m + i];
                    if i < s0 {
                        t[(i, s0 + j)] = c;
                        t[(s0 + j, i)] = c;
                    } else {
                        t[(i, s0 + j)] += 0.5 * c;
                        t[(s0 + j, i)] += 0.5 * c;
                    }
                }
            }
            // raw residual block R: H V S − V T S = R S_last
            let gram = DMatrix::from_fn(b, b, |r, c| dot(&w[r * n..(r + 1) * n], &w[c * n..(c + 1) * n]));
            let scale = t.iter().fold(1.0f64, |a, x| a.max(x.abs()));
            let next = orthonormalize_block(n, b, &mut w, 1e-13 * scale);
            let exhausted = next == 0;
            let full = m + next > max_basis;

            if m >= nev && (exhausted || full || steps % 4 == 0) {
                let (values, vectors) = sorted_eigen(t.clone());
                let worst = (0..nev)
                    .map(|k| {
                        let s = vectors.view((s0, k), (b, 1));
                        (s.transpose() * &gram * s)[(0, 0)].max(0.0).sqrt()
                    })
                    .fold(0.0, f64::max);
                best = best.min(worst);

                if worst <= opts.tol || exhausted || full {
                    let keep = if worst <= opts.tol || exhausted { nev } else { block };
                    let keep = keep.min(m);
                    let s: Vec<f64> = (0..keep)
                        .flat_map(|k| vectors.column(k).iter().copied().collect::<Vec<_>>())
                        .collect();
                    let mut y = vec![0.0; n * keep];
                    gemm_nn(n, m, keep, 1.0, &v, &s, 0.0, &mut y);

                    if worst <= opts.tol || exhausted {
                        let mut explicit = 0.0f64;
                        for (k, yk) in y.chunks_exact(n).enumerate() {
                            op.apply(yk, &mut hv);
                            matvecs += 1;
                            axpy(-values[k], yk, &mut hv);
                            explicit = explicit.max(norm(&hv));
                        }
                        if explicit <= opts.tol.max(1e-13 * scale) || exhausted {
                            return Ok(RitzPairs {
                                values: values[..nev].to_vec(),
                                vectors: y.chunks_exact(n).map(<[f64]>::to_vec).collect(),
                                matvecs,
                            });
                        }
                        // estimate was optimistic; restart from the Ritz vectors
                        let s: Vec<f64> = (0..block.min(m))
                            .flat_map(|k| vectors.column(k).iter().copied().collect::<Vec<_>>())
                            .collect();
                        y = vec![0.0; n * block.min(m)];
                        gemm_nn(n, m, block.min(m), 1.0, &v, &s, 0.0, &mut y);
                    }
                    start_cols = y.len() / n;
                    start = y;
                    break;
                }
            }
            if matvecs >= opts.max_matvecs {
                return Err(Error::NotConverged {
                    iterations: matvecs,
                    residual: best,
                });
            }
            v[m * n..(m + next) * n].copy_from_slice(&w[..next * n]);
            s0 = m;
            m += next;
        }
    }
}

fn fix_phase(v: &mut [f64]) {
    let mut pivot = 0;
    for (k, x) in v.iter().enumerate() {
        if x.abs() > v[pivot].abs() * (1.0 + 1e-12) {
            pivot = k;
        }
    }
    if v[pivot] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Lowest eigenpair of `h` together with the gap to the next level.
pub fn ground_state(h: &SparseHamiltonian, opts: &SolverOptions) -> Result<GroundStateResult> {
    if opts.nev < 2 {
        return domain("at least two eigenpairs are needed to report a gap");
    }
    if h.dim() == 0 {
        return domain("empty sector");
    }
    let mut op = WorkingOperator::new(h, opts.spin_flip);
    let parity = op.reduction.as_ref().map(|r| r.parity);
    let n = op.dim();

    let (lowest, reduced_vector, method, matvecs) = if n <= opts.dense_threshold {
        let (values, vectors) = sorted_eigen(op.dense());
        let keep = opts.nev.min(n);
        let v: Vec<f64> = vectors.column(0).iter().copied().collect();
        (values[..keep].to_vec(), v, SolveMethod::Dense, 0)
    } else {
        let ritz = block_lanczos(&mut op, opts)?;
        let v = ritz.vectors[0].clone();
        (ritz.values, v, SolveMethod::BlockLanczos, ritz.matvecs)
    };

    let mut vector = op.lift(&reduced_vector);
    let nv = norm(&vector);
    vector.iter_mut().for_each(|x| *x /= nv);
    fix_phase(&mut vector);

    let energy = lowest[0];
    let mut hv = vec![0.0; h.dim()];
    h.apply(&vector, &mut hv);
    axpy(-energy, &vector, &mut hv);
    let residual = norm(&hv);

    let gap = if lowest.len() >= 2 {
        lowest[1] - lowest[0]
    } else {
        f64::INFINITY
    };
    Ok(GroundStateResult {
        energy,
        vector,
        gap,
        degenerate: gap < opts.degeneracy_tol,
        lowest,
        residual,
        method,
        matvecs,
        parity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_alternating_bonds, build_alternating_hopping, build_uniform};

    fn two_site_energy(u: f64) -> f64 {
        (u - (u * u + 16.0).sqrt()) / 2.0
    }

    fn iterative() -> SolverOptions {
        SolverOptions {
            dense_threshold: 0,
            ..SolverOptions::default()
        }
    }

    #[test]
    fn dense_spectrum_small_cases() {
        let h = build_uniform(2, 0.0, 1, 1).unwrap();
        let e = dense_spectrum(&h).unwrap();
        let expected = [-2.0, 0.0, 0.0, 2.0];
        for (a, b) in e.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(symmetric_eigenvalues(&DMatrix::from_element(1, 1, 3.5)), vec![3.5]);
        assert_eq!(symmetric_eigenvalues(&DMatrix::identity(3, 3)), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn dense_spectrum_rejects_large() {
        let h = build_uniform(8, 1.0, 4, 4).unwrap();
        assert!(matches!(dense_spectrum(&h), Err(Error::Domain(_))));
    }

    #[test]
    fn two_site_ground_energy_and_gap() {
        let g = ground_state(&build_uniform(2, 0.0, 1, 1).unwrap(), &SolverOptions::default()).unwrap();
        assert!((g.energy + 2.0).abs() < 1e-12);
        // the singlet-parity space of (1,1) on two sites has three states: −2, 0, 2
        assert!((g.gap - 2.0).abs() < 1e-12);
        let full = SolverOptions {
            spin_flip: false,
            ..SolverOptions::default()
        };
        let g = ground_state(&build_uniform(2, 4.0, 1, 1).unwrap(), &full).unwrap();
        assert!((g.energy - two_site_energy(4.0)).abs() < 1e-12);
        assert!((g.energy + 0.828_427_124_746_19).abs() < 1e-12);
    }

    #[test]
    fn decoupled_ends_are_flagged() {
        let g = ground_state(
            &build_alternating_bonds(4, 1.0, 0.0, 2, 2).unwrap(),
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(g.degenerate);
        assert!(g.gap.abs() < 1e-10);
    }

    #[test]
    fn iterative_matches_dense_in_every_sector() {
        for l in 2..=6 {
            for u in [0.0, 4.0, 8.0] {
                for nu in 0..=l {
                    for nd in 0..=l {
                        let h = if l % 2 == 0 {
                            build_alternating_bonds(l, 0.3, u, nu, nd).unwrap()
                        } else {
                            build_uniform(l, u, nu, nd).unwrap()
                        };
                        let exact = dense_spectrum(&h).unwrap()[0];
                        let g = ground_state(&h, &iterative()).unwrap();
                        assert!(
                            (g.energy - exact).abs() < 1e-9,
                            "L={l} U={u} ({nu},{nd}): {} vs {exact}",
                            g.energy
                        );
                        assert!((norm(&g.vector) - 1.0).abs() < 1e-10);
                        assert!(g.residual < 1e-9, "residual {}", g.residual);
                    }
                }
            }
        }
    }

    #[test]
    fn iterative_resolves_end_clusters() {
        for delta in [0.9, 0.99, 1.0] {
            for u in [0.0, 8.0] {
                let h = build_alternating_bonds(6, delta, u, 3, 3).unwrap();
                let dense = ground_state(&h, &SolverOptions::default()).unwrap();
                assert_eq!(dense.method, SolveMethod::Dense);
                let lanczos = ground_state(&h, &iterative()).unwrap();
                assert_eq!(lanczos.method, SolveMethod::BlockLanczos);
                for (a, b) in dense.lowest.iter().zip(&lanczos.lowest) {
                    assert!((a - b).abs() < 1e-9, "δ={delta} U={u}");
                }
            }
        }
    }

    #[test]
    fn singlet_parity_holds_the_ground_state_at_decoupling() {
        for (h, label) in [
            (build_alternating_bonds(4, 1.0, 0.0, 2, 2).unwrap(), "δ=1 U=0"),
            (build_alternating_bonds(6, 1.0, 4.0, 3, 3).unwrap(), "δ=1 U=4"),
            (build_alternating_hopping(4, 0.0, 1.0, 0.0, 2, 2).unwrap(), "τa=0 U=0"),
            (build_alternating_hopping(6, 0.0, 1.0, 8.0, 3, 3).unwrap(), "τa=0 U=8"),
        ] {
            let exact = dense_spectrum(&h).unwrap()[0];
            let g = ground_state(&h, &SolverOptions::default()).unwrap();
            assert!((g.energy - exact).abs() < 1e-10, "{label}");
        }
    }

    #[test]
    fn different_seeds_agree() {
        let h = build_alternating_bonds(8, 0.4, 4.0, 4, 4).unwrap();
        let a = ground_state(&h, &iterative()).unwrap();
        let b = ground_state(
            &h,
            &SolverOptions {
                seed: 99,
                ..iterative()
            },
        )
        .unwrap();
        assert!(a.gap > 1e-8);
        assert!((a.energy - b.energy).abs() < 1e-9);
        for (x, y) in a.vector.iter().zip(&b.vector) {
            assert!((x.abs() - y.abs()).abs() < 1e-6);
        }
    }

    #[test]
    fn variational_monotonicity_in_bond_strength() {
        // scaling all bonds up can only lower the ground energy at fixed U
        let mut last = f64::INFINITY;
        for tau in [0.5, 1.0, 1.5, 2.0] {
            let h = build_alternating_hopping(6, tau, tau, 4.0, 3, 3).unwrap();
            let e = ground_state(&h, &SolverOptions::default()).unwrap().energy;
            assert!(e <= last + 1e-12);
            last = e;
        }
    }

    #[test]
    fn rejects_single_eigenpair_request() {
        let h = build_uniform(2, 0.0, 1, 1).unwrap();
        let opts = SolverOptions {
            nev: 1,
            ..SolverOptions::default()
        };
        assert!(ground_state(&h, &opts).is_err());
    }

    #[test]
    fn reports_non_convergence() {
        let h = build_uniform(8, 4.0, 4, 4).unwrap();
        let opts = SolverOptions {
            max_matvecs: 12,
            ..iterative()
        };
        match ground_state(&h, &opts) {
            Err(Error::NotConverged { residual, .. }) => assert!(residual > 0.0),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
