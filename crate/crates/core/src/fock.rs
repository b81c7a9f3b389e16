//! Fermionic Fock space of a spinful chain restricted to fixed (N↑, N↓).
//!
//! Every many-body basis vector is a bit string over the 2L fermionic modes.
//! A basis state stands for the product of creation operators applied to the
//! vacuum in ascending mode order, so Jordan-Wigner signs are fully determined
//! by the [`ModeOrdering`]. Sites are 1-based in every public interface.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest sector dimension accepted unless the caller raises the cap.
pub const DEFAULT_DIM_CAP: usize = 10_000_000;

/// Largest chain that fits the 64-bit occupation word.
pub const MAX_SITES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Global order of the fermionic modes, which fixes every Jordan-Wigner sign.
///
/// `SpeciesMajor` places all up modes first (1↑, 2↑, …, L↑, 1↓, …, L↓). In this
/// order nearest-neighbour hopping on an open chain never crosses an occupied
/// mode, so the Hamiltonian is sign-free and the end-pair density matrix
/// carries no hidden string phases. `SiteInterleaved` (1↑, 1↓, 2↑, 2↓, …) is
/// kept for comparison; it yields the same spectrum and the same concurrence
/// but a different local phase structure of two-site density matrices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeOrdering {
    #[default]
    SpeciesMajor,
    SiteInterleaved,
}

/// The four occupations of a single site, in qudit order |0⟩, |↑⟩, |↓⟩, |↑↓⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum LocalConfig {
    Empty = 0,
    Up = 1,
    Down = 2,
    Double = 3,
}

impl LocalConfig {
    pub const ALL: [LocalConfig; 4] = [
        LocalConfig::Empty,
        LocalConfig::Up,
        LocalConfig::Down,
        LocalConfig::Double,
    ];

    pub fn from_occupation(up: bool, down: bool) -> Self {
        match (up, down) {
            (false, false) => LocalConfig::Empty,
            (true, false) => LocalConfig::Up,
            (false, true) => LocalConfig::Down,
            (true, true) => LocalConfig::Double,
        }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        LocalConfig::ALL.get(index).copied()
    }

    /// Qudit index: 0 ↔ empty, 1 ↔ ↑, 2 ↔ ↓, 3 ↔ ↑↓.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn has(self, spin: Spin) -> bool {
        match spin {
            Spin::Up => matches!(self, LocalConfig::Up | LocalConfig::Double),
            Spin::Down => matches!(self, LocalConfig::Down | LocalConfig::Double),
        }
    }
}

impl fmt::Display for LocalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalConfig::Empty => "0",
            LocalConfig::Up => "↑",
            LocalConfig::Down => "↓",
            LocalConfig::Double => "↑↓",
        })
    }
}

/// Occupation bits of one many-body basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationState(pub u64);

impl OccupationState {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_occupied(self, mode: u32) -> bool {
        (self.0 >> mode) & 1 == 1
    }

    pub fn particle_count(self) -> u32 {
        self.0.count_ones()
    }
}

/// Chain length together with the mode ordering; maps (site, spin) to bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeLayout {
    sites: usize,
    ordering: ModeOrdering,
}

impl ModeLayout {
    pub fn new(sites: usize, ordering: ModeOrdering) -> Result<Self> {
        if !(2..=MAX_SITES).contains(&sites) {
            return domain(format!("chain length {sites} outside 2..={MAX_SITES}"));
        }
        Ok(ModeLayout { sites, ordering })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn ordering(&self) -> ModeOrdering {
        self.ordering
    }

    pub fn modes(&self) -> u32 {
        2 * self.sites as u32
    }

    /// Bit position of mode (site, spin); `site` is 1-based.
    pub fn position(&self, site: usize, spin: Spin) -> u32 {
        assert!(
            (1..=self.sites).contains(&site),
            "site {site} outside 1..={}",
            self.sites
        );
        let s = (site - 1) as u32;
        let species = matches!(spin, Spin::Down) as u32;
        match self.ordering {
            ModeOrdering::SpeciesMajor => s + species * self.sites as u32,
            ModeOrdering::SiteInterleaved => 2 * s + species,
        }
    }

    fn site_of(&self, mode: u32) -> (usize, Spin) {
        let l = self.sites as u32;
        let (s, down) = match self.ordering {
            ModeOrdering::SpeciesMajor => (mode % l, mode >= l),
            ModeOrdering::SiteInterleaved => (mode / 2, mode % 2 == 1),
        };
        (s as usize + 1, if down { Spin::Down } else { Spin::Up })
    }

    /// Mask of both modes of `site`.
    pub fn site_mask(&self, site: usize) -> u64 {
        (1u64 << self.position(site, Spin::Up)) | (1u64 << self.position(site, Spin::Down))
    }

    /// Builds a state from per-site occupations listed from site 1 to L.
    pub fn state_from_sites(&self, configs: &[LocalConfig]) -> Result<OccupationState> {
        if configs.len() != self.sites {
            return domain(format!(
                "expected {} site configurations, got {}",
                self.sites,
                configs.len()
            ));
        }
        let mut bits = 0u64;
        for (k, c) in configs.iter().enumerate() {
            for spin in Spin::BOTH {
                if c.has(spin) {
                    bits |= 1 << self.position(k + 1, spin);
                }
            }
        }
        Ok(OccupationState(bits))
    }

    pub fn local_config(&self, state: OccupationState, site: usize) -> LocalConfig {
        LocalConfig::from_occupation(
            state.is_occupied(self.position(site, Spin::Up)),
            state.is_occupied(self.position(site, Spin::Down)),
        )
    }

    /// (N↑, N↓) of a state.
    pub fn counts(&self, state: OccupationState) -> (usize, usize) {
        let mut up = 0;
        let mut down = 0;
        for site in 1..=self.sites {
            match self.local_config(state, site) {
                LocalConfig::Empty => {}
                LocalConfig::Up => up += 1,
                LocalConfig::Down => down += 1,
                LocalConfig::Double => {
                    up += 1;
                    down += 1;
                }
            }
        }
        (up, down)
    }

    pub fn double_occupancy(&self, state: OccupationState) -> usize {
        (1..=self.sites)
            .filter(|&s| self.local_config(state, s) == LocalConfig::Double)
            .count()
    }

    /// Applies c†_{i,σ} c_{j,σ}.
    ///
    /// Returns the new state with its Jordan-Wigner sign, or `None` when the
    /// source mode is empty or the target mode is already filled.
    pub fn apply_hop(
        &self,
        state: OccupationState,
        i: usize,
        j: usize,
        spin: Spin,
    ) -> Option<(OccupationState, f64)> {
        assert_ne!(i, j, "hop needs two distinct sites");
        let to = self.position(i, spin);
        let from = self.position(j, spin);
        if !state.is_occupied(from) || state.is_occupied(to) {
            return None;
        }
        let (lo, hi) = if to < from { (to, from) } else { (from, to) };
        let between = state.0 & (((1u64 << hi) - 1) & !((1u64 << (lo + 1)) - 1));
        let sign = if between.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        Some((OccupationState(state.0 ^ (1 << to) ^ (1 << from)), sign))
    }

    /// Spin flip c_{i↑} ↔ c_{i↓} on every site, with the fermionic reordering sign.
    pub fn spin_flip(&self, state: OccupationState) -> (OccupationState, f64) {
        let mut mapped = [0u32; 64];
        let mut n = 0;
        let mut bits = 0u64;
        for mode in 0..self.modes() {
            if state.is_occupied(mode) {
                let (site, spin) = self.site_of(mode);
                let target = self.position(site, spin.flipped());
                mapped[n] = target;
                n += 1;
                bits |= 1 << target;
            }
        }
        let mut inversions = 0usize;
        for a in 0..n {
            for b in a + 1..n {
                if mapped[a] > mapped[b] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        (OccupationState(bits), sign)
    }

    /// Renders a state as `|↑,0,↓⟩`.
    pub fn display(&self, state: OccupationState) -> String {
        let parts: Vec<String> = (1..=self.sites)
            .map(|s| self.local_config(state, s).to_string())
            .collect();
        format!("|{}⟩", parts.join(","))
    }
}

/// Number of states with `n_up` up and `n_down` down electrons on `sites` sites.
pub fn sector_dimension(sites: usize, n_up: usize, n_down: usize) -> u128 {
    binomial(sites, n_up) * binomial(sites, n_down)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `n`-bit subsets of the low `width` bits, ascending.
fn subsets(width: usize, n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![0];
    }
    let limit = 1u128 << width;
    let mut out = Vec::with_capacity(binomial(width, n) as usize);
    let mut v: u64 = (1u64 << n) - 1;
    while (v as u128) < limit {
        out.push(v);
        // next subset with the same popcount (Gosper)
        let c = v & v.wrapping_neg();
        let r = v.wrapping_add(c);
        if r == 0 {
            break;
        }
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// Ordered basis of one (N↑, N↓) sector with reverse lookup.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    layout: ModeLayout,
    n_up: usize,
    n_down: usize,
    states: Vec<OccupationState>,
}

impl SectorBasis {
    pub fn new(layout: ModeLayout, n_up: usize, n_down: usize, dim_cap: usize) -> Result<Self> {
        let l = layout.sites();
        if n_up > l || n_down > l {
            return domain(format!(
                "particle counts ({n_up}, {n_down}) exceed the {l} available sites"
            ));
        }
        let dim = sector_dimension(l, n_up, n_down);
        if dim > dim_cap as u128 {
            return Err(Error::DimensionTooLarge {
                dim: dim.min(usize::MAX as u128) as usize,
                cap: dim_cap,
            });
        }
        let spread = |mask: u64, spin: Spin| -> u64 {
            (0..l)
                .filter(|k| (mask >> k) & 1 == 1)
                .fold(0u64, |acc, k| acc | (1 << layout.position(k + 1, spin)))
        };
        let ups: Vec<u64> = subsets(l, n_up).into_iter().map(|m| spread(m, Spin::Up)).collect();
        let downs: Vec<u64> = subsets(l, n_down)
            .into_iter()
            .map(|m| spread(m, Spin::Down))
            .collect();
        let mut states = Vec::with_capacity(dim as usize);
        for &u in &ups {
            for &d in &downs {
                states.push(OccupationState(u | d));
            }
        }
        states.sort_unstable();
        Ok(SectorBasis {
            layout,
            n_up,
            n_down,
            states,
        })
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn sites(&self) -> usize {
        self.layout.sites()
    }

    pub fn n_up(&self) -> usize {
        self.n_up
    }

    pub fn n_down(&self) -> usize {
        self.n_down
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[OccupationState] {
        &self.states
    }

    pub fn state(&self, index: usize) -> OccupationState {
        self.states[index]
    }

    /// Position of `state` in the basis, if it belongs to the sector.
    pub fn index_of(&self, state: OccupationState) -> Option<usize> {
        self.states.binary_search(&state).ok()
    }
}

/// Sector basis in the default species-major ordering.
pub fn enumerate_sector(sites: usize, n_up: usize, n_down: usize) -> Result<SectorBasis> {
    let layout = ModeLayout::new(sites, ModeOrdering::default())?;
    SectorBasis::new(layout, n_up, n_down, DEFAULT_DIM_CAP)
}
