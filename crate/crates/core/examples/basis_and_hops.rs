//! Fixed-(N↑, N↓) sector basis and the signed hopping action on it.
//!
//!     cargo run --example basis_and_hops

use hubbard_teleport::fock::{enumerate_sector, sector_dimension, LocalConfig, ModeLayout, ModeOrdering, Spin};

fn main() -> hubbard_teleport::Result<()> {
    for l in [2, 4, 6, 8, 10, 12] {
        println!("L={l:>2}  half-filled sector dimension {}", sector_dimension(l, l / 2, l / 2));
    }

    let basis = enumerate_sector(3, 2, 1)?;
    let layout = basis.layout();
    println!("\nL=3, N↑=2, N↓=1: {} states", basis.len());
    for (k, &s) in basis.states().iter().enumerate() {
        let hops: Vec<String> = (1..3)
            .flat_map(|i| Spin::BOTH.map(|spin| (i, spin)))
            .filter_map(|(i, spin)| {
                let (t, sign) = layout.apply_hop(s, i, i + 1, spin)?;
                Some(format!("{sign:+} {}", layout.display(t)))
            })
            .collect();
        println!("  {k:>2} {}  c†_i c_(i+1): {}", layout.display(s), hops.join(", "));
    }

    // a hop across a down electron: sign-free only when all up modes come first
    for ordering in [ModeOrdering::SpeciesMajor, ModeOrdering::SiteInterleaved] {
        let layout = ModeLayout::new(3, ordering)?;
        let s = layout.state_from_sites(&[LocalConfig::Empty, LocalConfig::Down, LocalConfig::Up])?;
        let (t, sign) = layout.apply_hop(s, 1, 3, Spin::Up).expect("site 3 holds an up electron");
        println!("{ordering:?}: c†_1↑ c_3↑ {} = {sign:+} {}", layout.display(s), layout.display(t));
    }
    Ok(())
}
