//! Exact diagonalization of open Fermi-Hubbard chains and the entanglement
//! and teleportation figures of merit of their end-site pair.

pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod hamiltonian;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod rdm;
pub mod selftest;
pub mod sweep;
pub mod teleport;

pub use error::{Error, Result};
