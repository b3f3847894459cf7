//! Exact engine for CNOT-Dihedral groups: elements, circuits, rewrite
//! identities, two-qubit canonical forms, layered generation by gate cost,
//! and randomized-benchmarking sequences.

pub mod canon2;
pub mod circuit;
pub mod group;
pub mod identities;
pub mod layered;
pub mod rb;

pub use circuit::{Circuit, Gate, GateCounts};
pub use group::{GroupElement, GroupError, Modulus};
