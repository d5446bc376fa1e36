//! Adaptation of rotated-surface-code patches to defective qubits and
//! two-qubit gates.
//!
//! The crate implements two adaptation strategies over a shared assembly,
//! super-stabilizer, boundary-deformation and distance pipeline:
//!
//! - snake-and-ladder search: ancilla repurposing around defective ancillas
//!   and gates, snake removal of compromised repurposed checks, per-cluster
//!   strategy enumeration under tunable heuristics, and global composition;
//! - data-qubit disabling (DQD): the baseline that disables the data qubits
//!   around each defect.
//!
//! Code distance is computed two independent ways: a Chebyshev-weighted
//! shortest-path graph, and an exhaustive GF(2) oracle for validation.
//! Adapted patches can be windowed, merged for lattice surgery, and exported
//! as annotated stabilizer circuits.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod boundary;
pub mod check;
pub mod clustering;
pub mod compose;
pub mod distance;
pub mod dqd;
pub mod geom;
pub mod gf2;
pub mod lattice;
pub mod patch;
pub mod primitives;
pub mod strategy;

pub use geom::{Coord, Link, Pauli, Side};
pub use lattice::{sample_defects, Chip, DefectMap, DefectRates, Padding, Window, WindowSpec};
