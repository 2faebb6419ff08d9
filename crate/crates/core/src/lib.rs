//! Enumeration of Arf numerical semigroups and of local Arf good semigroups
//! of ℕ^r by genus.
//!
//! * [`multseq`]: multiplicity sequences, their semigroups, compatibility.
//! * [`genus1`]: all multiplicity sequences of a given genus.
//! * [`tree`]: multiplicity trees, their conductor, genus and elements.
//! * [`genusr`]: all untwisted trees of rank `r` and genus `n`, and all
//!   trees up to branch relabeling.
//! * [`verify`]: independent oracles for the above.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod genus1;
pub mod genusr;
pub mod multseq;
pub mod tree;
pub mod verify;

pub use genus1::{brute_force_genus, enumerate_genus};
pub use genusr::{count_table, enumerate_all_trees, enumerate_genus_trees, ng, GenusTable};
pub use multseq::{compatibility, validate_sequence, Compatibility, MultiplicitySequence};
pub use tree::{validate_tree, FiniteGoodSemigroup, NodeGrid, TreeMatrix, UntwistedTree};
