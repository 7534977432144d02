//! Exact character tables of small permutation groups, and checks of how
//! trivial-character multiplicities in character products encode conjugacy
//! class sizes and the existence of p-defect-zero classes.

pub mod arith;
pub mod group;
pub mod chartab;
pub mod classfn;
pub mod duality;
pub mod blocks;
pub mod suite;
