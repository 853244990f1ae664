//! Constructions linking graph isomorphism, isomorphism of class-2 nilpotent
//! Lie algebras over `Z/p³Z`, and isomorphism of class-2 nilpotent `p`-groups,
//! together with exact brute-force oracles for checking each link on small
//! inputs.

pub mod graphs;
pub mod group2graph;
pub mod halgebra;
pub mod hgroup;
pub mod matrixwild;
pub mod modarith;
pub mod verify;
