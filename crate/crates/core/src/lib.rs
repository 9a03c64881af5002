//! Multipartite uniform clutters built from subspaces of GF(q)^n: exact
//! idealness and max-flow min-cut checks, minor search, and constructive
//! minor witnesses.

pub mod bits;
pub mod budget;
pub mod clutter;
pub mod gf;
pub mod graphs;
pub mod matroid;
pub mod polyhedral;
pub mod search;
pub mod vspace;
pub mod verify;
