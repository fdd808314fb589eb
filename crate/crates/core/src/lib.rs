//! Colouring-or-subgraph decision problems, their hardness reductions, and
//! brute-force oracles that check the reductions end to end on small
//! instances.

pub mod bundle;
pub mod catalog;
pub mod circuit;
pub mod colouring;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod par;
pub mod problems;
pub mod reconfig;
pub mod subgraph;
pub mod verify;

pub use error::{Error, Result};
