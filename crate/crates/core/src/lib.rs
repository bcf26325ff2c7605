//! Exact tools for Ramsey properties of randomly perturbed graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: bitset graphs on at most 64 vertices, named families, graph6 I/O
//!   and a budgeted subgraph search.
//! - [`density`]: exact 2-density, asymmetric density and m-density with
//!   witnesses and strict-balance predicates.
//! - [`ramsey`]: red/blue arrow decisions, including the robust and global
//!   variants over explicit forbidden families.
//! - [`threshold`]: hypothesis checkers for the k-partition and chromatic
//!   threshold theorems and a router producing threshold exponents.
//! - [`lab`]: seeded `G(n, p)` sampling, perturbed hosts, lower-bound
//!   colourings and Monte Carlo sweeps.

pub mod bits;
pub mod budget;
pub mod density;
pub mod error;
pub mod graph;
pub mod lab;
pub mod ramsey;
pub mod rational;
pub mod threshold;

pub use budget::{Bounded, Budget, SearchOutcome};
pub use error::{Error, Result};
pub use graph::{Embedding, Graph, GraphSpec};
pub use rational::Rational;
