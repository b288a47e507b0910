//! Minimal cutsets, the closeness parameter and related machinery on exact
//! finite windows of infinite bounded-degree graphs.
//!
//! * [`graph`]: providers for infinite graphs and the [`graph::GraphWindow`]
//!   every algorithm runs in;
//! * [`group`]: groups with normal forms and their Cayley graphs;
//! * [`dl`]: Diestel-Leader graphs and the lamplighter isomorphism;
//! * [`cutset`]: minimal cutset enumeration, closeness, connected subsets;
//! * [`cycles`]: mod-2 cycle space algebra and the relator-length bound;
//! * [`qi`]: bijective quasi-isometries and cutset transfer;
//! * [`tree`]: shortlex spanning trees, growth and finiteness experiments.

pub mod cutset;
pub mod cycles;
pub mod dl;
pub mod error;
pub mod graph;
pub mod group;
pub mod qi;
pub mod tree;

pub use error::{Error, Result};
