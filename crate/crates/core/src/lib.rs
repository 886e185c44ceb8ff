//! Letter graphs and the structure around them.
//!
//! * [`graph`]: graphs as adjacency bit-rows, named families (paths, matchings,
//!   the bull, stacked paths, threshold graphs), induced-subgraph search,
//!   graph6 and DOT.
//! * [`letter`]: decoders, words and letterings; decoding and checking.
//! * [`solver`]: exact lettericity by decoder enumeration plus word search.
//! * [`modular`]: modules, primality, the prime quotient and vertex roles in
//!   prime graphs.
//! * [`obstructions`]: induced matchings, co-matchings and stacked paths, the
//!   `(p, q, r)` profile and the recursive letter-count bounds.
//! * [`composer`]: builds a verified lettering of any graph whose prime
//!   quotients the solver can handle.
//! * [`checks`]: named corpus checks shared by the CLI.

#![allow(clippy::needless_range_loop)]

pub mod checks;
pub mod composer;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod letter;
pub mod modular;
pub mod obstructions;
pub mod par;
pub mod solver;

pub use error::{Error, Result};
pub use graph::Graph;
