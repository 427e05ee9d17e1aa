//! Weighted Coxeter graphs and their generalized geometric representations.
//!
//! Every scalar is an exact element of a cyclotomic field ([`Cyclotomic`]).
//! The crate builds the generator matrices of a weighted Coxeter graph,
//! decides faithfulness with re-checkable certificates, plays the classical
//! and generalized numbers games, and enumerates the finite matrix groups
//! that witness non-faithfulness.
//!
//! Vertices are 0-based in the Rust API. Text formats, JSON output and the
//! command line use 1-based labels `s_1..s_n`.

pub mod classify;
pub mod cyclotomic;
pub mod enumerate;
mod error;
pub mod game;
pub mod georep;
pub mod graph;
mod linalg;
pub mod matrix;
pub mod presets;
mod serde_util;

pub use classify::{
    classify, monomial_generators, monomial_witness, quotient_order, MonomialWitness, Verdict,
};
pub use cyclotomic::{Cyclotomic, Exact, Order, Sign};
pub use error::{Error, Result};
pub use game::{MoveClass, NumbersGame, PlayRecord};
pub use georep::{EdgeCoefficients, GeneratorSet};
pub use graph::{CoxeterGraph, EdgeLabel, WeightFunction, WeightedGraph};
pub use matrix::RepMatrix;
