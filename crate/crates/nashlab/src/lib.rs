//! A construction-and-verification laboratory for the reduction pipeline
//! end-of-line → embedded Brouwer function → two-player imitation game.
//!
//! The crate builds the host graphs (double butterfly, edge multigraph,
//! replacement product), samples and mutates end-of-line instances over them,
//! routes arbitrary bounded-degree digraphs obliviously through the butterfly,
//! lifts query inputs into two-party inputs through a small gadget, embeds an
//! instance as a piecewise-linear path in `[-1,2]^{4m}` with a displacement
//! field whose approximate fixed points sit exactly at the path ends, and
//! finally wires everything into a two-player game whose well-supported
//! equilibria can be decoded back into end-of-line solutions.
//!
//! Numeric geometry is generic over the scalar type (see [`scalar::Scalar`]);
//! the concrete aliases below pin `f64` for the CLI and the acceptance suite.

pub mod acceptance;
pub mod brouwer;
pub mod cli;
pub mod code;
pub mod embed;
pub mod error;
pub mod game;
pub mod graphs;
pub mod lift;
pub mod locality;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};

/// Default scalar type used by the binary and the acceptance suite.
pub type Real = f64;
