//! Exact and Monte Carlo tools for zero-one laws of sparse random graphs.
//!
//! * [`graph`]: simple graphs, densities, balance, automorphisms, distances.
//! * [`pairs`]: rooted pairs, relative densities, safety, extensions, maximality.
//! * [`logic`]: first-order formulas over graphs, parser, evaluator, builders.
//! * [`random`]: seeded `G(n, p)` sampling, copy counting, estimates, witnesses.
//! * [`game`]: Ehrenfeucht games, equivalence certificates, scripted strategies.

pub mod error;
pub mod game;
pub mod graph;
pub mod logic;
pub mod pairs;
pub mod random;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{Distance, Graph};
pub use rational::Rational;
