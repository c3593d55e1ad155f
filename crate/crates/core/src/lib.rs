//! Decides where an empirical model sits in the contextuality hierarchy by
//! reducing each question to invariants of the scenario's exclusivity graph,
//! with an exact stabilizer backend for qubit and qudit scenarios.

pub mod error;
pub mod exclusivity;
pub mod graphs;
pub mod logic;
pub mod lp;
pub mod protocols;
pub mod random;
pub mod rational;
pub mod registry;
pub mod scenario;
pub mod stabilizer;

pub use error::{Error, Result};
pub use rational::Rational;
