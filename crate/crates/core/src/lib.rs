//! Exact solver and verifier for the attacker-defender game on capacitated
//! flow networks.
//!
//! The defender routes flow from source to sink and pays a per-unit transport
//! cost; the attacker disrupts a set of edges, paying their capacity, and
//! every path crossing a disrupted edge loses its flow. All arithmetic is
//! exact ([`Rational`]).

pub mod budget;
pub mod equilibria;
pub mod error;
pub mod fixtures;
pub mod flowopt;
pub mod io;
pub mod lp;
pub mod mcsim;
pub mod netmodel;
pub mod rational;
pub mod verify;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use rational::Rational;
