//! Exact computations in the generalized Thompson groups F(n) = F_{n,inf}.
//!
//! * [`words`]: word arithmetic and a solution to the word problem.
//! * [`plrep`]: the faithful piecewise-linear representation on `[0, 1]`.
//! * [`charspace`]: characters, the character sphere and Sigma-invariant
//!   membership, plus finiteness classification of subgroups above G'.
//! * [`autos`]: the automorphisms phi and mu acting on characters.
//! * [`lattices`]: finite-index subgroups as sublattices of `Z^n`.
//! * [`complexes`]: cell counts of classifying spaces, generator and
//!   deficiency bounds.
//! * [`gradients`]: rank, deficiency and partial Euler characteristic
//!   gradients along chains of subgroups.
//! * [`cli`]: the command-line front end.

pub mod error;
pub mod rational;
pub mod words;
pub mod plrep;
pub mod charspace;
pub mod lattices;
pub mod autos;
pub mod complexes;
pub mod gradients;
pub mod cli;

pub use error::{Error, Result};
