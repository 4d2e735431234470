//! Exact computational engine for bidegree-(3,3) curves on P1 x P1:
//! GIT stability under SL(2) x SL(2) semidirect Z/2 via the Hilbert-Mumford
//! criterion, exact plane-curve singularity classification, orbit-closure
//! limits, and the divisor-class arithmetic on the Picard lattice of the
//! moduli space of genus-4 stable curves.

pub mod biform;
pub mod corpus;
pub mod divisors;
pub mod error;
pub mod exact;
pub mod parse;
pub mod report;
pub mod rng;
pub mod singularity;
pub mod stability;
pub mod weights;

pub use error::Error;
