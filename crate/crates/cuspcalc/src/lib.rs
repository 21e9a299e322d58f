//! Exact combinatorial calculus for planar rational cuspidal curves.
//!
//! The crate reconstructs resolution dual graphs from cusp data, replays
//! the almost minimal model program on the seven classified families of
//! rational cuspidal curves with complement of log general type, and checks
//! the numerical identities attached to them with integer, rational and
//! number-field arithmetic.
//!
//! Module map:
//! - [`graphcore`]: weighted intersection graphs, discriminants, barks.
//! - [`birational`]: blowups, contractions, contractible chains, `ψ_A`.
//! - [`cusp`]: multiplicity sequences, HN pairs, resolution graphs, families.
//! - [`mmp`]: boundary classification, scripted replays, minimal models.
//! - [`fibration`]: fiber solving and κ₁/₂ = −∞ witnesses.
//! - [`planecurve`]: parameterized plane curves over number fields.
//! - [`search`]: necessary-condition enumeration of cusp profiles.

pub mod birational;
pub mod cusp;
pub mod fibration;
pub mod graphcore;
pub mod linalg;
pub mod mmp;
pub mod planecurve;
pub mod search;

pub use graphcore::{DivisorGraph, RationalDivisor, VId};
