//! Combinatorial cylindrical contact homology toolkit for contact
//! 3-manifolds.
//!
//! The library works entirely with combinatorial stand-ins for Reeb
//! dynamics: simple orbits carry an exact index-iteration model (a rotation
//! number with an infinitesimal offset, or an explicit periodic table), an
//! action, and a free homotopy seed. From that data it computes
//! Conley-Zehnder indices and gradings, classifies orbit sets as
//! dynamically convex or dynamically separated, evaluates Fredholm index
//! formulas and branched-cover index bounds, enumerates admissible
//! multi-level building degenerations, and assembles the weighted chain
//! complex over the rationals with its homology.
//!
//! No analysis is performed: orientation signs and cylinder counts are
//! input data, and curve existence is never asserted.
//!
//! A note on near-integer rotation numbers: an elliptic orbit with rotation
//! number `r + eps`, `r` an integer, has `mu(gamma^k) = 2kr + 1` for every
//! `k`, since `floor(k(r + eps)) = kr` exactly. A perturbation heuristic
//! that rounds `k * eps` upward after several iterates would instead give
//! `2kr + 3` eventually; the floor computation here is exact and never
//! crosses the integer, which is the behavior all built-in models rely on.

pub mod building;
pub mod chain;
pub mod dynamics;
pub mod error;
pub mod index;
pub mod linalg;
pub mod models;
pub mod orbit;

pub use error::{CchError, Result};
