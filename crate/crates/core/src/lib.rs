//! Numerical invariants of genus one fibrations with an `n`-section.
//!
//! * [`p1bundles`]: split bundles on P¹, slope bounds, admissible splitting types.
//! * [`atiyah`]: endomorphism dimensions of semistable bundles on an elliptic curve.
//! * [`chern`]: discriminants, the universal extension, and `D²` thresholds.
//! * [`lattice`]: even lattices, Pontrjagin squares and reflection orbits.
//! * [`model_surfaces`]: intersection theory on projective bundles over P¹.

pub mod atiyah;
pub mod chern;
pub mod error;
pub mod lattice;
pub mod model_surfaces;
pub mod p1bundles;

pub use error::{Error, Result};

/// Exact rational arithmetic used for slopes and bounds.
pub type Rational = num_rational::Ratio<i64>;
