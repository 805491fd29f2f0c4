//! Covariograms of planar convex bodies generated by translation-invariant
//! monotone valuations.
//!
//! The library evaluates `g(x) = phi(K ∩ (K + x))` for polygons `K` and
//! valuations `phi = per_B + alpha·vol` (including the width as a scaled
//! strip perimeter), exposes the geometric witnesses of its radial
//! derivatives (inscribed parallelograms and boundary caps), runs the
//! symmetry/scale determination pipelines, constructs the 3-D
//! nondetermination examples, and validates the associated random-chord
//! distributions by seeded Monte Carlo.
//!
//! All geometric operations are pure functions on immutable values; grid
//! and probe loops are data-parallel with deterministic results. Stochastic
//! routines take an explicit 64-bit seed and use the ChaCha8 generator, so
//! every output is reproducible across platforms.

pub mod checks;
pub mod counterexample;
pub mod covariogram;
pub mod determination;
pub mod geom;
pub mod stochastic;
pub mod valuation;

pub use geom::{Overlap, Polygon, Segment, Vec2};
pub use valuation::{SeminormBall, Valuation};
