//! A numerical laboratory for metric invariants of sampled spaces and
//! Lipschitz-controlled index theory at desk scale.
//!
//! The crate is organized around five pillars:
//!
//! - [`metric`]: finite metric spaces, closed-form samplers for model
//!   manifolds (circles, spheres, flat tori, products with an interval),
//!   sup-norm coordinate embeddings, and nonexpansive extension of maps
//!   between sup-norm spaces.
//! - [`cover`]: point-set covers with multiplicity and Lebesgue-number
//!   audits, thickenings, and deterministic cover generators (interleaved
//!   strips, greedy ball covers, bands).
//! - [`nerve`]: nerve complexes of covers under two simplex metrics
//!   (barycentric l1 and a round, ball-inscribed simplex model), the
//!   partition-of-unity projection onto the nerve, affine sections back
//!   into the sup-norm space, and exhaustive Lipschitz audits.
//! - [`homology`]: simplicial chains over exact rationals or GF(2),
//!   Vietoris-Rips complexes, an incremental boundary-reduction engine,
//!   death-scale based filling-radius estimation, width upper bounds from
//!   covers, and the metric-invariant inequality harness.
//! - [`ktheory`] and [`pairing`]: matrix-valued Lipschitz fields with
//!   certified constants, concrete projection/unitary generators, and the
//!   full graded-operator pairing pipeline (normalizing function, spectral
//!   calculus, difference idempotents, contour/spectral Riesz projections,
//!   integer index extraction, defect-law fits and vanishing thresholds).
//!
//! All operations are deterministic for fixed inputs and seeds, and the
//! expensive audits are exhaustive rather than sampled unless stated
//! otherwise.

extern crate openblas_src;

pub mod cover;
pub mod field;
pub mod homology;
pub mod ktheory;
pub mod linalg;
pub mod metric;
pub mod nerve;
pub mod pairing;

pub use cover::{Cover, ThickenedCover};
pub use field::{CoeffField, Rational, Z2};
pub use homology::{ChainVector, FillradReport, SimplicialComplex};
pub use ktheory::{LmBudget, MatrixField};
pub use metric::{FiniteMetricSpace, ModelKind, ModelSpaceSpec, SampledModel};
pub use nerve::{MetricFlavor, NerveComplex, NervePoint};
pub use pairing::{DifferencePackage, GradedOperator, PairingReport};
