//! Exact computational algebra over small finite fields.
//!
//! The crate provides, over F_q for q = p^e up to a desk-scale bound:
//!
//! - exact field arithmetic with deterministic element enumeration ([`gf`]);
//! - sparse multivariate polynomials with the homogeneous-form operations
//!   plane-curve work needs ([`mpoly`]);
//! - enumeration of projective spaces, lines, and affine charts ([`projspace`]);
//! - exact Gaussian elimination ([`linalg`]);
//! - generating sets for vanishing ideals of complements of linear subspaces,
//!   with degree-by-degree ideal/vanishing dimension verification ([`ideals`]);
//! - plane-curve analysis: point counts, F_q-line components, missing points,
//!   the Sziklai-bound classification, singular-point search over bounded
//!   extensions ([`curves`]);
//! - the extremal curve families attaining the second-largest point counts
//!   ([`constructions`]);
//! - exhaustive censuses of all degree-d plane curves over F_q computing the
//!   full spectrum of point counts, M_q(d) and the runner-up value
//!   ([`census`]).
//!
//! All arithmetic is exact; every scan and search is deterministic, including
//! under parallel partitioning.

pub mod census;
pub mod constructions;
pub mod curves;
pub mod error;
pub mod gf;
pub mod ideals;
pub mod linalg;
pub mod mpoly;
pub mod projspace;

pub use error::{Error, Result};
pub use gf::{FieldEmbedding, FieldSpec, FqElem};
pub use mpoly::{Monomial, Poly};
pub use projspace::{theta, PointSet, ProjPoint};
