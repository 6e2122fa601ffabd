//! Wasserstein curvature bounds and contraction certificates for
//! continuous-time jump Markov generators on finite graphs.
//!
//! Rates, metrics and curvature values are generic over [`Scalar`], which is
//! implemented for exact rationals and for `f64`.

pub mod birth_death;
pub mod certificate;
pub mod comparison;
pub mod coupling;
pub mod curvature;
pub mod error;
pub mod families;
pub mod glauber;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod lyapunov;
pub mod measure;
pub mod metric;
pub mod scalar;
pub mod transport;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Generator, Graph, JumpRates, RateKernel};
pub use measure::DiscreteMeasure;
pub use metric::{Metric, MetricKind};
pub use scalar::{Rational, Scalar};

/// Largest state space that exhaustive sweeps and product constructions
/// accept.
pub const PRODUCT_CAP: usize = 200_000;
