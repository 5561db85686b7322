//! Epsilon expansion of generalized hypergeometric functions.
//!
//! Parameters of `pFq` (and Appell `F4`) are taken linear in a small
//! variable `eps`; the coefficients of the Taylor or Laurent series in `eps`
//! are assembled from closed-form derivatives of Pochhammer and reciprocal
//! Pochhammer symbols. All algorithms are generic over [`Number`], with an
//! exact rational backend and arbitrary-precision real and complex floats.

pub mod cli;
pub mod engine;
mod error;
pub mod numerics;
pub mod oracle;
pub mod pochhammer;

pub use error::{Error, Result};
pub use numerics::{Backend, ComplexScalar, ExactScalar, FloatScalar, Number, Scalar};

pub type ExactSeries = engine::LaurentSeries<ExactScalar>;
pub type FloatSeries = engine::LaurentSeries<FloatScalar>;
pub type ComplexSeries = engine::LaurentSeries<ComplexScalar>;

pub type ExactRequest = engine::ExpansionRequest<ExactScalar>;
pub type FloatRequest = engine::ExpansionRequest<FloatScalar>;
pub type ComplexRequest = engine::ExpansionRequest<ComplexScalar>;

pub type ExactParam = engine::LinearParam<ExactScalar>;
pub type FloatParam = engine::LinearParam<FloatScalar>;
