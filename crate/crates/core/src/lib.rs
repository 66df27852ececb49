//! Streaming evaluation of time-index powered weighted sums
//! `S = sum_{n=0}^{N-1} n^K v[n]`.
//!
//! A cascade of `K + 1` accumulators consumes one sample per step. At the
//! end, `K + 1` constant multiplications by coefficients that depend only
//! on `K` and `N` turn the register contents into `S`. Nothing but the
//! registers is stored, regardless of `N`.
//!
//! ```
//! use powersum_cascade::{CascadeState, ExactInt, coefficients_closed};
//!
//! let mut cascade = CascadeState::new(2);
//! for v in [3, 1, 4] {
//!     cascade.push(&ExactInt::from(v));
//! }
//! let coeffs = coefficients_closed(2, 3).unwrap();
//! assert_eq!(cascade.finalize(&coeffs).unwrap(), ExactInt::from(17));
//! ```

pub mod cascade;
pub mod cli;
pub mod coeffs;
pub mod costmodel;
pub mod error;
pub mod exactmath;
pub mod oracle;

pub use cascade::{CascadeState, FloatCascade, MomentRequest};
pub use coeffs::{
    coefficient_polynomials, coefficients_closed, coefficients_stirling, CoefficientSet,
    IntPolynomial,
};
pub use costmodel::{ComplexityReport, OpCount};
pub use error::{Error, Result};
pub use exactmath::ExactInt;
pub use oracle::{baseline_sum, direct_sum, optimal_chain, AdditionChain};
