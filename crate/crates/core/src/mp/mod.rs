//! Arbitrary-precision complex arithmetic and the classical special functions.

pub mod bernoulli;
pub mod cnum;
pub mod context;
pub mod erf;
pub mod gamma;
pub mod hurwitz;
pub mod incgamma;
pub mod parse;
pub mod quad;

pub use cnum::{pi, CNum, DecimalComplex};
pub use context::PrecisionContext;
pub use erf::erf;
pub use gamma::gamma;
pub use hurwitz::hurwitz_zeta;
pub use incgamma::{upper_incomplete_gamma, upper_incomplete_gamma_tracked};
