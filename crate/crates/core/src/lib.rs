pub mod coeffs;
pub mod error;
pub mod expansion;
pub mod mp;
pub mod oracle;
pub mod stokes;
pub mod terminant;

pub use error::{Error, Result};
pub use mp::{CNum, PrecisionContext};
