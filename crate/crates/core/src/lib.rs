pub mod error;
pub mod frac_calc;
pub mod mittag_leffler;
pub mod numeric;
pub mod poly_families;
pub mod polynomial;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{BigFloat, Scalar, DEFAULT_PRECISION};
pub use polynomial::Polynomial;
pub use series::TruncatedSeries;
