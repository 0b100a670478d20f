//! Exact computations with univariate polynomial matrices over prime fields:
//! division with remainder, residuals, shifted Popov bases of relation
//! modules, and shifted Popov forms of nonsingular matrices.

pub mod approx;
pub mod constmat;
pub mod division;
pub mod error;
pub mod field;
pub mod format;
pub mod hermite;
pub mod linalg;
mod ntt;
pub mod oracle;
pub mod poly;
pub mod polymat;
pub mod relations;

pub use constmat::ConstMat;
pub use error::{Error, Result};
pub use field::Field;
pub use poly::Poly;
pub use polymat::PolyMat;
