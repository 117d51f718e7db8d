//! Value distribution for holomorphic curves from the unit disc.

pub mod curve;
pub mod divisor;
pub mod functions;
pub mod ldl;

use num_complex::Complex64;
use thiserror::Error;

use crate::quadrature::QuadError;

pub use curve::{divisor_of_pullback, Hypersurface, ProjectiveCurve};
pub use divisor::{DiscDivisor, Truncation};
pub use functions::{
    fmt_defect, fmt_defect_constant, order_function, proximity_function, transcendence_ratio,
    CircleCurve, FmtSample, GermCurve,
};
pub use ldl::{ldl_product_ratio, ldl_ratio, DiscFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NevanlinnaError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("the curve lies in the hypersurface (pullback vanishes identically)")]
    Containment,
    #[error("zero {zero} lies on the circle |z| = {r}")]
    SingularCircle { r: f64, zero: Complex64 },
    #[error("zero or pole of modulus {modulus} inside the sampled disc")]
    Pole { modulus: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}
