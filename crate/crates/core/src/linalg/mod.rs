//! Floating-point factorizations and spectral estimates.
//!
//! Everything here is plain round-to-nearest arithmetic except
//! [`enclose_inverse_near_orthogonal`], which produces a rigorous interval
//! enclosure for the verified strategies.

mod inverse;
mod qr;
mod spectral;
mod svd;

pub use inverse::{enclose_inverse_near_orthogonal, inverse, orthogonality_defect};
pub use qr::{qr, QrFactors};
pub use spectral::{
    mat_power, norm2_estimate, norm2_upper_nonneg, perron_root, rho_estimate, PerronEstimate,
    RhoEstimate,
};
pub use svd::{svd, SvdFactors};
