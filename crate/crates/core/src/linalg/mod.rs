//! Exact linear algebra over the rationals.

pub mod factor;
pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod spectrum;
pub mod sturm;
pub mod subspace;

pub use jordan::{jordan_chevalley, JordanPair};
pub use matrix::{Matrix, Vector};
pub use poly::RatPoly;
pub use rational::Rational;
pub use spectrum::{
    has_purely_imaginary_spectrum, primary_component, spectral_radius_lt, spectrum, SpectrumConfig,
    SpectrumError, SpectrumReport,
};
pub use subspace::Subspace;

/// Kernel of a matrix, in canonical echelon form.
pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

/// Characteristic polynomial `det(x I - m)`.
pub fn char_poly(m: &Matrix) -> Result<RatPoly, poly::NonSquare> {
    RatPoly::char_poly(m)
}
