//! Exact computer algebra for finite free resolutions of matrix algebras.
//!
//! The linear algebra, free-algebra and matrix-evaluation layers are generic
//! over an exact [`Field`]; the resolution, information and catalog layers
//! work over the cyclotomic field ℚ(ζ₈) through the aliases below.

pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod free_algebra;
pub mod information;
pub mod linalg;
pub mod matrix_rep;
pub mod resolution;
pub mod scalar;

pub use cyclotomic::CycScalar;
pub use error::{Error, Result};
pub use free_algebra::{enumerate_words, FiltrationBasis, FreeElement, Word, DEFAULT_MAX_DIM};
pub use linalg::{solve_linear, EchelonSpan, Matrix};
pub use matrix_rep::MatrixAlgebraTarget;
pub use resolution::{clifford_resolution, FiniteFreeResolution, VerificationReport};
pub use scalar::{Field, Rational};

/// Dense matrix over ℚ(ζ₈).
pub type ScalarMatrix = Matrix<CycScalar>;
/// Free-algebra element over ℚ(ζ₈).
pub type CycElement = FreeElement<CycScalar>;
/// Matrix-algebra target over ℚ(ζ₈).
pub type CycTarget = MatrixAlgebraTarget<CycScalar>;
/// Dense matrix over ℚ.
pub type RationalMatrix = Matrix<Rational>;
/// Free-algebra element over ℚ.
pub type RationalElement = FreeElement<Rational>;

/// Largest matrix size accepted by constructors unless overridden.
pub const DEFAULT_MAX_MATRIX_SIZE: usize = 64;

/// Size caps applied before any large enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Limits {
    /// Maximal number of coordinates of a word space `ℱ_D`.
    pub max_dim: usize,
    /// Maximal matrix size `n` of a constructed target.
    pub max_matrix_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: DEFAULT_MAX_DIM, max_matrix_size: DEFAULT_MAX_MATRIX_SIZE }
    }
}
