//! Polynomial arithmetic, Gröbner bases and linear algebra over GF(p).

pub mod field;
pub mod gb;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod text;
pub mod univariate;

use thiserror::Error;

pub use field::{FieldSpec, DEFAULT_PRIME};
pub use gb::{groebner, normal_form, GbOptions, DEFAULT_DEGREE_CAP};
pub use hilbert::{hilbert, HilbertData};
pub use ideal::Ideal;
pub use linalg::Matrix;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Poly, PolyRing, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("Gröbner basis computation exceeded degree cap {0}")]
    CapExceeded(u32),
    #[error("operation requires a different monomial order")]
    WrongOrder,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial division is not exact")]
    NotDivisible,
}
