//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("minimal polynomial has repeated roots")]
    RepeatedRoots,
    #[error("field is not totally real: {found} real roots, degree {degree}")]
    NotTotallyReal { degree: usize, found: usize },
    #[error("basis does not span an order: {0}")]
    NotAnOrder(String),
    #[error("basis vectors are linearly dependent")]
    SingularBasis,
    #[error("division by zero or by a non-invertible element")]
    DivisionByZero,
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix size {0} is odd; a symplectic matrix has size 2g")]
    OddDimension(usize),
    #[error("matrix is not a symplectic similitude")]
    NotSymplectic,
    #[error("level must be at least 3, got {0}")]
    LevelTooSmall(u32),
    #[error("determinant is not a nonzero rational")]
    NotInGPrime,
    #[error("imaginary part is not totally positive")]
    NotUpperHalf,
    #[error("Moebius denominator is singular")]
    SingularDenominator,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("similitude factor must be positive to preserve orientation")]
    NonPositiveSimilitude,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("contraction requires degree at least 1")]
    DegreeZero,
    #[error("weight vector has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("matrix is not in the required lattice group")]
    NotInLattice,
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadCoordinateLength { got: usize, expected: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
