use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("lattice is not definite (signature ({plus},{minus}))")]
    Indefinite { plus: usize, minus: usize },
    #[error("diagonal entry {index} is zero")]
    ZeroDiagonal { index: usize },
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),
    #[error("rows of the embedding basis are linearly dependent")]
    DependentBasis,
    #[error("glue vector {index} is not in the dual lattice")]
    NotInDual { index: usize },
    #[error("glue is not isotropic: q = {value} (mod 2)")]
    NotIsotropic { value: BigRational },
    #[error("glue bilinear value b = {value} is not integral")]
    GlueNotOrthogonal { value: BigRational },
    #[error("overlattice Gram matrix is not integral")]
    NonIntegralGram,
    #[error("projection of the glue group onto {0} is not injective")]
    ProjectionNotInjective(&'static str),
    #[error("vector does not lie in the sublattice")]
    NotInSublattice,
    #[error("group map is not a homomorphism on generator {0}")]
    NotHomomorphism(usize),
    #[error("group orders {0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),
    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),
    #[error("p = {p} divides 2d = {two_d}")]
    PrimeDividesDiscriminant { p: i64, two_d: i64 },
    #[error("Artin invariant {0} out of range")]
    SigmaOutOfRange(u32),
    #[error("d must be positive, got {0}")]
    NonPositiveD(i64),
    #[error("height {h} impossible: slope-1 multiplicity 22 - 2h = {multiplicity} <= 0")]
    HeightTooLarge { h: u32, multiplicity: i64 },
    #[error("invalid Newton polygon: {0}")]
    InvalidPolygon(String),
    #[error("construction check `{0}` failed")]
    CheckFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
