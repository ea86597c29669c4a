use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("boundary value undefined at breakpoint u = {u}")]
    UndefinedBoundaryPoint { u: f64 },
    #[error("pole at {at}")]
    Pole { at: Complex64 },
    #[error("point {u} lies outside the parameter domain")]
    OutsideDomain { u: Complex64 },
    #[error("invalid boundary data: {0}")]
    InvalidBoundaryData(&'static str),
    #[error("degenerate Möbius map")]
    DegenerateMobius,
    #[error("nome |q| = {modulus} is not inside the unit disk")]
    NomeDomain { modulus: f64 },
    #[error("{z} is a branch point of the slope map")]
    BoundaryVertex { z: Complex64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid region: {0}")]
    Region(#[from] RegionError),
    #[error("region is not balanced: height closure residual {residual}")]
    Imbalance { residual: f64 },
    #[error("expected {expected} anchors, got {found}")]
    AnchorCount { expected: usize, found: usize },
    #[error("anchors {first} and {second} violate the cyclic order")]
    OrderViolation { first: usize, second: usize },
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("infeasible region: {0}")]
    Infeasible(String),
    #[error("rational map is constant")]
    DegenerateMap,
    #[error("degenerate parameter family: {0}")]
    DegenerateFamily(String),
    #[error("singular linear system (condition number {cond:.3e})")]
    Singular { cond: f64 },
    #[error("side lines are not tangent to a common conic (residual {residual:.3e})")]
    NotCircumscribing { residual: f64 },
}

/// The first violation found when validating a polygon.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("region needs at least {min} sides, got {found}")]
    TooFewSides { min: usize, found: usize },
    #[error("side {index} has label {found}, expected {expected}")]
    LabelCycle { index: usize, expected: u8, found: u8 },
    #[error("side {index} has a non-finite length")]
    BadLength { index: usize },
    #[error("polygon does not close (gap {gap:.3e})")]
    NotClosed { gap: f64 },
    #[error("polygon is traversed counterclockwise (signed area {area:.3e})")]
    Orientation { area: f64 },
}
