//! Error taxonomy for the exact-arithmetic pipeline.
//!
//! Mathematical failure modes are kept distinct so callers can react to them:
//! hitting a reducible modulus during inversion says something about the input
//! curve (it is not irreducible), a missing square root says the ground field
//! must be extended, and so on. The CLI turns most of these into diagnostics
//! rather than crashes.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Division by zero in a field.
    DivisionByZero,
    /// Attempt to form a rational function with denominator zero.
    ZeroDenominator,
    /// Extended gcd of (0, 0) is undefined.
    XgcdBothZero,
    /// Operation undefined for the zero polynomial.
    ZeroPolynomial,
    /// Operation undefined for a constant polynomial of this kind.
    ConstantPolynomial,
    /// Inversion hit a zero divisor: the modulus has a proper factor, so the
    /// quotient is not a field. The witness factor is carried as text.
    ReducibleModulus { factor: String },
    /// A singular linear system where a unique solution was required.
    SingularSystem,
    /// The anchor chart is unusable for this curve (the fiber through the
    /// marked point degenerates); reports which precondition failed.
    ChartDegenerate(String),
    /// The fiber polynomial has a repeated root (discriminant zero).
    InseparableFiber,
    /// Projection degree outside what an operation supports.
    UnsupportedDegree { got: u32, wanted: &'static str },
    /// Curve degree below 3; too small to carry the structures built here.
    DegreeTooSmall { got: u32 },
    /// The input polynomial is not squarefree where a reduced curve is
    /// required.
    NotSquarefree,
    /// Automorphism construction requested for a projection that is not
    /// Galois.
    NotGalois,
    /// The ground field lacks a needed square root; `radicand` describes the
    /// element whose root must be adjoined (as text, e.g. "-3").
    FieldExtensionNeeded { radicand: String },
    /// Radical data fails the irreducibility certificate: every zero/pole
    /// multiplicity of q is divisible by the prime p, so q is a p-th power
    /// over an algebraically closed constant field.
    RadicandIsPower { p: u32 },
    /// All radical coefficients c_1..c_{n-1} vanish: the element lies in the
    /// base field and generates nothing.
    DegenerateRadicalElement,
    /// Coefficients c_1..c_{n-1} are not a geometric sequence, so the
    /// fractional-linear collapse does not apply.
    NotGeometric,
    /// c_1 = 0 in a presentation of degree n > 3: no rewrite over q^2 exists
    /// there, so no fractional-linear expression is produced.
    LinearCoefficientZero { n: u32 },
    /// The requested root of unity does not live in this number field.
    MissingRootOfUnity { n: u32 },
    /// No fractional-linear map represents the automorphism (empty solution
    /// space).
    NoMoebiusRepresentation,
    /// A matrix that should have been invertible is singular.
    SingularMatrix,
    /// A projective point must have at least one nonzero coordinate.
    ZeroProjectivePoint,
    /// A map given to the de Jonquières machinery is malformed; the message
    /// says which structural constraint failed.
    MalformedMap(String),
    /// An internal consistency check failed; carries a short description.
    /// Seeing this is a bug, not a property of the input.
    Internal(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::DivisionByZero => write!(f, "division by zero"),
            CoreError::ZeroDenominator => write!(f, "denominator is zero"),
            CoreError::XgcdBothZero => write!(f, "extended gcd of (0, 0) is undefined"),
            CoreError::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            CoreError::ConstantPolynomial => {
                write!(f, "operation undefined for a constant polynomial")
            }
            CoreError::ReducibleModulus { factor } => {
                write!(f, "modulus is reducible (factor: {factor})")
            }
            CoreError::SingularSystem => write!(f, "linear system is singular"),
            CoreError::ChartDegenerate(msg) => write!(f, "degenerate chart: {msg}"),
            CoreError::InseparableFiber => {
                write!(f, "fiber polynomial has a repeated root (discriminant zero)")
            }
            CoreError::UnsupportedDegree { got, wanted } => {
                write!(f, "unsupported degree {got} (supported: {wanted})")
            }
            CoreError::DegreeTooSmall { got } => {
                write!(f, "curve degree {got} is below the minimum of 3")
            }
            CoreError::NotSquarefree => write!(f, "polynomial has a repeated factor"),
            CoreError::NotGalois => write!(f, "projection is not Galois"),
            CoreError::FieldExtensionNeeded { radicand } => {
                write!(f, "ground field must be extended by a square root of {radicand}")
            }
            CoreError::RadicandIsPower { p } => {
                write!(f, "radicand is a {p}-th power, so the radical extension collapses")
            }
            CoreError::DegenerateRadicalElement => {
                write!(f, "all radical coefficients vanish; element lies in the base field")
            }
            CoreError::NotGeometric => {
                write!(f, "coefficients do not form a geometric sequence")
            }
            CoreError::LinearCoefficientZero { n } => {
                write!(f, "c_1 = 0 with n = {n}: no fractional-linear expression available")
            }
            CoreError::MissingRootOfUnity { n } => {
                write!(f, "field contains no primitive {n}-th root of unity")
            }
            CoreError::NoMoebiusRepresentation => {
                write!(f, "automorphism admits no fractional-linear representation")
            }
            CoreError::SingularMatrix => write!(f, "matrix is singular"),
            CoreError::ZeroProjectivePoint => {
                write!(f, "projective point must have a nonzero coordinate")
            }
            CoreError::MalformedMap(msg) => write!(f, "malformed map: {msg}"),
            CoreError::Internal(msg) => write!(f, "internal consistency check failed: {msg}"),
        }
    }
}

pub type CoreResult<T> = Result<T, CoreError>;
