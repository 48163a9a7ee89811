//! Error type shared by every module of the library.
//!
//! Each failure mode that a caller can meaningfully react to gets its own
//! variant; the CLI maps all of them to a single machine-parsable line and
//! exit code 2, while syntax problems in user-supplied text surface as
//! [`Error::Parse`] and exit code 1.

use std::fmt;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every error the library can produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text (polynomial, series, point, field spec, file) failed to parse.
    Parse(String),
    /// A binary operation received operands over different fields.
    FieldMismatch { left: String, right: String },
    /// A binary series operation received operands of different truncation order.
    OrderMismatch { left: usize, right: usize },
    /// Division by zero in a field.
    DivisionByZero,
    /// A claimed extension-field modulus is not irreducible.
    ReducibleModulus(String),
    /// Extension degree outside the supported range 2..=4.
    UnsupportedExtensionDegree(usize),
    /// The operation needs positive characteristic but the field has char 0.
    CharZeroField,
    /// The operation needs characteristic zero but the field has char p.
    CharPField(u64),
    /// Resultant of two zero polynomials is undefined.
    UndefinedResultant,
    /// A series operation required a zero constant term and the input has none.
    NotAnEndomorphism,
    /// Compositional inverse requested for a series with zero linear coefficient.
    NonInvertibleSeries,
    /// p^e-th root requested but some exponent with nonzero coefficient is not
    /// divisible by p^e; the witness exponent is reported.
    NotAPthPower { exponent: usize },
    /// The point does not lie on the curve.
    PointNotIncident { x: String, y: String },
    /// The projection used for a branch expansion is ramified at the point
    /// (the relevant partial derivative vanishes there).
    RamifiedProjection,
    /// A polynomial that must define a curve is zero or constant.
    DegenerateCurve,
    /// A composition or sum collapsed to the zero polynomial.
    DegenerateResult,
    /// Rejection sampling failed to find a parameter point within budget.
    SamplingExhausted { attempts: usize },
    /// The two curves share a component, so the requested count/multiplicity
    /// is infinite where a finite answer was required.
    InfiniteIntersection,
    /// An operation requires every input curve to be regular at the point.
    RegularityRequired,
    /// A scan finished with too few valid samples to report anything.
    InsufficientSamples { got: usize, need: usize },
    /// A formal-group-law table failed a structural requirement (unit laws).
    MalformedGroupLaw(String),
    /// A series claimed as an ODE solution fails the equation; `input` is
    /// the 1-based argument position and `order` the first failing order.
    NotASolution { input: usize, order: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: {left} vs {right}")
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "order mismatch: {left} vs {right}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ReducibleModulus(m) => {
                write!(f, "modulus {m} is not irreducible")
            }
            Error::UnsupportedExtensionDegree(k) => {
                write!(f, "extension degree {k} unsupported (need 2..=4)")
            }
            Error::CharZeroField => {
                write!(f, "operation requires positive characteristic")
            }
            Error::CharPField(p) => {
                write!(f, "operation requires characteristic zero, field has char {p}")
            }
            Error::UndefinedResultant => {
                write!(f, "resultant of two zero polynomials is undefined")
            }
            Error::NotAnEndomorphism => {
                write!(f, "series has nonzero constant term")
            }
            Error::NonInvertibleSeries => {
                write!(f, "series has zero linear coefficient, no compositional inverse")
            }
            Error::NotAPthPower { exponent } => {
                write!(f, "exponent {exponent} carries a coefficient outside the required support")
            }
            Error::PointNotIncident { x, y } => {
                write!(f, "point ({x},{y}) does not lie on the curve")
            }
            Error::RamifiedProjection => {
                write!(f, "projection is ramified at the point")
            }
            Error::DegenerateCurve => write!(f, "polynomial does not define a curve"),
            Error::DegenerateResult => {
                write!(f, "operation produced the zero polynomial")
            }
            Error::SamplingExhausted { attempts } => {
                write!(f, "sampling exhausted after {attempts} attempts")
            }
            Error::InfiniteIntersection => {
                write!(f, "curves share a component: intersection is infinite")
            }
            Error::RegularityRequired => {
                write!(f, "every curve must be regular at the point")
            }
            Error::InsufficientSamples { got, need } => {
                write!(f, "only {got} valid samples, need at least {need}")
            }
            Error::MalformedGroupLaw(msg) => write!(f, "malformed group law: {msg}"),
            Error::NotASolution { input, order } => {
                write!(
                    f,
                    "input {input} is not a solution: equation fails at order {order}"
                )
            }
        }
    }
}

impl std::error::Error for Error {}
