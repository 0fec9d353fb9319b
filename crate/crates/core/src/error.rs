use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures of the analytic formulas and numerical solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constant or parameter is outside its admissible range.
    InvalidParameter { name: &'static str, value: f64 },
    /// `k = 0` is not a Dirac quantum number.
    InvalidQuantumNumber { k: i32 },
    /// `k² ≤ ᾱ²`: the square root in `λ` turns imaginary.
    SupercriticalCoupling { k: i32, alpha_bar_sq: f64 },
    /// The principal quantum number `n = n_r + l* + 1` is not positive.
    NonPositivePrincipal { n: f64 },
    /// The Eckart mapping needs `ν > 0`.
    DeformationRequired,
    /// The energy quadratic has no real root.
    ComplexRoots { discriminant: f64 },
    /// `a ≥ e²/mc²` in the undeformed spectrum.
    MassParameterTooLarge { a: f64, limit: f64 },
    /// A function of `r` was evaluated at `r ≤ 0`.
    DomainError { r: f64 },
    InvalidGrid(&'static str),
    /// An iterative eigen solve did not converge.
    ConvergenceFailure(&'static str),
    /// No sign change (or node transition) was found in the scanned window.
    BracketingFailure(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "parameter `{name}` has inadmissible value {value}")
            }
            Error::InvalidQuantumNumber { k } => {
                write!(f, "k = {k} is not a nonzero integer")
            }
            Error::SupercriticalCoupling { k, alpha_bar_sq } => write!(
                f,
                "supercritical coupling: k² = {} ≤ ᾱ² = {alpha_bar_sq}",
                k * k
            ),
            Error::NonPositivePrincipal { n } => {
                write!(f, "principal quantum number n = {n} is not positive")
            }
            Error::DeformationRequired => {
                write!(f, "the Eckart mapping requires ν > 0; use the ν = 0 spectrum")
            }
            Error::ComplexRoots { discriminant } => {
                write!(f, "energy quadratic has complex roots (discriminant {discriminant})")
            }
            Error::MassParameterTooLarge { a, limit } => {
                write!(f, "mass parameter a = {a} must be below e²/mc² = {limit}")
            }
            Error::DomainError { r } => write!(f, "r = {r} is outside r > 0"),
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::ConvergenceFailure(what) => write!(f, "no convergence: {what}"),
            Error::BracketingFailure(what) => write!(f, "bracketing failed: {what}"),
        }
    }
}

impl core::error::Error for Error {}
