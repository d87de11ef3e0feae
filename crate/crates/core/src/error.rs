use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    /// Extension degree outside what the built-in modulus table covers.
    UnsupportedField {
        p: u32,
        e: u32,
    },
    ReducibleModulus,
    FieldMismatch,
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    SingularMatrix,
    GroupMismatch,
    StructureMismatch,
    InvalidModule(String),
    InvalidLGroup(String),
    /// `ρ(a)ρ(b) ≠ ρ(ab)` for the given pair of elements of `L`.
    NotHomomorphism {
        a: usize,
        b: usize,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    /// The zero vector is not a projective point.
    ZeroPoint,
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::UnsupportedField { p, e } => {
                write!(f, "no modulus available for GF({p}^{e})")
            }
            Error::ReducibleModulus => f.write_str("modulus is not irreducible"),
            Error::FieldMismatch => f.write_str("operands live over different fields"),
            Error::ShapeMismatch { op, left, right } => write!(
                f,
                "{op}: incompatible shapes {}x{} and {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::SingularMatrix => f.write_str("matrix is singular"),
            Error::GroupMismatch => f.write_str("modules are over different groups"),
            Error::StructureMismatch => f.write_str("modules are over different (G, L) structures"),
            Error::InvalidModule(msg) => write!(f, "invalid module: {msg}"),
            Error::InvalidLGroup(msg) => write!(f, "invalid group L: {msg}"),
            Error::NotHomomorphism { a, b } => {
                write!(f, "action is not a homomorphism at ({a}, {b})")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 0..{len}")
            }
            Error::ZeroPoint => f.write_str("the zero vector is not a projective point"),
            Error::BudgetExceeded {
                what,
                requested,
                limit,
            } => write!(f, "{what}: {requested} exceeds budget {limit}"),
        }
    }
}

impl core::error::Error for Error {}
