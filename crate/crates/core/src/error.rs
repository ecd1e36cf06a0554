use alloc::string::String;
use core::fmt;

/// Everything that can go wrong when building or querying the combinatorial
/// objects of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `e` must be at least 2.
    InvalidModulus(usize),
    /// A multipartition must have at least one component.
    EmptyMultipartition,
    /// Multicharge length does not match the number of components.
    ChargeLength { expected: usize, found: usize },
    /// The two multipartitions have different sizes or component counts.
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    /// The operation is only defined for multicores.
    NotMulticore,
    /// The operation is only defined on core blocks.
    NotCoreBlock,
    /// A β-set encoding does not describe a charged partition.
    MalformedBetaSet(String),
    /// Runner or component index out of range.
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },
    /// The node is not a removable (resp. addable) node of the expected residue.
    BadNode(String),
    /// A desk-scale cap would be exceeded.
    CapExceeded { what: &'static str, value: usize, cap: usize },
    /// A hypothesis required by a check does not hold.
    Hypothesis(String),
    /// The rendering window cuts through the irregular part of the display.
    Window(String),
    /// Text that could not be parsed.
    Parse(String),
    /// A verified property failed; `check` names it.
    CheckFailed { check: &'static str, detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(e) => write!(f, "e must be at least 2, got {e}"),
            Error::EmptyMultipartition => f.write_str("a multipartition needs at least one component"),
            Error::ChargeLength { expected, found } => {
                write!(f, "multicharge has {found} entries but the multipartition has {expected} components")
            }
            Error::ShapeMismatch { left, right } => write!(
                f,
                "multipartitions differ in (size, components): {left:?} vs {right:?}"
            ),
            Error::NotMulticore => f.write_str("input is not a multicore"),
            Error::NotCoreBlock => f.write_str("input does not lie in a core block"),
            Error::MalformedBetaSet(msg) => write!(f, "malformed beta-set: {msg}"),
            Error::IndexOutOfRange { what, index, bound } => {
                write!(f, "{what} index {index} out of range (must be < {bound})")
            }
            Error::BadNode(msg) => write!(f, "bad node: {msg}"),
            Error::CapExceeded { what, value, cap } => {
                write!(f, "{what} = {value} exceeds the cap {cap}")
            }
            Error::Hypothesis(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::Window(msg) => write!(f, "render window: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::CheckFailed { check, detail } => write!(f, "check {check} failed: {detail}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
