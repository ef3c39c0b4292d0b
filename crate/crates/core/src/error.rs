use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::algebra::field::SplitEvent;
use crate::blowup::ReductionTree;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone)]
pub enum Error {
    DivisionByZero,
    /// A zero divisor was met in `Q[t]/(m)`; the caller must branch on both factors.
    Split(SplitEvent),
    ZeroPolynomial,
    ZeroForm,
    RegularPoint,
    NotElementary,
    NotInvariant,
    InsufficientPrecision { needed: i64, have: i64 },
    UnexpectedResonance { order: usize },
    FieldMismatch,
    NotRational,
    MaxStepsExceeded { steps: usize, partial: Box<ReductionTree> },
    Reparameterize,
    InvalidArgument(String),
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Split(ev) => write!(
                f,
                "zero divisor: modulus {} splits as ({})·({})",
                ev.parent, ev.factors.0, ev.factors.1
            ),
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::ZeroForm => write!(f, "zero form"),
            Error::RegularPoint => write!(f, "regular point"),
            Error::NotElementary => write!(f, "not elementary: both eigenvalues vanish"),
            Error::NotInvariant => write!(f, "curve is not invariant"),
            Error::InsufficientPrecision { needed, have } => write!(
                f,
                "insufficient precision (need order {needed}, have {have}); retry with larger N"
            ),
            Error::UnexpectedResonance { order } => {
                write!(f, "unexpected resonance at order {order}")
            }
            Error::FieldMismatch => write!(f, "operands live in different fields"),
            Error::NotRational => write!(f, "value is not in Q"),
            Error::MaxStepsExceeded { steps, .. } => {
                write!(f, "reduction did not finish within {steps} blow-ups")
            }
            Error::Reparameterize => write!(f, "square root branch cut crossed; reparameterize"),
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
        }
    }
}

impl core::error::Error for Error {}
