use alloc::string::String;
use core::fmt;

use crate::rootsys::{Family, Root};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    RankOutOfRange { family: Family, n: usize },
    NotARoot(Root),
    RankMismatch { expected: usize, found: usize },
    Parameter(String),
    NoRecipe,
    Support(Root),
    Singular,
    Heisenberg { centre: Root, offender: Root },
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankOutOfRange { family, n } => {
                let min = family.min_rank();
                write!(
                    f,
                    "type {family}{n} is out of range: rank must be at least {min}"
                )
            }
            Error::NotARoot(r) => write!(f, "{r} is not a root"),
            Error::RankMismatch { expected, found } => {
                write!(
                    f,
                    "rank mismatch: expected length {expected}, found {found}"
                )
            }
            Error::Parameter(msg) => write!(f, "invalid parameters: {msg}"),
            Error::NoRecipe => f.write_str("no adapted-pair recipe for this parabolic"),
            Error::Support(r) => write!(
                f,
                "element has a component on {r} outside the allowed support"
            ),
            Error::Singular => f.write_str("restriction of S to the truncated Cartan is singular"),
            Error::Heisenberg { centre, offender } => {
                write!(
                    f,
                    "{offender} has no unique partner summing to the centre {centre}"
                )
            }
            Error::Unsupported(msg) => f.write_str(msg),
        }
    }
}
