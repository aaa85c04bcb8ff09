use thiserror::Error;

use crate::alexander::AlexanderError;
use crate::diagram::DiagramError;
use crate::invariants::InvariantError;
use crate::laurent::PolyParseError;
use crate::matrix::BudgetExceeded;
use crate::moves::MoveError;

/// Any failure raised by the library.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Polynomial(#[from] PolyParseError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Invariant(InvariantError),
}

impl From<InvariantError> for Error {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Budget(b) => Error::Budget(b),
            InvariantError::Diagram(d) => Error::Diagram(d),
            other => Error::Invariant(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
