use std::fmt;

use tamelift::{DatumError, FormatError, HodgeTateError, LiftError, OracleError, PairError};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    InvalidInput = 1,
    ValidationFailure = 2,
    OracleGuard = 3,
    Internal = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { status: Status::InvalidInput, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn datum_status(e: &DatumError) -> Status {
    match e {
        DatumError::Invariant { .. } => Status::ValidationFailure,
        _ => Status::InvalidInput,
    }
}

fn pair_status(e: &PairError) -> Status {
    match e {
        PairError::Incompatible { .. } => Status::ValidationFailure,
        PairError::Datum(d) => datum_status(d),
        _ => Status::InvalidInput,
    }
}

fn lift_status(e: &LiftError) -> Status {
    match e {
        LiftError::Shape(_) => Status::InvalidInput,
        LiftError::Hypothesis { .. } => Status::ValidationFailure,
        LiftError::GuardExceeded { .. } => Status::OracleGuard,
        LiftError::Internal(_) => Status::Internal,
        LiftError::Pair(p) => pair_status(p),
    }
}

macro_rules! from_error {
    ($ty:ty, $status:expr) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                let status: fn(&$ty) -> Status = $status;
                CliError { status: status(&e), message: e.to_string() }
            }
        }
    };
}

from_error!(DatumError, datum_status);
from_error!(PairError, pair_status);
from_error!(LiftError, lift_status);
from_error!(FormatError, |e| match e {
    FormatError::Datum(d) => datum_status(d),
    FormatError::Pair(p) => pair_status(p),
    _ => Status::InvalidInput,
});
from_error!(OracleError, |e| match e {
    OracleError::OutOfRange(_) => Status::OracleGuard,
    OracleError::Pair(p) => pair_status(p),
});
from_error!(HodgeTateError, |e| match e {
    HodgeTateError::Lift(l) => lift_status(l),
    _ => Status::InvalidInput,
});
from_error!(std::io::Error, |_| Status::InvalidInput);
