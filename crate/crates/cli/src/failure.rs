use std::fmt::Display;

use neoplasm_opt::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(msg: impl Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.to_string(),
        }
    }

    pub fn runtime(msg: impl Display) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: msg.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_)
            | Error::Dimension { .. }
            | Error::Image { .. }
            | Error::Dataset { .. }
            | Error::Json(_) => Self::usage(e),
            Error::Contract(_) | Error::Io(_) => Self::runtime(e),
        }
    }
}
