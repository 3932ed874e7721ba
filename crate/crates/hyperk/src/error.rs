//! One error type for the whole crate.
//!
//! Variants split into two families: violated preconditions (domain,
//! parameter, branch-cut, structural) and numeric failures (convergence,
//! quadrature, step control, blowup, certification). The CLI maps the
//! first family to exit code 2 and the second to exit code 3.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Pole(String),
    #[error("{0}")]
    Param(String),
    #[error("{0}")]
    BranchCut(String),
    #[error("{0}")]
    ZeroDivision(String),
    #[error("{0}")]
    Composition(String),
    #[error("{0}")]
    Singularity(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    DegenerateData(String),

    #[error("{0}")]
    Convergence(String),
    #[error("{0}")]
    Quadrature(String),
    #[error("{0}")]
    Step(String),
    #[error("{0}")]
    Blowup(String),
    #[error("{0}")]
    Certification(String),
    #[error("{0}")]
    Overflow(String),
}

impl Error {
    /// Process exit code for the CLI: 2 for precondition violations,
    /// 3 for numeric failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Domain(_)
            | Error::Pole(_)
            | Error::Param(_)
            | Error::BranchCut(_)
            | Error::ZeroDivision(_)
            | Error::Composition(_)
            | Error::Singularity(_)
            | Error::Parse(_)
            | Error::DegenerateData(_) => 2,
            Error::Convergence(_)
            | Error::Quadrature(_)
            | Error::Step(_)
            | Error::Blowup(_)
            | Error::Certification(_)
            | Error::Overflow(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
