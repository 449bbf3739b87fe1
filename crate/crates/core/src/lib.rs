//! Exact computations in truncated categories of graded modules for current
//! algebras `g[t]`.

pub mod catobjects;
pub mod charring;
pub mod linalg;
pub mod modengine;
pub mod orders;
pub mod pbw;
pub mod rootdata;
pub mod tilting;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a module character: {0}")]
    NotAModule(String),
    #[error("no such filtration at character level: {0}")]
    NoFiltration(String),
    #[error("bad truncation: {0}")]
    BadTruncation(String),
    #[error("truncated, uncertified beyond window: {0}")]
    Uncertified(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("certificate check failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
