use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} of size {size} exceeds the limit {cap}")]
    SizeLimit { what: &'static str, size: u128, cap: u128 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no predecessor-uniform ordering exists for this twisting matrix")]
    NoPuOrdering,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::SizeLimit { what, size, cap })
    } else {
        Ok(())
    }
}
