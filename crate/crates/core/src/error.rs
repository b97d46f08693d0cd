use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice size L={l} for {model}: {reason}")]
    InvalidLattice {
        model: &'static str,
        l: u32,
        reason: &'static str,
    },
    #[error("invalid coupling: {0}")]
    InvalidCoupling(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("no tabulated commutator norms for L={0}")]
    NormsUnavailable(u32),
    #[error("optimization infeasible: {0}")]
    Infeasible(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
