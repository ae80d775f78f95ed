use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} is {size}, above the supported limit of {limit}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("evaluation budget of {budget} exceeded after covering {covered} of {total} bid profiles")]
    Budget {
        budget: usize,
        covered: usize,
        total: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("allocation is not welfare-maximizing: {0}")]
    NotEfficient(String),

    #[error("solver failure: {0}")]
    Solver(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
