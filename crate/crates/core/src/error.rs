use thiserror::Error;

/// Errors raised by window construction and the algorithms running on windows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("resource cap exceeded: {what} reached {limit}")]
    ResourceCap { what: &'static str, limit: usize },

    #[error("vertex {0} is not in the window")]
    NotInWindow(String),

    /// The working set came too close to the window's boundary sphere for the
    /// result to be exact in the infinite graph.
    #[error("margin violation: {0}")]
    Margin(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid generating set: {0}")]
    Generators(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("wrong parameters: {0}")]
    WrongParameters(String),

    #[error("relator {0} does not evaluate to the identity")]
    NonIdentityRelator(String),

    #[error("target vector has odd-degree vertices")]
    OddDegree,

    #[error("cycle decomposition unreachable inside the window")]
    Unreachable,

    #[error("no path between the endpoints avoids the forbidden edges")]
    NoAvoidingPath,

    #[error("group is not finitely presented: {0}")]
    NotFinitelyPresented(String),

    /// A statement that must hold on every instance failed; carries the instance.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
