use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("networks are not comparable: {0}")]
    Incomparable(String),
    #[error("colouring does not refine the input classes: {0}")]
    NotRefining(String),
    #[error(
        "no representative found with at most {max_arrows} arrows and entries <= {entry_bound}"
    )]
    SearchExhausted { entry_bound: u32, max_arrows: u32 },
    #[error("network is not of the {0} parametric form")]
    NotParametric(String),
    #[error("arity mismatch for input class {class}: expected ({exp_exc}, {exp_inh}) got ({got_exc}, {got_inh})")]
    Arity {
        class: usize,
        exp_exc: usize,
        exp_inh: usize,
        got_exc: usize,
        got_inh: usize,
    },
    #[error("coupling function for input class {0} is not symmetric within its groups")]
    NotSymmetric(usize),
    #[error("coupling spec: {0}")]
    Spec(String),
    #[error("expression: {0}")]
    Expr(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("integration diverged at step {step}")]
    Divergence { step: usize },
    #[error("Newton iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
