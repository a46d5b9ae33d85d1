use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("relations contain a cycle: {}", cycle.join(" < "))]
    InvalidOrder { cycle: Vec<String> },

    #[error("unknown catalog poset `{0}`")]
    UnknownCatalog(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: u128 },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("index mismatch: expected {expected} parts, found {found}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("map is not order-preserving: element {lower} < {upper} but X_{lower} is not a subset of X_{upper}")]
    NotOrderPreserving { lower: usize, upper: usize },

    #[error("subset {0:#x} is not an antichain")]
    NotAntichain(u128),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    RootBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("tower T(P,Q) undefined: {0}")]
    TowerUndefined(String),

    #[error("mode/host mismatch: {0}")]
    ModeMismatch(String),

    #[error("colouring incomplete: {0}")]
    IncompleteColouring(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
