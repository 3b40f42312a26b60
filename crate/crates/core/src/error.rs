use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("agent {agent} assigns negative value {value} to item {item}")]
    NegativeValue { agent: usize, item: usize, value: i64 },

    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),

    #[error("bad query: {0}")]
    BadQuery(String),

    #[error("valuation row of agent {agent} sums beyond the representable bound")]
    OverflowRisk { agent: usize },

    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("arithmetic overflow while summing a bundle")]
    Overflow,

    #[error("engine `{engine}` does not accept {variant} queries")]
    WrongVariant {
        engine: &'static str,
        variant: &'static str,
    },

    #[error("total value {total} exceeds the unary-encoding guard of {limit}")]
    ValuesTooLarge { total: i64, limit: i64 },

    #[error("the partial allocation is not envy-free")]
    GammaNotEf,

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("not a multicolored clique: {0}")]
    NotAClique(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("generator gave up after {0} attempts")]
    GenRetryExhausted(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
