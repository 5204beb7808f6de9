use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures shared across the crate. Verdicts (a law that does not hold,
/// a lemma whose hypotheses fail) are reported as data, never as errors;
/// errors mean the input violated a precondition or a resource cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("image list is not a permutation")]
    NotAPermutation,
    #[error("permutation degrees disagree: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("size limit exceeded: {what} is {found}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        found: usize,
        limit: usize,
    },
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: conjugating element {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("table is not a Latin square: {line} {index} repeats value {value}")]
    NotLatin {
        line: &'static str,
        index: usize,
        value: usize,
    },
    #[error("malformed table: {0}")]
    MalformedTable(&'static str),
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("loop is not Bol: witness ({0}, {1}, {2})")]
    NotBol(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoTwoSidedInverse(usize),
    #[error("subloop is not normal: blocks of {0} and {1} multiply to a non-block")]
    NotNormalSubloop(usize, usize),
    #[error("K is not a transversal: K ∩ H·k{0}·k{1} has {2} elements")]
    NotTransversal(usize, usize, usize),
    #[error("invalid folder: {0}")]
    InvalidFolder(&'static str),
    #[error("element lies outside H")]
    NotInH,
    #[error("subset is not twisted: witness ({0}, {1})")]
    NotTwisted(usize, usize),
    #[error("K does not generate G")]
    NotGenerated,
    #[error("not a Bruck folder: {0}")]
    NotBruckFolder(&'static str),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(&'static str),
    #[error("undecided: {0}")]
    Undecided(&'static str),
    #[error("internal check failed: {0}")]
    Internal(&'static str),
    #[error("normal subgroup rejected: {0}")]
    BadN(&'static str),
    #[error("unsupported field size q = {0}")]
    UnsupportedField(u64),
    #[error("search exhausted without finding {0}")]
    NotFound(&'static str),
}
