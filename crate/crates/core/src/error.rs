use thiserror::Error;

use crate::graph::GraphSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has loops or multiedges; triangles are only defined on simple graphs")]
    NonSimpleGraph,

    #[error("edge index {index} out of range for {len} edge instances")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("k edge-swap needs k >= 2 distinct edges, got {0}")]
    BadArity(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid degree sequence: {0}")]
    InvalidDegreeSequence(String),

    #[error("invalid triangle sequence: {0}")]
    InvalidTriangleSequence(String),

    #[error("every edge touches the loop vertex {0}; no disjoint edge to swap with")]
    NoDisjointEdge(usize),

    #[error("multiloop connectivity criterion fails: {0}")]
    CriterionUnsatisfied(String),

    #[error("sample is not a member of the census")]
    SampleOutsideCensus,

    #[error("triangle filters need the simple space, not {0}")]
    FilterInapplicable(GraphSpace),

    #[error("census exceeds the cap of {cap} graphs")]
    CensusTooLarge { cap: usize },

    #[error("swap neighbor is missing from the supplied census")]
    CensusIncomplete,

    #[error("isomorphism classes do not cover the census: {0}")]
    ClassMismatch(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
