//! Error type shared by all modules.

use alloc::string::String;
use thiserror::Error;

/// Everything that can go wrong while building or checking an array.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Edge endpoint outside `0..vertex_count` or a self loop.
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    /// Connection set contains the identity or is not inverse-closed.
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),
    /// Instance exceeds the exhaustive-search guard.
    #[error("size {size} exceeds limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    /// Operation requires a connected graph.
    #[error("graph is not connected")]
    NotConnected,
    /// Factor list empty or a factor has no vertices.
    #[error("invalid factor: {0}")]
    InvalidFactor(String),
    /// Factor index out of range.
    #[error("factor index {index} out of range for {count} factors")]
    FactorIndexOutOfRange { index: usize, count: usize },
    /// The refinement produced classes that do not reconstruct the input.
    #[error("internal factorization error: {0}")]
    InternalFactorizationError(String),
    /// `q` is not a prime power.
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    /// Multiplication table fails the group axioms.
    #[error("not a group: {0}")]
    NotAGroup(String),
    /// Alphabet must have at least two symbols.
    #[error("invalid alphabet size {0}: need g >= 2")]
    InvalidAlphabet(usize),
    /// Symbol outside `Z_g`.
    #[error("symbol {symbol} outside alphabet of size {symbols}")]
    InvalidSymbol { symbol: usize, symbols: usize },
    /// Rows of different lengths where equal lengths are required.
    #[error("row length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    /// Covering array is not bound to a graph.
    #[error("covering array is not bound to a graph")]
    NotBound,
    /// Binding does not biject rows onto graph vertices.
    #[error("invalid row binding: {0}")]
    InvalidBinding(String),
    /// An input covering array failed verification against its graph.
    #[error("input covering array {index} fails verification on its graph")]
    InvalidInputCA { index: usize },
    /// The supplied colouring is not proper for the graph.
    #[error("invalid colouring: {0}")]
    InvalidColoring(String),
    /// The supplied map is not a fixed-point-free neighbour automorphism.
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    /// The second factor is not bipartite.
    #[error("graph is not bipartite")]
    NotBipartite,
    /// A named theorem precondition does not hold.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    /// A construction produced an array that fails its own verifier.
    #[error("construction output failed verification: {0}")]
    OutputVerificationFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;
