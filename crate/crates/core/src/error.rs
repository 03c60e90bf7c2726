use thiserror::Error;

/// Errors raised while building or parsing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed line {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: missing header \"n m\"")]
    MissingHeader { line: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("matching edge {u}-{v} is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("vertex {vertex} appears in two matching edges")]
    NotDisjoint { vertex: usize },
}

/// Errors raised while reading a certificate file.
#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("certificate is not valid structured text: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("certificate lists {found} y-values for n = {n}")]
    CoverLength { n: usize, found: usize },
    #[error("certificate references vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("certificate lists edge {u}-{v} more than once")]
    DuplicateEntry { u: usize, v: usize },
}

/// Precondition failures and internal invariant violations of the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not factor-critical: {0}")]
    NotFactorCritical(String),
    #[error("Gallai-Edmonds decomposition has a singleton component {{{vertex}}}")]
    TrivialComponent { vertex: usize },
    #[error("instance has {n} vertices, above the exhaustive bound of {max}")]
    SizeBound { n: usize, max: usize },
    #[error("vertex {vertex} is pinned and cannot be left exposed")]
    PinnedExposure { vertex: usize },
    #[error("k = {k} exceeds the edge count {edges}")]
    TooManyEdges { k: usize, edges: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Invalid generator parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("k = {k} must be smaller than the base edge count {edges}")]
    KTooLarge { k: usize, edges: usize },
    #[error("q = {q} is below the maximum base degree {max_degree}")]
    QTooSmall { q: usize, max_degree: usize },
    #[error("element {element} lies in {frequency} set(s); every element needs at least two")]
    LowFrequency { element: usize, frequency: usize },
    #[error("set {set} names element {element}, but there are only {n_elems} elements")]
    UnknownElement { set: usize, element: usize, n_elems: usize },
    #[error("clique parameter N must be at least 1")]
    CliqueSize,
    #[error("ear length {0} is not odd")]
    EvenEar(usize),
    #[error("no pair of non-adjacent vertices left for an ear of length 1")]
    NoRoomForEar,
    #[error("edge probability {num}/{den} is not in [0, 1]")]
    Probability { num: u64, den: u64 },
}
