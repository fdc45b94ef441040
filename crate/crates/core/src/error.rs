use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which binary operation is missing for a pair of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Join,
    Meet,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Join => f.write_str("join"),
            BoundKind::Meet => f.write_str("meet"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("document has no elements")]
    EmptyLattice,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("covering pairs induce a cycle through {0:?} and {1:?}")]
    CycleError(String, String),
    #[error("not a lattice: {a:?} and {b:?} have no unique {kind}")]
    NotALattice { a: String, b: String, kind: BoundKind },
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("lattice has {size} elements, limit is {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("map is not monotone: {a:?} <= {b:?} but images are not ordered")]
    NotMonotone { a: String, b: String },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("homomorphism is not a verified isomorphism")]
    NotIso,
    #[error("homomorphism does not preserve all joins and meets")]
    NotCompleteHom,
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("closed family lacks the empty set")]
    MissingEmpty,
    #[error("closed family lacks the full point set")]
    MissingFull,
    #[error("closed family is not closed under union: {0:?} and {1:?}")]
    NotClosedUnderUnion(Vec<usize>, Vec<usize>),
    #[error("closed family is not closed under intersection: {0:?} and {1:?}")]
    NotClosedUnderIntersection(Vec<usize>, Vec<usize>),
    #[error("closed set {0:?} listed twice")]
    DuplicateClosedSet(Vec<usize>),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("table has no zero object")]
    MissingZero,
    #[error("unknown space kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
