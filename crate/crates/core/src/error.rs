use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge} refers to vertex {vertex}, but the graph has {count} vertices")]
    DanglingVertex {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("leg {leg} is out of range (signature has {count} entries)")]
    LegOutOfRange { leg: usize, count: usize },
    #[error("leg {leg} is attached to more than one vertex")]
    DuplicateLeg { leg: usize },
    #[error("leg {leg} is not attached to any vertex")]
    UnassignedLeg { leg: usize },
    #[error("edge {edge} has non-positive enhancement {kappa}")]
    NonPositiveKappa { edge: usize, kappa: i64 },
    #[error("vertex {vertex} has negative genus {genus}")]
    NegativeGenus { vertex: usize, genus: i64 },
    #[error("graph has no vertices")]
    NoVertices,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("level {level} is not a level of the graph (levels are 0..={min})")]
    LevelOutOfRange { level: i64, min: i64 },
    #[error("edge {0} does not exist")]
    EdgeOutOfRange(usize),
    #[error("invalid level map: {0}")]
    InvalidLevelMap(String),
    #[error("edge {0} is not horizontal")]
    NotHorizontal(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a valid enhanced level graph ({0} violations)")]
    InvalidGraph(usize),

    #[error("state space of {states} prong-matchings exceeds the oracle bound {bound}")]
    OracleBoundExceeded { states: String, bound: u64 },

    #[error("missing residue value for {0}")]
    MissingResidue(String),

    #[error("monomial ideals live in different rings: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("monomial has {got} exponents, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("an ideal needs at least one generator")]
    EmptyGenerators,
    #[error("list of adjusting parameters is empty")]
    EmptyParameterList,
    #[error("cannot parse monomial {0:?}")]
    MonomialParse(String),

    #[error("enumeration refused: {0}")]
    BoundsExceeded(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
