use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {0}: must be at least 1")]
    InvalidRank(usize),
    #[error("arc {arc} is not valid for rank {e}")]
    ArcOutOfRange { arc: String, e: usize },
    #[error("arc {0} is not in the triangulation")]
    ArcNotPresent(String),
    #[error("{0} is not a triangulation")]
    NotATriangulation(String),
    #[error("{e} does not divide {n}")]
    NotDivisible { e: usize, n: usize },
    #[error("triangulation is not invariant under rotation by {0}")]
    NotSymmetric(usize),
    #[error("arc {0} has no exchange partner inside the triangulations of the polygon")]
    NoExchangePartner(String),
    #[error("unknown edge label {0}")]
    UnknownEdge(usize),
    #[error("edge {0} is not a leaf at a non-exceptional extremal vertex")]
    NotPrunableLeaf(usize),
    #[error("invalid Brauer tree: {0}")]
    InvalidTree(String),
    #[error("invalid algebra: n = {n}, ell = {ell}")]
    InvalidAlgebra { n: usize, ell: usize },
    #[error("module {0} is out of range for the algebra")]
    ModuleOutOfRange(String),
    #[error("module {0} is projective")]
    Projective(String),
    #[error("map does not intertwine the module structures")]
    NotAHomomorphism,
    #[error("approximation search exhausted at bound {0}")]
    ApproximationBound(usize),
    #[error("rank mismatch: triangulation rank {e}, but gcd(n, ell) = {gcd}")]
    RankMismatch { e: usize, gcd: usize },
    #[error("complexes live over different algebras")]
    AlgebraMismatch,
    #[error("summand set is not a single Nakayama orbit: {0}")]
    NotAnOrbit(String),
    #[error("complex is not two-term tilting: {0}")]
    NotTwoTermTilting(String),
    #[error("point {0} is out of range for the algebra")]
    PointOutOfRange(String),
    #[error("not a configuration: {0}")]
    NotAConfiguration(String),
    #[error("subset is not Nakayama-stable: {0}")]
    NotNakayamaStable(String),
    #[error("tree pruning needs multiplicity > 1")]
    TrivialMultiplicity,
    #[error("point ({0}, {1}) lies outside both admissible bands")]
    OutsideBands(usize, usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
