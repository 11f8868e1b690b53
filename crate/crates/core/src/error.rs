use thiserror::Error;

/// Everything that can go wrong while building presentations or evaluating
/// the zeta formulas.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a sublattice")]
    NotSublattice,

    #[error("not a lattice point")]
    NotLatticePoint,

    #[error("outside span")]
    OutsideSpan,

    #[error("zero vector has no primitive")]
    ZeroVector,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("degenerate polyhedron: not full-dimensional in its lattice")]
    DegeneratePolyhedron,

    #[error("lattice mismatch")]
    LatticeMismatch,

    #[error("arity must equal dimension (got {polytopes} polytopes in rank {rank})")]
    ArityMismatch { polytopes: usize, rank: usize },

    #[error("need 1 ≤ p ≤ n polytopes (got p = {polytopes}, n = {rank})")]
    TooManyPolytopes { polytopes: usize, rank: usize },

    #[error("empty polytope")]
    EmptyPolytope,

    #[error("empty generating set")]
    NoGenerators,

    #[error("K(S) contains a line; non-strongly-convex semigroups are unsupported")]
    NotStronglyConvex,

    #[error("dim K(S) = {rank} < n = {ambient}: re-express S in M(S) coordinates first")]
    RankDeficient { rank: usize, ambient: usize },

    #[error("exponent {0:?} is not in the semigroup S")]
    NotInSemigroup(Vec<String>),

    #[error("f(0) ≠ 0: Milnor fiber at the fixed point undefined in this framework")]
    ConstantTerm,

    #[error("face does not meet Newton polygon")]
    EmptyRestriction,

    #[error("need 1 ≤ k ≤ n polynomials (got k = {k}, n = {n})")]
    EquationCount { k: usize, n: usize },

    #[error("mode {mode} takes exactly one polynomial, got {found}")]
    PolynomialCount { mode: String, found: usize },

    #[error("local system matrices must commute (face {face:?})")]
    NonCommuting { face: Vec<usize> },

    #[error("monodromy must be invertible (face {face:?})")]
    Singular { face: Vec<usize> },

    #[error("local system size mismatch on face {face:?}: {detail}")]
    MatrixShape { face: Vec<usize>, detail: String },

    #[error("no local system supplied for contributing face {0:?}")]
    MissingLocalSystem(Vec<usize>),

    #[error("face {0:?} is not a face of K(S)")]
    UnknownFace(Vec<usize>),

    #[error("value too large for this operation: {0}")]
    Overflow(String),

    #[error("oracle precondition failed: {0}")]
    Oracle(String),

    #[error("oracle mismatch: {0}")]
    CheckFailed(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
