use thiserror::Error;

/// Everything that can go wrong while computing with webs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("zero form")]
    ZeroForm,
    #[error("degenerate resultant: both polynomials are constant")]
    DegenerateResultant,
    #[error("infinite order: the polynomial is zero")]
    InfiniteOrder,
    #[error("order along a constant polynomial is undefined")]
    ConstantCurve,
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-reduced web: the discriminant vanishes identically")]
    NonReducedWeb,
    #[error("line inside zero locus: the form vanishes identically on the line")]
    LineInsideZeroLocus,
    #[error("degenerate line parametrization: direction is zero")]
    DegenerateLine,
    #[error("singular point of W: every coefficient vanishes at the point")]
    SingularPoint,
    #[error("non-dominant map: the Jacobian determinant vanishes identically")]
    NonDominantMap,
    #[error("contracted curve: the map sends the curve to a point")]
    ContractedCurve,
    #[error("polar curve: the curve is sent to the line at infinity")]
    PolarCurve,
    #[error("pullback vanishes identically")]
    ZeroPullback,
    #[error("web is not invariant by the map")]
    NotInvariant,
    #[error("not an endomorphism: {0}")]
    NotAnEndomorphism(String),
    #[error("contracted fibration: tangent vector vanishes identically")]
    ContractedFibration,
    #[error("identical foliations: the two 1-forms are proportional")]
    IdenticalFoliations,
    #[error("degenerate sampling: random lines disagree on the degree")]
    DegenerateSampling,
    #[error("non-generic line, resample")]
    NonGenericLine,
    #[error("tracking failure, refine: {0}")]
    TrackingFailure(String),
    #[error("matching ambiguity after loop")]
    MatchingAmbiguity,
    #[error("form order mismatch: {0}")]
    OrderMismatch(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("mixed form orders")]
    MixedFormOrders,
    #[error("dx/dy appearing inside map coordinates")]
    DifferentialInMap,
    #[error("non-symmetric input")]
    NonSymmetric,
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
}

pub type Result<T, E = WebError> = std::result::Result<T, E>;
