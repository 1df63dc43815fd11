use thiserror::Error;

/// Errors raised while building structures or evaluating predicates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("not a submodule: {0}")]
    NotASubmodule(String),
    #[error("scalar action undefined: Z_{m} is not a Z_{n}-module ({m} does not divide {n})")]
    ActionUndefined { n: usize, m: usize },
    #[error("submodule lattice exceeds cap {cap} (enumerated {partial} before stopping)")]
    LatticeTooLarge { cap: usize, partial: usize },
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("a proper ideal is required for this subset kind")]
    MissingIdeal,
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("method not applicable: {0}")]
    MethodInapplicable(String),
    #[error("map is not additive at ({0}, {1})")]
    NotAdditive(usize, usize),
    #[error("map is not linear at (r={0}, m={1})")]
    NotLinear(usize, usize),
    #[error("image of the submodule is not closed under the action")]
    ImageNotSubmodule,
    #[error("multiplicatively closed set is empty")]
    EmptyMultSet,
    #[error("(N : M) meets S")]
    NotDisjoint,
    #[error("submodule is not proper")]
    NotProper,
    #[error("predicate kind requires a multiplicatively closed set")]
    MissingMultSet,
    #[error("module must be faithful and multiplication for this condition")]
    FmHypothesisUnmet,
    #[error("submodule is not weakly S-primary")]
    NotWeaklySPrimary,
    #[error("{what} has size {size}, exceeding cap {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("I M is not contained in N")]
    NotHomogeneous,
    #[error("not a ring homomorphism: {0}")]
    NotRingHom(String),
    #[error("both f and phi must be surjective")]
    EpimorphismRequired,
    #[error("derived set is empty: {0}")]
    EmptySet(String),
    #[error("module is not a multiplication module")]
    NotMultiplicationModule,
    #[error("unknown claim id '{0}'")]
    UnknownClaim(String),
    #[error("multiplicatively closed set contains zero; localization is the zero ring")]
    ZeroInMultSet,
    #[error("parse error at line {line}, column {column}: {msg}")]
    ParseError { line: usize, column: usize, msg: String },
    #[error("unresolved reference to {kind} '{name}'")]
    UnresolvedReference { kind: &'static str, name: String },
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
