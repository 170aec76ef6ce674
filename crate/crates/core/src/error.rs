use thiserror::Error;

use crate::cones::FaceId;

/// Errors raised anywhere in the library.
///
/// Variants fall into two classes: input or hypothesis violations, which the
/// CLI reports with exit code 2, and internal failures (exit code 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector {0} does not lie in the lattice")]
    NotInLattice(String),

    #[error("cone generators contain a line (the cone is not pointed)")]
    ContainsLine,
    #[error("cone generators span rank {rank}, expected a full-dimensional cone of rank {expected}")]
    NotFullDimensional { rank: usize, expected: usize },
    #[error("lattice rank must be at least 1")]
    ZeroRank,
    #[error("{0} is not a face of the cone")]
    UnknownFace(String),

    #[error("empty point set")]
    EmptyPointSet,
    #[error("polytope is degenerate: affine dimension {affine_dim} but lattice rank {lattice_rank}")]
    Degenerate { affine_dim: usize, lattice_rank: usize },
    #[error("facet contains 0 in its affine hull; the cone over it is degenerate")]
    OriginInAffineHull,
    #[error("total multiplicity {multiplicity} does not match lattice rank {rank}")]
    MultiplicityMismatch { multiplicity: usize, rank: usize },

    #[error("support of {function} contains the zero exponent (function must vanish at the fixed point)")]
    ZeroExponent { function: String },
    #[error("term {exponent} of {function} has support outside dual cone")]
    SupportOutsideCone { function: String, exponent: String },
    #[error("term {exponent} of {function} has a zero coefficient")]
    ZeroCoefficient { function: String, exponent: String },
    #[error("function's polygon misses this face: Newton polygon of {function} does not meet face {face}, so T_Δ is a critical orbit of {function} (see the orbits command)")]
    PolygonMissesFace { function: String, face: FaceId },
    #[error("functional {functional} is not in the polar cone of face {face}")]
    NotInPolar { functional: String, face: FaceId },
    #[error("functional {functional} is not in the interior of the polar cone of face {face}")]
    NotInPolarInterior { functional: String, face: FaceId },

    #[error("missing Euler obstruction entries for {variety} on faces {}", fmt_faces(.faces))]
    MissingEu { variety: String, faces: Vec<FaceId> },
    #[error("unknown Euler obstruction values for {variety} on faces {}", fmt_faces(.faces))]
    UnknownEu { variety: String, faces: Vec<FaceId> },
    #[error("Euler obstruction of {variety} on smooth orbit {face} must be 1, got {value}")]
    EuConflictsWithSmooth { variety: String, face: FaceId, value: String },
    #[error("face {face} has dimension {dim} < m(face) = {m}; excluded from the formula")]
    FaceTooSmall { face: FaceId, dim: usize, m: usize },
    #[error("hypothesis violation: f and g are both critical along orbit {face}")]
    SharedCriticalOrbit { face: FaceId },
    #[error("{function} is not declared as a generic linear form")]
    NotGenericLinear { function: String },
    #[error("cone is not the standard first octant")]
    NotOctant,
    #[error("a generic linear form on a non-smooth cone needs explicit semigroup generators")]
    GenericLinearNeedsGenerators,

    #[error("{function} is not convenient: some coordinate axis carries no support point")]
    NotConvenient { function: String },

    #[error("Newton polygon of family {family} is not constant: {detail}")]
    ConstancyFailed { family: String, detail: String },

    #[error("schema error: {}", .0.join("; "))]
    Schema(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown function {0}")]
    UnknownFunction(String),
    #[error("unknown command {0}")]
    UnknownCommand(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn fmt_faces(faces: &[FaceId]) -> String {
    faces
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl ToricError {
    /// Process exit code: 1 for internal failures, 2 for everything caused by
    /// the input or by a violated hypothesis.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToricError::Internal(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, ToricError>;
