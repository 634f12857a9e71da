use thiserror::Error;

/// Failures of the geometric pipeline.
///
/// Most variants carry the offending residual so a caller can report how far
/// off the input was.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("axis point is not a future timelike unit vector (<p,p> = {0})")]
    NonTimelikeAxis(f64),
    #[error("spheres are not in oriented contact (residual {0:e})")]
    NotInContact(f64),
    #[error("degenerate contact: equal radii with isotropic center difference")]
    DegenerateContact,
    #[error("sphere radius {rho} exceeds circle radius {circle}")]
    RadiusTooLarge { rho: f64, circle: f64 },
    #[error("isotropic direction is horizontal (|d3| below tolerance)")]
    VerticalLine,
    #[error("plane through the points is not spacelike")]
    DegenerateFacePlane,
    #[error("edge ({0:?}) is not an edge of the patch")]
    InvalidEdge(String),
    #[error("vertex ({0}, {1}) is on the boundary")]
    BoundaryVertex(i32, i32),
    #[error("one-form is not closed (cycle residual {residual:e})")]
    NotClosed { residual: f64 },
    #[error("point lies outside the unit disk (|z| = {0})")]
    OutsideDisk(f64),
    #[error("pattern does not fit in the unit disk (max |c|+rho = {0})")]
    DoesNotFitInDisk(f64),
    #[error("invalid circle pattern: {0}")]
    PatternInvalid(String),
    #[error("orientation propagation is inconsistent at ({0}, {1})")]
    OrientationInconsistent(i32, i32),
    #[error("combined edge has zero Lorentz length")]
    ZeroLengthEdge,
    #[error("zero radius")]
    ZeroRadius,
    #[error("adjacent circle centers coincide")]
    CoincidentCenters,
    #[error("offset quad is not planar (residual {0:e})")]
    NonPlanarOffsetQuad(f64),
    #[error("contact sphere assignment is inconsistent at black vertex ({0}, {1})")]
    InconsistentAssignment(i32, i32),
    #[error("shifted spheres lost contact (residual {0:e})")]
    ContactLost(f64),
    #[error("consecutive generators do not intersect (residual {0:e})")]
    ParallelGenerators(f64),
    #[error("X-variable is not real (Im/|X| = {0:e})")]
    NonRealX(f64),
    #[error("diagonal has zero Lorentz length")]
    DegenerateDiagonal,
    #[error("incircles have a single common tangent")]
    NoSecondTangent,
    #[error("incircular net validation failed (residual {0:e})")]
    ValidationFailed(f64),
    #[error("lines are parallel")]
    ParallelLines,
    #[error("a line through two coinciding points")]
    CoincidentPoints,
    #[error("missing data for {0}")]
    Missing(String),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

impl GeometryError {
    /// Variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        use GeometryError::*;
        match self {
            NonFinite => "NonFinite",
            NonTimelikeAxis(_) => "NonTimelikeAxis",
            NotInContact(_) => "NotInContact",
            DegenerateContact => "DegenerateContact",
            RadiusTooLarge { .. } => "RadiusTooLarge",
            VerticalLine => "VerticalLine",
            DegenerateFacePlane => "DegenerateFacePlane",
            InvalidEdge(_) => "InvalidEdge",
            BoundaryVertex(..) => "BoundaryVertex",
            NotClosed { .. } => "NotClosed",
            OutsideDisk(_) => "OutsideDisk",
            DoesNotFitInDisk(_) => "DoesNotFitInDisk",
            PatternInvalid(_) => "PatternInvalid",
            OrientationInconsistent(..) => "OrientationInconsistent",
            ZeroLengthEdge => "ZeroLengthEdge",
            ZeroRadius => "ZeroRadius",
            CoincidentCenters => "CoincidentCenters",
            NonPlanarOffsetQuad(_) => "NonPlanarOffsetQuad",
            InconsistentAssignment(..) => "InconsistentAssignment",
            ContactLost(_) => "ContactLost",
            ParallelGenerators(_) => "ParallelGenerators",
            NonRealX(_) => "NonRealX",
            DegenerateDiagonal => "DegenerateDiagonal",
            NoSecondTangent => "NoSecondTangent",
            ValidationFailed(_) => "ValidationFailed",
            ParallelLines => "ParallelLines",
            CoincidentPoints => "CoincidentPoints",
            Missing(_) => "Missing",
        }
    }

    /// The residual carried by the variant, if any.
    pub fn residual(&self) -> Option<f64> {
        use GeometryError::*;
        match self {
            NonTimelikeAxis(r) | NotInContact(r) | OutsideDisk(r) | DoesNotFitInDisk(r) | NonPlanarOffsetQuad(r)
            | ContactLost(r) | ParallelGenerators(r) | NonRealX(r) | ValidationFailed(r) => Some(*r),
            NotClosed { residual } => Some(*residual),
            RadiusTooLarge { rho, .. } => Some(*rho),
            _ => None,
        }
    }
}
