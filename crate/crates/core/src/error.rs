use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("distance matrix is {rows}x{cols} but the space has {points} points")]
    Shape {
        points: usize,
        rows: usize,
        cols: usize,
    },
    #[error("unknown point identifier `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point identifier `{0}`")]
    DuplicatePoint(String),
    #[error("point index {index} out of range for a space with {len} points")]
    PointOutOfRange { index: usize, len: usize },
    #[error("metric space is empty")]
    EmptySpace,
    #[error("distance cap must be positive, got {0}")]
    NonPositiveCap(f64),
    #[error("diameter {0} exceeds 2; truncate the metric before adjoining a base point")]
    DiameterTooLarge(f64),
    #[error("operands live over different metric spaces")]
    SpaceMismatch,
    #[error("pair needs two distinct points, got {0} twice")]
    SamePoint(usize),
    #[error("coefficient at point {0} has a nonzero imaginary part")]
    NonRealCoefficient(usize),
    #[error("polygon order must be even and at least 8, got {0}")]
    PolygonOrder(usize),
    #[error("map is not total: no image for domain point {0}")]
    PartialMap(usize),
    #[error("base-point condition violated: f(0_M) != 0_N and w(0_M) != 0")]
    BasePointCondition,
    #[error("linear program is infeasible or unbounded")]
    LpNotOptimal,
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("{0}")]
    Asymptotics(String),
}

pub type Result<T> = std::result::Result<T, Error>;
