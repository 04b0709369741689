//! Lipschitz free spaces over finite pointed metric spaces.
//!
//! Norms of free elements (exact for real coefficients, bracketed for
//! complex ones), weighted Lipschitz operators `wf̂` and their adjoints
//! `wC_f`, boundedness, injectivity and surjectivity criteria, the
//! `Lip`/`Lip₀` adapter and a numerical toolkit for sequence families
//! arising in compactness questions.

pub mod asymptotics;
pub mod builtins;
pub mod error;
pub mod flow;
pub mod free;
pub mod linalg;
pub mod lip_adapter;
pub mod lp;
pub mod metric;
pub mod operator;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
pub use lip_adapter::{LipProblem, LipProblemJson};
pub use free::{FreeElement, Molecule};
pub use metric::{PointedMetricSpace, SpaceJson, ValidationReport, Violation};
pub use operator::{OperatorJson, WeightedMap};
pub use oracle::{BracketMethod, NormBracket, DEFAULT_POLYGON_ORDER};
pub use scalar::Scalar;

pub type Space = PointedMetricSpace<f64>;
pub type Element = FreeElement<f64>;
pub type Operator = WeightedMap<f64>;
pub type Space32 = PointedMetricSpace<f32>;
pub type Element32 = FreeElement<f32>;
pub type Operator32 = WeightedMap<f32>;
