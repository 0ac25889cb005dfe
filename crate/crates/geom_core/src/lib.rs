//! Validated geometric primitives for cone-field and covering arguments:
//! outward-rounded f64 intervals, 3-D boxes with their dynamically-relevant
//! boundary pieces, deterministic adaptive subdivision, exact cone membership,
//! interval certification of cone images under linear maps, and an
//! arbitrary-precision dyadic scalar with a rigorous interval logarithm.

mod boxes;
mod cone;
mod dyadic;
mod error;
mod interval;

pub use boxes::{
    boundary_decomposition, subdivide, subdivide_verdict, BoundaryClass, BoundaryPiece,
    CoverReport, IBox3, LeafVerdict,
};
pub use cone::{
    cone_contains, cone_contains_interior, cone_mapped_into_interior, rational_in_interval, Cone,
    ConeCheckConfig, ConeKind,
};
pub use dyadic::{DyInterval, Dyadic, Round};
pub use error::{GeomError, Result};
pub use interval::Interval;
