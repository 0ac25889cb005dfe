//! The quadratic center unstable map family: two algebraic forms, their
//! Jacobians, the two coordinate changes relating them to the renormalized
//! return maps, and a validated enclosure of the distinguished fixed point.

mod conjugacy;
mod error;
mod fixed_point;
mod map;
mod params;

pub use conjugacy::{Conjugacy, ThetaCoeffs};
pub use error::{FamilyError, Result};
pub use fixed_point::{fixed_point_pstar, FixedPointEnclosure};
pub use map::{apply_matrix, eval_jacobian, eval_jacobian_box, eval_map, eval_map_box};
pub use params::{BlenderBoxSpec, Form, HenonParams};
