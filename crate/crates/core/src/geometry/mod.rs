//! Incidence structures: PG(2,q), AG(2,q), conics, and F₂ spreads.

pub mod plane;
pub mod projective;
pub mod quadric;
pub mod spread;

pub use plane::{Plane, PlaneKind};
pub use projective::{ag_from_pg, build_ag, build_pg, point_coords, point_index, Coords};
pub use quadric::{conic_points, is_nonsingular, is_translation_oval, pencil, QuadraticForm};
pub use spread::{line_spread, plane_from_spread, SpreadF2};
