//! Convex geometry of numerical ranges: support functions, polytope
//! sandwiches, hulls and volume brackets.

mod body;
mod direction;
mod hull;
mod ray;
mod reduce;
mod support;
mod volume;

pub use body::{assemble, build_body, BodyApprox, Halfspace, MEMBERSHIP_TOL};
pub use direction::{direction_grid, Direction};
pub use hull::{affine_rank, hull_2d, hull_3d, polygon_area, Hull3};
pub use ray::ray_radius_2d;
pub use reduce::{reduce_observables, DroppedObservable, ReductionReport, GRAM_TOL};
pub use support::{support_all, Achiever, AllStatesOracle, SupportOracle, SupportSample};
pub use volume::{ratio_bracket, volume_bracket, wilson_upper, RatioBracket, VolumeBracket, MIN_MC_SAMPLES};
