//! Physical billiards in 2D tables: a hard ball of positive radius
//! replacing the point particle of a mathematical billiard.
//!
//! The crate provides:
//!
//! * [`geometry`] — piecewise tables of segments and arcs, corner
//!   classification (regular / visible / invisible singular points),
//!   and the reduced table the ball's center moves in: boundaries
//!   offset inward by the radius, with dispersing arcs inserted at
//!   visible corners.
//! * [`collision`] — the smooth (friction-free) and rough (no-slip)
//!   collision maps, their conservation laws, and their matrix form
//!   with the +-1 spectrum.
//! * [`dynamics`] — an event-driven simulator of the center's flight
//!   with exact ray/segment and ray/arc intersection and per-event
//!   conservation auditing.

pub mod collision;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod vec;

pub use collision::{
    audit_conservation, collision_matrix, decompose_velocity, eigenstructure, impulse_residual,
    kinetic_energy, reflect, reflect_rough, reflect_smooth, BallSpec, BallState, CollisionContext,
    CollisionMatrix, ConservationReport, Frame, Impulse, Reflection, Surface, VelocitySplit,
};
pub use dynamics::{
    fly, next_event, simulate, simulate_reduced, step, time_reverse, CollisionEvent, EventSource,
    StopCondition, Termination, Trajectory, TrajectoryEvent,
};
pub use error::{Error, Result};
pub use geometry::{
    classify_corners, is_visible_for_radius, polygon, reduce_table, Arc, BoundaryComponent,
    CornerClass, CornerInfo, ReducedComponent, ReducedSource, ReducedTable, Segment, Table,
};
pub use vec::{Vec2, Vec3};
