//! Collision maps for a hard ball striking a boundary point.
//!
//! Both maps conserve kinetic energy and reverse the normal velocity
//! component. The smooth (friction-free) map leaves tangential velocity
//! and spin untouched; the rough (no-slip) map exchanges tangential
//! linear momentum with angular momentum through the unique nontrivial
//! energy-conserving tangential impulse.
//!
//! The algebra runs in 3-space. Planar simulations embed in the xy-plane
//! with axial angular velocity; the maps preserve that embedding.

mod matrix;

pub use matrix::{collision_matrix, eigenstructure, CollisionMatrix, Frame};

use crate::error::{Error, Result};
use crate::vec::Vec3;

/// Relative normal-velocity threshold below which a contact counts as
/// grazing.
pub const GRAZING_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Smooth,
    Rough,
}

/// Ball parameters. Mass is normalized to 1; the collision algebra is
/// written in that normalization and other masses are rejected rather
/// than rescaled.
#[derive(Clone, Copy, Debug)]
pub struct BallSpec {
    pub radius: f64,
    pub inertia: f64,
    pub surface: Surface,
}

impl BallSpec {
    pub fn new(radius: f64, inertia: f64, surface: Surface) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        if !inertia.is_finite() || inertia <= 0.0 {
            return Err(Error::InvalidArgument(
                "moment of inertia must be positive".into(),
            ));
        }
        Ok(BallSpec {
            radius,
            inertia,
            surface,
        })
    }

    /// Uniform disk: I = r^2 / 2.
    pub fn disk(radius: f64, surface: Surface) -> Result<Self> {
        Self::new(radius, radius * radius / 2.0, surface)
    }

    /// Uniform sphere: I = 2 r^2 / 5.
    pub fn sphere(radius: f64, surface: Surface) -> Result<Self> {
        Self::new(radius, 2.0 * radius * radius / 5.0, surface)
    }

    /// Unit mass, by construction.
    pub fn mass(&self) -> f64 {
        1.0
    }

    /// Explicit-mass constructor; any mass other than 1 is rejected.
    pub fn with_mass(radius: f64, inertia: f64, mass: f64, surface: Surface) -> Result<Self> {
        if mass != 1.0 {
            return Err(Error::InvalidArgument(
                "mass is normalized to 1; rescale velocities instead".into(),
            ));
        }
        Self::new(radius, inertia, surface)
    }
}

/// Center position, linear velocity and angular velocity of the ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallState {
    pub center: Vec3,
    pub velocity: Vec3,
    pub angular: Vec3,
}

impl BallState {
    pub fn new(center: Vec3, velocity: Vec3, angular: Vec3) -> Result<Self> {
        if !center.is_finite() || !velocity.is_finite() || !angular.is_finite() {
            return Err(Error::InvalidArgument("non-finite ball state".into()));
        }
        Ok(BallState {
            center,
            velocity,
            angular,
        })
    }

    /// Planar embedding: center and velocity in the xy-plane, angular
    /// velocity along z.
    pub fn planar(center_x: f64, center_y: f64, vx: f64, vy: f64, omega: f64) -> Result<Self> {
        Self::new(
            Vec3::new(center_x, center_y, 0.0),
            Vec3::new(vx, vy, 0.0),
            Vec3::new(0.0, 0.0, omega),
        )
    }
}

/// Contact geometry: the touched boundary point A and the unit normal
/// from A toward the ball center O, so that AO = r * normal.
#[derive(Clone, Copy, Debug)]
pub struct CollisionContext {
    pub contact: Vec3,
    pub normal: Vec3,
    pub radius: f64,
}

impl CollisionContext {
    pub fn new(contact: Vec3, normal: Vec3, radius: f64) -> Result<Self> {
        if !contact.is_finite() || !normal.is_finite() {
            return Err(Error::InvalidArgument("non-finite contact data".into()));
        }
        if (normal.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("contact normal must be unit".into()));
        }
        if radius <= 0.0 || radius.is_nan() {
            return Err(Error::InvalidArgument(
                "contact radius must be positive".into(),
            ));
        }
        Ok(CollisionContext {
            contact,
            normal,
            radius,
        })
    }

    /// Vector from the contact point to the ball center.
    pub fn ao(&self) -> Vec3 {
        self.normal * self.radius
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VelocitySplit {
    pub normal: Vec3,
    pub tangential: Vec3,
}

/// Momentum transferred during the collision, split along and across
/// the contact normal.
#[derive(Clone, Copy, Debug)]
pub struct Impulse {
    pub normal: Vec3,
    pub tangential: Vec3,
}

impl Impulse {
    pub fn total(&self) -> Vec3 {
        self.normal + self.tangential
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConservedQuantities {
    pub kinetic_energy: f64,
    pub linear_momentum: Vec3,
    pub angular_momentum: Vec3,
}

#[derive(Clone, Copy, Debug)]
pub struct Reflection {
    pub state: BallState,
    pub impulse: Impulse,
    /// Contact with vanishing normal velocity; the reflection is still
    /// computed (it is then a near-no-op).
    pub grazing: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ConservationReport {
    pub energy_delta: f64,
    pub momentum_residual: Vec3,
    pub angular_residual: Vec3,
}

/// Split a velocity into its component along the contact normal and the
/// tangential remainder.
pub fn decompose_velocity(v: Vec3, ctx: &CollisionContext) -> VelocitySplit {
    let normal = ctx.normal * v.dot(ctx.normal);
    VelocitySplit {
        normal,
        tangential: v - normal,
    }
}

/// K = (|V|^2 + I |omega|^2) / 2, with unit mass.
pub fn kinetic_energy(state: &BallState, spec: &BallSpec) -> f64 {
    0.5 * (state.velocity.norm_sq() + spec.inertia * state.angular.norm_sq())
}

pub fn conserved_quantities(state: &BallState, spec: &BallSpec) -> ConservedQuantities {
    ConservedQuantities {
        kinetic_energy: kinetic_energy(state, spec),
        linear_momentum: state.velocity,
        angular_momentum: state.angular * spec.inertia,
    }
}

pub fn is_grazing(v: Vec3, ctx: &CollisionContext) -> bool {
    v.dot(ctx.normal).abs() < GRAZING_TOL * v.norm()
}

/// Friction-free reflection: the normal velocity reverses, tangential
/// velocity and spin are unchanged. Equivalent to specular reflection
/// of the center off a sphere of the ball's radius around the contact
/// point, which is why corner hits reduce to arc reflections.
pub fn reflect_smooth(state: &BallState, ctx: &CollisionContext, spec: &BallSpec) -> Reflection {
    debug_assert_eq!(spec.surface, Surface::Smooth);
    let split = decompose_velocity(state.velocity, ctx);
    Reflection {
        state: BallState {
            center: state.center,
            velocity: state.velocity - split.normal * 2.0,
            angular: state.angular,
        },
        impulse: Impulse {
            normal: split.normal * -2.0,
            tangential: Vec3::ZERO,
        },
        grazing: is_grazing(state.velocity, ctx),
    }
}

/// No-slip reflection: the normal velocity reverses and the unique
/// nontrivial energy-conserving tangential impulse
///
/// ```text
/// dP_T = -(2I / (r^2 + I)) (V_T + AO x omega)
/// ```
///
/// exchanges tangential momentum with spin: V_T' = V_T + dP_T and
/// omega' = omega + (dP_T x AO) / I.
pub fn reflect_rough(state: &BallState, ctx: &CollisionContext, spec: &BallSpec) -> Reflection {
    debug_assert_eq!(spec.surface, Surface::Rough);
    let ao = ctx.ao();
    let split = decompose_velocity(state.velocity, ctx);
    let i = spec.inertia;
    let r2 = spec.radius * spec.radius;
    let dp_t = (split.tangential + ao.cross(state.angular)) * (-2.0 * i / (r2 + i));
    Reflection {
        state: BallState {
            center: state.center,
            velocity: -split.normal + split.tangential + dp_t,
            angular: state.angular + dp_t.cross(ao) / i,
        },
        impulse: Impulse {
            normal: split.normal * -2.0,
            tangential: dp_t,
        },
        grazing: is_grazing(state.velocity, ctx),
    }
}

/// Dispatch on the surface type.
pub fn reflect(state: &BallState, ctx: &CollisionContext, spec: &BallSpec) -> Reflection {
    match spec.surface {
        Surface::Smooth => reflect_smooth(state, ctx, spec),
        Surface::Rough => reflect_rough(state, ctx, spec),
    }
}

/// Left-hand side of the tangential-impulse admissibility equation
///
/// ```text
/// < dP_T, ((r^2 + I)/I) dP_T + 2 V_T + 2 AO x omega >
/// ```
///
/// Zero exactly for the energy-conserving impulses: the trivial root
/// dP_T = 0 (smooth) and the no-slip root of [`reflect_rough`].
pub fn impulse_residual(
    dp_t: Vec3,
    state: &BallState,
    ctx: &CollisionContext,
    spec: &BallSpec,
) -> f64 {
    let split = decompose_velocity(state.velocity, ctx);
    let ao = ctx.ao();
    let i = spec.inertia;
    let r2 = spec.radius * spec.radius;
    dp_t.dot(dp_t * ((r2 + i) / i) + split.tangential * 2.0 + ao.cross(state.angular) * 2.0)
}

/// Residuals of the three conservation laws across a collision:
/// energy difference, linear-momentum balance against the impulse, and
/// angular-momentum balance against the torque of the tangential
/// impulse about the center.
pub fn audit_conservation(
    before: &BallState,
    after: &BallState,
    impulse: &Impulse,
    ctx: &CollisionContext,
    spec: &BallSpec,
) -> ConservationReport {
    let ao = ctx.ao();
    ConservationReport {
        energy_delta: kinetic_energy(after, spec) - kinetic_energy(before, spec),
        momentum_residual: after.velocity - before.velocity - impulse.total(),
        angular_residual: (after.angular - before.angular) * spec.inertia
            - impulse.tangential.cross(ao),
    }
}
