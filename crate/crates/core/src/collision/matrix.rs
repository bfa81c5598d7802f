//! Matrix form of the collision map and its spectrum.
//!
//! The map acts on the 6-dimensional state (V_N, V_T, omega) expressed
//! in a frame adapted to the contact: first coordinate along the normal,
//! two tangential velocity coordinates, and the angular velocity in
//! world axes scaled by sqrt(I). The scaling makes the coordinate norm
//! the kinetic-energy norm, in which both maps are orthogonal
//! involutions; all eigenvalues are +1 or -1.

use crate::collision::{
    reflect_rough, reflect_smooth, BallSpec, BallState, CollisionContext, Surface,
};
use crate::error::{Error, Result};
use crate::vec::Vec3;
use nalgebra::Matrix6;

/// Orthonormal contact frame (n, t1, t2), right-handed.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    pub normal: Vec3,
    pub tangent1: Vec3,
    pub tangent2: Vec3,
}

impl Frame {
    pub fn adapted_to(normal: Vec3) -> Frame {
        // seed axis least aligned with the normal
        let ax = normal.x.abs();
        let ay = normal.y.abs();
        let az = normal.z.abs();
        let seed = if ax <= ay && ax <= az {
            Vec3::new(1.0, 0.0, 0.0)
        } else if ay <= az {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        let tangent1 = normal.cross(seed).normalize();
        let tangent2 = normal.cross(tangent1);
        Frame {
            normal,
            tangent1,
            tangent2,
        }
    }
}

/// The collision map as a 6x6 matrix in the adapted frame, row-major.
/// Spin coordinates carry the sqrt(I) energy weight.
#[derive(Clone, Debug)]
pub struct CollisionMatrix {
    pub entries: [[f64; 6]; 6],
    pub frame: Frame,
    pub inertia: f64,
}

impl CollisionMatrix {
    pub fn apply(&self, state: [f64; 6]) -> [f64; 6] {
        let mut out = [0.0; 6];
        for (i, row) in self.entries.iter().enumerate() {
            out[i] = row.iter().zip(state.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Coordinates of (V, omega) in the adapted frame.
    pub fn coords(&self, velocity: Vec3, angular: Vec3) -> [f64; 6] {
        let f = &self.frame;
        let s = self.inertia.sqrt();
        [
            velocity.dot(f.normal),
            velocity.dot(f.tangent1),
            velocity.dot(f.tangent2),
            s * angular.x,
            s * angular.y,
            s * angular.z,
        ]
    }

    pub fn from_coords(&self, c: [f64; 6]) -> (Vec3, Vec3) {
        let f = &self.frame;
        let s = self.inertia.sqrt();
        (
            f.normal * c[0] + f.tangent1 * c[1] + f.tangent2 * c[2],
            Vec3::new(c[3] / s, c[4] / s, c[5] / s),
        )
    }
}

/// Build the matrix of the collision map for the given contact and ball.
/// Columns are the images of the frame basis states; the approach
/// precondition is waived, as the map is defined algebraically.
pub fn collision_matrix(ctx: &CollisionContext, spec: &BallSpec) -> CollisionMatrix {
    let frame = Frame::adapted_to(ctx.normal);
    let s = spec.inertia.sqrt();
    let mut entries = [[0.0; 6]; 6];
    for k in 0..6 {
        let mut c = [0.0; 6];
        c[k] = 1.0;
        let v = frame.normal * c[0] + frame.tangent1 * c[1] + frame.tangent2 * c[2];
        let w = Vec3::new(c[3] / s, c[4] / s, c[5] / s);
        let state = BallState {
            center: ctx.contact + ctx.ao(),
            velocity: v,
            angular: w,
        };
        let out = match spec.surface {
            Surface::Smooth => reflect_smooth(&state, ctx, spec),
            Surface::Rough => reflect_rough(&state, ctx, spec),
        };
        let col = [
            out.state.velocity.dot(frame.normal),
            out.state.velocity.dot(frame.tangent1),
            out.state.velocity.dot(frame.tangent2),
            s * out.state.angular.x,
            s * out.state.angular.y,
            s * out.state.angular.z,
        ];
        for i in 0..6 {
            entries[i][k] = col[i];
        }
    }
    CollisionMatrix {
        entries,
        frame,
        inertia: spec.inertia,
    }
}

/// Numerically computed spectrum, clustered at +1 and -1. Anything else
/// signals a bug in the map construction, not a user error.
pub fn eigenstructure(m: &CollisionMatrix) -> Result<Vec<(f64, usize)>> {
    const TOL: f64 = 1e-9;
    let mat = Matrix6::from_fn(|i, j| m.entries[i][j]);
    let eigen = mat.complex_eigenvalues();
    let mut plus = 0usize;
    let mut minus = 0usize;
    for ev in eigen.iter() {
        if ev.im.abs() > TOL {
            return Err(Error::ContractViolation(format!(
                "complex eigenvalue {ev} in a collision map"
            )));
        }
        if (ev.re - 1.0).abs() <= TOL {
            plus += 1;
        } else if (ev.re + 1.0).abs() <= TOL {
            minus += 1;
        } else {
            return Err(Error::ContractViolation(format!(
                "eigenvalue {} of a collision map is not +-1",
                ev.re
            )));
        }
    }
    let mut out = Vec::new();
    if minus > 0 {
        out.push((-1.0, minus));
    }
    if plus > 0 {
        out.push((1.0, plus));
    }
    Ok(out)
}
