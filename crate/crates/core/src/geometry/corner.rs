//! Junction classification: regular points, visible singular points
//! (internal corners a small enough ball can touch) and invisible ones.

use crate::error::{Error, Result};
use crate::geometry::table::{BoundaryComponent, Table, SNAP_TOL};
use crate::vec::Vec2;
use std::f64::consts::PI;

/// Junctions whose interior angle is within this of pi are regular.
pub const ANGLE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerClass {
    Regular,
    /// Interior angle > pi: a sufficiently small ball can hit the corner.
    VisibleSingular,
    /// Interior angle < pi: no ball of positive radius can touch it.
    InvisibleSingular,
}

#[derive(Clone, Copy, Debug)]
pub struct CornerInfo {
    pub id: usize,
    pub loop_id: usize,
    /// Component ending at this junction.
    pub incoming: usize,
    /// Component starting at this junction.
    pub outgoing: usize,
    pub position: Vec2,
    /// Angle of the interior wedge at the junction, in radians.
    pub interior_angle: f64,
    pub class: CornerClass,
}

/// One `CornerInfo` per junction between consecutive components, in
/// loop-major order. The classification uses the 2D interior-angle test,
/// which coincides with the convex-hull visibility criterion in the
/// plane: the hull of a neighborhood covers the corner exactly when the
/// interior wedge exceeds a half-plane.
pub fn classify_corners(table: &Table) -> Result<Vec<CornerInfo>> {
    let mut out = Vec::new();
    for (loop_id, &(start, end)) in table.loops().iter().enumerate() {
        let n = end - start;
        for i in 0..n {
            let incoming = start + i;
            let outgoing = start + (i + 1) % n;
            let a = &table.components()[incoming];
            let b = &table.components()[outgoing];
            check_nondegenerate(a)?;
            let p = a.end();
            let t_in = a.tangent_end();
            let t_out = b.tangent_start();
            // Turn angle at the junction, positive for a left turn.
            // Interior on the left makes the interior angle pi - turn.
            let turn = t_in.cross(t_out).atan2(t_in.dot(t_out));
            let interior_angle = PI - turn;
            let class = if (interior_angle - PI).abs() <= ANGLE_TOL {
                CornerClass::Regular
            } else if interior_angle > PI {
                CornerClass::VisibleSingular
            } else {
                CornerClass::InvisibleSingular
            };
            out.push(CornerInfo {
                id: out.len(),
                loop_id,
                incoming,
                outgoing,
                position: p,
                interior_angle,
                class,
            });
        }
    }
    Ok(out)
}

fn check_nondegenerate(c: &BoundaryComponent) -> Result<()> {
    let len = match c {
        BoundaryComponent::Segment(s) => s.len(),
        BoundaryComponent::Arc(a) => a.radius * a.sweep.abs(),
    };
    if len <= SNAP_TOL {
        return Err(Error::InvalidTable(
            "degenerate (zero-length) component at a junction".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::table::{polygon, Segment, Table};

    #[test]
    fn unit_square_all_invisible() {
        let t = polygon(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap();
        let corners = classify_corners(&t).unwrap();
        assert_eq!(corners.len(), 4);
        for c in &corners {
            assert_eq!(c.class, CornerClass::InvisibleSingular);
            assert!((c.interior_angle - PI / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn collinear_junction_is_regular() {
        let t = Table::new(vec![vec![
            BoundaryComponent::Segment(Segment {
                from: Vec2::new(0.0, 0.0),
                to: Vec2::new(1.0, 0.0),
            }),
            BoundaryComponent::Segment(Segment {
                from: Vec2::new(1.0, 0.0),
                to: Vec2::new(2.0, 0.0),
            }),
            BoundaryComponent::Segment(Segment {
                from: Vec2::new(2.0, 0.0),
                to: Vec2::new(1.0, 1.0),
            }),
            BoundaryComponent::Segment(Segment {
                from: Vec2::new(1.0, 1.0),
                to: Vec2::new(0.0, 0.0),
            }),
        ]])
        .unwrap();
        let corners = classify_corners(&t).unwrap();
        assert_eq!(corners[0].class, CornerClass::Regular);
    }

    #[test]
    fn l_shape_reflex_corner_visible() {
        // L-shaped table with the reflex corner at the origin.
        let t = polygon(&[
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ])
        .unwrap();
        let corners = classify_corners(&t).unwrap();
        let visible: Vec<_> = corners
            .iter()
            .filter(|c| c.class == CornerClass::VisibleSingular)
            .collect();
        assert_eq!(visible.len(), 1);
        assert_eq!(visible[0].position, Vec2::new(0.0, 0.0));
        assert!((visible[0].interior_angle - 1.5 * PI).abs() < 1e-12);
        assert_eq!(
            corners
                .iter()
                .filter(|c| c.class == CornerClass::InvisibleSingular)
                .count(),
            5
        );
    }
}
