//! Reduced-table construction: the region traced by the ball's center.
//!
//! Every boundary component moves inward by the ball radius r. Visible
//! corners sprout an arc of radius r centered at the corner (the set of
//! center positions touching only that corner); at invisible corners the
//! offset components are trimmed at their mutual intersection. The point
//! billiard in the reduced table reproduces the physical billiard.

use crate::error::{Error, Result};
use crate::geometry::corner::{classify_corners, CornerClass, CornerInfo};
use crate::geometry::table::{Arc, BoundaryComponent, Segment, Table, SNAP_TOL};
use crate::vec::Vec2;
use std::f64::consts::TAU;

/// Absolute slack for the clearance validation of sampled reduced points.
const CLEARANCE_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedSource {
    /// Inward offset of an original boundary component.
    Offset { component: usize },
    /// Arc of radius r inserted at a visible corner.
    Corner { corner: usize },
}

#[derive(Clone, Debug)]
pub struct ReducedComponent {
    pub geom: BoundaryComponent,
    pub source: ReducedSource,
}

#[derive(Clone, Debug)]
pub struct ReducedTable {
    radius: f64,
    source: Table,
    corners: Vec<CornerInfo>,
    components: Vec<ReducedComponent>,
    loops: Vec<(usize, usize)>,
}

pub fn reduce_table(table: &Table, r: f64) -> Result<ReducedTable> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidArgument(
            "ball radius must be positive".into(),
        ));
    }
    let corners = classify_corners(table)?;
    let mut components = Vec::new();
    let mut loops = Vec::new();

    for (loop_id, &(start, end)) in table.loops().iter().enumerate() {
        let n = end - start;
        let mut offsets: Vec<BoundaryComponent> = Vec::with_capacity(n);
        for c in &table.components()[start..end] {
            offsets.push(
                offset_component(c, r).map_err(|detail| Error::RadiusTooLarge {
                    radius: r,
                    loop_id,
                    detail,
                })?,
            );
        }
        // Junction i sits between loop-local components i and i+1.
        let loop_corners: Vec<&CornerInfo> =
            corners.iter().filter(|c| c.loop_id == loop_id).collect();
        let mut corner_arcs: Vec<Option<Arc>> = vec![None; n];
        for i in 0..n {
            let j = (i + 1) % n;
            let info = loop_corners[i];
            match info.class {
                CornerClass::Regular => {
                    let p = (offsets[i].end() + offsets[j].start()) * 0.5;
                    set_end(&mut offsets[i], p);
                    if j != i {
                        set_start(&mut offsets[j], p);
                    }
                }
                CornerClass::InvisibleSingular => {
                    let p = intersect_offsets(&offsets[i], &offsets[j], info.position).ok_or_else(
                        || Error::RadiusTooLarge {
                            radius: r,
                            loop_id,
                            detail: format!("offset components do not meet at corner {}", info.id),
                        },
                    )?;
                    set_end(&mut offsets[i], p);
                    set_start(&mut offsets[j], p);
                }
                CornerClass::VisibleSingular => {
                    corner_arcs[i] =
                        Some(corner_arc(info, offsets[i].end(), offsets[j].start(), r));
                }
            }
        }

        let loop_start = components.len();
        for i in 0..n {
            components.push(ReducedComponent {
                geom: offsets[i],
                source: ReducedSource::Offset {
                    component: start + i,
                },
            });
            if let Some(arc) = corner_arcs[i] {
                components.push(ReducedComponent {
                    geom: BoundaryComponent::Arc(arc),
                    source: ReducedSource::Corner {
                        corner: loop_corners[i].id,
                    },
                });
            }
        }
        loops.push((loop_start, components.len()));
    }

    let rt = ReducedTable {
        radius: r,
        source: table.clone(),
        corners,
        components,
        loops,
    };
    rt.validate()?;
    Ok(rt)
}

impl Table {
    /// See [`reduce_table`].
    pub fn reduce(&self, r: f64) -> Result<ReducedTable> {
        reduce_table(self, r)
    }
}

impl ReducedTable {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn source_table(&self) -> &Table {
        &self.source
    }

    pub fn corners(&self) -> &[CornerInfo] {
        &self.corners
    }

    pub fn components(&self) -> &[ReducedComponent] {
        &self.components
    }

    pub fn loops(&self) -> &[(usize, usize)] {
        &self.loops
    }

    /// True if a ball centered at `p` sits strictly inside the table,
    /// i.e. `p` is interior to the reduced region.
    pub fn contains_center(&self, p: Vec2) -> bool {
        self.source.contains(p) && self.source.distance_to_boundary(p).0 > self.radius
    }

    /// The boundary point of the original table that a ball centered at
    /// `p` on reduced component `idx` touches.
    pub fn source_point(&self, idx: usize, p: Vec2) -> Vec2 {
        match (&self.components[idx].source, &self.components[idx].geom) {
            (ReducedSource::Corner { .. }, BoundaryComponent::Arc(a)) => a.center,
            (ReducedSource::Offset { component }, _) => {
                match &self.source.components()[*component] {
                    BoundaryComponent::Segment(s) => p - s.inward_normal() * self.radius,
                    BoundaryComponent::Arc(a) => a.center + (p - a.center).normalize() * a.radius,
                }
            }
            (ReducedSource::Corner { .. }, BoundaryComponent::Segment(_)) => {
                unreachable!("corner components are always arcs")
            }
        }
    }

    fn validate(&self) -> Result<()> {
        for (idx, rc) in self.components.iter().enumerate() {
            // Trimming must not have inverted a component.
            if let ReducedSource::Offset { component } = rc.source {
                let src = &self.source.components()[component];
                match (&rc.geom, src) {
                    (BoundaryComponent::Segment(o), BoundaryComponent::Segment(s)) => {
                        if o.len() <= SNAP_TOL || o.dir().dot(s.dir()) <= 0.0 {
                            return Err(self.too_large(component, "offset segment collapsed"));
                        }
                    }
                    (BoundaryComponent::Arc(o), BoundaryComponent::Arc(s)) => {
                        if o.sweep * s.sweep <= 0.0 {
                            return Err(self.too_large(component, "offset arc collapsed"));
                        }
                    }
                    _ => unreachable!("offsets preserve the component kind"),
                }
            }
            // Sampled clearance: every reduced-boundary point keeps the
            // ball inside the table. Catches non-adjacent intrusions
            // (pinched corridors) that pairwise trimming cannot see.
            for k in 0..SAMPLES_PER_COMPONENT {
                let u = (k as f64 + 0.5) / SAMPLES_PER_COMPONENT as f64;
                let p = rc.geom.point_at(u);
                let (d, _) = self.source.distance_to_boundary(p);
                if d < self.radius - CLEARANCE_TOL {
                    return Err(Error::RadiusTooLarge {
                        radius: self.radius,
                        loop_id: loop_of(&self.loops, idx),
                        detail: format!(
                            "reduced boundary intrudes within the ball radius (clearance {d:e})"
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    fn too_large(&self, component: usize, detail: &str) -> Error {
        Error::RadiusTooLarge {
            radius: self.radius,
            loop_id: self.source.loop_of(component),
            detail: format!("{detail} (component {component})"),
        }
    }
}

const SAMPLES_PER_COMPONENT: usize = 48;

fn loop_of(loops: &[(usize, usize)], idx: usize) -> usize {
    loops
        .iter()
        .position(|&(s, e)| idx >= s && idx < e)
        .unwrap_or(0)
}

fn offset_component(
    c: &BoundaryComponent,
    r: f64,
) -> std::result::Result<BoundaryComponent, String> {
    match c {
        BoundaryComponent::Segment(s) => {
            let n = s.inward_normal();
            Ok(BoundaryComponent::Segment(Segment {
                from: s.from + n * r,
                to: s.to + n * r,
            }))
        }
        BoundaryComponent::Arc(a) => {
            // Counterclockwise arcs curve away from the interior (the
            // inward normal points at the center): radius shrinks.
            let radius = if a.sweep >= 0.0 {
                a.radius - r
            } else {
                a.radius + r
            };
            if radius <= SNAP_TOL {
                return Err(format!(
                    "arc of radius {} vanishes under inward offset {}",
                    a.radius, r
                ));
            }
            Ok(BoundaryComponent::Arc(Arc { radius, ..*a }))
        }
    }
}

/// The arc of center positions at distance r touching only the corner,
/// spanning between the inward offset endpoints of the two adjacent
/// components. Sweep magnitude equals interior angle minus pi.
fn corner_arc(info: &CornerInfo, in_end: Vec2, out_start: Vec2, r: f64) -> Arc {
    let a0 = (in_end - info.position).angle();
    let a1 = (out_start - info.position).angle();
    let expected = info.interior_angle - std::f64::consts::PI;
    let ccw = (a1 - a0).rem_euclid(TAU);
    let cw = ccw - TAU;
    let sweep = if (ccw.abs() - expected).abs() <= (cw.abs() - expected).abs() {
        ccw
    } else {
        cw
    };
    Arc {
        center: info.position,
        radius: r,
        start_angle: a0,
        sweep,
    }
}

fn set_end(c: &mut BoundaryComponent, p: Vec2) {
    match c {
        BoundaryComponent::Segment(s) => s.to = p,
        BoundaryComponent::Arc(a) => {
            let old_end = a.start_angle + a.sweep;
            let new_end = old_end + wrap_pi((p - a.center).angle() - old_end);
            a.sweep = new_end - a.start_angle;
        }
    }
}

fn set_start(c: &mut BoundaryComponent, p: Vec2) {
    match c {
        BoundaryComponent::Segment(s) => s.from = p,
        BoundaryComponent::Arc(a) => {
            let old_end = a.start_angle + a.sweep;
            let new_start = a.start_angle + wrap_pi((p - a.center).angle() - a.start_angle);
            a.start_angle = new_start;
            a.sweep = old_end - new_start;
        }
    }
}

fn wrap_pi(a: f64) -> f64 {
    (a + std::f64::consts::PI).rem_euclid(TAU) - std::f64::consts::PI
}

/// Intersection of two offset components near an invisible corner; the
/// candidate closest to the original junction wins.
fn intersect_offsets(a: &BoundaryComponent, b: &BoundaryComponent, near: Vec2) -> Option<Vec2> {
    let candidates = match (a, b) {
        (BoundaryComponent::Segment(s1), BoundaryComponent::Segment(s2)) => {
            line_line(s1.from, s1.dir(), s2.from, s2.dir())
                .map(|p| vec![p])
                .unwrap_or_default()
        }
        (BoundaryComponent::Segment(s), BoundaryComponent::Arc(arc)) => {
            line_circle(s.from, s.dir(), arc.center, arc.radius)
        }
        (BoundaryComponent::Arc(arc), BoundaryComponent::Segment(s)) => {
            line_circle(s.from, s.dir(), arc.center, arc.radius)
        }
        (BoundaryComponent::Arc(a1), BoundaryComponent::Arc(a2)) => {
            circle_circle(a1.center, a1.radius, a2.center, a2.radius)
        }
    };
    candidates
        .into_iter()
        .min_by(|p, q| p.dist(near).total_cmp(&q.dist(near)))
}

pub(crate) fn line_line(p1: Vec2, d1: Vec2, p2: Vec2, d2: Vec2) -> Option<Vec2> {
    let denom = d1.cross(d2);
    if denom.abs() < 1e-12 {
        return None;
    }
    let t = (p2 - p1).cross(d2) / denom;
    Some(p1 + d1 * t)
}

pub(crate) fn line_circle(p: Vec2, d: Vec2, c: Vec2, r: f64) -> Vec<Vec2> {
    let t0 = (c - p).dot(d);
    let foot = p + d * t0;
    let h2 = r * r - (c - foot).norm_sq();
    if h2 < -SNAP_TOL {
        return vec![];
    }
    let h = h2.max(0.0).sqrt();
    vec![p + d * (t0 - h), p + d * (t0 + h)]
}

pub(crate) fn circle_circle(c1: Vec2, r1: f64, c2: Vec2, r2: f64) -> Vec<Vec2> {
    let d = c2 - c1;
    let dist = d.norm();
    if dist < 1e-12 || dist > r1 + r2 + SNAP_TOL || dist < (r1 - r2).abs() - SNAP_TOL {
        return vec![];
    }
    let a = (r1 * r1 - r2 * r2 + dist * dist) / (2.0 * dist);
    let h2 = r1 * r1 - a * a;
    let h = h2.max(0.0).sqrt();
    let mid = c1 + d * (a / dist);
    let n = d.perp() / dist;
    vec![mid + n * h, mid - n * h]
}

/// Whether a ball of radius `r` can still touch a (small-radius visible)
/// corner: some center position on the corner's contact sector keeps the
/// whole ball inside the table. Visibility is monotone decreasing in r.
pub fn is_visible_for_radius(table: &Table, corner: &CornerInfo, r: f64) -> Result<bool> {
    if corner.class != CornerClass::VisibleSingular {
        return Err(Error::InvalidArgument(
            "corner is not a visible singular point".into(),
        ));
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidArgument(
            "ball radius must be positive".into(),
        ));
    }
    let n_in = table.components()[corner.incoming].inward_normal_at(1.0);
    let n_out = table.components()[corner.outgoing].inward_normal_at(0.0);
    let a0 = n_in.angle();
    let expected = corner.interior_angle - std::f64::consts::PI;
    let ccw = (n_out.angle() - a0).rem_euclid(TAU);
    let sweep = if (ccw - expected).abs() <= (TAU - ccw - expected).abs() {
        ccw
    } else {
        ccw - TAU
    };

    const SECTOR_SAMPLES: usize = 512;
    for k in 0..SECTOR_SAMPLES {
        let u = (k as f64 + 0.5) / SECTOR_SAMPLES as f64;
        let center = corner.position + Vec2::from_angle(a0 + u * sweep) * r;
        if table.contains(center) && table.distance_to_boundary(center).0 >= r - SNAP_TOL {
            return Ok(true);
        }
    }
    Ok(false)
}
