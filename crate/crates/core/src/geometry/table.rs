//! Billiard tables: piecewise boundaries made of line segments and
//! circular arcs, grouped into closed loops with the interior on the
//! left of the traversal direction.

use crate::error::{Error, Result};
use crate::vec::Vec2;
use serde::{Deserialize, Serialize};

/// Endpoints closer than this are considered the same junction point.
pub const SNAP_TOL: f64 = 1e-9;

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone, Copy, Debug)]
pub struct Segment {
    pub from: Vec2,
    pub to: Vec2,
}

/// Circular arc, parametrized from `start_angle` through a signed
/// `sweep` (positive = counterclockwise). |sweep| is in (0, 2pi].
#[derive(Clone, Copy, Debug)]
pub struct Arc {
    pub center: Vec2,
    pub radius: f64,
    pub start_angle: f64,
    pub sweep: f64,
}

#[derive(Clone, Copy, Debug)]
pub enum BoundaryComponent {
    Segment(Segment),
    Arc(Arc),
}

impl Segment {
    pub fn dir(&self) -> Vec2 {
        (self.to - self.from).normalize()
    }

    pub fn len(&self) -> f64 {
        (self.to - self.from).norm()
    }

    /// Left normal of the traversal direction: points into the interior.
    pub fn inward_normal(&self) -> Vec2 {
        self.dir().perp()
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        let d = self.to - self.from;
        let t = ((p - self.from).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
        (self.from + d * t - p).norm()
    }
}

impl Arc {
    pub fn angle_at(&self, u: f64) -> f64 {
        self.start_angle + u * self.sweep
    }

    pub fn point_at(&self, u: f64) -> Vec2 {
        self.center + Vec2::from_angle(self.angle_at(u)) * self.radius
    }

    pub fn start(&self) -> Vec2 {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Vec2 {
        self.point_at(1.0)
    }

    /// Unit tangent in the traversal direction at parameter u.
    pub fn tangent_at(&self, u: f64) -> Vec2 {
        let t = Vec2::from_angle(self.angle_at(u)).perp();
        if self.sweep >= 0.0 {
            t
        } else {
            -t
        }
    }

    /// Inward normal (left of traversal): toward the center for a
    /// counterclockwise arc, away from it for a clockwise one.
    pub fn inward_normal_at(&self, u: f64) -> Vec2 {
        let radial = Vec2::from_angle(self.angle_at(u));
        if self.sweep >= 0.0 {
            -radial
        } else {
            radial
        }
    }

    /// Inward normal for a point of the circle at world angle `phi`.
    pub fn inward_normal_at_angle(&self, phi: f64) -> Vec2 {
        let radial = Vec2::from_angle(phi);
        if self.sweep >= 0.0 {
            -radial
        } else {
            radial
        }
    }

    /// True if the world angle `phi` lies within the swept sector.
    pub fn contains_angle(&self, phi: f64, tol: f64) -> bool {
        let rel = if self.sweep >= 0.0 {
            (phi - self.start_angle).rem_euclid(TAU)
        } else {
            (self.start_angle - phi).rem_euclid(TAU)
        };
        rel <= self.sweep.abs() + tol || rel >= TAU - tol
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        let rel = p - self.center;
        if rel.norm() > 0.0 && self.contains_angle(rel.angle(), 0.0) {
            (rel.norm() - self.radius).abs()
        } else {
            p.dist(self.start()).min(p.dist(self.end()))
        }
    }
}

impl BoundaryComponent {
    pub fn start(&self) -> Vec2 {
        match self {
            BoundaryComponent::Segment(s) => s.from,
            BoundaryComponent::Arc(a) => a.start(),
        }
    }

    pub fn end(&self) -> Vec2 {
        match self {
            BoundaryComponent::Segment(s) => s.to,
            BoundaryComponent::Arc(a) => a.end(),
        }
    }

    pub fn tangent_start(&self) -> Vec2 {
        match self {
            BoundaryComponent::Segment(s) => s.dir(),
            BoundaryComponent::Arc(a) => a.tangent_at(0.0),
        }
    }

    pub fn tangent_end(&self) -> Vec2 {
        match self {
            BoundaryComponent::Segment(s) => s.dir(),
            BoundaryComponent::Arc(a) => a.tangent_at(1.0),
        }
    }

    pub fn point_at(&self, u: f64) -> Vec2 {
        match self {
            BoundaryComponent::Segment(s) => s.from + (s.to - s.from) * u,
            BoundaryComponent::Arc(a) => a.point_at(u),
        }
    }

    pub fn inward_normal_at(&self, u: f64) -> Vec2 {
        match self {
            BoundaryComponent::Segment(s) => s.inward_normal(),
            BoundaryComponent::Arc(a) => a.inward_normal_at(u),
        }
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        match self {
            BoundaryComponent::Segment(s) => s.distance_to(p),
            BoundaryComponent::Arc(a) => a.distance_to(p),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            BoundaryComponent::Segment(s) => {
                if !s.from.is_finite() || !s.to.is_finite() {
                    return Err(Error::InvalidTable("non-finite segment endpoint".into()));
                }
                if s.from.dist(s.to) <= SNAP_TOL {
                    return Err(Error::InvalidTable(format!(
                        "degenerate segment at ({}, {})",
                        s.from.x, s.from.y
                    )));
                }
            }
            BoundaryComponent::Arc(a) => {
                if !a.center.is_finite() || !a.radius.is_finite() || !a.sweep.is_finite() {
                    return Err(Error::InvalidTable("non-finite arc parameters".into()));
                }
                if a.radius <= 0.0 {
                    return Err(Error::InvalidTable("arc radius must be positive".into()));
                }
                if a.sweep == 0.0 || a.sweep.abs() > TAU + SNAP_TOL {
                    return Err(Error::InvalidTable(
                        "arc angular extent must be in (0, 2pi]".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A closed billiard table: one or more loops of boundary components.
/// Component ids are global indices in loop-major order.
#[derive(Clone, Debug)]
pub struct Table {
    components: Vec<BoundaryComponent>,
    /// Half-open ranges of component ids, one per loop.
    loops: Vec<(usize, usize)>,
}

impl Table {
    pub fn new(loops: Vec<Vec<BoundaryComponent>>) -> Result<Self> {
        if loops.is_empty() || loops.iter().any(|l| l.is_empty()) {
            return Err(Error::InvalidTable("table must have nonempty loops".into()));
        }
        let mut components = Vec::new();
        let mut ranges = Vec::new();
        for (li, lp) in loops.into_iter().enumerate() {
            let start = components.len();
            for c in &lp {
                c.validate()?;
            }
            // loop closure within snap tolerance
            for i in 0..lp.len() {
                let j = (i + 1) % lp.len();
                let gap = lp[i].end().dist(lp[j].start());
                if gap > SNAP_TOL {
                    return Err(Error::InvalidTable(format!(
                        "loop {li} is not closed: gap of {gap:e} after component {i}"
                    )));
                }
            }
            components.extend(lp);
            ranges.push((start, components.len()));
        }
        Ok(Table {
            components,
            loops: ranges,
        })
    }

    pub fn components(&self) -> &[BoundaryComponent] {
        &self.components
    }

    pub fn loops(&self) -> &[(usize, usize)] {
        &self.loops
    }

    pub fn loop_of(&self, component_id: usize) -> usize {
        self.loops
            .iter()
            .position(|&(s, e)| component_id >= s && component_id < e)
            .expect("component id out of range")
    }

    /// Euclidean distance from `p` to the boundary, with the achieving
    /// component id (ties broken by the lowest id).
    pub fn distance_to_boundary(&self, p: Vec2) -> (f64, usize) {
        let mut best = (f64::INFINITY, 0);
        for (id, c) in self.components.iter().enumerate() {
            let d = c.distance_to(p);
            if d < best.0 {
                best = (d, id);
            }
        }
        best
    }

    /// Even-odd point-in-table test by ray crossing counting. The ray
    /// direction is a fixed slightly-skew unit vector so that axis
    /// aligned fixtures do not produce vertex or tangency hits.
    pub fn contains(&self, p: Vec2) -> bool {
        let d = Vec2::from_angle(0.0123456789);
        let mut crossings = 0usize;
        for c in &self.components {
            match c {
                BoundaryComponent::Segment(s) => {
                    let e = s.to - s.from;
                    let denom = d.cross(e);
                    if denom.abs() < 1e-300 {
                        continue;
                    }
                    let rel = s.from - p;
                    let t = rel.cross(e) / denom;
                    let u = rel.cross(d) / denom;
                    if t > 0.0 && (0.0..1.0).contains(&u) {
                        crossings += 1;
                    }
                }
                BoundaryComponent::Arc(a) => {
                    let rel = p - a.center;
                    let b = 2.0 * rel.dot(d);
                    let cc = rel.norm_sq() - a.radius * a.radius;
                    let disc = b * b - 4.0 * cc;
                    if disc <= 0.0 {
                        continue;
                    }
                    let sq = disc.sqrt();
                    for t in [(-b - sq) / 2.0, (-b + sq) / 2.0] {
                        if t > 0.0 {
                            let hit = p + d * t;
                            if a.contains_angle((hit - a.center).angle(), 0.0) {
                                crossings += 1;
                            }
                        }
                    }
                }
            }
        }
        crossings % 2 == 1
    }
}

// ---------------------------------------------------------------------
// JSON schema: {"loops": [[component, ...], ...]} with components either
// {"kind": "segment", "from": [x,y], "to": [x,y]} or
// {"kind": "arc", "center": [x,y], "radius": R,
//  "start_angle": a0, "end_angle": a1, "ccw": bool}.
// Interior is on the left of the traversal direction.
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct TableDoc {
    pub loops: Vec<Vec<ComponentDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentDoc {
    Segment {
        from: Vec2,
        to: Vec2,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        source: Option<String>,
    },
    Arc {
        center: Vec2,
        radius: f64,
        start_angle: f64,
        end_angle: f64,
        ccw: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        source: Option<String>,
    },
}

impl From<&ComponentDoc> for BoundaryComponent {
    fn from(doc: &ComponentDoc) -> Self {
        match *doc {
            ComponentDoc::Segment { from, to, .. } => {
                BoundaryComponent::Segment(Segment { from, to })
            }
            ComponentDoc::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ccw,
                ..
            } => {
                let sweep = if ccw {
                    let s = (end_angle - start_angle).rem_euclid(TAU);
                    if s == 0.0 {
                        TAU
                    } else {
                        s
                    }
                } else {
                    let s = (start_angle - end_angle).rem_euclid(TAU);
                    if s == 0.0 {
                        -TAU
                    } else {
                        -s
                    }
                };
                BoundaryComponent::Arc(Arc {
                    center,
                    radius,
                    start_angle,
                    sweep,
                })
            }
        }
    }
}

impl BoundaryComponent {
    pub fn to_doc(&self, source: Option<String>) -> ComponentDoc {
        match *self {
            BoundaryComponent::Segment(s) => ComponentDoc::Segment {
                from: s.from,
                to: s.to,
                source,
            },
            BoundaryComponent::Arc(a) => ComponentDoc::Arc {
                center: a.center,
                radius: a.radius,
                start_angle: a.start_angle,
                end_angle: a.start_angle + a.sweep,
                ccw: a.sweep >= 0.0,
                source,
            },
        }
    }
}

impl Table {
    pub fn from_json(json: &str) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(json)?;
        Table::new(
            doc.loops
                .iter()
                .map(|lp| lp.iter().map(BoundaryComponent::from).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            loops: self
                .loops
                .iter()
                .map(|&(s, e)| {
                    self.components[s..e]
                        .iter()
                        .map(|c| c.to_doc(None))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serialization cannot fail")
    }
}

/// Convenience constructor for polygonal tables: vertices in traversal
/// order (interior on the left), consecutive vertices joined by segments.
pub fn polygon(vertices: &[Vec2]) -> Result<Table> {
    let n = vertices.len();
    let comps = (0..n)
        .map(|i| {
            BoundaryComponent::Segment(Segment {
                from: vertices[i],
                to: vertices[(i + 1) % n],
            })
        })
        .collect();
    Table::new(vec![comps])
}
