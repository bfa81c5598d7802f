//! Minimal static SVG rendering of tables, reduced tables and
//! trajectories. Arcs are flattened to short polylines; output is
//! deterministic for a given input.

use corner_billiards::{BoundaryComponent, ReducedTable, Table, Vec2};
use std::fmt::Write;

const ARC_STEPS: usize = 64;
const MARGIN_FRAC: f64 = 0.05;

pub struct Svg {
    body: String,
    min: Vec2,
    max: Vec2,
}

impl Svg {
    pub fn new() -> Self {
        Svg {
            body: String::new(),
            min: Vec2::new(f64::INFINITY, f64::INFINITY),
            max: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: Vec2) {
        self.min = Vec2::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Vec2::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    pub fn polyline(&mut self, points: &[Vec2], style: &str) {
        if points.len() < 2 {
            return;
        }
        let mut attr = String::new();
        for p in points {
            self.grow(*p);
            // SVG y grows downward; flip for conventional orientation
            write!(attr, "{:.6},{:.6} ", p.x, -p.y).unwrap();
        }
        writeln!(
            self.body,
            "<polyline fill=\"none\" points=\"{}\" {}/>",
            attr.trim_end(),
            style
        )
        .unwrap();
    }

    fn component_points(c: &BoundaryComponent) -> Vec<Vec2> {
        match c {
            BoundaryComponent::Segment(s) => vec![s.from, s.to],
            BoundaryComponent::Arc(_) => (0..=ARC_STEPS)
                .map(|k| c.point_at(k as f64 / ARC_STEPS as f64))
                .collect(),
        }
    }

    pub fn table(&mut self, table: &Table, style: &str) {
        for c in table.components() {
            let pts = Self::component_points(c);
            self.polyline(&pts, style);
        }
    }

    pub fn reduced(&mut self, rt: &ReducedTable, style: &str) {
        for rc in rt.components() {
            let pts = Self::component_points(&rc.geom);
            self.polyline(&pts, style);
        }
    }

    pub fn finish(self) -> String {
        let size = self.max - self.min;
        let m = size.norm().max(1e-6) * MARGIN_FRAC;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n{}</svg>\n",
            self.min.x - m,
            -self.max.y - m,
            size.x + 2.0 * m,
            size.y + 2.0 * m,
            self.body
        )
    }
}

pub const TABLE_STYLE: &str = "stroke=\"black\" stroke-width=\"0.01\"";
pub const REDUCED_STYLE: &str =
    "stroke=\"crimson\" stroke-width=\"0.008\" stroke-dasharray=\"0.03,0.02\"";
pub const TRAJECTORY_STYLE: &str = "stroke=\"steelblue\" stroke-width=\"0.005\"";
