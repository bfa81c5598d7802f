//! Event-driven flight of the ball's center in the reduced table.
//!
//! Between collisions the center moves in a straight line; collisions
//! are exact ray intersections with the reduced boundary (offset
//! segments, offset arcs, and the dispersing corner arcs). Hitting a
//! corner arc is the reduced-table form of striking the corner itself.

use crate::collision::{
    audit_conservation, kinetic_energy, reflect, BallSpec, BallState, CollisionContext, Reflection,
};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryComponent, ReducedSource, ReducedTable, Table};
use crate::vec::Vec2;

/// Events closer in time than this raise a pinned-in-corner error
/// instead of looping.
pub const MIN_FLIGHT: f64 = 1e-12;

/// Candidates within this of the earliest time are ties; corner arcs
/// win (at a tangency the normals agree, so the reflection is the same
/// either way), then the lowest source id.
const TIE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventSource {
    /// Offset of an original boundary component (id of that component).
    RegularComponent(usize),
    /// Inserted corner arc (id of the corner).
    CornerArc(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct CollisionEvent {
    pub time_of_flight: f64,
    /// Center position at contact, on the reduced boundary.
    pub point: Vec2,
    /// Unit normal of the reduced boundary at the contact, pointing
    /// into the reduced interior.
    pub normal: Vec2,
    pub source: EventSource,
    /// Index into the reduced table's component list.
    pub reduced_index: usize,
}

#[derive(Clone, Debug)]
pub enum StopCondition {
    Collisions(usize),
    TimeHorizon(f64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    CollisionCount,
    TimeHorizon,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct TrajectoryEvent {
    /// Cumulative time at the event.
    pub time: f64,
    /// State just after the reflection.
    pub state: BallState,
    pub event: CollisionEvent,
    /// Kinetic-energy residual of this collision.
    pub energy_delta: f64,
    pub grazing: bool,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub initial: BallState,
    pub spec: BallSpec,
    pub events: Vec<TrajectoryEvent>,
    /// State at the end of the run (post-reflection at the last event,
    /// or flown to the horizon).
    pub final_state: BallState,
    pub total_time: f64,
    pub termination: Termination,
}

impl Trajectory {
    /// Largest absolute kinetic-energy drift relative to the initial
    /// state over the whole run.
    pub fn max_energy_drift(&self) -> f64 {
        let k0 = kinetic_energy(&self.initial, &self.spec);
        self.events
            .iter()
            .map(|e| (kinetic_energy(&e.state, &self.spec) - k0).abs())
            .fold(0.0, f64::max)
    }

    /// CSV export, one row per collision event. Column order is part of
    /// the interface; numbers carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("event_index,t,x,y,vx,vy,omega,source_kind,source_id,dK\n");
        for (i, e) in self.events.iter().enumerate() {
            let (kind, id) = match e.event.source {
                EventSource::RegularComponent(id) => ("RegularComponent", id),
                EventSource::CornerArc(id) => ("CornerArc", id),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                i,
                fmt17(e.time),
                fmt17(e.state.center.x),
                fmt17(e.state.center.y),
                fmt17(e.state.velocity.x),
                fmt17(e.state.velocity.y),
                fmt17(e.state.angular.z),
                kind,
                id,
                fmt17(e.energy_delta),
            ));
        }
        out
    }
}

/// 17 significant digits: round-trips f64 exactly and keeps golden
/// files reproducible.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Earliest positive-time intersection of the ray `position + t
/// velocity` with the reduced boundary. Arcs are only hit from the side
/// their inward normal faces.
pub fn next_event(rt: &ReducedTable, position: Vec2, velocity: Vec2) -> Result<CollisionEvent> {
    if velocity.norm() == 0.0 {
        return Err(Error::InvalidArgument(
            "zero velocity has no next event".into(),
        ));
    }
    let mut best: Option<CollisionEvent> = None;
    for (idx, rc) in rt.components().iter().enumerate() {
        let candidate = match &rc.geom {
            BoundaryComponent::Segment(s) => {
                let n = s.inward_normal();
                let denom = velocity.dot(n);
                if denom >= 0.0 {
                    None
                } else {
                    let t = (s.from - position).dot(n) / denom;
                    if t <= MIN_FLIGHT {
                        None
                    } else {
                        let hit = position + velocity * t;
                        let along = (hit - s.from).dot(s.dir());
                        if (-TIE_TOL..=s.len() + TIE_TOL).contains(&along) {
                            Some((t, hit, n))
                        } else {
                            None
                        }
                    }
                }
            }
            BoundaryComponent::Arc(a) => {
                let rel = position - a.center;
                let qa = velocity.norm_sq();
                let qb = 2.0 * rel.dot(velocity);
                let qc = rel.norm_sq() - a.radius * a.radius;
                let disc = qb * qb - 4.0 * qa * qc;
                if disc <= 0.0 {
                    None
                } else {
                    let sq = disc.sqrt();
                    let mut found = None;
                    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                        if t <= MIN_FLIGHT {
                            continue;
                        }
                        let hit = position + velocity * t;
                        let phi = (hit - a.center).angle();
                        if !a.contains_angle(phi, TIE_TOL / a.radius.max(TIE_TOL)) {
                            continue;
                        }
                        let n = a.inward_normal_at_angle(phi);
                        if velocity.dot(n) >= 0.0 {
                            continue;
                        }
                        found = Some((t, hit, n));
                        break;
                    }
                    found
                }
            }
        };
        let Some((t, hit, n)) = candidate else {
            continue;
        };
        let source = match rc.source {
            ReducedSource::Offset { component } => EventSource::RegularComponent(component),
            ReducedSource::Corner { corner } => EventSource::CornerArc(corner),
        };
        let event = CollisionEvent {
            time_of_flight: t,
            point: hit,
            normal: n,
            source,
            reduced_index: idx,
        };
        best = Some(match best {
            None => event,
            Some(b) => pick(b, event),
        });
    }
    best.ok_or_else(|| {
        Error::NoEvent(format!(
            "ray from ({}, {}) leaves the reduced boundary; malformed table?",
            position.x, position.y
        ))
    })
}

fn pick(a: CollisionEvent, b: CollisionEvent) -> CollisionEvent {
    if (a.time_of_flight - b.time_of_flight).abs() <= TIE_TOL {
        let rank = |e: &CollisionEvent| match e.source {
            EventSource::CornerArc(id) => (0usize, id),
            EventSource::RegularComponent(id) => (1usize, id),
        };
        if rank(&b) < rank(&a) {
            b
        } else {
            a
        }
    } else if b.time_of_flight < a.time_of_flight {
        b
    } else {
        a
    }
}

/// Free flight for `dt`: the center translates, the spin is carried
/// unchanged.
pub fn fly(state: &BallState, dt: f64) -> BallState {
    BallState {
        center: state.center + state.velocity * dt,
        velocity: state.velocity,
        angular: state.angular,
    }
}

/// V -> -V, omega -> -omega. Conjugating the collision maps by this
/// reversal inverts the flow.
pub fn time_reverse(state: &BallState) -> BallState {
    BallState {
        center: state.center,
        velocity: -state.velocity,
        angular: -state.angular,
    }
}

/// Advance to the next collision and reflect. The contact point handed
/// to the collision map is the corner itself for corner-arc events and
/// the foot on the original component otherwise; in both cases it is
/// `center - r * normal`.
pub fn step(
    rt: &ReducedTable,
    state: &BallState,
    spec: &BallSpec,
) -> Result<(Reflection, CollisionEvent)> {
    let event = next_event(rt, state.center.xy(), state.velocity.xy())?;
    let arrived = BallState {
        center: event.point.to_3d(),
        velocity: state.velocity,
        angular: state.angular,
    };
    let contact = (event.point - event.normal * rt.radius()).to_3d();
    let ctx = CollisionContext::new(contact, event.normal.to_3d(), rt.radius())?;
    Ok((reflect(&arrived, &ctx, spec), event))
}

/// Run the physical billiard: reduce the table, then iterate `step`
/// until the stop condition, auditing conservation at every event.
pub fn simulate(
    table: &Table,
    spec: &BallSpec,
    initial: &BallState,
    stop: &StopCondition,
) -> Result<Trajectory> {
    let rt = table.reduce(spec.radius)?;
    simulate_reduced(&rt, spec, initial, stop)
}

/// `simulate` against a prebuilt reduced table.
pub fn simulate_reduced(
    rt: &ReducedTable,
    spec: &BallSpec,
    initial: &BallState,
    stop: &StopCondition,
) -> Result<Trajectory> {
    if !rt.contains_center(initial.center.xy()) {
        return Err(Error::OutsideTable(format!(
            "initial center ({}, {}) is not strictly inside the reduced table",
            initial.center.x, initial.center.y
        )));
    }
    if initial.velocity.xy().norm() == 0.0 {
        return Err(Error::InvalidArgument(
            "initial velocity must be nonzero".into(),
        ));
    }

    let mut events = Vec::new();
    let mut state = *initial;
    let mut time = 0.0;
    let termination = loop {
        match stop {
            StopCondition::Collisions(n) if events.len() >= *n => {
                break Termination::CollisionCount;
            }
            _ => {}
        }
        let (reflection, event) = match step(rt, &state, spec) {
            Ok(r) => r,
            Err(Error::NoEvent(msg)) => break Termination::Failed(msg),
            Err(e) => return Err(e),
        };
        if event.time_of_flight < MIN_FLIGHT {
            break Termination::Failed("pinned in corner".into());
        }
        if let StopCondition::TimeHorizon(horizon) = stop {
            if time + event.time_of_flight > *horizon {
                state = fly(&state, horizon - time);
                time = *horizon;
                break Termination::TimeHorizon;
            }
        }
        time += event.time_of_flight;
        let pre = BallState {
            center: event.point.to_3d(),
            velocity: state.velocity,
            angular: state.angular,
        };
        let contact = (event.point - event.normal * rt.radius()).to_3d();
        let ctx = CollisionContext::new(contact, event.normal.to_3d(), rt.radius())?;
        let report = audit_conservation(&pre, &reflection.state, &reflection.impulse, &ctx, spec);
        events.push(TrajectoryEvent {
            time,
            state: reflection.state,
            event,
            energy_delta: report.energy_delta,
            grazing: reflection.grazing,
        });
        state = reflection.state;
    };

    Ok(Trajectory {
        initial: *initial,
        spec: *spec,
        events,
        final_state: state,
        total_time: time,
        termination,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::Surface;
    use crate::geometry::polygon;
    use crate::vec::Vec3;

    fn square() -> Table {
        polygon(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn ray_hits_offset_wall() {
        let rt = square().reduce(0.1).unwrap();
        let e = next_event(&rt, Vec2::new(0.5, 0.5), Vec2::new(1.0, 0.0)).unwrap();
        assert!((e.time_of_flight - 0.4).abs() < 1e-12);
        assert!((e.point.x - 0.9).abs() < 1e-12);
        assert_eq!(e.source, EventSource::RegularComponent(1));
        assert_eq!(e.normal, Vec2::new(-1.0, 0.0));
    }

    #[test]
    fn ray_hits_corner_arc_head_on() {
        // L-shape with the reflex corner at the origin; shoot straight
        // at the corner along the sector bisector.
        let table = polygon(&[
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 1.0),
        ])
        .unwrap();
        let rt = table.reduce(0.2).unwrap();
        let d = Vec2::new(1.0, 1.0).normalize();
        let e = next_event(&rt, Vec2::new(-0.5, -0.5), d).unwrap();
        assert!(matches!(e.source, EventSource::CornerArc(_)));
        assert!((e.point.norm() - 0.2).abs() < 1e-12);

        // head-on smooth reflection off the arc reverses the velocity
        let spec = BallSpec::disk(0.2, Surface::Smooth).unwrap();
        let state = BallState::new(Vec3::new(-0.5, -0.5, 0.0), d.to_3d(), Vec3::ZERO).unwrap();
        let (r, _) = step(&rt, &state, &spec).unwrap();
        assert!((r.state.velocity + d.to_3d()).norm() < 1e-12);
    }

    #[test]
    fn time_reverse_involution() {
        let s = BallState::planar(0.1, 0.2, 1.0, 2.0, 3.0).unwrap();
        let r = time_reverse(&s);
        assert_eq!(r.velocity, Vec3::new(-1.0, -2.0, 0.0));
        assert_eq!(r.angular, Vec3::new(0.0, 0.0, -3.0));
        assert_eq!(time_reverse(&r), s);
    }

    #[test]
    fn simulate_rejects_outside_start() {
        let spec = BallSpec::disk(0.1, Surface::Smooth).unwrap();
        let state = BallState::planar(0.05, 0.5, 1.0, 0.0, 0.0).unwrap();
        let err = simulate(&square(), &spec, &state, &StopCondition::Collisions(5));
        assert!(matches!(err, Err(Error::OutsideTable(_))));
    }

    #[test]
    fn horizon_stops_mid_flight() {
        let spec = BallSpec::disk(0.1, Surface::Smooth).unwrap();
        let state = BallState::planar(0.5, 0.5, 1.0, 0.0, 0.0).unwrap();
        let traj = simulate(&square(), &spec, &state, &StopCondition::TimeHorizon(0.2)).unwrap();
        assert_eq!(traj.termination, Termination::TimeHorizon);
        assert!(traj.events.is_empty());
        assert!((traj.final_state.center.x - 0.7).abs() < 1e-12);
    }

    #[test]
    fn csv_header_and_rows() {
        let spec = BallSpec::disk(0.1, Surface::Smooth).unwrap();
        let state = BallState::planar(0.5, 0.5, 1.0, 0.5, 0.0).unwrap();
        let traj = simulate(&square(), &spec, &state, &StopCondition::Collisions(3)).unwrap();
        let csv = traj.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "event_index,t,x,y,vx,vy,omega,source_kind,source_id,dK"
        );
        assert_eq!(lines.len(), 4);
    }
}
