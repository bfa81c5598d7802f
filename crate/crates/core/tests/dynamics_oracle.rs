//! Trajectory-level oracles: brute-force event detection, an
//! independently coded point billiard, reversibility, defocusing at
//! corner arcs, and no-penetration sampling.

mod common;

use common::{l_shape, rng, unit_square};
use corner_billiards::{
    fly, next_event, simulate, simulate_reduced, time_reverse, BallSpec, BallState, EventSource,
    ReducedTable, StopCondition, Surface, Table, Termination, Vec2,
};
use rand::Rng;

// ---------------------------------------------------------------
// independent point billiard in an axis-aligned box [lo, hi]^2
// ---------------------------------------------------------------

#[derive(Clone, Copy)]
struct BoxEvent {
    t: f64,
    point: Vec2,
    velocity_after: Vec2,
}

fn box_billiard(lo: f64, hi: f64, mut p: Vec2, mut v: Vec2, n: usize) -> Vec<BoxEvent> {
    let mut events = Vec::with_capacity(n);
    let mut time = 0.0;
    for _ in 0..n {
        let tx = if v.x > 0.0 {
            (hi - p.x) / v.x
        } else if v.x < 0.0 {
            (lo - p.x) / v.x
        } else {
            f64::INFINITY
        };
        let ty = if v.y > 0.0 {
            (hi - p.y) / v.y
        } else if v.y < 0.0 {
            (lo - p.y) / v.y
        } else {
            f64::INFINITY
        };
        let t = tx.min(ty);
        p = p + v * t;
        if tx <= ty {
            v.x = -v.x;
        }
        if ty <= tx {
            v.y = -v.y;
        }
        time += t;
        events.push(BoxEvent {
            t: time,
            point: p,
            velocity_after: v,
        });
    }
    events
}

#[test]
fn physical_square_matches_point_billiard_in_offset_square() {
    let table = unit_square();
    let spec = BallSpec::disk(0.1, Surface::Smooth).unwrap();
    let initial = BallState::planar(0.5, 0.5, 1.0, 0.5, 0.3).unwrap();
    let traj = simulate(&table, &spec, &initial, &StopCondition::Collisions(100)).unwrap();
    assert_eq!(traj.termination, Termination::CollisionCount);
    assert_eq!(traj.events.len(), 100);

    let oracle = box_billiard(0.1, 0.9, Vec2::new(0.5, 0.5), Vec2::new(1.0, 0.5), 100);
    for (e, o) in traj.events.iter().zip(oracle.iter()) {
        assert!((e.time - o.t).abs() < 1e-9);
        assert!(e.state.center.xy().dist(o.point) < 1e-9);
        assert!((e.state.velocity.xy() - o.velocity_after).norm() < 1e-9);
        // smooth ball: spin untouched
        assert!((e.state.angular.z - 0.3).abs() < 1e-12);
    }
}

// ---------------------------------------------------------------
// bisection oracle for next_event
// ---------------------------------------------------------------

/// First boundary crossing of the ray, found by marching at step 1e-4
/// and bisecting the inside/outside predicate of the reduced region.
fn bisection_oracle(table: &Table, rt: &ReducedTable, p: Vec2, v: Vec2) -> Option<f64> {
    let inside = |t: f64| {
        let q = p + v * t;
        table.contains(q) && table.distance_to_boundary(q).0 > rt.radius()
    };
    let step = 1e-4;
    let mut t = 0.0;
    for _ in 0..200_000 {
        let next = t + step;
        if !inside(next) {
            let (mut a, mut b) = (t, next);
            for _ in 0..80 {
                let mid = 0.5 * (a + b);
                if inside(mid) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Some(0.5 * (a + b));
        }
        t = next;
    }
    None
}

#[test]
fn next_event_matches_bisection_oracle() {
    let table = l_shape();
    let rt = table.reduce(0.2).unwrap();
    let mut r = rng(21);
    let mut checked = 0;
    while checked < 50 {
        let p = Vec2::new(r.gen_range(-0.9..0.9), r.gen_range(-0.9..0.9));
        if !rt.contains_center(p) || table.distance_to_boundary(p).0 < rt.radius() + 1e-3 {
            continue;
        }
        let v = Vec2::from_angle(r.gen_range(0.0..std::f64::consts::TAU));
        let event = next_event(&rt, p, v).unwrap();
        let oracle_t = bisection_oracle(&table, &rt, p, v).unwrap();
        assert!(
            (event.time_of_flight - oracle_t).abs() < 1e-6,
            "event t = {}, oracle t = {}",
            event.time_of_flight,
            oracle_t
        );
        checked += 1;
    }
}

// ---------------------------------------------------------------
// defocusing at the corner arc
// ---------------------------------------------------------------

#[test]
fn corner_arc_disperses_parallel_bundle() {
    let table = l_shape();
    let rt = table.reduce(0.2).unwrap();
    let spec = BallSpec::disk(0.2, Surface::Smooth).unwrap();
    let dir = Vec2::new(1.0, 1.0).normalize();
    let offset = dir.perp();

    let n = 50;
    let mut outgoing = Vec::with_capacity(n);
    for k in 0..n {
        let u = -0.04 + 0.08 * (k as f64) / (n - 1) as f64;
        let start = Vec2::new(-0.5, -0.5) + offset * u;
        let state = BallState::planar(start.x, start.y, dir.x, dir.y, 0.0).unwrap();
        let traj = simulate_reduced(&rt, &spec, &state, &StopCondition::Collisions(1)).unwrap();
        let e = &traj.events[0];
        assert!(
            matches!(e.event.source, EventSource::CornerArc(_)),
            "bundle member {k} missed the corner arc: {:?}",
            e.event.source
        );
        outgoing.push(e.state.velocity.xy().angle());
    }
    let spread_in = 0.0; // parallel bundle
    let spread_out = outgoing.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - outgoing.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    assert!(
        spread_out > spread_in + 1e-3,
        "no defocusing: spread {spread_out}"
    );
    // pairwise monotone: outgoing angles ordered strictly across the bundle
    for w in outgoing.windows(2) {
        assert!((w[0] - w[1]).abs() > 1e-9);
    }
}

#[test]
fn two_offset_rays_diverge_after_corner_hit() {
    let table = l_shape();
    let rt = table.reduce(0.2).unwrap();
    let spec = BallSpec::disk(0.2, Surface::Smooth).unwrap();
    let dir = Vec2::new(1.0, 1.0).normalize();
    let mut out = Vec::new();
    for u in [-0.05, 0.05] {
        let start = Vec2::new(-0.5, -0.5) + dir.perp() * u;
        let state = BallState::planar(start.x, start.y, dir.x, dir.y, 0.0).unwrap();
        let traj = simulate_reduced(&rt, &spec, &state, &StopCondition::Collisions(1)).unwrap();
        out.push(traj.events[0].state.velocity.xy());
    }
    let angle_between = out[0].dot(out[1]).clamp(-1.0, 1.0).acos();
    assert!(angle_between > 1e-3, "outgoing bundle still parallel");
}

// ---------------------------------------------------------------
// no penetration, reversibility, energy, determinism
// ---------------------------------------------------------------

#[test]
fn ball_never_penetrates_boundary() {
    let table = l_shape();
    let spec = BallSpec::disk(0.2, Surface::Rough).unwrap();
    let initial = BallState::planar(-0.5, -0.45, 0.83, 0.41, 1.3).unwrap();
    let traj = simulate(&table, &spec, &initial, &StopCondition::Collisions(200)).unwrap();

    let mut prev = initial;
    for e in &traj.events {
        for k in 0..=1000 {
            let u = k as f64 / 1000.0;
            let c = prev.center.xy() + (e.state.center.xy() - prev.center.xy()) * u;
            let (d, _) = table.distance_to_boundary(c);
            assert!(d >= spec.radius - 1e-8, "penetration: clearance {d}");
        }
        prev = e.state;
    }
}

#[test]
fn energy_is_conserved_along_trajectories() {
    let table = l_shape();
    for surface in [Surface::Smooth, Surface::Rough] {
        let spec = BallSpec::disk(0.2, surface).unwrap();
        let initial = BallState::planar(-0.4, -0.5, 1.1, 0.7, -2.0).unwrap();
        let traj = simulate(&table, &spec, &initial, &StopCondition::Collisions(500)).unwrap();
        assert_eq!(traj.events.len(), 500);
        assert!(traj.max_energy_drift() < 1e-8);
    }
}

#[test]
fn flow_is_reversible() {
    let table = l_shape();
    for surface in [Surface::Smooth, Surface::Rough] {
        let spec = BallSpec::disk(0.2, surface).unwrap();
        let initial = BallState::planar(-0.5, -0.45, 0.92, 0.55, 0.8).unwrap();
        let k = 50;
        let forward = simulate(&table, &spec, &initial, &StopCondition::Collisions(k)).unwrap();
        let t_first = forward.events[0].time;

        // leave the boundary before reversing
        let rt = table.reduce(spec.radius).unwrap();
        let pause = next_event(
            &rt,
            forward.final_state.center.xy(),
            forward.final_state.velocity.xy(),
        )
        .unwrap()
        .time_of_flight
            * 0.5;
        let mid = fly(&forward.final_state, pause);

        let back = simulate(
            &table,
            &spec,
            &time_reverse(&mid),
            &StopCondition::Collisions(k),
        )
        .unwrap();
        // retracing k contacts ends just after the first forward
        // contact; one more flight of t_first returns to the start
        let landed = time_reverse(&fly(&back.final_state, t_first));
        let total_err = (landed.center - initial.center).norm()
            + (landed.velocity - initial.velocity).norm()
            + (landed.angular - initial.angular).norm();
        assert!(total_err < 1e-6, "reversibility error {total_err}");
    }
}

#[test]
fn simulation_is_deterministic() {
    let table = l_shape();
    let spec = BallSpec::disk(0.2, Surface::Rough).unwrap();
    let initial = BallState::planar(-0.5, -0.45, 0.83, 0.41, 1.3).unwrap();
    let a = simulate(&table, &spec, &initial, &StopCondition::Collisions(300)).unwrap();
    let b = simulate(&table, &spec, &initial, &StopCondition::Collisions(300)).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
}
