//! Shared fixtures and random generators for the integration tests.
#![allow(dead_code)]

use corner_billiards::{
    polygon, BallSpec, BallState, CollisionContext, Surface, Table, Vec2, Vec3,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_square() -> Table {
    polygon(&[
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap()
}

/// L-shaped table with its reflex corner at the origin.
pub fn l_shape() -> Table {
    polygon(&[
        Vec2::new(-1.0, -1.0),
        Vec2::new(1.0, -1.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 0.0),
        Vec2::new(0.0, 1.0),
        Vec2::new(-1.0, 1.0),
    ])
    .unwrap()
}

/// A bulk chamber with a width-0.3 corridor ending in a notch whose tip
/// is a visible corner at (4.8, 1.0). Balls wider than the corridor's
/// half-width cannot reach the tip.
pub fn corridor() -> Table {
    polygon(&[
        Vec2::new(0.0, 0.0),
        Vec2::new(3.0, 0.0),
        Vec2::new(3.0, 0.85),
        Vec2::new(5.0, 0.85),
        Vec2::new(4.8, 1.0),
        Vec2::new(5.0, 1.15),
        Vec2::new(3.0, 1.15),
        Vec2::new(3.0, 2.0),
        Vec2::new(0.0, 2.0),
    ])
    .unwrap()
}

pub fn random_unit_vec3(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n < 1.0 {
            return v / n;
        }
    }
}

pub fn random_contact(rng: &mut ChaCha8Rng) -> (CollisionContext, f64) {
    let normal = random_unit_vec3(rng);
    let radius = rng.gen_range(0.1..2.0);
    let contact = Vec3::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    (
        CollisionContext::new(contact, normal, radius).unwrap(),
        radius,
    )
}

pub fn random_spec(rng: &mut ChaCha8Rng, radius: f64, surface: Surface) -> BallSpec {
    BallSpec::new(radius, rng.gen_range(0.05..5.0), surface).unwrap()
}

/// Random state positioned at contact distance along the normal, so the
/// context invariants hold.
pub fn random_state(rng: &mut ChaCha8Rng, ctx: &CollisionContext) -> BallState {
    BallState::new(
        ctx.contact + ctx.ao(),
        random_unit_vec3(rng) * rng.gen_range(0.1..3.0),
        random_unit_vec3(rng) * rng.gen_range(0.0..3.0),
    )
    .unwrap()
}
