use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Tracker, VerificationReport, CLOSED_FORM_TOL};
use crate::closed_form::{rho, v_closed_form};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::{angle_at_points, Point};
use crate::special::f_theta_unchecked;

/// A circle internally tangent to the boundary at `z` and two points
/// on it seen from the tangency point under the angle `alpha`; `theta`
/// measures how far the pair is rotated away from the symmetric position.
#[derive(Clone, Debug)]
struct Config {
    x: Point,
    y: Point,
    xs: Point,
    ys: Point,
    z: Point,
    alpha: f64,
    theta: f64,
}

/// Point on the circle at angle β from the diametrically opposite point of
/// the tangency, in a frame where the tangency direction is `dir`.
fn on_circle(center: [f64; 2], radius: f64, dir: [f64; 2], beta: f64) -> Point {
    // −dir rotated by β
    let (c, s) = (beta.cos(), beta.sin());
    let u = [-(c * dir[0] - s * dir[1]), -(s * dir[0] + c * dir[1])];
    Point::xy(center[0] + radius * u[0], center[1] + radius * u[1])
}

fn sample_config<R: Rng + ?Sized>(domain: &Domain, alpha: f64, rng: &mut R) -> Config {
    let theta = rng.random_range(0.0..0.99) * (PI - alpha);
    let (center, radius, dir) = match domain {
        Domain::UnitBall { .. } => {
            let phi: f64 = rng.random_range(0.0..2.0 * PI);
            let a = rng.random_range(0.05..0.95);
            let dir = [phi.cos(), phi.sin()];
            ([a * dir[0], a * dir[1]], 1.0 - a, dir)
        }
        _ => {
            let r = (rng.random_range(-2.0..2.0f64)).exp();
            ([rng.random_range(-3.0..3.0), r], r, [0.0, -1.0])
        }
    };
    let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
    let at = |b: f64| on_circle(center, radius, dir, sign * b);
    Config {
        x: at(theta - alpha),
        y: at(theta + alpha),
        xs: at(-alpha),
        ys: at(alpha),
        z: at(PI),
        alpha,
        theta,
    }
}

/// (1 − |x|²)(1 − |y|²) in the ball, Im x · Im y in the half-plane.
fn boundary_product(domain: &Domain, x: &Point, y: &Point) -> f64 {
    match domain {
        Domain::UnitBall { .. } => (1.0 - x.norm_sq()) * (1.0 - y.norm_sq()),
        _ => x[1] * y[1],
    }
}

/// Samples tangent circles and equal-angle pairs on them, and checks that
/// the symmetric pair maximises the boundary-distance product, hence
/// minimises ρ among pairs with the same chord and angle. Also checks the
/// product against its closed form in α and θ, that the tangency point sees
/// the pair under α, and that v ≥ α.
///
/// Every fourth trial uses α = π/2.
pub fn extremal_config_suite(domain: &Domain, trials: u64, seed: u64) -> Result<VerificationReport> {
    let id = match domain {
        Domain::UnitBall { dim: 2 } => "extremal-ball",
        Domain::HalfSpace { dim: 2 } => "extremal-halfspace",
        _ => {
            return Err(Error::UnsupportedDomain(
                "extremal configurations are sampled in B² or H²".into(),
            ))
        }
    };
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new(id, seed, CLOSED_FORM_TOL);
    let mut worst_symmetric = 0.0f64;
    for i in 0..trials {
        let alpha = if i % 4 == 3 {
            FRAC_PI_2
        } else {
            rng.random_range(0.02..PI - 0.02)
        };
        let c = sample_config(domain, alpha, &mut rng);
        let p = boundary_product(domain, &c.x, &c.y);
        let ps = boundary_product(domain, &c.xs, &c.ys);
        t.trial();
        // relative form keeps the margin scale-free
        t.check((ps - p) / ps);
        let closed = f_theta_unchecked(c.alpha, c.theta) / f_theta_unchecked(c.alpha, 0.0);
        t.check_equal(p / ps - closed);
        let symmetric = (ps / f_theta_unchecked(c.alpha, 0.0)) / factor(domain, &c);
        worst_symmetric = worst_symmetric.max((symmetric - 1.0).abs());
        t.check_equal(symmetric - 1.0);
        let (r, rs) = (rho(domain, &c.x, &c.y)?.value, rho(domain, &c.xs, &c.ys)?.value);
        t.check(r - rs);
        // z sees the pair under α, and v is the sup over such z
        t.check_equal(angle_at_points(&c.x, &c.z, &c.y)?.radians() - c.alpha);
        t.check(v_closed_form(domain, &c.x, &c.y)?.value - c.alpha);
    }
    t.extra("max_symmetric_residual", worst_symmetric);
    Ok(t.finish())
}

/// 4|a|²(1 − |a|)² in the ball, R² in the half-plane, recovered from the
/// configuration.
fn factor(domain: &Domain, c: &Config) -> f64 {
    // center and radius from the symmetric pair: the chord has length
    // 2r sin α and its midpoint sits r cos α from the center
    let chord = c.xs.dist(&c.ys);
    let r = chord / (2.0 * c.alpha.sin());
    match domain {
        Domain::UnitBall { .. } => {
            let a = 1.0 - r;
            4.0 * a * a * r * r
        }
        _ => r * r,
    }
}
