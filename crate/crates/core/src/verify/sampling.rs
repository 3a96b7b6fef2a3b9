//! Random points for the suites.
//!
//! Points are uniform in the unit ball, in the box [−2, 2]ⁿ⁻¹ × (0, 2] for the
//! half-space, or in a bounding box for planar domains, always at distance
//! more than [`MIN_BOUNDARY_DISTANCE`] from the boundary. With `heavy_tail`,
//! a tenth of the points are placed at boundary distance 10⁻ᵏ with k uniform
//! in [1, 6), where suprema and limit cases live.

use rand::Rng;

use crate::domain::Domain;
use crate::geometry::{random_unit, Point};

pub const MIN_BOUNDARY_DISTANCE: f64 = 1e-6;
const HEAVY_FRACTION: f64 = 0.1;

fn heavy_distance<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    10f64.powf(-rng.random_range(1.0..6.0))
}

pub fn sample_point<R: Rng + ?Sized>(domain: &Domain, heavy_tail: bool, rng: &mut R) -> Point {
    let heavy = heavy_tail && rng.random::<f64>() < HEAVY_FRACTION;
    match domain {
        Domain::UnitBall { dim } => {
            let dir = random_unit(*dim, rng);
            let r = if heavy {
                1.0 - heavy_distance(rng)
            } else {
                loop {
                    let r = rng.random::<f64>().powf(1.0 / *dim as f64);
                    if 1.0 - r > MIN_BOUNDARY_DISTANCE {
                        break r;
                    }
                }
            };
            dir.scale(r)
        }
        Domain::HalfSpace { dim } => {
            let mut c: Vec<f64> = (0..dim - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
            let h = if heavy {
                heavy_distance(rng)
            } else {
                loop {
                    let h = 2.0 * (1.0 - rng.random::<f64>());
                    if h > MIN_BOUNDARY_DISTANCE {
                        break h;
                    }
                }
            };
            c.push(h);
            Point::from_iter_unchecked(c)
        }
        Domain::PuncturedSpace { dim } => {
            let r = 10f64.powf(rng.random_range(-2.0..2.0));
            random_unit(*dim, rng).scale(r)
        }
        Domain::Generic2D(b) => {
            let (lo, hi) = b.bounding_box();
            let pad = if domain.is_unbounded() {
                (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1.0)
            } else {
                0.0
            };
            loop {
                let p = [
                    rng.random_range(lo[0] - pad..hi[0] + pad),
                    rng.random_range(lo[1] - pad..hi[1] + pad),
                ];
                if b.contains(p) && b.distance(p) > MIN_BOUNDARY_DISTANCE {
                    break Point::xy(p[0], p[1]);
                }
            }
        }
    }
}

/// Two independent points; retries until they differ.
pub fn sample_pair<R: Rng + ?Sized>(domain: &Domain, heavy_tail: bool, rng: &mut R) -> (Point, Point) {
    loop {
        let x = sample_point(domain, heavy_tail, rng);
        let y = sample_point(domain, heavy_tail, rng);
        if x != y {
            return (x, y);
        }
    }
}

/// Convex polygon with `count` vertices at sorted random angles on the unit
/// circle.
pub fn random_convex_polygon<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<[f64; 2]> {
    let mut angles: Vec<f64> = (0..count)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.iter().map(|t| [t.cos(), t.sin()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Boundary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let poly = Boundary::polygon(random_convex_polygon(7, &mut rng)).unwrap();
        for domain in [
            Domain::unit_ball(2).unwrap(),
            Domain::unit_ball(3).unwrap(),
            Domain::half_space(3).unwrap(),
            Domain::punctured(2).unwrap(),
            Domain::Generic2D(poly),
        ] {
            for _ in 0..2000 {
                let p = sample_point(&domain, true, &mut rng);
                assert!(domain.contains(&p), "{domain:?} {p:?}");
                assert!(domain.boundary_distance(&p).unwrap() > 5e-7);
            }
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let d = Domain::unit_ball(2).unwrap();
        let a: Vec<Point> = {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..10).map(|_| sample_point(&d, true, &mut rng)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b: Vec<Point> = (0..10).map(|_| sample_point(&d, true, &mut rng)).collect();
        assert_eq!(a, b);
    }
}
