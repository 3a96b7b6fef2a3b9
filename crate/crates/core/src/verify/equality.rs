use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sampling::sample_point;
use super::{Tracker, VerificationReport, CLOSED_FORM_TOL};
use crate::closed_form::{sinh_half_rho_ball, sinh_half_rho_half, v_ball, v_half};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Residual that perturbed pairs must exceed.
pub const PERTURBED_RESIDUAL: f64 = 1e-6;

/// |tan v − sh(ρ/2)|.
fn residual(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    Ok(match domain {
        Domain::UnitBall { .. } => (v_ball(x, y)?.value.tan() - sinh_half_rho_ball(x, y)?).abs(),
        _ => (v_half(x, y)?.value.tan() - sinh_half_rho_half(x, y)?).abs(),
    })
}

/// tan v = sh(ρ/2) on the equality configurations (ball: 0, x, y collinear;
/// half-plane: x and y on a common vertical line), and a residual above
/// [`PERTURBED_RESIDUAL`] once the configuration is broken.
///
/// Each trial checks one equality pair and one perturbed pair. Pairs are
/// drawn with |x − y| ≥ 0.05 so that the perturbation is visible; the
/// perturbation rotates y about the origin (ball) or shifts it horizontally
/// (half-plane) by a random amount in [0.05, 0.5].
pub fn equality_suite(domain: &Domain, trials: u64, seed: u64) -> Result<VerificationReport> {
    let id = match domain {
        Domain::UnitBall { dim: 2 } => "equality-ball",
        Domain::HalfSpace { dim: 2 } => "equality-halfspace",
        _ => {
            return Err(Error::UnsupportedDomain(
                "equality suite runs in B² or H²".into(),
            ))
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new(id, seed, CLOSED_FORM_TOL);
    let mut worst_equal = 0.0f64;
    let mut least_perturbed = f64::INFINITY;
    while t.trials < trials {
        let base = sample_point(domain, false, &mut rng);
        let (x, y) = match domain {
            Domain::UnitBall { .. } => {
                // both on the line through 0 and `base`
                let dir = base.scale(1.0 / base.norm());
                let s: f64 = rng.random_range(-1.0..1.0);
                let u: f64 = rng.random_range(-1.0..1.0);
                (dir.scale(s * 0.999_999), dir.scale(u * 0.999_999))
            }
            _ => {
                let h2 = 2.0 * (1.0 - rng.random::<f64>());
                (base.clone(), Point::xy(base[0], h2))
            }
        };
        if x.dist(&y) < 0.05 {
            continue;
        }
        let delta: f64 = rng.random_range(0.05..0.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        let y_perturbed = match domain {
            Domain::UnitBall { .. } => {
                let (c, s) = (delta.cos(), delta.sin());
                Point::xy(c * y[0] - s * y[1], s * y[0] + c * y[1])
            }
            _ => Point::xy(y[0] + delta, y[1]),
        };
        t.trial();
        let r = residual(domain, &x, &y)?;
        t.check_equal(r);
        worst_equal = worst_equal.max(r);
        let rp = residual(domain, &x, &y_perturbed)?;
        t.check_with(rp - PERTURBED_RESIDUAL, 0.0);
        least_perturbed = least_perturbed.min(rp);
    }
    t.extra("max_equality_residual", worst_equal);
    t.extra("min_perturbed_residual", least_perturbed);
    Ok(t.finish())
}
