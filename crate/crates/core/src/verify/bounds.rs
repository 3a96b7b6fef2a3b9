use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sampling::sample_pair;
use super::{Tracker, VerificationReport, CLOSED_FORM_TOL};
use crate::closed_form::{rho, rho_star, v_closed_form};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// t-values of the sharpness family, decreasing toward the limit.
pub(crate) const SHARPNESS_GRID: [f64; 9] = [0.1, 0.03, 0.01, 3e-3, 1e-3, 7.9e-4, 3e-4, 1e-4, 1e-5];

/// v/ρ* on the ball family x = (1 − t) + it, y = (1 − t) − it.
pub fn ball_sharpness_ratio(t: f64) -> Result<f64> {
    let d = Domain::unit_ball(2)?;
    let x = Point::xy(1.0 - t, t);
    let y = Point::xy(1.0 - t, -t);
    Ok(v_closed_form(&d, &x, &y)?.value / rho_star(&d, &x, &y)?.value)
}

/// ρ* ≤ v ≤ 2ρ* and v ≤ ρ on random pairs of Bⁿ or Hⁿ (n ∈ {2, 3}), plus
/// the limit family showing the constant 2 is sharp.
pub fn suite_bounds(domain: &Domain, trials: u64, seed: u64) -> Result<VerificationReport> {
    let n = domain.dim();
    let id = match domain {
        Domain::UnitBall { .. } => format!("bounds-ball-n{n}"),
        Domain::HalfSpace { .. } => format!("bounds-halfspace-n{n}"),
        d => {
            return Err(Error::UnsupportedDomain(format!(
                "bounds suite needs the ball or half-space, got {}",
                d.name()
            )))
        }
    };
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidParameter(format!("bounds suite needs n ∈ {{2, 3}}, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new(id, seed, CLOSED_FORM_TOL);
    let mut max_ratio = 0.0f64;
    for _ in 0..trials {
        let (x, y) = sample_pair(domain, true, &mut rng);
        let v = v_closed_form(domain, &x, &y)?.value;
        let rs = rho_star(domain, &x, &y)?.value;
        let r = rho(domain, &x, &y)?.value;
        t.trial();
        t.check(v - rs);
        t.check(2.0 * rs - v);
        t.check(r - v);
        if rs > 0.0 {
            max_ratio = max_ratio.max(v / rs);
        }
    }
    t.extra("max_sampled_ratio", max_ratio);

    match domain {
        Domain::UnitBall { .. } => {
            // v = π/2 and sh(ρ/2) = 1/(1 − t) on the family
            let mut last = 0.0;
            for &s in &SHARPNESS_GRID {
                let ratio = ball_sharpness_ratio(s)?;
                let exact = std::f64::consts::FRAC_PI_2 / (1.0 / (1.0 - s)).atan();
                t.check_equal(ratio - exact);
                t.check(2.0 + CLOSED_FORM_TOL - ratio);
                t.check(ratio - last);
                t.row(s, ratio);
                last = ratio;
            }
            let at = ball_sharpness_ratio(1e-4)?;
            t.check(at - (2.0 - 3e-4));
            t.extra("ratio_t_1e-3", ball_sharpness_ratio(1e-3)?);
            t.estimate(last);
        }
        _ => {
            // horizontal pairs realise v = 2ρ* exactly; vertical pairs v = ρ*
            let mut last = 0.0;
            for &s in &SHARPNESS_GRID {
                let (x, y) = (horizontal(n, -s, 1.0), horizontal(n, s, 1.0));
                let ratio = v_closed_form(domain, &x, &y)?.value / rho_star(domain, &x, &y)?.value;
                t.check_equal(ratio - 2.0);
                t.row(s, ratio);
                last = ratio;
            }
            t.estimate(last);
            let (x, y) = (horizontal(n, 0.0, 1.0), horizontal(n, 0.0, 4.0));
            let v = v_closed_form(domain, &x, &y)?.value;
            let rs = rho_star(domain, &x, &y)?.value;
            t.check_equal(v - rs);
            t.check_equal(v - 0.75f64.atan());
        }
    }
    Ok(t.finish())
}

fn horizontal(n: usize, x1: f64, h: f64) -> Point {
    let mut c = vec![0.0; n];
    c[0] = x1;
    c[n - 1] = h;
    Point::from_iter_unchecked(c)
}
