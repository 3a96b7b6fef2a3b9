use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sampling::sample_point;
use super::{Tracker, VerificationReport, SAMPLED_TOL};
use crate::closed_form::{rho_star, v_closed_form};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::sup::{r_ptolemaic, s_triangular, starred, v_double, v_sup, BoundarySampler};

/// Slack allowed in the triangle inequality.
pub const TRIANGLE_SLACK: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleMetric {
    V,
    S,
    R,
    Vbar,
    VStar,
    VbarStar,
    RhoStar,
}

impl TriangleMetric {
    pub const ALL: [TriangleMetric; 7] = [
        TriangleMetric::V,
        TriangleMetric::S,
        TriangleMetric::R,
        TriangleMetric::Vbar,
        TriangleMetric::VStar,
        TriangleMetric::VbarStar,
        TriangleMetric::RhoStar,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TriangleMetric::V => "v",
            TriangleMetric::S => "s",
            TriangleMetric::R => "r",
            TriangleMetric::Vbar => "vbar",
            TriangleMetric::VStar => "v_star",
            TriangleMetric::VbarStar => "vbar_star",
            TriangleMetric::RhoStar => "rho_star",
        }
    }

    fn eval(self, sampler: &BoundarySampler, x: &Point, y: &Point) -> Result<f64> {
        let d = sampler.domain();
        let v = |x: &Point, y: &Point| match d {
            Domain::Generic2D(_) => v_sup(sampler, x, y),
            _ => v_closed_form(d, x, y),
        };
        Ok(match self {
            TriangleMetric::V => v(x, y)?.value,
            TriangleMetric::S => s_triangular(sampler, x, y)?.value,
            TriangleMetric::R => r_ptolemaic(sampler, x, y)?.value,
            TriangleMetric::Vbar => v_double(sampler, x, y)?.value,
            TriangleMetric::VStar => starred(v(x, y)?)?.value,
            TriangleMetric::VbarStar => starred(v_double(sampler, x, y)?)?.value,
            TriangleMetric::RhoStar => rho_star(d, x, y)?.value,
        })
    }
}

impl fmt::Display for TriangleMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TriangleMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TriangleMetric::ALL
            .into_iter()
            .find(|m| m.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown metric `{s}`")))
    }
}

fn sampler_for(domain: &Domain) -> Result<BoundarySampler> {
    BoundarySampler::new(domain.clone())
}

/// d(x, z) ≤ d(x, y) + d(y, z) on random triples of a planar domain, with
/// slack [`TRIANGLE_SLACK`]. ρ* needs B² or H².
pub fn triangle_suite(
    domain: &Domain,
    metric: TriangleMetric,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport> {
    if metric == TriangleMetric::RhoStar
        && !matches!(domain, Domain::UnitBall { .. } | Domain::HalfSpace { .. })
    {
        return Err(Error::UnsupportedDomain(format!(
            "ρ* has no closed form on {}",
            domain.name()
        )));
    }
    let sampler = sampler_for(domain)?;
    let id = format!("triangle-{}-{}", metric.id(), domain.name());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new(id, seed, TRIANGLE_SLACK);
    for _ in 0..trials {
        let x = sample_point(domain, true, &mut rng);
        let y = sample_point(domain, true, &mut rng);
        let z = sample_point(domain, true, &mut rng);
        let dxz = metric.eval(&sampler, &x, &z)?;
        let dxy = metric.eval(&sampler, &x, &y)?;
        let dyz = metric.eval(&sampler, &y, &z)?;
        t.trial();
        t.check(dxy + dyz - dxz);
    }
    Ok(t.finish())
}

/// v* ≤ s and v̄* ≤ r on random pairs, and additionally s ≤ r and v ≤ v̄
/// when ∞ is a boundary point.
pub fn ordering_suite(domain: &Domain, trials: u64, seed: u64) -> Result<VerificationReport> {
    let sampler = sampler_for(domain)?;
    let id = format!("ordering-{}", domain.name());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new(id, seed, SAMPLED_TOL);
    let unbounded = domain.is_unbounded();
    for _ in 0..trials {
        let x = sample_point(domain, true, &mut rng);
        let y = sample_point(domain, true, &mut rng);
        let v = TriangleMetric::V.eval(&sampler, &x, &y)?;
        let s = s_triangular(&sampler, &x, &y)?.value;
        let r = r_ptolemaic(&sampler, &x, &y)?.value;
        let vbar = v_double(&sampler, &x, &y)?.value;
        t.trial();
        t.check(s - (v / 2.0).sin());
        t.check(r - (vbar / 2.0).sin());
        if unbounded {
            t.check(r - s);
            t.check(vbar - v);
        }
    }
    Ok(t.finish())
}
