use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sampling::sample_pair;
use super::{Tracker, VerificationReport, CLOSED_FORM_TOL};
use crate::closed_form::v_closed_form;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::moebius::MoebiusMap;

/// Image points may leave the target by at most this much (rounding).
const MAP_EXCESS_LIMIT: f64 = 1e-9;

fn excess(domain: &Domain, p: &Point) -> Result<f64> {
    match domain {
        Domain::UnitBall { .. } => Ok(p.norm() - 1.0),
        Domain::HalfSpace { .. } => Ok(-p.last()),
        d => Err(Error::UnsupportedDomain(format!(
            "Lipschitz suite needs the ball or half-space, got {}",
            d.name()
        ))),
    }
}

/// Image of `p`, or `None` when it lands on the target boundary within
/// rounding (such pairs are skipped).
fn image(map: &MoebiusMap, target: &Domain, p: &Point) -> Result<Option<Point>> {
    let q = map.apply_finite(p)?;
    let e = excess(target, &q)?;
    if e > MAP_EXCESS_LIMIT {
        return Err(Error::MapDomainMismatch { excess: e });
    }
    Ok(if e >= 0.0 { None } else { Some(q) })
}

/// The pairs x = it, y = −it used for T_a with a on the first axis.
pub fn t_a_family(grid: &[f64]) -> Vec<(Point, Point)> {
    grid.iter()
        .map(|&t| (Point::xy(0.0, t), Point::xy(0.0, -t)))
        .collect()
}

/// Largest ratio v_target(f x, f y) / v_source(x, y) over random pairs of
/// the source and the given extra pairs. Every ratio must lie in
/// [1/2, 2] (up to rounding) for maps between B² and H².
pub fn lipschitz_ratio(
    map: &MoebiusMap,
    source: &Domain,
    target: &Domain,
    trials: u64,
    seed: u64,
    extra_pairs: &[(Point, Point)],
) -> Result<VerificationReport> {
    excess(source, &Point::origin(source.dim()))?;
    excess(target, &Point::origin(target.dim()))?;
    if source.dim() != map.dim() || target.dim() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            found: source.dim(),
        });
    }
    let id = format!("lipschitz-{}-{}", source.name(), target.name());
    let mut t = Tracker::new(id, seed, CLOSED_FORM_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0.0f64;
    let mut least = f64::INFINITY;
    let mut best_family = 0.0f64;
    let mut skipped = 0u64;

    let random = (0..trials).map(|_| (sample_pair(source, true, &mut rng), false));
    let random: Vec<_> = random.collect();
    let family = extra_pairs.iter().map(|(x, y)| ((x.clone(), y.clone()), true));
    for ((x, y), from_family) in random.into_iter().chain(family) {
        let (Some(fx), Some(fy)) = (image(map, target, &x)?, image(map, target, &y)?) else {
            skipped += 1;
            continue;
        };
        let vs = v_closed_form(source, &x, &y)?.value;
        let vt = v_closed_form(target, &fx, &fy)?.value;
        if vs == 0.0 {
            continue;
        }
        let ratio = vt / vs;
        t.trial();
        t.check(2.0 - ratio);
        t.check(ratio - 0.5);
        best = best.max(ratio);
        least = least.min(ratio);
        if from_family {
            best_family = best_family.max(ratio);
        }
    }
    t.estimate(best);
    if !extra_pairs.is_empty() {
        t.extra("family_estimate", best_family);
    }
    if least.is_finite() {
        t.extra("min_ratio", least);
    }
    t.extra("skipped_pairs", skipped as f64);
    Ok(t.finish())
}

/// The conjectured value (4/π) arctan((1 + |a|)/(1 − |a|)) of the Lipschitz
/// constant of T_a.
pub fn t_a_conjectured(a: f64) -> f64 {
    4.0 / PI * ((1.0 + a) / (1.0 - a)).atan()
}

/// Lipschitz report for T_a on B² with the x = it, y = −it family, plus the
/// gap to the conjectured constant.
pub fn t_a_report(a: f64, trials: u64, seed: u64) -> Result<VerificationReport> {
    let map = MoebiusMap::canonical_t_a(&Point::xy(a, 0.0))?;
    let ball = Domain::unit_ball(2)?;
    let grid = log_grid(1e-7, 1.0 - 1e-7, 400);
    let mut r = lipschitz_ratio(&map, &ball, &ball, trials, seed, &t_a_family(&grid))?;
    let c = t_a_conjectured(a.abs());
    r.extras.insert("conjectured".into(), c);
    r.extras.insert("gap".into(), c - r.estimate.unwrap_or(0.0));
    r.suite_id = "lipschitz-ball".into();
    Ok(r)
}

/// `count` points spaced logarithmically in [lo, hi].
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
