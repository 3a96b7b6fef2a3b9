//! Closed-form metrics in the canonical domains.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::geometry::{acos_checked, angle_at_points, vector_angle, Point};
use crate::moebius::tangent_circle_ball;

/// Slack allowed on the range check of a [`MetricValue`] before rounding is
/// treated as an error.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    V,
    Vbar,
    S,
    R,
    J,
    K,
    Rho,
    RhoStar,
    VStar,
    VbarStar,
}

impl MetricKind {
    pub const ALL: [MetricKind; 10] = [
        MetricKind::V,
        MetricKind::Vbar,
        MetricKind::S,
        MetricKind::R,
        MetricKind::J,
        MetricKind::K,
        MetricKind::Rho,
        MetricKind::RhoStar,
        MetricKind::VStar,
        MetricKind::VbarStar,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MetricKind::V => "v",
            MetricKind::Vbar => "vbar",
            MetricKind::S => "s",
            MetricKind::R => "r",
            MetricKind::J => "j",
            MetricKind::K => "k",
            MetricKind::Rho => "rho",
            MetricKind::RhoStar => "rho_star",
            MetricKind::VStar => "v_star",
            MetricKind::VbarStar => "vbar_star",
        }
    }

    /// Largest value the metric can take.
    pub fn upper_bound(self) -> f64 {
        match self {
            MetricKind::V | MetricKind::Vbar => PI,
            MetricKind::S | MetricKind::R | MetricKind::VStar | MetricKind::VbarStar => 1.0,
            MetricKind::RhoStar => FRAC_PI_2,
            MetricKind::J | MetricKind::K | MetricKind::Rho => f64::INFINITY,
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown metric `{s}`")))
    }
}

/// A metric value tagged with its kind; always inside the kind's range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricValue {
    pub kind: MetricKind,
    pub value: f64,
}

impl MetricValue {
    /// Checks the range; values within rounding of an endpoint are clamped.
    pub fn new(kind: MetricKind, value: f64) -> Result<Self> {
        let hi = kind.upper_bound();
        if value.is_nan() || value < -RANGE_SLACK || value > hi + RANGE_SLACK {
            return Err(Error::Inconsistent(format!(
                "{kind} value {value} outside [0, {hi}]"
            )));
        }
        Ok(Self {
            kind,
            value: value.clamp(0.0, hi),
        })
    }

    pub fn value(self) -> f64 {
        self.value
    }
}

fn pair_dim(x: &Point, y: &Point) -> Result<()> {
    x.check_dim(y)
}

fn check_ball(x: &Point) -> Result<()> {
    if x.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDomain)
    }
}

fn check_half(x: &Point) -> Result<()> {
    if x.last() > 0.0 {
        Ok(())
    } else {
        Err(Error::OutsideDomain)
    }
}

fn check_punctured(x: &Point) -> Result<()> {
    if x.is_zero() {
        Err(Error::OutsideDomain)
    } else {
        Ok(())
    }
}

/// sinh(ρ_{Bⁿ}(x, y)/2) = |x − y| / √((1 − |x|²)(1 − |y|²)).
pub fn sinh_half_rho_ball(x: &Point, y: &Point) -> Result<f64> {
    pair_dim(x, y)?;
    check_ball(x)?;
    check_ball(y)?;
    let (nx, ny) = (x.norm(), y.norm());
    let den = ((1.0 - nx) * (1.0 + nx) * (1.0 - ny) * (1.0 + ny)).sqrt();
    Ok(x.dist(y) / den)
}

/// sinh(ρ_{Hⁿ}(x, y)/2) = |x − y| / (2√(xₙ yₙ)).
pub fn sinh_half_rho_half(x: &Point, y: &Point) -> Result<f64> {
    pair_dim(x, y)?;
    check_half(x)?;
    check_half(y)?;
    Ok(x.dist(y) / (2.0 * (x.last() * y.last()).sqrt()))
}

pub fn rho_ball(x: &Point, y: &Point) -> Result<MetricValue> {
    MetricValue::new(MetricKind::Rho, 2.0 * sinh_half_rho_ball(x, y)?.asinh())
}

pub fn rho_half(x: &Point, y: &Point) -> Result<MetricValue> {
    MetricValue::new(MetricKind::Rho, 2.0 * sinh_half_rho_half(x, y)?.asinh())
}

fn sinh_half_rho(domain: &Domain, x: &Point, y: &Point) -> Result<f64> {
    check_domain_dim(domain, x)?;
    match domain {
        Domain::UnitBall { .. } => sinh_half_rho_ball(x, y),
        Domain::HalfSpace { .. } => sinh_half_rho_half(x, y),
        d => Err(Error::UnsupportedDomain(format!(
            "hyperbolic metric is not defined on {}",
            d.name()
        ))),
    }
}

/// The hyperbolic metric of Bⁿ or Hⁿ.
pub fn rho(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    MetricValue::new(MetricKind::Rho, 2.0 * sinh_half_rho(domain, x, y)?.asinh())
}

/// ρ* = arctan(sinh(ρ/2)).
pub fn rho_star(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    MetricValue::new(MetricKind::RhoStar, sinh_half_rho(domain, x, y)?.atan())
}

fn check_domain_dim(domain: &Domain, x: &Point) -> Result<()> {
    if x.dim() == domain.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: domain.dim(),
            found: x.dim(),
        })
    }
}

/// The distance ratio metric log(1 + |x − y| / min{d(x, ∂G), d(y, ∂G)}).
pub fn j_metric(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    pair_dim(x, y)?;
    for p in [x, y] {
        check_domain_dim(domain, p)?;
        if !domain.contains(p) {
            return Err(Error::OutsideDomain);
        }
    }
    if x == y {
        return MetricValue::new(MetricKind::J, 0.0);
    }
    let d = domain.boundary_distance(x)?.min(domain.boundary_distance(y)?);
    if !(d > 0.0) {
        return Err(Error::OnBoundary);
    }
    MetricValue::new(MetricKind::J, (x.dist(y) / d).ln_1p())
}

/// v in Rⁿ \ {0}: the angle ∠(x, 0, y).
pub fn v_punctured(x: &Point, y: &Point) -> Result<MetricValue> {
    pair_dim(x, y)?;
    check_punctured(x)?;
    check_punctured(y)?;
    MetricValue::new(MetricKind::V, vector_angle(x.coords(), y.coords()))
}

/// The quasihyperbolic metric of Rⁿ \ {0}, √(∠(x, 0, y)² + log²(|y|/|x|)).
pub fn k_punctured(x: &Point, y: &Point) -> Result<MetricValue> {
    let angle = v_punctured(x, y)?.value;
    let log_ratio = (y.norm() / x.norm()).ln();
    MetricValue::new(MetricKind::K, angle.hypot(log_ratio))
}

/// k_G, available only for the punctured space.
pub fn k_metric(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    match domain {
        Domain::PuncturedSpace { .. } => {
            check_domain_dim(domain, x)?;
            k_punctured(x, y)
        }
        d => Err(Error::UnsupportedDomain(format!(
            "no closed form for k on {}",
            d.name()
        ))),
    }
}

/// Coordinates of x and y in an orthonormal frame of a 2-plane through 0, x
/// and y, with x on the first axis.
pub(crate) fn planar_reduction(x: &Point, y: &Point) -> ([f64; 2], [f64; 2]) {
    let nx = x.norm();
    if nx == 0.0 {
        return ([0.0, 0.0], [y.norm(), 0.0]);
    }
    let e = x.scale(1.0 / nx);
    let along = y.dot(&e);
    let perp = (y - &e.scale(along)).norm();
    ([nx, 0.0], [along, perp])
}

/// The visual angle metric of Bⁿ.
pub fn v_ball(x: &Point, y: &Point) -> Result<MetricValue> {
    pair_dim(x, y)?;
    check_ball(x)?;
    check_ball(y)?;
    MetricValue::new(MetricKind::V, v_ball_unchecked(x, y)?)
}

fn v_ball_unchecked(x: &Point, y: &Point) -> Result<f64> {
    if x == y {
        return Ok(0.0);
    }
    if x.is_zero() {
        return Ok(y.norm().asin());
    }
    if y.is_zero() {
        return Ok(x.norm().asin());
    }
    let (nx, ny) = (x.norm(), y.norm());
    if nx == ny {
        // θ = ½∠(x, 0, y); v = 2 arctan(|x| sin θ / (1 − |x| cos θ))
        let theta = 0.5 * vector_angle(x.coords(), y.coords());
        return Ok(2.0 * (nx * theta.sin()).atan2(1.0 - nx * theta.cos()));
    }
    let (xp, yp) = if x.dim() == 2 {
        (x.clone(), y.clone())
    } else {
        let (a, b) = planar_reduction(x, y);
        (Point::xy(a[0], a[1]), Point::xy(b[0], b[1]))
    };
    let circle = tangent_circle_ball(&xp, &yp)?;
    Ok(angle_at_points(&xp, &circle.tangency, &yp)?.radians())
}

/// The visual angle metric of Hⁿ, via the half-angle form
/// tan(v/2) = (|x − y| + |x̂ − ŷ|) / (√xₙ + √yₙ)², where x̂, ŷ drop the
/// last coordinate.
pub fn v_half(x: &Point, y: &Point) -> Result<MetricValue> {
    pair_dim(x, y)?;
    check_half(x)?;
    check_half(y)?;
    if x == y {
        return MetricValue::new(MetricKind::V, 0.0);
    }
    let n = x.dim();
    let horizontal = x.coords()[..n - 1]
        .iter()
        .zip(&y.coords()[..n - 1])
        .fold(0.0f64, |acc, (a, b)| acc.hypot(a - b));
    let s = x.last().sqrt() + y.last().sqrt();
    MetricValue::new(MetricKind::V, 2.0 * ((x.dist(y) + horizontal) / (s * s)).atan())
}

/// The branch formula for v_{H²}, after normalising labels so that
/// x₁ ≤ y₁ and x₂ ≤ y₂ (swap and horizontal reflection preserve v).
pub fn v_half_branch_formula(x: &Point, y: &Point) -> Result<MetricValue> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    pair_dim(x, y)?;
    check_half(x)?;
    check_half(y)?;
    if x == y {
        return MetricValue::new(MetricKind::V, 0.0);
    }
    let (mut a, mut b) = ((x[0], x[1]), (y[0], y[1]));
    if a.1 > b.1 {
        std::mem::swap(&mut a, &mut b);
    }
    if a.0 > b.0 {
        a.0 = -a.0;
        b.0 = -b.0;
    }
    let ((x1, x2), (y1, y2)) = (a, b);
    let arg = if x2 == y2 {
        let d2 = (x1 - y1) * (x1 - y1);
        (4.0 * x2 * x2 - d2) / (4.0 * x2 * x2 + d2)
    } else {
        let dist = (x1 - y1).hypot(x2 - y2);
        let g = 2.0 * (x2 * y2).sqrt();
        (g * dist + (x1 - y1) * (x2 + y2)) / ((x2 + y2) * dist + g * (x1 - y1))
    };
    MetricValue::new(MetricKind::V, acos_checked(arg)?)
}

/// v in a canonical domain.
pub fn v_closed_form(domain: &Domain, x: &Point, y: &Point) -> Result<MetricValue> {
    check_domain_dim(domain, x)?;
    match domain {
        Domain::UnitBall { .. } => v_ball(x, y),
        Domain::HalfSpace { .. } => v_half(x, y),
        Domain::PuncturedSpace { .. } => v_punctured(x, y),
        Domain::Generic2D(_) => Err(Error::UnsupportedDomain(
            "no closed form for v on a generic domain".into(),
        )),
    }
}

/// Upper bound 2 arctan(|x − y|(2 − |x − y|) / (2√((1 − |x|²)(1 − |y|²))))
/// for v in the ball.
pub fn v_ball_upper_bound(x: &Point, y: &Point) -> Result<f64> {
    let t = x.dist(y);
    let s = sinh_half_rho_ball(x, y)?;
    // |x − y| / √(…) = s, so the argument is s (2 − t) / 2
    Ok(2.0 * (s * (2.0 - t) / 2.0).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point {
        Point::xy(x, y)
    }

    /// max over a fine grid of boundary parameters of ∠(x, w, y), refined by
    /// ternary search around the best grid point.
    fn oracle_1d(x: &Point, y: &Point, w: impl Fn(f64) -> Point, lo: f64, hi: f64) -> f64 {
        let f = |s: f64| angle_at_points(x, &w(s), y).unwrap().radians();
        let n = 200_000;
        let h = (hi - lo) / n as f64;
        let best = (0..=n)
            .map(|i| lo + i as f64 * h)
            .max_by(|a, b| f(*a).total_cmp(&f(*b)))
            .unwrap();
        let (mut a, mut b) = ((best - h).max(lo), (best + h).min(hi));
        for _ in 0..200 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if f(m1) < f(m2) {
                a = m1;
            } else {
                b = m2;
            }
        }
        f(0.5 * (a + b))
    }

    fn ball_oracle(x: &Point, y: &Point) -> f64 {
        oracle_1d(x, y, |s| p(s.cos(), s.sin()), 0.0, 2.0 * PI)
    }

    fn half_oracle(x: &Point, y: &Point) -> f64 {
        let c = 0.5 * (x[0] + y[0]);
        let l = x[1].max(y[1]).max(x.dist(y));
        oracle_1d(
            x,
            y,
            |s| p(c + l * (PI * (s - 0.5)).tan(), 0.0),
            1e-9,
            1.0 - 1e-9,
        )
    }

    #[test]
    fn metric_kind_ids_round_trip() {
        for k in MetricKind::ALL {
            assert_eq!(k.id().parse::<MetricKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{}\"", k.id()));
        }
        assert!("w".parse::<MetricKind>().is_err());
    }

    #[test]
    fn metric_value_range() {
        assert!(MetricValue::new(MetricKind::V, PI + 1e-14).is_ok());
        assert_eq!(MetricValue::new(MetricKind::V, PI + 1e-14).unwrap().value, PI);
        assert!(MetricValue::new(MetricKind::S, 1.1).is_err());
        assert!(MetricValue::new(MetricKind::Rho, -0.1).is_err());
        assert!(MetricValue::new(MetricKind::J, f64::NAN).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_abs_diff_eq!(rho_ball(&p(0.0, 0.0), &p(0.5, 0.0)).unwrap().value, 3f64.ln(), epsilon = 1e-15);
        assert_eq!(rho_ball(&p(0.2, 0.1), &p(0.2, 0.1)).unwrap().value, 0.0);
        assert_abs_diff_eq!(
            rho_ball(&p(0.3, 0.0), &p(0.0, 0.3)).unwrap().value,
            2.0 * (0.3 * 2f64.sqrt() / 0.91).asinh(),
            epsilon = 1e-15
        );
        assert_eq!(rho_ball(&p(1.0, 0.0), &p(0.0, 0.0)), Err(Error::OutsideDomain));
        assert_abs_diff_eq!(rho_half(&p(0.0, 1.0), &p(0.0, 2.0)).unwrap().value, 2f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(rho_half(&p(0.0, 1.0), &p(1.0, 2.0)).unwrap().value, 1.5f64.acosh(), epsilon = 1e-15);
        assert_eq!(rho_half(&p(0.0, 0.0), &p(0.0, 1.0)), Err(Error::OutsideDomain));
    }

    #[test]
    fn rho_star_examples() {
        let ball = Domain::unit_ball(2).unwrap();
        let half = Domain::half_space(2).unwrap();
        assert_abs_diff_eq!(rho_star(&ball, &p(0.0, 0.0), &p(0.5, 0.0)).unwrap().value, PI / 6.0, epsilon = 1e-15);
        assert_eq!(rho_star(&ball, &p(0.1, 0.0), &p(0.1, 0.0)).unwrap().value, 0.0);
        assert_abs_diff_eq!(rho_star(&half, &p(0.0, 1.0), &p(1.0, 2.0)).unwrap().value, 0.5f64.atan(), epsilon = 1e-15);
        assert!(matches!(
            rho_star(&Domain::punctured(2).unwrap(), &p(1.0, 0.0), &p(0.0, 1.0)),
            Err(Error::UnsupportedDomain(_))
        ));
    }

    #[test]
    fn j_examples() {
        let ball = Domain::unit_ball(2).unwrap();
        assert_abs_diff_eq!(j_metric(&ball, &p(0.0, 0.0), &p(0.5, 0.0)).unwrap().value, 2f64.ln(), epsilon = 1e-15);
        assert_eq!(j_metric(&ball, &p(0.3, 0.0), &p(0.3, 0.0)).unwrap().value, 0.0);
        let punct = Domain::punctured(2).unwrap();
        assert_abs_diff_eq!(j_metric(&punct, &p(1.0, 0.0), &p(-1.0, 0.0)).unwrap().value, 3f64.ln(), epsilon = 1e-15);
        assert_eq!(j_metric(&ball, &p(2.0, 0.0), &p(0.0, 0.0)), Err(Error::OutsideDomain));
    }

    #[test]
    fn punctured_examples() {
        assert_abs_diff_eq!(v_punctured(&p(1.0, 0.0), &p(0.0, 1.0)).unwrap().value, FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(v_punctured(&p(1.0, 0.0), &p(2.0, 0.0)).unwrap().value, 0.0);
        assert_abs_diff_eq!(v_punctured(&p(1.0, 0.0), &p(-1.0, 0.0)).unwrap().value, PI, epsilon = 1e-15);
        let e = std::f64::consts::E;
        assert_abs_diff_eq!(k_punctured(&p(1.0, 0.0), &p(e, 0.0)).unwrap().value, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(k_punctured(&p(1.0, 0.0), &p(-1.0, 0.0)).unwrap().value, PI, epsilon = 1e-15);
        assert_abs_diff_eq!(
            k_punctured(&p(1.0, 0.0), &p(0.0, e)).unwrap().value,
            (PI * PI / 4.0 + 1.0).sqrt(),
            epsilon = 1e-15
        );
        assert_eq!(v_punctured(&p(0.0, 0.0), &p(1.0, 0.0)), Err(Error::OutsideDomain));
        assert!(matches!(
            k_metric(&Domain::unit_ball(2).unwrap(), &p(0.1, 0.0), &p(0.2, 0.0)),
            Err(Error::UnsupportedDomain(_))
        ));
    }

    /// Quasihyperbolic length of the logarithmic spiral from e₁ to e·e₂,
    /// integrated numerically: the geodesic in R² \ {0}.
    #[test]
    fn k_punctured_matches_spiral_length() {
        let (angle, log_ratio) = (FRAC_PI_2, 1.0f64);
        let n = 2000;
        let path = |s: f64| {
            let r = (log_ratio * s).exp();
            p(r * (angle * s).cos(), r * (angle * s).sin())
        };
        let mut len = 0.0;
        for i in 0..n {
            let (a, b) = (path(i as f64 / n as f64), path((i + 1) as f64 / n as f64));
            let mid = path((i as f64 + 0.5) / n as f64);
            len += a.dist(&b) / mid.norm();
        }
        let k = k_punctured(&p(1.0, 0.0), &p(0.0, std::f64::consts::E)).unwrap().value;
        assert_abs_diff_eq!(len, k, epsilon = 1e-5);
    }

    #[test]
    fn v_ball_examples() {
        let v = v_ball(&p(0.0, 0.0), &p(0.5, 0.0)).unwrap().value;
        assert_abs_diff_eq!(v, PI / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ball_oracle(&p(0.0, 0.0), &p(0.5, 0.0)), v, epsilon = 1e-9);

        let (x, y) = (p(0.5, 0.0), p(0.0, 0.5));
        let v = v_ball(&x, &y).unwrap().value;
        assert_abs_diff_eq!(v, 1.000_948_073_550_772, epsilon = 1e-12);
        assert_abs_diff_eq!(ball_oracle(&x, &y), v, epsilon = 1e-6);

        let (x, y) = (p(0.5, 0.0), p(-0.5, 0.0));
        let v = v_ball(&x, &y).unwrap().value;
        assert_abs_diff_eq!(v, 2.0 * 0.5f64.atan(), epsilon = 1e-15);
        assert_abs_diff_eq!(v.tan(), 4.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.tan(), sinh_half_rho_ball(&x, &y).unwrap(), epsilon = 1e-12);

        assert_eq!(v_ball(&p(1.0, 0.0), &p(0.0, 0.0)), Err(Error::OutsideDomain));
        assert_eq!(v_ball(&x, &x).unwrap().value, 0.0);
    }

    #[test]
    fn v_ball_general_path_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let x = p(rng.random::<f64>() * 1.2 - 0.6, rng.random::<f64>() * 1.2 - 0.6);
            let y = p(rng.random::<f64>() * 1.2 - 0.6, rng.random::<f64>() * 1.2 - 0.6);
            let v = v_ball(&x, &y).unwrap().value;
            assert_abs_diff_eq!(ball_oracle(&x, &y), v, epsilon = 1e-9);
        }
    }

    #[test]
    fn v_ball_three_dim_matches_sphere_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = Point::new(&[rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5]).unwrap();
            let y = Point::new(&[rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5]).unwrap();
            let v = v_ball(&x, &y).unwrap().value;
            // coarse sphere grid, then it can only under-estimate
            let mut best = 0.0f64;
            let m = 400;
            for i in 0..=m {
                let th = PI * i as f64 / m as f64;
                for j in 0..2 * m {
                    let ph = PI * j as f64 / m as f64;
                    let w = Point::new(&[th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]).unwrap();
                    best = best.max(angle_at_points(&x, &w, &y).unwrap().radians());
                }
            }
            assert!(best <= v + 1e-12, "sampled {best} > closed form {v}");
            assert!(v - best < 1e-4, "sampled {best}, closed form {v}");
        }
    }

    #[test]
    fn v_ball_equal_norm_fast_path_matches_general() {
        let c = tangent_circle_ball(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap();
        let general = angle_at_points(&p(0.5, 0.0), &c.tangency, &p(0.0, 0.5)).unwrap().radians();
        assert_abs_diff_eq!(general, v_ball(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap().value, epsilon = 1e-12);
    }

    #[test]
    fn v_half_examples() {
        let check = |x: Point, y: Point, want: f64| {
            let v = v_half(&x, &y).unwrap().value;
            assert_abs_diff_eq!(v, want, epsilon = 1e-15);
            assert_abs_diff_eq!(v_half_branch_formula(&x, &y).unwrap().value, want, epsilon = 1e-12);
            assert_abs_diff_eq!(half_oracle(&x, &y), want, epsilon = 1e-7);
        };
        check(p(-1.0, 1.0), p(1.0, 1.0), FRAC_PI_2);
        check(p(0.0, 1.0), p(0.0, 4.0), 0.8f64.acos());
        check(p(0.0, 1.0), p(1.0, 2.0), PI / 4.0);
        assert_eq!(v_half(&p(0.0, -1.0), &p(0.0, 1.0)), Err(Error::OutsideDomain));
    }

    #[test]
    fn v_half_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10_000 {
            let x = p(rng.random::<f64>() * 4.0 - 2.0, rng.random::<f64>() * 2.0 + 1e-3);
            let y = p(rng.random::<f64>() * 4.0 - 2.0, rng.random::<f64>() * 2.0 + 1e-3);
            let a = v_half(&x, &y).unwrap().value;
            let b = v_half_branch_formula(&x, &y).unwrap().value;
            assert!((a - b).abs() < 1e-7, "{x:?} {y:?}: {a} vs {b}");
        }
    }

    #[test]
    fn v_half_three_dim_reduces_to_vertical_plane() {
        let x = Point::new(&[0.3, -0.2, 1.0]).unwrap();
        let y = Point::new(&[-0.5, 0.4, 0.5]).unwrap();
        let h = (0.8f64).hypot(0.6);
        let planar = v_half(&p(0.0, 1.0), &p(h, 0.5)).unwrap().value;
        assert_abs_diff_eq!(v_half(&x, &y).unwrap().value, planar, epsilon = 1e-15);
    }

    #[test]
    fn upper_bound_corollary_equality() {
        for theta in [0.2f64, 0.5, 0.9, 1.3] {
            let r = 1.0 / (theta.sin() + theta.cos());
            let x = p(r * theta.cos(), r * theta.sin());
            let y = p(r * theta.cos(), -r * theta.sin());
            let v = v_ball(&x, &y).unwrap().value;
            assert_abs_diff_eq!(v, v_ball_upper_bound(&x, &y).unwrap(), epsilon = 1e-9);
        }
    }

    #[test]
    fn v_closed_form_dispatch() {
        let sq = Domain::Generic2D(crate::domain::Boundary::polygon(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap());
        assert!(matches!(
            v_closed_form(&sq, &p(0.1, 0.1), &p(0.2, 0.2)),
            Err(Error::UnsupportedDomain(_))
        ));
        assert!(matches!(
            v_closed_form(&Domain::unit_ball(3).unwrap(), &p(0.1, 0.1), &p(0.2, 0.2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
