//! Points of the extended space R̄ⁿ = Rⁿ ∪ {∞}, angles, and the two envelope
//! families used to describe the visual angle and triangular ratio metrics:
//!
//! * the α-envelope `E(x, y; α) = { w : ∠(x, w, y) ≥ α }`, and
//! * the c-envelope `F(x, y; c) = { z : |x − z| + |y − z| ≤ c }`, a filled
//!   ellipsoid with foci `x` and `y`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Slack allowed when comparing a computed angle against an envelope angle.
pub const ANGLE_EPS: f64 = 1e-12;

/// Largest amount an arccos argument may leave [-1, 1] before it is treated
/// as a bug rather than rounding.
pub const ACOS_CLAMP_LIMIT: f64 = 1e-9;

/// A finite point of Rⁿ, n ≥ 2, with finite coordinates.
#[derive(Clone, PartialEq)]
pub struct Point(SmallVec<[f64; 4]>);

impl Point {
    pub fn new(coords: &[f64]) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidPoint(format!(
                "dimension must be at least 2, got {}",
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate {c}")));
        }
        Ok(Self(SmallVec::from_slice(coords)))
    }

    /// Planar point `(x, y)`. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        Self::new(&[x, y]).expect("finite planar coordinates")
    }

    pub fn origin(dim: usize) -> Self {
        Self(SmallVec::from_elem(0.0, dim.max(2)))
    }

    /// The `i`-th standard basis vector of Rⁿ (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut p = Self::origin(dim);
        p.0[i] = 1.0;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Last coordinate, the height above ∂Hⁿ.
    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        hypot_slice(&self.0)
    }

    pub fn dist(&self, other: &Point) -> f64 {
        let mut acc = SmallVec::<[f64; 4]>::with_capacity(self.dim());
        acc.extend(self.0.iter().zip(&other.0).map(|(a, b)| a - b));
        hypot_slice(&acc)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }

    pub(crate) fn from_iter_unchecked(it: impl IntoIterator<Item = f64>) -> Point {
        Point(it.into_iter().collect())
    }
}

fn hypot_slice(v: &[f64]) -> f64 {
    match v {
        [a, b] => a.hypot(*b),
        _ => {
            let scale = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            if scale == 0.0 {
                return 0.0;
            }
            scale * v.iter().map(|c| (c / scale).powi(2)).sum::<f64>().sqrt()
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Point").field(&&self.0[..]).finish()
    }
}

impl Index<usize> for Point {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        self.scale(s)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        self.scale(-1.0)
    }
}

/// A point of R̄ⁿ. `Infinity` is a distinct variant so that chordal and
/// generator formulas can branch exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedPoint {
    Finite(Point),
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(&self) -> Option<&Point> {
        match self {
            ExtendedPoint::Finite(p) => Some(p),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }
}

impl From<Point> for ExtendedPoint {
    fn from(p: Point) -> Self {
        ExtendedPoint::Finite(p)
    }
}

/// An angle in [0, π].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);
    pub const STRAIGHT: Angle = Angle(PI);

    pub fn new(radians: f64) -> Result<Self> {
        if (0.0..=PI).contains(&radians) {
            Ok(Angle(radians))
        } else {
            Err(Error::InvalidParameter(format!(
                "angle {radians} outside [0, π]"
            )))
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// `arccos` with the argument clamped to [-1, 1]. Arguments further than
/// [`ACOS_CLAMP_LIMIT`] outside the interval are reported as an error.
pub fn acos_checked(arg: f64) -> Result<f64> {
    if arg.is_nan() || arg.abs() > 1.0 + ACOS_CLAMP_LIMIT {
        return Err(Error::Inconsistent(format!("arccos argument {arg}")));
    }
    Ok(arg.clamp(-1.0, 1.0).acos())
}

/// Angle between two nonzero vectors via 2·atan2(|û − v̂|, |û + v̂|), which
/// is exact to rounding over the whole range [0, π].
pub(crate) fn vector_angle(u: &[f64], v: &[f64]) -> f64 {
    let nu = hypot_slice(u);
    let nv = hypot_slice(v);
    let (mut diff, mut sum) = (0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        let (a, b) = (a / nu, b / nv);
        diff += (a - b) * (a - b);
        sum += (a + b) * (a + b);
    }
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Planar specialisation of [`vector_angle`].
#[inline]
pub(crate) fn vector_angle2(u: [f64; 2], v: [f64; 2]) -> f64 {
    let nu = u[0].hypot(u[1]);
    let nv = v[0].hypot(v[1]);
    let (a0, a1) = (u[0] / nu, u[1] / nu);
    let (b0, b1) = (v[0] / nv, v[1] / nv);
    2.0 * (a0 - b0).hypot(a1 - b1).atan2((a0 + b0).hypot(a1 + b1))
}

fn finite3<'a>(
    x: &'a ExtendedPoint,
    z: &'a ExtendedPoint,
    y: &'a ExtendedPoint,
) -> Result<(&'a Point, &'a Point, &'a Point)> {
    match (x, z, y) {
        (ExtendedPoint::Finite(x), ExtendedPoint::Finite(z), ExtendedPoint::Finite(y)) => {
            x.check_dim(z)?;
            x.check_dim(y)?;
            Ok((x, z, y))
        }
        _ => Err(Error::InvalidPoint(
            "angle is only defined for finite points".into(),
        )),
    }
}

/// The angle ∠(x, z, y) at vertex `z`.
pub fn angle_at(x: &ExtendedPoint, z: &ExtendedPoint, y: &ExtendedPoint) -> Result<Angle> {
    let (x, z, y) = finite3(x, z, y)?;
    angle_at_points(x, z, y)
}

pub fn angle_at_points(x: &Point, z: &Point, y: &Point) -> Result<Angle> {
    x.check_dim(z)?;
    x.check_dim(y)?;
    if x == z || y == z {
        return Err(Error::DegenerateVertex);
    }
    if x == y {
        return Ok(Angle::ZERO);
    }
    let u = x - z;
    let v = y - z;
    Ok(Angle(vector_angle(u.coords(), v.coords()).min(PI)))
}

fn distinct_pair<'a>(x: &'a ExtendedPoint, y: &'a ExtendedPoint) -> Result<(&'a Point, &'a Point)> {
    let (Some(x), Some(y)) = (x.finite(), y.finite()) else {
        return Err(Error::InvalidPoint("envelope foci must be finite".into()));
    };
    x.check_dim(y)?;
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    Ok((x, y))
}

/// Membership of `w` in the α-envelope `E(x, y; α) = { w : ∠(x, w, y) ≥ α }`.
/// Points of the open segment (x, y) see the segment under the angle π.
pub fn in_envelope_e(
    x: &ExtendedPoint,
    y: &ExtendedPoint,
    alpha: Angle,
    w: &ExtendedPoint,
) -> Result<bool> {
    let (xp, yp) = distinct_pair(x, y)?;
    if alpha.radians() == 0.0 {
        return Ok(true);
    }
    let Some(wp) = w.finite() else {
        return Ok(false);
    };
    xp.check_dim(wp)?;
    let angle = angle_at_points(xp, wp, yp)?;
    Ok(angle.radians() >= alpha.radians() - ANGLE_EPS)
}

/// Membership of `z` in the c-envelope `F(x, y; c) = { z : |x − z| + |y − z| ≤ c }`.
pub fn in_envelope_f(x: &ExtendedPoint, y: &ExtendedPoint, c: f64, z: &ExtendedPoint) -> Result<bool> {
    let (xp, yp) = distinct_pair(x, y)?;
    let d = xp.dist(yp);
    if !(c >= d * (1.0 - 1e-12)) {
        return Err(Error::InvalidParameter(format!(
            "c = {c} is smaller than |x − y| = {d}"
        )));
    }
    let Some(zp) = z.finite() else {
        return Ok(false);
    };
    xp.check_dim(zp)?;
    Ok(xp.dist(zp) + yp.dist(zp) <= c * (1.0 + 1e-12))
}

/// Randomised check of the inclusion `E(x, y; α) ⊂ F(x, y; |x − y| / sin(α/2))`.
///
/// Half of the probes are uniform in a ball around the midpoint that is large
/// enough to contain points on both sides of ∂F; the other half are placed on
/// ∂E itself (by bisection along rays from the midpoint), where the inclusion
/// is tight. Returns `false` at the first counterexample.
pub fn envelope_inclusion_check<R: Rng + ?Sized>(
    x: &ExtendedPoint,
    y: &ExtendedPoint,
    alpha: Angle,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    let (xp, yp) = distinct_pair(x, y)?;
    let a = alpha.radians();
    if !(a > 0.0 && a < PI) {
        return Err(Error::InvalidParameter(format!(
            "envelope inclusion needs 0 < α < π, got {a}"
        )));
    }
    let n = xp.dim();
    let d = xp.dist(yp);
    let c = d / (a / 2.0).sin();
    let mid = (xp + yp).scale(0.5);
    let cf = |p: &Point| xp.dist(p) + yp.dist(p) <= c * (1.0 + 1e-9);

    for k in 0..samples {
        let dir = random_unit(n, rng);
        let probe = if k % 2 == 0 {
            // uniform radius over a ball of radius c
            let r = c * rng.random::<f64>().powf(1.0 / n as f64);
            &mid + &dir.scale(r)
        } else {
            match envelope_boundary_on_ray(xp, yp, &mid, &dir, a, c) {
                Some(p) => p,
                None => continue,
            }
        };
        if probe == *xp || probe == *yp {
            continue;
        }
        let inside_e = angle_at_points(xp, &probe, yp)?.radians() >= a - ANGLE_EPS;
        if inside_e && !cf(&probe) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outermost point of E(x, y; α) on the ray from the midpoint in direction `dir`.
fn envelope_boundary_on_ray(
    x: &Point,
    y: &Point,
    mid: &Point,
    dir: &Point,
    alpha: f64,
    outer: f64,
) -> Option<Point> {
    let inside = |s: f64| {
        let p = mid + &dir.scale(s);
        if &p == x || &p == y {
            return true;
        }
        angle_at_points(x, &p, y)
            .map(|a| a.radians() >= alpha)
            .unwrap_or(true)
    };
    let (mut lo, mut hi) = (0.0, outer);
    if inside(hi) {
        return None;
    }
    for _ in 0..80 {
        let m = 0.5 * (lo + hi);
        if inside(m) {
            lo = m;
        } else {
            hi = m;
        }
    }
    Some(mid + &dir.scale(lo))
}

pub(crate) fn random_unit<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Point {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let r = hypot_slice(&v);
        if r > 1e-3 && r <= 1.0 {
            return Point::from_iter_unchecked(v.into_iter().map(|c| c / r));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[f64]) -> ExtendedPoint {
        ExtendedPoint::Finite(Point::new(c).unwrap())
    }

    #[test]
    fn angle_examples() {
        let a = angle_at(&p(&[1.0, 0.0]), &p(&[0.0, 0.0]), &p(&[0.0, 1.0])).unwrap();
        assert_abs_diff_eq!(a.radians(), PI / 2.0, epsilon = 1e-15);
        let a = angle_at(&p(&[1.0, 0.0]), &p(&[0.0, 0.0]), &p(&[-1.0, 0.0])).unwrap();
        assert_abs_diff_eq!(a.radians(), PI, epsilon = 1e-15);
        let a = angle_at(&p(&[1.0, 0.0]), &p(&[0.0, 0.0]), &p(&[1.0, 1.0])).unwrap();
        assert_abs_diff_eq!(a.radians(), PI / 4.0, epsilon = 1e-15);
        let a = angle_at(&p(&[1.0, 2.0]), &p(&[0.0, 0.0]), &p(&[1.0, 2.0])).unwrap();
        assert_eq!(a.radians(), 0.0);
    }

    #[test]
    fn angle_errors() {
        let z = p(&[0.0, 0.0]);
        assert_eq!(
            angle_at(&z, &z, &p(&[1.0, 0.0])),
            Err(Error::DegenerateVertex)
        );
        assert!(matches!(
            angle_at(&p(&[1.0, 0.0]), &z, &p(&[0.0, 1.0, 0.0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(angle_at(&p(&[1.0, 0.0]), &z, &ExtendedPoint::Infinity).is_err());
    }

    #[test]
    fn angle_matches_arccos_away_from_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let u = random_unit(3, &mut rng).scale(rng.random::<f64>() + 0.1);
            let v = random_unit(3, &mut rng).scale(rng.random::<f64>() + 0.1);
            let direct = (u.dot(&v) / (u.norm() * v.norm())).clamp(-1.0, 1.0).acos();
            assert_abs_diff_eq!(vector_angle(u.coords(), v.coords()), direct, epsilon = 1e-7);
        }
    }

    #[test]
    fn acos_checked_guards() {
        assert_eq!(acos_checked(1.0 + 1e-12).unwrap(), 0.0);
        assert!(acos_checked(1.0 + 1e-6).is_err());
        assert!(acos_checked(f64::NAN).is_err());
    }

    #[test]
    fn envelope_e_examples() {
        let (x, y) = (p(&[-1.0, 0.0]), p(&[1.0, 0.0]));
        let right = Angle::new(PI / 2.0).unwrap();
        assert!(in_envelope_e(&x, &y, right, &p(&[0.0, 1.0])).unwrap());
        assert!(in_envelope_e(&x, &y, Angle::STRAIGHT, &p(&[0.0, 0.0])).unwrap());
        assert!(!in_envelope_e(&x, &y, right, &p(&[0.0, 2.0])).unwrap());
        // independent check of the last case: 2·arctan(1/2) < π/2
        assert!(2.0 * 0.5f64.atan() < PI / 2.0);
        assert!(in_envelope_e(&x, &y, Angle::ZERO, &p(&[50.0, 9.0])).unwrap());
        assert_eq!(
            in_envelope_e(&x, &y, right, &x),
            Err(Error::DegenerateVertex)
        );
    }

    #[test]
    fn envelope_f_examples() {
        let (x, y) = (p(&[-1.0, 0.0]), p(&[1.0, 0.0]));
        assert!(in_envelope_f(&x, &y, 2.0, &p(&[0.0, 0.0])).unwrap());
        assert!(!in_envelope_f(&x, &y, 2.0, &p(&[0.0, 1.0])).unwrap());
        assert!(in_envelope_f(&x, &y, 4.0, &p(&[0.0, 1.0])).unwrap());
        assert!(matches!(
            in_envelope_f(&x, &y, 1.5, &p(&[0.0, 1.0])),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn envelope_inclusion_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (x, y) = (p(&[-1.0, 0.0]), p(&[1.0, 0.0]));
        let right = Angle::new(PI / 2.0).unwrap();
        assert!(envelope_inclusion_check(&x, &y, right, 10_000, &mut rng).unwrap());
        assert!(envelope_inclusion_check(&x, &y, Angle::new(3.1).unwrap(), 2_000, &mut rng).unwrap());
        let (x, y) = (p(&[0.0, 0.0]), p(&[1.0, 0.0]));
        let third = Angle::new(PI / 3.0).unwrap();
        assert!(envelope_inclusion_check(&x, &y, third, 10_000, &mut rng).unwrap());
        let (x, y) = (p(&[0.0, 0.0, 0.0]), p(&[1.0, 0.5, -0.2]));
        assert!(envelope_inclusion_check(&x, &y, Angle::new(0.4).unwrap(), 5_000, &mut rng).unwrap());
    }

    #[test]
    fn sampled_oracle_finds_tight_envelope_inclusion() {
        // Independent oracle: the tight c for E(x, y; α) is the largest
        // |x − w| + |y − w| over ∂E; on the symmetric axis this is exactly
        // |x − y| / sin(α/2). A smaller c must admit counterexamples.
        let (x, y) = (Point::xy(-1.0, 0.0), Point::xy(1.0, 0.0));
        let alpha = 1.0f64;
        let h = 1.0 / (alpha / 2.0).tan();
        let w = Point::xy(0.0, h);
        let a = angle_at_points(&x, &w, &y).unwrap().radians();
        assert_abs_diff_eq!(a, alpha, epsilon = 1e-12);
        assert_abs_diff_eq!(x.dist(&w) + y.dist(&w), 2.0 / (alpha / 2.0).sin(), epsilon = 1e-12);
    }
}
