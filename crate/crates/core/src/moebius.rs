//! Möbius transformations of R̄ⁿ as ordered compositions of the two
//! generator types (hyperplane reflections and sphere inversions), the
//! chordal metric, the absolute ratio, the angular characteristic, and the
//! tangent-circle constructions behind the closed forms of v in B² and H².

use crate::error::{Error, Result};
use crate::geometry::{ExtendedPoint, Point};

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// Reflection in the hyperplane P(a, t) = { x : x·a = t } ∪ {∞}.
    HyperplaneReflection { normal: Point, offset: f64 },
    /// Inversion in the sphere S(center, radius).
    SphereInversion { center: Point, radius: f64 },
}

impl Generator {
    pub fn reflection(normal: Point, offset: f64) -> Result<Self> {
        if !(normal.norm() > 0.0) || !offset.is_finite() {
            return Err(Error::InvalidParameter(
                "reflection needs a nonzero normal and finite offset".into(),
            ));
        }
        Ok(Generator::HyperplaneReflection { normal, offset })
    }

    pub fn inversion(center: Point, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!("inversion radius {radius}")));
        }
        Ok(Generator::SphereInversion { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Generator::HyperplaneReflection { normal, .. } => normal.dim(),
            Generator::SphereInversion { center, .. } => center.dim(),
        }
    }

    pub fn apply(&self, x: &ExtendedPoint) -> ExtendedPoint {
        match (self, x) {
            (Generator::HyperplaneReflection { .. }, ExtendedPoint::Infinity) => {
                ExtendedPoint::Infinity
            }
            (Generator::HyperplaneReflection { normal, offset }, ExtendedPoint::Finite(p)) => {
                let k = 2.0 * (p.dot(normal) - offset) / normal.norm_sq();
                ExtendedPoint::Finite(p - &normal.scale(k))
            }
            (Generator::SphereInversion { center, .. }, ExtendedPoint::Infinity) => {
                ExtendedPoint::Finite(center.clone())
            }
            (Generator::SphereInversion { center, radius }, ExtendedPoint::Finite(p)) => {
                if p == center {
                    return ExtendedPoint::Infinity;
                }
                let d = p - center;
                let k = radius * radius / d.norm_sq();
                ExtendedPoint::Finite(center + &d.scale(k))
            }
        }
    }
}

/// A Möbius transformation, stored as generators applied left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusMap {
    dim: usize,
    generators: Vec<Generator>,
}

impl MoebiusMap {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn new(dim: usize, generators: Vec<Generator>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: &MoebiusMap) -> Result<Self> {
        if next.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: next.dim,
            });
        }
        self.generators.extend(next.generators.iter().cloned());
        Ok(self)
    }

    /// Every generator is an involution, so the inverse is the reversed list.
    pub fn inverse(&self) -> Self {
        Self {
            dim: self.dim,
            generators: self.generators.iter().rev().cloned().collect(),
        }
    }

    pub fn apply(&self, x: &ExtendedPoint) -> Result<ExtendedPoint> {
        if let ExtendedPoint::Finite(p) = x {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: p.dim(),
                });
            }
        }
        Ok(self
            .generators
            .iter()
            .fold(x.clone(), |acc, g| g.apply(&acc)))
    }

    /// Image of a finite point that must stay finite.
    pub fn apply_finite(&self, x: &Point) -> Result<Point> {
        match self.apply(&ExtendedPoint::Finite(x.clone()))? {
            ExtendedPoint::Finite(p) => Ok(p),
            ExtendedPoint::Infinity => Err(Error::DegeneratePoints(
                "point is mapped to infinity".into(),
            )),
        }
    }

    /// Translation x ↦ x + v, as two parallel reflections.
    pub fn translation(v: &Point) -> Result<Self> {
        let len = v.norm();
        if len == 0.0 {
            return Ok(Self::identity(v.dim()));
        }
        let u = v.scale(1.0 / len);
        Self::new(
            v.dim(),
            vec![
                Generator::reflection(u.clone(), 0.0)?,
                Generator::reflection(u, len / 2.0)?,
            ],
        )
    }

    /// Dilation x ↦ λx about the origin, as two concentric inversions.
    pub fn dilation(dim: usize, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("dilation factor {lambda}")));
        }
        let o = Point::origin(dim);
        Self::new(
            dim,
            vec![
                Generator::inversion(o.clone(), 1.0)?,
                Generator::inversion(o, lambda.sqrt())?,
            ],
        )
    }

    /// Rotation of the plane by `theta` about the origin, as two reflections
    /// in lines through 0.
    pub fn rotation_2d(theta: f64) -> Result<Self> {
        let half = theta / 2.0;
        Self::new(
            2,
            vec![
                Generator::reflection(Point::xy(0.0, 1.0), 0.0)?,
                Generator::reflection(Point::xy(-half.sin(), half.cos()), 0.0)?,
            ],
        )
    }

    /// The canonical ball automorphism T_a = p_a ∘ σ_a with T_a(a) = 0.
    ///
    /// σ_a is the inversion in S(a*, r), a* = a/|a|², r² = |a|⁻² − 1, which is
    /// orthogonal to the unit sphere; p_a is the reflection in P(a, 0).
    pub fn canonical_t_a(a: &Point) -> Result<Self> {
        let norm_sq = a.norm_sq();
        if !(norm_sq < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "T_a needs |a| < 1, got {}",
                norm_sq.sqrt()
            )));
        }
        if norm_sq == 0.0 {
            return Ok(Self::identity(a.dim()));
        }
        let a_star = a.scale(1.0 / norm_sq);
        let radius = ((1.0 - norm_sq) / norm_sq).sqrt();
        Self::new(
            a.dim(),
            vec![
                Generator::inversion(a_star, radius)?,
                Generator::reflection(a.clone(), 0.0)?,
            ],
        )
    }

    /// The Cayley map f(z) = (z − i)/(z + i) from H² onto B²: inversion in
    /// S(−i, √2) followed by reflection in the line x₁ + x₂ = 0.
    pub fn cayley_half_to_ball() -> Self {
        Self {
            dim: 2,
            generators: vec![
                Generator::SphereInversion {
                    center: Point::xy(0.0, -1.0),
                    radius: std::f64::consts::SQRT_2,
                },
                Generator::HyperplaneReflection {
                    normal: Point::xy(1.0, 1.0),
                    offset: 0.0,
                },
            ],
        }
    }

    /// f(z) = (az + b)/(cz + d) with real coefficients and ad − bc = 1, an
    /// automorphism of H².
    pub fn real_fractional(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("ad − bc = {det}, expected 1")));
        }
        if c == 0.0 {
            // f(z) = a²z + ab
            return Self::dilation(2, a * a)?.then(&Self::translation(&Point::xy(a * b, 0.0))?);
        }
        // f(z) = a/c − 1/(c²(z + d/c)): inversion in S(−d/c, 1/|c|), then
        // reflection in the vertical line x₁ = (a − d)/(2c).
        Self::new(
            2,
            vec![
                Generator::inversion(Point::xy(-d / c, 0.0), 1.0 / c.abs())?,
                Generator::reflection(Point::xy(1.0, 0.0), (a - d) / (2.0 * c))?,
            ],
        )
    }
}

/// Chordal distance on R̄ⁿ.
pub fn chordal(x: &ExtendedPoint, y: &ExtendedPoint) -> f64 {
    match (x, y) {
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => 0.0,
        (ExtendedPoint::Finite(p), ExtendedPoint::Infinity)
        | (ExtendedPoint::Infinity, ExtendedPoint::Finite(p)) => 1.0 / (1.0 + p.norm_sq()).sqrt(),
        (ExtendedPoint::Finite(p), ExtendedPoint::Finite(q)) => {
            p.dist(q) / ((1.0 + p.norm_sq()).sqrt() * (1.0 + q.norm_sq()).sqrt())
        }
    }
}

/// The absolute ratio |a, b, c, d| = q(a,c) q(b,d) / (q(a,b) q(c,d)).
pub fn absolute_ratio(
    a: &ExtendedPoint,
    b: &ExtendedPoint,
    c: &ExtendedPoint,
    d: &ExtendedPoint,
) -> Result<f64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegeneratePoints(
                    "absolute ratio needs four distinct points".into(),
                ));
            }
        }
    }
    Ok(chordal(a, c) * chordal(b, d) / (chordal(a, b) * chordal(c, d)))
}

/// The angular characteristic
/// σ(a, b, c, d) = |a − c||b − d| / (|a − b||c − d| + |a − d||b − c|),
/// evaluated with chordal distances so that a point at ∞ cancels.
pub fn angular_characteristic(
    a: &ExtendedPoint,
    b: &ExtendedPoint,
    c: &ExtendedPoint,
    d: &ExtendedPoint,
) -> Result<f64> {
    let den = chordal(a, b) * chordal(c, d) + chordal(a, d) * chordal(b, c);
    if !(den > 0.0) {
        return Err(Error::DegeneratePoints(
            "angular characteristic has zero denominator".into(),
        ));
    }
    Ok(chordal(a, c) * chordal(b, d) / den)
}

/// A circle through two points that is tangent to the domain boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCircle {
    pub center: Point,
    pub radius: f64,
    pub tangency: Point,
}

fn planar_pair(x: &Point, y: &Point) -> Result<([f64; 2], [f64; 2])> {
    if x.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.dim(),
        });
    }
    x.check_dim(y)?;
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    Ok(([x[0], x[1]], [y[0], y[1]]))
}

/// The circle through x, y ∈ B² internally tangent to S¹ whose tangency point
/// sees [x, y] under the angle v_{B²}(x, y).
///
/// Its center z lies on E_x ∩ E_y, E_x = { z : |x − z| + |z| = 1 }; both
/// ellipses contain z, so |z − x| = |z − y| and z is on the perpendicular
/// bisector z(t) = m + t·u of [x, y]. With h = |x − y|/2, p = m·u and
/// K = 1 + |m|² − h², the condition |x − z(t)| = 1 − |z(t)| squares to
/// 2|z(t)| = K + 2tp and then to the quadratic
/// 4(1 − p²)t² + 4p(2 − K)t + 4|m|² − K² = 0.
/// Of the two intersection points the one with the larger norm is used.
pub fn tangent_circle_ball(x: &Point, y: &Point) -> Result<TangentCircle> {
    let (xv, yv) = planar_pair(x, y)?;
    if !(x.norm() < 1.0 && y.norm() < 1.0) {
        return Err(Error::OutsideDomain);
    }
    let [z, _] = ball_center_candidates(xv, yv);
    let center = Point::xy(z[0], z[1]);
    let radius = 1.0 - center.norm();
    let tangency = if center.norm() > 0.0 {
        center.scale(1.0 / center.norm())
    } else {
        // |center| = 0 only in the limit where the circle is S¹ itself;
        // use the direction perpendicular to x − y.
        let d = [yv[0] - xv[0], yv[1] - xv[1]];
        let l = d[0].hypot(d[1]);
        Point::xy(-d[1] / l, d[0] / l)
    };
    Ok(TangentCircle {
        center,
        radius,
        tangency,
    })
}

/// Both centers on E_x ∩ E_y, ordered: larger norm first (ties broken by the
/// larger second, then first, coordinate).
pub(crate) fn ball_center_candidates(x: [f64; 2], y: [f64; 2]) -> [[f64; 2]; 2] {
    let m = [(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0];
    let d = [y[0] - x[0], y[1] - x[1]];
    let len = d[0].hypot(d[1]);
    let u = [-d[1] / len, d[0] / len];
    let h = len / 2.0;
    let m2 = m[0] * m[0] + m[1] * m[1];
    let p = m[0] * u[0] + m[1] * u[1];
    // (1 - h)(1 + h) + |m|², avoiding cancellation when h is small
    let k = (1.0 - h) * (1.0 + h) + m2;
    let qa = 4.0 * (1.0 - p) * (1.0 + p);
    let qb = 4.0 * p * (2.0 - k);
    // 4|m|² − K² = (2|m| − K)(2|m| + K)
    let mn = m2.sqrt();
    let qc = (2.0 * mn - k) * (2.0 * mn + k);
    let disc = (qb * qb - 4.0 * qa * qc).max(0.0).sqrt();
    // stable quadratic roots
    let q = -0.5 * (qb + qb.signum() * disc);
    let (t1, t2) = if q != 0.0 {
        (q / qa, qc / q)
    } else {
        let t = (disc / (2.0 * qa)).max(0.0);
        (t, -t)
    };
    let z1 = [m[0] + t1 * u[0], m[1] + t1 * u[1]];
    let z2 = [m[0] + t2 * u[0], m[1] + t2 * u[1]];
    let n1 = z1[0].hypot(z1[1]);
    let n2 = z2[0].hypot(z2[1]);
    let first_wins = if n1 != n2 {
        n1 > n2
    } else if z1[1] != z2[1] {
        z1[1] > z2[1]
    } else {
        z1[0] >= z2[0]
    };
    if first_wins {
        [z1, z2]
    } else {
        [z2, z1]
    }
}

/// The circles through x, y ∈ H² tangent to ∂H²: two when x₂ ≠ y₂, one
/// (centered above the midpoint) when x₂ = y₂.
pub fn tangent_circle_half(x: &Point, y: &Point) -> Result<Vec<TangentCircle>> {
    let ([x1, x2], [y1, y2]) = planar_pair(x, y)?;
    if !(x2 > 0.0 && y2 > 0.0) {
        return Err(Error::OutsideDomain);
    }
    let circle = |cx: f64, cy: f64| TangentCircle {
        center: Point::xy(cx, cy),
        radius: cy,
        tangency: Point::xy(cx, 0.0),
    };
    if x2 == y2 {
        let w1 = (x1 + y1) / 2.0;
        let w2 = (4.0 * x2 * x2 + (x1 - y1).powi(2)) / (8.0 * x2);
        return Ok(vec![circle(w1, w2)]);
    }
    // Tangency abscissae c± = (b ± √(x₂y₂)|x − y|)/(y₂ − x₂) are the roots
    // of (y₂ − x₂)c² − 2bc + k = 0; the smaller one comes from c₊c₋ = k/(y₂ − x₂)
    // so that nearly equal heights do not cancel.
    let dist = (x1 - y1).hypot(x2 - y2);
    let sq = (x2 * y2).sqrt() * dist;
    let dh = y2 - x2;
    let b = x1 * y2 - x2 * y1;
    let k = y2 * x1 * x1 - x2 * y1 * y1 + x2 * y2 * (x2 - y2);
    let (c_plus, c_minus) = if b >= 0.0 {
        ((b + sq) / dh, k / (b + sq))
    } else {
        (k / (b - sq), (b - sq) / dh)
    };
    let radius = |c: f64| ((x1 - c) * (x1 - c) + x2 * x2) / (2.0 * x2);
    Ok(vec![
        circle(c_plus, radius(c_plus)),
        circle(c_minus, radius(c_minus)),
    ])
}
