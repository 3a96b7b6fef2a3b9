//! Domains G ⊊ Rⁿ on which the metrics are evaluated.
//!
//! The canonical domains (unit ball, upper half-space, punctured space) work
//! in every dimension n ≥ 2. Generic domains are planar and described by their
//! boundary: a list of closed polygons, circles and isolated points. The
//! domain is the even-odd region of the closed pieces, or its complement
//! when the region is [`Region::Outside`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Points closer than this to ∂G are rejected as lying on the boundary.
pub const BOUNDARY_EPS: f64 = 1e-12;

pub type Vec2 = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPiece {
    /// Closed polygon, vertices in order (the closing edge is implicit).
    Polygon(Vec<Vec2>),
    Circle { center: Vec2, radius: f64 },
    /// Isolated boundary points (punctures).
    Points(Vec<Vec2>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Points enclosed an odd number of times by the closed pieces.
    Inside,
    /// Complement of `Inside`; the domain is unbounded and ∞ ∈ ∂G.
    Outside,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pieces: Vec<BoundaryPiece>,
    region: Region,
}

impl Boundary {
    pub fn new(pieces: Vec<BoundaryPiece>, region: Region) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidDomain("boundary has no pieces".into()));
        }
        let mut closed = 0;
        for piece in &pieces {
            match piece {
                BoundaryPiece::Polygon(v) => {
                    if v.len() < 3 {
                        return Err(Error::InvalidDomain(
                            "polygon needs at least 3 vertices".into(),
                        ));
                    }
                    check_finite(v)?;
                    if collinear(v) {
                        return Err(Error::InvalidDomain("polygon vertices are collinear".into()));
                    }
                    closed += 1;
                }
                BoundaryPiece::Circle { center, radius } => {
                    check_finite(std::slice::from_ref(center))?;
                    if !(radius.is_finite() && *radius > 0.0) {
                        return Err(Error::InvalidDomain(format!("circle radius {radius}")));
                    }
                    closed += 1;
                }
                BoundaryPiece::Points(v) => {
                    if v.is_empty() {
                        return Err(Error::InvalidDomain("empty point piece".into()));
                    }
                    check_finite(v)?;
                }
            }
        }
        if closed == 0 && region == Region::Inside {
            return Err(Error::InvalidDomain(
                "a bounded region needs at least one closed piece".into(),
            ));
        }
        Ok(Self { pieces, region })
    }

    /// Interior of a single polygon.
    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        Self::new(vec![BoundaryPiece::Polygon(vertices)], Region::Inside)
    }

    /// Interior of a single circle.
    pub fn disk(center: Vec2, radius: f64) -> Result<Self> {
        Self::new(vec![BoundaryPiece::Circle { center, radius }], Region::Inside)
    }

    pub fn pieces(&self) -> &[BoundaryPiece] {
        &self.pieces
    }

    pub fn region(&self) -> Region {
        self.region
    }

    /// True when the finite boundary lies on one line, so that v and s are
    /// only pseudometrics.
    pub fn is_subset_of_line(&self) -> bool {
        let mut pts = Vec::new();
        for piece in &self.pieces {
            match piece {
                BoundaryPiece::Points(v) => pts.extend_from_slice(v),
                _ => return false,
            }
        }
        pts.len() < 3 || collinear(&pts)
    }

    fn parity(&self, p: Vec2) -> bool {
        let mut inside = false;
        for piece in &self.pieces {
            match piece {
                BoundaryPiece::Polygon(v) => inside ^= point_in_polygon(v, p),
                BoundaryPiece::Circle { center, radius } => {
                    inside ^= dist2(p, *center) < *radius
                }
                BoundaryPiece::Points(_) => {}
            }
        }
        inside
    }

    pub fn distance(&self, p: Vec2) -> f64 {
        self.pieces
            .iter()
            .map(|piece| match piece {
                BoundaryPiece::Polygon(v) => edges(v)
                    .map(|(a, b)| segment_distance(a, b, p))
                    .fold(f64::INFINITY, f64::min),
                BoundaryPiece::Circle { center, radius } => (dist2(p, *center) - radius).abs(),
                BoundaryPiece::Points(v) => v
                    .iter()
                    .map(|q| dist2(p, *q))
                    .fold(f64::INFINITY, f64::min),
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Open-set membership (boundary points excluded up to [`BOUNDARY_EPS`]).
    pub fn contains(&self, p: Vec2) -> bool {
        if self.distance(p) <= BOUNDARY_EPS {
            return false;
        }
        self.parity(p) ^ (self.region == Region::Outside)
    }

    /// Whether the closed segment [x, y] meets ∂G.
    pub fn segment_meets(&self, x: Vec2, y: Vec2) -> bool {
        self.pieces.iter().any(|piece| match piece {
            BoundaryPiece::Polygon(v) => edges(v).any(|(a, b)| segments_intersect(a, b, x, y)),
            BoundaryPiece::Circle { center, radius } => {
                let near = segment_distance(x, y, *center);
                let far = dist2(x, *center).max(dist2(y, *center));
                near <= *radius && *radius <= far
            }
            BoundaryPiece::Points(v) => v
                .iter()
                .any(|q| segment_distance(x, y, *q) <= BOUNDARY_EPS * (1.0 + dist2(x, y))),
        })
    }

    /// Axis-aligned bounding box of the finite boundary.
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        let mut add = |p: Vec2, r: f64| {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k] - r);
                hi[k] = hi[k].max(p[k] + r);
            }
        };
        for piece in &self.pieces {
            match piece {
                BoundaryPiece::Polygon(v) | BoundaryPiece::Points(v) => {
                    v.iter().for_each(|p| add(*p, 0.0))
                }
                BoundaryPiece::Circle { center, radius } => add(*center, *radius),
            }
        }
        (lo, hi)
    }
}

/// A domain G ⊊ Rⁿ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// The unit ball Bⁿ.
    UnitBall { dim: usize },
    /// The upper half-space Hⁿ = { x : xₙ > 0 }.
    HalfSpace { dim: usize },
    /// Rⁿ \ {0}.
    PuncturedSpace { dim: usize },
    /// A planar domain described by its boundary.
    Generic2D(Boundary),
}

impl Domain {
    pub fn unit_ball(dim: usize) -> Result<Self> {
        check_dim(dim).map(|dim| Domain::UnitBall { dim })
    }

    pub fn half_space(dim: usize) -> Result<Self> {
        check_dim(dim).map(|dim| Domain::HalfSpace { dim })
    }

    pub fn punctured(dim: usize) -> Result<Self> {
        check_dim(dim).map(|dim| Domain::PuncturedSpace { dim })
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::UnitBall { dim } | Domain::HalfSpace { dim } | Domain::PuncturedSpace { dim } => {
                *dim
            }
            Domain::Generic2D(_) => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::UnitBall { .. } => "ball",
            Domain::HalfSpace { .. } => "halfspace",
            Domain::PuncturedSpace { .. } => "punctured",
            Domain::Generic2D(_) => "generic2d",
        }
    }

    /// Whether ∞ belongs to ∂G (as a subset of R̄ⁿ).
    pub fn is_unbounded(&self) -> bool {
        match self {
            Domain::UnitBall { .. } => false,
            Domain::HalfSpace { .. } | Domain::PuncturedSpace { .. } => true,
            Domain::Generic2D(b) => b.region() == Region::Outside,
        }
    }

    /// Set when v_G and s_G are only pseudometrics on this domain.
    pub fn pseudometric_warning(&self) -> bool {
        match self {
            Domain::PuncturedSpace { .. } => true,
            Domain::Generic2D(b) => b.is_subset_of_line(),
            _ => false,
        }
    }

    /// Euclidean distance d(x, ∂G). Does not check membership.
    pub fn boundary_distance(&self, x: &Point) -> Result<f64> {
        self.check_point_dim(x)?;
        Ok(match self {
            Domain::UnitBall { .. } => 1.0 - x.norm(),
            Domain::HalfSpace { .. } => x.last(),
            Domain::PuncturedSpace { .. } => x.norm(),
            Domain::Generic2D(b) => b.distance([x[0], x[1]]),
        })
    }

    pub fn contains(&self, x: &Point) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        match self {
            Domain::UnitBall { .. } => x.norm() < 1.0,
            Domain::HalfSpace { .. } => x.last() > 0.0,
            Domain::PuncturedSpace { .. } => !x.is_zero(),
            Domain::Generic2D(b) => b.contains([x[0], x[1]]),
        }
    }

    /// Ensures `x` is in G and not within [`BOUNDARY_EPS`] of ∂G.
    pub fn check_interior(&self, x: &Point) -> Result<()> {
        self.check_point_dim(x)?;
        let d = self.boundary_distance(x)?;
        if !self.contains(x) {
            return Err(if d.abs() <= BOUNDARY_EPS {
                Error::OnBoundary
            } else {
                Error::OutsideDomain
            });
        }
        if d <= BOUNDARY_EPS {
            return Err(Error::OnBoundary);
        }
        Ok(())
    }

    fn check_point_dim(&self, x: &Point) -> Result<()> {
        if x.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            })
        }
    }
}

fn check_dim(dim: usize) -> Result<usize> {
    if dim >= 2 {
        Ok(dim)
    } else {
        Err(Error::InvalidDomain(format!("dimension {dim} < 2")))
    }
}

fn check_finite(v: &[Vec2]) -> Result<()> {
    if v.iter().flatten().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidDomain("non-finite boundary coordinate".into()))
    }
}

pub(crate) fn dist2(a: Vec2, b: Vec2) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn cross(o: Vec2, a: Vec2, b: Vec2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn collinear(v: &[Vec2]) -> bool {
    let scale = v
        .iter()
        .flat_map(|p| p.iter())
        .fold(0.0f64, |m, c| m.max(c.abs()))
        .max(1.0);
    let Some(&a) = v.first() else { return true };
    let Some(&b) = v.iter().find(|p| dist2(**p, a) > 1e-12 * scale) else {
        return true;
    };
    v.iter()
        .all(|&p| cross(a, b, p).abs() <= 1e-12 * scale * scale)
}

pub(crate) fn edges(v: &[Vec2]) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
    (0..v.len()).map(move |i| (v[i], v[(i + 1) % v.len()]))
}

fn point_in_polygon(v: &[Vec2], p: Vec2) -> bool {
    let mut inside = false;
    for (a, b) in edges(v) {
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn segment_distance(a: Vec2, b: Vec2, p: Vec2) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    if len2 == 0.0 {
        return dist2(a, p);
    }
    let t = (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0);
    dist2([a[0] + t * ab[0], a[1] + t * ab[1]], p)
}

fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    // touching configurations
    segment_distance(c, d, a) <= BOUNDARY_EPS
        || segment_distance(c, d, b) <= BOUNDARY_EPS
        || segment_distance(a, b, c) <= BOUNDARY_EPS
        || segment_distance(a, b, d) <= BOUNDARY_EPS
}
