//! Boundary-supremum evaluation of v, s, r and v̄ in planar domains.
//!
//! The boundary is split into parametrised curves. A coarse pass evaluates
//! the integrand at evenly spaced parameters; the best seeds (plus the feet
//! of x and y on every curve) are refined by golden-section search in a
//! bracket of one coarse step. Pair metrics search a coarse grid of boundary
//! pairs and refine the best pairs by coordinate ascent.

use std::f64::consts::PI;

use crate::closed_form::{MetricKind, MetricValue};
use crate::domain::{dist2, edges, BoundaryPiece, Domain, Vec2};
use crate::error::{Error, Result};
use crate::geometry::{vector_angle2, Point};

/// Number of refinement seeds.
const SEEDS: usize = 8;
/// Rounds of coordinate ascent for pair metrics.
const ASCENT_ROUNDS: usize = 12;
/// Starts and rounds of the alternating global search for pair metrics.
const GLOBAL_STARTS: usize = 4;
const GLOBAL_ROUNDS: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySampler {
    domain: Domain,
    coarse_count: usize,
    refine_tolerance: f64,
    include_infinity: bool,
}

impl BoundarySampler {
    pub const DEFAULT_COARSE_COUNT: usize = 4096;
    pub const DEFAULT_REFINE_TOLERANCE: f64 = 1e-10;

    /// A sampler for a planar domain. Canonical domains must have n = 2.
    pub fn new(domain: Domain) -> Result<Self> {
        if domain.dim() != 2 {
            return Err(Error::UnsupportedDomain(format!(
                "boundary sampling needs n = 2, got n = {}",
                domain.dim()
            )));
        }
        let include_infinity = domain.is_unbounded();
        Ok(Self {
            domain,
            coarse_count: Self::DEFAULT_COARSE_COUNT,
            refine_tolerance: Self::DEFAULT_REFINE_TOLERANCE,
            include_infinity,
        })
    }

    pub fn with_coarse_count(mut self, coarse_count: usize) -> Result<Self> {
        if coarse_count < 16 {
            return Err(Error::InvalidParameter(format!(
                "coarse_count {coarse_count} < 16"
            )));
        }
        self.coarse_count = coarse_count;
        Ok(self)
    }

    pub fn with_refine_tolerance(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("refine tolerance {tol}")));
        }
        self.refine_tolerance = tol;
        Ok(self)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn coarse_count(&self) -> usize {
        self.coarse_count
    }

    pub fn refine_tolerance(&self) -> f64 {
        self.refine_tolerance
    }

    pub fn include_infinity(&self) -> bool {
        self.include_infinity
    }

    /// v and s are only pseudometrics on this domain.
    pub fn pseudometric_warning(&self) -> bool {
        self.domain.pseudometric_warning()
    }

    /// ∂G lies on a line or a circle, where v̄ may fail to be definite.
    pub fn vbar_pseudometric_warning(&self) -> bool {
        match &self.domain {
            Domain::UnitBall { .. } | Domain::HalfSpace { .. } | Domain::PuncturedSpace { .. } => {
                true
            }
            Domain::Generic2D(b) => {
                b.is_subset_of_line()
                    || matches!(b.pieces(), [BoundaryPiece::Circle { .. }])
            }
        }
    }

    fn check_pair(&self, x: &Point, y: &Point) -> Result<(Vec2, Vec2)> {
        self.domain.check_interior(x)?;
        self.domain.check_interior(y)?;
        Ok(([x[0], x[1]], [y[0], y[1]]))
    }

    fn segment_exits(&self, x: Vec2, y: Vec2) -> bool {
        match &self.domain {
            Domain::Generic2D(b) => b.segment_meets(x, y),
            Domain::PuncturedSpace { .. } => {
                let d = [y[0] - x[0], y[1] - x[1]];
                let cross = x[0] * d[1] - x[1] * d[0];
                let t = -(x[0] * d[0] + x[1] * d[1]);
                cross == 0.0 && t >= 0.0 && t <= d[0] * d[0] + d[1] * d[1]
            }
            _ => false,
        }
    }

    fn curves(&self, x: Vec2, y: Vec2) -> Vec<Curve> {
        match &self.domain {
            Domain::UnitBall { .. } => vec![Curve::Circle {
                c: [0.0, 0.0],
                r: 1.0,
            }],
            Domain::HalfSpace { .. } => {
                let l = x[1].max(y[1]).max(dist2(x, y));
                vec![Curve::Line {
                    c: 0.5 * (x[0] + y[0]),
                    l,
                }]
            }
            Domain::PuncturedSpace { .. } => vec![Curve::Point([0.0, 0.0])],
            Domain::Generic2D(b) => {
                let mut out = Vec::new();
                for piece in b.pieces() {
                    match piece {
                        BoundaryPiece::Polygon(v) => {
                            out.extend(edges(v).map(|(a, b)| Curve::Segment { a, b }))
                        }
                        BoundaryPiece::Circle { center, radius } => out.push(Curve::Circle {
                            c: *center,
                            r: *radius,
                        }),
                        BoundaryPiece::Points(v) => out.extend(v.iter().map(|p| Curve::Point(*p))),
                    }
                }
                out
            }
        }
    }

    /// Coarse samples spread over the curves in proportion to their length.
    fn samples(&self, curves: &[Curve]) -> Vec<Sample> {
        let total: f64 = curves.iter().map(|c| c.length()).filter(|l| l.is_finite()).sum();
        let mut out = Vec::with_capacity(self.coarse_count + curves.len());
        for (idx, curve) in curves.iter().enumerate() {
            let n = match curve {
                Curve::Point(_) => {
                    out.push(Sample::new(curves, idx, 0.0, 0.0));
                    continue;
                }
                Curve::Line { .. } => self.coarse_count,
                c => ((self.coarse_count as f64 * c.length() / total).round() as usize).max(4),
            };
            let h = 1.0 / n as f64;
            match curve {
                Curve::Segment { .. } => {
                    (0..=n).for_each(|j| out.push(Sample::new(curves, idx, j as f64 * h, h)))
                }
                Curve::Circle { .. } => {
                    (0..n).for_each(|j| out.push(Sample::new(curves, idx, j as f64 * h, h)))
                }
                Curve::Line { .. } => (0..n)
                    .for_each(|j| out.push(Sample::new(curves, idx, (j as f64 + 0.5) * h, h))),
                Curve::Point(_) => unreachable!(),
            }
        }
        out
    }

    /// Feet of x and y on every curve, used as extra refinement seeds.
    fn foot_seeds(&self, curves: &[Curve], samples: &[Sample], x: Vec2, y: Vec2) -> Vec<Sample> {
        let mut out = Vec::new();
        for (idx, curve) in curves.iter().enumerate() {
            let h = samples
                .iter()
                .find(|s| s.curve == idx)
                .map_or(0.0, |s| s.h);
            for p in [x, y] {
                if let Some(s) = curve.foot(p) {
                    out.push(Sample::new(curves, idx, s, h));
                }
            }
        }
        out
    }

    /// Samples at geometric offsets around the feet of x and y on curves
    /// closer to them than the coarse spacing, where the integrands of pair
    /// metrics vary on the scale of the distance to the boundary.
    fn near_foot_samples(&self, curves: &[Curve], samples: &[Sample], x: Vec2, y: Vec2) -> Vec<Sample> {
        const SCALES: [f64; 3] = [0.3, 1.0, 3.0];
        let mut out = Vec::new();
        for (idx, curve) in curves.iter().enumerate() {
            let len = curve.length();
            if !len.is_finite() || len == 0.0 {
                continue;
            }
            let Some(h) = samples.iter().find(|s| s.curve == idx).map(|s| s.h) else {
                continue;
            };
            for p in [x, y] {
                let Some(s0) = curve.foot(p) else { continue };
                let d = dist2(p, curve.at(s0)) / len;
                if d >= h {
                    continue;
                }
                for k in SCALES {
                    let off = k * d;
                    for s in [s0 - off, s0 + off] {
                        let s = match curve {
                            Curve::Circle { .. } => s.rem_euclid(1.0),
                            _ if !(0.0..=1.0).contains(&s) => continue,
                            _ => s,
                        };
                        out.push(Sample::new(curves, idx, s, 0.5 * off));
                    }
                }
            }
        }
        out
    }

    /// sup over finite boundary points z of `f(z)`.
    fn sup_single(&self, x: Vec2, y: Vec2, f: impl Fn(Vec2) -> f64) -> f64 {
        let curves = self.curves(x, y);
        let samples = self.samples(&curves);
        let mut scored: Vec<(f64, usize)> = samples
            .iter()
            .enumerate()
            .map(|(i, s)| (f(s.p), i))
            .collect();
        let mut best = scored.iter().map(|s| s.0).fold(0.0f64, f64::max);
        // seeds by value, then index
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut seeds: Vec<Sample> = scored
            .iter()
            .take(SEEDS)
            .map(|&(_, i)| samples[i])
            .collect();
        seeds.extend(self.foot_seeds(&curves, &samples, x, y));
        for seed in seeds {
            let curve = &curves[seed.curve];
            if seed.h == 0.0 {
                best = best.max(f(seed.p));
                continue;
            }
            let (lo, hi) = curve.bracket(seed.s, seed.h);
            let (_, value) = golden_max(|s| f(curve.at(s)), lo, hi, self.refine_tolerance);
            best = best.max(value).max(f(seed.p));
        }
        best
    }

    /// sup over pairs (z, w) of boundary points (w = ∞ included when ∞ ∈ ∂G)
    /// of a symmetric integrand.
    fn sup_pair(&self, x: Vec2, y: Vec2, f: impl Fn(Vec2, Option<Vec2>) -> f64) -> f64 {
        let curves = self.curves(x, y);
        let m = ((self.coarse_count as f64).sqrt().round() as usize).max(4);
        let sampler = Self {
            coarse_count: m,
            ..self.clone()
        };
        let mut samples = sampler.samples(&curves);
        samples.extend(self.foot_seeds(&curves, &samples, x, y));
        samples.extend(self.near_foot_samples(&curves, &samples, x, y));
        let k = samples.len();
        let mut best = 0.0f64;
        // best partner of every sample, (value, i, j) with j == k meaning
        // w = ∞; seeding from distinct rows keeps the seeds from collapsing
        // onto one peak
        let mut rows: Vec<(f64, usize, usize)> = (0..k).map(|i| (f64::NEG_INFINITY, i, i)).collect();
        let w_count = if self.include_infinity { k + 1 } else { k };
        for i in 0..k {
            for j in i + 1..w_count {
                let w = if j == k { None } else { Some(samples[j].p) };
                let v = f(samples[i].p, w);
                best = best.max(v);
                if v > rows[i].0 {
                    rows[i] = (v, i, j);
                }
                if j < k && v > rows[j].0 {
                    rows[j] = (v, i, j);
                }
            }
        }
        rows.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
        rows.dedup_by_key(|r| (r.1, r.2));
        let mut finished: Vec<(f64, Sample, Sample)> = Vec::new();
        for &(v0, i, j) in rows.iter().filter(|r| r.1 != r.2).take(2 * SEEDS) {
            let mut z = samples[i];
            let mut w = if j == k { None } else { Some(samples[j]) };
            let mut current = v0;
            for _ in 0..ASCENT_ROUNDS {
                let before = current;
                if z.h > 0.0 {
                    let wp = w.map(|s| s.p);
                    let curve = &curves[z.curve];
                    let (lo, hi) = curve.bracket(z.s, z.h);
                    let (s, v) = golden_max(|s| f(curve.at(s), wp), lo, hi, self.refine_tolerance);
                    if v > current {
                        z = Sample::new(&curves, z.curve, s, z.h);
                        current = v;
                    }
                }
                if let Some(ws) = w.filter(|s| s.h > 0.0) {
                    let curve = &curves[ws.curve];
                    let (lo, hi) = curve.bracket(ws.s, ws.h);
                    let (s, v) =
                        golden_max(|s| f(z.p, Some(curve.at(s))), lo, hi, self.refine_tolerance);
                    if v > current {
                        w = Some(Sample::new(&curves, ws.curve, s, ws.h));
                        current = v;
                    }
                }
                if current - before <= 1e-15 {
                    break;
                }
            }
            best = best.max(current);
            if let Some(ws) = w {
                finished.push((current, z, ws));
            }
        }
        // the local ascent cannot leave a peak; alternate global searches in
        // z and w from the best finishes to hop between peaks
        finished.sort_by(|a, b| b.0.total_cmp(&a.0));
        for &(mut current, mut z, mut w) in finished.iter().take(GLOBAL_STARTS) {
            for _ in 0..GLOBAL_ROUNDS {
                let before = current;
                let (zn, v) = self.global_step(&curves, &samples, |p| f(p, Some(w.p)));
                if v > current {
                    (z, current) = (zn, v);
                }
                let (wn, v) = self.global_step(&curves, &samples, |p| f(z.p, Some(p)));
                if v > current {
                    (w, current) = (wn, v);
                }
                if current - before <= 1e-15 {
                    break;
                }
            }
            best = best.max(current);
        }
        best
    }

    /// Best sample of `g` over all curves, refined around the two best
    /// coarse values.
    fn global_step(&self, curves: &[Curve], samples: &[Sample], g: impl Fn(Vec2) -> f64) -> (Sample, f64) {
        let mut scored: Vec<(f64, usize)> = samples.iter().enumerate().map(|(i, s)| (g(s.p), i)).collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let (v0, i0) = scored[0];
        let mut best = (samples[i0], v0);
        for &(_, i) in scored.iter().take(2) {
            let seed = samples[i];
            if seed.h == 0.0 {
                continue;
            }
            let curve = &curves[seed.curve];
            let (lo, hi) = curve.bracket(seed.s, seed.h);
            let (s, v) = golden_max(|s| g(curve.at(s)), lo, hi, self.refine_tolerance);
            if v > best.1 {
                best = (Sample::new(curves, seed.curve, s, seed.h), v);
            }
        }
        best
    }
}

#[derive(Clone, Copy, Debug)]
enum Curve {
    Segment { a: Vec2, b: Vec2 },
    Circle { c: Vec2, r: f64 },
    Point(Vec2),
    /// The real axis, parametrised by s ↦ c + l·tan(π(s − ½)) on (0, 1).
    Line { c: f64, l: f64 },
}

/// Parameter margin keeping the line parametrisation finite.
const LINE_EDGE: f64 = 1e-12;

impl Curve {
    fn at(&self, s: f64) -> Vec2 {
        match *self {
            Curve::Segment { a, b } => [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])],
            Curve::Circle { c, r } => {
                let t = 2.0 * PI * s;
                [c[0] + r * t.cos(), c[1] + r * t.sin()]
            }
            Curve::Point(p) => p,
            Curve::Line { c, l } => [c + l * (PI * (s - 0.5)).tan(), 0.0],
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Curve::Segment { a, b } => dist2(a, b),
            Curve::Circle { r, .. } => 2.0 * PI * r,
            Curve::Point(_) => 0.0,
            Curve::Line { .. } => f64::INFINITY,
        }
    }

    fn bracket(&self, s: f64, h: f64) -> (f64, f64) {
        match self {
            Curve::Circle { .. } => (s - h, s + h),
            Curve::Line { .. } => ((s - h).max(LINE_EDGE), (s + h).min(1.0 - LINE_EDGE)),
            _ => ((s - h).max(0.0), (s + h).min(1.0)),
        }
    }

    /// Parameter of the point of the curve nearest to `p`.
    fn foot(&self, p: Vec2) -> Option<f64> {
        match *self {
            Curve::Segment { a, b } => {
                let d = [b[0] - a[0], b[1] - a[1]];
                let t = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1]);
                Some(t.clamp(0.0, 1.0))
            }
            Curve::Circle { c, .. } => {
                let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
                if dx == 0.0 && dy == 0.0 {
                    None
                } else {
                    Some(dy.atan2(dx).rem_euclid(2.0 * PI) / (2.0 * PI))
                }
            }
            Curve::Point(_) => None,
            Curve::Line { c, l } => Some(((p[0] - c) / l).atan() / PI + 0.5),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Sample {
    curve: usize,
    s: f64,
    /// Coarse step of the curve, 0 for isolated points.
    h: f64,
    p: Vec2,
}

impl Sample {
    fn new(curves: &[Curve], curve: usize, s: f64, h: f64) -> Self {
        Self {
            curve,
            s,
            h,
            p: curves[curve].at(s),
        }
    }
}

/// Golden-section search for a maximum of `g` on [lo, hi]; returns the best
/// evaluated point.
fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let (mut ga, mut gb) = (g(a), g(b));
    while hi - lo > tol {
        if ga < gb {
            lo = a;
            a = b;
            ga = gb;
            b = lo + INV_PHI * (hi - lo);
            gb = g(b);
        } else {
            hi = b;
            b = a;
            gb = ga;
            a = hi - INV_PHI * (hi - lo);
            ga = g(a);
        }
    }
    let candidates = [(a, ga), (b, gb), (lo, g(lo)), (hi, g(hi))];
    candidates
        .into_iter()
        .fold((a, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc })
}

#[inline]
fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

/// ∠(x, z, y) for z ∉ {x, y}.
#[inline]
pub(crate) fn visual_angle_integrand(x: Vec2, y: Vec2, z: Vec2) -> f64 {
    vector_angle2(sub(x, z), sub(y, z))
}

#[inline]
fn triangular_integrand(x: Vec2, y: Vec2, z: Vec2) -> f64 {
    dist2(x, y) / (dist2(z, x) + dist2(z, y))
}

/// σ(z, x, w, y); w = None stands for ∞.
#[inline]
fn ptolemaic_integrand(x: Vec2, y: Vec2, z: Vec2, w: Option<Vec2>) -> f64 {
    match w {
        None => triangular_integrand(x, y, z),
        Some(w) => {
            let num = dist2(z, w) * dist2(x, y);
            let den = dist2(z, x) * dist2(w, y) + dist2(z, y) * dist2(x, w);
            num / den
        }
    }
}

/// The double-angle integrand, i.e. ∠(f x, f z, f y) for the inversion f in
/// the unit sphere about w (which sends w to ∞); w = None means f = id.
#[inline]
fn double_angle_integrand(x: Vec2, y: Vec2, z: Vec2, w: Option<Vec2>) -> f64 {
    let Some(w) = w else {
        return visual_angle_integrand(x, y, z);
    };
    let inv = |p: Vec2| {
        let d = sub(p, w);
        let r2 = d[0] * d[0] + d[1] * d[1];
        [d[0] / r2, d[1] / r2]
    };
    if z == w {
        return 0.0;
    }
    visual_angle_integrand(inv(x), inv(y), inv(z))
}

/// The double-angle integrand written with absolute ratios:
/// arccos ½(|z,y,x,w| + |z,x,y,w| − s(z,x,y,w)), clamped to [−1, 1].
pub fn double_angle_integrand_ratio(
    x: &Point,
    y: &Point,
    z: &crate::geometry::ExtendedPoint,
    w: &crate::geometry::ExtendedPoint,
) -> Result<f64> {
    use crate::geometry::ExtendedPoint as E;
    use crate::moebius::absolute_ratio;
    let (xe, ye) = (E::Finite(x.clone()), E::Finite(y.clone()));
    let a = absolute_ratio(z, &ye, &xe, w)?;
    let b = absolute_ratio(z, &xe, &ye, w)?;
    let s = absolute_ratio(z, &xe, w, &ye)? * absolute_ratio(z, &ye, w, &xe)?;
    Ok((0.5 * (a + b - s)).clamp(-1.0, 1.0).acos())
}

/// The visual angle metric v_G by boundary sampling.
pub fn v_sup(sampler: &BoundarySampler, x: &Point, y: &Point) -> Result<MetricValue> {
    let (xv, yv) = sampler.check_pair(x, y)?;
    if xv == yv {
        return MetricValue::new(MetricKind::V, 0.0);
    }
    if sampler.segment_exits(xv, yv) {
        return MetricValue::new(MetricKind::V, PI);
    }
    let v = sampler.sup_single(xv, yv, |z| visual_angle_integrand(xv, yv, z));
    MetricValue::new(MetricKind::V, v)
}

/// The triangular ratio metric s_G.
pub fn s_triangular(sampler: &BoundarySampler, x: &Point, y: &Point) -> Result<MetricValue> {
    let (xv, yv) = sampler.check_pair(x, y)?;
    if xv == yv {
        return MetricValue::new(MetricKind::S, 0.0);
    }
    if sampler.segment_exits(xv, yv) {
        return MetricValue::new(MetricKind::S, 1.0);
    }
    let s = sampler.sup_single(xv, yv, |z| triangular_integrand(xv, yv, z));
    MetricValue::new(MetricKind::S, s)
}

/// The Ptolemaic angular metric r_G.
pub fn r_ptolemaic(sampler: &BoundarySampler, x: &Point, y: &Point) -> Result<MetricValue> {
    let (xv, yv) = sampler.check_pair(x, y)?;
    if xv == yv {
        return MetricValue::new(MetricKind::R, 0.0);
    }
    let mut r = sampler.sup_pair(xv, yv, |z, w| ptolemaic_integrand(xv, yv, z, w));
    if sampler.include_infinity {
        r = r.max(s_triangular(sampler, x, y)?.value);
    }
    MetricValue::new(MetricKind::R, r.min(1.0))
}

/// The visual double angle metric v̄_G.
pub fn v_double(sampler: &BoundarySampler, x: &Point, y: &Point) -> Result<MetricValue> {
    let (xv, yv) = sampler.check_pair(x, y)?;
    if xv == yv {
        return MetricValue::new(MetricKind::Vbar, 0.0);
    }
    let mut v = sampler.sup_pair(xv, yv, |z, w| double_angle_integrand(xv, yv, z, w));
    if sampler.include_infinity {
        v = v.max(v_sup(sampler, x, y)?.value);
    }
    MetricValue::new(MetricKind::Vbar, v)
}

/// v* = sin(v/2) and v̄* = sin(v̄/2).
pub fn starred(m: MetricValue) -> Result<MetricValue> {
    let kind = match m.kind {
        MetricKind::V => MetricKind::VStar,
        MetricKind::Vbar => MetricKind::VbarStar,
        other => {
            return Err(Error::KindMismatch {
                expected: "v or vbar",
                found: other.id(),
            })
        }
    };
    MetricValue::new(kind, (m.value / 2.0).sin())
}
