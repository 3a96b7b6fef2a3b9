use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use super::bounds::ball_sharpness_ratio;
use super::{Tracker, VerificationReport, CLOSED_FORM_TOL};
use crate::closed_form::{v_ball, v_half};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::moebius::MoebiusMap;

/// Point families along which a ratio of visual angle metrics tends to its
/// sharp bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    /// v_B(f x, f y)/v_H(x, y) for the Cayley map f, with
    /// x = −2t/√(1 − t²) + i, y = i(1 + t)/(1 − t); tends to 2 as t → 1.
    Thm13Upper,
    /// v_H(f⁻¹x, f⁻¹y)/v_B(x, y) with x = 0,
    /// y = t²/(t² + 4) − i·2t/(t² + 4); identically 2.
    Thm13Lower,
    /// v_H(f x, f y)/v_H(x, y) for f(z) = −1/z, with x = t e^{i(π − t)},
    /// y = it/sin t; tends to 2 as t → 0.
    Thm14Case2,
    /// v/ρ* on B² with x = (1 − t) + it, y = (1 − t) − it; tends to 2 as
    /// t → 0.
    Thm11Ball,
}

impl SweepFamily {
    pub const ALL: [SweepFamily; 4] = [
        SweepFamily::Thm13Upper,
        SweepFamily::Thm13Lower,
        SweepFamily::Thm14Case2,
        SweepFamily::Thm11Ball,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SweepFamily::Thm13Upper => "thm1_3_upper",
            SweepFamily::Thm13Lower => "thm1_3_lower",
            SweepFamily::Thm14Case2 => "thm1_4_case2",
            SweepFamily::Thm11Ball => "thm1_1_ball",
        }
    }

    /// Open parameter interval.
    pub fn interval(self) -> (f64, f64) {
        match self {
            SweepFamily::Thm13Upper | SweepFamily::Thm11Ball => (0.0, 1.0),
            SweepFamily::Thm13Lower => (0.0, f64::INFINITY),
            SweepFamily::Thm14Case2 => (0.0, FRAC_PI_2),
        }
    }

    /// +1 if the ratio increases toward its limit as t increases, −1 if as t
    /// decreases, 0 for a constant family.
    fn direction(self) -> f64 {
        match self {
            SweepFamily::Thm13Upper => 1.0,
            SweepFamily::Thm14Case2 | SweepFamily::Thm11Ball => -1.0,
            SweepFamily::Thm13Lower => 0.0,
        }
    }

    /// The ratio at parameter `t`.
    pub fn ratio(self, t: f64) -> Result<f64> {
        match self {
            SweepFamily::Thm13Upper => {
                let f = MoebiusMap::cayley_half_to_ball();
                let x = Point::xy(-2.0 * t / ((1.0 - t) * (1.0 + t)).sqrt(), 1.0);
                let y = Point::xy(0.0, (1.0 + t) / (1.0 - t));
                let vb = v_ball(&f.apply_finite(&x)?, &f.apply_finite(&y)?)?.value;
                Ok(vb / v_half(&x, &y)?.value)
            }
            SweepFamily::Thm13Lower => {
                let f_inv = MoebiusMap::cayley_half_to_ball().inverse();
                let d = t * t + 4.0;
                let x = Point::xy(0.0, 0.0);
                let y = Point::xy(t * t / d, -2.0 * t / d);
                let vh = v_half(&f_inv.apply_finite(&x)?, &f_inv.apply_finite(&y)?)?.value;
                Ok(vh / v_ball(&x, &y)?.value)
            }
            SweepFamily::Thm14Case2 => {
                let f = MoebiusMap::real_fractional(0.0, -1.0, 1.0, 0.0)?;
                let x = Point::xy(-t * t.cos(), t * t.sin());
                let y = Point::xy(0.0, t / t.sin());
                let vh = v_half(&f.apply_finite(&x)?, &f.apply_finite(&y)?)?.value;
                Ok(vh / v_half(&x, &y)?.value)
            }
            SweepFamily::Thm11Ball => ball_sharpness_ratio(t),
        }
    }
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SweepFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown sweep `{s}`")))
    }
}

/// Evaluates a family on a strictly monotone grid inside its interval,
/// checking the bound 2 on every row and, except for the constant family,
/// that the ratio moves monotonically toward its limit.
pub fn sharpness_sweep(family: SweepFamily, grid: &[f64]) -> Result<VerificationReport> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    let (lo, hi) = family.interval();
    if let Some(t) = grid.iter().find(|t| !(**t > lo && **t < hi)) {
        return Err(Error::InvalidGrid(format!(
            "{t} outside ({lo}, {hi}) for {family}"
        )));
    }
    let increasing = grid.windows(2).all(|w| w[0] < w[1]);
    let decreasing = grid.windows(2).all(|w| w[0] > w[1]);
    if !(increasing || decreasing) {
        return Err(Error::InvalidGrid("grid must be strictly monotone".into()));
    }
    let mut t = Tracker::new(family.id(), 0, CLOSED_FORM_TOL);
    let mut prev: Option<(f64, f64)> = None;
    for &s in grid {
        let ratio = family.ratio(s)?;
        t.trial();
        t.check(2.0 - ratio);
        match family {
            SweepFamily::Thm13Lower => t.check_equal(ratio - 2.0),
            _ => {
                if let Some((ps, pr)) = prev {
                    // ratio moves toward the limit as the parameter does
                    let toward = family.direction() * (s - ps).signum();
                    t.check_with(toward * (ratio - pr), 1e-12);
                }
            }
        }
        t.row(s, ratio);
        prev = Some((s, ratio));
    }
    if let Some((_, last)) = prev {
        t.estimate(last);
    }
    Ok(t.finish())
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linear_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert!((SweepFamily::Thm13Lower.ratio(1.0).unwrap() - 2.0).abs() < 1e-9);
        assert!(SweepFamily::Thm13Upper.ratio(0.999).unwrap() > 1.9);
        assert!(SweepFamily::Thm14Case2.ratio(0.01).unwrap() > 1.97);
    }

    #[test]
    fn family_values() {
        let close = |a: f64, b: f64| (a - b).abs() < 1e-3;
        assert!(close(SweepFamily::Thm13Upper.ratio(0.5).unwrap(), 0.956));
        assert!(close(SweepFamily::Thm13Upper.ratio(0.9).unwrap(), 1.534));
        assert!(close(SweepFamily::Thm14Case2.ratio(1.0).unwrap(), 1.088));
        assert!(close(SweepFamily::Thm14Case2.ratio(0.1).unwrap(), 1.867));
    }

    #[test]
    fn sweeps_pass() {
        let r = sharpness_sweep(SweepFamily::Thm13Upper, &linear_grid(0.5, 0.999, 50)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.sweep.as_ref().unwrap().len(), 50);
        let r = sharpness_sweep(SweepFamily::Thm13Lower, &linear_grid(0.02, 1.0, 50)).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = sharpness_sweep(SweepFamily::Thm14Case2, &linear_grid(1.5, 0.001, 40)).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = sharpness_sweep(SweepFamily::Thm11Ball, &linear_grid(0.9, 0.0001, 20)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn grid_errors() {
        assert!(matches!(sharpness_sweep(SweepFamily::Thm13Upper, &[]), Err(Error::InvalidGrid(_))));
        assert!(matches!(sharpness_sweep(SweepFamily::Thm13Upper, &[1.5]), Err(Error::InvalidGrid(_))));
        assert!(matches!(
            sharpness_sweep(SweepFamily::Thm14Case2, &[0.1, 0.3, 0.2]),
            Err(Error::InvalidGrid(_))
        ));
        assert!(sharpness_sweep(SweepFamily::Thm13Lower, &[3.0]).is_ok());
    }

    #[test]
    fn ids_parse() {
        for f in SweepFamily::ALL {
            assert_eq!(f.id().parse::<SweepFamily>().unwrap(), f);
        }
    }
}
