//! Monotone special functions used in the comparison proofs between v and ρ.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

fn unit_interval(r: f64) -> Result<f64> {
    if r > 0.0 && r < 1.0 {
        Ok(r)
    } else {
        Err(Error::OutOfInterval {
            value: r,
            interval: "(0, 1)",
        })
    }
}

/// arcsin r / artanh r on (0, 1).
pub fn f1(r: f64) -> Result<f64> {
    let r = unit_interval(r)?;
    Ok(r.asin() / r.atanh())
}

/// arcsin r / log(1/(1 − r)) on (0, 1).
pub fn f2(r: f64) -> Result<f64> {
    let r = unit_interval(r)?;
    Ok(r.asin() / -(-r).ln_1p())
}

/// arctan(cr / (1 − c√(1 − r²))) − arsinh(2cr / (1 − c²)) on (0, 1), for a
/// parameter c ∈ (0, 1).
pub fn f3(c: f64, r: f64) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::OutOfInterval {
            value: c,
            interval: "(0, 1)",
        });
    }
    let r = unit_interval(r)?;
    let s = ((1.0 - r) * (1.0 + r)).sqrt();
    Ok((c * r / (1.0 - c * s)).atan() - (2.0 * c * r / ((1.0 - c) * (1.0 + c))).asinh())
}

/// arctan r / arcosh(1 + 2r²) on (0, ∞).
pub fn f4(r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfInterval {
            value: r,
            interval: "(0, ∞)",
        });
    }
    // arcosh(1 + 2r²) = 2 arsinh r, without the cancellation near 0
    Ok(r.atan() / (2.0 * r.asinh()))
}

/// (1 + cos(α + θ))(1 + cos(α − θ)) for α ∈ (0, π), θ ∈ (0, π − α).
pub fn f_theta(alpha: f64, theta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::OutOfInterval {
            value: alpha,
            interval: "(0, π)",
        });
    }
    if !(theta > 0.0 && theta < PI - alpha) {
        return Err(Error::OutOfInterval {
            value: theta,
            interval: "(0, π − α)",
        });
    }
    Ok(f_theta_unchecked(alpha, theta))
}

pub(crate) fn f_theta_unchecked(alpha: f64, theta: f64) -> f64 {
    (1.0 + (alpha + theta).cos()) * (1.0 + (alpha - theta).cos())
}

/// Selector for the auxiliary monotone functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MonotoneFunction {
    F1,
    F2,
    F3 { c: f64 },
    F4,
    FTheta { alpha: f64 },
}

impl MonotoneFunction {
    pub fn eval(self, x: f64) -> Result<f64> {
        match self {
            MonotoneFunction::F1 => f1(x),
            MonotoneFunction::F2 => f2(x),
            MonotoneFunction::F3 { c } => f3(c, x),
            MonotoneFunction::F4 => f4(x),
            MonotoneFunction::FTheta { alpha } => f_theta(alpha, x),
        }
    }

    /// The open interval on which the function is defined.
    pub fn interval(self) -> (f64, f64) {
        match self {
            MonotoneFunction::F1 | MonotoneFunction::F2 | MonotoneFunction::F3 { .. } => (0.0, 1.0),
            MonotoneFunction::F4 => (0.0, f64::INFINITY),
            MonotoneFunction::FTheta { alpha } => (0.0, PI - alpha),
        }
    }
}

impl fmt::Display for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneFunction::F1 => f.write_str("f1"),
            MonotoneFunction::F2 => f.write_str("f2"),
            MonotoneFunction::F3 { c } => write!(f, "f3(c={c})"),
            MonotoneFunction::F4 => f.write_str("f4"),
            MonotoneFunction::FTheta { alpha } => write!(f, "f_theta(alpha={alpha})"),
        }
    }
}

impl FromStr for MonotoneFunction {
    type Err = Error;

    /// Parses `f1`, `f2`, `f4`, `f3:<c>` and `f_theta:<alpha>`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (
                n,
                Some(
                    p.parse::<f64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad parameter in `{s}`")))?,
                ),
            ),
            None => (s, None),
        };
        match (name, param) {
            ("f1", None) => Ok(MonotoneFunction::F1),
            ("f2", None) => Ok(MonotoneFunction::F2),
            ("f4", None) => Ok(MonotoneFunction::F4),
            ("f3", Some(c)) => Ok(MonotoneFunction::F3 { c }),
            ("f_theta", Some(alpha)) => Ok(MonotoneFunction::FTheta { alpha }),
            _ => Err(Error::InvalidParameter(format!("unknown function `{s}`"))),
        }
    }
}

/// Whether `f` is strictly decreasing on `count` interior grid points of
/// [lo, hi].
pub fn strictly_decreasing_on_grid(f: MonotoneFunction, lo: f64, hi: f64, count: usize) -> Result<bool> {
    let mut prev = f64::INFINITY;
    for i in 0..count {
        let x = lo + (hi - lo) * (i as f64 + 0.5) / count as f64;
        let y = f.eval(x)?;
        if !(y < prev) {
            return Ok(false);
        }
        prev = y;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn limits_at_zero() {
        let v = f1(1e-6).unwrap();
        assert!((1.0 - 1e-6..=1.0).contains(&v));
        assert_abs_diff_eq!(f2(1e-6).unwrap(), 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(f4(1e-6).unwrap(), 0.5, epsilon = 1e-9);
        assert!(f3(0.5, 1e-6).unwrap().abs() < 1e-5);
    }

    #[test]
    fn limits_at_far_end() {
        assert!(f1(1.0 - 1e-12).unwrap() < 0.12);
        assert!(f2(1.0 - 1e-12).unwrap() < 0.06);
        assert!(f4(1e12).unwrap() < 0.03);
        let c: f64 = 0.5;
        let end = c.atan() - ((1.0 + c) / (1.0 - c)).ln();
        assert_abs_diff_eq!(f3(c, 1.0 - 1e-12).unwrap(), end, epsilon = 1e-5);
    }

    #[test]
    fn f4_matches_arcosh_form() {
        for r in [0.1f64, 0.7, 3.0, 40.0] {
            let direct = r.atan() / (1.0 + 2.0 * r * r).acosh();
            assert_abs_diff_eq!(f4(r).unwrap(), direct, epsilon = 1e-13);
        }
    }

    #[test]
    fn f_theta_at_zero() {
        let alpha = 1.1f64;
        assert_abs_diff_eq!(f_theta_unchecked(alpha, 0.0), (1.0 + alpha.cos()).powi(2), epsilon = 1e-15);
    }

    #[test]
    fn monotone_on_grids() {
        for f in [
            MonotoneFunction::F1,
            MonotoneFunction::F2,
            MonotoneFunction::F3 { c: 0.3 },
            MonotoneFunction::F3 { c: 0.9 },
        ] {
            assert!(strictly_decreasing_on_grid(f, 0.0, 1.0, 1000).unwrap(), "{f}");
        }
        assert!(strictly_decreasing_on_grid(MonotoneFunction::F4, 0.0, 50.0, 1000).unwrap());
        for alpha in [0.3, 1.0, 2.5] {
            let f = MonotoneFunction::FTheta { alpha };
            assert!(strictly_decreasing_on_grid(f, 0.0, PI - alpha, 1000).unwrap());
        }
    }

    #[test]
    fn interval_errors() {
        assert!(matches!(f1(0.0), Err(Error::OutOfInterval { .. })));
        assert!(matches!(f2(1.0), Err(Error::OutOfInterval { .. })));
        assert!(matches!(f3(1.0, 0.5), Err(Error::OutOfInterval { .. })));
        assert!(matches!(f4(-1.0), Err(Error::OutOfInterval { .. })));
        assert!(matches!(f_theta(1.0, 3.0), Err(Error::OutOfInterval { .. })));
    }

    #[test]
    fn parse_ids() {
        assert_eq!("f1".parse::<MonotoneFunction>().unwrap(), MonotoneFunction::F1);
        assert_eq!("f3:0.5".parse::<MonotoneFunction>().unwrap(), MonotoneFunction::F3 { c: 0.5 });
        assert!("f3".parse::<MonotoneFunction>().is_err());
        assert!("g".parse::<MonotoneFunction>().is_err());
    }
}
