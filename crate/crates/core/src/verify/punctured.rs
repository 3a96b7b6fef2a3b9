use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sampling::sample_pair;
use super::{Tracker, VerificationReport, CLOSED_FORM_TOL};
use crate::closed_form::{j_metric, k_punctured, v_punctured};
use crate::domain::Domain;
use crate::error::{Error, Result};

/// In Rⁿ \ {0}: v = √(k² − log²(|y|/|x|)) and v ≤ (π/log 3) j on random
/// pairs, with v = (π/log 3) j at each antipodal pair (x, −x).
pub fn punctured_suite(domain: &Domain, trials: u64, seed: u64) -> Result<VerificationReport> {
    let Domain::PuncturedSpace { dim } = domain else {
        return Err(Error::UnsupportedDomain("punctured suite needs the punctured space".into()));
    };
    let c = PI / 3f64.ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new(format!("punctured-n{dim}"), seed, CLOSED_FORM_TOL);
    let mut max_ratio = 0.0f64;
    let mut worst_antipodal = 0.0f64;
    for _ in 0..trials {
        let (x, y) = sample_pair(domain, true, &mut rng);
        let v = v_punctured(&x, &y)?.value;
        let k = k_punctured(&x, &y)?.value;
        let l = (y.norm() / x.norm()).ln();
        let j = j_metric(domain, &x, &y)?.value;
        t.trial();
        // k ≥ |l| so the radicand is non-negative up to rounding
        t.check_equal(v - ((k - l.abs()) * (k + l.abs())).max(0.0).sqrt());
        t.check(c * j - v);
        if j > 0.0 {
            max_ratio = max_ratio.max(v / j);
        }
        let minus = x.scale(-1.0);
        let diff = v_punctured(&x, &minus)?.value - c * j_metric(domain, &x, &minus)?.value;
        worst_antipodal = worst_antipodal.max(diff.abs());
        t.check_equal(diff);
    }
    t.estimate(max_ratio);
    t.extra("antipodal_residual", worst_antipodal);
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctured_passes() {
        for n in [2, 3] {
            let r = punctured_suite(&Domain::punctured(n).unwrap(), 2000, 6).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.estimate.unwrap() <= PI / 3f64.ln() + 1e-9);
        }
        assert!(punctured_suite(&Domain::unit_ball(2).unwrap(), 1, 0).is_err());
    }
}
