//! Single entry point choosing between closed forms and boundary sampling.

use serde::{Deserialize, Serialize};

use crate::closed_form::{j_metric, k_metric, rho, rho_star, v_closed_form, MetricKind, MetricValue};
use crate::domain::Domain;
use crate::error::Result;
use crate::geometry::Point;
use crate::sup::{r_ptolemaic, s_triangular, starred, v_double, v_sup, BoundarySampler};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    SupSampling,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: MetricValue,
    pub method: Method,
    /// The metric is only a pseudometric on this domain.
    pub pseudometric_warning: bool,
}

/// Evaluates `kind` at (x, y), by closed form where one exists (v on the
/// canonical domains, ρ, ρ*, j, k) and otherwise by boundary sampling with
/// `coarse_count` samples (planar domains only; default 4096).
pub fn evaluate(
    kind: MetricKind,
    domain: &Domain,
    x: &Point,
    y: &Point,
    coarse_count: Option<usize>,
) -> Result<Evaluation> {
    let sampler = || -> Result<BoundarySampler> {
        let s = BoundarySampler::new(domain.clone())?;
        match coarse_count {
            Some(c) => s.with_coarse_count(c),
            None => Ok(s),
        }
    };
    let canonical = !matches!(domain, Domain::Generic2D(_));
    let v = || -> Result<(MetricValue, Method)> {
        if canonical {
            Ok((v_closed_form(domain, x, y)?, Method::ClosedForm))
        } else {
            Ok((v_sup(&sampler()?, x, y)?, Method::SupSampling))
        }
    };
    let sampled = |m: MetricValue| (m, Method::SupSampling);
    let closed = |m: MetricValue| (m, Method::ClosedForm);
    let (value, method) = match kind {
        MetricKind::V => v()?,
        MetricKind::VStar => {
            let (m, method) = v()?;
            (starred(m)?, method)
        }
        MetricKind::S => sampled(s_triangular(&sampler()?, x, y)?),
        MetricKind::R => sampled(r_ptolemaic(&sampler()?, x, y)?),
        MetricKind::Vbar => sampled(v_double(&sampler()?, x, y)?),
        MetricKind::VbarStar => sampled(starred(v_double(&sampler()?, x, y)?)?),
        MetricKind::J => closed(j_metric(domain, x, y)?),
        MetricKind::K => closed(k_metric(domain, x, y)?),
        MetricKind::Rho => closed(rho(domain, x, y)?),
        MetricKind::RhoStar => closed(rho_star(domain, x, y)?),
    };
    let pseudometric_warning = match kind {
        MetricKind::V | MetricKind::VStar | MetricKind::S => domain.pseudometric_warning(),
        MetricKind::Vbar | MetricKind::VbarStar => sampler()?.vbar_pseudometric_warning(),
        _ => false,
    };
    Ok(Evaluation {
        value,
        method,
        pseudometric_warning,
    })
}
