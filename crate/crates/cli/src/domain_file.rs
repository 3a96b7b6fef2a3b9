use std::path::Path;

use serde::{Deserialize, Serialize};
use visang::{Boundary, Domain};

use crate::CliError;

/// `{ "type": "ball"|"halfspace"|"punctured"|"polygon", "n": 2, "vertices": [[x, y], ...] }`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    #[serde(rename = "type")]
    pub kind: DomainType,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainType {
    Ball,
    Halfspace,
    Punctured,
    Polygon,
}

impl DomainFile {
    /// Builds the domain; `n` falls back to `default_n` when absent.
    pub fn to_domain(&self, default_n: usize) -> Result<Domain, CliError> {
        let n = self.n.unwrap_or(default_n);
        let domain = match self.kind {
            DomainType::Ball => Domain::unit_ball(n),
            DomainType::Halfspace => Domain::half_space(n),
            DomainType::Punctured => Domain::punctured(n),
            DomainType::Polygon => {
                if n != 2 {
                    return Err(CliError::Domain(format!("polygon domains need n = 2, got {n}")));
                }
                let vertices = self
                    .vertices
                    .clone()
                    .ok_or_else(|| CliError::Domain("polygon needs `vertices`".into()))?;
                Boundary::polygon(vertices).map(Domain::Generic2D)
            }
        };
        domain.map_err(CliError::from)
    }
}

/// Parses `--domain`: a keyword, an inline JSON document or a path to one.
pub fn parse_domain_arg(arg: &str, default_n: usize) -> Result<Domain, CliError> {
    let file = match arg {
        "ball" => DomainFile { kind: DomainType::Ball, n: None, vertices: None },
        "halfspace" => DomainFile { kind: DomainType::Halfspace, n: None, vertices: None },
        "punctured" => DomainFile { kind: DomainType::Punctured, n: None, vertices: None },
        s if s.trim_start().starts_with('{') => serde_json::from_str(s)
            .map_err(|e| CliError::Usage(format!("domain JSON: {e}")))?,
        path => {
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| CliError::Usage(format!("cannot read domain file `{path}`: {e}")))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
        }
    };
    file.to_domain(default_n)
}
