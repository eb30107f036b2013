//! JSON file formats. Every rational travels as a `"p/q"` (or `"p"`) string.

use std::fs;
use std::path::Path;

use eqtodd_core::{DPoly, EquivariantDivisor, Fan, InnerProduct, LatticePolytope, PolySeries, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorJson {
    pub alpha: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramJson {
    pub gram: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetJson {
    pub normal: Vec<i64>,
    pub offset: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub rank: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets_optional: Option<Vec<FacetJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub order: u32,
    pub terms: Vec<TermJson>,
}

/// A D-polynomial coefficient: either a plain rational or a series in M.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefJson {
    Rational(String),
    Series(SeriesJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DTermJson {
    pub exp: Vec<u32>,
    pub coef: CoefJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DPolyJson {
    pub terms: Vec<DTermJson>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let t = s.trim();
    let bad = || CliError::Schema(format!("not a rational \"p/q\": {s:?}"));
    let r: Rational = t.parse().map_err(|_| bad())?;
    if let Some((_, d)) = t.split_once('/') {
        if d.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(bad());
        }
    }
    Ok(r)
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>, CliError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

impl FanJson {
    pub fn build(&self) -> Result<Fan, CliError> {
        if self.rays.iter().any(|r| r.len() != self.rank) {
            return Err(CliError::Schema(format!("every ray must have {} coordinates", self.rank)));
        }
        if self.cones.iter().flatten().any(|&i| i >= self.rays.len()) {
            return Err(CliError::Schema("cone refers to a missing ray".into()));
        }
        Ok(Fan::new(self.rank, self.rays.clone(), self.cones.clone())?)
    }
}

impl DivisorJson {
    pub fn build(&self, fan: &Fan) -> Result<EquivariantDivisor, CliError> {
        if self.alpha.len() != fan.rays().len() {
            return Err(CliError::Schema(format!(
                "divisor has {} ray values, fan has {} rays",
                self.alpha.len(),
                fan.rays().len()
            )));
        }
        Ok(EquivariantDivisor::new(fan, parse_all(&self.alpha)?)?)
    }
}

impl GramJson {
    pub fn build(&self) -> Result<InnerProduct, CliError> {
        let n = self.gram.len();
        if n == 0 || self.gram.iter().any(|r| r.len() != n) {
            return Err(CliError::Schema("gram must be a non-empty square matrix".into()));
        }
        let rows = self.gram.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>, _>>()?;
        Ok(InnerProduct::new(rows)?)
    }
}

impl PolytopeJson {
    pub fn build(&self) -> Result<LatticePolytope, CliError> {
        if self.vertices.iter().any(|v| v.len() != self.rank) {
            return Err(CliError::Schema(format!("every vertex must have {} coordinates", self.rank)));
        }
        let facets = match &self.facets_optional {
            None => None,
            Some(fs) => Some(
                fs.iter()
                    .map(|f| {
                        if f.normal.len() != self.rank {
                            return Err(CliError::Schema("facet normal has the wrong length".into()));
                        }
                        Ok((f.normal.clone(), parse_rational(&f.offset)?))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(LatticePolytope::new(self.rank, self.vertices.clone(), facets)?)
    }
}

impl SeriesJson {
    pub fn from_series(s: &PolySeries) -> Self {
        Self {
            order: s.order(),
            terms: s.terms().map(|(e, c)| TermJson { exp: e.to_vec(), coef: c.to_string() }).collect(),
        }
    }

    pub fn build(&self, nvars: usize) -> Result<PolySeries, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), parse_rational(&t.coef)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        PolySeries::from_terms(nvars, self.order, terms).map_err(|e| CliError::Schema(format!("series: {e}")))
    }
}

impl DPolyJson {
    /// Coefficients given as bare rationals become constants truncated at `order`.
    pub fn build(&self, fan: &Fan, order: u32) -> Result<DPoly, CliError> {
        let n = fan.rank();
        let s = fan.rays().len();
        let mut p = DPoly::zero(n, s);
        for t in &self.terms {
            if t.exp.len() != s {
                return Err(CliError::Schema(format!("D-monomial needs {s} exponents, got {}", t.exp.len())));
            }
            let c = match &t.coef {
                CoefJson::Rational(r) => PolySeries::constant(n, order, parse_rational(r)?),
                CoefJson::Series(js) => js.build(n)?.truncate(order),
            };
            p.add_term(t.exp.clone(), c);
        }
        Ok(p)
    }
}
