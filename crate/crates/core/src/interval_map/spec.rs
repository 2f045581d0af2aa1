//! JSON map specifications and built-in map names.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::arith::parse::{parse_exact, parse_f64};
use crate::arith::Exact;
use crate::error::MapError;

use super::{builtin, Branch, ExactMap, IntervalMap, NumericMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BranchSpec {
    Affine { domain: [Value; 2], affine: [Value; 2] },
    Family { domain: [Value; 2], family: String, param: Value },
}

/// A map given explicitly as a JSON document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExplicitSpec {
    pub interval: [Value; 2],
    #[serde(default)]
    pub mode: Mode,
    pub branches: Vec<BranchSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Where a map comes from: a built-in family or an explicit document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapSpec {
    Builtin(String),
    Explicit(ExplicitSpec),
}

/// A validated map in either arithmetic mode.
#[derive(Clone, Debug)]
pub enum AnyMap {
    Exact(ExactMap),
    Numeric(NumericMap),
}

impl AnyMap {
    pub fn as_exact(&self) -> Option<&ExactMap> {
        match self {
            AnyMap::Exact(m) => Some(m),
            AnyMap::Numeric(_) => None,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            AnyMap::Exact(m) => m.name(),
            AnyMap::Numeric(m) => m.name(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            AnyMap::Exact(m) => m.labels(),
            AnyMap::Numeric(m) => m.labels(),
        }
    }

    pub fn n_branches(&self) -> usize {
        match self {
            AnyMap::Exact(m) => m.n_branches(),
            AnyMap::Numeric(m) => m.n_branches(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyMap::Exact(_))
    }
}

fn value_str(v: &Value) -> Result<String, MapError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(MapError::Spec(format!("expected a number, got {other}"))),
    }
}

impl MapSpec {
    /// Parse `builtin:family:param`, a JSON document, or a path to one.
    pub fn parse(source: &str) -> Result<MapSpec, MapError> {
        if let Some(rest) = source.strip_prefix("builtin:") {
            return Ok(MapSpec::Builtin(rest.to_string()));
        }
        let text = if source.trim_start().starts_with('{') {
            source.to_string()
        } else {
            std::fs::read_to_string(source)
                .map_err(|e| MapError::Spec(format!("cannot read {source}: {e}")))?
        };
        let spec: ExplicitSpec =
            serde_json::from_str(&text).map_err(|e| MapError::Spec(e.to_string()))?;
        Ok(MapSpec::Explicit(spec))
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canon = serde_json::to_string(self).expect("spec serializes");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }

    pub fn build(&self) -> Result<AnyMap, MapError> {
        match self {
            MapSpec::Builtin(b) => build_builtin(b),
            MapSpec::Explicit(e) => build_explicit(e),
        }
    }
}

fn build_builtin(b: &str) -> Result<AnyMap, MapError> {
    let (family, param) = b.split_once(':').unwrap_or((b, ""));
    let need = |p: &str| {
        if p.is_empty() {
            Err(MapError::Spec(format!("builtin {family} needs a parameter")))
        } else {
            Ok(())
        }
    };
    let m = match family {
        "tent" => {
            need(param)?;
            AnyMap::Exact(builtin::tent(param)?)
        }
        "beta" => {
            need(param)?;
            AnyMap::Exact(builtin::beta(param)?)
        }
        "full" => {
            need(param)?;
            let n: usize = param.parse().map_err(|_| MapError::Spec(format!("bad count {param}")))?;
            AnyMap::Exact(builtin::full(n)?)
        }
        "identity" => AnyMap::Exact(builtin::identity()),
        "quadratic" => {
            need(param)?;
            AnyMap::Numeric(builtin::quadratic(param)?)
        }
        other => return Err(MapError::Spec(format!("unknown builtin family {other:?}"))),
    };
    Ok(m)
}

fn build_explicit(e: &ExplicitSpec) -> Result<AnyMap, MapError> {
    let name = e.name.clone().unwrap_or_else(|| "custom".into());
    match e.mode {
        Mode::Exact => {
            let num = |v: &Value| -> Result<Exact, MapError> { Ok(parse_exact(&value_str(v)?)?) };
            let mut branches = Vec::new();
            for b in &e.branches {
                match b {
                    BranchSpec::Affine { domain, affine } => branches.push(Branch::affine(
                        num(&domain[0])?,
                        num(&domain[1])?,
                        num(&affine[0])?,
                        num(&affine[1])?,
                    )),
                    BranchSpec::Family { .. } => return Err(MapError::NotAffine),
                }
            }
            let mut m = IntervalMap::new((num(&e.interval[0])?, num(&e.interval[1])?), branches)?
                .with_name(&name);
            if let Some(l) = &e.labels {
                m = m.with_labels(l.clone());
            }
            Ok(AnyMap::Exact(m))
        }
        Mode::Numeric => {
            let num = |v: &Value| -> Result<f64, MapError> { Ok(parse_f64(&value_str(v)?)?) };
            let mut branches = Vec::new();
            for b in &e.branches {
                match b {
                    BranchSpec::Affine { domain, affine } => branches.push(Branch::affine(
                        num(&domain[0])?,
                        num(&domain[1])?,
                        num(&affine[0])?,
                        num(&affine[1])?,
                    )),
                    BranchSpec::Family { domain, family, param } => {
                        if family != "quadratic" {
                            return Err(MapError::Spec(format!("unknown family {family:?}")));
                        }
                        branches.push(Branch::quadratic(num(&domain[0])?, num(&domain[1])?, num(param)?));
                    }
                }
            }
            let mut m = IntervalMap::new((num(&e.interval[0])?, num(&e.interval[1])?), branches)?
                .with_name(&name);
            if let Some(t) = e.tolerance {
                m = m.with_tolerance(t);
            }
            if let Some(l) = &e.labels {
                m = m.with_labels(l.clone());
            }
            Ok(AnyMap::Numeric(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_tent() {
        let doc = r#"{"interval":["0","1"],"mode":"exact","branches":[
            {"domain":["0","1/2"],"affine":["2","0"]},
            {"domain":["1/2","1"],"affine":["-2","2"]}]}"#;
        let spec = MapSpec::parse(doc).unwrap();
        let m = spec.build().unwrap();
        assert_eq!(m.as_exact().unwrap().signs(), vec![1, -1]);
        assert_eq!(spec.hash(), MapSpec::parse(doc).unwrap().hash());
    }

    #[test]
    fn overlapping_spec_rejected() {
        let doc = r#"{"interval":["0","1"],"branches":[
            {"domain":["0","1/2"],"affine":["2","0"]},
            {"domain":["1/4","1"],"affine":["1","0"]}]}"#;
        let err = MapSpec::parse(doc).unwrap().build().unwrap_err();
        assert_eq!(err, MapError::OverlappingDomains(0, 1));
    }

    #[test]
    fn golden_spec_with_expressions() {
        let doc = r#"{"interval":[0,1],"branches":[
            {"domain":["0","phi-1"],"affine":["phi","0"]},
            {"domain":["phi-1","1"],"affine":["phi","-1"]}]}"#;
        let m = MapSpec::parse(doc).unwrap().build().unwrap();
        assert_eq!(m.n_branches(), 2);
    }

    #[test]
    fn numeric_quadratic_spec() {
        let doc = r#"{"interval":[0,1],"mode":"numeric","branches":[
            {"domain":[0,0.5],"family":"quadratic","param":1},
            {"domain":[0.5,1],"family":"quadratic","param":1}]}"#;
        assert!(!MapSpec::parse(doc).unwrap().build().unwrap().is_exact());
    }
}
