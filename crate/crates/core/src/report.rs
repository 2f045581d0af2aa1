//! JSON reports: float formatting, provenance and the combined bundle.

use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use crate::arith::fmt17;
use crate::diagram::{build_diagram_pmm, PmmDiagram};
use crate::error::Error;
use crate::interval_map::spec::{AnyMap, MapSpec};
use crate::kneading::{self, KneadingData};
use crate::periodics::{self, Method};
use crate::shift::{self, ShiftGraph};

pub const SCHEMA: &str = "kneadlab.report/1";

/// Run `$body` with `$m` bound to the map inside an [`AnyMap`], whatever its scalar type.
#[macro_export]
macro_rules! on_map {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::interval_map::spec::AnyMap::Exact($m) => $body,
            $crate::interval_map::spec::AnyMap::Numeric($m) => $body,
        }
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Certainty {
    Certified,
    DepthLimited,
    Undecidable,
}

/// Rewrite every non-integer number with 17 significant digits.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                match s.parse::<f64>() {
                    Ok(x) if x.is_finite() => Value::Number(Number::from_str(&fmt17(x)).expect("formatted float parses")),
                    _ => Value::Number(n),
                }
            } else {
                Value::Number(n)
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, canonical(v))).collect()),
        other => other,
    }
}

/// `serde_json::to_value` with the error folded into the value.
pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or_else(|e| json!({ "error": e.to_string() }))
}

pub fn float(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt17(x)).expect("formatted float parses"))
    } else {
        Value::String(format!("{x}"))
    }
}

pub fn provenance(spec: &MapSpec, depths: Value, certainty: Certainty) -> Value {
    json!({
        "tool": concat!("kneadlab ", env!("CARGO_PKG_VERSION")),
        "spec_hash": spec.hash(),
        "spec": spec,
        "depths": depths,
        "certainty": certainty,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub kneading_depth: usize,
    /// Iterate for the lap and length methods.
    pub n: usize,
    pub depth_cap: usize,
    pub zeta_terms: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { kneading_depth: kneading::DEFAULT_DEPTH, n: 30, depth_cap: 64, zeta_terms: 12 }
    }
}

pub struct Bundle {
    pub value: Value,
    pub certainty: Certainty,
}

/// A section value and its certainty, or the error that stopped it.
type Section = Result<(Value, Certainty), Error>;

fn record(out: &mut Map<String, Value>, worst: &mut Certainty, name: &str, s: Section) {
    match s {
        Ok((v, c)) => {
            *worst = (*worst).max(c);
            out.insert(name.into(), v);
        }
        Err(e) => {
            out.insert(name.into(), json!({ "error": e.to_string() }));
        }
    }
}

pub fn kneading_section(kd: &KneadingData) -> (Value, Certainty) {
    let c = if kd.is_exact() { Certainty::Certified } else { Certainty::DepthLimited };
    let v = json!({
        "sequences": kd.render(),
        "signs": kd.signs,
        "labels": kd.labels,
        "exact": kd.is_exact(),
        "depth": kd.depth,
        "errors": kd.errors,
    });
    (v, c)
}

pub fn diagram_summary(p: &PmmDiagram) -> Value {
    let d = &p.diagram;
    json!({
        "vertices": d.n_vertices(),
        "arrows": d.n_arrows(),
        "complete": d.complete,
        "components": d.n_components(),
        "depth_cap": d.depth_cap,
        "truncated_kneading": p.truncated_kneading,
        "rule_counts": p.rule_counts,
        "cut_arrow_failures": p.cut_arrow_failures,
    })
}

/// Vertex used for classification: the first member of the top-entropy component.
pub fn base_vertex(g: &ShiftGraph) -> Result<usize, Error> {
    let r = shift::entropy(g, None)?;
    let info = g.scc();
    Ok(info.members[r.component][0])
}

/// Combined report for one map: kneading, three entropies, diagram, classification,
/// maximal measures and the head of the zeta function. Sections that fail carry an
/// error record instead of aborting the bundle.
pub fn report_bundle(spec: &MapSpec, opts: &ReportOptions) -> Result<Bundle, Error> {
    let map = spec.build()?;
    let mut out = Map::new();
    let mut worst = Certainty::Certified;
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("map".into(), json!({ "name": map.name(), "branches": map.n_branches(), "exact": map.is_exact() }));

    let kd = on_map!(&map, m => kneading::kneading(m, opts.kneading_depth));
    let (kv, kc) = kneading_section(&kd);
    worst = worst.max(kc);
    out.insert("kneading".into(), kv);

    let lap = on_map!(&map, m => kneading::entropy_lap(m, opts.n));
    let len = on_map!(&map, m => kneading::length_growth(m, opts.n));
    let pmm = match &map {
        AnyMap::Exact(_) => Some(build_diagram_pmm(&kd, opts.depth_cap)),
        AnyMap::Numeric(_) => None,
    };
    let graph = match &pmm {
        Some(Ok(p)) => Some(ShiftGraph::from_diagram(&p.diagram)),
        _ => None,
    };
    let diag_h = graph.as_ref().map(shift::entropy_or_zero);

    let mut ent = Map::new();
    let mut vals: Vec<(&str, f64)> = Vec::new();
    match &lap {
        Ok(l) => {
            ent.insert("lap".into(), json!({ "h": float(l.estimate), "upper_bound": float(l.upper_bound), "n": l.n }));
            vals.push(("lap", l.estimate));
        }
        Err(e) => {
            ent.insert("lap".into(), json!({ "error": e.to_string() }));
        }
    }
    match &len {
        Ok(l) => {
            ent.insert("length".into(), json!({ "h": float(l.estimate), "n": l.n }));
            vals.push(("length", l.estimate));
        }
        Err(e) => {
            ent.insert("length".into(), json!({ "error": e.to_string() }));
        }
    }
    match (&graph, diag_h) {
        (Some(g), Some(h)) => {
            let complete = g.is_finite_complete();
            if !complete {
                worst = worst.max(Certainty::DepthLimited);
            }
            ent.insert("diagram".into(), json!({ "h": float(h), "complete": complete, "lower_bound_only": !complete }));
            vals.push(("diagram", h));
        }
        _ => {
            ent.insert("diagram".into(), json!({ "status": "TruncatedKneading" }));
        }
    }
    let mut dev = Map::new();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            dev.insert(format!("{}-{}", vals[i].0, vals[j].0), float((vals[i].1 - vals[j].1).abs()));
        }
    }
    ent.insert("deviations".into(), Value::Object(dev));
    out.insert("entropy".into(), Value::Object(ent));

    match &pmm {
        Some(Ok(p)) => {
            out.insert("diagram".into(), diagram_summary(p));
        }
        Some(Err(e)) => {
            out.insert("diagram".into(), json!({ "error": e.to_string() }));
        }
        None => {
            out.insert("diagram".into(), json!({ "status": "TruncatedKneading" }));
        }
    }

    if let Some(g) = &graph {
        let cls: Section = (|| {
            let v = base_vertex(g)?;
            let e = shift::entropy(g, Some(v))?;
            let s = shift::return_series(g, v, 2 * g.n().max(8))?;
            let c = shift::classify(&s, 1.0 / e.lambda, None)?;
            let cert = match c.certainty {
                shift::Certainty::Certified => Certainty::Certified,
                shift::Certainty::DepthLimited => Certainty::DepthLimited,
            };
            Ok((json!({ "vertex": v, "name": g.names[v], "result": to_value(&c) }), cert))
        })();
        record(&mut out, &mut worst, "classification", cls);

        let inv: Section = periodics::max_measure_inventory(g, map.n_branches())
            .map(|i| {
                let c = match i.certainty {
                    periodics::InventoryCertainty::Certified => Certainty::Certified,
                    periodics::InventoryCertainty::DepthLimited => Certainty::DepthLimited,
                };
                (to_value(&i), c)
            })
            .map_err(Error::from);
        record(&mut out, &mut worst, "max_measures", inv);

        let zeta: Section = (|| {
            let p = pmm.as_ref().and_then(|r| r.as_ref().ok()).expect("graph implies diagram");
            let (census, c) = if p.diagram.complete {
                (periodics::census_diagram(&p.diagram, opts.zeta_terms)?, Certainty::Certified)
            } else {
                let n = opts.zeta_terms.min(12);
                let census = periodics::count_periodic(&kd, n, Method::DirectAdmissibility, opts.depth_cap, periodics::DEFAULT_BUDGET)?;
                let c = if census.undecidable.iter().any(|&u| u > 0) { Certainty::Undecidable } else { Certainty::Certified };
                (census, c)
            };
            let z = periodics::zeta(&census)?;
            Ok((json!({ "method": census.method, "fix": census.fix.iter().map(ToString::to_string).collect::<Vec<_>>(), "zeta": to_value(&z) }), c))
        })();
        record(&mut out, &mut worst, "zeta", zeta);
    }

    out.insert(
        "provenance".into(),
        provenance(
            spec,
            json!({ "kneading": opts.kneading_depth, "n": opts.n, "depth_cap": opts.depth_cap, "zeta_terms": opts.zeta_terms }),
            worst,
        ),
    );
    Ok(Bundle { value: canonical(Value::Object(out)), certainty: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_floats() {
        let v = canonical(json!({ "a": 0.5, "b": [1, 2.25], "c": "x" }));
        assert_eq!(v.to_string(), r#"{"a":5.0000000000000000e-1,"b":[1,2.2500000000000000e+0],"c":"x"}"#);
        let back: f64 = serde_json::from_value(v["a"].clone()).unwrap();
        assert_eq!(back, 0.5);
    }

    #[test]
    fn beta2_bundle() {
        let spec = MapSpec::parse("builtin:beta:2").unwrap();
        let b = report_bundle(&spec, &ReportOptions { n: 16, ..Default::default() }).unwrap();
        let h = |k: &str| -> f64 { serde_json::from_value(b.value["entropy"][k]["h"].clone()).unwrap() };
        for k in ["lap", "length", "diagram"] {
            assert!((h(k) - 2f64.ln()).abs() < 1e-6, "{k}");
        }
        assert_eq!(b.certainty, Certainty::Certified);
    }
}
