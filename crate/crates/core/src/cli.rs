//! Command-line front end. The binary only parses arguments and calls [`run`].

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::diagram::{build_diagram_pmm, export, PmmDiagram, DEFAULT_DEPTH_CAP};
use crate::error::Error;
use crate::interval_map::spec::{AnyMap, MapSpec};
use crate::kneading::{self, KneadingData};
use crate::on_map;
use crate::periodics::{self, Method};
use crate::report::{self, canonical, float, to_value, Certainty, ReportOptions};
use crate::shift::{self, ShiftGraph};
use crate::symbols::{parse_seq, Verdict};

#[derive(Debug, Parser)]
#[command(name = "kneadlab", version, about = "Entropy theory of piecewise monotone interval maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MapArg {
    /// `builtin:family:param`, a JSON map document, or a path to one.
    #[arg(long)]
    pub map: String,
}

#[derive(Debug, Args)]
pub struct SourceArg {
    /// Interval map whose Markov diagram is analysed.
    #[arg(long, required_unless_present = "graph")]
    pub map: Option<String>,
    /// Graph given directly: `ladder:N`, `complete:K`, `cycle:K`, `golden` or a JSON 0/1 matrix.
    #[arg(long, conflicts_with = "map")]
    pub graph: Option<String>,
    /// Depth cap of the Markov diagram.
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EntropyMethod {
    Lap,
    Length,
    Diagram,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CensusMethod {
    Direct,
    Diagram,
}

impl From<CensusMethod> for Method {
    fn from(m: CensusMethod) -> Method {
        match m {
            CensusMethod::Direct => Method::DirectAdmissibility,
            CensusMethod::Diagram => Method::DiagramLoops,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a map and print its natural partition.
    Validate(MapArg),
    /// Kneading sequences of the partition endpoints.
    Kneading {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = kneading::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Admissibility of a word or of an eventually periodic sequence such as `0(01)`.
    Admissible {
        #[command(flatten)]
        map: MapArg,
        word: String,
        #[arg(long, default_value_t = kneading::DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Topological entropy by lap numbers, length growth or the Markov diagram.
    Entropy {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, value_enum, default_value = "lap")]
        method: EntropyMethod,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: usize,
        /// Print lap numbers as CSV `(n, count)`.
        #[arg(long)]
        csv: bool,
    },
    /// Build the Markov diagram; JSON by default, DOT with `--dot PATH` (`-` for stdout).
    Diagram {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth: usize,
        #[arg(long)]
        dot: Option<String>,
    },
    /// Vere-Jones classification at a vertex.
    Classify {
        #[command(flatten)]
        source: SourceArg,
        #[arg(long)]
        vertex: Option<usize>,
        /// Number of return-series terms.
        #[arg(long, default_value_t = 60)]
        depth: usize,
        /// Exact radius `p/q` for the partial sums, for truncations of infinite graphs.
        #[arg(long)]
        radius: Option<String>,
    },
    /// Measure of maximal entropy of a component.
    Maxmeasure {
        #[command(flatten)]
        source: SourceArg,
        #[arg(long)]
        component: Option<usize>,
    },
    /// Local (`--local v`) or semi-local (`--set a,b,…`) zeta function of the graph.
    Zeta {
        #[command(flatten)]
        source: SourceArg,
        #[arg(long)]
        local: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        #[arg(long, default_value_t = 16)]
        terms: usize,
    },
    /// Artin–Mazur zeta function of the map.
    ZetaMap {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 12)]
        terms: usize,
        #[arg(long, value_enum, default_value = "diagram")]
        method: CensusMethod,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: usize,
    },
    /// Periodic-point census `fix[n]`.
    Periodic {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, value_enum, default_value = "direct")]
        method: CensusMethod,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Distance between periodic-orbit measures and the maximal measures on cylinders.
    Equidistribution {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: usize,
    },
    /// Best horseshoe of `f^T`, `T ≤ tmax`, with an exact certificate.
    Horseshoe {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 6)]
        tmax: usize,
        #[arg(long, default_value_t = 64)]
        grid: u32,
    },
    /// Combined JSON report.
    Report {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
}

/// Text to print and whether any part of it is only depth-limited or undecidable.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub certainty: Certainty,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.certainty {
            Certainty::Certified => 0,
            _ => 2,
        }
    }
}

enum Input {
    Map(MapSpec),
    Graph { src: String, graph: ShiftGraph },
}

fn load_map(src: &str) -> Result<(MapSpec, AnyMap), Error> {
    let spec = MapSpec::parse(src)?;
    let map = spec.build()?;
    Ok((spec, map))
}

fn kneading_of(map: &AnyMap, depth: usize) -> KneadingData {
    on_map!(map, m => kneading::kneading(m, depth))
}

fn diagram_of(map: &AnyMap, cap: usize) -> Result<PmmDiagram, Error> {
    if !map.is_exact() {
        return Err(Error::Usage("numeric maps have truncated kneading data; the Markov diagram needs an exact map".into()));
    }
    let kd = kneading_of(map, kneading::DEFAULT_DEPTH);
    Ok(build_diagram_pmm(&kd, cap)?)
}

fn load_source(s: &SourceArg) -> Result<(Input, ShiftGraph), Error> {
    if let Some(src) = &s.graph {
        let g = ShiftGraph::parse(src).map_err(Error::Usage)?;
        return Ok((Input::Graph { src: src.clone(), graph: g.clone() }, g));
    }
    let (spec, map) = load_map(s.map.as_deref().expect("clap requires map or graph"))?;
    let d = diagram_of(&map, s.cap)?;
    let g = ShiftGraph::from_diagram(&d.diagram);
    Ok((Input::Map(spec), g))
}

fn provenance(input: &Input, depths: Value, c: Certainty) -> Value {
    match input {
        Input::Map(spec) => report::provenance(spec, depths, c),
        Input::Graph { src, graph } => json!({
            "tool": concat!("kneadlab ", env!("CARGO_PKG_VERSION")),
            "spec_hash": hex::encode(Sha256::digest(src.as_bytes())),
            "graph": src,
            "origin": graph.origin,
            "depths": depths,
            "certainty": c,
        }),
    }
}

fn json_out(mut body: Value, prov: Value, c: Certainty) -> Outcome {
    body["provenance"] = prov;
    let text = serde_json::to_string_pretty(&canonical(body)).expect("json value prints");
    Outcome { text, certainty: c }
}

fn map_json(spec: &MapSpec, body: Value, depths: Value, c: Certainty) -> Outcome {
    json_out(body, report::provenance(spec, depths, c), c)
}

fn require_exact(map: &AnyMap) -> Result<&crate::interval_map::ExactMap, Error> {
    map.as_exact().ok_or_else(|| Error::Usage("this command needs an exact-mode map".into()))
}

fn graph_certainty(g: &ShiftGraph) -> Certainty {
    if g.is_finite_complete() {
        Certainty::Certified
    } else {
        Certainty::DepthLimited
    }
}

pub fn run(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Validate(m) => {
            let (spec, map) = load_map(&m.map)?;
            let part = on_map!(&map, x => x.validate())?;
            let body = json!({ "valid": true, "name": map.name(), "exact": map.is_exact(), "partition": to_value(&part) });
            Ok(map_json(&spec, body, json!({}), Certainty::Certified))
        }
        Command::Kneading { map: m, depth } => {
            let (spec, map) = load_map(&m.map)?;
            let kd = kneading_of(&map, *depth);
            let (body, c) = report::kneading_section(&kd);
            Ok(map_json(&spec, body, json!({ "kneading": depth }), c))
        }
        Command::Admissible { map: m, word, depth } => {
            let (spec, map) = load_map(&m.map)?;
            let kd = kneading_of(&map, *depth);
            let seq = parse_seq(word, &kd.labels).ok_or_else(|| Error::Usage(format!("cannot parse {word:?}")))?;
            let v = kd.is_admissible(&seq);
            let c = if v == Verdict::Undecidable { Certainty::Undecidable } else { Certainty::Certified };
            let body = json!({ "word": word, "sequence": seq.render(&kd.labels), "admissible": v });
            Ok(map_json(&spec, body, json!({ "kneading": depth }), c))
        }
        Command::Entropy { map: m, method, n, cap, csv } => {
            let (spec, map) = load_map(&m.map)?;
            match method {
                EntropyMethod::Lap if *csv => {
                    let laps = on_map!(&map, x => kneading::lap_numbers(x, *n, kneading::laps::DEFAULT_STATE_BUDGET))?;
                    let mut text = String::from("n,count\n");
                    for (k, l) in laps.iter().enumerate() {
                        text.push_str(&format!("{},{}\n", k + 1, l));
                    }
                    Ok(Outcome { text, certainty: Certainty::Certified })
                }
                EntropyMethod::Lap => {
                    let l = on_map!(&map, x => kneading::entropy_lap(x, *n))?;
                    let body = json!({ "h": float(l.estimate), "method": "lap", "upper_bound": float(l.upper_bound), "estimates": l.estimates });
                    Ok(map_json(&spec, body, json!({ "n": n }), Certainty::Certified))
                }
                EntropyMethod::Length => {
                    let l = on_map!(&map, x => kneading::length_growth(x, *n))?;
                    let body = json!({ "h": float(l.estimate), "method": "length", "estimates": l.estimates });
                    Ok(map_json(&spec, body, json!({ "n": n }), Certainty::Certified))
                }
                EntropyMethod::Diagram if !map.is_exact() => {
                    let body = json!({ "method": "diagram", "status": "TruncatedKneading" });
                    Ok(map_json(&spec, body, json!({ "depth_cap": cap }), Certainty::Undecidable))
                }
                EntropyMethod::Diagram => {
                    let d = diagram_of(&map, *cap)?;
                    let g = ShiftGraph::from_diagram(&d.diagram);
                    let c = graph_certainty(&g);
                    let body = match shift::entropy(&g, None) {
                        Ok(r) => json!({ "h": float(r.h), "method": "diagram", "lambda": float(r.lambda), "residual": float(r.residual), "censored": r.censored }),
                        Err(crate::error::ShiftError::NoCycle) => json!({ "h": float(0.0), "method": "diagram", "no_cycle": true }),
                        Err(e) => return Err(e.into()),
                    };
                    Ok(map_json(&spec, body, json!({ "depth_cap": cap }), c))
                }
            }
        }
        Command::Diagram { map: m, depth, dot } => {
            let (spec, map) = load_map(&m.map)?;
            let d = diagram_of(&map, *depth)?;
            let c = if d.diagram.complete { Certainty::Certified } else { Certainty::DepthLimited };
            if let Some(path) = dot {
                let text = export::to_dot(&d.diagram);
                if path == "-" {
                    return Ok(Outcome { text, certainty: c });
                }
                std::fs::write(path, &text)?;
            }
            let mut body = export::to_json(&d.diagram);
            body["summary"] = report::diagram_summary(&d);
            Ok(map_json(&spec, body, json!({ "depth_cap": depth }), c))
        }
        Command::Classify { source, vertex, depth, radius } => {
            let (input, g) = load_source(source)?;
            let v = match vertex {
                Some(v) => *v,
                None => report::base_vertex(&g)?,
            };
            let s = shift::return_series(&g, v, *depth)?;
            let exact_r: Option<BigRational> = match radius {
                Some(r) => Some(crate::arith::parse::parse_rational(r).map_err(|e| Error::Usage(e.to_string()))?),
                None => None,
            };
            let r = match &exact_r {
                Some(q) => num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN),
                None => 1.0 / shift::entropy(&g, Some(v))?.lambda,
            };
            let cls = shift::classify(&s, r, exact_r.as_ref())?;
            let c = match cls.certainty {
                shift::Certainty::Certified => Certainty::Certified,
                shift::Certainty::DepthLimited => Certainty::DepthLimited,
            };
            let body = json!({
                "vertex": v,
                "name": g.names.get(v),
                "class": cls.class,
                "certainty": cls.certainty,
                "detail": to_value(&cls),
                "f": s.f.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "exact_gf": to_value(&s.exact_gf),
                "censored_from": s.censored_from,
            });
            Ok(json_out(body, provenance(&input, json!({ "terms": depth, "depth_cap": source.cap }), c), c))
        }
        Command::Maxmeasure { source, component } => {
            let (input, g) = load_source(source)?;
            let m = shift::max_measure(&g, *component)?;
            let body = json!({
                "component": m.component,
                "lambda": float(m.lambda),
                "radius": float(m.radius),
                "period": m.period,
                "entropy": float(shift::markov_entropy(&m.measure)),
                "pi": m.measure.pi,
                "transitions": to_value(&m.measure.transitions),
                "left": m.eigen.left,
                "right": m.eigen.right,
                "residual": float(m.eigen.residual),
                "vertex_names": g.names,
            });
            let c = graph_certainty(&g);
            Ok(json_out(body, provenance(&input, json!({ "depth_cap": source.cap }), c), c))
        }
        Command::Zeta { source, local, set, terms } => {
            let (input, g) = load_source(source)?;
            let c = graph_certainty(&g);
            let body = match (local, set.is_empty()) {
                (Some(v), true) => to_value(&shift::local_zeta(&g, *v, *terms)?),
                (None, false) => to_value(&shift::semi_local_zeta(&g, set, *terms)?),
                _ => return Err(Error::Usage("give exactly one of --local or --set".into())),
            };
            Ok(json_out(body, provenance(&input, json!({ "terms": terms, "depth_cap": source.cap }), c), c))
        }
        Command::ZetaMap { map: m, terms, method, cap } => {
            let (spec, map) = load_map(&m.map)?;
            let kd = kneading_of(&map, kneading::DEFAULT_DEPTH);
            let census = periodics::count_periodic(&kd, *terms, (*method).into(), *cap, periodics::DEFAULT_BUDGET)?;
            let z = periodics::zeta(&census)?;
            let c = census_certainty(&census);
            let body = json!({ "method": census.method, "zeta": to_value(&z) });
            Ok(map_json(&spec, body, json!({ "terms": terms, "depth_cap": cap }), c))
        }
        Command::Periodic { map: m, n, method, cap, csv } => {
            let (spec, map) = load_map(&m.map)?;
            let kd = kneading_of(&map, kneading::DEFAULT_DEPTH);
            let census = periodics::count_periodic(&kd, *n, (*method).into(), *cap, periodics::DEFAULT_BUDGET)?;
            let c = census_certainty(&census);
            if *csv {
                return Ok(Outcome { text: census.to_csv(), certainty: c });
            }
            let orbits = periodics::exact_period_orbits(&census.fix);
            let body = json!({
                "census": to_value(&census),
                "exact_period_orbits": orbits.map(|o| o.iter().map(ToString::to_string).collect::<Vec<_>>()),
            });
            Ok(map_json(&spec, body, json!({ "n": n, "depth_cap": cap }), c))
        }
        Command::Equidistribution { map: m, n, depth, cap } => {
            let (spec, map) = load_map(&m.map)?;
            let d = diagram_of(&map, *cap)?;
            let e = periodics::equidistribution(&d.diagram, *n, *depth)?;
            Ok(map_json(&spec, to_value(&e), json!({ "n": n, "depth": depth, "depth_cap": cap }), Certainty::Certified))
        }
        Command::Horseshoe { map: m, tmax, grid } => {
            let (spec, map) = load_map(&m.map)?;
            let exact = require_exact(&map)?;
            let h = kneading::find_horseshoe(exact, *tmax, *grid);
            let bound = kneading::entropy_lap(exact, 2 * tmax.max(&1))?.upper_bound;
            let body = json!({
                "horseshoe": h.as_ref().map(|h| to_value(&h.view())),
                "verified": h.as_ref().map(|h| kneading::verify_horseshoe(exact, h)),
                "lap_upper_bound": float(bound),
            });
            Ok(map_json(&spec, body, json!({ "tmax": tmax, "grid": grid }), Certainty::Certified))
        }
        Command::Report { map: m, n, cap, terms } => {
            let spec = MapSpec::parse(&m.map)?;
            let opts = ReportOptions { n: *n, depth_cap: *cap, zeta_terms: *terms, ..Default::default() };
            let b = report::report_bundle(&spec, &opts)?;
            let text = serde_json::to_string_pretty(&b.value)?;
            Ok(Outcome { text, certainty: b.certainty })
        }
    }
}

fn census_certainty(c: &periodics::PeriodicCensus) -> Certainty {
    if c.undecidable.iter().any(|&u| u > 0) {
        Certainty::Undecidable
    } else {
        Certainty::Certified
    }
}

/// Cap rayon's pool at `KNEADLAB_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("KNEADLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parse, run and print; returns the process exit code (0 ok, 2 depth-limited, 1 error).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    match run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.text.trim_end());
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
