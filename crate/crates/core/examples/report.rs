//! Combined JSON report for a map given on the command line (default `builtin:beta:golden`).

use kneadlab::interval_map::MapSpec;
use kneadlab::report::{report_bundle, ReportOptions};

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| "builtin:beta:golden".into());
    let spec = MapSpec::parse(&src).expect("map spec");
    let bundle = report_bundle(&spec, &ReportOptions { n: 20, ..Default::default() }).expect("report");
    println!("{}", serde_json::to_string_pretty(&bundle.value).unwrap());
    eprintln!("certainty: {:?}", bundle.certainty);
}
