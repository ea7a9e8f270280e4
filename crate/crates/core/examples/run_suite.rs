//! Runs a named suite from code and prints its JSON report.
//!
//! cargo run --example run_suite -- inversion z2:2

use dunkl_kit::suites::{run_suite, SuiteConfig};

fn main() -> dunkl_kit::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "inversion".into());
    let preset = args.next().unwrap_or_else(|| "z2:1".into());
    let report = run_suite(&SuiteConfig::preset(&suite, &preset)?)?;
    println!("{}", report.to_json());
    eprintln!("{}", report.summary());
    std::process::exit(if report.passed() { 0 } else { 1 });
}
