//! End-to-end acceptance: each criterion re-reads the residuals of the
//! relevant suite reports and judges them against its own tolerance.
//! Runs without the test harness so the per-criterion lines always show.

use dunkl_kit::report::VerificationReport;
use dunkl_kit::suites::{run_suite, SuiteConfig};

const SEED: u64 = 20_240_611;

fn run(suite: &str, preset: &str) -> VerificationReport {
    let mut cfg = SuiteConfig::preset(suite, preset).expect("preset");
    cfg.seed = SEED;
    run_suite(&cfg).expect("suite runs")
}

/// Residual of `id`, or infinity when the check is missing or errored.
fn residual(r: &VerificationReport, id: &str) -> f64 {
    r.check(id).and_then(|c| c.residual).unwrap_or(f64::INFINITY)
}

struct Ledger {
    lines: Vec<(usize, bool, String)>,
}

impl Ledger {
    fn record(&mut self, n: usize, checks: Vec<(String, f64, f64)>) {
        let worst = checks
            .iter()
            .filter(|(_, v, tol)| !(v <= tol))
            .map(|(id, v, tol)| format!("{id}={v:.3e}>{tol:.0e}"))
            .collect::<Vec<_>>();
        let pass = worst.is_empty() && !checks.is_empty();
        let max = checks.iter().map(|c| c.1).fold(0.0, f64::max);
        let msg = if pass {
            format!("{} checks, max residual {max:.3e}", checks.len())
        } else {
            worst.join(", ")
        };
        self.lines.push((n, pass, msg));
    }
}

fn ids(r: &VerificationReport, prefix: &str) -> Vec<String> {
    r.checks.iter().filter(|c| c.id.starts_with(prefix)).map(|c| c.id.clone()).collect()
}

fn main() {
    let mut ledger = Ledger { lines: Vec::new() };
    let all_presets = ["z2:1/2", "z2:1", "z2:2", "z2:7/3", "z2xz2:1,2"];

    // 1. exact transmutation, degree <= 8
    let mut c = Vec::new();
    for p in all_presets {
        let r = run("transmutation", p);
        let found = ids(&r, "transmutation-degree-");
        assert_eq!(found.len(), 9, "degrees 0..=8 for {p}");
        for id in found {
            c.push((format!("{p}/{id}"), residual(&r, &id), 0.0));
        }
    }
    ledger.record(1, c);

    // 2. normalization
    let mut c = Vec::new();
    for p in all_presets {
        let r = run("normalization", p);
        c.push((format!("{p}/v-of-one"), residual(&r, "v-of-one"), 0.0));
        c.push((format!("{p}/mu-total-mass"), residual(&r, "mu-total-mass"), 1e-10));
    }
    ledger.record(2, c);

    // 3. numeric against exact intertwiner
    let mut c = Vec::new();
    for p in all_presets {
        let r = run("cross-engine", p);
        c.push((format!("{p}/monomials"), residual(&r, "numeric-vs-exact-monomials"), 1e-10));
        if p == "z2:1" {
            c.push((format!("{p}/v-of-y-squared"), residual(&r, "v-of-y-squared"), 1e-10));
        }
    }
    ledger.record(3, c);

    // 4. kernel
    let mut c = Vec::new();
    for p in ["z2:1/2", "z2:1", "z2:2", "z2xz2:1,2"] {
        let r = run("kernel", p);
        c.push((format!("{p}/at-zero"), residual(&r, "at-zero"), 0.0));
        c.push((format!("{p}/unit-bound"), residual(&r, "unit-bound"), 1e-12));
        c.push((format!("{p}/series"), residual(&r, "series-vs-closed-form"), 1e-10));
        if !p.starts_with("z2xz2") {
            assert_eq!(r.env["samples"], 1000);
            c.push((format!("{p}/laplace"), residual(&r, "laplace-representation"), 1e-10));
        }
    }
    ledger.record(4, c);

    // 5. transform
    let mut c = Vec::new();
    for p in ["z2:1/2", "z2:1", "z2:2"] {
        let r = run("transform", p);
        c.push((format!("{p}/gaussian"), residual(&r, "gaussian-eigenfunction"), 1e-8));
        c.push((format!("{p}/round-trip"), residual(&r, "round-trip"), 1e-6));
        c.push((format!("{p}/factorization"), residual(&r, "factorization"), 1e-6));
    }
    let r = run("transform", "z2xz2:1,2");
    c.push(("z2xz2:1,2/gaussian".into(), residual(&r, "gaussian-eigenfunction"), 1e-8));
    ledger.record(5, c);

    // 6. the three inversion paths
    let mut c = Vec::new();
    for p in ["z2:1", "z2:2"] {
        let r = run("inversion", p);
        for id in [
            "inverse-p-tv-vs-tv-q",
            "round-trip-v-after-p-tv",
            "round-trip-v-after-tv-q",
            "round-trip-tv-after-v-p",
            "dual-inverse-multiplier-vs-local",
        ] {
            c.push((format!("{p}/{id}"), residual(&r, id), 1e-5));
        }
    }
    ledger.record(6, c);

    // 7. representing distributions
    let mut c = Vec::new();
    for p in ["z2:1", "z2:2"] {
        let r = run("representing", p);
        c.push((format!("{p}/eta"), residual(&r, "eta-represents-inverse"), 1e-5));
        c.push((format!("{p}/z"), residual(&r, "z-represents-dual-inverse"), 1e-5));
    }
    ledger.record(7, c);

    // 8. support
    let mut c = Vec::new();
    for p in ["z2:1", "z2:2"] {
        let r = run("support", p);
        assert_eq!(r.env["delta"], 0.05);
        c.push((format!("{p}/p-local"), residual(&r, "p-local-outside-support"), 0.0));
        c.push((format!("{p}/tv"), residual(&r, "tv-outside-support"), 1e-8));
    }
    ledger.record(8, c);

    // 9. translation and convolution
    let mut c = Vec::new();
    for p in ["z2:1", "z2:2"] {
        let r = run("translation", p);
        c.push((format!("{p}/tau-zero"), residual(&r, "tau-zero-identity"), 1e-8));
        c.push((format!("{p}/spectral-vs-p"), residual(&r, "translation-spectral-vs-p-tv"), 1e-5));
        c.push((format!("{p}/spectral-vs-q"), residual(&r, "translation-spectral-vs-tv-q"), 1e-5));
        c.push((format!("{p}/convolution"), residual(&r, "convolution-theorem"), 1e-5));
        c.push((format!("{p}/distribution"), residual(&r, "distribution-law"), 1e-5));
    }
    ledger.record(9, c);

    // 10. approximate identity
    let mut c = Vec::new();
    for p in ["z2:1", "z2:2"] {
        let r = run("approx-identity", p);
        c.push((format!("{p}/decrease"), residual(&r, "approx-identity-decrease"), 0.2));
        c.push((format!("{p}/quadratic-bound"), residual(&r, "approx-identity-quadratic-bound"), 0.0));
        let m = r.env.get("fitted_M").and_then(|v| v.as_f64()).unwrap_or(f64::INFINITY);
        c.push((format!("{p}/M-finite"), if m.is_finite() { 0.0 } else { 1.0 }, 0.0));
        let rows = r.plot_data("approx-identity-residual").map(|s| s.lines().count() - 1).unwrap_or(0);
        assert_eq!(rows, 4);
    }
    ledger.record(10, c);

    // 11. determinism
    let mut c = Vec::new();
    for (s, p) in [("kernel", "z2:1"), ("inversion", "z2:2"), ("approx-identity", "z2:1")] {
        let a = run(s, p).body_json();
        let b = run(s, p).body_json();
        c.push((format!("{s}/{p}"), if a == b { 0.0 } else { 1.0 }, 0.0));
    }
    ledger.record(11, c);

    let mut failed = Vec::new();
    for (n, pass, msg) in &ledger.lines {
        println!("criterion {n:>2}: {} {msg}", if *pass { "PASS" } else { "FAIL" });
        if !pass {
            failed.push(*n);
        }
    }
    assert_eq!(ledger.lines.len(), 11);
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
