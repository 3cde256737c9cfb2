//! End-to-end acceptance gate: every verification suite must pass at its
//! stated tolerance. Run with `cargo test --test acceptance -- --nocapture`
//! to see the per-suite verdict lines.

use esms_cli::config::Config;
use esms_cli::context::Context;
use esms_cli::suites::run_suite;

/// (suite, what the two routes are), in presentation order.
const PLAN: [(&str, &str); 10] = [
    (
        "eis-coeff",
        "classical Eisenstein coefficients: divisor/L closed form vs Kloosterman sums",
    ),
    (
        "shifted-sum",
        "shifted convolution D(n;s,t): direct series vs twisted-L modulus sum",
    ),
    (
        "functional-eq",
        "completed twist Lambda(f,t,-d/c): reflection t -> 2-t with inverted cusp",
    ),
    (
        "modular-symbol",
        "modular symbols: twisted-L rows vs antiderivative differences",
    ),
    (
        "coefficients",
        "cusp form coefficients: Hecke multiplicativity and the growth bound",
    ),
    (
        "l-ratio",
        "sigma-weighted Dirichlet series vs its L-function product formula",
    ),
    (
        "ms-coeff",
        "symbol-weighted Eisenstein coefficient: modulus sum vs Fourier extraction",
    ),
    (
        "completion",
        "completed series: E* = G - F.E per coset, and second-order automorphy",
    ),
    (
        "bessel-transform",
        "K-Bessel transform: quadrature vs Gamma-quotient closed form",
    ),
    (
        "weighted-shift",
        "weighted shifted L-values: cross-difference vs tail series, tail monotonicity",
    ),
];

#[test]
fn all_suites_pass() {
    let mut config = Config::default();
    config.finalise().expect("default config is valid");
    let ctx = Context::new(config).expect("default context builds");

    let mut failures = Vec::new();
    for (i, (suite, what)) in PLAN.iter().enumerate() {
        let report = run_suite(&ctx, suite).unwrap_or_else(|e| panic!("suite {suite} errored: {e}"));
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "[{:2}/10] {verdict} {suite} — {what} ({} checks, {} ms)",
            i + 1,
            report.checks.len(),
            report.runtime_ms
        );
        for check in report.checks.iter().filter(|c| !c.passed()) {
            println!(
                "        FAIL {}: |a-b| = {:.3e}, rel = {:.3e}, tol({}) = {:.3e}",
                check.id, check.abs_diff, check.rel_diff, check.tolerance_kind, check.tolerance
            );
            failures.push(format!("{suite}/{}", check.id));
        }
        if !report.passed && report.checks.iter().all(|c| c.passed()) {
            failures.push(suite.to_string());
        }
    }
    assert!(
        failures.is_empty(),
        "failing checks: {}",
        failures.join(", ")
    );
}
