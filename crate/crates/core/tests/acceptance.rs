//! The eleven acceptance criteria, each with its trial count, tolerance and
//! wall-clock bound. One PASS/FAIL line is printed per criterion.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use trains::groups::{FiniteSupportOperator, GroupKind};
use trains::repharness::{spherical_phi, SphericalParams};
use trains::suites::{ordered_triples, run_suite, Suite, SuiteConfig, SuiteReport};
use trains::Matrix;

struct Line {
    id: usize,
    name: &'static str,
    pass: bool,
    note: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn suite(suite: Suite, trials: usize, seed: u64, edit: impl FnOnce(&mut SuiteConfig)) -> SuiteReport {
    let mut cfg = SuiteConfig::new(suite);
    cfg.trials = trials;
    cfg.seed = seed;
    edit(&mut cfg);
    run_suite(&cfg).expect("valid configuration")
}

fn suite_line(
    id: usize,
    name: &'static str,
    limit: Duration,
    run: impl FnOnce() -> Vec<SuiteReport>,
) -> Line {
    let (reports, took) = timed(run);
    let passed: usize = reports.iter().map(|r| r.passed).sum();
    let trials: usize = reports.iter().map(|r| r.trials).sum();
    let ok = reports.iter().all(|r| r.pass) && took <= limit;
    let mut note = format!("{passed}/{trials} trials, {:.2}s (limit {}s)", took.as_secs_f64(), limit.as_secs());
    if let Some(c) = reports.iter().find_map(|r| r.counterexample.as_ref()) {
        note.push_str(&format!("; first failure: {}", c.detail));
    }
    Line { id, name, pass: ok, note }
}

fn spherical_line() -> Line {
    let (res, took) = timed(|| {
        let any = SphericalParams::new(vec![0.7, -1.3], 0.4, 1).unwrap();
        let one = spherical_phi(&any, &FiniteSupportOperator::identity(GroupKind::GlR)).unwrap();
        let p0 = SphericalParams::new(vec![0.0], 0.0, 0).unwrap();
        let d2 = FiniteSupportOperator::new(GroupKind::GlR, Matrix::from_i64(&[&[2]])).unwrap();
        let two = spherical_phi(&p0, &d2).unwrap();
        let report = suite(Suite::Spherical, 20, 3, |_| {});
        (one, two, report)
    });
    let (one, two, report) = res;
    let exact_one = one == Complex64::new(1.0, 0.0);
    let err = (two - Complex64::new(2.0 / 5f64.sqrt(), 0.0)).norm();
    let pass = exact_one && err < 1e-9 && report.pass && took <= Duration::from_secs(5);
    Line {
        id: 11,
        name: "spherical function and character multiplicativity",
        pass,
        note: format!(
            "Phi(1) = {one}, |Phi(diag 2) - 2/sqrt 5| = {err:.1e}, {}/{} character trials, {:.2}s (limit 5s)",
            report.passed,
            report.trials,
            took.as_secs_f64()
        ),
    }
}

fn main() {
    let secs = Duration::from_secs;
    let lines = vec![
        suite_line(1, "block-formula conformance", secs(5), || vec![suite(Suite::Compose, 200, 1, |_| {})]),
        suite_line(2, "representative independence", secs(30), || {
            vec![suite(Suite::RepresentativeIndependence, 100, 2, |_| {})]
        }),
        suite_line(3, "associativity", secs(60), || vec![suite(Suite::Associativity, 50, 3, |_| {})]),
        suite_line(4, "characteristic function multiplicativity and half-dimension", secs(120), || {
            vec![suite(Suite::ChiMultiplicativity, 100, 4, |_| {})]
        }),
        suite_line(5, "ordered-category identities and idempotents", secs(5), || {
            vec![suite(Suite::OrderedCategory, ordered_triples().len(), 5, |_| {})]
        }),
        suite_line(6, "pure-pair commutativity", secs(30), || vec![suite(Suite::Commutativity, 50, 6, |_| {})]),
        suite_line(7, "centrality", secs(30), || vec![suite(Suite::Centrality, 50, 7, |_| {})]),
        suite_line(8, "mantle homomorphism", secs(30), || {
            vec![suite(Suite::Mantle, 50, 8, |c| c.max_support = 4)]
        }),
        suite_line(9, "multiplicativity of compressed operators", secs(300), || {
            vec![
                suite(Suite::Repcat, 100, 9, |c| {
                    c.d = Some(1);
                    c.n = Some(10);
                }),
                suite(Suite::Repcat, 20, 9, |c| {
                    c.d = Some(2);
                    c.n = Some(10);
                }),
            ]
        }),
        suite_line(10, "theta weak-limit shadow", secs(120), || {
            vec![suite(Suite::ThetaLimit, 2, 10, |c| {
                c.d = Some(2);
                c.n = Some(12);
            })]
        }),
        spherical_line(),
    ];
    for l in &lines {
        println!("[{}] criterion {:>2}: {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.name, l.note);
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
