use axialcurv::fixtures::{self, CORPUS};
use axialcurv::report::AnalysisReport;
use axialcurv::tol::Tol;
use axialcurv::verify::CheckStatus;
use axialcurv::Analysis;

fn analyse(name: &str) -> Analysis {
    let f = fixtures::find(name).unwrap();
    Analysis::new(&f.parse().unwrap(), Tol::default()).unwrap()
}

#[test]
fn every_fixture_matches_its_sidecar() {
    let mut bad = vec![];
    for f in CORPUS {
        let a = Analysis::new(&f.parse().unwrap(), Tol::default()).unwrap();
        for m in fixtures::compare(&a, &f.expected().unwrap()) {
            bad.push(format!("{}: {m}", f.name));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn no_fixture_fails_a_check() {
    for f in CORPUS {
        let report = AnalysisReport::new(&Analysis::new(&f.parse().unwrap(), Tol::default()).unwrap());
        for c in &report.checks {
            assert_ne!(c.status, CheckStatus::Fail, "{} {}: {}", f.name, c.name, c.detail);
        }
    }
}

#[test]
fn fixture_names_are_unique() {
    let mut names: Vec<&str> = CORPUS.iter().map(|f| f.name).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), CORPUS.len());
}

#[test]
fn plane_locus_is_flagged() {
    let r = AnalysisReport::new(&analyse("plane_locus"));
    assert!(r.warnings.iter().any(|w| w.contains("do not coincide")), "{:?}", r.warnings);
}

#[test]
fn swapped_coordinates_move_the_square_to_y() {
    // (y, x, x^2/2, 0): the Monge coordinates are the first two components
    let a = analyse("swapped_coordinates");
    assert!(!a.record.is_identity(1e-12));
    assert!((a.monge.a[0][(1, 1)] - 1.0).abs() < 1e-15);
    assert_eq!(a.monge.a[0][(0, 0)], 0.0);
}
