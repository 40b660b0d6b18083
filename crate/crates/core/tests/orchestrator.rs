use qdiff_core::orchestrator::{full_suite, poincare_left, Config, Format, Report};
use qdiff_core::{RankMode, Tau};

fn cfg(n: usize, kmax: usize) -> Config {
    let mut c = Config::new(n, kmax);
    c.timing = false;
    c
}

#[test]
fn full_suite_n2_passes() {
    let report = full_suite(&cfg(2, 4)).unwrap();
    print!("{}", report.to_pretty());
    assert!(report.all_pass(), "{:#?}", report.failures().collect::<Vec<_>>());
    assert!(report.rows.len() > 50);
}

#[test]
fn budget_guard_truncates_instead_of_failing() {
    let mut c = cfg(2, 3);
    c.memory_budget = 1 << 16;
    c.tau = Some(Tau::Plus);
    let rows = poincare_left(&c).unwrap();
    assert!(rows.iter().any(|r| r.truncated));
    assert!(rows.iter().filter(|r| !r.truncated).all(|r| r.pass));
    assert!(Report::new(rows).all_pass());
}

#[test]
fn reports_are_deterministic() {
    let mut c = cfg(2, 3);
    c.mode = RankMode::modular_default(7);
    let a = full_suite(&c).unwrap();
    let b = full_suite(&c).unwrap();
    for f in [Format::Json, Format::Csv, Format::Pretty] {
        assert_eq!(a.render(f).unwrap(), b.render(f).unwrap());
    }
}

#[test]
fn csv_has_one_line_per_row() {
    let rows = poincare_left(&cfg(2, 2)).unwrap();
    let n = rows.len();
    let csv = Report::new(rows).to_csv().unwrap();
    assert_eq!(csv.lines().count(), n + 1);
}

#[test]
fn invalid_config_is_rejected() {
    assert!(full_suite(&cfg(1, 2)).is_err());
}
