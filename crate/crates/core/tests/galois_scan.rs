use galois_scope::curve::PlaneCurve;
use galois_scope::galois::{bound_check, delta_scan, sweep, GaloisConfig, Verdict};

#[test]
fn hermitian_census_reaches_the_bound() {
    let c = PlaneCurve::parse("X^4+Y^4+Z^4", 3, 1).unwrap();
    let rep = delta_scan(&c, &GaloisConfig::default()).unwrap();
    assert_eq!(rep.delta_found(), 28);
    assert!(rep.complete);
    let check = bound_check(&rep, Some(&c)).unwrap();
    assert!(check.pass && check.equality);
    assert_eq!(check.fermat, Some(true));
}

#[test]
fn fermat_char_seven_stays_below() {
    let c = PlaneCurve::parse("X^4+Y^4+Z^4", 7, 1).unwrap();
    let rep = delta_scan(&c, &GaloisConfig::default()).unwrap();
    assert!(rep.delta_found() < 28);
    assert!(rep
        .reports
        .iter()
        .all(|r| r.verdict != Verdict::Galois || r.certificate().is_some()));
    eprintln!("fermat7: delta {} of {} points", rep.delta_found(), rep.reports.len());
}

#[test]
fn small_sweep() {
    let cfg = GaloisConfig {
        seed: 1,
        ..Default::default()
    };
    let s = sweep(7, 4, 3, &cfg).unwrap();
    assert_eq!(s.passed, 3);
    eprintln!("{s:?}");
}
