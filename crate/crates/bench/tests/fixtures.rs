use galois_scope::galois::{galois_test, GaloisConfig, Verdict};
use galois_scope_bench::{cover, first_point, generic_quartic, hermitian};

#[test]
fn fixtures_have_the_expected_verdicts() {
    let cfg = GaloisConfig::default();
    let h = hermitian();
    assert_eq!(
        galois_test(&h, &first_point(&h), &cfg).unwrap().verdict,
        Verdict::Galois
    );
    let g = generic_quartic();
    assert_eq!(
        galois_test(&g, &first_point(&g), &cfg).unwrap().verdict,
        Verdict::NotGalois
    );
    assert_eq!(cover("s^9 - s", 3).degree(), 9);
}
