use monodromy::equiv::{check_certificate, rewrite_theorem_main};
use monodromy::instances::{gen_instances, Profile};
use monodromy::SearchLimits;

#[test]
fn rewrite_generated_pairs_m3() {
    let limits = SearchLimits::default();
    for profile in [Profile::Conjugate, Profile::Shuffle] {
        for pair in gen_instances(3, 8, profile, 1).unwrap() {
            let out = rewrite_theorem_main(&pair.s1, &pair.s2, &limits).unwrap();
            let cert = out.certificate().unwrap_or_else(|| panic!("{}: {out:?}", pair.name));
            assert!(check_certificate(&pair.s1, &pair.s2, cert).ok, "{}", pair.name);
            assert_eq!(cert.count_inserts(), cert.count_cancels(), "{}", pair.name);
        }
    }
}

#[test]
fn swapped_pairs_also_rewrite() {
    let limits = SearchLimits::default();
    for pair in gen_instances(3, 4, Profile::Shuffle, 2).unwrap() {
        let out = rewrite_theorem_main(&pair.s2, &pair.s1, &limits).unwrap();
        assert!(out.is_equivalent(), "{}: {out:?}", pair.name);
    }
}
