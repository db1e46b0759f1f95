use mcm_core::catalog::{load_catalog, shipped_ids};
use mcm_core::iso::{is_isomorphic, SearchBudget};
use mcm_core::resolution::{detect_period, mcm_test, syzygy};

#[test]
fn catalog_modules_are_mcm_periodic_and_distinct() {
    let b = SearchBudget::default();
    for id in shipped_ids() {
        let t = std::time::Instant::now();
        let c = load_catalog(&id, None).unwrap();
        let mods = c.modules().unwrap();
        for (name, m) in &mods {
            assert!(mcm_test(m).unwrap(), "{id} {name} not MCM");
            let per = detect_period(m, 2, 1, &b).unwrap();
            assert!(matches!(per, Some((_, p)) if p <= 2), "{id} {name}: {per:?}");
            let s1 = syzygy(m, 1).unwrap();
            let s3 = syzygy(m, 3).unwrap();
            assert!(is_isomorphic(&s1, &s3, &b).unwrap());
            let inv = m.invariants().unwrap();
            assert_eq!(inv.multiplicity, inv.mu, "{id} {name} not Ulrich");
        }
        for i in 0..mods.len() {
            for j in i + 1..mods.len() {
                assert!(!is_isomorphic(&mods[i].1, &mods[j].1, &b).unwrap(), "{id}");
            }
        }
        eprintln!("{id}: {:?}", t.elapsed());
    }
}
