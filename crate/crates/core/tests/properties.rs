use proptest::prelude::*;

use mcm_core::catalog::{load_catalog, shipped_ids};
use mcm_core::functors::{dual, link};
use mcm_core::hom::HomSpace;
use mcm_core::iso::{is_isomorphic, SearchBudget};
use mcm_core::linalg::{kernel_basis, rank, DenseMatrix, PrimeField};
use mcm_core::module::GradedModule;
use mcm_core::resolution::resolve;
use mcm_core::ring::QuotientRing;

fn entry(idx: usize, which: usize) -> GradedModule {
    let ids = shipped_ids();
    let c = load_catalog(&ids[idx % ids.len()], None).unwrap();
    let mods = c.modules().unwrap();
    mods[which % mods.len()].1.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_basis_is_a_kernel(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(0u32..11, 49)) {
        let f = PrimeField::new(11).unwrap();
        let m = DenseMatrix::from_rows(
            (0..rows).map(|i| seed[i * 7..i * 7 + cols].to_vec()).collect(),
            cols,
        );
        let k = kernel_basis(&f, &m);
        prop_assert!(m.mul(&f, &k).is_zero(&f));
        prop_assert_eq!(k.cols() + rank(&f, &m), cols);
        prop_assert_eq!(rank(&f, &k), k.cols());
    }

    #[test]
    fn shifted_entries_keep_functor_identities(idx in 0usize..12, which in 0usize..4, s in -3i32..4) {
        let b = SearchBudget::default();
        let m = entry(idx, which).shifted(s);
        prop_assert!(is_isomorphic(&link(&link(&m).unwrap()).unwrap(), &m, &b).unwrap());
        prop_assert!(is_isomorphic(&dual(&dual(&m).unwrap()).unwrap(), &m, &b).unwrap());
    }

    #[test]
    fn resolutions_are_minimal_complexes(idx in 0usize..12, which in 0usize..4) {
        let m = entry(idx, which);
        let r = resolve(&m, 5).unwrap();
        prop_assert!(r.is_complex().unwrap());
        prop_assert!(r.is_minimal());
        let s = resolve(&r.syzygy(1).unwrap(), 4).unwrap();
        prop_assert_eq!(&s.betti()[..], &r.betti()[1..]);
    }

    #[test]
    fn hom_is_additive(idx in 0usize..12, a in 0usize..4, b2 in 0usize..4, c in 0usize..4) {
        let (x, y, z) = (entry(idx, a), entry(idx, b2), entry(idx, c));
        let d = |p: &GradedModule, q: &GradedModule| HomSpace::compute(p, q).unwrap().dim();
        prop_assert_eq!(d(&x.direct_sum(&y), &z), d(&x, &z) + d(&y, &z));
        prop_assert_eq!(d(&z, &x.direct_sum(&y)), d(&z, &x) + d(&z, &y));
    }

    #[test]
    fn linear_quotients_over_two_squares(a in 0u32..7, b in 0u32..7) {
        prop_assume!(a != 0 || b != 0);
        let ring = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 30).unwrap();
        let l = ring.parse_element(&format!("{a}*x+{b}*y")).unwrap();
        let m = GradedModule::cyclic(&ring, &[l]).unwrap();
        let betti = resolve(&m, 6).unwrap().betti();
        // ann(ax+by) = (ax-by), so every resolution is 1, 1, 1, ...
        prop_assert!(betti.iter().all(|&x| x == 1));
    }
}
