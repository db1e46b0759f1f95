use mcm_core::catalog::{load_catalog, shipped_ids};
use mcm_core::iso::SearchBudget;
use mcm_core::quiver::{
    arrow_lift_checks, component_classify, reverse_iso_check, syzygy_orbit_ideal, ARQuiver,
    Functor, Property,
};

#[test]
fn quivers_of_shipped_catalogs() {
    let b = SearchBudget::default();
    for id in shipped_ids() {
        let t = std::time::Instant::now();
        let c = load_catalog(&id, None).unwrap();
        let q = ARQuiver::build(c.vertices().unwrap(), &b).unwrap();
        eprintln!("{id}: built {:?}", t.elapsed());
        eprint!("{}", q.to_dot());
        for a in q.stable_vertices() {
            let e = q.middle_term(a).unwrap();
            assert!(e.routes_agree, "{id} {a} {e:?}");
            assert!(e.e_additive);
            if let Some(ok) = e.mu_identity {
                assert!(ok, "{id} {a} {e:?}");
            }
        }
        for f in [Functor::Dual, Functor::Link] {
            assert!(reverse_iso_check(&q, f).unwrap().0, "{id} {f:?}");
        }
        for l in arrow_lift_checks(&q).unwrap() {
            assert_eq!(l.level, 1, "{id} {l:?}");
        }
        for p in [Property::Periodic, Property::Ulrich, Property::CxEquals(1)] {
            let r = component_classify(&q, p, 8, &b).unwrap();
            for comp in r.components {
                assert_eq!(comp.status, "constant", "{id} {p:?}");
            }
        }
        for comp in q.stable_components() {
            let o = syzygy_orbit_ideal(&q, &comp, 4).unwrap();
            assert!(o.constant);
            assert!(matches!(o.generator, Some(1) | Some(2)), "{id} {o:?}");
        }
        if c.dim == 2 {
            for a in q.stable_vertices() {
                for bb in q.stable_vertices() {
                    assert_eq!(q.irr(a, bb) > 0, q.irr(bb, a) > 0);
                }
            }
        }
        eprintln!("{id}: {:?}", t.elapsed());
    }
}
