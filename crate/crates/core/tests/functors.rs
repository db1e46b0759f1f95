use mcm_core::catalog::{load_catalog, shipped_ids};
use mcm_core::functors::{cosyzygy, dual, link, tau, transpose};
use mcm_core::iso::{is_isomorphic, SearchBudget};
use mcm_core::resolution::syzygy;

#[test]
fn functor_identities_on_catalogs() {
    let b = SearchBudget::default();
    for id in shipped_ids() {
        let t = std::time::Instant::now();
        let c = load_catalog(&id, None).unwrap();
        for (name, m) in c.modules().unwrap() {
            let d = dual(&m).unwrap();
            assert!(is_isomorphic(&dual(&d).unwrap(), &m, &b).unwrap(), "{id} {name} DD");
            let l = link(&m).unwrap();
            assert!(is_isomorphic(&link(&l).unwrap(), &m, &b).unwrap(), "{id} {name} ll");
            assert!(is_isomorphic(&cosyzygy(&d, 1).unwrap(), &l, &b).unwrap(), "{id} {name} S-1D");
            let tr = transpose(&m).unwrap();
            let s2d = dual(&syzygy(&m, 2).unwrap()).unwrap();
            assert!(is_isomorphic(&tr, &s2d, &b).unwrap(), "{id} {name} Tr");
            if c.dim == 2 {
                assert!(is_isomorphic(&l, &m, &b).unwrap(), "{id} {name} l=id");
                assert!(is_isomorphic(&tau(&m).unwrap(), &m, &b).unwrap(), "{id} {name} tau");
            }
        }
        eprintln!("{id}: {:?}", t.elapsed());
    }
}
