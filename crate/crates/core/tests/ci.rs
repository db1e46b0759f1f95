use mcm_core::catalog::load_catalog;
use mcm_core::ci::{
    direct_sum_annihilator_check, eisenbud_operators, support_report, variety_component_check,
    CIPresentation,
};
use mcm_core::iso::SearchBudget;
use mcm_core::module::GradedModule;
use mcm_core::quiver::ARQuiver;
use mcm_core::ring::QuotientRing;

#[test]
fn cyclic_modules_over_two_squares() {
    let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 30).unwrap();
    let ci = CIPresentation::new(&a).unwrap();
    let x = GradedModule::cyclic(&a, &[a.parse_element("x").unwrap()]).unwrap();
    let y = GradedModule::cyclic(&a, &[a.parse_element("y").unwrap()]).unwrap();
    let rx = support_report(&ci, &x, 10, 3, "A/(x)").unwrap();
    let ry = support_report(&ci, &y, 10, 3, "A/(y)").unwrap();
    assert!(rx.is_point && ry.is_point);
    assert_eq!((rx.cx, ry.cx), (1, 1));
    assert_eq!(rx.ann_window, vec!["t2".to_string()]);
    assert_eq!(ry.ann_window, vec!["t1".to_string()]);
    let rs = support_report(&ci, &x.direct_sum(&y), 10, 3, "sum").unwrap();
    assert_eq!(rs.ann_window, vec!["t1*t2".to_string()]);
    assert!(!rs.is_point);
    assert!(direct_sum_annihilator_check(*a.field(), &rx.window, &ry.window, &rs.window));
    assert!(!direct_sum_annihilator_check(*a.field(), &rx.window, &rx.window, &rs.window));
}

#[test]
fn linear_form_point_off_the_axes() {
    // the point is not a coordinate point
    let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 30).unwrap();
    let ci = CIPresentation::new(&a).unwrap();
    let m = GradedModule::cyclic(&a, &[a.parse_element("x+y").unwrap()]).unwrap();
    let e = eisenbud_operators(&ci, &m, 10).unwrap();
    assert!(e.dims[1..].iter().all(|&d| d == 1));
    let r = support_report(&ci, &m, 10, 3, "A/(x+y)").unwrap();
    assert!(r.is_point);
    assert_eq!(r.ann_window.len(), 1);
    assert!(r.ann_window[0].contains("t1") && r.ann_window[0].contains("t2"));
}

#[test]
fn hypersurface_catalog_components_share_windows() {
    let b = SearchBudget::default();
    for id in ["ade:A2:dim1", "ade:A3:dim1", "ade:A2:dim2"] {
        let c = load_catalog(id, None).unwrap();
        let ci = CIPresentation::new(&c.ring).unwrap();
        let verts = c.vertices().unwrap();
        let q = ARQuiver::build(verts, &b).unwrap();
        let reports: Vec<_> = (0..q.len())
            .map(|v| support_report(&ci, q.module(v), 8, 3, &q.vertices[v].name).unwrap())
            .collect();
        for v in q.stable_vertices() {
            assert!(reports[v].is_point, "{id}");
            assert!(reports[v].operators_commute);
        }
        for comp in variety_component_check(&q, &reports).unwrap() {
            assert!(comp.windows_agree, "{id} {comp:?}");
        }
    }
}
