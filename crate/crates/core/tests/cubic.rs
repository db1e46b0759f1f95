use mcm_core::decompose::{decompose, stable_part};
use mcm_core::functors::{dual, mcm_approx};
use mcm_core::iso::{is_isomorphic, SearchBudget};
use mcm_core::module::GradedModule;
use mcm_core::ring::QuotientRing;

#[test]
fn approximation_of_the_maximal_ideal_of_the_cubic_cone() {
    let t = std::time::Instant::now();
    let a = QuotientRing::parse(7, &["x", "y", "z"], &[1, 1, 1], &["x^3+y^3+z^3"], 14).unwrap();
    let b = SearchBudget::default();
    let m = GradedModule::maximal_ideal(&a).unwrap();
    let x = mcm_approx(&m).unwrap();
    eprintln!("approx {:?} gens {:?}", t.elapsed(), x.gen_degs());
    let m2 = stable_part(&x, &b).unwrap();
    let parts = decompose(&m2, &b).unwrap();
    eprintln!("parts {}", parts.len());
    let inv = m2.invariants().unwrap();
    eprintln!("{inv:?} {:?}", t.elapsed());
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].multiplicity, 1);
    assert_eq!(inv.multiplicity, 6);
    assert!(is_isomorphic(&dual(&m2).unwrap(), &m2, &b).unwrap());
    eprintln!("{:?}", t.elapsed());
}
