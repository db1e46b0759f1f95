//! Isomorphism testing of graded modules, up to a shift of grading.
//!
//! A degree-0 map between minimally presented modules is surjective exactly
//! when its scalar part on generators is invertible. Surjections both ways
//! compose to a surjective endomorphism, which is an isomorphism, so two
//! modules are isomorphic iff such surjections exist in both directions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::hom::HomSpace;
use crate::linalg::{rank, DenseMatrix, EchelonBasis};
use crate::module::GradedModule;

/// Limits for the randomized and exhaustive unit searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub samples: usize,
    pub exhaustive_limit: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { samples: 64, exhaustive_limit: 1 << 20, seed: 0x5eed }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

/// `map` is an isomorphism from `source` onto `target`, where both are
/// minimal presentations and `target` is the second module with its degrees
/// raised by `shift`.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub shift: i32,
    pub source: GradedModule,
    pub target: GradedModule,
    pub map: HMatrix,
}

/// The shift making the sorted generator degrees agree, if any.
pub fn candidate_shift(m: &GradedModule, n: &GradedModule) -> Option<i32> {
    let mut a = m.gen_degs().to_vec();
    let mut c = n.gen_degs().to_vec();
    if a.len() != c.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    a.sort_unstable();
    c.sort_unstable();
    let s = a[0] - c[0];
    a.iter().zip(&c).all(|(x, y)| *x == *y + s).then_some(s)
}

/// Searches for an isomorphism `m -> n(shift)`. With `shift = None` the only
/// shift compatible with the generator degrees is tried.
pub fn find_isomorphism(
    m: &GradedModule,
    n: &GradedModule,
    shift: Option<i32>,
    budget: &SearchBudget,
) -> Result<Option<Isomorphism>> {
    if m.ring() != n.ring() {
        return Err(Error::Precondition("modules over different rings".into()));
    }
    let mm = m.minimal_presentation();
    let nm = n.minimal_presentation();
    let Some(s) = candidate_shift(&mm, &nm) else {
        return Ok(None);
    };
    if shift.is_some_and(|want| want != s) && mm.num_gens() > 0 {
        return Ok(None);
    }
    let n2 = nm.shifted(s);
    if mm.num_gens() == 0 {
        let map = HMatrix::zero(mm.ring(), Vec::new(), Vec::new());
        return Ok(Some(Isomorphism { shift: s, source: mm, target: n2, map }));
    }
    if mm.num_rels() != n2.num_rels() {
        // minimal relation counts are invariants (first Betti number)
        return Ok(None);
    }
    let ring = mm.ring();
    let lo = *mm.gen_degs().iter().min().unwrap();
    let span = ring.max_weight() + ring.max_relation_degree();
    for t in lo..=lo + span {
        if mm.hilbert_function(t)? != n2.hilbert_function(t)? {
            return Ok(None);
        }
    }
    let forward = HomSpace::compute(&mm, &n2)?;
    let Some(f) = find_unit(&forward, budget)? else {
        return Ok(None);
    };
    let backward = HomSpace::compute(&n2, &mm)?;
    if find_unit(&backward, budget)?.is_none() {
        return Ok(None);
    }
    Ok(Some(Isomorphism { shift: s, map: forward.to_matrix(&f), source: mm, target: n2 }))
}

pub fn is_isomorphic(m: &GradedModule, n: &GradedModule, budget: &SearchBudget) -> Result<bool> {
    Ok(find_isomorphism(m, n, None, budget)?.is_some())
}

/// Isomorphism as graded modules, without any shift.
pub fn is_isomorphic_graded(
    m: &GradedModule,
    n: &GradedModule,
    budget: &SearchBudget,
) -> Result<bool> {
    Ok(find_isomorphism(m, n, Some(0), budget)?.is_some())
}

fn invertible(field: &crate::linalg::PrimeField, m: &DenseMatrix<u32>) -> bool {
    m.rows() == m.cols() && rank(field, m) == m.rows()
}

/// A map of `h` whose scalar part is invertible, if one exists.
pub fn find_unit(h: &HomSpace, budget: &SearchBudget) -> Result<Option<Vec<u32>>> {
    let field = *h.source().ring().field();
    let mu = h.source().num_gens();
    if mu != h.target().num_gens() || h.dim() == 0 {
        return Ok(None);
    }
    let consts: Vec<DenseMatrix<u32>> = h.basis().iter().map(|b| h.constant_part(b)).collect();
    let sum = |coeffs: &[(usize, u32)]| {
        let mut acc = DenseMatrix::filled(mu, mu, 0u32);
        for &(i, c) in coeffs {
            for r in 0..mu {
                for s in 0..mu {
                    let v = field.add_u(*acc.get(r, s), field.mul_u(c, *consts[i].get(r, s)));
                    acc.set(r, s, v);
                }
            }
        }
        acc
    };
    let p = field.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.samples {
        let coeffs: Vec<(usize, u32)> = (0..h.dim()).map(|i| (i, rng.gen_range(0..p))).collect();
        if invertible(&field, &sum(&coeffs)) {
            let c: Vec<u32> = coeffs.iter().map(|x| x.1).collect();
            return Ok(Some(h.combine(&c)));
        }
    }
    // exhaustive search over the span of the scalar parts
    let mut span = EchelonBasis::new(field, mu * mu);
    let mut indep = Vec::new();
    for (i, c) in consts.iter().enumerate() {
        let flat: Vec<u32> = (0..mu * mu).map(|k| *c.get(k / mu, k % mu)).collect();
        if span.insert(&flat) {
            indep.push(i);
        }
    }
    let k = indep.len() as u32;
    let size = (p as u64).checked_pow(k);
    if size.is_none_or(|s| s > budget.exhaustive_limit) {
        return Err(Error::budget(format!(
            "unit search over a {k}-dimensional space of scalar parts exceeds the limit"
        )));
    }
    let mut digits = vec![0u32; indep.len()];
    loop {
        let mut carry = true;
        for d in digits.iter_mut() {
            if carry {
                *d += 1;
                carry = *d == p;
                if carry {
                    *d = 0;
                }
            }
        }
        if carry {
            return Ok(None);
        }
        let coeffs: Vec<(usize, u32)> = indep.iter().copied().zip(digits.iter().copied()).collect();
        if invertible(&field, &sum(&coeffs)) {
            let mut c = vec![0u32; h.dim()];
            for (i, v) in coeffs {
                c[i] = v;
            }
            return Ok(Some(h.combine(&c)));
        }
    }
}
