//! Krull-Schmidt decomposition through the degree-0 endomorphism algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::hom::HomSpace;
use crate::iso::{find_isomorphism, SearchBudget};
use crate::linalg::upoly::{self, UPoly};
use crate::linalg::{EchelonBasis, PrimeField};
use crate::module::GradedModule;

/// `End_0(M)` with elements stored as canonical map coordinates.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub hom: HomSpace,
    field: PrimeField,
    identity: Vec<u32>,
}

impl EndAlgebra {
    pub fn new(m: &GradedModule) -> Result<Self> {
        let hom = HomSpace::compute(m, m)?;
        let identity = hom.matrix_coords(&HMatrix::identity(m.ring(), m.gen_degs().to_vec()));
        Ok(Self { field: *m.ring().field(), hom, identity })
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn one(&self) -> Vec<u32> {
        self.identity.clone()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.hom.ambient_len()]
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        self.hom.basis()
    }

    /// `u . v` (apply `v` first).
    pub fn mul(&self, u: &[u32], v: &[u32]) -> Result<Vec<u32>> {
        let x = self.hom.to_matrix(u).mul(&self.hom.to_matrix(v))?;
        Ok(self.hom.matrix_coords(&x))
    }

    pub fn add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        u.iter().zip(v).map(|(a, b)| self.field.add_u(*a, *b)).collect()
    }

    pub fn sub(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        u.iter().zip(v).map(|(a, b)| self.field.sub_u(*a, *b)).collect()
    }

    pub fn scale(&self, u: &[u32], c: u32) -> Vec<u32> {
        u.iter().map(|a| self.field.mul_u(*a, c)).collect()
    }

    pub fn is_zero(&self, u: &[u32]) -> bool {
        u.iter().all(|&x| x == 0)
    }

    /// `poly(a)` by Horner's rule.
    pub fn eval(&self, poly: &[u32], a: &[u32]) -> Result<Vec<u32>> {
        let mut r = self.zero();
        for &c in poly.iter().rev() {
            r = self.mul(&r, a)?;
            r = self.add(&r, &self.scale(&self.identity, c));
        }
        Ok(r)
    }

    pub fn min_poly(&self, a: &[u32]) -> Result<UPoly> {
        let mut span = EchelonBasis::tracked(self.field, self.hom.ambient_len());
        let mut power = self.one();
        loop {
            if let Some(c) = span.coordinates(&power) {
                let mut mp: UPoly = c.iter().map(|x| self.field.neg_u(*x)).collect();
                mp.push(1);
                return Ok(mp);
            }
            span.insert(&power);
            power = self.mul(&power, a)?;
        }
    }

    pub fn is_nilpotent(&self, a: &[u32]) -> Result<bool> {
        let mut x = a.to_vec();
        let mut reach = 1;
        while reach < self.dim().max(1) {
            x = self.mul(&x, &x)?;
            reach *= 2;
        }
        Ok(self.is_zero(&x))
    }
}

enum Analysis {
    Split(Vec<u32>),
    /// Residue dimension and a basis of the radical.
    Local(usize, Vec<Vec<u32>>),
}

/// CRT idempotent for the first primary factor of `mp`.
fn primary_idempotent(f: &PrimeField, mp: &[u32], factors: &[(UPoly, usize)]) -> UPoly {
    let (g, k) = &factors[0];
    let mut q = vec![1u32];
    for _ in 0..*k {
        q = upoly::mul(f, &q, g);
    }
    let r = upoly::divrem(f, mp, &q).0;
    let (_, s, _) = upoly::xgcd(f, &r, &q);
    upoly::rem(f, &upoly::mul(f, &s, &r), mp)
}

fn analyze(alg: &EndAlgebra, rng: &mut ChaCha8Rng) -> Result<Analysis> {
    let f = alg.field;
    let p = f.modulus();
    let mut candidates: Vec<Vec<u32>> = alg.basis().to_vec();
    for _ in 0..24 {
        let c: Vec<u32> = (0..alg.dim()).map(|_| rng.gen_range(0..p)).collect();
        candidates.push(alg.hom.combine(&c));
    }
    let mut best: Option<(Vec<u32>, UPoly)> = None;
    for a in &candidates {
        let mp = alg.min_poly(a)?;
        let fs = upoly::factor(&f, &mp, rng);
        if fs.len() >= 2 {
            let e = primary_idempotent(&f, &mp, &fs);
            return Ok(Analysis::Split(alg.eval(&e, a)?));
        }
        if let Some((g, _)) = fs.into_iter().next() {
            if best.as_ref().is_none_or(|(_, bg)| g.len() > bg.len()) {
                best = Some((a.clone(), g));
            }
        }
    }
    let (gen, g) = best.expect("the identity has a minimal polynomial");
    let r = upoly::degree(&g).unwrap();
    let mut rad: Vec<Vec<u32>> = Vec::new();
    if r == 1 {
        for b in alg.basis() {
            let mp = alg.min_poly(b)?;
            let fs = upoly::factor(&f, &mp, rng);
            let lambda = f.neg_u(fs[0].0[0]);
            rad.push(alg.sub(b, &alg.scale(&alg.identity, lambda)));
        }
    } else {
        let count = (p as u64).checked_pow(r as u32).filter(|&c| c <= 1 << 16).ok_or_else(|| {
            Error::budget(format!("residue field of degree {r} is too large to enumerate"))
        })?;
        let mut powers = vec![alg.one()];
        for _ in 1..r {
            let next = alg.mul(powers.last().unwrap(), &gen)?;
            powers.push(next);
        }
        for b in alg.basis() {
            let mut found = false;
            for code in 0..count {
                let mut x = b.clone();
                let mut c = code;
                for pw in &powers {
                    let d = (c % p as u64) as u32;
                    c /= p as u64;
                    if d != 0 {
                        x = alg.sub(&x, &alg.scale(pw, d));
                    }
                }
                if alg.is_nilpotent(&x)? {
                    rad.push(x);
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::budget("could not certify a local endomorphism ring"));
            }
        }
        let gg = alg.eval(&g, &gen)?;
        let mut x = gg;
        for _ in 0..r {
            rad.push(x.clone());
            x = alg.mul(&x, &gen)?;
        }
    }
    // certify: two-sided ideal, nilpotent, codimension r
    let mut span = EchelonBasis::new(f, alg.hom.ambient_len());
    let mut rbasis = Vec::new();
    for x in rad {
        if span.insert(&x) {
            rbasis.push(x);
        }
    }
    if rbasis.len() + r != alg.dim() {
        return Err(Error::budget("radical candidate has the wrong dimension"));
    }
    for x in &rbasis {
        for b in alg.basis() {
            if !span.contains(&alg.mul(x, b)?) || !span.contains(&alg.mul(b, x)?) {
                return Err(Error::budget("radical candidate is not an ideal"));
            }
        }
    }
    let mut layer = rbasis.clone();
    for _ in 0..=alg.dim() {
        if layer.is_empty() {
            return Ok(Analysis::Local(r, rbasis));
        }
        let mut next_span = EchelonBasis::new(f, alg.hom.ambient_len());
        let mut next = Vec::new();
        for x in &layer {
            for y in &rbasis {
                let z = alg.mul(x, y)?;
                if next_span.insert(&z) {
                    next.push(z);
                }
            }
        }
        layer = next;
    }
    Err(Error::budget("radical candidate is not nilpotent"))
}

/// Radical of the degree-0 endomorphism ring of an indecomposable module.
#[derive(Clone, Debug)]
pub struct LocalRadical {
    pub algebra: EndAlgebra,
    /// Basis in the coordinates of `algebra.hom()`.
    pub basis: Vec<Vec<u32>>,
    pub residue_dim: usize,
}

/// The radical of `End(m)`, or a precondition error when `m` splits.
pub fn local_radical(m: &GradedModule, budget: &SearchBudget) -> Result<LocalRadical> {
    let algebra = EndAlgebra::new(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    match analyze(&algebra, &mut rng)? {
        Analysis::Local(residue_dim, basis) => Ok(LocalRadical { algebra, basis, residue_dim }),
        Analysis::Split(_) => Err(Error::Precondition("module is decomposable".into())),
    }
}

/// One isomorphism class of indecomposable summands.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: GradedModule,
    pub multiplicity: usize,
    /// Dimension of `End/rad` over the prime field.
    pub residue_dim: usize,
    pub free: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandSummary {
    pub gen_degs: Vec<i32>,
    pub rel_degs: Vec<i32>,
    pub multiplicity: usize,
    pub residue_dim: usize,
    pub free: bool,
}

impl Summand {
    pub fn summary(&self) -> SummandSummary {
        SummandSummary {
            gen_degs: self.module.gen_degs().to_vec(),
            rel_degs: self.module.rel_degs().to_vec(),
            multiplicity: self.multiplicity,
            residue_dim: self.residue_dim,
            free: self.free,
        }
    }
}

/// Splits `m` into indecomposables, grouped by graded isomorphism class.
pub fn decompose(m: &GradedModule, budget: &SearchBudget) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut work = vec![m.minimal_presentation()];
    let mut pieces: Vec<(GradedModule, usize)> = Vec::new();
    while let Some(x) = work.pop() {
        if x.num_gens() == 0 {
            continue;
        }
        if x.num_rels() == 0 {
            for &d in x.gen_degs() {
                pieces.push((GradedModule::free(x.ring(), vec![d]), 1));
            }
            continue;
        }
        if x.num_gens() == 1 {
            pieces.push((x, 1));
            continue;
        }
        let alg = EndAlgebra::new(&x)?;
        match analyze(&alg, &mut rng) {
            Ok(Analysis::Local(r, _)) => pieces.push((x, r)),
            Ok(Analysis::Split(e)) => {
                let one_minus = alg.sub(&alg.one(), &e);
                for idem in [&one_minus, &e] {
                    let rel = x.pres().hconcat(&alg.hom.to_matrix(idem))?;
                    work.push(GradedModule::new(rel).minimal_presentation());
                }
            }
            Err(err) => {
                let done: Vec<String> = pieces.iter().map(|(p, _)| p.format()).collect();
                return Err(Error::budget(format!(
                    "{err}; partial decomposition: {} summands found [{}], unsplit {}",
                    done.len(),
                    done.join("; "),
                    x.format()
                )));
            }
        }
    }
    let mut out: Vec<Summand> = Vec::new();
    for (x, r) in pieces {
        let mut matched = false;
        for s in out.iter_mut() {
            if find_isomorphism(&x, &s.module, Some(0), budget)?.is_some() {
                s.multiplicity += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            let free = x.num_rels() == 0 && x.num_gens() == 1;
            out.push(Summand { module: x, multiplicity: 1, residue_dim: r, free });
        }
    }
    out.sort_by(|a, b| {
        (a.module.gen_degs(), a.module.rel_degs(), a.module.format())
            .cmp(&(b.module.gen_degs(), b.module.rel_degs(), b.module.format()))
    });
    Ok(out)
}

/// Removes free summands.
pub fn stable_part(m: &GradedModule, budget: &SearchBudget) -> Result<GradedModule> {
    let mm = m.minimal_presentation();
    if mm.num_gens() == 0 {
        return Ok(mm);
    }
    let parts = decompose(&mm, budget)?;
    if parts.iter().all(|s| !s.free) {
        return Ok(mm);
    }
    let kept: Vec<GradedModule> = parts
        .iter()
        .filter(|s| !s.free)
        .flat_map(|s| std::iter::repeat_n(s.module.clone(), s.multiplicity))
        .collect();
    Ok(GradedModule::direct_sum_all(m.ring(), &kept))
}
