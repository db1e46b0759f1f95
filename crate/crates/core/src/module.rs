//! Finitely presented graded modules and their numerical invariants.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmatrix::{FreePiece, HMatrix};
use crate::linalg::{EchelonBasis, PrimeField};
use crate::poly::Poly;
use crate::ring::Ring;

/// `coker(pres)`: generators are the rows of `pres`, relations its columns.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedModule {
    pres: HMatrix,
}

impl GradedModule {
    pub fn new(pres: HMatrix) -> Self {
        Self { pres }
    }

    pub fn from_strings(
        ring: &Ring,
        gen_degs: Vec<i32>,
        rel_degs: Vec<i32>,
        entries: &[&[&str]],
    ) -> Result<Self> {
        Ok(Self::new(HMatrix::from_strings(ring, gen_degs, rel_degs, entries)?))
    }

    /// The free module with generators in the given degrees.
    pub fn free(ring: &Ring, degs: Vec<i32>) -> Self {
        Self::new(HMatrix::zero(ring, degs, Vec::new()))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `A / (polys)`, generated in degree 0.
    pub fn cyclic(ring: &Ring, polys: &[Poly]) -> Result<Self> {
        let degs = polys
            .iter()
            .map(|p| {
                ring.degree_of(p).ok_or_else(|| Error::Input("generator is not homogeneous".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(HMatrix::new(ring, vec![0], degs, vec![polys.to_vec()])?))
    }

    /// The residue field `k = A / m`.
    pub fn residue_field(ring: &Ring) -> Self {
        let vars: Vec<Poly> = (0..ring.nvars()).map(|i| ring.variable(i)).collect();
        Self::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// The maximal ideal `m`, presented by the syzygies of the variables.
    pub fn maximal_ideal(ring: &Ring) -> Result<Self> {
        let k = Self::residue_field(ring);
        let row = k.pres.clone();
        let syz = row.kernel()?;
        Ok(Self::new(syz).minimal_presentation())
    }

    pub fn ring(&self) -> &Ring {
        self.pres.ring()
    }

    pub fn pres(&self) -> &HMatrix {
        &self.pres
    }

    pub fn gen_degs(&self) -> &[i32] {
        self.pres.row_degs()
    }

    pub fn rel_degs(&self) -> &[i32] {
        self.pres.col_degs()
    }

    pub fn num_gens(&self) -> usize {
        self.pres.nrows()
    }

    pub fn num_rels(&self) -> usize {
        self.pres.ncols()
    }

    /// All degrees raised by `s`.
    pub fn shifted(&self, s: i32) -> Self {
        Self::new(self.pres.shifted(s))
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Self {
        Self::new(self.pres.block_diag(&other.pres))
    }

    pub fn direct_sum_all(ring: &Ring, parts: &[GradedModule]) -> Self {
        parts.iter().fold(Self::zero(ring), |acc, m| acc.direct_sum(m))
    }

    /// Zero module, decided from a minimal presentation.
    pub fn is_zero(&self) -> bool {
        self.minimal_presentation().num_gens() == 0
    }

    /// Free, decided from a minimal presentation.
    pub fn is_free(&self) -> bool {
        let m = self.minimal_presentation();
        m.num_rels() == 0
    }

    pub fn is_minimal(&self) -> bool {
        self.pres.is_minimal()
    }

    /// Equivalent presentation with no constant entries and minimal relations.
    pub fn minimal_presentation(&self) -> Self {
        let ring = self.ring().clone();
        let f = *ring.field();
        let mut rows: Vec<i32> = self.gen_degs().to_vec();
        let mut cols: Vec<i32> = self.rel_degs().to_vec();
        let mut e: Vec<Vec<Poly>> = self.pres.entries().to_vec();
        loop {
            let mut found = None;
            'search: for (i, row) in e.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if let Some(c) = x.as_constant() {
                        if c != 0 {
                            found = Some((i, j, c));
                            break 'search;
                        }
                    }
                }
            }
            let Some((i, j, c)) = found else { break };
            let inv = f.inv_u(c).unwrap();
            let pivot_col: Vec<Poly> = e.iter().map(|r| r[j].clone()).collect();
            for jj in 0..cols.len() {
                if jj == j || e[i][jj].is_zero() {
                    continue;
                }
                let factor = e[i][jj].scale(&f, inv);
                for (k, pc) in pivot_col.iter().enumerate() {
                    if pc.is_zero() {
                        continue;
                    }
                    let prod = ring.mul(pc, &factor).expect("product degree is already present");
                    e[k][jj] = e[k][jj].sub(&f, &prod);
                }
            }
            e.remove(i);
            rows.remove(i);
            for r in e.iter_mut() {
                r.remove(j);
            }
            cols.remove(j);
        }
        let reduced = HMatrix::from_parts_unchecked(&ring, rows, cols, e);
        let keep = minimal_column_subset(&reduced).expect("relation degrees already present");
        Self::new(reduced.select_cols(&keep))
    }

    /// Degree-`t` piece `F_t / im(pres)_t`.
    pub fn piece(&self, t: i32) -> Result<ModPiece> {
        ModPiece::new(&self.pres, t)
    }

    pub fn hilbert_function(&self, t: i32) -> Result<usize> {
        Ok(self.piece(t)?.dim())
    }

    /// `l(M / m^s M)` for `s = 1..=smax`.
    pub fn hilbert_samuel(&self, smax: usize) -> Result<Vec<usize>> {
        let ring = self.ring();
        let f = *ring.field();
        let gens = self.gen_degs();
        if gens.is_empty() {
            return Ok(vec![0; smax]);
        }
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap() + (smax as i32 - 1) * ring.max_weight();
        let mut out = vec![0usize; smax];
        for t in lo..=hi {
            let piece = self.piece(t)?;
            if piece.dim() == 0 {
                continue;
            }
            // images of m * e_j grouped by the standard degree of m
            let mut by_sdeg: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
            for (j, _) in gens.iter().enumerate() {
                let rp = &piece.free.pieces[j];
                let off = piece.free.offsets[j];
                for &m in rp.ambient_monomials() {
                    let mut v = vec![0u32; piece.free.total];
                    for &(k, a) in rp.nf(m) {
                        v[off + k as usize] = a;
                    }
                    by_sdeg.entry(m.std_degree()).or_default().push(piece.coords(&v));
                }
            }
            let mut span = EchelonBasis::new(f, piece.dim());
            let mut rank_at = vec![0usize; smax + 1];
            let degrees: Vec<u32> = by_sdeg.keys().rev().copied().collect();
            let mut idx = 0;
            for s in (1..=smax).rev() {
                while idx < degrees.len() && degrees[idx] as usize >= s {
                    for v in &by_sdeg[&degrees[idx]] {
                        span.insert(v);
                    }
                    idx += 1;
                }
                rank_at[s] = span.rank();
            }
            for s in 1..=smax {
                out[s - 1] += piece.dim() - rank_at[s];
            }
        }
        Ok(out)
    }

    /// Numerical invariants from the Hilbert-Samuel function.
    pub fn invariants(&self) -> Result<ModuleInvariants> {
        let m = self.minimal_presentation();
        let ring = m.ring().clone();
        let smax = samuel_window(&ring);
        let hs = m.hilbert_samuel(smax)?;
        let (dim, e) = fit_samuel(&hs)?;
        let (dim_a, e_a) = ring_dim_multiplicity(&ring)?;
        let (rank_num, rank_den) = if dim == dim_a && e > 0 {
            reduce_fraction(e as i64, e_a as i64)
        } else {
            (0, 1)
        };
        let mut window = Vec::new();
        if let Some(&lo) = m.gen_degs().iter().min() {
            for t in lo..=lo + 2 * ring.max_weight().max(ring.max_relation_degree()) {
                window.push((t, m.hilbert_function(t)?));
            }
        }
        Ok(ModuleInvariants {
            mu: m.num_gens(),
            hilbert_window: window,
            length: if dim == 0 { Some(e) } else { None },
            multiplicity: e,
            dim,
            rank_num,
            rank_den,
            ring_multiplicity: e_a,
            ring_dim: dim_a,
        })
    }

    /// `e(M) = mu(M)` for a maximal Cohen-Macaulay module.
    pub fn is_ulrich(&self) -> Result<bool> {
        let inv = self.invariants()?;
        Ok(inv.multiplicity == inv.mu)
    }

    pub fn format(&self) -> String {
        format!(
            "coker gens {:?} rels {:?} {:?}",
            self.gen_degs(),
            self.rel_degs(),
            self.pres.format_entries()
        )
    }
}

/// Krull dimension and multiplicity of the ring, cached on the ring.
pub fn ring_dim_multiplicity(ring: &Ring) -> Result<(usize, usize)> {
    if let Some(v) = ring.samuel.get() {
        return Ok(*v);
    }
    let hs = GradedModule::free(ring, vec![0]).hilbert_samuel(samuel_window(ring))?;
    let v = fit_samuel(&hs)?;
    Ok(*ring.samuel.get_or_init(|| v))
}

/// Number of Hilbert-Samuel terms used for fits.
fn samuel_window(ring: &Ring) -> usize {
    let w = ring.max_weight();
    let spare = (ring.degree_cap() - ring.max_relation_degree()) / w.max(1);
    spare.clamp(6, 9) as usize
}

/// Smallest order `d` whose `d`-th differences are constant over the last
/// three values; returns `(d, that constant)`.
pub fn fit_samuel(values: &[usize]) -> Result<(usize, usize)> {
    let mut diff: Vec<i64> = values.iter().map(|&v| v as i64).collect();
    for d in 0..4 {
        if diff.len() < 3 {
            break;
        }
        let tail = &diff[diff.len() - 3..];
        if tail[0] == tail[1] && tail[1] == tail[2] {
            if tail[0] < 0 {
                break;
            }
            return Ok((d, tail[0] as usize));
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Err(Error::unstable(format!("Hilbert-Samuel values {values:?} did not settle")))
}

fn reduce_fraction(a: i64, b: i64) -> (i64, i64) {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(a, b).max(1);
    (a / g, b / g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleInvariants {
    pub mu: usize,
    pub hilbert_window: Vec<(i32, usize)>,
    pub length: Option<usize>,
    pub multiplicity: usize,
    pub dim: usize,
    pub rank_num: i64,
    pub rank_den: i64,
    pub ring_multiplicity: usize,
    pub ring_dim: usize,
}

impl ModuleInvariants {
    pub fn rank_is_integral(&self) -> bool {
        self.rank_den == 1
    }
}

/// Indices of columns that minimally generate the column submodule.
pub(crate) fn minimal_column_subset(m: &HMatrix) -> Result<Vec<usize>> {
    let ring = m.ring();
    let mut order: Vec<usize> = (0..m.ncols()).collect();
    order.sort_by_key(|&j| m.col_degs()[j]);
    let mut keep: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let d = m.col_degs()[order[k]];
        let free = FreePiece::new(ring, m.row_degs(), d)?;
        let mut span = EchelonBasis::new(*ring.field(), free.total);
        for &j in &keep {
            let bd = m.col_degs()[j];
            let mp = ring.piece(d - bd)?;
            for &mono in mp.basis() {
                let mut v = vec![0u32; free.total];
                for i in 0..m.nrows() {
                    let e = m.get(i, j);
                    if !e.is_zero() {
                        let r = free.block(i);
                        ring.accumulate(&free.pieces[i], mono, e, 1, &mut v[r]);
                    }
                }
                span.insert(&v);
            }
        }
        while k < order.len() && m.col_degs()[order[k]] == d {
            let j = order[k];
            if span.insert(&m.column_vector(j, &free)) {
                keep.push(j);
            }
            k += 1;
        }
    }
    keep.sort_unstable();
    Ok(keep)
}

/// `M_t = F_t / im(pres)_t` with coordinates on the non-pivot positions.
pub struct ModPiece {
    pub degree: i32,
    pub free: FreePiece,
    span: EchelonBasis<PrimeField>,
    free_positions: Vec<usize>,
}

impl ModPiece {
    pub fn new(pres: &HMatrix, t: i32) -> Result<Self> {
        let ring = pres.ring();
        let free = FreePiece::new(ring, pres.row_degs(), t)?;
        let mut span = EchelonBasis::new(*ring.field(), free.total);
        if free.total > 0 {
            for j in 0..pres.ncols() {
                let mp = ring.piece(t - pres.col_degs()[j])?;
                for &mono in mp.basis() {
                    let mut v = vec![0u32; free.total];
                    for i in 0..pres.nrows() {
                        let e = pres.get(i, j);
                        if !e.is_zero() {
                            let r = free.block(i);
                            ring.accumulate(&free.pieces[i], mono, e, 1, &mut v[r]);
                        }
                    }
                    span.insert(&v);
                    if span.rank() == free.total {
                        break;
                    }
                }
            }
        }
        let mut is_pivot = vec![false; free.total];
        for &p in span.pivots() {
            is_pivot[p] = true;
        }
        let free_positions = (0..free.total).filter(|&i| !is_pivot[i]).collect();
        Ok(Self { degree: t, free, span, free_positions })
    }

    pub fn dim(&self) -> usize {
        self.free_positions.len()
    }

    /// Coordinates of the class of a free-module vector.
    pub fn coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.span.reduce(v);
        self.free_positions.iter().map(|&i| r[i]).collect()
    }

    /// Canonical free-module representative of a class.
    pub fn lift(&self, c: &[u32]) -> Vec<u32> {
        let mut v = vec![0u32; self.free.total];
        for (k, &i) in self.free_positions.iter().enumerate() {
            v[i] = c[k];
        }
        v
    }

    pub fn in_image(&self, v: &[u32]) -> bool {
        self.span.contains(v)
    }
}

/// Lazily built pieces of one module.
pub struct PieceCache<'a> {
    pres: &'a HMatrix,
    cache: HashMap<i32, Arc<ModPiece>>,
}

impl<'a> PieceCache<'a> {
    pub fn new(m: &'a GradedModule) -> Self {
        Self { pres: m.pres(), cache: HashMap::new() }
    }

    pub fn get(&mut self, t: i32) -> Result<Arc<ModPiece>> {
        if let Some(p) = self.cache.get(&t) {
            return Ok(p.clone());
        }
        let p = Arc::new(ModPiece::new(self.pres, t)?);
        self.cache.insert(t, p.clone());
        Ok(p)
    }
}

/// Multiplies a vector of the free piece `src` by `r`, block by block, adding
/// the result into a vector of the free piece `tgt`.
pub(crate) fn free_mul(ring: &Ring, src: &FreePiece, v: &[u32], r: &Poly, tgt: &FreePiece, out: &mut [u32]) {
    for i in 0..src.pieces.len() {
        let sp = &src.pieces[i];
        let so = src.offsets[i];
        let range = tgt.block(i);
        for k in 0..sp.dim() {
            let c = v[so + k];
            if c != 0 {
                ring.accumulate(&tgt.pieces[i], sp.basis()[k], r, c, &mut out[range.clone()]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn unit_entries_are_eliminated() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2+y^2"], 24).unwrap();
        // generator 1 is killed: e1 = -x e0
        let m =
            GradedModule::from_strings(&a, vec![0, 1], vec![1, 1], &[&["x", "y"], &["1", "0"]])
                .unwrap();
        let mm = m.minimal_presentation();
        assert_eq!(mm.num_gens(), 1);
        assert_eq!(mm.num_rels(), 1);
        assert!(mm.is_minimal());
    }

    #[test]
    fn redundant_presentation_of_k_plus_a() {
        let a = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 24).unwrap();
        // k + A with a duplicated relation and a relation implied by x * x = 0
        let m = GradedModule::from_strings(
            &a,
            vec![0, 0],
            vec![1, 1, 2],
            &[&["x", "2*x", "0"], &["0", "0", "x^2"]],
        )
        .unwrap();
        let mm = m.minimal_presentation();
        assert_eq!(mm.num_gens(), 2);
        assert_eq!(mm.num_rels(), 1);
    }

    #[test]
    fn residue_field_invariants() {
        let a = QuotientRing::parse(7, &["x", "y"], &[3, 2], &["x^2+y^3"], 60).unwrap();
        let k = GradedModule::residue_field(&a);
        let inv = k.invariants().unwrap();
        assert_eq!((inv.mu, inv.length, inv.multiplicity), (1, Some(1), 1));
        let ia = GradedModule::free(&a, vec![0]).invariants().unwrap();
        assert_eq!(ia.multiplicity, 2);
        assert_eq!(ia.dim, 1);
    }

    #[test]
    fn maximal_ideal_of_quadric() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2+y^2"], 24).unwrap();
        let m = GradedModule::maximal_ideal(&a).unwrap();
        assert_eq!(m.num_gens(), 2);
        // m is MCM of rank one over a domain-like curve: e = 2 = mu
        assert!(m.is_ulrich().unwrap());
    }

    #[test]
    fn samuel_fit_orders() {
        assert_eq!(fit_samuel(&[1, 3, 5, 7, 9]).unwrap(), (1, 2));
        assert_eq!(fit_samuel(&[1, 4, 4, 4]).unwrap(), (0, 4));
        assert_eq!(fit_samuel(&[1, 4, 9, 16, 25]).unwrap(), (2, 2));
        assert!(fit_samuel(&[1, 2]).is_err());
    }
}
