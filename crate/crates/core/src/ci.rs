//! Eisenbud operators over complete intersections, the action of
//! `T = k[t_1..t_c]` on `Ext(M, k)`, and windowed support varieties.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::linalg::{kernel_basis, DenseMatrix, EchelonBasis, PrimeField};
use crate::module::GradedModule;
use crate::poly::{monomials_of_degree, Mono, Poly};
use crate::quiver::ARQuiver;
use crate::resolution::{betti_growth, resolve};
use crate::ring::Ring;

/// Default bound on the `t`-degree of annihilator searches.
pub const DEFAULT_TDEG: usize = 3;

/// `A = Q / (u_1..u_c)` with `Q` the ambient polynomial ring.
#[derive(Clone, Debug)]
pub struct CIPresentation {
    ambient: Ring,
    regular_sequence: Vec<Poly>,
    seq_degrees: Vec<i32>,
    quotient: Ring,
}

impl CIPresentation {
    /// Takes the defining relations of `ring` as the regular sequence and
    /// checks regularity through the Hilbert series.
    pub fn new(ring: &Ring) -> Result<Self> {
        let c = ring.relations().len();
        if c == 0 {
            return Err(Error::Precondition("a complete intersection needs c >= 1".into()));
        }
        let bound = ring.degree_cap().min(2 * ring.relation_degrees().iter().sum::<i32>());
        if !ring.matches_complete_intersection(bound)? {
            return Err(Error::Precondition(
                "the relations do not form a regular sequence".into(),
            ));
        }
        Ok(Self {
            ambient: ring.ambient(),
            regular_sequence: ring.relations().to_vec(),
            seq_degrees: ring.relation_degrees().to_vec(),
            quotient: ring.clone(),
        })
    }

    pub fn codim(&self) -> usize {
        self.regular_sequence.len()
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn quotient(&self) -> &Ring {
        &self.quotient
    }

    pub fn regular_sequence(&self) -> &[Poly] {
        &self.regular_sequence
    }

    /// Solves `D = sum_j u_j T_j` over `Q`, returning the `T_j`.
    fn decompose(&self, d: &HMatrix) -> Result<Vec<HMatrix>> {
        let q = &self.ambient;
        let r = d.nrows();
        let c = self.codim();
        let mut cols = Vec::with_capacity(c * r);
        for &dj in &self.seq_degrees {
            for &a in d.row_degs() {
                cols.push(a + dj);
            }
        }
        let mut entries = vec![vec![Poly::zero(); c * r]; r];
        for (j, u) in self.regular_sequence.iter().enumerate() {
            for (i, row) in entries.iter_mut().enumerate() {
                row[j * r + i] = u.clone();
            }
        }
        let u = HMatrix::new(q, d.row_degs().to_vec(), cols, entries)?;
        let x = u.solve(d)?.ok_or_else(|| {
            Error::Precondition("the square of the lifted differential is not in (u)".into())
        })?;
        Ok((0..c).map(|j| x.select_rows(&(j * r..(j + 1) * r).collect::<Vec<_>>())).collect())
    }
}

/// `Ext^n(M, k)` for `n <= H` with the operators `t_j: Ext^n -> Ext^(n+2)`.
#[derive(Clone, Debug)]
pub struct ExtTModule {
    pub field: PrimeField,
    pub codim: usize,
    /// `dims[n] = dim Ext^n(M, k) = beta_n(M)`.
    pub dims: Vec<usize>,
    /// `operators[j][n]` is a `dims[n+2] x dims[n]` matrix.
    pub operators: Vec<Vec<DenseMatrix<u32>>>,
}

impl ExtTModule {
    pub fn hom_bound(&self) -> usize {
        self.dims.len() - 1
    }

    /// Whether `t_i t_j = t_j t_i` on every piece where both are defined.
    pub fn operators_commute(&self) -> bool {
        let f = &self.field;
        for n in 0..self.dims.len().saturating_sub(4) {
            for i in 0..self.codim {
                for j in i + 1..self.codim {
                    let a = self.operators[i][n + 2].mul(f, &self.operators[j][n]);
                    let b = self.operators[j][n + 2].mul(f, &self.operators[i][n]);
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of the monomial `t^alpha` on `Ext^n`, if the target is in the window.
    pub fn monomial_action(&self, alpha: Mono, n: usize) -> Option<DenseMatrix<u32>> {
        let f = &self.field;
        let mut cur = DenseMatrix::identity(f, self.dims[n]);
        let mut deg = n;
        for v in 0..self.codim {
            for _ in 0..alpha.exp(v) {
                if deg + 2 >= self.dims.len() {
                    return None;
                }
                cur = self.operators[v][deg].mul(f, &cur);
                deg += 2;
            }
        }
        Some(cur)
    }

    /// Whether `t_1..t_c` jointly map onto `Ext^(n+2)` from `Ext^n`.
    pub fn jointly_surjective(&self, n: usize) -> bool {
        let target = self.dims[n + 2];
        let mut span = EchelonBasis::new(self.field, target);
        for ops in &self.operators {
            for col in ops[n].columns() {
                span.insert(&col);
            }
        }
        span.rank() == target
    }
}

fn random_homogeneous<R: Rng>(ring: &Ring, d: i32, rng: &mut R) -> Result<Poly> {
    if d < 0 {
        return Ok(Poly::zero());
    }
    let p = ring.characteristic();
    let basis = ring.degree_basis(d)?;
    Ok(Poly::from_terms(ring.field(), basis.into_iter().map(|m| (m, rng.gen_range(0..p)))))
}

/// Lift of `d` to `Q`, optionally perturbed by random elements of `(u)`.
fn lift_to_ambient<R: Rng>(
    ci: &CIPresentation,
    d: &HMatrix,
    rng: Option<&mut R>,
) -> Result<HMatrix> {
    let q = &ci.ambient;
    let mut lifted = d.over(q)?;
    if let Some(rng) = rng {
        let f = q.field();
        let mut entries = lifted.entries().to_vec();
        for (i, row) in entries.iter_mut().enumerate() {
            for (k, e) in row.iter_mut().enumerate() {
                let deg = d.col_degs()[k] - d.row_degs()[i];
                for (u, &du) in ci.regular_sequence.iter().zip(&ci.seq_degrees) {
                    let r = random_homogeneous(q, deg - du, rng)?;
                    *e = e.add(f, &u.mul(f, &r));
                }
            }
        }
        lifted = HMatrix::new(q, d.row_degs().to_vec(), d.col_degs().to_vec(), entries)?;
    }
    Ok(lifted)
}

fn operators_from_lifts(
    ci: &CIPresentation,
    m: &GradedModule,
    h: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<ExtTModule> {
    if m.ring() != &ci.quotient {
        return Err(Error::Precondition("module lives over a different ring".into()));
    }
    let res = resolve(m, h)?;
    let dims = res.betti();
    let c = ci.codim();
    let mut lifts = Vec::with_capacity(h);
    for i in 1..=h {
        lifts.push(lift_to_ambient(ci, res.differential(i), rng.as_deref_mut())?);
    }
    let mut operators = vec![Vec::new(); c];
    for n in 0..h.saturating_sub(1) {
        // d~_{n+1} d~_{n+2}: F_{n+2} -> F_n
        let sq = lifts[n].mul(&lifts[n + 1])?;
        let ts = if sq.nrows() == 0 || sq.ncols() == 0 {
            (0..c).map(|_| HMatrix::zero(&ci.ambient, Vec::new(), Vec::new())).collect()
        } else {
            ci.decompose(&sq)?
        };
        for (j, t) in ts.iter().enumerate() {
            let op = if t.nrows() == 0 || t.ncols() == 0 {
                DenseMatrix::filled(dims[n + 2], dims[n], 0)
            } else {
                t.constant_part().transpose()
            };
            operators[j].push(op);
        }
    }
    Ok(ExtTModule { field: *ci.quotient.field(), codim: c, dims, operators })
}

/// Eisenbud operators on `Ext^n(M, k)` for `n <= h`, from the canonical lift
/// of the minimal resolution to `Q`.
pub fn eisenbud_operators(ci: &CIPresentation, m: &GradedModule, h: usize) -> Result<ExtTModule> {
    operators_from_lifts(ci, m, h, None)
}

/// Same as [`eisenbud_operators`] but with each lifted differential moved by
/// a random element of `(u)`; the induced maps on Ext must not change.
pub fn eisenbud_operators_perturbed(
    ci: &CIPresentation,
    m: &GradedModule,
    h: usize,
    seed: u64,
) -> Result<ExtTModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    operators_from_lifts(ci, m, h, Some(&mut rng))
}

/// Annihilator of the window, one subspace of `T_s` per `s <= tdeg`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnWindow {
    pub codim: usize,
    pub monomials: Vec<Vec<Mono>>,
    /// Echelon basis rows of `ann_s` in the monomial coordinates of `T_s`.
    pub bases: Vec<Vec<Vec<u32>>>,
}

impl AnnWindow {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    fn span(&self, field: PrimeField, s: usize) -> EchelonBasis<PrimeField> {
        let mut e = EchelonBasis::new(field, self.monomials[s].len());
        for v in &self.bases[s] {
            e.insert(v);
        }
        e
    }

    fn contains_all(&self, field: PrimeField, s: usize, vs: &[Vec<u32>]) -> bool {
        let e = self.span(field, s);
        vs.iter().all(|v| e.contains(v))
    }
}

/// `ann_T(Ext(M, k))` up to `t`-degree `tdeg`, with each degree `s` tested on
/// the pieces `n <= H - 2s`.
pub fn annihilator_window(e: &ExtTModule, tdeg: usize) -> AnnWindow {
    let f = e.field;
    let c = e.codim;
    let ones = vec![1u32; c];
    let h = e.hom_bound();
    let mut monomials = Vec::new();
    let mut bases = Vec::new();
    for s in 0..=tdeg.min(h / 2) {
        let monos = monomials_of_degree(&ones, s as i32);
        let mut columns: Vec<Vec<u32>> = vec![Vec::new(); monos.len()];
        for n in 0..=h - 2 * s {
            for (k, &alpha) in monos.iter().enumerate() {
                let a = e.monomial_action(alpha, n).expect("target inside the window");
                for r in 0..a.rows() {
                    columns[k].extend_from_slice(a.row(r));
                }
            }
        }
        let len = columns.first().map_or(0, Vec::len);
        let mat = DenseMatrix::from_columns(&columns, len, 0);
        let ker = kernel_basis(&f, &mat);
        let mut span = EchelonBasis::new(f, monos.len());
        for v in ker.columns() {
            span.insert(&v);
        }
        bases.push(span.basis_rows().to_vec());
        monomials.push(monos);
    }
    AnnWindow { codim: c, monomials, bases }
}

/// Windowed support variety of `M`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportVarietyReport {
    pub module: String,
    /// `dim V*(M) + 1`, read off the Hilbert function of `T / ann`.
    pub cx: usize,
    pub ann_window: Vec<String>,
    pub confidence: String,
    pub codim: usize,
    pub hom_bound: usize,
    pub tdeg_max: usize,
    pub betti: Vec<usize>,
    /// Hilbert function of `T / ann` for `s <= tdeg_max`.
    pub quotient_hilbert: Vec<usize>,
    /// Projective dimension of `V*(M)`; `-1` for the empty variety.
    pub projective_dim_estimate: i64,
    pub cx_from_variety: usize,
    pub cx_from_growth: Option<usize>,
    pub is_point: bool,
    pub operators_commute: bool,
    #[serde(skip)]
    pub window: AnnWindow,
}

/// Krull dimension from the tail of a Hilbert function: `(dim, confident)`.
fn krull_dimension(h: &[usize]) -> (usize, bool) {
    if h.last() == Some(&0) {
        return (0, true);
    }
    let mut diff: Vec<i64> = h.iter().skip(1).map(|&x| x as i64).collect();
    let mut d = 0;
    loop {
        if diff.len() <= 1 || diff.iter().all(|&x| x == diff[0]) {
            return (d + 1, diff.len() >= 2);
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        d += 1;
    }
}

fn t_vars(c: usize) -> Vec<String> {
    (1..=c).map(|i| format!("t{i}")).collect()
}

/// Minimal generators of the annihilator window, formatted in `t1..tc`.
fn window_generators(field: PrimeField, w: &AnnWindow) -> Vec<String> {
    let vars = t_vars(w.codim);
    let mut out = Vec::new();
    for s in 0..w.bases.len() {
        let mut span = EchelonBasis::new(field, w.monomials[s].len());
        if s > 0 {
            let index = |m: Mono| w.monomials[s].iter().position(|&x| x == m).unwrap();
            for g in &w.bases[s - 1] {
                for v in 0..w.codim {
                    let mut prod = vec![0u32; w.monomials[s].len()];
                    for (k, &c) in g.iter().enumerate() {
                        if c != 0 {
                            prod[index(w.monomials[s - 1][k].mul(Mono::var(v)))] = c;
                        }
                    }
                    span.insert(&prod);
                }
            }
        }
        for g in &w.bases[s] {
            if span.insert(g) {
                let p = Poly::from_terms(
                    &field,
                    g.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, &c)| (w.monomials[s][k], c)),
                );
                out.push(p.format(&field, &vars));
            }
        }
    }
    out
}

/// Support-variety window of the Ext module `e`.
pub fn support_annihilator_window(e: &ExtTModule, tdeg_max: usize, label: &str) -> SupportVarietyReport {
    let w = annihilator_window(e, tdeg_max);
    let hilbert: Vec<usize> =
        w.monomials.iter().zip(&w.bases).map(|(m, b)| m.len() - b.len()).collect();
    let (kdim, kconf) = krull_dimension(&hilbert);
    let growth = betti_growth(&e.dims);
    let has_linear = w.bases.get(1).is_some_and(|b| !b.is_empty());
    let is_point = if e.codim == 2 {
        has_linear && growth.cx_estimate == Some(1)
    } else {
        kdim == 1
    };
    let deep = e.hom_bound() >= 2 * tdeg_max + 2 && w.bases.len() >= 3;
    let agree = growth.cx_estimate == Some(kdim);
    let stable = kconf && deep && agree && growth.cx_confident;
    SupportVarietyReport {
        module: label.to_string(),
        cx: kdim,
        ann_window: window_generators(e.field, &w),
        confidence: if stable { "stable" } else { "low" }.to_string(),
        codim: e.codim,
        hom_bound: e.hom_bound(),
        tdeg_max: w.bases.len() - 1,
        betti: e.dims.clone(),
        quotient_hilbert: hilbert,
        projective_dim_estimate: kdim as i64 - 1,
        cx_from_variety: kdim,
        cx_from_growth: growth.cx_estimate,
        is_point,
        operators_commute: e.operators_commute(),
        window: w,
    }
}

/// Convenience: operators and support window of one module.
pub fn support_report(
    ci: &CIPresentation,
    m: &GradedModule,
    h: usize,
    tdeg_max: usize,
    label: &str,
) -> Result<SupportVarietyReport> {
    let e = eisenbud_operators(ci, m, h)?;
    Ok(support_annihilator_window(&e, tdeg_max, label))
}

/// Whether two windows are equal degree by degree.
pub fn windows_agree(a: &AnnWindow, b: &AnnWindow) -> bool {
    a.codim == b.codim && a.monomials == b.monomials && a.bases == b.bases
}

/// Whether `ann(M1 + M2) = ann(M1) ∩ ann(M2)` in every common degree.
pub fn direct_sum_annihilator_check(
    field: PrimeField,
    a: &AnnWindow,
    b: &AnnWindow,
    sum: &AnnWindow,
) -> bool {
    let top = a.bases.len().min(b.bases.len()).min(sum.bases.len());
    for s in 0..top {
        if !a.contains_all(field, s, &sum.bases[s]) || !b.contains_all(field, s, &sum.bases[s]) {
            return false;
        }
        let mut both = a.span(field, s);
        for v in &b.bases[s] {
            both.insert(v);
        }
        let meet = a.bases[s].len() + b.bases[s].len() - both.rank();
        if meet != sum.bases[s].len() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct VarietyComponent {
    pub vertices: Vec<String>,
    pub windows_agree: bool,
    pub ann_window: Vec<String>,
}

/// Per stable component of `q`: do all annihilator windows agree?
/// `reports` is indexed like the quiver vertices.
pub fn variety_component_check(
    q: &ARQuiver,
    reports: &[SupportVarietyReport],
) -> Result<Vec<VarietyComponent>> {
    if reports.len() != q.len() {
        return Err(Error::Precondition("one report per vertex is required".into()));
    }
    Ok(q.stable_components()
        .into_iter()
        .map(|comp| {
            let first = &reports[comp[0]];
            VarietyComponent {
                vertices: comp.iter().map(|&v| q.vertices[v].name.clone()).collect(),
                windows_agree: comp.iter().all(|&v| windows_agree(&reports[v].window, &first.window)),
                ann_window: first.ann_window.clone(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    fn two_squares() -> Ring {
        QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 30).unwrap()
    }

    #[test]
    fn dual_numbers_have_an_invertible_operator() {
        let a = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 30).unwrap();
        let ci = CIPresentation::new(&a).unwrap();
        let e = eisenbud_operators(&ci, &GradedModule::residue_field(&a), 10).unwrap();
        assert!(e.dims.iter().all(|&d| d == 1));
        for op in &e.operators[0] {
            assert_eq!(op.get(0, 0), &1);
        }
    }

    #[test]
    fn residue_field_over_two_squares() {
        let a = two_squares();
        let ci = CIPresentation::new(&a).unwrap();
        let e = eisenbud_operators(&ci, &GradedModule::residue_field(&a), 10).unwrap();
        assert_eq!(e.dims, (1..=11).collect::<Vec<_>>());
        assert!(e.operators_commute());
        // Ext^2 has the extra class e1*e2 outside T_1 Ext^0
        assert!(!e.jointly_surjective(0));
        for n in 1..=8 {
            assert!(e.jointly_surjective(n));
        }
        let r = support_annihilator_window(&e, 3, "k");
        assert!(r.ann_window.is_empty());
        assert_eq!((r.cx, r.projective_dim_estimate), (2, 1));
        assert!(!r.is_point);
        assert_eq!(r.confidence, "stable");
    }

    #[test]
    fn free_module_has_empty_variety() {
        let a = two_squares();
        let ci = CIPresentation::new(&a).unwrap();
        let r = support_report(&ci, &GradedModule::free(&a, vec![0]), 8, 3, "A").unwrap();
        assert_eq!(r.ann_window, vec!["t1".to_string(), "t2".to_string()]);
        assert_eq!(r.projective_dim_estimate, -1);
        assert_eq!(r.cx, 0);
    }

    #[test]
    fn perturbed_lifts_give_the_same_operators() {
        let a = two_squares();
        let ci = CIPresentation::new(&a).unwrap();
        let m = GradedModule::residue_field(&a);
        let e = eisenbud_operators(&ci, &m, 8).unwrap();
        for seed in 0..3 {
            let p = eisenbud_operators_perturbed(&ci, &m, 8, seed).unwrap();
            assert_eq!(p.operators, e.operators);
        }
    }

    #[test]
    fn non_regular_relations_are_rejected() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "x*y"], 20).unwrap();
        assert!(CIPresentation::new(&a).is_err());
    }
}
