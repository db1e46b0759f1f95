//! Auslander-Reiten quivers of finite catalogs of indecomposable MCM modules.
//!
//! Modules are graded, so a map between vertices may have any degree. For a
//! pair of vertices the radical layers `(M,N)_1` and `(M,N)_2` are computed
//! degree by degree, and `irr(M,N)` sums `dim (M,N)_1 / (M,N)_2` over a finite
//! window of degrees. `(M,N)_2` is spanned by composites of radical maps
//! through every vertex and every shift.

use std::sync::{Arc, Mutex};
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::decompose::local_radical;
use crate::error::{Error, Result};
use crate::functors::{dual, link, tau};
use crate::hmatrix::HMatrix;
use crate::hom::HomSpace;
use crate::iso::{candidate_shift, find_isomorphism, SearchBudget};
use crate::linalg::{EchelonBasis, PrimeField};
use crate::module::{ring_dim_multiplicity, GradedModule};
use crate::resolution::{betti_growth, detect_period, resolve};

/// Maps of one degree between two vertices with their radical layers.
struct Piece {
    hom: HomSpace,
    r1: Vec<Vec<u32>>,
    r1_mats: Vec<HMatrix>,
    r2: Mutex<Option<Arc<EchelonBasis<PrimeField>>>>,
}

/// Radical layers of all Hom spaces between a fixed list of indecomposables.
pub struct Filtration {
    vertices: Vec<GradedModule>,
    radicals: Vec<(HomSpace, Vec<Vec<u32>>)>,
    residue_dims: Vec<usize>,
    pieces: Mutex<HashMap<(usize, usize, i32), Arc<Piece>>>,
    budget: SearchBudget,
}

fn lo_hi(v: &[i32]) -> (i32, i32) {
    (*v.iter().min().unwrap(), *v.iter().max().unwrap())
}

impl Filtration {
    pub fn new(vertices: Vec<GradedModule>, budget: &SearchBudget) -> Result<Self> {
        let mut radicals = Vec::new();
        let mut residue_dims = Vec::new();
        for v in &vertices {
            if v.num_gens() == 0 {
                return Err(Error::Precondition("zero module in a vertex list".into()));
            }
            let r = local_radical(v, budget)?;
            residue_dims.push(r.residue_dim);
            radicals.push((r.algebra.hom, r.basis));
        }
        Ok(Self {
            vertices,
            radicals,
            residue_dims,
            pieces: Mutex::new(HashMap::new()),
            budget: *budget,
        })
    }

    pub fn vertices(&self) -> &[GradedModule] {
        &self.vertices
    }

    pub fn residue_dims(&self) -> &[usize] {
        &self.residue_dims
    }

    /// Degrees `j` where `(V_a, V_b)_1 / (V_a, V_b)_2` may be nonzero.
    pub fn window(&self, a: usize, b: usize) -> (i32, i32) {
        let ring = self.vertices[a].ring();
        let (la, ha) = lo_hi(self.vertices[a].gen_degs());
        let (lb, hb) = lo_hi(self.vertices[b].gen_degs());
        (lb - ha, hb - la + ring.max_relation_degree() + ring.max_weight())
    }

    fn piece(&self, a: usize, b: usize, j: i32) -> Result<Arc<Piece>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&(a, b, j)) {
            return Ok(p.clone());
        }
        let (hom, r1) = if a == b && j == 0 {
            self.radicals[a].clone()
        } else {
            let h = HomSpace::compute(&self.vertices[a], &self.vertices[b].shifted(-j))?;
            let basis = h.basis().to_vec();
            (h, basis)
        };
        let r1_mats = r1.iter().map(|v| hom.to_matrix(v)).collect();
        let p = Arc::new(Piece { hom, r1, r1_mats, r2: Mutex::new(None) });
        self.pieces.lock().unwrap().insert((a, b, j), p.clone());
        Ok(p)
    }

    /// Span of composites of radical maps `V_a -> V_c -> V_b` of total degree `j`.
    fn r2(&self, a: usize, b: usize, j: i32) -> Result<Arc<EchelonBasis<PrimeField>>> {
        let target = self.piece(a, b, j)?;
        if let Some(s) = target.r2.lock().unwrap().as_ref() {
            return Ok(s.clone());
        }
        let field = *self.vertices[a].ring().field();
        let mut span = EchelonBasis::new(field, target.hom.ambient_len());
        let full = target.r1.len();
        if full > 0 {
            let (_, ha) = lo_hi(self.vertices[a].gen_degs());
            let (lb, _) = lo_hi(self.vertices[b].gen_degs());
            'outer: for c in 0..self.vertices.len() {
                let (lc, hc) = lo_hi(self.vertices[c].gen_degs());
                for i in (lc - ha)..=(j + hc - lb) {
                    let p1 = self.piece(a, c, i)?;
                    if p1.r1.is_empty() {
                        continue;
                    }
                    let p2 = self.piece(c, b, j - i)?;
                    for g in &p2.r1_mats {
                        let g = g.shifted(-i);
                        for f in &p1.r1_mats {
                            let v = target.hom.matrix_coords(&g.mul(f)?);
                            span.insert(&v);
                            if span.rank() == full {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        let span = Arc::new(span);
        *target.r2.lock().unwrap() = Some(span.clone());
        Ok(span)
    }

    /// `dim (V_a, V_b)_1 - dim (V_a, V_b)_2` in degree `j`.
    pub fn irr_in_degree(&self, a: usize, b: usize, j: i32) -> Result<usize> {
        let p = self.piece(a, b, j)?;
        if p.r1.is_empty() {
            return Ok(0);
        }
        Ok(p.r1.len() - self.r2(a, b, j)?.rank())
    }

    /// `irr(V_a, V_b)` with its nonzero degrees.
    pub fn irr(&self, a: usize, b: usize) -> Result<(usize, Vec<(i32, usize)>)> {
        let (lo, hi) = self.window(a, b);
        let mut total = 0;
        let mut by_degree = Vec::new();
        for j in lo..=hi {
            let k = self.irr_in_degree(a, b, j)?;
            if k > 0 {
                total += k;
                by_degree.push((j, k));
            }
        }
        Ok((total, by_degree))
    }

    /// Maps of degree `j` spanning `(V_a,V_b)_1` modulo `(V_a,V_b)_2`, as
    /// matrices into `V_b` shifted by `-j`.
    pub fn arrow_representatives(&self, a: usize, b: usize, j: i32) -> Result<Vec<HMatrix>> {
        let p = self.piece(a, b, j)?;
        let mut span = (*self.r2(a, b, j)?).clone();
        let mut out = Vec::new();
        for (v, m) in p.r1.iter().zip(&p.r1_mats) {
            if span.insert(v) {
                out.push(m.clone());
            }
        }
        Ok(out)
    }

    /// The vertex isomorphic to a shift of `x`, with an isomorphism
    /// `V_a -> x(s)` given by its matrix and `s`.
    pub fn locate(&self, x: &GradedModule) -> Result<Option<(usize, i32, HMatrix)>> {
        for (a, v) in self.vertices.iter().enumerate() {
            if candidate_shift(v, &x.minimal_presentation()).is_none() {
                continue;
            }
            if let Some(iso) = find_isomorphism(v, x, None, &self.budget)? {
                return Ok(Some((a, iso.shift, iso.map)));
            }
        }
        Ok(None)
    }

    /// Radical level of a map `x -> y` between indecomposables isomorphic to
    /// shifts of vertices: 0 if it is not radical, 1 if radical but not in the
    /// square of the radical, 2 otherwise. The matrix has columns `gens(x) + u`
    /// and rows `gens(y) + v`.
    pub fn level(&self, x: &GradedModule, y: &GradedModule, map: &HMatrix) -> Result<u8> {
        let missing = || Error::CatalogIncomplete("module outside the vertex list".into());
        let (a, s, alpha) = self.locate(x)?.ok_or_else(missing)?;
        let (b, _, _) = self.locate(y)?.ok_or_else(missing)?;
        // an isomorphism y(s') -> V_b
        let back = find_isomorphism(y, &self.vertices[b], None, &self.budget)?.ok_or_else(missing)?;
        let (sp, beta) = (back.shift, back.map);
        if x.minimal_presentation().gen_degs() != x.gen_degs()
            || y.minimal_presentation().gen_degs() != y.gen_degs()
        {
            return Err(Error::Precondition("radical levels need minimal presentations".into()));
        }
        let u = map.col_degs()[0] - x.gen_degs()[0];
        let v = map.row_degs()[0] - y.gen_degs()[0];
        let m = map.shifted(s - u);
        let bb = beta.shifted(v + s - u);
        let prod = bb.mul(&m)?.mul(&alpha)?;
        let j = u - v - s - sp;
        let p = self.piece(a, b, j)?;
        let coords = p.hom.matrix_coords(&prod);
        let mut r1 = EchelonBasis::new(*x.ring().field(), p.hom.ambient_len());
        for w in &p.r1 {
            r1.insert(w);
        }
        if !r1.contains(&coords) {
            return Ok(0);
        }
        Ok(if self.r2(a, b, j)?.contains(&coords) { 2 } else { 1 })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexInfo {
    pub name: String,
    pub is_free: bool,
    pub residue_dim: usize,
    pub mu: usize,
    pub e: usize,
    pub gen_degs: Vec<i32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: usize,
    /// `(degree, count)` pairs.
    pub degrees: Vec<(i32, usize)>,
}

pub struct ARQuiver {
    pub d: usize,
    pub vertices: Vec<VertexInfo>,
    pub arrows: Vec<Arrow>,
    /// `tau` of each non-free vertex, as a vertex index.
    pub tau: Vec<Option<usize>>,
    pub filtration: Filtration,
    irr: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ARSequenceData {
    pub vertex: usize,
    pub tau: usize,
    /// `(vertex, irr(N, M))` for every `N` with positive count.
    pub middle: Vec<(usize, usize)>,
    pub middle_free_rank: usize,
    /// The same multiset read off the arrows leaving `tau(M)`.
    pub middle_from_tau: Vec<(usize, usize)>,
    pub routes_agree: bool,
    pub mu_middle: usize,
    pub e_middle: usize,
    /// `mu(E_M) = mu(M) + mu(tau M)`; `None` when arrows touch the free vertex.
    pub mu_identity: Option<bool>,
    pub e_additive: bool,
    pub middle_is_free: bool,
}

impl ARQuiver {
    /// Builds the quiver of `vertices`, which must be pairwise
    /// non-isomorphic indecomposables (up to shift). Vertices are ordered by
    /// their invariants.
    pub fn build(vertices: Vec<(String, GradedModule)>, budget: &SearchBudget) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Input("empty vertex list".into()));
        }
        let ring = vertices[0].1.ring().clone();
        let (d, _) = ring_dim_multiplicity(&ring)?;
        let mut info = Vec::new();
        let mut mods = Vec::new();
        for (name, m) in vertices {
            let m = m.minimal_presentation();
            let inv = m.invariants()?;
            info.push(VertexInfo {
                name,
                is_free: m.is_free(),
                residue_dim: 0,
                mu: inv.mu,
                e: inv.multiplicity,
                gen_degs: m.gen_degs().to_vec(),
            });
            mods.push(m);
        }
        let mut order: Vec<usize> = (0..mods.len()).collect();
        order.sort_by(|&x, &y| {
            let (a, b) = (&info[x], &info[y]);
            (!a.is_free, a.mu, a.e, &a.name).cmp(&(!b.is_free, b.mu, b.e, &b.name))
        });
        let mut info: Vec<VertexInfo> = order.iter().map(|&i| info[i].clone()).collect();
        let mods: Vec<GradedModule> = order.iter().map(|&i| mods[i].clone()).collect();
        for i in 0..mods.len() {
            for k in i + 1..mods.len() {
                if find_isomorphism(&mods[i], &mods[k], None, budget)?.is_some() {
                    return Err(Error::Precondition(format!(
                        "vertices {} and {} are isomorphic",
                        info[i].name, info[k].name
                    )));
                }
            }
        }
        let filtration = Filtration::new(mods, budget)?;
        for (v, r) in info.iter_mut().zip(filtration.residue_dims()) {
            v.residue_dim = *r;
        }
        let n = info.len();
        let mut irr = vec![vec![0; n]; n];
        let mut arrows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let (total, degrees) = filtration.irr(a, b)?;
                irr[a][b] = total;
                if total > 0 {
                    arrows.push(Arrow { source: a, target: b, multiplicity: total, degrees });
                }
            }
        }
        let mut taus = Vec::new();
        for (k, v) in info.iter().enumerate() {
            if v.is_free {
                taus.push(None);
                continue;
            }
            let t = tau(&filtration.vertices()[k])?;
            let Some((idx, _, _)) = filtration.locate(&t)? else {
                return Err(Error::CatalogIncomplete(format!(
                    "tau({}) is not a vertex (mu = {}, gens {:?})",
                    v.name,
                    t.num_gens(),
                    t.gen_degs()
                )));
            };
            taus.push(Some(idx));
        }
        let q = Self { d, vertices: info, arrows, tau: taus, filtration, irr };
        for k in 0..q.vertices.len() {
            if q.vertices[k].is_free {
                continue;
            }
            let data = q.middle_term(k)?;
            if !data.e_additive {
                let v = &q.vertices[k];
                let missing = (v.e + q.vertices[data.tau].e) as i64 - data.e_middle as i64;
                return Err(Error::CatalogIncomplete(format!(
                    "middle term at {} falls short: multiplicity {missing} of the almost split \
                     sequence is not accounted for by vertices (mu(M) = {}, e(M) = {})",
                    v.name, v.mu, v.e
                )));
            }
        }
        Ok(q)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn irr(&self, a: usize, b: usize) -> usize {
        self.irr[a][b]
    }

    pub fn module(&self, a: usize) -> &GradedModule {
        &self.filtration.vertices()[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn free_vertex(&self) -> Option<usize> {
        self.vertices.iter().position(|v| v.is_free)
    }

    /// Whether any vertex has a residue algebra bigger than the field.
    pub fn residue_flagged(&self) -> bool {
        self.vertices.iter().any(|v| v.residue_dim > 1)
    }

    /// `E_M` assembled from arrow counts, with consistency checks.
    pub fn middle_term(&self, a: usize) -> Result<ARSequenceData> {
        let t = self.tau[a]
            .ok_or_else(|| Error::Precondition("the free vertex has no almost split sequence".into()))?;
        let n = self.len();
        let middle: Vec<(usize, usize)> =
            (0..n).filter(|&b| self.irr[b][a] > 0).map(|b| (b, self.irr[b][a])).collect();
        let middle_from_tau: Vec<(usize, usize)> =
            (0..n).filter(|&b| self.irr[t][b] > 0).map(|b| (b, self.irr[t][b])).collect();
        let free = self.free_vertex();
        let middle_free_rank =
            middle.iter().filter(|(b, _)| Some(*b) == free).map(|(_, k)| *k).sum();
        let mu_middle = middle.iter().map(|(b, k)| k * self.vertices[*b].mu).sum();
        let e_middle = middle.iter().map(|(b, k)| k * self.vertices[*b].e).sum();
        let touches_free = free.is_some_and(|f| self.irr[f][a] > 0 || self.irr[a][f] > 0);
        let mu_identity = (middle_free_rank == 0 && !touches_free)
            .then(|| mu_middle == self.vertices[a].mu + self.vertices[t].mu);
        let middle_is_free = !middle.is_empty() && middle.iter().all(|(b, _)| Some(*b) == free);
        Ok(ARSequenceData {
            vertex: a,
            tau: t,
            routes_agree: middle == middle_from_tau,
            middle,
            middle_free_rank,
            middle_from_tau,
            mu_middle,
            e_middle,
            mu_identity,
            e_additive: e_middle == self.vertices[a].e + self.vertices[t].e,
            middle_is_free,
        })
    }

    /// Non-free vertices.
    pub fn stable_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| !self.vertices[a].is_free).collect()
    }

    /// Connected components of the stable quiver, ignoring orientation.
    pub fn stable_components(&self) -> Vec<Vec<usize>> {
        let stable = self.stable_vertices();
        let mut comp: BTreeMap<usize, usize> = stable.iter().map(|&a| (a, a)).collect();
        fn find(c: &mut BTreeMap<usize, usize>, a: usize) -> usize {
            let p = c[&a];
            if p == a {
                return a;
            }
            let r = find(c, p);
            c.insert(a, r);
            r
        }
        for arrow in &self.arrows {
            if comp.contains_key(&arrow.source) && comp.contains_key(&arrow.target) {
                let (x, y) = (find(&mut comp, arrow.source), find(&mut comp, arrow.target));
                if x != y {
                    comp.insert(x.max(y), x.min(y));
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &a in &stable {
            let r = find(&mut comp, a);
            groups.entry(r).or_default().push(a);
        }
        groups.into_values().collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph AR {\n");
        for v in &self.vertices {
            let shape = if v.is_free { "doublecircle" } else { "circle" };
            out.push_str(&format!(
                "  \"{}\" [label=\"{} (μ={}, e={})\", shape={shape}];\n",
                v.name, v.name, v.mu, v.e
            ));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[a.source].name, self.vertices[a.target].name, a.multiplicity
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> QuiverReport {
        QuiverReport {
            d: self.d,
            vertices: self.vertices.clone(),
            arrows: self.arrows.clone(),
            tau: self.tau.clone(),
            residue_flagged: self.residue_flagged(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuiverReport {
    pub d: usize,
    pub vertices: Vec<VertexInfo>,
    pub arrows: Vec<Arrow>,
    pub tau: Vec<Option<usize>>,
    pub residue_flagged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Functor {
    Dual,
    Link,
}

/// Applies `functor` to every stable vertex and checks that the induced
/// bijection reverses all stable arrows with their multiplicities.
pub fn reverse_iso_check(q: &ARQuiver, functor: Functor) -> Result<(bool, Vec<(usize, usize)>)> {
    let stable = q.stable_vertices();
    let mut sigma = BTreeMap::new();
    for &a in &stable {
        let m = q.module(a);
        let image = match functor {
            Functor::Dual => dual(m)?,
            Functor::Link => link(m)?,
        };
        let Some((b, _, _)) = q.filtration.locate(&image)? else {
            return Err(Error::CatalogIncomplete(format!(
                "{functor:?} of {} is not a vertex",
                q.vertices[a].name
            )));
        };
        sigma.insert(a, b);
    }
    let mut images: Vec<usize> = sigma.values().copied().collect();
    images.sort_unstable();
    images.dedup();
    let mut ok = images.len() == stable.len() && images.iter().all(|b| !q.vertices[*b].is_free);
    if ok {
        for &a in &stable {
            for &b in &stable {
                if q.irr(a, b) != q.irr(sigma[&b], sigma[&a]) {
                    ok = false;
                }
            }
        }
    }
    Ok((ok, sigma.into_iter().collect()))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitIdeal {
    pub component: Vec<String>,
    /// Smallest `n` with `Syz_n(M)` back in the component, per vertex.
    pub per_vertex: Vec<Option<usize>>,
    /// The common value; `None` means zero within bounds or not constant.
    pub generator: Option<usize>,
    pub constant: bool,
}

pub fn syzygy_orbit_ideal(q: &ARQuiver, component: &[usize], n_max: usize) -> Result<OrbitIdeal> {
    let mut per_vertex = Vec::new();
    for &a in component {
        let res = resolve(q.module(a), n_max + 1)?;
        let mut found = None;
        for n in 1..=n_max {
            let s = res.syzygy(n)?;
            if s.num_gens() == 0 {
                break;
            }
            if let Some((b, _, _)) = q.filtration.locate(&s)? {
                if component.contains(&b) {
                    found = Some(n);
                    break;
                }
            }
        }
        per_vertex.push(found);
    }
    let constant = per_vertex.windows(2).all(|w| w[0] == w[1]);
    Ok(OrbitIdeal {
        component: component.iter().map(|&a| q.vertices[a].name.clone()).collect(),
        generator: if constant { per_vertex.first().copied().flatten() } else { None },
        per_vertex,
        constant,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Property {
    Periodic,
    BoundedNonperiodic,
    Ulrich,
    CxEquals(usize),
    CurvLeq(f64),
}

impl Property {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unknown property '{s}'"));
        Ok(match s {
            "periodic" => Self::Periodic,
            "bounded_nonperiodic" => Self::BoundedNonperiodic,
            "ulrich" => Self::Ulrich,
            _ => {
                if let Some(v) = s.strip_prefix("cx_equals(").and_then(|r| r.strip_suffix(')')) {
                    Self::CxEquals(v.parse().map_err(|_| bad())?)
                } else if let Some(v) = s.strip_prefix("curv_leq(").and_then(|r| r.strip_suffix(')')) {
                    Self::CurvLeq(v.parse().map_err(|_| bad())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub values: Vec<Option<bool>>,
    /// `constant`, `violation` or `partial`.
    pub status: String,
    pub value: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub property: String,
    pub hom_bound: usize,
    pub components: Vec<ComponentReport>,
}

fn vertex_flag(m: &GradedModule, property: Property, h: usize, budget: &SearchBudget) -> Result<bool> {
    Ok(match property {
        Property::Periodic => detect_period(m, 2, 2, budget)?.is_some(),
        Property::BoundedNonperiodic => {
            let g = betti_growth(&resolve(m, h)?.betti());
            g.cx_estimate.is_some_and(|c| c <= 1) && detect_period(m, 2, 2, budget)?.is_none()
        }
        Property::Ulrich => m.is_ulrich()?,
        Property::CxEquals(i) => betti_growth(&resolve(m, h)?.betti()).cx_estimate == Some(i),
        Property::CurvLeq(alpha) => betti_growth(&resolve(m, h)?.betti()).curv_estimate <= alpha,
    })
}

/// Evaluates `property` on every stable vertex and reports, per component,
/// whether it is constant.
pub fn component_classify(
    q: &ARQuiver,
    property: Property,
    h: usize,
    budget: &SearchBudget,
) -> Result<ClassificationReport> {
    let mut components = Vec::new();
    for comp in q.stable_components() {
        let mut values = Vec::new();
        for &a in &comp {
            values.push(match vertex_flag(q.module(a), property, h, budget) {
                Ok(v) => Some(v),
                Err(e) if e.is_inconclusive() => None,
                Err(e) => return Err(e),
            });
        }
        let (status, value) = if values.iter().any(Option::is_none) {
            ("partial", None)
        } else if values.windows(2).all(|w| w[0] == w[1]) {
            ("constant", values[0])
        } else {
            ("violation", None)
        };
        components.push(ComponentReport {
            vertices: comp.iter().map(|&a| q.vertices[a].name.clone()).collect(),
            values,
            status: status.to_string(),
            value,
        });
    }
    Ok(ClassificationReport { property: format!("{property:?}"), hom_bound: h, components })
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftCheck {
    pub source: String,
    pub target: String,
    pub degree: i32,
    /// Radical level of the lifted map; 1 means irreducible.
    pub level: u8,
}

/// Lifts one representative of every irreducible map between stable
/// vertices to the first syzygies and records its radical level.
pub fn arrow_lift_checks(q: &ARQuiver) -> Result<Vec<LiftCheck>> {
    let stable = q.stable_vertices();
    let mut out = Vec::new();
    for arrow in &q.arrows {
        let (a, b) = (arrow.source, arrow.target);
        if !stable.contains(&a) || !stable.contains(&b) {
            continue;
        }
        let (m, n) = (q.module(a), q.module(b));
        let rm = resolve(m, 2)?;
        let rn = resolve(n, 2)?;
        let (sm, sn) = (rm.syzygy(1)?, rn.syzygy(1)?);
        for &(j, _) in &arrow.degrees {
            for x in q.filtration.arrow_representatives(a, b, j)? {
                // x maps gens(M) to gens(N) - j; lift through the presentations
                let rhs = x.mul(m.pres())?;
                let npres = n.pres().shifted(-j);
                let y = npres.solve(&rhs)?.ok_or_else(|| {
                    Error::unstable("arrow representative does not lift".to_string())
                })?;
                let level = q.filtration.level(&sm, &sn, &y)?;
                out.push(LiftCheck {
                    source: q.vertices[a].name.clone(),
                    target: q.vertices[b].name.clone(),
                    degree: j,
                    level,
                });
            }
        }
    }
    Ok(out)
}
