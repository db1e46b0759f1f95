//! Weighted-graded quotient rings `k[x_1..x_n] / (f_1..f_r)` with lazily
//! computed degree pieces.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::linalg::{rref, DenseMatrix, EchelonBasis, PrimeField};
use crate::poly::{monomials_of_degree, parse_poly, Mono, Poly, MAX_VARS};

pub type Ring = Arc<QuotientRing>;

pub const DEFAULT_DEGREE_CAP: i32 = 24;
/// Exponents are packed into bytes, so no piece may need more than this.
pub const MAX_DEGREE_CAP: i32 = 250;

/// One weighted degree of the quotient.
///
/// `monos` lists every ambient monomial of the degree in descending lex order.
/// The relation span is row reduced so that its pivots are the largest
/// monomials; the remaining monomials form the basis of the quotient piece.
#[derive(Debug)]
pub struct DegreePiece {
    degree: i32,
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    basis: Vec<Mono>,
    /// Normal form of each ambient monomial as sparse `(basis index, coeff)`.
    nf: Vec<Vec<(u32, u32)>>,
    /// Reduced basis of the relation ideal in this degree, over `monos`.
    ideal_rows: Vec<Vec<u32>>,
}

impl DegreePiece {
    fn empty(degree: i32) -> Self {
        Self {
            degree,
            monos: Vec::new(),
            index: HashMap::new(),
            basis: Vec::new(),
            nf: Vec::new(),
            ideal_rows: Vec::new(),
        }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mono] {
        &self.basis
    }

    pub fn ambient_monomials(&self) -> &[Mono] {
        &self.monos
    }

    /// Normal form of an ambient monomial of this degree.
    #[inline]
    pub fn nf(&self, m: Mono) -> &[(u32, u32)] {
        let i = *self.index.get(&m).expect("monomial of the wrong degree");
        &self.nf[i]
    }
}

pub struct QuotientRing {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Poly>,
    rel_degrees: Vec<i32>,
    degree_cap: i32,
    cache: RwLock<HashMap<i32, Arc<DegreePiece>>>,
    /// Krull dimension and multiplicity, once computed.
    pub(crate) samuel: OnceLock<(usize, usize)>,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| self.format(r)).collect();
        write!(
            f,
            "GF({})[{}; weights {:?}]/({})",
            self.field.modulus(),
            self.vars.join(","),
            self.weights,
            rels.join(", ")
        )
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.weights == other.weights
            && self.relations == other.relations
    }
}

impl QuotientRing {
    /// Builds the ring. `characteristic` must be a prime; characteristic zero
    /// is not supported by the graded engine.
    pub fn new(
        characteristic: u32,
        vars: Vec<String>,
        weights: Vec<u32>,
        relations: Vec<Poly>,
        degree_cap: i32,
    ) -> Result<Ring> {
        if characteristic == 0 {
            return Err(Error::Unsupported(
                "graded computations need a prime characteristic".into(),
            ));
        }
        let field = PrimeField::new(characteristic)
            .ok_or_else(|| Error::Input(format!("{characteristic} is not a prime below 2^31")))?;
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::Input(format!("need between 1 and {MAX_VARS} variables")));
        }
        if weights.len() != vars.len() {
            return Err(Error::Input("one weight per variable is required".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Input("weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable name '{v}'")));
            }
        }
        if !(0..=MAX_DEGREE_CAP).contains(&degree_cap) {
            return Err(Error::Input(format!("degree cap must lie in 0..={MAX_DEGREE_CAP}")));
        }
        let mut rels = Vec::new();
        let mut rel_degrees = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let Some(d) = r.homogeneous_degree(&weights) else {
                return Err(Error::Input(format!(
                    "relation {} is not weighted-homogeneous",
                    r.format(&field, &vars)
                )));
            };
            if d <= 0 {
                return Err(Error::Input("relations must have positive degree".into()));
            }
            rels.push(r);
            rel_degrees.push(d);
        }
        Ok(Arc::new(Self {
            field,
            vars,
            weights,
            relations: rels,
            rel_degrees,
            degree_cap,
            cache: RwLock::new(HashMap::new()),
            samuel: OnceLock::new(),
        }))
    }

    /// Convenience constructor from relation strings.
    pub fn parse(
        characteristic: u32,
        vars: &[&str],
        weights: &[u32],
        relations: &[&str],
        degree_cap: i32,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let field = PrimeField::new(characteristic)
            .ok_or_else(|| Error::Input(format!("{characteristic} is not a prime")))?;
        let rels = relations
            .iter()
            .map(|r| parse_poly(r, &vars, &field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(characteristic, vars, weights.to_vec(), rels, degree_cap)
    }

    /// Same ring with a different degree cap (fresh cache).
    pub fn with_degree_cap(&self, cap: i32) -> Result<Ring> {
        Self::new(
            self.field.modulus(),
            self.vars.clone(),
            self.weights.clone(),
            self.relations.clone(),
            cap,
        )
    }

    /// The ambient polynomial ring, with no relations.
    pub fn ambient(&self) -> Ring {
        Self::new(
            self.field.modulus(),
            self.vars.clone(),
            self.weights.clone(),
            Vec::new(),
            self.degree_cap,
        )
        .expect("ambient of a valid ring is valid")
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.modulus()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn max_weight(&self) -> i32 {
        *self.weights.iter().max().unwrap() as i32
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn relation_degrees(&self) -> &[i32] {
        &self.rel_degrees
    }

    pub fn max_relation_degree(&self) -> i32 {
        self.rel_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn degree_cap(&self) -> i32 {
        self.degree_cap
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format(&self.field, &self.vars)
    }

    pub fn parse_element(&self, s: &str) -> Result<Poly> {
        parse_poly(s, &self.vars, &self.field)
    }

    pub fn variable(&self, i: usize) -> Poly {
        Poly::monomial(Mono::var(i), 1)
    }

    pub fn degree_of(&self, p: &Poly) -> Option<i32> {
        p.homogeneous_degree(&self.weights)
    }

    /// The degree-`d` piece. Negative degrees give the zero piece; degrees above
    /// the cap are reported as inconclusive.
    pub fn piece(&self, d: i32) -> Result<Arc<DegreePiece>> {
        if d < 0 {
            return Ok(Arc::new(DegreePiece::empty(d)));
        }
        if d > self.degree_cap {
            return Err(Error::degree_bound(d, self.degree_cap));
        }
        if let Some(p) = self.cache.read().unwrap().get(&d) {
            return Ok(p.clone());
        }
        let built = Arc::new(self.build_piece(d)?);
        let mut w = self.cache.write().unwrap();
        Ok(w.entry(d).or_insert(built).clone())
    }

    fn build_piece(&self, d: i32) -> Result<DegreePiece> {
        let monos = monomials_of_degree(&self.weights, d);
        let n = monos.len();
        let index: HashMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let f = self.field;
        let mut span = EchelonBasis::new(f, n);
        for (i, &w) in self.weights.iter().enumerate() {
            let lower_deg = d - w as i32;
            if lower_deg < 0 {
                continue;
            }
            let lower = self.piece(lower_deg)?;
            let xi = Mono::var(i);
            for row in &lower.ideal_rows {
                let mut v = vec![0u32; n];
                for (k, &c) in row.iter().enumerate() {
                    if c != 0 {
                        v[index[&lower.monos[k].mul(xi)]] = c;
                    }
                }
                span.insert(&v);
            }
        }
        for (r, &rd) in self.relations.iter().zip(&self.rel_degrees) {
            if rd == d {
                let mut v = vec![0u32; n];
                for (m, c) in r.terms() {
                    v[index[&m]] = c;
                }
                span.insert(&v);
            }
        }
        let rows: Vec<Vec<u32>> = span.basis_rows().to_vec();
        let reduced = if rows.is_empty() {
            None
        } else {
            Some(rref(&f, &DenseMatrix::from_rows(rows, n)))
        };
        let mut is_pivot = vec![false; n];
        let mut pivot_row = vec![usize::MAX; n];
        if let Some(r) = &reduced {
            for (row, &pc) in r.pivots.iter().enumerate() {
                is_pivot[pc] = true;
                pivot_row[pc] = row;
            }
        }
        let mut basis = Vec::new();
        let mut bidx = vec![u32::MAX; n];
        for c in 0..n {
            if !is_pivot[c] {
                bidx[c] = basis.len() as u32;
                basis.push(monos[c]);
            }
        }
        let mut nf = Vec::with_capacity(n);
        for c in 0..n {
            if is_pivot[c] {
                let r = reduced.as_ref().unwrap();
                let row = r.reduced.row(pivot_row[c]);
                let mut v = Vec::new();
                for q in 0..n {
                    if !is_pivot[q] && row[q] != 0 {
                        v.push((bidx[q], f.neg_u(row[q])));
                    }
                }
                nf.push(v);
            } else {
                nf.push(vec![(bidx[c], 1 % f.modulus())]);
            }
        }
        let ideal_rows = match reduced {
            Some(r) => (0..r.rank()).map(|i| r.reduced.row(i).to_vec()).collect(),
            None => Vec::new(),
        };
        Ok(DegreePiece { degree: d, monos, index, basis, nf, ideal_rows })
    }

    /// Monomial basis of the degree-`d` piece of the quotient.
    pub fn degree_basis(&self, d: i32) -> Result<Vec<Mono>> {
        Ok(self.piece(d)?.basis.clone())
    }

    pub fn hilbert_function(&self, d: i32) -> Result<usize> {
        Ok(self.piece(d)?.dim())
    }

    /// Coordinates of a homogeneous element of degree `d` in the basis of `A_d`.
    pub fn coords(&self, p: &Poly, d: i32) -> Result<Vec<u32>> {
        let piece = self.piece(d)?;
        let mut v = vec![0u32; piece.dim()];
        for (m, c) in p.terms() {
            if m.weighted_degree(&self.weights) != d {
                return Err(Error::Precondition(format!(
                    "{} is not homogeneous of degree {d}",
                    self.format(p)
                )));
            }
            for &(k, a) in piece.nf(m) {
                let k = k as usize;
                v[k] = self.field.add_u(v[k], self.field.mul_u(a, c));
            }
        }
        Ok(v)
    }

    /// The element with coordinates `v` in the basis of `A_d`.
    pub fn from_coords(&self, d: i32, v: &[u32]) -> Result<Poly> {
        let piece = self.piece(d)?;
        assert_eq!(v.len(), piece.dim());
        Ok(Poly::from_terms(
            &self.field,
            v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (piece.basis[k], *c)),
        ))
    }

    /// Normal form, term by term; works for non-homogeneous input as well.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let d = m.weighted_degree(&self.weights);
            let piece = self.piece(d)?;
            for &(k, a) in piece.nf(m) {
                out.add_term(&self.field, piece.basis[k as usize], self.field.mul_u(a, c));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.normal_form(&a.mul(&self.field, b))
    }

    /// Adds `scale * m * r` (in normal form) into `out`, a coordinate vector of
    /// `target`. `m * r` must be homogeneous of the target degree.
    #[inline]
    pub fn accumulate(&self, target: &DegreePiece, m: Mono, r: &Poly, scale: u32, out: &mut [u32]) {
        let f = &self.field;
        for (rm, rc) in r.terms() {
            let s = f.mul_u(scale, rc);
            for &(k, a) in target.nf(m.mul(rm)) {
                let k = k as usize;
                out[k] = f.add_u(out[k], f.mul_u(a, s));
            }
        }
    }

    /// Multiplies the element with coordinates `v` in `A_d` by `r` (of degree `e`).
    pub fn mul_coords(&self, d: i32, v: &[u32], r: &Poly, e: i32) -> Result<Vec<u32>> {
        let src = self.piece(d)?;
        let tgt = self.piece(d + e)?;
        let mut out = vec![0u32; tgt.dim()];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                self.accumulate(&tgt, src.basis[k], r, c, &mut out);
            }
        }
        Ok(out)
    }

    /// Checks the Hilbert function against `prod(1 - t^deg f_i) / prod(1 - t^w_j)`
    /// up to degree `bound`. Equality certifies that the relations form a
    /// regular sequence.
    pub fn matches_complete_intersection(&self, bound: i32) -> Result<bool> {
        let expected = complete_intersection_series(&self.weights, &self.rel_degrees, bound);
        for d in 0..=bound {
            if self.hilbert_function(d)? as i64 != expected[d as usize] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Power series coefficients of `prod(1 - t^r) / prod(1 - t^w)` up to `bound`.
pub fn complete_intersection_series(weights: &[u32], rel_degrees: &[i32], bound: i32) -> Vec<i64> {
    let n = bound as usize + 1;
    let mut s = vec![0i64; n];
    s[0] = 1;
    for &w in weights {
        let w = w as usize;
        for i in w..n {
            s[i] += s[i - w];
        }
    }
    for &r in rel_degrees {
        let r = r as usize;
        for i in (r..n).rev() {
            s[i] -= s[i - r];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_curve_pieces() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2+y^2"], 24).unwrap();
        assert_eq!(a.degree_basis(1).unwrap().len(), 2);
        for d in 1..10 {
            assert_eq!(a.hilbert_function(d).unwrap(), 2);
        }
        assert_eq!(a.hilbert_function(0).unwrap(), 1);
        let x = a.variable(0);
        let prod = a.mul(&x, &x).unwrap();
        assert_eq!(prod, a.parse_element("-y^2").unwrap());
    }

    #[test]
    fn weighted_cusp() {
        let a = QuotientRing::parse(7, &["x", "y"], &[3, 2], &["x^2+y^3"], 24).unwrap();
        assert_eq!(a.hilbert_function(6).unwrap(), 1);
        assert_eq!(a.hilbert_function(1).unwrap(), 0);
    }

    #[test]
    fn artinian_truncation() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 24).unwrap();
        let hs: Vec<usize> = (0..4).map(|d| a.hilbert_function(d).unwrap()).collect();
        assert_eq!(hs, vec![1, 2, 1, 0]);
        let y = a.variable(1);
        assert!(a.mul(&y, &y).unwrap().is_zero());
    }

    #[test]
    fn fermat_cubic() {
        let a = QuotientRing::parse(7, &["x", "y", "z"], &[1, 1, 1], &["x^3+y^3+z^3"], 24).unwrap();
        assert_eq!(a.hilbert_function(3).unwrap(), 9);
        assert!(a.matches_complete_intersection(12).unwrap());
    }

    #[test]
    fn degree_cap_is_inconclusive() {
        let a = QuotientRing::parse(7, &["x"], &[1], &[], 5).unwrap();
        assert!(a.piece(6).unwrap_err().is_inconclusive());
        assert_eq!(a.hilbert_function(-1).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2+y"], 24).is_err());
        assert!(QuotientRing::parse(7, &["x", "x"], &[1, 1], &[], 24).is_err());
        assert!(QuotientRing::parse(8, &["x"], &[1], &[], 24).is_err());
        assert!(matches!(
            QuotientRing::new(0, vec!["x".into()], vec![1], vec![], 24),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn non_regular_sequence_detected() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "x*y"], 24).unwrap();
        assert!(!a.matches_complete_intersection(6).unwrap());
    }
}
