//! Homogeneous matrices: degree-0 maps between graded free modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve, DenseMatrix, EchelonBasis};
use crate::poly::Poly;
use crate::ring::{DegreePiece, Ring};

/// A map `F_src -> F_tgt` of graded free modules.
///
/// Column `j` is the image of the `j`-th source generator (degree
/// `col_degs[j]`); entry `(i, j)` lies in `A_{col_degs[j] - row_degs[i]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HMatrix {
    ring: Ring,
    row_degs: Vec<i32>,
    col_degs: Vec<i32>,
    entries: Vec<Vec<Poly>>,
}

/// The degree-`t` piece of a graded free module, one block per generator.
pub struct FreePiece {
    pub offsets: Vec<usize>,
    pub pieces: Vec<Arc<DegreePiece>>,
    pub total: usize,
}

impl FreePiece {
    pub fn new(ring: &Ring, degs: &[i32], t: i32) -> Result<Self> {
        let mut offsets = Vec::with_capacity(degs.len());
        let mut pieces = Vec::with_capacity(degs.len());
        let mut total = 0;
        for &d in degs {
            let p = ring.piece(t - d)?;
            offsets.push(total);
            total += p.dim();
            pieces.push(p);
        }
        Ok(Self { offsets, pieces, total })
    }

    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.pieces[i].dim()
    }
}

impl HMatrix {
    /// Builds the matrix, reducing entries to normal form and checking degrees.
    pub fn new(
        ring: &Ring,
        row_degs: Vec<i32>,
        col_degs: Vec<i32>,
        entries: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        if entries.len() != row_degs.len() {
            return Err(Error::Input(format!(
                "matrix has {} rows but {} row degrees",
                entries.len(),
                row_degs.len()
            )));
        }
        let mut clean = Vec::with_capacity(entries.len());
        for (i, row) in entries.into_iter().enumerate() {
            if row.len() != col_degs.len() {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    col_degs.len()
                )));
            }
            let mut r = Vec::with_capacity(row.len());
            for (j, e) in row.into_iter().enumerate() {
                let e = ring.normal_form(&e)?;
                if !e.is_zero() {
                    let want = col_degs[j] - row_degs[i];
                    if ring.degree_of(&e) != Some(want) {
                        return Err(Error::Input(format!(
                            "entry ({i},{j}) = {} is not homogeneous of degree {want}",
                            ring.format(&e)
                        )));
                    }
                }
                r.push(e);
            }
            clean.push(r);
        }
        Ok(Self { ring: ring.clone(), row_degs, col_degs, entries: clean })
    }

    pub fn from_strings(
        ring: &Ring,
        row_degs: Vec<i32>,
        col_degs: Vec<i32>,
        entries: &[&[&str]],
    ) -> Result<Self> {
        let e = entries
            .iter()
            .map(|row| row.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, row_degs, col_degs, e)
    }

    pub fn zero(ring: &Ring, row_degs: Vec<i32>, col_degs: Vec<i32>) -> Self {
        let entries = vec![vec![Poly::zero(); col_degs.len()]; row_degs.len()];
        Self { ring: ring.clone(), row_degs, col_degs, entries }
    }

    pub fn identity(ring: &Ring, degs: Vec<i32>) -> Self {
        let mut m = Self::zero(ring, degs.clone(), degs);
        for i in 0..m.nrows() {
            m.entries[i][i] = Poly::constant(1);
        }
        m
    }

    pub(crate) fn from_parts_unchecked(
        ring: &Ring,
        row_degs: Vec<i32>,
        col_degs: Vec<i32>,
        entries: Vec<Vec<Poly>>,
    ) -> Self {
        Self { ring: ring.clone(), row_degs, col_degs, entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The same entries read in another ring on the same variables.
    pub fn over(&self, ring: &Ring) -> Result<HMatrix> {
        if ring.vars() != self.ring.vars() || ring.weights() != self.ring.weights() {
            return Err(Error::Precondition("rings have different variables".into()));
        }
        Self::new(ring, self.row_degs.clone(), self.col_degs.clone(), self.entries.clone())
    }

    pub fn nrows(&self) -> usize {
        self.row_degs.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degs.len()
    }

    pub fn row_degs(&self) -> &[i32] {
        &self.row_degs
    }

    pub fn col_degs(&self) -> &[i32] {
        &self.col_degs
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// True when no entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.is_zero() || e.as_constant().is_none()))
    }

    /// All degrees shifted by `s`; the entries are unchanged.
    pub fn shifted(&self, s: i32) -> Self {
        Self {
            ring: self.ring.clone(),
            row_degs: self.row_degs.iter().map(|d| d + s).collect(),
            col_degs: self.col_degs.iter().map(|d| d + s).collect(),
            entries: self.entries.clone(),
        }
    }

    /// The dual map `F_tgt^* -> F_src^*`; generator degrees are negated.
    pub fn transpose(&self) -> Self {
        let entries = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        Self {
            ring: self.ring.clone(),
            row_degs: self.col_degs.iter().map(|d| -d).collect(),
            col_degs: self.row_degs.iter().map(|d| -d).collect(),
            entries,
        }
    }

    /// Composition `self * other`.
    pub fn mul(&self, other: &HMatrix) -> Result<HMatrix> {
        if self.col_degs != other.row_degs {
            return Err(Error::Precondition(format!(
                "cannot compose: source degrees {:?} vs target degrees {:?}",
                self.col_degs, other.row_degs
            )));
        }
        let f = *self.ring.field();
        let mut entries = vec![vec![Poly::zero(); other.ncols()]; self.nrows()];
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols() {
                    let b = &other.entries[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(&f, b);
                    entries[i][j] = entries[i][j].add(&f, &prod);
                }
            }
        }
        for row in entries.iter_mut() {
            for e in row.iter_mut() {
                *e = self.ring.normal_form(e)?;
            }
        }
        Ok(Self {
            ring: self.ring.clone(),
            row_degs: self.row_degs.clone(),
            col_degs: other.col_degs.clone(),
            entries,
        })
    }

    pub fn add(&self, other: &HMatrix) -> Result<HMatrix> {
        if self.row_degs != other.row_degs || self.col_degs != other.col_degs {
            return Err(Error::Precondition("cannot add matrices of different shapes".into()));
        }
        let f = *self.ring.field();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(&f, y)).collect())
            .collect();
        Ok(Self { entries, ..self.clone() })
    }

    pub fn scale(&self, s: u32) -> HMatrix {
        let f = *self.ring.field();
        let entries =
            self.entries.iter().map(|r| r.iter().map(|e| e.scale(&f, s)).collect()).collect();
        Self { entries, ..self.clone() }
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hconcat(&self, other: &HMatrix) -> Result<HMatrix> {
        if self.row_degs != other.row_degs {
            return Err(Error::Precondition("hconcat needs equal row degrees".into()));
        }
        let mut col_degs = self.col_degs.clone();
        col_degs.extend_from_slice(&other.col_degs);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(Self { ring: self.ring.clone(), row_degs: self.row_degs.clone(), col_degs, entries })
    }

    pub fn block_diag(&self, other: &HMatrix) -> HMatrix {
        let mut row_degs = self.row_degs.clone();
        row_degs.extend_from_slice(&other.row_degs);
        let mut col_degs = self.col_degs.clone();
        col_degs.extend_from_slice(&other.col_degs);
        let mut m = Self::zero(&self.ring, row_degs, col_degs);
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                m.entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..other.nrows() {
            for j in 0..other.ncols() {
                m.entries[self.nrows() + i][self.ncols() + j] = other.entries[i][j].clone();
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> HMatrix {
        Self {
            ring: self.ring.clone(),
            row_degs: self.row_degs.clone(),
            col_degs: cols.iter().map(|&j| self.col_degs[j]).collect(),
            entries: self.entries.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> HMatrix {
        Self {
            ring: self.ring.clone(),
            row_degs: rows.iter().map(|&i| self.row_degs[i]).collect(),
            col_degs: self.col_degs.clone(),
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Degree-0 scalar part: entries between generators of equal degree.
    pub fn constant_part(&self) -> DenseMatrix<u32> {
        let mut m = DenseMatrix::filled(self.nrows(), self.ncols(), 0u32);
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if self.row_degs[i] == self.col_degs[j] {
                    if let Some(c) = self.entries[i][j].as_constant() {
                        m.set(i, j, c);
                    }
                }
            }
        }
        m
    }

    /// Coordinates of column `j` in the target piece of degree `col_degs[j]`.
    pub fn column_vector(&self, j: usize, target: &FreePiece) -> Vec<u32> {
        let mut v = vec![0u32; target.total];
        for i in 0..self.nrows() {
            let e = &self.entries[i][j];
            if e.is_zero() {
                continue;
            }
            let piece = &target.pieces[i];
            let off = target.offsets[i];
            for (m, c) in e.terms() {
                for &(k, a) in piece.nf(m) {
                    let k = off + k as usize;
                    v[k] = self.ring.field().add_u(v[k], self.ring.field().mul_u(a, c));
                }
            }
        }
        v
    }

    /// The linear map on degree-`t` pieces.
    pub fn degree_map(&self, t: i32) -> Result<DenseMatrix<u32>> {
        let src = FreePiece::new(&self.ring, &self.col_degs, t)?;
        let tgt = FreePiece::new(&self.ring, &self.row_degs, t)?;
        self.degree_map_with(&src, &tgt)
    }

    pub fn degree_map_with(&self, src: &FreePiece, tgt: &FreePiece) -> Result<DenseMatrix<u32>> {
        let mut m = DenseMatrix::filled(tgt.total, src.total, 0u32);
        let mut col = vec![0u32; tgt.total];
        for j in 0..self.ncols() {
            let sp = &src.pieces[j];
            for (k, &b) in sp.basis().iter().enumerate() {
                col.iter_mut().for_each(|x| *x = 0);
                for i in 0..self.nrows() {
                    let e = &self.entries[i][j];
                    if e.is_zero() {
                        continue;
                    }
                    let r = tgt.block(i);
                    self.ring.accumulate(&tgt.pieces[i], b, e, 1, &mut col[r]);
                }
                let c = src.offsets[j] + k;
                for (i, &v) in col.iter().enumerate() {
                    if v != 0 {
                        m.set(i, c, v);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Turns a vector of a free piece back into a column of polynomials.
    pub fn vector_to_column(ring: &Ring, v: &[u32], piece: &FreePiece) -> Vec<Poly> {
        (0..piece.pieces.len())
            .map(|i| {
                let p = &piece.pieces[i];
                let off = piece.offsets[i];
                Poly::from_terms(
                    ring.field(),
                    (0..p.dim()).filter(|&k| v[off + k] != 0).map(|k| (p.basis()[k], v[off + k])),
                )
            })
            .collect()
    }

    /// Minimal homogeneous generators of the kernel, as a matrix whose
    /// target is the source of `self`.
    ///
    /// Degrees are scanned upward from the smallest source degree. The scan
    /// stops once it is a safety gap beyond both the largest source degree and
    /// the last generator found; the gap covers one relation degree plus two
    /// variable weights.
    pub fn kernel(&self) -> Result<HMatrix> {
        let ring = &self.ring;
        if self.ncols() == 0 {
            return Ok(Self::zero(ring, self.col_degs.clone(), Vec::new()));
        }
        let gap = ring.max_relation_degree().max(2 * ring.max_weight()) + ring.max_weight();
        let lo = *self.col_degs.iter().min().unwrap();
        let hi = *self.col_degs.iter().max().unwrap();
        let mut gens: Vec<(i32, Vec<Poly>)> = Vec::new();
        let mut t = lo;
        let mut last = hi;
        while t <= last + gap {
            let src = FreePiece::new(ring, &self.col_degs, t)?;
            if src.total > 0 {
                let tgt = FreePiece::new(ring, &self.row_degs, t)?;
                let m = self.degree_map_with(&src, &tgt)?;
                let kb = kernel_basis(ring.field(), &m);
                if kb.cols() > 0 {
                    let mut span = EchelonBasis::new(*ring.field(), src.total);
                    for (gd, g) in &gens {
                        let mp = ring.piece(t - gd)?;
                        for &mono in mp.basis() {
                            let mut v = vec![0u32; src.total];
                            for (i, e) in g.iter().enumerate() {
                                if !e.is_zero() {
                                    let r = src.block(i);
                                    ring.accumulate(&src.pieces[i], mono, e, 1, &mut v[r]);
                                }
                            }
                            span.insert(&v);
                        }
                    }
                    for c in 0..kb.cols() {
                        let v = kb.column(c);
                        if span.insert(&v) {
                            gens.push((t, Self::vector_to_column(ring, &v, &src)));
                            last = last.max(t);
                        }
                    }
                }
            }
            t += 1;
        }
        let col_degs: Vec<i32> = gens.iter().map(|g| g.0).collect();
        let mut entries = vec![Vec::with_capacity(gens.len()); self.ncols()];
        for (_, g) in gens {
            for (i, e) in g.into_iter().enumerate() {
                entries[i].push(e);
            }
        }
        Ok(Self { ring: ring.clone(), row_degs: self.col_degs.clone(), col_degs, entries })
    }

    /// Finds `Y` with `self * Y = rhs`, or `None` if some column of `rhs` is
    /// outside the image.
    pub fn solve(&self, rhs: &HMatrix) -> Result<Option<HMatrix>> {
        if rhs.row_degs != self.row_degs {
            return Err(Error::Precondition("solve needs matching target degrees".into()));
        }
        let ring = &self.ring;
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (j, &d) in rhs.col_degs.iter().enumerate() {
            by_degree.entry(d).or_default().push(j);
        }
        let mut cols: Vec<Vec<Poly>> = vec![Vec::new(); rhs.ncols()];
        for (d, js) in by_degree {
            let src = FreePiece::new(ring, &self.col_degs, d)?;
            let tgt = FreePiece::new(ring, &self.row_degs, d)?;
            let m = self.degree_map_with(&src, &tgt)?;
            let b = DenseMatrix::from_columns(
                &js.iter().map(|&j| rhs.column_vector(j, &tgt)).collect::<Vec<_>>(),
                tgt.total,
                0,
            );
            let Some(x) = solve(ring.field(), &m, &b)? else {
                return Ok(None);
            };
            for (k, &j) in js.iter().enumerate() {
                cols[j] = Self::vector_to_column(ring, &x.column(k), &src);
            }
        }
        let mut entries = vec![Vec::with_capacity(rhs.ncols()); self.ncols()];
        for c in cols {
            for (i, e) in c.into_iter().enumerate() {
                entries[i].push(e);
            }
        }
        Ok(Some(Self {
            ring: ring.clone(),
            row_degs: self.col_degs.clone(),
            col_degs: rhs.col_degs.clone(),
            entries,
        }))
    }

    pub fn format_entries(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| self.ring.format(e)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn kernel_of_x_over_dual_numbers() {
        let a = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 24).unwrap();
        let m = HMatrix::from_strings(&a, vec![0], vec![1], &[&["x"]]).unwrap();
        let k = m.kernel().unwrap();
        assert_eq!(k.col_degs(), &[2]);
        assert_eq!(k.get(0, 0), &a.parse_element("x").unwrap());
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn koszul_kernel_over_polynomial_ring() {
        let q = QuotientRing::parse(5, &["x", "y"], &[1, 1], &[], 24).unwrap();
        let m = HMatrix::from_strings(&q, vec![0], vec![1, 1], &[&["x", "y"]]).unwrap();
        let k = m.kernel().unwrap();
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.col_degs(), &[2]);
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.kernel().unwrap().ncols(), 0);
    }

    #[test]
    fn rejects_inhomogeneous_entries() {
        let q = QuotientRing::parse(5, &["x", "y"], &[1, 1], &[], 24).unwrap();
        assert!(HMatrix::from_strings(&q, vec![0], vec![2], &[&["x"]]).is_err());
    }

    #[test]
    fn solve_and_transpose() {
        let q = QuotientRing::parse(5, &["x", "y"], &[1, 1], &[], 24).unwrap();
        let m = HMatrix::from_strings(&q, vec![0], vec![1, 1], &[&["x", "y"]]).unwrap();
        let rhs = HMatrix::from_strings(&q, vec![0], vec![2], &[&["x*y+y^2"]]).unwrap();
        let y = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(m.mul(&y).unwrap(), rhs);
        let bad = HMatrix::from_strings(&q, vec![0], vec![0], &[&["1"]]).unwrap();
        assert!(m.solve(&bad).unwrap().is_none());
        let t = m.transpose();
        assert_eq!(t.row_degs(), &[-1, -1]);
        assert_eq!(t.col_degs(), &[0]);
        assert_eq!(t.transpose(), m);
    }
}
