use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Row-major dense matrix. Entries are interpreted through a [`Field`] context.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for DenseMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<E: Clone> DenseMatrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Self { rows: nrows, cols, data }
    }

    pub fn from_columns(columns: &[Vec<E>], rows: usize, zero: E) -> Self {
        let mut m = Self::filled(rows, columns.len(), zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if field.is_zero(b) {
                        continue;
                    }
                    let v = field.add(out.get(i, j), &field.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref<E> {
    pub reduced: DenseMatrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row-echelon form. Row space is preserved, pivots are leading ones.
pub fn rref<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..a.cols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { reduced: a, pivots }
}

pub fn rank<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> usize {
    rref(field, m).rank()
}

/// Columns of the result form a basis of `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(field: &F, m: &DenseMatrix<F::Elem>) -> DenseMatrix<F::Elem> {
    let Rref { reduced, pivots } = rref(field, m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = DenseMatrix::zeros(field, n, free.len());
    for (k, &fc) in free.iter().enumerate() {
        basis.set(fc, k, field.one());
        for (row, &pc) in pivots.iter().enumerate() {
            let v = field.neg(reduced.get(row, fc));
            basis.set(pc, k, v);
        }
    }
    basis
}

/// Solves `m x = rhs`; `Ok(None)` when some column of `rhs` is outside the column space.
pub fn solve<F: Field>(
    field: &F,
    m: &DenseMatrix<F::Elem>,
    rhs: &DenseMatrix<F::Elem>,
) -> Result<Option<DenseMatrix<F::Elem>>> {
    if m.rows() != rhs.rows() {
        return Err(Error::Precondition(format!(
            "solve: matrix has {} rows but right-hand side has {}",
            m.rows(),
            rhs.rows()
        )));
    }
    let n = m.cols();
    let k = rhs.cols();
    let mut aug = DenseMatrix::zeros(field, m.rows(), n + k);
    for i in 0..m.rows() {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        for j in 0..k {
            aug.set(i, n + j, rhs.get(i, j).clone());
        }
    }
    let Rref { reduced, pivots } = rref(field, &aug);
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = DenseMatrix::zeros(field, n, k);
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..k {
            x.set(pc, j, reduced.get(row, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// Incrementally maintained echelon basis of a subspace of `E^n`.
///
/// Optionally tracks, for every stored row, its expression in terms of the
/// vectors passed to [`EchelonBasis::insert`], so that coordinates of a vector
/// in the span can be recovered.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    len: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<F::Elem>>>,
    inserted: usize,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, len: usize) -> Self {
        Self { field, len, rows: Vec::new(), pivots: Vec::new(), combos: None, inserted: 0 }
    }

    pub fn tracked(field: F, len: usize) -> Self {
        Self { combos: Some(Vec::new()), ..Self::new(field, len) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of calls to `insert` so far (including dependent vectors).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_inner(&self, v: &mut [F::Elem], mut combo: Option<&mut Vec<F::Elem>>) {
        for (idx, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[pc].clone();
            if self.field.is_zero(&c) {
                continue;
            }
            for j in pc..self.len {
                if !self.field.is_zero(&row[j]) {
                    v[j] = self.field.sub(&v[j], &self.field.mul(&c, &row[j]));
                }
            }
            if let (Some(out), Some(combos)) = (combo.as_deref_mut(), self.combos.as_ref()) {
                for (t, x) in combos[idx].iter().enumerate() {
                    if !self.field.is_zero(x) {
                        out[t] = self.field.add(&out[t], &self.field.mul(&c, x));
                    }
                }
            }
        }
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut w = v.to_vec();
        self.reduce_inner(&mut w, None);
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in terms of the inserted vectors, if `v` is in the span.
    /// Only available on tracked bases.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert!(self.combos.is_some(), "coordinates need a tracked basis");
        let mut w = v.to_vec();
        let mut combo = vec![self.field.zero(); self.inserted];
        self.reduce_inner(&mut w, Some(&mut combo));
        if w.iter().all(|x| self.field.is_zero(x)) {
            Some(combo)
        } else {
            None
        }
    }

    /// Adds `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let idx = self.inserted;
        self.inserted += 1;
        let mut w = v.to_vec();
        let mut combo = self.combos.as_ref().map(|_| vec![self.field.zero(); idx]);
        self.reduce_inner(&mut w, combo.as_mut());
        let Some(pc) = w.iter().position(|x| !self.field.is_zero(x)) else {
            return false;
        };
        let inv = self.field.inv(&w[pc]).expect("nonzero pivot");
        for x in w.iter_mut().skip(pc) {
            *x = self.field.mul(x, &inv);
        }
        if let (Some(mut c), Some(combos)) = (combo, self.combos.as_mut()) {
            // new row = (v - sum c_k row_k) * inv, expressed in inserted vectors
            let mut full: Vec<F::Elem> =
                c.drain(..).map(|x| self.field.neg(&x)).collect();
            full.push(self.field.one());
            for x in full.iter_mut() {
                *x = self.field.mul(x, &inv);
            }
            combos.push(full);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn basis_rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// Pivot column of each stored row. Residuals from [`EchelonBasis::reduce`]
    /// vanish at every pivot.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
