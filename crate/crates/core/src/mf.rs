//! Matrix factorizations `(phi, psi)` of a hypersurface equation.
//!
//! Both matrices live over the ambient polynomial ring. With `G0` the row
//! degrees of `phi`, `G1` its column degrees and `delta = deg f`, `psi` has row
//! degrees `G1` and column degrees `G0 + delta`.

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::module::GradedModule;
use crate::poly::Poly;
use crate::resolution::resolve;
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    ring: Ring,
    ambient: Ring,
    phi: HMatrix,
    psi: HMatrix,
}

fn hypersurface_degree(ring: &Ring) -> Result<i32> {
    match ring.relation_degrees() {
        [d] => Ok(*d),
        _ => Err(Error::Precondition("matrix factorizations need a hypersurface ring".into())),
    }
}

impl MatrixFactorization {
    /// `ring` is the hypersurface `Q/(f)`; the matrices may be given over
    /// either ring and are read over `Q`.
    pub fn new(ring: &Ring, phi: HMatrix, psi: HMatrix) -> Result<Self> {
        let delta = hypersurface_degree(ring)?;
        let ambient = ring.ambient();
        let phi = phi.over(&ambient)?;
        let psi = psi.over(&ambient)?;
        if phi.nrows() != phi.ncols() || psi.nrows() != psi.ncols() || phi.nrows() != psi.nrows()
        {
            return Err(Error::Input("phi and psi must be square of the same size".into()));
        }
        let shifted: Vec<i32> = phi.row_degs().iter().map(|d| d + delta).collect();
        if psi.row_degs() != phi.col_degs() || psi.col_degs() != shifted.as_slice() {
            return Err(Error::Input(
                "psi degrees must be (columns of phi) x (rows of phi + deg f)".into(),
            ));
        }
        Ok(Self { ring: ring.clone(), ambient, phi, psi })
    }

    pub fn from_strings(
        ring: &Ring,
        row_degs: Vec<i32>,
        col_degs: Vec<i32>,
        phi: &[&[&str]],
        psi: &[&[&str]],
    ) -> Result<Self> {
        let delta = hypersurface_degree(ring)?;
        let ambient = ring.ambient();
        let shifted = row_degs.iter().map(|d| d + delta).collect();
        let p = HMatrix::from_strings(&ambient, row_degs, col_degs.clone(), phi)?;
        let q = HMatrix::from_strings(&ambient, col_degs, shifted, psi)?;
        Self::new(ring, p, q)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn f(&self) -> &Poly {
        &self.ring.relations()[0]
    }

    pub fn f_degree(&self) -> i32 {
        self.ring.relation_degrees()[0]
    }

    pub fn phi(&self) -> &HMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &HMatrix {
        &self.psi
    }

    pub fn size(&self) -> usize {
        self.phi.nrows()
    }

    fn f_identity(&self, degs: &[i32]) -> Result<HMatrix> {
        let delta = self.f_degree();
        let n = degs.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.f().clone() } else { Poly::zero() }).collect())
            .collect();
        HMatrix::new(&self.ambient, degs.to_vec(), degs.iter().map(|d| d + delta).collect(), entries)
    }

    /// `phi psi = f I` and `psi phi = f I`, exactly.
    pub fn validate(&self) -> Result<bool> {
        let a = self.phi.mul(&self.psi)?;
        let b = self.psi.mul(&self.phi.shifted(self.f_degree()))?;
        let fa = self.f_identity(self.phi.row_degs())?;
        let fb = self.f_identity(self.psi.row_degs())?;
        Ok(a.entries() == fa.entries() && b.entries() == fb.entries())
    }

    /// No nonzero constant entries in either matrix.
    pub fn is_reduced(&self) -> bool {
        self.phi.is_minimal() && self.psi.is_minimal()
    }

    /// Strips trivial blocks `(1, f)` and `(f, 1)`.
    pub fn reduce(&self) -> Self {
        let mut phi = self.phi.clone();
        let mut psi = self.psi.clone();
        loop {
            if let Some((i, j)) = unit_position(&phi) {
                let (p, q) = (schur(&phi, i, j), drop_row_col(&psi, j, i));
                phi = p;
                psi = q;
            } else if let Some((i, j)) = unit_position(&psi) {
                let (q, p) = (schur(&psi, i, j), drop_row_col(&phi, j, i));
                phi = p;
                psi = q;
            } else {
                break;
            }
        }
        Self { ring: self.ring.clone(), ambient: self.ambient.clone(), phi, psi }
    }

    /// `coker(phi)` over `Q/(f)`, after stripping trivial blocks.
    pub fn coker_module(&self) -> Result<GradedModule> {
        let r = self.reduce();
        Ok(GradedModule::new(r.phi.over(&self.ring)?))
    }

    /// `(psi, phi)`, whose cokernel is the first syzygy of `coker(phi)`.
    pub fn shift(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            phi: self.psi.shifted(-self.f_degree()),
            psi: self.phi.clone(),
        }
    }

    /// `(phi^T, psi^T)`, whose cokernel is the dual of `coker(phi)`.
    pub fn transpose(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            phi: self.phi.transpose(),
            psi: self.psi.transpose().shifted(self.f_degree()),
        }
    }

    pub fn block_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::Precondition("factorizations of different equations".into()));
        }
        Ok(Self {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            phi: self.phi.block_diag(&other.phi),
            psi: self.psi.block_diag(&other.psi),
        })
    }
}

fn unit_position(m: &HMatrix) -> Option<(usize, usize)> {
    (0..m.nrows()).find_map(|i| {
        (0..m.ncols()).find(|&j| m.get(i, j).as_constant().is_some_and(|c| c != 0)).map(|j| (i, j))
    })
}

/// Eliminates the unit at `(i, j)`: the complement of row `i` and column `j`
/// after clearing them.
fn schur(m: &HMatrix, i: usize, j: usize) -> HMatrix {
    let ring = m.ring();
    let f = *ring.field();
    let c = f.inv_u(m.get(i, j).as_constant().unwrap()).expect("unit entry");
    let rows: Vec<usize> = (0..m.nrows()).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..m.ncols()).filter(|&s| s != j).collect();
    let entries = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&s| {
                    let corr = m.get(r, j).mul(&f, m.get(i, s)).scale(&f, c);
                    m.get(r, s).sub(&f, &corr)
                })
                .collect()
        })
        .collect();
    HMatrix::from_parts_unchecked(
        ring,
        rows.iter().map(|&r| m.row_degs()[r]).collect(),
        cols.iter().map(|&s| m.col_degs()[s]).collect(),
        entries,
    )
}

fn drop_row_col(m: &HMatrix, row: usize, col: usize) -> HMatrix {
    let rows: Vec<usize> = (0..m.nrows()).filter(|&r| r != row).collect();
    let cols: Vec<usize> = (0..m.ncols()).filter(|&s| s != col).collect();
    m.select_rows(&rows).select_cols(&cols)
}

/// The first square differential `d_{n+1}` of the minimal resolution that
/// completes to a factorization, with its index `n`. Its cokernel is
/// `Syz_n(M)`.
pub fn from_resolution_tail(m: &GradedModule, h: usize) -> Result<(usize, MatrixFactorization)> {
    let ring = m.ring().clone();
    hypersurface_degree(&ring)?;
    let res = resolve(m, h.max(1))?;
    if res.projective_dimension().is_some_and(|pd| pd == 0) {
        return Err(Error::Precondition("a free module has no factorization tail".into()));
    }
    for n in 0..res.length() {
        let d = res.differential(n + 1);
        if d.nrows() == 0 || d.nrows() != d.ncols() {
            continue;
        }
        let tmp = MatrixFactorization {
            ring: ring.clone(),
            ambient: ring.ambient(),
            phi: d.over(&ring.ambient())?,
            psi: HMatrix::zero(&ring, Vec::new(), Vec::new()),
        };
        let fi = tmp.f_identity(d.row_degs())?;
        if let Some(psi) = tmp.phi.solve(&fi)? {
            let mf = MatrixFactorization::new(&ring, tmp.phi.clone(), psi)?;
            if mf.validate()? {
                return Ok((n, mf));
            }
        }
    }
    Err(Error::unstable(format!("no square differential completed to a factorization within {h} steps")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{is_isomorphic, SearchBudget};
    use crate::resolution::syzygy;
    use crate::ring::QuotientRing;

    fn a2() -> Ring {
        QuotientRing::parse(7, &["x", "y"], &[3, 2], &["x^2+y^3"], 60).unwrap()
    }

    #[test]
    fn validation() {
        let a = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 24).unwrap();
        let mf = MatrixFactorization::from_strings(&a, vec![0], vec![1], &[&["x"]], &[&["x"]]).unwrap();
        assert!(mf.validate().unwrap());
        let k = mf.coker_module().unwrap();
        assert!(is_isomorphic(&k, &GradedModule::residue_field(&a), &SearchBudget::default()).unwrap());
        let bad = MatrixFactorization::from_strings(&a, vec![0], vec![1], &[&["x"]], &[&["2*x"]]).unwrap();
        assert!(!bad.validate().unwrap());
    }

    #[test]
    fn two_by_two_factorization_and_its_shift() {
        let a = a2();
        let mf = MatrixFactorization::from_strings(
            &a,
            vec![0, -1],
            vec![3, 2],
            &[&["x", "y"], &["-y^2", "x"]],
            &[&["x", "-y"], &["y^2", "x"]],
        )
        .unwrap();
        assert!(mf.validate().unwrap());
        assert!(mf.is_reduced());
        let s = mf.shift();
        assert!(s.validate().unwrap());
        let ss = s.shift();
        assert_eq!(ss.phi().entries(), mf.phi().entries());
        let b = SearchBudget::default();
        let m = mf.coker_module().unwrap();
        let syz = syzygy(&m, 1).unwrap();
        assert!(is_isomorphic(&syz, &s.coker_module().unwrap(), &b).unwrap());
        assert!(mf.transpose().validate().unwrap());
    }

    #[test]
    fn trivial_blocks_are_stripped() {
        let a = a2();
        let mf = MatrixFactorization::from_strings(
            &a,
            vec![0, -1],
            vec![3, 2],
            &[&["x", "y"], &["-y^2", "x"]],
            &[&["x", "-y"], &["y^2", "x"]],
        )
        .unwrap();
        let trivial =
            MatrixFactorization::from_strings(&a, vec![5], vec![5], &[&["1"]], &[&["x^2+y^3"]]).unwrap();
        let big = mf.block_sum(&trivial).unwrap();
        assert!(big.validate().unwrap());
        assert!(!big.is_reduced());
        let r = big.reduce();
        assert_eq!(r.size(), 2);
        assert!(r.validate().unwrap());
        let other =
            MatrixFactorization::from_strings(&a, vec![5], vec![11], &[&["x^2+y^3"]], &[&["1"]]).unwrap();
        assert_eq!(mf.block_sum(&other).unwrap().reduce().size(), 2);
    }

    #[test]
    fn tail_of_the_maximal_ideal() {
        let a = a2();
        let m = GradedModule::maximal_ideal(&a).unwrap();
        let (n, mf) = from_resolution_tail(&m, 3).unwrap();
        assert_eq!(n, 0);
        assert_eq!(mf.size(), 2);
        assert!(mf.validate().unwrap());
        let c = mf.coker_module().unwrap();
        assert!(is_isomorphic(&c, &m, &SearchBudget::default()).unwrap());
        let d = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 24).unwrap();
        let (_, mf) = from_resolution_tail(&GradedModule::residue_field(&d), 2).unwrap();
        assert_eq!(mf.phi().format_entries(), vec![vec!["x".to_string()]]);
        assert_eq!(mf.psi().format_entries(), vec![vec!["x".to_string()]]);
    }
}
