//! Degree-0 homomorphism spaces between finitely presented graded modules.
//!
//! A map `M -> N` is stored as the images of the generators of `M`, each a
//! vector of coordinates in the piece `N_{a_j}`. This representation is
//! canonical, so maps are equal exactly when their coordinate vectors are.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::linalg::{kernel_basis, DenseMatrix, EchelonBasis, PrimeField};
use crate::module::{free_mul, GradedModule, ModPiece, PieceCache};

#[derive(Clone)]
pub struct HomSpace {
    src: GradedModule,
    tgt: GradedModule,
    blocks: Vec<(usize, Arc<ModPiece>)>,
    total: usize,
    basis: Vec<Vec<u32>>,
    echelon: EchelonBasis<PrimeField>,
}

impl std::fmt::Debug for HomSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HomSpace(dim {})", self.basis.len())
    }
}

/// Solutions of `sum_j pres_M[j,k] * u_j = 0` with `u_j` in the degree-`a_j`
/// piece of `coker(target)`.
fn solve_maps(
    m: &GradedModule,
    target: &GradedModule,
) -> Result<(Vec<(usize, Arc<ModPiece>)>, usize, Vec<Vec<u32>>)> {
    let ring = m.ring();
    let mut cache = PieceCache::new(target);
    let mut blocks = Vec::with_capacity(m.num_gens());
    let mut total = 0;
    for &a in m.gen_degs() {
        let p = cache.get(a)?;
        blocks.push((total, p.clone()));
        total += p.dim();
    }
    let mut rel_pieces = Vec::with_capacity(m.num_rels());
    let mut rows = 0;
    for &b in m.rel_degs() {
        let p = cache.get(b)?;
        rel_pieces.push((rows, p.clone()));
        rows += p.dim();
    }
    if total == 0 {
        return Ok((blocks, 0, Vec::new()));
    }
    let mut sys = DenseMatrix::filled(rows, total, 0u32);
    let pres = m.pres();
    for (j, (off, piece)) in blocks.iter().enumerate() {
        for q in 0..piece.dim() {
            let mut e = vec![0u32; piece.dim()];
            e[q] = 1;
            let lifted = piece.lift(&e);
            for (k, (roff, rp)) in rel_pieces.iter().enumerate() {
                let entry = pres.get(j, k);
                if entry.is_zero() || rp.dim() == 0 {
                    continue;
                }
                let mut out = vec![0u32; rp.free.total];
                free_mul(ring, &piece.free, &lifted, entry, &rp.free, &mut out);
                let c = rp.coords(&out);
                for (r, v) in c.into_iter().enumerate() {
                    if v != 0 {
                        let old = *sys.get(roff + r, off + q);
                        sys.set(roff + r, off + q, ring.field().add_u(old, v));
                    }
                }
            }
        }
    }
    let kb = kernel_basis(ring.field(), &sys);
    Ok((blocks, total, kb.columns()))
}

impl HomSpace {
    /// All degree-0 maps `m -> n`.
    pub fn compute(m: &GradedModule, n: &GradedModule) -> Result<Self> {
        if m.ring() != n.ring() {
            return Err(Error::Precondition("modules over different rings".into()));
        }
        let (blocks, total, basis) = solve_maps(m, n)?;
        let mut echelon = EchelonBasis::tracked(*m.ring().field(), total);
        for b in &basis {
            echelon.insert(b);
        }
        Ok(Self { src: m.clone(), tgt: n.clone(), blocks, total, basis, echelon })
    }

    /// Maps raising degrees by `j`, i.e. degree-0 maps `m -> n(j)`.
    pub fn compute_degree(m: &GradedModule, n: &GradedModule, j: i32) -> Result<Self> {
        Self::compute(m, &n.shifted(-j))
    }

    pub fn source(&self) -> &GradedModule {
        &self.src
    }

    pub fn target(&self) -> &GradedModule {
        &self.tgt
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Length of coordinate vectors.
    pub fn ambient_len(&self) -> usize {
        self.total
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Combination of basis maps with the given coefficients.
    pub fn combine(&self, coeffs: &[u32]) -> Vec<u32> {
        let f = self.src.ring().field();
        let mut v = vec![0u32; self.total];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.add_u(*x, f.mul_u(*c, *y));
            }
        }
        v
    }

    /// Coefficients of a map in terms of `basis()`.
    pub fn basis_coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.echelon.coordinates(v)
    }

    /// The map as a matrix from the generators of the source to the free
    /// cover of the target.
    pub fn to_matrix(&self, v: &[u32]) -> HMatrix {
        let ring = self.src.ring();
        let mut entries = vec![Vec::with_capacity(self.src.num_gens()); self.tgt.num_gens()];
        for (off, piece) in &self.blocks {
            let lifted = piece.lift(&v[*off..*off + piece.dim()]);
            let col = HMatrix::vector_to_column(ring, &lifted, &piece.free);
            for (i, e) in col.into_iter().enumerate() {
                entries[i].push(e);
            }
        }
        HMatrix::from_parts_unchecked(
            ring,
            self.tgt.gen_degs().to_vec(),
            self.src.gen_degs().to_vec(),
            entries,
        )
    }

    /// Canonical coordinates of a map given by a matrix on free covers.
    pub fn matrix_coords(&self, x: &HMatrix) -> Vec<u32> {
        assert_eq!(x.row_degs(), self.tgt.gen_degs(), "target generators differ");
        assert_eq!(x.col_degs(), self.src.gen_degs(), "source generators differ");
        let mut v = Vec::with_capacity(self.total);
        for (j, (_, piece)) in self.blocks.iter().enumerate() {
            v.extend(piece.coords(&x.column_vector(j, &piece.free)));
        }
        v
    }

    /// Scalar block between generators of equal degree.
    pub fn constant_part(&self, v: &[u32]) -> DenseMatrix<u32> {
        self.to_matrix(v).constant_part()
    }

    /// Whether the coordinates describe a well-defined map.
    pub fn contains(&self, v: &[u32]) -> bool {
        self.echelon.contains(v)
    }

    /// Basis of the maps that factor through a free module.
    ///
    /// Every such map factors through the free cover of the target, so these
    /// are the images of maps from the source into that cover.
    pub fn beta_subspace(&self) -> Result<Vec<Vec<u32>>> {
        let cover = GradedModule::free(self.src.ring(), self.tgt.gen_degs().to_vec());
        let (cblocks, _, sols) = solve_maps(&self.src, &cover)?;
        let mut span = EchelonBasis::new(*self.src.ring().field(), self.total);
        let mut out = Vec::new();
        for s in sols {
            let mut v = Vec::with_capacity(self.total);
            for ((coff, cpiece), (_, piece)) in cblocks.iter().zip(&self.blocks) {
                v.extend(piece.coords(&s[*coff..*coff + cpiece.dim()]));
            }
            if span.insert(&v) {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// `dim Hom - dim beta`.
    pub fn stable_dim(&self) -> Result<usize> {
        Ok(self.dim() - self.beta_subspace()?.len())
    }
}

/// Composite `g . f` of `f: M -> N` and `g: N -> L`, in the coordinates of `hml`.
pub fn compose(
    hmn: &HomSpace,
    f: &[u32],
    hnl: &HomSpace,
    g: &[u32],
    hml: &HomSpace,
) -> Result<Vec<u32>> {
    let xf = hmn.to_matrix(f);
    let xg = hnl.to_matrix(g);
    Ok(hml.matrix_coords(&xg.mul(&xf)?))
}
