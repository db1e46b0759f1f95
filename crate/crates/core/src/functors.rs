//! Stable-category operators: dual, transpose, linkage, cosyzygy, MCM
//! approximation, and lifting maps to syzygies.

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::hom::HomSpace;
use crate::module::{ring_dim_multiplicity, GradedModule};
use crate::resolution::{mcm_test, resolve};

/// `Hom(M, A)` without checking that `M` is MCM.
pub fn dual_unchecked(m: &GradedModule) -> Result<GradedModule> {
    let m = m.minimal_presentation();
    if m.num_gens() == 0 {
        return Ok(m);
    }
    let k = m.pres().transpose().kernel()?;
    Ok(GradedModule::new(k.kernel()?).minimal_presentation())
}

/// `M* = Hom(M, A)`; refuses modules that are not MCM.
pub fn dual(m: &GradedModule) -> Result<GradedModule> {
    if !mcm_test(m)? {
        return Err(Error::Precondition("dual is only taken of MCM modules".into()));
    }
    dual_unchecked(m)
}

/// `Tr M = coker(P^T)` for the minimal presentation `P`. Free summands of
/// `M` give zero rows of `P` and so do not contribute.
pub fn transpose(m: &GradedModule) -> Result<GradedModule> {
    let m = m.minimal_presentation();
    Ok(GradedModule::new(m.pres().transpose()).minimal_presentation())
}

/// Horizontal linkage `lambda(M) = Syz_1(Tr M)`.
pub fn link(m: &GradedModule) -> Result<GradedModule> {
    let t = transpose(m)?;
    resolve(&t, 2)?.syzygy(1)
}

/// `Syz_{-n}(M) = D Syz_n D (M)` for MCM `M`.
pub fn cosyzygy(m: &GradedModule, n: usize) -> Result<GradedModule> {
    let d = dual_unchecked(m)?;
    let s = resolve(&d, n + 1)?.syzygy(n)?;
    dual_unchecked(&s)
}

/// `Syz_n` for `n >= 0` and `Syz_{-n}` for negative indices.
pub fn syzygy_signed(m: &GradedModule, n: i32) -> Result<GradedModule> {
    if n >= 0 {
        resolve(m, n as usize + 1)?.syzygy(n as usize)
    } else {
        cosyzygy(m, (-n) as usize)
    }
}

/// AR translate `tau(M) = Syz_{2-d}(M)` over a Gorenstein ring of dimension `d`.
pub fn tau(m: &GradedModule) -> Result<GradedModule> {
    let (d, _) = ring_dim_multiplicity(m.ring())?;
    syzygy_signed(m, 2 - d as i32)
}

/// MCM approximation, up to free summands: `Syz_{-d} Syz_d (M)`.
///
/// MCM input is returned unchanged.
pub fn mcm_approx(m: &GradedModule) -> Result<GradedModule> {
    if mcm_test(m)? {
        return Ok(m.minimal_presentation());
    }
    let (d, _) = ring_dim_multiplicity(m.ring())?;
    let s = resolve(m, d + 1)?.syzygy(d)?;
    cosyzygy(&s, d)
}

/// MCM approximation of a Cohen-Macaulay module of codimension `c` through
/// `M^v = Ext^c(M, A)`: the dual of `Syz_c(M^v)`.
pub fn mcm_approx_ext(m: &GradedModule) -> Result<GradedModule> {
    let (d, _) = ring_dim_multiplicity(m.ring())?;
    let inv = m.invariants()?;
    let c = d.checked_sub(inv.dim).ok_or_else(|| {
        Error::unstable(format!("module dimension {} exceeds ring dimension {d}", inv.dim))
    })?;
    if c == 0 {
        return Ok(m.minimal_presentation());
    }
    let res = resolve(m, d + 1)?;
    for i in 1..=d {
        if i != c && !res.ext_to_ring_vanishes(i)? {
            return Err(Error::Precondition(format!(
                "Ext^{i}(M, A) is nonzero, so M is not Cohen-Macaulay of codimension {c}"
            )));
        }
    }
    let vee = res.ext_to_ring(c)?;
    let s = resolve(&vee, c + 1)?.syzygy(c)?;
    dual_unchecked(&s)
}

/// A lift `f_1: Syz_1(M) -> Syz_1(N)` of `f: M -> N`.
#[derive(Clone, Debug)]
pub struct Lift {
    /// Maps `Syz_1(M) -> Syz_1(N)`.
    pub hom: HomSpace,
    pub coords: Vec<u32>,
    /// The matrix `Y` with `d_1^N Y = X d_1^M`.
    pub matrix: HMatrix,
}

/// Lifts `f` in `h = Hom(M, N)` through the first differentials. `M` and
/// `N` must be minimally presented.
pub fn lift_map(h: &HomSpace, f: &[u32]) -> Result<Lift> {
    let (m, n) = (h.source(), h.target());
    if !m.is_minimal() || !n.is_minimal() {
        return Err(Error::Precondition("lifting needs minimal presentations".into()));
    }
    let x = h.to_matrix(f);
    let rhs = x.mul(m.pres())?;
    let y = n
        .pres()
        .solve(&rhs)?
        .ok_or_else(|| Error::Precondition("the matrix does not define a module map".into()))?;
    let rm = resolve(m, 2)?;
    let rn = resolve(n, 2)?;
    let hom = HomSpace::compute(&rm.syzygy(1)?, &rn.syzygy(1)?)?;
    let coords = hom.matrix_coords(&y);
    if !hom.contains(&coords) {
        return Err(Error::unstable("lifted matrix is not a map of syzygies".to_string()));
    }
    Ok(Lift { hom, coords, matrix: y })
}

/// `dim Hom(M, N) / beta(M, N)`.
pub fn stable_hom_dim(m: &GradedModule, n: &GradedModule) -> Result<usize> {
    HomSpace::compute(m, n)?.stable_dim()
}
