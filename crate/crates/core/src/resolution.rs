//! Minimal graded free resolutions, syzygies, Ext into the ring, periodicity
//! and Betti growth.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::iso::{is_isomorphic, SearchBudget};
use crate::module::{ring_dim_multiplicity, GradedModule};

/// Default homological bound.
pub const DEFAULT_HOM_BOUND: usize = 12;

/// A window `F_H -> ... -> F_1 -> F_0 -> M` of the minimal resolution.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    module: GradedModule,
    degs: Vec<Vec<i32>>,
    /// `maps[i]` is `d_{i+1}: F_{i+1} -> F_i`.
    maps: Vec<HMatrix>,
}

impl FreeResolution {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    /// Homological bound `H`.
    pub fn length(&self) -> usize {
        self.degs.len() - 1
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degs.iter().map(Vec::len).collect()
    }

    pub fn generator_degrees(&self, i: usize) -> &[i32] {
        &self.degs[i]
    }

    /// The differential `d_i: F_i -> F_{i-1}` for `1 <= i <= H`.
    pub fn differential(&self, i: usize) -> &HMatrix {
        assert!(i >= 1 && i <= self.length(), "differential index out of window");
        &self.maps[i - 1]
    }

    /// Whether consecutive differentials compose to zero.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(HMatrix::is_minimal)
    }

    /// Projective dimension, if the resolution stops inside the window.
    pub fn projective_dimension(&self) -> Option<usize> {
        let b = self.betti();
        if b[0] == 0 {
            return Some(0);
        }
        b.iter().position(|&x| x == 0).map(|i| i - 1)
    }

    /// `Syz_n(M) = coker(d_{n+1})` on the generators of `F_n`.
    pub fn syzygy(&self, n: usize) -> Result<GradedModule> {
        if n == 0 {
            return Ok(self.module.clone());
        }
        if n + 1 > self.length() {
            return Err(Error::Precondition(format!(
                "syzygy {n} needs a resolution window of length {}",
                n + 1
            )));
        }
        Ok(GradedModule::new(self.maps[n].clone()))
    }

    /// `Ext^n(M, A)` as a graded module, from the dual complex
    /// `F_{n-1}^* -> F_n^* -> F_{n+1}^*`.
    pub fn ext_to_ring(&self, n: usize) -> Result<GradedModule> {
        if n + 1 > self.length() {
            return Err(Error::Precondition(format!("Ext^{n} needs a window of length {}", n + 1)));
        }
        let ring = self.module.ring();
        let next = self.maps[n].transpose();
        let k = next.kernel()?;
        let syz = k.kernel()?;
        let rels = if n == 0 {
            syz
        } else {
            let prev = self.maps[n - 1].transpose();
            let y = k.solve(&prev)?.ok_or_else(|| {
                Error::unstable("image of the dual differential escaped its kernel".to_string())
            })?;
            y.hconcat(&syz)?
        };
        debug_assert!(rels.ring() == ring);
        Ok(GradedModule::new(rels).minimal_presentation())
    }

    /// Whether `Ext^n(M, A)` vanishes, without building the module.
    pub fn ext_to_ring_vanishes(&self, n: usize) -> Result<bool> {
        if n == 0 || n + 1 > self.length() {
            return Err(Error::Precondition(format!("vanishing test for Ext^{n} out of window")));
        }
        let k = self.maps[n].transpose().kernel()?;
        if k.ncols() == 0 {
            return Ok(true);
        }
        Ok(self.maps[n - 1].transpose().solve(&k)?.is_some())
    }

    /// CSV rows `i,beta_i,degrees` with a header.
    pub fn betti_csv(&self) -> String {
        let mut out = String::from("i,beta,degrees\n");
        for (i, d) in self.degs.iter().enumerate() {
            let ds: Vec<String> = d.iter().map(i32::to_string).collect();
            out.push_str(&format!("{i},{},{}\n", d.len(), ds.join(" ")));
        }
        out
    }
}

/// Minimal resolution of `m` up to homological degree `h`.
pub fn resolve(m: &GradedModule, h: usize) -> Result<FreeResolution> {
    let module = m.minimal_presentation();
    let mut degs = vec![module.gen_degs().to_vec()];
    let mut maps = Vec::with_capacity(h);
    if h >= 1 {
        degs.push(module.rel_degs().to_vec());
        maps.push(module.pres().clone());
    }
    for _ in 2..=h {
        let prev = maps.last().unwrap();
        let next = if prev.ncols() == 0 {
            HMatrix::zero(module.ring(), Vec::new(), Vec::new())
        } else {
            prev.kernel()?
        };
        degs.push(next.col_degs().to_vec());
        maps.push(next);
    }
    Ok(FreeResolution { module, degs, maps })
}

/// `Syz_n(M)`.
pub fn syzygy(m: &GradedModule, n: usize) -> Result<GradedModule> {
    resolve(m, n + 1)?.syzygy(n)
}

/// Whether `Ext^i(M, A) = 0` for `1 <= i <= dim A`.
pub fn mcm_test(m: &GradedModule) -> Result<bool> {
    let (d, _) = ring_dim_multiplicity(m.ring())?;
    if d == 0 {
        return Ok(true);
    }
    let res = resolve(m, d + 1)?;
    for i in 1..=d {
        if !res.ext_to_ring_vanishes(i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `(n0, p)`, ordered by `p` and then `n0`, with
/// `Syz_{n0+p}(M) = Syz_{n0}(M)` up to shift. `None` means nothing was found
/// inside the bounds.
pub fn detect_period(
    m: &GradedModule,
    p_max: usize,
    n_max: usize,
    budget: &SearchBudget,
) -> Result<Option<(usize, usize)>> {
    let res = resolve(m, n_max + p_max + 1)?;
    let betti = res.betti();
    let syz: Vec<GradedModule> =
        (0..=n_max + p_max).map(|n| res.syzygy(n)).collect::<Result<_>>()?;
    for p in 1..=p_max {
        for n0 in 0..=n_max {
            if syz[n0].num_gens() == 0 || betti[n0] != betti[n0 + p] {
                continue;
            }
            if is_isomorphic(&syz[n0], &syz[n0 + p], budget)? {
                return Ok(Some((n0, p)));
            }
        }
    }
    Ok(None)
}

/// Growth statistics of a Betti sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BettiGrowth {
    pub betti: Vec<usize>,
    pub projective_dimension: Option<usize>,
    /// Complexity; `None` when no polynomial fits inside the window.
    pub cx_estimate: Option<usize>,
    pub cx_confident: bool,
    pub curv_estimate: f64,
    pub curv_confident: bool,
    /// Number of tail terms used for the curvature statistic.
    pub curv_window: usize,
}

/// Degree of the lowest polynomial matching the tail of `s`, with a
/// confidence flag: `Some((d, confident))`.
fn polynomial_degree(s: &[i64]) -> Option<(usize, bool)> {
    let mut diff = s.to_vec();
    for d in 0.. {
        let next: Vec<i64> = diff.windows(2).map(|w| w[1] - w[0]).collect();
        if next.len() < 2 {
            return None;
        }
        let k = next.len().min(3);
        if next[next.len() - k..].iter().all(|&x| x == 0) {
            return Some((d, next.len() >= 3));
        }
        diff = next;
    }
    None
}

/// Complexity from polynomial fits of the even and odd Betti subsequences,
/// and curvature as the maximum of `beta_n^(1/n)` over the last third.
pub fn betti_growth(betti: &[usize]) -> BettiGrowth {
    let h = betti.len().saturating_sub(1);
    let pd = if betti.first() == Some(&0) {
        Some(0)
    } else {
        betti.iter().position(|&x| x == 0).map(|i| i - 1)
    };
    let w = h.div_ceil(3).max(1);
    if pd.is_some() {
        return BettiGrowth {
            betti: betti.to_vec(),
            projective_dimension: pd,
            cx_estimate: Some(0),
            cx_confident: true,
            curv_estimate: 0.0,
            curv_confident: true,
            curv_window: w,
        };
    }
    let tail: Vec<i64> = betti.iter().skip(1).map(|&b| b as i64).collect();
    let even: Vec<i64> = tail.iter().step_by(2).copied().collect();
    let odd: Vec<i64> = tail.iter().skip(1).step_by(2).copied().collect();
    let fit = match (polynomial_degree(&even), polynomial_degree(&odd)) {
        (Some((a, ca)), Some((b, cb))) => Some((a.max(b) + 1, ca && cb)),
        _ => None,
    };
    let raw = betti
        .iter()
        .enumerate()
        .skip(1)
        .skip(h.saturating_sub(w))
        .map(|(n, &b)| (b as f64).powf(1.0 / n as f64))
        .fold(0.0f64, f64::max);
    match fit {
        Some((cx, conf)) => BettiGrowth {
            betti: betti.to_vec(),
            projective_dimension: None,
            cx_estimate: Some(cx),
            cx_confident: conf,
            curv_estimate: 1.0,
            curv_confident: conf,
            curv_window: w,
        },
        None => BettiGrowth {
            betti: betti.to_vec(),
            projective_dimension: None,
            cx_estimate: None,
            cx_confident: false,
            curv_estimate: raw,
            curv_confident: h >= 6,
            curv_window: w,
        },
    }
}

/// Growth of `M` next to that of the residue field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub module: BettiGrowth,
    pub residue_field: BettiGrowth,
    pub extremal_cx: bool,
    pub extremal_curv: bool,
}

fn tail_ratio(b: &[usize]) -> Option<f64> {
    let n = b.len();
    (n >= 2 && b[n - 2] > 0).then(|| b[n - 1] as f64 / b[n - 2] as f64)
}

pub fn growth_report(m: &GradedModule, h: usize) -> Result<GrowthReport> {
    let gm = betti_growth(&resolve(m, h)?.betti());
    let k = GradedModule::residue_field(m.ring());
    let gk = betti_growth(&resolve(&k, h)?.betti());
    let extremal_cx = gm.projective_dimension.is_none() && gm.cx_estimate == gk.cx_estimate;
    // curvature is compared through the last growth ratios, which converge
    // faster than the n-th roots
    let extremal_curv = gk.curv_estimate > 1.0
        && gm.cx_estimate.is_none()
        && gk.cx_estimate.is_none()
        && match (tail_ratio(&gm.betti), tail_ratio(&gk.betti)) {
            (Some(a), Some(b)) => (a - b).abs() <= 0.05 * b,
            _ => false,
        };
    Ok(GrowthReport { module: gm, residue_field: gk, extremal_cx, extremal_curv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn residue_field_over_dual_numbers() {
        let a = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 24).unwrap();
        let res = resolve(&GradedModule::residue_field(&a), 8).unwrap();
        assert_eq!(res.betti(), vec![1; 9]);
        assert!(res.is_complex().unwrap());
        assert!(res.is_minimal());
        assert_eq!(res.generator_degrees(5), &[5]);
    }

    #[test]
    fn residue_field_over_codim_two_ci() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 24).unwrap();
        let res = resolve(&GradedModule::residue_field(&a), 6).unwrap();
        assert_eq!(res.betti(), (1..=7).collect::<Vec<_>>());
        assert!(res.is_complex().unwrap());
    }

    #[test]
    fn free_module_and_first_syzygy_of_k() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2+y^2"], 24).unwrap();
        let fa = GradedModule::free(&a, vec![0]);
        assert_eq!(resolve(&fa, 3).unwrap().betti(), vec![1, 0, 0, 0]);
        assert!(syzygy(&fa, 1).unwrap().is_zero());
        let s = syzygy(&GradedModule::residue_field(&a), 1).unwrap();
        let m = GradedModule::maximal_ideal(&a).unwrap();
        assert!(is_isomorphic(&s, &m, &SearchBudget::default()).unwrap());
    }

    #[test]
    fn mcm_test_on_a_curve() {
        let a = QuotientRing::parse(7, &["x", "y"], &[3, 2], &["x^2+y^3"], 40).unwrap();
        assert!(mcm_test(&GradedModule::free(&a, vec![0])).unwrap());
        assert!(!mcm_test(&GradedModule::residue_field(&a)).unwrap());
        assert!(mcm_test(&GradedModule::maximal_ideal(&a).unwrap()).unwrap());
    }

    #[test]
    fn ext_of_residue_field_over_a_curve() {
        let a = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x*y"], 24).unwrap();
        let res = resolve(&GradedModule::residue_field(&a), 3).unwrap();
        let e1 = res.ext_to_ring(1).unwrap();
        assert_eq!(e1.num_gens(), 1);
        assert_eq!(e1.invariants().unwrap().length, Some(1));
        assert!(res.ext_to_ring(0).unwrap().is_zero());
    }

    #[test]
    fn periods() {
        let a = QuotientRing::parse(7, &["x"], &[1], &["x^2"], 24).unwrap();
        let b = SearchBudget::default();
        let k = GradedModule::residue_field(&a);
        assert_eq!(detect_period(&k, 2, 1, &b).unwrap(), Some((0, 1)));
        let c = QuotientRing::parse(7, &["x", "y"], &[1, 1], &["x^2", "y^2"], 24).unwrap();
        let kc = GradedModule::residue_field(&c);
        assert_eq!(detect_period(&kc, 2, 1, &b).unwrap(), None);
    }

    #[test]
    fn growth_fits() {
        let lin: Vec<usize> = (1..=13).collect();
        let g = betti_growth(&lin);
        assert_eq!(g.cx_estimate, Some(2));
        assert!(g.cx_confident);
        let constant = betti_growth(&[1; 13]);
        assert_eq!((constant.cx_estimate, constant.curv_estimate), (Some(1), 1.0));
        let fib = betti_growth(&[1, 3, 8, 21, 55, 144, 377, 987]);
        assert_eq!(fib.cx_estimate, None);
        assert!(fib.curv_estimate > 1.0);
        let finite = betti_growth(&[1, 2, 1, 0, 0]);
        assert_eq!(finite.projective_dimension, Some(2));
        assert_eq!(finite.cx_estimate, Some(0));
    }

    #[test]
    fn non_ci_gorenstein_artinian_has_exponential_growth() {
        let a = QuotientRing::parse(
            7,
            &["x", "y", "z"],
            &[1, 1, 1],
            &["x^2-y^2", "x^2-z^2", "x*y", "x*z", "y*z"],
            24,
        )
        .unwrap();
        let k = GradedModule::residue_field(&a);
        let r = growth_report(&k, 6).unwrap();
        assert_eq!(r.module.betti, vec![1, 3, 8, 21, 55, 144, 377]);
        assert!(r.module.curv_estimate > 1.0);
        assert!(r.extremal_curv);
    }
}
