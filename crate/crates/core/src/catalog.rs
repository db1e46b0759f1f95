//! Shipped matrix factorizations for A_n singularities.
//!
//! Curves `x^2 + y^(n+1)` for `n <= 8` and surfaces `x^2 + y^2 + z^(n+1)` for
//! `n <= 4`. Each catalog lists one reduced factorization per non-free
//! indecomposable MCM module.

use crate::error::{Error, Result};
use crate::mf::MatrixFactorization;
use crate::module::GradedModule;
use crate::ring::{QuotientRing, Ring};

pub const MAX_CURVE_INDEX: usize = 8;
pub const MAX_SURFACE_INDEX: usize = 4;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub mf: MatrixFactorization,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub id: String,
    pub n: usize,
    pub dim: usize,
    pub ring: Ring,
    /// Conditions on the characteristic, in words.
    pub field_constraint: String,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Cokernels of the entries, named.
    pub fn modules(&self) -> Result<Vec<(String, GradedModule)>> {
        self.entries.iter().map(|e| Ok((e.name.clone(), e.mf.coker_module()?))).collect()
    }

    /// The free module `A` followed by the entry cokernels.
    pub fn vertices(&self) -> Result<Vec<(String, GradedModule)>> {
        let mut v = vec![("A".to_string(), GradedModule::free(&self.ring, vec![0]))];
        v.extend(self.modules()?);
        Ok(v)
    }
}

/// Parses `ade:A3:dim1`.
pub fn parse_catalog_id(id: &str) -> Result<(String, usize, usize)> {
    let parts: Vec<&str> = id.split(':').collect();
    let bad = || Error::Input(format!("catalog id '{id}' is not of the form ade:An:dimD"));
    if parts.len() != 3 || parts[0] != "ade" {
        return Err(bad());
    }
    let fam = &parts[1][..1];
    let n: usize = parts[1][1..].parse().map_err(|_| bad())?;
    let dim: usize = parts[2].strip_prefix("dim").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    Ok((fam.to_string(), n, dim))
}

fn needs_sqrt_minus_one(n: usize, dim: usize) -> bool {
    dim == 2 || n % 2 == 1
}

/// Checks the characteristic against the catalog's needs.
pub fn check_prime(n: usize, dim: usize, p: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::Input("characteristic 2 is not supported by the catalogs".into()));
    }
    if (n as u32 + 1) % p == 0 {
        return Err(Error::Input(format!("characteristic {p} divides {}", n + 1)));
    }
    if needs_sqrt_minus_one(n, dim) && p % 4 != 1 {
        return Err(Error::Input(format!("the catalog needs sqrt(-1), so p = 1 mod 4; got {p}")));
    }
    Ok(())
}

/// First of 7, 5, 13, 17 accepted by `check_prime`.
pub fn default_prime(n: usize, dim: usize) -> u32 {
    [7, 5, 13, 17].into_iter().find(|&p| check_prime(n, dim, p).is_ok()).unwrap()
}

fn constraint_text(n: usize, dim: usize) -> String {
    if needs_sqrt_minus_one(n, dim) {
        format!("p odd, p = 1 mod 4, p not dividing {}", n + 1)
    } else {
        format!("p odd, p not dividing {}", n + 1)
    }
}

/// Degree cap large enough for Hilbert-Samuel fits and short resolutions.
fn catalog_cap(delta: i32, max_w: i32) -> i32 {
    (3 * delta + 8 * max_w).min(crate::ring::MAX_DEGREE_CAP)
}

fn pow(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

pub fn ade_catalog(family: &str, n: usize, dim: usize, p: Option<u32>) -> Result<Catalog> {
    if family != "A" {
        return Err(Error::Unsupported(format!("family {family} is not shipped; only A is")));
    }
    let max = match dim {
        1 => MAX_CURVE_INDEX,
        2 => MAX_SURFACE_INDEX,
        _ => return Err(Error::Unsupported(format!("dimension {dim} catalogs are not shipped"))),
    };
    if n == 0 || n > max {
        return Err(Error::Unsupported(format!("A_{n} in dimension {dim} is not shipped")));
    }
    let p = p.unwrap_or_else(|| default_prime(n, dim));
    check_prime(n, dim, p)?;
    let e = n + 1;
    // x (and y on surfaces) get weight wx, the last variable weight wt
    let (wx, wt) = if e % 2 == 0 { (e as u32 / 2, 1u32) } else { (e as u32, 2u32) };
    let delta = 2 * wx as i32;
    let i = crate::linalg::PrimeField::new(p)
        .and_then(|f| f.sqrt(p - 1))
        .filter(|_| needs_sqrt_minus_one(n, dim));
    let (vars, weights, f, u, v, t): (Vec<&str>, Vec<u32>, String, String, String, &str) = if dim == 1
    {
        (vec!["x", "y"], vec![wx, wt], format!("x^2+{}", pow("y", e)), "x".into(), "x".into(), "y")
    } else {
        let i = i.unwrap();
        (
            vec!["x", "y", "z"],
            vec![wx, wx, wt],
            format!("x^2+y^2+{}", pow("z", e)),
            format!("x+{i}*y"),
            format!("x-{i}*y"),
            "z",
        )
    };
    let cap = catalog_cap(delta, wx as i32);
    let ring = QuotientRing::parse(p, &vars, &weights, &[f.as_str()], cap)?;
    let (wx, wt) = (wx as i32, wt as i32);
    let mut entries = Vec::new();
    let two_by_two = if dim == 1 { n / 2 } else { n };
    for j in 1..=two_by_two {
        let (tj, tk) = (pow(t, j), pow(t, e - j));
        let phi = [[u.clone(), tj.clone()], [format!("-{tk}"), v.clone()]];
        let psi = [[v.clone(), format!("-{tj}")], [tk.clone(), u.clone()]];
        let rows = vec![0, j as i32 * wt - wx];
        let cols = vec![wx, j as i32 * wt];
        let mf = MatrixFactorization::from_strings(
            &ring,
            rows,
            cols,
            &[&[&phi[0][0], &phi[0][1]], &[&phi[1][0], &phi[1][1]]],
            &[&[&psi[0][0], &psi[0][1]], &[&psi[1][0], &psi[1][1]]],
        )?;
        entries.push(CatalogEntry { name: format!("M{j}"), mf });
    }
    if dim == 1 && n % 2 == 1 {
        let i = i.unwrap();
        let m = e / 2;
        let ym = pow("y", m);
        for (name, s, o) in [("N+", i, p - i), ("N-", p - i, i)] {
            let mf = MatrixFactorization::from_strings(
                &ring,
                vec![0],
                vec![wx],
                &[&[&format!("x+{s}*{ym}")]],
                &[&[&format!("x+{o}*{ym}")]],
            )?;
            entries.push(CatalogEntry { name: name.to_string(), mf });
        }
    }
    Ok(Catalog {
        id: format!("ade:A{n}:dim{dim}"),
        n,
        dim,
        ring,
        field_constraint: constraint_text(n, dim),
        entries,
    })
}

/// Loads a catalog from its id, optionally forcing the characteristic.
pub fn load_catalog(id: &str, p: Option<u32>) -> Result<Catalog> {
    let (fam, n, dim) = parse_catalog_id(id)?;
    ade_catalog(&fam, n, dim, p)
}

/// Every shipped catalog id.
pub fn shipped_ids() -> Vec<String> {
    let mut v: Vec<String> = (1..=MAX_CURVE_INDEX).map(|n| format!("ade:A{n}:dim1")).collect();
    v.extend((1..=MAX_SURFACE_INDEX).map(|n| format!("ade:A{n}:dim2")));
    v
}
