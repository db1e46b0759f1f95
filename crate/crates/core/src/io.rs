//! JSON formats for rings, modules and matrix factorizations.
//!
//! A ring:
//! ```json
//! { "char": 7, "vars": ["x", "y"], "weights": [3, 2],
//!   "relations": ["x^2 + y^3"], "degree_cap": 40 }
//! ```
//! A module carries its ring (inline, or a path to a ring file) and exactly
//! one of `presentation` (columns are relations; `gen_degs` and `rel_degs`
//! are inferred from the entries when omitted), `cyclic`, or `named`
//! (`residue_field`, `maximal_ideal`, `free`). Instead of a ring it may name
//! a catalog entry: `{ "catalog": "ade:A3:dim1", "entry": "M1" }`.
//! A matrix factorization carries `ring`, optionally `f` (then the ring is
//! read as the ambient ring), `phi`, `psi` and optional `row_degs` and
//! `col_degs` for `phi`, or names a catalog entry the same way.

use std::collections::VecDeque;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{load_catalog, Catalog};
use crate::error::{Error, Result};
use crate::hmatrix::HMatrix;
use crate::mf::MatrixFactorization;
use crate::module::GradedModule;
use crate::poly::Poly;
use crate::ring::{QuotientRing, Ring, DEFAULT_DEGREE_CAP};

/// Command-line overrides applied while loading.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub modulus: Option<u32>,
    pub degree_cap: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(rename = "char", alias = "characteristic")]
    pub characteristic: u32,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<i32>,
}

/// A ring given inline or as a path to a ring file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Inline(RingSpec),
    Path(String),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<String>,
    #[serde(default, alias = "gen_degrees", skip_serializing_if = "Option::is_none")]
    pub gen_degs: Option<Vec<i32>>,
    #[serde(default, alias = "rel_degrees", skip_serializing_if = "Option::is_none")]
    pub rel_degs: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub named: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<String>,
    #[serde(default, alias = "row_degrees", skip_serializing_if = "Option::is_none")]
    pub row_degs: Option<Vec<i32>>,
    #[serde(default, alias = "col_degrees", skip_serializing_if = "Option::is_none")]
    pub col_degs: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<String>>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn build_ring(spec: &RingSpec, ov: Overrides) -> Result<Ring> {
    let p = ov.modulus.unwrap_or(spec.characteristic);
    let cap = ov.degree_cap.or(spec.degree_cap).unwrap_or(DEFAULT_DEGREE_CAP);
    let weights = spec.weights.clone().unwrap_or_else(|| vec![1; spec.vars.len()]);
    let vars: Vec<&str> = spec.vars.iter().map(String::as_str).collect();
    let rels: Vec<&str> = spec.relations.iter().map(String::as_str).collect();
    QuotientRing::parse(p, &vars, &weights, &rels, cap)
}

pub fn ring_spec(ring: &Ring) -> RingSpec {
    RingSpec {
        characteristic: ring.characteristic(),
        vars: ring.vars().to_vec(),
        weights: Some(ring.weights().to_vec()),
        relations: ring.relations().iter().map(|r| ring.format(r)).collect(),
        degree_cap: Some(ring.degree_cap()),
    }
}

pub fn parse_ring(text: &str, ov: Overrides) -> Result<Ring> {
    build_ring(&parse_json(text)?, ov)
}

fn catalog_with_cap(id: &str, ov: Overrides) -> Result<Catalog> {
    let mut c = load_catalog(id, ov.modulus)?;
    if let Some(cap) = ov.degree_cap {
        let ring = c.ring.with_degree_cap(cap)?;
        for e in &mut c.entries {
            e.mf = MatrixFactorization::new(&ring, e.mf.phi().clone(), e.mf.psi().clone())?;
        }
        c.ring = ring;
    }
    Ok(c)
}

fn catalog_entry(id: &str, entry: &str, ov: Overrides) -> Result<(Catalog, usize)> {
    let c = catalog_with_cap(id, ov)?;
    let i = c
        .entries
        .iter()
        .position(|e| e.name == entry)
        .ok_or_else(|| Error::Input(format!("catalog {id} has no entry '{entry}'")))?;
    Ok((c, i))
}

/// Loads a catalog, applying the degree-cap override.
pub fn load_catalog_with(id: &str, ov: Overrides) -> Result<Catalog> {
    catalog_with_cap(id, ov)
}

fn resolve_ring(r: &RingRef, base: Option<&Path>, ov: Overrides) -> Result<Ring> {
    match r {
        RingRef::Inline(spec) => build_ring(spec, ov),
        RingRef::Path(p) => {
            let path = match base {
                Some(dir) => dir.join(p),
                None => PathBuf::from(p),
            };
            parse_ring(&read_file(&path)?, ov)
        }
    }
}

fn parse_entries(ring: &Ring, e: &[Vec<String>]) -> Result<Vec<Vec<Poly>>> {
    e.iter()
        .map(|row| row.iter().map(|s| ring.parse_element(s)).collect())
        .collect()
}

/// Row and column degrees making every nonzero entry homogeneous of degree
/// `col - row`. Each connected block is anchored with its first row at 0.
pub fn infer_degrees(ring: &Ring, entries: &[Vec<Poly>], ncols: usize) -> Result<(Vec<i32>, Vec<i32>)> {
    let nrows = entries.len();
    let mut deg = vec![vec![None; ncols]; nrows];
    for (i, row) in entries.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Input("ragged matrix".into()));
        }
        for (j, p) in row.iter().enumerate() {
            if !p.is_zero() {
                let d = ring
                    .degree_of(p)
                    .ok_or_else(|| Error::Input(format!("entry ({i},{j}) is not homogeneous")))?;
                deg[i][j] = Some(d);
            }
        }
    }
    // node k < nrows is a row, otherwise column k - nrows
    let mut val: Vec<Option<i32>> = vec![None; nrows + ncols];
    for start in 0..nrows + ncols {
        if val[start].is_some() {
            continue;
        }
        val[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            let v = val[k].unwrap();
            let nbrs: Vec<(usize, i32)> = if k < nrows {
                (0..ncols).filter_map(|j| deg[k][j].map(|d| (nrows + j, v + d))).collect()
            } else {
                let j = k - nrows;
                (0..nrows).filter_map(|i| deg[i][j].map(|d| (i, v - d))).collect()
            };
            for (n, want) in nbrs {
                match val[n] {
                    None => {
                        val[n] = Some(want);
                        queue.push_back(n);
                    }
                    Some(have) if have != want => {
                        return Err(Error::Input("entries admit no consistent grading".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    let val: Vec<i32> = val.into_iter().map(Option::unwrap).collect();
    Ok((val[..nrows].to_vec(), val[nrows..].to_vec()))
}

fn graded_matrix(
    ring: &Ring,
    rows: Option<Vec<i32>>,
    cols: Option<Vec<i32>>,
    e: &[Vec<String>],
) -> Result<HMatrix> {
    let entries = parse_entries(ring, e)?;
    let ncols = match (&cols, entries.first()) {
        (Some(c), _) => c.len(),
        (None, Some(r)) => r.len(),
        (None, None) => 0,
    };
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) => (r, c),
        (r, c) => {
            let (ir, ic) = infer_degrees(ring, &entries, ncols)?;
            (r.unwrap_or(ir), c.unwrap_or(ic))
        }
    };
    HMatrix::new(ring, rows, cols, entries)
}

pub fn build_module(spec: &ModuleSpec, ov: Overrides) -> Result<GradedModule> {
    build_module_at(spec, ov, None)
}

/// Like [`build_module`], resolving a ring path against `base`.
pub fn build_module_at(spec: &ModuleSpec, ov: Overrides, base: Option<&Path>) -> Result<GradedModule> {
    if let Some(id) = &spec.catalog {
        let entry = spec.entry.as_deref().unwrap_or("A");
        if entry == "A" {
            return Ok(GradedModule::free(&catalog_with_cap(id, ov)?.ring, vec![0]));
        }
        let (c, i) = catalog_entry(id, entry, ov)?;
        return c.entries[i].mf.coker_module();
    }
    let ring = resolve_ring(
        spec.ring.as_ref().ok_or_else(|| Error::Input("module needs a ring or a catalog".into()))?,
        base,
        ov,
    )?;
    let given = [spec.presentation.is_some(), spec.cyclic.is_some(), spec.named.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Input(
            "give exactly one of presentation, cyclic or named".into(),
        ));
    }
    if let Some(p) = &spec.presentation {
        let m = graded_matrix(&ring, spec.gen_degs.clone(), spec.rel_degs.clone(), p)?;
        return Ok(GradedModule::new(m));
    }
    if let Some(c) = &spec.cyclic {
        let polys = c.iter().map(|s| ring.parse_element(s)).collect::<Result<Vec<_>>>()?;
        return GradedModule::cyclic(&ring, &polys);
    }
    match spec.named.as_deref() {
        Some("residue_field") => Ok(GradedModule::residue_field(&ring)),
        Some("maximal_ideal") => GradedModule::maximal_ideal(&ring),
        Some("free") => Ok(GradedModule::free(&ring, spec.gen_degs.clone().unwrap_or(vec![0]))),
        Some(other) => Err(Error::Input(format!("unknown named module '{other}'"))),
        None => unreachable!(),
    }
}

pub fn parse_module(text: &str, ov: Overrides) -> Result<GradedModule> {
    build_module(&parse_json(text)?, ov)
}

/// Reads a module file; a ring given as a path is taken relative to it.
pub fn load_module(path: &Path, ov: Overrides) -> Result<GradedModule> {
    build_module_at(&parse_json(&read_file(path)?)?, ov, path.parent())
}

pub fn module_spec(m: &GradedModule) -> ModuleSpec {
    ModuleSpec {
        ring: Some(RingRef::Inline(ring_spec(m.ring()))),
        gen_degs: Some(m.gen_degs().to_vec()),
        rel_degs: Some(m.rel_degs().to_vec()),
        presentation: Some(m.pres().format_entries()),
        ..Default::default()
    }
}

pub fn build_mf(spec: &MfSpec, ov: Overrides) -> Result<MatrixFactorization> {
    build_mf_at(spec, ov, None)
}

/// Like [`build_mf`], resolving a ring path against `base`.
pub fn build_mf_at(spec: &MfSpec, ov: Overrides, base: Option<&Path>) -> Result<MatrixFactorization> {
    if let Some(id) = &spec.catalog {
        let entry = spec.entry.as_deref().ok_or_else(|| Error::Input("catalog needs an entry".into()))?;
        let (c, i) = catalog_entry(id, entry, ov)?;
        return Ok(c.entries[i].mf.clone());
    }
    let mut ring = resolve_ring(
        spec.ring.as_ref().ok_or_else(|| Error::Input("factorization needs a ring or a catalog".into()))?,
        base,
        ov,
    )?;
    if let Some(f) = &spec.f {
        let ambient = ring.ambient();
        if !ring.relations().is_empty() {
            return Err(Error::Input("with f the ring must be a polynomial ring".into()));
        }
        let vars: Vec<&str> = ambient.vars().iter().map(String::as_str).collect();
        ring = QuotientRing::parse(
            ambient.characteristic(),
            &vars,
            ambient.weights(),
            &[f.as_str()],
            ambient.degree_cap(),
        )?;
    }
    let (Some(phi), Some(psi)) = (&spec.phi, &spec.psi) else {
        return Err(Error::Input("factorization needs phi and psi".into()));
    };
    let ambient = ring.ambient();
    let delta = ring
        .relation_degrees()
        .first()
        .copied()
        .ok_or_else(|| Error::Precondition("matrix factorizations need a hypersurface ring".into()))?;
    let p = graded_matrix(&ambient, spec.row_degs.clone(), spec.col_degs.clone(), phi)?;
    let shifted: Vec<i32> = p.row_degs().iter().map(|d| d + delta).collect();
    let q = graded_matrix(&ambient, Some(p.col_degs().to_vec()), Some(shifted), psi)?;
    MatrixFactorization::new(&ring, p, q)
}

pub fn parse_mf(text: &str, ov: Overrides) -> Result<MatrixFactorization> {
    build_mf(&parse_json(text)?, ov)
}

/// Reads a factorization file; a ring given as a path is taken relative to it.
pub fn load_mf(path: &Path, ov: Overrides) -> Result<MatrixFactorization> {
    build_mf_at(&parse_json(&read_file(path)?)?, ov, path.parent())
}

pub fn mf_spec(mf: &MatrixFactorization) -> MfSpec {
    MfSpec {
        ring: Some(RingRef::Inline(ring_spec(mf.ring()))),
        row_degs: Some(mf.phi().row_degs().to_vec()),
        col_degs: Some(mf.phi().col_degs().to_vec()),
        phi: Some(mf.phi().format_entries()),
        psi: Some(mf.psi().format_entries()),
        ..Default::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{is_isomorphic, SearchBudget};

    #[test]
    fn module_round_trip() {
        let text = r#"{ "ring": { "characteristic": 7, "vars": ["x", "y"], "weights": [3, 2],
                        "relations": ["x^2+y^3"], "degree_cap": 40 },
                        "named": "maximal_ideal" }"#;
        let m = parse_module(text, Overrides::default()).unwrap();
        let back = serde_json::to_string(&module_spec(&m)).unwrap();
        let m2 = parse_module(&back, Overrides::default()).unwrap();
        assert!(is_isomorphic(&m, &m2, &SearchBudget::default()).unwrap());
    }

    #[test]
    fn mf_round_trip_and_catalog_reference() {
        let ov = Overrides::default();
        let mf = parse_mf(r#"{ "catalog": "ade:A3:dim1", "entry": "M1" }"#, ov).unwrap();
        let back = serde_json::to_string(&mf_spec(&mf)).unwrap();
        let mf2 = parse_mf(&back, ov).unwrap();
        assert_eq!(mf2.phi(), mf.phi());
        assert!(mf2.validate().unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_module("{\n  \"ring\": 3,\n}", Overrides::default()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        let both = r#"{ "ring": { "char": 5, "vars": ["x"] }, "cyclic": ["x"], "named": "free" }"#;
        assert!(matches!(parse_module(both, Overrides::default()), Err(Error::Input(_))));
    }

    #[test]
    fn modulus_override() {
        let ov = Overrides { modulus: Some(13), degree_cap: Some(30) };
        let r = parse_ring(r#"{ "characteristic": 7, "vars": ["x"], "relations": ["x^3"] }"#, ov).unwrap();
        assert_eq!((r.characteristic(), r.degree_cap()), (13, 30));
    }

    #[test]
    fn external_formats_with_inferred_degrees() {
        let ov = Overrides::default();
        let mf = parse_mf(
            r#"{ "ring": { "char": 7, "vars": ["x", "y"], "weights": [3, 2], "relations": [] },
                 "f": "x^2+y^3", "phi": [["x","y"],["y^2","-x"]], "psi": [["x","y"],["y^2","-x"]] }"#,
            ov,
        )
        .unwrap();
        assert!(mf.validate().unwrap());
        assert_eq!(mf.phi().col_degs()[0] - mf.phi().row_degs()[0], 3);
        let m = parse_module(
            r#"{ "ring": { "char": 7, "vars": ["x", "y"], "relations": ["x*y"] },
                 "gen_degs": [0, 0], "rel_degs": [1], "presentation": [["x"], ["y"]] }"#,
            ov,
        )
        .unwrap();
        assert_eq!(m.gen_degs(), &[0, 0]);
        let inferred = parse_module(
            r#"{ "ring": { "char": 7, "vars": ["x", "y"], "relations": ["x*y"] },
                 "presentation": [["x"], ["y"]] }"#,
            ov,
        )
        .unwrap();
        assert!(is_isomorphic(&m, &inferred, &SearchBudget::default()).unwrap());
        let bad = r#"{ "ring": { "char": 7, "vars": ["x", "y"] }, "presentation": [["x", "y"], ["y^2", "x"]] }"#;
        assert!(matches!(parse_module(bad, ov), Err(Error::Input(_))));
    }

    #[test]
    fn ring_by_path() {
        let dir = std::env::temp_dir().join(format!("mcm-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("r.json"), r#"{ "char": 5, "vars": ["x"], "relations": ["x^3"] }"#).unwrap();
        std::fs::write(dir.join("m.json"), r#"{ "ring": "r.json", "named": "residue_field" }"#).unwrap();
        let m = load_module(&dir.join("m.json"), Overrides::default()).unwrap();
        assert_eq!(m.ring().characteristic(), 5);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
