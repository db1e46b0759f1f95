//! Catalog verification suites: each check yields one line with a status.

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::functors::{cosyzygy, dual, link};
use crate::iso::{is_isomorphic, SearchBudget};
use crate::module::{ring_dim_multiplicity, GradedModule};
use crate::quiver::{
    arrow_lift_checks, component_classify, reverse_iso_check, ARQuiver, Functor, Property,
};
use crate::resolution::{detect_period, resolve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub catalog: String,
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Symmetry,
    Periodicity,
    Middle,
    Lifts,
    Ulrich,
    Multiplicity,
    Components,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "symmetry" => Suite::Symmetry,
            "periodicity" => Suite::Periodicity,
            "middle" => Suite::Middle,
            "lifts" => Suite::Lifts,
            "ulrich" => Suite::Ulrich,
            "multiplicity" => Suite::Multiplicity,
            "components" => Suite::Components,
            "all" => Suite::All,
            _ => return Err(Error::Input(format!("unknown suite '{s}'"))),
        })
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

struct Lines<'a> {
    catalog: &'a str,
    out: Vec<CheckLine>,
}

impl Lines<'_> {
    fn push(&mut self, check: &str, subject: &str, r: Result<(bool, String)>) -> Result<()> {
        let (status, detail) = match r {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) if e.is_inconclusive() => (Status::Inconclusive, e.to_string()),
            Err(e) => return Err(e),
        };
        self.out.push(CheckLine {
            catalog: self.catalog.to_string(),
            check: check.to_string(),
            subject: subject.to_string(),
            status,
            detail,
        });
        Ok(())
    }
}

fn iso(a: &GradedModule, b: &GradedModule, budget: &SearchBudget) -> Result<(bool, String)> {
    Ok((is_isomorphic(a, b, budget)?, String::new()))
}

/// Runs `suite` over the catalog's quiver.
pub fn run_suite(
    catalog: &Catalog,
    suite: Suite,
    h: usize,
    budget: &SearchBudget,
) -> Result<Vec<CheckLine>> {
    let q = ARQuiver::build(catalog.vertices()?, budget)?;
    run_suite_on(&catalog.id, &q, suite, h, budget)
}

pub fn run_suite_on(
    id: &str,
    q: &ARQuiver,
    suite: Suite,
    h: usize,
    budget: &SearchBudget,
) -> Result<Vec<CheckLine>> {
    let mut lines = Lines { catalog: id, out: Vec::new() };
    let stable = q.stable_vertices();
    let name = |a: usize| q.vertices[a].name.clone();
    let ring = q.module(0).ring().clone();
    let (d, e_ring) = ring_dim_multiplicity(&ring)?;

    if suite.includes(Suite::Symmetry) {
        for &a in &stable {
            let m = q.module(a);
            lines.push("link_twice", &name(a), link(m).and_then(|l| link(&l)).and_then(|l| iso(&l, m, budget)))?;
            lines.push("dual_twice", &name(a), dual(m).and_then(|l| dual(&l)).and_then(|l| iso(&l, m, budget)))?;
            lines.push(
                "syz3_syz1",
                &name(a),
                resolve(m, 4).and_then(|r| iso(&r.syzygy(3)?, &r.syzygy(1)?, budget)),
            )?;
            lines.push(
                "cosyz_dual_is_link",
                &name(a),
                dual(m).and_then(|dm| iso(&cosyzygy(&dm, 1)?, &link(m)?, budget)),
            )?;
            if d == 2 {
                lines.push("self_linked", &name(a), link(m).and_then(|l| iso(&l, m, budget)))?;
            }
        }
        for (f, label) in [(Functor::Dual, "reverse_iso_dual"), (Functor::Link, "reverse_iso_link")] {
            lines.push(label, "quiver", reverse_iso_check(q, f).map(|(ok, s)| (ok, format!("{s:?}"))))?;
        }
    }
    if suite.includes(Suite::Periodicity) {
        for &a in &stable {
            let r = detect_period(q.module(a), 2, 2, budget).map(|p| match p {
                Some((n0, p)) => (p <= 2, format!("n0={n0} p={p}")),
                None => (false, "no period within bounds".to_string()),
            });
            lines.push("period_at_most_2", &name(a), r)?;
        }
    }
    if suite.includes(Suite::Middle) {
        for &a in &stable {
            let r = q.middle_term(a).map(|e| {
                let ok = e.routes_agree && e.e_additive && e.mu_identity != Some(false);
                (ok, format!("mu(E)={} e(E)={} mu_identity={:?}", e.mu_middle, e.e_middle, e.mu_identity))
            });
            lines.push("middle_term", &name(a), r)?;
        }
    }
    if suite.includes(Suite::Lifts) {
        match arrow_lift_checks(q) {
            Ok(checks) => {
                for c in checks {
                    let subject = format!("{}->{}@{}", c.source, c.target, c.degree);
                    lines.push("lift_irreducible", &subject, Ok((c.level == 1, format!("level={}", c.level))))?;
                }
            }
            Err(e) => lines.push("lift_irreducible", "quiver", Err(e))?,
        }
    }
    if suite.includes(Suite::Ulrich) && e_ring == 2 {
        for &a in &stable {
            lines.push("ulrich", &name(a), q.module(a).is_ulrich().map(|u| (u, String::new())))?;
        }
    }
    if suite.includes(Suite::Multiplicity) {
        for &a in &stable {
            let m = q.module(a);
            let r = (|| {
                let inv = m.invariants()?;
                let s = resolve(m, 2)?.syzygy(1)?.invariants()?;
                let want = e_ring * inv.mu - inv.multiplicity;
                Ok((s.multiplicity == want, format!("e(Syz1)={} expected {want}", s.multiplicity)))
            })();
            lines.push("syzygy_multiplicity", &name(a), r)?;
        }
    }
    if suite.includes(Suite::Components) {
        for p in [Property::Periodic, Property::Ulrich, Property::CxEquals(1)] {
            let r = component_classify(q, p, h, budget).map(|rep| {
                let ok = rep.components.iter().all(|c| c.status == "constant");
                let st: Vec<&str> = rep.components.iter().map(|c| c.status.as_str()).collect();
                (ok, st.join(" "))
            });
            lines.push("component_constant", &format!("{p:?}"), r)?;
        }
    }
    Ok(lines.out)
}

/// Worst status over the lines: fail beats inconclusive beats pass.
pub fn overall(lines: &[CheckLine]) -> Status {
    if lines.iter().any(|l| l.status == Status::Fail) {
        Status::Fail
    } else if lines.iter().any(|l| l.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;

    #[test]
    fn a3_curve_passes_everything() {
        let c = load_catalog("ade:A3:dim1", None).unwrap();
        let lines = run_suite(&c, Suite::All, 8, &SearchBudget::default()).unwrap();
        assert!(lines.len() > 20);
        for l in &lines {
            assert_eq!(l.status, Status::Pass, "{l:?}");
        }
        assert_eq!(overall(&lines), Status::Pass);
    }
}
