//! Worked examples with known answers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::rat::{int, rat, serde_pq, serde_pq_opt, to_pq};
use crate::exactalg::Rat;
use crate::report::{run_slope, SlopeReport};
use crate::schema::{CurveDivisor, CurveSubscheme, Flags, Params, PointOnSmooth, VarietySpecDoc};
use crate::slope::Status;

#[derive(Debug, Clone, Serialize)]
pub struct Expected {
    pub status: Status,
    #[serde(with = "serde_pq")]
    pub mu_x: Rat,
    #[serde(with = "serde_pq_opt", skip_serializing_if = "Option::is_none")]
    pub c_star: Option<Rat>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    #[serde(serialize_with = "doc_value")]
    pub doc: VarietySpecDoc,
    pub expected: Expected,
    /// Why the expected answer holds.
    pub rationale: &'static str,
}

fn doc_value<S: serde::Serializer>(
    d: &VarietySpecDoc,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    d.to_value().serialize(s)
}

fn saturated() -> Flags {
    Flags {
        saturates_at_eps: Some(true),
        normal: None,
    }
}

fn point(n: u32, ln: Rat, kln1: Rat, alpha: Option<Rat>) -> VarietySpecDoc {
    VarietySpecDoc::new(Params::PointOnSmooth(PointOnSmooth {
        n,
        l_n: ln,
        k_l_n1: kln1,
        eps: int(1),
        alpha,
    }))
    .with_flags(saturated())
}

fn projective_point(id: &'static str, description: &'static str, n: u32) -> CatalogEntry {
    let ni = n as i64;
    CatalogEntry {
        id,
        description,
        doc: point(n, int(1), int(-(ni + 1)), None),
        expected: Expected { status: Status::BoundarySemistable, mu_x: int(ni * (ni + 1) / 2), c_star: Some(int(1)) },
        rationale: "-K.L^{n-1} eps = n+1 equals (n+1)L^n, so the margin vanishes exactly at the Seshadri constant 1",
    }
}

fn curve(
    id: &'static str,
    description: &'static str,
    g: i64,
    d: i64,
    status: Status,
    c_star: Option<Rat>,
) -> CatalogEntry {
    CatalogEntry {
        id,
        description,
        doc: VarietySpecDoc::new(Params::CurveDivisor(CurveDivisor { g, d, deg_z: 1 })),
        expected: Expected {
            status,
            mu_x: rat(1 - g, d),
            c_star,
        },
        rationale: if g == 0 {
            "a point on a line is the projective case n = 1"
        } else {
            "the margin of a point is c/2 + (g-1)c^2/(2d), positive on (0, d] once g >= 1"
        },
    }
}

fn subscheme(
    id: &'static str,
    description: &'static str,
    e: i64,
    rho: i64,
    status: Status,
    rationale: &'static str,
) -> CatalogEntry {
    let (g, d) = (2, 5);
    CatalogEntry {
        id,
        description,
        doc: VarietySpecDoc::new(Params::CurveSubscheme(CurveSubscheme {
            g,
            d,
            e: int(e),
            rho: int(rho),
            eps: rat(d, e),
        })),
        expected: Expected {
            status,
            mu_x: rat(1 - g, d),
            c_star: None,
        },
        rationale,
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        projective_point("p1-point", "a point on P1 with O(1)", 1),
        projective_point("pn-point", "a point on P2 with O(1)", 2),
        projective_point("p3-point", "a point on P3 with O(1)", 3),
        projective_point("p4-point", "a point on P4 with O(1)", 4),
        curve("smooth-curve-g0", "a point on a smooth rational curve of degree 1", 0, 1, Status::BoundarySemistable, Some(int(1))),
        curve("smooth-curve-g1", "a point on an elliptic curve of degree 3", 1, 3, Status::StableWrtZ, None),
        curve("smooth-curve-g2", "a point on a genus 2 curve of degree 5", 2, 5, Status::StableWrtZ, None),
        subscheme(
            "genus2-node",
            "the maximal ideal of a node on a genus 2 curve of degree 5",
            2,
            1,
            Status::StableWrtZ,
            "e = 2, rho = 1 cancels the linear term of the margin, leaving (g-1)e c^2/(2d) > 0",
        ),
        subscheme(
            "genus2-triple-point",
            "the maximal ideal of an ordinary triple point on a genus 2 curve of degree 5",
            3,
            2,
            Status::StrictlyDestabilised,
            "e = 3, rho = 2 makes the linear term c(e/2 - rho) negative, so the margin is negative near 0",
        ),
        CatalogEntry {
            id: "quartic-k3-point",
            description: "a point on a quartic K3 surface with L = O(1)",
            doc: point(2, int(4), int(0), Some(int(0))),
            expected: Expected { status: Status::StableWrtZ, mu_x: int(0), c_star: None },
            rationale: "K = 0 so the margin is c^2 L^2 / 2 > 0; eps = 1 is a lower bound for the Seshadri constant",
        },
        CatalogEntry {
            id: "canonical-surface-point",
            description: "a point on a canonically polarised surface with K^2 = 2",
            doc: point(2, int(2), int(2), Some(int(1))),
            expected: Expected { status: Status::StableWrtZ, mu_x: int(-1), c_star: None },
            rationale: "K = L makes mu(X) negative and the margin positive on (0, 1]",
        },
    ]
}

pub fn find(id: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::InvalidInput(format!("no catalog entry {id:?}; try `catalog list`")))
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogRun {
    pub id: String,
    pub expected: Expected,
    pub report: SlopeReport,
    pub matches: bool,
    pub mismatches: Vec<String>,
}

pub fn run_entry(entry: &CatalogEntry) -> Result<CatalogRun> {
    let report = run_slope(&entry.doc, None)?;
    let mut mismatches = Vec::new();
    if report.verdict.status != entry.expected.status {
        mismatches.push(format!(
            "status: expected {}, got {}",
            entry.expected.status, report.verdict.status
        ));
    }
    if report.mu_x != entry.expected.mu_x {
        mismatches.push(format!(
            "mu_x: expected {}, got {}",
            to_pq(&entry.expected.mu_x),
            to_pq(&report.mu_x)
        ));
    }
    if let Some(c) = &entry.expected.c_star {
        if report.verdict.c_star.as_ref() != Some(c) {
            let got = report
                .verdict
                .c_star
                .as_ref()
                .map_or("none".to_string(), to_pq);
            mismatches.push(format!("c_star: expected {}, got {got}", to_pq(c)));
        }
    }
    Ok(CatalogRun {
        id: entry.id.into(),
        expected: entry.expected.clone(),
        matches: mismatches.is_empty(),
        mismatches,
        report,
    })
}
