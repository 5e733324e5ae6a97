//! Drivers behind the CLI commands. Each returns a serialisable report; every
//! rational is written as an exact `"p/q"` string.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chow::{self, ChowData, ChowSlope};
use crate::error::{Error, Result};
use crate::exactalg::rat::{int, serde_pq, serde_pq_opt, serde_pq_vec, to_pq};
use crate::exactalg::{Poly, Rat};
use crate::hilbert::{hs_curve_subscheme, hs_projective_point, HSModel};
use crate::oracle::{self, GradedTC, NodeGen, ToricCase};
use crate::schema::{Params, VarietySpecDoc};
use crate::slope::{self, StabilityVerdict, Status};
use crate::testconfig::{
    describe_combination, diagram_of_layers, divisor_tc_weight, normal_cone_weight, Accuracy,
    NewtonDiagram, WeightExpansion,
};

pub const KMAX_ENV: &str = "SLOPESTAB_KMAX";

/// Upper ends of the k ranges enumerated by the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub p1: u64,
    pub p2: u64,
    pub graded: u64,
    pub curve: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            p1: 50,
            p2: 20,
            graded: 40,
            curve: 12,
        }
    }
}

impl Caps {
    /// One value for every cap.
    pub fn uniform(k: u64) -> Result<Self> {
        if k < 4 {
            return Err(Error::InvalidInput(format!(
                "kmax = {k} is too small (need at least 4)"
            )));
        }
        Ok(Caps {
            p1: k,
            p2: k,
            graded: k,
            curve: k,
        })
    }

    /// Defaults, overridden by `SLOPESTAB_KMAX` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(KMAX_ENV) {
            Ok(v) => {
                let k = v.trim().parse::<u64>().map_err(|_| {
                    Error::InvalidInput(format!("{KMAX_ENV}={v:?} is not a positive integer"))
                })?;
                Caps::uniform(k)
            }
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AtC {
    #[serde(with = "serde_pq")]
    pub c: Rat,
    #[serde(with = "serde_pq")]
    pub mu_c_ideal: Rat,
    /// Absent when ∫₀ᶜã₀ = 0.
    #[serde(with = "serde_pq_opt")]
    pub mu_c_quotient: Option<Rat>,
    #[serde(with = "serde_pq")]
    pub futaki: Rat,
    pub weight: WeightExpansion,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeReport {
    pub kind: String,
    pub label: String,
    pub n: u32,
    pub saturates_at_eps: bool,
    #[serde(with = "serde_pq")]
    pub mu_x: Rat,
    pub verdict: StabilityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_c: Option<AtC>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calabi_yau_check: Option<bool>,
}

fn not_for_newton(doc: &VarietySpecDoc, what: &str) -> Result<()> {
    if matches!(doc.params, Params::NewtonDiagram(_)) {
        return Err(Error::InvalidInput(format!(
            "kind newton-diagram is not accepted by `{what}`; use `newton`"
        )));
    }
    Ok(())
}

pub fn at_c(h: &HSModel, c: &Rat) -> Result<AtC> {
    let mu_c_quotient = match slope::mu_c_quotient(h, c) {
        Ok(v) => Some(v),
        Err(Error::DivisionByZero) => None,
        Err(e) => return Err(e),
    };
    Ok(AtC {
        c: c.clone(),
        mu_c_ideal: slope::mu_c_ideal(h, c)?,
        mu_c_quotient,
        futaki: slope::futaki(h, c)?,
        weight: normal_cone_weight(h, c)?,
    })
}

pub fn run_slope(doc: &VarietySpecDoc, c: Option<&Rat>) -> Result<SlopeReport> {
    not_for_newton(doc, "slope")?;
    let h = doc.model()?;
    let calabi_yau_check = match &doc.params {
        Params::PointOnSmooth(p) => p
            .alpha
            .as_ref()
            .map(|a| slope::cy_canonical_check(&h, a))
            .transpose()?,
        _ => None,
    };
    Ok(SlopeReport {
        kind: doc.params.kind().into(),
        label: h.label.clone(),
        n: h.n,
        saturates_at_eps: h.saturates_at_eps,
        mu_x: slope::mu_x(&h)?,
        verdict: slope::decide(&h)?,
        at_c: c.map(|c| at_c(&h, c)).transpose()?,
        calabi_yau_check,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FutakiReport {
    #[serde(with = "serde_pq")]
    pub c: Rat,
    /// a₀(μ(X) − μ_c(I_Z))∫₀ᶜa₀.
    #[serde(with = "serde_pq")]
    pub futaki: Rat,
    /// b₀a₁ − b₁a₀ from the normal-cone weight.
    #[serde(with = "serde_pq")]
    pub futaki_from_weight: Rat,
    pub agree: bool,
    pub weight: WeightExpansion,
}

pub fn run_futaki(doc: &VarietySpecDoc, c: &Rat) -> Result<FutakiReport> {
    not_for_newton(doc, "futaki")?;
    let h = doc.model()?;
    let f = slope::futaki(&h, c)?;
    let w = normal_cone_weight(&h, c)?;
    let g = w.futaki(&h.a0_const, &h.a1_const);
    Ok(FutakiReport {
        c: c.clone(),
        agree: f == g,
        futaki: f,
        futaki_from_weight: g,
        weight: w,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChowCoefficient {
    pub r: u64,
    #[serde(with = "serde_pq")]
    pub from_counts: Rat,
    #[serde(with = "serde_pq")]
    pub closed_form: Rat,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChowReport {
    pub kind: String,
    pub c: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chow_slope: Option<ChowSlope>,
    #[serde(with = "serde_pq_opt", skip_serializing_if = "Option::is_none")]
    pub chow_slope_x: Option<Rat>,
    #[serde(with = "serde_pq_opt", skip_serializing_if = "Option::is_none")]
    pub chow_quotient_slope: Option<Rat>,
    #[serde(with = "serde_pq_opt", skip_serializing_if = "Option::is_none")]
    pub uniform_constant: Option<Rat>,
    #[serde(with = "serde_pq_opt", skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotically_chow_stable: Option<bool>,
    #[serde(with = "serde_pq_vec", skip_serializing_if = "Vec::is_empty")]
    pub eta: Vec<Rat>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub leading_chow_weight: Vec<ChowCoefficient>,
}

fn slopes_of(data: &ChowData, c: u64) -> Result<(ChowSlope, Rat, Option<Rat>)> {
    let q = match chow::chow_quotient_slope(data, c) {
        Ok(v) => Some(v),
        Err(Error::DivisionByZero) => None,
        Err(e) => return Err(e),
    };
    Ok((chow::chow_slope(data, c)?, chow::chow_slope_x(data)?, q))
}

pub fn run_chow(doc: &VarietySpecDoc, c: u64) -> Result<ChowReport> {
    let mut rep = ChowReport {
        kind: doc.params.kind().into(),
        c,
        chow_slope: None,
        chow_slope_x: None,
        chow_quotient_slope: None,
        uniform_constant: None,
        threshold: None,
        asymptotically_chow_stable: None,
        eta: Vec::new(),
        leading_chow_weight: Vec::new(),
    };
    match &doc.params {
        Params::CurveDivisor(p) => {
            rep.uniform_constant = Some(chow::uniform_constant_curve(p.g, p.d)?);
            rep.threshold = Some(chow::chow_threshold_curve(p.g, p.d)?);
            rep.asymptotically_chow_stable = Some(chow::decide_asymptotic_chow_curve(p.g, p.d)?);
            if p.deg_z == 1 {
                let data = chow::curve_point_chow_data(p.g, p.d, c)?;
                let (s, x, q) = slopes_of(&data, c)?;
                rep.chow_slope = Some(s);
                rep.chow_slope_x = Some(x);
                rep.chow_quotient_slope = q;
            }
        }
        Params::ToricOracleCase(_) => {
            let case = doc
                .toric_case()
                .ok_or_else(|| Error::InvalidInput("bad toric case".into()))?;
            let h = doc.model()?;
            let table: BTreeMap<u64, u64> = (1..=c)
                .map(|i| (i, oracle::h0_count(&case, 1, i)))
                .collect();
            let data = ChowData::new(table, oracle::h0_count(&case, 1, 0), h.clone())?;
            let (s, x, q) = slopes_of(&data, c)?;
            rep.chow_slope = Some(s);
            rep.chow_slope_x = Some(x);
            rep.chow_quotient_slope = q;
            let cr = int(c as i64);
            rep.eta = chow::eta(&h, &cr)?.coeffs;
            for r in 1..=3u64 {
                let w = int(oracle::brute_normal_cone_weight(&case, &cr, r)?);
                let chi = int(oracle::h0_count(&case, r, 0) as i64);
                let a = chow::chow_weight_coeff(&h, &cr, r, &w, &chi)?;
                let b = chow::chow_weight_coeff_closed(&h, &cr, r)?;
                rep.leading_chow_weight.push(ChowCoefficient {
                    r,
                    agree: a == b,
                    from_counts: a,
                    closed_form: b,
                });
            }
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "`chow` needs kind curve-divisor or toric-oracle-case, got {}",
                other.kind()
            )))
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    #[serde(with = "serde_pq")]
    pub b0: Rat,
    #[serde(with = "serde_pq")]
    pub b1: Rat,
    pub b0_match: bool,
    pub b1_match: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NewtonReport {
    pub diagram: NewtonDiagram,
    pub basechange_order: u64,
    pub integrally_closed: bool,
    pub combination: Vec<String>,
    pub weight: WeightExpansion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

/// Layer exponents of the ideal generated by t^i z^{pᵢ}: level j holds the least pᵢ
/// with i ≤ j.
pub fn layers_of_points(points: &[(u64, u64)]) -> Vec<u64> {
    let r = points.last().map_or(0, |p| p.1);
    (0..r)
        .map(|j| {
            points
                .iter()
                .filter(|p| p.1 <= j)
                .map(|p| p.0)
                .min()
                .unwrap_or(u64::MAX)
        })
        .collect()
}

/// Leading coefficients (b₀, b₁) of the graded oracle weight, sampled at multiples of
/// the base-change order so that a period in k cannot spoil the fit.
pub fn graded_fit(tc: &GradedTC, period: u64, kmax: u64) -> Result<(Rat, Rat, Poly)> {
    let smax = (kmax / period).max(4);
    let n = tc.case.ambient.dim() as usize;
    let samples: Vec<(u64, Rat)> = (1..=smax)
        .map(|s| oracle::brute_graded_weight(tc, s * period).map(|w| (s, int(w))))
        .collect::<Result<_>>()?;
    let p = oracle::fit_weight_poly(&samples, n + 1)?;
    let mm = int(period as i64);
    let b0 = p.coeff(n + 1) / num_traits::pow(mm.clone(), n + 1);
    let b1 = p.coeff(n) / num_traits::pow(mm, n);
    Ok((b0, b1, p))
}

fn period_of(d: &NewtonDiagram) -> Result<u64> {
    d.slope_denominator_lcm()
        .try_into()
        .map_err(|_| Error::Precondition("slope denominators too large".into()))
}

pub fn run_newton(doc: &VarietySpecDoc, caps: &Caps) -> Result<NewtonReport> {
    let Params::NewtonDiagram(p) = &doc.params else {
        return Err(Error::InvalidInput(format!(
            "`newton` needs kind newton-diagram, got {}",
            doc.params.kind()
        )));
    };
    let diagram = doc.newton_diagram()?;
    let hd = doc.model()?;
    let weight = divisor_tc_weight(&diagram, &hd, p.ample)?;
    let m = period_of(&diagram)?;
    let oracle = if p.genus == 0 && p.degree > 0 {
        let tc = GradedTC::new(ToricCase::p1(p.degree as u64), layers_of_points(&p.points))?;
        let (b0, b1, _) = graded_fit(&tc, m, caps.graded)?;
        Some(OracleCheck {
            b0_match: b0 == weight.b0,
            b1_match: b1 == weight.b1,
            b0,
            b1,
        })
    } else {
        None
    };
    Ok(NewtonReport {
        integrally_closed: diagram.is_integrally_closed(),
        combination: describe_combination(&diagram),
        basechange_order: m,
        diagram,
        weight,
        oracle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Fail,
    /// Recorded for reference, not a check.
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub suite: String,
    pub case: String,
    pub quantity: String,
    pub expected: String,
    pub observed: String,
    pub status: RowStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub scope: String,
    pub caps: Caps,
    pub rows: Vec<OracleRow>,
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    P1,
    P2,
    Graded,
    CurveLocal,
    All,
}

impl std::str::FromStr for Scope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p1" => Ok(Scope::P1),
            "p2" => Ok(Scope::P2),
            "graded" => Ok(Scope::Graded),
            "curve-local" => Ok(Scope::CurveLocal),
            "all" => Ok(Scope::All),
            _ => Err(Error::InvalidInput(format!(
                "scope {s:?}: expected one of p1, p2, graded, curve-local, all"
            ))),
        }
    }
}

impl Scope {
    pub fn name(&self) -> &'static str {
        match self {
            Scope::P1 => "p1",
            Scope::P2 => "p2",
            Scope::Graded => "graded",
            Scope::CurveLocal => "curve-local",
            Scope::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Task {
    P1 {
        d: u64,
        c: u64,
    },
    P2 {
        d: u64,
        c: u64,
    },
    Graded {
        d: u64,
        layers: Vec<u64>,
    },
    CurveLocal {
        name: &'static str,
        gens: Vec<NodeGen>,
        expected: Option<(i64, i64)>,
    },
}

fn node(a: i64, p: u64, b: i64, q: u64) -> NodeGen {
    NodeGen {
        a: int(a),
        p,
        b: int(b),
        q,
    }
}

/// The graded cases: base case, collinear case, then fractional slopes.
pub const GRADED_CASES: &[(u64, &[u64])] = &[
    (3, &[1]),
    (3, &[2, 1]),
    (5, &[3, 1]),
    (5, &[3, 1, 1]),
    (4, &[2]),
    (6, &[4, 2, 1]),
    (5, &[3]),
];

pub fn tasks(scope: Scope) -> Vec<Task> {
    let mut out = Vec::new();
    let all = scope == Scope::All;
    if all || scope == Scope::P1 {
        for d in 1..=5 {
            for c in 1..=2 {
                out.push(Task::P1 { d, c });
            }
        }
    }
    if all || scope == Scope::P2 {
        for d in 1..=2 {
            out.push(Task::P2 { d, c: 1 });
        }
    }
    if all || scope == Scope::Graded {
        for (d, layers) in GRADED_CASES {
            out.push(Task::Graded {
                d: *d,
                layers: layers.to_vec(),
            });
        }
    }
    if all || scope == Scope::CurveLocal {
        let cases = [
            (
                "(X, Y)",
                vec![node(1, 1, 0, 0), node(0, 0, 1, 1)],
                Some((2, 1)),
            ),
            ("(X + Y)", vec![node(1, 1, 1, 1)], Some((2, 0))),
            ("(X^2 + Y)", vec![node(1, 2, 1, 1)], Some((3, 0))),
            (
                "(X, Y^2)",
                vec![node(1, 1, 0, 0), node(0, 0, 1, 2)],
                Some((3, 1)),
            ),
            (
                "(X^2, Y^2)",
                vec![node(1, 2, 0, 0), node(0, 0, 1, 2)],
                Some((4, 1)),
            ),
            (
                "(X + Y, X^2)",
                vec![node(1, 1, 1, 1), node(1, 2, 0, 0)],
                None,
            ),
            ("(X + 2Y^2)", vec![node(1, 1, 2, 2)], None),
        ];
        for (name, gens, expected) in cases {
            out.push(Task::CurveLocal {
                name,
                gens,
                expected,
            });
        }
    }
    out
}

struct Rows {
    suite: &'static str,
    case: String,
    rows: Vec<OracleRow>,
}

impl Rows {
    fn new(suite: &'static str, case: String) -> Self {
        Rows {
            suite,
            case,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, quantity: &str, expected: String, observed: String, status: RowStatus) {
        self.rows.push(OracleRow {
            suite: self.suite.into(),
            case: self.case.clone(),
            quantity: quantity.into(),
            expected,
            observed,
            status,
        });
    }

    fn check(&mut self, quantity: &str, expected: &Rat, observed: &Rat) {
        let status = if expected == observed {
            RowStatus::Pass
        } else {
            RowStatus::Fail
        };
        self.push(quantity, to_pq(expected), to_pq(observed), status);
    }

    fn flag(&mut self, quantity: &str, ok: bool) {
        let status = if ok { RowStatus::Pass } else { RowStatus::Fail };
        self.push(quantity, "true".into(), ok.to_string(), status);
    }

    fn error(&mut self, quantity: &str, e: &Error) {
        self.push(
            quantity,
            "value".into(),
            format!("error: {e}"),
            RowStatus::Fail,
        );
    }
}

fn normal_cone_samples(case: &ToricCase, c: &Rat, kmax: u64) -> Result<(Vec<(u64, Rat)>, bool)> {
    let mut flat = true;
    let mut samples = Vec::new();
    for k in 1..=kmax {
        flat &= oracle::flatness_holds(case, c, k)?;
        samples.push((k, int(oracle::brute_normal_cone_weight(case, c, k)?)));
    }
    Ok((samples, flat))
}

fn run_projective(rows: &mut Rows, n: u32, d: u64, c: u64, kmax: u64) {
    let case = if n == 1 {
        ToricCase::p1(d)
    } else {
        ToricCase::p2(d)
    };
    let h = match hs_projective_point(n, d as i64) {
        Ok(h) => h,
        Err(e) => return rows.error("model", &e),
    };
    let cr = int(c as i64);
    let (samples, flat) = match normal_cone_samples(&case, &cr, kmax) {
        Ok(v) => v,
        Err(e) => return rows.error("enumeration", &e),
    };
    rows.flag(&format!("flatness, k = 1..{kmax}"), flat);
    let fit = match oracle::fit_weight_poly(&samples, n as usize + 1) {
        Ok(p) => p,
        Err(e) => return rows.error("fit", &e),
    };
    let (b0_fit, b1_fit) = (fit.coeff(n as usize + 1), fit.coeff(n as usize));
    match normal_cone_weight(&h, &cr) {
        Ok(w) => {
            rows.check("b0", &w.b0, &b0_fit);
            if w.b1 == b1_fit || c < d {
                rows.check("b1", &w.b1, &b1_fit);
            } else {
                rows.push(
                    "b1 (c = eps)",
                    to_pq(&w.b1),
                    to_pq(&b1_fit),
                    RowStatus::Info,
                );
            }
            if n == 1 && d == 3 && c == 1 {
                let expected = Poly::new(vec![
                    int(0),
                    Rat::new((-1).into(), 2.into()),
                    Rat::new((-1).into(), 2.into()),
                ]);
                let status = if fit == expected {
                    RowStatus::Pass
                } else {
                    RowStatus::Fail
                };
                rows.push("w(k)", expected.to_string(), fit.to_string(), status);
            }
        }
        Err(Error::SlopeParameterOutOfRange { .. }) => {
            rows.flag("c > eps rejected by the formula", true);
            let zero = Rat::zero();
            let outside = h.a0.integrate(&zero, &cr) - &cr * &h.a0_const;
            rows.push(
                "b0 (formula outside range)",
                to_pq(&outside),
                to_pq(&b0_fit),
                RowStatus::Info,
            );
        }
        Err(e) => rows.error("formula", &e),
    }
}

fn run_graded(rows: &mut Rows, d: u64, layers: &[u64], kmax: u64) {
    let result = (|| -> Result<()> {
        let case = ToricCase::p1(d);
        let tc = GradedTC::new(case, layers.to_vec())?;
        let diagram = diagram_of_layers(layers)?;
        let hd = hs_projective_point(1, d as i64)?;
        let predicted = divisor_tc_weight(&diagram, &hd, true)?;
        let m = period_of(&diagram)?;
        let (b0, b1, _) = graded_fit(&tc, m, kmax)?;
        rows.push(
            "basechange order M",
            "-".into(),
            m.to_string(),
            RowStatus::Info,
        );
        rows.check("b0", &predicted.b0, &b0);
        if predicted.accuracy == Accuracy::UpToKnMinus1 {
            rows.check("b1", &predicted.b1, &b1);
        } else {
            rows.push(
                "b1 (only b0 is asserted)",
                to_pq(&predicted.b1),
                to_pq(&b1),
                RowStatus::Info,
            );
        }
        if layers == [1] {
            let same = (1..=kmax).try_fold(true, |ok, k| -> Result<bool> {
                Ok(ok
                    && oracle::brute_graded_weight(&tc, k)?
                        == oracle::brute_normal_cone_weight(&case, &int(1), k)?)
            })?;
            rows.flag("(z)+(t) weight equals +w(D, 1) for every k", same);
            let negated = -normal_cone_weight(&hd, &int(1))?.b0;
            rows.flag("leading sign: -w(D, 1) disagrees", negated != b0);
        }
        let descending: Vec<u64> = (1..=layers.len() as u64).rev().collect();
        if layers == descending.as_slice() && layers.len() > 1 {
            let c = int(layers.len() as i64);
            let same = (1..=kmax).try_fold(true, |ok, k| -> Result<bool> {
                Ok(ok
                    && oracle::brute_graded_weight(&tc, k)?
                        == oracle::brute_normal_cone_weight(&case, &c, k)?)
            })?;
            rows.flag("collinear diagram equals the normal cone at c = r", same);
        }
        Ok(())
    })();
    if let Err(e) = result {
        rows.error("graded", &e);
    }
}

fn run_curve_local(rows: &mut Rows, gens: &[NodeGen], expected: Option<(i64, i64)>, kmax: u64) {
    match oracle::curve_local_rho(gens, kmax) {
        Ok((e, rho)) => {
            let observed = format!("({e}, {rho})");
            match expected {
                Some((ee, er)) => {
                    let status = if (ee, er) == (e, rho) {
                        RowStatus::Pass
                    } else {
                        RowStatus::Fail
                    };
                    rows.push("(e, rho)", format!("({ee}, {er})"), observed, status);
                }
                None => rows.push("(e, rho)", "-".into(), observed, RowStatus::Info),
            }
            rows.flag("2 rho <= e", 2 * rho <= e);
            let verdict = hs_curve_subscheme(2, 5, &int(e), &int(rho), &int(1))
                .and_then(|h| slope::decide(&h));
            match verdict {
                Ok(v) => rows.flag(
                    "not destabilising on a genus 2 curve",
                    v.status != Status::StrictlyDestabilised,
                ),
                Err(err) => rows.error("verdict", &err),
            }
        }
        Err(e) => rows.error("(e, rho)", &e),
    }
}

pub fn run_task(task: &Task, caps: &Caps) -> Vec<OracleRow> {
    match task {
        Task::P1 { d, c } => {
            let mut r = Rows::new("p1", format!("P1 O({d}), point, c = {c}"));
            run_projective(&mut r, 1, *d, *c, caps.p1);
            r.rows
        }
        Task::P2 { d, c } => {
            let mut r = Rows::new("p2", format!("P2 O({d}), point, c = {c}"));
            run_projective(&mut r, 2, *d, *c, caps.p2);
            r.rows
        }
        Task::Graded { d, layers } => {
            let mut r = Rows::new("graded", format!("P1 O({d}), layers {layers:?}"));
            run_graded(&mut r, *d, layers, caps.graded);
            r.rows
        }
        Task::CurveLocal {
            name,
            gens,
            expected,
        } => {
            let mut r = Rows::new("curve-local", (*name).into());
            run_curve_local(&mut r, gens, *expected, caps.curve);
            r.rows
        }
    }
}

fn summarise(scope: Scope, caps: Caps, rows: Vec<OracleRow>) -> OracleReport {
    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    let (passed, failed, info) = (
        count(RowStatus::Pass),
        count(RowStatus::Fail),
        count(RowStatus::Info),
    );
    OracleReport {
        scope: scope.name().into(),
        caps,
        rows,
        passed,
        failed,
        info,
        all_pass: failed == 0,
    }
}

/// Runs every task of the scope; tasks fan out over the worker pool.
pub fn run_oracle_suite(scope: Scope, caps: &Caps) -> OracleReport {
    let ts = tasks(scope);
    let rows = crate::par::map(&ts, |t| run_task(t, caps))
        .into_iter()
        .flatten()
        .collect();
    summarise(scope, *caps, rows)
}

/// Same report computed on the current thread only.
pub fn run_oracle_suite_seq(scope: Scope, caps: &Caps) -> OracleReport {
    let ts = tasks(scope);
    let rows = crate::par::map_seq(&ts, |t| run_task(t, caps))
        .into_iter()
        .flatten()
        .collect();
    summarise(scope, *caps, rows)
}

/// Plain-text table of an oracle report.
pub fn oracle_table(rep: &OracleReport) -> String {
    let mut out = String::new();
    for r in &rep.rows {
        let tag = match r.status {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Info => "info",
        };
        out.push_str(&format!(
            "{tag}  [{}] {} :: {}  expected {}  observed {}\n",
            r.suite, r.case, r.quantity, r.expected, r.observed
        ));
    }
    out.push_str(&format!(
        "{} passed, {} failed, {} info\n",
        rep.passed, rep.failed, rep.info
    ));
    out
}

/// Sign test helper shared by the catalog: is F positive at every sampled c?
pub fn futaki_positive_at(h: &HSModel, cs: &[Rat]) -> Result<bool> {
    for c in cs {
        if !slope::futaki(h, c)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}
