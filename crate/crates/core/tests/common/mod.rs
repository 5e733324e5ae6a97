#![allow(dead_code)]

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use slopestab::exactalg::rat::{int, rat, sign};
use slopestab::exactalg::summation::{euler_maclaurin_sum, literal_sum};
use slopestab::exactalg::{sign_on_interval, Poly, Rat, SignVerdict};
use slopestab::hilbert::{
    combine_disjoint, hs_curve_subscheme, hs_divisor_on_curve, hs_point_on_smooth, quotient_of,
    scale_polarisation, thicken, HSModel,
};
use slopestab::slope::{self, Status};
use slopestab::testconfig::{basechange, diagram_of_layers, divisor_tc_weight, normal_cone_weight};

pub type Check = Result<(), TestCaseError>;

/// A smooth point: (n, Lⁿ, K·Lⁿ⁻¹, ε, saturated).
pub fn point_params() -> impl Strategy<Value = (u32, i64, i64, Rat, bool)> {
    (
        1u32..=4,
        1i64..=20,
        -30i64..=30,
        1i64..=12,
        1i64..=6,
        any::<bool>(),
    )
        .prop_filter_map(
            "a0 must stay positive below eps",
            |(n, ln, kl, p, q, sat)| {
                let eps = rat(p, q);
                (num_traits::pow(eps.clone(), n as usize) <= int(ln))
                    .then_some((n, ln, kl, eps, sat))
            },
        )
}

pub fn point_model() -> impl Strategy<Value = HSModel> {
    point_params().prop_filter_map("valid model", |(n, ln, kl, eps, sat)| {
        hs_point_on_smooth(n, &int(ln), &int(kl), &eps, sat)
            .ok()
            .filter(|h| h.validate().is_ok())
    })
}

/// A subscheme of a curve with Hilbert–Samuel data (e, ρ) and ε ≤ d/e.
pub fn curve_model() -> impl Strategy<Value = HSModel> {
    (
        0i64..=5,
        1i64..=20,
        1i64..=6,
        0i64..=6,
        1i64..=6,
        1i64..=6,
        any::<bool>(),
    )
        .prop_filter_map("valid curve model", |(g, d, e, rho, a, b, sat)| {
            if rho > e || a > b {
                return None;
            }
            let eps = rat(d, e) * rat(a, b);
            let mut h = hs_curve_subscheme(g, d, &int(e), &int(rho), &eps).ok()?;
            h.saturates_at_eps = sat;
            h.validate().ok().map(|_| h)
        })
}

pub fn any_model() -> impl Strategy<Value = HSModel> {
    prop_oneof![point_model(), curve_model()]
}

/// A model together with an admissible slope parameter c = ε·a/b.
pub fn model_and_c() -> impl Strategy<Value = (HSModel, Rat)> {
    (any_model(), 1i64..=8, 1i64..=8).prop_filter_map("admissible c", |(h, a, b)| {
        let c = &h.eps * rat(a.min(b), b);
        h.admits(&c).then_some((h, c))
    })
}

/// Two points on one smooth variety.
pub fn two_points() -> impl Strategy<Value = (HSModel, HSModel)> {
    (point_params(), 1i64..=12, 1i64..=6).prop_filter_map(
        "valid pair",
        |((n, ln, kl, e1, sat), p, q)| {
            let e2 = rat(p, q);
            if num_traits::pow(e2.clone(), n as usize) > int(ln) {
                return None;
            }
            let h1 = hs_point_on_smooth(n, &int(ln), &int(kl), &e1, sat).ok()?;
            let h2 = hs_point_on_smooth(n, &int(ln), &int(kl), &e2, !sat).ok()?;
            Some((h1, h2))
        },
    )
}

pub fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 0..=max_deg + 1)
        .prop_map(|cs| Poly::new(cs.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

pub fn futaki_bridge(h: &HSModel, c: &Rat) -> Check {
    let f = slope::futaki(h, c).map_err(fail)?;
    let w = normal_cone_weight(h, c).map_err(fail)?;
    prop_assert_eq!(f, w.futaki(&h.a0_const, &h.a1_const));
    Ok(())
}

/// μ(X) − μ_c(I_Z), μ_c(O_Z) − μ(X), the Futaki invariant and the margin all have
/// one sign.
pub fn slope_equivalences(h: &HSModel, c: &Rat) -> Check {
    let mu = slope::mu_x(h).map_err(fail)?;
    let mi = slope::mu_c_ideal(h, c).map_err(fail)?;
    let mq = slope::mu_c_quotient(h, c).map_err(fail)?;
    let f = slope::futaki(h, c).map_err(fail)?;
    let n = slope::margin_poly(h).map_err(fail)?.eval(c);
    let s = sign(&(&mu - &mi));
    prop_assert_eq!(s, sign(&(&mq - &mu)));
    prop_assert_eq!(s, sign(&f));
    prop_assert_eq!(s, sign(&n));
    Ok(())
}

/// μ(X) is the mediant of μ_c(I_Z) and μ_c(O_Z).
pub fn mediant(h: &HSModel, c: &Rat) -> Check {
    let zero = Rat::zero();
    let mu = slope::mu_x(h).map_err(fail)?;
    let wi = h.a0.integrate(&zero, c);
    let wq = quotient_of(h).t0.integrate(&zero, c);
    let mi = slope::mu_c_ideal(h, c).map_err(fail)?;
    let mq = slope::mu_c_quotient(h, c).map_err(fail)?;
    prop_assert_eq!(&mi * &wi + &mq * &wq, &mu * (wi + wq));
    let (lo, hi) = if mi <= mq { (&mi, &mq) } else { (&mq, &mi) };
    prop_assert!(lo <= &mu && &mu <= hi);
    Ok(())
}

/// Replacing L by Lʳ rescales c by r and keeps every sign.
pub fn scale_invariance(h: &HSModel, c: &Rat, r: u32) -> Check {
    let hr = scale_polarisation(h, r).map_err(fail)?;
    let v = slope::decide(h).map_err(fail)?;
    let vr = slope::decide(&hr).map_err(fail)?;
    prop_assert_eq!(v.status, vr.status);
    let rc = c * int(r as i64);
    prop_assert_eq!(
        sign(&slope::futaki(h, c).map_err(fail)?),
        sign(&slope::futaki(&hr, &rc).map_err(fail)?)
    );
    prop_assert_eq!(
        slope::mu_x(h).map_err(fail)?,
        slope::mu_x(&hr).map_err(fail)? * int(r as i64)
    );
    Ok(())
}

pub fn euler_maclaurin(f: &Poly, c: &Rat, r: u64) -> Check {
    let em = euler_maclaurin_sum(f, c, r).map_err(fail)?;
    let lit = literal_sum(f, c, r).map_err(fail)?;
    prop_assert_eq!(em, lit);
    Ok(())
}

/// The leading weight of mZ at c is 1/m times that of Z at mc.
pub fn thickening(h: &HSModel, m: u32, c: &Rat) -> Check {
    let hm = thicken(h, m).map_err(fail)?;
    let mc = c * int(m as i64);
    let a = normal_cone_weight(&hm, c).map_err(fail)?;
    let b = normal_cone_weight(h, &mc).map_err(fail)?;
    prop_assert_eq!(a.b0 * int(m as i64), b.b0);
    prop_assert_eq!(hm.eps * int(m as i64), h.eps.clone());
    Ok(())
}

/// Base change of order m multiplies the weight of a divisorial degeneration by m.
pub fn basechange_linearity(layers: &[u64], g: i64, d: i64, m: u64) -> Check {
    let hd = hs_divisor_on_curve(g, d, 1).map_err(fail)?;
    let diagram = diagram_of_layers(layers).map_err(fail)?;
    let w = divisor_tc_weight(&diagram, &hd, true).map_err(fail)?;
    let wm = divisor_tc_weight(&basechange(&diagram, m).map_err(fail)?, &hd, true).map_err(fail)?;
    prop_assert_eq!(wm.b0, &w.b0 * int(m as i64));
    prop_assert_eq!(wm.b1, &w.b1 * int(m as i64));
    Ok(())
}

/// Layers z-exponents, non-increasing, first one at most `d`.
pub fn layers(d: i64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..=d as u64, 1..=4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

/// Exact sign analysis agrees with evaluation on a grid.
pub fn sign_vs_sampling(p: &Poly, lo: &Rat, hi: &Rat, closed: bool) -> Check {
    let s = sign_on_interval(p, lo, hi, closed).map_err(fail)?;
    let steps = 40;
    let mut signs = Vec::new();
    for i in 1..=steps {
        if i == steps && !closed {
            break;
        }
        let x = lo + (hi - lo) * rat(i, steps);
        signs.push(sign(&p.eval(&x)));
    }
    let has = |v: i8| signs.contains(&v);
    match s.verdict {
        SignVerdict::StrictlyPositive => prop_assert!(!has(0) && !has(-1)),
        SignVerdict::StrictlyNegative => prop_assert!(!has(0) && !has(1)),
        SignVerdict::NonnegativeWithZero => prop_assert!(!has(-1) && !s.witnesses.is_empty()),
        SignVerdict::NonpositiveWithZero => prop_assert!(!has(1) && !s.witnesses.is_empty()),
        SignVerdict::IdenticallyZero => prop_assert!(p.is_zero()),
        SignVerdict::ChangesSign => {
            let neg = s.negative_point().cloned();
            prop_assert!(neg.is_some_and(|x| p.eval(&x).is_negative()));
            prop_assert!(s
                .gap_samples
                .iter()
                .any(|(x, sg)| *sg > 0 && p.eval(x).is_positive()));
        }
    }
    for (x, sg) in &s.gap_samples {
        prop_assert_eq!(sign(&p.eval(x)), *sg);
        prop_assert!(lo < x && x <= hi);
    }
    for w in &s.witnesses {
        if let Some(x) = w.exact() {
            prop_assert!(p.eval(x).is_zero());
        }
    }
    Ok(())
}

/// Products of linear factors with rational roots, so zeros actually occur.
pub fn rooted_poly() -> impl Strategy<Value = Poly> {
    (
        prop::collection::vec((-6i64..=6, 1i64..=4), 0..=5),
        prop::sample::select(vec![-3i64, -1, 1, 2]),
    )
        .prop_map(|(roots, lead)| {
            roots
                .into_iter()
                .fold(Poly::constant(int(lead)), |acc, (p, q)| {
                    &acc * &Poly::new(vec![-rat(p, q), int(1)])
                })
        })
}

/// For a smooth point: strictly destabilised iff −K·Lⁿ⁻¹·ε > (n+1)Lⁿ; boundary iff
/// equality with saturation.
pub fn point_criterion(n: u32, ln: i64, kl: i64, eps: &Rat, sat: bool) -> Check {
    let h = hs_point_on_smooth(n, &int(ln), &int(kl), eps, sat).map_err(fail)?;
    let v = slope::decide(&h).map_err(fail)?;
    let lhs = int(-kl) * eps;
    let rhs = int((n as i64 + 1) * ln);
    let expected = if lhs > rhs {
        Status::StrictlyDestabilised
    } else if lhs == rhs && sat {
        Status::BoundarySemistable
    } else {
        Status::StableWrtZ
    };
    prop_assert_eq!(v.status, expected);
    Ok(())
}

pub fn combine_commutes(h1: &HSModel, h2: &HSModel, confirm: bool) -> Check {
    let a = combine_disjoint(h1, h2, confirm);
    let b = combine_disjoint(h2, h1, confirm);
    match (a, b) {
        (Ok(mut a), Ok(b)) => {
            a.label = b.label.clone();
            prop_assert_eq!(a, b);
        }
        (Err(_), Err(_)) => {}
        (a, b) => prop_assert!(false, "one order failed: {:?} / {:?}", a.err(), b.err()),
    }
    Ok(())
}

pub fn fail(e: slopestab::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// For normal X the margin starts non-negative at c = 0, and strictly positive to
/// first non-vanishing order when a₀′(0) < 0.
pub fn small_c_safety(h: &HSModel) -> Check {
    if h.a1.coeff(0) != h.a1_const {
        return Ok(());
    }
    let n = slope::margin_poly(h).map_err(fail)?;
    prop_assert!(n.coeff(0).is_zero());
    prop_assert!(!n.coeff(1).is_negative());
    if h.a0.coeff(1).is_negative() {
        let lead = (1..=n.degree().unwrap_or(0))
            .map(|i| n.coeff(i))
            .find(|c| !c.is_zero());
        prop_assert!(lead.is_some_and(|c| c.is_positive()));
    }
    Ok(())
}
