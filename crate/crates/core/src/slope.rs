//! K-slopes, Donaldson–Futaki invariants and slope stability verdicts.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rat::{checked_div, serde_pq, serde_pq_opt};
use crate::exactalg::{sign_on_interval, Poly, Rat, RootWitness, SignVerdict};
use crate::hilbert::{quotient_of, HSModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "stable-wrt-Z")]
    StableWrtZ,
    #[serde(rename = "strictly-destabilised")]
    StrictlyDestabilised,
    #[serde(rename = "boundary-semistable")]
    BoundarySemistable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::StableWrtZ => "stable-wrt-Z",
            Status::StrictlyDestabilised => "strictly-destabilised",
            Status::BoundarySemistable => "boundary-semistable",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: Status,
    /// N(c) = μ(X)∫₀ᶜa₀ − ∫₀ᶜ(a₁ + a₀′/2).
    pub margin: Poly,
    /// Zeros of N in the analysed range.
    pub zero_set: Vec<RootWitness>,
    #[serde(with = "serde_pq_opt")]
    pub c_star: Option<Rat>,
    #[serde(with = "serde_pq")]
    pub eps: Rat,
    /// Whether c = ε itself was tested.
    pub closed_at_eps: bool,
    pub sign: SignVerdict,
}

pub fn mu_x(h: &HSModel) -> Result<Rat> {
    if !h.a0_const.is_positive() {
        return Err(Error::InvalidModel(format!(
            "a0 = {} must be positive",
            h.a0_const
        )));
    }
    Ok(&h.a1_const / &h.a0_const)
}

/// ∫₀ᶜ(a₁ + a₀′/2) as a polynomial in c.
fn numerator_poly(h: &HSModel) -> Poly {
    let half = Rat::new(1.into(), 2.into());
    &h.a1.antiderivative() + &(&h.a0 - &Poly::constant(h.a0.coeff(0))).scale(&half)
}

pub fn mu_c_ideal(h: &HSModel, c: &Rat) -> Result<Rat> {
    h.check_c(c)?;
    let zero = Rat::zero();
    let num = numerator_poly(h).eval(c);
    checked_div(&num, &h.a0.integrate(&zero, c))
}

/// μ_c(O_Z) = ∫₀ᶜ(ã₁ + ã₀′/2) / ∫₀ᶜã₀.
pub fn mu_c_quotient(h: &HSModel, c: &Rat) -> Result<Rat> {
    h.check_c(c)?;
    let q = quotient_of(h);
    let zero = Rat::zero();
    let half = Rat::new(1.into(), 2.into());
    let num = q.t1.integrate(&zero, c) + q.t0.eval(c) * half;
    checked_div(&num, &q.t0.integrate(&zero, c))
}

/// F = a₀(μ(X) − μ_c(I_Z))∫₀ᶜa₀.
pub fn futaki(h: &HSModel, c: &Rat) -> Result<Rat> {
    let mu = mu_x(h)?;
    let muc = mu_c_ideal(h, c)?;
    Ok(&h.a0_const * (mu - muc) * h.a0.integrate(&Rat::zero(), c))
}

pub fn margin_poly(h: &HSModel) -> Result<Poly> {
    let mu = mu_x(h)?;
    Ok(&h.a0.antiderivative().scale(&mu) - &numerator_poly(h))
}

/// Sign analysis of N on (0, ε), closed at ε exactly when Z saturates there.
pub fn decide(h: &HSModel) -> Result<StabilityVerdict> {
    let margin = margin_poly(h)?;
    let closed = h.saturates_at_eps;
    let s = sign_on_interval(&margin, &Rat::zero(), &h.eps, closed)?;
    let (status, c_star) = match s.verdict {
        SignVerdict::StrictlyPositive => (Status::StableWrtZ, None),
        SignVerdict::NonnegativeWithZero => {
            let c = s.witnesses.iter().find_map(|w| w.exact().cloned());
            (Status::BoundarySemistable, c)
        }
        SignVerdict::IdenticallyZero => {
            let c = if closed {
                h.eps.clone()
            } else {
                s.gap_samples[0].0.clone()
            };
            (Status::BoundarySemistable, Some(c))
        }
        _ => {
            let at_eps = closed && margin.eval(&h.eps).is_negative();
            let c = if at_eps {
                Some(h.eps.clone())
            } else {
                s.negative_point().cloned()
            };
            (Status::StrictlyDestabilised, c)
        }
    };
    Ok(StabilityVerdict {
        status,
        margin,
        zero_set: s.witnesses,
        c_star,
        eps: h.eps.clone(),
        closed_at_eps: closed,
        sign: s.verdict,
    })
}

/// The Calabi–Yau / canonical argument for K ∼ αL, α ≥ 0: −μ(X)a₀(x) + a₁(x) ≤ 0 on
/// (0, ε] and N > 0 there. Requires μ(X) = −nα/2.
pub fn cy_canonical_check(h: &HSModel, alpha: &Rat) -> Result<bool> {
    if alpha.is_negative() {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} must be nonnegative"
        )));
    }
    let mu = mu_x(h)?;
    let expected = -alpha * Rat::from_integer(h.n.into()) / Rat::from_integer(2.into());
    if mu != expected {
        return Err(Error::Precondition(format!(
            "mu(X) = {mu} but K = alpha L forces {expected}"
        )));
    }
    if quotient_of(h).t0.is_zero() {
        return Ok(true);
    }
    let zero = Rat::zero();
    let pointwise = &h.a1 - &h.a0.scale(&mu);
    let first = sign_on_interval(&pointwise, &zero, &h.eps, true)?;
    if !first.is_nonpositive() {
        return Ok(false);
    }
    let n = sign_on_interval(&margin_poly(h)?, &zero, &h.eps, true)?;
    Ok(n.verdict == SignVerdict::StrictlyPositive)
}
