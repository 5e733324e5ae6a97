//! Chow slopes, the asymptotic Chow slope η_c, and the uniform thresholds for curves.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::rat::{int, serde_pq_vec, to_pq};
use crate::exactalg::summation::bernoulli_betas;
use crate::exactalg::{Poly, Rat};
use crate::hilbert::{quotient_of, HSModel};
use crate::testconfig::normal_cone_weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowData {
    /// i ↦ h⁰(I_Z^i(1)).
    pub h0_ideal: BTreeMap<u64, u64>,
    /// h⁰(O(1)).
    pub n_plus_1: u64,
    pub base: HSModel,
}

impl ChowData {
    pub fn new(h0_ideal: BTreeMap<u64, u64>, n_plus_1: u64, base: HSModel) -> Result<Self> {
        let vals: Vec<u64> = h0_ideal.values().copied().collect();
        if vals.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput(
                "h0(I^i(1)) must be non-increasing in i".into(),
            ));
        }
        if vals.iter().any(|&v| v > n_plus_1) {
            return Err(Error::InvalidInput("h0(I^i(1)) cannot exceed N + 1".into()));
        }
        Ok(ChowData {
            h0_ideal,
            n_plus_1,
            base,
        })
    }

    fn sum_to(&self, c: u64) -> Result<u64> {
        (1..=c)
            .map(|i| {
                self.h0_ideal
                    .get(&i)
                    .copied()
                    .ok_or_else(|| Error::MissingData(format!("h0(I^{i}(1))")))
            })
            .sum()
    }

    fn check_c(&self, c: u64) -> Result<()> {
        let cr = int(c as i64);
        if c == 0 || cr > self.base.eps {
            return Err(Error::SlopeParameterOutOfRange {
                c: Box::new(cr),
                eps: Box::new(self.base.eps.clone()),
                saturates: self.base.saturates_at_eps,
            });
        }
        Ok(())
    }
}

/// A Chow slope; a vanishing denominator gives +∞ (X lies in no hyperplane).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChowSlope {
    Finite(Rat),
    Infinite,
}

impl ChowSlope {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ChowSlope::Finite(x) => Some(x),
            ChowSlope::Infinite => None,
        }
    }
}

impl fmt::Display for ChowSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChowSlope::Finite(x) => f.write_str(&to_pq(x)),
            ChowSlope::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ChowSlope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Ch_c(I_Z) = Σ_{i=1}^c h⁰(I^i(1)) / ∫₀ᶜa₀.
pub fn chow_slope(d: &ChowData, c: u64) -> Result<ChowSlope> {
    d.check_c(c)?;
    let num = int(d.sum_to(c)? as i64);
    let den = d.base.a0.integrate(&Rat::zero(), &int(c as i64));
    if den.is_zero() {
        return Ok(ChowSlope::Infinite);
    }
    Ok(ChowSlope::Finite(num / den))
}

/// Ch(X) = (N + 1)/a₀.
pub fn chow_slope_x(d: &ChowData) -> Result<Rat> {
    if !d.base.a0_const.is_positive() {
        return Err(Error::InvalidModel("a0 must be positive".into()));
    }
    Ok(int(d.n_plus_1 as i64) / &d.base.a0_const)
}

/// Ch_c(O_Z) = Σ_{i=1}^c (N + 1 − h⁰(I^i(1))) / ∫₀ᶜã₀.
pub fn chow_quotient_slope(d: &ChowData, c: u64) -> Result<Rat> {
    d.check_c(c)?;
    let total = (c * d.n_plus_1) as i64 - d.sum_to(c)? as i64;
    let den = quotient_of(&d.base)
        .t0
        .integrate(&Rat::zero(), &int(c as i64));
    crate::exactalg::rat::checked_div(&int(total), &den)
}

fn curve_range(g: i64, d: i64) -> Result<()> {
    if g < 1 || d <= 2 * g - 2 {
        return Err(Error::Precondition(format!(
            "need g >= 1 and d > 2g - 2, got g = {g}, d = {d}"
        )));
    }
    Ok(())
}

/// Supremum g/d of the uniform slope-stability constants of a curve.
pub fn uniform_constant_curve(g: i64, d: i64) -> Result<Rat> {
    curve_range(g, d)?;
    Ok(Rat::new(g.into(), d.into()))
}

/// (1 + 1/(d − g))(g − 1/2)/d.
pub fn chow_threshold_curve(g: i64, d: i64) -> Result<Rat> {
    if d <= 2 * g - 2 || d <= g {
        return Err(Error::Precondition(format!(
            "need d > 2g - 2 and d > g, got g = {g}, d = {d}"
        )));
    }
    let one = Rat::one();
    Ok(
        (&one + Rat::new(1.into(), (d - g).into())) * (int(g) - Rat::new(1.into(), 2.into()))
            / int(d),
    )
}

/// Strict comparison g/d > threshold.
pub fn decide_asymptotic_chow_curve(g: i64, d: i64) -> Result<bool> {
    Ok(uniform_constant_curve(g, d)? > chow_threshold_curve(g, d)?)
}

/// Coefficients c₀ ..= c_{n+1} of η_c(r) = Σ c_j r^{n+1−j}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaExpansion {
    #[serde(with = "serde_pq_vec")]
    pub coeffs: Vec<Rat>,
}

impl EtaExpansion {
    /// η as a polynomial in r.
    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval(&self, r: &Rat) -> Rat {
        self.as_poly().eval(r)
    }
}

/// c_j = Σ_{i=0}^{j} βᵢ ∫₀ᶜ a_{j−i}^{(i)} / ∫₀ᶜa₀, with a_{n+1} = 0.
pub fn eta(h: &HSModel, c: &Rat) -> Result<EtaExpansion> {
    if h.n == 0 {
        return Err(Error::Precondition(
            "eta needs a model of positive dimension".into(),
        ));
    }
    let n = h.n as usize;
    let a: Vec<Poly> = (0..=n + 1)
        .map(|i| h.coeff_poly(i))
        .collect::<Result<_>>()?;
    let zero = Rat::zero();
    let den = h.a0.integrate(&zero, c);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let beta = bernoulli_betas(n + 1);
    let coeffs = (0..=n + 1)
        .map(|j| {
            let num: Rat = (0..=j)
                .map(|i| &beta[i] * a[j - i].nth_derivative(i).integrate(&zero, c))
                .sum();
            num / &den
        })
        .collect();
    Ok(EtaExpansion { coeffs })
}

/// η_X(r) = rχ(Lʳ)/a₀ as a polynomial in r.
pub fn eta_x(h: &HSModel) -> Result<Poly> {
    let n = h.n as usize;
    let mut coeffs = vec![Rat::zero(); n + 2];
    for i in 0..=n {
        coeffs[n + 1 - i] = h.coeff_const(i)? / &h.a0_const;
    }
    Ok(Poly::new(coeffs))
}

/// e_{n+1}(r) = b₀·rχ(Lʳ) − a₀·w(r), from a supplied weight and Euler characteristic.
pub fn chow_weight_coeff(h: &HSModel, c: &Rat, r: u64, w_r: &Rat, chi_r: &Rat) -> Result<Rat> {
    let b0 = normal_cone_weight(h, c)?.b0;
    Ok(b0 * int(r as i64) * chi_r - &h.a0_const * w_r)
}

/// The same coefficient through the asymptotic slopes: a₀∫₀ᶜa₀·(η_X(r) − η_c(r)).
pub fn chow_weight_coeff_closed(h: &HSModel, c: &Rat, r: u64) -> Result<Rat> {
    let rr = int(r as i64);
    let ex = eta_x(h)?.eval(&rr);
    let ec = eta(h, c)?.eval(&rr);
    Ok(&h.a0_const * h.a0.integrate(&Rat::zero(), c) * (ex - ec))
}

/// Coefficient table T[i][j] of rⁱkʲ in the large-r normalised weight
/// a₀∫₀ᶜa₀·(η_X(r)η_c(k) − η_X(k)η_c(r)).
pub fn normalized_weight_form(h: &HSModel, c: &Rat) -> Result<Vec<Vec<Rat>>> {
    let ex = eta_x(h)?;
    let ec = eta(h, c)?.as_poly();
    let scale = &h.a0_const * h.a0.integrate(&Rat::zero(), c);
    let n = h.n as usize + 2;
    let mut t = vec![vec![Rat::zero(); n]; n];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = &scale * (ex.coeff(i) * ec.coeff(j) - ex.coeff(j) * ec.coeff(i));
        }
    }
    Ok(t)
}

/// h⁰(I_p^i(1)) = d + 1 − g − i for a point on a smooth curve, valid while
/// d − i > 2g − 2.
pub fn curve_point_chow_data(g: i64, d: i64, cmax: u64) -> Result<ChowData> {
    let base = crate::hilbert::hs_divisor_on_curve(g, d, 1)?;
    let mut table = BTreeMap::new();
    for i in 1..=cmax as i64 {
        if d - i <= 2 * g - 2 {
            return Err(Error::Precondition(format!(
                "h0(I^{i}(1)) is not given by Riemann-Roch when d - i <= 2g - 2"
            )));
        }
        table.insert(i as u64, (d + 1 - g - i) as u64);
    }
    ChowData::new(table, (d + 1 - g) as u64, base)
}
