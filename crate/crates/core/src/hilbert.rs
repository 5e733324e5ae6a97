//! Hilbert–Samuel coefficient models.
//!
//! An [`HSModel`] records the polynomials aᵢ(x) with
//! χ(Lᵏ ⊗ I_Z^{xk}) = a₀(x)kⁿ + a₁(x)kⁿ⁻¹ + …, together with the constants of
//! χ(Lᵏ) and the Seshadri constant of Z.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rat::{int, serde_pq};
use crate::exactalg::{sign_on_interval, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HSModel {
    pub n: u32,
    pub a0: Poly,
    pub a1: Poly,
    /// a₂(x) ..= aₙ(x), when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub higher: Option<Vec<Poly>>,
    #[serde(with = "serde_pq")]
    pub a0_const: Rat,
    #[serde(with = "serde_pq")]
    pub a1_const: Rat,
    #[serde(with = "serde_pq")]
    pub eps: Rat,
    pub saturates_at_eps: bool,
    pub label: String,
}

/// ãᵢ(x) = aᵢ − aᵢ(x): the coefficients of χ(O_{xkZ} ⊗ Lᵏ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientHS {
    pub t0: Poly,
    pub t1: Poly,
}

fn factorial(n: u32) -> Rat {
    (1..=n as i64).map(int).product()
}

/// Elementary symmetric polynomial e_i of the integers in `range`.
fn elementary(i: usize, range: std::ops::Range<i64>) -> Rat {
    let mut e = vec![Rat::zero(); i + 1];
    e[0] = Rat::one();
    for v in range {
        for j in (1..=i).rev() {
            let add = &e[j - 1] * int(v);
            e[j] += add;
        }
    }
    e.swap_remove(i)
}

fn positive(x: &Rat, what: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidModel(format!(
            "{what} = {x} must be positive"
        )))
    }
}

/// A smooth point on a smooth n-fold, from Lⁿ and K_X·Lⁿ⁻¹.
pub fn hs_point_on_smooth(
    n: u32,
    ln: &Rat,
    kln1: &Rat,
    eps: &Rat,
    saturates: bool,
) -> Result<HSModel> {
    if n == 0 {
        return Err(Error::InvalidModel("dimension must be positive".into()));
    }
    positive(ln, "L^n")?;
    positive(eps, "eps")?;
    let nf = factorial(n);
    let n1f = factorial(n - 1);
    let a0_const = ln / &nf;
    let a1_const = -kln1 / (int(2) * &n1f);
    let a0 = &Poly::constant(a0_const.clone()) - &Poly::monomial(Rat::one() / &nf, n as usize);
    let a1 = &Poly::constant(a1_const.clone())
        - &Poly::monomial(int(n as i64 - 1) / (int(2) * &n1f), n as usize - 1);
    Ok(HSModel {
        n,
        a0,
        a1,
        higher: None,
        a0_const,
        a1_const,
        eps: eps.clone(),
        saturates_at_eps: saturates,
        label: format!("point on smooth {n}-fold"),
    })
}

/// A point on ℙⁿ with L = O(d), all coefficients included. ε = d and saturated.
///
/// χ(Lᵏ ⊗ I_p^{xk}) = C(dk+n, n) − C(xk+n−1, n).
pub fn hs_projective_point(n: u32, d: i64) -> Result<HSModel> {
    if n == 0 || d <= 0 {
        return Err(Error::InvalidModel(format!(
            "need n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let nf = factorial(n);
    let n = n as usize;
    let dd = int(d);
    let coeff = |i: usize| {
        let top = elementary(i, 1..n as i64 + 1) * num_traits::pow(dd.clone(), n - i) / &nf;
        let x_part = elementary(i, 0..n as i64) / &nf;
        &Poly::constant(top) - &Poly::monomial(x_part, n - i)
    };
    let all: Vec<Poly> = (0..=n).map(coeff).collect();
    let a0_const = all[0].coeff(0);
    let a1_const = all[1].coeff(0);
    Ok(HSModel {
        n: n as u32,
        a0: all[0].clone(),
        a1: all[1].clone(),
        higher: Some(all[2..].to_vec()),
        a0_const,
        a1_const,
        eps: dd,
        saturates_at_eps: true,
        label: format!("point on P{n}, O({d})"),
    })
}

/// A reduced divisor of degree `deg_z` on a smooth curve of genus `g`, deg L = `d`.
pub fn hs_divisor_on_curve(g: i64, d: i64, deg_z: i64) -> Result<HSModel> {
    if deg_z <= 0 || d <= 0 || g < 0 {
        return Err(Error::InvalidModel(format!(
            "need g >= 0, d > 0, deg Z > 0; got g = {g}, d = {d}, deg Z = {deg_z}"
        )));
    }
    let a0 = Poly::from_ints(&[d, -deg_z], 1);
    let a1 = Poly::constant(int(1 - g));
    Ok(HSModel {
        n: 1,
        a0,
        a1,
        higher: Some(Vec::new()),
        a0_const: int(d),
        a1_const: int(1 - g),
        eps: Rat::new(d.into(), deg_z.into()),
        saturates_at_eps: true,
        label: format!("degree {deg_z} divisor on genus {g} curve, deg L = {d}"),
    })
}

/// A zero-dimensional subscheme of a curve with h⁰(O_{xkZ}) = e·xk − ρ.
pub fn hs_curve_subscheme(g: i64, d: i64, e: &Rat, rho: &Rat, eps: &Rat) -> Result<HSModel> {
    positive(e, "e")?;
    positive(eps, "eps")?;
    if d <= 0 {
        return Err(Error::InvalidModel(format!("deg L = {d} must be positive")));
    }
    let a0 = Poly::new(vec![int(d), -e.clone()]);
    let a1 = Poly::constant(int(1 - g) + rho);
    Ok(HSModel {
        n: 1,
        a0,
        a1,
        higher: Some(Vec::new()),
        a0_const: int(d),
        a1_const: int(1 - g),
        eps: eps.clone(),
        saturates_at_eps: false,
        label: format!("subscheme (e = {e}, rho = {rho}) on genus {g} curve, deg L = {d}"),
    })
}

/// The empty subscheme: aᵢ(x) ≡ aᵢ.
pub fn hs_empty(n: u32, a0_const: &Rat, a1_const: &Rat, eps: &Rat) -> HSModel {
    HSModel {
        n,
        a0: Poly::constant(a0_const.clone()),
        a1: Poly::constant(a1_const.clone()),
        higher: None,
        a0_const: a0_const.clone(),
        a1_const: a1_const.clone(),
        eps: eps.clone(),
        saturates_at_eps: false,
        label: "empty subscheme".into(),
    }
}

/// Disjoint union. The quotient coefficients add and ε becomes the minimum, which
/// is only an upper bound for the true Seshadri constant. Saturation at ε is kept
/// only when both inputs saturate and `confirm_saturation` is set.
pub fn combine_disjoint(h1: &HSModel, h2: &HSModel, confirm_saturation: bool) -> Result<HSModel> {
    if h1.n != h2.n || h1.a0_const != h2.a0_const || h1.a1_const != h2.a1_const {
        return Err(Error::AmbientMismatch(format!(
            "({}, {}, {}) vs ({}, {}, {})",
            h1.n, h1.a0_const, h1.a1_const, h2.n, h2.a0_const, h2.a1_const
        )));
    }
    let sum = |p: &Poly, q: &Poly, base: &Rat| &(p + q) - &Poly::constant(base.clone());
    let higher = match (&h1.higher, &h2.higher) {
        (Some(x), Some(y)) => {
            let mut out = Vec::with_capacity(x.len());
            for (p, q) in x.iter().zip(y) {
                if p.coeff(0) != q.coeff(0) {
                    return Err(Error::AmbientMismatch(
                        "higher constant terms differ".into(),
                    ));
                }
                out.push(sum(p, q, &p.coeff(0)));
            }
            Some(out)
        }
        _ => None,
    };
    Ok(HSModel {
        n: h1.n,
        a0: sum(&h1.a0, &h2.a0, &h1.a0_const),
        a1: sum(&h1.a1, &h2.a1, &h1.a1_const),
        higher,
        a0_const: h1.a0_const.clone(),
        a1_const: h1.a1_const.clone(),
        eps: (&h1.eps).min(&h2.eps).clone(),
        saturates_at_eps: confirm_saturation && h1.saturates_at_eps && h2.saturates_at_eps,
        label: format!("{} + {}", h1.label, h2.label),
    })
}

/// The m-th thickening mZ: aᵢ(x) → aᵢ(mx), ε → ε/m.
pub fn thicken(h: &HSModel, m: u32) -> Result<HSModel> {
    if m == 0 {
        return Err(Error::Precondition(
            "thickening order must be at least 1".into(),
        ));
    }
    let mr = int(m as i64);
    Ok(HSModel {
        n: h.n,
        a0: h.a0.scale_arg(&mr),
        a1: h.a1.scale_arg(&mr),
        higher: h
            .higher
            .as_ref()
            .map(|v| v.iter().map(|p| p.scale_arg(&mr)).collect()),
        a0_const: h.a0_const.clone(),
        a1_const: h.a1_const.clone(),
        eps: &h.eps / &mr,
        saturates_at_eps: h.saturates_at_eps,
        label: if m == 1 {
            h.label.clone()
        } else {
            format!("{m} x ({})", h.label)
        },
    })
}

pub fn quotient_of(h: &HSModel) -> QuotientHS {
    QuotientHS {
        t0: &Poly::constant(h.a0_const.clone()) - &h.a0,
        t1: &Poly::constant(h.a1_const.clone()) - &h.a1,
    }
}

/// The same data for the polarisation Lʳ: aᵢ(x) → r^{n−i} aᵢ(x/r), ε → rε.
pub fn scale_polarisation(h: &HSModel, r: u32) -> Result<HSModel> {
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    let rr = int(r as i64);
    let inv = Rat::one() / &rr;
    let f = |i: u32, p: &Poly| {
        p.scale_arg(&inv)
            .scale(&num_traits::pow(rr.clone(), (h.n - i) as usize))
    };
    let fc = |i: u32, c: &Rat| c * num_traits::pow(rr.clone(), (h.n - i) as usize);
    Ok(HSModel {
        n: h.n,
        a0: f(0, &h.a0),
        a1: f(1, &h.a1),
        higher: h.higher.as_ref().map(|v| {
            v.iter()
                .enumerate()
                .map(|(i, p)| f(i as u32 + 2, p))
                .collect()
        }),
        a0_const: fc(0, &h.a0_const),
        a1_const: fc(1, &h.a1_const),
        eps: &h.eps * &rr,
        saturates_at_eps: h.saturates_at_eps,
        label: format!("{} with L^{r}", h.label),
    })
}

impl HSModel {
    /// aᵢ(x) for 0 ≤ i ≤ n + 1, with a_{n+1} = 0.
    pub fn coeff_poly(&self, i: usize) -> Result<Poly> {
        let n = self.n as usize;
        match i {
            0 => Ok(self.a0.clone()),
            1 if n >= 1 => Ok(self.a1.clone()),
            _ if i == n + 1 => Ok(Poly::zero()),
            _ if i > n + 1 => Err(Error::Precondition(format!(
                "no coefficient a_{i} in dimension {n}"
            ))),
            _ => self
                .higher
                .as_ref()
                .and_then(|v| v.get(i - 2))
                .cloned()
                .ok_or_else(|| Error::MissingData(format!("a_{i}(x) not supplied"))),
        }
    }

    /// The constant aᵢ of χ(Lᵏ); for i ≥ 2 read off as aᵢ(0).
    pub fn coeff_const(&self, i: usize) -> Result<Rat> {
        match i {
            0 => Ok(self.a0_const.clone()),
            1 => Ok(self.a1_const.clone()),
            _ => Ok(self.coeff_poly(i)?.coeff(0)),
        }
    }

    /// χ(Lᵏ) = Σ aᵢ k^{n−i}; needs all coefficients.
    pub fn chi(&self, k: &Rat) -> Result<Rat> {
        let n = self.n as usize;
        let mut acc = Rat::zero();
        for i in 0..=n {
            acc = acc * k + self.coeff_const(i)?;
        }
        Ok(acc)
    }

    /// Whether c lies in the admissible range (0, ε), or (0, ε] when saturated.
    pub fn admits(&self, c: &Rat) -> bool {
        c.is_positive() && (c < &self.eps || (c == &self.eps && self.saturates_at_eps))
    }

    pub fn check_c(&self, c: &Rat) -> Result<()> {
        if self.admits(c) {
            Ok(())
        } else {
            Err(Error::SlopeParameterOutOfRange {
                c: Box::new(c.clone()),
                eps: Box::new(self.eps.clone()),
                saturates: self.saturates_at_eps,
            })
        }
    }

    /// Checks the structural invariants of the model.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModel(format!("{}: {m}", self.label)));
        if self.n == 0 {
            return bad("dimension must be positive".into());
        }
        if !self.eps.is_positive() {
            return bad(format!("eps = {} must be positive", self.eps));
        }
        if self.a0.degree().unwrap_or(0) > self.n as usize {
            return bad("deg a0 exceeds n".into());
        }
        if self.a1.degree().unwrap_or(0) >= self.n as usize {
            return bad("deg a1 exceeds n - 1".into());
        }
        if self.a0.coeff(0) != self.a0_const {
            return bad(format!(
                "a0(0) = {} differs from a0 = {}",
                self.a0.coeff(0),
                self.a0_const
            ));
        }
        let zero = Rat::zero();
        let pos = sign_on_interval(&self.a0, &zero, &self.eps, false)?;
        if pos.verdict != crate::exactalg::SignVerdict::StrictlyPositive {
            return bad("a0(x) is not positive on (0, eps)".into());
        }
        let slope = sign_on_interval(&-self.a0.derivative(), &zero, &self.eps, false)?;
        if !slope.is_nonnegative() {
            return bad("a0(x) is not non-increasing on (0, eps)".into());
        }
        if let Some(v) = &self.higher {
            if v.len() + 1 != self.n as usize && !(self.n == 1 && v.is_empty()) {
                return bad(format!(
                    "expected {} higher coefficients, got {}",
                    self.n.saturating_sub(1),
                    v.len()
                ));
            }
        }
        Ok(())
    }
}
