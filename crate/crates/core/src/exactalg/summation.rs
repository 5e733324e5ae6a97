//! Bernoulli-type constants and exact Euler–Maclaurin summation of polynomials.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{as_i64, int, Rat};
use crate::error::{Error, Result};

/// β₀ = 1, β₁ = 1/2 and βᵢ = Bᵢ/i! for i ≥ 2.
///
/// Computed from β_m = −Σ_{k=1}^{m} (−1)^k β_{m−k}/(k+1)!, which is the
/// coefficient identity of t/(1 − e^{−t}) = Σ βᵢ tⁱ.
pub fn bernoulli_beta(i: usize) -> Rat {
    bernoulli_betas(i).pop().expect("nonempty")
}

/// β₀ ..= β_m.
pub fn bernoulli_betas(m: usize) -> Vec<Rat> {
    let mut fact = vec![Rat::one()];
    for k in 1..=m + 1 {
        fact.push(&fact[k - 1] * int(k as i64));
    }
    let mut beta = vec![Rat::one()];
    for j in 1..=m {
        let mut acc = Rat::zero();
        for k in 1..=j {
            let term = &beta[j - k] / &fact[k + 1];
            if k % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        beta.push(acc);
    }
    beta
}

/// Σ_{j=1}^{cr} f(j/r), evaluated through Σᵢ βᵢ r^{1−i} ∫₀ᶜ f⁽ⁱ⁾.
pub fn euler_maclaurin_sum(f: &Poly, c: &Rat, r: u64) -> Result<Rat> {
    if r == 0 {
        return Err(Error::Precondition("r must be positive".into()));
    }
    let r = int(r as i64);
    let cr = c * &r;
    if !cr.is_integer() {
        return Err(Error::NonIntegralProduct(cr));
    }
    let Some(deg) = f.degree() else {
        return Ok(Rat::zero());
    };
    let betas = bernoulli_betas(deg + 1);
    let zero = Rat::zero();
    let mut total = Rat::zero();
    let mut g = f.clone();
    let mut rpow = r.clone();
    for beta in &betas {
        if g.is_zero() {
            break;
        }
        total += beta * &rpow * g.integrate(&zero, c);
        g = g.derivative();
        rpow /= &r;
    }
    Ok(total)
}

/// The same sum term by term; used as a reference.
pub fn literal_sum(f: &Poly, c: &Rat, r: u64) -> Result<Rat> {
    let rr = int(r as i64);
    let cr = c * &rr;
    let n = as_i64(&cr).ok_or(Error::NonIntegralProduct(cr))?;
    Ok((1..=n).map(|j| f.eval(&(int(j) / &rr))).sum())
}
