//! Weights of test configurations: deformation to the normal cone, the normalised
//! weight, and the Newton-diagram decomposition of monomial degenerations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rat::{int, lcm_of_denominators, serde_pq, to_pq};
use crate::exactalg::{Poly, Rat};
use crate::hilbert::HSModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Accuracy {
    #[serde(rename = "exact")]
    Exact,
    /// b₀ and b₁ are both exact.
    #[serde(rename = "up-to-k^{n-1}")]
    UpToKnMinus1,
    /// Only b₀ is exact.
    #[serde(rename = "up-to-k^n")]
    UpToKn,
}

/// Leading behaviour w(k) = b₀kⁿ⁺¹ + b₁kⁿ + … of a weight polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightExpansion {
    #[serde(with = "serde_pq")]
    pub b0: Rat,
    #[serde(with = "serde_pq")]
    pub b1: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full: Option<Poly>,
    pub accuracy: Accuracy,
}

impl WeightExpansion {
    /// Donaldson–Futaki invariant b₀a₁ − b₁a₀ against the ambient constants.
    pub fn futaki(&self, a0: &Rat, a1: &Rat) -> Rat {
        &self.b0 * a1 - &self.b1 * a0
    }

    pub fn scale(&self, s: &Rat) -> WeightExpansion {
        WeightExpansion {
            b0: &self.b0 * s,
            b1: &self.b1 * s,
            full: self.full.as_ref().map(|p| p.scale(s)),
            accuracy: self.accuracy,
        }
    }

    /// Builds the expansion from a full polynomial of degree n + 1.
    pub fn from_full(p: Poly, n: u32) -> WeightExpansion {
        let n = n as usize;
        WeightExpansion {
            b0: p.coeff(n + 1),
            b1: p.coeff(n),
            full: Some(p),
            accuracy: Accuracy::Exact,
        }
    }
}

/// Deformation to the normal cone of Z with parameter c:
/// b₀ = ∫₀ᶜa₀ − ca₀, b₁ = ∫₀ᶜ(a₁ + a₀′/2) − ca₁.
pub fn normal_cone_weight(h: &HSModel, c: &Rat) -> Result<WeightExpansion> {
    h.check_c(c)?;
    let zero = Rat::zero();
    let half = Rat::new(1.into(), 2.into());
    let b0 = h.a0.integrate(&zero, c) - c * &h.a0_const;
    let b1 = h.a1.integrate(&zero, c) + (h.a0.eval(c) - h.a0.coeff(0)) * half - c * &h.a1_const;
    Ok(WeightExpansion {
        b0,
        b1,
        full: None,
        accuracy: Accuracy::UpToKnMinus1,
    })
}

/// Section counts h⁰(Lᵏ ⊗ I_Z^j), with j = 0 giving h⁰(Lᵏ).
pub trait SectionCounts {
    fn h0(&self, k: u64, j: u64) -> Option<BigInt>;
}

impl<F: Fn(u64, u64) -> Option<BigInt>> SectionCounts for F {
    fn h0(&self, k: u64, j: u64) -> Option<BigInt> {
        self(k, j)
    }
}

fn integral_product(c: &Rat, k: u64) -> Result<u64> {
    let ck = c * int(k as i64);
    if !ck.is_integer() || ck.is_negative() {
        return Err(Error::NonIntegralProduct(ck));
    }
    crate::exactalg::rat::as_count(&ck, "c*k")
}

fn count(t: &dyn SectionCounts, k: u64, j: u64) -> Result<Rat> {
    t.h0(k, j)
        .map(Rat::from_integer)
        .ok_or_else(|| Error::MissingData(format!("h0(L^{k} (x) I^{j})")))
}

/// Σ_{j=1}^{ck} h⁰(Lᵏ ⊗ I^j).
fn section_sum(t: &dyn SectionCounts, c: &Rat, k: u64) -> Result<Rat> {
    let ck = integral_product(c, k)?;
    let mut s = Rat::zero();
    for j in 1..=ck {
        s += count(t, k, j)?;
    }
    Ok(s)
}

/// Weight of the deformation to the normal cone at level k from section counts:
/// Σ_{j=1}^{ck} h⁰(Lᵏ ⊗ I^j) − ck·h⁰(Lᵏ).
pub fn weight_from_counts(t: &dyn SectionCounts, c: &Rat, k: u64) -> Result<Rat> {
    let s = section_sum(t, c, k)?;
    Ok(s - c * int(k as i64) * count(t, k, 0)?)
}

/// w̃_{r,k}(c) = rχ(Lʳ)Σ_{j=1}^{ck}h⁰(Lᵏ⊗I^j) − kχ(Lᵏ)w(r) − ck·χ(Lᵏ)·rχ(Lʳ),
/// with χ(Lᵐ) read as h⁰(Lᵐ).
pub fn normalized_weight(t: &dyn SectionCounts, c: &Rat, r: u64, k: u64) -> Result<Rat> {
    let (rr, kk) = (int(r as i64), int(k as i64));
    let chi_r = count(t, r, 0)?;
    let chi_k = count(t, k, 0)?;
    let w_r = weight_from_counts(t, c, r)?;
    let s_k = section_sum(t, c, k)?;
    Ok(&rr * &chi_r * s_k - &kk * &chi_k * w_r - c * &kk * &chi_k * &rr * &chi_r)
}

/// Lattice points (pᵢ, i) of I = (z^{p₀}) + t(z^{p₁}) + … + (tʳ), their lower hull
/// vertices (kᵢ, ρᵢ) and the slopes m₀ = 0 ≤ m₁ ≤ … of the hull edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonDiagram {
    pub raw_points: Vec<(u64, u64)>,
    pub hull_vertices: Vec<(u64, u64)>,
    #[serde(with = "crate::exactalg::rat::serde_pq_vec")]
    pub slopes: Vec<Rat>,
}

fn edge_slope(a: (u64, u64), b: (u64, u64)) -> Rat {
    Rat::new(
        BigInt::from(b.1) - BigInt::from(a.1),
        BigInt::from(a.0) - BigInt::from(b.0),
    )
}

/// Boundary of the Newton polyhedron through the given points. Collinear boundary
/// points are kept as vertices; points with the same z-exponent as an earlier one
/// (a 0/0 edge) are skipped.
pub fn concave_hull(raw_points: &[(u64, u64)]) -> Result<NewtonDiagram> {
    let bad = |m: &str| Err(Error::InvalidInput(format!("newton diagram: {m}")));
    let Some(first) = raw_points.first() else {
        return bad("no points");
    };
    if first.1 != 0 {
        return bad("first point must sit at t-level 0");
    }
    if raw_points.last().map(|p| p.0) != Some(0) {
        return bad("last point must have z-exponent 0");
    }
    for w in raw_points.windows(2) {
        if w[1].1 <= w[0].1 {
            return bad("t-levels must be strictly increasing");
        }
        if w[1].0 > w[0].0 {
            return bad("z-exponents must be non-increasing");
        }
    }
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for &pt in raw_points {
        if hull.last().is_some_and(|h| h.0 == pt.0) {
            continue;
        }
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if edge_slope(a, b) > edge_slope(b, pt) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes = vec![Rat::zero()];
    slopes.extend(hull.windows(2).map(|w| edge_slope(w[0], w[1])));
    Ok(NewtonDiagram {
        raw_points: raw_points.to_vec(),
        hull_vertices: hull,
        slopes,
    })
}

/// Hull diagram of I = I₀ + tI₁ + … + t^{r−1}I_{r−1} + (tʳ) given the z-exponents of
/// the layers.
pub fn diagram_of_layers(layers: &[u64]) -> Result<NewtonDiagram> {
    let mut pts: Vec<(u64, u64)> = layers
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u64))
        .collect();
    pts.push((0, layers.len() as u64));
    concave_hull(&pts)
}

impl NewtonDiagram {
    /// The hull as a function of the t-level: the least z on the boundary at height t.
    fn boundary_z(&self, t: u64) -> Rat {
        let v = &self.hull_vertices;
        for w in v.windows(2) {
            let ((z0, t0), (z1, t1)) = (w[0], w[1]);
            if t >= t0 && t <= t1 {
                let frac = Rat::new(BigInt::from(t - t0), BigInt::from(t1 - t0));
                return int(z0 as i64) - frac * int((z0 - z1) as i64);
            }
        }
        if t < v[0].1 {
            int(v[0].0 as i64)
        } else {
            Rat::zero()
        }
    }

    /// Whether every listed layer sits exactly on the rounded-up hull, so the
    /// monomial ideal is integrally closed at the listed levels.
    pub fn is_integrally_closed(&self) -> bool {
        self.raw_points
            .iter()
            .all(|&(p, i)| Rat::from_integer(BigInt::from(p)) == self.boundary_z(i).ceil())
    }

    /// Least common multiple of the slope denominators.
    pub fn slope_denominator_lcm(&self) -> BigInt {
        lcm_of_denominators(&self.slopes)
    }

    /// Combination coefficients (mᵢ − mᵢ₋₁, kᵢ) for i = 1 ..= l − 1.
    pub fn coefficients(&self) -> Vec<(Rat, u64)> {
        self.slopes
            .windows(2)
            .zip(&self.hull_vertices)
            .map(|(m, v)| (&m[1] - &m[0], v.0))
            .collect()
    }
}

/// Replaces t by t^M: every t-coordinate (and so every slope) is multiplied by M.
pub fn basechange(d: &NewtonDiagram, m: u64) -> Result<NewtonDiagram> {
    if m == 0 {
        return Err(Error::Precondition(
            "basechange factor must be positive".into(),
        ));
    }
    let mm = int(m as i64);
    Ok(NewtonDiagram {
        raw_points: d.raw_points.iter().map(|&(p, i)| (p, i * m)).collect(),
        hull_vertices: d.hull_vertices.iter().map(|&(k, r)| (k, r * m)).collect(),
        slopes: d.slopes.iter().map(|s| s * &mm).collect(),
    })
}

/// Weight of the degeneration described by `diagram` along the reduced divisor with
/// model `hd`: Σᵢ (mᵢ − mᵢ₋₁)·w(D, kᵢ). Fractional slopes are cleared by a base
/// change of order M and divided out again. Terms with zero coefficient are dropped
/// (their kᵢ is never evaluated).
pub fn divisor_tc_weight(
    diagram: &NewtonDiagram,
    hd: &HSModel,
    ample: bool,
) -> Result<WeightExpansion> {
    let m_big = diagram.slope_denominator_lcm();
    let m: u64 = m_big
        .try_into()
        .map_err(|_| Error::Precondition("slope denominators too large".into()))?;
    let integral = basechange(diagram, m)?;
    let mut b0 = Rat::zero();
    let mut b1 = Rat::zero();
    for (coef, k) in integral.coefficients() {
        if coef.is_zero() {
            continue;
        }
        debug_assert!(coef.is_integer() && !coef.is_negative());
        let w = normal_cone_weight(hd, &int(k as i64))?;
        b0 += &coef * w.b0;
        b1 += &coef * w.b1;
    }
    let scale = Rat::one() / int(m as i64);
    let accuracy = if ample && m == 1 && diagram.is_integrally_closed() {
        Accuracy::UpToKnMinus1
    } else {
        Accuracy::UpToKn
    };
    Ok(WeightExpansion {
        b0: b0 * &scale,
        b1: b1 * scale,
        full: None,
        accuracy,
    })
}

/// Sum over connected components of D, computed independently.
pub fn divisor_tc_weight_components(
    parts: &[(NewtonDiagram, HSModel)],
    ample: bool,
) -> Result<WeightExpansion> {
    let each = crate::par::map(parts, |(d, h)| divisor_tc_weight(d, h, ample));
    let mut total = WeightExpansion {
        b0: Rat::zero(),
        b1: Rat::zero(),
        full: None,
        accuracy: Accuracy::UpToKnMinus1,
    };
    for w in each {
        let w = w?;
        total.b0 += w.b0;
        total.b1 += w.b1;
        if w.accuracy == Accuracy::UpToKn {
            total.accuracy = Accuracy::UpToKn;
        }
    }
    Ok(total)
}

/// ε(I_r) = min ε(Zᵢ).
pub fn seshadri_of_chain(eps: &[Rat]) -> Result<Rat> {
    eps.iter()
        .min()
        .cloned()
        .ok_or_else(|| Error::Precondition("empty list of Seshadri constants".into()))
}

/// Human-readable coefficient list, used in reports.
pub fn describe_combination(d: &NewtonDiagram) -> Vec<String> {
    d.coefficients()
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, k)| format!("{} * w(D, {k})", to_pq(&c)))
        .collect()
}
