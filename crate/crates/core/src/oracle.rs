//! Brute-force ground truth on toric examples.
//!
//! Everything here counts explicit monomials or spans explicit vectors; no dimension
//! formula from the rest of the crate is used.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::rat::{as_count, int};
use crate::exactalg::{Poly, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "UPPERCASE")]
pub enum Ambient {
    P1 { d: u64 },
    P2 { d: u64 },
}

impl Ambient {
    pub fn dim(&self) -> u32 {
        match self {
            Ambient::P1 { .. } => 1,
            Ambient::P2 { .. } => 2,
        }
    }

    pub fn degree(&self) -> u64 {
        match *self {
            Ambient::P1 { d } | Ambient::P2 { d } => d,
        }
    }
}

/// (ℙⁿ, O(d)) with the fat coordinate point Z = m·p, p = [1:0] or [1:0:0].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToricCase {
    pub ambient: Ambient,
    pub m: u64,
}

impl ToricCase {
    pub fn new(ambient: Ambient, m: u64) -> Result<Self> {
        if ambient.degree() == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "toric case needs d >= 1 and m >= 1".into(),
            ));
        }
        Ok(ToricCase { ambient, m })
    }

    pub fn p1(d: u64) -> Self {
        ToricCase {
            ambient: Ambient::P1 { d },
            m: 1,
        }
    }

    pub fn p2(d: u64) -> Self {
        ToricCase {
            ambient: Ambient::P2 { d },
            m: 1,
        }
    }

    /// Number of degree-dk monomials vanishing to order at least `q` at p.
    /// The order of x₀^a x₁^b x₂^c at [1:0:0] is b + c.
    pub fn sections_of_order(&self, k: u64, q: u64) -> u64 {
        let top = self.ambient.degree() * k;
        match self.ambient {
            Ambient::P1 { .. } => (0..=top).filter(|&b| b >= q).count() as u64,
            Ambient::P2 { .. } => {
                let mut n = 0;
                for b in 0..=top {
                    for c in 0..=top - b {
                        if b + c >= q {
                            n += 1;
                        }
                    }
                }
                n
            }
        }
    }
}

/// h⁰(Lᵏ ⊗ I_Z^j) by monomial enumeration.
pub fn h0_count(case: &ToricCase, k: u64, j: u64) -> u64 {
    case.sections_of_order(k, case.m * j)
}

fn ck_integer(c: &Rat, k: u64) -> Result<u64> {
    let ck = c * int(k as i64);
    if !ck.is_integer() {
        return Err(Error::NonIntegralProduct(ck));
    }
    as_count(&ck, "c*k")
}

/// Weight decomposition of H⁰(Lᵏ) under the deformation to the normal cone with
/// parameter c: entry i holds the dimension of the weight −i piece, 0 ≤ i ≤ ck.
pub fn normal_cone_weight_spaces(case: &ToricCase, c: &Rat, k: u64) -> Result<Vec<u64>> {
    let ck = ck_integer(c, k)?;
    let h = |j: u64| h0_count(case, k, j);
    let mut dims = Vec::with_capacity(ck as usize + 1);
    // Sections in I^j but not I^{j+1} (j < ck) have weight j − ck; I^{ck} has weight 0.
    for i in 0..=ck {
        let j = ck - i;
        let dim = if i == 0 { h(ck) } else { h(j) - h(j + 1) };
        dims.push(dim);
    }
    Ok(dims)
}

/// Total weight Σ_{j=1}^{ck} h⁰(Lᵏ⊗I^j) − ck·h⁰(Lᵏ), assembled from the weight
/// spaces, after checking that they fill H⁰(Lᵏ).
pub fn brute_normal_cone_weight(case: &ToricCase, c: &Rat, k: u64) -> Result<i64> {
    let dims = normal_cone_weight_spaces(case, c, k)?;
    let total: u64 = dims.iter().sum();
    let h0 = h0_count(case, k, 0);
    if total != h0 {
        return Err(Error::InconsistentSamples(format!(
            "weight spaces have total dimension {total}, expected h0 = {h0}"
        )));
    }
    Ok(dims
        .iter()
        .enumerate()
        .map(|(i, &d)| -(i as i64) * d as i64)
        .sum())
}

/// Whether the weight spaces add up to h⁰(Lᵏ).
pub fn flatness_holds(case: &ToricCase, c: &Rat, k: u64) -> Result<bool> {
    let dims = normal_cone_weight_spaces(case, c, k)?;
    Ok(dims.iter().sum::<u64>() == h0_count(case, k, 0))
}

/// The monomial test configuration I = I_Z^{p₀} + tI_Z^{p₁} + … + t^{r−1}I_Z^{p_{r−1}} + (tʳ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedTC {
    pub case: ToricCase,
    pub layers: Vec<u64>,
}

impl GradedTC {
    pub fn new(case: ToricCase, layers: Vec<u64>) -> Result<Self> {
        if layers.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidInput(format!(
                "layers {layers:?} must be non-increasing"
            )));
        }
        Ok(GradedTC { case, layers })
    }

    /// q_j for j = 0 ..= kr: the least z-exponent at t-level j of Iᵏ.
    pub fn power_profile(&self, k: u64) -> Vec<u64> {
        let mut gens: Vec<(u64, u64)> = self
            .layers
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u64, p))
            .collect();
        gens.push((self.layers.len() as u64, 0));
        let r = self.layers.len() as u64;
        let top = (k * r) as usize;
        // best[t] = least z-exponent of a product of s generators with t-degree exactly t.
        let mut best: Vec<Option<u64>> = vec![None; top + 1];
        best[0] = Some(0);
        for _ in 0..k {
            let mut next: Vec<Option<u64>> = vec![None; top + 1];
            for (t, b) in best.iter().enumerate() {
                let Some(b) = b else { continue };
                for &(gi, gp) in &gens {
                    let nt = t + gi as usize;
                    if nt <= top {
                        let v = b + gp;
                        if next[nt].is_none_or(|cur| v < cur) {
                            next[nt] = Some(v);
                        }
                    }
                }
            }
            best = next;
        }
        // t-multiples are in the ideal, so take running minima.
        let mut out = Vec::with_capacity(top + 1);
        let mut cur = u64::MAX;
        for b in best {
            if let Some(b) = b {
                cur = cur.min(b);
            }
            out.push(cur);
        }
        out
    }
}

/// Total weight −Σ_j j·dim(piece j) of the central fibre, where piece j is spanned by
/// the sections of Lᵏ whose order at p lies in [q_j·m, q_{j−1}·m).
pub fn brute_graded_weight(tc: &GradedTC, k: u64) -> Result<i64> {
    let q = tc.power_profile(k);
    let h = |qj: u64| tc.case.sections_of_order(k, qj.saturating_mul(tc.case.m));
    let mut prev = 0u64;
    let mut weight = 0i64;
    let mut total = 0u64;
    for (j, &qj) in q.iter().enumerate() {
        let here = h(qj);
        let dim = here - prev;
        total += dim;
        weight -= j as i64 * dim as i64;
        prev = here;
    }
    let h0 = h(0);
    if total != h0 {
        return Err(Error::InconsistentSamples(format!(
            "graded pieces have total dimension {total}, expected {h0}"
        )));
    }
    Ok(weight)
}

/// Polynomial of the given degree through the last degree+1 samples, checked
/// against every other sample.
pub fn fit_weight_poly(samples: &[(u64, Rat)], degree: usize) -> Result<Poly> {
    if samples.len() < degree + 1 {
        return Err(Error::InconsistentSamples(format!(
            "{} samples cannot determine a degree {degree} polynomial",
            samples.len()
        )));
    }
    let pts: Vec<(Rat, Rat)> = samples[samples.len() - degree - 1..]
        .iter()
        .map(|(k, w)| (int(*k as i64), w.clone()))
        .collect();
    let p = Poly::interpolate(&pts)?;
    for (k, w) in samples {
        let v = p.eval(&int(*k as i64));
        if &v != w {
            return Err(Error::InconsistentSamples(format!(
                "sample at k = {k} is {w}, fitted polynomial gives {v}"
            )));
        }
    }
    Ok(p)
}

/// A generator aX^p + bY^q of an ideal in C[X, Y]/(XY).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeGen {
    pub a: Rat,
    pub p: u64,
    pub b: Rat,
    pub q: u64,
}

/// An element of C[X,Y]/(XY, X^nx, Y^ny): constant, X-part (index i ↦ X^{i+1}), Y-part.
#[derive(Clone, Debug)]
struct NodeElt {
    c: Rat,
    x: Vec<Rat>,
    y: Vec<Rat>,
}

impl NodeElt {
    fn zero(nx: usize, ny: usize) -> Self {
        NodeElt {
            c: Rat::zero(),
            x: vec![Rat::zero(); nx - 1],
            y: vec![Rat::zero(); ny - 1],
        }
    }

    fn add_x(&mut self, pow: u64, v: &Rat) {
        if pow == 0 {
            self.c += v;
        } else if let Some(slot) = self.x.get_mut(pow as usize - 1) {
            *slot += v;
        }
    }

    fn add_y(&mut self, pow: u64, v: &Rat) {
        if pow == 0 {
            self.c += v;
        } else if let Some(slot) = self.y.get_mut(pow as usize - 1) {
            *slot += v;
        }
    }

    fn from_gen(g: &NodeGen, nx: usize, ny: usize) -> Self {
        let mut e = NodeElt::zero(nx, ny);
        e.add_x(g.p, &g.a);
        e.add_y(g.q, &g.b);
        e
    }

    fn mul(&self, o: &NodeElt) -> NodeElt {
        let (nx, ny) = (self.x.len() + 1, self.y.len() + 1);
        let mut r = NodeElt::zero(nx, ny);
        r.c = &self.c * &o.c;
        for (i, u) in std::iter::once(&self.c).chain(&self.x).enumerate() {
            for (j, v) in std::iter::once(&o.c).chain(&o.x).enumerate() {
                if i + j > 0 && !u.is_zero() && !v.is_zero() {
                    r.add_x((i + j) as u64, &(u * v));
                }
            }
        }
        for (i, u) in std::iter::once(&self.c).chain(&self.y).enumerate() {
            for (j, v) in std::iter::once(&o.c).chain(&o.y).enumerate() {
                if i + j > 0 && !u.is_zero() && !v.is_zero() {
                    r.add_y((i + j) as u64, &(u * v));
                }
            }
        }
        r
    }

    fn times_x(&self, s: u64) -> NodeElt {
        let mut r = NodeElt::zero(self.x.len() + 1, self.y.len() + 1);
        r.add_x(s, &self.c);
        for (i, u) in self.x.iter().enumerate() {
            r.add_x(i as u64 + 1 + s, u);
        }
        r
    }

    fn times_y(&self, s: u64) -> NodeElt {
        let mut r = NodeElt::zero(self.x.len() + 1, self.y.len() + 1);
        r.add_y(s, &self.c);
        for (i, u) in self.y.iter().enumerate() {
            r.add_y(i as u64 + 1 + s, u);
        }
        r
    }

    fn into_vec(self) -> Vec<Rat> {
        let mut v = vec![self.c];
        v.extend(self.x);
        v.extend(self.y);
        v
    }
}

fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = Rat::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// dim R/Iᵏ for R = C[[X, Y]]/(XY), by spanning Iᵏ inside a truncation that already
/// contains it.
pub fn node_colength(gens: &[NodeGen], k: u64) -> Result<u64> {
    let xpow = gens
        .iter()
        .filter(|g| !g.a.is_zero())
        .map(|g| if g.b.is_zero() { g.p } else { g.p + 1 })
        .min();
    let ypow = gens
        .iter()
        .filter(|g| !g.b.is_zero())
        .map(|g| if g.a.is_zero() { g.q } else { g.q + 1 })
        .min();
    let (Some(xp), Some(yp)) = (xpow, ypow) else {
        return Err(Error::InvalidInput(
            "ideal is not supported at the origin".into(),
        ));
    };
    if gens
        .iter()
        .any(|g| (!g.a.is_zero() && g.p == 0) || (!g.b.is_zero() && g.q == 0))
    {
        return Err(Error::InvalidInput(
            "generator is a unit; ideal is not supported at the origin".into(),
        ));
    }
    // X^{xp·k} and Y^{yp·k} lie in Iᵏ, so truncating there loses nothing.
    let (nx, ny) = ((xp * k) as usize, (yp * k) as usize);
    let base: Vec<NodeElt> = gens.iter().map(|g| NodeElt::from_gen(g, nx, ny)).collect();
    // Products of k generators, as multisets (non-decreasing index sequences).
    let mut layer: Vec<(usize, NodeElt)> = base
        .iter()
        .enumerate()
        .map(|(i, e)| (i, e.clone()))
        .collect();
    for _ in 1..k {
        let mut next = Vec::new();
        for (last, e) in &layer {
            for (i, g) in base.iter().enumerate().skip(*last) {
                next.push((i, e.mul(g)));
            }
        }
        layer = next;
    }
    let mut rows = Vec::new();
    for (_, f) in &layer {
        rows.push(f.clone().into_vec());
        for s in 1..nx as u64 {
            rows.push(f.times_x(s).into_vec());
        }
        for s in 1..ny as u64 {
            rows.push(f.times_y(s).into_vec());
        }
    }
    let dim = (nx + ny - 1) as u64;
    Ok(dim - rank(rows) as u64)
}

/// Fits dim R/Iᵏ = e·k − ρ over k ∈ 2 ..= kmax; the fit must be exact on the upper
/// half of that range.
pub fn curve_local_rho(gens: &[NodeGen], kmax: u64) -> Result<(i64, i64)> {
    if kmax < 3 {
        return Err(Error::Precondition(format!(
            "kmax = {kmax} must be at least 3"
        )));
    }
    let ks: Vec<u64> = (2..=kmax).collect();
    let dims = crate::par::map(&ks, |&k| node_colength(gens, k));
    let dims: Vec<(u64, i64)> = ks
        .iter()
        .zip(dims)
        .map(|(&k, d)| d.map(|d| (k, d as i64)))
        .collect::<Result<_>>()?;
    let upper = &dims[dims.len() / 2..];
    let (k1, d1) = upper[upper.len() - 2];
    let (k2, d2) = upper[upper.len() - 1];
    let e = (d2 - d1) / (k2 - k1) as i64;
    let rho = e * k2 as i64 - d2;
    for &(k, d) in upper {
        if e * k as i64 - rho != d {
            return Err(Error::InconsistentSamples(format!(
                "dim R/I^{k} = {d} is off the affine fit {e}k - {rho}"
            )));
        }
    }
    Ok((e, rho))
}

/// h⁰ counts of a toric case as a [`crate::testconfig::SectionCounts`] table.
pub fn section_table(case: ToricCase) -> impl Fn(u64, u64) -> Option<BigInt> {
    move |k, j| Some(BigInt::from(h0_count(&case, k, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn counts() {
        assert_eq!(h0_count(&ToricCase::p1(3), 4, 2), 11);
        for d in 1..4 {
            for k in 1..5 {
                assert_eq!(h0_count(&ToricCase::p1(d), k, 0), d * k + 1);
            }
        }
        assert_eq!(h0_count(&ToricCase::p2(1), 2, 1), 5);
        assert_eq!(h0_count(&ToricCase::p2(1), 2, 0), 6);
        let fat = ToricCase::new(Ambient::P1 { d: 3 }, 2).unwrap();
        assert_eq!(h0_count(&fat, 1, 1), 2);
    }

    #[test]
    fn normal_cone_weights() {
        let c = ToricCase::p1(3);
        assert_eq!(brute_normal_cone_weight(&c, &int(1), 4).unwrap(), -10);
        assert_eq!(brute_normal_cone_weight(&c, &int(1), 1).unwrap(), -1);
        assert_eq!(brute_normal_cone_weight(&c, &int(0), 3).unwrap(), 0);
        assert!(matches!(
            brute_normal_cone_weight(&c, &rat(1, 2), 3),
            Err(Error::NonIntegralProduct(_))
        ));
        assert!(flatness_holds(&ToricCase::p2(2), &int(1), 5).unwrap());
    }

    #[test]
    fn fitting() {
        let c = ToricCase::p1(3);
        let s: Vec<(u64, Rat)> = (1..=4)
            .map(|k| (k, int(brute_normal_cone_weight(&c, &int(1), k).unwrap())))
            .collect();
        let p = fit_weight_poly(&s, 2).unwrap();
        assert_eq!(p, Poly::new(vec![int(0), rat(-1, 2), rat(-1, 2)]));
        let flat: Vec<(u64, Rat)> = (1..=5).map(|k| (k, int(7))).collect();
        assert_eq!(fit_weight_poly(&flat, 3).unwrap(), Poly::constant(int(7)));
        let mut bad = s.clone();
        bad[0].1 = int(5);
        assert!(matches!(
            fit_weight_poly(&bad, 2),
            Err(Error::InconsistentSamples(_))
        ));
    }

    #[test]
    fn graded_base_case() {
        let case = ToricCase::p1(3);
        let tc = GradedTC::new(case, vec![1]).unwrap();
        for k in 1..8 {
            assert_eq!(
                brute_graded_weight(&tc, k).unwrap(),
                brute_normal_cone_weight(&case, &int(1), k).unwrap()
            );
        }
        let trivial = GradedTC::new(case, vec![0, 0]).unwrap();
        assert_eq!(brute_graded_weight(&trivial, 4).unwrap(), 0);
        assert!(GradedTC::new(case, vec![1, 2]).is_err());
    }

    #[test]
    fn graded_profile() {
        let tc = GradedTC::new(ToricCase::p1(5), vec![3, 1]).unwrap();
        // generators z^3, t z, t^2
        assert_eq!(tc.power_profile(2), vec![6, 4, 2, 1, 0]);
    }

    fn g(a: i64, p: u64, b: i64, q: u64) -> NodeGen {
        NodeGen {
            a: int(a),
            p,
            b: int(b),
            q,
        }
    }

    #[test]
    fn node_models() {
        assert_eq!(
            curve_local_rho(&[g(1, 1, 0, 0), g(0, 0, 1, 1)], 12).unwrap(),
            (2, 1)
        );
        assert_eq!(curve_local_rho(&[g(1, 1, 1, 1)], 8).unwrap(), (2, 0));
        assert_eq!(curve_local_rho(&[g(1, 2, 1, 1)], 8).unwrap().0, 3);
        assert!(curve_local_rho(&[g(1, 1, 0, 0)], 6).is_err());
        assert!(curve_local_rho(&[g(1, 0, 1, 1)], 6).is_err());
    }
}
