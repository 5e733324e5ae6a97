//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{int, serde_pq_vec, Rat};
use crate::error::{Error, Result};

/// Coefficients indexed by power, trailing zeros trimmed. The zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    #[serde(with = "serde_pq_vec")]
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    /// Builds from small integer numerators over a common denominator, lowest power first.
    pub fn from_ints(nums: &[i64], den: i64) -> Self {
        Poly::new(nums.iter().map(|&n| int(n) / int(den)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// The antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / int(i as i64 + 1)),
        );
        Poly::new(coeffs)
    }

    /// Exact definite integral over `[a, b]`.
    pub fn integrate(&self, a: &Rat, b: &Rat) -> Rat {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// `x ↦ p(m x)`.
    pub fn scale_arg(&self, m: &Rat) -> Poly {
        let mut pow = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow *= m;
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * q) + &Poly::constant(c.clone())
        })
    }

    /// Euclidean division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Same polynomial scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&(Rat::one() / l)),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, up to a scalar.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0
    }

    /// Unique polynomial of degree `< points.len()` through the given nodes
    /// (Newton divided differences). Nodes must be distinct.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Poly> {
        let n = points.len();
        let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                if dx.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "repeated interpolation node {}",
                        points[i].0
                    )));
                }
                dd[i] = (&dd[i] - &dd[i - 1]) / dx;
            }
        }
        let mut p = Poly::zero();
        for i in (0..n).rev() {
            let shift = Poly::new(vec![-points[i].0.clone(), Rat::one()]);
            p = &(&p * &shift) + &Poly::constant(dd[i].clone());
        }
        Ok(p)
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_mag { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_mag { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    fn p(nums: &[i64]) -> Poly {
        Poly::from_ints(nums, 1)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[3, -1]).eval(&int(1)), int(2));
        assert_eq!(Poly::zero().eval(&rat(7, 2)), int(0));
        assert_eq!(p(&[0, 0, 1]).eval(&rat(1, 3)), rat(1, 9));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[3, -1]).derivative(), p(&[-1]));
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(p(&[5]).derivative(), Poly::zero());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(p(&[3, -1]).integrate(&int(0), &int(1)), rat(5, 2));
        assert_eq!(Poly::x().integrate(&int(0), &int(2)), int(2));
        assert_eq!(p(&[1, 2, 3]).integrate(&rat(3, 7), &rat(3, 7)), int(0));
    }

    #[test]
    fn trims_and_degree() {
        let q = Poly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(q.degree(), Some(0));
        assert_eq!(Poly::new(vec![int(0)]).degree(), None);
        assert!(Poly::new(vec![int(0)]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)^2 (x+2)
        let f = p(&[2, -3, 0, 1]);
        let (q, r) = f.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[-2, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&f, &f.derivative()), p(&[-1, 1]));
        assert_eq!(f.squarefree_part().monic(), p(&[-2, 1, 1]));
        assert_eq!(f.div_rem(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn scale_arg_and_compose() {
        let f = p(&[1, 1, 1]);
        assert_eq!(f.scale_arg(&int(2)), p(&[1, 2, 4]));
        assert_eq!(f.compose(&p(&[0, 2])), f.scale_arg(&int(2)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Poly::from_ints(&[-1, 0, 3, 2], 5);
        let pts: Vec<_> = (0..4).map(|k| (int(k), f.eval(&int(k)))).collect();
        assert_eq!(Poly::interpolate(&pts).unwrap(), f);
        assert!(Poly::interpolate(&[(int(1), int(1)), (int(1), int(2))]).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            Poly::from_ints(&[1, 0, -1], 2).to_string(),
            "-1/2*x^2 + 1/2"
        );
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
