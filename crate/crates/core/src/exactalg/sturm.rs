//! Exact sign analysis of a polynomial on an interval.
//!
//! Roots are isolated with a Sturm sequence of the square-free part and refined by
//! bisection; the sign between consecutive roots is read off by evaluating at a
//! rational point of each root-free gap. Nothing here touches floating point.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
#[cfg(test)]
use super::rat::rat;
use super::rat::{int, serde_pq, sign, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignVerdict {
    StrictlyPositive,
    NonnegativeWithZero,
    ChangesSign,
    NonpositiveWithZero,
    StrictlyNegative,
    IdenticallyZero,
}

/// A root located either exactly or inside an open interval containing no other root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RootWitness {
    Exact {
        #[serde(with = "serde_pq")]
        at: Rat,
    },
    Isolated {
        #[serde(with = "serde_pq")]
        lo: Rat,
        #[serde(with = "serde_pq")]
        hi: Rat,
    },
}

impl RootWitness {
    pub fn exact(&self) -> Option<&Rat> {
        match self {
            RootWitness::Exact { at } => Some(at),
            RootWitness::Isolated { .. } => None,
        }
    }

    fn left(&self) -> &Rat {
        match self {
            RootWitness::Exact { at } => at,
            RootWitness::Isolated { lo, .. } => lo,
        }
    }

    fn right(&self) -> &Rat {
        match self {
            RootWitness::Exact { at } => at,
            RootWitness::Isolated { hi, .. } => hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSign {
    pub verdict: SignVerdict,
    /// Zeros inside the analysed range, in increasing order.
    pub witnesses: Vec<RootWitness>,
    /// One rational point per maximal root-free open gap, with the sign of the
    /// polynomial there. Ordered left to right.
    #[serde(skip)]
    pub gap_samples: Vec<(Rat, i8)>,
}

impl IntervalSign {
    /// A point of the range where the polynomial is negative, if any.
    pub fn negative_point(&self) -> Option<&Rat> {
        self.gap_samples
            .iter()
            .find(|(_, s)| *s < 0)
            .map(|(x, _)| x)
    }

    pub fn is_nonnegative(&self) -> bool {
        matches!(
            self.verdict,
            SignVerdict::StrictlyPositive
                | SignVerdict::NonnegativeWithZero
                | SignVerdict::IdenticallyZero
        )
    }

    pub fn is_nonpositive(&self) -> bool {
        matches!(
            self.verdict,
            SignVerdict::StrictlyNegative
                | SignVerdict::NonpositiveWithZero
                | SignVerdict::IdenticallyZero
        )
    }
}

struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    fn new(q: &Poly) -> Self {
        let mut chain = vec![q.clone(), q.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2]
                .div_rem(&chain[n - 1])
                .expect("nonzero divisor")
                .1;
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        Sturm { chain }
    }

    /// Sign variations at `x`, skipping zeros.
    fn variations(&self, x: &Rat) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for p in &self.chain {
            let s = sign(&p.eval(x));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }
}

fn mid(a: &Rat, b: &Rat) -> Rat {
    (a + b) / int(2)
}

/// Classifies the sign of `p` on `(lo, hi]` when `include_hi`, else on `(lo, hi)`.
pub fn sign_on_interval(p: &Poly, lo: &Rat, hi: &Rat, include_hi: bool) -> Result<IntervalSign> {
    if lo >= hi {
        return Err(Error::Precondition(format!(
            "empty interval: lo = {lo} must be below hi = {hi}"
        )));
    }
    if p.is_zero() {
        return Ok(IntervalSign {
            verdict: SignVerdict::IdenticallyZero,
            witnesses: Vec::new(),
            gap_samples: vec![(mid(lo, hi), 0)],
        });
    }

    // Square-free with the endpoint roots divided out, so both ends are non-roots.
    let mut q = p.squarefree_part();
    let hi_is_root = p.eval(hi).is_zero();
    for end in [lo, hi] {
        if q.eval(end).is_zero() {
            q = q
                .div_rem(&Poly::new(vec![-end.clone(), int(1)]))
                .expect("linear divisor")
                .0;
        }
    }

    let mut items = Vec::new();
    if q.degree().unwrap_or(0) > 0 {
        let sturm = Sturm::new(&q);
        let n = sturm.variations(lo) - sturm.variations(hi);
        isolate(&q, &sturm, lo.clone(), hi.clone(), n, &mut items);
        items.sort_by(|a, b| a.left().cmp(b.left()));
        separate(&q, lo, hi, &mut items);
    }

    let mut gap_samples = Vec::with_capacity(items.len() + 1);
    let mut left = lo.clone();
    for it in &items {
        let x = mid(&left, it.left());
        gap_samples.push((x.clone(), sign(&p.eval(&x))));
        left = it.right().clone();
    }
    let x = mid(&left, hi);
    gap_samples.push((x.clone(), sign(&p.eval(&x))));

    let mut witnesses = items;
    if include_hi && hi_is_root {
        witnesses.push(RootWitness::Exact { at: hi.clone() });
    }

    let all_pos = gap_samples.iter().all(|(_, s)| *s > 0);
    let all_neg = gap_samples.iter().all(|(_, s)| *s < 0);
    let verdict = match (all_pos, all_neg, witnesses.is_empty()) {
        (true, _, true) => SignVerdict::StrictlyPositive,
        (true, _, false) => SignVerdict::NonnegativeWithZero,
        (_, true, true) => SignVerdict::StrictlyNegative,
        (_, true, false) => SignVerdict::NonpositiveWithZero,
        _ => SignVerdict::ChangesSign,
    };
    Ok(IntervalSign {
        verdict,
        witnesses,
        gap_samples,
    })
}

/// Splits `(a, b)`, holding `n` roots of the square-free `q`, into isolating pieces.
/// Endpoints are either non-roots or already-recorded exact roots.
fn isolate(q: &Poly, sturm: &Sturm, a: Rat, b: Rat, n: usize, out: &mut Vec<RootWitness>) {
    if n == 0 {
        return;
    }
    let a_root = q.eval(&a).is_zero();
    let b_root = q.eval(&b).is_zero();
    if n == 1 && !a_root && !b_root {
        out.push(RootWitness::Isolated { lo: a, hi: b });
        return;
    }
    let m = mid(&a, &b);
    let va = sturm.variations(&a);
    let vm = sturm.variations(&m);
    let vb = sturm.variations(&b);
    if q.eval(&m).is_zero() {
        out.push(RootWitness::Exact { at: m.clone() });
        let nl = va - vm - 1;
        let nr = vm - vb - usize::from(b_root);
        isolate(q, sturm, a, m.clone(), nl, out);
        isolate(q, sturm, m, b, nr, out);
    } else {
        let nl = va - vm;
        isolate(q, sturm, a, m.clone(), nl, out);
        isolate(q, sturm, m, b, n - nl, out);
    }
}

/// Shrinks isolating intervals until every item is strictly separated from its
/// neighbours and from the range ends, so each gap between them has positive length.
fn separate(q: &Poly, lo: &Rat, hi: &Rat, items: &mut [RootWitness]) {
    loop {
        let mut changed = false;
        for i in 0..items.len() {
            let prev = if i == 0 { lo } else { items[i - 1].right() }.clone();
            let next = if i + 1 == items.len() {
                hi
            } else {
                items[i + 1].left()
            }
            .clone();
            if let RootWitness::Isolated { lo: u, hi: v } = &items[i] {
                if *u <= prev || *v >= next {
                    items[i] = bisect_once(q, u, v);
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

fn bisect_once(q: &Poly, u: &Rat, v: &Rat) -> RootWitness {
    let m = mid(u, v);
    let qm = sign(&q.eval(&m));
    if qm == 0 {
        RootWitness::Exact { at: m }
    } else if sign(&q.eval(u)) * qm < 0 {
        RootWitness::Isolated {
            lo: u.clone(),
            hi: m,
        }
    } else {
        RootWitness::Isolated {
            lo: m,
            hi: v.clone(),
        }
    }
}

/// Shrinks an isolating interval below the given width (exact roots are returned as is).
pub fn refine(p: &Poly, w: &RootWitness, width: &Rat) -> RootWitness {
    let q = p.squarefree_part();
    let mut cur = w.clone();
    while let RootWitness::Isolated { lo, hi } = &cur {
        if &(hi - lo) < width {
            break;
        }
        cur = bisect_once(&q, lo, hi);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nums: &[i64], den: i64) -> Poly {
        Poly::from_ints(nums, den)
    }

    #[test]
    fn open_interval_positive() {
        // c(1 - c)
        let s = sign_on_interval(&p(&[0, 1, -1], 1), &int(0), &int(1), false).unwrap();
        assert_eq!(s.verdict, SignVerdict::StrictlyPositive);
        assert!(s.witnesses.is_empty());
    }

    #[test]
    fn sign_change_with_exact_root() {
        let s = sign_on_interval(&p(&[-1, 2], 2), &int(0), &int(1), true).unwrap();
        assert_eq!(s.verdict, SignVerdict::ChangesSign);
        assert_eq!(s.witnesses, vec![RootWitness::Exact { at: rat(1, 2) }]);
    }

    #[test]
    fn double_root_at_closed_end() {
        // (c - 1)^2
        let f = p(&[1, -2, 1], 1);
        let s = sign_on_interval(&f, &int(0), &int(1), true).unwrap();
        assert_eq!(s.verdict, SignVerdict::NonnegativeWithZero);
        assert_eq!(s.witnesses, vec![RootWitness::Exact { at: int(1) }]);
        let open = sign_on_interval(&f, &int(0), &int(1), false).unwrap();
        assert_eq!(open.verdict, SignVerdict::StrictlyPositive);
    }

    #[test]
    fn irrational_roots_are_isolated() {
        // x^2 - 2 on (0, 2]
        let f = p(&[-2, 0, 1], 1);
        let s = sign_on_interval(&f, &int(0), &int(2), true).unwrap();
        assert_eq!(s.verdict, SignVerdict::ChangesSign);
        match &s.witnesses[..] {
            [RootWitness::Isolated { lo, hi }] => {
                assert!(lo * lo < int(2) && hi * hi > int(2));
            }
            other => panic!("unexpected witnesses {other:?}"),
        }
        let fine = refine(&f, &s.witnesses[0], &rat(1, 1000));
        if let RootWitness::Isolated { lo, hi } = fine {
            assert!(&hi - &lo < rat(1, 1000));
        }
    }

    #[test]
    fn interior_double_root_and_negative_side() {
        // -(x - 1/3)^2 on (0, 1)
        let f = -&(&p(&[-1, 3], 3) * &p(&[-1, 3], 3));
        let s = sign_on_interval(&f, &int(0), &int(1), false).unwrap();
        assert_eq!(s.verdict, SignVerdict::NonpositiveWithZero);
        match &s.witnesses[..] {
            [RootWitness::Isolated { lo, hi }] => assert!(lo < &rat(1, 3) && &rat(1, 3) < hi),
            other => panic!("unexpected witnesses {other:?}"),
        }
    }

    #[test]
    fn constants_and_zero() {
        let s = sign_on_interval(&p(&[-3], 1), &int(0), &int(1), true).unwrap();
        assert_eq!(s.verdict, SignVerdict::StrictlyNegative);
        let z = sign_on_interval(&Poly::zero(), &int(0), &int(1), true).unwrap();
        assert_eq!(z.verdict, SignVerdict::IdenticallyZero);
        assert!(sign_on_interval(&p(&[1], 1), &int(1), &int(1), true).is_err());
    }

    #[test]
    fn root_at_left_end_is_excluded() {
        // x (x - 1/2) on (0, 1]: zero at 0 is outside the range
        let f = p(&[0, -1, 2], 2);
        let s = sign_on_interval(&f, &int(0), &int(1), true).unwrap();
        assert_eq!(s.verdict, SignVerdict::ChangesSign);
        assert_eq!(s.witnesses, vec![RootWitness::Exact { at: rat(1, 2) }]);
    }

    #[test]
    fn many_close_roots() {
        // (x - 1/10)(x - 1/9)(x - 1/8)(x - 1/7)
        let f = [10, 9, 8, 7]
            .iter()
            .fold(Poly::constant(int(1)), |acc, &d| &acc * &p(&[-1, d], d));
        let s = sign_on_interval(&f, &int(0), &int(1), true).unwrap();
        assert_eq!(s.verdict, SignVerdict::ChangesSign);
        assert_eq!(s.witnesses.len(), 4);
        assert_eq!(s.gap_samples.len(), 5);
        let signs: Vec<i8> = s.gap_samples.iter().map(|(_, s)| *s).collect();
        assert_eq!(signs, vec![1, -1, 1, -1, 1]);
    }
}
