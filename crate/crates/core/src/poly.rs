//! Univariate polynomials over ℚ, Sturm sequences and real root isolation.

use crate::arith::{rat, rint, rone, rzero, Int, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

/// Dense polynomial, coefficients from low to high degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rat>);

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_ints(c: &[Int]) -> Self {
        Poly::new(c.iter().map(rint).collect())
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly(vec![rzero(), rone()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(rzero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(rzero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![rzero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Euclidean division: `self = q * d + r`.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lc = d.lead();
        if r.len() <= dd {
            return (Poly::zero(), Poly::new(r));
        }
        let mut q = vec![rzero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                let t = &c * dj;
                r[i - dd + j] -= t;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(rone() / l))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64, 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rzero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + crate::arith::rat_to_f64(c);
        }
        acc
    }

    /// Sign of `self(x)`.
    pub fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.eval(x);
        sign(&v)
    }

    /// Sign of the leading behaviour at `+∞` (`pos`) or `-∞`.
    pub fn sign_at_inf(&self, pos: bool) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let s = sign(&self.lead());
        if pos || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm–Tarski sequence of `(p, q)`: `p, p' q, -rem, ...`.
pub fn sturm_sequence(p: &Poly, q: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative().mul(q).rem(p)];
    // keep p' q itself when it has lower degree; the remainder only matters for larger degrees
    if p.derivative().mul(q).degree() < p.degree() {
        seq[1] = p.derivative().mul(q);
    }
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn var_at(seq: &[Poly], x: Option<&Rat>, pos: bool) -> usize {
    match x {
        Some(x) => variations(seq.iter().map(|p| p.sign_at(x))),
        None => variations(seq.iter().map(|p| p.sign_at_inf(pos))),
    }
}

/// Number of distinct real roots of a squarefree `p` in `(a, b]`; `None` means ∓∞.
pub fn count_roots(seq: &[Poly], a: Option<&Rat>, b: Option<&Rat>) -> usize {
    let va = var_at(seq, a, false);
    let vb = var_at(seq, b, true);
    va.saturating_sub(vb)
}

/// Tarski query: sum of sign(q(x)) over the roots x of `p` in `(a, b]`.
pub fn tarski_query(p: &Poly, q: &Poly, a: &Rat, b: &Rat) -> i64 {
    let seq = sturm_sequence(p, q);
    var_at(&seq, Some(a), false) as i64 - var_at(&seq, Some(b), true) as i64
}

/// Cauchy bound on the absolute value of the roots.
pub fn root_bound(p: &Poly) -> Rat {
    let l = p.lead().abs();
    let mut m = rzero();
    for c in &p.0[..p.0.len() - 1] {
        let t = c.abs() / &l;
        if t > m {
            m = t;
        }
    }
    m + rone()
}

/// Isolating intervals `(lo, hi]` for the real roots of a squarefree polynomial,
/// sorted ascending. An exact rational root `r` is returned as `(r, r)`.
pub fn isolate_real_roots(p: &Poly) -> Vec<(Rat, Rat)> {
    let seq = sturm_sequence(p, &Poly::constant(rone()));
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, Some(&lo), Some(&hi));
        if n == 0 {
            continue;
        }
        if n == 1 {
            if p.eval(&hi).is_zero() {
                out.push((hi.clone(), hi));
            } else {
                out.push((lo, hi));
            }
            continue;
        }
        let mid = (&lo + &hi) / rat(2, 1);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Halve an isolating interval of a simple root of `p`.
pub fn refine_root(p: &Poly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    if lo == hi {
        return (lo.clone(), hi.clone());
    }
    let mid = (lo + hi) / rat(2, 1);
    let sm = p.sign_at(&mid);
    if sm == 0 {
        return (mid.clone(), mid);
    }
    let sh = p.sign_at(hi);
    if sh == 0 {
        return (hi.clone(), hi.clone());
    }
    if sm == sh {
        (lo.clone(), mid)
    } else {
        (mid, hi.clone())
    }
}

/// Refine until the width is at most `2^-bits`.
pub fn refine_to(p: &Poly, lo: &Rat, hi: &Rat, bits: u32) -> (Rat, Rat) {
    let eps = Rat::new(Int::one(), Int::one() << bits as usize);
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while &b - &a > eps {
        let r = refine_root(p, &a, &b);
        a = r.0;
        b = r.1;
    }
    (a, b)
}

/// Interval arithmetic on closed rational intervals.
pub mod interval {
    use super::*;

    pub type Iv = (Rat, Rat);

    pub fn point(x: Rat) -> Iv {
        (x.clone(), x)
    }

    pub fn add(a: &Iv, b: &Iv) -> Iv {
        (&a.0 + &b.0, &a.1 + &b.1)
    }

    pub fn sub(a: &Iv, b: &Iv) -> Iv {
        (&a.0 - &b.1, &a.1 - &b.0)
    }

    pub fn mul(a: &Iv, b: &Iv) -> Iv {
        let c = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        (lo, hi)
    }

    pub fn eval(p: &Poly, x: &Iv) -> Iv {
        let mut acc = point(rzero());
        for c in p.0.iter().rev() {
            acc = add(&mul(&acc, x), &point(c.clone()));
        }
        acc
    }

    /// Sign when the interval excludes zero.
    pub fn sign(a: &Iv) -> Option<i8> {
        if a.0.is_positive() {
            Some(1)
        } else if a.1.is_negative() {
            Some(-1)
        } else if a.0.is_zero() && a.1.is_zero() {
            Some(0)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(&c.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[-1, 0, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < 2);
    }

    #[test]
    fn roots_of_golden() {
        let f = p(&[-1, -1, 1]);
        let r = isolate_real_roots(&f);
        assert_eq!(r.len(), 2);
        let (lo, hi) = refine_to(&f, &r[1].0, &r[1].1, 60);
        let v = crate::arith::rat_to_f64(&((lo + hi) / rat(2, 1)));
        assert!((v - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn cubic_three_roots() {
        let f = p(&[-1, -2, 1, 1]);
        let r = isolate_real_roots(&f);
        assert_eq!(r.len(), 3);
        assert!(r[0].1 <= r[1].0 && r[1].1 <= r[2].0);
    }

    #[test]
    fn tarski_sign() {
        // roots of x^2 - 2; q = x is negative at the first, positive at the second
        let f = p(&[-2, 0, 1]);
        let q = p(&[0, 1]);
        assert_eq!(tarski_query(&f, &q, &rat(-2, 1), &rat(0, 1)), -1);
        assert_eq!(tarski_query(&f, &q, &rat(0, 1), &rat(2, 1)), 1);
    }

    #[test]
    fn rational_root_isolated() {
        let f = p(&[-2, 1]);
        let r = isolate_real_roots(&f);
        assert_eq!(r.len(), 1);
        assert!(r[0].0 < rat(2, 1) && rat(2, 1) <= r[0].1);
    }
}
