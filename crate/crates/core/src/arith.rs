//! Integer and rational helpers shared by every module.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_pcg::Pcg64Mcg;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rint(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - Rat::from_integer(x.floor().to_integer())
}

pub fn floor(x: &Rat) -> Int {
    x.floor().to_integer()
}

pub fn ceil(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Least nonnegative residue.
pub fn modp(a: &Int, m: &Int) -> Int {
    let r = a.mod_floor(m);
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(it: I) -> Int {
    let mut g = Int::zero();
    for x in it {
        g = g.gcd(x);
    }
    g
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / a.gcd(&b) * b
}

/// Extended gcd: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn xgcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // scale down huge numerators and denominators
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = nb.max(db) - 60;
    let n = (x.numer() >> (shift.max(0) as usize)).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> (shift.max(0) as usize)).to_f64().unwrap_or(1.0);
    n / d
}

/// Common denominator of a slice of rationals.
pub fn common_den(v: &[Rat]) -> Int {
    let mut d = Int::one();
    for x in v {
        d = d.lcm(x.denom());
    }
    d
}

pub fn binom(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut r = Int::one();
    for i in 0..k {
        r = r * Int::from(n - i) / Int::from(i + 1);
    }
    r
}

pub fn factorial(n: u64) -> Int {
    let mut r = Int::one();
    for i in 2..=n {
        r *= Int::from(i);
    }
    r
}

/// Integer square root (floor) of a nonnegative integer.
pub fn isqrt(n: &Int) -> Int {
    n.sqrt()
}

pub fn is_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Factorization of a positive machine integer by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = alloc::vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Euler totient.
pub fn phi(n: u64) -> u64 {
    let mut r = n;
    for (p, _) in factor_u64(n) {
        r = r / p * (p - 1);
    }
    r
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(rone());
            continue;
        }
        let mut s = rzero();
        for (k, bk) in b.iter().enumerate() {
            s += rint(&binom(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-s / rint(&int(m as i64 + 1)));
    }
    b
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: &Rat) -> Rat {
    let b = bernoulli_numbers(n);
    let mut s = rzero();
    let mut xp = rone();
    for j in (0..=n).rev() {
        // term binom(n, j) B_j x^{n-j}
        s += rint(&binom(n as u64, j as u64)) * &b[j] * &xp;
        xp *= x;
    }
    s
}

pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}

/// Seeded generator for reproducible sampling.
#[derive(Clone, Debug)]
pub struct SampleRng(Pcg64Mcg);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(Pcg64Mcg::seed_from_u64(seed))
    }

    pub fn next(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next() % span) as i64
    }
}
