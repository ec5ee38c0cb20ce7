//! Polynomials over 𝔽_p for small primes: root finding, distinct-degree
//! factorization and the splitting data used by the Euler products.

use alloc::vec;
use alloc::vec::Vec;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Inverse of `a` modulo an arbitrary `m`, if it exists.
pub fn inv_mod_general(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m))
}

/// Dense polynomial over 𝔽_p, low to high, trimmed.
pub type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce(c: &[i64], p: u64) -> Fp {
    trim(c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
}

fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(c)
}

fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = invmod(*b.last().unwrap(), p);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mulmod(r[i], inv, p);
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let t = mulmod(c, bj, p);
            r[i - db + j] = (r[i - db + j] + p - t) % p;
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|&x| mulmod(x, inv, p)).collect()
        }
    }
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(&a, p)
}

fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

/// `base^e mod f`.
fn powmod_poly(base: &Fp, mut e: u64, f: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = divrem(base, f, p).1;
    while e > 0 {
        if e & 1 == 1 {
            r = divrem(&mul(&r, &b, p), f, p).1;
        }
        b = divrem(&mul(&b, &b, p), f, p).1;
        e >>= 1;
    }
    r
}

fn powmod_poly_big(base: &Fp, e: &[u64], f: &Fp, p: u64) -> Fp {
    // e given as little-endian base-2^64 limbs
    let mut r: Fp = vec![1];
    let b = divrem(base, f, p).1;
    for &limb in e.iter().rev() {
        for bit in (0..64).rev() {
            r = divrem(&mul(&r, &r, p), f, p).1;
            if (limb >> bit) & 1 == 1 {
                r = divrem(&mul(&r, &b, p), f, p).1;
            }
        }
    }
    r
}

/// Distinct roots of `f` in 𝔽_p, sorted.
pub fn roots(f: &Fp, p: u64) -> Vec<u64> {
    let f = monic(&trim(f.clone()), p);
    if f.len() <= 1 {
        return Vec::new();
    }
    if p < 64 {
        return (0..p)
            .filter(|&x| {
                let mut acc = 0u64;
                for &c in f.iter().rev() {
                    acc = (mulmod(acc, x, p) + c) % p;
                }
                acc == 0
            })
            .collect();
    }
    let xp = powmod_poly(&vec![0, 1], p, &f, p);
    let g = gcd(&f, &sub(&xp, &vec![0, 1], p), p);
    let mut out = Vec::new();
    let mut rng = crate::arith::SampleRng::new(p);
    split_linear(&g, p, &mut rng, &mut out);
    out.sort();
    out
}

fn split_linear(g: &Fp, p: u64, rng: &mut crate::arith::SampleRng, out: &mut Vec<u64>) {
    let d = g.len() - 1;
    if d == 0 {
        return;
    }
    if d == 1 {
        out.push((p - g[0] % p) % p);
        return;
    }
    loop {
        let a = rng.next() % p;
        let h = powmod_poly(&vec![a, 1], (p - 1) / 2, g, p);
        let h1 = sub(&h, &vec![1], p);
        let c = gcd(g, &h1, p);
        let dc = c.len().saturating_sub(1);
        if dc > 0 && dc < d {
            let q = divrem(g, &c, p).0;
            split_linear(&c, p, rng, out);
            split_linear(&monic(&q, p), p, rng, out);
            return;
        }
    }
}

/// Irreducible factorization for polynomials whose root-free part has degree
/// at most three (enough for fields of degree ≤ 3). Returns `(factor, exponent)`.
pub fn factor_small(f: &Fp, p: u64) -> Option<Vec<(Fp, u32)>> {
    let mut rest = monic(&trim(f.clone()), p);
    let mut out = Vec::new();
    for r in roots(&rest, p) {
        let lin = vec![(p - r) % p, 1];
        let mut e = 0;
        loop {
            let (q, rem) = divrem(&rest, &lin, p);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            e += 1;
        }
        out.push((lin, e));
    }
    let d = rest.len().saturating_sub(1);
    if d == 0 {
        return Some(out);
    }
    if d <= 3 {
        out.push((rest, 1));
        return Some(out);
    }
    let pattern = ddf_degrees(&rest, p)?;
    if pattern.len() == 1 {
        out.push((rest, 1));
        return Some(out);
    }
    None
}

/// Degrees of the irreducible factors of a squarefree polynomial; `None` if
/// it is not squarefree.
pub fn ddf_degrees(f: &Fp, p: u64) -> Option<Vec<usize>> {
    let f = monic(f, p);
    if gcd(&f, &derivative(&f, p), p).len() > 1 {
        return None;
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut xq: Fp = vec![0, 1];
    let mut i = 0;
    while rest.len() > 1 {
        i += 1;
        if 2 * i > rest.len() - 1 {
            out.push(rest.len() - 1);
            break;
        }
        xq = powmod_poly_big(&xq, &[p], &rest, p);
        let g = gcd(&rest, &sub(&xq, &vec![0, 1], p), p);
        let dg = g.len() - 1;
        if dg > 0 {
            for _ in 0..dg / i {
                out.push(i);
            }
            rest = monic(&divrem(&rest, &g, p).0, p);
            xq = divrem(&xq, &rest, p).1;
        }
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_roots() {
        // x^2 - x - 1 splits mod 11 (5 is a square), inert mod 7
        let f = reduce(&[-1, -1, 1], 11);
        assert_eq!(roots(&f, 11).len(), 2);
        let f = reduce(&[-1, -1, 1], 7);
        assert!(roots(&f, 7).is_empty());
        // large prime with Cantor–Zassenhaus
        let p = 1_000_003;
        let f = reduce(&[-1, -1, 1], p);
        for r in roots(&f, p) {
            assert_eq!((mulmod(r, r, p) + p - r + p - 1) % p, 0);
        }
    }

    #[test]
    fn ddf_pattern() {
        // x^4 + 1 mod 3 factors as two quadratics
        assert_eq!(ddf_degrees(&reduce(&[1, 0, 0, 0, 1], 3), 3), Some(vec![2, 2]));
        assert_eq!(factor_small(&reduce(&[0, 0, 1], 5), 5).unwrap(), vec![(vec![0, 1], 2)]);
    }

    #[test]
    fn inverse_general() {
        assert_eq!(inv_mod_general(3, 10), Some(7));
        assert_eq!(inv_mod_general(4, 10), None);
    }
}
