//! Exact arithmetic in cyclotomic fields ℚ(ζ_m), ζ_m = e^{2πi/m}.
//!
//! Values are stored as integer numerators over a common denominator in the
//! power basis `1, ζ, …, ζ^{φ(m)-1}`.

use crate::arith::{factor_u64, gcd_all, phi, rint, rzero, Int, Rat};
use crate::linalg::qinverse;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shared data for ℚ(ζ_m).
#[derive(Debug)]
pub struct CycField {
    pub m: u64,
    pub phi: usize,
    /// `x^j mod Φ_m` for `0 ≤ j < m`.
    pow_table: Vec<Vec<i64>>,
}

impl CycField {
    pub fn new(m: u64) -> Arc<Self> {
        assert!(m >= 1);
        let poly = cyclotomic_poly(m);
        let phi = poly.len() - 1;
        let mut pow_table = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi.max(1)];
        cur[0] = 1;
        for _ in 0..m {
            pow_table.push(cur.clone());
            // multiply by x and reduce
            let top = if phi == 0 { 0 } else { cur[phi - 1] };
            let mut next = vec![0i64; phi.max(1)];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            if phi >= 1 {
                next[0] = 0;
                for i in 0..phi {
                    next[i] -= top * poly[i];
                }
            }
            cur = next;
        }
        Arc::new(CycField { m, phi, pow_table })
    }
}

/// Coefficients of Φ_m, low to high.
pub fn cyclotomic_poly(m: u64) -> Vec<i64> {
    // Φ_m = ∏_{d|m} (x^d - 1)^{μ(m/d)}
    let mut num: Vec<i64> = vec![1];
    let mut den: Vec<i64> = vec![1];
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let mu = mobius(m / d);
        if mu == 0 {
            continue;
        }
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        if mu == 1 {
            num = poly_mul_i(&num, &f);
        } else {
            den = poly_mul_i(&den, &f);
        }
    }
    poly_div_exact(&num, &den)
}

fn mobius(n: u64) -> i32 {
    let f = crate::arith::factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn poly_mul_i(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = *b.last().unwrap();
    let mut q = vec![0i64; a.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i] / lb;
        q[i - db] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Element of ℚ(ζ_m).
#[derive(Clone, Debug)]
pub struct Cyc {
    field: Arc<CycField>,
    num: Vec<Int>,
    den: Int,
}

impl PartialEq for Cyc {
    fn eq(&self, o: &Self) -> bool {
        if self.field.m == o.field.m {
            return self.num == o.num && self.den == o.den;
        }
        let m = crate::arith::lcm_u64(self.field.m, o.field.m);
        let f = CycField::new(m);
        let a = self.lift(&f);
        let b = o.lift(&f);
        a.num == b.num && a.den == b.den
    }
}

impl Eq for Cyc {}

impl Cyc {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn m(&self) -> u64 {
        self.field.m
    }

    pub fn zero(f: &Arc<CycField>) -> Self {
        Cyc { field: f.clone(), num: vec![Int::zero(); f.phi], den: Int::one() }
    }

    pub fn from_rat(f: &Arc<CycField>, q: &Rat) -> Self {
        let mut num = vec![Int::zero(); f.phi];
        num[0] = q.numer().clone();
        Cyc { field: f.clone(), num, den: q.denom().clone() }.normalized()
    }

    pub fn one(f: &Arc<CycField>) -> Self {
        Self::from_rat(f, &Rat::one())
    }

    /// `ζ_m^j`.
    pub fn root(f: &Arc<CycField>, j: i64) -> Self {
        let k = j.rem_euclid(f.m as i64) as usize;
        Cyc {
            field: f.clone(),
            num: f.pow_table[k].iter().map(|&x| Int::from(x)).collect(),
            den: Int::one(),
        }
    }

    pub fn from_group_ring(f: &Arc<CycField>, c: &[Rat]) -> Self {
        let d = crate::arith::common_den(c);
        let mut num = vec![Int::zero(); f.phi];
        for (j, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xi = (x * rint(&d)).to_integer();
            for (i, t) in f.pow_table[j % f.m as usize].iter().enumerate() {
                if *t != 0 {
                    num[i] += &xi * Int::from(*t);
                }
            }
        }
        Cyc { field: f.clone(), num, den: d }.normalized()
    }

    fn normalized(mut self) -> Self {
        let g = gcd_all(self.num.iter()).gcd(&self.den);
        if g.is_zero() {
            self.den = Int::one();
            return self;
        }
        let g = if self.den.is_negative() { -g } else { g };
        if !g.is_one() {
            for x in self.num.iter_mut() {
                *x = &*x / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        self.num.iter().map(|x| Rat::new(x.clone(), self.den.clone())).collect()
    }

    /// Rational value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rat> {
        let m = self.minimal();
        if m.field.m <= 2 {
            Some(Rat::new(m.num[0].clone(), m.den.clone()))
        } else {
            None
        }
    }

    fn align(&self, o: &Self) -> (Self, Self) {
        if self.field.m == o.field.m {
            return (self.clone(), o.clone());
        }
        let m = crate::arith::lcm_u64(self.field.m, o.field.m);
        let f = if m == self.field.m {
            self.field.clone()
        } else if m == o.field.m {
            o.field.clone()
        } else {
            CycField::new(m)
        };
        (self.lift(&f), o.lift(&f))
    }

    /// Image in a larger cyclotomic field ℚ(ζ_M), `m | M`.
    pub fn lift(&self, f: &Arc<CycField>) -> Self {
        if f.m == self.field.m {
            return self.clone();
        }
        assert!(f.m % self.field.m == 0, "conductor must divide");
        let step = (f.m / self.field.m) as usize;
        let mut num = vec![Int::zero(); f.phi];
        for (j, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, t) in f.pow_table[(j * step) % f.m as usize].iter().enumerate() {
                if *t != 0 {
                    num[i] += x * Int::from(*t);
                }
            }
        }
        Cyc { field: f.clone(), num, den: self.den.clone() }.normalized()
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den;
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &fa + y * &fb).collect();
        Cyc { field: a.field, num, den: l }.normalized()
    }

    pub fn neg(&self) -> Self {
        Cyc { field: self.field.clone(), num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, q: &Rat) -> Self {
        Cyc {
            field: self.field.clone(),
            num: self.num.iter().map(|x| x * q.numer()).collect(),
            den: &self.den * q.denom(),
        }
        .normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.align(o);
        let f = &a.field;
        let n = f.phi;
        let mut conv = vec![Int::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<Int> = conv[..n].to_vec();
        for (k, c) in conv.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (i, t) in f.pow_table[k % f.m as usize].iter().enumerate() {
                if *t != 0 {
                    num[i] += c * Int::from(*t);
                }
            }
        }
        Cyc { field: f.clone(), num, den: &a.den * &b.den }.normalized()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Cyc::one(&self.field);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Matrix of multiplication (columns = images of basis powers).
    fn mult_matrix(&self) -> Vec<Vec<Rat>> {
        let n = self.field.phi;
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|j| self.mul(&Cyc::root(&self.field, j as i64)).coeffs())
            .collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let inv = qinverse(&self.mult_matrix())?;
        let col: Vec<Rat> = inv.iter().map(|r| r[0].clone()).collect();
        let d = crate::arith::common_den(&col);
        let num = col.iter().map(|x| (x * rint(&d)).to_integer()).collect();
        Some(Cyc { field: self.field.clone(), num, den: d }.normalized())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    /// Galois automorphism `ζ ↦ ζ^a`, `gcd(a, m) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let f = &self.field;
        let mut num = vec![Int::zero(); f.phi];
        for (j, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let k = ((j as i64 * a).rem_euclid(f.m as i64)) as usize;
            for (i, t) in f.pow_table[k].iter().enumerate() {
                if *t != 0 {
                    num[i] += x * Int::from(*t);
                }
            }
        }
        Cyc { field: f.clone(), num, den: self.den.clone() }.normalized()
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Complex value `(re, im)` under ζ_m ↦ e^{2πi/m}.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.m as f64;
        let d = crate::arith::rat_to_f64(&Rat::new(Int::one(), self.den.clone()));
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xf = x.to_f64().unwrap_or(f64::NAN) * d;
            let ang = 2.0 * PI * j as f64 / m;
            re += xf * libm::cos(ang);
            im += xf * libm::sin(ang);
        }
        (re, im)
    }

    /// Same value in the smallest cyclotomic field containing it, found by
    /// removing one prime from the conductor at a time.
    pub fn minimal(&self) -> Self {
        let mut cur = self.clone();
        'descend: loop {
            let m = cur.field.m;
            for (p, _) in factor_u64(m) {
                if let Some(c) = cur.descend(m / p, p) {
                    cur = c;
                    continue 'descend;
                }
            }
            return cur;
        }
    }

    /// Coordinates in `ℚ(ζ_d)`, `m = pd`, when the value lies there.
    fn descend(&self, d: u64, p: u64) -> Option<Self> {
        let fd = CycField::new(d);
        let pu = p as usize;
        if d % p == 0 {
            // ζ_m^{pi + j}, j < p, is a basis over ℚ(ζ_d)
            let mut num = vec![Int::zero(); fd.phi];
            for (k, c) in self.num.iter().enumerate() {
                if k % pu == 0 {
                    num[k / pu] = c.clone();
                } else if !c.is_zero() {
                    return None;
                }
            }
            return Some(Cyc { field: fd, num, den: self.den.clone() }.normalized());
        }
        // ζ_m = ζ_d^a ζ_p^b; 1, ζ_p, …, ζ_p^{p−2} is a basis over ℚ(ζ_d)
        let a = (0..d).find(|a| (a * p) % d == 1 % d).unwrap();
        let b = (0..p).find(|b| (b * d) % p == 1).unwrap();
        let mut y = vec![vec![rzero(); d as usize]; pu - 1];
        let den = Rat::from_integer(self.den.clone());
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u64;
            let i = ((a * k) % d) as usize;
            let j = ((b * k) % p) as usize;
            let c = Rat::from_integer(c.clone()) / &den;
            if j == pu - 1 {
                for row in y.iter_mut() {
                    row[i] -= &c;
                }
            } else {
                y[j][i] += c;
            }
        }
        if y[1..].iter().any(|row| !Cyc::from_group_ring(&fd, row).is_zero()) {
            return None;
        }
        Some(Cyc::from_group_ring(&fd, &y[0]))
    }

    /// Canonical text: minimal conductor and power-basis coefficients.
    pub fn to_text(&self) -> String {
        let c = self.minimal();
        let mut s = String::new();
        let mut first = true;
        for (j, x) in c.coeffs().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                s.push_str(if x.is_negative() { " - " } else { " + " });
            } else if x.is_negative() {
                s.push('-');
            }
            first = false;
            let ax = x.abs();
            match j {
                0 => s.push_str(&format!("{ax}")),
                1 => s.push_str(&format!("{ax}*z{}", c.field.m)),
                _ => s.push_str(&format!("{ax}*z{}^{j}", c.field.m)),
            }
        }
        if first {
            s.push('0');
        }
        s
    }
}


/// Accumulator in the group ring ℚ[ℤ/m] before reduction modulo Φ_m.
#[derive(Clone, Debug)]
pub struct GroupRing {
    pub m: u64,
    pub c: Vec<Rat>,
}

impl GroupRing {
    pub fn new(m: u64) -> Self {
        GroupRing { m, c: vec![rzero(); m as usize] }
    }

    pub fn add_term(&mut self, j: i64, q: &Rat) {
        let k = j.rem_euclid(self.m as i64) as usize;
        self.c[k] += q;
    }

    pub fn to_cyc(&self, f: &Arc<CycField>) -> Cyc {
        assert_eq!(f.m, self.m);
        Cyc::from_group_ring(f, &self.c)
    }
}

pub fn phi_of(m: u64) -> u64 {
    phi(m)
}
