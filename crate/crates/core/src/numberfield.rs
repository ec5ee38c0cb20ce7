//! Totally real number fields given by a monic integer polynomial and an
//! integral basis, with exact arithmetic and certified real embeddings.

use crate::arith::{common_den, int, is_square, rat, rat_to_f64, rint, rone, rzero, Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{qdet, qinverse, qmatvec, QMat};
use crate::modp;
use crate::poly::{interval, isolate_real_roots, refine_to, tarski_query, Poly};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Element of a number field, as rational coordinates in the integral basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub Vec<Rat>);

impl FieldElement {
    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldElement(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldElement(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        FieldElement(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        FieldElement(self.0.iter().map(|a| a * s).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        FieldElement(v.iter().map(|&x| rat(x, 1)).collect())
    }

    /// Integer coordinates, if integral.
    pub fn int_coords(&self) -> Option<Vec<Int>> {
        self.0
            .iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct NumberField {
    degree: usize,
    min_poly: Vec<Int>,
    fpoly: Poly,
    /// `basis_pow[i]`: power-basis coordinates of ω_i.
    basis_pow: Vec<Vec<Rat>>,
    /// `pow_basis[j]`: basis coordinates of θ^j.
    pow_basis: Vec<Vec<Rat>>,
    /// `mult[i][j][k]`: coefficient of ω_k in ω_i ω_j.
    mult: Vec<Vec<Vec<Int>>>,
    traces: Vec<Int>,
    trace_form: Vec<Vec<Int>>,
    disc: Int,
    poly_disc: Int,
    roots: Vec<(Rat, Rat)>,
    emb: Vec<Vec<f64>>,
}

const ROOT_BITS: u32 = 160;

impl NumberField {
    /// The field ℚ.
    pub fn rationals() -> Self {
        Self::new(&[int(0), int(1)], None).expect("x is irreducible")
    }

    /// Construct from a monic integer polynomial (low to high) and an optional
    /// integral basis given as rows of power-basis coordinates.
    pub fn new(min_poly: &[Int], basis: Option<QMat>) -> Result<Self> {
        let mut mp = min_poly.to_vec();
        while mp.last().is_some_and(|c| c.is_zero()) {
            mp.pop();
        }
        if mp.len() < 2 {
            return Err(Error::Reducible("constant polynomial".into()));
        }
        if !mp.last().unwrap().is_one() {
            return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
        }
        let g = mp.len() - 1;
        let f = Poly::from_ints(&mp);
        if f.gcd(&f.derivative()).degree() > 0 {
            return Err(Error::Reducible("polynomial is not squarefree".into()));
        }
        let roots = isolate_real_roots(&f);
        if roots.len() != g {
            return Err(Error::NotTotallyReal);
        }
        check_irreducible(&mp)?;
        let roots: Vec<(Rat, Rat)> = roots.iter().map(|(a, b)| refine_to(&f, a, b, ROOT_BITS)).collect();
        let basis_pow = match basis {
            Some(b) => {
                if b.len() != g || b.iter().any(|r| r.len() != g) {
                    return Err(Error::BadBasis(format!("basis must be {g} x {g}")));
                }
                b
            }
            None => default_basis(&mp)?,
        };
        let pow_basis_t = qinverse(&crate::linalg::transpose(&basis_pow))
            .ok_or_else(|| Error::BadBasis("basis is singular".into()))?;
        // column j of pow_basis_t gives basis coordinates of θ^j
        let pow_basis: Vec<Vec<Rat>> = (0..g).map(|j| pow_basis_t.iter().map(|r| r[j].clone()).collect()).collect();
        let mut nf = NumberField {
            degree: g,
            min_poly: mp.clone(),
            fpoly: f,
            basis_pow,
            pow_basis,
            mult: Vec::new(),
            traces: Vec::new(),
            trace_form: Vec::new(),
            disc: Int::zero(),
            poly_disc: Int::zero(),
            roots,
            emb: Vec::new(),
        };
        nf.init_structure()?;
        Ok(nf)
    }

    fn init_structure(&mut self) -> Result<()> {
        let g = self.degree;
        let mut mult = vec![vec![vec![Int::zero(); g]; g]; g];
        for i in 0..g {
            for j in 0..g {
                let a = Poly::new(self.basis_pow[i].clone());
                let b = Poly::new(self.basis_pow[j].clone());
                let prod = a.mul(&b).rem(&self.fpoly);
                let pc: Vec<Rat> = (0..g).map(|k| prod.coeff(k)).collect();
                let bc = self.power_to_basis(&pc);
                for k in 0..g {
                    if !bc[k].is_integer() {
                        return Err(Error::BadBasis("basis is not closed under multiplication".into()));
                    }
                    mult[i][j][k] = bc[k].to_integer();
                }
            }
        }
        self.mult = mult;
        let one = self.power_to_basis(&{
            let mut v = vec![rzero(); g];
            v[0] = rone();
            v
        });
        if one.iter().any(|c| !c.is_integer()) {
            return Err(Error::BadBasis("1 is not in the span of the basis".into()));
        }
        self.traces = (0..g)
            .map(|k| (0..g).fold(Int::zero(), |s, j| s + &self.mult[k][j][j]))
            .collect();
        let mut tf = vec![vec![Int::zero(); g]; g];
        for i in 0..g {
            for j in 0..g {
                tf[i][j] = (0..g).fold(Int::zero(), |s, k| s + &self.mult[i][j][k] * &self.traces[k]);
            }
        }
        self.disc = crate::linalg::zdet(&tf);
        self.trace_form = tf;
        self.poly_disc = poly_discriminant(&self.min_poly);
        if self.disc.is_zero() {
            return Err(Error::BadBasis("degenerate trace form".into()));
        }
        let (q, r) = self.poly_disc.div_rem(&self.disc);
        if !r.is_zero() || !is_square(&q) {
            return Err(Error::BadBasis(
                "trace-form determinant is incompatible with the polynomial discriminant".into(),
            ));
        }
        self.emb = (0..g)
            .map(|t| {
                (0..g)
                    .map(|i| {
                        let iv = self.embed_interval_pow(&self.basis_pow[i], t, ROOT_BITS);
                        rat_to_f64(&((&iv.0 + &iv.1) / rat(2, 1)))
                    })
                    .collect()
            })
            .collect();
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &[Int] {
        &self.min_poly
    }

    pub fn poly(&self) -> &Poly {
        &self.fpoly
    }

    pub fn discriminant(&self) -> &Int {
        &self.disc
    }

    /// Index of `ℤ[θ]` in the order spanned by the basis.
    pub fn index(&self) -> Int {
        (&self.poly_disc / &self.disc).sqrt()
    }

    pub fn trace_form(&self) -> &Vec<Vec<Int>> {
        &self.trace_form
    }

    pub fn basis_power_coords(&self) -> &Vec<Vec<Rat>> {
        &self.basis_pow
    }

    /// Canonical textual identity, used for cache keys.
    pub fn id(&self) -> String {
        let mut s = String::from("f=");
        for c in &self.min_poly {
            s.push_str(&format!("{c},"));
        }
        s.push_str(";b=");
        for r in &self.basis_pow {
            for c in r {
                s.push_str(&format!("{c},"));
            }
            s.push('|');
        }
        s
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![rzero(); self.degree])
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat(&rone())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rat(&rat(n, 1))
    }

    pub fn from_rat(&self, q: &Rat) -> FieldElement {
        let mut v = vec![rzero(); self.degree];
        v[0] = q.clone();
        FieldElement(self.power_to_basis(&v))
    }

    /// The generator θ (root of the minimal polynomial).
    pub fn theta(&self) -> FieldElement {
        if self.degree == 1 {
            return self.from_rat(&-rint(&self.min_poly[0]));
        }
        let mut v = vec![rzero(); self.degree];
        v[1] = rone();
        FieldElement(self.power_to_basis(&v))
    }

    /// Basis element ω_i.
    pub fn basis_element(&self, i: usize) -> FieldElement {
        let mut v = vec![rzero(); self.degree];
        v[i] = rone();
        FieldElement(v)
    }

    pub fn power_to_basis(&self, pc: &[Rat]) -> Vec<Rat> {
        let g = self.degree;
        let mut out = vec![rzero(); g];
        for (j, c) in pc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..g {
                out[i] += c * &self.pow_basis[j][i];
            }
        }
        out
    }

    pub fn to_power(&self, a: &FieldElement) -> Vec<Rat> {
        let g = self.degree;
        let mut out = vec![rzero(); g];
        for (i, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..g {
                out[j] += c * &self.basis_pow[i][j];
            }
        }
        out
    }

    pub fn from_power(&self, pc: &[Rat]) -> FieldElement {
        let p = Poly::new(pc.to_vec()).rem(&self.fpoly);
        let v: Vec<Rat> = (0..self.degree).map(|k| p.coeff(k)).collect();
        FieldElement(self.power_to_basis(&v))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let g = self.degree;
        let mut out = vec![rzero(); g];
        for i in 0..g {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..g {
                if b.0[j].is_zero() {
                    continue;
                }
                let ab = &a.0[i] * &b.0[j];
                for k in 0..g {
                    let m = &self.mult[i][j][k];
                    if !m.is_zero() {
                        out[k] += &ab * rint(m);
                    }
                }
            }
        }
        FieldElement(out)
    }

    /// Matrix of multiplication by `a`: column j holds the coordinates of `a ω_j`.
    pub fn mult_matrix(&self, a: &FieldElement) -> QMat {
        let g = self.degree;
        let cols: Vec<Vec<Rat>> = (0..g).map(|j| self.mul(a, &self.basis_element(j)).0).collect();
        (0..g).map(|k| (0..g).map(|j| cols[j][k].clone()).collect()).collect()
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        let m = self.mult_matrix(a);
        let one = self.one();
        let inv = qinverse(&m).ok_or(Error::NotInField)?;
        Ok(FieldElement(qmatvec(&inv, &one.0)))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut r = self.one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        Ok(r)
    }

    pub fn trace(&self, a: &FieldElement) -> Rat {
        a.0.iter().zip(&self.traces).fold(rzero(), |s, (c, t)| s + c * rint(t))
    }

    pub fn norm(&self, a: &FieldElement) -> Rat {
        qdet(&self.mult_matrix(a))
    }

    pub fn is_integral(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|c| c.is_integer())
    }

    /// Approximate real embeddings, ascending τ order.
    pub fn embed_f64(&self, a: &FieldElement) -> Vec<f64> {
        self.emb
            .iter()
            .map(|row| row.iter().zip(&a.0).map(|(w, c)| w * rat_to_f64(c)).sum())
            .collect()
    }

    /// `basis_f64()[τ][i] = ω_i^τ`.
    pub fn basis_f64(&self) -> &Vec<Vec<f64>> {
        &self.emb
    }

    fn root_interval(&self, t: usize, bits: u32) -> (Rat, Rat) {
        let (lo, hi) = &self.roots[t];
        if bits <= ROOT_BITS {
            (lo.clone(), hi.clone())
        } else {
            refine_to(&self.fpoly, lo, hi, bits)
        }
    }

    fn embed_interval_pow(&self, pc: &[Rat], t: usize, bits: u32) -> (Rat, Rat) {
        let iv = self.root_interval(t, bits);
        interval::eval(&Poly::new(pc.to_vec()), &iv)
    }

    /// Rational interval containing `a^{τ_t}`.
    pub fn embed_interval(&self, a: &FieldElement, t: usize, bits: u32) -> (Rat, Rat) {
        self.embed_interval_pow(&self.to_power(a), t, bits)
    }

    /// Exact sign of `a^{τ_t}`.
    pub fn sign(&self, a: &FieldElement, t: usize) -> i8 {
        if a.is_zero() {
            return 0;
        }
        let pc = self.to_power(a);
        let mut bits = 64;
        while bits <= 1024 {
            if let Some(s) = interval::sign(&self.embed_interval_pow(&pc, t, bits)) {
                return s;
            }
            bits *= 2;
        }
        let (lo, hi) = &self.roots[t];
        let q = tarski_query(&self.fpoly, &Poly::new(pc), lo, hi);
        q.signum() as i8
    }

    pub fn signs(&self, a: &FieldElement) -> Vec<i8> {
        (0..self.degree).map(|t| self.sign(a, t)).collect()
    }

    pub fn is_totally_positive(&self, a: &FieldElement) -> bool {
        (0..self.degree).all(|t| self.sign(a, t) > 0)
    }

    /// Exact sign of a real polynomial expression in the embeddings is rarely
    /// needed; this certifies the sign of a determinant of embedded elements
    /// for `g ≤ 3` by interval arithmetic with increasing precision.
    pub fn sign_det(&self, cols: &[FieldElement]) -> Result<i8> {
        let rows: Vec<usize> = (0..cols.len()).collect();
        self.sign_det_rows(cols, &rows)
    }

    /// Sign of `det(c_j^{τ_i})` for the embeddings `τ_i` listed in `rows`.
    pub fn sign_det_rows(&self, cols: &[FieldElement], rows: &[usize]) -> Result<i8> {
        if cols.is_empty() {
            return Ok(1);
        }
        let pcs: Vec<Vec<Rat>> = cols.iter().map(|c| self.to_power(c)).collect();
        let mut bits = 64;
        while bits <= 4096 {
            let m: Vec<Vec<(Rat, Rat)>> = rows
                .iter()
                .map(|&t| pcs.iter().map(|pc| self.embed_interval_pow(pc, t, bits)).collect())
                .collect();
            let d = interval_det(&m);
            if let Some(s) = interval::sign(&d) {
                if s != 0 || d.0 == d.1 {
                    return Ok(s);
                }
            }
            bits *= 2;
        }
        Err(Error::Precision("could not certify the sign of a determinant".into()))
    }

    /// Images of θ under the automorphisms `s_t` with `τ_1 ∘ s_t = τ_t`, if
    /// the field is Galois over ℚ.
    pub fn galois_conjugates(&self) -> Option<Vec<FieldElement>> {
        let g = self.degree;
        let theta_emb: Vec<f64> = (0..g)
            .map(|t| {
                let (lo, hi) = &self.roots[t];
                rat_to_f64(&((lo + hi) / rat(2, 1)))
            })
            .collect();
        // y = Σ c_i θ^i with τ_1(y) = θ_t, solved through the Vandermonde system
        // in all embeddings: τ_u(y) = θ_{π(u)} for the permutation induced by s_t
        let mut out = Vec::new();
        for t in 0..g {
            let mut found = None;
            for perm in permutations(g) {
                if perm[0] != t {
                    continue;
                }
                let target: Vec<f64> = perm.iter().map(|&u| theta_emb[u]).collect();
                let Some(coef) = solve_vandermonde(&theta_emb, &target) else { continue };
                let d = self.index().to_i64().unwrap_or(1).max(1) * 64;
                let cand: Vec<Rat> = coef
                    .iter()
                    .map(|c| Rat::new(Int::from(libm::round(c * d as f64) as i64), Int::from(d)))
                    .collect();
                let y = self.from_power(&cand);
                // exact check: f(y) = 0 and τ_1(y) ≈ θ_t
                let fy = self.eval_min_poly(&y);
                if fy.is_zero() {
                    let e = self.embed_f64(&y);
                    if (e[0] - theta_emb[t]).abs() < 1e-6 {
                        found = Some(y);
                        break;
                    }
                }
            }
            out.push(found?);
        }
        Some(out)
    }

    fn eval_min_poly(&self, y: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for c in self.min_poly.iter().rev() {
            acc = self.mul(&acc, y).add(&self.from_rat(&rint(c)));
        }
        acc
    }

    /// Apply the automorphism sending θ to `img`.
    pub fn apply_automorphism(&self, img: &FieldElement, a: &FieldElement) -> FieldElement {
        let pc = self.to_power(a);
        let mut acc = self.zero();
        for c in pc.iter().rev() {
            acc = self.mul(&acc, img).add(&self.from_rat(c));
        }
        acc
    }

    /// Coordinates of `a` scaled to integers: `(den, ints)`.
    pub fn integral_scaling(&self, a: &FieldElement) -> (Int, Vec<Int>) {
        let d = common_den(&a.0);
        let v = a.0.iter().map(|c| (c * rint(&d)).to_integer()).collect();
        (d, v)
    }

    /// Structure constants `ω_i ω_j = Σ_k c_ijk ω_k`.
    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Int>>> {
        &self.mult
    }

    /// Trace of each basis element.
    pub fn basis_traces(&self) -> &Vec<Int> {
        &self.traces
    }
}

fn interval_det(m: &[Vec<(Rat, Rat)>]) -> (Rat, Rat) {
    let g = m.len();
    match g {
        0 => interval::point(rone()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = interval::point(rzero());
            for j in 0..g {
                let minor: Vec<Vec<(Rat, Rat)>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = interval::mul(&m[0][j], &interval_det(&minor));
                acc = if j % 2 == 0 { interval::add(&acc, &t) } else { interval::sub(&acc, &t) };
            }
            acc
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn solve_vandermonde(x: &[f64], y: &[f64]) -> Option<Vec<f64>> {
    let n = x.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r: Vec<f64> = (0..n).map(|j| libm_pow(x[i], j)).collect();
            r.push(y[i]);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        a.swap(p, c);
        if a[c][c].abs() < 1e-300 {
            return None;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..=n {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

fn libm_pow(x: f64, j: usize) -> f64 {
    let mut r = 1.0;
    for _ in 0..j {
        r *= x;
    }
    r
}

/// Discriminant of a monic polynomial via the resultant with its derivative.
pub fn poly_discriminant(c: &[Int]) -> Int {
    let f = Poly::from_ints(c);
    let n = f.degree();
    if n <= 1 {
        return Int::one();
    }
    let fp = f.derivative();
    let res = resultant(&f, &fp);
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    (res * rat(sign, 1)).to_integer()
}

/// Resultant of two polynomials over ℚ via the Euclidean algorithm.
pub fn resultant(a: &Poly, b: &Poly) -> Rat {
    if a.is_zero() || b.is_zero() {
        return rzero();
    }
    let (da, db) = (a.degree(), b.degree());
    if db == 0 {
        let mut r = rone();
        for _ in 0..da {
            r *= b.lead();
        }
        return r;
    }
    let r = a.rem(b);
    if r.is_zero() {
        return rzero();
    }
    let dr = r.degree();
    // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
    let mut s = resultant(b, &r);
    for _ in 0..(da - dr) {
        s *= b.lead();
    }
    if (da * db) % 2 == 1 {
        s = -s;
    }
    s
}

fn default_basis(mp: &[Int]) -> Result<QMat> {
    let g = mp.len() - 1;
    match g {
        1 => Ok(vec![vec![rone()]]),
        2 => {
            // x^2 + b x + c with discriminant D = m^2 d, d squarefree
            let b = &mp[1];
            let c = &mp[0];
            let d0: Int = b * b - Int::from(4) * c;
            let (m, d) = squarefree_split(&d0);
            // s = (2θ + b)/m satisfies s^2 = d
            let s_pow = [rint(b) / rint(&m), rat(2, 1) / rint(&m)];
            let omega = if d.mod_floor(&Int::from(4)) == Int::one() {
                vec![(rone() + &s_pow[0]) / rat(2, 1), &s_pow[1] / rat(2, 1)]
            } else {
                s_pow.to_vec()
            };
            Ok(vec![vec![rone(), rzero()], omega])
        }
        _ => Err(Error::BadBasis(format!("an explicit integral basis is required in degree {g}"))),
    }
}

/// `n = m^2 d` with `d` squarefree (sign kept in `d`).
pub fn squarefree_split(n: &Int) -> (Int, Int) {
    let mut d = n.abs();
    let mut m = Int::one();
    let mut p = Int::from(2);
    while &p * &p <= d {
        let pp = &p * &p;
        while (&d % &pp).is_zero() {
            d /= &pp;
            m *= &p;
        }
        p += 1;
    }
    if n.is_negative() {
        d = -d;
    }
    (m, d)
}

fn check_irreducible(mp: &[Int]) -> Result<()> {
    let g = mp.len() - 1;
    if g == 1 {
        return Ok(());
    }
    // integer roots divide the constant term
    let c0 = mp[0].abs();
    if c0.is_zero() {
        return Err(Error::Reducible("x divides the polynomial".into()));
    }
    let f = Poly::from_ints(mp);
    if c0.bits() <= 40 {
        let c = c0.to_u64().unwrap();
        let mut dv = 1u64;
        while dv * dv <= c {
            if c % dv == 0 {
                for r in [dv, c / dv] {
                    for s in [1i64, -1] {
                        if f.eval(&rat(s * r as i64, 1)).is_zero() {
                            return Err(Error::Reducible(format!("rational root {}", s * r as i64)));
                        }
                    }
                }
            }
            dv += 1;
        }
    } else {
        return Err(Error::Unsupported("constant term too large".into()));
    }
    if g <= 3 {
        return Ok(());
    }
    // degree patterns modulo small primes
    let small: Option<Vec<i64>> = mp.iter().map(|c| c.to_i64()).collect();
    let Some(small) = small else {
        return Err(Error::Unsupported("coefficients too large".into()));
    };
    let mut possible = vec![true; g + 1];
    for p in crate::arith::primes_up_to(400) {
        let fp = modp::reduce(&small, p);
        if fp.len() != g + 1 {
            continue;
        }
        let Some(pat) = modp::ddf_degrees(&fp, p) else { continue };
        let mut sums = vec![false; g + 1];
        sums[0] = true;
        for d in pat {
            for s in (d..=g).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=g {
            possible[k] &= sums[k];
        }
        if (1..g).all(|k| !possible[k]) {
            return Ok(());
        }
    }
    Err(Error::Reducible("could not certify irreducibility".into()))
}
