//! Fractional ideals as full-rank lattices in canonical `(den, HNF)` form.

use crate::arith::{common_den, gcd_all, rint, rzero, Int, Rat};
use crate::error::{Error, Result};
use crate::linalg::{hnf_columns, hnf_coords, hnf_reduce, hnf_residues, qinverse, qmatvec, to_q, transpose};
use crate::numberfield::{FieldElement, NumberField};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `𝔞 = den⁻¹ · span_ℤ(cols)`, with `cols` an upper triangular HNF basis in
/// integral-basis coordinates and `gcd(den, entries) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalIdeal {
    den: Int,
    cols: Vec<Vec<Int>>,
}

impl FractionalIdeal {
    fn normalize(den: Int, cols: Vec<Vec<Int>>) -> Self {
        let g = gcd_all(cols.iter().flatten()).gcd(&den);
        if g.is_one() {
            return FractionalIdeal { den, cols };
        }
        FractionalIdeal {
            den: &den / &g,
            cols: cols.into_iter().map(|c| c.into_iter().map(|x| x / &g).collect()).collect(),
        }
    }

    /// ℤ-span of the given elements (must have full rank).
    pub fn from_lattice(nf: &NumberField, gens: &[FieldElement]) -> Result<Self> {
        let n = nf.degree();
        let mut all: Vec<Rat> = Vec::new();
        for g in gens {
            all.extend(g.0.iter().cloned());
        }
        let d = common_den(&all);
        let vecs: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| g.0.iter().map(|c| (c * rint(&d)).to_integer()).collect())
            .collect();
        let h = hnf_columns(&vecs, n).ok_or(Error::ZeroIdeal)?;
        Ok(Self::normalize(d, h))
    }

    /// The 𝒪_F-module generated by `gens`.
    pub fn from_generators(nf: &NumberField, gens: &[FieldElement]) -> Result<Self> {
        let n = nf.degree();
        let mut all = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            for j in 0..n {
                all.push(nf.mul(g, &nf.basis_element(j)));
            }
        }
        if all.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Self::from_lattice(nf, &all)
    }

    pub fn principal(nf: &NumberField, x: &FieldElement) -> Result<Self> {
        Self::from_generators(nf, core::slice::from_ref(x))
    }

    pub fn unit(nf: &NumberField) -> Self {
        Self::principal(nf, &nf.one()).expect("1 is nonzero")
    }

    pub fn den(&self) -> &Int {
        &self.den
    }

    /// HNF basis columns of `den · 𝔞`.
    pub fn hnf(&self) -> &Vec<Vec<Int>> {
        &self.cols
    }

    /// HNF as row-major matrix (for serialization).
    pub fn hnf_rows(&self) -> Vec<Vec<Int>> {
        transpose(&self.cols)
    }

    pub fn degree(&self) -> usize {
        self.cols.len()
    }

    /// ℤ-basis `b_j = cols[j] / den`.
    pub fn basis(&self) -> Vec<FieldElement> {
        self.cols
            .iter()
            .map(|c| FieldElement(c.iter().map(|x| Rat::new(x.clone(), self.den.clone())).collect()))
            .collect()
    }

    /// Norm `[𝒪 : 𝔞]` as a positive rational.
    pub fn norm(&self) -> Rat {
        let mut d = Int::one();
        for (i, c) in self.cols.iter().enumerate() {
            d *= &c[i];
        }
        let mut den = Int::one();
        for _ in 0..self.cols.len() {
            den *= &self.den;
        }
        Rat::new(d, den)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit(&self) -> bool {
        self.den.is_one() && self.cols.iter().enumerate().all(|(i, c)| c[i].is_one())
    }

    /// Rational coordinates of `x` in the HNF basis.
    pub fn coords(&self, x: &FieldElement) -> Vec<Rat> {
        let n = self.cols.len();
        let scaled: Vec<Rat> = x.0.iter().map(|c| c * rint(&self.den)).collect();
        let mut r = scaled;
        let mut out = vec![rzero(); n];
        for j in (0..n).rev() {
            let q = &r[j] / rint(&self.cols[j][j]);
            for i in 0..=j {
                r[i] -= &q * rint(&self.cols[j][i]);
            }
            out[j] = q;
        }
        out
    }

    /// Integer coordinates of `x` if `x ∈ 𝔞`.
    pub fn int_coords(&self, x: &FieldElement) -> Option<Vec<Int>> {
        self.coords(x)
            .into_iter()
            .map(|c| if c.is_integer() { Some(c.to_integer()) } else { None })
            .collect()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.int_coords(x).is_some()
    }

    pub fn element(&self, c: &[Int]) -> FieldElement {
        let b = self.basis();
        let mut acc = FieldElement(vec![rzero(); b.len()]);
        for (ci, bi) in c.iter().zip(&b) {
            if !ci.is_zero() {
                acc = acc.add(&bi.scale(&rint(ci)));
            }
        }
        acc
    }

    pub fn multiply(&self, nf: &NumberField, o: &Self) -> Self {
        let a = self.basis();
        let b = o.basis();
        let mut gens = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                gens.push(nf.mul(x, y));
            }
        }
        Self::from_lattice(nf, &gens).expect("product of nonzero ideals")
    }

    pub fn add(&self, nf: &NumberField, o: &Self) -> Self {
        let mut gens = self.basis();
        gens.extend(o.basis());
        Self::from_lattice(nf, &gens).expect("sum of nonzero ideals")
    }

    pub fn scale(&self, nf: &NumberField, x: &FieldElement) -> Result<Self> {
        let gens: Vec<FieldElement> = self.basis().iter().map(|b| nf.mul(b, x)).collect();
        Self::from_lattice(nf, &gens)
    }

    pub fn scale_rat(&self, q: &Rat) -> Self {
        let num = q.numer().clone();
        let den = &self.den * q.denom();
        let cols: Vec<Vec<Int>> = self.cols.iter().map(|c| c.iter().map(|x| x * &num).collect()).collect();
        // multiplying an HNF by a positive scalar keeps it in HNF up to reduction of signs
        let cols = if num < Int::zero() {
            hnf_columns(&cols, cols.len()).unwrap()
        } else {
            cols
        };
        Self::normalize(den, cols)
    }

    /// Dual lattice under the trace pairing.
    pub fn dual(&self, nf: &NumberField) -> Self {
        let b = to_q(&transpose(&self.cols));
        // B^T T with B columns = basis coordinates
        let bq: Vec<Vec<Rat>> = b.iter().map(|r| r.iter().map(|x| x / rint(&self.den)).collect()).collect();
        let bt = transpose(&bq);
        let t = to_q(nf.trace_form());
        let m = crate::linalg::qmul(&bt, &t);
        let c = qinverse(&m).expect("nondegenerate trace form");
        let n = nf.degree();
        let gens: Vec<FieldElement> = (0..n).map(|j| FieldElement(c.iter().map(|r| r[j].clone()).collect())).collect();
        Self::from_lattice(nf, &gens).expect("dual has full rank")
    }

    pub fn invert(&self, nf: &NumberField) -> Self {
        let codiff = Self::unit(nf).dual(nf);
        self.multiply(nf, &codiff).dual(nf)
    }

    pub fn pow(&self, nf: &NumberField, e: i64) -> Self {
        let base = if e < 0 { self.invert(nf) } else { self.clone() };
        let mut r = Self::unit(nf);
        for _ in 0..e.unsigned_abs() {
            r = r.multiply(nf, &base);
        }
        r
    }

    /// `self ⊆ o`.
    pub fn is_subset(&self, o: &Self) -> bool {
        self.basis().iter().all(|b| o.contains(b))
    }

    /// Positive generator of `𝔞 ∩ ℚ`.
    pub fn rational_generator(&self, nf: &NumberField) -> Rat {
        // 1 ∈ F; find the smallest positive q with q·1 ∈ 𝔞
        let c = self.coords(&nf.one());
        let d = common_den(&c);
        let nums: Vec<Int> = c.iter().map(|x| (x * rint(&d)).to_integer()).collect();
        let g = gcd_all(nums.iter());
        // q·c integral iff d/gcd(d, ...) divides q appropriately
        Rat::new(d, g)
    }

    /// Smallest positive integer in `𝔞` (for integral `𝔞`).
    pub fn min_integer(&self, nf: &NumberField) -> Int {
        let q = self.rational_generator(nf);
        q.numer().clone()
    }

    pub fn is_coprime(&self, nf: &NumberField, o: &Self) -> bool {
        self.add(nf, o).is_unit()
    }
}

/// The different ideal 𝔇_F.
pub fn different_ideal(nf: &NumberField) -> FractionalIdeal {
    FractionalIdeal::unit(nf).dual(nf).invert(nf)
}

/// Coset representatives of `𝔞 / 𝔤𝔞` with reduction to canonical form.
#[derive(Clone, Debug)]
pub struct ResidueSystem {
    pub ideal: FractionalIdeal,
    pub modulus: FractionalIdeal,
    /// HNF basis of `𝔤𝔞` in coordinates of the basis of `𝔞`.
    sub: Vec<Vec<Int>>,
}

impl ResidueSystem {
    pub fn new(nf: &NumberField, a: &FractionalIdeal, g: &FractionalIdeal) -> Result<Self> {
        if !g.is_integral() {
            return Err(Error::NotIntegral);
        }
        let ga = g.multiply(nf, a);
        let vecs: Vec<Vec<Int>> = ga
            .basis()
            .iter()
            .map(|b| a.int_coords(b).expect("g a inside a"))
            .collect();
        let sub = hnf_columns(&vecs, nf.degree()).ok_or(Error::ZeroIdeal)?;
        Ok(ResidueSystem { ideal: a.clone(), modulus: g.clone(), sub })
    }

    pub fn size(&self) -> Int {
        self.sub.iter().enumerate().fold(Int::one(), |s, (i, c)| s * &c[i])
    }

    /// Canonical residue coordinates (in the basis of `𝔞`) of an element of `𝔞`.
    pub fn reduce_coords(&self, c: &[Int]) -> Vec<Int> {
        hnf_reduce(&self.sub, c)
    }

    pub fn reduce(&self, x: &FieldElement) -> Result<Vec<Int>> {
        let c = self.ideal.int_coords(x).ok_or(Error::NotInIdeal)?;
        Ok(self.reduce_coords(&c))
    }

    /// All canonical residue coordinates in lexicographic order.
    pub fn all_coords(&self) -> Vec<Vec<Int>> {
        hnf_residues(&self.sub)
    }

    pub fn elements(&self) -> Vec<FieldElement> {
        self.all_coords().iter().map(|c| self.ideal.element(c)).collect()
    }

    /// Sub-lattice basis of `𝔤𝔞` in `𝔞`-coordinates.
    pub fn sublattice(&self) -> &Vec<Vec<Int>> {
        &self.sub
    }

    /// Whether `c` lies in `𝔤𝔞`.
    pub fn is_zero_coords(&self, c: &[Int]) -> bool {
        hnf_coords(&self.sub, c).is_some()
    }
}

/// Representatives of `𝔞/𝔤𝔞`, lexicographic in HNF coordinates.
pub fn residues(nf: &NumberField, a: &FractionalIdeal, g: &FractionalIdeal) -> Result<Vec<FieldElement>> {
    Ok(ResidueSystem::new(nf, a, g)?.elements())
}

/// Whether `α/N ∉ 𝔞` for all integers `N > 1`.
pub fn is_primitive(nf: &NumberField, alpha: &FieldElement, a: &FractionalIdeal) -> Result<bool> {
    let c = a.int_coords(alpha).ok_or(Error::NotInIdeal)?;
    if !nf.is_totally_positive(alpha) {
        return Err(Error::NotTotallyPositive);
    }
    Ok(gcd_all(c.iter()).is_one())
}

/// All integral ideals of norm at most `bound`, ordered by norm then HNF.
pub fn integral_ideals_up_to(nf: &NumberField, bound: u64) -> Vec<FractionalIdeal> {
    let n = nf.degree();
    let mut out = Vec::new();
    let mut diags: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for d in &diags {
            let p: u64 = d.iter().product();
            for k in 1..=bound / p.max(1) {
                let mut e = d.clone();
                e.push(k);
                next.push(e);
            }
        }
        diags = next;
    }
    for d in diags {
        enumerate_upper(nf, &d, &mut out);
    }
    out.sort_by(|a, b| a.norm().cmp(&b.norm()).then(a.cmp(b)));
    out
}

fn enumerate_upper(nf: &NumberField, diag: &[u64], out: &mut Vec<FractionalIdeal>) {
    let n = diag.len();
    // free entries: cols[j][i] for i < j, in [0, diag[i])
    let mut slots = Vec::new();
    for j in 0..n {
        for i in 0..j {
            slots.push((j, i));
        }
    }
    let mut idx = vec![0u64; slots.len()];
    loop {
        let mut cols = vec![vec![Int::zero(); n]; n];
        for j in 0..n {
            cols[j][j] = Int::from(diag[j]);
        }
        for (s, &(j, i)) in slots.iter().enumerate() {
            cols[j][i] = Int::from(idx[s]);
        }
        let cand = FractionalIdeal { den: Int::one(), cols };
        if is_module(nf, &cand) {
            out.push(cand);
        }
        // increment
        let mut s = 0;
        loop {
            if s == slots.len() {
                return;
            }
            idx[s] += 1;
            if idx[s] < diag[slots[s].1] {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

fn is_module(nf: &NumberField, a: &FractionalIdeal) -> bool {
    let b = a.basis();
    for x in &b {
        for k in 1..nf.degree() {
            if !a.contains(&nf.mul(x, &nf.basis_element(k))) {
                return false;
            }
        }
    }
    true
}

/// Integral ideals dividing (containing) `g`.
pub fn divisors(nf: &NumberField, g: &FractionalIdeal) -> Vec<FractionalIdeal> {
    let ng = g.norm().to_integer();
    let ngu: u64 = num_traits::ToPrimitive::to_u64(&ng).expect("modulus norm fits in u64");
    let mut out = Vec::new();
    let n = nf.degree();
    let mut diags: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for d in &diags {
            let p: u64 = d.iter().product();
            for k in 1..=ngu / p {
                if (ngu / p) % k == 0 {
                    let mut e = d.clone();
                    e.push(k);
                    next.push(e);
                }
            }
        }
        diags = next;
    }
    for d in diags {
        if d.iter().product::<u64>() == 0 || ngu % d.iter().product::<u64>() != 0 {
            continue;
        }
        let mut cands = Vec::new();
        enumerate_upper(nf, &d, &mut cands);
        out.extend(cands.into_iter().filter(|c| g.is_subset(c)));
    }
    out.sort_by(|a, b| a.norm().cmp(&b.norm()).then(a.cmp(b)));
    out
}

/// Prime ideals above a rational prime `p`, with their norms.
pub fn primes_above(nf: &NumberField, p: u64) -> Vec<(FractionalIdeal, u64)> {
    let n = nf.degree();
    let index = nf.index();
    let small: Option<Vec<i64>> = nf.min_poly().iter().map(num_traits::ToPrimitive::to_i64).collect();
    if !(&index % Int::from(p)).is_zero() {
        if let Some(small) = &small {
            if let Some(fac) = crate::modp::factor_small(&crate::modp::reduce(small, p), p) {
                let mut out: Vec<(FractionalIdeal, u64)> = fac
                    .into_iter()
                    .map(|(h, _)| {
                        let pc: Vec<Rat> = h.iter().map(|&c| Rat::from_integer(Int::from(c))).collect();
                        let hx = nf.from_power(&pc);
                        let id = FractionalIdeal::from_generators(nf, &[nf.from_int(p as i64), hx]).unwrap();
                        (id, p.pow((h.len() - 1) as u32))
                    })
                    .collect();
                out.sort();
                return out;
            }
        }
    }
    // brute force over ideals containing p: maximal proper ones are prime
    let mut cands = Vec::new();
    let diags = (0..(1u64 << n)).map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { p } else { 1 }).collect::<Vec<u64>>());
    for d in diags {
        if d.iter().all(|&x| x == 1) {
            continue;
        }
        enumerate_upper(nf, &d, &mut cands);
    }
    let pid = FractionalIdeal::principal(nf, &nf.from_int(p as i64)).unwrap();
    cands.retain(|c| pid.is_subset(c));
    let maximal: Vec<FractionalIdeal> = cands
        .iter()
        .filter(|c| !cands.iter().any(|o| o != *c && c.is_subset(o)))
        .cloned()
        .collect();
    let mut out: Vec<(FractionalIdeal, u64)> = maximal
        .into_iter()
        .map(|c| {
            let nm = num_traits::ToPrimitive::to_u64(&c.norm().to_integer()).unwrap();
            (c, nm)
        })
        .collect();
    out.sort();
    out
}

/// Dual basis matrix helper: coordinates of `x` in a rational basis.
pub fn solve_in_basis(basis: &[FieldElement], x: &FieldElement) -> Option<Vec<Rat>> {
    let m: Vec<Vec<Rat>> = (0..x.0.len()).map(|i| basis.iter().map(|b| b.0[i].clone()).collect()).collect();
    let inv = qinverse(&m)?;
    Some(qmatvec(&inv, &x.0))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn q5() -> NumberField {
        NumberField::new(&[int(-1), int(-1), int(1)], None).unwrap()
    }

    #[test]
    fn basic_norms() {
        let f = q5();
        let two = FractionalIdeal::principal(&f, &f.from_int(2)).unwrap();
        assert_eq!(two.norm(), rat(4, 1));
        let s5 = FieldElement::from_ints(&[-1, 2]);
        let d = FractionalIdeal::principal(&f, &s5).unwrap();
        assert_eq!(d, different_ideal(&f));
        assert_eq!(d.norm(), rat(5, 1));
        let three = FractionalIdeal::principal(&f, &f.from_int(3)).unwrap();
        assert_eq!(two.multiply(&f, &three).norm(), rat(36, 1));
        let dinv = d.invert(&f);
        assert!(dinv.contains(&f.inv(&s5).unwrap()));
        assert!(d.multiply(&f, &dinv).is_unit());
    }

    #[test]
    fn different_sqrt2() {
        let f = NumberField::new(&[int(-2), int(0), int(1)], None).unwrap();
        assert_eq!(different_ideal(&f).norm(), rat(8, 1));
        let q = NumberField::rationals();
        assert!(different_ideal(&q).is_unit());
    }

    #[test]
    fn residues_mod_two() {
        let f = q5();
        let one = FractionalIdeal::unit(&f);
        let two = FractionalIdeal::principal(&f, &f.from_int(2)).unwrap();
        let r = residues(&f, &one, &two).unwrap();
        assert_eq!(
            r,
            vec![
                FieldElement::from_ints(&[0, 0]),
                FieldElement::from_ints(&[0, 1]),
                FieldElement::from_ints(&[1, 0]),
                FieldElement::from_ints(&[1, 1]),
            ]
        );
        let q = NumberField::rationals();
        let five = FractionalIdeal::principal(&q, &q.from_int(5)).unwrap();
        let r = residues(&q, &FractionalIdeal::unit(&q), &five).unwrap();
        assert_eq!(r.len(), 5);
        assert_eq!(r[3], q.from_int(3));
    }

    #[test]
    fn primitivity() {
        let q = NumberField::rationals();
        let z = FractionalIdeal::unit(&q);
        assert!(is_primitive(&q, &q.from_int(1), &z).unwrap());
        assert!(!is_primitive(&q, &q.from_int(2), &z).unwrap());
        let two = FractionalIdeal::principal(&q, &q.from_int(2)).unwrap();
        assert!(is_primitive(&q, &q.from_int(2), &two).unwrap());
        assert_eq!(is_primitive(&q, &q.from_int(-1), &z), Err(Error::NotTotallyPositive));
        assert_eq!(is_primitive(&q, &q.from_int(1), &two), Err(Error::NotInIdeal));
    }

    #[test]
    fn primitivity_matches_division() {
        let f = q5();
        let a = FractionalIdeal::principal(&f, &f.from_int(2)).unwrap().add(&f, &FractionalIdeal::principal(&f, &FieldElement::from_ints(&[0, 3])).unwrap());
        for x in 1..8i64 {
            for y in 0..8i64 {
                let e = a.element(&[int(x), int(y)]);
                if !f.is_totally_positive(&e) {
                    continue;
                }
                let direct = (2..=8).all(|n| !a.contains(&e.scale(&rat(1, n))));
                assert_eq!(is_primitive(&f, &e, &a).unwrap(), direct);
            }
        }
    }

    #[test]
    fn ideal_enumeration_counts() {
        // ℚ(√5): ideals of norm ≤ 5 are (1), the two primes over... norms 1,4,5
        let f = q5();
        let ids = integral_ideals_up_to(&f, 5);
        let norms: Vec<Rat> = ids.iter().map(|i| i.norm()).collect();
        assert_eq!(norms, vec![rat(1, 1), rat(4, 1), rat(5, 1)]);
        let q = NumberField::rationals();
        assert_eq!(integral_ideals_up_to(&q, 10).len(), 10);
        let six = FractionalIdeal::principal(&q, &q.from_int(6)).unwrap();
        assert_eq!(divisors(&q, &six).len(), 4);
    }

    #[test]
    fn prime_splitting() {
        let f = q5();
        assert_eq!(primes_above(&f, 11).iter().map(|x| x.1).collect::<Vec<_>>(), vec![11, 11]);
        assert_eq!(primes_above(&f, 7).iter().map(|x| x.1).collect::<Vec<_>>(), vec![49]);
        assert_eq!(primes_above(&f, 5).iter().map(|x| x.1).collect::<Vec<_>>(), vec![5]);
        // ℚ(√12) via x^2 - 12 has index 2: brute force branch
        let g = NumberField::new(&[int(-12), int(0), int(1)], None).unwrap();
        let p2 = primes_above(&g, 2);
        assert_eq!(p2.len(), 1);
        assert_eq!(p2[0].1, 2);
    }

    fn arb_elem() -> impl Strategy<Value = FieldElement> {
        (-6i64..6, -6i64..6, 1i64..4).prop_filter_map("nonzero", |(a, b, d)| {
            if a == 0 && b == 0 {
                None
            } else {
                Some(FieldElement(vec![rat(a, d), rat(b, 1)]))
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn norm_multiplicative(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            let f = q5();
            let a = FractionalIdeal::from_generators(&f, &[x.clone(), y.clone()]).unwrap();
            let b = FractionalIdeal::principal(&f, &z).unwrap();
            prop_assert_eq!(a.multiply(&f, &b).norm(), a.norm() * b.norm());
            prop_assert_eq!(a.invert(&f).norm(), crate::arith::rone() / a.norm());
            prop_assert!(a.multiply(&f, &a.invert(&f)).is_unit());
            let ainv = a.invert(&f);
            for w in [&x, &y, &z] {
                let inside = a.contains(w);
                let prod_integral = FractionalIdeal::principal(&f, w).unwrap().multiply(&f, &ainv).is_integral();
                prop_assert_eq!(inside, prod_integral);
            }
        }

        #[test]
        fn residue_system_complete(a in 1i64..5, b in 0i64..5) {
            let f = q5();
            let g = FractionalIdeal::principal(&f, &FieldElement::from_ints(&[a, b])).unwrap();
            let one = FractionalIdeal::unit(&f);
            let rs = ResidueSystem::new(&f, &one, &g).unwrap();
            let all = rs.all_coords();
            prop_assert_eq!(Rat::from_integer(Int::from(all.len() as i64)), g.norm());
            for i in 0..all.len() {
                for j in 0..i {
                    let d: Vec<Int> = all[i].iter().zip(&all[j]).map(|(x, y)| x - y).collect();
                    prop_assert!(!rs.is_zero_coords(&d));
                }
            }
        }
    }
}
