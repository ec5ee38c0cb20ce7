//! Totally positive units, narrow ray class groups `Cl⁺(𝔤)` and their
//! characters.
//!
//! `Cl⁺(𝔤)` is assembled from the exact sequence
//! `((𝒪/𝔤)^× × {±1}^g) / im(𝒪^×) → Cl⁺(𝔤) → Cl → 1`: a class is stored as a
//! pair (ordinary class `c`, coset of `(β mod 𝔤, sign β)`) where the ideal is
//! `β 𝔯_c` for fixed representatives `𝔯_c` coprime to `𝔤`.

use crate::arith::{int, modp, rint, Int, Rat};
use crate::cyclotomic::{Cyc, CycField};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::ideals::{divisors, primes_above, FractionalIdeal, ResidueSystem};
use crate::linalg::{kernel_mod, ZMat};
use crate::numberfield::{FieldElement, NumberField};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    UserSupplied,
}

/// Generators of `Δ = 𝒪^×_{F,+}` and, when known, of `𝒪^× / {±1}`.
#[derive(Clone, Debug)]
pub struct UnitGroupPlus {
    pub generators: Vec<FieldElement>,
    pub fundamental: Option<Vec<FieldElement>>,
    pub provenance: Provenance,
}

/// Fundamental unit of a real quadratic field from the continued fraction of
/// the second basis element, normalized so that `η^{τ₂} > 1`.
pub fn fundamental_unit_quadratic(nf: &NumberField) -> Result<FieldElement> {
    if nf.degree() != 2 {
        return Err(Error::Unsupported("continued fractions need degree 2".into()));
    }
    let w = nf.basis_element(1);
    let t = nf.trace(&w).to_integer();
    let n = nf.norm(&w).to_integer();
    let disc: Int = &t * &t - Int::from(4) * &n;
    let sq = disc.sqrt();
    // ξ = (P + √D)/Q, starting from (t + √D)/2
    let (mut p, mut q) = (t.clone(), int(2));
    let (mut h1, mut h2) = (Int::one(), Int::zero());
    let (mut k1, mut k2) = (Int::zero(), Int::one());
    for _ in 0..100_000 {
        let a = if q.is_positive() {
            (&p + &sq).div_floor(&q)
        } else {
            (&p + &sq + Int::one()).div_floor(&q)
        };
        let h = &a * &h1 + &h2;
        let k = &a * &k1 + &k2;
        h2 = h1;
        h1 = h.clone();
        k2 = k1;
        k1 = k.clone();
        // candidate h - k ω
        let cand = FieldElement(vec![rint(&h), -rint(&k)]);
        let nn = nf.norm(&cand);
        if nn.abs().is_one() {
            return Ok(normalize_unit(nf, &cand));
        }
        let pn = &a * &q - &p;
        let qn = (&disc - &pn * &pn) / &q;
        p = pn;
        q = qn;
    }
    Err(Error::ScaleExceeded("continued fraction period too long".into()))
}

fn normalize_unit(nf: &NumberField, u: &FieldElement) -> FieldElement {
    let g = nf.degree();
    let mut best = u.clone();
    for cand in [u.clone(), u.neg(), nf.inv(u).unwrap(), nf.inv(u).unwrap().neg()] {
        let e = nf.embed_f64(&cand);
        if nf.sign(&cand, g - 1) > 0 && e[g - 1] > 1.0 {
            best = cand;
            break;
        }
    }
    best
}

/// Sign vector as a bitmask: bit τ set when `x^τ < 0`.
pub fn sign_mask(nf: &NumberField, x: &FieldElement) -> u32 {
    let mut m = 0;
    for t in 0..nf.degree() {
        if nf.sign(x, t) < 0 {
            m |= 1 << t;
        }
    }
    m
}

/// Totally positive units from a system of fundamental units.
pub fn delta_from_fundamental(nf: &NumberField, fund: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let g = nf.degree();
    let r = fund.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    // sign vectors modulo the all-ones vector (absorbed by -1)
    let masks: Vec<u32> = fund.iter().map(|u| sign_mask(nf, u)).collect();
    let rows = g.saturating_sub(1);
    let a: ZMat = (0..rows)
        .map(|t| {
            (0..r)
                .map(|i| {
                    let b = ((masks[i] >> t) & 1) ^ ((masks[i] >> (g - 1)) & 1);
                    Int::from(b)
                })
                .collect()
        })
        .collect();
    let ker = if rows == 0 {
        crate::linalg::zidentity(r)
    } else {
        let k = kernel_mod(&a, &int(2), r);
        k.into_iter().collect()
    };
    let mut out = Vec::new();
    for col in ker {
        let mut u = nf.one();
        for (i, e) in col.iter().enumerate() {
            let e = e.to_i64().unwrap();
            if e != 0 {
                u = nf.mul(&u, &nf.pow(&fund[i], e)?);
            }
        }
        if !nf.is_totally_positive(&u) {
            u = u.neg();
        }
        if !nf.is_totally_positive(&u) {
            return Err(Error::InvalidInput("sign kernel produced a non-positive unit".into()));
        }
        out.push(normalize_plus(nf, &u));
    }
    Ok(out)
}

fn normalize_plus(nf: &NumberField, u: &FieldElement) -> FieldElement {
    let g = nf.degree();
    let e = nf.embed_f64(u);
    if e[g - 1] < 1.0 {
        nf.inv(u).unwrap()
    } else {
        u.clone()
    }
}

/// `Δ` for `g ≤ 2`, computed internally.
pub fn units_plus(nf: &NumberField) -> Result<UnitGroupPlus> {
    match nf.degree() {
        1 => Ok(UnitGroupPlus { generators: Vec::new(), fundamental: Some(Vec::new()), provenance: Provenance::Computed }),
        2 => {
            let eta = fundamental_unit_quadratic(nf)?;
            let gens = delta_from_fundamental(nf, core::slice::from_ref(&eta))?;
            Ok(UnitGroupPlus { generators: gens, fundamental: Some(vec![eta]), provenance: Provenance::Computed })
        }
        _ => Err(Error::NeedUserUnits),
    }
}

/// Verify user-supplied units. `fundamental = true` means the list generates
/// `𝒪^×/{±1}`; otherwise it is taken as a basis of `Δ`.
pub fn units_from_user(nf: &NumberField, units: Vec<FieldElement>, fundamental: bool) -> Result<UnitGroupPlus> {
    let g = nf.degree();
    if units.len() != g - 1 {
        return Err(Error::BadUnits(format!("expected {} units", g - 1)));
    }
    for u in &units {
        if !nf.is_integral(u) || !nf.norm(u).abs().is_one() {
            return Err(Error::BadUnits("element is not a unit".into()));
        }
        if !fundamental && !nf.is_totally_positive(u) {
            return Err(Error::BadUnits("unit is not totally positive".into()));
        }
    }
    // independence: log matrix of the first g-1 embeddings has full rank
    let logs: Vec<Vec<f64>> = units
        .iter()
        .map(|u| nf.embed_f64(u).iter().take(g - 1).map(|x| libm::log(x.abs())).collect())
        .collect();
    let det = det_f64(&logs);
    if det.abs() < 1e-8 {
        return Err(Error::BadUnits("units are multiplicatively dependent".into()));
    }
    if fundamental {
        let gens = delta_from_fundamental(nf, &units)?;
        Ok(UnitGroupPlus { generators: gens, fundamental: Some(units), provenance: Provenance::UserSupplied })
    } else {
        Ok(UnitGroupPlus { generators: units, fundamental: None, provenance: Provenance::UserSupplied })
    }
}

fn det_f64(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap()).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}

/// A generator of a principal fractional ideal, or `None` when the ideal is
/// not principal. The search box is large enough to be conclusive.
pub fn find_generator(nf: &NumberField, units: &UnitGroupPlus, b: &FractionalIdeal) -> Result<Option<FieldElement>> {
    let g = nf.degree();
    let d = b.den().clone();
    let bi = b.scale_rat(&rint(&d));
    let n = bi.norm().to_integer();
    if g == 1 {
        return Ok(Some(nf.from_rat(&Rat::new(n, d))));
    }
    let nf64 = n.to_f64().unwrap();
    let mut bound = vec![libm::pow(nf64, 1.0 / g as f64); g];
    for u in &units.generators {
        let e = nf.embed_f64(u);
        for t in 0..g {
            let mut s = 0.0;
            s += 0.5 * libm::log(e[t].abs()).abs();
            bound[t] *= libm::exp(s);
        }
    }
    for x in bound.iter_mut() {
        *x *= 1.0 + 1e-9;
        *x += 1e-9;
    }
    let basis = bi.basis();
    let mut rows: Vec<Vec<f64>> = basis.iter().map(|x| nf.embed_f64(x)).collect();
    let u = crate::lll::lll(&mut rows, 0.75);
    let red: Vec<FieldElement> = u
        .iter()
        .map(|r| {
            let mut acc = nf.zero();
            for (c, bj) in r.iter().zip(&basis) {
                if *c != 0 {
                    acc = acc.add(&bj.scale(&Rat::from_integer(Int::from(*c))));
                }
            }
            acc
        })
        .collect();
    // embedding matrix E[τ][j] = red_j^τ ; coefficients c = E^{-1} x
    let e: Vec<Vec<f64>> = (0..g).map(|t| red.iter().map(|x| nf.embed_f64(x)[t]).collect()).collect();
    let einv = inv_f64(&e).ok_or_else(|| Error::Precision("singular embedding matrix".into()))?;
    let ranges: Vec<i64> = (0..g)
        .map(|j| {
            let s: f64 = (0..g).map(|t| einv[j][t].abs() * bound[t]).sum();
            libm::floor(s + 1e-6) as i64
        })
        .collect();
    let total: f64 = ranges.iter().map(|r| (2 * r + 1) as f64).product();
    if total > 2.0e7 {
        return Err(Error::ScaleExceeded(format!("principality search box of size {total:.0}")));
    }
    let red_emb: Vec<Vec<f64>> = red.iter().map(|x| nf.embed_f64(x)).collect();
    let target = Rat::from_integer(n.clone());
    let mut c = ranges.iter().map(|r| -r).collect::<Vec<i64>>();
    loop {
        if c.iter().any(|&x| x != 0) {
            let mut ok = true;
            for t in 0..g {
                let v: f64 = c.iter().zip(&red_emb).map(|(ci, em)| *ci as f64 * em[t]).sum();
                if v.abs() > bound[t] {
                    ok = false;
                    break;
                }
            }
            if ok {
                let mut x = nf.zero();
                for (ci, rj) in c.iter().zip(&red) {
                    if *ci != 0 {
                        x = x.add(&rj.scale(&Rat::from_integer(Int::from(*ci))));
                    }
                }
                if nf.norm(&x).abs() == target {
                    return Ok(Some(x.scale(&Rat::new(Int::one(), d.clone()))));
                }
            }
        }
        let mut i = 0;
        loop {
            if i == g {
                return Ok(None);
            }
            c[i] += 1;
            if c[i] <= ranges[i] {
                break;
            }
            c[i] = -ranges[i];
            i += 1;
        }
    }
}

fn inv_f64(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[p][c].abs() < 1e-300 {
            return None;
        }
        a.swap(p, c);
        let pv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                if f != 0.0 {
                    let rowc = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(&rowc) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Unit group elements `±∏ u_i^{e_i}`, `e_i ∈ {0,1}`, covering every sign class.
fn unit_sign_reps(nf: &NumberField, units: &UnitGroupPlus) -> Vec<FieldElement> {
    let base: Vec<FieldElement> = units.fundamental.clone().unwrap_or_default();
    let mut out = vec![nf.one()];
    for u in base {
        let mut next = out.clone();
        for x in &out {
            next.push(nf.mul(x, &u));
        }
        out = next;
    }
    let negs: Vec<FieldElement> = out.iter().map(|x| x.neg()).collect();
    out.extend(negs);
    out
}

/// A totally positive generator of a narrowly principal ideal.
pub fn find_totally_positive_generator(
    nf: &NumberField,
    units: &UnitGroupPlus,
    b: &FractionalIdeal,
) -> Result<Option<FieldElement>> {
    let Some(beta) = find_generator(nf, units, b)? else { return Ok(None) };
    let s = sign_mask(nf, &beta);
    for u in unit_sign_reps(nf, units) {
        if sign_mask(nf, &u) == s {
            let x = nf.div(&beta, &u)?;
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Ordinary class group with representatives and multiplication table.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub reps: Vec<FractionalIdeal>,
    pub table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn compute(nf: &NumberField, units: &UnitGroupPlus) -> Result<Self> {
        let g = nf.degree();
        let one = FractionalIdeal::unit(nf);
        if g == 1 {
            return Ok(ClassGroup { reps: vec![one], table: vec![vec![0]] });
        }
        // Minkowski bound √|d| g!/g^g
        let d = nf.discriminant().to_f64().unwrap().abs();
        let mut mk = libm::sqrt(d);
        for i in 1..=g {
            mk *= i as f64 / g as f64;
        }
        let mut gens = Vec::new();
        for p in crate::arith::primes_up_to(libm::floor(mk) as u64) {
            for (pp, nrm) in primes_above(nf, p) {
                if (nrm as f64) <= mk {
                    gens.push(pp);
                }
            }
        }
        let mut reps = vec![one];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for p in &gens {
                let cand = reps[i].multiply(nf, p);
                if Self::find_class(nf, units, &reps, &cand)?.is_none() {
                    reps.push(cand);
                    frontier.push(reps.len() - 1);
                }
            }
        }
        let h = reps.len();
        let mut table = vec![vec![0; h]; h];
        for i in 0..h {
            for j in 0..h {
                let prod = reps[i].multiply(nf, &reps[j]);
                table[i][j] = Self::find_class(nf, units, &reps, &prod)?.ok_or_else(|| {
                    Error::InvalidInput("class group closure failed".into())
                })?;
            }
        }
        Ok(ClassGroup { reps, table })
    }

    fn find_class(nf: &NumberField, units: &UnitGroupPlus, reps: &[FractionalIdeal], a: &FractionalIdeal) -> Result<Option<usize>> {
        for (i, r) in reps.iter().enumerate() {
            let q = a.multiply(nf, &r.invert(nf));
            if find_generator(nf, units, &q)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn class_of(&self, nf: &NumberField, units: &UnitGroupPlus, a: &FractionalIdeal) -> Result<usize> {
        Self::find_class(nf, units, &self.reps, a)?.ok_or_else(|| Error::InvalidInput("ideal class not found".into()))
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }
}

/// Narrow ray class group `Cl⁺(𝔤)`.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    pub modulus: FractionalIdeal,
    pub units: UnitGroupPlus,
    degree: usize,
    rs: ResidueSystem,
    unit_res: Vec<Vec<Int>>,
    res_index: BTreeMap<Vec<Int>, usize>,
    res_mul: Vec<Vec<usize>>,
    min_int: Int,
    /// raw K index `r * 2^g + s` → coset id
    k_coset: Vec<usize>,
    k_rep: Vec<usize>,
    classes: ClassGroup,
    class_reps: Vec<FractionalIdeal>,
    /// twist cocycle as K-coset ids
    gamma: Vec<Vec<usize>>,
    elements: Vec<(usize, usize)>,
    elem_index: BTreeMap<(usize, usize), usize>,
    pub group: AbelianGroup,
    repr: Vec<FractionalIdeal>,
}

impl RayClassGroup {
    pub fn new(nf: &NumberField, units: &UnitGroupPlus, modulus: &FractionalIdeal) -> Result<Self> {
        if !modulus.is_integral() {
            return Err(Error::NotIntegral);
        }
        let g = nf.degree();
        let ng = modulus.norm().to_integer();
        if ng > Int::from(200_000) {
            return Err(Error::ScaleExceeded("modulus norm above desk scale".into()));
        }
        let one = FractionalIdeal::unit(nf);
        let rs = ResidueSystem::new(nf, &one, modulus)?;
        let all = rs.all_coords();
        let mut unit_res = Vec::new();
        for r in &all {
            let x = one.element(r);
            if x.is_zero() && !modulus.is_unit() {
                continue;
            }
            let id = if x.is_zero() { one.clone() } else { FractionalIdeal::principal(nf, &x)?.add(nf, modulus) };
            if id.is_unit() {
                unit_res.push(r.clone());
            }
        }
        let res_index: BTreeMap<Vec<Int>, usize> = unit_res.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let nres = unit_res.len();
        let res_mul: Vec<Vec<usize>> = (0..nres)
            .map(|i| {
                let xi = one.element(&unit_res[i]);
                (0..nres)
                    .map(|j| {
                        let p = nf.mul(&xi, &one.element(&unit_res[j]));
                        let c = rs.reduce(&p).unwrap();
                        res_index[&c]
                    })
                    .collect()
            })
            .collect();
        let min_int = modulus.min_integer(nf);
        let mut me = RayClassGroup {
            modulus: modulus.clone(),
            units: units.clone(),
            degree: g,
            rs,
            unit_res,
            res_index,
            res_mul,
            min_int,
            k_coset: Vec::new(),
            k_rep: Vec::new(),
            classes: ClassGroup { reps: Vec::new(), table: Vec::new() },
            class_reps: Vec::new(),
            gamma: Vec::new(),
            elements: Vec::new(),
            elem_index: BTreeMap::new(),
            group: AbelianGroup::build(1, 0, |_, _| 0)?,
            repr: Vec::new(),
        };
        me.build_k(nf)?;
        me.build_classes(nf)?;
        me.build_group(nf)?;
        Ok(me)
    }

    fn nsign(&self) -> usize {
        1 << self.degree
    }

    fn raw_mul(&self, a: usize, b: usize) -> usize {
        let ns = self.nsign();
        let (ra, sa) = (a / ns, a % ns);
        let (rb, sb) = (b / ns, b % ns);
        self.res_mul[ra][rb] * ns + (sa ^ sb)
    }

    /// Residue index of an element of F coprime to 𝔤.
    fn residue_of(&self, nf: &NumberField, x: &FieldElement) -> Result<usize> {
        let (den, num) = nf.integral_scaling(x);
        let inv = crate::modp::inv_mod_general(
            modp(&den, &self.min_int).to_i128().unwrap(),
            self.min_int.to_i128().unwrap(),
        )
        .ok_or(Error::NotCoprime)?;
        let one = FractionalIdeal::unit(nf);
        let y: Vec<Int> = num.iter().map(|c| c * Int::from(inv)).collect();
        let c = self.rs.reduce(&one.element(&y))?;
        self.res_index.get(&c).copied().ok_or(Error::NotCoprime)
    }

    fn raw_of(&self, nf: &NumberField, x: &FieldElement) -> Result<usize> {
        Ok(self.residue_of(nf, x)? * self.nsign() + sign_mask(nf, x) as usize)
    }

    fn build_k(&mut self, nf: &NumberField) -> Result<()> {
        let n = self.unit_res.len() * self.nsign();
        let fund = self
            .units
            .fundamental
            .clone()
            .ok_or_else(|| Error::InvalidInput("ray class groups need a full system of fundamental units".into()))?;
        let mut ugens = vec![self.raw_of(nf, &nf.from_int(-1))?];
        for u in &fund {
            ugens.push(self.raw_of(nf, u)?);
        }
        let id = self.raw_of(nf, &nf.one())?;
        let mut img = vec![id];
        let mut seen = BTreeMap::new();
        seen.insert(id, ());
        let mut i = 0;
        while i < img.len() {
            for &gk in &ugens {
                let y = self.raw_mul(img[i], gk);
                if seen.insert(y, ()).is_none() {
                    img.push(y);
                }
            }
            i += 1;
        }
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset[x] != usize::MAX {
                continue;
            }
            let cid = reps.len();
            reps.push(x);
            for &h in &img {
                coset[self.raw_mul(x, h)] = cid;
            }
        }
        self.k_coset = coset;
        self.k_rep = reps;
        Ok(())
    }

    fn k_mul(&self, a: usize, b: usize) -> usize {
        self.k_coset[self.raw_mul(self.k_rep[a], self.k_rep[b])]
    }

    fn k_of(&self, nf: &NumberField, x: &FieldElement) -> Result<usize> {
        Ok(self.k_coset[self.raw_of(nf, x)?])
    }

    fn build_classes(&mut self, nf: &NumberField) -> Result<()> {
        let cg = ClassGroup::compute(nf, &self.units)?;
        let h = cg.order();
        let ng = self.modulus.norm().to_integer();
        let mut reps: Vec<Option<FractionalIdeal>> = vec![None; h];
        reps[0] = Some(FractionalIdeal::unit(nf));
        let mut bound = 4u64;
        while reps.iter().any(|r| r.is_none()) {
            for id in crate::ideals::integral_ideals_up_to(nf, bound) {
                if !id.norm().to_integer().gcd(&ng).is_one() {
                    continue;
                }
                let c = cg.class_of(nf, &self.units, &id)?;
                if reps[c].is_none() {
                    reps[c] = Some(id);
                }
            }
            bound *= 2;
            if bound > 1 << 16 {
                return Err(Error::ScaleExceeded("no class representative coprime to the modulus".into()));
            }
        }
        let reps: Vec<FractionalIdeal> = reps.into_iter().map(|r| r.unwrap()).collect();
        let mut gamma = vec![vec![0; h]; h];
        for i in 0..h {
            for j in 0..h {
                let k = cg.table[i][j];
                let q = reps[i].multiply(nf, &reps[j]).multiply(nf, &reps[k].invert(nf));
                let gam = find_generator(nf, &self.units, &q)?
                    .ok_or_else(|| Error::InvalidInput("class twist is not principal".into()))?;
                gamma[i][j] = self.k_of(nf, &gam)?;
            }
        }
        self.classes = cg;
        self.class_reps = reps;
        self.gamma = gamma;
        Ok(())
    }

    fn pair_mul(&self, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
        let c = self.classes.table[a.0][b.0];
        let k = self.k_mul(self.k_mul(a.1, b.1), self.gamma[a.0][b.0]);
        (c, k)
    }

    fn build_group(&mut self, nf: &NumberField) -> Result<()> {
        let h = self.classes.order();
        let nk = self.k_rep.len();
        let mut elements = Vec::with_capacity(h * nk);
        for c in 0..h {
            for k in 0..nk {
                elements.push((c, k));
            }
        }
        let elem_index: BTreeMap<(usize, usize), usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let idk = self.k_of(nf, &nf.one())?;
        let id = elem_index[&(0, idk)];
        let group = AbelianGroup::build(elements.len(), id, |a, b| elem_index[&self.pair_mul(elements[a], elements[b])])?;
        self.elements = elements;
        self.elem_index = elem_index;
        self.group = group;
        let mut repr = Vec::with_capacity(self.elements.len());
        for i in 0..self.elements.len() {
            repr.push(self.find_repr(nf, i)?);
        }
        self.repr = repr;
        Ok(())
    }

    fn find_repr(&self, nf: &NumberField, i: usize) -> Result<FractionalIdeal> {
        let (c, k) = self.elements[i];
        let raw = self.k_rep[k];
        let ns = self.nsign();
        let (ri, s) = (raw / ns, (raw % ns) as u32);
        let one = FractionalIdeal::unit(nf);
        let r = one.element(&self.unit_res[ri]);
        if s == 0 && r == nf.one() {
            return Ok(self.class_reps[c].clone());
        }
        let gb = self.modulus.basis();
        let g = self.degree;
        for radius in 0i64..200 {
            let mut t = vec![-radius; g];
            loop {
                if t.iter().any(|x| x.abs() == radius) {
                    let mut beta = r.clone();
                    for (tj, bj) in t.iter().zip(&gb) {
                        if *tj != 0 {
                            beta = beta.add(&bj.scale(&Rat::from_integer(Int::from(*tj))));
                        }
                    }
                    if !beta.is_zero() && sign_mask(nf, &beta) == s {
                        return Ok(self.class_reps[c].scale(nf, &beta)?);
                    }
                }
                let mut j = 0;
                loop {
                    if j == g {
                        break;
                    }
                    t[j] += 1;
                    if t[j] <= radius {
                        break;
                    }
                    t[j] = -radius;
                    j += 1;
                }
                if j == g {
                    break;
                }
            }
        }
        Err(Error::ScaleExceeded("no representative with the required signs".into()))
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Representative integral ideal of element `x`, coprime to 𝔤.
    pub fn repr_ideal(&self, x: usize) -> &FractionalIdeal {
        &self.repr[x]
    }

    pub fn repr_ideals(&self) -> &Vec<FractionalIdeal> {
        &self.repr
    }

    pub fn class_group_order(&self) -> usize {
        self.classes.order()
    }

    /// Class of the principal ideal `(x)` for `x` coprime to 𝔤.
    pub fn class_of_element(&self, nf: &NumberField, x: &FieldElement) -> Result<usize> {
        let k = self.k_of(nf, x)?;
        Ok(self.elem_index[&(0, k)])
    }

    /// Class of the ideal with trivial ordinary class part whose generator has
    /// the given residue coordinates and sign mask.
    pub fn class_of_residue(&self, r: &[Int], signs: u32) -> Result<usize> {
        let c = self.rs.reduce_coords(r);
        let ri = *self.res_index.get(&c).ok_or(Error::NotCoprime)?;
        let raw = ri * self.nsign() + signs as usize;
        Ok(self.elem_index[&(0, self.k_coset[raw])])
    }

    /// Class of an ideal coprime to 𝔤.
    pub fn class_of(&self, nf: &NumberField, b: &FractionalIdeal) -> Result<usize> {
        if !b.is_integral() {
            let d = b.den().clone();
            let bi = b.scale_rat(&rint(&d));
            let x = self.class_of(nf, &bi)?;
            let y = self.class_of_element(nf, &nf.from_rat(&rint(&d)))?;
            return Ok(self.group.mul(x, self.group.inv(y)));
        }
        if !b.is_coprime(nf, &self.modulus) {
            return Err(Error::NotCoprime);
        }
        let h = self.classes.order();
        for c in 0..h {
            let q = if c == 0 { b.clone() } else { b.multiply(nf, &self.class_reps[c].invert(nf)) };
            if let Some(beta) = find_generator(nf, &self.units, &q)? {
                let k = self.k_of(nf, &beta)?;
                return Ok(self.elem_index[&(c, k)]);
            }
        }
        Err(Error::InvalidInput("ideal class not found".into()))
    }

    /// `c′_τ`: class of the idele with −1 at τ and 1 elsewhere.
    pub fn c_prime(&self, t: usize) -> usize {
        let r0 = self.unit_res_one();
        let raw = r0 * self.nsign() + (1 << t);
        self.elem_index[&(0, self.k_coset[raw])]
    }

    fn unit_res_one(&self) -> usize {
        // residue coordinates of 1 in 𝒪-coordinates
        let mut v = vec![Int::zero(); self.degree];
        v[0] = Int::one();
        self.res_index[&self.rs.reduce_coords(&v)]
    }

    /// `c′_abs = ∏_τ c′_τ`.
    pub fn c_prime_abs(&self) -> usize {
        let mut x = self.group.identity;
        for t in 0..self.degree {
            x = self.group.mul(x, self.c_prime(t));
        }
        x
    }

    pub fn unit_residues(&self) -> &Vec<Vec<Int>> {
        &self.unit_res
    }

    pub fn residue_system(&self) -> &ResidueSystem {
        &self.rs
    }
}

/// Character `ψ_a` of a ray class group.
#[derive(Clone, Debug)]
pub struct HeckeCharacter {
    pub label: Vec<u64>,
    pub order: u64,
    pub conductor: FractionalIdeal,
    pub u: usize,
    pub exponent: u64,
}

impl HeckeCharacter {
    /// `ψ(x) = ζ_e^j`; returns `j`.
    pub fn value_exp(&self, grp: &RayClassGroup, x: usize) -> u64 {
        grp.group.pairing(&self.label, x)
    }

    pub fn value(&self, grp: &RayClassGroup, f: &Arc<CycField>, x: usize) -> Cyc {
        let e = self.exponent;
        let j = self.value_exp(grp, x);
        assert!(f.m % e == 0);
        Cyc::root(f, (j * (f.m / e)) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.label.iter().all(|&a| a == 0)
    }

    pub fn conj(&self, grp: &RayClassGroup) -> HeckeCharacter {
        let label = self.label.iter().zip(&grp.group.invariants).map(|(a, d)| (d - a) % d).collect();
        HeckeCharacter { label, ..self.clone() }
    }

    pub fn is_primitive(&self, grp: &RayClassGroup) -> bool {
        self.conductor == grp.modulus
    }
}

/// Whether `s = k` is totally noncritical for `ψ`.
pub fn is_totally_noncritical(psi: &HeckeCharacter, k: i64, g: usize) -> bool {
    (k % 2 == 0 && psi.u == g) || (k % 2 != 0 && psi.u == 0)
}

/// All characters of `Cl⁺(𝔤)` with conductor and `u(ψ)`.
pub fn characters(nf: &NumberField, grp: &RayClassGroup) -> Result<Vec<HeckeCharacter>> {
    let e = grp.group.exponent();
    let one = FractionalIdeal::unit(nf);
    // kernels of Cl⁺(𝔤) → Cl⁺(𝔤₀)
    let divs = divisors(nf, &grp.modulus);
    let mut kernels: Vec<(FractionalIdeal, Vec<usize>)> = Vec::new();
    for d in divs {
        let mut ker = Vec::new();
        for r in grp.unit_residues() {
            let x = one.element(r);
            if d.contains(&x.sub(&nf.one())) {
                ker.push(grp.class_of_residue(r, 0)?);
            }
        }
        kernels.push((d, ker));
    }
    let c_primes: Vec<usize> = (0..nf.degree()).map(|t| grp.c_prime(t)).collect();
    let mut out = Vec::new();
    for label in grp.group.character_labels() {
        let order = {
            let mut o = 1u64;
            for (a, d) in label.iter().zip(&grp.group.invariants) {
                let oi = d / a.gcd(d);
                o = crate::arith::lcm_u64(o, oi);
            }
            o
        };
        let mut cond: Option<FractionalIdeal> = None;
        for (d, ker) in &kernels {
            if ker.iter().all(|&x| grp.group.pairing(&label, x) == 0) {
                cond = Some(match cond {
                    None => d.clone(),
                    Some(c) => c.add(nf, d),
                });
            }
        }
        let u = c_primes.iter().filter(|&&c| grp.group.pairing(&label, c) != 0).count();
        out.push(HeckeCharacter { label, order, conductor: cond.unwrap(), u, exponent: e });
    }
    Ok(out)
}

/// Projection `Cl⁺(𝔤₁) → Cl⁺(𝔤₀)` for `𝔤₀ | 𝔤₁`.
pub fn project(nf: &NumberField, from: &RayClassGroup, to: &RayClassGroup, x: usize) -> Result<usize> {
    to.class_of(nf, from.repr_ideal(x))
}
