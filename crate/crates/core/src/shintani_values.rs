//! Exact Lerch zeta values `ℒ(ξΔ, −k) ∈ ℚ(ξ)` from cone generating functions.
//!
//! On a cone `σ = σ_𝛂` the generating function is
//! `Σ_β ξ(β) e^{⟨x(β), w⟩} / ∏ᵢ (1 − ξ(αᵢ) e^{wᵢ})` in the coordinates
//! `t^{αᵢ} = e^{wᵢ}`, and `∏_τ ∂_τ` becomes `NormForm(∂/∂w₁, …, ∂/∂w_g)`.
//! When every `ξ(αᵢ) ≠ 1` the value at `w = 0` of `(NormForm(∂)/N𝔞)^k`
//! applied to it is the cone's share of `ℒ(ξΔ, −k)`; cones are therefore
//! chosen with no generator in the kernel of any point of the orbit. Trivial
//! and other unavoidable points are reduced to avoidable ones by the
//! distribution relation along multiplication by a prime `p`.

use crate::arith::{bernoulli_poly, binom, frac, gcd_all, rint, Int, Rat};
use crate::cyclotomic::{Cyc, CycField};
use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::numberfield::{FieldElement, NumberField};
use crate::shintani_cones::{decompose, decompose_avoiding, single_cone_avoiding, Cone, ShintaniDecomposition};
use crate::torsion::{delta_orbit, TorsionPoint};
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Polynomial in several variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// `Σ cᵢ Xᵢ`.
    pub fn linear(c: &[Rat]) -> Self {
        let n = c.len();
        let mut p = Self::zero(n);
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, ci.clone());
            }
        }
        p
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *v += c;
            if v.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
                *v += c1 * c2;
                if v.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.nvars, Rat::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, ei) in x.iter().zip(e) {
                for _ in 0..*ei {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }
}

fn mpoly_det(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    let nv = m[0][0].nvars;
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = MPoly::zero(nv);
    for j in 0..n {
        if m[0][j].terms.is_empty() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = (1..n)
            .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
            .collect();
        let t = m[0][j].mul(&mpoly_det(&minor));
        out = if j % 2 == 0 { out.add(&t) } else { out.add(&t.neg()) };
    }
    out
}

/// `N(Σ Xᵢ αᵢ) = det(Σ Xᵢ M_{αᵢ})`.
pub fn norm_form(nf: &NumberField, gens: &[FieldElement]) -> Result<MPoly> {
    let g = nf.degree();
    if gens.len() != g {
        return Err(Error::DegenerateCone);
    }
    let mats: Vec<_> = gens.iter().map(|a| nf.mult_matrix(a)).collect();
    let m: Vec<Vec<MPoly>> = (0..g)
        .map(|r| (0..g).map(|c| MPoly::linear(&mats.iter().map(|mm| mm[r][c].clone()).collect::<Vec<_>>())).collect())
        .collect();
    let d = mpoly_det(&m);
    if d.terms.is_empty() {
        return Err(Error::DegenerateCone);
    }
    Ok(d)
}

/// `P_j(u)` with `d^j/dw^j (1 − z e^w)^{-1}|_{w=0} = P_j(1/(1−z))`; coefficients low to high.
fn derivative_polys(n: usize) -> Vec<Vec<Int>> {
    let mut out = vec![vec![Int::zero(), Int::one()]];
    for j in 0..n {
        let p = &out[j];
        let mut q = vec![Int::zero(); p.len() + 1];
        for (r, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rc = c * Int::from(r as u64);
            q[r + 1] += &rc;
            q[r] -= &rc;
        }
        out.push(q);
    }
    out
}

fn eval_poly_cyc(p: &[Int], u: &Cyc) -> Cyc {
    let f = u.field().clone();
    let mut acc = Cyc::zero(&f);
    for c in p.iter().rev() {
        acc = acc.mul(u).add(&Cyc::from_rat(&f, &rint(c)));
    }
    acc
}

fn order_field(points: &[&TorsionPoint]) -> Arc<CycField> {
    let mut m = 1u64;
    for p in points {
        m = crate::arith::lcm_u64(m, p.order());
    }
    CycField::new(m)
}

fn exponent_of(t: &Rat, m: u64) -> i64 {
    (t * Rat::from_integer(Int::from(m))).to_integer().to_i64().unwrap()
}

/// Contribution of one cone, `sgn(𝛂) · (1/N𝔞)^k · [NormForm(∂)^k G_σ](0)`,
/// for a point with no generator in its kernel (`g = 1` allows the kernel).
pub fn cone_zeta_value(nf: &NumberField, cone: &Cone, xi: &TorsionPoint, k: u32, f: &Arc<CycField>) -> Result<Cyc> {
    let g = nf.degree();
    if xi.ideal != cone.ideal {
        return Err(Error::InvalidInput("torsion point and cone live on different ideals".into()));
    }
    let m = f.m;
    let t: Vec<Rat> = cone.generator_coords().iter().map(|c| xi.pair(c)).collect();
    let pts = cone.parallelepiped_points(true)?;
    let na = cone.ideal.norm();
    let scale = (Rat::one() / &na).pow(k as i32);
    if t.iter().any(|x| x.is_zero()) {
        if g != 1 {
            return Err(Error::KernelRay);
        }
        // Σ_n ξ(β + nα) N(...)^{-s} = (α/N𝔞)^{-s} ξ(β) ζ(s, x)
        let alpha = nf.norm(&cone.gens[0]);
        let mut acc = Cyc::zero(f);
        for (beta, x) in &pts {
            let e = exponent_of(&xi.value(beta)?, m);
            let b = -bernoulli_poly(k as usize + 1, &x[0]) / Rat::from_integer(Int::from(k + 1));
            acc = acc.add(&Cyc::root(f, e).scale(&b));
        }
        let s = &scale * alpha.pow(k as i32);
        return Ok(acc.scale(&s).scale(&Rat::from_integer(Int::from(cone.sign))));
    }
    let nform = norm_form(nf, &cone.gens)?.pow(k);
    let top = (g as u32 * k) as usize;
    let dp = derivative_polys(top);
    let one = Cyc::one(f);
    // U[i][j] = P_j(1/(1 − ξ(αᵢ)))
    let mut u_tab: Vec<Vec<Cyc>> = Vec::with_capacity(g);
    for ti in &t {
        let z = Cyc::root(f, exponent_of(ti, m));
        let u = one.sub(&z).inv().ok_or(Error::KernelRay)?;
        u_tab.push(dp.iter().map(|p| eval_poly_cyc(p, &u)).collect());
    }
    // moments Σ_β ξ(β) x(β)^a, bucketed by the exponent of ξ(β)
    let mut buckets: BTreeMap<i64, BTreeMap<Vec<u32>, Rat>> = BTreeMap::new();
    let idx: Vec<Vec<u32>> = multi_indices(g, top as u32);
    for (beta, x) in &pts {
        let e = exponent_of(&xi.value(beta)?, m);
        let pw: Vec<Vec<Rat>> = x
            .iter()
            .map(|xi| {
                let mut v = vec![Rat::one()];
                for _ in 0..top {
                    let last = v.last().unwrap().clone();
                    v.push(last * xi);
                }
                v
            })
            .collect();
        let b = buckets.entry(e).or_default();
        for a in &idx {
            let mut prod = Rat::one();
            for (i, ai) in a.iter().enumerate() {
                prod *= &pw[i][*ai as usize];
            }
            *b.entry(a.clone()).or_insert_with(Rat::zero) += prod;
        }
    }
    let mut s_tab: BTreeMap<Vec<u32>, Cyc> = BTreeMap::new();
    for a in &idx {
        let mut coeffs = vec![Rat::zero(); m as usize];
        for (e, b) in &buckets {
            if let Some(v) = b.get(a) {
                coeffs[*e as usize] += v;
            }
        }
        s_tab.insert(a.clone(), Cyc::from_group_ring(f, &coeffs));
    }
    let mut total = Cyc::zero(f);
    for (mi, c) in &nform.terms {
        // Σ_j ∏ C(mᵢ, jᵢ) U_i[jᵢ] · S[m − j]
        for j in multi_indices_below(mi) {
            let mut coef = c.clone();
            let mut term = one.clone();
            for i in 0..g {
                coef *= rint(&binom(mi[i] as u64, j[i] as u64));
                term = term.mul(&u_tab[i][j[i] as usize]);
            }
            let rest: Vec<u32> = mi.iter().zip(&j).map(|(a, b)| a - b).collect();
            total = total.add(&term.mul(&s_tab[&rest]).scale(&coef));
        }
    }
    Ok(total.scale(&scale).scale(&Rat::from_integer(Int::from(cone.sign))))
}

fn multi_indices(g: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..g {
        let mut next = Vec::new();
        for p in &out {
            for a in 0..=max {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn multi_indices_below(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &mi in m {
        let mut next = Vec::new();
        for p in &out {
            for a in 0..=mi {
                let mut q = p.clone();
                q.push(a);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `ℒ(ξΔ, −k) = Σ_{η ∈ ξΔ} Σ_σ` cone contributions, for a decomposition
/// none of whose generators is killed by a point of the orbit.
pub fn lerch_nonpositive(nf: &NumberField, xi: &TorsionPoint, k: u32, dec: &ShintaniDecomposition) -> Result<Cyc> {
    let (orbit, _) = delta_orbit(nf, xi, &dec.units);
    let f = order_field(&[xi]);
    let mut acc = Cyc::zero(&f);
    for eta in &orbit {
        for c in &dec.cones {
            acc = acc.add(&cone_zeta_value(nf, c, eta, k, &f)?);
        }
    }
    Ok(acc.minimal())
}

/// Predicate "no point of the orbit kills these coordinates".
pub fn orbit_avoids(orbit: &[TorsionPoint]) -> impl Fn(&[Int]) -> bool + '_ {
    move |c: &[Int]| orbit.iter().all(|eta| !eta.pair(c).is_zero())
}

/// Which decomposition to use for an avoidable orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FanChoice {
    Hull,
    SingleCone,
}

/// Decomposition of `𝔞` adapted to the orbit of `ξ`, or `KernelRay`.
pub fn adapted_decomposition(
    nf: &NumberField,
    xi: &TorsionPoint,
    units: &[FieldElement],
    choice: FanChoice,
) -> Result<ShintaniDecomposition> {
    if nf.degree() == 1 {
        return decompose(nf, &xi.ideal, units);
    }
    let (orbit, _) = delta_orbit(nf, xi, units);
    let good = orbit_avoids(&orbit);
    match choice {
        FanChoice::Hull => match decompose_avoiding(nf, &xi.ideal, units, &good) {
            Err(Error::KernelRay) => single_cone_avoiding(nf, &xi.ideal, units, &good),
            r => r,
        },
        FanChoice::SingleCone => single_cone_avoiding(nf, &xi.ideal, units, &good),
    }
}

/// The `p`-division set `{ζ : ζ(p·) ∈ ξΔ}` split into `Δ`-orbit
/// representatives, omitting the orbit of `ξ^{p'}`, `pp' ≡ 1 mod ord ξ`.
pub fn division_orbits(nf: &NumberField, xi: &TorsionPoint, units: &[FieldElement], p: u64) -> Result<Vec<TorsionPoint>> {
    let g = nf.degree();
    let m = xi.order();
    let pinv = crate::modp::inv_mod_general(p as i128, m as i128).ok_or(Error::NotCoprime)? as i64;
    let (orbit, _) = delta_orbit(nf, xi, units);
    let pm = FractionalIdeal::principal(nf, &nf.from_int(p as i64))?;
    let modulus = xi.modulus.multiply(nf, &pm);
    let lambdas: Vec<Vec<Rat>> = {
        let mut out = vec![Vec::new()];
        for _ in 0..g {
            let mut next = Vec::new();
            for v in &out {
                for a in 0..p {
                    let mut w = v.clone();
                    w.push(Rat::new(Int::from(a), Int::from(p)));
                    next.push(w);
                }
            }
            out = next;
        }
        out
    };
    let mut seen: BTreeMap<Vec<Rat>, ()> = BTreeMap::new();
    let mut reps = Vec::new();
    for kappa in &orbit {
        let z0 = kappa.power(pinv);
        for lam in &lambdas {
            if lam.iter().all(|x| x.is_zero()) {
                continue;
            }
            let r: Vec<Rat> = z0.r.iter().zip(lam).map(|(a, b)| frac(&(a + b))).collect();
            if seen.contains_key(&r) {
                continue;
            }
            let zeta = TorsionPoint::new(nf, &xi.ideal, &modulus, r)?;
            let (orb, _) = delta_orbit(nf, &zeta, units);
            for o in &orb {
                seen.insert(o.r.clone(), ());
            }
            reps.push(zeta);
        }
    }
    Ok(reps)
}

/// Prime used for the distribution relation: the first odd prime not dividing
/// the order for which every division orbit admits an adapted fan.
pub fn distribution_prime(nf: &NumberField, xi: &TorsionPoint, units: &[FieldElement]) -> Result<(u64, Vec<TorsionPoint>)> {
    let m = xi.order();
    for p in [3u64, 5, 7, 11, 13] {
        if m % p == 0 {
            continue;
        }
        let reps = division_orbits(nf, xi, units, p)?;
        let ok = reps.iter().all(|z| adapted_decomposition(nf, z, units, FanChoice::Hull).is_ok());
        if ok {
            return Ok((p, reps));
        }
    }
    Err(Error::KernelRay)
}

/// `ℒ(ξΔ, −k)` for any torsion point, using adapted fans of the given kind
/// and the distribution relation when no adapted fan exists.
pub fn lerch_value_with(nf: &NumberField, xi: &TorsionPoint, k: u32, units: &[FieldElement], choice: FanChoice) -> Result<Cyc> {
    match adapted_decomposition(nf, xi, units, choice) {
        Ok(dec) => lerch_nonpositive(nf, xi, k, &dec),
        Err(Error::KernelRay) => lerch_by_distribution(nf, xi, k, units, choice),
        Err(e) => Err(e),
    }
}

pub fn lerch_value(nf: &NumberField, xi: &TorsionPoint, k: u32, units: &[FieldElement]) -> Result<Cyc> {
    lerch_value_with(nf, xi, k, units, FanChoice::Hull)
}

/// `X − cσ(X) = cR` with `c = p^{−g(k+1)}`, `σ: ζ ↦ ζ^{p'}`, solved as
/// `X = Σ_{j<r} c^{j+1} σ^j(R) / (1 − c^r)`.
fn lerch_by_distribution(nf: &NumberField, xi: &TorsionPoint, k: u32, units: &[FieldElement], choice: FanChoice) -> Result<Cyc> {
    let g = nf.degree() as i32;
    let (p, reps) = distribution_prime(nf, xi, units)?;
    let m = xi.order();
    let mut fr = order_field(&[xi]);
    for z in &reps {
        fr = CycField::new(crate::arith::lcm_u64(fr.m, z.order()));
    }
    let mut r_sum = Cyc::zero(&fr);
    for z in &reps {
        let dec = adapted_decomposition(nf, z, units, choice)?;
        r_sum = r_sum.add(&lerch_nonpositive(nf, z, k, &dec)?.lift(&fr));
    }
    let pinv = crate::modp::inv_mod_general(p as i128, m as i128).unwrap() as u64;
    // extend ζ_m ↦ ζ_m^{p'} to ℚ(ζ_M) with an exponent coprime to M
    let big = fr.m;
    let mut a = pinv;
    while a.gcd(&big) != 1 {
        a += m;
    }
    let mut order = 1u32;
    let mut q = pinv % m.max(1);
    while m > 1 && q != 1 {
        q = q * pinv % m;
        order += 1;
    }
    let c = Rat::new(Int::one(), Int::from(p).pow((g * (k as i32 + 1)) as u32));
    let mut acc = Cyc::zero(&fr);
    let mut cj = c.clone();
    let mut term = r_sum.clone();
    for _ in 0..order {
        acc = acc.add(&term.scale(&cj));
        term = term.galois(a as i64);
        cj *= &c;
    }
    let denom = Rat::one() - c.pow(order as i32);
    Ok(acc.scale(&(Rat::one() / denom)).minimal())
}

/// Alternating sum `𝒢_{α₁α₂} − 𝒢_{α₀α₂} + 𝒢_{α₀α₁}` at rational points `t`
/// (values of `t` on the basis of `𝔞`), exactly.
pub fn cocycle_check(nf: &NumberField, a: &FractionalIdeal, triple: &[FieldElement; 3], points: &[Vec<Rat>]) -> Result<bool> {
    if nf.degree() == 1 {
        return Ok(true);
    }
    if nf.degree() != 2 {
        return Err(Error::Unsupported("cocycle check is implemented for g = 2".into()));
    }
    let pairs = [(1usize, 2usize, 1i32), (0, 2, -1), (0, 1, 1)];
    let mut cones: Vec<Option<(Cone, i32)>> = Vec::new();
    for (i, j, s) in pairs {
        if triple[i] == triple[j] {
            cones.push(None);
            continue;
        }
        let c = Cone::new(nf, a, vec![triple[i].clone(), triple[j].clone()])?;
        cones.push(Some((c, s)));
    }
    let data: Vec<Option<(Vec<Vec<Int>>, Vec<Vec<Int>>, i32)>> = cones
        .iter()
        .map(|c| {
            c.as_ref().map(|(c, s)| {
                let pts = c.parallelepiped_points(true).unwrap();
                let pc: Vec<Vec<Int>> = pts.iter().map(|(b, _)| a.int_coords(b).unwrap()).collect();
                (pc, c.generator_coords().clone(), *s * c.sign as i32)
            })
        })
        .collect();
    for t in points {
        let mono = |c: &[Int]| -> Result<Rat> {
            let mut v = Rat::one();
            for (ti, ci) in t.iter().zip(c) {
                let e = ci.to_i32().unwrap();
                if e < 0 && ti.is_zero() {
                    return Err(Error::PoleAtTestPoint);
                }
                v *= ti.pow(e);
            }
            Ok(v)
        };
        let mut total = Rat::zero();
        for d in data.iter().flatten() {
            let (pts, gens, s) = d;
            let mut den = Rat::one();
            for gc in gens {
                let v = Rat::one() - mono(gc)?;
                if v.is_zero() {
                    return Err(Error::PoleAtTestPoint);
                }
                den *= v;
            }
            let mut num = Rat::zero();
            for pc in pts {
                num += mono(pc)?;
            }
            total += num / den * Rat::from_integer(Int::from(*s));
        }
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primitive generator of the ray through `x`.
pub fn primitive_part(a: &FractionalIdeal, x: &FieldElement) -> FieldElement {
    let c = a.int_coords(x).expect("element of the ideal");
    let d = gcd_all(c.iter());
    x.scale(&Rat::new(Int::one(), d))
}

/// `ζ_F(−k)` for the trivial point on `𝒪` (narrow class number one fields
/// give the Dedekind value directly).
pub fn trivial_value(nf: &NumberField, k: u32, units: &[FieldElement]) -> Result<Rat> {
    let o = FractionalIdeal::unit(nf);
    let xi = TorsionPoint::trivial(nf, &o, &o);
    lerch_value(nf, &xi, k, units)?.as_rational().ok_or(Error::Precision("value is not rational".into()))
}
