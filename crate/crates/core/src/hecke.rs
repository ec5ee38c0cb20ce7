//! Gauss sums, Hecke L-values assembled from Lerch values, Euler products and
//! the identities relating them.

use crate::analytic::{gamma_r, lerch_series, unit_root, Approx};
use crate::arith::{factorial, lcm_u64, primes_up_to, rat_to_f64, rint, Int, Rat};
use crate::arithmetic_data::{characters, HeckeCharacter, RayClassGroup, UnitGroupPlus};
use crate::cyclotomic::{Cyc, CycField, GroupRing};
use crate::error::{Error, Result};
use crate::ideals::{primes_above, FractionalIdeal, ResidueSystem};
use crate::lll::integer_relation;
use crate::numberfield::{FieldElement, NumberField};
use crate::shintani_values::lerch_value;
use crate::torsion::{xi_can, TorsionPoint, TorsorData};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Everything attached to a modulus: `Cl⁺(𝔤)`, its characters and `𝒯₀[𝔤]`.
#[derive(Clone, Debug)]
pub struct HeckeSetup {
    pub units: UnitGroupPlus,
    pub grp: RayClassGroup,
    pub chars: Vec<HeckeCharacter>,
    pub torsor: TorsorData,
}

impl HeckeSetup {
    pub fn new(nf: &NumberField, units: &UnitGroupPlus, modulus: &FractionalIdeal) -> Result<Self> {
        let grp = RayClassGroup::new(nf, units, modulus)?;
        let chars = characters(nf, &grp)?;
        let torsor = TorsorData::new(nf, units, &grp)?;
        Ok(HeckeSetup { units: units.clone(), grp, chars, torsor })
    }

    pub fn modulus(&self) -> &FractionalIdeal {
        &self.grp.modulus
    }

    pub fn norm(&self) -> Int {
        self.grp.modulus.norm().to_integer()
    }

    pub fn primitive_chars(&self) -> Vec<&HeckeCharacter> {
        self.chars.iter().filter(|c| c.is_primitive(&self.grp)).collect()
    }

    pub fn exponent(&self) -> u64 {
        self.grp.group.exponent()
    }
}

/// For each residue `α ∈ 𝔞/𝔤𝔞`: the class of `α̃𝔞⁻¹` when `α` generates
/// `𝔞/𝔤𝔞`, with `α̃ ≫ 0` a lift.
#[derive(Clone, Debug)]
pub struct GaussData {
    pub ideal: FractionalIdeal,
    pub terms: Vec<(FieldElement, Option<usize>)>,
}

impl GaussData {
    pub fn new(nf: &NumberField, grp: &RayClassGroup, a: &FractionalIdeal) -> Result<Self> {
        let g = &grp.modulus;
        let rs = ResidueSystem::new(nf, a, g)?;
        let ga = g.multiply(nf, a);
        let q = ga.rational_generator(nf).abs();
        let ainv = a.invert(nf);
        let mut terms = Vec::new();
        for alpha in rs.elements() {
            let cls = if g.is_unit() || !alpha.is_zero() {
                let lift = totally_positive_lift(nf, &alpha, &q)?;
                let b = FractionalIdeal::principal(nf, &lift)?.multiply(nf, &ainv);
                if b.is_coprime(nf, g) {
                    Some(grp.class_of(nf, &b)?)
                } else {
                    None
                }
            } else {
                None
            };
            terms.push((alpha, cls));
        }
        Ok(GaussData { ideal: a.clone(), terms })
    }
}

/// `α + tq ≫ 0` for the least `t ≥ 0`.
fn totally_positive_lift(nf: &NumberField, alpha: &FieldElement, q: &Rat) -> Result<FieldElement> {
    let emb = nf.embed_f64(alpha);
    let low = emb.iter().cloned().fold(f64::INFINITY, f64::min);
    let qf = rat_to_f64(q);
    let mut t = if low > 0.0 { 0 } else { libm::floor(-low / qf) as i64 };
    for _ in 0..64 {
        let x = alpha.add(&nf.from_rat(&(q * Rat::from_integer(Int::from(t)))));
        if nf.is_totally_positive(&x) {
            return Ok(x);
        }
        t += 1;
    }
    Err(Error::LiftSearchFailed)
}

/// `g(ψ, ξ) = Σ_{α ∈ 𝔞/𝔤𝔞} ψ_𝔞(α) ξ(−α)`.
pub fn gauss_sum(grp: &RayClassGroup, data: &GaussData, psi: &HeckeCharacter, xi: &TorsionPoint) -> Result<Cyc> {
    if xi.ideal != data.ideal {
        return Err(Error::InvalidInput("torsion point is not on the Gauss sum ideal".into()));
    }
    let m = lcm_u64(psi.exponent, xi.order());
    let mut acc = GroupRing::new(m);
    let one = Rat::one();
    for (alpha, cls) in &data.terms {
        if let Some(c) = cls {
            let t = xi.value(alpha)?;
            let e = (-(t * Rat::from_integer(Int::from(m)))).to_integer().to_i64().unwrap();
            let j = (psi.value_exp(grp, *c) * (m / psi.exponent)) as i64;
            acc.add_term(e + j, &one);
        }
    }
    Ok(acc.to_cyc(&CycField::new(m)).minimal())
}

/// Gauss sum at a point, computing the residue data on the way.
pub fn gauss_sum_at(nf: &NumberField, grp: &RayClassGroup, psi: &HeckeCharacter, xi: &TorsionPoint) -> Result<Cyc> {
    let data = GaussData::new(nf, grp, &xi.ideal)?;
    gauss_sum(grp, &data, psi, xi)
}

/// `ψ(x)^{−1}` in `ℚ(ζ_m)`.
fn psi_inv(grp: &RayClassGroup, psi: &HeckeCharacter, f: &Arc<CycField>, x: usize) -> Cyc {
    psi.value(grp, f, grp.group.inv(x))
}

fn psi_inv_complex(grp: &RayClassGroup, psi: &HeckeCharacter, x: usize) -> Complex64 {
    let j = psi.value_exp(grp, x) as f64;
    unit_root(-j / psi.exponent as f64)
}

/// Exact `ℒ(η, −k)` for every point of the torsor.
pub fn lerch_table_exact(nf: &NumberField, setup: &HeckeSetup, k: u32) -> Result<Vec<Cyc>> {
    setup.torsor.reps.iter().map(|p| lerch_value(nf, p, k, &setup.units.generators)).collect()
}

/// `ℒ(η, s)` for every point of the torsor, `s > 1`.
pub fn lerch_table_numeric(nf: &NumberField, setup: &HeckeSetup, s: f64) -> Result<Vec<Approx>> {
    setup.torsor.reps.iter().map(|p| lerch_series(nf, p, s, &setup.units.generators)).collect()
}

/// `L(ψ, −k) = g(ψ,η)/N𝔤 · Σ_𝔟 ψ(𝔟)^{−1} ℒ(η^𝔟, −k)`, exactly.
pub fn hecke_from_lerch_exact(
    nf: &NumberField,
    setup: &HeckeSetup,
    psi: &HeckeCharacter,
    eta: usize,
    table: &[Cyc],
) -> Result<Cyc> {
    if !psi.is_primitive(&setup.grp) {
        return Err(Error::NotPrimitive);
    }
    let p = &setup.torsor.reps[eta];
    let gs = gauss_sum_at(nf, &setup.grp, psi, p)?;
    let mut m = lcm_u64(psi.exponent, gs.m());
    for v in table {
        m = lcm_u64(m, v.m());
    }
    let f = CycField::new(m);
    let mut acc = Cyc::zero(&f);
    for x in 0..setup.grp.order() as usize {
        let j = setup.torsor.action[x][eta];
        acc = acc.add(&psi_inv(&setup.grp, psi, &f, x).mul(&table[j].lift(&f)));
    }
    let n = Rat::from_integer(setup.norm());
    Ok(acc.mul(&gs.lift(&f)).scale(&(Rat::one() / n)).minimal())
}

/// Numeric counterpart of [`hecke_from_lerch_exact`] at real `s > 1`.
pub fn hecke_from_lerch_numeric(
    nf: &NumberField,
    setup: &HeckeSetup,
    psi: &HeckeCharacter,
    eta: usize,
    table: &[Approx],
) -> Result<Approx> {
    if !psi.is_primitive(&setup.grp) {
        return Err(Error::NotPrimitive);
    }
    let p = &setup.torsor.reps[eta];
    let gs = gauss_sum_at(nf, &setup.grp, psi, p)?;
    let mut acc = Approx::exact(Complex64::new(0.0, 0.0));
    for x in 0..setup.grp.order() as usize {
        let j = setup.torsor.action[x][eta];
        acc = acc.add(table[j].scale(psi_inv_complex(&setup.grp, psi, x)));
    }
    let (re, im) = gs.to_complex();
    let n = rat_to_f64(&rint(&setup.norm()));
    Ok(acc.scale(Complex64::new(re, im) / n))
}

/// `∏_{N𝔭 ≤ B} (1 − ψ(𝔭) N𝔭^{−s})^{−1}`, primes dividing `𝔤` omitted, with
/// the heuristic tail `g B^{1−s} / ((s−1) log B)` as relative error.
pub fn euler_product(nf: &NumberField, grp: &RayClassGroup, psi: &HeckeCharacter, s: f64, bound: u64) -> Result<Approx> {
    if s <= 1.0 {
        return Err(Error::InvalidInput("Euler product needs s > 1".into()));
    }
    let g = nf.degree();
    let ng = grp.modulus.norm().to_integer();
    let index = nf.index();
    let small: Option<Vec<i64>> = nf.min_poly().iter().map(|c| c.to_i64()).collect();
    let mut log_sum = Complex64::new(0.0, 0.0);
    for p in primes_up_to(bound) {
        let pi = Int::from(p);
        let fast = psi.is_trivial() && !(&ng % &pi).is_zero() && !(&index % &pi).is_zero() && small.is_some();
        if fast {
            let fp = crate::modp::reduce(small.as_ref().unwrap(), p);
            if let Some(degs) = crate::modp::ddf_degrees(&fp, p) {
                for d in degs {
                    let nrm = libm::pow(p as f64, d as f64);
                    if nrm <= bound as f64 {
                        log_sum -= Complex64::new(libm::log1p(-libm::pow(nrm, -s)), 0.0);
                    }
                }
                continue;
            }
        }
        for (pr, nrm) in primes_above(nf, p) {
            if nrm > bound || !pr.is_coprime(nf, &grp.modulus) {
                continue;
            }
            let chi = if psi.is_trivial() {
                Complex64::new(1.0, 0.0)
            } else {
                let c = grp.class_of(nf, &pr)?;
                unit_root(psi.value_exp(grp, c) as f64 / psi.exponent as f64)
            };
            log_sum -= (Complex64::new(1.0, 0.0) - chi * libm::pow(nrm as f64, -s)).ln();
        }
    }
    let v = log_sum.exp();
    let b = bound as f64;
    let tail = g as f64 * libm::pow(b, 1.0 - s) / ((s - 1.0) * libm::log(b));
    Ok(Approx { value: v, err: v.norm() * (tail + 1e-13 * libm::sqrt(b)) })
}

/// `(d_F N𝔤)^{s/2} Γ_ℝ(s)^{g−u} Γ_ℝ(s+1)^u`.
pub fn completion_factor(nf: &NumberField, setup: &HeckeSetup, psi: &HeckeCharacter, s: f64) -> f64 {
    let g = nf.degree() as i32;
    let u = psi.u as i32;
    let d = rat_to_f64(&rint(nf.discriminant())) * rat_to_f64(&rint(&setup.norm()));
    libm::pow(d, s / 2.0) * libm::pow(gamma_r(s), (g - u) as f64) * libm::pow(gamma_r(s + 1.0), u as f64)
}

/// `W(ψ) = i^{−u} g(ψ, ξ_can) / √N𝔤`.
pub fn root_number(nf: &NumberField, setup: &HeckeSetup, psi: &HeckeCharacter) -> Result<Complex64> {
    let xc = xi_can(nf, setup.modulus())?;
    let gs = gauss_sum_at(nf, &setup.grp, psi, &xc)?;
    let (re, im) = gs.to_complex();
    let n = rat_to_f64(&rint(&setup.norm()));
    Ok(Complex64::new(0.0, -1.0).powi(psi.u as i32) * Complex64::new(re, im) / libm::sqrt(n))
}

/// Whether `Λ(ψ, s)` is finite at `s = 1−k` and `s = k`.
pub fn is_critical(psi: &HeckeCharacter, k: i64, g: usize) -> bool {
    (k % 2 == 0 && psi.u == 0) || (k % 2 != 0 && psi.u == g)
}

/// Comparison of two sides of an identity.
#[derive(Clone, Debug)]
pub struct Report {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    /// Error budget of the numeric sides.
    pub tolerance: f64,
    /// Both sides exact and equal.
    pub exact: bool,
    pub lhs_provenance: &'static str,
    pub rhs_provenance: &'static str,
}

impl Report {
    fn numeric(lhs: Complex64, rhs: Complex64, tolerance: f64, lp: &'static str, rp: &'static str) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / rhs.norm().max(lhs.norm()).max(f64::MIN_POSITIVE);
        Report { lhs, rhs, abs_err, rel_err, tolerance, exact: false, lhs_provenance: lp, rhs_provenance: rp }
    }

    fn exact(lhs: &Cyc, rhs: &Cyc, lp: &'static str, rp: &'static str) -> Self {
        let (a, b) = lhs.to_complex();
        let (c, d) = rhs.to_complex();
        let mut r = Report::numeric(Complex64::new(a, b), Complex64::new(c, d), 0.0, lp, rp);
        r.exact = lhs == rhs;
        r
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.exact || self.rel_err <= tol
    }
}

/// `Λ(ψ, 1−k)` from the exact `L(ψ, 1−k)` against `W(ψ) Λ(ψ̄, k)` from the
/// Euler product.
pub fn functional_equation_check(
    nf: &NumberField,
    setup: &HeckeSetup,
    psi: &HeckeCharacter,
    k: u32,
    bound: u64,
) -> Result<Report> {
    let g = nf.degree();
    if k < 2 || !is_critical(psi, k as i64, g) {
        return Err(Error::NotCritical);
    }
    let table = lerch_table_exact(nf, setup, k - 1)?;
    let exact = hecke_from_lerch_exact(nf, setup, psi, 0, &table)?;
    let (a, b) = exact.to_complex();
    let lhs = Complex64::new(a, b) * completion_factor(nf, setup, psi, 1.0 - k as f64);
    let bar = psi.conj(&setup.grp);
    let lk = euler_product(nf, &setup.grp, &bar, k as f64, bound)?;
    let w = root_number(nf, setup, psi)?;
    let rhs = lk.scale(w * completion_factor(nf, setup, &bar, k as f64));
    Ok(Report::numeric(lhs, rhs.value, rhs.rel_err(), "exact Shintani value", "Euler product"))
}

/// `L(ψ, 1−k)` predicted by the functional equation from the Euler product.
pub fn negative_value_from_euler(
    nf: &NumberField,
    setup: &HeckeSetup,
    psi: &HeckeCharacter,
    k: u32,
    bound: u64,
) -> Result<Approx> {
    if k < 2 || !is_critical(psi, k as i64, nf.degree()) {
        return Err(Error::NotCritical);
    }
    let bar = psi.conj(&setup.grp);
    let lk = euler_product(nf, &setup.grp, &bar, k as f64, bound)?;
    let w = root_number(nf, setup, psi)?;
    let c = completion_factor(nf, setup, &bar, k as f64) / completion_factor(nf, setup, psi, 1.0 - k as f64);
    Ok(lk.scale(w * c))
}

/// `L*(ψ, 1−k)` by inverting the special-value formula against `L(ψ̄, k)`.
pub fn l_star(nf: &NumberField, setup: &HeckeSetup, psi: &HeckeCharacter, k: u32, bound: u64) -> Result<Approx> {
    if k < 2 {
        return Err(Error::InvalidInput("k must exceed 1".into()));
    }
    let g = nf.degree() as i32;
    let u = psi.u as i32;
    let kk = k as i32;
    let bar = psi.conj(&setup.grp);
    let lk = euler_product(nf, &setup.grp, &bar, k as f64, bound)?;
    let xc = xi_can(nf, setup.modulus())?;
    let gs = gauss_sum_at(nf, &setup.grp, psi, &xc)?;
    let (re, im) = gs.to_complex();
    let d = rat_to_f64(&rint(nf.discriminant()));
    let n = rat_to_f64(&rint(&setup.norm()));
    let fact = rat_to_f64(&rint(&factorial(k as u64 - 1)));
    let (two, tpi) = if k % 2 == 0 { (-g + 2 * u, kk * g - u) } else { (g - 2 * u, (kk - 1) * g + u) };
    let c = Complex64::new(libm::pow(2.0, two as f64), 0.0)
        * libm::pow(n, 1.0 - k as f64)
        * libm::pow(fact, -(g as f64))
        * libm::pow(d, 0.5 - k as f64)
        * Complex64::new(0.0, 2.0 * PI).powi(tpi);
    // L(ψ̄, k) = c · g(ψ, ξ_can)^{−1} · L*(ψ, 1−k)
    Ok(lk.scale(Complex64::new(re, im) / c))
}

/// Class `x` with `ψ(x) = ψ_𝒪(−1)`: the class of `(α)` for `α ≫ 0`, `α ≡ −1 mod 𝔤`.
pub fn minus_one_class(nf: &NumberField, grp: &RayClassGroup) -> Result<usize> {
    let one = FractionalIdeal::unit(nf);
    let data = GaussData::new(nf, grp, &one)?;
    let minus = nf.from_int(-1);
    for (a, c) in &data.terms {
        if grp.residue_system().reduce(&a.sub(&minus))?.iter().all(|x| x.is_zero()) {
            return c.ok_or(Error::NotCoprime);
        }
    }
    Err(Error::NotCoprime)
}

fn gauss_product_report(
    setup: &HeckeSetup,
    data: &GaussData,
    sign_class: usize,
    psi: &HeckeCharacter,
    eta: &TorsionPoint,
) -> Result<Report> {
    let a = gauss_sum(&setup.grp, data, psi, eta)?;
    let b = gauss_sum(&setup.grp, data, &psi.conj(&setup.grp), eta)?;
    let m = lcm_u64(lcm_u64(a.m(), b.m()), psi.exponent);
    let f = CycField::new(m);
    let lhs = a.lift(&f).mul(&b.lift(&f)).minimal();
    let rhs = psi.value(&setup.grp, &f, sign_class).scale(&Rat::from_integer(setup.norm())).minimal();
    Ok(Report::exact(&lhs, &rhs, "g(ψ,η)g(ψ̄,η)", "ψ_𝒪(−1)N𝔤"))
}

/// `g(ψ, η) g(ψ̄, η)` against `ψ_𝒪(−1) N𝔤`, both exact.
pub fn gauss_product_check(nf: &NumberField, setup: &HeckeSetup, psi: &HeckeCharacter, eta: &TorsionPoint) -> Result<Report> {
    let sign_class = minus_one_class(nf, &setup.grp)?;
    let data = GaussData::new(nf, &setup.grp, &eta.ideal)?;
    gauss_product_report(setup, &data, sign_class, psi, eta)
}

/// [`gauss_product_check`] for every primitive character and every torsor
/// point, as `(character index, point index, report)`.
pub fn gauss_product_table(nf: &NumberField, setup: &HeckeSetup) -> Result<Vec<(usize, usize, Report)>> {
    let sign_class = minus_one_class(nf, &setup.grp)?;
    let mut data: Vec<GaussData> = Vec::new();
    let mut out = Vec::new();
    for (j, eta) in setup.torsor.reps.iter().enumerate() {
        let d = match data.iter().position(|d| d.ideal == eta.ideal) {
            Some(i) => i,
            None => {
                data.push(GaussData::new(nf, &setup.grp, &eta.ideal)?);
                data.len() - 1
            }
        };
        for (i, psi) in setup.chars.iter().enumerate() {
            if psi.is_primitive(&setup.grp) {
                out.push((i, j, gauss_product_report(setup, &data[d], sign_class, psi, eta)?));
            }
        }
    }
    Ok(out)
}

/// Which side of the imprimitivity identity to evaluate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    NonPositive(u32),
    Real(f64),
}

/// `(N𝔭)^{s−1} Σ_{Cl⁺(𝔤₁)} ψ₁(𝔟)^{−1} ℒ(ξ₁^𝔟, s)` against
/// `C(𝔭) Σ_{Cl⁺(𝔤₀)} ψ₀(𝔟)^{−1} ℒ(ξ₀^𝔟, s)` with `ξ₀ = ξ₁^𝔭`, `ψ₁ = ψ₀ ∘ pr`.
pub fn imprimitive_check(
    nf: &NumberField,
    units: &UnitGroupPlus,
    grp0: &RayClassGroup,
    psi0: &HeckeCharacter,
    prime: &FractionalIdeal,
    xi1: &TorsionPoint,
    at: Point,
) -> Result<Report> {
    let g0 = &grp0.modulus;
    let g1 = prime.multiply(nf, g0);
    if xi1.modulus != g1 {
        return Err(Error::InvalidInput("ξ₁ must have modulus 𝔭𝔤₀".into()));
    }
    let grp1 = RayClassGroup::new(nf, units, &g1)?;
    let xi0 = xi1.restrict(nf, prime, g0)?;
    let divides = g0.is_subset(prime);
    let np = prime.norm().to_integer().to_u64().unwrap();
    let psi0_p = if divides { None } else { Some(grp0.class_of(nf, prime)?) };
    let u = &units.generators;
    match at {
        Point::NonPositive(k) => {
            let mut l1 = Vec::new();
            for x in 0..grp1.order() as usize {
                let pt = xi1.act_ideal(nf, grp1.repr_ideal(x))?;
                let v = lerch_value(nf, &pt, k, u)?;
                let y = grp1.class_of(nf, grp1.repr_ideal(x))?;
                let y0 = grp0.class_of(nf, grp1.repr_ideal(y))?;
                l1.push((y0, v));
            }
            let mut l0 = Vec::new();
            for x in 0..grp0.order() as usize {
                let pt = xi0.act_ideal(nf, grp0.repr_ideal(x))?;
                l0.push((x, lerch_value(nf, &pt, k, u)?));
            }
            let mut m = psi0.exponent;
            for (_, v) in l1.iter().chain(&l0) {
                m = lcm_u64(m, v.m());
            }
            let f = CycField::new(m);
            let sum = |l: &[(usize, Cyc)]| {
                let mut acc = Cyc::zero(&f);
                for (c, v) in l {
                    acc = acc.add(&psi_inv(grp0, psi0, &f, *c).mul(&v.lift(&f)));
                }
                acc
            };
            // s = −k: (N𝔭)^{s−1} = N𝔭^{−k−1}
            let npow = Rat::new(Int::one(), Int::from(np).pow(k + 1));
            let lhs = sum(&l1).scale(&npow).minimal();
            let c = match psi0_p {
                None => Cyc::one(&f),
                Some(c) => Cyc::one(&f).sub(&psi_inv(grp0, psi0, &f, c).scale(&npow)),
            };
            let rhs = c.mul(&sum(&l0)).minimal();
            Ok(Report::exact(&lhs, &rhs, "exact, level 𝔭𝔤₀", "exact, level 𝔤₀"))
        }
        Point::Real(s) => {
            let mut lhs = Approx::exact(Complex64::new(0.0, 0.0));
            for x in 0..grp1.order() as usize {
                let pt = xi1.act_ideal(nf, grp1.repr_ideal(x))?;
                let v = lerch_series(nf, &pt, s, u)?;
                let y0 = grp0.class_of(nf, grp1.repr_ideal(x))?;
                lhs = lhs.add(v.scale(psi_inv_complex(grp0, psi0, y0)));
            }
            let npow = libm::pow(np as f64, s - 1.0);
            lhs = lhs.scale(Complex64::new(npow, 0.0));
            let mut rhs = Approx::exact(Complex64::new(0.0, 0.0));
            for x in 0..grp0.order() as usize {
                let pt = xi0.act_ideal(nf, grp0.repr_ideal(x))?;
                rhs = rhs.add(lerch_series(nf, &pt, s, u)?.scale(psi_inv_complex(grp0, psi0, x)));
            }
            let c = match psi0_p {
                None => Complex64::new(1.0, 0.0),
                Some(c) => Complex64::new(1.0, 0.0) - psi_inv_complex(grp0, psi0, c) * npow,
            };
            rhs = rhs.scale(c);
            let tol = (lhs.err + rhs.err) / rhs.value.norm().max(f64::MIN_POSITIVE);
            Ok(Report::numeric(lhs.value, rhs.value, tol, "Lerch series, level 𝔭𝔤₀", "Lerch series, level 𝔤₀"))
        }
    }
}

/// `ℒ^∞(ξΔ, n)`: `Re ℒ` when `(n−1)g` is even, `i Im ℒ` otherwise.
pub fn l_infinity(nf: &NumberField, xi: &TorsionPoint, n: u32, units: &[FieldElement]) -> Result<Approx> {
    if n < 2 {
        return Err(Error::InvalidInput("n must be at least 2".into()));
    }
    let v = lerch_series(nf, xi, n as f64, units)?;
    Ok(infinity_part(v, n, nf.degree()))
}

fn infinity_part(v: Approx, n: u32, g: usize) -> Approx {
    let value = if ((n as usize - 1) * g) % 2 == 0 {
        Complex64::new(v.value.re, 0.0)
    } else {
        Complex64::new(0.0, v.value.im)
    };
    Approx { value, err: v.err }
}

/// `d_F^{1/2} ℒ^∞(η, n) / (2πi)^{(n−1)g}` for every `η ∈ 𝒯₀[𝔤]`.
pub fn ler_vector(nf: &NumberField, setup: &HeckeSetup, n: u32) -> Result<Vec<Approx>> {
    let g = nf.degree();
    let d = rat_to_f64(&rint(nf.discriminant()));
    let c = Complex64::new(libm::sqrt(d), 0.0) / Complex64::new(0.0, 2.0 * PI).powi(((n - 1) as usize * g) as i32);
    setup
        .torsor
        .reps
        .iter()
        .map(|p| Ok(l_infinity(nf, p, n, &setup.units.generators)?.scale(c)))
        .collect()
}

/// Result of recognising a complex number inside `ℚ(ζ_e)`.
#[derive(Clone, Debug)]
pub struct Recognition {
    pub ratio: Complex64,
    /// `ratio ≈ Σ_j num[j] ζ_e^j / den`.
    pub num: Vec<i64>,
    pub den: i64,
    pub residual: f64,
}

/// `Σ_x χ(x) ℒ(Art(x) η, k) / (d_F^{1/2} (2πi)^{(k−1)g} L*(χ^{−1}, 1−k))`,
/// recognised in `ℚ(χ)` by lattice reduction.
pub fn artin_ratio_check(
    nf: &NumberField,
    setup: &HeckeSetup,
    chi: &HeckeCharacter,
    eta: usize,
    k: u32,
    bound: u64,
) -> Result<Recognition> {
    let g = nf.degree();
    if !crate::arithmetic_data::is_totally_noncritical(chi, k as i64, g) {
        return Err(Error::NotTotallyNoncritical);
    }
    let table = lerch_table_numeric(nf, setup, k as f64)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 0..setup.grp.order() as usize {
        let j = setup.torsor.galois_action(&setup.grp, x, eta);
        let cj = unit_root(chi.value_exp(&setup.grp, x) as f64 / chi.exponent as f64);
        acc += cj * table[j].value;
    }
    let inv = chi.conj(&setup.grp);
    let ls = l_star(nf, setup, &inv, k, bound)?;
    let d = rat_to_f64(&rint(nf.discriminant()));
    let den = ls.value * libm::sqrt(d) * Complex64::new(0.0, 2.0 * PI).powi(((k - 1) as usize * g) as i32);
    let ratio = acc / den;
    let e = chi.order.max(1);
    let phi = crate::arith::phi(e) as usize;
    let mut rows = vec![vec![ratio.re, ratio.im]];
    for j in 0..phi {
        let z = unit_root(j as f64 / e as f64);
        rows.push(vec![z.re, z.im]);
    }
    let (c, _) = integer_relation(&rows, 1e9);
    let den = c[0];
    if den == 0 {
        return Ok(Recognition { ratio, num: Vec::new(), den: 0, residual: f64::INFINITY });
    }
    let (num, den) = if den < 0 { (c[1..].to_vec(), -den) } else { (c[1..].iter().map(|x| -x).collect(), den) };
    let fitted: Complex64 = num
        .iter()
        .enumerate()
        .map(|(j, &a)| unit_root(j as f64 / e as f64) * a as f64)
        .sum::<Complex64>()
        / den as f64;
    Ok(Recognition { ratio, num, den, residual: (fitted - ratio).norm() / ratio.norm().max(f64::MIN_POSITIVE) })
}

/// Exact value as a complex number.
pub fn cyc_to_complex(v: &Cyc) -> Complex64 {
    let (a, b) = v.to_complex();
    Complex64::new(a, b)
}
