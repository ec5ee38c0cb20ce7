//! Torsion points `ξ ∈ Hom(𝔞/𝔤𝔞, ℂ^×)` stored exactly as vectors `r ∈ (ℚ/ℤ)^g`
//! against the basis of `𝔞`, so that `ξ(α) = exp(2πi⟨r, coords(α)⟩)`.

use crate::arith::{common_den, frac, rint, Int, Rat};
use crate::arithmetic_data::{find_totally_positive_generator, RayClassGroup, UnitGroupPlus};
use crate::error::{Error, Result};
use crate::ideals::{different_ideal, divisors, FractionalIdeal};
use crate::linalg::{hnf_columns, hnf_residues, qinverse, qmatvec, to_q, transpose};
use crate::numberfield::{FieldElement, NumberField};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorsionPoint {
    pub ideal: FractionalIdeal,
    pub modulus: FractionalIdeal,
    pub r: Vec<Rat>,
}

impl TorsionPoint {
    pub fn new(nf: &NumberField, ideal: &FractionalIdeal, modulus: &FractionalIdeal, r: Vec<Rat>) -> Result<Self> {
        if r.len() != nf.degree() {
            return Err(Error::InvalidInput("torsion vector has the wrong length".into()));
        }
        let p = TorsionPoint { ideal: ideal.clone(), modulus: modulus.clone(), r: r.iter().map(frac).collect() };
        let ga = modulus.multiply(nf, ideal);
        for b in ga.basis() {
            let c = ideal.int_coords(&b).ok_or(Error::NotIntegral)?;
            if !p.pair(&c).is_zero() {
                return Err(Error::InvalidInput("torsion vector does not kill 𝔤𝔞".into()));
            }
        }
        Ok(p)
    }

    pub fn trivial(nf: &NumberField, ideal: &FractionalIdeal, modulus: &FractionalIdeal) -> Self {
        TorsionPoint { ideal: ideal.clone(), modulus: modulus.clone(), r: vec![Rat::zero(); nf.degree()] }
    }

    pub fn is_trivial(&self) -> bool {
        self.r.iter().all(|x| x.is_zero())
    }

    /// Least common denominator of `r`.
    pub fn order(&self) -> u64 {
        common_den(&self.r).to_u64().unwrap()
    }

    /// `⟨r, c⟩ mod 1` for lattice coordinates `c`.
    pub fn pair(&self, c: &[Int]) -> Rat {
        let mut s = Rat::zero();
        for (ri, ci) in self.r.iter().zip(c) {
            s += ri * rint(ci);
        }
        frac(&s)
    }

    /// `ξ(α) = exp(2πi t)`; returns `t ∈ [0,1)`.
    pub fn value(&self, alpha: &FieldElement) -> Result<Rat> {
        let c = self.ideal.int_coords(alpha).ok_or(Error::NotInIdeal)?;
        Ok(self.pair(&c))
    }

    /// `ι(ξ) = ξ⁻¹`.
    pub fn inverse(&self) -> Self {
        TorsionPoint { r: self.r.iter().map(|x| frac(&-x)).collect(), ..self.clone() }
    }

    /// `ξ^a`.
    pub fn power(&self, a: i64) -> Self {
        TorsionPoint { r: self.r.iter().map(|x| frac(&(x * Rat::from_integer(Int::from(a))))).collect(), ..self.clone() }
    }

    /// `ξ^ε(α) = ξ(εα)`.
    pub fn act_unit(&self, nf: &NumberField, eps: &FieldElement) -> Self {
        let r = self
            .ideal
            .basis()
            .iter()
            .map(|b| self.pair(&self.ideal.int_coords(&nf.mul(eps, b)).expect("unit preserves 𝔞")))
            .collect();
        TorsionPoint { r, ..self.clone() }
    }

    /// `ξ^𝔟 = ξ|_{𝔟𝔞}` for an integral ideal `𝔟`.
    pub fn act_ideal(&self, nf: &NumberField, b: &FractionalIdeal) -> Result<Self> {
        self.restrict(nf, b, &self.modulus)
    }

    /// `ξ|_{𝔟𝔞}` regarded as a point of `𝕋^{𝔟𝔞}[𝔤′]`.
    pub fn restrict(&self, nf: &NumberField, b: &FractionalIdeal, modulus: &FractionalIdeal) -> Result<Self> {
        if !b.is_integral() {
            return Err(Error::NotIntegral);
        }
        let ba = b.multiply(nf, &self.ideal);
        let r = ba.basis().iter().map(|x| self.pair(&self.ideal.int_coords(x).unwrap())).collect();
        TorsionPoint::new(nf, &ba, modulus, r)
    }

    /// `⟨x⟩ξ` on `x𝔞`, defined by `(⟨x⟩ξ)(xα) = ξ(α)`.
    pub fn scale(&self, nf: &NumberField, x: &FieldElement) -> Result<Self> {
        let xa = self.ideal.scale(nf, x)?;
        let xi = nf.inv(x)?;
        let r = xa
            .basis()
            .iter()
            .map(|b| self.pair(&self.ideal.int_coords(&nf.mul(b, &xi)).unwrap()))
            .collect();
        Ok(TorsionPoint { ideal: xa, modulus: self.modulus.clone(), r })
    }

    /// Largest `𝔣 ⊇ 𝔤` with `𝔣𝔞 ⊆ Ker ξ`.
    pub fn conductor(&self, nf: &NumberField) -> FractionalIdeal {
        let mut f = self.modulus.clone();
        for d in divisors(nf, &self.modulus) {
            let da = d.multiply(nf, &self.ideal);
            if da.basis().iter().all(|b| self.pair(&self.ideal.int_coords(b).unwrap()).is_zero()) {
                f = f.add(nf, &d);
            }
        }
        f
    }

    pub fn is_primitive(&self, nf: &NumberField) -> bool {
        self.conductor(nf) == self.modulus
    }
}

/// `α ↦ exp(−2πi Tr α)` on `𝔤⁻¹𝔇⁻¹`.
pub fn xi_can(nf: &NumberField, g: &FractionalIdeal) -> Result<TorsionPoint> {
    let a = g.multiply(nf, &different_ideal(nf)).invert(nf);
    let r = a.basis().iter().map(|b| frac(&-nf.trace(b))).collect();
    TorsionPoint::new(nf, &a, g, r)
}

/// All points of `𝕋^𝔞[𝔤]`, ordered by their residue label.
pub fn all_points(nf: &NumberField, a: &FractionalIdeal, g: &FractionalIdeal) -> Result<Vec<TorsionPoint>> {
    let n = nf.degree();
    let ga = g.multiply(nf, a);
    let s: Vec<Vec<Int>> = ga.basis().iter().map(|b| a.int_coords(b).unwrap()).collect();
    // r with ⟨r, s_j⟩ ∈ ℤ: r = S^{-T} z, z modulo Sᵀℤ^n
    let st = transpose(&s);
    let h = hnf_columns(&st, n).ok_or(Error::ZeroIdeal)?;
    let smat: Vec<Vec<Rat>> = to_q(&s);
    let sinv = qinverse(&smat).ok_or(Error::ZeroIdeal)?;
    let mut out = Vec::new();
    for z in hnf_residues(&h) {
        let zq: Vec<Rat> = z.iter().map(rint).collect();
        let r = qmatvec(&sinv, &zq);
        out.push(TorsionPoint::new(nf, a, g, r)?);
    }
    Ok(out)
}

/// Orbit of `ξ` under `Δ` and a basis of the isotropy lattice (as exponent vectors).
pub fn delta_orbit(nf: &NumberField, xi: &TorsionPoint, units: &[FieldElement]) -> (Vec<TorsionPoint>, Vec<Vec<i64>>) {
    let r = units.len();
    let mut orbit = vec![xi.clone()];
    let mut exps: Vec<Vec<i64>> = vec![vec![0; r]];
    let mut seen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
    seen.insert(xi.r.clone(), 0);
    let mut iso: Vec<Vec<i64>> = Vec::new();
    let mut i = 0;
    while i < orbit.len() {
        for (j, u) in units.iter().enumerate() {
            let y = orbit[i].act_unit(nf, u);
            let mut e = exps[i].clone();
            e[j] += 1;
            match seen.get(&y.r) {
                Some(&k) => {
                    let d: Vec<i64> = e.iter().zip(&exps[k]).map(|(a, b)| a - b).collect();
                    if d.iter().any(|&x| x != 0) {
                        iso.push(d);
                    }
                }
                None => {
                    seen.insert(y.r.clone(), orbit.len());
                    orbit.push(y);
                    exps.push(e);
                }
            }
        }
        i += 1;
    }
    let iso = if r == 0 {
        Vec::new()
    } else {
        let cols: Vec<Vec<Int>> = iso.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect()).collect();
        hnf_columns(&cols, r)
            .map(|h| h.into_iter().map(|c| c.iter().map(|x| x.to_i64().unwrap()).collect()).collect())
            .unwrap_or_default()
    };
    (orbit, iso)
}

/// Canonical representatives of `𝒯₀[𝔤] = 𝕋₀[𝔤](ℂ)/F⁺^×` with the torsor
/// action of `Cl⁺(𝔤)`.
#[derive(Clone, Debug)]
pub struct TorsorData {
    pub modulus: FractionalIdeal,
    /// Narrow class group `Cl⁺ = Cl⁺(1)`; its representative ideals form `ℭ`.
    pub narrow: RayClassGroup,
    pub reps: Vec<TorsionPoint>,
    /// Narrow class index of each representative.
    pub rep_class: Vec<usize>,
    index: BTreeMap<(usize, Vec<Rat>), usize>,
    /// `action[x][i]` = index of `reps[i]^{𝔟_x}`.
    pub action: Vec<Vec<usize>>,
    units: Vec<FieldElement>,
    unit_group: UnitGroupPlus,
}

impl TorsorData {
    pub fn new(nf: &NumberField, units: &UnitGroupPlus, grp: &RayClassGroup) -> Result<Self> {
        let one = FractionalIdeal::unit(nf);
        let narrow = RayClassGroup::new(nf, units, &one)?;
        let g = grp.modulus.clone();
        if (grp.order() as f64) > 50_000.0 {
            return Err(Error::ScaleExceeded("torsor too large".into()));
        }
        let mut me = TorsorData {
            modulus: g.clone(),
            narrow,
            reps: Vec::new(),
            rep_class: Vec::new(),
            index: BTreeMap::new(),
            action: Vec::new(),
            units: units.generators.clone(),
            unit_group: units.clone(),
        };
        for c in 0..me.narrow.order() as usize {
            let ci = me.narrow.repr_ideal(c).clone();
            for p in all_points(nf, &ci, &g)? {
                if !p.is_primitive(nf) {
                    continue;
                }
                let key = (c, me.orbit_min(nf, &p));
                if !me.index.contains_key(&key) {
                    let (_, r) = key.clone();
                    me.index.insert(key, me.reps.len());
                    me.reps.push(TorsionPoint { r, ..p });
                    me.rep_class.push(c);
                }
            }
        }
        if me.reps.len() as u64 != grp.order() {
            return Err(Error::InvalidInput("primitive torsion classes do not match the ray class group order".into()));
        }
        let mut action = Vec::with_capacity(grp.order() as usize);
        for x in 0..grp.order() as usize {
            let b = grp.repr_ideal(x);
            let mut row = Vec::with_capacity(me.reps.len());
            for i in 0..me.reps.len() {
                let y = me.reps[i].act_ideal(nf, b)?;
                row.push(me.locate(nf, &y)?);
            }
            action.push(row);
        }
        me.action = action;
        Ok(me)
    }

    fn orbit_min(&self, nf: &NumberField, p: &TorsionPoint) -> Vec<Rat> {
        let (orb, _) = delta_orbit(nf, p, &self.units);
        orb.into_iter().map(|q| q.r).min().unwrap()
    }

    /// Canonical form: representative ideal from `ℭ` and minimal `r` over the `Δ`-orbit.
    pub fn canonical(&self, nf: &NumberField, p: &TorsionPoint) -> Result<(usize, TorsionPoint)> {
        let c = self.narrow.class_of(nf, &p.ideal)?;
        let ci = self.narrow.repr_ideal(c);
        let q = p.ideal.multiply(nf, &ci.invert(nf));
        let x = find_totally_positive_generator(nf, &self.unit_group, &q)?.ok_or(Error::PrincipalitySearchFailed)?;
        let moved = p.scale(nf, &nf.inv(&x)?)?;
        debug_assert!(&moved.ideal == ci);
        let r = self.orbit_min(nf, &moved);
        Ok((c, TorsionPoint { r, ..moved }))
    }

    /// Index in `reps` of the class of `p`.
    pub fn locate(&self, nf: &NumberField, p: &TorsionPoint) -> Result<usize> {
        let (c, q) = self.canonical(nf, p)?;
        self.index.get(&(c, q.r)).copied().ok_or(Error::NotPrimitive)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Whether every point is moved to every other by exactly one class.
    pub fn is_torsor(&self) -> bool {
        let n = self.reps.len();
        (0..n).all(|i| {
            let mut hit = vec![false; n];
            for row in &self.action {
                if hit[row[i]] {
                    return false;
                }
                hit[row[i]] = true;
            }
            hit.iter().all(|&h| h)
        })
    }

    /// `c′_abs · η = ι(η)`.
    pub fn involution_check(&self, nf: &NumberField, grp: &RayClassGroup, i: usize) -> Result<bool> {
        let lhs = self.action[grp.c_prime_abs()][i];
        let rhs = self.locate(nf, &self.reps[i].inverse())?;
        Ok(lhs == rhs)
    }

    /// `Art_F([𝔞]) η = η^{[𝔞⁻¹]}`.
    pub fn galois_action(&self, grp: &RayClassGroup, x: usize, i: usize) -> usize {
        self.action[grp.group.inv(x)][i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::arithmetic_data::units_plus;
    use crate::ideals::primes_above;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(&c.iter().map(|&x| int(x)).collect::<Vec<_>>(), None).unwrap()
    }

    fn principal(nf: &NumberField, n: i64) -> FractionalIdeal {
        FractionalIdeal::principal(nf, &nf.from_int(n)).unwrap()
    }

    #[test]
    fn canonical_character_over_q() {
        let q = NumberField::rationals();
        let x = xi_can(&q, &principal(&q, 5)).unwrap();
        assert_eq!(x.ideal.basis()[0], q.from_rat(&rat(1, 5)));
        assert_eq!(x.r, vec![rat(4, 5)]);
        assert!(x.is_primitive(&q));
        let t = xi_can(&q, &principal(&q, 1)).unwrap();
        assert!(t.is_trivial());
    }

    #[test]
    fn canonical_character_sqrt5_mod_2() {
        let f = field(&[-1, -1, 1]);
        let x = xi_can(&f, &principal(&f, 2)).unwrap();
        assert_eq!(x.order(), 2);
        assert!(x.is_primitive(&f));
        let u = units_plus(&f).unwrap();
        let (orb, iso) = delta_orbit(&f, &x, &u.generators);
        assert_eq!(3 % orb.len(), 0);
        assert_eq!(iso, vec![vec![orb.len() as i64]]);
    }

    #[test]
    fn conductor_of_imprimitive_point() {
        let q = NumberField::rationals();
        let o = FractionalIdeal::unit(&q);
        let p = TorsionPoint::new(&q, &o, &principal(&q, 4), vec![rat(1, 2)]).unwrap();
        assert_eq!(p.conductor(&q), principal(&q, 2));
        assert!(!p.is_primitive(&q));
    }

    #[test]
    fn ideal_action_is_functorial() {
        let q = NumberField::rationals();
        let a = FractionalIdeal::principal(&q, &q.from_rat(&rat(1, 5))).unwrap();
        let p = TorsionPoint::new(&q, &a, &principal(&q, 5), vec![rat(1, 5)]).unwrap();
        let p2 = p.act_ideal(&q, &principal(&q, 2)).unwrap();
        assert_eq!(p2.ideal.basis()[0], q.from_rat(&rat(2, 5)));
        assert_eq!(p2.order(), 5);
        let f = field(&[-1, -1, 1]);
        let g = principal(&f, 3);
        let x = xi_can(&f, &g).unwrap();
        let b = primes_above(&f, 11)[0].0.clone();
        let c = primes_above(&f, 19)[1].0.clone();
        let lhs = x.act_ideal(&f, &b).unwrap().act_ideal(&f, &c).unwrap();
        let rhs = x.act_ideal(&f, &b.multiply(&f, &c)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torsor_over_q_mod_5() {
        let q = NumberField::rationals();
        let u = units_plus(&q).unwrap();
        let g = RayClassGroup::new(&q, &u, &principal(&q, 5)).unwrap();
        let t = TorsorData::new(&q, &u, &g).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.is_torsor());
        for i in 0..t.len() {
            assert!(t.involution_check(&q, &g, i).unwrap());
        }
    }

    #[test]
    fn torsor_sizes_and_involution() {
        for (coef, m) in [(&[-1i64, -1, 1][..], 1i64), (&[-1, -1, 1][..], 2), (&[-1, -1, 1][..], 4), (&[-3, 0, 1][..], 1), (&[-3, 0, 1][..], 2)] {
            let f = field(coef);
            let u = units_plus(&f).unwrap();
            let g = RayClassGroup::new(&f, &u, &principal(&f, m)).unwrap();
            let t = TorsorData::new(&f, &u, &g).unwrap();
            assert_eq!(t.len() as u64, g.order());
            assert!(t.is_torsor());
            for i in 0..t.len() {
                assert!(t.involution_check(&f, &g, i).unwrap());
            }
        }
    }

    #[test]
    fn sqrt3_modulus_one_plus_root() {
        let f = field(&[-3, 0, 1]);
        let u = units_plus(&f).unwrap();
        let m = FractionalIdeal::principal(&f, &FieldElement::from_ints(&[1, 1])).unwrap();
        let g = RayClassGroup::new(&f, &u, &m).unwrap();
        let t = TorsorData::new(&f, &u, &g).unwrap();
        for i in 0..t.len() {
            assert!(t.involution_check(&f, &g, i).unwrap());
        }
    }

    fn exp_sum(ts: &[Rat]) -> crate::cyclotomic::Cyc {
        use crate::cyclotomic::{Cyc, CycField};
        let m = ts.iter().map(|t| t.denom().to_u64().unwrap()).fold(1u64, num_integer::lcm);
        let f = CycField::new(m);
        ts.iter().fold(Cyc::zero(&f), |acc, t| acc.add(&Cyc::root(&f, (t * Rat::from_integer(int(m as i64))).to_integer().to_i64().unwrap())))
    }

    #[test]
    fn character_sum_over_lifts() {
        use crate::cyclotomic::Cyc;
        let f = field(&[-1, -1, 1]);
        let u = units_plus(&f).unwrap();
        let o = FractionalIdeal::unit(&f);
        let g = principal(&f, 2);
        let sqrt5 = FractionalIdeal::principal(&f, &FieldElement::from_ints(&[-1, 2])).unwrap();
        let mut cases = vec![(sqrt5, 5u64), (principal(&f, 2), 4)];
        cases.push((primes_above(&f, 11)[0].0.clone(), 11));
        let alphas: Vec<FieldElement> = [[1, 0], [0, 1], [2, 3], [5, 0], [-1, 2], [4, 6], [11, 0], [3, 7]]
            .iter()
            .map(|c| FieldElement::from_ints(c))
            .collect();
        for (p, np) in &cases {
            let pa = p.multiply(&f, &o);
            let lifts = all_points(&f, &o, &p.multiply(&f, &g)).unwrap();
            for xi in all_points(&f, &pa, &g).unwrap() {
                let (orbit, _) = delta_orbit(&f, &xi, &u.generators);
                let fibre: Vec<&TorsionPoint> = lifts.iter().filter(|z| orbit.contains(&z.restrict(&f, p, &g).unwrap())).collect();
                assert_eq!(fibre.len() as u64, *np * orbit.len() as u64);
                for a in &alphas {
                    let lhs = exp_sum(&fibre.iter().map(|z| z.value(a).unwrap()).collect::<Vec<_>>());
                    if pa.contains(a) {
                        let rhs = exp_sum(&orbit.iter().map(|k| k.value(a).unwrap()).collect::<Vec<_>>());
                        let rhs = rhs.scale(&rat(*np as i64, 1));
                        assert!(lhs.sub(&rhs.lift(lhs.field())).is_zero() || lhs.lift(rhs.field()).sub(&rhs).is_zero());
                    } else {
                        assert!(lhs.is_zero(), "{a:?} ∉ 𝔭𝔞 but the sum is {}", Cyc::to_text(&lhs));
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_of_primitive_sets() {
        let q = NumberField::rationals();
        let f = field(&[-1, -1, 1]);
        let sqrt5 = FractionalIdeal::principal(&f, &FieldElement::from_ints(&[-1, 2])).unwrap();
        let cases = [
            (&q, principal(&q, 3), principal(&q, 5)),
            (&q, principal(&q, 3), principal(&q, 3)),
            (&q, principal(&q, 4), principal(&q, 2)),
            (&f, principal(&f, 2), sqrt5.clone()),
            (&f, principal(&f, 2), principal(&f, 2)),
            (&f, sqrt5.clone(), sqrt5),
        ];
        for (nf, g0, p) in cases {
            let o = FractionalIdeal::unit(nf);
            let g1 = p.multiply(nf, &g0);
            let pts = all_points(nf, &o, &g1).unwrap();
            let pulled: Vec<&TorsionPoint> = pts.iter().filter(|z| z.restrict(nf, &p, &g0).unwrap().is_primitive(nf)).collect();
            let prim1: Vec<&TorsionPoint> = pts.iter().filter(|z| z.conductor(nf) == g1).collect();
            let prim0: Vec<&TorsionPoint> = pts.iter().filter(|z| z.conductor(nf) == g0).collect();
            let divides = g0.is_subset(&p);
            let mut want = prim1.clone();
            if !divides {
                want.extend(prim0.iter().copied());
            }
            want.sort();
            let mut got = pulled.clone();
            got.sort();
            assert_eq!(got, want);
            assert!(!prim1.is_empty());
        }
    }
}
