//! Simplicial cones spanned by totally positive elements, the half-open
//! boundary rule obtained by pushing points slightly against the last
//! embedding, parallelepiped lattice points, and fans that are fundamental
//! domains for the action of `Δ` on `𝔞₊`.

use crate::arith::{gcd_all, int, rint, Int, Rat, SampleRng};
use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::linalg::{qinverse, qmatvec, zdet, QMat, ZMat};
use crate::numberfield::{FieldElement, NumberField};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The cone `σ_𝛂 = ℝ_{>0}α₁ + ⋯ + ℝ_{>0}α_g` together with its lattice.
#[derive(Clone, Debug)]
pub struct Cone {
    pub ideal: FractionalIdeal,
    pub gens: Vec<FieldElement>,
    /// Sign of `det(α_j^{τ_i})`.
    pub sign: i8,
    /// `coords[i]` = coordinates of `α_i` in the basis of `𝔞`.
    coords: Vec<Vec<Int>>,
    inv: QMat,
    /// Signs of `c = Λ⁻¹ e_{τ_g}`.
    push: Vec<i8>,
}

impl PartialEq for Cone {
    fn eq(&self, o: &Self) -> bool {
        self.ideal == o.ideal && self.gens == o.gens
    }
}

impl Cone {
    pub fn new(nf: &NumberField, ideal: &FractionalIdeal, gens: Vec<FieldElement>) -> Result<Self> {
        let g = nf.degree();
        if gens.len() != g {
            return Err(Error::InvalidInput(format!("a cone needs {g} generators")));
        }
        let mut coords = Vec::with_capacity(g);
        for a in &gens {
            let c = ideal.int_coords(a).ok_or(Error::NotInIdeal)?;
            if !nf.is_totally_positive(a) {
                return Err(Error::NotTotallyPositive);
            }
            if !gcd_all(c.iter()).is_one() {
                return Err(Error::NotPrimitive);
            }
            coords.push(c);
        }
        let m: ZMat = (0..g).map(|r| (0..g).map(|i| coords[i][r].clone()).collect()).collect();
        if zdet(&m).is_zero() {
            return Err(Error::DegenerateCone);
        }
        let inv = qinverse(&crate::linalg::to_q(&m)).ok_or(Error::DegenerateCone)?;
        let sign = nf.sign_det(&gens)?;
        let rows: Vec<usize> = (0..g - 1).collect();
        let mut push = Vec::with_capacity(g);
        for i in 0..g {
            let minor: Vec<FieldElement> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            let s = nf.sign_det_rows(&minor, &rows)?;
            let parity = if (g - 1 + i) % 2 == 0 { 1 } else { -1 };
            push.push(parity * s * sign);
        }
        Ok(Cone { ideal: ideal.clone(), gens, sign, coords, inv, push })
    }

    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    /// `[𝔞 : ℤα₁ + ⋯ + ℤα_g]`.
    pub fn index(&self) -> Int {
        let g = self.degree();
        let m: ZMat = (0..g).map(|r| (0..g).map(|i| self.coords[i][r].clone()).collect()).collect();
        zdet(&m).abs()
    }

    pub fn generator_coords(&self) -> &Vec<Vec<Int>> {
        &self.coords
    }

    /// Signs of the coordinates of `Λ⁻¹ e_{τ_g}`.
    pub fn push_signs(&self) -> &Vec<i8> {
        &self.push
    }

    /// `x` with `y = Σ xᵢ αᵢ`.
    pub fn cone_coords(&self, y: &FieldElement) -> Vec<Rat> {
        qmatvec(&self.inv, &self.ideal.coords(y))
    }

    fn coords_from_lattice(&self, r: &[Int]) -> Vec<Rat> {
        let rq: Vec<Rat> = r.iter().map(rint).collect();
        qmatvec(&self.inv, &rq)
    }

    /// Whether `x` (cone coordinates) lies in the closed cone pushed by the rule.
    pub fn breve_cone_coords(&self, x: &[Rat]) -> bool {
        x.iter().zip(&self.push).all(|(xi, c)| xi.is_positive() || (xi.is_zero() && *c <= 0))
    }

    /// Whether `x` lies in the parallelepiped `[0,1)^g` (or its pushed version).
    pub fn in_parallelepiped(&self, x: &[Rat], breve: bool) -> bool {
        let one = Rat::one();
        x.iter().zip(&self.push).all(|(xi, c)| {
            if breve {
                let lower = xi.is_positive() || (xi.is_zero() && *c <= 0);
                let upper = xi < &one || (xi == &one && *c > 0);
                lower && upper
            } else {
                !xi.is_negative() && xi < &one
            }
        })
    }

    pub fn breve_membership(&self, y: &FieldElement) -> bool {
        self.breve_cone_coords(&self.cone_coords(y))
    }

    /// Lattice points of `𝔞` in the parallelepiped spanned by the generators,
    /// with their cone coordinates, in lexicographic order of `𝔞`-coordinates.
    pub fn parallelepiped_points(&self, breve: bool) -> Result<Vec<(FieldElement, Vec<Rat>)>> {
        let g = self.degree();
        let mut lo = vec![Int::zero(); g];
        let mut hi = vec![Int::zero(); g];
        for r in 0..g {
            for i in 0..g {
                let a = &self.coords[i][r];
                if a.is_negative() {
                    lo[r] += a;
                } else {
                    hi[r] += a;
                }
            }
        }
        let mut size = 1f64;
        for r in 0..g {
            size *= (&hi[r] - &lo[r] + 1u32).to_f64().unwrap();
        }
        if size > 5.0e7 {
            return Err(Error::ScaleExceeded(format!("parallelepiped box of size {size:.0}")));
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let x = self.coords_from_lattice(&cur);
            if self.in_parallelepiped(&x, breve) {
                out.push((self.ideal.element(&cur), x));
            }
            let mut j = g;
            loop {
                if j == 0 {
                    return Ok(out);
                }
                j -= 1;
                cur[j] += 1;
                if cur[j] <= hi[j] {
                    break;
                }
                cur[j] = lo[j].clone();
            }
        }
    }

    /// `x·σ` as a cone of `x𝔞`.
    pub fn scaled(&self, nf: &NumberField, x: &FieldElement) -> Result<Cone> {
        let ideal = self.ideal.scale(nf, x)?;
        Cone::new(nf, &ideal, self.gens.iter().map(|a| nf.mul(a, x)).collect())
    }
}

/// A finite set of cones whose pushed closures tile `𝔞₊` modulo `Δ`.
#[derive(Clone, Debug)]
pub struct ShintaniDecomposition {
    pub ideal: FractionalIdeal,
    pub cones: Vec<Cone>,
    pub units: Vec<FieldElement>,
}

impl ShintaniDecomposition {
    /// All distinct cone generators.
    pub fn rays(&self) -> Vec<FieldElement> {
        let mut out: Vec<FieldElement> = Vec::new();
        for c in &self.cones {
            for a in &c.gens {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        }
        out
    }

    pub fn scaled(&self, nf: &NumberField, x: &FieldElement) -> Result<ShintaniDecomposition> {
        Ok(ShintaniDecomposition {
            ideal: self.ideal.scale(nf, x)?,
            cones: self.cones.iter().map(|c| c.scaled(nf, x)).collect::<Result<_>>()?,
            units: self.units.clone(),
        })
    }
}

fn det2(a: &[Int], b: &[Int]) -> Int {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Rays `v = u₀, u₁, …, u_n = εv` on the boundary of the convex hull of
/// `𝔞 ∩ ℝ²₊` between `v` and `εv`.
pub fn hull_rays(nf: &NumberField, a: &FractionalIdeal, eps: &FieldElement, start: &FieldElement) -> Result<Vec<FieldElement>> {
    if nf.degree() != 2 {
        return Err(Error::NeedUserCones);
    }
    let v0 = a.int_coords(start).ok_or(Error::NotInIdeal)?;
    let ev0 = a.int_coords(&nf.mul(eps, start)).ok_or(Error::NotInIdeal)?;
    // orient so that det(v, εv) > 0 in coordinates
    let flip = det2(&v0, &ev0).is_negative();
    let tr = |c: &[Int]| -> Vec<Int> { if flip { vec![c[1].clone(), c[0].clone()] } else { c.to_vec() } };
    let v = tr(&v0);
    let ev = tr(&ev0);
    if det2(&v, &ev).is_zero() {
        return Err(Error::DegenerateCone);
    }
    let (g, s, t) = xgcd_pair(&v[0], &v[1]);
    if !g.is_one() {
        return Err(Error::NotPrimitive);
    }
    // det(v, w) = v0 w1 − v1 w0 = 1 with w = (−t, s)
    let mut w = vec![-t, s];
    let mut cur = v.clone();
    let mut rays = vec![v.clone()];
    for _ in 0..10_000 {
        let q = det2(&cur, &ev);
        if q.is_zero() {
            break;
        }
        let aa = det2(&ev, &w);
        let c = aa.div_ceil(&q);
        let next: Vec<Int> = (0..2).map(|i| &c * &cur[i] + &w[i]).collect();
        w = cur.iter().map(|x| -x).collect();
        cur = next;
        rays.push(cur.clone());
    }
    if rays.last() != Some(&ev) {
        return Err(Error::ScaleExceeded("hull walk did not close".into()));
    }
    Ok(rays.iter().map(|r| a.element(&tr(r))).collect())
}

fn xgcd_pair(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    let mut g = e.gcd;
    let (mut x, mut y) = (e.x, e.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    (g, x, y)
}

fn fan_from_rays(nf: &NumberField, a: &FractionalIdeal, rays: &[FieldElement], units: &[FieldElement]) -> Result<ShintaniDecomposition> {
    let mut cones = Vec::new();
    for w in rays.windows(2) {
        let mut gens = vec![w[0].clone(), w[1].clone()];
        let mut c = Cone::new(nf, a, gens.clone())?;
        if c.sign < 0 {
            gens.swap(0, 1);
            c = Cone::new(nf, a, gens)?;
        }
        cones.push(c);
    }
    Ok(ShintaniDecomposition { ideal: a.clone(), cones, units: units.to_vec() })
}

fn single_generator_cone(nf: &NumberField, a: &FractionalIdeal) -> Result<ShintaniDecomposition> {
    let q = a.rational_generator(nf);
    let c = Cone::new(nf, a, vec![nf.from_rat(&q)])?;
    Ok(ShintaniDecomposition { ideal: a.clone(), cones: vec![c], units: Vec::new() })
}

/// Decomposition of `𝔞₊` modulo `Δ`: one cone for `g = 1`, the hull fan
/// between `v` and `εv` for `g = 2`, where `v` generates `𝔞 ∩ ℚ`.
pub fn decompose(nf: &NumberField, a: &FractionalIdeal, units: &[FieldElement]) -> Result<ShintaniDecomposition> {
    match nf.degree() {
        1 => single_generator_cone(nf, a),
        2 => {
            let v = nf.from_rat(&a.rational_generator(nf));
            let rays = hull_rays(nf, a, &units[0], &v)?;
            fan_from_rays(nf, a, &rays, units)
        }
        _ => Err(Error::NeedUserCones),
    }
}

/// Hull fan with every ray satisfying `good`: bad intermediate rays are
/// dropped and the walk is restarted at a good ray when `v` itself is bad.
pub fn decompose_avoiding(
    nf: &NumberField,
    a: &FractionalIdeal,
    units: &[FieldElement],
    good: &dyn Fn(&[Int]) -> bool,
) -> Result<ShintaniDecomposition> {
    if nf.degree() != 2 {
        return Err(Error::NeedUserCones);
    }
    let eps = &units[0];
    let v = nf.from_rat(&a.rational_generator(nf));
    let rays = hull_rays(nf, a, eps, &v)?;
    let ok: Vec<bool> = rays.iter().map(|r| good(&a.int_coords(r).unwrap())).collect();
    let Some(j) = ok.iter().position(|&b| b) else {
        return Err(Error::KernelRay);
    };
    // the ray sequence is ε-periodic: u_{i+n} = ε u_i
    let n = rays.len() - 1;
    let mut walk = Vec::new();
    for i in j..=j + n {
        if ok[i % n] {
            walk.push(if i <= n { rays[i].clone() } else { nf.mul(eps, &rays[i - n]) });
        }
    }
    fan_from_rays(nf, a, &walk, units)
}

/// Single cone `(v′, εv′)` with `v′` the first good totally positive
/// primitive element in a fixed enumeration of `𝔞`.
pub fn single_cone_avoiding(
    nf: &NumberField,
    a: &FractionalIdeal,
    units: &[FieldElement],
    good: &dyn Fn(&[Int]) -> bool,
) -> Result<ShintaniDecomposition> {
    if nf.degree() != 2 {
        return Err(Error::NeedUserCones);
    }
    let eps = &units[0];
    for radius in 1i64..80 {
        for x in -radius..=radius {
            for y in [-radius, radius] {
                for c in [[x, y], [y, x]] {
                    let cc = [int(c[0]), int(c[1])];
                    if !gcd_all(cc.iter()).is_one() || !good(&cc) {
                        continue;
                    }
                    let e = a.element(&cc);
                    if !nf.is_totally_positive(&e) {
                        continue;
                    }
                    return fan_from_rays(nf, a, &[e.clone(), nf.mul(eps, &e)], units);
                }
            }
        }
    }
    Err(Error::KernelRay)
}

/// Decomposition from explicit cone generators (for `g ≥ 3`).
pub fn from_user_cones(
    nf: &NumberField,
    a: &FractionalIdeal,
    units: &[FieldElement],
    cones: Vec<Vec<FieldElement>>,
) -> Result<ShintaniDecomposition> {
    let cones = cones.into_iter().map(|g| Cone::new(nf, a, g)).collect::<Result<Vec<_>>>()?;
    Ok(ShintaniDecomposition { ideal: a.clone(), cones, units: units.to_vec() })
}

fn log_vec(nf: &NumberField, x: &FieldElement) -> Vec<f64> {
    nf.embed_f64(x).iter().map(|v| libm::log(v.abs())).collect()
}

/// Number of pairs (cone, unit) placing `y` in a pushed cone, searched in a
/// window around the balancing unit.
pub fn cover_count(nf: &NumberField, dec: &ShintaniDecomposition, y: &FieldElement) -> Result<usize> {
    let g = nf.degree();
    let r = dec.units.len();
    if r == 0 {
        return Ok(dec.cones.iter().filter(|c| c.breve_membership(y)).count());
    }
    // reference point: barycentre of the first cone
    let mut refp = nf.zero();
    for a in &dec.cones[0].gens {
        refp = refp.add(a);
    }
    let ly = log_vec(nf, y);
    let lr = log_vec(nf, &refp);
    let lu: Vec<Vec<f64>> = dec.units.iter().map(|u| log_vec(nf, u)).collect();
    // least squares for n: Σ n_j lu_j ≈ (lr − ly) after removing the mean
    let centre = |v: &[f64]| -> Vec<f64> {
        let m = v.iter().sum::<f64>() / g as f64;
        v.iter().map(|x| x - m).collect()
    };
    let target = centre(&lr.iter().zip(&ly).map(|(a, b)| a - b).collect::<Vec<_>>());
    let cols: Vec<Vec<f64>> = lu.iter().map(|v| centre(v)).collect();
    let mut ata = vec![vec![0.0; r]; r];
    let mut atb = vec![0.0; r];
    for i in 0..r {
        for j in 0..r {
            ata[i][j] = cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
        }
        atb[i] = cols[i].iter().zip(&target).map(|(a, b)| a * b).sum();
    }
    let n0 = solve_small(&ata, &atb);
    let window: i64 = if r == 1 { 3 } else { 4 };
    let mut count = 0;
    let mut n: Vec<i64> = n0.iter().map(|x| libm::round(*x) as i64 - window).collect();
    let base: Vec<i64> = n.clone();
    loop {
        let mut z = y.clone();
        for (j, e) in n.iter().enumerate() {
            if *e != 0 {
                z = nf.mul(&z, &nf.pow(&dec.units[j], *e)?);
            }
        }
        count += dec.cones.iter().filter(|c| c.breve_membership(&z)).count();
        let mut j = 0;
        loop {
            if j == r {
                return Ok(count);
            }
            n[j] += 1;
            if n[j] <= base[j] + 2 * window {
                break;
            }
            n[j] = base[j];
            j += 1;
        }
    }
}

fn solve_small(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(*x);
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().partial_cmp(&m[j][c].abs()).unwrap()).unwrap();
        m.swap(p, c);
        for r in 0..n {
            if r != c {
                let f = m[r][c] / m[c][c];
                for k in c..=n {
                    m[r][k] -= f * m[c][k];
                }
            }
        }
    }
    (0..n).map(|i| m[i][n] / m[i][i]).collect()
}

/// Random totally positive element of `𝔞` with coordinates in `[-h, h]`.
pub fn random_positive(nf: &NumberField, a: &FractionalIdeal, rng: &mut SampleRng, h: i64) -> FieldElement {
    let g = nf.degree();
    loop {
        let c: Vec<Int> = (0..g).map(|_| int(rng.range(-h, h))).collect();
        let x = a.element(&c);
        if !x.is_zero() && nf.is_totally_positive(&x) {
            return x;
        }
    }
}

/// Sampled check that every point is covered exactly once.
pub fn verify_fundamental_domain(nf: &NumberField, dec: &ShintaniDecomposition, samples: usize, seed: u64) -> Result<()> {
    let mut rng = SampleRng::new(seed);
    for _ in 0..samples {
        let y = random_positive(nf, &dec.ideal, &mut rng, 40);
        let c = cover_count(nf, dec, &y)?;
        if c != 1 {
            return Err(Error::NotFundamentalDomain(format!("a sample point is covered {c} times")));
        }
    }
    Ok(())
}

/// Random cone with primitive totally positive generators of height `≤ h`.
pub fn random_cone(nf: &NumberField, a: &FractionalIdeal, rng: &mut SampleRng, h: i64) -> Cone {
    let g = nf.degree();
    loop {
        let mut gens = Vec::with_capacity(g);
        for _ in 0..g {
            let x = random_positive(nf, a, rng, h);
            let c = a.int_coords(&x).unwrap();
            let d = gcd_all(c.iter());
            gens.push(x.scale(&Rat::new(Int::one(), d)));
        }
        if let Ok(c) = Cone::new(nf, a, gens) {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::arithmetic_data::units_plus;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(&c.iter().map(|&x| int(x)).collect::<Vec<_>>(), None).unwrap()
    }

    #[test]
    fn rational_cone_points() {
        let q = NumberField::rationals();
        let z = FractionalIdeal::unit(&q);
        let c = Cone::new(&q, &z, vec![q.one()]).unwrap();
        let p: Vec<_> = c.parallelepiped_points(false).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(p, vec![q.zero()]);
        let p: Vec<_> = c.parallelepiped_points(true).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(p, vec![q.one()]);
    }

    #[test]
    fn golden_fan_is_one_unimodular_cone() {
        let f = field(&[-1, -1, 1]);
        let u = units_plus(&f).unwrap();
        let o = FractionalIdeal::unit(&f);
        let d = decompose(&f, &o, &u.generators).unwrap();
        assert_eq!(d.cones.len(), 1);
        assert_eq!(d.cones[0].gens, vec![f.one(), FieldElement::from_ints(&[1, 1])]);
        assert_eq!(d.cones[0].index(), int(1));
        assert_eq!(d.cones[0].parallelepiped_points(true).unwrap().len(), 1);
        verify_fundamental_domain(&f, &d, 300, 7).unwrap();
    }

    #[test]
    fn sqrt2_fan() {
        let f = field(&[-2, 0, 1]);
        let u = units_plus(&f).unwrap();
        let o = FractionalIdeal::unit(&f);
        let d = decompose(&f, &o, &u.generators).unwrap();
        let rays = d.rays();
        assert!(rays.contains(&FieldElement::from_ints(&[2, 1])));
        assert_eq!(d.cones.len(), 2);
        verify_fundamental_domain(&f, &d, 300, 9).unwrap();
    }

    #[test]
    fn push_rule_examples() {
        let f = field(&[-1, -1, 1]);
        let o = FractionalIdeal::unit(&f);
        let c = Cone::new(&f, &o, vec![f.one(), FieldElement::from_ints(&[1, 1])]).unwrap();
        assert!(c.breve_cone_coords(&[rat(1, 2), rat(1, 2)]));
        assert_eq!(c.push_signs(), &vec![-1, 1]);
        // on the ray of α₂: x₁ = 0 with c₁ < 0 is kept; the ray of α₁ is not
        assert!(c.breve_cone_coords(&[rat(0, 1), rat(1, 2)]));
        assert!(!c.breve_cone_coords(&[rat(1, 2), rat(0, 1)]));
    }

    #[test]
    fn avoiding_fans_cover() {
        let f = field(&[-2, 0, 1]);
        let u = units_plus(&f).unwrap();
        let o = FractionalIdeal::unit(&f);
        // drop every ray whose first coordinate is even
        let good = |c: &[Int]| c[0].is_odd();
        let d = decompose_avoiding(&f, &o, &u.generators, &good).unwrap();
        for r in d.rays() {
            assert!(good(&o.int_coords(&r).unwrap()));
        }
        verify_fundamental_domain(&f, &d, 200, 3).unwrap();
        let s = single_cone_avoiding(&f, &o, &u.generators, &good).unwrap();
        assert_eq!(s.cones.len(), 1);
        verify_fundamental_domain(&f, &s, 200, 4).unwrap();
    }

    #[test]
    fn scaled_decomposition_covers_scaled_ideal() {
        let f = field(&[-3, 0, 1]);
        let u = units_plus(&f).unwrap();
        let o = FractionalIdeal::unit(&f);
        let d = decompose(&f, &o, &u.generators).unwrap();
        let x = FieldElement::from_ints(&[3, 1]);
        let dx = d.scaled(&f, &x).unwrap();
        verify_fundamental_domain(&f, &dx, 200, 5).unwrap();
        let direct = decompose(&f, &dx.ideal, &u.generators).unwrap();
        verify_fundamental_domain(&f, &direct, 200, 6).unwrap();
    }

    #[test]
    fn point_count_equals_index_with_float_push_oracle() {
        let f = field(&[-5, 0, 1]);
        let o = FractionalIdeal::unit(&f);
        let mut rng = SampleRng::new(11);
        for _ in 0..40 {
            let c = random_cone(&f, &o, &mut rng, 6);
            let p = c.parallelepiped_points(false).unwrap();
            let b = c.parallelepiped_points(true).unwrap();
            assert_eq!(int(p.len() as i64), c.index());
            assert_eq!(int(b.len() as i64), c.index());
            // floating oracle: push each point by −δ in the last embedding
            let lam: Vec<Vec<f64>> = (0..2).map(|t| c.gens.iter().map(|a| f.embed_f64(a)[t]).collect()).collect();
            let det = lam[0][0] * lam[1][1] - lam[0][1] * lam[1][0];
            for (y, x) in &b {
                let e = f.embed_f64(y);
                let d = 1e-7;
                let e = [e[0], e[1] - d];
                let x0 = (lam[1][1] * e[0] - lam[0][1] * e[1]) / det;
                let x1 = (-lam[1][0] * e[0] + lam[0][0] * e[1]) / det;
                assert!((0.0..1.0).contains(&x0) && (0.0..1.0).contains(&x1), "{x:?}");
            }
        }
    }
}
