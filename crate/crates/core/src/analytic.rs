//! Floating-point side: Γ-factors, Hurwitz zeta and the Lerch series for
//! real `s > 1`, each with an error estimate. Everything is `f64`.

use crate::arith::{bernoulli_numbers, rat_to_f64};
use crate::error::{Error, Result};
use crate::modp::inv_mod_general;
use crate::numberfield::{FieldElement, NumberField};
use crate::shintani_cones::{Cone, ShintaniDecomposition};
use crate::shintani_values::{adapted_decomposition, distribution_prime, division_orbits, FanChoice};
use crate::torsion::{delta_orbit, TorsionPoint};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// A complex approximation with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub value: Complex64,
    pub err: f64,
}

impl Approx {
    pub fn exact(v: Complex64) -> Self {
        Approx { value: v, err: 0.0 }
    }

    pub fn real(x: f64, err: f64) -> Self {
        Approx { value: Complex64::new(x, 0.0), err }
    }

    pub fn add(self, o: Self) -> Self {
        Approx { value: self.value + o.value, err: self.err + o.err }
    }

    pub fn scale(self, c: Complex64) -> Self {
        Approx { value: self.value * c, err: self.err * c.norm() }
    }

    pub fn mul(self, o: Self) -> Self {
        Approx {
            value: self.value * o.value,
            err: self.err * o.value.norm() + o.err * self.value.norm() + self.err * o.err,
        }
    }

    pub fn rel_err(&self) -> f64 {
        self.err / self.value.norm().max(f64::MIN_POSITIVE)
    }
}

/// `e^{2πit}`.
pub fn unit_root(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// `Γ_ℝ(s) = π^{−s/2} Γ(s/2)`.
pub fn gamma_r(s: f64) -> f64 {
    libm::pow(PI, -s / 2.0) * gamma(s / 2.0)
}

/// Hurwitz `ζ(s, x)` for real `s > 1`, `x > 0`, by Euler–Maclaurin.
pub fn hurwitz_zeta(s: f64, x: f64) -> f64 {
    const N: usize = 24;
    const J: usize = 12;
    let mut sum = 0.0;
    for n in 0..N {
        sum += libm::pow(x + n as f64, -s);
    }
    let a = x + N as f64;
    sum += libm::pow(a, 1.0 - s) / (s - 1.0) + libm::pow(a, -s) / 2.0;
    let b = bernoulli_numbers(2 * J);
    // B_{2j}/(2j)! · s(s+1)…(s+2j−2) · a^{−s−2j+1}
    let mut poch = s;
    let mut fact = 2.0;
    for j in 1..=J {
        sum += rat_to_f64(&b[2 * j]) / fact * poch * libm::pow(a, -s - 2.0 * j as f64 + 1.0);
        poch *= (s + 2.0 * j as f64 - 1.0) * (s + 2.0 * j as f64);
        fact *= (2 * j + 1) as f64 * (2 * j + 2) as f64;
    }
    sum
}

const EULER_TERMS: usize = 10;

struct ConeSeries<'a> {
    gens: &'a [Vec<f64>],
    z: &'a [Complex64],
    cut: &'a [usize],
    s: f64,
    na: f64,
}

impl ConeSeries<'_> {
    /// `Σ_{n_d, …, n_{g−1} ≥ 0} ∏ z_i^{n_i} N(𝔞^{−1}(p + Σ n_i α_i))^{−s}`.
    fn level(&self, d: usize, p: &[f64]) -> Approx {
        let g = self.gens.len();
        if d == g {
            let n: f64 = p.iter().product::<f64>() / self.na;
            return Approx::real(libm::pow(n, -self.s), 0.0);
        }
        let z = self.z[d];
        let b = self.cut[d];
        let at = |n: usize| -> Approx {
            let q: Vec<f64> = p.iter().zip(&self.gens[d]).map(|(x, a)| x + n as f64 * a).collect();
            self.level(d + 1, &q)
        };
        let mut acc = Approx::exact(Complex64::new(0.0, 0.0));
        let mut zn = Complex64::new(1.0, 0.0);
        for n in 0..b {
            acc = acc.add(at(n).scale(zn));
            zn *= z;
        }
        // Σ_{n≥B} z^n F(n) = z^B Σ_j z^j Δ^j F(B) / (1 − z)^{j+1}
        let mut diffs: Vec<Approx> = (b..=b + EULER_TERMS).map(at).collect();
        let w = z / (Complex64::new(1.0, 0.0) - z);
        let mut coef = zn / (Complex64::new(1.0, 0.0) - z);
        let mut last = 0.0;
        for _ in 0..=EULER_TERMS {
            let t = diffs[0].scale(coef);
            last = t.value.norm();
            acc = acc.add(t);
            diffs = diffs.windows(2).map(|w2| Approx { value: w2[1].value - w2[0].value, err: w2[0].err + w2[1].err }).collect();
            if diffs.is_empty() {
                break;
            }
            coef *= w;
        }
        acc.err += 2.0 * last;
        acc
    }
}

fn cut_for(z: Complex64, s: f64) -> usize {
    let gap = (Complex64::new(1.0, 0.0) - z).norm();
    let b = 1.5 * (2.0 * s + EULER_TERMS as f64) / gap;
    (libm::ceil(b) as usize).max(12)
}

/// One cone's share `sgn · Σ_β η(β) Σ_n η(α)^n N(𝔞^{−1}(β + Σ nα))^{−s}`.
pub fn cone_series(nf: &NumberField, cone: &Cone, eta: &TorsionPoint, s: f64) -> Result<Approx> {
    let g = nf.degree();
    let na = rat_to_f64(&cone.ideal.norm());
    let pts = cone.parallelepiped_points(true)?;
    if g == 1 {
        // Σ_n z^n (x + n)^{−s} = m^{−s} Σ_{r<m} z^r ζ(s, (x + r)/m)
        let alpha = nf.embed_f64(&cone.gens[0])[0] / na;
        let t = rat_to_f64(&eta.value(&cone.gens[0])?);
        let m = eta.order().max(1);
        let mut acc = Approx::exact(Complex64::new(0.0, 0.0));
        for (beta, x) in &pts {
            let xb = rat_to_f64(&x[0]);
            let phase = unit_root(rat_to_f64(&eta.value(beta)?));
            let mut inner = Complex64::new(0.0, 0.0);
            for r in 0..m {
                let zr = unit_root(t * r as f64);
                inner += zr * hurwitz_zeta(s, (xb + r as f64) / m as f64);
            }
            inner *= libm::pow(m as f64, -s) * libm::pow(alpha, -s);
            acc = acc.add(Approx { value: phase * inner, err: 1e-14 * inner.norm() });
        }
        return Ok(acc.scale(Complex64::new(cone.sign as f64, 0.0)));
    }
    let mut z = Vec::with_capacity(g);
    for a in &cone.gens {
        let t = eta.value(a)?;
        if t.numer().to_i64() == Some(0) {
            return Err(Error::KernelRay);
        }
        z.push(unit_root(rat_to_f64(&t)));
    }
    let gens: Vec<Vec<f64>> = cone.gens.iter().map(|a| nf.embed_f64(a)).collect();
    let cut: Vec<usize> = z.iter().map(|&zi| cut_for(zi, s)).collect();
    let series = ConeSeries { gens: &gens, z: &z, cut: &cut, s, na };
    let mut acc = Approx::exact(Complex64::new(0.0, 0.0));
    for (beta, _) in &pts {
        let phase = unit_root(rat_to_f64(&eta.value(beta)?));
        let p = nf.embed_f64(beta);
        acc = acc.add(series.level(0, &p).scale(phase));
    }
    acc.err += 1e-13 * acc.value.norm();
    Ok(acc.scale(Complex64::new(cone.sign as f64, 0.0)))
}

/// `ℒ(ξΔ, s)` summed over an adapted decomposition.
pub fn lerch_series_on(nf: &NumberField, xi: &TorsionPoint, s: f64, dec: &ShintaniDecomposition) -> Result<Approx> {
    let (orbit, _) = delta_orbit(nf, xi, &dec.units);
    let mut acc = Approx::exact(Complex64::new(0.0, 0.0));
    for eta in &orbit {
        for c in &dec.cones {
            acc = acc.add(cone_series(nf, c, eta, s)?);
        }
    }
    Ok(acc)
}

/// `ℒ(ξΔ, s)` for real `s > 1`.
pub fn lerch_series(nf: &NumberField, xi: &TorsionPoint, s: f64, units: &[FieldElement]) -> Result<Approx> {
    if s <= 1.0 {
        return Err(Error::InvalidInput("the Lerch series needs s > 1".into()));
    }
    match adapted_decomposition(nf, xi, units, FanChoice::Hull) {
        Ok(dec) => lerch_series_on(nf, xi, s, &dec),
        Err(Error::KernelRay) => lerch_series_by_distribution(nf, xi, s, units),
        Err(e) => Err(e),
    }
}

/// `c ℒ(ξ_j) = ℒ(ξ_{j+1}) + R_j` with `ξ_j = ξ^{p′^j}`, `c = p^{g(1−s)}`,
/// solved around the cycle `ξ_r = ξ_0`.
fn lerch_series_by_distribution(nf: &NumberField, xi: &TorsionPoint, s: f64, units: &[FieldElement]) -> Result<Approx> {
    let g = nf.degree() as f64;
    let (p, _) = distribution_prime(nf, xi, units)?;
    let m = xi.order();
    let pinv = inv_mod_general(p as i128, m as i128).ok_or(Error::NotCoprime)? as i64;
    let mut points = vec![xi.clone()];
    loop {
        let next = points.last().unwrap().power(pinv);
        if next == points[0] {
            break;
        }
        points.push(next);
    }
    let r = points.len();
    let c = libm::pow(p as f64, g * (s - 1.0));
    let mut acc = Approx::exact(Complex64::new(0.0, 0.0));
    let mut cj = c;
    for pt in &points {
        let mut rj = Approx::exact(Complex64::new(0.0, 0.0));
        for z in division_orbits(nf, pt, units, p)? {
            let dec = adapted_decomposition(nf, &z, units, FanChoice::Hull)?;
            rj = rj.add(lerch_series_on(nf, &z, s, &dec)?);
        }
        acc = acc.add(rj.scale(Complex64::new(cj, 0.0)));
        cj *= c;
    }
    let denom = 1.0 - libm::pow(c, r as f64);
    Ok(acc.scale(Complex64::new(1.0 / denom, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::arithmetic_data::units_plus;
    use crate::ideals::FractionalIdeal;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn gamma_factors() {
        assert!(close(gamma(5.0), 24.0, 1e-13));
        assert!(close(gamma(0.5), PI.sqrt(), 1e-13));
        assert!(close(gamma_r(2.0), 1.0 / PI, 1e-13));
    }

    #[test]
    fn hurwitz_against_direct_sums() {
        assert!(close(hurwitz_zeta(2.0, 1.0), PI * PI / 6.0, 1e-13));
        assert!(close(hurwitz_zeta(4.0, 1.0), libm::pow(PI, 4.0) / 90.0, 1e-13));
        // ζ(2, 1/2) = 3ζ(2)
        assert!(close(hurwitz_zeta(2.0, 0.5), PI * PI / 2.0, 1e-13));
        // brute force with an integral tail
        let (s, x) = (3.5, 0.3);
        let mut d = 0.0;
        for n in 0..200_000 {
            d += libm::pow(x + n as f64, -s);
        }
        d += libm::pow(x + 200_000.0, 1.0 - s) / (s - 1.0);
        assert!(close(hurwitz_zeta(s, x), d, 1e-10));
    }

    #[test]
    fn rational_lerch_series() {
        let q = NumberField::rationals();
        let z = FractionalIdeal::unit(&q);
        let t = TorsionPoint::trivial(&q, &z, &z);
        let v = lerch_series(&q, &t, 2.0, &[]).unwrap();
        assert!(close(v.value.re, PI * PI / 6.0, 1e-12));
        // Σ (−1)^n / n² = −π²/12
        let m2 = FractionalIdeal::principal(&q, &q.from_int(2)).unwrap();
        let h = TorsionPoint::new(&q, &z, &m2, vec![rat(1, 2)]).unwrap();
        let v = lerch_series(&q, &h, 2.0, &[]).unwrap();
        assert!(close(v.value.re, -PI * PI / 12.0, 1e-12));
        assert!(v.value.im.abs() < 1e-12);
    }

    fn brute_lerch_sqrt5(r: [f64; 2], s: f64, bound: i64) -> Complex64 {
        // totally positive a + bω, ω = (1+√5)/2, one per orbit of ε = ω²:
        // x/x′ ∈ [c, cω⁴) with c chosen away from lattice directions
        let w = (1.0 + 5f64.sqrt()) / 2.0;
        let wc = (1.0 - 5f64.sqrt()) / 2.0;
        let e2 = libm::pow(w, 4.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for a in -bound..=bound {
            for b in -bound..=bound {
                let x = a as f64 + b as f64 * w;
                let y = a as f64 + b as f64 * wc;
                if x <= 0.0 || y <= 0.0 {
                    continue;
                }
                let q = x / y;
                if !(1.2345..1.2345 * e2).contains(&q) {
                    continue;
                }
                let t = r[0] * a as f64 + r[1] * b as f64;
                acc += unit_root(t) * libm::pow(x * y, -s);
            }
        }
        acc
    }

    #[test]
    fn golden_lerch_series_against_brute_force() {
        let f = NumberField::new(&[int(-1), int(-1), int(1)], None).unwrap();
        let u = units_plus(&f).unwrap();
        let o = FractionalIdeal::unit(&f);
        let m2 = FractionalIdeal::principal(&f, &f.from_int(2)).unwrap();
        let xi = TorsionPoint::new(&f, &o, &m2, vec![rat(1, 2), rat(0, 1)]).unwrap();
        let v = lerch_series(&f, &xi, 3.0, &u.generators).unwrap();
        // the orbit sum of ξ equals Σ over Δ-classes of Σ_{η ∈ orbit} η(α)
        let (orbit, _) = delta_orbit(&f, &xi, &u.generators);
        let mut want = Complex64::new(0.0, 0.0);
        for eta in &orbit {
            let r = [rat_to_f64(&eta.r[0]), rat_to_f64(&eta.r[1])];
            want += brute_lerch_sqrt5(r, 3.0, 400);
        }
        assert!((v.value - want).norm() < 1e-6, "{:?} vs {:?}", v, want);
        let t = TorsionPoint::trivial(&f, &o, &o);
        let z = lerch_series(&f, &t, 3.0, &u.generators).unwrap();
        let want = brute_lerch_sqrt5([0.0, 0.0], 3.0, 400);
        assert!((z.value - want).norm() < 1e-6, "{:?} vs {:?}", z, want);
    }
}
