//! Cohomology of `Δ ≅ ℤ^{g−1}` through the Koszul resolution, and the
//! dimension table for the equivariant cohomology of the logarithm sheaf.

use crate::arith::{binom, Rat};
use crate::arithmetic_data::{RayClassGroup, UnitGroupPlus};
use crate::error::{Error, Result};
use crate::ideals::FractionalIdeal;
use crate::numberfield::{FieldElement, NumberField};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, ToPrimitive, Zero};

/// Exact field arithmetic on coefficients of type `E`.
pub trait FieldOps {
    type E: Clone + PartialEq + core::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = Rat;
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
}

impl FieldOps for NumberField {
    type E = FieldElement;
    fn zero(&self) -> FieldElement {
        NumberField::zero(self)
    }
    fn one(&self) -> FieldElement {
        NumberField::one(self)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.add(b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.sub(b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        NumberField::mul(self, a, b)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        NumberField::inv(self, a).ok()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

fn identity<K: FieldOps>(k: &K, n: usize) -> Matrix<K::E> {
    (0..n).map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect()).collect()
}

fn matmul<K: FieldOps>(k: &K, a: &Matrix<K::E>, b: &Matrix<K::E>) -> Matrix<K::E> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    let mut out = vec![vec![k.zero(); m]; n];
    for i in 0..n {
        for l in 0..inner {
            if k.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                let t = k.mul(&a[i][l], &b[l][j]);
                out[i][j] = k.add(&out[i][j], &t);
            }
        }
    }
    out
}

/// Rank by Gaussian elimination.
pub fn rank<K: FieldOps>(k: &K, m: &Matrix<K::E>) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = k.inv(&a[r][c]).unwrap();
        for i in 0..rows {
            if i != r && !k.is_zero(&a[i][c]) {
                let f = k.mul(&a[i][c], &inv);
                for j in c..cols {
                    let t = k.mul(&f, &a[r][j]);
                    a[i][j] = k.sub(&a[i][j], &t);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// A finite-dimensional representation of `Δ = ⟨ε_1, …, ε_n⟩ ≅ ℤ^n`.
#[derive(Clone, Debug)]
pub struct DeltaModule<E> {
    pub dim: usize,
    pub action: Vec<Matrix<E>>,
}

impl<E: Clone + PartialEq + core::fmt::Debug> DeltaModule<E> {
    /// Checks that the matrices are square, invertible and commute.
    pub fn new<K: FieldOps<E = E>>(k: &K, dim: usize, action: Vec<Matrix<E>>) -> Result<Self> {
        for a in &action {
            if a.len() != dim || a.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidInput("action matrix has the wrong shape".into()));
            }
            if rank(k, a) != dim {
                return Err(Error::InvalidInput("action matrix is not invertible".into()));
            }
        }
        for i in 0..action.len() {
            for j in 0..i {
                if matmul(k, &action[i], &action[j]) != matmul(k, &action[j], &action[i]) {
                    return Err(Error::InvalidInput("action matrices do not commute".into()));
                }
            }
        }
        Ok(DeltaModule { dim, action })
    }

    pub fn rank_of_group(&self) -> usize {
        self.action.len()
    }
}

fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize == q {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Cochain complex `Hom_Δ(K_•, M)`: `M^q = ⊕_{|T| = q} M` with
/// `(df)_T = Σ_i (−1)^i (A_{t_i} − 1) f_{T ∖ t_i}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex<E> {
    pub dims: Vec<usize>,
    /// `differentials[q] : M^q → M^{q+1}` as a `dim M^{q+1} × dim M^q` matrix.
    pub differentials: Vec<Matrix<E>>,
}

pub fn koszul_complex<K: FieldOps>(k: &K, m: &DeltaModule<K::E>) -> KoszulComplex<K::E> {
    let n = m.rank_of_group();
    let d = m.dim;
    let sets: Vec<Vec<Vec<usize>>> = (0..=n).map(|q| subsets(n, q)).collect();
    let dims: Vec<usize> = sets.iter().map(|s| s.len() * d).collect();
    let id = identity(k, d);
    let shifted: Vec<Matrix<K::E>> = m
        .action
        .iter()
        .map(|a| a.iter().zip(&id).map(|(r, ir)| r.iter().zip(ir).map(|(x, y)| k.sub(x, y)).collect()).collect())
        .collect();
    let mut differentials = Vec::new();
    for q in 0..n {
        let mut mat = vec![vec![k.zero(); dims[q]]; dims[q + 1]];
        for (ti, t) in sets[q + 1].iter().enumerate() {
            for (pos, &drop) in t.iter().enumerate() {
                let rest: Vec<usize> = t.iter().copied().filter(|&x| x != drop).collect();
                let si = sets[q].iter().position(|s| *s == rest).unwrap();
                let neg = pos % 2 == 1;
                for r in 0..d {
                    for c in 0..d {
                        let v = &shifted[drop][r][c];
                        if k.is_zero(v) {
                            continue;
                        }
                        let v = if neg { k.sub(&k.zero(), v) } else { v.clone() };
                        let cell = &mut mat[ti * d + r][si * d + c];
                        *cell = k.add(cell, &v);
                    }
                }
            }
        }
        differentials.push(mat);
    }
    KoszulComplex { dims, differentials }
}

impl<E: Clone + PartialEq + core::fmt::Debug> KoszulComplex<E> {
    /// `d ∘ d = 0`.
    pub fn is_complex<K: FieldOps<E = E>>(&self, k: &K) -> bool {
        self.differentials.windows(2).all(|w| {
            let p = matmul(k, &w[1], &w[0]);
            p.iter().all(|r| r.iter().all(|x| k.is_zero(x)))
        })
    }

    pub fn cohomology_dims<K: FieldOps<E = E>>(&self, k: &K) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(|m| rank(k, m)).collect();
        (0..self.dims.len())
            .map(|q| {
                let out = if q < ranks.len() { ranks[q] } else { 0 };
                let inc = if q > 0 { ranks[q - 1] } else { 0 };
                self.dims[q] - out - inc
            })
            .collect()
    }
}

/// `dim H^m(Δ, M)` for `m = 0, …, n`.
pub fn koszul_cohomology_dims<K: FieldOps>(k: &K, m: &DeltaModule<K::E>) -> Vec<usize> {
    koszul_complex(k, m).cohomology_dims(k)
}

/// Computed and predicted dimensions of `H^m(Δ, Sym^k ℝ(𝟙))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTate {
    pub computed: Vec<usize>,
    pub predicted: Vec<usize>,
}

/// Exponent vectors `𝐤 ∈ ℕ^g` with `|𝐤| = k`.
fn compositions(g: usize, k: usize) -> Vec<Vec<usize>> {
    if g == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for a in 0..=k {
        for mut rest in compositions(g - 1, k - a) {
            let mut v = vec![a];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// `Sym^k ℝ(𝟙)` with `ε` acting on `e^𝐤` by `∏_τ (ε^τ)^{−k_τ}`, over `F`
/// (needs `F/ℚ` Galois so that every conjugate lies in `F`).
pub fn sym_tate_module(nf: &NumberField, units: &[FieldElement], k: usize) -> Result<DeltaModule<FieldElement>> {
    let g = nf.degree();
    if units.len() + 1 != g {
        return Err(Error::BadUnits("expected g − 1 unit generators".into()));
    }
    let conj = nf
        .galois_conjugates()
        .ok_or_else(|| Error::Unsupported("coefficients need the Galois closure; only Galois fields are supported".into()))?;
    let basis = compositions(g, k);
    let dim = basis.len();
    let mut action = Vec::new();
    for e in units {
        let inv = nf.inv(e)?;
        let images: Vec<FieldElement> = conj.iter().map(|c| nf.apply_automorphism(c, &inv)).collect();
        let mut m = vec![vec![nf.zero(); dim]; dim];
        for (i, kv) in basis.iter().enumerate() {
            let mut v = nf.one();
            for (t, &kt) in kv.iter().enumerate() {
                v = nf.mul(&v, &nf.pow(&images[t], kt as i64)?);
            }
            m[i][i] = v;
        }
        action.push(m);
    }
    DeltaModule::new(nf, dim, action)
}

pub fn sym_tate_dims(nf: &NumberField, units: &[FieldElement], k: usize) -> Result<SymTate> {
    let g = nf.degree();
    let m = sym_tate_module(nf, units, k)?;
    let computed = koszul_cohomology_dims(nf, &m);
    let predicted = (0..g)
        .map(|q| if k % g == 0 { binom(g as u64 - 1, q as u64).to_usize().unwrap() } else { 0 })
        .collect();
    Ok(SymTate { computed, predicted })
}

/// One row of the table for `H^m(U/F⁺^×, Log^N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRow {
    pub m: usize,
    /// Total dimension.
    pub dim: usize,
    /// Tate twist of the summands, when a single one occurs.
    pub twist: Option<i64>,
    /// At `m = 2g − 1`: rank of the `ℝ(−g)` part and of the tower `∏ ℝ((n−1)g)`.
    pub split: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTable {
    pub g: usize,
    pub n: usize,
    pub h_plus: usize,
    pub rows: Vec<LogRow>,
    /// `dim H^{2g−1}_𝒟(U/F⁺^×, Log^N)`.
    pub deligne: usize,
    /// `dim H^{2g−1}_{𝒟^I}(ξΔ/Δ, i*Log^N)`; present only when the plectic
    /// hypotheses are assumed.
    pub plectic_fiber: Option<usize>,
}

pub fn log_cohomology_table(g: usize, n: usize, h_plus: usize, assume_plectic: bool) -> Result<LogTable> {
    if g == 0 || n % g != 0 {
        return Err(Error::NotDivisible);
    }
    let c = |a: usize, b: usize| binom(a as u64, b as u64).to_usize().unwrap();
    let mut rows = Vec::new();
    for m in 0..2 * g {
        let row = if m < g && m < 2 * g - 1 {
            LogRow { m, dim: h_plus * c(g - 1, m), twist: Some(n as i64), split: None }
        } else if m < 2 * g - 1 {
            LogRow { m, dim: h_plus * c(g - 1, m - g), twist: Some(-(g as i64)), split: None }
        } else {
            let tower = h_plus * (n / g + 1);
            LogRow { m, dim: h_plus + tower, twist: None, split: Some((h_plus, tower)) }
        };
        rows.push(row);
    }
    let deligne = if n == 0 { 0 } else { h_plus };
    let plectic_fiber = assume_plectic.then_some(n / g);
    Ok(LogTable { g, n, h_plus, rows, deligne, plectic_fiber })
}

/// Narrow class number `h⁺ = |Cl⁺(𝒪)|`.
pub fn narrow_class_number(nf: &NumberField, units: &UnitGroupPlus) -> Result<usize> {
    let grp = RayClassGroup::new(nf, units, &FractionalIdeal::unit(nf))?;
    Ok(grp.order() as usize)
}

/// [`log_cohomology_table`] with `h⁺` computed from the field.
pub fn log_cohomology_for_field(nf: &NumberField, units: &UnitGroupPlus, n: usize, assume_plectic: bool) -> Result<LogTable> {
    log_cohomology_table(nf.degree(), n, narrow_class_number(nf, units)?, assume_plectic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::arithmetic_data::{units_from_user, units_plus};

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(&c.iter().map(|&x| int(x)).collect::<Vec<_>>(), None).unwrap()
    }

    fn scalar(x: Rat) -> Matrix<Rat> {
        vec![vec![x]]
    }

    #[test]
    fn trivial_action_gives_binomials() {
        let k = Rationals;
        for n in 0..4usize {
            let id = identity(&k, 2);
            let m = DeltaModule::new(&k, 2, vec![id; n]).unwrap();
            let want: Vec<usize> = (0..=n).map(|q| 2 * binom(n as u64, q as u64).to_usize().unwrap()).collect();
            assert_eq!(koszul_cohomology_dims(&k, &m), want);
        }
    }

    #[test]
    fn nontrivial_scalar_is_acyclic() {
        let k = Rationals;
        let m = DeltaModule::new(&k, 1, vec![scalar(rat(3, 1))]).unwrap();
        assert_eq!(koszul_cohomology_dims(&k, &m), vec![0, 0]);
        let m = DeltaModule::new(&k, 1, vec![scalar(rat(1, 1)), scalar(rat(-1, 1))]).unwrap();
        assert_eq!(koszul_cohomology_dims(&k, &m), vec![0, 0, 0]);
    }

    #[test]
    fn unipotent_block_is_not_diagonalizable() {
        // Jordan block: H⁰ = H¹ = 1 for one generator
        let k = Rationals;
        let j = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(1, 1)]];
        let m = DeltaModule::new(&k, 2, vec![j]).unwrap();
        let c = koszul_complex(&k, &m);
        assert!(c.is_complex(&k));
        assert_eq!(c.cohomology_dims(&k), vec![1, 1]);
    }

    #[test]
    fn rejects_noncommuting_action() {
        let k = Rationals;
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(1, 1)]];
        let b = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)]];
        assert!(DeltaModule::new(&k, 2, vec![a, b]).is_err());
    }

    #[test]
    fn sym_tate_quadratic() {
        let f = field(&[-1, -1, 1]);
        let u = units_plus(&f).unwrap();
        assert_eq!(sym_tate_dims(&f, &u.generators, 2).unwrap().computed, vec![1, 1]);
        assert_eq!(sym_tate_dims(&f, &u.generators, 1).unwrap().computed, vec![0, 0]);
        for k in 0..=8 {
            let s = sym_tate_dims(&f, &u.generators, k).unwrap();
            assert_eq!(s.computed, s.predicted);
        }
    }

    #[test]
    fn sym_tate_cubic() {
        let id: Vec<Vec<Rat>> = (0..3).map(|i| (0..3).map(|j| rat((i == j) as i64, 1)).collect()).collect();
        let f = NumberField::new(&[int(-1), int(-2), int(1), int(1)], Some(id)).unwrap();
        let th = f.theta();
        let units = units_from_user(&f, vec![th.clone(), th.add(&f.one())], true).unwrap().generators;
        for k in [0usize, 1, 2, 3] {
            let s = sym_tate_dims(&f, &units, k).unwrap();
            assert_eq!(s.computed, s.predicted, "k = {k}");
        }
        assert_eq!(sym_tate_dims(&f, &units, 3).unwrap().computed, vec![1, 2, 1]);
    }

    #[test]
    fn narrow_class_numbers() {
        let f = field(&[-3, 0, 1]);
        let u = units_plus(&f).unwrap();
        assert_eq!(narrow_class_number(&f, &u).unwrap(), 2);
        let t = log_cohomology_for_field(&f, &u, 2, false).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![2, 2, 2, 6]);
        let f = field(&[-1, -1, 1]);
        assert_eq!(narrow_class_number(&f, &units_plus(&f).unwrap()).unwrap(), 1);
    }

    #[test]
    fn log_table_examples() {
        let t = log_cohomology_table(2, 2, 1, false).unwrap();
        let dims: Vec<usize> = t.rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 1, 1, 3]);
        assert_eq!(t.rows[3].split, Some((1, 2)));
        assert_eq!(t.deligne, 1);
        assert_eq!(log_cohomology_table(2, 0, 1, false).unwrap().deligne, 0);
        assert_eq!(log_cohomology_table(2, 3, 1, false), Err(Error::NotDivisible));
        let t = log_cohomology_table(1, 4, 1, true).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[1].split, Some((1, 5)));
        assert_eq!(t.plectic_fiber, Some(4));
    }

    proptest::proptest! {
        #[test]
        fn diagonal_modules_match_closed_form(diag in proptest::collection::vec((1i64..4, 1i64..4), 1..4), n in 1usize..4) {
            // each ε_j acts on line i by a_i^{j+1}/b_i^{j+1}; trivial iff a_i = b_i
            let k = Rationals;
            let dim = diag.len();
            let mut action = Vec::new();
            for j in 0..n {
                let mut m = identity(&k, dim);
                for (i, (a, b)) in diag.iter().enumerate() {
                    m[i][i] = rat(*a, *b).pow(j as i32 + 1);
                }
                action.push(m);
            }
            let module = DeltaModule::new(&k, dim, action).unwrap();
            let fixed = diag.iter().filter(|(a, b)| a == b).count();
            let want: Vec<usize> = (0..=n).map(|q| fixed * binom(n as u64, q as u64).to_usize().unwrap()).collect();
            let c = koszul_complex(&k, &module);
            proptest::prop_assert!(c.is_complex(&k));
            proptest::prop_assert_eq!(c.cohomology_dims(&k), want);
        }
    }
}
