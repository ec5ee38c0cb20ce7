//! Exact linear algebra over ℚ and ℤ: elimination, Hermite and Smith forms.

use crate::arith::{modp, rint, rone, rzero, xgcd, Int, Rat};
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major rational matrix.
pub type QMat = Vec<Vec<Rat>>;
/// Row-major integer matrix.
pub type ZMat = Vec<Vec<Int>>;

pub fn qidentity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rone() } else { rzero() }).collect())
        .collect()
}

pub fn zidentity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn to_q(m: &ZMat) -> QMat {
    m.iter().map(|r| r.iter().map(rint).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn qmul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut c = vec![vec![rzero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    c
}

pub fn zmul(a: &ZMat, b: &ZMat) -> ZMat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut c = vec![vec![Int::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                c[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    c
}

pub fn qmatvec(a: &QMat, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(rzero(), |s, (x, y)| s + x * y))
        .collect()
}

pub fn zmatvec(a: &ZMat, v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|r| r.iter().zip(v).fold(Int::zero(), |s, (x, y)| s + x * y))
        .collect()
}

/// Determinant by fraction-free elimination over ℚ.
pub fn qdet(m: &QMat) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut det = rone();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return rzero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

pub fn zdet(m: &ZMat) -> Int {
    qdet(&to_q(m)).to_integer()
}

pub fn qinverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { rone() } else { rzero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for j in 0..2 * n {
            a[c][j] = &a[c][j] / &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..2 * n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `m x = b` for square invertible `m`.
pub fn qsolve(m: &QMat, b: &[Rat]) -> Option<Vec<Rat>> {
    let inv = qinverse(m)?;
    Some(qmatvec(&inv, b))
}

/// Rank over ℚ.
pub fn qrank(m: &QMat) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Column-style Hermite normal form of the lattice spanned by `gens`
/// (each a vector of length `n`). Returns the `n x n` upper triangular basis
/// as columns: `h[j]` is the j-th basis vector, zero below index `j`,
/// `h[j][j] > 0` and `0 <= h[j][i] < h[i][i]` for `i < j`.
/// Returns `None` when the lattice does not have full rank.
pub fn hnf_columns(gens: &[Vec<Int>], n: usize) -> Option<Vec<Vec<Int>>> {
    let mut pool: Vec<Vec<Int>> = gens.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis: Vec<Option<Vec<Int>>> = vec![None; n];
    for r in (0..n).rev() {
        // gather the vectors with a nonzero entry in row r into a single pivot
        let mut piv: Option<Vec<Int>> = None;
        let mut rest = Vec::with_capacity(pool.len());
        for v in pool.drain(..) {
            if v[r].is_zero() {
                rest.push(v);
                continue;
            }
            match piv.take() {
                None => piv = Some(v),
                Some(p) => {
                    let (g, x, y) = xgcd(&p[r], &v[r]);
                    let a = &p[r] / &g;
                    let b = &v[r] / &g;
                    let newp: Vec<Int> = p.iter().zip(&v).map(|(pi, vi)| &x * pi + &y * vi).collect();
                    let other: Vec<Int> = p.iter().zip(&v).map(|(pi, vi)| &b * pi - &a * vi).collect();
                    if other.iter().any(|z| !z.is_zero()) {
                        rest.push(other);
                    }
                    piv = Some(newp);
                }
            }
        }
        pool = rest;
        let mut p = piv?;
        if p[r].is_negative() {
            for x in p.iter_mut() {
                *x = -x.clone();
            }
        }
        basis[r] = Some(p);
        pool.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    let mut h: Vec<Vec<Int>> = basis.into_iter().map(|b| b.unwrap()).collect();
    // reduce entries above the diagonal
    for j in 0..n {
        for i in (0..j).rev() {
            let q = h[j][i].div_floor(&h[i][i]);
            if !q.is_zero() {
                let hi = h[i].clone();
                for (t, x) in h[j].iter_mut().zip(hi.iter()) {
                    *t -= &q * x;
                }
            }
        }
    }
    Some(h)
}

/// Coordinates of `v` with respect to an upper triangular column basis `h`;
/// `None` if `v` is not in the lattice.
pub fn hnf_coords(h: &[Vec<Int>], v: &[Int]) -> Option<Vec<Int>> {
    let n = h.len();
    let mut r = v.to_vec();
    let mut c = vec![Int::zero(); n];
    for j in (0..n).rev() {
        let (q, rem) = r[j].div_rem(&h[j][j]);
        if !rem.is_zero() {
            return None;
        }
        for i in 0..=j {
            r[i] -= &q * &h[j][i];
        }
        c[j] = q;
    }
    Some(c)
}

/// Reduce `v` modulo the lattice with upper triangular column basis `h`,
/// giving the canonical representative in the box `∏ [0, h_jj)`.
pub fn hnf_reduce(h: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    let n = h.len();
    let mut r = v.to_vec();
    for j in (0..n).rev() {
        let q = r[j].div_floor(&h[j][j]);
        if !q.is_zero() {
            for i in 0..=j {
                r[i] -= &q * &h[j][i];
            }
        }
    }
    r
}

/// All canonical residues of `ℤ^n / h ℤ^n` in lexicographic order.
pub fn hnf_residues(h: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let n = h.len();
    let mut out: Vec<Vec<Int>> = vec![Vec::new()];
    for i in 0..n {
        let d = &h[i][i];
        let mut next = Vec::new();
        for pre in &out {
            let mut k = Int::zero();
            while &k < d {
                let mut v = pre.clone();
                v.push(k.clone());
                next.push(v);
                k += 1;
            }
        }
        out = next;
    }
    out
}

/// Smith normal form: returns `(d, u)` with `d` the nonzero invariant factors
/// (divisibility chain, zeros omitted for full rank) and `u` unimodular such
/// that `u * m * v` is diagonal for some `v`. Rows of `m` are relations.
pub fn smith(m: &ZMat) -> (Vec<Int>, ZMat, ZMat) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut u = zidentity(rows);
    let mut v = zidentity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                let (at, ut) = (a[t].clone(), u[t].clone());
                for (x, y) in a[i].iter_mut().zip(&at) {
                    *x -= &q * y;
                }
                for (x, y) in u[i].iter_mut().zip(&ut) {
                    *x -= &q * y;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for r in 0..rows {
                    let y = a[r][t].clone();
                    a[r][j] -= &q * y;
                }
                for r in 0..cols {
                    let y = v[r][t].clone();
                    v[r][j] -= &q * y;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry not divisible by the pivot into row t
        let mut fixed = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    let (ai, ui) = (a[i].clone(), u[i].clone());
                    for (x, y) in a[t].iter_mut().zip(&ai) {
                        *x += y;
                    }
                    for (x, y) in u[t].iter_mut().zip(&ui) {
                        *x += y;
                    }
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let d = (0..rows.min(cols)).map(|i| a[i][i].clone()).filter(|x| !x.is_zero()).collect();
    (d, u, v)
}

/// Kernel of `x ↦ a x mod m` on ℤ^n, as an HNF column basis.
pub fn kernel_mod(a: &ZMat, m: &Int, n: usize) -> Vec<Vec<Int>> {
    let k = a.len();
    // lattice in ℤ^{n+k} spanned by (e_j, a e_j) and (0, m e_i)
    let mut gens = Vec::new();
    for j in 0..n {
        let mut v = vec![Int::zero(); n + k];
        v[j] = Int::one();
        for i in 0..k {
            v[n + i] = modp(&a[i][j], m);
        }
        gens.push(v);
    }
    for i in 0..k {
        let mut v = vec![Int::zero(); n + k];
        v[n + i] = m.clone();
        gens.push(v);
    }
    let h = hnf_columns(&gens, n + k).expect("full rank");
    h[..n].iter().map(|c| c[..n].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn zm(r: &[&[i64]]) -> ZMat {
        r.iter().map(|x| x.iter().map(|&y| int(y)).collect()).collect()
    }

    #[test]
    fn hnf_small() {
        let gens = zm(&[&[4, 0], &[2, 3], &[0, 6]]);
        let h = hnf_columns(&gens, 2).unwrap();
        // lattice: determinant 6 * ... check shape
        assert!(h[0][1].is_zero());
        assert!(h[1][0] < h[0][0]);
        let det = &h[0][0] * &h[1][1];
        assert_eq!(det, int(12));
    }

    #[test]
    fn smith_known() {
        let m = zm(&[&[2, 0], &[0, 4], &[2, 4]]);
        let (d, _, _) = smith(&m);
        assert_eq!(d, vec![int(2), int(4)]);
    }

    #[test]
    fn inverse_det() {
        let m = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(3, 1)]];
        assert_eq!(qdet(&m), rat(5, 1));
        let inv = qinverse(&m).unwrap();
        assert_eq!(qmul(&m, &inv), qidentity(2));
    }

    #[test]
    fn kernel_mod_basic() {
        let a = zm(&[&[1, 1]]);
        let k = kernel_mod(&a, &int(3), 2);
        for c in &k {
            assert!(((&c[0] + &c[1]) % int(3)).is_zero());
        }
        assert_eq!(&k[0][0] * &k[1][1], int(3));
    }

    proptest! {
        #[test]
        fn hnf_index_equals_det(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
            prop_assume!(a * d - b * c != 0);
            let gens = zm(&[&[a, b], &[c, d]]);
            let h = hnf_columns(&gens, 2).unwrap();
            prop_assert_eq!(&h[0][0] * &h[1][1], int((a * d - b * c).abs()));
            // generators lie in the lattice
            for g in &gens {
                prop_assert!(hnf_coords(&h, g).is_some());
            }
            prop_assert_eq!(hnf_residues(&h).len() as i64, (a * d - b * c).abs());
        }

        #[test]
        fn smith_product_is_index(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
            prop_assume!(a * d - b * c != 0);
            let (dd, u, v) = smith(&zm(&[&[a, b], &[c, d]]));
            let p = dd.iter().fold(int(1), |s, x| s * x);
            prop_assert_eq!(p, int((a * d - b * c).abs()));
            let prod = zmul(&zmul(&u, &zm(&[&[a, b], &[c, d]])), &v);
            prop_assert!(prod[0][1].is_zero() && prod[1][0].is_zero());
        }
    }
}
