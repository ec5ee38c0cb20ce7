//! LLL reduction of real bases with integer transformation tracking, and
//! integer-relation recognition built on it.

use alloc::vec;
use alloc::vec::Vec;

/// Reduce the rows of `b` in place; returns the unimodular matrix `u` with
/// `reduced = u · original`.
pub fn lll(b: &mut [Vec<f64>], delta: f64) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n == 0 {
        return u;
    }
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, c)| a * c).sum::<f64>();
    let gs = |b: &[Vec<f64>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut nrm = vec![0.0; n];
        for i in 0..n {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = if nrm[j] > 0.0 { dot(&b[i], &bs[j]) / nrm[j] } else { 0.0 };
                for (vk, bk) in v.iter_mut().zip(&bs[j]) {
                    *vk -= mu[i][j] * bk;
                }
            }
            nrm[i] = dot(&v, &v);
            bs.push(v);
        }
        (mu, nrm)
    };
    let (mut mu, mut nrm) = gs(b);
    let mut k = 1;
    let mut guard = 0;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        for j in (0..k).rev() {
            let q = libm::round(mu[k][j]);
            if q != 0.0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
                let uj = u[j].clone();
                for (x, y) in u[k].iter_mut().zip(&uj) {
                    *x -= q as i64 * y;
                }
                let r = gs(b);
                mu = r.0;
                nrm = r.1;
            }
        }
        if nrm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * nrm[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            let r = gs(b);
            mu = r.0;
            nrm = r.1;
            k = if k > 1 { k - 1 } else { 1 };
        }
    }
    u
}

/// Find small integers `c` with `Σ c_i x_i ≈ 0` for real vectors `x_i`
/// (each `x_i` a point of ℝ^m). Returns the shortest relation candidate and
/// its residual norm.
pub fn integer_relation(x: &[Vec<f64>], scale: f64) -> (Vec<i64>, f64) {
    let n = x.len();
    let m = x[0].len();
    let mut b: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r = vec![0.0; n + m];
            r[i] = 1.0;
            for k in 0..m {
                r[n + k] = scale * x[i][k];
            }
            r
        })
        .collect();
    let u = lll(&mut b, 0.99);
    let c = u[0].clone();
    let mut res = 0.0;
    for k in 0..m {
        let s: f64 = c.iter().zip(x).map(|(ci, xi)| *ci as f64 * xi[k]).sum();
        res += s * s;
    }
    (c, libm::sqrt(res))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rational() {
        // 3/7 = x  ⇒  7x - 3 = 0
        let x = 3.0 / 7.0;
        let (c, r) = integer_relation(&[vec![x], vec![1.0]], 1e12);
        assert!(r < 1e-10);
        assert_eq!(c[0] * 3 + c[1] * 7, 0);
    }

    #[test]
    fn golden_relation() {
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        let (c, r) = integer_relation(&[vec![phi * phi], vec![phi], vec![1.0]], 1e10);
        assert!(r < 1e-8);
        let c0 = c[0];
        assert_eq!(c, vec![c0, -c0, -c0]);
    }
}
