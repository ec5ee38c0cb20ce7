//! Finite abelian groups given by a multiplication oracle on indexed elements,
//! brought to Smith normal form with a discrete-log table.

use crate::error::{Error, Result};
use crate::linalg::smith;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct AbelianGroup {
    /// Cyclic factor orders `d_1 | d_2 | …`, all `> 1`.
    pub invariants: Vec<u64>,
    /// Exponent vector of each element.
    pub logs: Vec<Vec<u64>>,
    index: BTreeMap<Vec<u64>, usize>,
    pub identity: usize,
}

impl AbelianGroup {
    /// Build from `n` elements with identity `id` and a multiplication oracle.
    pub fn build<F: FnMut(usize, usize) -> usize>(n: usize, id: usize, mut mul: F) -> Result<Self> {
        let mut coords: Vec<Option<Vec<i64>>> = vec![None; n];
        coords[id] = Some(Vec::new());
        let mut members = vec![id];
        let mut gens: Vec<usize> = Vec::new();
        let mut rels: Vec<Vec<i64>> = Vec::new();
        for x in 0..n {
            if coords[x].is_some() {
                continue;
            }
            let t = gens.len();
            gens.push(x);
            for c in coords.iter_mut().flatten() {
                c.push(0);
            }
            // powers of x until landing in the current subgroup
            let mut k = 1i64;
            let mut p = x;
            while coords[p].is_none() {
                p = mul(p, x);
                k += 1;
                if k as usize > n + 1 {
                    return Err(Error::InvalidInput("multiplication oracle is not a group law".into()));
                }
            }
            let h = coords[p].clone().unwrap();
            let mut rel: Vec<i64> = h.iter().map(|v| -v).collect();
            rel[t] += k;
            rels.push(rel);
            // extend the subgroup by x^j h for 1 ≤ j < k
            let old = members.clone();
            let mut xp = x;
            for j in 1..k {
                for &m in &old {
                    let e = mul(m, xp);
                    if coords[e].is_none() {
                        let mut c = coords[m].clone().unwrap();
                        c[t] += j;
                        coords[e] = Some(c);
                        members.push(e);
                    }
                }
                xp = mul(xp, x);
            }
        }
        let t = gens.len();
        let rel_big: Vec<Vec<BigInt>> = rels
            .iter()
            .map(|r| (0..t).map(|i| BigInt::from(*r.get(i).unwrap_or(&0))).collect())
            .collect();
        let (d, _, v) = if t == 0 { (Vec::new(), Vec::new(), Vec::new()) } else { smith(&rel_big) };
        let diag: Vec<u64> = d.iter().map(|x| x.to_u64().unwrap()).collect();
        // coordinates transform as row vectors: c' = c V
        let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] > 1).collect();
        let invariants: Vec<u64> = keep.iter().map(|&i| diag[i]).collect();
        let mut logs = Vec::with_capacity(n);
        let mut index = BTreeMap::new();
        for (e, c) in coords.iter().enumerate() {
            let c = c.as_ref().unwrap();
            let mut l = Vec::with_capacity(keep.len());
            for &i in &keep {
                let mut s = BigInt::zero();
                for (j, cj) in c.iter().enumerate() {
                    s += BigInt::from(*cj) * &v[j][i];
                }
                let d = BigInt::from(diag[i]);
                l.push(s.mod_floor(&d).to_u64().unwrap());
            }
            if index.insert(l.clone(), e).is_some() {
                return Err(Error::InvalidInput("discrete logarithm table is not injective".into()));
            }
            logs.push(l);
        }
        Ok(AbelianGroup { invariants, logs, index, identity: id })
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn element_of(&self, log: &[u64]) -> usize {
        let l: Vec<u64> = log.iter().zip(&self.invariants).map(|(a, d)| a % d).collect();
        self.index[&l]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let l: Vec<u64> = self.logs[a].iter().zip(&self.logs[b]).zip(&self.invariants).map(|((x, y), d)| (x + y) % d).collect();
        self.index[&l]
    }

    pub fn inv(&self, a: usize) -> usize {
        let l: Vec<u64> = self.logs[a].iter().zip(&self.invariants).map(|(x, d)| (d - x) % d).collect();
        self.index[&l]
    }

    /// All character exponent vectors `a`, `ψ_a(x) = ζ_e^{Σ a_i x_i e/d_i}`.
    pub fn character_labels(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = vec![Vec::new()];
        for &d in &self.invariants {
            let mut next = Vec::new();
            for p in &out {
                for a in 0..d {
                    let mut q = p.clone();
                    q.push(a);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    /// Exponent `j` with `ψ_a(x) = ζ_e^j`, `e` the group exponent.
    pub fn pairing(&self, a: &[u64], x: usize) -> u64 {
        let e = self.exponent();
        let mut s = 0u64;
        for ((ai, xi), d) in a.iter().zip(&self.logs[x]).zip(&self.invariants) {
            s = (s + ai * xi % d * (e / d)) % e;
        }
        s
    }
}
