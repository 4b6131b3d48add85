use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fan::Fan2D;
use crate::error::{Error, Result};

/// `D = Σ d_i E_i` over the torus-invariant prime divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusDivisor(pub Vec<i64>);

impl TorusDivisor {
    pub fn zero(n: usize) -> Self {
        TorusDivisor(vec![0; n])
    }

    pub fn prime(n: usize, i: usize) -> Self {
        let mut d = vec![0; n];
        d[i] = 1;
        TorusDivisor(d)
    }

    /// `E_0 + … + E_{k−1}`.
    pub fn partial_sum(n: usize, k: usize) -> Self {
        TorusDivisor((0..n).map(|i| i64::from(i < k)).collect())
    }

    /// Canonical divisor `K = −Σ E_i`.
    pub fn canonical(n: usize) -> Self {
        TorusDivisor(vec![-1; n])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &TorusDivisor) -> TorusDivisor {
        TorusDivisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &TorusDivisor) -> TorusDivisor {
        TorusDivisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

fn check_len(f: &Fan2D, d: &TorusDivisor) -> Result<()> {
    if d.len() != f.len() {
        return Err(Error::InvalidInput(format!("divisor has {} coefficients, fan has {} rays", d.len(), f.len())));
    }
    Ok(())
}

/// `E_i² = −a_i` from the wall relation `v_{i−1} + v_{i+1} = a_i v_i`.
pub fn self_intersections(f: &Fan2D) -> Result<Vec<i64>> {
    let n = f.len();
    (0..n)
        .map(|i| {
            let (p, v, q) = (f.ray(i + n - 1), f.ray(i), f.ray(i + 1));
            let w = (p.0 + q.0, p.1 + q.1);
            let norm = v.0 * v.0 + v.1 * v.1;
            let dot = w.0 * v.0 + w.1 * v.1;
            let a = dot / norm;
            if dot % norm != 0 || (a * v.0, a * v.1) != w {
                return Err(Error::Inconsistency(format!("wall relation fails at ray {i}")));
            }
            Ok(-a)
        })
        .collect()
}

/// Bilinear intersection form on torus-invariant divisors.
pub fn intersection_number(f: &Fan2D, d1: &TorusDivisor, d2: &TorusDivisor) -> Result<i64> {
    check_len(f, d1)?;
    check_len(f, d2)?;
    let sq = self_intersections(f)?;
    let n = f.len();
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            let e = if i == j {
                sq[i]
            } else if f.adjacent(i, j) {
                1
            } else {
                0
            };
            total += d1.0[i] * d2.0[j] * e;
        }
    }
    Ok(total)
}

/// `χ(O(D)) = 1 + D·(D − K)/2`.
pub fn riemann_roch(f: &Fan2D, d: &TorusDivisor) -> Result<i64> {
    let k = TorusDivisor::canonical(f.len());
    let x = intersection_number(f, d, &d.sub(&k))?;
    if x % 2 != 0 {
        return Err(Error::Inconsistency(format!("D·(D−K) = {x} is odd")));
    }
    Ok(1 + x / 2)
}

/// `(h⁰, h¹, h²)` of `O(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cohomology {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
}

impl Cohomology {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }

    /// Nonzero `h^p` as `p → h^p`.
    pub fn as_map(&self) -> BTreeMap<i32, u64> {
        [(0, self.h0), (1, self.h1), (2, self.h2)].into_iter().filter(|&(_, h)| h > 0).collect()
    }
}

/// Contribution of the character `m` to `H^*(O(D))`.
fn character(f: &Fan2D, d: &[i64], m: (i64, i64)) -> Cohomology {
    let n = f.len();
    let fails: Vec<bool> = (0..n)
        .map(|i| {
            let v = f.ray(i);
            m.0 * v.0 + m.1 * v.1 < -d[i]
        })
        .collect();
    let count = fails.iter().filter(|&&b| b).count();
    let mut c = Cohomology { h0: 0, h1: 0, h2: 0 };
    if count == 0 {
        c.h0 = 1;
    } else if count == n {
        c.h2 = 1;
    } else {
        let runs = (0..n).filter(|&i| fails[i] && !fails[(i + n - 1) % n]).count();
        c.h1 = runs as u64 - 1;
    }
    c
}

fn shell(f: &Fan2D, d: &[i64], r: i64) -> Cohomology {
    let mut acc = Cohomology { h0: 0, h1: 0, h2: 0 };
    let mut add = |m| {
        let c = character(f, d, m);
        acc.h0 += c.h0;
        acc.h1 += c.h1;
        acc.h2 += c.h2;
    };
    if r == 0 {
        add((0, 0));
        return acc;
    }
    for t in -r..r {
        add((t, -r));
        add((r, t));
        add((-t, r));
        add((-r, -t));
    }
    acc
}

/// Growth cap for the certified character box, as a multiple of the start radius.
pub const BOX_GROWTH: i64 = 16;

/// Line-bundle cohomology by summing character contributions over
/// square shells `max(|m_1|, |m_2|) = r` until two consecutive empty
/// shells, then cross-checked against Riemann–Roch.
pub fn cohomology(f: &Fan2D, d: &TorusDivisor) -> Result<Cohomology> {
    check_len(f, d)?;
    let max_d = d.0.iter().map(|x| x.abs()).max().unwrap_or(0);
    let max_ray = f.rays().iter().map(|v| v.0.abs().max(v.1.abs())).max().unwrap_or(1);
    let start = max_d + 2 * max_ray;
    let cap = BOX_GROWTH * (start + 1);
    let mut total = Cohomology { h0: 0, h1: 0, h2: 0 };
    let mut empty_run = 0;
    let mut r = 0;
    loop {
        let s = shell(f, &d.0, r);
        total.h0 += s.h0;
        total.h1 += s.h1;
        total.h2 += s.h2;
        if r > start {
            empty_run = if s == (Cohomology { h0: 0, h1: 0, h2: 0 }) { empty_run + 1 } else { 0 };
            if empty_run == 2 {
                break;
            }
        }
        r += 1;
        if r > cap {
            return Err(Error::CertificationFailure { cap });
        }
    }
    let chi = riemann_roch(f, d)?;
    if total.euler() != chi {
        return Err(Error::Inconsistency(format!(
            "χ = {} from characters but Riemann–Roch gives {chi}",
            total.euler()
        )));
    }
    Ok(total)
}

/// `Ext^p(O(A), O(B)) = H^p(O(B − A))`, nonzero degrees only.
pub fn ext_line_bundles(f: &Fan2D, a: &TorusDivisor, b: &TorusDivisor) -> Result<BTreeMap<i32, u64>> {
    Ok(cohomology(f, &b.sub(a))?.as_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::fan::Preset;

    fn c(h0: u64, h1: u64, h2: u64) -> Cohomology {
        Cohomology { h0, h1, h2 }
    }

    #[test]
    fn self_intersection_examples() {
        assert_eq!(self_intersections(&Preset::P2.fan()).unwrap(), vec![1, 1, 1]);
        assert_eq!(self_intersections(&Preset::Hirzebruch(2).fan()).unwrap(), vec![0, -2, 0, 2]);
        assert_eq!(self_intersections(&Preset::Hirzebruch(0).fan()).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn intersection_examples() {
        let f2 = Preset::Hirzebruch(2).fan();
        let e = |i| TorusDivisor::prime(4, i);
        assert_eq!(intersection_number(&f2, &e(1), &e(1)).unwrap(), -2);
        assert_eq!(intersection_number(&f2, &e(1), &e(2)).unwrap(), 1);
        assert_eq!(intersection_number(&f2, &e(0), &e(2)).unwrap(), 0);
        let p2 = Preset::P2.fan();
        let h = TorusDivisor::prime(3, 0);
        assert_eq!(intersection_number(&p2, &h, &h).unwrap(), 1);
    }

    #[test]
    fn riemann_roch_examples() {
        let p2 = Preset::P2.fan();
        assert_eq!(riemann_roch(&p2, &TorusDivisor::zero(3)).unwrap(), 1);
        assert_eq!(riemann_roch(&p2, &TorusDivisor::prime(3, 0)).unwrap(), 3);
        let f2 = Preset::Hirzebruch(2).fan();
        assert_eq!(riemann_roch(&f2, &TorusDivisor::prime(4, 1)).unwrap(), 0);
    }

    #[test]
    fn cohomology_examples() {
        let p2 = Preset::P2.fan();
        assert_eq!(cohomology(&p2, &TorusDivisor::zero(3)).unwrap(), c(1, 0, 0));
        assert_eq!(cohomology(&p2, &TorusDivisor::prime(3, 0)).unwrap(), c(3, 0, 0));
        assert_eq!(cohomology(&p2, &TorusDivisor::canonical(3)).unwrap(), c(0, 0, 1));
        assert_eq!(cohomology(&p2, &TorusDivisor(vec![-1, 0, 0])).unwrap(), c(0, 0, 0));
        assert_eq!(cohomology(&p2, &TorusDivisor(vec![-4, 0, 0])).unwrap(), c(0, 0, 3));
        let f2 = Preset::Hirzebruch(2).fan();
        assert_eq!(cohomology(&f2, &TorusDivisor::prime(4, 1)).unwrap(), c(1, 1, 0));
    }

    #[test]
    fn ext_examples() {
        let f2 = Preset::Hirzebruch(2).fan();
        let o = TorusDivisor::zero(4);
        assert_eq!(ext_line_bundles(&f2, &o, &TorusDivisor::prime(4, 1)).unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(ext_line_bundles(&f2, &o, &o).unwrap(), BTreeMap::from([(0, 1)]));
    }
}
