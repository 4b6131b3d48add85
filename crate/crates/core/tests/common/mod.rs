//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use jdlength::hereditary::Quiver;
use jdlength::lattice::{downset_lattice, FinLattice, FinPoset, NodeLabel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of posets on `n` elements.
/// Every poset has a linear extension, so strict relations can be taken
/// among pairs `i < j`; classes are identified by the smallest relabelled
/// relation bitmask.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let rel: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        let has = |a: usize, b: usize| rel.contains(&(a, b));
        let closed = rel.iter().all(|&(a, b)| rel.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| has(a, d)));
        if !closed {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| rel.iter().map(|&(a, b)| 1u64 << (p[a] * n + p[b])).sum::<u64>())
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            out.push(FinPoset::new(names, &rel).expect("transitive acyclic relation"));
        }
    }
    out
}

/// Random poset on `1..=max_n` elements from a random naturally labelled DAG.
pub fn random_poset(rng: &mut ChaCha8Rng, max_n: usize) -> FinPoset {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.1..0.6);
    let rel: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(density)).collect();
    FinPoset::new((0..n).map(|i| format!("x{i}")).collect(), &rel).expect("DAG")
}

pub fn random_posets(count: usize, max_n: usize, seed: u64) -> Vec<FinPoset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_poset(&mut rng, max_n)).collect()
}

/// Number of linear extensions, by dynamic programming over subsets.
pub fn linear_extensions(p: &FinPoset) -> u128 {
    let n = p.len();
    let mut f = vec![0u128; 1 << n];
    f[0] = 1;
    for s in 0usize..(1 << n) {
        if f[s] == 0 {
            continue;
        }
        for x in 0..n {
            if s >> x & 1 == 0 && (0..n).all(|y| !p.lt(y, x) || s >> y & 1 == 1) {
                f[s | 1 << x] += f[s];
            }
        }
    }
    f[(1 << n) - 1]
}

fn from_covers(n: usize, edges: &[(usize, usize)]) -> FinLattice {
    let labels = (0..n).map(|i| NodeLabel::Opaque(format!("v{i}"))).collect();
    FinLattice::from_covers(labels, edges).expect("lattice")
}

/// Lattices with at most 8 nodes: chains, Boolean lattices, `M_3`, `N_5`
/// and down-set lattices of small posets, each with its spectrum computed
/// by hand or by linear extensions' length.
pub fn small_lattices() -> Vec<(String, FinLattice)> {
    let mut out = Vec::new();
    for k in 0..=7 {
        out.push((format!("chain{k}"), FinLattice::chain(k)));
    }
    for k in 0..=3 {
        out.push((format!("bool{k}"), FinLattice::boolean(k)));
    }
    out.push(("M3".into(), from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])));
    out.push(("N5".into(), from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])));
    for n in 1..=4 {
        for (k, p) in posets_up_to_iso(n).into_iter().enumerate() {
            let l = downset_lattice(&p, 12).expect("small poset");
            if l.len() <= 8 {
                out.push((format!("downsets{n}.{k}"), l));
            }
        }
    }
    out
}

/// Positive roots as the nonnegative solutions of `q(x) = 1`.
pub fn tits_roots(q: &Quiver, bound: i64) -> BTreeSet<Vec<usize>> {
    let n = q.vertex_count();
    let mut out = BTreeSet::new();
    let mut x = vec![0i64; n];
    loop {
        if x.iter().any(|&v| v > 0) && q.tits_form(&x) == 1 {
            out.insert(x.iter().map(|&v| v as usize).collect());
        }
        let mut i = 0;
        while i < n && x[i] == bound {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        x[i] += 1;
    }
}

pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// Maximal chains of noncrossing partitions of type `A_n`: `(n+1)^(n-1)`.
pub fn kreweras(n: u64) -> u64 {
    (n + 1).pow(n as u32 - 1)
}

pub fn minkowski(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

pub fn dims(pairs: &[(i32, usize)]) -> BTreeMap<i32, usize> {
    pairs.iter().copied().collect()
}
