use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identity of a lattice node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum NodeLabel {
    /// A down-closed set of poset elements.
    Downset(Vec<String>),
    /// A semibrick, by brick ids.
    Semibrick(Vec<usize>),
    /// A set of torus-invariant divisors, by ray index.
    DivisorSupport(Vec<usize>),
    Opaque(String),
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeLabel::Downset(s) => write!(f, "{{{}}}", s.join(",")),
            NodeLabel::Semibrick(b) => write!(f, "sb{{{}}}", join_ids(b)),
            NodeLabel::DivisorSupport(d) => write!(f, "E{{{}}}", join_ids(d)),
            NodeLabel::Opaque(s) => write!(f, "{s}"),
        }
    }
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Fixed-size bitset over node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    pub(crate) fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    pub(crate) fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    pub(crate) fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// A finite lattice given by its Hasse diagram.
#[derive(Debug, Clone)]
pub struct FinLattice {
    labels: Vec<NodeLabel>,
    /// Upper covers of each node, sorted by label.
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    /// Reflexive up-sets.
    upset: Vec<Bits>,
}

impl FinLattice {
    /// Builds a lattice from covering pairs `(lower, upper)`. Rejects
    /// cycles, duplicate labels, transitively implied edges and orders
    /// without a unique bottom and top. The join/meet property itself is
    /// checked by [`FinLattice::is_lattice`].
    pub fn from_covers(labels: Vec<NodeLabel>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidInput("lattice needs at least one node".into()));
        }
        let distinct: BTreeSet<_> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidInput("node labels are not unique".into()));
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidInput(format!("bad covering pair ({a}, {b})")));
            }
            if up[a].contains(&b) {
                continue;
            }
            up[a].push(b);
            down[b].push(a);
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_by(|&x, &y| labels[x].cmp(&labels[y]));
        }
        let order = topo_order(&up)?;
        let mut upset = vec![Bits::new(n); n];
        for &v in order.iter().rev() {
            let mut s = Bits::new(n);
            s.insert(v);
            for &w in &up[v] {
                s.union_with(&upset[w]);
            }
            upset[v] = s;
        }
        for a in 0..n {
            for &b in &up[a] {
                if up[a].iter().any(|&c| c != b && upset[c].contains(b)) {
                    return Err(Error::InvalidInput(format!(
                        "edge ({}, {}) is implied by transitivity",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        let bottoms: Vec<_> = (0..n).filter(|&v| down[v].is_empty()).collect();
        let tops: Vec<_> = (0..n).filter(|&v| up[v].is_empty()).collect();
        if bottoms.len() != 1 || tops.len() != 1 {
            return Err(Error::InvalidInput("order has no unique bottom and top".into()));
        }
        Ok(FinLattice { labels, up, down, bottom: bottoms[0], top: tops[0], upset })
    }

    /// Builds a lattice from a reflexive order predicate by computing covers.
    pub fn from_order(labels: Vec<NodeLabel>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut strict_up = vec![Bits::new(n); n];
        let mut strict_down = vec![Bits::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    if leq(b, a) {
                        return Err(Error::InvalidInput("order is not antisymmetric".into()));
                    }
                    strict_up[a].insert(b);
                    strict_down[b].insert(a);
                }
            }
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in strict_up[a].iter() {
                if strict_up[a].and(&strict_down[b]).count() == 0 {
                    edges.push((a, b));
                }
            }
        }
        Self::from_covers(labels, &edges)
    }

    /// The one-node lattice (the zero category).
    pub fn point() -> Self {
        Self::from_covers(vec![NodeLabel::Opaque("0".into())], &[]).expect("point lattice")
    }

    /// Chain lattice with `len + 1` nodes.
    pub fn chain(len: usize) -> Self {
        let labels = (0..=len).map(|i| NodeLabel::Opaque(format!("c{i}"))).collect();
        let edges: Vec<_> = (0..len).map(|i| (i, i + 1)).collect();
        Self::from_covers(labels, &edges).expect("chain lattice")
    }

    /// Boolean lattice on `k` atoms.
    pub fn boolean(k: usize) -> Self {
        let n = 1usize << k;
        let labels = (0..n)
            .map(|m| NodeLabel::Opaque(format!("b{m:0width$b}", width = k.max(1))))
            .collect();
        let mut edges = Vec::new();
        for m in 0..n {
            for i in 0..k {
                if m >> i & 1 == 0 {
                    edges.push((m, m | 1 << i));
                }
            }
        }
        Self::from_covers(labels, &edges).expect("boolean lattice")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &NodeLabel {
        &self.labels[v]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn upper_covers(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    pub fn lower_covers(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.upset[a].contains(b)
    }

    /// Covering pairs `(lower, upper)` in deterministic order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> =
            (0..self.len()).flat_map(|a| self.up[a].iter().map(move |&b| (a, b))).collect();
        e.sort_by(|x, y| {
            (&self.labels[x.0], &self.labels[x.1]).cmp(&(&self.labels[y.0], &self.labels[y.1]))
        });
        e
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.upset[a].and(&self.upset[b]);
        let found = common.iter().find(|&c| self.upset[c] == common);
        found
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> =
            (0..self.len()).filter(|&c| self.leq(c, a) && self.leq(c, b)).collect();
        lower.iter().copied().find(|&c| lower.iter().all(|&d| self.leq(d, c)))
    }

    /// Every pair has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    /// All bottom-to-top chains of covering steps, in lexicographic label
    /// order. The count can be factorial in the rank; see
    /// [`FinLattice::chain_count`] for a cheap count.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![self.bottom];
        self.extend_chains(&mut path, &mut out);
        out
    }

    fn extend_chains(&self, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().expect("nonempty path");
        if v == self.top {
            out.push(path.clone());
            return;
        }
        for &w in &self.up[v] {
            path.push(w);
            self.extend_chains(path, out);
            path.pop();
        }
    }

    /// Number of maximal chains, by dynamic programming over the Hasse
    /// diagram.
    pub fn chain_count(&self) -> u128 {
        let order = topo_order(&self.up).expect("acyclic by construction");
        let mut ways = vec![0u128; self.len()];
        ways[self.top] = 1;
        for &v in order.iter().rev() {
            if v != self.top {
                ways[v] = self.up[v].iter().map(|&w| ways[w]).sum();
            }
        }
        ways[self.bottom]
    }

    /// The set of lengths of maximal chains, by dynamic programming; every
    /// chain is accounted for without enumerating them.
    pub fn chain_lengths(&self) -> BTreeSet<usize> {
        let order = topo_order(&self.up).expect("acyclic by construction");
        let mut lengths: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.len()];
        lengths[self.top].insert(0);
        for &v in order.iter().rev() {
            if v == self.top {
                continue;
            }
            let mut s = BTreeSet::new();
            for &w in &self.up[v] {
                s.extend(lengths[w].iter().map(|l| l + 1));
            }
            lengths[v] = s;
        }
        std::mem::take(&mut lengths[self.bottom])
    }

    /// Nodes whose strict up-set has a minimum, i.e. nodes with exactly one
    /// upper cover. The top is excluded.
    pub fn prime_nodes(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&v| self.up[v].len() == 1).collect()
    }

    /// Coatoms.
    pub fn maximal_nodes(&self) -> BTreeSet<usize> {
        self.down[self.top].iter().copied().collect()
    }

    /// Atoms.
    pub fn minimal_nodes(&self) -> BTreeSet<usize> {
        self.up[self.bottom].iter().copied().collect()
    }

    /// Product lattice with the componentwise order.
    pub fn direct_sum(parts: &[FinLattice]) -> FinLattice {
        let mut acc = FinLattice::point();
        let mut first = true;
        for p in parts {
            acc = if first { p.clone() } else { acc.product(p) };
            first = false;
        }
        acc
    }

    fn product(&self, other: &FinLattice) -> FinLattice {
        let m = other.len();
        let idx = |a: usize, b: usize| a * m + b;
        let mut labels = Vec::with_capacity(self.len() * m);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(NodeLabel::Opaque(format!("({a}, {b})")));
            }
        }
        let mut edges = Vec::new();
        for a in 0..self.len() {
            for b in 0..m {
                for &a2 in &self.up[a] {
                    edges.push((idx(a, b), idx(a2, b)));
                }
                for &b2 in &other.up[b] {
                    edges.push((idx(a, b), idx(a, b2)));
                }
            }
        }
        FinLattice::from_covers(labels, &edges).expect("product of lattices is a lattice")
    }

    /// Hasse diagram in DOT; bottom drawn at the bottom.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=BT;\n  node [shape=box];\n");
        let mut nodes: Vec<usize> = (0..self.len()).collect();
        nodes.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        for v in nodes {
            s.push_str(&format!("  n{v} [label=\"{}\"];\n", escape(&self.labels[v].to_string())));
        }
        for (a, b) in self.hasse_edges() {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    /// Serializable view: node labels and covering pairs.
    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            nodes: self.labels.clone(),
            hasse_edges: self.hasse_edges(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    /// Rebuilds a lattice from its serialized view.
    pub fn from_doc(doc: &LatticeDoc) -> Result<Self> {
        let l = Self::from_covers(doc.nodes.clone(), &doc.hasse_edges)?;
        if l.bottom != doc.bottom || l.top != doc.top {
            return Err(Error::InvalidInput("bottom/top do not match the edges".into()));
        }
        Ok(l)
    }

    /// Rank function of a graded lattice: height of each node measured from
    /// the bottom along some chain. Only meaningful when all chains have
    /// the same length.
    pub fn heights(&self) -> BTreeMap<usize, usize> {
        let order = topo_order(&self.up).expect("acyclic by construction");
        let mut h = BTreeMap::new();
        for &v in &order {
            let hv = self.down[v].iter().map(|w| h[w] + 1).max().unwrap_or(0);
            h.insert(v, hv);
        }
        h
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Serialized lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub nodes: Vec<NodeLabel>,
    pub hasse_edges: Vec<(usize, usize)>,
    pub bottom: usize,
    pub top: usize,
}

/// Kahn's algorithm on the cover graph; errors on a cycle.
fn topo_order(up: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = up.len();
    let mut indeg = vec![0usize; n];
    for list in up {
        for &w in list {
            indeg[w] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &up[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidInput("covering relation has a cycle".into()));
    }
    Ok(order)
}
