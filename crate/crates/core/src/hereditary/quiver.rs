use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simply-laced Dynkin type of a connected quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(n) => unreachable!("E{n} is not Dynkin"),
        }
    }

    fn validate(self) -> Result<Self> {
        let ok = match self {
            DynkinType::A(n) => n >= 1,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Parameter(format!("{self} is not a Dynkin type")))
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parameter(format!("cannot parse Dynkin type {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match letter.to_ascii_uppercase() {
            'A' => DynkinType::A(n),
            'D' => DynkinType::D(n),
            'E' => DynkinType::E(n),
            _ => return Err(bad()),
        };
        t.validate()
    }
}

/// A finite acyclic quiver. Arrow `a` is `arrows[a] = (source, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

/// On-disk quiver format: `{"vertices": n, "arrows": [[s, t], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidInput("quiver needs at least one vertex".into()));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::InvalidInput(format!("arrow ({s}, {t}) out of range")));
        }
        let q = Quiver { vertices, arrows };
        q.topological_order()?;
        Ok(q)
    }

    /// Linearly oriented `A_n`, and the orientations of `D_n`, `E_n`
    /// obtained from it by attaching the extra arm.
    pub fn dynkin(t: DynkinType) -> Result<Self> {
        let t = t.validate()?;
        let n = t.rank();
        let arrows = match t {
            DynkinType::A(_) => (1..n).map(|i| (i - 1, i)).collect(),
            DynkinType::D(_) => {
                let mut a: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                a.push((n - 3, n - 1));
                a
            }
            DynkinType::E(_) => {
                let mut a: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                a.push((2, n - 1));
                a
            }
        };
        Quiver::new(n, arrows)
    }

    pub fn from_doc(doc: &QuiverDoc) -> Result<Self> {
        Quiver::new(doc.vertices, doc.arrows.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QuiverDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> QuiverDoc {
        QuiverDoc { vertices: self.vertices, arrows: self.arrows.clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Vertices ordered so every arrow points forward; `Cyclic` otherwise.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.vertices;
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.insert(t);
                    }
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            Err(Error::Cyclic)
        }
    }

    /// Same quiver with every arrow at `k` reversed.
    pub fn reflected(&self, k: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == k || t == k { (t, s) } else { (s, t) })
            .collect();
        Quiver { vertices: self.vertices, arrows }
    }

    pub fn is_sink(&self, k: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != k)
    }

    pub fn is_source(&self, k: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != k)
    }

    /// `k_1, ..., k_n` with `k_i` a sink of `σ_{k_{i-1}} ... σ_{k_1} Q`.
    pub fn admissible_sink_sequence(&self) -> Vec<usize> {
        let mut order = self.topological_order().expect("acyclic by construction");
        order.reverse();
        order
    }

    /// Dynkin type of each connected component, in order of smallest vertex.
    pub fn dynkin_components(&self) -> Result<Vec<DynkinType>> {
        let n = self.vertices;
        let mut adj = vec![Vec::new(); n];
        for &(s, t) in &self.arrows {
            adj[s].push(t);
            adj[t].push(s);
        }
        let mut comp = vec![usize::MAX; n];
        let mut types = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = types.len();
            let mut stack = vec![start];
            let mut members = vec![];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            let edges = self.arrows.iter().filter(|&&(s, _)| comp[s] == id).count();
            types.push(classify_tree(&adj, &members, edges)?);
        }
        Ok(types)
    }

    pub fn is_dynkin(&self) -> bool {
        self.dynkin_components().is_ok()
    }

    /// `⟨d, e⟩ = Σ d_i e_i − Σ_{a: i→j} d_i e_j`.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(&x, &y)| (x * y) as i64).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| (d[s] * e[t]) as i64).sum();
        diag - off
    }

    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            m[s][t] -= 1;
        }
        m
    }

    /// Tits form `q(x) = ⟨x, x⟩`.
    pub fn tits_form(&self, x: &[i64]) -> i64 {
        let diag: i64 = x.iter().map(|v| v * v).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| x[s] * x[t]).sum();
        diag - off
    }

    /// Simple reflection `s_k` on dimension vectors.
    pub fn reflect_vector(&self, k: usize, x: &[i64]) -> Vec<i64> {
        let nbr: i64 = self
            .arrows
            .iter()
            .map(|&(s, t)| {
                if s == k && t != k {
                    x[t]
                } else if t == k && s != k {
                    x[s]
                } else {
                    0
                }
            })
            .sum();
        let mut y = x.to_vec();
        y[k] = nbr - x[k];
        y
    }
}

fn classify_tree(adj: &[Vec<usize>], members: &[usize], edges: usize) -> Result<DynkinType> {
    let size = members.len();
    let bad = |why: &str| Err(Error::NonDynkin(why.to_string()));
    if edges + 1 != size {
        return bad("underlying graph is not a tree");
    }
    let deg = |v: usize| adj[v].len();
    let branches: Vec<usize> = members.iter().copied().filter(|&v| deg(v) >= 3).collect();
    if branches.is_empty() {
        return Ok(DynkinType::A(size));
    }
    if branches.len() > 1 || deg(branches[0]) > 3 {
        return bad("more than one branch point or a vertex of degree > 3");
    }
    let centre = branches[0];
    let mut arms: Vec<usize> = adj[centre]
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut len) = (centre, first, 1);
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms[..] {
        [1, 1, r] => Ok(DynkinType::D(r + 3)),
        [1, 2, 2] => Ok(DynkinType::E(6)),
        [1, 2, 3] => Ok(DynkinType::E(7)),
        [1, 2, 4] => Ok(DynkinType::E(8)),
        _ => bad(&format!("branch arms {arms:?} are not of type D or E")),
    }
}
