use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::monomial::MonomialAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{sign, CochainComplex, ExactMatrix, FieldElem, FieldKind};

/// One indecomposable projective summand `P_vertex`, placed in complex
/// degree `degree` with an extra shift `twist` (internal grading).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Summand {
    pub vertex: usize,
    pub degree: i32,
    pub twist: i32,
}

impl Summand {
    /// Total shift: the summand is `P_vertex[sigma]`.
    pub fn sigma(&self) -> i32 {
        self.twist - self.degree
    }
}

/// Differential component `P_from → P_to`, left multiplication by
/// `coeff · path` where `path` runs from `vertex(to)` to `vertex(from)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub from: usize,
    pub to: usize,
    pub path: usize,
    pub coeff: FieldElem,
}

/// A bounded twisted complex of indecomposable projectives over a
/// (graded) monomial algebra. Right-module convention: `Hom(P_a, P_b)`
/// has basis the paths from `b` to `a`, and `g ∘ f` is the path of `g`
/// followed by the path of `f`.
#[derive(Debug, Clone)]
pub struct ProjComplex {
    field: FieldKind,
    summands: Vec<Summand>,
    entries: Vec<Entry>,
}

/// Graded endomorphism dims `{0: 1, d: n}` of an `n`-bouquet `d`-sphere-like object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SphereLikeProfile {
    pub n: usize,
    pub d: i32,
}

impl ProjComplex {
    pub fn new(alg: &MonomialAlgebra, field: FieldKind, summands: Vec<Summand>, entries: Vec<Entry>) -> Result<Self> {
        for (k, s) in summands.iter().enumerate() {
            if s.vertex >= alg.vertex_count() {
                return Err(Error::InvalidInput(format!("summand {k} has an unknown vertex")));
            }
        }
        for e in &entries {
            let (Some(from), Some(to)) = (summands.get(e.from), summands.get(e.to)) else {
                return Err(Error::InvalidInput("entry refers to a missing summand".into()));
            };
            if e.path >= alg.dim() {
                return Err(Error::InvalidInput("entry refers to a missing path".into()));
            }
            let p = alg.path(e.path);
            if p.start != to.vertex || p.end != from.vertex {
                return Err(Error::InvalidInput(format!(
                    "entry {} -> {}: path endpoints do not match the summands",
                    e.from, e.to
                )));
            }
            if alg.degree(e.path) != 1 + to.sigma() - from.sigma() {
                return Err(Error::InvalidInput(format!("entry {} -> {} has the wrong degree", e.from, e.to)));
            }
        }
        let c = ProjComplex { field, summands, entries };
        c.check_square_zero(alg)?;
        Ok(c)
    }

    /// Single projective `P_v` in degree 0.
    pub fn projective(alg: &MonomialAlgebra, field: FieldKind, v: usize) -> Result<Self> {
        Self::new(alg, field, vec![Summand { vertex: v, degree: 0, twist: 0 }], vec![])
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Terms as `degree → [(vertex, twist)]`.
    pub fn terms(&self) -> BTreeMap<i32, Vec<(usize, i32)>> {
        let mut out: BTreeMap<i32, Vec<(usize, i32)>> = BTreeMap::new();
        for s in &self.summands {
            out.entry(s.degree).or_default().push((s.vertex, s.twist));
        }
        out
    }

    /// Smallest and largest total shift among the summands.
    pub fn sigma_range(&self) -> Option<(i32, i32)> {
        let lo = self.summands.iter().map(Summand::sigma).min()?;
        let hi = self.summands.iter().map(Summand::sigma).max()?;
        Some((lo, hi))
    }

    /// `X[s]`: degrees drop by `s`, the differential picks up `(-1)^s`.
    pub fn shift(&self, s: i32) -> ProjComplex {
        let summands = self.summands.iter().map(|x| Summand { degree: x.degree - s, ..*x }).collect();
        let entries = self
            .entries
            .iter()
            .map(|e| Entry { coeff: scaled(sign(s), &e.coeff), ..e.clone() })
            .collect();
        ProjComplex { field: self.field, summands, entries }
    }

    pub fn direct_sum(&self, other: &ProjComplex) -> ProjComplex {
        let k = self.summands.len();
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|e| Entry { from: e.from + k, to: e.to + k, ..e.clone() }));
        ProjComplex { field: self.field, summands, entries }
    }

    fn check_square_zero(&self, alg: &MonomialAlgebra) -> Result<()> {
        let mut acc: HashMap<(usize, usize, usize), FieldElem> = HashMap::new();
        for f in &self.entries {
            for g in self.entries.iter().filter(|g| g.from == f.to) {
                if let Some(p) = alg.concat(g.path, f.path) {
                    let slot = acc.entry((f.from, g.to, p)).or_insert_with(|| self.field.zero());
                    *slot = &*slot + &(&g.coeff * &f.coeff);
                }
            }
        }
        if let Some(((i, _, _), _)) = acc.iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::NotAComplex { degree: self.summands[*i].degree });
        }
        Ok(())
    }

    /// The complex of vector spaces `X e_u`, with basis the pairs
    /// (summand, path from its vertex to `u`).
    pub fn at_vertex(&self, alg: &MonomialAlgebra, u: usize) -> CochainComplex {
        let mut by_degree: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, s) in self.summands.iter().enumerate() {
            for &p in alg.paths_between(s.vertex, u) {
                by_degree.entry(s.degree).or_default().push((i, p));
            }
        }
        let mut c = CochainComplex::new(self.field);
        for (&d, b) in &by_degree {
            c.set_term(d, b.len());
        }
        for (&d, src) in &by_degree {
            let Some(dst) = by_degree.get(&(d + 1)) else { continue };
            let mut m = ExactMatrix::zeros(self.field, dst.len(), src.len());
            for (col, &(i, r)) in src.iter().enumerate() {
                for e in self.entries.iter().filter(|e| e.from == i) {
                    if let Some(q) = alg.concat(e.path, r) {
                        if let Some(row) = dst.iter().position(|&x| x == (e.to, q)) {
                            let v = m.get(row, col) + &e.coeff;
                            m.set(row, col, v);
                        }
                    }
                }
            }
            c.set_differential(d, m);
        }
        c
    }
}

fn scaled(s: i64, c: &FieldElem) -> FieldElem {
    if s < 0 {
        -c
    } else {
        c.clone()
    }
}

/// Hom complex basis element: summand `i` of X to summand `j` of Y via `path`.
type HomBasis = BTreeMap<i32, Vec<(usize, usize, usize)>>;

fn hom_basis(alg: &MonomialAlgebra, x: &ProjComplex, y: &ProjComplex) -> HomBasis {
    let mut out: HomBasis = BTreeMap::new();
    for (i, a) in x.summands.iter().enumerate() {
        for (j, b) in y.summands.iter().enumerate() {
            for &p in alg.paths_between(b.vertex, a.vertex) {
                let n = alg.degree(p) - b.sigma() + a.sigma();
                out.entry(n).or_default().push((i, j, p));
            }
        }
    }
    out
}

/// Degrees where `Hom^*(X, Y)` can be nonzero, from the term data alone.
pub fn hom_support(alg: &MonomialAlgebra, x: &ProjComplex, y: &ProjComplex) -> Option<(i32, i32)> {
    let basis = hom_basis(alg, x, y);
    Some((*basis.keys().next()?, *basis.keys().next_back()?))
}

/// Default window `±(span_X + span_Y + 2 + max |path degree|)`.
pub fn default_window(alg: &MonomialAlgebra, x: &ProjComplex, y: &ProjComplex) -> (i32, i32) {
    let span = |c: &ProjComplex| c.sigma_range().map_or(0, |(lo, hi)| hi - lo);
    let reach = (0..alg.dim()).map(|p| alg.degree(p).abs()).max().unwrap_or(0);
    let sx = x.sigma_range().map_or(0, |(lo, hi)| lo.abs().max(hi.abs()));
    let sy = y.sigma_range().map_or(0, |(lo, hi)| lo.abs().max(hi.abs()));
    let w = span(x) + span(y) + 2 + reach + sx + sy;
    (-w, w)
}

/// `dim H^N Hom^*(X, Y)` for `N` in `window`, nonzero entries only.
/// The differential is `D f = δ_Y f − (−1)^N f δ_X`.
pub fn hom_complex_dims(
    alg: &MonomialAlgebra,
    x: &ProjComplex,
    y: &ProjComplex,
    window: (i32, i32),
) -> Result<BTreeMap<i32, usize>> {
    let basis = hom_basis(alg, x, y);
    let (lo, hi) = window;
    if let (Some(&need_lo), Some(&need_hi)) = (basis.keys().next(), basis.keys().next_back()) {
        if need_lo < lo || need_hi > hi {
            return Err(Error::WindowTooSmall { lo, hi, need_lo, need_hi });
        }
    }
    let field = x.field;
    let index: BTreeMap<i32, HashMap<(usize, usize, usize), usize>> = basis
        .iter()
        .map(|(&n, b)| (n, b.iter().enumerate().map(|(k, &t)| (t, k)).collect()))
        .collect();
    let mut c = CochainComplex::new(field);
    for (&n, b) in &basis {
        c.set_term(n, b.len());
    }
    for (&n, src) in &basis {
        let Some(dst) = index.get(&(n + 1)) else { continue };
        let mut m = ExactMatrix::zeros(field, dst.len(), src.len());
        let mut add = |row: Option<&usize>, col: usize, v: FieldElem| {
            if let Some(&row) = row {
                let cur = m.get(row, col) + &v;
                m.set(row, col, cur);
            }
        };
        for (col, &(i, j, p)) in src.iter().enumerate() {
            for e in y.entries.iter().filter(|e| e.from == j) {
                if let Some(q) = alg.concat(e.path, p) {
                    add(dst.get(&(i, e.to, q)), col, e.coeff.clone());
                }
            }
            for e in x.entries.iter().filter(|e| e.to == i) {
                if let Some(q) = alg.concat(p, e.path) {
                    add(dst.get(&(e.from, j, q)), col, scaled(-sign(n), &e.coeff));
                }
            }
        }
        c.set_differential(n, m);
    }
    let dims = c.cohomology_dims().map_err(|e| match e {
        Error::NotAComplex { degree } => {
            Error::Inconsistency(format!("hom complex differential fails to square to zero at {degree}"))
        }
        other => other,
    })?;
    Ok(dims.into_iter().filter(|&(_, d)| d > 0).collect())
}

/// `Σ (−1)^N dim Hom^N(X, Y)` computed on chain groups, without differentials.
pub fn hom_euler_pairing(alg: &MonomialAlgebra, x: &ProjComplex, y: &ProjComplex) -> i64 {
    hom_basis(alg, x, y).iter().map(|(&n, b)| sign(n) * b.len() as i64).sum()
}

/// `(n, d)` when the graded endomorphisms of `X` are exactly `{0: 1, d: n}`, `d ≠ 0`.
pub fn detect_sphere_like(
    alg: &MonomialAlgebra,
    x: &ProjComplex,
    window: (i32, i32),
) -> Result<Option<SphereLikeProfile>> {
    Ok(profile_of(&hom_complex_dims(alg, x, x, window)?))
}

/// Reads a sphere-like profile off endomorphism dims.
pub fn profile_of(dims: &BTreeMap<i32, usize>) -> Option<SphereLikeProfile> {
    if dims.get(&0) != Some(&1) || dims.len() != 2 {
        return None;
    }
    let (&d, &n) = dims.iter().find(|(&d, _)| d != 0)?;
    Some(SphereLikeProfile { n, d })
}

/// Is `(E_1, …, E_k)` exceptional: `End^*(E_i) = k`, `Hom^*(E_j, E_i) = 0` for `j > i`.
pub fn is_exceptional_complexes(alg: &MonomialAlgebra, seq: &[ProjComplex]) -> Result<bool> {
    for (i, e) in seq.iter().enumerate() {
        let w = default_window(alg, e, e);
        if hom_complex_dims(alg, e, e, w)? != BTreeMap::from([(0, 1)]) {
            return Ok(false);
        }
        for f in &seq[i + 1..] {
            let w = default_window(alg, f, e);
            if !hom_complex_dims(alg, f, e, w)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
