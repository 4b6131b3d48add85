use std::collections::HashSet;

use super::module::{module_hom_basis, FDModule};
use super::monomial::{MonomialAlgebra, DEFAULT_MAX_PATHS};
use crate::error::{Error, Result};
use crate::linalg::{echelon_basis, ExactMatrix, FieldElem, FieldKind, Vector};

/// A morphism between modules, one matrix per vertex.
pub type ModuleMap = Vec<ExactMatrix>;

/// `End(M_0 ⊕ … ⊕ M_{k-1})` with explicit Hom bases between every pair
/// of summands and composition computed by matrix products.
#[derive(Debug, Clone)]
pub struct EndomorphismAlgebra {
    field: FieldKind,
    modules: Vec<FDModule>,
    /// `homs[a][b]` is a basis of `Hom(M_a, M_b)`.
    homs: Vec<Vec<Vec<ModuleMap>>>,
    /// Flattened bases, one column per basis map, for coordinate solves.
    flat: Vec<Vec<ExactMatrix>>,
}

/// Quiver with monomial relations presenting a basic algebra. A map
/// `M_a → M_b` becomes an arrow `b → a`, and the path `(x_1, …, x_k)`
/// stands for `x_1 ∘ ⋯ ∘ x_k`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub algebra: MonomialAlgebra,
    /// For each arrow, the morphism it names.
    pub arrow_maps: Vec<ModuleMap>,
}

fn flatten(field: FieldKind, f: &ModuleMap) -> Vector {
    let mut out = Vec::new();
    for m in f {
        for i in 0..m.rows() {
            out.extend(m.row(i).iter().cloned());
        }
    }
    if out.is_empty() {
        out.push(field.zero());
    }
    out
}

fn compose(g: &ModuleMap, f: &ModuleMap) -> ModuleMap {
    g.iter().zip(f).map(|(g, f)| g.mul(f)).collect()
}

fn combine(field: FieldKind, basis: &[ModuleMap], coeffs: &[FieldElem], shape: &ModuleMap) -> ModuleMap {
    let mut out: ModuleMap = shape.iter().map(|m| ExactMatrix::zeros(field, m.rows(), m.cols())).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, m) in out.iter_mut().zip(b) {
            *o = o.add(&m.scale(c));
        }
    }
    out
}

impl EndomorphismAlgebra {
    pub fn new(alg: &MonomialAlgebra, modules: Vec<FDModule>) -> Result<Self> {
        let field = modules.first().map_or(FieldKind::Rational, FDModule::field);
        if modules.iter().any(|m| m.field() != field) {
            return Err(Error::InvalidInput("modules live over different fields".into()));
        }
        let homs: Vec<Vec<Vec<ModuleMap>>> = modules
            .iter()
            .map(|m| modules.iter().map(|n| module_hom_basis(alg, m, n)).collect())
            .collect();
        let flat = homs
            .iter()
            .enumerate()
            .map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .map(|(b, basis)| {
                        let len: usize = modules[a].dims().iter().zip(modules[b].dims()).map(|(x, y)| x * y).sum();
                        let cols: Vec<Vector> = basis.iter().map(|f| flatten(field, f)).collect();
                        ExactMatrix::from_columns(field, len.max(1), &cols)
                    })
                    .collect()
            })
            .collect();
        Ok(EndomorphismAlgebra { field, modules, homs, flat })
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn summands(&self) -> usize {
        self.modules.len()
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.homs[a][b].len()
    }

    pub fn hom_basis(&self, a: usize, b: usize) -> &[ModuleMap] {
        &self.homs[a][b]
    }

    pub fn dim(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    /// Coordinates of a map `M_a → M_b` in the chosen basis.
    pub fn coords(&self, a: usize, b: usize, f: &ModuleMap) -> Result<Vector> {
        if self.homs[a][b].is_empty() {
            return Ok(vec![]);
        }
        self.flat[a][b]
            .solve(&flatten(self.field, f))
            .ok_or_else(|| Error::Inconsistency(format!("map is not in Hom({a}, {b})")))
    }

    /// Structure constants: coordinates in `Hom(M_a, M_c)` of
    /// `basis_j(b→c) ∘ basis_i(a→b)`.
    pub fn product(&self, a: usize, b: usize, c: usize, i: usize, j: usize) -> Result<Vector> {
        self.coords(a, c, &compose(&self.homs[b][c][j], &self.homs[a][b][i]))
    }

    fn identity(&self, a: usize) -> ModuleMap {
        self.modules[a].dims().iter().map(|&d| ExactMatrix::identity(self.field, d)).collect()
    }

    /// Radical basis per block, assuming every `End(M_a)` is local with
    /// residue field `k` and the summands are pairwise non-isomorphic.
    pub fn radical(&self) -> Result<Vec<Vec<Vec<ModuleMap>>>> {
        let k = self.modules.len();
        let mut out = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    out[a][b] = self.homs[a][b].clone();
                    continue;
                }
                let n = self.modules[a].total_dim();
                if let FieldKind::Prime(p) = self.field {
                    if (n as u64).is_multiple_of(p) {
                        return Err(Error::Parameter(format!("characteristic {p} divides dim M_{a} = {n}")));
                    }
                }
                let id = self.identity(a);
                let inv_n = self.field.from_i64(n as i64).inv();
                let nil: Vec<Vector> = self.homs[a][a]
                    .iter()
                    .map(|f| {
                        let tr = f.iter().fold(self.field.zero(), |acc, m| {
                            (0..m.rows()).fold(acc, |acc, i| &acc + m.get(i, i))
                        });
                        let lambda = &tr * &inv_n;
                        let g = combine(self.field, &[f.clone(), id.clone()], &[self.field.one(), -&lambda], f);
                        self.coords(a, a, &g)
                    })
                    .collect::<Result<_>>()?;
                let basis = echelon_basis(self.field, self.homs[a][a].len(), nil);
                if basis.len() + 1 != self.homs[a][a].len() {
                    return Err(Error::InvalidInput(format!("End(M_{a}) is not local with residue field k")));
                }
                out[a][a] = basis.iter().map(|c| combine(self.field, &self.homs[a][a], c, &id)).collect();
            }
        }
        Ok(out)
    }

    /// Quiver with relations, when the algebra is basic and monomial in
    /// some choice of arrows; `None` when the chosen arrows leave a
    /// non-monomial relation.
    pub fn presentation(&self) -> Result<Option<Presentation>> {
        let k = self.modules.len();
        let field = self.field;
        let rad = self.radical()?;
        let mut arrows: Vec<(usize, usize)> = Vec::new();
        let mut arrow_maps: Vec<ModuleMap> = Vec::new();
        for a in 0..k {
            for b in 0..k {
                let mut sq: Vec<Vector> = Vec::new();
                for c in 0..k {
                    for f in &rad[a][c] {
                        for g in &rad[c][b] {
                            sq.push(self.coords(a, b, &compose(g, f))?);
                        }
                    }
                }
                let dim = self.homs[a][b].len();
                let mut span = echelon_basis(field, dim, sq);
                for f in &rad[a][b] {
                    let mut trial = span.clone();
                    trial.push(self.coords(a, b, f)?);
                    let grown = echelon_basis(field, dim, trial);
                    if grown.len() > span.len() {
                        span = grown;
                        arrows.push((b, a));
                        arrow_maps.push(f.clone());
                    }
                }
            }
        }
        // Breadth-first over paths, keeping nonzero ones and recording
        // the minimal vanishing ones as relations.
        let mut relations: Vec<Vec<usize>> = Vec::new();
        let mut values: Vec<Vec<Vec<Vector>>> = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            values[a][a].push(self.coords(a, a, &self.identity(a))?);
        }
        let mut frontier: Vec<(usize, Vec<usize>, ModuleMap)> = (0..k).map(|v| (v, vec![], self.identity(v))).collect();
        let mut seen = HashSet::new();
        let mut nonzero = k;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (start, path, value) in &frontier {
                let end = path.last().map_or(*start, |&x| arrows[x].1);
                for (x, &(s, t)) in arrows.iter().enumerate() {
                    if s != end {
                        continue;
                    }
                    let mut p = path.clone();
                    p.push(x);
                    if relations.iter().any(|r| p.ends_with(r)) || !seen.insert(p.clone()) {
                        continue;
                    }
                    // value: M_{end} → M_{start}; arrow x: M_t → M_s.
                    let v = compose(value, &arrow_maps[x]);
                    let c = self.coords(t, *start, &v)?;
                    if c.iter().all(FieldElem::is_zero) {
                        relations.push(p);
                    } else {
                        values[t][*start].push(c);
                        nonzero += 1;
                        if nonzero > self.dim() {
                            return Ok(None);
                        }
                        next.push((*start, p, v));
                    }
                }
            }
            frontier = next;
        }
        for a in 0..k {
            for b in 0..k {
                let n = values[a][b].len();
                if n != self.homs[a][b].len() || echelon_basis(field, n, values[a][b].clone()).len() != n {
                    return Ok(None);
                }
            }
        }
        let algebra = MonomialAlgebra::new(k, arrows, relations, None, DEFAULT_MAX_PATHS)?;
        if algebra.dim() != self.dim() {
            return Err(Error::Inconsistency("presentation dimension disagrees with the Hom count".into()));
        }
        Ok(Some(Presentation { algebra, arrow_maps }))
    }
}
