use serde::Serialize;

use super::complex::{Entry, ProjComplex, Summand};
use super::monomial::MonomialAlgebra;
use crate::error::{Error, Result};
use crate::hereditary::rep::intertwiner;
use crate::linalg::{echelon_basis, ExactMatrix, FieldKind, Vector};

/// A finite-dimensional right module over a monomial algebra, given as a
/// quiver representation: arrow `s → t` acts by a `dims[t] x dims[s]`
/// matrix and every relation acts by zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDModule {
    field: FieldKind,
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

impl FDModule {
    pub fn new(alg: &MonomialAlgebra, field: FieldKind, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        if dims.len() != alg.vertex_count() || maps.len() != alg.arrows().len() {
            return Err(Error::Shape("module does not match the quiver".into()));
        }
        for (a, &(s, t)) in alg.arrows().iter().enumerate() {
            if maps[a].rows() != dims[t] || maps[a].cols() != dims[s] {
                return Err(Error::Shape(format!("arrow {a}: map has the wrong shape")));
            }
        }
        let m = FDModule { field, dims, maps };
        for (k, rel) in alg.relations().iter().enumerate() {
            if !m.path_action(alg.arrows()[rel[0]].0, rel).is_zero() {
                return Err(Error::InvalidInput(format!("relation {k} does not act by zero")));
            }
        }
        Ok(m)
    }

    pub fn simple(alg: &MonomialAlgebra, field: FieldKind, v: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        let maps = alg
            .arrows()
            .iter()
            .map(|&(s, t)| ExactMatrix::zeros(field, dims[t], dims[s]))
            .collect();
        FDModule { field, dims, maps }
    }

    /// `P_v = e_v A`, with basis the paths starting at `v`.
    pub fn projective(alg: &MonomialAlgebra, field: FieldKind, v: usize) -> Self {
        let n = alg.vertex_count();
        let at: Vec<Vec<usize>> = (0..n).map(|u| alg.paths_between(v, u).to_vec()).collect();
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = ExactMatrix::zeros(field, dims[t], dims[s]);
                if let Some(x) = alg.arrow_path(a) {
                    for (j, &p) in at[s].iter().enumerate() {
                        if let Some(q) = alg.concat(p, x) {
                            let i = at[t].iter().position(|&r| r == q).expect("endpoint");
                            m.set(i, j, field.one());
                        }
                    }
                }
                m
            })
            .collect();
        FDModule { field, dims, maps }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Action of the path from `start` along `arrows` (traversal order).
    pub fn path_action(&self, start: usize, arrows: &[usize]) -> ExactMatrix {
        arrows
            .iter()
            .fold(ExactMatrix::identity(self.field, self.dims[start]), |acc, &a| self.maps[a].mul(&acc))
    }

    pub fn direct_sum(&self, alg: &MonomialAlgebra, other: &FDModule) -> FDModule {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = ExactMatrix::zeros(self.field, dims[t], dims[s]);
                m.set_block(0, 0, &self.maps[a]);
                m.set_block(self.dims[t], self.dims[s], &other.maps[a]);
                m
            })
            .collect();
        FDModule { field: self.field, dims, maps }
    }

    /// Radical `M·J`, as a column basis per vertex.
    pub fn radical(&self, alg: &MonomialAlgebra) -> Vec<Vec<Vector>> {
        (0..self.dims.len())
            .map(|u| {
                let cols: Vec<Vector> = alg
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, &(_, t))| t == u)
                    .flat_map(|(a, _)| (0..self.maps[a].cols()).map(move |j| self.maps[a].column(j)))
                    .collect();
                echelon_basis(self.field, self.dims[u], cols)
            })
            .collect()
    }

    /// Top generators: for each vertex, vectors whose images span `M / MJ`.
    pub fn top_generators(&self, alg: &MonomialAlgebra) -> Vec<(usize, Vector)> {
        let rad = self.radical(alg);
        let mut out = Vec::new();
        for (u, basis) in rad.into_iter().enumerate() {
            let mut span = basis;
            for i in 0..self.dims[u] {
                let mut e = vec![self.field.zero(); self.dims[u]];
                e[i] = self.field.one();
                let mut trial = span.clone();
                trial.push(e.clone());
                if echelon_basis(self.field, self.dims[u], trial).len() > span.len() {
                    span.push(e.clone());
                    out.push((u, e));
                }
            }
        }
        out
    }
}

/// `dim Hom_A(M, N)`.
pub fn module_hom_dim(alg: &MonomialAlgebra, m: &FDModule, n: &FDModule) -> usize {
    intertwiner(alg.arrows(), m.field, (&m.dims, &m.maps), (&n.dims, &n.maps)).dim()
}

/// Basis of `Hom_A(M, N)`, one matrix per vertex.
pub fn module_hom_basis(alg: &MonomialAlgebra, m: &FDModule, n: &FDModule) -> Vec<Vec<ExactMatrix>> {
    intertwiner(alg.arrows(), m.field, (&m.dims, &m.maps), (&n.dims, &n.maps))
        .basis(m.field, &m.dims, &n.dims)
}

/// Per-step record of a resolution: the cover, the syzygy left over, and
/// whether rank bookkeeping closed up at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCertificate {
    pub step: usize,
    pub generators: Vec<usize>,
    pub covered_dims: Vec<usize>,
    pub cover_rank: Vec<usize>,
    pub syzygy_dims: Vec<usize>,
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    /// `P_k` sits in cohomological degree `-k`.
    pub complex: ProjComplex,
    pub certificates: Vec<StepCertificate>,
    /// False when `max_len` was reached with a nonzero syzygy left.
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.certificates.len().saturating_sub(1)
    }

    /// Vertices of the generators of `P_k`.
    pub fn term(&self, k: usize) -> Vec<usize> {
        self.certificates.get(k).map(|c| c.generators.clone()).unwrap_or_default()
    }

    pub fn is_exact(&self) -> bool {
        self.certificates.iter().all(|c| c.exact)
    }
}

/// A free module `⊕_j P_{w_j}` with the kernel of a map out of it, in
/// path coordinates.
struct Cover {
    generators: Vec<usize>,
    /// Basis of `(⊕ P_{w_j}) e_u` as `(copy, path)`.
    coords: Vec<Vec<(usize, usize)>>,
}

impl Cover {
    fn new(alg: &MonomialAlgebra, generators: Vec<usize>) -> Self {
        let coords = (0..alg.vertex_count())
            .map(|u| {
                generators
                    .iter()
                    .enumerate()
                    .flat_map(|(j, &w)| alg.paths_between(w, u).iter().map(move |&p| (j, p)))
                    .collect()
            })
            .collect();
        Cover { generators, coords }
    }

    fn arrow_matrix(&self, alg: &MonomialAlgebra, field: FieldKind, a: usize) -> ExactMatrix {
        let (s, t) = alg.arrows()[a];
        let mut m = ExactMatrix::zeros(field, self.coords[t].len(), self.coords[s].len());
        if let Some(x) = alg.arrow_path(a) {
            for (col, &(j, p)) in self.coords[s].iter().enumerate() {
                if let Some(q) = alg.concat(p, x) {
                    let row = self.coords[t].iter().position(|&c| c == (j, q)).expect("coordinate");
                    m.set(row, col, field.one());
                }
            }
        }
        m
    }
}

/// Minimal projective resolution of `m`, truncated after `max_len` syzygies.
pub fn minimal_projective_resolution(alg: &MonomialAlgebra, m: &FDModule, max_len: usize) -> Result<Resolution> {
    if alg.is_graded() && (0..alg.arrows().len()).any(|a| alg.arrow_degree(a) != 0) {
        return Err(Error::InvalidInput("resolutions are computed over ungraded algebras".into()));
    }
    let field = m.field;
    let n = alg.vertex_count();
    let mut summands: Vec<Summand> = Vec::new();
    let mut entries: Vec<Entry> = Vec::new();
    let mut certificates = Vec::new();
    let mut current = m.clone();
    // Embedding of the current module into the previous cover, per vertex.
    let mut embedding: Option<(Vec<ExactMatrix>, Vec<usize>)> = None;
    let mut prev_offset = 0usize;
    let mut step = 0usize;
    loop {
        let gens = current.top_generators(alg);
        let cover = Cover::new(alg, gens.iter().map(|(u, _)| *u).collect());
        let offset = summands.len();
        for &(u, _) in &gens {
            summands.push(Summand { vertex: u, degree: -(step as i32), twist: 0 });
        }
        if let Some((iota, prev_generators)) = &embedding {
            let prev = Cover::new(alg, prev_generators.clone());
            for (j, (u, g)) in gens.iter().enumerate() {
                let image = iota[*u].mul_vec(g);
                for (row, &(jp, path)) in prev.coords[*u].iter().enumerate() {
                    if !image[row].is_zero() {
                        entries.push(Entry {
                            from: offset + j,
                            to: prev_offset + jp,
                            path,
                            coeff: image[row].clone(),
                        });
                    }
                }
            }
        }
        // The cover map at each vertex: column (j, p) is g_j acted on by p.
        let pis: Vec<ExactMatrix> = (0..n)
            .map(|u| {
                let cols: Vec<Vector> = cover.coords[u]
                    .iter()
                    .map(|&(j, p)| {
                        let (w, g) = &gens[j];
                        debug_assert_eq!(alg.path(p).start, *w);
                        current.path_action(*w, &alg.path(p).arrows).mul_vec(g)
                    })
                    .collect();
                if cols.is_empty() {
                    ExactMatrix::zeros(field, current.dims[u], 0)
                } else {
                    ExactMatrix::from_columns(field, current.dims[u], &cols)
                }
            })
            .collect();
        let cover_rank: Vec<usize> = pis.iter().map(ExactMatrix::rank).collect();
        let kernels: Vec<Vec<Vector>> = pis.iter().map(ExactMatrix::kernel_basis).collect();
        let syzygy_dims: Vec<usize> = kernels.iter().map(Vec::len).collect();
        let exact = (0..n).all(|u| {
            cover_rank[u] == current.dims[u] && cover.coords[u].len() == cover_rank[u] + syzygy_dims[u]
        });
        certificates.push(StepCertificate {
            step,
            generators: cover.generators.clone(),
            covered_dims: current.dims.clone(),
            cover_rank,
            syzygy_dims: syzygy_dims.clone(),
            exact,
        });
        if !exact {
            return Err(Error::Inconsistency(format!("projective cover fails at step {step}")));
        }
        let iota: Vec<ExactMatrix> = (0..n)
            .map(|u| {
                if kernels[u].is_empty() {
                    ExactMatrix::zeros(field, cover.coords[u].len(), 0)
                } else {
                    ExactMatrix::from_columns(field, cover.coords[u].len(), &kernels[u])
                }
            })
            .collect();
        if syzygy_dims.iter().all(|&d| d == 0) {
            let complex = ProjComplex::new(alg, field, summands, entries)?;
            return Ok(Resolution { complex, certificates, complete: true });
        }
        if step == max_len {
            let complex = ProjComplex::new(alg, field, summands, entries)?;
            return Ok(Resolution { complex, certificates, complete: false });
        }
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let act = cover.arrow_matrix(alg, field, a).mul(&iota[s]);
                let cols: Vec<Vector> = (0..act.cols())
                    .map(|c| {
                        iota[t]
                            .solve(&act.column(c))
                            .ok_or_else(|| Error::Inconsistency("syzygy is not a submodule".into()))
                    })
                    .collect::<Result<_>>()?;
                Ok(if cols.is_empty() {
                    ExactMatrix::zeros(field, syzygy_dims[t], 0)
                } else {
                    ExactMatrix::from_columns(field, syzygy_dims[t], &cols)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        current = FDModule::new(alg, field, syzygy_dims, maps)?;
        embedding = Some((iota, cover.generators));
        prev_offset = offset;
        step += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldKind = FieldKind::Rational;

    fn a2() -> MonomialAlgebra {
        MonomialAlgebra::path_algebra(2, vec![(0, 1)]).unwrap()
    }

    #[test]
    fn projectives_of_a2() {
        let alg = a2();
        assert_eq!(FDModule::projective(&alg, Q, 0).dims(), &[1, 1]);
        assert_eq!(FDModule::projective(&alg, Q, 1).dims(), &[0, 1]);
        let p0 = FDModule::projective(&alg, Q, 0);
        let p1 = FDModule::projective(&alg, Q, 1);
        assert_eq!(module_hom_dim(&alg, &p1, &p0), 1);
        assert_eq!(module_hom_dim(&alg, &p0, &p1), 0);
    }

    #[test]
    fn relations_are_enforced() {
        let alg = MonomialAlgebra::new(1, vec![(0, 0)], vec![vec![0, 0]], None, 10).unwrap();
        let x = ExactMatrix::from_i64_rows(Q, &[vec![0, 1], vec![0, 0]]);
        assert!(FDModule::new(&alg, Q, vec![2], vec![x]).is_ok());
        let y = ExactMatrix::from_i64_rows(Q, &[vec![1, 0], vec![0, 0]]);
        assert!(FDModule::new(&alg, Q, vec![2], vec![y]).is_err());
    }

    #[test]
    fn projective_has_trivial_resolution() {
        let alg = a2();
        let res = minimal_projective_resolution(&alg, &FDModule::projective(&alg, Q, 0), 5).unwrap();
        assert!(res.complete);
        assert_eq!(res.length(), 0);
        assert_eq!(res.term(0), vec![0]);
    }

    #[test]
    fn simple_of_a2_resolves_in_one_step() {
        let alg = a2();
        let res = minimal_projective_resolution(&alg, &FDModule::simple(&alg, Q, 0), 5).unwrap();
        assert!(res.complete && res.is_exact());
        assert_eq!(res.term(0), vec![0]);
        assert_eq!(res.term(1), vec![1]);
    }

    #[test]
    fn dual_numbers_resolution_is_periodic() {
        let alg = MonomialAlgebra::new(1, vec![(0, 0)], vec![vec![0, 0]], None, 10).unwrap();
        let res = minimal_projective_resolution(&alg, &FDModule::simple(&alg, Q, 0), 4).unwrap();
        assert!(!res.complete);
        assert_eq!(res.length(), 4);
        assert!(res.certificates.iter().all(|c| c.generators == vec![0]));
    }
}
