use super::quiver::Quiver;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, FieldKind, Vector};

/// A finite-dimensional representation of a quiver: a vector space per
/// vertex and a `dims[t] x dims[s]` matrix per arrow `s → t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    field: FieldKind,
    dims: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

/// A homomorphism of representations, one matrix per vertex.
pub type RepMorphism = Vec<ExactMatrix>;

impl QuiverRep {
    pub fn new(q: &Quiver, field: FieldKind, dims: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::Shape("representation does not match the quiver".into()));
        }
        for (a, (&(s, t), m)) in q.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Shape(format!(
                    "arrow {a}: map is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(QuiverRep { field, dims, maps })
    }

    pub fn zero(q: &Quiver, field: FieldKind) -> Self {
        let dims = vec![0; q.vertex_count()];
        let maps = q.arrows().iter().map(|_| ExactMatrix::zeros(field, 0, 0)).collect();
        QuiverRep { field, dims, maps }
    }

    pub fn simple(q: &Quiver, field: FieldKind, v: usize) -> Self {
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|&(s, t)| ExactMatrix::zeros(field, dims[t], dims[s]))
            .collect();
        QuiverRep { field, dims, maps }
    }

    /// Representation with integer matrices given per arrow.
    pub fn from_i64(q: &Quiver, field: FieldKind, dims: Vec<usize>, maps: &[Vec<Vec<i64>>]) -> Result<Self> {
        let maps = q
            .arrows()
            .iter()
            .zip(maps)
            .map(|(&(s, t), rows)| {
                if rows.is_empty() {
                    ExactMatrix::zeros(field, dims[t], dims[s])
                } else {
                    ExactMatrix::from_i64_rows(field, rows)
                }
            })
            .collect();
        QuiverRep::new(q, field, dims, maps)
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
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

    pub fn direct_sum(&self, q: &Quiver, other: &QuiverRep) -> QuiverRep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = q
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
        QuiverRep { field: self.field, dims, maps }
    }

    /// Reflection functor `S⁻_k` for a source `k` of `q`: the new space at
    /// `k` is the cokernel of `M_k → ⊕_{k→j} M_j`. The result lives on
    /// `q.reflected(k)`.
    pub fn reflect_at_source(&self, q: &Quiver, k: usize) -> Result<QuiverRep> {
        if !q.is_source(k) {
            return Err(Error::InvalidInput(format!("vertex {k} is not a source")));
        }
        let out: Vec<usize> =
            (0..q.arrows().len()).filter(|&a| q.arrows()[a].0 == k).collect();
        let blocks: Vec<&ExactMatrix> = out.iter().map(|&a| &self.maps[a]).collect();
        let total: usize = blocks.iter().map(|b| b.rows()).sum();
        let phi = ExactMatrix::vstack(self.field, self.dims[k], &blocks);
        let coker = phi.left_kernel_basis();
        let new_dim = coker.len();
        let pi = ExactMatrix::from_rows(self.field, total, coker);
        let mut maps = self.maps.clone();
        let mut offset = 0;
        for &a in &out {
            let rows = self.maps[a].rows();
            let mut m = ExactMatrix::zeros(self.field, new_dim, rows);
            for i in 0..new_dim {
                for j in 0..rows {
                    m.set(i, j, pi.get(i, offset + j).clone());
                }
            }
            maps[a] = m;
            offset += rows;
        }
        let mut dims = self.dims.clone();
        dims[k] = new_dim;
        QuiverRep::new(&q.reflected(k), self.field, dims, maps)
    }
}

/// Solution space of the intertwining system `N_a f_s = f_t M_a` over the
/// arrows `(s, t)`, flattened with `f_v` stored row-major after `f_0, ...`.
pub(crate) struct Intertwiner {
    pub system: ExactMatrix,
    pub offsets: Vec<usize>,
}

pub(crate) fn intertwiner(
    arrows: &[(usize, usize)],
    field: FieldKind,
    (mdims, mmaps): (&[usize], &[ExactMatrix]),
    (ndims, nmaps): (&[usize], &[ExactMatrix]),
) -> Intertwiner {
    let mut offsets = Vec::with_capacity(mdims.len() + 1);
    offsets.push(0);
    for v in 0..mdims.len() {
        offsets.push(offsets[v] + ndims[v] * mdims[v]);
    }
    let off = &offsets;
    let unknowns = off[mdims.len()];
    let mut rows: Vec<Vector> = Vec::new();
    for (a, &(s, t)) in arrows.iter().enumerate() {
        let (ma, na) = (&mmaps[a], &nmaps[a]);
        for i in 0..ndims[t] {
            for j in 0..mdims[s] {
                let mut row = vec![field.zero(); unknowns];
                for l in 0..ndims[s] {
                    let c = na.get(i, l);
                    if !c.is_zero() {
                        let idx = off[s] + l * mdims[s] + j;
                        row[idx] = &row[idx] + c;
                    }
                }
                for l in 0..mdims[t] {
                    let c = ma.get(l, j);
                    if !c.is_zero() {
                        let idx = off[t] + i * mdims[t] + l;
                        row[idx] = &row[idx] - c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = ExactMatrix::from_rows(field, unknowns, rows);
    Intertwiner { system, offsets }
}

impl Intertwiner {
    pub fn dim(&self) -> usize {
        self.offsets[self.offsets.len() - 1] - self.system.rank()
    }

    /// Kernel basis, unflattened into one `ndims[v] x mdims[v]` matrix per vertex.
    pub fn basis(&self, field: FieldKind, mdims: &[usize], ndims: &[usize]) -> Vec<Vec<ExactMatrix>> {
        let off = &self.offsets;
        self.system
            .kernel_basis()
            .into_iter()
            .map(|v| {
                (0..mdims.len())
                    .map(|x| {
                        let mut f = ExactMatrix::zeros(field, ndims[x], mdims[x]);
                        for r in 0..ndims[x] {
                            for c in 0..mdims[x] {
                                f.set(r, c, v[off[x] + r * mdims[x] + c].clone());
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect()
    }
}

fn hom_system(q: &Quiver, m: &QuiverRep, n: &QuiverRep) -> Intertwiner {
    intertwiner(q.arrows(), m.field, (&m.dims, &m.maps), (&n.dims, &n.maps))
}

/// `dim Hom(M, N)`.
pub fn hom_dim(q: &Quiver, m: &QuiverRep, n: &QuiverRep) -> usize {
    hom_system(q, m, n).dim()
}

/// Basis of `Hom(M, N)`, each element as one matrix per vertex.
pub fn hom_basis(q: &Quiver, m: &QuiverRep, n: &QuiverRep) -> Vec<RepMorphism> {
    hom_system(q, m, n).basis(m.field, &m.dims, &n.dims)
}

/// `dim Ext¹(M, N) = dim Hom(M, N) − ⟨dim M, dim N⟩`.
pub fn ext1_dim(q: &Quiver, m: &QuiverRep, n: &QuiverRep) -> Result<usize> {
    let h = hom_dim(q, m, n) as i64;
    let e = h - q.euler_form(&m.dims, &n.dims);
    usize::try_from(e)
        .map_err(|_| Error::Inconsistency(format!("negative Ext¹ dimension {e}")))
}

/// Is the morphism injective at every vertex?
pub fn is_mono(f: &RepMorphism) -> bool {
    f.iter().all(|fv| fv.rank() == fv.cols())
}

/// Cokernel of a monomorphism `f: B → M`.
pub fn cokernel(q: &Quiver, m: &QuiverRep, f: &RepMorphism) -> Result<QuiverRep> {
    let field = m.field;
    let pis: Vec<ExactMatrix> = f
        .iter()
        .enumerate()
        .map(|(v, fv)| {
            let rows = fv.left_kernel_basis();
            ExactMatrix::from_rows(field, m.dims[v], rows)
        })
        .collect();
    let sections: Vec<ExactMatrix> = pis.iter().map(right_inverse).collect::<Result<_>>()?;
    let dims: Vec<usize> = pis.iter().map(ExactMatrix::rows).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| pis[t].mul(&m.maps[a]).mul(&sections[s]))
        .collect();
    QuiverRep::new(q, field, dims, maps)
}

/// `X` with `P X = I` for a full-row-rank `P`.
pub(crate) fn right_inverse(p: &ExactMatrix) -> Result<ExactMatrix> {
    let field = p.field();
    let cols: Vec<Vector> = (0..p.rows())
        .map(|i| {
            let mut e = vec![field.zero(); p.rows()];
            e[i] = field.one();
            p.solve(&e)
                .ok_or_else(|| Error::Inconsistency("quotient map is not surjective".into()))
        })
        .collect::<Result<_>>()?;
    Ok(ExactMatrix::from_columns(field, p.cols(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldKind = FieldKind::Rational;

    fn a2() -> Quiver {
        Quiver::new(2, vec![(0, 1)]).unwrap()
    }

    fn p0(q: &Quiver) -> QuiverRep {
        QuiverRep::from_i64(q, Q, vec![1, 1], &[vec![vec![1]]]).unwrap()
    }

    #[test]
    fn a2_hom_and_ext() {
        let q = a2();
        let (s0, s1, p) = (QuiverRep::simple(&q, Q, 0), QuiverRep::simple(&q, Q, 1), p0(&q));
        assert_eq!(hom_dim(&q, &s0, &s0), 1);
        assert_eq!(hom_dim(&q, &s0, &p), 0);
        assert_eq!(hom_dim(&q, &p, &s0), 1);
        assert_eq!(ext1_dim(&q, &s0, &s1).unwrap(), 1);
        assert_eq!(ext1_dim(&q, &s1, &s0).unwrap(), 0);
        assert_eq!(ext1_dim(&q, &p, &s1).unwrap(), 0);
    }

    #[test]
    fn decomposable_rep_has_two_dim_endomorphisms() {
        let q = a2();
        let m = QuiverRep::simple(&q, Q, 0).direct_sum(&q, &QuiverRep::simple(&q, Q, 1));
        assert_eq!(hom_dim(&q, &m, &m), 2);
    }

    #[test]
    fn reflection_at_source_turns_simple_into_projective() {
        // 0 → 1 with 0 a source: S⁻_0 sends S_1 on the reflected quiver
        // back to the indecomposable with dims (1, 1).
        let q = a2();
        let reflected = q.reflected(0);
        let s1 = QuiverRep::simple(&q, Q, 1);
        let m = s1.reflect_at_source(&q, 0).unwrap();
        assert_eq!(m.dims(), &[1, 1]);
        assert_eq!(hom_dim(&reflected, &m, &m), 1);
    }

    #[test]
    fn cokernel_of_socle_inclusion() {
        let q = a2();
        let (s1, p) = (QuiverRep::simple(&q, Q, 1), p0(&q));
        let basis = hom_basis(&q, &s1, &p);
        assert_eq!(basis.len(), 1);
        assert!(is_mono(&basis[0]));
        let c = cokernel(&q, &p, &basis[0]).unwrap();
        assert_eq!(c.dims(), &[1, 0]);
    }
}
