use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Default cap on the number of basis paths.
pub const DEFAULT_MAX_PATHS: usize = 10_000;

/// A path in traversal order: `arrows[0]` leaves `start`, the last arrow
/// enters `end`. Trivial paths have no arrows and `start == end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Path algebra of a finite quiver modulo an ideal generated by paths,
/// with an optional integer grading on the arrows.
///
/// Multiplication is concatenation in traversal order: `p · q` is `p`
/// followed by `q`, nonzero only when `p` ends where `q` starts and the
/// result avoids every relation.
#[derive(Debug, Clone)]
pub struct MonomialAlgebra {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    degrees: Vec<i32>,
    graded: bool,
    relations: Vec<Vec<usize>>,
    basis: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    between: HashMap<(usize, usize), Vec<usize>>,
}

/// On-disk algebra format:
/// `{"vertices": n, "arrows": [[s, t, deg?], ...], "relations": [[a, b, ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<Vec<Value>>,
    #[serde(default)]
    pub relations: Vec<Vec<usize>>,
}

impl MonomialAlgebra {
    pub fn new(
        vertices: usize,
        arrows: Vec<(usize, usize)>,
        relations: Vec<Vec<usize>>,
        degrees: Option<Vec<i32>>,
        max_paths: usize,
    ) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidInput("algebra needs at least one vertex".into()));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= vertices || t >= vertices) {
            return Err(Error::InvalidInput(format!("arrow ({s}, {t}) out of range")));
        }
        let graded = degrees.is_some();
        let degrees = degrees.unwrap_or_else(|| vec![0; arrows.len()]);
        if degrees.len() != arrows.len() {
            return Err(Error::InvalidInput("one degree per arrow is required".into()));
        }
        for (k, rel) in relations.iter().enumerate() {
            if rel.len() < 2 {
                return Err(Error::InvalidInput(format!("relation {k} has length < 2")));
            }
            if rel.iter().any(|&a| a >= arrows.len()) {
                return Err(Error::InvalidInput(format!("relation {k} uses an unknown arrow")));
            }
            if rel.windows(2).any(|w| arrows[w[0]].1 != arrows[w[1]].0) {
                return Err(Error::InvalidInput(format!("relation {k} is not a composable path")));
            }
        }
        let mut basis: Vec<Path> =
            (0..vertices).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
        let mut frontier: Vec<Path> = basis.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (a, &(s, t)) in arrows.iter().enumerate() {
                    if s != p.end {
                        continue;
                    }
                    let mut q = p.arrows.clone();
                    q.push(a);
                    if relations.iter().any(|r| q.ends_with(r)) {
                        continue;
                    }
                    next.push(Path { start: p.start, end: t, arrows: q });
                    if basis.len() + next.len() > max_paths {
                        return Err(Error::InfiniteDimensional { limit: max_paths });
                    }
                }
            }
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort_by(|x, y| (x.start, x.len(), &x.arrows).cmp(&(y.start, y.len(), &y.arrows)));
        let index = basis.iter().enumerate().map(|(i, p)| ((p.start, p.arrows.clone()), i)).collect();
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, p) in basis.iter().enumerate() {
            between.entry((p.start, p.end)).or_default().push(i);
        }
        Ok(MonomialAlgebra { vertices, arrows, degrees, graded, relations, basis, index, between })
    }

    /// Path algebra of a quiver without relations.
    pub fn path_algebra(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(vertices, arrows, vec![], None, DEFAULT_MAX_PATHS)
    }

    pub fn from_doc(doc: &AlgebraDoc, max_paths: usize) -> Result<Self> {
        let mut arrows = Vec::new();
        let mut degrees = Vec::new();
        let mut graded = false;
        for (k, a) in doc.arrows.iter().enumerate() {
            let int = |v: &Value| {
                v.as_i64().ok_or_else(|| Error::InvalidInput(format!("arrow {k}: expected integers")))
            };
            match a.as_slice() {
                [s, t] => {
                    arrows.push((int(s)? as usize, int(t)? as usize));
                    degrees.push(0);
                }
                [s, t, d] => {
                    arrows.push((int(s)? as usize, int(t)? as usize));
                    degrees.push(int(d)? as i32);
                    graded = true;
                }
                _ => return Err(Error::InvalidInput(format!("arrow {k}: expected [s, t] or [s, t, deg]"))),
            }
        }
        Self::new(doc.vertices, arrows, doc.relations.clone(), graded.then_some(degrees), max_paths)
    }

    pub fn from_json(text: &str, max_paths: usize) -> Result<Self> {
        let doc: AlgebraDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_doc(&doc, max_paths)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn arrow_degree(&self, a: usize) -> i32 {
        self.degrees[a]
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].arrows.iter().map(|&a| self.degrees[a]).sum()
    }

    pub fn trivial(&self, v: usize) -> usize {
        self.index[&(v, vec![])]
    }

    /// Basis index of the length-one path along arrow `a`, if nonzero.
    pub fn arrow_path(&self, a: usize) -> Option<usize> {
        self.index.get(&(self.arrows[a].0, vec![a])).copied()
    }

    pub fn lookup(&self, start: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(start, arrows.to_vec())).copied()
    }

    /// Basis paths from `from` to `to`.
    pub fn paths_between(&self, from: usize, to: usize) -> &[usize] {
        self.between.get(&(from, to)).map_or(&[], Vec::as_slice)
    }

    /// `p` followed by `q`, or `None` when the product vanishes.
    pub fn concat(&self, p: usize, q: usize) -> Option<usize> {
        let (p, q) = (&self.basis[p], &self.basis[q]);
        if p.end != q.start {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        self.lookup(p.start, &arrows)
    }

    /// Dimension of `e_v A`, the paths starting at `v`.
    pub fn projective_dim(&self, v: usize) -> usize {
        self.basis.iter().filter(|p| p.start == v).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers() {
        let a = MonomialAlgebra::new(1, vec![(0, 0)], vec![vec![0, 0]], None, 100).unwrap();
        assert_eq!(a.dim(), 2);
        let x = a.arrow_path(0).unwrap();
        assert_eq!(a.concat(x, x), None);
        assert_eq!(a.concat(a.trivial(0), x), Some(x));
    }

    #[test]
    fn a2_path_algebra() {
        let a = MonomialAlgebra::path_algebra(2, vec![(0, 1)]).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.paths_between(0, 1).len(), 1);
        assert!(a.paths_between(1, 0).is_empty());
    }

    #[test]
    fn two_cycle_with_one_relation() {
        // 0 → 1 → 0 with 1 → 0 → 1 zero: e0, e1, a, b, ab.
        let a = MonomialAlgebra::new(2, vec![(0, 1), (1, 0)], vec![vec![1, 0]], None, 100).unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn free_loop_is_infinite() {
        let err = MonomialAlgebra::new(1, vec![(0, 0)], vec![], None, 50).unwrap_err();
        assert_eq!(err, Error::InfiniteDimensional { limit: 50 });
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(MonomialAlgebra::new(2, vec![(0, 1)], vec![vec![0]], None, 10).is_err());
        assert!(MonomialAlgebra::new(2, vec![(0, 1)], vec![vec![0, 0]], None, 10).is_err());
    }

    #[test]
    fn parses_graded_json() {
        let a = MonomialAlgebra::from_json(
            r#"{"vertices": 2, "arrows": [[0, 1, 0], [0, 1, 2]], "relations": []}"#,
            100,
        )
        .unwrap();
        assert!(a.is_graded());
        assert_eq!(a.dim(), 4);
        let degs: Vec<i32> = a.paths_between(0, 1).iter().map(|&p| a.degree(p)).collect();
        assert_eq!(degs, vec![0, 2]);
    }
}
