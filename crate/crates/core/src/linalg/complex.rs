use std::collections::BTreeMap;

use super::field::FieldKind;
use super::matrix::ExactMatrix;
use crate::error::{Error, Result};

/// A bounded cochain complex of finite-dimensional vector spaces. The
/// differential `d_i` goes from degree `i` to degree `i + 1` and is stored
/// as a `dim(i+1) x dim(i)` matrix.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    field: FieldKind,
    terms: BTreeMap<i32, usize>,
    differentials: BTreeMap<i32, ExactMatrix>,
}

impl CochainComplex {
    pub fn new(field: FieldKind) -> Self {
        CochainComplex { field, terms: BTreeMap::new(), differentials: BTreeMap::new() }
    }

    pub fn with_term(mut self, degree: i32, dim: usize) -> Self {
        self.set_term(degree, dim);
        self
    }

    pub fn set_term(&mut self, degree: i32, dim: usize) {
        if dim == 0 {
            self.terms.remove(&degree);
        } else {
            self.terms.insert(degree, dim);
        }
    }

    pub fn with_differential(mut self, degree: i32, d: ExactMatrix) -> Self {
        self.differentials.insert(degree, d);
        self
    }

    pub fn set_differential(&mut self, degree: i32, d: ExactMatrix) {
        self.differentials.insert(degree, d);
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.terms.get(&degree).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<i32, usize> {
        &self.terms
    }

    /// Differential out of `degree`, materialised as a zero map when absent.
    pub fn differential(&self, degree: i32) -> ExactMatrix {
        match self.differentials.get(&degree) {
            Some(d) => d.clone(),
            None => ExactMatrix::zeros(self.field, self.dim(degree + 1), self.dim(degree)),
        }
    }

    /// Checks shapes and `d_{i+1} d_i = 0`.
    pub fn validate(&self) -> Result<()> {
        for (&i, d) in &self.differentials {
            if d.rows() != self.dim(i + 1) || d.cols() != self.dim(i) {
                return Err(Error::Shape(format!(
                    "d_{i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dim(i + 1),
                    self.dim(i)
                )));
            }
        }
        for (&i, d) in &self.differentials {
            if let Some(next) = self.differentials.get(&(i + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::NotAComplex { degree: i });
                }
            }
        }
        Ok(())
    }

    /// `dim H^i = dim ker d_i - rank d_{i-1}` for every degree with a
    /// nonzero term. Degrees with vanishing cohomology are included with 0.
    pub fn cohomology_dims(&self) -> Result<BTreeMap<i32, usize>> {
        self.validate()?;
        let mut out = BTreeMap::new();
        for (&i, &dim) in &self.terms {
            let rank_out = self.differentials.get(&i).map_or(0, ExactMatrix::rank);
            let rank_in = self.differentials.get(&(i - 1)).map_or(0, ExactMatrix::rank);
            out.insert(i, dim - rank_out - rank_in);
        }
        Ok(out)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().map(|(&i, &d)| sign(i) * d as i64).sum()
    }
}

pub(crate) fn sign(i: i32) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
