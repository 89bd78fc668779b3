//! The constraint operator 𝒜, its adjoint, Schur complement assembly and
//! factorization, and dense condition-number computation.

mod scm;

pub use scm::{scm_assemble, scm_assemble_seq, ScmMatrix};
#[cfg(feature = "parallel")]
pub use scm::scm_assemble_par;

use std::sync::OnceLock;

use nalgebra::{Cholesky, DMatrix, Dyn};
use thiserror::Error;

use crate::cones::Element;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("triplet ({row}, {col}) out of bounds for a {rows}x{cols} operator")]
    TripletOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("operator is rank deficient (Cholesky of AA* failed)")]
    RankDeficient,
    #[error("Schur complement stayed indefinite after the maximum diagonal shift")]
    ScmBreakdown,
    #[error("matrix has a non-positive eigenvalue ({0:e}); interiority lost upstream")]
    NonPositiveEigenvalue(f64),
    #[error("dense eigensolve guard: m = {0} exceeds 2000")]
    CondGuard(usize),
}

/// Sparse linear operator 𝒜 with `m` rows over `vec_len` coordinates,
/// stored compressed by rows. Duplicate (row, col) entries are summed at
/// construction. Immutable and shareable across threads.
#[derive(Clone, Debug)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<f64>,
    aat_chol: OnceLock<Option<Cholesky<f64, Dyn>>>,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.row_ptr == other.row_ptr
            && self.col_idx == other.col_idx
            && self.vals == other.vals
    }
}

impl LinearMap {
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: &[(usize, usize, f64)],
    ) -> Result<Self, LinalgError> {
        for &(r, c, _) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::TripletOutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
        }
        let mut sorted: Vec<(usize, usize, f64)> = triplets.to_vec();
        sorted.sort_by_key(|t| (t.0, t.1));

        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut vals: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut k = 0;
        for (r, ptr) in row_ptr.iter_mut().enumerate().take(rows) {
            let row_start = col_idx.len();
            *ptr = row_start;
            while k < sorted.len() && sorted[k].0 == r {
                let (_, c, v) = sorted[k];
                if col_idx.len() > row_start && *col_idx.last().unwrap() == c {
                    *vals.last_mut().unwrap() += v;
                } else {
                    col_idx.push(c);
                    vals.push(v);
                }
                k += 1;
            }
        }
        row_ptr[rows] = col_idx.len();
        Ok(LinearMap {
            rows,
            cols,
            row_ptr,
            col_idx,
            vals,
            aat_chol: OnceLock::new(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Triplet view (row, col, value) in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .map(move |k| (r, self.col_idx[k], self.vals[k]))
        })
    }

    /// 𝒜x: sparse matrix-vector product.
    pub fn apply(&self, x: &Element) -> Result<Vec<f64>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let xs = x.as_slice();
        let mut out = vec![0.0; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * xs[self.col_idx[k]];
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Plain transpose action 𝒜ᵀλ on raw coordinates.
    pub fn apply_transpose(&self, lambda: &[f64]) -> Result<Element, LinalgError> {
        if lambda.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: lambda.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for (r, &l) in lambda.iter().enumerate() {
            if l == 0.0 {
                continue;
            }
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                out[self.col_idx[k]] += self.vals[k] * l;
            }
        }
        Ok(Element::from_vec(out))
    }

    /// 𝒜*λ: the adjoint with respect to the algebra inner product,
    /// satisfying ⟨𝒜x, λ⟩ = ⟨x, 𝒜*λ⟩. Equals W⁻¹𝒜ᵀλ where W holds the
    /// trace-form coordinate weights.
    pub fn apply_adjoint(
        &self,
        cone: &crate::cones::ConeDesc,
        lambda: &[f64],
    ) -> Result<Element, LinalgError> {
        if cone.vec_len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: cone.vec_len(),
            });
        }
        let mut out = self.apply_transpose(lambda)?;
        cone.apply_inv_weights(&mut out);
        Ok(out)
    }

    /// Row `i` as a dense element: a_i = 𝒜* e_i.
    pub fn row_element(&self, i: usize) -> Element {
        let mut out = vec![0.0; self.cols];
        for k in self.row_ptr[i]..self.row_ptr[i + 1] {
            out[self.col_idx[k]] = self.vals[k];
        }
        Element::from_vec(out)
    }

    pub(crate) fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (self.col_idx[k], self.vals[k]))
    }

    /// Dense 𝒜 D 𝒜* for a coordinate-diagonal weight D.
    pub fn weighted_gram(&self, d: &[f64]) -> Result<DMatrix<f64>, LinalgError> {
        if d.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: d.len(),
            });
        }
        let m = self.rows;
        let mut out = DMatrix::zeros(m, m);
        let mut scratch = vec![0.0; self.cols];
        for i in 0..m {
            for (c, v) in self.row_entries(i) {
                scratch[c] = v * d[c];
            }
            for j in i..m {
                let mut acc = 0.0;
                for (c, v) in self.row_entries(j) {
                    acc += scratch[c] * v;
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc;
            }
            for (c, _) in self.row_entries(i) {
                scratch[c] = 0.0;
            }
        }
        Ok(out)
    }

    /// Dense 𝒜𝒜*.
    pub fn gram(&self) -> DMatrix<f64> {
        self.weighted_gram(&vec![1.0; self.cols]).expect("dims agree")
    }

    fn gram_factor(&self) -> Option<&Cholesky<f64, Dyn>> {
        self.aat_chol
            .get_or_init(|| self.gram().cholesky())
            .as_ref()
    }

    /// Surjectivity check: Cholesky of 𝒜𝒜* must succeed. The factor is
    /// computed once per operator and cached.
    pub fn validate_full_rank(&self) -> Result<(), LinalgError> {
        if self.gram_factor().is_some() {
            Ok(())
        } else {
            Err(LinalgError::RankDeficient)
        }
    }

}
