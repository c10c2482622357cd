//! Subspaces of Q^n with a canonical basis.
//!
//! The stored basis matrix is in reduced column echelon form (the transpose
//! of an RREF), so two subspaces are equal exactly when their basis matrices
//! are equal. This is the carrier type for strata, lower central series
//! terms, Killing filtration levels and coefficient spaces of graded maps.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::{LinSolver, RatMat};
use crate::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    /// Columns span the subspace; reduced column echelon form.
    basis_matrix: RatMat,
}

impl Subspace {
    /// Canonicalizes the span of the given vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length != ambient dim");
        }
        let rows = RatMat::from_rows(vectors.to_vec());
        let (rr, pivots) = rows.rref();
        let cols: Vec<Vec<Rat>> = (0..pivots.len()).map(|i| rr.row(i).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis_matrix: if cols.is_empty() {
                RatMat::zeros(ambient_dim, 0)
            } else {
                RatMat::from_cols(cols)
            },
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis_matrix: RatMat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis_matrix: RatMat::identity(ambient_dim),
        }
    }

    /// Span of the given standard basis indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<Rat>> = indices
            .iter()
            .map(|&i| {
                let mut v = alloc::vec![Rat::zero(); ambient_dim];
                v[i] = num_traits::One::one();
                v
            })
            .collect();
        Self::from_vectors(ambient_dim, &vecs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis_matrix.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis_matrix(&self) -> &RatMat {
        &self.basis_matrix
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|j| self.basis_matrix.col(j)).collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(Rat::is_zero) {
            return true;
        }
        self.basis_matrix.solve(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let solver = LinSolver::new(&self.basis_matrix);
        (0..other.dim()).all(|j| solver.solve(&other.basis_matrix.col(j)).is_some())
    }

    /// Sum of the two spans.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Subspace::from_vectors(self.ambient_dim, &vecs)
    }

    /// Prepared membership solver (for repeated queries).
    pub fn solver(&self) -> LinSolver {
        LinSolver::new(&self.basis_matrix)
    }
}
