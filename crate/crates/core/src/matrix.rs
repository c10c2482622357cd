//! Dense matrices over exact rationals, with fraction-free elimination.
//!
//! Elimination follows the Bareiss scheme on an integer-scaled copy of the
//! matrix, so intermediate entries are minors of the input rather than
//! free-growing fractions. Pivoting is deterministic: columns are scanned
//! left to right and the pivot is the surviving row of lowest index with a
//! nonzero entry, so every derived object (RREF, rank, nullspace basis) is
//! canonical for a given input.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Row-major dense matrix of [`Rat`] entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds from row vectors. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMat { rows: r, cols: c, data }
    }

    /// Builds from column vectors.
    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Rat]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RatMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &Rat) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &RatMat) -> RatMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.cols);
        let mut rows: Vec<Vec<Rat>> = self.rows_iter().map(<[Rat]>::to_vec).collect();
        rows.extend(other.rows_iter().map(<[Rat]>::to_vec));
        Self::from_rows(rows)
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        // Integer-scale each row, then Bareiss to echelon form.
        let mut m: Vec<Vec<Int>> = self
            .rows_iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(Int::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        let rows = self.rows;
        let cols = self.cols;

        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = Int::one();
        let mut r = 0usize;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    // Still must rescale the trailing entries to keep the
                    // Bareiss invariant.
                    for j in c + 1..cols {
                        if !m[i][j].is_zero() {
                            m[i][j] = &m[r][c] * &m[i][j] / &prev;
                        }
                    }
                    continue;
                }
                for j in c + 1..cols {
                    let t = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = t / &prev;
                }
                m[i][c] = Int::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }

        // Back-substitute over rationals to reach reduced form.
        let mut rr = RatMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                rr[(i, j)] = Rat::from_integer(m[i][j].clone());
            }
        }
        for (ri, &pc) in pivots.iter().enumerate().rev() {
            let inv = rr[(ri, pc)].recip();
            for j in pc..cols {
                let v = &rr[(ri, j)] * &inv;
                rr[(ri, j)] = v;
            }
            for above in 0..ri {
                let factor = rr[(above, pc)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in pc..cols {
                    let v = &rr[(above, j)] - &(&factor * &rr[(ri, j)]);
                    rr[(above, j)] = v;
                }
            }
        }
        (rr, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical nullspace basis: one vector per free column of the RREF,
    /// free columns in ascending order, free coordinate set to 1.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (rr, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for c in 0..self.cols {
            if piv_iter.peek() == Some(&c) {
                piv_iter.next();
            } else {
                free_cols.push(c);
            }
        }
        for f in free_cols {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -rr[(ri, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b`; `None` when inconsistent. Free variables are
    /// set to zero, so the solution is canonical.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        LinSolver::new(self).solve(b)
    }

    /// Determinant of a square matrix (rational Gaussian elimination).
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<Rat>> = self.rows_iter().map(<[Rat]>::to_vec).collect();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap(c, p);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].recip();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] * &inv;
                for j in c..n {
                    let v = &m[i][j] - &(&factor * &m[c][j]);
                    m[i][j] = v;
                }
            }
        }
        det
    }

    /// Exact inverse; `None` for singular input.
    pub fn inverse(&self) -> Option<RatMat> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let aug = self.hcat(&RatMat::identity(n));
        let (rr, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rr[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Leading principal minors `det(A[..k, ..k])` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<Rat> {
        assert!(self.is_square());
        (1..=self.rows)
            .map(|k| {
                let mut sub = RatMat::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        sub[(i, j)] = self[(i, j)].clone();
                    }
                }
                sub.det()
            })
            .collect()
    }
}

impl core::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Prepared solver for repeated `A x = b` queries against a fixed `A`.
///
/// Stores the RREF of `A` and the row transformation that produced it, so
/// each query costs one matrix-vector product plus a consistency scan.
pub struct LinSolver {
    cols: usize,
    trans: RatMat,
    pivots: Vec<usize>,
}

impl LinSolver {
    pub fn new(a: &RatMat) -> Self {
        let aug = a.hcat(&RatMat::identity(a.nrows()));
        let (rr, aug_pivots) = aug.rref();
        // Pivots beyond a's columns belong to the identity block; they mark
        // rows whose a-part was eliminated to zero.
        let pivots: Vec<usize> = aug_pivots.into_iter().filter(|&c| c < a.ncols()).collect();
        let mut trans = RatMat::zeros(a.nrows(), a.nrows());
        for i in 0..a.nrows() {
            for j in 0..a.nrows() {
                trans[(i, j)] = rr[(i, a.ncols() + j)].clone();
            }
        }
        LinSolver { cols: a.ncols(), trans, pivots }
    }

    /// Solves against the prepared matrix; free variables pinned to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let tb = self.trans.mul_vec(b);
        // Rows beyond the pivot count must have zero right-hand side.
        for (i, v) in tb.iter().enumerate() {
            if i >= self.pivots.len() && !v.is_zero() {
                return None;
            }
        }
        // With free variables pinned to zero, each reduced pivot row reads
        // x[pivot] = transformed rhs of that row.
        let mut x = vec![Rat::zero(); self.cols];
        for (ri, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[ri].clone();
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Number-theoretic helpers for turning rationals into integer rows.
pub fn clear_denominators(row: &[Rat]) -> Vec<Int> {
    let lcm = row.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry. Used to normalize printed bases.
pub fn primitive_integer_form(v: &[Rat]) -> Vec<Int> {
    let ints = clear_denominators(v);
    let gcd = ints.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    let mut out: Vec<Int> = ints.into_iter().map(|x| x / &gcd).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn m(rows: &[&[i64]]) -> RatMat {
        RatMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rint(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = RatMat::identity(3);
        let (rr, pivots) = id.rref();
        assert_eq!(rr, id);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_known_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (rr, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rr.row(0), &[rint(1), rint(0), rint(-1)][..]);
        assert_eq!(rr.row(1), &[rint(0), rint(1), rint(2)][..]);
        assert!(rr.row(2).iter().all(Rat::is_zero));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let prod = a.mul_vec(v);
            assert!(prod.iter().all(Rat::is_zero));
        }
        // Canonical: free coordinates carry 1 in ascending order.
        assert_eq!(ns[0][1], rint(1));
        assert_eq!(ns[1][2], rint(1));
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[rint(3), rint(2)]).unwrap();
        assert_eq!(x, vec![rint(1), rint(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMat::identity(2));
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[rint(1), rint(0)]).is_none());
    }

    #[test]
    fn det_and_minors() {
        let a = m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(a.det(), rint(4));
        assert_eq!(a.leading_principal_minors(), vec![rint(2), rint(3), rint(4)]);
        let half = RatMat::from_rows(vec![vec![rat(1, 2)]]);
        assert_eq!(half.det(), rat(1, 2));
    }

    #[test]
    fn lin_solver_matches_solve() {
        let a = m(&[&[1, 2, 0], &[0, 0, 1]]);
        let solver = LinSolver::new(&a);
        let b = vec![rint(4), rint(5)];
        let x = solver.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solver.solve(&[rint(0), rint(0)]).is_some());
        let a2 = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let solver2 = LinSolver::new(&a2);
        assert!(solver2.solve(&[rint(1), rint(1), rint(3)]).is_none());
        assert_eq!(
            solver2.solve(&[rint(1), rint(2), rint(3)]).unwrap(),
            vec![rint(1), rint(2)]
        );
    }

    #[test]
    fn rational_entries_eliminate_exactly() {
        let a = RatMat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 6)],
        ]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Rat::is_zero));
    }
}
