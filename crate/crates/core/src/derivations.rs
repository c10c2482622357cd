//! Derivations of a stratified algebra and the isometric part `g_0`.
//!
//! Everything here is an exact nullspace computation: the Leibniz identity
//! `u[X,Y] = [u(X),Y] + [X,u(Y)]` on basis pairs `i < j` is a homogeneous
//! linear system in the matrix entries of `u`, optionally restricted to
//! block-diagonal (strata-preserving) unknowns and intersected with the
//! skew-symmetry condition `u|V1^T G + G u|V1 = 0` for a Gram matrix `G`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::StratifiedAlgebra;
use crate::matrix::{LinSolver, RatMat};
use crate::Rat;

/// A degree-`k` graded linear map, stored blockwise by source stratum.
///
/// `blocks[j-1]` sends coordinates of `V_j` to coordinates of the target
/// component of degree `j + k` counted in the strata numbering. For the
/// degree-0 maps of this module the target of block `j` is `V_j` itself;
/// the prolongation tower reuses the type with coefficient-space targets
/// (see `prolongation`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    degree: usize,
    blocks: Vec<RatMat>,
}

impl GradedMap {
    pub fn new(degree: usize, blocks: Vec<RatMat>) -> Self {
        GradedMap { degree, blocks }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[RatMat] {
        &self.blocks
    }

    pub fn block(&self, source_stratum: usize) -> &RatMat {
        &self.blocks[source_stratum - 1]
    }

    /// Assembles a degree-0 map into a full endomorphism matrix.
    pub fn to_endomorphism(&self, alg: &StratifiedAlgebra) -> RatMat {
        assert_eq!(self.degree, 0, "only degree-0 maps are endomorphisms");
        let n = alg.dim();
        let mut m = RatMat::zeros(n, n);
        for j in 1..=alg.step() {
            let idx = alg.stratum_indices(j);
            let b = self.block(j);
            for (lp, &gp) in idx.iter().enumerate() {
                for (lq, &gq) in idx.iter().enumerate() {
                    m[(gp, gq)] = b[(lp, lq)].clone();
                }
            }
        }
        m
    }

    /// Splits an endomorphism into degree-0 blocks; `None` if any entry
    /// lies outside the block diagonal.
    pub fn from_endomorphism(alg: &StratifiedAlgebra, m: &RatMat) -> Option<Self> {
        let n = alg.dim();
        assert_eq!((m.nrows(), m.ncols()), (n, n));
        for p in 0..n {
            for q in 0..n {
                if alg.weight(p) != alg.weight(q) && !m[(p, q)].is_zero() {
                    return None;
                }
            }
        }
        let blocks = (1..=alg.step())
            .map(|j| {
                let idx = alg.stratum_indices(j);
                let mut b = RatMat::zeros(idx.len(), idx.len());
                for (lp, &gp) in idx.iter().enumerate() {
                    for (lq, &gq) in idx.iter().enumerate() {
                        b[(lp, lq)] = m[(gp, gq)].clone();
                    }
                }
                b
            })
            .collect();
        Some(GradedMap { degree: 0, blocks })
    }

    /// The block on the first stratum.
    pub fn v1_block(&self) -> &RatMat {
        &self.blocks[0]
    }
}

/// First basis pair on which the Leibniz identity fails, with the defect.
pub fn leibniz_defect(alg: &StratifiedAlgebra, endo: &RatMat) -> Option<(usize, usize, Vec<Rat>)> {
    let n = alg.dim();
    for i in 0..n {
        for j in i + 1..n {
            let ei = alg.basis_vec(i);
            let ej = alg.basis_vec(j);
            let lhs = endo.mul_vec(&alg.bracket_vec(&ei, &ej));
            let uei = endo.mul_vec(&ei);
            let uej = endo.mul_vec(&ej);
            let rhs1 = alg.bracket_vec(&uei, &ej);
            let rhs2 = alg.bracket_vec(&ei, &uej);
            let defect: Vec<Rat> = (0..n)
                .map(|k| &lhs[k] - &rhs1[k] - &rhs2[k])
                .collect();
            if defect.iter().any(|c| !c.is_zero()) {
                return Some((i, j, defect));
            }
        }
    }
    None
}

/// Assembles the Leibniz system over the given unknown entry positions
/// `(p, q)` (meaning `u(e_q) = sum_p u[p][q] e_p`, all other entries zero).
fn leibniz_rows(alg: &StratifiedAlgebra, unknowns: &[(usize, usize)]) -> RatMat {
    let n = alg.dim();
    let pos: BTreeMap<(usize, usize), usize> = unknowns
        .iter()
        .copied()
        .enumerate()
        .map(|(idx, pq)| (pq, idx))
        .collect();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut row_buf: Vec<Vec<Rat>> = vec![vec![Rat::zero(); unknowns.len()]; n];
    for i in 0..n {
        for j in i + 1..n {
            for buf in &mut row_buf {
                for c in buf.iter_mut() {
                    *c = Rat::zero();
                }
            }
            let mut touched = vec![false; n];
            // u([e_i, e_j]) contributes +c_ij^q to unknown (k, q), row k.
            for (q, c) in alg.basis_bracket(i, j) {
                for k in 0..n {
                    if let Some(&col) = pos.get(&(k, q)) {
                        row_buf[k][col] += &c;
                        touched[k] = true;
                    }
                }
            }
            // -[u(e_i), e_j] hits unknown (p, i); -[e_i, u(e_j)] hits (p, j).
            for p in 0..n {
                if let Some(&col) = pos.get(&(p, i)) {
                    for (k, c) in alg.basis_bracket(p, j) {
                        row_buf[k][col] -= &c;
                        touched[k] = true;
                    }
                }
                if let Some(&col) = pos.get(&(p, j)) {
                    for (k, c) in alg.basis_bracket(i, p) {
                        row_buf[k][col] -= &c;
                        touched[k] = true;
                    }
                }
            }
            for (k, buf) in row_buf.iter().enumerate() {
                if touched[k] && buf.iter().any(|c| !c.is_zero()) {
                    rows.push(buf.clone());
                }
            }
        }
    }
    if rows.is_empty() {
        RatMat::zeros(0, unknowns.len())
    } else {
        RatMat::from_rows(rows)
    }
}

fn all_entries(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            v.push((p, q));
        }
    }
    v
}

fn block_diagonal_entries(alg: &StratifiedAlgebra) -> Vec<(usize, usize)> {
    let n = alg.dim();
    let mut v = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if alg.weight(p) == alg.weight(q) {
                v.push((p, q));
            }
        }
    }
    v
}

fn solution_to_endo(n: usize, unknowns: &[(usize, usize)], sol: &[Rat]) -> RatMat {
    let mut m = RatMat::zeros(n, n);
    for (idx, &(p, q)) in unknowns.iter().enumerate() {
        m[(p, q)] = sol[idx].clone();
    }
    m
}

/// Basis of the full derivation algebra `Der(g)`, as endomorphisms.
pub fn derivation_algebra(alg: &StratifiedAlgebra) -> Vec<RatMat> {
    let unknowns = all_entries(alg.dim());
    leibniz_rows(alg, &unknowns)
        .nullspace()
        .iter()
        .map(|sol| solution_to_endo(alg.dim(), &unknowns, sol))
        .collect()
}

/// Basis of the strata-preserving derivations `Der_0(g)`.
pub fn strata_derivations(alg: &StratifiedAlgebra) -> Vec<GradedMap> {
    let unknowns = block_diagonal_entries(alg);
    leibniz_rows(alg, &unknowns)
        .nullspace()
        .iter()
        .map(|sol| {
            let endo = solution_to_endo(alg.dim(), &unknowns, sol);
            GradedMap::from_endomorphism(alg, &endo).expect("solution is block-diagonal")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GramError {
    SizeMismatch { expected: usize, got: usize },
    NotSymmetric,
    NotPositiveDefinite { minor: usize },
}

impl core::fmt::Display for GramError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GramError::SizeMismatch { expected, got } => {
                write!(f, "Gram matrix is {got}x{got}, expected {expected}x{expected}")
            }
            GramError::NotSymmetric => write!(f, "Gram matrix is not symmetric"),
            GramError::NotPositiveDefinite { minor } => {
                write!(f, "Gram matrix is not positive definite (leading minor {minor} <= 0)")
            }
        }
    }
}

impl core::error::Error for GramError {}

/// Exact positive-definiteness test via leading principal minors.
pub fn check_gram(gram: &RatMat, v1_dim: usize) -> Result<(), GramError> {
    if gram.nrows() != v1_dim || gram.ncols() != v1_dim {
        return Err(GramError::SizeMismatch { expected: v1_dim, got: gram.nrows() });
    }
    if !gram.is_symmetric() {
        return Err(GramError::NotSymmetric);
    }
    for (k, minor) in gram.leading_principal_minors().iter().enumerate() {
        if *minor <= Rat::zero() {
            return Err(GramError::NotPositiveDefinite { minor: k + 1 });
        }
    }
    Ok(())
}

/// Basis of `g_0`: strata-preserving derivations whose restriction to `V_1`
/// is skew with respect to `gram`. Closure under commutator is verified.
pub fn isometric_part(alg: &StratifiedAlgebra, gram: &RatMat) -> Result<Vec<GradedMap>, GramError> {
    let v1 = alg.stratum_indices(1);
    check_gram(gram, v1.len())?;

    let unknowns = block_diagonal_entries(alg);
    let pos: BTreeMap<(usize, usize), usize> = unknowns
        .iter()
        .copied()
        .enumerate()
        .map(|(idx, pq)| (pq, idx))
        .collect();

    let leibniz = leibniz_rows(alg, &unknowns);
    // Skew rows: (B^T G + G B)[a][b] = 0 for a <= b, with B = u|V1.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let n1 = v1.len();
    for a in 0..n1 {
        for b in a..n1 {
            let mut row = vec![Rat::zero(); unknowns.len()];
            for c in 0..n1 {
                let col = pos[&(v1[c], v1[a])];
                row[col] += &gram[(c, b)];
                let col = pos[&(v1[c], v1[b])];
                row[col] += &gram[(a, c)];
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        leibniz
    } else {
        leibniz.vcat(&RatMat::from_rows(rows))
    };

    let basis: Vec<GradedMap> = system
        .nullspace()
        .iter()
        .map(|sol| {
            let endo = solution_to_endo(alg.dim(), &unknowns, sol);
            GradedMap::from_endomorphism(alg, &endo).expect("solution is block-diagonal")
        })
        .collect();

    // Postcondition: g_0 is a Lie subalgebra.
    let endos: Vec<RatMat> = basis.iter().map(|g| g.to_endomorphism(alg)).collect();
    assert!(
        closed_under_commutator(&endos),
        "g_0 nullspace is not bracket-closed; elimination is broken"
    );
    Ok(basis)
}

/// Exact check that the span of the given endomorphisms is closed under
/// commutators.
pub fn closed_under_commutator(endos: &[RatMat]) -> bool {
    if endos.is_empty() {
        return true;
    }
    let span = RatMat::from_cols(endos.iter().map(RatMat::flatten).collect());
    let solver = LinSolver::new(&span);
    for (a, ea) in endos.iter().enumerate() {
        for eb in &endos[a + 1..] {
            if solver.solve(&ea.commutator(eb).flatten()).is_none() {
                return false;
            }
        }
    }
    true
}

/// Trace of the `V_1` block of a degree-0 map.
pub fn v1_trace(map: &GradedMap) -> Rat {
    let b = map.v1_block();
    (0..b.nrows()).fold(Rat::zero(), |acc, i| acc + &b[(i, i)])
}

/// The identity Gram matrix on `V_1`.
pub fn identity_gram(alg: &StratifiedAlgebra) -> RatMat {
    RatMat::identity(alg.stratum_indices(1).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::subspace::Subspace;
    use crate::{rat, rint};

    /// Independent oracle: textbook Gauss-Jordan rank over a naively
    /// assembled system (all ordered pairs, all n^2 unknowns, restrictions
    /// as explicit extra rows). Shares no code with the production path.
    fn oracle_nullity(
        alg: &StratifiedAlgebra,
        block_diag: bool,
        skew_gram: Option<&RatMat>,
    ) -> usize {
        let n = alg.dim();
        let ncols = n * n;
        let col = |p: usize, q: usize| p * n + q;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![Rat::zero(); ncols];
                    for (q, c) in alg.basis_bracket(i, j) {
                        row[col(k, q)] += &c;
                    }
                    for p in 0..n {
                        for (t, c) in alg.basis_bracket(p, j) {
                            if t == k {
                                row[col(p, i)] -= &c;
                            }
                        }
                        for (t, c) in alg.basis_bracket(i, p) {
                            if t == k {
                                row[col(p, j)] -= &c;
                            }
                        }
                    }
                    rows.push(row);
                }
            }
        }
        if block_diag {
            for p in 0..n {
                for q in 0..n {
                    if alg.weight(p) != alg.weight(q) {
                        let mut row = vec![Rat::zero(); ncols];
                        row[col(p, q)] = rint(1);
                        rows.push(row);
                    }
                }
            }
        }
        if let Some(g) = skew_gram {
            let v1 = alg.stratum_indices(1);
            for a in 0..v1.len() {
                for b in 0..v1.len() {
                    let mut row = vec![Rat::zero(); ncols];
                    for c in 0..v1.len() {
                        row[col(v1[c], v1[a])] += &g[(c, b)];
                        row[col(v1[c], v1[b])] += &g[(a, c)];
                    }
                    rows.push(row);
                }
            }
        }
        ncols - naive_rank(rows)
    }

    fn naive_rank(mut rows: Vec<Vec<Rat>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][c].clone().recip();
            for r in 0..rows.len() {
                if r != rank && !rows[r][c].is_zero() {
                    let f = &rows[r][c] * &inv;
                    for cc in 0..cols {
                        let v = &rows[r][cc] - &(&f * &rows[rank][cc]);
                        rows[r][cc] = v;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    #[test]
    fn abelian_derivations_are_all_endomorphisms() {
        let alg = corpus::abelian(3);
        assert_eq!(derivation_algebra(&alg).len(), 9);
        assert_eq!(strata_derivations(&alg).len(), 9);
        let g0 = isometric_part(&alg, &identity_gram(&alg)).unwrap();
        assert_eq!(g0.len(), 3); // o(3)
    }

    #[test]
    fn heisenberg_derivation_dimensions() {
        let alg = corpus::heisenberg();
        // Frozen from the oracle: dim Der = 6, dim Der_0 = 4, dim g_0 = 1.
        assert_eq!(oracle_nullity(&alg, false, None), 6);
        assert_eq!(derivation_algebra(&alg).len(), 6);

        assert_eq!(oracle_nullity(&alg, true, None), 4);
        let der0 = strata_derivations(&alg);
        assert_eq!(der0.len(), 4);
        // The V_2 block is forced to be the trace of the V_1 block.
        for d in &der0 {
            assert_eq!(d.block(2)[(0, 0)], v1_trace(d));
        }

        let id = identity_gram(&alg);
        assert_eq!(oracle_nullity(&alg, true, Some(&id)), 1);
        assert_eq!(isometric_part(&alg, &id).unwrap().len(), 1);

        // Skew w.r.t. diag(1,4) is still one-dimensional.
        let mut aniso = RatMat::identity(2);
        aniso[(1, 1)] = rint(4);
        assert_eq!(oracle_nullity(&alg, true, Some(&aniso)), 1);
        assert_eq!(isometric_part(&alg, &aniso).unwrap().len(), 1);
    }

    #[test]
    fn free_nilpotent_derivations_extend_gl_v1() {
        let alg = crate::hall::free_nilpotent(2, 3).unwrap();
        let der = derivation_algebra(&alg);
        assert!(der.len() >= 4, "dim Der >= dim gl(V_1)");
        assert_eq!(der.len(), oracle_nullity(&alg, false, None));
        // Every degree-0 map of V_1 extends: Der_0 = gl(2).
        assert_eq!(strata_derivations(&alg).len(), 4);
    }

    #[test]
    fn every_returned_map_satisfies_leibniz() {
        for (name, alg) in corpus::bundled() {
            for endo in derivation_algebra(&alg) {
                assert!(leibniz_defect(&alg, &endo).is_none(), "{name}: Der basis");
            }
            for d in strata_derivations(&alg) {
                let endo = d.to_endomorphism(&alg);
                assert!(leibniz_defect(&alg, &endo).is_none(), "{name}: Der_0 basis");
            }
        }
    }

    #[test]
    fn spans_nest_and_close() {
        for (name, alg) in corpus::bundled() {
            let der: Vec<RatMat> = derivation_algebra(&alg);
            let der0: Vec<RatMat> = strata_derivations(&alg)
                .iter()
                .map(|d| d.to_endomorphism(&alg))
                .collect();
            let g0: Vec<RatMat> = isometric_part(&alg, &identity_gram(&alg))
                .unwrap()
                .iter()
                .map(|d| d.to_endomorphism(&alg))
                .collect();

            let nn = alg.dim() * alg.dim();
            let flat = |v: &[RatMat]| -> Subspace {
                Subspace::from_vectors(nn, &v.iter().map(RatMat::flatten).collect::<Vec<_>>())
            };
            let s_der = flat(&der);
            let s_der0 = flat(&der0);
            let s_g0 = flat(&g0);
            assert!(s_der.contains_subspace(&s_der0), "{name}: Der_0 in Der");
            assert!(s_der0.contains_subspace(&s_g0), "{name}: g_0 in Der_0");

            assert!(closed_under_commutator(&der0), "{name}: Der_0 closed");
            assert!(closed_under_commutator(&g0), "{name}: g_0 closed");
        }
    }

    #[test]
    fn g0_v1_blocks_are_skew_for_the_gram() {
        let alg = corpus::heisenberg();
        let mut gram = RatMat::identity(2);
        gram[(1, 1)] = rint(4);
        for d in isometric_part(&alg, &gram).unwrap() {
            let b = d.v1_block();
            let skew = b.transpose().mul(&gram).add(&gram.mul(b));
            assert!(skew.is_zero());
        }
    }

    #[test]
    fn degree0_maps_are_determined_by_v1_block() {
        for (name, alg) in corpus::bundled() {
            let der0 = strata_derivations(&alg);
            if der0.is_empty() {
                continue;
            }
            let v1_flat: Vec<Vec<Rat>> = der0.iter().map(|d| d.v1_block().flatten()).collect();
            let m = RatMat::from_cols(v1_flat);
            assert_eq!(m.rank(), der0.len(), "{name}: V_1 restriction is injective");
        }
    }

    #[test]
    fn bad_gram_matrices_are_rejected() {
        let alg = corpus::heisenberg();
        let mut asym = RatMat::identity(2);
        asym[(0, 1)] = rint(1);
        assert_eq!(isometric_part(&alg, &asym).unwrap_err(), GramError::NotSymmetric);

        let mut indef = RatMat::identity(2);
        indef[(1, 1)] = rint(-1);
        assert_eq!(
            isometric_part(&alg, &indef).unwrap_err(),
            GramError::NotPositiveDefinite { minor: 2 }
        );

        let wrong = RatMat::identity(3);
        assert!(matches!(
            isometric_part(&alg, &wrong).unwrap_err(),
            GramError::SizeMismatch { .. }
        ));

        // Positive semidefinite but singular.
        let mut sing = RatMat::zeros(2, 2);
        sing[(0, 0)] = rat(1, 2);
        assert_eq!(check_gram(&sing, 2), Err(GramError::NotPositiveDefinite { minor: 2 }));
    }

    #[test]
    fn artificial_split_of_abelian_fails_validation_upstream() {
        // Abelian with strata dims (1,1): V_2 = [V_1, V_1] = 0 != V_2.
        let alg = StratifiedAlgebra::new(
            crate::algebra::default_names(2),
            alloc::vec![alloc::vec![0], alloc::vec![1]],
            Vec::new(),
        )
        .unwrap();
        assert!(!alg.validate().is_valid());
    }
}
