//! Stratified nilpotent Lie algebras over exact rationals.
//!
//! An algebra is given by a basis adapted to the strata (every basis vector
//! lies in exactly one stratum), sparse structure constants and the stratum
//! partition. Construction normalizes brackets to `i < j` and rejects
//! structurally malformed input; mathematical invalidity (Jacobi failures,
//! bad gradings, non-stratifications) is reported by [`validate`] instead.
//!
//! [`validate`]: StratifiedAlgebra::validate

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::subspace::Subspace;
use crate::Rat;

/// Structural errors: the input is not a well-formed table at all.
///
/// Distinct from mathematical invalidity, which [`StratifiedAlgebra::validate`]
/// reports without failing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    IndexOutOfRange { index: usize, dim: usize },
    SelfBracketNonzero { index: usize },
    InconsistentPair { i: usize, j: usize },
    StrataNotAPartition { index: usize },
    EmptyStratum { stratum: usize },
}

impl core::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AlgebraError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            AlgebraError::SelfBracketNonzero { index } => {
                write!(f, "nonzero bracket [e_{index}, e_{index}] specified")
            }
            AlgebraError::InconsistentPair { i, j } => {
                write!(f, "brackets [e_{i},e_{j}] and [e_{j},e_{i}] are not antisymmetric")
            }
            AlgebraError::StrataNotAPartition { index } => {
                write!(f, "basis index {index} is not in exactly one stratum")
            }
            AlgebraError::EmptyStratum { stratum } => {
                write!(f, "stratum {stratum} is empty")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// One violated identity, naming the witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Jacobi sum on basis triple `(i, j, k)` is the stated nonzero vector.
    Jacobi { i: usize, j: usize, k: usize, defect: Vec<Rat> },
    /// `[e_i, e_j]` leaves the stratum `V_{w(i)+w(j)}` it must land in.
    Grading { i: usize, j: usize },
    /// `V_j` differs from `[V_1, V_{j-1}]` (dimensions attached).
    Stratification { stratum: usize, expected_dim: usize, got_dim: usize },
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::Jacobi { i, j, k, .. } => {
                write!(f, "Jacobi identity fails on basis triple ({i}, {j}, {k})")
            }
            Violation::Grading { i, j } => {
                write!(f, "bracket [e_{i}, e_{j}] escapes its target stratum")
            }
            Violation::Stratification { stratum, expected_dim, got_dim } => write!(
                f,
                "V_{stratum} != [V_1, V_{}]: stratum has dim {expected_dim}, bracket span has dim {got_dim}",
                stratum - 1
            ),
        }
    }
}

/// Result of [`StratifiedAlgebra::validate`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A stratified nilpotent Lie algebra with rational structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// Brackets stored once per unordered pair, keys `(i, j)` with `i < j`.
    /// Values are sparse sorted `(k, coefficient)` lists.
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    /// Stratum index sets, stratum 1 first.
    strata: Vec<Vec<usize>>,
    /// `weight[i]` = 1-based stratum number of basis vector `i`.
    weights: Vec<usize>,
}

impl StratifiedAlgebra {
    /// Builds an algebra from named basis vectors, a stratum partition and a
    /// sparse bracket list. Entries may be given in either order; giving
    /// both `[i,j]` and `[j,i]` inconsistently is a structural error.
    pub fn new(
        basis_names: Vec<String>,
        strata: Vec<Vec<usize>>,
        entries: Vec<((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();

        let mut weights = vec![usize::MAX; dim];
        for (si, stratum) in strata.iter().enumerate() {
            if stratum.is_empty() {
                return Err(AlgebraError::EmptyStratum { stratum: si + 1 });
            }
            for &idx in stratum {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim });
                }
                if weights[idx] != usize::MAX {
                    return Err(AlgebraError::StrataNotAPartition { index: idx });
                }
                weights[idx] = si + 1;
            }
        }
        if let Some(missing) = weights.iter().position(|&w| w == usize::MAX) {
            return Err(AlgebraError::StrataNotAPartition { index: missing });
        }

        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>> = BTreeMap::new();
        for ((i, j), terms) in entries {
            if i >= dim || j >= dim {
                return Err(AlgebraError::IndexOutOfRange { index: i.max(j), dim });
            }
            let mut combined: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: k, dim });
                }
                *combined.entry(k).or_insert_with(Rat::zero) += c;
            }
            let mut value: Vec<(usize, Rat)> = combined
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if i == j {
                if !value.is_empty() {
                    return Err(AlgebraError::SelfBracketNonzero { index: i });
                }
                continue;
            }
            let key = if i < j { (i, j) } else { (j, i) };
            if i > j {
                for (_, c) in &mut value {
                    *c = -c.clone();
                }
            }
            match brackets.get(&key) {
                None => {
                    if !value.is_empty() {
                        brackets.insert(key, value);
                    }
                }
                Some(existing) => {
                    if *existing != value {
                        return Err(AlgebraError::InconsistentPair { i: key.0, j: key.1 });
                    }
                }
            }
        }

        Ok(StratifiedAlgebra { dim, basis_names, brackets, strata, weights })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn step(&self) -> usize {
        self.strata.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn name_of(&self, idx: usize) -> &str {
        &self.basis_names[idx]
    }

    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    pub fn stratum_indices(&self, j: usize) -> &[usize] {
        &self.strata[j - 1]
    }

    pub fn stratum_dims(&self) -> Vec<usize> {
        self.strata.iter().map(Vec::len).collect()
    }

    /// 1-based stratum number (weight) of basis vector `i`.
    pub fn weight(&self, i: usize) -> usize {
        self.weights[i]
    }

    pub fn stratum_subspace(&self, j: usize) -> Subspace {
        Subspace::coordinate(self.dim, &self.strata[j - 1])
    }

    /// Sparse bracket of two basis vectors, antisymmetry applied.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        use core::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|terms| terms.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Iterator over the stored `i < j` bracket entries.
    pub fn bracket_entries(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rat)])> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    /// Bilinear extension of the structure constants to coefficient vectors.
    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim, "bracket_vec: left length mismatch");
        assert_eq!(y.len(), self.dim, "bracket_vec: right length mismatch");
        let mut out = vec![Rat::zero(); self.dim];
        for (&(i, j), terms) in &self.brackets {
            // coefficient of [e_i, e_j] in [x, y] is x_i y_j - x_j y_i
            let a = &x[i] * &y[j];
            let b = &x[j] * &y[i];
            let coeff = a - b;
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += c * &coeff;
            }
        }
        out
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...` until stabilization.
    ///
    /// For a valid Carnot algebra the last term is the zero subspace,
    /// reached after exactly `step` brackets.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let mut span: Vec<Vec<Rat>> = Vec::new();
            for i in 0..self.dim {
                for b in last.basis_vectors() {
                    let mut e_i = vec![Rat::zero(); self.dim];
                    e_i[i] = num_traits::One::one();
                    span.push(self.bracket_vec(&e_i, &b));
                }
            }
            let next = Subspace::from_vectors(self.dim, &span);
            let stalled = next.dim() == last.dim();
            series.push(next);
            if stalled {
                break;
            }
        }
        series
    }

    /// Derives the strata from a choice of `V_1` by `V_{j+1} := [V_1, V_j]`.
    ///
    /// Succeeds iff the `V_j` are independent and fill the whole algebra.
    pub fn infer_stratification(&self, v1: &Subspace) -> Result<Vec<Subspace>, StratifyError> {
        assert_eq!(v1.ambient_dim(), self.dim);
        let mut layers = vec![v1.clone()];
        loop {
            let last = layers.last().unwrap();
            if last.is_zero() {
                layers.pop();
                break;
            }
            if layers.len() > self.dim {
                return Err(StratifyError::NotNilpotent);
            }
            let mut span: Vec<Vec<Rat>> = Vec::new();
            for a in v1.basis_vectors() {
                for b in last.basis_vectors() {
                    span.push(self.bracket_vec(&a, &b));
                }
            }
            layers.push(Subspace::from_vectors(self.dim, &span));
        }
        let total: usize = layers.iter().map(Subspace::dim).sum();
        let sum = layers
            .iter()
            .fold(Subspace::zero(self.dim), |acc, l| acc.sum(l));
        if sum.dim() < total {
            return Err(StratifyError::NotDirectSum);
        }
        if sum.dim() < self.dim {
            return Err(StratifyError::NotBracketGenerating { reached_dim: sum.dim() });
        }
        Ok(layers)
    }

    /// Checks every algebra invariant; returns the list of violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        // Grading: [V_a, V_b] ⊆ V_{a+b}, with V_m = 0 beyond the step.
        // Nilpotency (brackets of length > step vanish) is this same check.
        let s = self.step();
        for (i, j, terms) in self.bracket_entries() {
            let target = self.weights[i] + self.weights[j];
            let escapes = terms
                .iter()
                .any(|(k, _)| target > s || self.weights[*k] != target);
            if escapes {
                violations.push(Violation::Grading { i, j });
            }
        }

        // Jacobi on all basis triples i < j < k.
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let mut defect = self.bracket_sparse_vec(&self.basis_bracket(i, j), k);
                    let t2 = self.bracket_sparse_vec(&self.basis_bracket(j, k), i);
                    let t3 = self.bracket_sparse_vec(&self.basis_bracket(k, i), j);
                    for idx in 0..self.dim {
                        defect[idx] += &t2[idx] + &t3[idx];
                    }
                    if defect.iter().any(|c| !c.is_zero()) {
                        violations.push(Violation::Jacobi { i, j, k, defect });
                    }
                }
            }
        }

        // Stratification: V_{j+1} = [V_1, V_j] exactly.
        for j in 2..=s {
            let prev = self.stratum_subspace(j - 1);
            let mut span: Vec<Vec<Rat>> = Vec::new();
            for &i in self.stratum_indices(1) {
                let mut e_i = vec![Rat::zero(); self.dim];
                e_i[i] = num_traits::One::one();
                for b in prev.basis_vectors() {
                    span.push(self.bracket_vec(&e_i, &b));
                }
            }
            let generated = Subspace::from_vectors(self.dim, &span);
            let declared = self.stratum_subspace(j);
            if generated != declared {
                violations.push(Violation::Stratification {
                    stratum: j,
                    expected_dim: declared.dim(),
                    got_dim: generated.dim(),
                });
            }
        }

        ValidationReport { violations }
    }

    /// `[v, e_k]` for a sparse vector `v`, returned dense.
    fn bracket_sparse_vec(&self, v: &[(usize, Rat)], k: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, c) in v {
            for (t, d) in self.basis_bracket(*i, k) {
                out[t] += c * &d;
            }
        }
        out
    }

    /// Standard basis vector as a dense coefficient vector.
    pub fn basis_vec(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = num_traits::One::one();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratifyError {
    /// The iterated brackets of `V_1` span a proper subalgebra.
    NotBracketGenerating { reached_dim: usize },
    /// The layers `[V_1, V_j]` overlap.
    NotDirectSum,
    /// The layer series failed to terminate (malformed table).
    NotNilpotent,
}

impl core::fmt::Display for StratifyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            StratifyError::NotBracketGenerating { reached_dim } => {
                write!(f, "V_1 is not bracket-generating (reaches dimension {reached_dim})")
            }
            StratifyError::NotDirectSum => write!(f, "layers [V_1, V_j] are not a direct sum"),
            StratifyError::NotNilpotent => write!(f, "layer series does not terminate"),
        }
    }
}

impl core::error::Error for StratifyError {}

/// Convenience used by tests and the corpus: builds names `e1..eN`.
pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::{rat, rint};

    #[test]
    fn heisenberg_validates_clean() {
        let alg = corpus::heisenberg();
        assert!(alg.validate().is_valid());
        assert_eq!(alg.stratum_dims(), vec![2, 1]);
    }

    #[test]
    fn abelian_any_dim_single_stratum_validates() {
        for n in 1..=4 {
            let alg = corpus::abelian(n);
            assert!(alg.validate().is_valid());
        }
    }

    #[test]
    fn wrong_strata_split_is_reported() {
        // Heisenberg with strata {X}, {Y, Z}: V_2 != [V_1, V_1].
        let alg = StratifiedAlgebra::new(
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![vec![0], vec![1, 2]],
            vec![((0, 1), vec![(2, rint(1))])],
        )
        .unwrap();
        let report = alg.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Stratification { stratum: 2, .. })));
    }

    #[test]
    fn jacobi_violation_names_the_triple() {
        // Filiform L_5 with a spurious [e2, e4] = e5: Jacobi fails on (0,1,2).
        let alg = StratifiedAlgebra::new(
            default_names(5),
            vec![vec![0, 1], vec![2], vec![3], vec![4]],
            vec![
                ((0, 1), vec![(2, rint(1))]),
                ((0, 2), vec![(3, rint(1))]),
                ((0, 3), vec![(4, rint(1))]),
                ((1, 3), vec![(4, rint(1))]),
            ],
        )
        .unwrap();
        let report = alg.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Jacobi { i: 0, j: 1, k: 2, .. })));
    }

    #[test]
    fn structural_errors_are_not_validation_reports() {
        let err = StratifiedAlgebra::new(
            default_names(2),
            vec![vec![0, 1]],
            vec![((0, 5), vec![(1, rint(1))])],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::IndexOutOfRange { index: 5, dim: 2 });

        let err = StratifiedAlgebra::new(
            default_names(3),
            vec![vec![0, 1], vec![2]],
            vec![
                ((0, 1), vec![(2, rint(1))]),
                ((1, 0), vec![(2, rint(1))]),
            ],
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::InconsistentPair { i: 0, j: 1 });
    }

    #[test]
    fn bracket_vec_matches_hand_expansion() {
        let alg = corpus::heisenberg();
        let x = alg.basis_vec(0);
        let y = alg.basis_vec(1);
        assert_eq!(alg.bracket_vec(&x, &y), alg.basis_vec(2));
        // [X+Y, Y] = [X, Y] = Z by bilinearity.
        let xy: Vec<Rat> = vec![rint(1), rint(1), rint(0)];
        assert_eq!(alg.bracket_vec(&xy, &y), alg.basis_vec(2));
        // [x, x] = 0.
        let v = vec![rat(1, 2), rat(-2, 3), rat(7, 5)];
        assert!(alg.bracket_vec(&v, &v).iter().all(Rat::is_zero));
    }

    #[test]
    fn lower_central_series_dims() {
        let heis = corpus::heisenberg();
        let dims: Vec<usize> = heis.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![3, 1, 0]);

        let ab = corpus::abelian(4);
        let dims: Vec<usize> = ab.lower_central_series().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![4, 0]);
    }

    #[test]
    fn infer_stratification_recovers_strata() {
        let alg = corpus::heisenberg();
        let v1 = alg.stratum_subspace(1);
        let layers = alg.infer_stratification(&v1).unwrap();
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0], alg.stratum_subspace(1));
        assert_eq!(layers[1], alg.stratum_subspace(2));

        // V_1 = span(X) does not generate.
        let bad = Subspace::coordinate(3, &[0]);
        assert_eq!(
            alg.infer_stratification(&bad),
            Err(StratifyError::NotBracketGenerating { reached_dim: 1 })
        );

        // Abelian: V_1 = g gives a single stratum.
        let ab = corpus::abelian(3);
        let layers = ab.infer_stratification(&Subspace::full(3)).unwrap();
        assert_eq!(layers.len(), 1);
    }
}
