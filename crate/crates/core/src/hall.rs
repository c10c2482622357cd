//! Free nilpotent Lie algebras in a Hall basis.
//!
//! Basic elements are generated in the classical Hall order: weight first,
//! then construction order within a weight (pairs scanned lexicographically),
//! so the element index doubles as the Hall order. A bracket `[u, v]` of
//! basic elements with `u > v` is itself basic when `u` is a generator or
//! the right factor of `u` is `<= v`; everything else is rewritten through
//! antisymmetry and Jacobi until only basic elements remain.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::StratifiedAlgebra;
use crate::{rint, Rat};

/// Default cap on the dimension of a generated free nilpotent algebra.
pub const DEFAULT_DIM_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeNilpotentError {
    /// `m = 0` or `s = 0`.
    EmptyParameters,
    /// The Hall basis exceeded the configured dimension cap.
    DimensionCapExceeded { cap: usize },
}

impl core::fmt::Display for FreeNilpotentError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FreeNilpotentError::EmptyParameters => {
                write!(f, "free nilpotent algebra needs m >= 1 generators and step s >= 1")
            }
            FreeNilpotentError::DimensionCapExceeded { cap } => {
                write!(f, "free nilpotent basis exceeds the dimension cap {cap}")
            }
        }
    }
}

impl core::error::Error for FreeNilpotentError {}

#[derive(Clone, Copy, Debug)]
enum HallNode {
    Generator,
    Bracket { left: usize, right: usize },
}

struct HallBasis {
    weights: Vec<usize>,
    nodes: Vec<HallNode>,
    step: usize,
    /// Memoized expansions of `[u, v]` with `u > v`.
    cache: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
    /// Lookup `(left, right) -> basic element index`.
    basic: BTreeMap<(usize, usize), usize>,
}

impl HallBasis {
    fn build(m: usize, s: usize, cap: usize) -> Result<Self, FreeNilpotentError> {
        let mut basis = HallBasis {
            weights: vec![1; m],
            nodes: vec![HallNode::Generator; m],
            step: s,
            cache: BTreeMap::new(),
            basic: BTreeMap::new(),
        };
        for w in 2..=s {
            let count = basis.nodes.len();
            for u in 0..count {
                for v in 0..count {
                    if basis.weights[u] + basis.weights[v] != w || u <= v {
                        continue;
                    }
                    let admissible = match basis.nodes[u] {
                        HallNode::Generator => true,
                        HallNode::Bracket { right, .. } => right <= v,
                    };
                    if !admissible {
                        continue;
                    }
                    basis.weights.push(w);
                    basis.nodes.push(HallNode::Bracket { left: u, right: v });
                    basis.basic.insert((u, v), basis.nodes.len() - 1);
                    if basis.nodes.len() > cap {
                        return Err(FreeNilpotentError::DimensionCapExceeded { cap });
                    }
                }
            }
        }
        Ok(basis)
    }

    /// `[u, v]` expanded over the basic elements.
    fn expand(&mut self, u: usize, v: usize) -> Vec<(usize, Rat)> {
        if u == v {
            return Vec::new();
        }
        if self.weights[u] + self.weights[v] > self.step {
            return Vec::new();
        }
        if u < v {
            return negate(self.expand(v, u));
        }
        if let Some(hit) = self.cache.get(&(u, v)) {
            return hit.clone();
        }
        let result = if let Some(&idx) = self.basic.get(&(u, v)) {
            vec![(idx, rint(1))]
        } else {
            // u = [a, b] with b > v: [u,v] = [[a,v],b] + [a,[b,v]].
            let HallNode::Bracket { left: a, right: b } = self.nodes[u] else {
                // A generator u > v is always admissible, handled above.
                unreachable!("non-basic bracket with generator left factor");
            };
            let av = self.expand(a, v);
            let bv = self.expand(b, v);
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (t, c) in av {
                for (k, d) in self.expand(t, b) {
                    *acc.entry(k).or_insert_with(Rat::zero) += &c * &d;
                }
            }
            for (t, c) in bv {
                for (k, d) in self.expand(a, t) {
                    *acc.entry(k).or_insert_with(Rat::zero) += &c * &d;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        self.cache.insert((u, v), result.clone());
        result
    }

    fn names(&self, m: usize) -> Vec<String> {
        (0..self.nodes.len())
            .map(|i| {
                if i < m {
                    format!("x{}", i + 1)
                } else {
                    format!("h{}", i + 1)
                }
            })
            .collect()
    }
}

fn negate(terms: Vec<(usize, Rat)>) -> Vec<(usize, Rat)> {
    terms.into_iter().map(|(k, c)| (k, -c)).collect()
}

/// The free nilpotent Lie algebra on `m` generators of step `s`, in the
/// Hall basis, with the default dimension cap.
pub fn free_nilpotent(m: usize, s: usize) -> Result<StratifiedAlgebra, FreeNilpotentError> {
    free_nilpotent_capped(m, s, DEFAULT_DIM_CAP)
}

/// Same with an explicit dimension cap.
pub fn free_nilpotent_capped(
    m: usize,
    s: usize,
    cap: usize,
) -> Result<StratifiedAlgebra, FreeNilpotentError> {
    if m == 0 || s == 0 {
        return Err(FreeNilpotentError::EmptyParameters);
    }
    let mut basis = HallBasis::build(m, s, cap)?;
    let dim = basis.nodes.len();

    let mut strata: Vec<Vec<usize>> = vec![Vec::new(); s];
    for (i, &w) in basis.weights.iter().enumerate() {
        strata[w - 1].push(i);
    }
    // One generator stops producing basic elements after weight 1; the free
    // algebra is then abelian and its genuine step is shorter than asked.
    while strata.last().is_some_and(Vec::is_empty) {
        strata.pop();
    }

    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            // expand works on u > v; [e_i, e_j] = -[e_j, e_i].
            let terms = negate(basis.expand(j, i));
            if !terms.is_empty() {
                entries.push(((i, j), terms));
            }
        }
    }

    let alg = StratifiedAlgebra::new(basis.names(m), strata, entries)
        .expect("hall basis produces a well-formed table");
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::Subspace;

    /// Witt's necklace count: dim of the weight-`n` stratum of the free Lie
    /// algebra on `m` generators. Independent oracle for the Hall dims.
    fn witt(m: usize, n: usize) -> usize {
        fn moebius(mut d: usize) -> i64 {
            let mut mu = 1i64;
            let mut p = 2;
            while p * p <= d {
                if d % p == 0 {
                    d /= p;
                    if d % p == 0 {
                        return 0;
                    }
                    mu = -mu;
                }
                p += 1;
            }
            if d > 1 {
                mu = -mu;
            }
            mu
        }
        let mut sum = 0i64;
        for d in 1..=n {
            if n % d == 0 {
                sum += moebius(d) * (m as i64).pow((n / d) as u32);
            }
        }
        (sum / n as i64) as usize
    }

    #[test]
    fn witt_oracle_sanity() {
        assert_eq!(witt(2, 1), 2);
        assert_eq!(witt(2, 2), 1);
        assert_eq!(witt(2, 3), 2);
        assert_eq!(witt(2, 4), 3);
        assert_eq!(witt(3, 2), 3);
        assert_eq!(witt(3, 3), 8);
    }

    #[test]
    fn stratum_dims_match_witt_for_small_ranks() {
        for m in 1..=3 {
            for s in 1..=4 {
                let alg = free_nilpotent(m, s).unwrap();
                let mut expected: Vec<usize> = (1..=s).map(|n| witt(m, n)).collect();
                while expected.last() == Some(&0) {
                    expected.pop();
                }
                assert_eq!(alg.stratum_dims(), expected, "m={m} s={s}");
                assert!(alg.validate().is_valid(), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn rank2_step2_is_heisenberg_shaped() {
        let alg = free_nilpotent(2, 2).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.stratum_dims(), vec![2, 1]);
        // The only bracket is [x1, x2] = -h3 in the Hall convention;
        // x1 -> Y, x2 -> X, h3 -> Z is an isomorphism with Heisenberg.
        let b = alg.basis_bracket(0, 1);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].0, 2);
        assert_eq!(b[0].1, crate::rint(-1));
    }

    #[test]
    fn step1_is_abelian() {
        let alg = free_nilpotent(3, 1).unwrap();
        assert_eq!(alg.dim(), 3);
        assert!(alg.bracket_entries().next().is_none());
    }

    #[test]
    fn free23_lower_central_series() {
        let alg = free_nilpotent(2, 3).unwrap();
        assert_eq!(alg.dim(), 5);
        assert_eq!(alg.stratum_dims(), vec![2, 1, 2]);
        let dims: Vec<usize> = alg
            .lower_central_series()
            .iter()
            .map(Subspace::dim)
            .collect();
        assert_eq!(dims, vec![5, 3, 2, 0]);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert_eq!(
            free_nilpotent_capped(3, 4, 10),
            Err(FreeNilpotentError::DimensionCapExceeded { cap: 10 })
        );
        assert_eq!(free_nilpotent(0, 2), Err(FreeNilpotentError::EmptyParameters));
    }

    #[test]
    fn jacobi_holds_on_the_generated_tables() {
        // The rewriting path is exercised hardest at higher steps.
        let alg = free_nilpotent(2, 5).unwrap();
        assert!(alg.validate().is_valid());
        assert_eq!(
            alg.stratum_dims(),
            vec![witt(2, 1), witt(2, 2), witt(2, 3), witt(2, 4), witt(2, 5)]
        );
    }
}
