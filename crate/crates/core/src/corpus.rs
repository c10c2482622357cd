//! The bundled example algebras.
//!
//! Covers the abelian groups, both Heisenberg groups, the Engel group and
//! three free nilpotent algebras; together these exercise every stratum
//! shape the rest of the crate cares about.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::StratifiedAlgebra;
use crate::hall::free_nilpotent;
use crate::rint;

/// Abelian R^n as a one-stratum algebra.
pub fn abelian(n: usize) -> StratifiedAlgebra {
    let names = (1..=n).map(|i| format!("a{i}")).collect();
    StratifiedAlgebra::new(names, vec![(0..n).collect()], Vec::new())
        .expect("abelian table is well-formed")
}

/// The first Heisenberg algebra: `[X, Y] = Z`, strata {X, Y}, {Z}.
pub fn heisenberg() -> StratifiedAlgebra {
    StratifiedAlgebra::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        vec![vec![0, 1], vec![2]],
        vec![((0, 1), vec![(2, rint(1))])],
    )
    .expect("heisenberg table is well-formed")
}

/// The second Heisenberg algebra H^2: `[X_i, Y_i] = Z`, dim 5.
pub fn higher_heisenberg() -> StratifiedAlgebra {
    StratifiedAlgebra::new(
        vec!["X1".into(), "Y1".into(), "X2".into(), "Y2".into(), "Z".into()],
        vec![vec![0, 1, 2, 3], vec![4]],
        vec![
            ((0, 1), vec![(4, rint(1))]),
            ((2, 3), vec![(4, rint(1))]),
        ],
    )
    .expect("higher heisenberg table is well-formed")
}

/// The Engel algebra, strata dims (2, 1, 1).
pub fn engel() -> StratifiedAlgebra {
    StratifiedAlgebra::new(
        vec!["X1".into(), "X2".into(), "X3".into(), "X4".into()],
        vec![vec![0, 1], vec![2], vec![3]],
        vec![
            ((0, 1), vec![(2, rint(1))]),
            ((0, 2), vec![(3, rint(1))]),
        ],
    )
    .expect("engel table is well-formed")
}

/// All bundled algebras in their canonical reporting order.
pub fn bundled() -> Vec<(String, StratifiedAlgebra)> {
    let mut list: Vec<(String, StratifiedAlgebra)> = Vec::new();
    for n in 1..=4 {
        list.push((format!("abelian_{n}"), abelian(n)));
    }
    list.push(("heisenberg".into(), heisenberg()));
    list.push(("higher_heisenberg".into(), higher_heisenberg()));
    list.push(("engel".into(), engel()));
    for (m, s) in [(2, 2), (2, 3), (3, 2)] {
        list.push((
            format!("free_{m}_{s}"),
            free_nilpotent(m, s).expect("bundled free nilpotent algebras are small"),
        ));
    }
    list
}

/// Looks up a bundled algebra by name.
pub fn by_name(name: &str) -> Option<StratifiedAlgebra> {
    bundled()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, alg)| alg)
}
