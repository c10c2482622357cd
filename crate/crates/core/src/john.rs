//! John ellipsoids of centrally symmetric polytope norm balls.
//!
//! This is the only floating-point module. A polytope norm on `V_1` is given
//! by facet functionals `a_i` (signs implicit: the ball is
//! `{x : |<a_i, x>| <= 1}`). The maximal inscribed ellipsoid is computed as
//! the polar of the minimum-volume enclosing ellipsoid of the polar body
//! `conv{±a_i}`, by Khachiyan-style barycentric coordinate ascent. The
//! boundary back to the exact pipeline is `gram_from_norm`, which
//! rationalizes the result and certifies positive definiteness exactly
//! before anything downstream may consume it.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::derivations::{check_gram, GramError};
use crate::matrix::RatMat;
use crate::{Int, Rat};

/// Hard cap on the ambient dimension of ellipsoid computations.
pub const DIM_CAP: usize = 6;
/// Hard cap on coordinate-ascent iterations.
pub const ITERATION_CAP: usize = 100_000;
/// Default convergence tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Default denominator bound for rationalizing a Gram matrix.
pub const DEFAULT_DENOMINATOR_BOUND: i64 = 1_000_000;

/// A norm on `V_1`: a scalar product or a symmetric polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormSpec {
    /// Positive definite symmetric matrix; the unit ball is
    /// `{x : x^T G x <= 1}`.
    Gram(RatMat),
    /// Facet functionals of a centrally symmetric polytope ball
    /// `{x : |<a_i, x>| <= 1}`; one representative per ± pair.
    Polytope(Vec<Vec<Rat>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormError {
    Gram(GramError),
    NoFacets,
    FacetLengthMismatch { index: usize },
    ZeroFacet { index: usize },
    DuplicateFacet { first: usize, second: usize },
    /// The facets do not span the dual space: the ball is unbounded.
    FacetsDoNotSpan { rank: usize, dim: usize },
}

impl core::fmt::Display for NormError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NormError::Gram(e) => write!(f, "{e}"),
            NormError::NoFacets => write!(f, "polytope norm needs at least one facet"),
            NormError::FacetLengthMismatch { index } => {
                write!(f, "facet {index} has the wrong number of entries")
            }
            NormError::ZeroFacet { index } => write!(f, "facet {index} is the zero functional"),
            NormError::DuplicateFacet { first, second } => {
                write!(f, "facets {first} and {second} coincide up to sign")
            }
            NormError::FacetsDoNotSpan { rank, dim } => {
                write!(f, "facets span a rank-{rank} subspace of the {dim}-dimensional dual; ball is unbounded")
            }
        }
    }
}

impl core::error::Error for NormError {}

impl NormSpec {
    pub fn new_gram(gram: RatMat) -> Result<Self, NormError> {
        check_gram(&gram, gram.nrows()).map_err(NormError::Gram)?;
        Ok(NormSpec::Gram(gram))
    }

    pub fn new_polytope(facets: Vec<Vec<Rat>>) -> Result<Self, NormError> {
        let Some(first) = facets.first() else {
            return Err(NormError::NoFacets);
        };
        let dim = first.len();
        for (i, f) in facets.iter().enumerate() {
            if f.len() != dim {
                return Err(NormError::FacetLengthMismatch { index: i });
            }
            if f.iter().all(Rat::is_zero) {
                return Err(NormError::ZeroFacet { index: i });
            }
        }
        for i in 0..facets.len() {
            for j in i + 1..facets.len() {
                let neg: Vec<Rat> = facets[j].iter().map(|c| -c.clone()).collect();
                if facets[i] == facets[j] || facets[i] == neg {
                    return Err(NormError::DuplicateFacet { first: i, second: j });
                }
            }
        }
        let rank = RatMat::from_rows(facets.clone()).rank();
        if rank < dim {
            return Err(NormError::FacetsDoNotSpan { rank, dim });
        }
        Ok(NormSpec::Polytope(facets))
    }

    pub fn dim(&self) -> usize {
        match self {
            NormSpec::Gram(g) => g.nrows(),
            NormSpec::Polytope(f) => f[0].len(),
        }
    }
}

/// An origin-centered ellipsoid `{x : x^T Q^{-1} x <= 1}`.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    /// Shape matrix `Q`, symmetric positive definite.
    pub q: Vec<Vec<f64>>,
    /// Convergence tolerance actually achieved.
    pub tolerance: f64,
}

impl Ellipsoid {
    /// Re-checks the type invariants: symmetry within 1e-12 relative and
    /// positive eigenvalues (LDL^T pivots).
    pub fn check(&self) -> bool {
        let d = self.q.len();
        let mut scale = 0.0f64;
        for row in &self.q {
            for &x in row {
                if fabs(x) > scale {
                    scale = fabs(x);
                }
            }
        }
        if scale == 0.0 {
            return false;
        }
        for i in 0..d {
            for j in 0..d {
                if fabs(self.q[i][j] - self.q[j][i]) > 1e-12 * scale {
                    return false;
                }
            }
        }
        ldl_pivots_positive(&self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JohnError {
    NoPoints,
    BadTolerance,
    DimensionCapExceeded { dim: usize },
    PointLengthMismatch { index: usize },
    /// The points span only a rank-`rank` subspace; the orthogonal
    /// complement is witnessed by a nonzero normal vector (scaled to its
    /// largest entry).
    DegeneratePointSet { rank: usize, dim: usize },
    IterationCapExceeded,
    /// Rationalization at the requested denominator bound could not be
    /// certified positive definite.
    RationalizationNotDefinite,
}

impl core::fmt::Display for JohnError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            JohnError::NoPoints => write!(f, "empty point set"),
            JohnError::BadTolerance => write!(f, "tolerance must be positive"),
            JohnError::DimensionCapExceeded { dim } => {
                write!(f, "dimension {dim} exceeds the cap {DIM_CAP}")
            }
            JohnError::PointLengthMismatch { index } => {
                write!(f, "point {index} has the wrong number of coordinates")
            }
            JohnError::DegeneratePointSet { rank, dim } => {
                write!(f, "points span only a rank-{rank} subspace of R^{dim}")
            }
            JohnError::IterationCapExceeded => {
                write!(f, "coordinate ascent did not converge within {ITERATION_CAP} iterations")
            }
            JohnError::RationalizationNotDefinite => {
                write!(f, "rationalized Gram matrix could not be certified positive definite")
            }
        }
    }
}

impl core::error::Error for JohnError {}

fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn mat_zeros(d: usize) -> Vec<Vec<f64>> {
    vec![vec![0.0; d]; d]
}

/// Gaussian elimination inverse with partial pivoting; `None` when
/// numerically singular.
fn mat_inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let d = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..d {
        let (pivot_row, pivot) = (c..d)
            .map(|r| (r, fabs(m[r][c])))
            .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot < 1e-300 {
            return None;
        }
        m.swap(c, pivot_row);
        let inv = 1.0 / m[c][c];
        for j in 0..2 * d {
            m[c][j] *= inv;
        }
        for r in 0..d {
            if r != c && m[r][c] != 0.0 {
                let f = m[r][c];
                for j in 0..2 * d {
                    m[r][j] -= f * m[c][j];
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d..].to_vec()).collect())
}

fn quad_form(a: &[Vec<f64>], x: &[f64]) -> f64 {
    let d = x.len();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            acc += x[i] * a[i][j] * x[j];
        }
    }
    acc
}

fn ldl_pivots_positive(a: &[Vec<f64>]) -> bool {
    let d = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for k in 0..d {
        if m[k][k] <= 0.0 {
            return false;
        }
        for i in k + 1..d {
            let f = m[i][k] / m[k][k];
            for j in k..d {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    true
}

fn float_rank(points: &[Vec<f64>], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = points.to_vec();
    let mut rank = 0;
    for c in 0..dim {
        let scale = m
            .iter()
            .skip(rank)
            .map(|r| fabs(r[c]))
            .fold(0.0, f64::max);
        if scale < 1e-12 {
            continue;
        }
        let pivot_row = (rank..m.len())
            .max_by(|&a, &b| fabs(m[a][c]).partial_cmp(&fabs(m[b][c])).unwrap())
            .unwrap();
        m.swap(rank, pivot_row);
        for r in rank + 1..m.len() {
            let f = m[r][c] / m[rank][c];
            for j in 0..dim {
                m[r][j] -= f * m[rank][j];
            }
        }
        rank += 1;
        if rank == dim {
            break;
        }
    }
    rank
}

/// Minimum-volume origin-centered ellipsoid enclosing the given points
/// (equivalently, the Löwner ellipsoid of the symmetrized set `{±p_i}`).
///
/// Khachiyan-style barycentric coordinate ascent on the design weights;
/// deterministic for a fixed input order. At return every point satisfies
/// `p^T Q^{-1} p <= 1 + eps`.
pub fn mvee(points: &[Vec<f64>], eps: f64) -> Result<Ellipsoid, JohnError> {
    if points.is_empty() {
        return Err(JohnError::NoPoints);
    }
    if !(eps > 0.0) {
        return Err(JohnError::BadTolerance);
    }
    let d = points[0].len();
    if d == 0 || d > DIM_CAP {
        return Err(JohnError::DimensionCapExceeded { dim: d });
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != d {
            return Err(JohnError::PointLengthMismatch { index: i });
        }
    }
    let rank = float_rank(points, d);
    if rank < d {
        return Err(JohnError::DegeneratePointSet { rank, dim: d });
    }

    // Wolfe-Atwood coordinate ascent on the design weights: plain
    // Frank-Wolfe steps toward the worst-covered point, "away" steps
    // shrinking over-weighted support points. The away steps are what makes
    // tight tolerances reachable (the pure ascent is sublinear in eps).
    let n = points.len();
    let df = d as f64;
    let mut u = vec![1.0 / n as f64; n];
    let mut iterations = 0usize;
    loop {
        // V(u) = sum_i u_i p_i p_i^T
        let mut v = mat_zeros(d);
        for (ui, p) in u.iter().zip(points) {
            for r in 0..d {
                for c in 0..d {
                    v[r][c] += ui * p[r] * p[c];
                }
            }
        }
        let vinv = mat_inverse(&v).ok_or(JohnError::DegeneratePointSet { rank: d - 1, dim: d })?;
        let lev: Vec<f64> = points.iter().map(|p| quad_form(&vinv, p)).collect();
        let (imax, kappa_hi) = lev
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (i, &m)| if m > best.1 { (i, m) } else { best });
        let (imin, kappa_lo) = lev
            .iter()
            .enumerate()
            .filter(|&(i, _)| u[i] > 0.0)
            .fold((0, f64::MAX), |best, (i, &m)| if m < best.1 { (i, m) } else { best });

        let excess = kappa_hi / df - 1.0;
        let deficit = 1.0 - kappa_lo / df;
        if excess <= eps && deficit <= eps {
            // Q = d * V(u): each point satisfies p^T Q^{-1} p = m_i / d.
            let q = v
                .iter()
                .map(|row| row.iter().map(|x| x * df).collect())
                .collect();
            let achieved = if excess > 0.0 { excess } else { 0.0 };
            return Ok(Ellipsoid { q, tolerance: achieved });
        }

        let (idx, beta) = if excess >= deficit {
            (imax, (kappa_hi - df) / (df * (kappa_hi - 1.0)))
        } else {
            // Optimal decrease along e_{imin}, clamped so u stays feasible
            // (dropping the point entirely when the optimum lies outside).
            let floor = -u[imin] / (1.0 - u[imin]).max(1e-300);
            let step = if kappa_lo > 1.0 {
                ((kappa_lo - df) / (df * (kappa_lo - 1.0))).max(floor)
            } else {
                floor
            };
            (imin, step)
        };
        for w in u.iter_mut() {
            *w *= 1.0 - beta;
        }
        u[idx] += beta;
        if u[idx] < 0.0 {
            u[idx] = 0.0;
        }

        iterations += 1;
        if iterations >= ITERATION_CAP {
            return Err(JohnError::IterationCapExceeded);
        }
    }
}

/// Maximal inscribed ellipsoid of a polytope norm ball: the polar of the
/// Löwner ellipsoid of the polar body `conv{±a_i}`.
pub fn inner_john(norm: &NormSpec, eps: f64) -> Result<Ellipsoid, JohnError> {
    let NormSpec::Polytope(facets) = norm else {
        // A Gram ball is its own maximal ellipsoid.
        let NormSpec::Gram(g) = norm else { unreachable!() };
        let gf: Vec<Vec<f64>> = (0..g.nrows())
            .map(|i| (0..g.ncols()).map(|j| rat_to_f64(&g[(i, j)])).collect())
            .collect();
        let q = mat_inverse(&gf).ok_or(JohnError::RationalizationNotDefinite)?;
        return Ok(Ellipsoid { q, tolerance: 0.0 });
    };
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(2 * facets.len());
    for f in facets {
        let p: Vec<f64> = f.iter().map(rat_to_f64).collect();
        let neg = p.iter().map(|x| -x).collect();
        points.push(p);
        points.push(neg);
    }
    let loewner = mvee(&points, eps)?;
    // Polar of {x : x^T Q^{-1} x <= 1} is {y : y^T Q y <= 1}.
    let q = mat_inverse(&loewner.q).ok_or(JohnError::RationalizationNotDefinite)?;
    Ok(Ellipsoid { q: symmetrize(q), tolerance: loewner.tolerance })
}

fn symmetrize(m: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let d = m.len();
    let mut out = mat_zeros(d);
    for i in 0..d {
        for j in 0..d {
            out[i][j] = 0.5 * (m[i][j] + m[j][i]);
        }
    }
    out
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).expect("rational out of f64 range")
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions).
pub fn rationalize(x: f64, max_den: i64) -> Rat {
    let negative = x < 0.0;
    let mut x = fabs(x);
    if x > 9e15 {
        // Out of exactly-representable integer range; keep the magnitude.
        return Rat::from_integer(Int::from(x as i64));
    }
    // Convergents p/q of the continued fraction of x.
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    for _ in 0..64 {
        let a = x as i64; // floor, x >= 0
        let p2 = a.checked_mul(p1).and_then(|v| v.checked_add(p0));
        let q2 = a.checked_mul(q1).and_then(|v| v.checked_add(q0));
        let (Some(p2), Some(q2)) = (p2, q2) else { break };
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a as f64;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    let val = Rat::new(Int::from(p1), Int::from(q1.max(1)));
    if negative {
        -val
    } else {
        val
    }
}

/// Reduces any norm to an exact Gram matrix.
///
/// Gram norms pass through unchanged. Polytope norms go through
/// [`inner_john`]; the resulting `Q^{-1}` is rationalized entrywise at the
/// given denominator bound and certified positive definite by exact leading
/// principal minors before it is returned.
pub fn gram_from_norm(norm: &NormSpec, eps: f64, max_den: i64) -> Result<RatMat, JohnError> {
    match norm {
        NormSpec::Gram(g) => Ok(g.clone()),
        NormSpec::Polytope(_) => {
            let ell = inner_john(norm, eps)?;
            let d = ell.q.len();
            let qinv = mat_inverse(&ell.q).ok_or(JohnError::RationalizationNotDefinite)?;
            let qinv = symmetrize(qinv);
            let mut gram = RatMat::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    let r = rationalize(qinv[i][j], max_den);
                    gram[(i, j)] = r.clone();
                    gram[(j, i)] = r;
                }
            }
            if check_gram(&gram, d).is_err() {
                return Err(JohnError::RationalizationNotDefinite);
            }
            Ok(gram)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        fabs(a - b) <= tol
    }

    fn assert_mat_close(q: &[Vec<f64>], expected: &[Vec<f64>], tol: f64) {
        for (row, erow) in q.iter().zip(expected) {
            for (x, e) in row.iter().zip(erow) {
                assert!(close(*x, *e, tol), "got {q:?}, expected {expected:?}");
            }
        }
    }

    #[test]
    fn mvee_of_cross_polytope_vertices_is_unit_disk() {
        let pts = vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ];
        let e = mvee(&pts, 1e-9).unwrap();
        assert_mat_close(&e.q, &[vec![1.0, 0.0], vec![0.0, 1.0]], 1e-8);
        assert!(e.check());
    }

    #[test]
    fn mvee_of_square_corners_is_radius_sqrt2_disk() {
        // Circumscribed circle of the square with corners (±1, ±1):
        // Q = 2 I (radius sqrt(2)).
        let pts = vec![
            vec![1.0, 1.0],
            vec![-1.0, -1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
        ];
        let e = mvee(&pts, 1e-9).unwrap();
        assert_mat_close(&e.q, &[vec![2.0, 0.0], vec![0.0, 2.0]], 1e-8);
    }

    #[test]
    fn mvee_rejects_rank_deficient_points() {
        let pts = vec![vec![1.0, 0.0], vec![-1.0, 0.0]];
        assert_eq!(
            mvee(&pts, 1e-9).unwrap_err(),
            JohnError::DegeneratePointSet { rank: 1, dim: 2 }
        );
    }

    #[test]
    fn mvee_needs_genuine_ascent_for_uneven_inputs() {
        // Vertices of an irregular symmetric hexagon: uniform weights are
        // not optimal, so the loop has to move mass.
        let pts = vec![
            vec![2.0, 0.0],
            vec![-2.0, 0.0],
            vec![0.5, 1.0],
            vec![-0.5, -1.0],
            vec![-0.5, 1.0],
            vec![0.5, -1.0],
        ];
        let e = mvee(&pts, 1e-9).unwrap();
        // Every point inside the (1+eps)-infllevel set.
        let qinv = mat_inverse(&e.q).unwrap();
        for p in &pts {
            assert!(quad_form(&qinv, p) <= 1.0 + 1e-8);
        }
        assert!(e.check());
    }

    #[test]
    fn inner_john_of_square_is_unit_disk() {
        let norm = NormSpec::new_polytope(vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
        ])
        .unwrap();
        let e = inner_john(&norm, 1e-9).unwrap();
        assert_mat_close(&e.q, &[vec![1.0, 0.0], vec![0.0, 1.0]], 1e-8);
    }

    #[test]
    fn inner_john_of_l1_ball_is_disk_radius_inv_sqrt2() {
        let norm = NormSpec::new_polytope(vec![
            vec![rint(1), rint(1)],
            vec![rint(1), rint(-1)],
        ])
        .unwrap();
        let e = inner_john(&norm, 1e-9).unwrap();
        assert_mat_close(&e.q, &[vec![0.5, 0.0], vec![0.0, 0.5]], 1e-8);
    }

    #[test]
    fn inner_john_of_rectangle_has_axis_lengths_of_the_box() {
        // |x| <= 1, |y/2| <= 1: inscribed ellipse with semi-axes (1, 2).
        let norm = NormSpec::new_polytope(vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rat(1, 2)],
        ])
        .unwrap();
        let e = inner_john(&norm, 1e-9).unwrap();
        assert_mat_close(&e.q, &[vec![1.0, 0.0], vec![0.0, 4.0]], 1e-7);
    }

    #[test]
    fn inscription_invariant_holds() {
        let norm = NormSpec::new_polytope(vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
            vec![rat(3, 4), rat(3, 4)],
        ])
        .unwrap();
        let e = inner_john(&norm, 1e-9).unwrap();
        let NormSpec::Polytope(facets) = &norm else { unreachable!() };
        for f in facets {
            let ff: Vec<f64> = f.iter().map(rat_to_f64).collect();
            assert!(quad_form(&e.q, &ff) <= 1.0 + 1e-8);
        }
    }

    #[test]
    fn gram_from_square_norm_is_exactly_identity() {
        let norm = NormSpec::new_polytope(vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
        ])
        .unwrap();
        let gram = gram_from_norm(&norm, DEFAULT_EPS, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert_eq!(gram, RatMat::identity(2));
    }

    #[test]
    fn gram_from_l1_norm_is_exactly_twice_identity() {
        let norm = NormSpec::new_polytope(vec![
            vec![rint(1), rint(1)],
            vec![rint(1), rint(-1)],
        ])
        .unwrap();
        let gram = gram_from_norm(&norm, DEFAULT_EPS, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert_eq!(gram, RatMat::identity(2).scale(&rint(2)));
    }

    #[test]
    fn gram_norms_pass_through_untouched() {
        let g = RatMat::from_rows(vec![
            vec![rint(2), rat(1, 3)],
            vec![rat(1, 3), rint(1)],
        ]);
        let norm = NormSpec::new_gram(g.clone()).unwrap();
        assert_eq!(gram_from_norm(&norm, DEFAULT_EPS, 100).unwrap(), g);
    }

    #[test]
    fn norm_validation_rejects_bad_input() {
        assert_eq!(NormSpec::new_polytope(vec![]).unwrap_err(), NormError::NoFacets);
        assert_eq!(
            NormSpec::new_polytope(vec![vec![rint(0), rint(0)]]).unwrap_err(),
            NormError::ZeroFacet { index: 0 }
        );
        assert_eq!(
            NormSpec::new_polytope(vec![vec![rint(1), rint(0)], vec![rint(-1), rint(0)]])
                .unwrap_err(),
            NormError::DuplicateFacet { first: 0, second: 1 }
        );
        assert_eq!(
            NormSpec::new_polytope(vec![vec![rint(1), rint(0)]]).unwrap_err(),
            NormError::FacetsDoNotSpan { rank: 1, dim: 2 }
        );
        assert!(matches!(
            NormSpec::new_gram(RatMat::from_rows(vec![
                vec![rint(1), rint(2)],
                vec![rint(2), rint(1)],
            ]))
            .unwrap_err(),
            NormError::Gram(GramError::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn dilation_covariance_of_the_inner_ellipsoid() {
        // Scaling all facets by t scales Q by 1/t^2.
        let base = NormSpec::new_polytope(vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
            vec![rat(1, 2), rat(1, 2)],
        ])
        .unwrap();
        let NormSpec::Polytope(facets) = &base else { unreachable!() };
        let scaled = NormSpec::new_polytope(
            facets
                .iter()
                .map(|f| f.iter().map(|c| c * rint(3)).collect())
                .collect(),
        )
        .unwrap();
        let e1 = inner_john(&base, 1e-10).unwrap();
        let e2 = inner_john(&scaled, 1e-10).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(e2.q[i][j], e1.q[i][j] / 9.0, 1e-8));
            }
        }
    }

    #[test]
    fn input_order_permutation_changes_little() {
        let facets = vec![
            vec![rint(1), rint(0)],
            vec![rint(0), rint(1)],
            vec![rat(2, 3), rat(2, 3)],
            vec![rat(2, 3), rat(-2, 3)],
        ];
        let mut permuted = facets.clone();
        permuted.reverse();
        let eps = 1e-9;
        let e1 = inner_john(&NormSpec::new_polytope(facets).unwrap(), eps).unwrap();
        let e2 = inner_john(&NormSpec::new_polytope(permuted).unwrap(), eps).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(e1.q[i][j], e2.q[i][j], 10.0 * eps));
            }
        }
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(0.5, 1000), rat(1, 2));
        assert_eq!(rationalize(-0.25, 1000), rat(-1, 4));
        assert_eq!(rationalize(1.0000000001, 1000), rint(1));
        assert_eq!(rationalize(0.3333333333333, 10), rat(1, 3));
        assert_eq!(rationalize(0.0, 10), rint(0));
    }
}
