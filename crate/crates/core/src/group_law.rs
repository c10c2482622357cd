//! The Carnot group in exponential coordinates of the first kind.
//!
//! The group product is the truncated Baker-Campbell-Hausdorff series,
//! computed once per algebra as a table of polynomials in 2n variables
//! (Dynkin's commutator form, exact for nilpotent algebras) and shared
//! read-only afterwards. Graded automorphisms act linearly in these
//! coordinates, left translations by `exp(tY)` are generated by the
//! right-invariant fields `Y†`, and right translations by the
//! left-invariant fields `Ỹ`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::StratifiedAlgebra;
use crate::john::NormSpec;
use crate::matrix::RatMat;
use crate::poly::Poly;
use crate::vector_field::PolyVectorField;
use crate::{rat, Rat};

/// A point in exponential coordinates of the first kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupPoint {
    pub coords: Vec<Rat>,
}

impl GroupPoint {
    pub fn new(coords: Vec<Rat>) -> Self {
        GroupPoint { coords }
    }

    pub fn origin(dim: usize) -> Self {
        GroupPoint { coords: vec![Rat::zero(); dim] }
    }

    pub fn neg(&self) -> Self {
        GroupPoint {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// `[a, b]` for algebra vectors with polynomial coordinates.
fn bracket_poly(alg: &StratifiedAlgebra, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let nv = a[0].nvars();
    let mut out = vec![Poly::zero(nv); alg.dim()];
    for (i, j, terms) in alg.bracket_entries() {
        let coeff = a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
        if coeff.is_zero() {
            continue;
        }
        for (k, c) in terms {
            out[*k] = out[*k].add(&coeff.scale(c));
        }
    }
    out
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product::<i64>().max(1)
}

/// All nonempty block sequences `(r_1,s_1)..(r_q,s_q)` with every
/// `r_i + s_i >= 1` and total weight at most `max`.
fn block_sequences(max: u32) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    let mut current: Vec<(u32, u32)> = Vec::new();
    fn recurse(remaining: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        for r in 0..=remaining {
            for s in 0..=(remaining - r) {
                if r + s == 0 {
                    continue;
                }
                current.push((r, s));
                recurse(remaining - r - s, current, out);
                current.pop();
            }
        }
    }
    recurse(max, &mut current, &mut out);
    out
}

/// The group law and its derived objects for one algebra.
pub struct GroupLaw {
    alg: StratifiedAlgebra,
    /// `table[k]` is the k-th coordinate of `bch(u, v)` as a polynomial in
    /// the 2n variables `(u_1..u_n, v_1..v_n)`.
    table: Vec<Poly>,
}

impl GroupLaw {
    /// Builds the BCH polynomial table by Dynkin's commutator series,
    /// truncated at the step of the algebra (exactly, not approximately).
    pub fn new(alg: &StratifiedAlgebra) -> Self {
        let n = alg.dim();
        let nv = 2 * n;
        let u: Vec<Poly> = (0..n).map(|i| Poly::var(nv, i)).collect();
        let v: Vec<Poly> = (0..n).map(|i| Poly::var(nv, n + i)).collect();
        let mut table = vec![Poly::zero(nv); n];

        for blocks in block_sequences(alg.step() as u32) {
            let q = blocks.len();
            let w: u32 = blocks.iter().map(|(r, s)| r + s).sum();
            let (r_last, s_last) = *blocks.last().unwrap();

            // The innermost letter; repeated innermost letters vanish.
            let (core, mut letters): (&[Poly], Vec<(u32, u32)>) = if s_last >= 1 {
                if s_last >= 2 {
                    continue;
                }
                let mut ls = blocks.clone();
                ls.last_mut().unwrap().1 -= 1;
                (&v, ls)
            } else {
                if r_last >= 2 {
                    continue;
                }
                let mut ls = blocks.clone();
                ls.last_mut().unwrap().0 -= 1;
                (&u, ls)
            };

            let mut acc: Vec<Poly> = core.to_vec();
            // Apply ad-letters right to left: X^{r_1} Y^{s_1} ... acting on
            // the core.
            'outer: while let Some((r, s)) = letters.pop() {
                for _ in 0..s {
                    acc = bracket_poly(alg, &v, &acc);
                    if acc.iter().all(Poly::is_zero) {
                        break 'outer;
                    }
                }
                for _ in 0..r {
                    acc = bracket_poly(alg, &u, &acc);
                    if acc.iter().all(Poly::is_zero) {
                        break 'outer;
                    }
                }
            }
            if acc.iter().all(Poly::is_zero) {
                continue;
            }

            let mut denom = w as i64 * q as i64;
            for (r, s) in &blocks {
                denom *= factorial(*r) * factorial(*s);
            }
            let sign = if q % 2 == 1 { 1 } else { -1 };
            let coeff = rat(sign, denom);
            for k in 0..n {
                table[k] = table[k].add(&acc[k].scale(&coeff));
            }
        }

        GroupLaw { alg: alg.clone(), table }
    }

    pub fn algebra(&self) -> &StratifiedAlgebra {
        &self.alg
    }

    /// The BCH coordinate polynomials in `(u_1..u_n, v_1..v_n)`.
    pub fn bch_polynomials(&self) -> &[Poly] {
        &self.table
    }

    /// Group product `x * y = bch(x, y)`, evaluated exactly.
    pub fn bch(&self, x: &GroupPoint, y: &GroupPoint) -> GroupPoint {
        let n = self.alg.dim();
        assert_eq!(x.coords.len(), n, "bch: left point length");
        assert_eq!(y.coords.len(), n, "bch: right point length");
        let mut point = Vec::with_capacity(2 * n);
        point.extend(x.coords.iter().cloned());
        point.extend(y.coords.iter().cloned());
        GroupPoint::new(self.table.iter().map(|p| p.eval(&point)).collect())
    }

    /// The dilation `δ_λ`, scaling `V_j` coordinates by `λ^j`.
    pub fn dilation(&self, lambda: &Rat, x: &GroupPoint) -> Result<GroupPoint, DilationError> {
        if lambda.is_zero() {
            return Err(DilationError::ZeroFactor);
        }
        let coords = x
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut f = Rat::one();
                for _ in 0..self.alg.weight(i) {
                    f *= lambda;
                }
                c * f
            })
            .collect();
        Ok(GroupPoint::new(coords))
    }

    /// The right-invariant field `Y†` generating left translations:
    /// `Y†(x) = d/dt|_0 bch(tY, x)`.
    pub fn right_invariant_field(&self, y: &[Rat]) -> PolyVectorField {
        self.invariant_field(y, true)
    }

    /// The left-invariant field `Ỹ`: `Ỹ(x) = d/dt|_0 bch(x, tY)`.
    pub fn left_invariant_field(&self, y: &[Rat]) -> PolyVectorField {
        self.invariant_field(y, false)
    }

    fn invariant_field(&self, y: &[Rat], first_slot: bool) -> PolyVectorField {
        let n = self.alg.dim();
        assert_eq!(y.len(), n);
        // d/dt|_0 bch(tY, x) = sum_i Y_i * d(bch_k)/du_i |_{u=0}; the
        // surviving polynomial lives in the other variable block.
        let (diff_start, keep_start) = if first_slot { (0, n) } else { (n, 0) };
        let components = (0..n)
            .map(|k| {
                let mut acc = Poly::zero(2 * n);
                for (i, yi) in y.iter().enumerate() {
                    if yi.is_zero() {
                        continue;
                    }
                    let d = self.table[k].partial(diff_start + i);
                    acc = acc.add(&d.drop_terms_with_vars(diff_start, n).scale(yi));
                }
                acc.project_vars(keep_start, n)
            })
            .collect();
        PolyVectorField::new(components)
    }

    /// Validates a graded Lie algebra automorphism and returns it as the
    /// affine realization `x -> A x`.
    pub fn automorphism_to_map(&self, a: &RatMat) -> Result<GroupAutomorphism, AutomorphismError> {
        let n = self.alg.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(AutomorphismError::SizeMismatch { expected: n, got: a.nrows() });
        }
        if a.inverse().is_none() {
            return Err(AutomorphismError::NotInvertible);
        }
        for q in 0..n {
            for p in 0..n {
                if self.alg.weight(p) != self.alg.weight(q) && !a[(p, q)].is_zero() {
                    return Err(AutomorphismError::NotStrataPreserving { from: q, to: p });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = a.mul_vec(&self.alg.bracket_vec(&self.alg.basis_vec(i), &self.alg.basis_vec(j)));
                let rhs = self.alg.bracket_vec(&a.col(i), &a.col(j));
                if lhs != rhs {
                    return Err(AutomorphismError::BracketViolation { i, j });
                }
            }
        }
        let map = GroupAutomorphism { matrix: a.clone() };
        // A linear automorphism in exponential coordinates is automatically
        // a group homomorphism; re-verify on a deterministic sample.
        for t in 0..3i64 {
            let x = self.sample_point(2 * t + 1);
            let y = self.sample_point(2 * t + 2);
            let lhs = map.apply(&self.bch(&x, &y));
            let rhs = self.bch(&map.apply(&x), &map.apply(&y));
            assert_eq!(lhs, rhs, "automorphism fails the homomorphism law");
        }
        Ok(map)
    }

    fn sample_point(&self, seed: i64) -> GroupPoint {
        let coords = (0..self.alg.dim())
            .map(|i| rat(seed + i as i64, i as i64 + 2))
            .collect();
        GroupPoint::new(coords)
    }

    /// Decides whether a (validated) automorphism is an isometry of the
    /// norm: it must preserve every stratum and its `V_1` block must
    /// preserve the norm — exactly, with a certificate either way.
    pub fn is_isometric_automorphism(
        &self,
        a: &RatMat,
        norm: &NormSpec,
    ) -> Result<IsometryOutcome, AutomorphismError> {
        let n = self.alg.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(AutomorphismError::SizeMismatch { expected: n, got: a.nrows() });
        }
        if a.inverse().is_none() {
            return Err(AutomorphismError::NotInvertible);
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = a.mul_vec(&self.alg.bracket_vec(&self.alg.basis_vec(i), &self.alg.basis_vec(j)));
                let rhs = self.alg.bracket_vec(&a.col(i), &a.col(j));
                if lhs != rhs {
                    return Err(AutomorphismError::BracketViolation { i, j });
                }
            }
        }
        // Strata preservation is part of the verdict, not a precondition.
        for q in 0..n {
            for p in 0..n {
                if self.alg.weight(p) != self.alg.weight(q) && !a[(p, q)].is_zero() {
                    return Ok(IsometryOutcome {
                        isometric: false,
                        certificate: IsometryCertificate::StrataViolated { from: q, to: p },
                    });
                }
            }
        }
        let v1 = self.alg.stratum_indices(1);
        let n1 = v1.len();
        let mut a1 = RatMat::zeros(n1, n1);
        for (lp, &gp) in v1.iter().enumerate() {
            for (lq, &gq) in v1.iter().enumerate() {
                a1[(lp, lq)] = a[(gp, gq)].clone();
            }
        }
        match norm {
            NormSpec::Gram(g) => {
                let residual = a1.transpose().mul(g).mul(&a1).sub(g);
                Ok(IsometryOutcome {
                    isometric: residual.is_zero(),
                    certificate: IsometryCertificate::GramResidual { residual },
                })
            }
            NormSpec::Polytope(facets) => {
                let at = a1.transpose();
                let mut images = Vec::with_capacity(facets.len());
                for (idx, f) in facets.iter().enumerate() {
                    let img = at.mul_vec(f);
                    let neg: Vec<Rat> = img.iter().map(|c| -c.clone()).collect();
                    let hit = facets.iter().position(|g| *g == img || *g == neg);
                    match hit {
                        Some(j) => images.push((j, facets[j] == img)),
                        None => {
                            return Ok(IsometryOutcome {
                                isometric: false,
                                certificate: IsometryCertificate::FacetUnmatched { facet: idx },
                            })
                        }
                    }
                }
                Ok(IsometryOutcome {
                    isometric: true,
                    certificate: IsometryCertificate::FacetPermutation { images },
                })
            }
        }
    }
}

/// A validated graded automorphism, acting linearly on coordinates.
#[derive(Clone, Debug)]
pub struct GroupAutomorphism {
    matrix: RatMat,
}

impl GroupAutomorphism {
    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupPoint) -> GroupPoint {
        GroupPoint::new(self.matrix.mul_vec(&x.coords))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismError {
    SizeMismatch { expected: usize, got: usize },
    NotInvertible,
    /// `A[e_i, e_j] != [A e_i, A e_j]` — the violating basis pair.
    BracketViolation { i: usize, j: usize },
    NotStrataPreserving { from: usize, to: usize },
}

impl core::fmt::Display for AutomorphismError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AutomorphismError::SizeMismatch { expected, got } => {
                write!(f, "matrix is {got}x{got}, expected {expected}x{expected}")
            }
            AutomorphismError::NotInvertible => write!(f, "matrix is not invertible"),
            AutomorphismError::BracketViolation { i, j } => {
                write!(f, "not an automorphism: bracket relation violated on basis pair ({i}, {j})")
            }
            AutomorphismError::NotStrataPreserving { from, to } => {
                write!(f, "strata not preserved: basis vector {from} has image touching {to}")
            }
        }
    }
}

impl core::error::Error for AutomorphismError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DilationError {
    ZeroFactor,
}

impl core::fmt::Display for DilationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "dilation factor must be nonzero")
    }
}

impl core::error::Error for DilationError {}

/// Verdict of the isometric-automorphism test with its exact certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryOutcome {
    pub isometric: bool,
    pub certificate: IsometryCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryCertificate {
    StrataViolated { from: usize, to: usize },
    /// `A|V1^T G A|V1 - G`; zero exactly when the scalar product is kept.
    GramResidual { residual: RatMat },
    /// Facet `i` maps to facet `images[i].0`, sign-flipped when `.1` is
    /// false.
    FacetPermutation { images: Vec<(usize, bool)> },
    FacetUnmatched { facet: usize },
}
