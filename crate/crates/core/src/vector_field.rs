//! Vector fields with polynomial components.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::RatMat;
use crate::poly::Poly;
use crate::Rat;

/// A vector field on Q^n whose components are polynomials in `x1..xn`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    ambient_dim: usize,
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Self {
        let ambient_dim = components.len();
        for c in &components {
            assert_eq!(c.nvars(), ambient_dim, "component variable count != dim");
        }
        PolyVectorField { ambient_dim, components }
    }

    pub fn zero(dim: usize) -> Self {
        PolyVectorField {
            ambient_dim: dim,
            components: (0..dim).map(|_| Poly::zero(dim)).collect(),
        }
    }

    /// The constant field with value `v`.
    pub fn constant(v: &[Rat]) -> Self {
        let dim = v.len();
        PolyVectorField {
            ambient_dim: dim,
            components: v
                .iter()
                .map(|c| Poly::constant(dim, c.clone()))
                .collect(),
        }
    }

    /// The linear field `x -> A x`.
    pub fn linear(a: &RatMat) -> Self {
        assert!(a.is_square());
        let dim = a.nrows();
        let components = (0..dim)
            .map(|i| {
                let mut p = Poly::zero(dim);
                for j in 0..dim {
                    p.add_term(crate::poly::Monomial::var(dim, j), &a[(i, j)]);
                }
                p
            })
            .collect();
        PolyVectorField { ambient_dim: dim, components }
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Poly {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, point: &[Rat]) -> Vec<Rat> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn value_at_origin(&self) -> Vec<Rat> {
        self.components.iter().map(Poly::constant_term).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        PolyVectorField {
            ambient_dim: self.ambient_dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        PolyVectorField {
            ambient_dim: self.ambient_dim,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        PolyVectorField {
            ambient_dim: self.ambient_dim,
            components: self.components.iter().map(|c| c.scale(k)).collect(),
        }
    }

    /// Lie bracket of vector fields:
    /// `[A, B]_k = sum_l A_l d(B_k)/dx_l - B_l d(A_k)/dx_l`.
    pub fn bracket(&self, other: &Self) -> Self {
        assert_eq!(
            self.ambient_dim, other.ambient_dim,
            "field bracket needs equal ambient dimension"
        );
        let n = self.ambient_dim;
        let components = (0..n)
            .map(|k| {
                let mut acc = Poly::zero(n);
                for l in 0..n {
                    if !self.components[l].is_zero() {
                        acc = acc.add(&self.components[l].mul(&other.components[k].partial(l)));
                    }
                    if !other.components[l].is_zero() {
                        acc = acc.sub(&other.components[l].mul(&self.components[k].partial(l)));
                    }
                }
                acc
            })
            .collect();
        PolyVectorField { ambient_dim: n, components }
    }

    /// Push-forward along the invertible linear map `a`:
    /// `(a_* Z)(x) = a . Z(a^{-1} x)`.
    pub fn push_forward(&self, a: &RatMat) -> Option<Self> {
        let inv = a.inverse()?;
        let substituted: Vec<Poly> = self
            .components
            .iter()
            .map(|c| c.subst_linear(&inv))
            .collect();
        let n = self.ambient_dim;
        let components = (0..n)
            .map(|k| {
                let mut acc = Poly::zero(n);
                for l in 0..n {
                    if !a[(k, l)].is_zero() {
                        acc = acc.add(&substituted[l].scale(&a[(k, l)]));
                    }
                }
                acc
            })
            .collect();
        Some(PolyVectorField { ambient_dim: n, components })
    }

    /// Largest weighted degree over all component polynomials.
    pub fn max_weighted_degree(&self, weights: &[usize]) -> usize {
        self.components
            .iter()
            .map(|c| c.max_weighted_degree(weights))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::rint;
    use alloc::vec;

    #[test]
    fn constant_fields_commute() {
        let a = PolyVectorField::constant(&[rint(1), rint(2)]);
        let b = PolyVectorField::constant(&[rint(3), rint(-1)]);
        assert!(a.bracket(&b).is_zero());
    }

    #[test]
    fn bracket_of_linear_fields_is_reversed_commutator() {
        // [L_A, L_B] = L_{BA - AB}.
        let mut a = RatMat::zeros(2, 2);
        a[(0, 1)] = rint(1);
        let mut b = RatMat::zeros(2, 2);
        b[(1, 0)] = rint(1);
        let la = PolyVectorField::linear(&a);
        let lb = PolyVectorField::linear(&b);
        let expected = PolyVectorField::linear(&b.mul(&a).sub(&a.mul(&b)));
        assert_eq!(la.bracket(&lb), expected);
    }

    #[test]
    fn known_nonlinear_bracket() {
        // A = x d/dz, B = d/dx - (y/2) d/dz on R^3: [A, B] = -d/dz.
        let n = 3;
        let mut a_comp = vec![Poly::zero(n), Poly::zero(n), Poly::zero(n)];
        a_comp[2] = Poly::var(n, 0);
        let a = PolyVectorField::new(a_comp);
        let mut b_comp = vec![Poly::zero(n), Poly::zero(n), Poly::zero(n)];
        b_comp[0] = Poly::constant(n, rint(1));
        b_comp[2] = Poly::var(n, 1).scale(&crate::rat(-1, 2));
        let b = PolyVectorField::new(b_comp);
        let expected = PolyVectorField::constant(&[rint(0), rint(0), rint(-1)]);
        assert_eq!(a.bracket(&b), expected);
    }

    #[test]
    fn push_forward_by_identity_is_identity() {
        let f = PolyVectorField::linear(&RatMat::identity(3));
        let g = f.push_forward(&RatMat::identity(3)).unwrap();
        assert_eq!(f, g);
        let singular = RatMat::zeros(3, 3);
        assert!(f.push_forward(&singular).is_none());
    }
}
