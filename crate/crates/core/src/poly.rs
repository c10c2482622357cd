//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Monomials are dense exponent vectors ordered graded-lexicographically,
//! so term iteration, equality and printing are canonical. Degrees stay
//! tiny here (bounded by the step of an algebra), which keeps the naive
//! term-by-term arithmetic entirely adequate.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::matrix::RatMat;
use crate::Rat;

/// Exponent vector of a monomial; one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[usize]) -> usize {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as usize * w)
            .sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents left to
    /// right.
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: &Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = e - 1;
            out.add_term(m2, &(c * Rat::from_integer(crate::Int::from(e))));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x := M x` (each variable replaced by the linear form
    /// given by its row of `M`).
    pub fn subst_linear(&self, m: &RatMat) -> Poly {
        assert_eq!(m.nrows(), self.nvars);
        assert_eq!(m.ncols(), self.nvars);
        let forms: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let mut f = Poly::zero(self.nvars);
                for j in 0..self.nvars {
                    f.add_term(Monomial::var(self.nvars, j), &m[(i, j)]);
                }
                f
            })
            .collect();
        let mut out = Poly::zero(self.nvars);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(self.nvars, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&forms[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Coefficient of the first power of `var`, with that variable removed
    /// from the surviving monomials.
    pub fn linear_part_in(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] != 1 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out.add_term(m2, c);
        }
        out
    }

    /// Drops every term with a positive exponent in `[start, start+count)`
    /// (evaluation of those variables at zero).
    pub fn drop_terms_with_vars(&self, start: usize, count: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[start..start + count].iter().all(|&e| e == 0) {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Reindexes onto the variable window `[start, start+count)`; all
    /// exponents outside the window must vanish.
    pub fn project_vars(&self, start: usize, count: usize) -> Poly {
        let mut out = Poly::zero(count);
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                assert!(
                    e == 0 || (i >= start && i < start + count),
                    "projection drops a live variable"
                );
            }
            let window = Monomial(m.0[start..start + count].to_vec());
            out.add_term(window, c);
        }
        out
    }

    pub fn max_weighted_degree(&self, weights: &[usize]) -> usize {
        self.terms
            .keys()
            .map(|m| m.weighted_degree(weights))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Canonical rendering with variables `x1..xN`, leading term first.
    pub fn render(&self) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                s.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            if !c.is_one() || m.total_degree() == 0 {
                parts.push(crate::format_rat(c));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    parts.push(alloc::format!("x{}", i + 1));
                } else if e > 1 {
                    parts.push(alloc::format!("x{}^{}", i + 1, e));
                }
            }
            write!(s, "{}", parts.join("*")).unwrap();
        }
        s
    }
}

impl core::fmt::Display for Poly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.render())
    }
}
