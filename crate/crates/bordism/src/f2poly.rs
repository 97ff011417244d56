//! Mod-2 polynomials in graded variables.
//!
//! The main instance is the Stiefel-Whitney ring F2[w1, w2, ...] with deg
//! w_i = i; manifold cohomology models add their own local variable families
//! (the degree-1 class of a projective space, the degree-1 and degree-2
//! classes of a Dold manifold). Coefficients live in GF(2), so a polynomial
//! is just a set of monomials and addition is symmetric difference.

use crate::partitions::Partition;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// Family 0 is reserved for the Stiefel-Whitney classes w_i.
pub const W_FAMILY: u16 = 0;

/// A graded polynomial variable, identified by (family, index).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Var {
    pub family: u16,
    pub index: u16,
    pub degree: u32,
}

/// The Stiefel-Whitney class w_i (degree i).
pub fn w(i: u32) -> Var {
    assert!(i >= 1, "w_0 is the unit, not a variable");
    Var {
        family: W_FAMILY,
        index: i as u16,
        degree: i,
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == W_FAMILY {
            write!(f, "w{}", self.index)
        } else {
            // Manifold-local generators: degree-1 classes render as c, the
            // degree-2 Dold class as d, suffixed with the factor number.
            let letter = if self.degree == 1 { 'c' } else { 'd' };
            write!(f, "{letter}{}", self.family)
        }
    }
}

/// A monomial: sorted (variable, exponent) pairs, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct F2Monomial {
    factors: Vec<(Var, u32)>,
}

impl F2Monomial {
    pub fn one() -> Self {
        F2Monomial { factors: Vec::new() }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: HashMap<Var, u32> = HashMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        let mut factors: Vec<(Var, u32)> = map.into_iter().collect();
        factors.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        F2Monomial { factors }
    }

    pub fn var(v: Var) -> Self {
        Self::from_factors([(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(v, e)| v.degree * e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, v: Var) -> u32 {
        self.factors
            .iter()
            .find(|(u, _)| *u == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &F2Monomial) -> F2Monomial {
        F2Monomial::from_factors(
            self.factors.iter().chain(other.factors.iter()).copied(),
        )
    }

    /// The degree-n w-monomial attached to a partition: each part i
    /// contributes one factor of w_i.
    pub fn from_w_partition(p: &Partition) -> F2Monomial {
        F2Monomial::from_factors(p.multiplicities().into_iter().map(|(v, c)| (w(v), c)))
    }

    /// Inverse of `from_w_partition`; panics on non-w variables.
    pub fn to_w_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for &(v, e) in &self.factors {
            assert_eq!(v.family, W_FAMILY, "not a Stiefel-Whitney monomial");
            parts.extend(std::iter::repeat_n(v.index as u32, e as usize));
        }
        Partition::new(parts)
    }
}

/// Graded order, then lexicographic on the factor list: stable rendering.
impl Ord for F2Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for F2Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for F2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over GF(2): the set of its monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct F2Polynomial {
    monomials: BTreeSet<F2Monomial>,
}

impl F2Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(F2Monomial::one())
    }

    pub fn from_monomial(m: F2Monomial) -> Self {
        let mut s = BTreeSet::new();
        s.insert(m);
        F2Polynomial { monomials: s }
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = F2Monomial>) -> Self {
        let mut p = Self::zero();
        for m in ms {
            p.toggle(m);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(F2Monomial::var(v))
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &F2Monomial> {
        self.monomials.iter()
    }

    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    pub fn toggle(&mut self, m: F2Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &F2Polynomial) {
        for m in &other.monomials {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &F2Polynomial) -> F2Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &F2Polynomial) -> F2Polynomial {
        let mut out = F2Polynomial::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &F2Monomial) -> F2Polynomial {
        F2Polynomial::from_monomials(self.monomials.iter().map(|a| a.mul(m)))
    }

    /// Frobenius: squaring doubles every exponent, cross terms cancel.
    pub fn square(&self) -> F2Polynomial {
        F2Polynomial::from_monomials(self.monomials.iter().map(|m| {
            F2Monomial::from_factors(m.factors().iter().map(|&(v, e)| (v, 2 * e)))
        }))
    }

    /// Drops every monomial containing a variable at or above its nilpotency
    /// exponent (the truncated polynomial rings of manifold cohomology).
    pub fn truncate(&self, rules: &HashMap<Var, u32>) -> F2Polynomial {
        F2Polynomial {
            monomials: self
                .monomials
                .iter()
                .filter(|m| {
                    m.factors()
                        .iter()
                        .all(|(v, e)| rules.get(v).is_none_or(|&cap| *e < cap))
                })
                .cloned()
                .collect(),
        }
    }

    /// Common degree of the monomials, if homogeneous (zero counts as any).
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.monomials.iter().map(|m| m.degree());
        let Some(first) = it.next() else { return None };
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// The degree-k part of the polynomial.
    pub fn graded_component(&self, k: u32) -> F2Polynomial {
        F2Polynomial {
            monomials: self
                .monomials
                .iter()
                .filter(|m| m.degree() == k)
                .cloned()
                .collect(),
        }
    }

    pub fn contains(&self, m: &F2Monomial) -> bool {
        self.monomials.contains(m)
    }
}

impl fmt::Display for F2Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// An element of the rank-one free module on the Thom class U: poly * U.
/// U has degree 0, so the element's degree is the polynomial's.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ThomElement {
    pub poly: F2Polynomial,
}

impl ThomElement {
    pub fn unit() -> Self {
        ThomElement { poly: F2Polynomial::one() }
    }

    pub fn zero() -> Self {
        ThomElement { poly: F2Polynomial::zero() }
    }

    pub fn new(poly: F2Polynomial) -> Self {
        ThomElement { poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    pub fn add(&self, other: &ThomElement) -> ThomElement {
        ThomElement::new(self.poly.add(&other.poly))
    }
}

impl fmt::Display for ThomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            write!(f, "0")
        } else if self.poly == F2Polynomial::one() {
            write!(f, "U")
        } else {
            write!(f, "({})*U", self.poly)
        }
    }
}
