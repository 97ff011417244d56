//! Integer partitions and mod-2 combinations of them.
//!
//! Partitions index the monomial bases used everywhere downstream: all
//! partitions of n index the degree-n Stiefel-Whitney monomials, while the
//! non-dyadic ones (no part of the form 2^a - 1) index Thom's polynomial
//! generators Y_n of the unoriented bordism ring, so a mod-2 combination of
//! non-dyadic partitions of n is an element of that ring in degree n.
//! Multiplication in the Y-basis is concatenation of partitions.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

/// An integer partition, stored with parts in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

/// True if a part is forbidden in non-dyadic partitions (1, 3, 7, 15, ...).
pub fn is_dyadic_part(p: u32) -> bool {
    (p + 1).is_power_of_two()
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// ||lambda||: the sum of the parts.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// |lambda|: the number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nondyadic(&self) -> bool {
        self.0.iter().all(|&p| !is_dyadic_part(p))
    }

    /// Multiset union; realizes Y_lambda * Y_mu = Y_{lambda concat mu}.
    pub fn concat(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    /// lambda concat lambda: the Frobenius square in the Y-basis.
    pub fn square(&self) -> Partition {
        self.concat(self)
    }

    /// True for partitions of the shape mu concat mu (every multiplicity even).
    pub fn is_perfect_square(&self) -> bool {
        let mut i = 0;
        while i < self.0.len() {
            let run = self.0[i..].iter().take_while(|&&p| p == self.0[i]).count();
            if run % 2 != 0 {
                return false;
            }
            i += run;
        }
        true
    }

    /// Part multiplicities as (value, count), values descending.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// Canonical order: graded, then reverse-lexicographic on the sorted parts,
/// so within one degree (n) comes first and (1,1,...,1) last.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in canonical order; with `nondyadic_only` set, parts
/// of the form 2^a - 1 are excluded.
pub fn enumerate_partitions(n: u32, nondyadic_only: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn recurse(
        remaining: u32,
        max_part: u32,
        nondyadic_only: bool,
        stack: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(stack.clone()));
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            if nondyadic_only && is_dyadic_part(part) {
                continue;
            }
            stack.push(part);
            recurse(remaining - part, part, nondyadic_only, stack, out);
            stack.pop();
        }
    }
    recurse(n, n, nondyadic_only, &mut stack, &mut out);
    out
}

/// A mod-2 linear combination of equal-degree partitions (presence = 1).
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionCombination {
    terms: BTreeSet<Partition>,
}

impl PartitionCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Partition>) -> Self {
        let mut c = Self::zero();
        for t in terms {
            c.toggle(t);
        }
        c
    }

    pub fn single(p: Partition) -> Self {
        Self::from_terms([p])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of the terms; None when zero or inhomogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|p| p.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Partition> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Characteristic-2 insertion: adding a present term removes it.
    pub fn toggle(&mut self, p: Partition) {
        if !self.terms.remove(&p) {
            self.terms.insert(p);
        }
    }

    pub fn add_assign(&mut self, other: &PartitionCombination) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn add(&self, other: &PartitionCombination) -> PartitionCombination {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Product in the Y-basis: concatenation distributed over both sums.
    pub fn mul(&self, other: &PartitionCombination) -> PartitionCombination {
        let mut out = PartitionCombination::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.concat(b));
            }
        }
        out
    }

    /// Frobenius square: cross terms cancel mod 2.
    pub fn square(&self) -> PartitionCombination {
        Self::from_terms(self.terms.iter().map(|p| p.square()))
    }

    pub fn one() -> Self {
        Self::single(Partition::empty())
    }
}

impl fmt::Display for PartitionCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A fixed enumeration of the degree-n partitions (all, or non-dyadic only)
/// with O(1) lookup, used to coordinatize polynomials and bordism classes.
#[derive(Clone, Debug)]
pub struct PartitionIndex {
    degree: u32,
    parts: Vec<Partition>,
    pos: HashMap<Partition, usize>,
}

impl PartitionIndex {
    pub fn all(n: u32) -> Self {
        Self::build(n, false)
    }

    pub fn nondyadic(n: u32) -> Self {
        Self::build(n, true)
    }

    fn build(n: u32, nondyadic_only: bool) -> Self {
        let parts = enumerate_partitions(n, nondyadic_only);
        let pos = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PartitionIndex { degree: n, parts, pos }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.parts[i]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.pos.get(p).copied()
    }

    pub fn combination_to_bits(&self, c: &PartitionCombination) -> crate::linf2::BitVec {
        let mut v = crate::linf2::BitVec::zeros(self.len());
        for t in c.terms() {
            let i = self
                .index_of(t)
                .unwrap_or_else(|| panic!("partition {t} not in index of degree {}", self.degree));
            v.toggle(i);
        }
        v
    }

    pub fn bits_to_combination(&self, v: &crate::linf2::BitVec) -> PartitionCombination {
        assert_eq!(v.len(), self.len(), "width mismatch");
        PartitionCombination::from_terms(v.iter_ones().map(|i| self.parts[i].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// p(n) by the pentagonal number recurrence -- an oracle independent of
    /// the enumeration above.
    fn partition_count(n: usize) -> u64 {
        let mut table = vec![0u64; n + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut sum: i64 = 0;
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * table[i - g1] as i64;
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * table[i - g2] as i64;
                }
                k += 1;
            }
            table[i] = sum as u64;
        }
        table[n]
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        for n in 0..=20u32 {
            assert_eq!(
                enumerate_partitions(n, false).len() as u64,
                partition_count(n as usize),
                "p({n}) mismatch"
            );
        }
    }

    #[test]
    fn empty_partition_cases() {
        assert_eq!(enumerate_partitions(0, true), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(0, false), vec![Partition::empty()]);
    }

    #[test]
    fn nondyadic_of_four() {
        let got = enumerate_partitions(4, true);
        assert_eq!(
            got,
            vec![Partition::new(vec![4]), Partition::new(vec![2, 2])]
        );
    }

    /// Independent brute force: filter the full list by the part predicate and
    /// compare as sets, then check the canonical order is strictly increasing.
    #[test]
    fn nondyadic_of_ten_matches_bruteforce() {
        let got = enumerate_partitions(10, true);
        let expected: BTreeSet<Partition> = enumerate_partitions(10, false)
            .into_iter()
            .filter(|p| p.parts().iter().all(|&q| ![1, 3, 7].contains(&q)))
            .collect();
        assert_eq!(got.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(got.windows(2).all(|w| w[0] < w[1]), "order not canonical");
        assert!(got.contains(&Partition::new(vec![5, 5])));
        assert!(got.contains(&Partition::new(vec![4, 4, 2])));
        assert!(got.contains(&Partition::new(vec![2, 2, 2, 2, 2])));
    }

    #[test]
    fn canonical_order_is_graded_reverse_lex() {
        assert!(Partition::new(vec![4]) < Partition::new(vec![2, 2]));
        assert!(Partition::new(vec![3]) < Partition::new(vec![4]));
        assert!(Partition::new(vec![5, 5]) < Partition::new(vec![5, 4, 1]));
    }

    #[test]
    fn concat_examples() {
        let p = Partition::new(vec![2, 2]).concat(&Partition::new(vec![5, 5]));
        assert_eq!(p, Partition::new(vec![5, 5, 2, 2]));
        assert_eq!(
            Partition::new(vec![2]).concat(&Partition::empty()),
            Partition::new(vec![2])
        );
        assert_eq!(
            Partition::new(vec![4]).concat(&Partition::new(vec![4])),
            Partition::new(vec![4, 4])
        );
    }

    #[test]
    fn concat_commutative_associative() {
        let parts = enumerate_partitions(6, false);
        for a in &parts {
            for b in &parts {
                assert_eq!(a.concat(b), b.concat(a));
                for c in parts.iter().take(3) {
                    assert_eq!(a.concat(b).concat(c), a.concat(&b.concat(c)));
                }
            }
        }
    }

    #[test]
    fn square_examples() {
        assert_eq!(
            PartitionCombination::single(Partition::new(vec![5])).square(),
            PartitionCombination::single(Partition::new(vec![5, 5]))
        );
        assert_eq!(PartitionCombination::zero().square(), PartitionCombination::zero());
        let c = PartitionCombination::from_terms([
            Partition::new(vec![2]),
            Partition::new(vec![4]),
        ]);
        assert_eq!(
            c.square(),
            PartitionCombination::from_terms([
                Partition::new(vec![2, 2]),
                Partition::new(vec![4, 4]),
            ])
        );
    }

    #[test]
    fn square_is_additive() {
        let parts = enumerate_partitions(5, false);
        // All 2^7 combinations of degree-5 partitions.
        for mask in 0..(1u32 << parts.len()) {
            let c = PartitionCombination::from_terms(
                parts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| p.clone()),
            );
            for single in &parts {
                let s = PartitionCombination::single(single.clone());
                assert_eq!(c.add(&s).square(), c.square().add(&s.square()));
            }
        }
    }

    #[test]
    fn characteristic_two_toggle() {
        let mut c = PartitionCombination::zero();
        c.toggle(Partition::new(vec![2, 2]));
        c.toggle(Partition::new(vec![2, 2]));
        assert!(c.is_zero());
    }

    #[test]
    fn perfect_square_detection() {
        assert!(Partition::new(vec![5, 5]).is_perfect_square());
        assert!(Partition::new(vec![2, 2, 2, 2]).is_perfect_square());
        assert!(!Partition::new(vec![5, 5, 4]).is_perfect_square());
        assert!(Partition::empty().is_perfect_square());
    }

    #[test]
    fn index_round_trip() {
        let idx = PartitionIndex::nondyadic(10);
        let c = PartitionCombination::from_terms([
            Partition::new(vec![5, 5]),
            Partition::new(vec![4, 4, 2]),
        ]);
        let bits = idx.combination_to_bits(&c);
        assert_eq!(idx.bits_to_combination(&bits), c);
    }
}
