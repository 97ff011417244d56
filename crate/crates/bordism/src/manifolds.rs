//! Stiefel-Whitney numbers of disjoint unions of products of real projective
//! spaces and Dold manifolds, and the identification of their bordism classes
//! in the partition basis.
//!
//! Everything reduces to atoms. For a single RP(n) or P(m,n) the cohomology
//! ring is tiny, so all Stiefel-Whitney numbers are computed directly by
//! truncated multiplication. The numbers of an atom convert, through the
//! inverse Kostka matrix, into the coordinates of its class with respect to
//! the monomial-symmetric-function dual basis; in those coordinates the class
//! of a product is the concatenation product of the factors' classes, and the
//! class of a disjoint union is the sum. Restricting the coordinates to
//! non-dyadic partitions gives the class in Thom's basis, and pairing back
//! through the Kostka matrix recovers any Stiefel-Whitney number of the full
//! expression without ever multiplying in the large product ring.

use crate::f2poly::{F2Monomial, F2Polynomial, Var};
use crate::linf2::BitVec;
use crate::partitions::{Partition, PartitionCombination, PartitionIndex};
use crate::symm::TransitionStore;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    /// Real projective space RP(n), dimension n.
    RP(u32),
    /// Dold manifold P(m, n) = (S^m x CP^n)/involution, dimension m + 2n.
    Dold { m: u32, n: u32 },
}

impl Atom {
    pub fn dim(&self) -> u32 {
        match *self {
            Atom::RP(n) => n,
            Atom::Dold { m, n } => m + 2 * n,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::RP(n) => write!(f, "RP{n}"),
            Atom::Dold { m, n } => write!(f, "P({m},{n})"),
        }
    }
}

/// The i-dimensional Dold manifold P(2^r - 1, s*2^r), where i + 1 = 2^r(2s+1).
/// Only defined for odd non-dyadic i (s >= 1).
pub fn dold(i: u32) -> Result<Atom, String> {
    if i % 2 == 0 {
        return Err(format!("D{i}: index must be odd"));
    }
    let mut r = 0u32;
    let mut odd = i + 1;
    while odd % 2 == 0 {
        odd /= 2;
        r += 1;
    }
    let s = (odd - 1) / 2;
    if s == 0 {
        return Err(format!("D{i}: index must not be one less than a power of 2"));
    }
    Ok(Atom::Dold {
        m: (1 << r) - 1,
        n: s << r,
    })
}

/// A product of atoms (the empty product is a point).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductManifold {
    pub atoms: Vec<Atom>,
}

impl ProductManifold {
    pub fn new(mut atoms: Vec<Atom>) -> Self {
        atoms.sort();
        ProductManifold { atoms }
    }

    pub fn dim(&self) -> u32 {
        self.atoms.iter().map(Atom::dim).sum()
    }
}

impl fmt::Display for ProductManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "pt");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.atoms.len() {
            let mut j = i;
            while j < self.atoms.len() && self.atoms[j] == self.atoms[i] {
                j += 1;
            }
            if !first {
                write!(f, " x ")?;
            }
            first = false;
            write!(f, "{}", self.atoms[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// A disjoint union of equidimensional products.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ManifoldExpression {
    pub summands: Vec<ProductManifold>,
}

impl ManifoldExpression {
    pub fn new(summands: Vec<ProductManifold>) -> Result<Self, String> {
        if let Some(first) = summands.first() {
            let d = first.dim();
            for s in &summands {
                if s.dim() != d {
                    return Err(format!(
                        "summand {s} has dimension {}, expected {d}",
                        s.dim()
                    ));
                }
            }
        }
        Ok(ManifoldExpression { summands })
    }

    pub fn dim(&self) -> u32 {
        self.summands.first().map_or(0, ProductManifold::dim)
    }
}

impl fmt::Display for ManifoldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Truncated-polynomial model of the cohomology of one product of atoms.
/// Factor k contributes variable family k+1 (family 0 is reserved for the
/// Stiefel-Whitney classes themselves).
pub struct CohomologyModel {
    pub dim: u32,
    pub rules: HashMap<Var, u32>,
    /// Total Stiefel-Whitney class, truncated.
    pub total: F2Polynomial,
    /// The top cell: product of the factors' top monomials.
    pub top: F2Monomial,
}

impl CohomologyModel {
    pub fn build(product: &ProductManifold) -> CohomologyModel {
        let mut rules = HashMap::new();
        let mut total = F2Polynomial::one();
        let mut top_factors: Vec<(Var, u32)> = Vec::new();
        for (k, atom) in product.atoms.iter().enumerate() {
            let fam = (k + 1) as u16;
            let class = match *atom {
                Atom::RP(n) => {
                    let a = Var {
                        family: fam,
                        index: 0,
                        degree: 1,
                    };
                    rules.insert(a, n + 1);
                    if n > 0 {
                        top_factors.push((a, n));
                    }
                    // (1 + a)^(n+1)
                    pow_trunc(&F2Polynomial::one().add(&F2Polynomial::var(a)), n + 1, &rules)
                }
                Atom::Dold { m, n } => {
                    let c = Var {
                        family: fam,
                        index: 0,
                        degree: 1,
                    };
                    let d = Var {
                        family: fam,
                        index: 1,
                        degree: 2,
                    };
                    rules.insert(c, m + 1);
                    rules.insert(d, n + 1);
                    if m > 0 {
                        top_factors.push((c, m));
                    }
                    if n > 0 {
                        top_factors.push((d, n));
                    }
                    // (1 + c)^m (1 + c + d)^(n+1)
                    let base1 = F2Polynomial::one().add(&F2Polynomial::var(c));
                    let base2 = base1.add(&F2Polynomial::var(d));
                    pow_trunc(&base1, m, &rules)
                        .mul(&pow_trunc(&base2, n + 1, &rules))
                        .truncate(&rules)
                }
            };
            total = total.mul(&class).truncate(&rules);
        }
        CohomologyModel {
            dim: product.dim(),
            rules,
            total,
            top: F2Monomial::from_factors(top_factors),
        }
    }

    /// Stiefel-Whitney class w_i of this product.
    pub fn sw_class(&self, i: u32) -> F2Polynomial {
        self.total.graded_component(i)
    }

    /// Total class of the stable normal bundle: the inverse of the tangent
    /// total class in the truncated ring.
    pub fn normal_total(&self) -> F2Polynomial {
        let t = self.total.add(&F2Polynomial::one());
        let mut inv = F2Polynomial::one();
        let mut term = F2Polynomial::one();
        loop {
            term = term.mul(&t).truncate(&self.rules);
            if term.is_zero() {
                return inv;
            }
            inv.add_assign(&term);
        }
    }

    /// Coefficient of the top cell in a (truncated) class.
    pub fn top_coefficient(&self, p: &F2Polynomial) -> bool {
        p.contains(&self.top)
    }

    fn evaluate_monomial_in(&self, mono: &F2Monomial, total: &F2Polynomial) -> bool {
        let mut acc = F2Polynomial::one();
        for &(v, e) in mono.factors() {
            let class = total.graded_component(v.degree);
            for _ in 0..e {
                acc = acc.mul(&class).truncate(&self.rules);
                if acc.is_zero() {
                    return false;
                }
            }
        }
        self.top_coefficient(&acc)
    }

    /// Evaluates a monomial in the tangent classes w_i against the
    /// fundamental class.
    pub fn evaluate_w_monomial(&self, mono: &F2Monomial) -> bool {
        self.evaluate_monomial_in(mono, &self.total)
    }

    /// The same number for the stable normal bundle's classes.
    pub fn evaluate_normal_monomial(&self, mono: &F2Monomial) -> bool {
        self.evaluate_monomial_in(mono, &self.normal_total())
    }
}

fn pow_trunc(base: &F2Polynomial, e: u32, rules: &HashMap<Var, u32>) -> F2Polynomial {
    let mut acc = F2Polynomial::one();
    let mut sq = base.truncate(rules);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq).truncate(rules);
        }
        sq = sq.square().truncate(rules);
        e >>= 1;
    }
    acc
}

/// A Stiefel-Whitney number of an expression: evaluated per summand by
/// substituting the product's classes and reading the top cell, summed mod 2.
pub fn sw_number(expr: &ManifoldExpression, mono: &F2Monomial) -> bool {
    assert_eq!(
        mono.degree(),
        expr.dim(),
        "monomial degree {} does not match dimension {}",
        mono.degree(),
        expr.dim()
    );
    let mut acc = false;
    for summand in &expr.summands {
        acc ^= CohomologyModel::build(summand).evaluate_w_monomial(mono);
    }
    acc
}

/// Which bundle a dual class refers to. The Pontryagin-Thom pairing reads
/// numbers of the stable normal bundle, so `Normal` coordinates are the ones
/// whose non-dyadic part is the Thom-basis class; `Tangent` coordinates
/// encode ordinary Stiefel-Whitney numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bundle {
    Tangent,
    Normal,
}

/// Class of a single product in the coordinates dual to the monomial
/// symmetric functions (all partitions of its dimension, not just non-dyadic
/// ones). These coordinates multiply by concatenation across product factors
/// and add over disjoint unions.
pub fn dual_class(
    product: &ProductManifold,
    bundle: Bundle,
    store: &TransitionStore,
) -> PartitionCombination {
    let mut acc = PartitionCombination::one();
    for atom in &product.atoms {
        acc = acc.mul(&atom_dual_class(atom, bundle, store));
    }
    acc
}

fn atom_dual_class(atom: &Atom, bundle: Bundle, store: &TransitionStore) -> PartitionCombination {
    let n = atom.dim();
    if n == 0 {
        return PartitionCombination::one();
    }
    let model = CohomologyModel::build(&ProductManifold {
        atoms: vec![*atom],
    });
    let total = match bundle {
        Bundle::Tangent => model.total.clone(),
        Bundle::Normal => model.normal_total(),
    };
    let trans = store.get(n);
    let index = trans.index();
    // All characteristic numbers of the atom for the chosen bundle.
    let mut numbers = BitVec::zeros(index.len());
    for (i, mu) in index.partitions().iter().enumerate() {
        if model.evaluate_monomial_in(&F2Monomial::from_w_partition(mu), &total) {
            numbers.toggle(i);
        }
    }
    // mu-th dual coordinate = <m_mu applied to the bundle, top cell>,
    // obtained from the numbers through the inverse Kostka matrix.
    let mut out = PartitionCombination::zero();
    for lambda in index.partitions() {
        if dot(trans.m_row(lambda), &numbers) {
            out.toggle(lambda.clone());
        }
    }
    out
}

fn dot(a: &BitVec, b: &BitVec) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0u64;
    for (x, y) in a.words().iter().zip(b.words()) {
        acc ^= x & y;
    }
    acc.count_ones() % 2 == 1
}

/// Full dual-coordinate class of an expression (summed over summands).
pub fn dual_class_of_expression(
    expr: &ManifoldExpression,
    bundle: Bundle,
    store: &TransitionStore,
) -> PartitionCombination {
    let mut acc = PartitionCombination::zero();
    for summand in &expr.summands {
        acc.add_assign(&dual_class(summand, bundle, store));
    }
    acc
}

/// Class in Thom's partition basis: the non-dyadic part of the normal-bundle
/// dual class.
pub fn thom_class(expr: &ManifoldExpression, store: &TransitionStore) -> PartitionCombination {
    PartitionCombination::from_terms(
        dual_class_of_expression(expr, Bundle::Normal, store)
            .terms()
            .filter(|p| p.is_nondyadic())
            .cloned(),
    )
}

/// A characteristic number recovered from a dual class: the e-to-m row of
/// the monomial pairs against the dual coordinates. Agrees with direct
/// evaluation (see tests) but costs one dot product instead of a large ring
/// computation.
pub fn number_from_dual_class(
    class: &PartitionCombination,
    index: &PartitionIndex,
    store: &TransitionStore,
    mu: &Partition,
) -> bool {
    let bits = index.combination_to_bits(class);
    dot(store.get(index.degree()).e_row(mu), &bits)
}

/// True iff the i-dimensional Dold manifold is orientable (w_1 = 0).
pub fn orientability_check(i: u32) -> Result<bool, String> {
    let atom = dold(i)?;
    let model = CohomologyModel::build(&ProductManifold { atoms: vec![atom] });
    Ok(model.sw_class(1).is_zero())
}

/// One row of a representative table: a named class and a claimed manifold.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub label: String,
    pub expected: PartitionCombination,
    pub manifold: ManifoldExpression,
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub label: String,
    pub pass: bool,
    pub computed: PartitionCombination,
    pub expected: PartitionCombination,
}

/// Report of the checks on a dimension-24 expression claimed to realize the
/// lowest-degree spin class that is not the square of an orientable manifold.
#[derive(Clone, Debug)]
pub struct Milnor24Report {
    /// The five monomials whose numbers must equal 1, with results.
    pub listed_numbers: Vec<(Partition, bool)>,
    /// Partitions containing a part 1 or 2 whose number came out nonzero
    /// (must be empty: such numbers vanish on spin classes).
    pub nonvanishing_w1w2: Vec<Partition>,
    pub computed_class: PartitionCombination,
    pub expected_class: PartitionCombination,
}

impl Milnor24Report {
    pub fn pass(&self) -> bool {
        self.listed_numbers.iter().all(|(_, ok)| *ok)
            && self.nonvanishing_w1w2.is_empty()
            && self.computed_class == self.expected_class
    }
}

pub fn verify_milnor24(
    expr: &ManifoldExpression,
    expected_class: &PartitionCombination,
    store: &TransitionStore,
) -> Milnor24Report {
    assert_eq!(expr.dim(), 24, "expression must be 24-dimensional");
    let index = PartitionIndex::all(24);
    let tangent = dual_class_of_expression(expr, Bundle::Tangent, store);
    let listed = [
        vec![7, 7, 6, 4],
        vec![6, 6, 6, 6],
        vec![4, 4, 4, 4, 4, 4],
        vec![6, 6, 4, 4, 4],
        vec![8, 8, 4, 4],
    ];
    let listed_numbers = listed
        .into_iter()
        .map(|parts| {
            let mu = Partition::new(parts);
            let ok = number_from_dual_class(&tangent, &index, store, &mu);
            (mu, ok)
        })
        .collect();
    let mut nonvanishing_w1w2 = Vec::new();
    for mu in index.partitions() {
        if mu.parts().iter().any(|&p| p == 1 || p == 2)
            && number_from_dual_class(&tangent, &index, store, mu)
        {
            nonvanishing_w1w2.push(mu.clone());
        }
    }
    Milnor24Report {
        listed_numbers,
        nonvanishing_w1w2,
        computed_class: thom_class(expr, store),
        expected_class: expected_class.clone(),
    }
}

/// Checks that each listed manifold represents the stated class.
pub fn verify_table(rows: &[TableRow], store: &TransitionStore) -> Vec<RowResult> {
    rows.iter()
        .map(|row| {
            let computed = thom_class(&row.manifold, store);
            RowResult {
                label: row.label.clone(),
                pass: computed == row.expected,
                computed,
                expected: row.expected.clone(),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Expression grammar: sum := product ("+" product)*;
// product := factor ("x" factor)*; factor := atom ("^" int)?;
// atom := "RP" int | "D" int | "P(" int "," int ")".
// ---------------------------------------------------------------------------

pub fn parse_expression(input: &str) -> Result<ManifoldExpression, String> {
    let mut p = Parser {
        input: input.as_bytes(),
        pos: 0,
    };
    let expr = p.sum()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(format!("unexpected input at position {}", p.pos));
    }
    expr
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), String> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!(
                "expected '{}' at position {}",
                ch as char, self.pos
            ))
        }
    }

    fn integer(&mut self) -> Result<u32, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected integer at position {start}"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("integer too large at position {start}"))
    }

    fn atom(&mut self) -> Result<Atom, String> {
        self.skip_ws();
        let here = self.pos;
        match self.peek() {
            Some(b'R') => {
                if self.input[self.pos..].starts_with(b"RP") {
                    self.pos += 2;
                    Ok(Atom::RP(self.integer()?))
                } else {
                    Err(format!("expected 'RP' at position {here}"))
                }
            }
            Some(b'D') => {
                self.pos += 1;
                let i = self.integer()?;
                dold(i).map_err(|e| format!("{e} (position {here})"))
            }
            Some(b'P') => {
                self.pos += 1;
                self.expect(b'(')?;
                let m = self.integer()?;
                self.expect(b',')?;
                let n = self.integer()?;
                self.expect(b')')?;
                Ok(Atom::Dold { m, n })
            }
            _ => Err(format!("expected manifold atom at position {here}")),
        }
    }

    fn factor(&mut self, atoms: &mut Vec<Atom>) -> Result<(), String> {
        let a = self.atom()?;
        let mut reps = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            reps = self.integer()?;
        }
        for _ in 0..reps {
            atoms.push(a);
        }
        Ok(())
    }

    fn product(&mut self) -> Result<ProductManifold, String> {
        let mut atoms = Vec::new();
        self.factor(&mut atoms)?;
        while self.peek() == Some(b'x') {
            self.pos += 1;
            self.factor(&mut atoms)?;
        }
        Ok(ProductManifold::new(atoms))
    }

    fn sum(&mut self) -> Result<Result<ManifoldExpression, String>, String> {
        let mut summands = vec![self.product()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            summands.push(self.product()?);
        }
        Ok(ManifoldExpression::new(summands))
    }
}
