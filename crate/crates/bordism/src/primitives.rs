//! Generators of the image of the spin and spin^c cobordism rings inside the
//! unoriented bordism ring, computed degree by degree in Thom's partition
//! basis, together with 2-torsion detection, rank cross-checking against the
//! frozen tables, and assembly of ring presentations.
//!
//! The degree-n piece of the image is computed dually. The unoriented
//! bordism group in degree n is the dual of the quotient of the degree-n
//! cohomology of MO by its Steenrod decomposables, with the classes P_lambda*U
//! (lambda non-dyadic) descending to a basis of that quotient, dual to Thom's
//! Y_lambda. A bordism class therefore lifts through a quotient spectrum
//! exactly when it annihilates the image of the relation ideal in that
//! quotient. Concretely: a `DualFrame` in degree n holds a solver whose
//! untracked rows span the decomposables Sq^i(m*U), i >= 1, and whose tracked
//! rows are the P_lambda*U; solving expresses any degree-n class by its
//! P-coordinates modulo decomposables, and the image of the spectrum is the
//! simultaneous kernel of the ideal's P-coordinate rows. The 2-torsion part
//! additionally annihilates the Steenrod span of the (Q_0, Q_1)-torsion
//! classes of the quotient module, which detect the torsion-free summands.

use crate::f2poly::{F2Monomial, F2Polynomial, ThomElement};
use crate::linf2::{BitMatrix, BitVec, Subspace, TrackedSolver};
use crate::partitions::{enumerate_partitions, Partition, PartitionCombination, PartitionIndex};
use crate::spectra::{build_presentation, poly_to_bits, DegreeBasis, Spectrum};
use crate::steenrod::{milnor_q, sq_on_thom};
use crate::symm::TransitionStore;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

/// One ring generator of the image, in Thom's partition basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorRecord {
    pub degree: u32,
    pub name: String,
    pub element: PartitionCombination,
    /// True when the generator corresponds to a mod-2 cohomology summand,
    /// i.e. lifts to a 2-torsion (and beta-torsion) generator upstairs.
    pub torsion: bool,
}

impl fmt::Display for GeneratorRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (degree {}{}): {}",
            self.name,
            self.degree,
            if self.torsion { ", torsion" } else { "" },
            self.element
        )
    }
}

/// The degree-n dual coordinate system: expresses any degree-n class of the
/// cohomology of MO by its P_lambda coordinates modulo Steenrod
/// decomposables. Spectrum-independent, so shared across runs.
struct DualFrame {
    solver: TrackedSolver,
}

impl DualFrame {
    fn build(n: u32, store: &TransitionStore) -> DualFrame {
        let tm = store.get(n);
        let all_index = tm.index().clone();
        let nd_index = PartitionIndex::nondyadic(n);
        let mut solver = TrackedSolver::new(all_index.len(), nd_index.len());
        // Decomposables: Sq^i(m*U) for i >= 1 spans A^+ * H^*(MO) in degree n,
        // since longer compositions factor through lower-degree monomials.
        for k in 0..n {
            for mu in enumerate_partitions(k, false) {
                let m = ThomElement::new(F2Polynomial::from_monomial(
                    F2Monomial::from_w_partition(&mu),
                ));
                let sq = sq_on_thom(n - k, &m);
                solver.insert_untracked(poly_to_bits(&sq.poly, &all_index));
            }
        }
        // The P_lambda*U complete the decomposables to all of degree n.
        for lambda in nd_index.partitions() {
            let id = solver.insert_tracked(tm.m_row(lambda).clone());
            assert!(id.is_some(), "P_{lambda} dependent on decomposables");
        }
        DualFrame { solver }
    }

    /// P-coordinates (over the non-dyadic index) of a degree-n class modulo
    /// decomposables.
    fn xi(&self, bits: &BitVec) -> BitVec {
        self.solver
            .solve(bits)
            .expect("class outside the decomposable + P span")
    }
}

/// Shared computation context: the symmetric-function transition cache plus
/// per-degree dual frames.
pub struct Engine {
    store: TransitionStore,
    frames: Mutex<HashMap<u32, Arc<DualFrame>>>,
}

impl Engine {
    pub fn new(store: TransitionStore) -> Engine {
        Engine {
            store,
            frames: Mutex::new(HashMap::new()),
        }
    }

    pub fn store(&self) -> &TransitionStore {
        &self.store
    }

    fn frame(&self, n: u32) -> Arc<DualFrame> {
        if let Some(f) = self.frames.lock().unwrap().get(&n) {
            return f.clone();
        }
        let f = Arc::new(DualFrame::build(n, &self.store));
        self.frames
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(f)
            .clone()
    }
}

/// The Steenrod span of the (Q_0, Q_1)-torsion part of the quotient module,
/// per degree, in quotient coordinates. `fallback` seeds with the full
/// (Q_0, Q_1)-kernel in each degree rather than with torsion monomials only.
fn torsion_submodule(bases: &[DegreeBasis], d: u32, fallback: bool) -> Vec<Subspace> {
    let mut spans: Vec<Subspace> = (0..=d as usize)
        .map(|m| Subspace::new(bases[m].dim()))
        .collect();
    let q_vanishes = |poly: &F2Polynomial, deg: u32| -> bool {
        if poly.is_zero() {
            return true;
        }
        let basis = &bases[deg as usize];
        basis
            .ideal()
            .contains(&poly_to_bits(poly, basis.index()))
    };
    for m in 0..=d {
        let basis = &bases[m as usize];
        if fallback {
            // Kernel of (Q_0, Q_1) on the whole quotient in degree m.
            let q_rows: Vec<BitVec> = basis
                .complement()
                .iter()
                .map(|&mono| {
                    let x = ThomElement::new(F2Polynomial::from_monomial(
                        F2Monomial::from_w_partition(basis.index().get(mono)),
                    ));
                    let q0 = bases[m as usize + 1].normal_form(&milnor_q(0, &x));
                    let q1 = bases[m as usize + 3].normal_form(&milnor_q(1, &x));
                    let mut row = BitVec::zeros(q0.len() + q1.len());
                    for i in q0.iter_ones() {
                        row.toggle(i);
                    }
                    for i in q1.iter_ones() {
                        row.toggle(q0.len() + i);
                    }
                    row
                })
                .collect();
            if !q_rows.is_empty() {
                let out_width = q_rows[0].len();
                let mut transposed = BitMatrix::new(q_rows.len());
                for p in 0..out_width {
                    let mut row = BitVec::zeros(q_rows.len());
                    for (j, q) in q_rows.iter().enumerate() {
                        if q.get(p) {
                            row.toggle(j);
                        }
                    }
                    transposed.push_row(row);
                }
                for v in transposed.kernel_basis() {
                    spans[m as usize].insert(v);
                }
            }
        } else {
            // Monomial seeds: quotient basis monomials killed by Q_0 and Q_1.
            for (pos, &mono) in basis.complement().iter().enumerate() {
                let x = ThomElement::new(F2Polynomial::from_monomial(
                    F2Monomial::from_w_partition(basis.index().get(mono)),
                ));
                if q_vanishes(&milnor_q(0, &x).poly, m + 1)
                    && q_vanishes(&milnor_q(1, &x).poly, m + 3)
                {
                    spans[m as usize]
                        .insert(BitVec::from_indices(basis.dim(), [pos]));
                }
            }
        }
        // Close under Steenrod squares into higher degrees. Degrees are
        // processed in ascending order, so the degree-m basis is final here.
        let snapshot: Vec<BitVec> = spans[m as usize].basis().cloned().collect();
        for v in snapshot {
            let lift = ThomElement::new(basis.lift(&v));
            for i in 1..=(d - m) {
                let sq = sq_on_thom(i, &lift);
                if sq.is_zero() {
                    continue;
                }
                let target = &bases[(m + i) as usize];
                let nf = target.normal_form(&sq);
                if !nf.is_zero() {
                    spans[(m + i) as usize].insert(nf);
                }
            }
        }
    }
    spans
}

/// Annihilator, over the non-dyadic coordinates, of a set of P-coordinate
/// rows: the bordism classes pairing to zero with every row.
fn annihilator(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let mut m = BitMatrix::new(width);
    for r in rows {
        m.push_row(r.clone());
    }
    m.kernel_basis()
}

fn subspace_from(vectors: &[BitVec], width: usize) -> Subspace {
    let mut s = Subspace::new(width);
    for v in vectors {
        s.insert(v.clone());
    }
    s
}

/// Multiplicative span bookkeeping: spans[m] holds all products of one or
/// more recorded generators of total degree m, over the non-dyadic index.
struct ProductSpans {
    spans: Vec<Subspace>,
    indices: Vec<PartitionIndex>,
}

impl ProductSpans {
    fn new(d: u32) -> ProductSpans {
        let indices: Vec<PartitionIndex> =
            (0..=d).map(PartitionIndex::nondyadic).collect();
        let spans = indices.iter().map(|i| Subspace::new(i.len())).collect();
        ProductSpans { spans, indices }
    }

    fn add_generator(&mut self, element: &PartitionCombination, degree: u32) {
        let d = self.spans.len() as u32 - 1;
        // Ascending degree order lets powers of the new generator accumulate.
        for m in degree..=d {
            let mut products: Vec<PartitionCombination> = Vec::new();
            if m == degree {
                products.push(element.clone());
            } else {
                let lower = &self.spans[(m - degree) as usize];
                let lower_index = &self.indices[(m - degree) as usize];
                for b in lower.basis() {
                    products.push(element.mul(&lower_index.bits_to_combination(b)));
                }
            }
            for p in products {
                let bits = self.indices[m as usize].combination_to_bits(&p);
                self.spans[m as usize].insert(bits);
            }
        }
    }

    /// Products of at least two recorded generators in degree n, given the
    /// records found so far (all of degree < n or being processed at n).
    fn decomposables(&self, records: &[GeneratorRecord], n: u32) -> Subspace {
        let mut out = Subspace::new(self.indices[n as usize].len());
        for r in records {
            if r.degree >= n {
                continue;
            }
            let lower = &self.spans[(n - r.degree) as usize];
            let lower_index = &self.indices[(n - r.degree) as usize];
            for b in lower.basis() {
                let p = r.element.mul(&lower_index.bits_to_combination(b));
                out.insert(self.indices[n as usize].combination_to_bits(&p));
            }
        }
        out
    }
}

fn generator_name(degree: u32, element: &PartitionCombination, taken: &mut BTreeMap<String, u32>) -> String {
    let base = if element.len() == 1 {
        let p = element.terms().next().unwrap();
        if p.parts() == [degree] {
            format!("Y_{degree}")
        } else if p.is_perfect_square() {
            format!("Z_{degree}")
        } else {
            format!("T_{degree}")
        }
    } else {
        format!("T_{degree}")
    };
    let count = taken.entry(base.clone()).or_insert(0);
    *count += 1;
    if *count == 1 {
        base
    } else {
        format!("{base}_{count}")
    }
}

/// The inductive driver: computes generators of the image through degree d.
/// With `with_torsion`, runs the (Q_0, Q_1)-seeded pass first in each degree
/// so that torsion generators are found and flagged before the rest.
pub fn compute_records(
    engine: &Engine,
    spectrum: Spectrum,
    d: u32,
    with_torsion: bool,
    fallback: bool,
) -> Vec<GeneratorRecord> {
    if d == 0 {
        return Vec::new();
    }
    // Q_1 raises degree by 3, so the quotient module is built a bit past d.
    let pres = build_presentation(spectrum, d + 3);
    let bases: Vec<DegreeBasis> = (0..=d + 3).map(|m| DegreeBasis::build(&pres, m)).collect();
    let torsion_spans = if with_torsion {
        Some(torsion_submodule(&bases, d, fallback))
    } else {
        None
    };

    let mut records: Vec<GeneratorRecord> = Vec::new();
    let mut prods = ProductSpans::new(d);
    let mut names: BTreeMap<String, u32> = BTreeMap::new();

    for n in 1..=d {
        let nd = PartitionIndex::nondyadic(n);
        if nd.is_empty() {
            continue;
        }
        let frame = engine.frame(n);
        let basis = &bases[n as usize];
        let ideal_rows: Vec<BitVec> =
            basis.ideal().basis().map(|k| frame.xi(k)).collect();
        let image = subspace_from(&annihilator(&ideal_rows, nd.len()), nd.len());

        let mut cur = prods.decomposables(&records, n);

        let mut branches: Vec<(Subspace, bool)> = Vec::new();
        if let Some(spans) = &torsion_spans {
            let mut rows = ideal_rows.clone();
            for v in spans[n as usize].basis() {
                rows.push(frame.xi(&basis.lift_bits(v)));
            }
            branches.push((subspace_from(&annihilator(&rows, nd.len()), nd.len()), true));
        }
        branches.push((image, false));

        for (branch, torsion) in &branches {
            // Prefer single perfect-square partitions as representatives.
            for (i, sigma) in nd.partitions().iter().enumerate() {
                if !sigma.is_perfect_square() {
                    continue;
                }
                let v = BitVec::from_indices(nd.len(), [i]);
                if branch.contains(&v) && !cur.contains(&v) {
                    let element = PartitionCombination::single(sigma.clone());
                    let name = generator_name(n, &element, &mut names);
                    prods.add_generator(&element, n);
                    cur.insert(v);
                    records.push(GeneratorRecord {
                        degree: n,
                        name,
                        element,
                        torsion: *torsion,
                    });
                }
            }
            let rows: Vec<BitVec> = branch.basis().cloned().collect();
            for b in rows {
                if cur.contains(&b) {
                    continue;
                }
                let element = nd.bits_to_combination(&b);
                let name = generator_name(n, &element, &mut names);
                prods.add_generator(&element, n);
                cur.insert(b);
                records.push(GeneratorRecord {
                    degree: n,
                    name,
                    element,
                    torsion: *torsion,
                });
            }
        }
    }
    records
}

/// Image generators with torsion flags left unset.
pub fn compute_image(engine: &Engine, spectrum: Spectrum, d: u32) -> Vec<GeneratorRecord> {
    compute_records(engine, spectrum, d, false, false)
}

/// Image generators with torsion flags set by the (Q_0, Q_1)-seeded pass.
pub fn compute_torsion_flags(
    engine: &Engine,
    spectrum: Spectrum,
    d: u32,
    fallback: bool,
) -> Vec<GeneratorRecord> {
    compute_records(engine, spectrum, d, true, fallback)
}

fn full_spans(records: &[GeneratorRecord], n: u32) -> ProductSpans {
    let mut prods = ProductSpans::new(n);
    for r in records {
        if r.degree <= n {
            prods.add_generator(&r.element, r.degree);
        }
    }
    prods
}

/// The degree-n piece of the image subring: the span of all products of
/// generators of total degree n (degree 0 is the unit line).
pub fn image_subspace(records: &[GeneratorRecord], n: u32) -> Subspace {
    if n == 0 {
        let index = PartitionIndex::nondyadic(0);
        let mut s = Subspace::new(index.len());
        s.insert(index.combination_to_bits(&PartitionCombination::one()));
        return s;
    }
    full_spans(records, n).spans[n as usize].clone()
}

/// The 2-torsion part of the degree-n image: the span of products containing
/// at least one torsion-flagged generator.
pub fn torsion_subspace(records: &[GeneratorRecord], n: u32) -> Subspace {
    let indices: Vec<PartitionIndex> = (0..=n).map(PartitionIndex::nondyadic).collect();
    if n == 0 {
        return Subspace::new(indices[0].len());
    }
    let full = full_spans(records, n);
    let mut tor: Vec<Subspace> = indices.iter().map(|i| Subspace::new(i.len())).collect();
    for m in 1..=n {
        let mut products: Vec<PartitionCombination> = Vec::new();
        for r in records {
            if r.degree > m {
                continue;
            }
            let rest = m - r.degree;
            if r.torsion {
                if rest == 0 {
                    products.push(r.element.clone());
                } else {
                    for b in full.spans[rest as usize].basis() {
                        products.push(
                            r.element.mul(&indices[rest as usize].bits_to_combination(b)),
                        );
                    }
                }
            }
            if rest > 0 {
                let lower: Vec<PartitionCombination> = tor[rest as usize]
                    .basis()
                    .map(|b| indices[rest as usize].bits_to_combination(b))
                    .collect();
                for t in lower {
                    products.push(r.element.mul(&t));
                }
            }
        }
        for p in products {
            let bits = indices[m as usize].combination_to_bits(&p);
            tor[m as usize].insert(bits);
        }
    }
    tor[n as usize].clone()
}

#[derive(Clone, Debug)]
pub struct RankRow {
    pub degree: u32,
    pub computed: usize,
    pub expected: usize,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub rows: Vec<RankRow>,
}

impl RankReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.computed == r.expected)
    }

    pub fn mismatches(&self) -> Vec<&RankRow> {
        self.rows.iter().filter(|r| r.computed != r.expected).collect()
    }
}

/// Compares the computed per-degree torsion dimensions against an expected
/// table. A mismatch signals that the monomial-level torsion seeding was
/// insufficient and the polynomial-level fallback pass is required.
pub fn rank_crosscheck(
    records: &[GeneratorRecord],
    table: &BTreeMap<u32, usize>,
    d: u32,
) -> RankReport {
    let rows = (0..=d)
        .filter_map(|n| {
            table.get(&n).map(|&expected| RankRow {
                degree: n,
                computed: torsion_subspace(records, n).dim(),
                expected,
            })
        })
        .collect();
    RankReport { rows }
}

/// A ring relation in the assembled presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// beta * g = 0 for a torsion generator g.
    BetaKills(String),
    /// 2 * g = 0 for a torsion generator g.
    TwoKills(String),
    /// g^2 equals a polynomial in the square generators; each right-hand
    /// monomial is recorded as the multiset of Z-subscripts (so Z_28*Z_10^2
    /// is the partition (28, 10, 10)).
    Square { name: String, rhs: Vec<Partition> },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::BetaKills(g) => write!(f, "beta*{g} = 0"),
            Relation::TwoKills(g) => write!(f, "2*{g} = 0"),
            Relation::Square { name, rhs } => {
                write!(f, "{name}^2 =")?;
                for (k, mono) in rhs.iter().enumerate() {
                    write!(f, "{}", if k == 0 { " " } else { " + " })?;
                    for (j, (part, mult)) in mono.multiplicities().iter().enumerate() {
                        if j > 0 {
                            write!(f, "*")?;
                        }
                        write!(f, "Z_{part}")?;
                        if *mult > 1 {
                            write!(f, "^{mult}")?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct PresGenerator {
    pub name: String,
    pub degree: u32,
    /// None for the formal Bott class beta, which maps to zero downstairs.
    pub element: Option<PartitionCombination>,
    pub torsion: bool,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub max_degree: u32,
    pub generators: Vec<PresGenerator>,
    pub relations: Vec<Relation>,
}

/// Assembles the presentation report: the computed generators prefixed by the
/// formal degree-2 Bott class, beta- and 2-torsion relations for every
/// torsion generator, and for every sporadic (T-named) generator the
/// re-expression of its Frobenius square as a polynomial in the square
/// generators via the substitution Y_i^2 <-> Z_2i. Squares landing beyond the
/// computed range are emitted with their formal Z-names.
pub fn assemble_presentation(records: &[GeneratorRecord], d: u32) -> Presentation {
    let mut generators = vec![PresGenerator {
        name: "beta".to_string(),
        degree: 2,
        element: None,
        torsion: false,
    }];
    for r in records {
        generators.push(PresGenerator {
            name: r.name.clone(),
            degree: r.degree,
            element: Some(r.element.clone()),
            torsion: r.torsion,
        });
    }
    let mut relations = Vec::new();
    for r in records {
        if r.torsion {
            relations.push(Relation::BetaKills(r.name.clone()));
            relations.push(Relation::TwoKills(r.name.clone()));
        }
    }
    for r in records {
        if !r.name.starts_with("T_") {
            continue;
        }
        let mut rhs: Vec<Partition> = r
            .element
            .terms()
            .map(|lambda| Partition::new(lambda.parts().iter().map(|p| 2 * p).collect()))
            .collect();
        rhs.sort();
        relations.push(Relation::Square {
            name: r.name.clone(),
            rhs,
        });
    }
    Presentation {
        max_degree: d,
        generators,
        relations,
    }
}

/// Whether the square of the i-dimensional Dold manifold lies in the image
/// spanned by the records, and in its torsion part.
pub fn check_dold_membership(
    store: &TransitionStore,
    records: &[GeneratorRecord],
    i: u32,
) -> Result<(bool, bool), String> {
    let atom = crate::manifolds::dold(i)?;
    let expr = crate::manifolds::ManifoldExpression::new(vec![
        crate::manifolds::ProductManifold::new(vec![atom.clone(), atom]),
    ])?;
    let class = crate::manifolds::thom_class(&expr, store);
    let n = 2 * i;
    let index = PartitionIndex::nondyadic(n);
    let bits = index.combination_to_bits(&class);
    let in_image = image_subspace(records, n).contains(&bits);
    let in_torsion = torsion_subspace(records, n).contains(&bits);
    Ok((in_image, in_torsion))
}

/// Serialized form of a run, matching the documented JSON schema.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub spectrum: String,
    pub max_degree: u32,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GeneratorJson {
    pub degree: u32,
    pub name: String,
    pub partitions: Vec<Vec<u32>>,
    pub torsion: bool,
}

impl GeneratorJson {
    pub fn from_record(r: &GeneratorRecord) -> GeneratorJson {
        GeneratorJson {
            degree: r.degree,
            name: r.name.clone(),
            partitions: r
                .element
                .terms()
                .map(|p| p.parts().to_vec())
                .collect(),
            torsion: r.torsion,
        }
    }
}

pub fn run_report(
    spectrum: Spectrum,
    d: u32,
    records: &[GeneratorRecord],
    relations: &[Relation],
) -> RunReport {
    RunReport {
        spectrum: spectrum.to_string(),
        max_degree: d,
        generators: records.iter().map(GeneratorJson::from_record).collect(),
        relations: relations.iter().map(|r| r.to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    fn engine() -> Engine {
        Engine::new(TransitionStore::in_memory())
    }

    fn comb(terms: &[&[u32]]) -> PartitionCombination {
        PartitionCombination::from_terms(
            terms.iter().map(|p| Partition::new(p.to_vec())),
        )
    }

    #[test]
    fn spinc_through_5_has_one_generator() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 5, false);
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].degree, 4);
        assert_eq!(recs[0].element, comb(&[&[2, 2]]));
        assert_eq!(recs[0].name, "Z_4");
        assert!(!recs[0].torsion);
    }

    #[test]
    fn spin_through_10() {
        let e = engine();
        let recs = compute_image(&e, Spectrum::MSpin, 10);
        let summary: Vec<(u32, PartitionCombination)> = recs
            .iter()
            .map(|r| (r.degree, r.element.clone()))
            .collect();
        assert_eq!(
            summary,
            vec![(8, comb(&[&[2, 2, 2, 2]])), (10, comb(&[&[5, 5]]))]
        );
    }

    #[test]
    fn spinc_torsion_flags_through_10() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 10, false);
        let flagged: Vec<&GeneratorRecord> = recs.iter().filter(|r| r.torsion).collect();
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].degree, 10);
        assert_eq!(flagged[0].element, comb(&[&[5, 5]]));
        assert_eq!(flagged[0].name, "Z_10");

        let none = compute_torsion_flags(&e, Spectrum::MSpinC, 9, false);
        assert!(none.iter().all(|r| !r.torsion));
    }

    #[test]
    fn image_subspace_dimensions() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 14, false);
        assert_eq!(image_subspace(&recs, 0).dim(), 1);
        assert_eq!(image_subspace(&recs, 10).dim(), 1);
        let s14 = image_subspace(&recs, 14);
        assert_eq!(s14.dim(), 1);
        let index = PartitionIndex::nondyadic(14);
        assert!(s14.contains(&index.combination_to_bits(&comb(&[&[5, 5, 2, 2]]))));
    }

    #[test]
    fn rank_crosscheck_small() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 14, false);
        let mut table: BTreeMap<u32, usize> = (0..=14).map(|n| (n, 0)).collect();
        table.insert(10, 1);
        table.insert(14, 1);
        let report = rank_crosscheck(&recs, &table, 14);
        assert!(report.pass(), "mismatches: {:?}", report.mismatches());
    }

    #[test]
    fn dold_square_membership() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 10, false);
        assert_eq!(
            check_dold_membership(e.store(), &recs, 5),
            Ok((true, true))
        );
    }

    #[test]
    fn presentation_through_12() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 12, false);
        let pres = assemble_presentation(&recs, 12);
        let names: Vec<&str> = pres.generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["beta", "Z_4", "Z_8", "Z_10", "Z_12"]);
        assert_eq!(
            pres.relations,
            vec![
                Relation::BetaKills("Z_10".to_string()),
                Relation::TwoKills("Z_10".to_string()),
            ]
        );
    }

    #[test]
    fn spin_nests_in_spinc() {
        let e = engine();
        let spin = compute_image(&e, Spectrum::MSpin, 12);
        let spinc = compute_image(&e, Spectrum::MSpinC, 12);
        for n in 0..=12 {
            let big = image_subspace(&spinc, n);
            for b in image_subspace(&spin, n).basis() {
                assert!(big.contains(b), "degree {n} not nested");
            }
        }
    }

    #[test]
    fn deterministic() {
        let e = engine();
        let a = compute_torsion_flags(&e, Spectrum::MSpinC, 12, false);
        let b = compute_torsion_flags(&e, Spectrum::MSpinC, 12, false);
        assert_eq!(a, b);
    }

    #[test]
    fn fallback_agrees_with_monomial_seeding_in_range() {
        let e = engine();
        let a = compute_torsion_flags(&e, Spectrum::MSpinC, 12, false);
        let b = compute_torsion_flags(&e, Spectrum::MSpinC, 12, true);
        for n in 0..=12 {
            assert_eq!(
                torsion_subspace(&a, n).dim(),
                torsion_subspace(&b, n).dim(),
                "degree {n}"
            );
        }
    }

    #[test]
    fn square_relation_matches_doubled_table() {
        let e = engine();
        let recs = compute_torsion_flags(&e, Spectrum::MSpinC, 12, false);
        // No T-generators this low; fabricate one from the frozen element to
        // check the substitution bookkeeping.
        let mut with_t = recs.clone();
        with_t.push(GeneratorRecord {
            degree: 24,
            name: "T_24".to_string(),
            element: tables::t24(),
            torsion: true,
        });
        let pres = assemble_presentation(&with_t, 24);
        let rhs: Vec<Partition> = pres
            .relations
            .iter()
            .find_map(|r| match r {
                Relation::Square { name, rhs } if name == "T_24" => Some(rhs.clone()),
                _ => None,
            })
            .unwrap();
        let mut expected: Vec<Partition> = tables::u48_z_monomials()
            .into_iter()
            .map(Partition::new)
            .collect();
        expected.sort();
        assert_eq!(rhs, expected);
    }
}
