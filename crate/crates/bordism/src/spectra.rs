//! Degreewise presentations of the mod-2 cohomology of the Thom spectra
//! MO, MSO, MSpin^c and MSpin as quotients of F2[w1, w2, ...] * U.
//!
//! The relation ideals: MO has none; MSO kills w1; MSpin^c additionally kills
//! the chain theta_0 = w3, theta_{k+1} = Sq^{2^{k+1}} theta_k (degrees 3, 5,
//! 9, 17, 33, ...); MSpin also kills w2. The ideal is stable under Steenrod
//! operations (each theta generates the next, and the Wu formula keeps w1-
//! and w2-multiples inside), so reducing to a normal form commutes with the
//! Steenrod action taken before or after reduction.
//!
//! A `DegreeBasis` realizes one degree of the quotient: the degree-n
//! monomials (indexed by partitions of n) modulo the row space of all
//! monomial multiples of the ideal generators, with the surviving non-pivot
//! monomials as the canonical quotient basis.

use crate::f2poly::{w, F2Monomial, F2Polynomial, ThomElement};
use crate::linf2::{BitVec, Subspace};
use crate::partitions::PartitionIndex;
use crate::steenrod::sq_on_poly;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Spectrum {
    MO,
    MSO,
    MSpinC,
    MSpin,
}

impl Spectrum {
    pub const ALL: [Spectrum; 4] = [Spectrum::MO, Spectrum::MSO, Spectrum::MSpinC, Spectrum::MSpin];
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Spectrum::MO => "MO",
            Spectrum::MSO => "MSO",
            Spectrum::MSpinC => "MSpin^c",
            Spectrum::MSpin => "MSpin",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Spectrum {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mo" => Ok(Spectrum::MO),
            "mso" => Ok(Spectrum::MSO),
            "mspinc" | "mspin^c" | "mspin-c" => Ok(Spectrum::MSpinC),
            "mspin" => Ok(Spectrum::MSpin),
            other => Err(format!("unknown spectrum '{other}'")),
        }
    }
}

/// The relation ideal of one spectrum, valid through `max_degree`.
#[derive(Clone, Debug)]
pub struct SpectrumPresentation {
    pub spectrum: Spectrum,
    pub max_degree: u32,
    /// (degree, generator), sorted by degree.
    pub generators: Vec<(u32, F2Polynomial)>,
}

/// The theta chain: w3, then repeated squares of doubling index, while the
/// degree stays within `d`.
fn theta_chain(d: u32) -> Vec<(u32, F2Polynomial)> {
    let mut out = Vec::new();
    let mut theta = F2Polynomial::var(w(3));
    let mut degree = 3u32;
    let mut k = 1u32;
    while degree <= d {
        out.push((degree, theta.clone()));
        let step = 1 << k;
        theta = sq_on_poly(step, &theta);
        degree += step;
        k += 1;
    }
    out
}

pub fn build_presentation(spectrum: Spectrum, d: u32) -> SpectrumPresentation {
    let mut generators: Vec<(u32, F2Polynomial)> = Vec::new();
    match spectrum {
        Spectrum::MO => {}
        Spectrum::MSO => {
            if d >= 1 {
                generators.push((1, F2Polynomial::var(w(1))));
            }
        }
        Spectrum::MSpinC | Spectrum::MSpin => {
            if d >= 1 {
                generators.push((1, F2Polynomial::var(w(1))));
            }
            if spectrum == Spectrum::MSpin && d >= 2 {
                generators.push((2, F2Polynomial::var(w(2))));
            }
            generators.extend(theta_chain(d));
        }
    }
    generators.sort_by_key(|(deg, _)| *deg);
    SpectrumPresentation {
        spectrum,
        max_degree: d,
        generators,
    }
}

impl SpectrumPresentation {
    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|(d, _)| *d).collect()
    }
}

/// The degree-n monomial multiples of the ideal generators, as a row space
/// over the degree-n monomial coordinates.
pub fn ideal_subspace(pres: &SpectrumPresentation, n: u32) -> Subspace {
    assert!(n <= pres.max_degree, "degree beyond presentation validity");
    let index = PartitionIndex::all(n);
    let mut space = Subspace::new(index.len());
    for (gd, g) in &pres.generators {
        if *gd > n {
            continue;
        }
        for cof in crate::partitions::enumerate_partitions(n - gd, false) {
            let m = F2Monomial::from_w_partition(&cof);
            space.insert(poly_to_bits(&g.mul_monomial(&m), &index));
        }
    }
    space
}

/// Coordinates of a homogeneous degree-n polynomial over the partition index.
pub fn poly_to_bits(p: &F2Polynomial, index: &PartitionIndex) -> BitVec {
    let mut v = BitVec::zeros(index.len());
    for m in p.monomials() {
        let lambda = m.to_w_partition();
        let i = index
            .index_of(&lambda)
            .unwrap_or_else(|| panic!("monomial {m} has degree != {}", index.degree()));
        v.toggle(i);
    }
    v
}

pub fn bits_to_poly(v: &BitVec, index: &PartitionIndex) -> F2Polynomial {
    F2Polynomial::from_monomials(
        v.iter_ones()
            .map(|i| F2Monomial::from_w_partition(index.get(i))),
    )
}

/// One degree of the quotient module H^n = (degree-n monomials)/(ideal).
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    degree: u32,
    index: Arc<PartitionIndex>,
    reducer: Subspace,
    /// Monomial indices surviving as the canonical quotient basis.
    complement: Vec<usize>,
    comp_pos: HashMap<usize, usize>,
}

impl DegreeBasis {
    pub fn build(pres: &SpectrumPresentation, n: u32) -> DegreeBasis {
        let reducer = ideal_subspace(pres, n);
        let index = Arc::new(PartitionIndex::all(n));
        let complement = reducer.quotient_complement();
        let comp_pos = complement
            .iter()
            .enumerate()
            .map(|(pos, &mono)| (mono, pos))
            .collect();
        DegreeBasis {
            degree: n,
            index,
            reducer,
            complement,
            comp_pos,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn index(&self) -> &Arc<PartitionIndex> {
        &self.index
    }

    /// The ideal in this degree, as a reduced row space over the monomial
    /// coordinates.
    pub fn ideal(&self) -> &Subspace {
        &self.reducer
    }

    /// Dimension of the quotient in this degree.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Monomial indices (into the partition index) of the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Canonical representative: full monomial coordinates supported on the
    /// complement basis only.
    pub fn reduce_bits(&self, v: BitVec) -> BitVec {
        self.reducer.reduce(v)
    }

    pub fn reduce_poly(&self, p: &F2Polynomial) -> F2Polynomial {
        bits_to_poly(&self.reduce_bits(poly_to_bits(p, &self.index)), &self.index)
    }

    /// Quotient coordinates of a reduced full-coordinate vector.
    pub fn quotient_coords(&self, reduced: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.complement.len());
        for i in reduced.iter_ones() {
            let pos = self
                .comp_pos
                .get(&i)
                .expect("vector not reduced to the complement basis");
            out.toggle(*pos);
        }
        out
    }

    /// Normal form of a Thom element: its coordinates in the canonical
    /// complement basis; zero iff the element lies in the ideal span.
    pub fn normal_form(&self, t: &ThomElement) -> BitVec {
        let v = poly_to_bits(&t.poly, &self.index);
        self.quotient_coords(&self.reduce_bits(v))
    }

    /// The canonical polynomial with the given quotient coordinates.
    pub fn lift(&self, coords: &BitVec) -> F2Polynomial {
        assert_eq!(coords.len(), self.complement.len(), "width mismatch");
        F2Polynomial::from_monomials(coords.iter_ones().map(|pos| {
            F2Monomial::from_w_partition(self.index.get(self.complement[pos]))
        }))
    }

    /// Full-coordinate vector of the lift.
    pub fn lift_bits(&self, coords: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.index.len());
        for pos in coords.iter_ones() {
            out.toggle(self.complement[pos]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    #[test]
    fn presentation_degree_lists() {
        assert_eq!(
            build_presentation(Spectrum::MSpinC, 33).generator_degrees(),
            vec![1, 3, 5, 9, 17, 33]
        );
        assert!(build_presentation(Spectrum::MO, 10).generators.is_empty());
        assert_eq!(
            build_presentation(Spectrum::MSpin, 10).generator_degrees(),
            vec![1, 2, 3, 5, 9]
        );
        assert_eq!(
            build_presentation(Spectrum::MSO, 5).generator_degrees(),
            vec![1]
        );
    }

    #[test]
    fn ideal_subspace_examples() {
        let mspinc = build_presentation(Spectrum::MSpinC, 6);
        // Degree 3: all three monomials w3, w1w2, w1^3 are in the ideal.
        let s3 = ideal_subspace(&mspinc, 3);
        assert_eq!(s3.dim(), 3);

        let mo = build_presentation(Spectrum::MO, 6);
        assert_eq!(ideal_subspace(&mo, 4).dim(), 0);

        let mso = build_presentation(Spectrum::MSO, 6);
        let s2 = ideal_subspace(&mso, 2);
        assert_eq!(s2.dim(), 1);
        let idx = PartitionIndex::all(2);
        let w1sq = poly_to_bits(&F2Polynomial::var(w(1)).square(), &idx);
        assert!(s2.contains(&w1sq));
    }

    #[test]
    fn normal_form_examples() {
        let pres = build_presentation(Spectrum::MSpinC, 6);
        let b3 = DegreeBasis::build(&pres, 3);
        assert!(b3
            .normal_form(&ThomElement::new(F2Polynomial::var(w(3))))
            .is_zero());

        let b2 = DegreeBasis::build(&pres, 2);
        assert_eq!(b2.dim(), 1);
        let nf = b2.normal_form(&ThomElement::new(F2Polynomial::var(w(2))));
        assert!(!nf.is_zero());

        let b4 = DegreeBasis::build(&pres, 4);
        assert_eq!(b4.dim(), 2);
        let el = ThomElement::new(
            F2Polynomial::var(w(4)).add(&F2Polynomial::var(w(2)).square()),
        );
        assert_eq!(b4.normal_form(&el).count_ones(), 2);
    }

    /// Quotient dimensions against an independent enumeration oracle: through
    /// degree 6 the spin^c quotient ring is polynomial on classes of degrees
    /// 2, 4 and 6 (w1, w3 and the degree-5 chain relation remove everything
    /// else below degree 7).
    #[test]
    fn mspinc_low_degree_dimensions() {
        let pres = build_presentation(Spectrum::MSpinC, 6);
        let got: Vec<usize> = (0..=6).map(|n| DegreeBasis::build(&pres, n).dim()).collect();

        // Count monomials in generators of degrees {2, 4, 6}.
        fn count(n: u32) -> usize {
            let mut c = 0;
            for a in 0..=n / 2 {
                for b in 0..=(n - 2 * a) / 4 {
                    if (n - 2 * a - 4 * b) % 6 == 0 {
                        c += 1;
                    }
                }
            }
            c
        }
        let oracle: Vec<usize> = (0..=6).map(count).collect();
        assert_eq!(got, oracle);
        assert_eq!(got, vec![1, 0, 1, 0, 2, 0, 3]);
    }

    #[test]
    fn nesting_of_ideals() {
        let d = 10;
        let presentations: Vec<_> = [Spectrum::MO, Spectrum::MSO, Spectrum::MSpinC, Spectrum::MSpin]
            .iter()
            .map(|&s| build_presentation(s, d))
            .collect();
        for n in 0..=d {
            let spaces: Vec<_> = presentations
                .iter()
                .map(|p| ideal_subspace(p, n))
                .collect();
            for pair in spaces.windows(2) {
                for row in pair[0].basis() {
                    assert!(
                        pair[1].contains(row),
                        "nesting fails at degree {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn normal_form_is_linear_and_idempotent() {
        let pres = build_presentation(Spectrum::MSpinC, 8);
        let b = DegreeBasis::build(&pres, 8);
        let p = F2Polynomial::var(w(8)).add(&F2Polynomial::var(w(3)).mul(&F2Polynomial::var(w(5))));
        let q = F2Polynomial::var(w(2)).square().square();
        let nfp = b.normal_form(&ThomElement::new(p.clone()));
        let nfq = b.normal_form(&ThomElement::new(q.clone()));
        let mut sum = nfp.clone();
        sum.xor_assign(&nfq);
        assert_eq!(b.normal_form(&ThomElement::new(p.add(&q))), sum);

        // Reducing a canonical representative is the identity on coordinates.
        let rep = b.lift(&nfp);
        assert_eq!(b.normal_form(&ThomElement::new(rep)), nfp);
    }

    #[test]
    fn reduction_commutes_with_steenrod() {
        // reduce(Sq^i x) = reduce(Sq^i reduce(x)): the ideal is Steenrod-stable.
        let d = 12;
        let pres = build_presentation(Spectrum::MSpinC, d);
        let bases: Vec<_> = (0..=d).map(|n| DegreeBasis::build(&pres, n)).collect();
        for n in 1..=6u32 {
            for lambda in crate::partitions::enumerate_partitions(n, false) {
                let p = F2Polynomial::from_monomial(F2Monomial::from_w_partition(&lambda));
                for i in 1..=4u32 {
                    if n + i > d {
                        continue;
                    }
                    let direct = bases[(n + i) as usize].reduce_poly(&sq_on_poly(i, &p));
                    let reduced_first = bases[(n + i) as usize]
                        .reduce_poly(&sq_on_poly(i, &bases[n as usize].reduce_poly(&p)));
                    assert_eq!(direct, reduced_first, "Sq^{i} on {lambda}");
                }
            }
        }
        let _ = Partition::empty();
    }
}
