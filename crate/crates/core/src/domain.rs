//! Finite dcpos, the way-below relation, and filter completions.
//!
//! Everything is computed from the definitions by brute force over directed
//! subsets. On a finite dcpo every directed set has a maximum, so way-below
//! collapses to the order; that shortcut is only used as a cross-check.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::filters::{enumerate_filters, Filter, FilterKind};
use crate::finite_space::{FiniteTopSpace, Subset};
use crate::poset::{ElemSet, FinitePoset};
use crate::topology::{Mode, PosetSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("directed set {0} has no least upper bound")]
    NotDirectedComplete(String),
}

const MAX_CARRIER: usize = 20;

fn subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    assert!(n <= MAX_CARRIER, "brute force over subsets is limited to {MAX_CARRIER} elements");
    (1u32..(1u32 << n)).map(move |mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
}

/// Nonempty, and every pair has an upper bound inside the set.
pub fn is_directed(poset: &FinitePoset, set: &ElemSet) -> bool {
    !set.is_empty()
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| set.iter().any(|&c| poset.le(a, c) && poset.le(b, c)))
        })
}

pub fn directed_subsets(poset: &FinitePoset) -> Vec<ElemSet> {
    subsets(poset.len()).filter(|s| is_directed(poset, s)).collect()
}

/// Least upper bound, if one exists.
pub fn sup(poset: &FinitePoset, set: &ElemSet) -> Option<usize> {
    let uppers: Vec<usize> = (0..poset.len())
        .filter(|&u| set.iter().all(|&s| poset.le(s, u)))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| poset.le(u, v)))
}

#[derive(Debug, Clone)]
pub struct Dcpo {
    poset: FinitePoset,
    // way_below[q * n + p] iff q ≪ p
    way_below: Vec<bool>,
}

impl Dcpo {
    /// Checks directed completeness and computes `≪` from its definition:
    /// `q ≪ p` iff every directed `I` with `p ⪯ sup I` has some `r ∈ I` with
    /// `q ⪯ r`.
    pub fn new(poset: FinitePoset) -> Result<Self, DomainError> {
        let directed = directed_subsets(&poset);
        let mut sups = Vec::with_capacity(directed.len());
        for d in &directed {
            match sup(&poset, d) {
                Some(s) => sups.push(s),
                None => return Err(DomainError::NotDirectedComplete(poset.format_set(d))),
            }
        }
        let n = poset.len();
        let mut way_below = vec![false; n * n];
        for q in 0..n {
            for p in 0..n {
                way_below[q * n + p] = directed
                    .iter()
                    .zip(&sups)
                    .filter(|(_, &s)| poset.le(p, s))
                    .all(|(d, _)| d.iter().any(|&r| poset.le(q, r)));
            }
        }
        Ok(Self { poset, way_below })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `q ≪ p`
    pub fn way_below(&self, q: usize, p: usize) -> bool {
        self.way_below[q * self.len() + p]
    }

    /// `⇓p`
    pub fn way_below_set(&self, p: usize) -> ElemSet {
        (0..self.len()).filter(|&q| self.way_below(q, p)).collect()
    }

    /// `⇑q`
    pub fn way_above_set(&self, q: usize) -> ElemSet {
        (0..self.len()).filter(|&p| self.way_below(q, p)).collect()
    }

    /// The way-below relation coincides with the order.
    pub fn way_below_equals_order(&self) -> bool {
        (0..self.len()).all(|q| (0..self.len()).all(|p| self.way_below(q, p) == self.poset.le(q, p)))
    }

    pub fn compact_elements(&self) -> ElemSet {
        (0..self.len()).filter(|&p| self.way_below(p, p)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        self.poset.maximal_elements()
    }

    /// `B ∩ ⇓p` is directed with supremum `p` for every `p`.
    pub fn is_basis(&self, basis: &ElemSet) -> bool {
        (0..self.len()).all(|p| {
            let approx: ElemSet = self
                .way_below_set(p)
                .intersection(basis)
                .copied()
                .collect();
            is_directed(&self.poset, &approx) && sup(&self.poset, &approx) == Some(p)
        })
    }

    pub fn classify(&self) -> DcpoClass {
        let all = self.poset.all();
        let is_continuous = (0..self.len()).all(|p| {
            let down = self.way_below_set(p);
            is_directed(&self.poset, &down) && sup(&self.poset, &down) == Some(p)
        });
        let compact = self.compact_elements();
        let is_algebraic = is_continuous && self.is_basis(&compact);
        let mut basis = all.clone();
        if is_continuous {
            for p in all {
                let mut smaller = basis.clone();
                smaller.remove(&p);
                if self.is_basis(&smaller) {
                    basis = smaller;
                }
            }
        }
        DcpoClass {
            is_continuous,
            is_algebraic,
            compact_elements: compact,
            minimal_basis: basis,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcpoClass {
    pub is_continuous: bool,
    pub is_algebraic: bool,
    pub compact_elements: ElemSet,
    /// A basis with no removable element, found greedily in element order.
    pub minimal_basis: ElemSet,
}

/// All filters of a poset ordered by inclusion.
#[derive(Debug, Clone)]
pub struct FilterCompletion {
    pub dcpo: Dcpo,
    /// The filter behind each element of the dcpo.
    pub filters: Vec<Filter>,
    /// Each point of `MF(P)` with its element of the dcpo.
    pub maximal_table: Vec<(usize, usize)>,
    /// Each `p ∈ P` with the element `↑p`.
    pub principal_table: Vec<(usize, usize)>,
    /// The maximal elements of the dcpo are exactly the maximal filters.
    pub maximal_match: bool,
    /// The compact elements are exactly the principal filters.
    pub compact_match: bool,
}

pub fn filter_completion(poset: &FinitePoset) -> FilterCompletion {
    let filters = enumerate_filters(poset, FilterKind::All);
    let names: Vec<String> = filters
        .iter()
        .map(|f| format!("↑{}", poset.element(f.generator(poset))))
        .collect();
    let order = FinitePoset::from_relation(&format!("filters({})", poset.name()), names, |a, b| {
        filters[a].members().is_subset(filters[b].members())
    })
    .expect("inclusion is a partial order");
    let dcpo = Dcpo::new(order).expect("filters of a finite poset form a dcpo");

    let mf = PosetSpace::new(poset.clone(), Mode::Mf);
    let maximal_table: Vec<(usize, usize)> = (0..mf.len())
        .filter_map(|i| {
            filters
                .iter()
                .position(|f| f == mf.point(i))
                .map(|e| (i, e))
        })
        .collect();
    let max_elems: BTreeSet<usize> = dcpo.maximal_elements().into_iter().collect();
    let mapped: BTreeSet<usize> = maximal_table.iter().map(|&(_, e)| e).collect();
    let maximal_match = maximal_table.len() == mf.len() && mapped == max_elems;

    let principal_table: Vec<(usize, usize)> = (0..poset.len())
        .filter_map(|p| {
            let up = Filter::principal(poset, p);
            filters.iter().position(|f| *f == up).map(|e| (p, e))
        })
        .collect();
    let principal: ElemSet = principal_table.iter().map(|&(_, e)| e).collect();
    let compact_match = principal_table.len() == poset.len() && principal == dcpo.compact_elements();

    FilterCompletion {
        dcpo,
        filters,
        maximal_table,
        principal_table,
        maximal_match,
        compact_match,
    }
}

/// Ideals of `P`, as filters of the order dual.
pub fn ideal_completion(poset: &FinitePoset) -> FilterCompletion {
    filter_completion(&poset.dual())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottReport {
    /// Each point of `MF(P)` with its maximal element of the completion.
    pub table: Vec<(usize, usize)>,
    /// `{⇑e ∩ Max}` equals `{N_p}` as families of point sets.
    pub families_match: bool,
    /// The topologies generated by the two families coincide.
    pub topologies_match: bool,
}

impl ScottReport {
    pub fn ok(&self) -> bool {
        self.topologies_match
    }
}

pub fn scott_max_homeomorphism_check(poset: &FinitePoset) -> ScottReport {
    let completion = filter_completion(poset);
    let mf = PosetSpace::new(poset.clone(), Mode::Mf);
    let table = completion.maximal_table.clone();
    let point_of = |e: usize| table.iter().find(|&&(_, d)| d == e).map(|&(i, _)| i);
    let dcpo = &completion.dcpo;

    let scott: BTreeSet<Subset> = (0..dcpo.len())
        .map(|e| {
            dcpo.way_above_set(e)
                .iter()
                .filter_map(|&d| point_of(d))
                .collect()
        })
        .collect();
    let poset_opens: BTreeSet<Subset> = (0..poset.len())
        .map(|p| mf.basic_open(p).into_iter().collect())
        .collect();
    // the empty set stands for basic opens missing every point
    let strip = |fam: &BTreeSet<Subset>| -> Vec<Subset> {
        fam.iter().copied().filter(|s| !s.is_empty()).collect()
    };
    let families_match = strip(&scott) == strip(&poset_opens);

    let points: Vec<String> = (0..mf.len()).map(|i| mf.point_name(i)).collect();
    let scott_top = FiniteTopSpace::from_subbasis("scott", points.clone(), &strip(&scott))
        .expect("point sets in range");
    let poset_top = FiniteTopSpace::from_subbasis("mf", points, &strip(&poset_opens))
        .expect("point sets in range");
    ScottReport {
        table,
        families_match,
        topologies_match: completion.maximal_match && scott_top.opens() == poset_top.opens(),
    }
}
