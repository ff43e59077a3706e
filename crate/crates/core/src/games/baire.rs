//! Generic descending chains meeting a list of dense sets.
//!
//! Dense open sets are given by selectors: `select(p)` proposes some `q ⪯ p`
//! inside the set, and `admits` tests membership. Starting from `p₀`, step
//! `i` applies selector `i mod k`.

use crate::filters::{extend_to_maximal, ChainFilter, Filter};
use crate::generated::{BinaryTree, FiniteView, GeneratedPoset};
use crate::poset::{ElemSet, FinitePoset};

use super::GameError;

type SelectFn<E> = Box<dyn Fn(&E) -> Option<E>>;
type AdmitFn<E> = Box<dyn Fn(&E) -> bool>;

pub struct DenseSelector<E> {
    pub name: String,
    select: SelectFn<E>,
    admits: AdmitFn<E>,
}

impl<E> DenseSelector<E> {
    pub fn new(
        name: &str,
        select: impl Fn(&E) -> Option<E> + 'static,
        admits: impl Fn(&E) -> bool + 'static,
    ) -> Self {
        Self {
            name: name.to_string(),
            select: Box::new(select),
            admits: Box::new(admits),
        }
    }

    pub fn select(&self, p: &E) -> Option<E> {
        (self.select)(p)
    }

    pub fn admits(&self, p: &E) -> bool {
        (self.admits)(p)
    }
}

impl<E> std::fmt::Debug for DenseSelector<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DenseSelector").field("name", &self.name).finish()
    }
}

/// Builds `p₀ ⪰ p₁ ⪰ … ⪰ p_rounds` with `p_{i+1}` in the set of selector
/// `i mod k`.
pub fn baire_generic_filter<G: GeneratedPoset>(
    poset: &G,
    selectors: &[DenseSelector<G::Elem>],
    start: G::Elem,
    rounds: usize,
) -> Result<ChainFilter<G::Elem>, GameError> {
    if selectors.is_empty() && rounds > 0 {
        return Err(GameError::InvalidSetup("no dense sets supplied".into()));
    }
    let mut chain = ChainFilter::new(poset, vec![start]).expect("one-element chain");
    for i in 0..rounds {
        let sel = &selectors[i % selectors.len()];
        let p = chain.last().expect("chain is nonempty").clone();
        let failed = || GameError::SelectorFailed {
            index: i,
            element: poset.encode(&p),
        };
        let q = sel.select(&p).ok_or_else(failed)?;
        if !poset.leq(&q, &p) || !sel.admits(&q) {
            return Err(failed());
        }
        chain.push(poset, q).map_err(|_| failed())?;
    }
    Ok(chain)
}

/// Every element has something below it in `set`.
pub fn is_dense(poset: &FinitePoset, set: &ElemSet) -> bool {
    (0..poset.len()).all(|p| set.iter().any(|&q| poset.le(q, p)))
}

/// Selector for a finite dense set: the first element of `set` below `p`.
pub fn finite_dense_selector(poset: &FinitePoset, name: &str, set: ElemSet) -> DenseSelector<usize> {
    let select_poset = poset.clone();
    let select_set = set.clone();
    DenseSelector::new(
        name,
        move |&p| select_set.iter().copied().find(|&q| select_poset.le(q, p)),
        move |q| set.contains(q),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGeneric {
    pub chain: Vec<usize>,
    pub maximal: Filter,
    /// Indices of dense sets visited by the chain.
    pub visited: Vec<usize>,
    /// The maximal filter meets every visited dense set.
    pub meets_all: bool,
}

/// Runs the chain construction over finite dense sets and extends the
/// generated filter to a maximal one.
pub fn finite_generic_maximal(
    poset: &FinitePoset,
    dense: &[ElemSet],
    start: usize,
    rounds: usize,
) -> Result<FiniteGeneric, GameError> {
    let selectors: Vec<DenseSelector<usize>> = dense
        .iter()
        .enumerate()
        .map(|(i, d)| finite_dense_selector(poset, &format!("D{i}"), d.clone()))
        .collect();
    let view = FiniteView(poset);
    let chain = baire_generic_filter(&view, &selectors, start, rounds)?;
    let last = *chain.last().expect("chain is nonempty");
    let maximal = extend_to_maximal(poset, &poset.up_set(last)).expect("principal upsets are filters");
    let mut visited: Vec<usize> = (0..rounds).map(|i| i % dense.len().max(1)).collect();
    visited.sort_unstable();
    visited.dedup();
    let meets_all = visited
        .iter()
        .all(|&i| dense[i].iter().any(|&q| maximal.contains(q)));
    Ok(FiniteGeneric {
        chain: chain.chain().to_vec(),
        maximal,
        visited,
        meets_all,
    })
}

/// `D_i` = strings of length at least `i + 1`; the selector pads with zeros
/// and always adds at least one bit.
pub fn bintree_length_selectors(count: usize) -> Vec<DenseSelector<Vec<bool>>> {
    (0..count)
        .map(|i| {
            DenseSelector::new(
                &format!("len>={}", i + 1),
                move |p: &Vec<bool>| {
                    let mut q = p.clone();
                    q.push(false);
                    while q.len() < i + 1 {
                        q.push(false);
                    }
                    Some(q)
                },
                move |q: &Vec<bool>| q.len() > i,
            )
        })
        .collect()
}

/// Convenience wrapper for the binary tree.
pub fn bintree_generic_chain(rounds: usize) -> Result<ChainFilter<Vec<bool>>, GameError> {
    baire_generic_filter(&BinaryTree, &bintree_length_selectors(rounds), Vec::new(), rounds)
}
