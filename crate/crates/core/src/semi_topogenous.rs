//! Semi-topogenous orders on the powerset of a finite space.
//!
//! A relation `⊏` on subsets satisfies the four axioms
//!
//! * `∅ ⊏ ∅` and `X ⊏ X`,
//! * `v ⊏ w ⇒ v ⊆ w`,
//! * `u ⊆ v ⊏ w ⇒ u ⊏ w`,
//! * `u ⊏ v ⊆ w ⇒ u ⊏ w`,
//!
//! and generates the topology when `⋃{o : o ⊏ u}` is the open kernel of
//! every `u`.

use thiserror::Error;

use crate::filters::is_filter;
use crate::finite_space::{FiniteTopSpace, Subset};
use crate::poset::{ElemSet, FinitePoset};
use crate::topology::{Mode, PosetSpace};

/// Largest space whose full powerset relation is stored.
pub const MAX_POINTS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiTopogenousError {
    #[error("space has {0} points; at most {MAX_POINTS} are supported")]
    TooManyPoints(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("order condition fails at p = {p}, q = {q}, r = {r}{}", if *.only_reflexive { " (only reflexive instances fail)" } else { "" })]
    ConditionFailed {
        p: String,
        q: String,
        r: String,
        only_reflexive: bool,
    },
}

/// A relation on all subsets of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetOrder {
    space: FiniteTopSpace,
    // rows[v] has bit w set iff v ⊏ w
    rows: Vec<u64>,
}

impl SubsetOrder {
    pub fn new(
        space: FiniteTopSpace,
        rel: impl Fn(Subset, Subset) -> bool,
    ) -> Result<Self, SemiTopogenousError> {
        let n = space.len();
        if n > MAX_POINTS {
            return Err(SemiTopogenousError::TooManyPoints(n));
        }
        let size = 1usize << n;
        let rows = (0..size)
            .map(|v| {
                (0..size)
                    .filter(|&w| rel(Subset(v as u64), Subset(w as u64)))
                    .fold(0u64, |acc, w| acc | (1 << w))
            })
            .collect();
        Ok(Self { space, rows })
    }

    pub fn from_pairs(space: FiniteTopSpace, pairs: &[(Subset, Subset)]) -> Result<Self, SemiTopogenousError> {
        Self::new(space, |v, w| pairs.contains(&(v, w)))
    }

    pub fn space(&self) -> &FiniteTopSpace {
        &self.space
    }

    /// `v ⊏ w`
    pub fn relates(&self, v: Subset, w: Subset) -> bool {
        self.rows[v.0 as usize] & (1 << w.0) != 0
    }

    pub fn set(&mut self, v: Subset, w: Subset, related: bool) {
        if related {
            self.rows[v.0 as usize] |= 1 << w.0;
        } else {
            self.rows[v.0 as usize] &= !(1 << w.0);
        }
    }

    /// Related pairs, `v` then `w` in canonical subset order.
    pub fn pairs(&self) -> Vec<(Subset, Subset)> {
        let mut subsets: Vec<Subset> = Subset::all(self.space.len()).collect();
        subsets.sort_by(Subset::canonical_cmp);
        let mut out = Vec::new();
        for &v in &subsets {
            for &w in &subsets {
                if self.relates(v, w) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// `⋃{o : o ⊏ u}`
    pub fn kernel(&self, u: Subset) -> Subset {
        Subset::all(self.space.len())
            .filter(|&o| self.relates(o, u))
            .fold(Subset::EMPTY, Subset::union)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axioms_ok: bool,
    pub generates: bool,
    /// First few violations, one line each.
    pub violations: Vec<String>,
}

const MAX_VIOLATIONS: usize = 10;

pub fn check_axioms_and_generation(order: &SubsetOrder) -> AxiomReport {
    let space = order.space();
    let n = space.len();
    let full = space.full();
    let fmt = |s: Subset| space.format_subset(s);
    let mut violations = Vec::new();
    let mut axioms_ok = true;
    let mut note = |ok: &mut bool, line: String| {
        *ok = false;
        if violations.len() < MAX_VIOLATIONS {
            violations.push(line);
        }
    };
    if !order.relates(Subset::EMPTY, Subset::EMPTY) {
        note(&mut axioms_ok, "∅ ⊏ ∅ is missing".into());
    }
    if !order.relates(full, full) {
        note(&mut axioms_ok, "X ⊏ X is missing".into());
    }
    let all: Vec<Subset> = Subset::all(n).collect();
    for &v in &all {
        for &w in &all {
            if !order.relates(v, w) {
                continue;
            }
            if !v.is_subset(w) {
                note(&mut axioms_ok, format!("{} ⊏ {} but not ⊆", fmt(v), fmt(w)));
            }
            for &x in &all {
                if x.is_subset(v) && !order.relates(x, w) {
                    note(&mut axioms_ok, format!("{} ⊆ {} ⊏ {} but not {} ⊏ {}", fmt(x), fmt(v), fmt(w), fmt(x), fmt(w)));
                }
                if w.is_subset(x) && !order.relates(v, x) {
                    note(&mut axioms_ok, format!("{} ⊏ {} ⊆ {} but not {} ⊏ {}", fmt(v), fmt(w), fmt(x), fmt(v), fmt(x)));
                }
            }
        }
    }
    let mut generates = true;
    for &u in &all {
        let kernel = order.kernel(u);
        if kernel != space.interior(u) {
            note(
                &mut generates,
                format!("⋃{{o ⊏ {}}} = {} but the open kernel is {}", fmt(u), fmt(kernel), fmt(space.interior(u))),
            );
        }
    }
    AxiomReport {
        axioms_ok,
        generates,
        violations,
    }
}

/// `v ⊏ w` iff some open `o` has `v ⊆ o ⊆ w`.
pub fn interval_order(space: &FiniteTopSpace) -> Result<SubsetOrder, SemiTopogenousError> {
    let opens = space.opens().to_vec();
    SubsetOrder::new(space.clone(), |v, w| {
        opens.iter().any(|&o| v.is_subset(o) && o.is_subset(w))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub complete: bool,
    /// Number of set-filters that meet the order.
    pub meeting_filters: usize,
    /// Least member of a meeting filter without a common point.
    pub witness: Option<Subset>,
}

/// A set-filter on a finite space is `{u : u ⊇ m}` for its least member
/// `m ≠ ∅`, so filters are enumerated by `m`.
pub fn completeness_check(order: &SubsetOrder) -> CompletenessReport {
    let n = order.space().len();
    let mut bases: Vec<Subset> = Subset::all(n).filter(|m| !m.is_empty()).collect();
    bases.sort_by(Subset::canonical_cmp);
    let mut meeting_filters = 0;
    let mut witness = None;
    for m in bases {
        let members: Vec<Subset> = Subset::all(n).filter(|u| m.is_subset(*u)).collect();
        let meets = members
            .iter()
            .all(|&w| members.iter().any(|&v| order.relates(v, w)));
        if !meets {
            continue;
        }
        meeting_filters += 1;
        let common = (0..n).any(|x| members.iter().all(|u| u.contains(x)));
        if !common && witness.is_none() {
            witness = Some(m);
        }
    }
    CompletenessReport {
        complete: witness.is_none(),
        meeting_filters,
        witness,
    }
}

/// The poset of nonempty opens ordered by `⊏`, and the map `x ↦ U_x`.
#[derive(Debug, Clone)]
pub struct OrderPoset {
    pub poset: FinitePoset,
    /// The open behind each element.
    pub opens: Vec<Subset>,
    /// `U_x = {p : {x} ⊏ p}` for each point.
    pub filters: Vec<ElemSet>,
    /// `φ(x)` as an index into the points of `MF(P)`.
    pub phi: Vec<Option<usize>>,
    pub bijective: bool,
    /// `x ∈ U ⟺ {x} ⊏ U ⟺ U ∈ U_x ⟺ φ(x) ∈ N_U` for all points and opens.
    pub equivalences_hold: bool,
    /// Every maximal filter on `P` meets `⊏`.
    pub maximal_filters_meet: bool,
}

impl OrderPoset {
    pub fn ok(&self) -> bool {
        self.bijective && self.equivalences_hold && self.maximal_filters_meet
    }
}

pub fn mf_poset_from_order(order: &SubsetOrder) -> Result<OrderPoset, SemiTopogenousError> {
    let space = order.space();
    if !space.is_t1() {
        return Err(SemiTopogenousError::HypothesisFailed("the space is not T1".into()));
    }
    let axioms = check_axioms_and_generation(order);
    if !axioms.axioms_ok {
        return Err(SemiTopogenousError::HypothesisFailed("the relation is not a semi-topogenous order".into()));
    }
    if !axioms.generates {
        return Err(SemiTopogenousError::HypothesisFailed("the relation does not generate the topology".into()));
    }
    if !completeness_check(order).complete {
        return Err(SemiTopogenousError::HypothesisFailed("the space is not complete for the relation".into()));
    }
    let opens: Vec<Subset> = space.nonempty_opens().collect();
    let names: Vec<String> = opens.iter().map(|&o| space.format_subset(o)).collect();
    let poset = FinitePoset::from_relation(&format!("opens({})", space.name()), names, |a, b| {
        a == b || order.relates(opens[a], opens[b])
    })
    .map_err(|e| SemiTopogenousError::HypothesisFailed(format!("⊏ does not order the opens: {e}")))?;

    let filters: Vec<ElemSet> = (0..space.len())
        .map(|x| {
            (0..opens.len())
                .filter(|&p| order.relates(Subset::singleton(x), opens[p]))
                .collect()
        })
        .collect();
    let mf = PosetSpace::new(poset.clone(), Mode::Mf);
    let phi: Vec<Option<usize>> = filters
        .iter()
        .map(|u| is_filter(&poset, u).then(|| mf.find_point(u)).flatten())
        .collect();
    let mut hit: Vec<usize> = phi.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    let bijective = phi.iter().all(Option::is_some) && hit.len() == phi.len() && hit.len() == mf.len();

    let equivalences_hold = (0..space.len()).all(|x| {
        (0..opens.len()).all(|p| {
            let a = opens[p].contains(x);
            let b = order.relates(Subset::singleton(x), opens[p]);
            let c = filters[x].contains(&p);
            let d = phi[x].is_some_and(|i| mf.basic_open(p).contains(&i));
            a == b && b == c && c == d
        })
    });

    let maximal_filters_meet = mf.points().iter().all(|v| {
        v.members().iter().all(|&w| {
            v.members()
                .iter()
                .any(|&u| order.relates(opens[u], opens[w]))
        })
    });

    Ok(OrderPoset {
        poset,
        opens,
        filters,
        phi,
        bijective,
        equivalences_hold,
        maximal_filters_meet,
    })
}

/// Violations of `p ≺ q ∧ N_q ⊆ N_r ⇒ p ≺ r`, as element triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionScan {
    pub failures: Vec<(usize, usize, usize)>,
}

impl ConditionScan {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    /// Every failure has `r = p`.
    pub fn only_reflexive(&self) -> bool {
        !self.failures.is_empty() && self.failures.iter().all(|&(p, _, r)| p == r)
    }
}

/// Scans all triples against `p ≺ q ∧ N_q ⊆ N_r ⇒ p ≺ r`, reflexive cases included.
pub fn condition_one_scan(poset: &FinitePoset) -> ConditionScan {
    let space = PosetSpace::new(poset.clone(), Mode::Mf);
    let nbhd: Vec<_> = (0..poset.len()).map(|p| space.basic_open(p)).collect();
    let mut failures = Vec::new();
    for (p, q) in poset.strict_pairs() {
        for r in 0..poset.len() {
            if nbhd[q].is_subset(&nbhd[r]) && !poset.lt(p, r) {
                failures.push((p, q, r));
            }
        }
    }
    ConditionScan { failures }
}

#[derive(Debug, Clone)]
pub struct PosetOrder {
    pub order: SubsetOrder,
    pub axioms: AxiomReport,
    pub completeness: CompletenessReport,
}

impl PosetOrder {
    pub fn ok(&self) -> bool {
        self.axioms.axioms_ok && self.axioms.generates && self.completeness.complete
    }
}

/// The space `MF(P)` as a finite topological space, points named `↑m`.
pub fn mf_top_space(poset: &FinitePoset) -> Result<(FiniteTopSpace, Vec<Subset>), SemiTopogenousError> {
    let mf = PosetSpace::new(poset.clone(), Mode::Mf);
    if mf.len() > MAX_POINTS {
        return Err(SemiTopogenousError::TooManyPoints(mf.len()));
    }
    let nbhd: Vec<Subset> = (0..poset.len())
        .map(|p| mf.basic_open(p).into_iter().collect())
        .collect();
    let points = (0..mf.len()).map(|i| mf.point_name(i)).collect();
    let space = FiniteTopSpace::from_subbasis(&format!("MF({})", poset.name()), points, &nbhd)
        .expect("point indices are in range");
    Ok((space, nbhd))
}

/// `v ⊏ w` iff `v = ∅`, `w = X`, some open atom sits between them, or
/// `v ⊆ N_p`, `p ≺ q`, `N_q ⊆ w` for some `p, q`.
pub fn order_from_poset(poset: &FinitePoset) -> Result<PosetOrder, SemiTopogenousError> {
    let scan = condition_one_scan(poset);
    let witness = scan
        .failures
        .iter()
        .find(|&&(p, _, r)| p != r)
        .or(scan.failures.first());
    if let Some(&(p, q, r)) = witness {
        return Err(SemiTopogenousError::ConditionFailed {
            p: poset.element(p).to_string(),
            q: poset.element(q).to_string(),
            r: poset.element(r).to_string(),
            only_reflexive: scan.only_reflexive(),
        });
    }
    let (space, nbhd) = mf_top_space(poset)?;
    let full = space.full();
    let atoms = space.open_atoms();
    let strict = poset.strict_pairs();
    let order = SubsetOrder::new(space, |v, w| {
        v.is_empty()
            || w == full
            || atoms.iter().any(|&u| v.is_subset(u) && u.is_subset(w))
            || strict
                .iter()
                .any(|&(p, q)| v.is_subset(nbhd[p]) && nbhd[q].is_subset(w))
    })?;
    let axioms = check_axioms_and_generation(&order);
    let completeness = completeness_check(&order);
    Ok(PosetOrder {
        order,
        axioms,
        completeness,
    })
}
