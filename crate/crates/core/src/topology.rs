//! Poset spaces: the MF and UF topologies on a finite poset.
//!
//! Points are filters, basic opens are the sets `N_p` of points containing
//! `p`. On a finite poset every filter is principal, so the MF and UF point
//! sets coincide and the topology is discrete; the checks here still evaluate
//! the definitions directly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::filters::{enumerate_filters, Filter, FilterKind};
use crate::poset::{ElemSet, FinitePoset};

/// A set of point indices of one space.
pub type PointSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("seed set is not a basis: {0}")]
    NotABasis(String),
    #[error("set {0} is not open")]
    NotOpen(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Mf,
    Uf,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mf" => Ok(Self::Mf),
            "uf" => Ok(Self::Uf),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mf => "mf",
            Self::Uf => "uf",
        })
    }
}

#[derive(Debug, Clone)]
pub struct PosetSpace {
    poset: FinitePoset,
    mode: Mode,
    points: Vec<Filter>,
}

impl PosetSpace {
    pub fn new(poset: FinitePoset, mode: Mode) -> Self {
        let kind = match mode {
            Mode::Mf => FilterKind::Maximal,
            Mode::Uf => FilterKind::Unbounded,
        };
        let points = enumerate_filters(&poset, kind);
        Self {
            poset,
            mode,
            points,
        }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn points(&self) -> &[Filter] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Filter {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn whole(&self) -> PointSet {
        (0..self.len()).collect()
    }

    /// Index of the point with exactly these members.
    pub fn find_point(&self, members: &ElemSet) -> Option<usize> {
        self.points.iter().position(|f| f.members() == members)
    }

    /// `N_p`
    pub fn basic_open(&self, p: usize) -> PointSet {
        (0..self.len())
            .filter(|&i| self.points[i].contains(p))
            .collect()
    }

    pub fn basic_open_id(&self, id: &str) -> Result<PointSet, TopologyError> {
        let p = self
            .poset
            .index_of(id)
            .map_err(|_| TopologyError::UnknownElement(id.to_string()))?;
        Ok(self.basic_open(p))
    }

    /// Union of the basic opens of `generators`.
    pub fn open_generated_by(&self, generators: &ElemSet) -> PointSet {
        generators
            .iter()
            .flat_map(|&p| self.basic_open(p))
            .collect()
    }

    /// Union of all basic opens inside `set`.
    pub fn interior(&self, set: &PointSet) -> PointSet {
        (0..self.poset.len())
            .map(|p| self.basic_open(p))
            .filter(|n| n.is_subset(set))
            .flatten()
            .collect()
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        set.iter().all(|&i| i < self.len()) && self.interior(set) == *set
    }

    pub fn check_open(&self, set: &PointSet) -> Result<(), TopologyError> {
        if let Some(&i) = set.iter().find(|&&i| i >= self.len()) {
            return Err(TopologyError::PointOutOfRange(i));
        }
        if !self.is_open(set) {
            return Err(TopologyError::NotOpen(self.format_points(set)));
        }
        Ok(())
    }

    /// Points print as `↑m`, naming the generator.
    pub fn point_name(&self, i: usize) -> String {
        format!("↑{}", self.poset.element(self.points[i].generator(&self.poset)))
    }

    pub fn format_points(&self, set: &PointSet) -> String {
        let names: Vec<String> = set.iter().map(|&i| self.point_name(i)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationReport {
    pub t0: bool,
    pub t1: bool,
    pub uf_equals_mf: bool,
}

pub fn separation_check(space: &PosetSpace) -> SeparationReport {
    let n = space.len();
    let opens: Vec<PointSet> = (0..space.poset().len())
        .map(|p| space.basic_open(p))
        .collect();
    let mut t0 = true;
    let mut t1 = true;
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let a_not_b = opens.iter().any(|o| o.contains(&a) && !o.contains(&b));
            let b_not_a = opens.iter().any(|o| o.contains(&b) && !o.contains(&a));
            if !a_not_b {
                t1 = false;
            }
            if !a_not_b && !b_not_a {
                t0 = false;
            }
        }
    }
    let uf: BTreeSet<Filter> = enumerate_filters(space.poset(), FilterKind::Unbounded)
        .into_iter()
        .collect();
    let mf: BTreeSet<Filter> = enumerate_filters(space.poset(), FilterKind::Maximal)
        .into_iter()
        .collect();
    SeparationReport {
        t0,
        t1,
        uf_equals_mf: uf == mf,
    }
}

/// Outcome of comparing `MF(P)` with `MF(R)` under `F ↦ F ∩ R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub ok: bool,
    /// For each point of `MF(P)`, the index of its image in `MF(R)` if the
    /// restriction is a maximal filter of `R`.
    pub table: Vec<Option<usize>>,
    pub counterexample: Option<String>,
}

/// Checks that `F ↦ F ∩ R` is a homeomorphism `MF(P) → MF(R)`.
///
/// `subset` holds element indices of `poset`; the subposet carries the
/// restricted order.
pub fn restriction_homeomorphism_check(poset: &FinitePoset, subset: &ElemSet) -> RestrictionReport {
    let big = PosetSpace::new(poset.clone(), Mode::Mf);
    let (sub, embed) = poset.induced(subset);
    let small = PosetSpace::new(sub, Mode::Mf);
    let to_local = |members: &ElemSet| -> ElemSet {
        members
            .iter()
            .filter_map(|p| embed.iter().position(|e| e == p))
            .collect()
    };
    let table: Vec<Option<usize>> = big
        .points()
        .iter()
        .map(|f| small.find_point(&to_local(f.members())))
        .collect();
    let fail = |msg: String| RestrictionReport {
        ok: false,
        table: table.clone(),
        counterexample: Some(msg),
    };
    for (i, image) in table.iter().enumerate() {
        if image.is_none() {
            return fail(format!(
                "{} restricts to a set that is not a maximal filter of the subposet",
                big.point_name(i)
            ));
        }
    }
    let images: Vec<usize> = table.iter().map(|t| t.unwrap()).collect();
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if images[i] == images[j] {
                return fail(format!(
                    "{} and {} have the same restriction",
                    big.point_name(i),
                    big.point_name(j)
                ));
            }
        }
    }
    if let Some(y) = (0..small.len()).find(|y| !images.contains(y)) {
        return fail(format!("{} has no preimage", small.point_name(y)));
    }
    // forward images of basic opens are open, and so are preimages
    for p in 0..poset.len() {
        let image: PointSet = big.basic_open(p).iter().map(|&i| images[i]).collect();
        if !small.is_open(&image) {
            return fail(format!(
                "image of N_{} is not open",
                poset.element(p)
            ));
        }
    }
    for r in 0..small.poset().len() {
        let basic = small.basic_open(r);
        let pre: PointSet = (0..big.len())
            .filter(|&i| basic.contains(&images[i]))
            .collect();
        if !big.is_open(&pre) {
            return fail(format!(
                "preimage of N_{} is not open",
                small.poset().element(r)
            ));
        }
    }
    RestrictionReport {
        ok: true,
        table,
        counterexample: None,
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    /// The saturated element set `R` as indices into the original poset.
    pub subset: ElemSet,
    pub stages: Vec<ElemSet>,
    pub stabilized: bool,
    pub report: RestrictionReport,
}

impl Reduction {
    pub fn subposet(&self, poset: &FinitePoset) -> FinitePoset {
        poset.induced(&self.subset).0
    }
}

/// Checks that `{N_q : q ∈ seed}` is a basis for `MF(P)`: every point of
/// every `N_p` lies in some `N_q ⊆ N_p`.
pub fn is_basis(space: &PosetSpace, seed: &ElemSet) -> Result<(), TopologyError> {
    let seeds: Vec<(usize, PointSet)> = seed.iter().map(|&q| (q, space.basic_open(q))).collect();
    for p in 0..space.poset().len() {
        let np = space.basic_open(p);
        for &x in &np {
            if !seeds.iter().any(|(_, nq)| nq.contains(&x) && nq.is_subset(&np)) {
                return Err(TopologyError::NotABasis(format!(
                    "no seed neighbourhood of {} inside N_{}",
                    space.point_name(x),
                    space.poset().element(p)
                )));
            }
        }
    }
    Ok(())
}

fn nonempty_subsets(items: &[usize]) -> Vec<ElemSet> {
    assert!(items.len() < 24, "subset enumeration too large");
    (1u32..(1u32 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

/// Saturates `seed` so that the restriction to the result is a
/// homeomorphism of maximal-filter spaces.
///
/// Stage `n + 1` adds, for every nonempty `D ⊆ Q_n` lying inside some
/// maximal filter, a set of common lower bounds of `D` whose basic opens
/// cover `⋂_{d ∈ D} N_d`. The cover is chosen greedily in element order.
/// Iteration stops when a stage adds nothing or after `stage_cap` stages.
pub fn reduce_countable_subposet(
    poset: &FinitePoset,
    seed: &ElemSet,
    stage_cap: Option<usize>,
) -> Result<Reduction, TopologyError> {
    if let Some(&p) = seed.iter().find(|&&p| p >= poset.len()) {
        return Err(TopologyError::UnknownElement(format!("#{p}")));
    }
    let space = PosetSpace::new(poset.clone(), Mode::Mf);
    is_basis(&space, seed)?;
    let mut stages = vec![seed.clone()];
    let mut stabilized = false;
    loop {
        if stage_cap.is_some_and(|cap| stages.len() > cap) {
            break;
        }
        let current = stages.last().unwrap().clone();
        let mut ds: BTreeSet<ElemSet> = BTreeSet::new();
        for f in space.points() {
            let inside: Vec<usize> = current.iter().copied().filter(|&q| f.contains(q)).collect();
            ds.extend(nonempty_subsets(&inside));
        }
        let mut next = current.clone();
        for d in &ds {
            let target: PointSet = (0..space.len())
                .filter(|&i| d.iter().all(|&q| space.point(i).contains(q)))
                .collect();
            let mut covered = PointSet::new();
            for e in (0..poset.len()).filter(|&e| d.iter().all(|&q| poset.le(e, q))) {
                if covered.is_superset(&target) {
                    break;
                }
                let ne = space.basic_open(e);
                if ne.iter().any(|x| !covered.contains(x)) {
                    covered.extend(ne);
                    next.insert(e);
                }
            }
        }
        if next == current {
            stabilized = true;
            break;
        }
        stages.push(next);
    }
    let subset = stages.last().unwrap().clone();
    let report = restriction_homeomorphism_check(poset, &subset);
    Ok(Reduction {
        subset,
        stages,
        stabilized,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::samples::*;

    #[test]
    fn basic_opens_of_vee() {
        let x = PosetSpace::new(vee(), Mode::Mf);
        assert_eq!(x.basic_open_id("c").unwrap(), x.whole());
        assert_eq!(x.format_points(&x.basic_open_id("a").unwrap()), "{↑a}");
        let c = PosetSpace::new(chain2(), Mode::Mf);
        assert_eq!(c.basic_open_id("y").unwrap().len(), 1);
        assert!(matches!(
            c.basic_open_id("q"),
            Err(TopologyError::UnknownElement(_))
        ));
    }

    #[test]
    fn separation_examples() {
        let r = separation_check(&PosetSpace::new(chain2(), Mode::Uf));
        assert_eq!(
            r,
            SeparationReport {
                t0: true,
                t1: true,
                uf_equals_mf: true
            }
        );
        let one = separation_check(&PosetSpace::new(singleton(), Mode::Mf));
        assert!(one.t0 && one.t1);
    }

    #[test]
    fn reduction_examples() {
        let v = vee();
        let seed = v.set_of(&["a", "b"]).unwrap();
        let red = reduce_countable_subposet(&v, &seed, None).unwrap();
        assert!(red.subset.is_superset(&seed));
        assert!(red.report.ok);
        assert!(red.stabilized);

        let c = chain2();
        let red = reduce_countable_subposet(&c, &c.set_of(&["x"]).unwrap(), None).unwrap();
        assert_eq!(red.subset, c.set_of(&["x"]).unwrap());
        assert!(red.report.ok);

        let red = reduce_countable_subposet(&v, &v.all(), None).unwrap();
        assert_eq!(red.subset, v.all());
    }

    #[test]
    fn non_basis_seed_is_rejected() {
        let v = vee();
        let err = reduce_countable_subposet(&v, &v.set_of(&["c"]).unwrap(), None).unwrap_err();
        assert!(matches!(err, TopologyError::NotABasis(_)));
    }

    #[test]
    fn restriction_to_top_of_vee_fails() {
        let v = vee();
        let rep = restriction_homeomorphism_check(&v, &v.set_of(&["c"]).unwrap());
        assert!(!rep.ok);
        assert!(rep.counterexample.is_some());
        assert!(restriction_homeomorphism_check(&v, &v.all()).ok);
    }
}
