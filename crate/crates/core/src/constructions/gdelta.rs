//! G_δ and open subspaces of poset spaces.
//!
//! Sequences of opens are finite lists read as eventually constant: `U_k`
//! (resp. `G_k`) repeats forever, so `⋂ U_i` is the intersection of the list.

use std::cmp::Ordering;
use std::fmt;

use crate::filters::{enumerate_filters, is_filter, is_unbounded, upward_closure, Filter, FilterKind};
use crate::poset::{ElemSet, FinitePoset};
use crate::topology::{Mode, PointSet, PosetSpace};

use super::ConstructionError;

fn check_opens(space: &PosetSpace, opens: &[PointSet]) -> Result<(), ConstructionError> {
    for u in opens {
        if let Some(&i) = u.iter().find(|&&i| i >= space.len()) {
            return Err(ConstructionError::PointOutOfRange(i));
        }
        if !space.is_open(u) {
            return Err(ConstructionError::NotOpen(space.format_points(u)));
        }
    }
    Ok(())
}

fn intersect_all(space: &PosetSpace, opens: &[PointSet]) -> PointSet {
    opens
        .iter()
        .fold(space.whole(), |acc, u| acc.intersection(u).copied().collect())
}

/// The poset `Q` of stage/element pairs whose maximal filters are the
/// points of `MF(P) ∩ ⋂ U_i`.
#[derive(Debug, Clone)]
pub struct GdeltaMf {
    pub poset: FinitePoset,
    /// `(n, p)` for each element of `Q`.
    pub pairs: Vec<(usize, usize)>,
    /// The top stage `k`; stages run over `0..=k`.
    pub top_stage: usize,
    /// `⋂ U_i` as points of `MF(P)`.
    pub target: PointSet,
    pub empty_intersection: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GdeltaMfReport {
    /// For each point of the target set, the matching point of `MF(Q)`.
    pub table: Vec<(usize, Option<usize>)>,
    pub bijective: bool,
    pub opens_correspond: bool,
    pub failure: Option<String>,
}

impl GdeltaMfReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.opens_correspond
    }
}

/// Builds `Q` for `MF(P) ∩ ⋂ U_i`.
///
/// `⟨n, p⟩ ∈ Q` when `N_p ⊆ U_1 ∩ … ∩ U_n` and `N_p` meets `⋂ U_i`. The
/// strict order is `⟨n, p⟩ ≺ ⟨n', p'⟩` when `p ⪯ p'` and either `n > n'` or
/// both stages equal the top stage `k`. Without the meeting requirement and
/// the top-stage clause, minimal pairs `⟨n, p⟩` with `N_p` outside the target
/// would give spurious maximal filters.
pub fn gdelta_mf_poset(
    poset: &FinitePoset,
    opens: &[PointSet],
) -> Result<GdeltaMf, ConstructionError> {
    let space = PosetSpace::new(poset.clone(), Mode::Mf);
    check_opens(&space, opens)?;
    let k = opens.len();
    let target = intersect_all(&space, opens);
    let mut pairs = Vec::new();
    for n in 0..=k {
        let prefix = intersect_all(&space, &opens[..n]);
        for p in 0..poset.len() {
            let np = space.basic_open(p);
            if np.is_subset(&prefix) && !np.is_disjoint(&target) {
                pairs.push((n, p));
            }
        }
    }
    let names: Vec<String> = pairs
        .iter()
        .map(|&(n, p)| format!("<{n},{}>", poset.element(p)))
        .collect();
    let q = FinitePoset::from_relation(&format!("{}|gdelta", poset.name()), names, |a, b| {
        let (n, p) = pairs[a];
        let (m, r) = pairs[b];
        (n > m || (n == k && m == k)) && poset.le(p, r)
    })
    .expect("stage order is antisymmetric");
    Ok(GdeltaMf {
        poset: q,
        pairs,
        top_stage: k,
        empty_intersection: target.is_empty(),
        target,
    })
}

impl GdeltaMf {
    /// Checks the bijection `F ↦ {⟨n, p⟩ : p ∈ F}` from the target set onto
    /// `MF(Q)` and the correspondence `N_⟨n,p⟩ ↔ N_p ∩ ⋂ U_i`.
    pub fn verify(&self, original: &FinitePoset) -> GdeltaMfReport {
        let big = PosetSpace::new(original.clone(), Mode::Mf);
        let q = PosetSpace::new(self.poset.clone(), Mode::Mf);
        let table: Vec<(usize, Option<usize>)> = self
            .target
            .iter()
            .map(|&x| {
                let f = big.point(x);
                let members: ElemSet = (0..self.pairs.len())
                    .filter(|&i| f.contains(self.pairs[i].1))
                    .collect();
                (x, q.find_point(&members))
            })
            .collect();
        let mut failure = None;
        let images: Vec<usize> = table.iter().filter_map(|(_, y)| *y).collect();
        if let Some((x, _)) = table.iter().find(|(_, y)| y.is_none()) {
            failure = Some(format!("{} has no image in MF(Q)", big.point_name(*x)));
        }
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if failure.is_none() && sorted.len() != images.len() {
            failure = Some("two target points share an image".to_string());
        }
        if failure.is_none() && sorted.len() != q.len() {
            let orphan = (0..q.len()).find(|y| !sorted.contains(y)).unwrap();
            failure = Some(format!(
                "maximal filter {} of Q has no preimage",
                self.poset.format_set(q.point(orphan).members())
            ));
        }
        let bijective = failure.is_none();
        let opens_correspond = bijective
            && (0..self.pairs.len()).all(|e| {
                let basic = q.basic_open(e);
                let p = self.pairs[e].1;
                table
                    .iter()
                    .all(|&(x, y)| basic.contains(&y.unwrap()) == big.point(x).contains(p))
            });
        if bijective && !opens_correspond {
            failure = Some("basic opens do not correspond".to_string());
        }
        GdeltaMfReport {
            table,
            bijective,
            opens_correspond,
            failure,
        }
    }
}

/// Restriction of a UF space to an open set `U`: the subposet of all `r`
/// with `N_r ⊆ U`.
#[derive(Debug, Clone)]
pub struct OpenSubspace {
    pub subset: ElemSet,
    pub poset: FinitePoset,
    pub embed: Vec<usize>,
    /// For each point of `U`, its image in `UF(R)`.
    pub table: Vec<(usize, Option<usize>)>,
    pub bijective: bool,
    pub opens_correspond: bool,
}

pub fn open_subspace_uf(
    poset: &FinitePoset,
    open: &PointSet,
) -> Result<OpenSubspace, ConstructionError> {
    let space = PosetSpace::new(poset.clone(), Mode::Uf);
    check_opens(&space, std::slice::from_ref(open))?;
    let subset: ElemSet = (0..poset.len())
        .filter(|&r| space.basic_open(r).is_subset(open))
        .collect();
    let (sub, embed) = poset.induced(&subset);
    let small = PosetSpace::new(sub.clone(), Mode::Uf);
    let table: Vec<(usize, Option<usize>)> = open
        .iter()
        .map(|&x| {
            let local: ElemSet = embed
                .iter()
                .enumerate()
                .filter(|(_, &p)| space.point(x).contains(p))
                .map(|(i, _)| i)
                .collect();
            (x, small.find_point(&local))
        })
        .collect();
    let mut images: Vec<usize> = table.iter().filter_map(|(_, y)| *y).collect();
    let complete = images.len() == table.len();
    images.sort_unstable();
    images.dedup();
    let bijective = complete && images.len() == table.len() && images.len() == small.len();
    let opens_correspond = bijective
        && (0..sub.len()).all(|r| {
            let basic = small.basic_open(r);
            table
                .iter()
                .all(|&(x, y)| basic.contains(&y.unwrap()) == space.point(x).contains(embed[r]))
        });
    Ok(OpenSubspace {
        subset,
        poset: sub,
        embed,
        table,
        bijective,
        opens_correspond,
    })
}

/// `g(p)`: a stage number or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rank {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => a.cmp(b),
            (Rank::Finite(_), Rank::Infinite) => Ordering::Less,
            (Rank::Infinite, Rank::Finite(_)) => Ordering::Greater,
            (Rank::Infinite, Rank::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Infinite => f.write_str("∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    /// Each point of `UF(P) ∩ G` restricts to an unbounded filter of `R`.
    pub filters_restrict: bool,
    /// A filter of `R` whose ranks have a finite supremum is bounded in `R`.
    pub finite_rank_bounded: bool,
    /// A filter of `R` bounded in `P` is bounded in `R`.
    pub bounded_stays_bounded: bool,
    /// Unbounded filters of `R` are unbounded filters of `P`.
    pub unbounded_lift: bool,
    /// `UF(R)` equals `UF(P) ∩ G` as a family of sets.
    pub same_points: bool,
    pub failures: Vec<String>,
}

impl ClaimReport {
    pub fn ok(&self) -> bool {
        self.filters_restrict && self.finite_rank_bounded && self.bounded_stays_bounded && self.unbounded_lift && self.same_points
    }
}

/// The reordered subposet `(R, ⪯_R)` for a UF G_δ subspace.
#[derive(Debug, Clone)]
pub struct GdeltaUf {
    /// Elements of `R` as indices into the original poset.
    pub subset: ElemSet,
    pub embed: Vec<usize>,
    /// `(R, ⪯_R)`, element names kept.
    pub poset: FinitePoset,
    /// `g` on every element of the original poset.
    pub rank: Vec<Rank>,
    /// `UF(P) ∩ G`.
    pub target: PointSet,
}

/// Builds `(R, ⪯_R)` from a descending list of opens `G_1 ⊇ … ⊇ G_k`.
///
/// `G_0` is the whole space, so `g(p) = max{n ≤ k : N_p ⊆ G_n}` and
/// `g(p) = ∞` exactly when `N_p ⊆ G_k`.
pub fn gdelta_uf_poset(
    poset: &FinitePoset,
    opens: &[PointSet],
) -> Result<GdeltaUf, ConstructionError> {
    let space = PosetSpace::new(poset.clone(), Mode::Uf);
    check_opens(&space, opens)?;
    for i in 1..opens.len() {
        if !opens[i].is_subset(&opens[i - 1]) {
            return Err(ConstructionError::NotDescending(i));
        }
    }
    let k = opens.len();
    let g_set = |n: usize| -> PointSet {
        if n == 0 {
            space.whole()
        } else {
            opens[n - 1].clone()
        }
    };
    let target = g_set(k);
    let rank: Vec<Rank> = (0..poset.len())
        .map(|p| {
            let np = space.basic_open(p);
            if np.is_subset(&target) {
                Rank::Infinite
            } else {
                let n = (0..=k).rev().find(|&n| np.is_subset(&g_set(n))).unwrap_or(0);
                Rank::Finite(n)
            }
        })
        .collect();
    let subset: ElemSet = target
        .iter()
        .flat_map(|&x| space.point(x).members().iter().copied())
        .collect();
    let embed: Vec<usize> = subset.iter().copied().collect();
    let names: Vec<String> = embed.iter().map(|&p| poset.element(p).to_string()).collect();
    let r = FinitePoset::from_relation(&format!("{}|gdelta-uf", poset.name()), names, |a, b| {
        let (p, q) = (embed[a], embed[b]);
        poset.lt(p, q)
            && (rank[q] < rank[p] || (rank[p] == Rank::Infinite && rank[q] == Rank::Infinite))
    })
    .expect("rank order is a strict order");
    Ok(GdeltaUf {
        subset,
        embed,
        poset: r,
        rank,
        target,
    })
}

impl GdeltaUf {
    fn to_local(&self, members: &ElemSet) -> Option<ElemSet> {
        members
            .iter()
            .map(|p| self.embed.iter().position(|e| e == p))
            .collect()
    }

    fn to_global(&self, members: &ElemSet) -> ElemSet {
        members.iter().map(|&i| self.embed[i]).collect()
    }

    fn sup_rank(&self, members: &ElemSet) -> Rank {
        members
            .iter()
            .map(|&i| self.rank[self.embed[i]])
            .max()
            .unwrap_or(Rank::Finite(0))
    }

    /// Evaluates the four properties by enumeration over all filters of `R` and
    /// all points of `UF(P) ∩ G`.
    pub fn verify_claims(&self, original: &FinitePoset) -> ClaimReport {
        let space = PosetSpace::new(original.clone(), Mode::Uf);
        let r = &self.poset;
        let mut failures = Vec::new();

        let mut filters_restrict = true;
        for &x in &self.target {
            let f = space.point(x);
            let ok = self
                .to_local(f.members())
                .is_some_and(|local| is_filter(r, &local) && is_unbounded(r, &local));
            if !ok {
                filters_restrict = false;
                failures.push(format!(
                    "{} is not an unbounded filter of R",
                    original.format_set(f.members())
                ));
            }
        }

        let r_filters: Vec<Filter> = enumerate_filters(r, FilterKind::All);
        let mut finite_rank_bounded = true;
        let mut bounded_stays_bounded = true;
        for f in &r_filters {
            let local = f.members();
            let bounded_in_r = !is_unbounded(r, local);
            if self.sup_rank(local) != Rank::Infinite && !bounded_in_r {
                finite_rank_bounded = false;
                failures.push(format!(
                    "{} has finite rank supremum but is unbounded in R",
                    r.format_set(local)
                ));
            }
            let global = self.to_global(local);
            if is_filter(original, &global) && !is_unbounded(original, &global) && !bounded_in_r {
                bounded_stays_bounded = false;
                failures.push(format!(
                    "{} is bounded in P but not in R",
                    r.format_set(local)
                ));
            }
        }

        let mut unbounded_lift = true;
        for f in enumerate_filters(r, FilterKind::Unbounded) {
            let global = self.to_global(f.members());
            let closed = upward_closure(original, &global).expect("indices in range");
            if closed != global || !is_filter(original, &global) || !is_unbounded(original, &global) {
                unbounded_lift = false;
                failures.push(format!(
                    "{} is not an unbounded filter of P",
                    r.format_set(f.members())
                ));
            }
        }

        let mut uf_r: Vec<ElemSet> = enumerate_filters(r, FilterKind::Unbounded)
            .iter()
            .map(|f| self.to_global(f.members()))
            .collect();
        let mut uf_g: Vec<ElemSet> = self
            .target
            .iter()
            .map(|&x| space.point(x).members().clone())
            .collect();
        uf_r.sort();
        uf_g.sort();
        let same_points = uf_r == uf_g;
        if !same_points {
            failures.push("UF(R) differs from UF(P) ∩ G".to_string());
        }
        ClaimReport {
            filters_restrict,
            finite_rank_bounded,
            bounded_stays_bounded,
            unbounded_lift,
            same_points,
            failures,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::samples::*;

    fn open(space: &PosetSpace, ids: &[&str]) -> PointSet {
        space.open_generated_by(&space.poset().set_of(ids).unwrap())
    }

    #[test]
    fn mf_vee_with_one_open() {
        let v = vee();
        let x = PosetSpace::new(v.clone(), Mode::Mf);
        let q = gdelta_mf_poset(&v, &[open(&x, &["a"])]).unwrap();
        let report = q.verify(&v);
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.table.len(), 1);
        assert_eq!(x.point_name(report.table[0].0), "↑a");
    }

    #[test]
    fn mf_whole_space_and_empty_intersection() {
        let v = vee();
        let x = PosetSpace::new(v.clone(), Mode::Mf);
        let q = gdelta_mf_poset(&v, &[x.whole()]).unwrap();
        let report = q.verify(&v);
        assert!(report.ok());
        assert_eq!(report.table.len(), 2);

        let q = gdelta_mf_poset(&v, &[open(&x, &["a"]), open(&x, &["b"])]).unwrap();
        assert!(q.empty_intersection);
        assert_eq!(PosetSpace::new(q.poset.clone(), Mode::Mf).len(), 0);
        assert!(q.verify(&v).ok());
    }

    #[test]
    fn open_subspace_examples() {
        let v = vee();
        let x = PosetSpace::new(v.clone(), Mode::Uf);
        let whole = open_subspace_uf(&v, &x.whole()).unwrap();
        assert_eq!(whole.subset, v.all());
        assert!(whole.bijective && whole.opens_correspond);

        let na = open_subspace_uf(&v, &open(&x, &["a"])).unwrap();
        assert_eq!(na.subset, v.set_of(&["a"]).unwrap());
        assert_eq!(PosetSpace::new(na.poset.clone(), Mode::Uf).len(), 1);
        assert!(na.bijective);

        let empty = open_subspace_uf(&v, &PointSet::new()).unwrap();
        assert!(empty.subset.is_empty());
        assert!(empty.bijective);
    }

    #[test]
    fn uf_vee_with_constant_open() {
        let v = vee();
        let x = PosetSpace::new(v.clone(), Mode::Uf);
        let na = open(&x, &["a"]);
        let g = gdelta_uf_poset(&v, &[na.clone(), na]).unwrap();
        assert_eq!(g.rank[0], Rank::Infinite);
        assert_eq!(g.rank[2], Rank::Finite(0));
        let claims = g.verify_claims(&v);
        assert!(claims.ok(), "{claims:?}");
        let uf = PosetSpace::new(g.poset.clone(), Mode::Uf);
        assert_eq!(uf.len(), 1);
        assert_eq!(g.poset.format_set(uf.point(0).members()), "{a, c}");
    }

    #[test]
    fn uf_whole_space_keeps_points() {
        let v = vee();
        let x = PosetSpace::new(v.clone(), Mode::Uf);
        let g = gdelta_uf_poset(&v, &[x.whole()]).unwrap();
        assert_eq!(g.subset, v.all());
        assert!(g.verify_claims(&v).ok());
    }

    #[test]
    fn uf_rejects_ascending_opens() {
        let v = vee();
        let x = PosetSpace::new(v.clone(), Mode::Uf);
        let err = gdelta_uf_poset(&v, &[open(&x, &["a"]), x.whole()]).unwrap_err();
        assert_eq!(err, ConstructionError::NotDescending(1));
    }

    #[test]
    fn rank_order() {
        assert!(Rank::Finite(3) < Rank::Infinite);
        assert!(Rank::Finite(1) < Rank::Finite(2));
        assert_eq!(Rank::Infinite.to_string(), "∞");
    }
}
