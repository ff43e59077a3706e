//! Conditions built from finite strong Choquet plays, at bounded depth.
//!
//! A condition is a nonempty basic open `A = S(c)` together with a finite set
//! of plays that follow a fixed strategy for player II. The set is closed
//! under nonempty prefixes ending with a move by II, and `A` lies inside the
//! last open `U(π)` of every play (the empty play has `U(⟨⟩) = X`).
//!
//! `c' ≺ c` when every play `π` of `c` has an extension
//! `π ⌢ ⟨S(c), y, s_II(π ⌢ ⟨S(c), y⟩)⟩` in `c'` for some `y ∈ S(c)`, and
//! `S(c') ⊆ S(c)`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::finite_space::{FiniteTopSpace, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("invalid open set: {0}")]
    InvalidOpenSet(String),
    #[error("play {play} is illegal: {reason}")]
    IllegalPlay { play: usize, reason: String },
    #[error("play {play} is missing a prefix")]
    MissingPrefix { play: usize },
    #[error("the open set is not inside U of play {play}")]
    OpenSetOutsidePlay { play: usize },
    #[error("a condition needs at least one play")]
    NoPlays,
    #[error("conditions belong to different spaces or strategies")]
    MixedSpaces,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("space is not T1")]
    NotT1,
}

/// One round: I plays `v` and `x`, II answers `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Round {
    pub v: Subset,
    pub x: usize,
    pub w: Subset,
}

pub type Play = Vec<Round>;

/// A deterministic strategy for player II on a finite space.
pub trait StrategyII {
    fn name(&self) -> String;
    fn respond(&self, space: &FiniteTopSpace, history: &[Round], v: Subset, x: usize) -> Subset;
}

/// The first basic open in canonical order containing `x` inside `v`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalStrategy;

impl StrategyII for CanonicalStrategy {
    fn name(&self) -> String {
        "canonical".into()
    }

    fn respond(&self, space: &FiniteTopSpace, _history: &[Round], v: Subset, x: usize) -> Subset {
        least_basic_open(space, x, v).expect("some basic open around x lies inside an open v ∋ x")
    }
}

/// Basis used for conditions: every nonempty open, canonical order.
fn least_basic_open(space: &FiniteTopSpace, x: usize, inside: Subset) -> Option<Subset> {
    space
        .nonempty_opens()
        .find(|o| o.contains(x) && o.is_subset(inside))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Condition {
    context: u64,
    a: Subset,
    plays: BTreeSet<Play>,
}

impl Condition {
    /// `S(c)`
    pub fn s(&self) -> Subset {
        self.a
    }

    pub fn plays(&self) -> &BTreeSet<Play> {
        &self.plays
    }

    pub fn depth(&self) -> usize {
        self.plays.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// A finite space, its basis and a strategy for player II.
pub struct ConditionSpace<'a> {
    space: &'a FiniteTopSpace,
    strategy: &'a dyn StrategyII,
    basis: Vec<Subset>,
    fingerprint: u64,
}

impl<'a> ConditionSpace<'a> {
    pub fn new(space: &'a FiniteTopSpace, strategy: &'a dyn StrategyII) -> Self {
        let basis: Vec<Subset> = space.nonempty_opens().collect();
        let mut h = DefaultHasher::new();
        space.points().hash(&mut h);
        space.opens().hash(&mut h);
        strategy.name().hash(&mut h);
        Self {
            space,
            strategy,
            basis,
            fingerprint: h.finish(),
        }
    }

    pub fn space(&self) -> &FiniteTopSpace {
        self.space
    }

    pub fn basis(&self) -> &[Subset] {
        &self.basis
    }

    /// `U(π)`
    pub fn u(&self, play: &[Round]) -> Subset {
        play.last().map_or_else(|| self.space.full(), |r| r.w)
    }

    /// Extends `play` by I's move `(v, x)` and the strategy's answer.
    pub fn extend(&self, play: &[Round], v: Subset, x: usize) -> Play {
        let w = self.strategy.respond(self.space, play, v, x);
        let mut longer = play.to_vec();
        longer.push(Round { v, x, w });
        longer
    }

    fn check_play(&self, index: usize, play: &[Round]) -> Result<(), ConditionError> {
        let bad = |reason: String| ConditionError::IllegalPlay { play: index, reason };
        for (j, r) in play.iter().enumerate() {
            let bound = self.u(&play[..j]);
            if r.v.is_empty() || !self.space.is_open(r.v) {
                return Err(bad(format!("round {} plays a set that is not a nonempty open", j + 1)));
            }
            if !r.v.is_subset(bound) {
                return Err(bad(format!("round {} leaves the previous answer", j + 1)));
            }
            if !r.v.contains(r.x) {
                return Err(bad(format!("round {} point is outside its open set", j + 1)));
            }
            if r.w != self.strategy.respond(self.space, &play[..j], r.v, r.x) {
                return Err(bad(format!("round {} does not follow the strategy", j + 1)));
            }
        }
        Ok(())
    }

    /// Checks the open set and the plays, then builds the condition.
    pub fn validate_condition(&self, a: Subset, plays: Vec<Play>) -> Result<Condition, ConditionError> {
        if a.is_empty() {
            return Err(ConditionError::InvalidOpenSet("the open set is empty".into()));
        }
        if !self.basis.contains(&a) {
            return Err(ConditionError::InvalidOpenSet(format!(
                "{} is not a basic open",
                self.space.format_subset(a)
            )));
        }
        if plays.is_empty() {
            return Err(ConditionError::NoPlays);
        }
        let set: BTreeSet<Play> = plays.iter().cloned().collect();
        for (i, play) in plays.iter().enumerate() {
            self.check_play(i, play)?;
        }
        for (i, play) in plays.iter().enumerate() {
            if (1..play.len()).any(|k| !set.contains(&play[..k])) {
                return Err(ConditionError::MissingPrefix { play: i });
            }
        }
        for (i, play) in plays.iter().enumerate() {
            if !a.is_subset(self.u(play)) {
                return Err(ConditionError::OpenSetOutsidePlay { play: i });
            }
        }
        Ok(Condition {
            context: self.fingerprint,
            a,
            plays: set,
        })
    }

    /// `⟨A, ⟨⟩⟩`
    pub fn root_condition(&self, a: Subset) -> Result<Condition, ConditionError> {
        self.validate_condition(a, vec![Vec::new()])
    }

    fn check_context(&self, cs: &[&Condition]) -> Result<(), ConditionError> {
        if cs.iter().all(|c| c.context == self.fingerprint) {
            Ok(())
        } else {
            Err(ConditionError::MixedSpaces)
        }
    }

    /// Every play of `c2` extends through `S(c2)` into `c1`.
    pub fn plays_extend_into(&self, c1: &Condition, c2: &Condition) -> bool {
        c2.plays.iter().all(|pi| {
            c2.a.iter()
                .any(|y| c1.plays.contains(&self.extend(pi, c2.a, y)))
        })
    }

    /// `c1 ≺ c2`
    pub fn condition_lt(&self, c1: &Condition, c2: &Condition) -> Result<bool, ConditionError> {
        self.check_context(&[c1, c2])?;
        Ok(c1.a.is_subset(c2.a) && self.plays_extend_into(c1, c2))
    }

    /// A common refinement of `c1` and `c2` whose open set contains `x`.
    pub fn refine_conditions(
        &self,
        c1: &Condition,
        c2: &Condition,
        x: usize,
    ) -> Result<Condition, ConditionError> {
        self.check_context(&[c1, c2])?;
        for (c, label) in [(c1, "first"), (c2, "second")] {
            if !c.a.contains(x) {
                return Err(ConditionError::PreconditionFailed(format!(
                    "point {} is not in S of the {label} condition",
                    self.space.point(x)
                )));
            }
        }
        let mut plays: BTreeSet<Play> = BTreeSet::new();
        for c in [c1, c2] {
            for pi in &c.plays {
                let longer = self.extend(pi, c.a, x);
                for k in 1..=longer.len() {
                    plays.insert(longer[..k].to_vec());
                }
            }
        }
        let bound = plays
            .iter()
            .fold(self.space.full(), |acc, p| acc.intersection(self.u(p)));
        let a = least_basic_open(self.space, x, bound).ok_or_else(|| {
            ConditionError::PreconditionFailed("no basic open around the point fits".into())
        })?;
        self.validate_condition(a, plays.into_iter().collect())
    }

    /// All plays with at most `depth` rounds, shortest first.
    pub fn plays_up_to(&self, depth: usize) -> Vec<Play> {
        let mut all = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for play in &frontier {
                let bound = self.u(play);
                for &v in self.basis.iter().filter(|v| v.is_subset(bound)) {
                    for x in v.iter() {
                        next.push(self.extend(play, v, x));
                    }
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    /// Every condition whose plays have at most `depth` rounds and, if
    /// given, at most `play_cap` plays.
    pub fn enumerate_conditions(&self, depth: usize, play_cap: Option<usize>) -> Vec<Condition> {
        let plays = self.plays_up_to(depth);
        // depth-first order: every nonempty play follows its parent
        let mut ordered: Vec<Play> = Vec::with_capacity(plays.len());
        fn visit(p: &Play, all: &[Play], out: &mut Vec<Play>) {
            out.push(p.clone());
            for child in all.iter().filter(|c| c.len() == p.len() + 1 && c[..p.len()] == p[..]) {
                visit(child, all, out);
            }
        }
        visit(&Vec::new(), &plays, &mut ordered);
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::new();
        self.choose_plays(&ordered, 0, &mut chosen, self.space.full(), play_cap, &mut out);
        out
    }

    fn choose_plays(
        &self,
        ordered: &[Play],
        i: usize,
        chosen: &mut Vec<usize>,
        bound: Subset,
        cap: Option<usize>,
        out: &mut Vec<Condition>,
    ) {
        if i == ordered.len() {
            if chosen.is_empty() {
                return;
            }
            let set: BTreeSet<Play> = chosen.iter().map(|&j| ordered[j].clone()).collect();
            for &a in self.basis.iter().filter(|a| a.is_subset(bound)) {
                out.push(Condition {
                    context: self.fingerprint,
                    a,
                    plays: set.clone(),
                });
            }
            return;
        }
        let play = &ordered[i];
        // skipping a nonempty play forces skipping its extensions; ⟨⟩ is
        // not a required prefix
        let skip_to = if play.is_empty() {
            i + 1
        } else {
            (i + 1..ordered.len())
            .find(|&j| ordered[j].len() <= play.len() || ordered[j][..play.len()] != play[..])
                .unwrap_or(ordered.len())
        };
        self.choose_plays(ordered, skip_to, chosen, bound, cap, out);
        let fits = cap.is_none_or(|c| chosen.len() < c);
        let new_bound = bound.intersection(self.u(play));
        if fits && !new_bound.is_empty() {
            chosen.push(i);
            self.choose_plays(ordered, i + 1, chosen, new_bound, cap, out);
            chosen.pop();
        }
    }

    pub fn format_condition(&self, c: &Condition) -> String {
        let plays: Vec<String> = c
            .plays
            .iter()
            .map(|p| {
                let rounds: Vec<String> = p
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{}",
                            self.space.format_subset(r.v),
                            self.space.point(r.x),
                            self.space.format_subset(r.w)
                        )
                    })
                    .collect();
                format!("⟨{}⟩", rounds.join(";"))
            })
            .collect();
        format!("⟨{} | {}⟩", self.space.format_subset(c.a), plays.join(" "))
    }
}

/// Options for [`mf_characterization_check`].
#[derive(Debug, Clone, Copy)]
pub struct CharacterizationOptions {
    pub depth: usize,
    pub play_cap: Option<usize>,
    /// Above this many `(c₁, c₂, x)` triples, a seeded sample of this size
    /// is checked instead of all of them.
    pub refinement_limit: usize,
    pub seed: u64,
}

impl Default for CharacterizationOptions {
    fn default() -> Self {
        Self {
            depth: 2,
            play_cap: None,
            refinement_limit: usize::MAX,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub condition_count: usize,
    /// Minimal conditions of the truncated poset; each generates a maximal
    /// filter.
    pub minimal_count: usize,
    pub order_irreflexive: bool,
    pub order_transitive: bool,
    /// The play extension test implied `S(c₁) ⊆ S(c₂)` on every pair.
    pub inclusion_implied: bool,
    /// Some minimal condition has an open set with more than one point.
    pub depth_too_small: bool,
    /// Point of each class of minimal conditions, with class size.
    pub phi: Vec<(usize, usize)>,
    pub bijective: bool,
    /// `c ∈ φ⁻¹(x)` iff `x ∈ S(c)` for every enumerated condition.
    pub opens_correspond: bool,
    pub refinement_checked: usize,
    pub refinement_total: usize,
    pub refinement_failures: usize,
}

impl CharacterizationReport {
    pub fn ok(&self) -> bool {
        self.order_irreflexive
            && self.order_transitive
            && self.inclusion_implied
            && !self.depth_too_small
            && self.bijective
            && self.opens_correspond
            && self.refinement_failures == 0
    }
}

struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            words,
            data: vec![0; words * n],
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.data[row * self.words + col / 64] |= 1 << (col % 64);
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.words + col / 64] & (1 << (col % 64)) != 0
    }

    fn row(&self, row: usize) -> &[u64] {
        &self.data[row * self.words..(row + 1) * self.words]
    }

    fn row_subset(&self, a: usize, b: usize) -> bool {
        self.row(a).iter().zip(self.row(b)).all(|(x, y)| x & !y == 0)
    }
}

/// Runs the condition construction on a finite T1 space up to a depth and
/// checks that maximal filters of the truncated poset correspond to points.
///
/// In the truncated poset each maximal filter is the upset of a minimal
/// condition `m`, with `⋂ S = S(m)`. Minimal conditions sharing their point
/// are merged into one class after checking that they have a common
/// refinement; `φ` sends a class to its point.
pub fn mf_characterization_check(
    space: &FiniteTopSpace,
    strategy: &dyn StrategyII,
    options: CharacterizationOptions,
) -> Result<CharacterizationReport, ConditionError> {
    if !space.is_t1() {
        return Err(ConditionError::NotT1);
    }
    let ctx = ConditionSpace::new(space, strategy);
    let conds = ctx.enumerate_conditions(options.depth, options.play_cap);
    let n = conds.len();
    let index: BTreeMap<&Condition, usize> = conds.iter().enumerate().map(|(i, c)| (c, i)).collect();

    // below[a] holds every b with b ≺ a
    let mut below = BitRows::new(n);
    let mut inclusion_implied = true;
    let mut order_irreflexive = true;
    for (a, ca) in conds.iter().enumerate() {
        for (b, cb) in conds.iter().enumerate() {
            if ctx.plays_extend_into(cb, ca) {
                if !cb.a.is_subset(ca.a) {
                    inclusion_implied = false;
                }
                below.set(a, b);
                if a == b {
                    order_irreflexive = false;
                }
            }
        }
    }
    let mut order_transitive = true;
    'outer: for a in 0..n {
        for b in 0..n {
            if below.get(a, b) && !below.row_subset(b, a) {
                order_transitive = false;
                break 'outer;
            }
        }
    }

    let minimal: Vec<usize> = (0..n).filter(|&a| below.row(a).iter().all(|&w| w == 0)).collect();
    let depth_too_small = minimal.iter().any(|&m| conds[m].a.len() != 1);

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut refinement_failures = 0;
    for &m in &minimal {
        let Some(x) = conds[m].a.first() else { continue };
        let class = classes.entry(x).or_default();
        if let Some(&rep) = class.first() {
            let merged = ctx
                .refine_conditions(&conds[m], &conds[rep], x)
                .and_then(|c| Ok(ctx.condition_lt(&c, &conds[m])? && ctx.condition_lt(&c, &conds[rep])?));
            if merged != Ok(true) {
                refinement_failures += 1;
            }
        }
        class.push(m);
    }
    let phi: Vec<(usize, usize)> = classes.iter().map(|(&x, ms)| (x, ms.len())).collect();
    let bijective = !depth_too_small && phi.len() == space.len();

    let opens_correspond = !depth_too_small
        && (0..n).all(|c| {
            (0..space.len()).all(|x| {
                let in_preimage = classes
                    .get(&x)
                    .is_some_and(|ms| ms.iter().any(|&m| m == c || below.get(c, m)));
                in_preimage == conds[c].a.contains(x)
            })
        });

    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for (i, c1) in conds.iter().enumerate() {
        for (j, c2) in conds.iter().enumerate() {
            for x in c1.a.intersection(c2.a).iter() {
                triples.push((i, j, x));
            }
        }
    }
    let refinement_total = triples.len();
    if triples.len() > options.refinement_limit {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        triples.shuffle(&mut rng);
        triples.truncate(options.refinement_limit);
    }
    for &(i, j, x) in &triples {
        let ok = ctx.refine_conditions(&conds[i], &conds[j], x).is_ok_and(|c| {
            c.a.contains(x)
                && ctx.condition_lt(&c, &conds[i]) == Ok(true)
                && ctx.condition_lt(&c, &conds[j]) == Ok(true)
        });
        if !ok {
            refinement_failures += 1;
        }
    }
    debug_assert_eq!(index.len(), n, "enumeration is duplicate-free");

    Ok(CharacterizationReport {
        condition_count: n,
        minimal_count: minimal.len(),
        order_irreflexive,
        order_transitive,
        inclusion_implied,
        depth_too_small,
        phi,
        bijective,
        opens_correspond,
        refinement_checked: triples.len(),
        refinement_total,
        refinement_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx_for(space: &FiniteTopSpace) -> ConditionSpace<'_> {
        ConditionSpace::new(space, &CanonicalStrategy)
    }

    #[test]
    fn root_condition_is_valid() {
        let x = FiniteTopSpace::discrete(2);
        let ctx = ctx_for(&x);
        let c = ctx.root_condition(x.full()).unwrap();
        assert_eq!(ctx.u(&[]), x.full());
        assert_eq!(c.s(), x.full());
    }

    #[test]
    fn requirement_violations() {
        let x = FiniteTopSpace::discrete(2);
        let ctx = ctx_for(&x);
        let one = ctx.extend(&[], x.full(), 0);
        let two = ctx.extend(&one, Subset::singleton(0), 0);
        assert_eq!(
            ctx.validate_condition(Subset::singleton(0), vec![two.clone()]),
            Err(ConditionError::MissingPrefix { play: 0 })
        );
        assert_eq!(
            ctx.validate_condition(x.full(), vec![one.clone()]),
            Err(ConditionError::OpenSetOutsidePlay { play: 0 })
        );
        assert!(matches!(
            ctx.validate_condition(Subset::EMPTY, vec![vec![]]),
            Err(ConditionError::InvalidOpenSet(_))
        ));
        let mut cheat = one.clone();
        cheat[0].w = x.full();
        assert!(matches!(
            ctx.validate_condition(Subset::singleton(0), vec![cheat]),
            Err(ConditionError::IllegalPlay { play: 0, .. })
        ));
        assert!(ctx.validate_condition(Subset::singleton(0), vec![one, two]).is_ok());
    }

    #[test]
    fn refinement_lies_below_both() {
        let x = FiniteTopSpace::discrete(3);
        let ctx = ctx_for(&x);
        let c1 = ctx.root_condition(x.full()).unwrap();
        let c2 = ctx.root_condition(x.subset_of(&["p0", "p1"]).unwrap()).unwrap();
        let c = ctx.refine_conditions(&c1, &c2, 1).unwrap();
        assert!(ctx.condition_lt(&c, &c1).unwrap());
        assert!(ctx.condition_lt(&c, &c2).unwrap());
        assert!(c.s().contains(1));
        let same = ctx.refine_conditions(&c1, &c1, 0).unwrap();
        assert!(ctx.condition_lt(&same, &c1).unwrap());
        assert!(!ctx.condition_lt(&c1, &c1).unwrap());
    }

    #[test]
    fn point_outside_is_rejected() {
        let x = FiniteTopSpace::discrete(2);
        let ctx = ctx_for(&x);
        let c1 = ctx.root_condition(Subset::singleton(0)).unwrap();
        let c2 = ctx.root_condition(Subset::singleton(1)).unwrap();
        assert!(matches!(
            ctx.refine_conditions(&c1, &c2, 0),
            Err(ConditionError::PreconditionFailed(_))
        ));
        assert!(!ctx.condition_lt(&c1, &c2).unwrap());
    }

    #[test]
    fn mixed_spaces_are_detected() {
        let x = FiniteTopSpace::discrete(2);
        let y = FiniteTopSpace::discrete(3);
        let cx = ctx_for(&x);
        let cy = ctx_for(&y);
        let a = cx.root_condition(x.full()).unwrap();
        let b = cy.root_condition(y.full()).unwrap();
        assert_eq!(cx.condition_lt(&a, &b), Err(ConditionError::MixedSpaces));
    }

    #[test]
    fn enumeration_counts() {
        // per point: 3^(2^(n-1)) prefix-closed families of plays through it,
        // with or without ⟨⟩, less the two without such plays; plus ⟨A, ⟨⟩⟩
        // for each nonempty open A
        let count = |n: u32| -> usize {
            let x = FiniteTopSpace::discrete(n as usize);
            ctx_for(&x).enumerate_conditions(2, None).len()
        };
        assert_eq!(count(1), (2 * 3 - 2) + 1);
        assert_eq!(count(2), 2 * (2 * 9 - 2) + 3);
        assert_eq!(count(3), 3 * (2 * 81 - 2) + 7);
    }

    #[test]
    fn characterization_small() {
        for n in 1..=2 {
            let x = FiniteTopSpace::discrete(n);
            let r = mf_characterization_check(&x, &CanonicalStrategy, CharacterizationOptions::default()).unwrap();
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.phi.len(), n);
        }
    }

    #[test]
    fn depth_zero_is_too_small() {
        let x = FiniteTopSpace::discrete(2);
        let opts = CharacterizationOptions {
            depth: 0,
            ..Default::default()
        };
        let r = mf_characterization_check(&x, &CanonicalStrategy, opts).unwrap();
        assert!(r.depth_too_small);
        assert!(!r.ok());
    }

    #[test]
    fn non_t1_space_is_rejected() {
        let s = FiniteTopSpace::sierpinski();
        assert_eq!(
            mf_characterization_check(&s, &CanonicalStrategy, CharacterizationOptions::default())
                .unwrap_err(),
            ConditionError::NotT1
        );
    }
}
