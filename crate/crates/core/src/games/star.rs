//! The poset star game.
//!
//! In round `t` player I plays a pair `⟨p₁, p₂⟩` and player II picks an index
//! `n_t ∈ {1, 2}`. Player I must keep `p₁ ⊥ p₂` and, from round 1 on, play
//! both elements below the element II picked in the previous round. Player I
//! wins the infinite game by never breaking these rules.

use crate::generated::{BinaryTree, GeneratedPoset};
use crate::poset::{ElemSet, FinitePoset};

use super::{GameError, Player};

/// Exact solution of the star game on a finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarSolution {
    pub winner: Player,
    /// Greatest `S` with `S = {p : ∃ p₁, p₂ ⪯ p in S, p₁ ⊥ p₂}`.
    pub fixed_point: ElemSet,
    /// Iteration stage at which each element left `S`; `None` for members.
    pub removal_stage: Vec<Option<usize>>,
    /// An incompatible pair inside `S` for player I's first move.
    pub opening: Option<(usize, usize)>,
}

fn splits_inside(poset: &FinitePoset, p: usize, set: &ElemSet) -> Option<(usize, usize)> {
    for &a in set {
        if !poset.le(a, p) {
            continue;
        }
        for &b in set {
            if a < b && poset.le(b, p) && poset.incompatible(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Solves the game by iterating `S ↦ {p ∈ S : ∃ p₁, p₂ ⪯ p in S, p₁ ⊥ p₂}`
/// from `S = P` down to its greatest fixed point.
pub fn star_game_solve(poset: &FinitePoset) -> StarSolution {
    let mut current = poset.all();
    let mut removal_stage = vec![None; poset.len()];
    let mut stage = 0;
    loop {
        stage += 1;
        let next: ElemSet = current
            .iter()
            .copied()
            .filter(|&p| splits_inside(poset, p, &current).is_some())
            .collect();
        for &p in current.difference(&next) {
            removal_stage[p] = Some(stage);
        }
        if next == current {
            break;
        }
        current = next;
    }
    let mut opening = None;
    'outer: for &a in &current {
        for &b in &current {
            if a < b && poset.incompatible(a, b) {
                opening = Some((a, b));
                break 'outer;
            }
        }
    }
    StarSolution {
        winner: if opening.is_some() { Player::I } else { Player::II },
        fixed_point: current,
        removal_stage,
        opening,
    }
}

impl StarSolution {
    /// Player II's positional answer: the index whose element left `S`
    /// earliest, preferring 1 on ties. Members of `S` count as never removed.
    pub fn ii_choice(&self, p1: usize, p2: usize) -> usize {
        let key = |p: usize| self.removal_stage[p].unwrap_or(usize::MAX);
        if key(p2) < key(p1) {
            2
        } else {
            1
        }
    }

    /// Player I's positional move from `current` (or the start) when I wins.
    pub fn i_move(&self, poset: &FinitePoset, current: Option<usize>) -> Option<(usize, usize)> {
        match current {
            None => self.opening,
            Some(p) => splits_inside(poset, p, &self.fixed_point),
        }
    }

    /// Rows `p₁ p₂ → n` of II's strategy over all incompatible pairs.
    pub fn ii_table(&self, poset: &FinitePoset) -> Vec<(usize, usize, usize)> {
        let mut rows = Vec::new();
        for a in 0..poset.len() {
            for b in (a + 1)..poset.len() {
                if poset.incompatible(a, b) {
                    rows.push((a, b, self.ii_choice(a, b)));
                }
            }
        }
        rows
    }
}

/// Player I's side of the star game on a lazily generated poset.
pub trait StarStrategyI<G: GeneratedPoset> {
    fn name(&self) -> String;
    /// `current` is II's last chosen element, `None` before round 0.
    fn play(&mut self, poset: &G, current: Option<&G::Elem>, round: usize) -> (G::Elem, G::Elem);
}

/// On the binary tree, I plays the two one-bit extensions of the current node.
#[derive(Debug, Clone, Copy, Default)]
pub struct SplittingStrategy;

impl StarStrategyI<BinaryTree> for SplittingStrategy {
    fn name(&self) -> String {
        "splitting".into()
    }

    fn play(&mut self, _poset: &BinaryTree, current: Option<&Vec<bool>>, _round: usize) -> (Vec<bool>, Vec<bool>) {
        let base = current.cloned().unwrap_or_default();
        let mut left = base.clone();
        left.push(false);
        let mut right = base;
        right.push(true);
        (left, right)
    }
}

/// Player I replaying one fixed pair forever.
#[derive(Debug, Clone)]
pub struct RepeatPair<E>(pub E, pub E);

impl<G: GeneratedPoset> StarStrategyI<G> for RepeatPair<G::Elem> {
    fn name(&self) -> String {
        "repeat".into()
    }

    fn play(&mut self, _poset: &G, _current: Option<&G::Elem>, _round: usize) -> (G::Elem, G::Elem) {
        (self.0.clone(), self.1.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPlay<E> {
    /// The pairs played by I, round by round.
    pub pairs: Vec<(E, E)>,
    /// The element picked by II each round: the chain `F(f)`.
    pub chain: Vec<E>,
    pub log: Vec<String>,
}

/// Plays `strategy` against the player II who answers `f(t) + 1` in round `t`.
///
/// Incompatibility is decided with the given budget. Fails with
/// `ConditionViolated` in the first round where I breaks a rule.
pub fn star_game_referee<G: GeneratedPoset>(
    poset: &G,
    strategy: &mut dyn StarStrategyI<G>,
    f: &[bool],
    rounds: usize,
    budget: usize,
) -> Result<StarPlay<G::Elem>, GameError> {
    if rounds == 0 {
        return Err(GameError::InvalidSetup("at least one round is required".into()));
    }
    if f.len() < rounds {
        return Err(GameError::InvalidSetup(format!(
            "II's sequence has {} bits, {} rounds requested",
            f.len(),
            rounds
        )));
    }
    let mut play = StarPlay {
        pairs: Vec::with_capacity(rounds),
        chain: Vec::with_capacity(rounds),
        log: Vec::with_capacity(rounds),
    };
    for (t, &bit) in f.iter().enumerate().take(rounds) {
        let (p1, p2) = strategy.play(poset, play.chain.last(), t);
        if !poset.incompatible(&p1, &p2, budget) {
            return Err(GameError::ConditionViolated {
                round: t,
                reason: format!("{} and {} are compatible", poset.encode(&p1), poset.encode(&p2)),
            });
        }
        if let Some(prev) = play.chain.last() {
            if !poset.leq(&p1, prev) || !poset.leq(&p2, prev) {
                return Err(GameError::ConditionViolated {
                    round: t,
                    reason: format!("pair is not below {}", poset.encode(prev)),
                });
            }
        }
        let n = usize::from(bit) + 1;
        play.log.push(format!(
            "round {t}: I ⟨{},{}⟩ | II {n}",
            poset.encode(&p1),
            poset.encode(&p2)
        ));
        let chosen = if n == 1 { p1.clone() } else { p2.clone() };
        play.chain.push(chosen);
        play.pairs.push((p1, p2));
    }
    Ok(play)
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    BinaryTree::parse(s).filter(|_| s != "ε")
}
