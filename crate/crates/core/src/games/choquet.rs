//! The strong Choquet game on a poset space.
//!
//! In round `i` player I plays an open `U_i` and a point `x_i ∈ U_i`, with
//! `U_i ⊆ V_{i-1}` after the first round; player II answers with an open `V_i`
//! with `x_i ∈ V_i ⊆ U_i`. Player II wins when `⋂ U_i` is nonempty.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::topology::{PointSet, PosetSpace};

use super::{GameError, Player};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoquetRound {
    pub u: PointSet,
    pub x: usize,
    pub v: PointSet,
}

pub trait ChoquetPlayerI {
    fn name(&self) -> String;
    fn play(&mut self, space: &PosetSpace, history: &[ChoquetRound]) -> (PointSet, usize);
}

pub trait ChoquetPlayerII {
    fn name(&self) -> String;
    fn respond(
        &mut self,
        space: &PosetSpace,
        history: &[ChoquetRound],
        u: &PointSet,
        x: usize,
    ) -> Result<PointSet, GameError>;
}

/// Player II answering with basic opens `N_{q_i}` along a descending chain
/// `q_1 ⪰ q_2 ⪰ …`, each `q_i` the first element in poset order with
/// `q_i ⪯ q_{i-1}`, `x_i ∈ N_{q_i}` and `N_{q_i} ⊆ U_i`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalII;

pub fn canonical_choquet_strategy(_space: &PosetSpace) -> CanonicalII {
    CanonicalII
}

impl CanonicalII {
    /// The next chain element given the previous one.
    pub fn choose(
        space: &PosetSpace,
        prev: Option<usize>,
        u: &PointSet,
        x: usize,
        round: usize,
    ) -> Result<usize, GameError> {
        let p = space.poset();
        (0..p.len())
            .find(|&q| {
                prev.is_none_or(|r| p.le(q, r))
                    && space.point(x).contains(q)
                    && space.basic_open(q).is_subset(u)
            })
            .ok_or(GameError::NoLegalMove {
                player: Player::II,
                round,
            })
    }

    /// Replays the chain `q_1, …` behind a history of canonical answers.
    pub fn chain(space: &PosetSpace, history: &[ChoquetRound]) -> Result<Vec<usize>, GameError> {
        let mut chain: Vec<usize> = Vec::with_capacity(history.len());
        for (i, r) in history.iter().enumerate() {
            let q = Self::choose(space, chain.last().copied(), &r.u, r.x, i + 1)?;
            chain.push(q);
        }
        Ok(chain)
    }
}

impl ChoquetPlayerII for CanonicalII {
    fn name(&self) -> String {
        "canonical".into()
    }

    fn respond(
        &mut self,
        space: &PosetSpace,
        history: &[ChoquetRound],
        u: &PointSet,
        x: usize,
    ) -> Result<PointSet, GameError> {
        let chain = Self::chain(space, history)?;
        let q = Self::choose(space, chain.last().copied(), u, x, history.len() + 1)?;
        Ok(space.basic_open(q))
    }
}

/// Player I choosing a random nonempty union of basic opens inside the last
/// answer, and a random point of it.
#[derive(Debug, Clone)]
pub struct RandomPlayerI {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RandomPlayerI {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }
}

impl ChoquetPlayerI for RandomPlayerI {
    fn name(&self) -> String {
        format!("random(seed={})", self.seed)
    }

    fn play(&mut self, space: &PosetSpace, history: &[ChoquetRound]) -> (PointSet, usize) {
        let bound = history.last().map_or_else(|| space.whole(), |r| r.v.clone());
        let candidates: Vec<PointSet> = (0..space.poset().len())
            .map(|p| space.basic_open(p))
            .filter(|n| !n.is_empty() && n.is_subset(&bound))
            .collect();
        let mut u = PointSet::new();
        for c in &candidates {
            if self.rng.gen_bool(0.5) {
                u.extend(c.iter().copied());
            }
        }
        if u.is_empty() {
            if let Some(c) = candidates.choose(&mut self.rng) {
                u = c.clone();
            }
        }
        let pts: Vec<usize> = u.iter().copied().collect();
        let x = pts.choose(&mut self.rng).copied().unwrap_or(0);
        (u, x)
    }
}

/// Player I replaying fixed moves; the last move repeats once the script
/// runs out.
#[derive(Debug, Clone)]
pub struct ScriptedPlayerI {
    moves: Vec<(PointSet, usize)>,
}

impl ScriptedPlayerI {
    pub fn new(moves: Vec<(PointSet, usize)>) -> Self {
        assert!(!moves.is_empty(), "script needs at least one move");
        Self { moves }
    }
}

impl ChoquetPlayerI for ScriptedPlayerI {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn play(&mut self, _space: &PosetSpace, history: &[ChoquetRound]) -> (PointSet, usize) {
        let i = history.len().min(self.moves.len() - 1);
        self.moves[i].clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoquetTranscript {
    pub rounds: Vec<ChoquetRound>,
    pub intersection_u: PointSet,
    pub intersection_v: PointSet,
    /// Player II at the horizon iff the intersection is nonempty.
    pub winner_at_horizon: Player,
    pub log: Vec<String>,
}

fn illegal(player: Player, round: usize, reason: String) -> GameError {
    GameError::IllegalMove {
        player,
        round,
        reason,
    }
}

pub fn choquet_referee(
    space: &PosetSpace,
    player_i: &mut dyn ChoquetPlayerI,
    player_ii: &mut dyn ChoquetPlayerII,
    rounds: usize,
) -> Result<ChoquetTranscript, GameError> {
    if rounds == 0 {
        return Err(GameError::InvalidSetup("at least one round is required".into()));
    }
    let mut history: Vec<ChoquetRound> = Vec::with_capacity(rounds);
    let mut log = Vec::with_capacity(rounds);
    for round in 1..=rounds {
        let (u, x) = player_i.play(space, &history);
        if x >= space.len() || u.iter().any(|&i| i >= space.len()) {
            return Err(illegal(Player::I, round, "point outside the space".into()));
        }
        if !space.is_open(&u) {
            return Err(illegal(Player::I, round, format!("{} is not open", space.format_points(&u))));
        }
        if !u.contains(&x) {
            return Err(illegal(
                Player::I,
                round,
                format!("{} is not in {}", space.point_name(x), space.format_points(&u)),
            ));
        }
        if let Some(last) = history.last() {
            if !u.is_subset(&last.v) {
                return Err(illegal(Player::I, round, "open set leaves the previous answer".into()));
            }
        }
        let v = player_ii.respond(space, &history, &u, x)?;
        if v.iter().any(|&i| i >= space.len()) || !space.is_open(&v) {
            return Err(illegal(Player::II, round, "answer is not open".into()));
        }
        if !v.contains(&x) || !v.is_subset(&u) {
            return Err(illegal(
                Player::II,
                round,
                "answer must contain the point and lie inside the open set".into(),
            ));
        }
        log.push(format!(
            "round {round}: I ({}, {}) | II {}",
            space.format_points(&u),
            space.point_name(x),
            space.format_points(&v)
        ));
        history.push(ChoquetRound { u, x, v });
    }
    let intersection_u = history
        .iter()
        .fold(space.whole(), |acc, r| acc.intersection(&r.u).copied().collect());
    let intersection_v = history
        .iter()
        .fold(space.whole(), |acc, r| acc.intersection(&r.v).copied().collect());
    let winner_at_horizon = if intersection_u.is_empty() {
        Player::I
    } else {
        Player::II
    };
    Ok(ChoquetTranscript {
        rounds: history,
        intersection_u,
        intersection_v,
        winner_at_horizon,
        log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::samples::*;
    use crate::topology::Mode;

    #[test]
    fn canonical_answer_on_vee() {
        let x = PosetSpace::new(vee(), Mode::Mf);
        let a = x.basic_open_id("a").unwrap();
        let pa = *a.iter().next().unwrap();
        let v = CanonicalII.respond(&x, &[], &x.whole(), pa).unwrap();
        assert!(v.contains(&pa) && v.is_subset(&a));
    }

    #[test]
    fn canonical_answer_on_chain() {
        let x = PosetSpace::new(chain2(), Mode::Mf);
        let ny = x.basic_open_id("y").unwrap();
        let v = CanonicalII.respond(&x, &[], &ny, 0).unwrap();
        assert!(v == x.basic_open_id("x").unwrap() || v == ny);
    }

    #[test]
    fn random_games_end_nonempty() {
        let x = PosetSpace::new(vee(), Mode::Mf);
        for seed in 0..20 {
            let t = choquet_referee(&x, &mut RandomPlayerI::new(seed), &mut CanonicalII, 10).unwrap();
            assert_eq!(t.winner_at_horizon, Player::II);
            assert!(!t.intersection_v.is_empty());
            assert_eq!(t.log.len(), 10);
        }
    }

    #[test]
    fn point_outside_open_is_illegal() {
        let x = PosetSpace::new(vee(), Mode::Mf);
        let a = x.basic_open_id("a").unwrap();
        let b_point = *x.basic_open_id("b").unwrap().iter().next().unwrap();
        let mut bad = ScriptedPlayerI::new(vec![(a, b_point)]);
        let err = choquet_referee(&x, &mut bad, &mut CanonicalII, 3).unwrap_err();
        assert!(matches!(
            err,
            GameError::IllegalMove {
                player: Player::I,
                round: 1,
                ..
            }
        ));
    }

    #[test]
    fn one_point_space() {
        let x = PosetSpace::new(singleton(), Mode::Mf);
        let mut i = ScriptedPlayerI::new(vec![(x.whole(), 0)]);
        let t = choquet_referee(&x, &mut i, &mut CanonicalII, 5).unwrap();
        assert_eq!(t.intersection_u, x.whole());
    }

    #[test]
    fn referee_is_deterministic() {
        let x = PosetSpace::new(vee(), Mode::Mf);
        let a = choquet_referee(&x, &mut RandomPlayerI::new(3), &mut CanonicalII, 6).unwrap();
        let b = choquet_referee(&x, &mut RandomPlayerI::new(3), &mut CanonicalII, 6).unwrap();
        assert_eq!(a, b);
    }
}
