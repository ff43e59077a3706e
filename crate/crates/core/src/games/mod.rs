//! Referees, strategies and solvers for the strong Choquet game and the
//! poset star game, plus the generic-filter construction behind the Baire
//! category argument.
//!
//! Infinite games are cut off at a caller-supplied horizon. A verdict at the
//! horizon says nothing about the infinite game, except for the star game on
//! a finite poset, which the solver settles exactly.

pub mod baire;
pub mod choquet;
pub mod star;

use std::fmt;

use thiserror::Error;

pub use baire::{baire_generic_filter, DenseSelector};
pub use choquet::{canonical_choquet_strategy, choquet_referee, CanonicalII, RandomPlayerI, ScriptedPlayerI};
pub use star::{star_game_referee, star_game_solve, SplittingStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    I,
    II,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::II => "II",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move by player {player} in round {round}: {reason}")]
    IllegalMove {
        player: Player,
        round: usize,
        reason: String,
    },
    #[error("no legal move for player {player} in round {round}")]
    NoLegalMove { player: Player, round: usize },
    #[error("winning condition violated in round {round}: {reason}")]
    ConditionViolated { round: usize, reason: String },
    #[error("selector {index} returned an illegal element below {element}")]
    SelectorFailed { index: usize, element: String },
    #[error("invalid game setup: {0}")]
    InvalidSetup(String),
}
