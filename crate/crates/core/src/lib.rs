//! Exact analysis of generalized Monty Hall games.
//!
//! * [`rational`] and [`dist`]: exact fractions and door distributions.
//! * [`game`]: game specs, outcome enumeration and the spec file format.
//! * [`bayes`]: unconditional and conditional switch-win probabilities.
//! * [`matrix_game`] and [`simplex`]: the game as a zero-sum matrix game,
//!   solved exactly by linear programming.
//! * [`montecarlo`]: seeded simulation cross-checks.
//! * [`cli`]: the `monty` command-line front end.

pub mod bayes;
pub mod cli;
pub mod dist;
pub mod error;
pub mod game;
pub mod matrix_game;
pub mod montecarlo;
pub mod rational;
pub mod simplex;

pub use dist::{make_point, make_uniform, validate_dist, Door, DoorDist};
pub use error::{Error, Result};
pub use game::{enumerate_outcomes, n_door_game, standard_game, validate_spec, GameSpec, Outcome};
pub use matrix_game::{
    build_matrix, named_minimax_strategies, solve_lp, verify_saddle, GameSolution, MatrixGame,
};
pub use montecarlo::{simulate, simulate_strategy_pair, sweep_bias, SimConfig, SimResult};
pub use rational::Rational;
