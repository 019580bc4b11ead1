//! The three-door game as a finite two-person zero-sum game.
//!
//! The player's pure strategies fix a first pick and, for each door the
//! host might open, whether to stay or switch. The host's pure strategies
//! fix the car's location and the door to open when the player has picked
//! the car. All randomness lives in mixtures over these pure strategies, so
//! every pure-vs-pure payoff is 0 or 1.

use std::fmt;

use serde::Serialize;

use crate::dist::Door;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::simplex::LinearProgram;

const DOORS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decision {
    Stay,
    Switch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlayerPureStrategy {
    pub pick: Door,
    /// One decision per door the host may open, in increasing door order.
    pub decisions: Vec<(Door, Decision)>,
}

impl PlayerPureStrategy {
    pub fn always(pick: Door, decision: Decision) -> Self {
        PlayerPureStrategy {
            pick,
            decisions: (0..DOORS)
                .filter(|&d| d != pick)
                .map(|d| (d, decision))
                .collect(),
        }
    }

    pub fn decision(&self, opened: Door) -> Option<Decision> {
        self.decisions
            .iter()
            .find(|(d, _)| *d == opened)
            .map(|(_, x)| *x)
    }

    pub fn is_always_switch(&self) -> bool {
        self.decisions.iter().all(|(_, x)| *x == Decision::Switch)
    }

    pub fn is_always_stay(&self) -> bool {
        self.decisions.iter().all(|(_, x)| *x == Decision::Stay)
    }

    /// `always-switch`, `always-stay`, or `switch-if-opened-<door>`.
    pub fn rule(&self) -> String {
        if self.is_always_switch() {
            return "always-switch".into();
        }
        if self.is_always_stay() {
            return "always-stay".into();
        }
        let doors: Vec<String> = self
            .decisions
            .iter()
            .filter(|(_, x)| *x == Decision::Switch)
            .map(|(d, _)| d.to_string())
            .collect();
        format!("switch-if-opened-{}", doors.join("-"))
    }
}

impl fmt::Display for PlayerPureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pick Door {}, ", self.pick + 1)?;
        if self.is_always_switch() || self.is_always_stay() {
            return f.write_str(&self.rule());
        }
        let doors: Vec<String> = self
            .decisions
            .iter()
            .filter(|(_, x)| *x == Decision::Switch)
            .map(|(d, _)| format!("Door {}", d + 1))
            .collect();
        write!(f, "switch if {} opened", doors.join(" or "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HostPureStrategy {
    pub car: Door,
    /// Door opened when the player's pick is the car.
    pub free_choice: Door,
}

impl HostPureStrategy {
    /// Door this host opens against a first pick.
    pub fn opens(&self, pick: Door) -> Door {
        if pick == self.car {
            self.free_choice
        } else {
            3 - pick - self.car
        }
    }
}

impl fmt::Display for HostPureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "car behind Door {}, open Door {} if free",
            self.car + 1,
            self.free_choice + 1
        )
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == DOORS {
        Ok(())
    } else {
        Err(Error::UnsupportedSize(n))
    }
}

/// The 12 player pure strategies, grouped by pick. Within a pick the stay or
/// switch decisions count up in binary over the two openable doors, so the
/// last of each group is always-switch.
pub fn enumerate_player_strategies(n: usize) -> Result<Vec<PlayerPureStrategy>> {
    check_size(n)?;
    let mut out = Vec::new();
    for pick in 0..n {
        let openable: Vec<Door> = (0..n).filter(|&d| d != pick).collect();
        for mask in 0..(1u32 << openable.len()) {
            let decisions = openable
                .iter()
                .enumerate()
                .map(|(bit, &d)| {
                    let switch = mask & (1 << (openable.len() - 1 - bit)) != 0;
                    (d, if switch { Decision::Switch } else { Decision::Stay })
                })
                .collect();
            out.push(PlayerPureStrategy { pick, decisions });
        }
    }
    Ok(out)
}

/// The 6 host pure strategies, ordered by car then free choice.
pub fn enumerate_host_strategies(n: usize) -> Result<Vec<HostPureStrategy>> {
    check_size(n)?;
    Ok((0..n)
        .flat_map(|car| {
            (0..n)
                .filter(move |&f| f != car)
                .map(move |free_choice| HostPureStrategy { car, free_choice })
        })
        .collect())
}

/// 1 if the induced play ends with the player on the car, else 0.
pub fn payoff(p: &PlayerPureStrategy, h: &HostPureStrategy) -> Rational {
    let opened = h.opens(p.pick);
    let final_door = match p.decision(opened) {
        Some(Decision::Switch) => 3 - p.pick - opened,
        _ => p.pick,
    };
    if final_door == h.car {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// A payoff matrix with labelled rows (maximizer) and columns (minimizer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGame<R, C> {
    pub rows: Vec<R>,
    pub cols: Vec<C>,
    pub payoff: Vec<Vec<Rational>>,
}

/// Optimal mixed strategies as weight vectors aligned with the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSolution {
    pub value: Rational,
    pub row_weights: Vec<Rational>,
    pub col_weights: Vec<Rational>,
}

pub type MontyGame = MatrixGame<PlayerPureStrategy, HostPureStrategy>;

impl MatrixGame<usize, usize> {
    /// Unlabelled game; rows and columns are named by index.
    pub fn from_payoff(payoff: Vec<Vec<Rational>>) -> Result<Self> {
        let width = payoff.first().map_or(0, Vec::len);
        if payoff.is_empty() || width == 0 || payoff.iter().any(|r| r.len() != width) {
            return Err(Error::DimensionMismatch(
                "payoff matrix must be nonempty and rectangular".into(),
            ));
        }
        Ok(MatrixGame {
            rows: (0..payoff.len()).collect(),
            cols: (0..width).collect(),
            payoff,
        })
    }
}

impl<R, C> MatrixGame<R, C> {
    pub fn n_rows(&self) -> usize {
        self.payoff.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    /// Expected payoff of row `i` against a column mixture.
    pub fn row_payoff(&self, i: usize, col_weights: &[Rational]) -> Rational {
        self.payoff[i].iter().zip(col_weights).map(|(a, w)| a * w).sum()
    }

    /// Expected payoff of a row mixture against column `j`.
    pub fn col_payoff(&self, row_weights: &[Rational], j: usize) -> Rational {
        self.payoff
            .iter()
            .zip(row_weights)
            .map(|(row, w)| &row[j] * w)
            .sum()
    }

    pub fn expected_payoff(&self, row_weights: &[Rational], col_weights: &[Rational]) -> Rational {
        (0..self.n_rows())
            .map(|i| &row_weights[i] * self.row_payoff(i, col_weights))
            .sum()
    }

    /// Rows with positive weight, paired with their weights.
    pub fn row_support<'a>(&'a self, sol: &'a GameSolution) -> Vec<(&'a R, &'a Rational)> {
        self.rows
            .iter()
            .zip(&sol.row_weights)
            .filter(|(_, w)| w.is_positive())
            .collect()
    }

    pub fn col_support<'a>(&'a self, sol: &'a GameSolution) -> Vec<(&'a C, &'a Rational)> {
        self.cols
            .iter()
            .zip(&sol.col_weights)
            .filter(|(_, w)| w.is_positive())
            .collect()
    }
}

/// The 12 x 6 matrix of win probabilities.
pub fn build_matrix(n: usize) -> Result<MontyGame> {
    let rows = enumerate_player_strategies(n)?;
    let cols = enumerate_host_strategies(n)?;
    let payoff = rows
        .iter()
        .map(|p| cols.iter().map(|h| payoff(p, h)).collect())
        .collect();
    Ok(MatrixGame { rows, cols, payoff })
}

/// Exact value and optimal mixtures by linear programming.
///
/// Payoffs are shifted so every entry is at least 1; the column player's
/// program `max Σy  s.t.  A y <= 1, y >= 0` then has optimum `1 / value`,
/// and its dual multipliers are the row player's optimal weights scaled by
/// the same factor.
pub fn solve_lp<R, C>(game: &MatrixGame<R, C>) -> Result<GameSolution> {
    let min = game
        .payoff
        .iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::DimensionMismatch("empty payoff matrix".into()))?;
    let shift = Rational::one() - min;
    let lp = LinearProgram {
        objective: vec![Rational::one(); game.n_cols()],
        constraints: game
            .payoff
            .iter()
            .map(|row| row.iter().map(|a| a + &shift).collect())
            .collect(),
        bounds: vec![Rational::one(); game.n_rows()],
    };
    let sol = lp.solve()?;
    debug_assert_eq!(sol.objective, sol.dual_objective);
    let total = &sol.objective;
    let scale = |v: &[Rational]| -> Result<Vec<Rational>> {
        v.iter().map(|w| w.checked_div(total)).collect()
    };
    Ok(GameSolution {
        value: total.recip()? - shift,
        row_weights: scale(&sol.dual)?,
        col_weights: scale(&sol.x)?,
    })
}

fn check_mixture(weights: &[Rational], len: usize, side: &str) -> Result<()> {
    if weights.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "{side} mixture has {} weights for {len} strategies",
            weights.len()
        )));
    }
    if let Some(neg) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::NegativeProbability(neg.to_string()));
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::NotNormalized(total.to_string()));
    }
    Ok(())
}

/// Both one-sided guarantees at `sol.value`, as exact inequalities: the row
/// mixture earns at least the value against every column, and the column
/// mixture holds every row to at most the value.
pub fn verify_saddle<R, C>(game: &MatrixGame<R, C>, sol: &GameSolution) -> Result<bool> {
    check_mixture(&sol.row_weights, game.n_rows(), "row")?;
    check_mixture(&sol.col_weights, game.n_cols(), "column")?;
    let player_guarantee =
        (0..game.n_cols()).all(|j| game.col_payoff(&sol.row_weights, j) >= sol.value);
    let host_guarantee =
        (0..game.n_rows()).all(|i| game.row_payoff(i, &sol.col_weights) <= sol.value);
    Ok(player_guarantee && host_guarantee)
}

/// Player: uniform first pick, then always switch. Host: uniform car, fair
/// coin when there is a choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimaxStrategies {
    pub player: Vec<(PlayerPureStrategy, Rational)>,
    pub host: Vec<(HostPureStrategy, Rational)>,
}

pub fn named_minimax_strategies() -> MinimaxStrategies {
    let third = Rational::ratio(1, 3);
    let sixth = Rational::ratio(1, 6);
    MinimaxStrategies {
        player: (0..DOORS)
            .map(|pick| {
                (
                    PlayerPureStrategy::always(pick, Decision::Switch),
                    third.clone(),
                )
            })
            .collect(),
        host: enumerate_host_strategies(DOORS)
            .expect("three doors")
            .into_iter()
            .map(|h| (h, sixth.clone()))
            .collect(),
    }
}

impl MontyGame {
    /// Weight vector over the rows for a player mixture.
    pub fn row_weights_of(&self, mixture: &[(PlayerPureStrategy, Rational)]) -> Result<Vec<Rational>> {
        let mut w = vec![Rational::zero(); self.n_rows()];
        for (s, p) in mixture {
            let i = self
                .rows
                .iter()
                .position(|r| r == s)
                .ok_or_else(|| Error::DimensionMismatch(format!("unknown strategy {s}")))?;
            w[i] += p;
        }
        Ok(w)
    }

    pub fn col_weights_of(&self, mixture: &[(HostPureStrategy, Rational)]) -> Result<Vec<Rational>> {
        let mut w = vec![Rational::zero(); self.n_cols()];
        for (s, p) in mixture {
            let j = self
                .cols
                .iter()
                .position(|c| c == s)
                .ok_or_else(|| Error::DimensionMismatch(format!("unknown strategy {s}")))?;
            w[j] += p;
        }
        Ok(w)
    }

    /// The named minimax pair as a solution claiming `value`.
    pub fn named_solution(&self, value: Rational) -> Result<GameSolution> {
        let named = named_minimax_strategies();
        Ok(GameSolution {
            value,
            row_weights: self.row_weights_of(&named.player)?,
            col_weights: self.col_weights_of(&named.host)?,
        })
    }
}

#[derive(Serialize)]
struct PlayerWeight {
    pick: Door,
    rule: String,
    w: Rational,
}

#[derive(Serialize)]
struct HostWeight {
    car: Door,
    free: Door,
    w: Rational,
}

/// Output document of the `solve` command.
#[derive(Serialize)]
pub struct SolveReport {
    value: Rational,
    player: Vec<PlayerWeight>,
    host: Vec<HostWeight>,
    saddle_verified: bool,
}

impl SolveReport {
    pub fn new(game: &MontyGame, sol: &GameSolution) -> Result<Self> {
        Ok(SolveReport {
            value: sol.value.clone(),
            player: game
                .row_support(sol)
                .into_iter()
                .map(|(s, w)| PlayerWeight {
                    pick: s.pick,
                    rule: s.rule(),
                    w: w.clone(),
                })
                .collect(),
            host: game
                .col_support(sol)
                .into_iter()
                .map(|(h, w)| HostWeight {
                    car: h.car,
                    free: h.free_choice,
                    w: w.clone(),
                })
                .collect(),
            saddle_verified: verify_saddle(game, sol)?,
        })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn saddle_verified(&self) -> bool {
        self.saddle_verified
    }
}
