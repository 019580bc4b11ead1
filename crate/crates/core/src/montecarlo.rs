//! Seeded simulation of door games and strategy pairs.
//!
//! Trial `i` draws its random numbers from ChaCha8 keyed by
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so a trial's draws do
//! not depend on which worker runs it. `parallel_streams` only splits the
//! trial range into contiguous chunks; results are identical for any value.
//!
//! Exact probabilities are sampled without rounding: a uniform `u64` draw
//! `u` selects the first entry whose cumulative mass `c` satisfies
//! `u < c * 2^64`, compared through the integer threshold `ceil(c * 2^64)`.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bayes::conditional_switch_win;
use crate::dist::{Door, DoorDist};
use crate::error::{Error, Result};
use crate::game::{standard_game, switch_target, validate_spec, GameSpec};
use crate::matrix_game::{payoff, HostPureStrategy, PlayerPureStrategy};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub seed: u64,
    pub n_trials: u64,
    pub parallel_streams: usize,
}

impl SimConfig {
    pub fn new(seed: u64, n_trials: u64) -> Self {
        SimConfig {
            seed,
            n_trials,
            parallel_streams: 1,
        }
    }

    pub fn with_streams(mut self, streams: usize) -> Self {
        self.parallel_streams = streams;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(Error::InvalidConfig("n_trials must be positive".into()));
        }
        if self.parallel_streams == 0 {
            return Err(Error::InvalidConfig("parallel_streams must be positive".into()));
        }
        Ok(())
    }
}

/// Win/trial counts for one `(pick, opened)` observation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub wins: u64,
    pub trials: u64,
}

impl Tally {
    pub fn rate(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.wins as f64 / self.trials as f64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub wins: u64,
    pub trials: u64,
    pub rate: f64,
    /// `rate ± 3·sqrt(rate·(1 − rate)/trials)`, clamped to [0, 1]. Normal
    /// approximation; only a sanity band.
    pub ci_low: f64,
    pub ci_high: f64,
    pub per_condition: BTreeMap<(Door, Door), Tally>,
}

impl SimResult {
    fn from_counts(wins: u64, trials: u64, per_condition: BTreeMap<(Door, Door), Tally>) -> Self {
        let rate = wins as f64 / trials as f64;
        let half = 3.0 * (rate * (1.0 - rate) / trials as f64).sqrt();
        SimResult {
            wins,
            trials,
            rate,
            ci_low: (rate - half).max(0.0),
            ci_high: (rate + half).min(1.0),
            per_condition,
        }
    }

    pub fn condition(&self, pick: Door, opened: Door) -> Tally {
        self.per_condition
            .get(&(pick, opened))
            .copied()
            .unwrap_or_default()
    }
}

#[derive(Serialize)]
struct ConditionTally {
    pick: Door,
    opened: Door,
    wins: u64,
    trials: u64,
}

impl Serialize for SimResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            wins: u64,
            trials: u64,
            rate: f64,
            ci_low: f64,
            ci_high: f64,
            per_condition: &'a [ConditionTally],
        }
        let per: Vec<ConditionTally> = self
            .per_condition
            .iter()
            .map(|(&(pick, opened), t)| ConditionTally {
                pick,
                opened,
                wins: t.wins,
                trials: t.trials,
            })
            .collect();
        Doc {
            wins: self.wins,
            trials: self.trials,
            rate: self.rate,
            ci_low: self.ci_low,
            ci_high: self.ci_high,
            per_condition: &per,
        }
        .serialize(serializer)
    }
}

/// `p ± 3·sqrt(p(1 − p)/n)` around an exact probability.
pub fn binomial_band(p: &Rational, n: u64) -> (f64, f64) {
    let p = p.to_f64();
    let half = 3.0 * (p * (1.0 - p) / n as f64).sqrt();
    (p - half, p + half)
}

/// `ceil(c · 2^64)` for `0 <= c <= 1`.
fn threshold(c: &Rational) -> u128 {
    let scaled: BigInt = c.numer() << 64u32;
    scaled
        .div_ceil(c.denom())
        .to_u128()
        .expect("probability in [0, 1]")
}

/// Inverse-CDF sampler with exact integer thresholds.
#[derive(Clone, Debug)]
struct Sampler<T> {
    cumulative: Vec<(u128, T)>,
}

impl<T: Copy> Sampler<T> {
    fn new<'a>(entries: impl IntoIterator<Item = (T, &'a Rational)>) -> Self {
        let mut acc = Rational::zero();
        let cumulative = entries
            .into_iter()
            .map(|(label, p)| {
                acc += p;
                (threshold(&acc), label)
            })
            .collect();
        Sampler { cumulative }
    }

    fn sample(&self, u: u64) -> T {
        let u = u as u128;
        self.cumulative
            .iter()
            .find(|(t, _)| u < *t)
            .or(self.cumulative.last())
            .expect("nonempty sampler")
            .1
    }
}

fn dist_sampler(d: &DoorDist) -> Sampler<Door> {
    Sampler::new(d.support())
}

struct TrialRng {
    key: <ChaCha8Rng as SeedableRng>::Seed,
}

impl TrialRng {
    fn new(seed: u64) -> Self {
        TrialRng {
            key: ChaCha8Rng::seed_from_u64(seed).get_seed(),
        }
    }

    fn for_trial(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(trial);
        rng
    }
}

/// One trial's result: `(pick, opened, win)`.
type Play = (Door, Door, bool);

fn run_trials<F>(cfg: &SimConfig, n_doors: usize, play: F) -> Result<SimResult>
where
    F: Fn(&mut ChaCha8Rng) -> Play + Sync,
{
    cfg.validate()?;
    let rngs = TrialRng::new(cfg.seed);
    let streams = cfg.parallel_streams as u64;
    let chunk = cfg.n_trials.div_ceil(streams);
    let tallies: Vec<(u64, Vec<Tally>)> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let start = (s * chunk).min(cfg.n_trials);
            let end = ((s + 1) * chunk).min(cfg.n_trials);
            let mut wins = 0;
            let mut per = vec![Tally::default(); n_doors * n_doors];
            for trial in start..end {
                let (pick, opened, win) = play(&mut rngs.for_trial(trial));
                let t = &mut per[pick * n_doors + opened];
                t.trials += 1;
                if win {
                    t.wins += 1;
                    wins += 1;
                }
            }
            (wins, per)
        })
        .collect();

    let mut wins = 0;
    let mut per = vec![Tally::default(); n_doors * n_doors];
    for (w, p) in tallies {
        wins += w;
        for (acc, t) in per.iter_mut().zip(p) {
            acc.wins += t.wins;
            acc.trials += t.trials;
        }
    }
    let per_condition = per
        .into_iter()
        .enumerate()
        .filter(|(_, t)| t.trials > 0)
        .map(|(k, t)| ((k / n_doors, k % n_doors), t))
        .collect();
    Ok(SimResult::from_counts(wins, cfg.n_trials, per_condition))
}

/// Samples car, pick, host move and final door once per trial.
pub fn simulate(spec: &GameSpec, cfg: &SimConfig) -> Result<SimResult> {
    validate_spec(spec)?;
    let n = spec.n_doors;
    let car = dist_sampler(&spec.car_dist);
    let pick = dist_sampler(&spec.pick_dist);
    let host: BTreeMap<(Door, Door), Sampler<Door>> = spec
        .host
        .open_prob
        .iter()
        .map(|(&key, d)| (key, dist_sampler(d)))
        .collect();
    let switch: BTreeMap<(Door, Door), u128> = spec
        .switch_rule
        .switch_prob
        .iter()
        .map(|(&key, p)| (key, threshold(p)))
        .collect();

    run_trials(cfg, n, |rng| {
        let c = car.sample(rng.next_u64());
        let p = pick.sample(rng.next_u64());
        let opened = host[&(c, p)].sample(rng.next_u64());
        let switches = (rng.next_u64() as u128) < switch[&(p, opened)];
        let final_door = if switches {
            switch_target(n, p, opened)
        } else {
            p
        };
        (p, opened, final_door == c)
    })
}

fn mixture_sampler<T: Copy>(weights: &[(T, Rational)]) -> Result<Sampler<T>> {
    if let Some((_, w)) = weights.iter().find(|(_, w)| w.is_negative()) {
        return Err(Error::NegativeProbability(w.to_string()));
    }
    let total: Rational = weights.iter().map(|(_, w)| w).sum();
    if !total.is_one() {
        return Err(Error::NotNormalized(total.to_string()));
    }
    Ok(Sampler::new(
        weights.iter().filter(|(_, w)| !w.is_zero()).map(|(x, w)| (*x, w)),
    ))
}

/// Each trial samples a pure strategy for both sides and plays them out.
pub fn simulate_strategy_pair(
    player: &[(PlayerPureStrategy, Rational)],
    host: &[(HostPureStrategy, Rational)],
    cfg: &SimConfig,
) -> Result<SimResult> {
    let indexed: Vec<(usize, Rational)> = player
        .iter()
        .enumerate()
        .map(|(i, (_, w))| (i, w.clone()))
        .collect();
    let player_sampler = mixture_sampler(&indexed)?;
    let host_weights: Vec<(HostPureStrategy, Rational)> = host.to_vec();
    let host_sampler = mixture_sampler(&host_weights)?;

    run_trials(cfg, 3, |rng| {
        let p = &player[player_sampler.sample(rng.next_u64())].0;
        let h = host_sampler.sample(rng.next_u64());
        (p.pick, h.opens(p.pick), payoff(p, &h).is_one())
    })
}

/// One row of a host-bias sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub q: Rational,
    /// Exact P(switch wins | pick door 0, host opened door 2).
    pub exact: Rational,
    /// Empirical estimate of the same conditional.
    pub empirical: f64,
    pub gap: f64,
    /// Trials that hit the conditioning event.
    pub condition_trials: u64,
    pub trials: u64,
    pub seed: u64,
}

/// Exact and simulated conditional switch-win rates of `standard_game(q)`
/// given pick 0 and opened door 2, for each `q`.
pub fn sweep_bias(q_values: &[Rational], cfg: &SimConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let specs = q_values
        .iter()
        .map(standard_game)
        .collect::<Result<Vec<_>>>()?;
    q_values
        .iter()
        .zip(&specs)
        .map(|(q, spec)| {
            let exact = conditional_switch_win(spec, 0, 2)?;
            let tally = simulate(spec, cfg)?.condition(0, 2);
            let empirical = tally.rate().unwrap_or(f64::NAN);
            Ok(SweepRow {
                q: q.clone(),
                gap: (empirical - exact.to_f64()).abs(),
                exact,
                empirical,
                condition_trials: tally.trials,
                trials: cfg.n_trials,
                seed: cfg.seed,
            })
        })
        .collect()
}

/// CSV with columns `q,exact,empirical,gap,trials,seed`.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidConfig(format!("writing CSV: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["q", "exact", "empirical", "gap", "trials", "seed"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.q.to_string(),
            r.exact.to_string(),
            r.empirical.to_string(),
            r.gap.to_string(),
            r.trials.to_string(),
            r.seed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidConfig(format!("writing CSV: {e}")))?;
    Ok(())
}
