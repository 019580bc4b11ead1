// Seeded simulation compared with the exact answer.

use montyhall::bayes::unconditional_switch_win;
use montyhall::montecarlo::binomial_band;
use montyhall::{named_minimax_strategies, simulate, simulate_strategy_pair, standard_game};
use montyhall::{Rational, SimConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = standard_game(&Rational::ratio(1, 2))?;
    let exact = unconditional_switch_win(&spec)?;
    let cfg = SimConfig::new(2024, 200_000).with_streams(4);
    let res = simulate(&spec, &cfg)?;
    let (lo, hi) = binomial_band(&exact, res.trials);
    println!(
        "exact {exact}, simulated {:.5} over {} trials (band {lo:.5}..{hi:.5})",
        res.rate, res.trials
    );
    for ((pick, opened), t) in &res.per_condition {
        println!("  pick Door {} / opened Door {}: {}/{}", pick + 1, opened + 1, t.wins, t.trials);
    }

    // same seed, one stream: identical tallies
    let serial = simulate(&spec, &SimConfig::new(2024, 200_000))?;
    assert_eq!(serial.wins, res.wins);

    let m = named_minimax_strategies();
    let pair = simulate_strategy_pair(&m.player, &m.host, &SimConfig::new(7, 100_000))?;
    println!("minimax pair: {:.5}", pair.rate);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
