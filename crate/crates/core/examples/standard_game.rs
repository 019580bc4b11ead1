// Exact analysis of the three-door game for a few host biases.

use montyhall::bayes::{analyze, posterior_odds};
use montyhall::{standard_game, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for q in ["0", "1/3", "1/2", "1"] {
        let q: Rational = q.parse()?;
        let spec = standard_game(&q)?;
        let report = analyze(&spec)?;
        println!("q = {q}: switching wins with probability {}", report.unconditional);
        for c in &report.conditionals {
            let odds = posterior_odds(&spec, c.pick, c.opened)?;
            println!(
                "  host opens Door {} ({}): odds {odds}, switch wins {}",
                c.opened + 1,
                c.p_condition,
                c.p_switch_wins_given
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
