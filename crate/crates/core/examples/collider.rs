// The host's move makes car location and first pick dependent.

use montyhall::bayes::collider_check;
use montyhall::{make_uniform, standard_game, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = standard_game(&Rational::ratio(1, 2))?.with_pick_dist(make_uniform(3)?);
    let report = collider_check(&spec)?;
    println!("independent before the host moves: {}", report.marginal_independence);
    println!("dependent once the move is seen: {}", report.dependence_induced());
    if let Some(w) = report.witnesses.first() {
        println!(
            "  e.g. car Door {}, pick Door {}, opened Door {}: joint {} vs product {}",
            w.car + 1,
            w.pick + 1,
            w.opened + 1,
            w.joint,
            w.product
        );
    }

    // a point-mass pick has nothing to correlate with
    assert!(collider_check(&standard_game(&Rational::ratio(1, 2))?).is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
