// The host leaves one other door closed out of n.

use montyhall::bayes::unconditional_switch_win;
use montyhall::n_door_game;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [3, 4, 10, 100] {
        let spec = n_door_game(n)?;
        println!("{n:>3} doors: switch wins {}", unconditional_switch_win(&spec)?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
