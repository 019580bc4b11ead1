// Solve the 12x6 contestant-versus-host game and check the saddle point.

use montyhall::matrix_game::SolveReport;
use montyhall::{build_matrix, solve_lp, verify_saddle};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let game = build_matrix(3)?;
    let sol = solve_lp(&game)?;
    println!("value {}", sol.value);
    for (s, w) in game.row_support(&sol) {
        println!("  contestant {w}: {s}");
    }
    for (s, w) in game.col_support(&sol) {
        println!("  host {w}: {s}");
    }
    println!("LP solution is a saddle: {}", verify_saddle(&game, &sol)?);

    let uniform = game.named_solution(sol.value.clone())?;
    println!(
        "uniform always-switch vs uniform host is a saddle: {}",
        verify_saddle(&game, &uniform)?
    );

    let report = SolveReport::new(&game, &sol)?;
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
