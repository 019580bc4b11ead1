// How the host's tie-break bias moves the conditional answer.

use montyhall::montecarlo::write_sweep_csv;
use montyhall::{sweep_bias, Rational, SimConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid: Vec<Rational> = (0..=4).map(|k| Rational::ratio(k, 4)).collect();
    let rows = sweep_bias(&grid, &SimConfig::new(11, 50_000))?;
    write_sweep_csv(&rows, std::io::stdout().lock())?;
    for row in &rows {
        // P(switch wins | opened Door 3) = 1 / (1 + q)
        let expected = Rational::one().checked_div(&(Rational::one() + &row.q))?;
        assert_eq!(row.exact, expected);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
