// Build a nonstandard game, write it as JSON and read it back.

use montyhall::bayes::analyze;
use montyhall::dist::validate_dist;
use montyhall::game::SwitchRule;
use montyhall::{standard_game, GameSpec, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = |s: &str| s.parse::<Rational>();
    let car = validate_dist(&[r("1/2")?, r("1/4")?, r("1/4")?])?;
    let mut rule = SwitchRule::always_switch(3);
    rule.set(0, 1, r("1/2")?);
    let spec = standard_game(&r("1/3")?)?
        .with_car_dist(car)
        .with_switch_rule(rule);

    let text = spec.to_json();
    let back = GameSpec::from_json(&text)?;
    assert_eq!(back, spec);
    assert_eq!(back.to_json(), text);

    let report = analyze(&back)?;
    println!("switch wins {}", report.unconditional);
    println!("every conditional at least 1/2: {}", report.floor_holds);
    println!("{text}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
