//! Exact switch-win probabilities.
//!
//! Conditional probabilities are computed in odds form: the prior odds on
//! the car's location are multiplied by the likelihood of the host's move,
//! and the resulting posterior odds are pushed through the switch rule.
//! Unconditional probabilities and the weights of the conditioning events
//! come from outcome enumeration, so the law of total probability relates
//! two independent computations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dist::Door;
use crate::error::{Error, Result};
use crate::game::{enumerate_outcomes, switch_target, validate_spec, GameSpec};
use crate::rational::Rational;

/// Nonnegative odds, not all zero, stored scaled so the smallest nonzero
/// entry is 1. Scaling is canonical, so `==` is scale-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddsVector {
    labels: Vec<Door>,
    odds: Vec<Rational>,
}

impl OddsVector {
    pub fn new(labels: Vec<Door>, odds: Vec<Rational>) -> Result<Self> {
        if labels.len() != odds.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} odds",
                labels.len(),
                odds.len()
            )));
        }
        if let Some(neg) = odds.iter().find(|o| o.is_negative()) {
            return Err(Error::NegativeProbability(neg.to_string()));
        }
        let scale = odds
            .iter()
            .filter(|o| !o.is_zero())
            .min()
            .cloned()
            .ok_or_else(|| Error::NotNormalized("all odds are zero".into()))?;
        let odds = odds
            .iter()
            .map(|o| o.checked_div(&scale))
            .collect::<Result<_>>()?;
        Ok(OddsVector { labels, odds })
    }

    pub fn labels(&self) -> &[Door] {
        &self.labels
    }

    pub fn odds(&self) -> &[Rational] {
        &self.odds
    }

    pub fn odds_of(&self, door: Door) -> Option<&Rational> {
        self.labels.iter().position(|&d| d == door).map(|i| &self.odds[i])
    }

    /// Converts odds to probabilities.
    pub fn probabilities(&self) -> Vec<Rational> {
        let total: Rational = self.odds.iter().sum();
        self.odds
            .iter()
            .map(|o| o.checked_div(&total).expect("odds not all zero"))
            .collect()
    }

    /// Elementwise product with a likelihood vector over the same labels.
    pub fn update(&self, likelihood: &[Rational]) -> Result<OddsVector> {
        if likelihood.len() != self.odds.len() {
            return Err(Error::DimensionMismatch(format!(
                "likelihood of length {} for {} odds",
                likelihood.len(),
                self.odds.len()
            )));
        }
        let odds = self.odds.iter().zip(likelihood).map(|(a, b)| a * b).collect();
        OddsVector::new(self.labels.clone(), odds)
    }
}

impl fmt::Display for OddsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.odds.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            if o.denom() == &1.into() {
                write!(f, "{}", o.numer())?;
            } else {
                write!(f, "{o}")?;
            }
        }
        Ok(())
    }
}

/// The player's win probability given one `(pick, opened)` observation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionalReport {
    pub pick: Door,
    pub opened: Door,
    pub p_condition: Rational,
    #[serde(rename = "p_switch_wins")]
    pub p_switch_wins_given: Rational,
}

/// Probability that the player ends on the car.
pub fn unconditional_switch_win(spec: &GameSpec) -> Result<Rational> {
    Ok(enumerate_outcomes(spec)?
        .iter()
        .filter(|o| o.win)
        .map(|o| &o.prob)
        .sum())
}

fn check_door(spec: &GameSpec, door: Door) -> Result<()> {
    if door < spec.n_doors {
        Ok(())
    } else {
        Err(Error::InvalidDoorIndex {
            door,
            n_doors: spec.n_doors,
        })
    }
}

/// Unnormalized posterior weights `P(car) · P(opened | car, pick)` for the
/// cars where they are positive.
fn posterior_weights(spec: &GameSpec, pick: Door, opened: Door) -> Result<Vec<(Door, Rational)>> {
    let weights: Vec<(Door, Rational)> = if spec.pick_dist.get(pick).is_none() {
        Vec::new()
    } else {
        spec.car_dist
            .support()
            .filter_map(|(car, prior)| {
                let likelihood = spec.host.get(car, pick)?.get(opened)?;
                Some((car, prior * likelihood))
            })
            .collect()
    };
    if weights.is_empty() {
        return Err(Error::UndefinedConditional { pick, opened });
    }
    Ok(weights)
}

fn posterior_unchecked(spec: &GameSpec, pick: Door, opened: Door) -> Result<OddsVector> {
    let mut odds = vec![Rational::zero(); spec.n_doors];
    for (car, w) in posterior_weights(spec, pick, opened)? {
        odds[car] = w;
    }
    OddsVector::new((0..spec.n_doors).collect(), odds)
}

/// Posterior odds on the car's location given the first pick and the
/// host's move: prior odds times the likelihood of `opened` under each car.
pub fn posterior_odds(spec: &GameSpec, pick: Door, opened: Door) -> Result<OddsVector> {
    validate_spec(spec)?;
    check_door(spec, pick)?;
    check_door(spec, opened)?;
    posterior_unchecked(spec, pick, opened)
}

fn conditional_unchecked(spec: &GameSpec, pick: Door, opened: Door) -> Result<Rational> {
    let weights = posterior_weights(spec, pick, opened)?;
    let s = spec
        .switch_rule
        .get(pick, opened)
        .ok_or_else(|| Error::IncompleteSpec(format!("no switch rule for ({pick}, {opened})")))?;
    let target = switch_target(spec.n_doors, pick, opened);
    let stay = Rational::one() - s;
    let mut total = Rational::zero();
    let mut wins = Rational::zero();
    for (car, w) in &weights {
        total += w;
        if *car == target {
            wins += s * w;
        }
        if *car == pick {
            wins += &stay * w;
        }
    }
    wins.checked_div(&total)
}

/// P(final door = car | first pick, host's move).
pub fn conditional_switch_win(spec: &GameSpec, pick: Door, opened: Door) -> Result<Rational> {
    validate_spec(spec)?;
    check_door(spec, pick)?;
    check_door(spec, opened)?;
    conditional_unchecked(spec, pick, opened)
}

/// One report per positive-probability `(pick, opened)` pair, ordered by pair.
pub fn all_conditionals(spec: &GameSpec) -> Result<Vec<ConditionalReport>> {
    let mut weights: BTreeMap<(Door, Door), Rational> = BTreeMap::new();
    for o in enumerate_outcomes(spec)? {
        *weights.entry((o.pick, o.opened)).or_default() += o.prob;
    }
    weights
        .into_iter()
        .map(|((pick, opened), p_condition)| {
            Ok(ConditionalReport {
                pick,
                opened,
                p_condition,
                p_switch_wins_given: conditional_unchecked(spec, pick, opened)?,
            })
        })
        .collect()
}

/// `Σ p_condition · p_switch_wins_given` over the reports.
pub fn total_probability(reports: &[ConditionalReport]) -> Rational {
    reports
        .iter()
        .map(|r| &r.p_condition * &r.p_switch_wins_given)
        .sum()
}

/// True iff every conditional equals the unconditional win probability.
pub fn symmetry_collapse_check(spec: &GameSpec) -> Result<bool> {
    let unconditional = unconditional_switch_win(spec)?;
    Ok(all_conditionals(spec)?
        .iter()
        .all(|r| r.p_switch_wins_given == unconditional))
}

/// True iff every conditional switch-win probability is at least 1/2.
///
/// Only applies to always-switch games with a uniformly placed car; other
/// specs are rejected with `InapplicableProposition`.
pub fn conditional_floor_check(spec: &GameSpec) -> Result<bool> {
    validate_spec(spec)?;
    if !spec.car_dist.is_uniform() {
        return Err(Error::InapplicableProposition(
            "car placement is not uniform".into(),
        ));
    }
    if !spec.switch_rule.is_always_switch() {
        return Err(Error::InapplicableProposition(
            "player does not always switch".into(),
        ));
    }
    floor_holds(spec)
}

/// Minimum conditional win probability is at least 1/2, for any spec.
pub fn floor_holds(spec: &GameSpec) -> Result<bool> {
    let half = Rational::ratio(1, 2);
    Ok(all_conditionals(spec)?
        .iter()
        .all(|r| r.p_switch_wins_given >= half))
}

/// A conditioning event under which car and first pick are dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColliderWitness {
    pub car: Door,
    pub pick: Door,
    pub opened: Door,
    /// P(car, pick | opened)
    pub joint: Rational,
    /// P(car | opened) · P(pick | opened)
    pub product: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColliderReport {
    /// P(car, pick) = P(car) P(pick) for every pair.
    pub marginal_independence: bool,
    /// Every `(car, pick, opened)` where conditional independence fails.
    pub witnesses: Vec<ColliderWitness>,
}

impl ColliderReport {
    pub fn dependence_induced(&self) -> bool {
        !self.witnesses.is_empty()
    }

    pub fn witness(&self, car: Door, pick: Door, opened: Door) -> Option<&ColliderWitness> {
        self.witnesses
            .iter()
            .find(|w| (w.car, w.pick, w.opened) == (car, pick, opened))
    }
}

/// Car and first pick are independent causes of the host's move; checks
/// that they are independent marginally and dependent given the move.
pub fn collider_check(spec: &GameSpec) -> Result<ColliderReport> {
    if spec.car_dist.is_point() || spec.pick_dist.is_point() {
        return Err(Error::InapplicableCheck(
            "car and pick laws must both be non-degenerate".into(),
        ));
    }
    let n = spec.n_doors;
    let mut joint: BTreeMap<(Door, Door, Door), Rational> = BTreeMap::new();
    for o in enumerate_outcomes(spec)? {
        *joint.entry((o.car, o.pick, o.opened)).or_default() += o.prob;
    }

    let mut car_pick: BTreeMap<(Door, Door), Rational> = BTreeMap::new();
    for (&(c, p, _), m) in &joint {
        *car_pick.entry((c, p)).or_default() += m;
    }
    let marginal_independence = (0..n).all(|c| {
        (0..n).all(|p| {
            let observed = car_pick.get(&(c, p)).cloned().unwrap_or_default();
            observed == spec.car_dist.mass(c) * spec.pick_dist.mass(p)
        })
    });

    let mut witnesses = Vec::new();
    for g in 0..n {
        let given: Vec<((Door, Door), &Rational)> = joint
            .iter()
            .filter(|((_, _, o), _)| *o == g)
            .map(|(&(c, p, _), m)| ((c, p), m))
            .collect();
        let p_g: Rational = given.iter().map(|(_, m)| *m).sum();
        if p_g.is_zero() {
            continue;
        }
        let mut by_car = vec![Rational::zero(); n];
        let mut by_pick = vec![Rational::zero(); n];
        let mut cell: BTreeMap<(Door, Door), Rational> = BTreeMap::new();
        for ((c, p), m) in &given {
            let m = m.checked_div(&p_g)?;
            by_car[*c] += &m;
            by_pick[*p] += &m;
            cell.insert((*c, *p), m);
        }
        for (c, car_m) in by_car.iter().enumerate() {
            for (p, pick_m) in by_pick.iter().enumerate() {
                let joint = cell.get(&(c, p)).cloned().unwrap_or_default();
                let product = car_m * pick_m;
                if joint != product {
                    witnesses.push(ColliderWitness {
                        car: c,
                        pick: p,
                        opened: g,
                        joint,
                        product,
                    });
                }
            }
        }
    }
    Ok(ColliderReport {
        marginal_independence,
        witnesses,
    })
}

/// Everything `analyze` reports about a spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub unconditional: Rational,
    pub conditionals: Vec<ConditionalReport>,
    pub symmetric_collapse: bool,
    pub floor_holds: bool,
}

pub fn analyze(spec: &GameSpec) -> Result<AnalysisReport> {
    let unconditional = unconditional_switch_win(spec)?;
    let conditionals = all_conditionals(spec)?;
    let symmetric_collapse = conditionals
        .iter()
        .all(|r| r.p_switch_wins_given == unconditional);
    let half = Rational::ratio(1, 2);
    let floor_holds = conditionals.iter().all(|r| r.p_switch_wins_given >= half);
    Ok(AnalysisReport {
        unconditional,
        conditionals,
        symmetric_collapse,
        floor_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{make_point, make_uniform, validate_dist};
    use crate::game::{n_door_game, standard_game, SwitchRule};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn symmetric() -> GameSpec {
        standard_game(&r("1/2"))
            .unwrap()
            .with_pick_dist(make_uniform(3).unwrap())
    }

    #[test]
    fn odds_canonicalization() {
        let a = OddsVector::new(vec![0, 1, 2], vec![r("1/2"), r("1"), r("0")]).unwrap();
        let b = OddsVector::new(vec![0, 1, 2], vec![r("2"), r("4"), r("0")]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1:2:0");
        assert_eq!(a.probabilities(), vec![r("1/3"), r("2/3"), r("0")]);
        assert!(OddsVector::new(vec![0], vec![r("0")]).is_err());
        assert!(OddsVector::new(vec![0, 1], vec![r("-1"), r("1")]).is_err());
    }

    #[test]
    fn direct_update_from_uniform_prior() {
        let prior = OddsVector::new(vec![0, 1, 2], vec![r("1"); 3]).unwrap();
        let post = prior.update(&[r("1/2"), r("1"), r("0")]).unwrap();
        assert_eq!(post.probabilities(), vec![r("1/3"), r("2/3"), r("0")]);
    }

    #[test]
    fn posterior_examples() {
        let g = standard_game(&r("1/2")).unwrap();
        let odds = posterior_odds(&g, 0, 2).unwrap();
        assert_eq!(odds.odds(), &[r("1"), r("2"), r("0")]);

        let q = r("3/7");
        let odds = posterior_odds(&standard_game(&q).unwrap(), 0, 2).unwrap();
        let ratio = odds.odds_of(0).unwrap().checked_div(odds.odds_of(1).unwrap());
        assert_eq!(ratio.unwrap(), q);

        let odds = posterior_odds(&standard_game(&r("0")).unwrap(), 0, 2).unwrap();
        assert!(odds.odds_of(0).unwrap().is_zero());
        assert_eq!(conditional_switch_win(&standard_game(&r("0")).unwrap(), 0, 2), Ok(r("1")));
    }

    #[test]
    fn undefined_conditionals_are_errors() {
        let g = standard_game(&r("0")).unwrap();
        // the first pick is fixed at door 0
        assert_eq!(
            conditional_switch_win(&g, 1, 2).unwrap_err().code(),
            "undefined-conditional"
        );
        let g = standard_game(&r("1")).unwrap().with_car_dist(make_point(3, 1).unwrap());
        assert_eq!(
            posterior_odds(&g, 0, 1).unwrap_err().code(),
            "undefined-conditional"
        );
        assert_eq!(posterior_odds(&g, 0, 5).unwrap_err().code(), "invalid-door-index");
    }

    #[test]
    fn conditional_examples() {
        let at = |q: &str| conditional_switch_win(&standard_game(&r(q)).unwrap(), 0, 2).unwrap();
        assert_eq!(at("1/2"), r("2/3"));
        assert_eq!(at("1"), r("1/2"));
        assert_eq!(at("1/3"), r("3/4"));
    }

    #[test]
    fn unconditional_examples() {
        for q in ["0", "1/4", "1"] {
            assert_eq!(unconditional_switch_win(&standard_game(&r(q)).unwrap()), Ok(r("2/3")));
        }
        let same = standard_game(&r("1/2"))
            .unwrap()
            .with_car_dist(make_point(3, 0).unwrap());
        assert_eq!(unconditional_switch_win(&same), Ok(r("0")));
    }

    #[test]
    fn all_conditionals_examples() {
        let reports = all_conditionals(&standard_game(&r("1/2")).unwrap()).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|x| x.p_switch_wins_given == r("2/3")));

        let reports = all_conditionals(&standard_game(&r("1")).unwrap()).unwrap();
        let by: Vec<_> = reports
            .iter()
            .map(|x| (x.opened, x.p_switch_wins_given.clone()))
            .collect();
        assert_eq!(by, vec![(1, r("1")), (2, r("1/2"))]);

        let reports = all_conditionals(&symmetric()).unwrap();
        assert_eq!(reports.len(), 6);
        assert!(reports.iter().all(|x| x.p_switch_wins_given == r("2/3")));
    }

    #[test]
    fn symmetry_collapse_examples() {
        assert_eq!(symmetry_collapse_check(&symmetric()), Ok(true));
        assert_eq!(symmetry_collapse_check(&standard_game(&r("2/3")).unwrap()), Ok(false));
        let single = standard_game(&r("1/2"))
            .unwrap()
            .with_car_dist(make_point(3, 1).unwrap());
        assert_eq!(symmetry_collapse_check(&single), Ok(true));
    }

    #[test]
    fn floor_examples() {
        for q in ["0", "1/4", "1/2", "3/4", "1"] {
            assert_eq!(conditional_floor_check(&standard_game(&r(q)).unwrap()), Ok(true));
        }
        let skewed = standard_game(&r("1/2"))
            .unwrap()
            .with_car_dist(validate_dist(&[r("9/10"), r("1/20"), r("1/20")]).unwrap());
        assert_eq!(
            conditional_floor_check(&skewed).unwrap_err().code(),
            "inapplicable-proposition"
        );
        // reported honestly outside the hypothesis: switching wins 1/10 given door 2
        assert_eq!(conditional_switch_win(&skewed, 0, 2), Ok(r("1/10")));
        assert_eq!(floor_holds(&skewed), Ok(false));
        let stayer = standard_game(&r("1/2"))
            .unwrap()
            .with_switch_rule(SwitchRule::always_stay(3));
        assert!(conditional_floor_check(&stayer).is_err());
    }

    #[test]
    fn collider_on_symmetric_game() {
        let report = collider_check(&symmetric()).unwrap();
        assert!(report.marginal_independence);
        assert!(report.dependence_induced());
        let w = report.witness(0, 0, 2).unwrap();
        assert_eq!(w.joint, r("1/6"));
        assert_eq!(w.product, r("1/4"));
        let point = collider_check(&standard_game(&r("1/2")).unwrap());
        assert_eq!(point.unwrap_err().code(), "inapplicable-check");
    }

    #[test]
    fn n_doors_report() {
        let report = analyze(&n_door_game(10).unwrap()).unwrap();
        assert_eq!(report.unconditional, r("9/10"));
        assert_eq!(report.conditionals.len(), 90);
        assert!(report.symmetric_collapse);
        assert!(report.floor_holds);
    }

    #[test]
    fn report_json_shape() {
        let report = analyze(&standard_game(&r("1/2")).unwrap()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"unconditional":"2/3","conditionals":[{"pick":0,"opened":1,"p_condition":"1/2","p_switch_wins":"2/3"},{"pick":0,"opened":2,"p_condition":"1/2","p_switch_wins":"2/3"}],"symmetric_collapse":true,"floor_holds":true}"#
        );
    }
}
