//! The door game: car placement, the player's first pick, the host's
//! opening and the player's final choice, with exact outcome enumeration.
//!
//! Doors are 0-indexed. With three doors the host's move is the door he
//! opens. With `n > 3` doors the host opens `n - 2` goat doors at once and
//! the move is recorded as the single unpicked door left closed; see
//! [`switch_target`] for how a switch is resolved in both encodings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dist::{make_uniform, make_point, validate_dist, Door, DoorDist, MIN_DOORS};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Law of the host's move given `(car, pick)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostPolicy {
    pub n_doors: usize,
    pub open_prob: BTreeMap<(Door, Door), DoorDist>,
}

impl HostPolicy {
    pub fn new(n_doors: usize) -> Self {
        HostPolicy {
            n_doors,
            open_prob: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, car: Door, pick: Door, open: DoorDist) -> &mut Self {
        self.open_prob.insert((car, pick), open);
        self
    }

    pub fn get(&self, car: Door, pick: Door) -> Option<&DoorDist> {
        self.open_prob.get(&(car, pick))
    }
}

/// Probability of switching for each `(pick, opened)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchRule {
    pub n_doors: usize,
    pub switch_prob: BTreeMap<(Door, Door), Rational>,
}

impl SwitchRule {
    /// Same switch probability `p` at every `(pick, opened)` with `pick != opened`.
    pub fn constant(n_doors: usize, p: Rational) -> Self {
        let switch_prob = (0..n_doors)
            .flat_map(|pick| (0..n_doors).map(move |opened| (pick, opened)))
            .filter(|(pick, opened)| pick != opened)
            .map(|key| (key, p.clone()))
            .collect();
        SwitchRule {
            n_doors,
            switch_prob,
        }
    }

    pub fn always_switch(n_doors: usize) -> Self {
        Self::constant(n_doors, Rational::one())
    }

    pub fn always_stay(n_doors: usize) -> Self {
        Self::constant(n_doors, Rational::zero())
    }

    pub fn set(&mut self, pick: Door, opened: Door, p: Rational) -> &mut Self {
        self.switch_prob.insert((pick, opened), p);
        self
    }

    pub fn get(&self, pick: Door, opened: Door) -> Option<&Rational> {
        self.switch_prob.get(&(pick, opened))
    }

    pub fn is_always_switch(&self) -> bool {
        self.switch_prob.values().all(Rational::is_one)
    }
}

/// A complete game: independent laws for the car and the first pick, the
/// host's conditional law and the player's switch rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub n_doors: usize,
    pub car_dist: DoorDist,
    pub pick_dist: DoorDist,
    pub host: HostPolicy,
    pub switch_rule: SwitchRule,
}

/// One positive-probability play of the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub car: Door,
    pub pick: Door,
    /// The opened door (3 doors) or the unpicked door left closed (`n > 3`).
    pub opened: Door,
    pub final_door: Door,
    pub win: bool,
    pub prob: Rational,
}

/// The door a switching player moves to after the host's move `opened`.
pub fn switch_target(n_doors: usize, pick: Door, opened: Door) -> Door {
    if n_doors == 3 {
        3 - pick - opened
    } else {
        opened
    }
}

fn check_bias(q: &Rational) -> Result<()> {
    if q.is_probability() {
        Ok(())
    } else {
        Err(Error::InvalidBias(q.to_string()))
    }
}

/// Three doors, uniform car, first pick fixed at door 0, always switch.
///
/// When the player's pick `k` hides the car the host opens door `k + 2`
/// (mod 3) with probability `q` and door `k + 1` with probability `1 - q`;
/// for `k = 0` that is door 2 with probability `q`.
pub fn standard_game(q: &Rational) -> Result<GameSpec> {
    check_bias(q)?;
    let n = 3;
    let mut host = HostPolicy::new(n);
    for car in 0..n {
        for pick in 0..n {
            let open = if car == pick {
                DoorDist::bernoulli(n, (pick + 2) % n, (pick + 1) % n, q)
            } else {
                DoorDist::point_unchecked(n, 3 - car - pick)
            };
            host.set(car, pick, open);
        }
    }
    Ok(GameSpec {
        n_doors: n,
        car_dist: make_uniform(n)?,
        pick_dist: make_point(n, 0)?,
        host,
        switch_rule: SwitchRule::always_switch(n),
    })
}

/// `n` doors, uniform car and pick; the host opens every unpicked goat door
/// but one and the player always switches to the one left closed.
///
/// If the pick hides the car the door left closed is uniform over the other
/// `n - 1` doors. For `n = 3` this is the symmetric three-door game.
pub fn n_door_game(n: usize) -> Result<GameSpec> {
    let car_dist = make_uniform(n)?;
    let mut host = HostPolicy::new(n);
    for car in 0..n {
        for pick in 0..n {
            let open = match (n, car == pick) {
                (3, false) => DoorDist::point_unchecked(n, 3 - car - pick),
                (_, false) => DoorDist::point_unchecked(n, car),
                (_, true) => DoorDist::uniform_over(n, (0..n).filter(|&d| d != pick)),
            };
            host.set(car, pick, open);
        }
    }
    Ok(GameSpec {
        n_doors: n,
        pick_dist: car_dist.clone(),
        car_dist,
        host,
        switch_rule: SwitchRule::always_switch(n),
    })
}

fn check_door(door: Door, n_doors: usize) -> Result<()> {
    if door < n_doors {
        Ok(())
    } else {
        Err(Error::InvalidDoorIndex { door, n_doors })
    }
}

fn dimension(what: &str, got: usize, n: usize) -> Result<()> {
    if got == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} has {got} doors, game has {n}"
        )))
    }
}

/// Checks every structural constraint of a game spec.
pub fn validate_spec(spec: &GameSpec) -> Result<()> {
    let n = spec.n_doors;
    if n < MIN_DOORS {
        return Err(Error::InvalidDoorCount(n));
    }
    dimension("car_dist", spec.car_dist.n_doors(), n)?;
    dimension("pick_dist", spec.pick_dist.n_doors(), n)?;
    dimension("host", spec.host.n_doors, n)?;
    dimension("switch_rule", spec.switch_rule.n_doors, n)?;

    for (&(car, pick), open) in &spec.host.open_prob {
        check_door(car, n)?;
        check_door(pick, n)?;
        dimension("host entry", open.n_doors(), n)?;
        if !open.mass(pick).is_zero() {
            return Err(Error::HostOpensPickedDoor { car, pick });
        }
        let reveals_car = if n == 3 {
            !open.mass(car).is_zero()
        } else {
            // the door left closed must be the car unless the pick already is
            car != pick && open.support().any(|(d, _)| d != car)
        };
        if reveals_car {
            return Err(Error::HostOpensCarDoor { car, pick });
        }
    }

    for (&(pick, opened), p) in &spec.switch_rule.switch_prob {
        check_door(pick, n)?;
        check_door(opened, n)?;
        if pick == opened {
            return Err(Error::MalformedSpec(format!(
                "switch rule defined at pick = opened = {pick}"
            )));
        }
        if !p.is_probability() {
            return Err(Error::InvalidSwitchProbability {
                pick,
                opened,
                value: p.to_string(),
            });
        }
    }

    for (car, _) in spec.car_dist.support() {
        for (pick, _) in spec.pick_dist.support() {
            let open = spec.host.get(car, pick).ok_or_else(|| {
                Error::IncompleteSpec(format!("no host entry for car {car}, pick {pick}"))
            })?;
            for (opened, _) in open.support() {
                if spec.switch_rule.get(pick, opened).is_none() {
                    return Err(Error::IncompleteSpec(format!(
                        "no switch rule for pick {pick}, opened {opened}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Every positive-probability play, probabilities multiplied along
/// car -> pick -> host move -> final door.
pub fn enumerate_outcomes(spec: &GameSpec) -> Result<Vec<Outcome>> {
    validate_spec(spec)?;
    let n = spec.n_doors;
    let mut out = Vec::new();
    for (car, pc) in spec.car_dist.support() {
        for (pick, pp) in spec.pick_dist.support() {
            let prior = pc * pp;
            let open = spec.host.get(car, pick).expect("validated");
            for (opened, po) in open.support() {
                let reach = &prior * po;
                let s = spec.switch_rule.get(pick, opened).expect("validated");
                let stay = Rational::one() - s;
                let target = switch_target(n, pick, opened);
                for (final_door, branch) in [(target, s), (pick, &stay)] {
                    if branch.is_zero() {
                        continue;
                    }
                    out.push(Outcome {
                        car,
                        pick,
                        opened,
                        final_door,
                        win: final_door == car,
                        prob: &reach * branch,
                    });
                }
            }
        }
    }
    Ok(out)
}

impl GameSpec {
    /// Same game with every door index `d` renamed to `perm[d]`.
    pub fn permuted(&self, perm: &[Door]) -> Result<GameSpec> {
        let n = self.n_doors;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for {n} doors",
                perm.len()
            )));
        }
        for &d in perm {
            check_door(d, n)?;
            if std::mem::replace(&mut seen[d], true) {
                return Err(Error::MalformedSpec(format!("door {d} repeated in permutation")));
            }
        }
        let host = HostPolicy {
            n_doors: n,
            open_prob: self
                .host
                .open_prob
                .iter()
                .map(|(&(c, p), dist)| ((perm[c], perm[p]), dist.permuted(perm)))
                .collect(),
        };
        let switch_rule = SwitchRule {
            n_doors: n,
            switch_prob: self
                .switch_rule
                .switch_prob
                .iter()
                .map(|(&(p, o), s)| ((perm[p], perm[o]), s.clone()))
                .collect(),
        };
        Ok(GameSpec {
            n_doors: n,
            car_dist: self.car_dist.permuted(perm),
            pick_dist: self.pick_dist.permuted(perm),
            host,
            switch_rule,
        })
    }

    pub fn with_pick_dist(mut self, pick_dist: DoorDist) -> Self {
        self.pick_dist = pick_dist;
        self
    }

    pub fn with_car_dist(mut self, car_dist: DoorDist) -> Self {
        self.car_dist = car_dist;
        self
    }

    pub fn with_switch_rule(mut self, switch_rule: SwitchRule) -> Self {
        self.switch_rule = switch_rule;
        self
    }

    /// Canonical JSON document (pretty-printed, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&SpecFile::from(self)).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses and validates a game-spec document.
    pub fn from_json(text: &str) -> Result<GameSpec> {
        let file: SpecFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        let spec = file.into_spec()?;
        validate_spec(&spec)?;
        Ok(spec)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    n_doors: usize,
    car_dist: Vec<Rational>,
    pick_dist: Vec<Rational>,
    host: Vec<HostEntry>,
    switch_rule: Vec<SwitchEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HostEntry {
    car: Door,
    pick: Door,
    open: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SwitchEntry {
    pick: Door,
    opened: Door,
    p_switch: Rational,
}

impl From<&GameSpec> for SpecFile {
    fn from(spec: &GameSpec) -> Self {
        SpecFile {
            n_doors: spec.n_doors,
            car_dist: spec.car_dist.masses(),
            pick_dist: spec.pick_dist.masses(),
            host: spec
                .host
                .open_prob
                .iter()
                .map(|(&(car, pick), open)| HostEntry {
                    car,
                    pick,
                    open: open.masses(),
                })
                .collect(),
            switch_rule: spec
                .switch_rule
                .switch_prob
                .iter()
                .map(|(&(pick, opened), p)| SwitchEntry {
                    pick,
                    opened,
                    p_switch: p.clone(),
                })
                .collect(),
        }
    }
}

impl SpecFile {
    fn into_spec(self) -> Result<GameSpec> {
        let n = self.n_doors;
        let mut host = HostPolicy::new(n);
        for e in self.host {
            if host.get(e.car, e.pick).is_some() {
                return Err(Error::MalformedSpec(format!(
                    "duplicate host entry for car {}, pick {}",
                    e.car, e.pick
                )));
            }
            host.set(e.car, e.pick, validate_dist(&e.open)?);
        }
        let mut switch_rule = SwitchRule {
            n_doors: n,
            switch_prob: BTreeMap::new(),
        };
        for e in self.switch_rule {
            if switch_rule.get(e.pick, e.opened).is_some() {
                return Err(Error::MalformedSpec(format!(
                    "duplicate switch entry for pick {}, opened {}",
                    e.pick, e.opened
                )));
            }
            switch_rule.set(e.pick, e.opened, e.p_switch);
        }
        Ok(GameSpec {
            n_doors: n,
            car_dist: validate_dist(&self.car_dist)?,
            pick_dist: validate_dist(&self.pick_dist)?,
            host,
            switch_rule,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn total(outcomes: &[Outcome]) -> Rational {
        outcomes.iter().map(|o| &o.prob).sum()
    }

    #[test]
    fn standard_game_host_law() {
        let g = standard_game(&r("1/2")).unwrap();
        assert_eq!(g.host.get(0, 0).unwrap().masses(), vec![r("0"), r("1/2"), r("1/2")]);
        let g = standard_game(&r("1")).unwrap();
        assert_eq!(g.host.get(0, 0).unwrap().mass(2), r("1"));
        assert_eq!(g.host.get(1, 0).unwrap().mass(2), r("1"));
        assert_eq!(g.host.get(2, 0).unwrap().mass(1), r("1"));
        assert_eq!(standard_game(&r("3/2")).unwrap_err().code(), "invalid-bias");
        assert_eq!(standard_game(&r("-1/2")).unwrap_err().code(), "invalid-bias");
    }

    #[test]
    fn standard_game_outcomes() {
        let g = standard_game(&r("1/2")).unwrap();
        let outs = enumerate_outcomes(&g).unwrap();
        // car 0 -> opened 1 or 2; car 1 -> opened 2; car 2 -> opened 1
        assert_eq!(outs.len(), 4);
        assert!(total(&outs).is_one());
        let mut probs: Vec<_> = outs.iter().map(|o| o.prob.clone()).collect();
        probs.sort();
        assert_eq!(probs, vec![r("1/6"), r("1/6"), r("1/3"), r("1/3")]);
        assert_eq!(validate_spec(&standard_game(&r("0")).unwrap()), Ok(()));
    }

    #[test]
    fn forced_chain_single_outcome() {
        let g = standard_game(&r("1/2"))
            .unwrap()
            .with_car_dist(make_point(3, 1).unwrap());
        let outs = enumerate_outcomes(&g).unwrap();
        assert_eq!(outs.len(), 1);
        let o = &outs[0];
        assert_eq!((o.car, o.pick, o.opened, o.final_door), (1, 0, 2, 1));
        assert!(o.win);
        assert!(o.prob.is_one());
    }

    #[test]
    fn n_door_three_outcome_structure() {
        let outs = enumerate_outcomes(&n_door_game(3).unwrap()).unwrap();
        assert_eq!(outs.len(), 12);
        for o in &outs {
            let expected = if o.car == o.pick { r("1/18") } else { r("1/9") };
            assert_eq!(o.prob, expected);
        }
        assert!(total(&outs).is_one());
    }

    #[test]
    fn n_door_hundred() {
        let g = n_door_game(100).unwrap();
        let outs = enumerate_outcomes(&g).unwrap();
        assert!(total(&outs).is_one());
        let win: Rational = outs.iter().filter(|o| o.win).map(|o| &o.prob).sum();
        assert_eq!(win, r("99/100"));
        assert_eq!(n_door_game(2).unwrap_err().code(), "invalid-door-count");
    }

    #[test]
    fn host_constraints() {
        let mut g = standard_game(&r("1/2")).unwrap();
        g.host.set(
            1,
            0,
            validate_dist(&[r("1/2"), r("0"), r("1/2")]).unwrap(),
        );
        assert_eq!(validate_spec(&g).unwrap_err().code(), "host-opens-picked-door");

        let mut g = standard_game(&r("1/2")).unwrap();
        g.host.set(1, 0, make_point(3, 1).unwrap());
        assert_eq!(validate_spec(&g).unwrap_err().code(), "host-opens-car-door");

        let mut g = n_door_game(5).unwrap();
        g.host.set(1, 0, make_point(5, 3).unwrap());
        assert_eq!(validate_spec(&g).unwrap_err().code(), "host-opens-car-door");
    }

    #[test]
    fn dimension_and_completeness() {
        let g = standard_game(&r("1/2"))
            .unwrap()
            .with_car_dist(make_uniform(4).unwrap());
        assert_eq!(validate_spec(&g).unwrap_err().code(), "dimension-mismatch");

        let mut g = standard_game(&r("1/2")).unwrap();
        g.host.open_prob.remove(&(2, 0));
        assert_eq!(validate_spec(&g).unwrap_err().code(), "incomplete-spec");

        let mut g = standard_game(&r("1/2")).unwrap();
        g.switch_rule.set(0, 1, r("4/3"));
        assert_eq!(
            validate_spec(&g).unwrap_err().code(),
            "invalid-switch-probability"
        );
    }

    #[test]
    fn mixed_switch_rule_splits_branches() {
        let g = standard_game(&r("1/2"))
            .unwrap()
            .with_switch_rule(SwitchRule::constant(3, r("1/4")));
        let outs = enumerate_outcomes(&g).unwrap();
        assert_eq!(outs.len(), 8);
        assert!(total(&outs).is_one());
        for o in &outs {
            assert_ne!(o.opened, o.pick);
            assert_ne!(o.opened, o.car);
            assert_ne!(o.final_door, o.opened);
        }
    }

    #[test]
    fn json_roundtrip_is_canonical() {
        let g = standard_game(&r("1/3")).unwrap();
        let text = g.to_json();
        let back = GameSpec::from_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json(), text);
        assert!(text.starts_with("{\n  \"n_doors\": 3,\n  \"car_dist\": [\n    \"1/3\""));
    }

    #[test]
    fn json_rejects_bad_documents() {
        let g = standard_game(&r("1/3")).unwrap();
        let text = g.to_json().replace("\"n_doors\"", "\"doors\"");
        assert_eq!(GameSpec::from_json(&text).unwrap_err().code(), "malformed-spec");
        let text = g.to_json().replacen("\"1/3\"", "\"1/2\"", 1);
        assert_eq!(GameSpec::from_json(&text).unwrap_err().code(), "not-normalized");
    }

    #[test]
    fn permutation_checks() {
        let g = standard_game(&r("1/2")).unwrap();
        assert!(g.permuted(&[0, 0, 1]).is_err());
        assert!(g.permuted(&[0, 1]).is_err());
        let p = g.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(validate_spec(&p), Ok(()));
        assert_eq!(p.pick_dist.mass(2), r("1"));
    }
}
