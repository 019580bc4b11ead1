#![allow(dead_code)]

use std::collections::BTreeMap;

use montyhall::game::{HostPolicy, SwitchRule};
use montyhall::{validate_dist, DoorDist, GameSpec, Rational};
use rand::Rng;

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Door the player ends on after switching, found by scanning the doors.
fn switched_to(n: usize, pick: usize, opened: usize) -> usize {
    if n == 3 {
        (0..n).find(|&d| d != pick && d != opened).unwrap()
    } else {
        opened
    }
}

/// Joint law of (car, pick, opened, win) straight from the spec's fields.
pub fn oracle_joint(spec: &GameSpec) -> BTreeMap<(usize, usize, usize, bool), Rational> {
    let n = spec.n_doors;
    let mut joint = BTreeMap::new();
    for car in 0..n {
        for pick in 0..n {
            let prior = spec.car_dist.mass(car) * spec.pick_dist.mass(pick);
            if prior.is_zero() {
                continue;
            }
            for opened in 0..n {
                let p_open = spec.host.get(car, pick).unwrap().mass(opened);
                if p_open.is_zero() {
                    continue;
                }
                let s = spec.switch_rule.get(pick, opened).unwrap().clone();
                let branches = [
                    (switched_to(n, pick, opened), s.clone()),
                    (pick, Rational::one() - &s),
                ];
                for (final_door, w) in branches {
                    let m = &prior * &p_open * w;
                    *joint
                        .entry((car, pick, opened, final_door == car))
                        .or_insert_with(Rational::zero) += m;
                }
            }
        }
    }
    joint
}

pub fn oracle_win(spec: &GameSpec) -> Rational {
    oracle_joint(spec)
        .iter()
        .filter(|((_, _, _, win), _)| *win)
        .map(|(_, m)| m.clone())
        .sum()
}

/// P(win | pick, opened) by brute-force conditioning, `None` on a null event.
pub fn oracle_conditional(spec: &GameSpec, pick: usize, opened: usize) -> Option<Rational> {
    let joint = oracle_joint(spec);
    let event: Vec<_> = joint
        .iter()
        .filter(|((_, p, o, _), _)| *p == pick && *o == opened)
        .collect();
    let total: Rational = event.iter().map(|(_, m)| (*m).clone()).sum();
    if total.is_zero() {
        return None;
    }
    let wins: Rational = event
        .iter()
        .filter(|((_, _, _, w), _)| *w)
        .map(|(_, m)| (*m).clone())
        .sum();
    Some(wins.checked_div(&total).unwrap())
}

fn random_dist<R: Rng>(rng: &mut R, n: usize, support: &[usize]) -> DoorDist {
    loop {
        let mut w = vec![0i64; n];
        for &d in support {
            w[d] = rng.random_range(0..=6);
        }
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let mass: Vec<Rational> = w.iter().map(|&x| Rational::ratio(x, total)).collect();
        return validate_dist(&mass).unwrap();
    }
}

/// A random valid spec with 3 or 4 doors and small denominators.
pub fn random_spec<R: Rng>(rng: &mut R) -> GameSpec {
    let n = if rng.random_bool(0.75) { 3 } else { 4 };
    let all: Vec<usize> = (0..n).collect();
    let car_dist = random_dist(rng, n, &all);
    let pick_dist = random_dist(rng, n, &all);
    let mut host = HostPolicy::new(n);
    for car in 0..n {
        for pick in 0..n {
            let open = if car == pick {
                let others: Vec<usize> = (0..n).filter(|&d| d != pick).collect();
                random_dist(rng, n, &others)
            } else if n == 3 {
                montyhall::make_point(n, 3 - car - pick).unwrap()
            } else {
                montyhall::make_point(n, car).unwrap()
            };
            host.set(car, pick, open);
        }
    }
    let mut switch_rule = SwitchRule::always_switch(n);
    for pick in 0..n {
        for opened in (0..n).filter(|&d| d != pick) {
            switch_rule.set(pick, opened, Rational::ratio(rng.random_range(0..=6), 6));
        }
    }
    GameSpec {
        n_doors: n,
        car_dist,
        pick_dist,
        host,
        switch_rule,
    }
}

/// Solves the square system `m z = b` exactly; `None` if singular.
pub fn solve_square(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        b.swap(col, piv);
        let p = m[col][col].clone();
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].checked_div(&p).unwrap();
            let pivot_row = m[col].clone();
            for (t, s) in m[i].iter_mut().zip(&pivot_row).skip(col) {
                *t = &*t - &f * s;
            }
            let sub = &f * &b[col];
            b[i] = &b[i] - sub;
        }
    }
    Some((0..n).map(|i| b[i].checked_div(&m[i][i]).unwrap()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Game value by enumerating every basic feasible vertex of the column
/// player's program `min w  s.t.  A y <= w, y >= 0, Σy = 1`.
pub fn vertex_value(payoff: &[Vec<Rational>]) -> Rational {
    let rows = payoff.len();
    let cols = payoff[0].len();
    // inequalities as (coefficients over y..., coefficient of w) <= 0
    let mut ineqs: Vec<Vec<Rational>> = Vec::new();
    for row in payoff {
        let mut c = row.clone();
        c.push(-Rational::one());
        ineqs.push(c);
    }
    for j in 0..cols {
        let mut c = vec![Rational::zero(); cols + 1];
        c[j] = -Rational::one();
        ineqs.push(c);
    }
    let mut simplex_row = vec![Rational::one(); cols];
    simplex_row.push(Rational::zero());

    let mut best: Option<Rational> = None;
    for tight in combinations(rows + cols, cols) {
        let mut m = vec![simplex_row.clone()];
        let mut b = vec![Rational::one()];
        for &t in &tight {
            m.push(ineqs[t].clone());
            b.push(Rational::zero());
        }
        let Some(z) = solve_square(m, b) else { continue };
        let feasible = ineqs.iter().all(|c| {
            let lhs: Rational = c.iter().zip(&z).map(|(a, x)| a * x).sum();
            !lhs.is_positive()
        });
        if feasible {
            let w = z[cols].clone();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.expect("a bounded game has a feasible vertex")
}

/// All weight vectors of length `len` with entries `k / denom` summing to 1.
pub fn simplex_grid(len: usize, denom: i64) -> Vec<Vec<Rational>> {
    fn go(len: usize, left: i64, denom: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<Rational>>) {
        if cur.len() == len - 1 {
            cur.push(left);
            out.push(cur.iter().map(|&k| Rational::ratio(k, denom)).collect());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(len, left - k, denom, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, denom, denom, &mut Vec::new(), &mut out);
    out
}

/// `max over grid x of min_j Σ_i x_i A_ij`.
pub fn grid_maximin(payoff: &[Vec<Rational>], denom: i64) -> Rational {
    let cols = payoff[0].len();
    simplex_grid(payoff.len(), denom)
        .into_iter()
        .map(|x| {
            (0..cols)
                .map(|j| payoff.iter().zip(&x).map(|(row, w)| &row[j] * w).sum::<Rational>())
                .min()
                .unwrap()
        })
        .max()
        .unwrap()
}
