//! Exact probability distributions over door indices.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Door = usize;

/// Smallest number of doors a game can have.
pub const MIN_DOORS: usize = 3;

/// An exact distribution over `0..n_doors`.
///
/// Only the support is stored, so point masses over many doors stay cheap;
/// [`DoorDist::mass`] still reads as a dense vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoorDist {
    n_doors: usize,
    support: BTreeMap<Door, Rational>,
}

/// Uniform distribution over `n >= 3` doors.
pub fn make_uniform(n: usize) -> Result<DoorDist> {
    if n < MIN_DOORS {
        return Err(Error::InvalidDoorCount(n));
    }
    Ok(DoorDist::uniform_over(n, 0..n))
}

/// All mass on `door`.
pub fn make_point(n: usize, door: Door) -> Result<DoorDist> {
    if door >= n {
        return Err(Error::InvalidDoorIndex { door, n_doors: n });
    }
    Ok(DoorDist::point_unchecked(n, door))
}

/// Accepts `mass` iff every entry is nonnegative and the exact sum is 1.
pub fn validate_dist(mass: &[Rational]) -> Result<DoorDist> {
    if let Some(neg) = mass.iter().find(|m| m.is_negative()) {
        return Err(Error::NegativeProbability(neg.to_string()));
    }
    let total: Rational = mass.iter().sum();
    if !total.is_one() {
        return Err(Error::NotNormalized(total.to_string()));
    }
    let support = mass
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(d, m)| (d, m.clone()))
        .collect();
    Ok(DoorDist {
        n_doors: mass.len(),
        support,
    })
}

impl DoorDist {
    pub(crate) fn point_unchecked(n_doors: usize, door: Door) -> Self {
        DoorDist {
            n_doors,
            support: BTreeMap::from([(door, Rational::one())]),
        }
    }

    /// Uniform over the given doors, which must be nonempty and in range.
    pub(crate) fn uniform_over(n_doors: usize, doors: impl IntoIterator<Item = Door>) -> Self {
        let doors: Vec<Door> = doors.into_iter().collect();
        assert!(!doors.is_empty(), "uniform over an empty door set");
        let w = Rational::ratio(1, doors.len() as i64);
        DoorDist {
            n_doors,
            support: doors.into_iter().map(|d| (d, w.clone())).collect(),
        }
    }

    /// Two-point distribution: `first` with probability `p`, `second` otherwise.
    pub(crate) fn bernoulli(n_doors: usize, first: Door, second: Door, p: &Rational) -> Self {
        let mut support = BTreeMap::new();
        if !p.is_zero() {
            support.insert(first, p.clone());
        }
        let rest = Rational::one() - p;
        if !rest.is_zero() {
            support.insert(second, rest);
        }
        DoorDist { n_doors, support }
    }

    pub fn n_doors(&self) -> usize {
        self.n_doors
    }

    /// Probability of `door`; zero outside the support or out of range.
    pub fn mass(&self, door: Door) -> Rational {
        self.support.get(&door).cloned().unwrap_or_default()
    }

    /// Positive mass at `door`, if any.
    pub fn get(&self, door: Door) -> Option<&Rational> {
        self.support.get(&door)
    }

    /// Dense mass vector of length `n_doors`.
    pub fn masses(&self) -> Vec<Rational> {
        (0..self.n_doors).map(|d| self.mass(d)).collect()
    }

    /// Doors with positive mass, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = (Door, &Rational)> {
        self.support.iter().map(|(d, m)| (*d, m))
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_point(&self) -> bool {
        self.support.len() == 1
    }

    pub fn is_uniform(&self) -> bool {
        self.support.len() == self.n_doors
            && self
                .support
                .values()
                .all(|m| *m == Rational::ratio(1, self.n_doors as i64))
    }

    /// Relabels doors: mass at `d` moves to `perm[d]`.
    pub fn permuted(&self, perm: &[Door]) -> DoorDist {
        DoorDist {
            n_doors: self.n_doors,
            support: self
                .support
                .iter()
                .map(|(d, m)| (perm[*d], m.clone()))
                .collect(),
        }
    }
}

impl Serialize for DoorDist {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.masses())
    }
}
