//! Contest primitives: prize values, effort profiles, winning probabilities
//! and the induced payoff game.

use serde::{Deserialize, Serialize};

use crate::csf::CsfSpec;
use crate::error::{ContestError, Result};
use crate::scalar::Scalar;

/// Prize value of each contestant, indexed `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>", bound = "T: Scalar")]
pub struct ValueProfile<T> {
    values: Vec<T>,
}

impl<T: Scalar> ValueProfile<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(ContestError::InvalidValues(format!(
                "need at least 2 contestants, got {}",
                values.len()
            )));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > T::zero()))
        {
            return Err(ContestError::InvalidValues(format!(
                "value {i} is {v}, must be finite and > 0"
            )));
        }
        Ok(Self { values })
    }

    /// `n` contestants sharing the value `v`.
    pub fn common(n: usize, v: T) -> Result<Self> {
        Self::new(vec![v; n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, i: usize) -> T {
        self.values[i]
    }

    pub fn max_value(&self) -> T {
        self.values
            .iter()
            .copied()
            .fold(T::neg_infinity(), T::max)
    }

    /// Contestants attaining the maximum value, ascending. Exact comparison.
    pub fn argmax_set(&self) -> Vec<usize> {
        let m = self.max_value();
        (0..self.len()).filter(|&i| self.values[i] == m).collect()
    }

    pub fn is_common_value(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for ValueProfile<T> {
    type Error = ContestError;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T> From<ValueProfile<T>> for Vec<T> {
    fn from(v: ValueProfile<T>) -> Self {
        v.values
    }
}

pub fn max_value<T: Scalar>(values: &ValueProfile<T>) -> T {
    values.max_value()
}

pub fn argmax_set<T: Scalar>(values: &ValueProfile<T>) -> Vec<usize> {
    values.argmax_set()
}

pub fn is_common_value<T: Scalar>(values: &ValueProfile<T>) -> bool {
    values.is_common_value()
}

/// Nonnegative effort per contestant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<T>", into = "Vec<T>", bound = "T: Scalar")]
pub struct EffortProfile<T> {
    efforts: Vec<T>,
}

impl<T: Scalar> EffortProfile<T> {
    pub fn new(efforts: Vec<T>) -> Result<Self> {
        if let Some((i, x)) = efforts
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.is_finite() && **x >= T::zero()))
        {
            return Err(ContestError::InvalidEfforts(format!(
                "effort {i} is {x}, must be finite and >= 0"
            )));
        }
        Ok(Self { efforts })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            efforts: vec![T::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.efforts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.efforts.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.efforts
    }

    pub fn get(&self, i: usize) -> T {
        self.efforts[i]
    }

    pub fn aggregate(&self) -> T {
        self.efforts.iter().fold(T::zero(), |acc, &x| acc + x)
    }

    /// Same profile with contestant `player` switched to `effort`.
    pub fn with_effort(&self, player: usize, effort: T) -> Result<Self> {
        if player >= self.len() {
            return Err(ContestError::IndexOutOfRange {
                index: player,
                n: self.len(),
            });
        }
        let mut efforts = self.efforts.clone();
        efforts[player] = effort;
        Self::new(efforts)
    }

    /// Sup-norm distance to another profile of the same length.
    pub fn distance(&self, other: &Self) -> T {
        self.efforts
            .iter()
            .zip(&other.efforts)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    /// Contestants with strictly positive effort.
    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.efforts[i] > T::zero())
            .collect()
    }
}

impl<T: Scalar> TryFrom<Vec<T>> for EffortProfile<T> {
    type Error = ContestError;
    fn try_from(v: Vec<T>) -> Result<Self> {
        Self::new(v)
    }
}

impl<T> From<EffortProfile<T>> for Vec<T> {
    fn from(p: EffortProfile<T>) -> Self {
        p.efforts
    }
}

pub fn aggregate_effort<T: Scalar>(profile: &EffortProfile<T>) -> T {
    profile.aggregate()
}

/// A point of the probability simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WinProbabilities<T> {
    probs: Vec<T>,
}

impl<T: Scalar> WinProbabilities<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        let tol = T::simplex_tolerance();
        if probs
            .iter()
            .any(|p| !p.is_finite() || *p < T::zero() || *p > T::one())
        {
            return Err(ContestError::Config(format!(
                "probabilities {probs:?} leave [0, 1]"
            )));
        }
        let total = probs.iter().fold(T::zero(), |acc, &p| acc + p);
        if (total - T::one()).abs() > tol {
            return Err(ContestError::Config(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn as_slice(&self) -> &[T] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> T {
        self.probs[i]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// The strategic-form game induced by a CSF and a value profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ContestGame<T> {
    values: ValueProfile<T>,
    csf: CsfSpec<T>,
}

impl<T: Scalar> ContestGame<T> {
    pub fn new(values: ValueProfile<T>, csf: CsfSpec<T>) -> Result<Self> {
        csf.check_admissible(&values)?;
        Ok(Self { values, csf })
    }

    pub fn values(&self) -> &ValueProfile<T> {
        &self.values
    }

    pub fn csf(&self) -> &CsfSpec<T> {
        &self.csf
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn max_value(&self) -> T {
        self.values.max_value()
    }

    pub(crate) fn check_profile(&self, profile: &EffortProfile<T>) -> Result<()> {
        if profile.len() != self.n() {
            return Err(ContestError::LengthMismatch {
                expected: self.n(),
                got: profile.len(),
            });
        }
        Ok(())
    }

    pub fn probabilities(&self, profile: &EffortProfile<T>) -> Result<WinProbabilities<T>> {
        self.csf.evaluate(&self.values, profile)
    }

    /// `u_i = p_i v_i - x_i` for every contestant.
    pub fn payoff(&self, profile: &EffortProfile<T>) -> Result<Vec<T>> {
        let p = self.probabilities(profile)?;
        Ok((0..self.n())
            .map(|i| p.get(i) * self.values.get(i) - profile.get(i))
            .collect())
    }

    /// Payoff of one contestant on a raw, already validated effort slice.
    /// `scratch` must have length `n`.
    pub(crate) fn utility_raw(&self, player: usize, efforts: &[T], scratch: &mut [T]) -> T {
        self.csf.fill_probabilities(&self.values, efforts, scratch);
        scratch[player] * self.values.get(player) - efforts[player]
    }

    pub(crate) fn utilities_raw(&self, efforts: &[T], scratch: &mut [T]) {
        self.csf.fill_probabilities(&self.values, efforts, scratch);
        for i in 0..self.n() {
            scratch[i] = scratch[i] * self.values.get(i) - efforts[i];
        }
    }
}

pub fn payoff<T: Scalar>(game: &ContestGame<T>, profile: &EffortProfile<T>) -> Result<Vec<T>> {
    game.payoff(profile)
}
