//! Abelian complexity, balance, Abelian powers at positions, repetitivity,
//! recurrence and overlap-freeness, all measured over a materialized prefix.
//!
//! Every quantity here describes the scanned prefix only. For an infinite
//! word, prefix complexity is a lower bound of the true value.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use thiserror::Error;

use crate::par;
use crate::word::{FactorIndex, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("window length {n} exceeds the scanned prefix length {len}")]
    WindowTooLong { n: usize, len: usize },
    #[error("need {needed} materialized letters, have {have}")]
    InsufficientPrefix { needed: usize, have: usize },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("positions must be strictly increasing and below the horizon")]
    InvalidPositions,
    #[error("horizon must be positive")]
    EmptyHorizon,
}

fn check_window(idx: &FactorIndex, n: usize) -> Result<(), AnalysisError> {
    if n > idx.len() {
        Err(AnalysisError::WindowTooLong { n, len: idx.len() })
    } else {
        Ok(())
    }
}

/// Number of distinct Parikh vectors among the length-`n` factors of the
/// indexed prefix.
pub fn abelian_complexity(idx: &FactorIndex, n: usize) -> Result<usize, AnalysisError> {
    check_window(idx, n)?;
    if n == 0 {
        return Ok(1);
    }
    let starts = idx.len() - n + 1;
    if idx.arity() == 2 {
        let mut seen = vec![false; n + 1];
        let mut distinct = 0;
        for i in 0..starts {
            let ones = idx.count(i, i + n, 1) as usize;
            if !seen[ones] {
                seen[ones] = true;
                distinct += 1;
            }
        }
        return Ok(distinct);
    }
    let arity = idx.arity();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for i in 0..starts {
        seen.insert(
            (0..arity - 1)
                .map(|c| idx.count(i, i + n, c as Letter))
                .collect(),
        );
    }
    Ok(seen.len())
}

/// For binary prefixes: `max − min` of the number of 1s over length-`n`
/// factors, plus one. Equals [`abelian_complexity`] on binary words since
/// the counts of a sliding window move by at most one per step.
pub fn binary_spread_complexity(idx: &FactorIndex, n: usize) -> Result<usize, AnalysisError> {
    assert_eq!(idx.arity(), 2, "binary prefixes only");
    check_window(idx, n)?;
    let (lo, hi) = (0..=idx.len() - n)
        .map(|i| idx.count(i, i + n, 1))
        .fold((u32::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
    Ok((hi - lo) as usize + 1)
}

/// Number of distinct factors of length `n`.
pub fn subword_complexity(idx: &FactorIndex, n: usize) -> Result<usize, AnalysisError> {
    check_window(idx, n)?;
    let letters = idx.letters();
    Ok((0..=letters.len() - n)
        .map(|i| &letters[i..i + n])
        .collect::<HashSet<_>>()
        .len())
}

/// Abelian complexity of every window length `0..=n_max` over one prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    /// `values[n]` for `n = 0..=n_max`.
    pub values: Vec<usize>,
    pub prefix_len: usize,
}

impl ComplexityProfile {
    pub fn get(&self, n: usize) -> Option<usize> {
        self.values.get(n).copied()
    }

    pub fn max(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

pub fn complexity_profile(idx: &FactorIndex, n_max: usize) -> Result<ComplexityProfile, AnalysisError> {
    check_window(idx, n_max)?;
    let values = par::map_range(0..n_max + 1, |n| {
        abelian_complexity(idx, n).expect("window checked")
    });
    Ok(ComplexityProfile {
        values,
        prefix_len: idx.len(),
    })
}

/// Two equal-length factors realizing the largest letter-count spread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceWitness {
    pub length: usize,
    pub letter: Letter,
    /// Start of the factor with fewest occurrences of `letter`.
    pub low: usize,
    /// Start of the factor with most occurrences of `letter`.
    pub high: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    /// Smallest `C` such that the prefix is `C`-balanced on windows up to
    /// `n_max`.
    pub c: u32,
    pub witness: Option<BalanceWitness>,
    pub n_max: usize,
    pub prefix_len: usize,
}

/// Largest letter-count spread over equal-length factors, for lengths
/// `1..=n_max`.
pub fn balance(idx: &FactorIndex, n_max: usize) -> Result<BalanceReport, AnalysisError> {
    check_window(idx, n_max)?;
    let per_length = par::map_range(1..n_max + 1, |n| {
        let mut best: (u32, Option<BalanceWitness>) = (0, None);
        for letter in 0..idx.arity() as Letter {
            let mut lo = (u32::MAX, 0usize);
            let mut hi = (0u32, 0usize);
            for i in 0..=idx.len() - n {
                let c = idx.count(i, i + n, letter);
                if c < lo.0 {
                    lo = (c, i);
                }
                if c > hi.0 {
                    hi = (c, i);
                }
            }
            let spread = hi.0 - lo.0;
            if spread > best.0 {
                best = (
                    spread,
                    Some(BalanceWitness {
                        length: n,
                        letter,
                        low: lo.1,
                        high: hi.1,
                    }),
                );
            }
        }
        best
    });
    let (c, witness) = per_length
        .into_iter()
        .fold((0, None), |acc, cur| if cur.0 > acc.0 { cur } else { acc });
    Ok(BalanceReport {
        c,
        witness,
        n_max,
        prefix_len: idx.len(),
    })
}

/// `k` consecutive pairwise Abelian-equivalent blocks of length `period`
/// starting at `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AbelianPowerWitness {
    pub position: usize,
    pub k: usize,
    pub period: usize,
}

impl AbelianPowerWitness {
    pub fn end(&self) -> usize {
        self.position + self.k * self.period
    }

    /// Re-checks the witness against `idx`.
    pub fn is_valid(&self, idx: &FactorIndex) -> bool {
        self.period >= 1
            && self.k >= 1
            && self.end() <= idx.len()
            && is_abelian_power_at(idx, self.position, self.k, self.period)
    }
}

#[inline]
fn is_abelian_power_at(idx: &FactorIndex, pos: usize, k: usize, period: usize) -> bool {
    (1..k).all(|i| idx.equivalent_blocks(pos, pos + i * period, period))
}

/// The Abelian `k`-power of least period `≤ max_period` starting at `pos`.
pub fn shortest_abelian_power_at(
    idx: &FactorIndex,
    pos: usize,
    k: usize,
    max_period: usize,
) -> Result<Option<AbelianPowerWitness>, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::ZeroExponent);
    }
    let needed = pos + k * max_period;
    if needed > idx.len() {
        return Err(AnalysisError::InsufficientPrefix {
            needed,
            have: idx.len(),
        });
    }
    Ok((1..=max_period)
        .find(|&period| is_abelian_power_at(idx, pos, k, period))
        .map(|period| AbelianPowerWitness {
            position: pos,
            k,
            period,
        }))
}

/// Every Abelian `k`-power with period `≤ max_period` starting at `pos`.
pub fn abelian_powers_at(
    idx: &FactorIndex,
    pos: usize,
    k: usize,
    max_period: usize,
) -> Result<Vec<AbelianPowerWitness>, AnalysisError> {
    shortest_abelian_power_at(idx, pos, k, max_period)?;
    Ok((1..=max_period)
        .filter(|&period| is_abelian_power_at(idx, pos, k, period))
        .map(|period| AbelianPowerWitness {
            position: pos,
            k,
            period,
        })
        .collect())
}

/// Bounded certificate: no Abelian square of period `≤ max_period` starts at
/// `pos`.
pub fn avoids_abelian_squares_at(
    idx: &FactorIndex,
    pos: usize,
    max_period: usize,
) -> Result<bool, AnalysisError> {
    Ok(shortest_abelian_power_at(idx, pos, 2, max_period)?.is_none())
}

/// Least Abelian `k`-power period at each position of `range` (bounded by
/// `max_period`), computed in parallel.
pub fn minimal_power_periods(
    idx: &FactorIndex,
    range: std::ops::Range<usize>,
    k: usize,
    max_period: usize,
) -> Result<Vec<Option<usize>>, AnalysisError> {
    if range.end > 0 {
        shortest_abelian_power_at(idx, range.end - 1, k, max_period)?;
    }
    Ok(par::map_range(range, |pos| {
        shortest_abelian_power_at(idx, pos, k, max_period)
            .expect("range checked")
            .map(|w| w.period)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitivityReport {
    pub holds: bool,
    /// Start of the first length-`n` factor without an Abelian `k`-power
    /// prefix.
    pub witness: Option<usize>,
    pub n: usize,
    pub k: usize,
}

/// Whether every length-`n` factor of the prefix begins with an Abelian
/// `k`-power (which then has period at most `n / k`).
pub fn everywhere_k_repetitive(
    idx: &FactorIndex,
    k: usize,
    n: usize,
) -> Result<RepetitivityReport, AnalysisError> {
    if k == 0 {
        return Err(AnalysisError::ZeroExponent);
    }
    check_window(idx, n)?;
    let max_period = n / k;
    let witness = par::find_first(0..idx.len() - n + 1, |pos| {
        shortest_abelian_power_at(idx, pos, k, max_period)
            .expect("window fits")
            .is_none()
    });
    Ok(RepetitivityReport {
        holds: witness.is_none(),
        witness,
        n,
        k,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    /// Largest distance between consecutive occurrences of any length-`n`
    /// factor, or `None` if no factor occurs twice.
    pub max_gap: Option<usize>,
    /// The factor realizing `max_gap` and the start of its earlier occurrence.
    pub at: Option<usize>,
    /// Distinct factors seen only once in the prefix; excluded from the max.
    pub single_occurrences: usize,
    pub n: usize,
}

/// Maximum gap between consecutive occurrences of length-`n` factors. Only
/// gaps between two actual occurrences inside the prefix count.
pub fn recurrence_gap(idx: &FactorIndex, n: usize) -> Result<RecurrenceReport, AnalysisError> {
    check_window(idx, n)?;
    let letters = idx.letters();
    let mut last: HashMap<&[Letter], usize> = HashMap::new();
    let mut repeated: HashSet<&[Letter]> = HashSet::new();
    let mut best: Option<(usize, usize)> = None;
    for i in 0..=letters.len() - n {
        let factor = &letters[i..i + n];
        if let Some(prev) = last.insert(factor, i) {
            repeated.insert(factor);
            let gap = i - prev;
            if best.is_none_or(|(g, _)| gap > g) {
                best = Some((gap, prev));
            }
        }
    }
    Ok(RecurrenceReport {
        max_gap: best.map(|b| b.0),
        at: best.map(|b| b.1),
        single_occurrences: last.len() - repeated.len(),
        n,
    })
}

/// Whether `w` has an overlap `axaxa` (with `a` a letter) ending exactly at
/// its last letter.
pub fn has_overlap_suffix(w: &[Letter]) -> bool {
    let n = w.len();
    // An overlap of period p has length 2p + 1.
    (1..)
        .take_while(|p| 2 * p < n)
        .any(|p| {
            let start = n - (2 * p + 1);
            (start..start + p + 1).all(|j| w[j] == w[j + p])
        })
}

/// No factor of the form `axaxa` with `a` a letter and `x` possibly empty.
pub fn is_overlap_free(w: &[Letter]) -> bool {
    (1..=w.len()).all(|end| !has_overlap_suffix(&w[..end]))
}

/// A sorted set of positions inside a scan horizon, each certified up to a
/// period bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionSet {
    positions: Vec<usize>,
    horizon: usize,
    certified_period: Vec<usize>,
}

impl PositionSet {
    pub fn new(
        positions: Vec<usize>,
        horizon: usize,
        certified_period: Vec<usize>,
    ) -> Result<Self, AnalysisError> {
        let increasing = positions.windows(2).all(|w| w[0] < w[1]);
        let inside = positions.last().is_none_or(|&p| p < horizon);
        if !increasing || !inside || certified_period.len() != positions.len() {
            return Err(AnalysisError::InvalidPositions);
        }
        Ok(Self {
            positions,
            horizon,
            certified_period,
        })
    }

    /// Positions with a common certified period bound.
    pub fn uniform(positions: Vec<usize>, horizon: usize, period: usize) -> Result<Self, AnalysisError> {
        let bounds = vec![period; positions.len()];
        Self::new(positions, horizon, bounds)
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn certified_period(&self) -> &[usize] {
        &self.certified_period
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// `|positions| / horizon`.
pub fn density(set: &PositionSet) -> Result<Ratio<u64>, AnalysisError> {
    if set.horizon == 0 {
        return Err(AnalysisError::EmptyHorizon);
    }
    Ok(Ratio::new(set.len() as u64, set.horizon as u64))
}

/// Positions `< horizon` where no Abelian square of period `≤ max_period`
/// starts.
pub fn square_avoiding_positions(
    idx: &FactorIndex,
    horizon: usize,
    max_period: usize,
) -> Result<PositionSet, AnalysisError> {
    let periods = minimal_power_periods(idx, 0..horizon, 2, max_period)?;
    let positions = periods
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.is_none().then_some(i))
        .collect();
    PositionSet::uniform(positions, horizon, max_period)
}
