//! Integer words with no two adjacent equal-length blocks of equal sum, and
//! the translations between them and binary words with square-avoiding
//! positions: the periodic word `v`, the mixed word `w = u·2^M + v`, the
//! block-sum word `z`, and the encoding `τ(a) = 0 1^a 0`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::PositionSet;
use crate::par;
use crate::stream::PrefixStream;
use crate::word::{Alphabet, FiniteWord, IntegerWord, Letter, SumIndex};

use super::ConstructionError;

/// Largest modulus accepted for `v` and `w`; keeps `2^M` sums inside `i64`.
pub const MAX_MODULUS: u32 = 40;

/// `v_n = 2^{n mod M}` unless `n ≡ −1 (mod M)`, in which case
/// `v_n = 1 − 2^{M−1}`. Every full period sums to zero.
#[inline]
pub fn v_value(modulus: u32, n: u64) -> i64 {
    let r = (n % modulus as u64) as u32;
    if r == modulus - 1 {
        1 - (1i64 << (modulus - 1))
    } else {
        1i64 << r
    }
}

#[derive(Debug)]
enum IntegerSource {
    V { modulus: u32 },
    W { u: PrefixStream, modulus: u32 },
}

/// An infinite word over a finite set of integers.
#[derive(Debug)]
pub struct IntegerStream {
    source: IntegerSource,
}

impl IntegerStream {
    pub fn prefix(&mut self, n: usize) -> IntegerWord {
        match &mut self.source {
            IntegerSource::V { modulus } => {
                IntegerWord::new((0..n as u64).map(|i| v_value(*modulus, i)).collect())
            }
            IntegerSource::W { u, modulus } => {
                let m = *modulus;
                let u = u.prefix(n);
                IntegerWord::new(
                    u.iter()
                        .enumerate()
                        .map(|(i, &bit)| ((bit as i64) << m) + v_value(m, i as u64))
                        .collect(),
                )
            }
        }
    }

    pub fn modulus(&self) -> u32 {
        match &self.source {
            IntegerSource::V { modulus } | IntegerSource::W { modulus, .. } => *modulus,
        }
    }
}

fn check_modulus(modulus: u32) -> Result<(), ConstructionError> {
    if !(2..=MAX_MODULUS).contains(&modulus) {
        return Err(ConstructionError::Range(format!(
            "modulus {modulus} outside 2..={MAX_MODULUS}"
        )));
    }
    Ok(())
}

/// The periodic word `v` with period `M`.
pub fn v_stream(modulus: u32) -> Result<IntegerStream, ConstructionError> {
    check_modulus(modulus)?;
    Ok(IntegerStream {
        source: IntegerSource::V { modulus },
    })
}

/// `w_n = u_n · 2^M + v_n` for a binary stream `u`.
pub fn w_stream(u: PrefixStream, modulus: u32) -> Result<IntegerStream, ConstructionError> {
    check_modulus(modulus)?;
    if u.alphabet().len() != 2 {
        return Err(ConstructionError::Range("u must be binary".into()));
    }
    Ok(IntegerStream {
        source: IntegerSource::W { u, modulus },
    })
}

/// Two factors `[i, j)` that break a sum/length property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorPair {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// For all nonempty factors of `word[..horizon]`: equal sums force lengths
/// congruent modulo `modulus`. Returns the first offending pair, if any.
///
/// Factors are grouped by sum, so this is linear in the number of factors.
pub fn sum_length_congruence_violation(word: &[i64], modulus: usize, horizon: usize) -> Option<FactorPair> {
    let horizon = horizon.min(word.len());
    let sums = SumIndex::new(&word[..horizon]);
    let mut by_sum: HashMap<i64, (usize, usize)> = HashMap::new();
    for i in 0..horizon {
        for j in i + 1..=horizon {
            let s = sums.sum(i, j);
            match by_sum.get(&s) {
                Some(&(a, b)) if (b - a) % modulus != (j - i) % modulus => {
                    return Some(FactorPair {
                        first: (a, b),
                        second: (i, j),
                    });
                }
                Some(_) => {}
                None => {
                    by_sum.insert(s, (i, j));
                }
            }
        }
    }
    None
}

/// Whether factors of `v` (period `M`) with equal sums always have lengths
/// congruent modulo `M`, exhaustively within `horizon`.
pub fn check_v_sum_lemma(modulus: u32, horizon: usize) -> Result<bool, ConstructionError> {
    let v = v_stream(modulus)?.prefix(horizon);
    Ok(sum_length_congruence_violation(v.values(), modulus as usize, horizon).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WLemmaReport {
    pub holds: bool,
    /// Adjacent pairs `x = w[i, j)`, `y = w[j, k)` examined.
    pub pairs: u64,
    /// Pairs with `Σx = Σy`.
    pub equal_sum_pairs: u64,
    /// Largest `|Σ v[i, j) − Σ v[j, k)|` over all examined pairs; always
    /// below `2^M` when the lemma's inequality holds.
    pub max_v_difference: i64,
    /// First `(i, j, k)` where the conclusion fails.
    pub witness: Option<(usize, usize, usize)>,
}

/// For every adjacent pair `x = w[i, j)`, `y = w[j, k)` with `k ≤ horizon`
/// and `Σx = Σy`: `|x| ≡ |y| (mod M)` and the `u`-sums over both blocks
/// agree.
pub fn check_w_lemma(u: &mut PrefixStream, modulus: u32, horizon: usize) -> Result<WLemmaReport, ConstructionError> {
    check_modulus(modulus)?;
    let u_letters: Vec<i64> = u.prefix(horizon).iter().map(|&b| b as i64).collect();
    let v: Vec<i64> = (0..horizon as u64).map(|i| v_value(modulus, i)).collect();
    let w: Vec<i64> = u_letters
        .iter()
        .zip(&v)
        .map(|(&b, &vn)| (b << modulus) + vn)
        .collect();
    let (ws, us, vs) = (SumIndex::new(&w), SumIndex::new(&u_letters), SumIndex::new(&v));
    let m = modulus as usize;
    // Per left endpoint i, in parallel; results merged in order of i.
    let rows = par::map_range(0..horizon, |i| {
        let mut pairs = 0u64;
        let mut equal = 0u64;
        let mut max_diff = 0i64;
        let mut witness = None;
        for j in i + 1..horizon {
            for k in j + 1..=horizon {
                pairs += 1;
                max_diff = max_diff.max((vs.sum(i, j) - vs.sum(j, k)).abs());
                if ws.sum(i, j) == ws.sum(j, k) {
                    equal += 1;
                    let ok = (j - i) % m == (k - j) % m && us.sum(i, j) == us.sum(j, k);
                    if !ok && witness.is_none() {
                        witness = Some((i, j, k));
                    }
                }
            }
        }
        (pairs, equal, max_diff, witness)
    });
    let mut report = WLemmaReport {
        holds: true,
        pairs: 0,
        equal_sum_pairs: 0,
        max_v_difference: 0,
        witness: None,
    };
    for (pairs, equal, diff, witness) in rows {
        report.pairs += pairs;
        report.equal_sum_pairs += equal;
        report.max_v_difference = report.max_v_difference.max(diff);
        if report.witness.is_none() {
            report.witness = witness;
        }
    }
    report.holds = report.witness.is_none() && report.max_v_difference < 1i64 << modulus;
    Ok(report)
}

/// `z_i = w[n_i] + … + w[n_{i+1} − 1]` with `w = u·2^{2N} + v` (`M = 2N`).
///
/// Requires the window condition `iN ≤ n_i < (i+1)N` for every listed
/// position; `u` must cover up to the last position. The result has one
/// letter fewer than there are positions.
pub fn z_word(u: &[Letter], positions: &PositionSet, block: usize) -> Result<IntegerWord, ConstructionError> {
    if block == 0 {
        return Err(ConstructionError::Range("N must be positive".into()));
    }
    let modulus = 2 * block as u32;
    check_modulus(modulus)?;
    let ps = positions.positions();
    if let Some(i) = ps
        .iter()
        .enumerate()
        .position(|(i, &n)| n < i * block || n >= (i + 1) * block)
    {
        return Err(ConstructionError::WindowViolated(i));
    }
    let end = ps.last().copied().unwrap_or(0);
    if end > u.len() {
        return Err(ConstructionError::Range(format!(
            "u has {} letters, positions reach {end}",
            u.len()
        )));
    }
    let w: Vec<i64> = u[..end]
        .iter()
        .enumerate()
        .map(|(i, &b)| ((b as i64) << modulus) + v_value(modulus, i as u64))
        .collect();
    let sums = SumIndex::new(&w);
    Ok(IntegerWord::new(
        ps.windows(2).map(|p| sums.sum(p[0], p[1])).collect(),
    ))
}

/// Stream form of [`z_word`]: materializes `u` as far as the positions go.
pub fn z_stream(u: &mut PrefixStream, positions: &PositionSet, block: usize) -> Result<IntegerWord, ConstructionError> {
    let end = positions.positions().last().copied().unwrap_or(0);
    let letters = u.prefix(end).to_vec();
    z_word(&letters, positions, block)
}

/// The first `(i, ℓ)` (by `i`, then `ℓ`) with `ℓ ≤ max_block` and
/// `Σ x[i, i+ℓ) = Σ x[i+ℓ, i+2ℓ)`.
pub fn pvhh_check(x: &IntegerWord, max_block: usize) -> Option<(usize, usize)> {
    let sums = x.sum_index();
    let n = x.len();
    par::find_map_first(0..n, |i| {
        (1..=max_block)
            .take_while(|l| i + 2 * l <= n)
            .find(|&l| sums.sum(i, i + l) == sums.sum(i + l, i + 2 * l))
            .map(|l| (i, l))
    })
}

/// Every `(i, ℓ)` violation with `ℓ ≤ max_block`.
pub fn pvhh_violations(x: &IntegerWord, max_block: usize) -> Vec<(usize, usize)> {
    let sums = x.sum_index();
    let n = x.len();
    (0..n)
        .flat_map(|i| {
            let sums = &sums;
            (1..=max_block)
                .take_while(move |l| i + 2 * l <= n)
                .filter(move |&l| sums.sum(i, i + l) == sums.sum(i + l, i + 2 * l))
                .map(move |l| (i, l))
        })
        .collect()
}

/// `τ(a) = 0 1^a 0` applied letterwise; letters must be odd and positive.
pub fn tau_encode(x: &IntegerWord) -> Result<FiniteWord, ConstructionError> {
    let mut out = Vec::new();
    for &a in x.values() {
        if a <= 0 || a % 2 == 0 {
            return Err(ConstructionError::NotOddPositive(a));
        }
        out.push(0);
        out.extend(std::iter::repeat_n(1, a as usize));
        out.push(0);
    }
    Ok(FiniteWord::new(Alphabet::binary(), out)?)
}

/// Start offsets of the `τ` blocks of `x` (not including the end).
pub fn tau_block_boundaries(x: &IntegerWord) -> Vec<usize> {
    x.values()
        .iter()
        .scan(0usize, |offset, &a| {
            let start = *offset;
            *offset += a as usize + 2;
            Some(start)
        })
        .collect()
}

/// Search nodes visited by [`search_pvhh_word`] before it gives up and
/// returns the longest word found so far.
pub const SEARCH_NODE_LIMIT: u64 = 20_000_000;

/// Depth-first search for a word of length `target_len` over `alphabet`
/// with no adjacent equal-sum blocks of length `≤ max_block`. Letters are
/// tried in ascending order; the first longest word found is kept.
pub fn search_pvhh_word(alphabet: &[i64], target_len: usize, max_block: usize) -> IntegerWord {
    Search::new(alphabet, target_len, max_block, None).finish()
}

/// Like [`search_pvhh_word`], but each node tries letters in an order
/// shuffled by a seeded generator. Used to draw varied test fixtures.
pub fn random_pvhh_word(alphabet: &[i64], target_len: usize, max_block: usize, seed: u64) -> IntegerWord {
    Search::new(alphabet, target_len, max_block, Some(ChaCha8Rng::seed_from_u64(seed))).finish()
}

struct Search {
    rng: Option<ChaCha8Rng>,
    alphabet: Vec<i64>,
    target: usize,
    max_block: usize,
    word: Vec<i64>,
    sums: Vec<i64>,
    best: Vec<i64>,
    nodes: u64,
}

impl Search {
    fn new(alphabet: &[i64], target: usize, max_block: usize, rng: Option<ChaCha8Rng>) -> Self {
        let mut letters = alphabet.to_vec();
        letters.sort_unstable();
        letters.dedup();
        Search {
            rng,
            alphabet: letters,
            target,
            max_block,
            word: Vec::with_capacity(target),
            sums: vec![0],
            best: Vec::new(),
            nodes: 0,
        }
    }

    fn finish(mut self) -> IntegerWord {
        self.run();
        IntegerWord::new(self.best)
    }

    /// Whether the newest letter closes a pair of equal-sum blocks.
    fn suffix_violation(&self) -> bool {
        let n = self.word.len();
        let s = &self.sums;
        (1..=self.max_block)
            .take_while(|l| 2 * l <= n)
            .any(|l| s[n] - s[n - l] == s[n - l] - s[n - 2 * l])
    }

    /// Returns true once the target length is reached or the node budget
    /// runs out.
    fn run(&mut self) -> bool {
        if self.word.len() > self.best.len() {
            self.best = self.word.clone();
        }
        if self.word.len() >= self.target {
            return true;
        }
        let mut order = self.alphabet.clone();
        if let Some(rng) = &mut self.rng {
            order.shuffle(rng);
        }
        for a in order {
            self.nodes += 1;
            if self.nodes > SEARCH_NODE_LIMIT {
                return true;
            }
            self.word.push(a);
            self.sums.push(self.sums.last().unwrap() + a);
            let done = !self.suffix_violation() && self.run();
            self.word.pop();
            self.sums.pop();
            if done {
                return true;
            }
        }
        false
    }
}
