//! Thue–Morse machinery: the popcount letter rule, the binary-expansion
//! lemma, pulling Abelian cubes of `μ(z)` back to `z`, the cube-period lower
//! bound at positions `2^{n+2} − 1`, and explicit suffix `k`-power witnesses.

use std::fmt;

use thiserror::Error;

use crate::analysis::{self, AbelianPowerWitness};
use crate::morphism::Morphism;
use crate::stream::{Indexed, PrefixStream};
use crate::word::{Alphabet, FactorIndex, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("parameters out of range: {0}")]
    Range(&'static str),
    #[error("witness is not an Abelian cube of mu(z) at the given position")]
    InvalidWitness,
    #[error("cube at odd position {position} has odd period {period}")]
    OddPeriod { position: usize, period: usize },
    #[error("desubstitution failed: z[{n}], z[{n}+{k}], z[{n}+2*{k}] differ")]
    Unequal { n: usize, k: usize },
    #[error(transparent)]
    Analysis(#[from] analysis::AnalysisError),
}

/// `t_n`: parity of the number of 1s in the binary expansion of `n`.
#[inline]
pub fn tm_letter(n: u64) -> Letter {
    (n.count_ones() & 1) as Letter
}

/// The Thue–Morse word computed letter by letter from [`tm_letter`].
pub fn thue_morse() -> PrefixStream {
    PrefixStream::new(Alphabet::binary(), Indexed(tm_letter))
}

/// Binary expansion of a positive integer, most significant bit first,
/// without leading zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryExpansion(Vec<u8>);

impl BinaryExpansion {
    pub fn of(value: u64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let bits = 64 - value.leading_zeros();
        Some(Self((0..bits).rev().map(|i| ((value >> i) & 1) as u8).collect()))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn value(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }
}

impl fmt::Display for BinaryExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]_2")
    }
}

/// Outcome of checking `[2^{n+1} + k]_2 = 10u` and `[2^{n+1} + 2k + 1]_2 = 1u1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCheck {
    pub holds: bool,
    /// The `n`-bit word `u` read off the first expansion.
    pub u: Vec<u8>,
}

/// For `n ≥ 1` and `0 ≤ k < 2^n`, finds `u ∈ {0,1}^n` with
/// `[2^{n+1} + k]_2 = 10u` and checks `[2^{n+1} + 2k + 1]_2 = 1u1`.
pub fn expansion_lemma_check(n: u32, k: u64) -> Result<ExpansionCheck, TmError> {
    if n == 0 || n > 61 {
        return Err(TmError::Range("need 1 <= n <= 61"));
    }
    if k >= 1 << n {
        return Err(TmError::Range("need 0 <= k < 2^n"));
    }
    let first = BinaryExpansion::of((1 << (n + 1)) + k).expect("positive");
    let second = BinaryExpansion::of((1 << (n + 1)) + 2 * k + 1).expect("positive");
    let bits = first.bits();
    let u = bits[2..].to_vec();
    let first_ok = bits.len() == n as usize + 2 && bits[0] == 1 && bits[1] == 0;
    let s = second.bits();
    let second_ok = s.len() == n as usize + 2 && s[0] == 1 && s[s.len() - 1] == 1 && s[1..s.len() - 1] == u[..];
    Ok(ExpansionCheck {
        holds: first_ok && second_ok,
        u,
    })
}

/// `(n, k)` with `z_n = z_{n+k} = z_{n+2k}`, recovered from an Abelian cube of
/// period `2k` at position `2n + 1` of `μ(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeDesubstitution {
    pub n: usize,
    pub k: usize,
}

impl CubeDesubstitution {
    pub fn period(&self) -> usize {
        2 * self.k
    }
}

/// Pulls an Abelian cube of `μ(z)` at an odd position back to an arithmetic
/// progression of equal letters in `z`.
pub fn cube_desubstitute(
    z: &mut PrefixStream,
    witness: &AbelianPowerWitness,
) -> Result<CubeDesubstitution, TmError> {
    if witness.k != 3 || witness.position.is_multiple_of(2) || witness.period == 0 {
        return Err(TmError::Range("need a cube witness at an odd position"));
    }
    let mu = Morphism::builtin("mu").expect("builtin");
    let z_len = witness.end().div_ceil(2) + 1;
    let image = mu.apply_letters(z.prefix(z_len));
    let idx = FactorIndex::new(&image, 2);
    if !witness.is_valid(&idx) {
        return Err(TmError::InvalidWitness);
    }
    if witness.period % 2 == 1 {
        return Err(TmError::OddPeriod {
            position: witness.position,
            period: witness.period,
        });
    }
    let n = (witness.position - 1) / 2;
    let k = witness.period / 2;
    let z = z.prefix(n + 2 * k + 1);
    if z[n] == z[n + k] && z[n] == z[n + 2 * k] {
        Ok(CubeDesubstitution { n, k })
    } else {
        Err(TmError::Unequal { n, k })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPositionReport {
    pub n: u32,
    /// `2^{n+2} − 1`
    pub position: usize,
    /// `2^{n+1}`
    pub lower_bound: usize,
    /// Least Abelian cube period at `position`, if one is `≤ max_period`.
    pub minimal_period: Option<usize>,
    pub max_period: usize,
    /// No cube of period below `lower_bound` starts at `position`.
    pub bound_holds: bool,
}

/// Scans the Thue–Morse word at position `2^{n+2} − 1` for its least
/// Abelian cube period.
pub fn special_position_cube_period(n: u32, max_period: usize) -> Result<SpecialPositionReport, TmError> {
    if n == 0 || n > 40 {
        return Err(TmError::Range("need 1 <= n <= 40"));
    }
    let position = (1usize << (n + 2)) - 1;
    let lower_bound = 1usize << (n + 1);
    if max_period < lower_bound {
        return Err(TmError::Range("max_period must be at least 2^(n+1)"));
    }
    let idx = thue_morse().factor_index(position + 3 * max_period);
    let found = analysis::shortest_abelian_power_at(&idx, position, 3, max_period)?;
    let minimal_period = found.map(|w| w.period);
    Ok(SpecialPositionReport {
        n,
        position,
        lower_bound,
        minimal_period,
        max_period,
        bound_holds: minimal_period.is_none_or(|p| p >= lower_bound),
    })
}

/// `2^{⌊log₂(k+1)⌋ + 1} + 1`: a spacing with `t_0 = t_m = … = t_{(k+1)m} = 0`.
pub fn kpower_spacing(k: usize) -> usize {
    let log = usize::BITS - 1 - (k + 1).leading_zeros();
    (1 << (log + 1)) + 1
}

/// An Abelian `k`-power at `pos` of the Thue–Morse word, built by lifting the
/// blocks `0x_1 0x_2 … 0x_k 0` (all of length `m`) through `μ^n` with
/// `2^n > pos`. The period `m·2^n` is generally far from minimal.
pub fn suffix_kpower_witness(pos: usize, k: usize) -> Result<AbelianPowerWitness, TmError> {
    if k < 2 {
        return Err(TmError::Range("need k >= 2"));
    }
    let m = kpower_spacing(k);
    debug_assert!((0..=k + 1).all(|i| tm_letter((i * m) as u64) == 0));
    let mut level = 1u32;
    while (1usize << level) <= pos {
        level += 1;
    }
    let witness = AbelianPowerWitness {
        position: pos,
        k,
        period: m << level,
    };
    let idx = thue_morse().factor_index(witness.end());
    if !witness.is_valid(&idx) {
        return Err(TmError::InvalidWitness);
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::{periodic, random_binary};

    #[test]
    fn letters() {
        assert_eq!(tm_letter(0), 0);
        assert_eq!(tm_letter(3), 0);
        let first: Vec<_> = (1..8).map(tm_letter).collect();
        assert_eq!(first, vec![1, 1, 0, 1, 0, 0, 1]);
        let mut mu = Morphism::builtin("mu").unwrap().fixed_point(0).unwrap();
        assert_eq!(thue_morse().prefix(4096), mu.prefix(4096));
    }

    #[test]
    fn binary_expansion() {
        assert_eq!(BinaryExpansion::of(0), None);
        let e = BinaryExpansion::of(11).unwrap();
        assert_eq!(e.to_string(), "1011");
        assert_eq!(e.value(), 11);
        assert_eq!(BinaryExpansion::of(1 << 5).unwrap().to_string(), "100000");
    }

    #[test]
    fn expansion_examples() {
        let c = expansion_lemma_check(2, 3).unwrap();
        assert!(c.holds);
        assert_eq!(c.u, vec![1, 1]);
        let c = expansion_lemma_check(1, 0).unwrap();
        assert!(c.holds);
        assert_eq!(c.u, vec![0]);
        assert!(expansion_lemma_check(0, 0).is_err());
        assert!(expansion_lemma_check(2, 4).is_err());
    }

    #[test]
    fn expansion_exhaustive_small() {
        for n in 1..=12 {
            for k in 0..1u64 << n {
                assert!(expansion_lemma_check(n, k).unwrap().holds, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn desubstitute_constant_word() {
        let mut z = periodic(Alphabet::binary(), vec![0]);
        let w = AbelianPowerWitness { position: 1, k: 3, period: 2 };
        assert_eq!(cube_desubstitute(&mut z, &w), Ok(CubeDesubstitution { n: 0, k: 1 }));
        let odd = AbelianPowerWitness { position: 2, k: 3, period: 2 };
        assert!(matches!(cube_desubstitute(&mut z, &odd), Err(TmError::Range(_))));
        // (01)^ω has no Abelian cube of period 1 anywhere.
        let bad = AbelianPowerWitness { position: 1, k: 3, period: 1 };
        assert_eq!(cube_desubstitute(&mut z, &bad), Err(TmError::InvalidWitness));
    }

    #[test]
    fn desubstitute_cubes_of_random_images() {
        let mu = Morphism::builtin("mu").unwrap();
        for seed in 0..20 {
            let mut z = random_binary(seed);
            let image = mu.apply_letters(z.prefix(3000));
            let idx = FactorIndex::new(&image, 2);
            for pos in (1..2000).step_by(2) {
                for w in analysis::abelian_powers_at(&idx, pos, 3, 60).unwrap() {
                    let d = cube_desubstitute(&mut z, &w).unwrap();
                    assert_eq!(d.period(), w.period);
                    assert_eq!(2 * d.n + 1, pos);
                }
            }
        }
    }

    #[test]
    fn special_positions_small() {
        let r = special_position_cube_period(1, 64).unwrap();
        assert_eq!(r.position, 7);
        assert!(r.bound_holds);
        assert!(r.minimal_period.unwrap() >= 4);
        let r = special_position_cube_period(2, 64).unwrap();
        assert_eq!(r.position, 15);
        assert!(r.bound_holds);
        assert!(special_position_cube_period(3, 8).is_err());
    }

    #[test]
    fn spacing() {
        assert_eq!(kpower_spacing(4), 9);
        assert_eq!(kpower_spacing(2), 5);
        assert_eq!(kpower_spacing(3), 9);
        assert_eq!(kpower_spacing(7), 17);
        for k in 2..40 {
            let m = kpower_spacing(k) as u64;
            assert!((0..=k as u64 + 1).all(|i| tm_letter(i * m) == 0), "k={k}");
        }
    }

    #[test]
    fn suffix_witnesses() {
        let w = suffix_kpower_witness(0, 2).unwrap();
        assert_eq!(w.position, 0);
        let idx = thue_morse().factor_index(100);
        assert_eq!(
            analysis::shortest_abelian_power_at(&idx, 0, 2, 10).unwrap().unwrap().period,
            2
        );
        let w = suffix_kpower_witness(5, 3).unwrap();
        let idx = thue_morse().factor_index(w.end());
        assert!(w.is_valid(&idx));
        let best = analysis::shortest_abelian_power_at(&idx, 5, 3, w.period).unwrap().unwrap();
        assert!(best.period <= w.period);
        assert!(suffix_kpower_witness(3, 1).is_err());
    }
}
