//! Slow reference implementations used to cross-check the indexed scans.
//! Each one recounts letters directly and shares no code with the fast path.

use std::collections::HashSet;

use crate::word::Letter;

fn counts(block: &[Letter], arity: usize) -> Vec<u64> {
    let mut c = vec![0u64; arity];
    for &a in block {
        c[a as usize] += 1;
    }
    c
}

/// Number of distinct Parikh vectors among length-`n` factors of `w`.
pub fn abelian_complexity(w: &[Letter], arity: usize, n: usize) -> usize {
    if n > w.len() {
        return 0;
    }
    w.windows(n.max(1))
        .take(if n == 0 { 1 } else { w.len() - n + 1 })
        .map(|f| if n == 0 { vec![0; arity] } else { counts(f, arity) })
        .collect::<HashSet<_>>()
        .len()
}

/// Largest per-letter count difference between two length-`n` factors.
pub fn balance_at(w: &[Letter], arity: usize, n: usize) -> u64 {
    let all: Vec<Vec<u64>> = w.windows(n).map(|f| counts(f, arity)).collect();
    (0..arity)
        .map(|a| {
            let hi = all.iter().map(|c| c[a]).max().unwrap_or(0);
            let lo = all.iter().map(|c| c[a]).min().unwrap_or(0);
            hi - lo
        })
        .max()
        .unwrap_or(0)
}

/// Least period `≤ max_period` of an Abelian `k`-power at `pos`, by recounting
/// every block from scratch.
pub fn shortest_abelian_power(w: &[Letter], arity: usize, pos: usize, k: usize, max_period: usize) -> Option<usize> {
    (1..=max_period).find(|&p| {
        if pos + k * p > w.len() {
            return false;
        }
        let first = counts(&w[pos..pos + p], arity);
        (1..k).all(|i| counts(&w[pos + i * p..pos + (i + 1) * p], arity) == first)
    })
}

/// Overlap test by trying every factor `axaxa`.
pub fn is_overlap_free(w: &[Letter]) -> bool {
    let n = w.len();
    for start in 0..n {
        for p in 1..=(n - start).saturating_sub(1) / 2 {
            let len = 2 * p + 1;
            if start + len > n {
                break;
            }
            if (0..p + 1).all(|j| w[start + j] == w[start + j + p]) {
                return false;
            }
        }
    }
    true
}

/// Thue–Morse prefix by repeated application of `0 → 01, 1 → 10` to `0`.
pub fn thue_morse_by_iteration(len: usize) -> Vec<Letter> {
    let mut w = vec![0u8];
    while w.len() < len {
        w = w.iter().flat_map(|&a| [a, 1 - a]).collect();
    }
    w.truncate(len);
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{self, abelian_powers_at, balance, shortest_abelian_power_at};
    use crate::stream::random_binary;
    use crate::tm::{cube_desubstitute, suffix_kpower_witness};
    use crate::{oracle, thue_morse, FactorIndex, Morphism};
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let tm = thue_morse_by_iteration(16);
        assert_eq!(tm, [0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0]);
        assert_eq!(abelian_complexity(&tm, 2, 1), 2);
        assert_eq!(abelian_complexity(&tm, 2, 2), 3);
        assert_eq!(abelian_complexity(&tm, 2, 0), 1);
        assert_eq!(balance_at(&tm, 2, 2), 2);
        assert_eq!(shortest_abelian_power(&tm, 2, 0, 2, 4), Some(2));
        assert!(is_overlap_free(&tm));
        assert!(!is_overlap_free(&[0, 1, 0, 1, 0]));
        assert!(!is_overlap_free(&[1, 1, 1]));
    }

    fn word(arity: u8, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0..arity, 1..max_len)
    }

    proptest! {
        #[test]
        fn complexity_matches_oracle(w in word(3, 120), n in 0usize..40) {
            let idx = FactorIndex::new(&w, 3);
            prop_assume!(n <= w.len());
            prop_assert_eq!(analysis::abelian_complexity(&idx, n).unwrap(), oracle::abelian_complexity(&w, 3, n));
        }

        #[test]
        fn balance_matches_oracle(w in word(2, 120), n_max in 1usize..30) {
            prop_assume!(n_max <= w.len());
            let idx = FactorIndex::new(&w, 2);
            let expected = (1..=n_max).map(|n| oracle::balance_at(&w, 2, n)).max().unwrap();
            prop_assert_eq!(balance(&idx, n_max).unwrap().c as u64, expected);
        }

        #[test]
        fn shortest_power_matches_oracle(w in word(2, 200), pos in 0usize..50, k in 1usize..5, max_period in 1usize..20) {
            prop_assume!(pos + k * max_period <= w.len());
            let idx = FactorIndex::new(&w, 2);
            let fast = shortest_abelian_power_at(&idx, pos, k, max_period).unwrap().map(|w| w.period);
            prop_assert_eq!(fast, oracle::shortest_abelian_power(&w, 2, pos, k, max_period));
        }

        #[test]
        fn overlap_check_matches_oracle(w in word(2, 24)) {
            prop_assert_eq!(analysis::is_overlap_free(&w), oracle::is_overlap_free(&w));
        }

        #[test]
        fn suffix_witness_always_validates(pos in 0usize..3000, k in 2usize..7) {
            let w = suffix_kpower_witness(pos, k).unwrap();
            let idx = thue_morse().factor_index(w.end());
            prop_assert!(w.is_valid(&idx));
            prop_assert_eq!((w.position, w.k), (pos, k));
        }
    }

    #[test]
    fn cubes_at_odd_positions_of_mu_images_have_even_period() {
        let mu = Morphism::builtin("mu").unwrap();
        let mut checked = 0;
        for seed in 0..10 {
            let mut z = random_binary(100 + seed);
            let image = mu.apply_letters(z.prefix(10_200));
            let idx = FactorIndex::new(&image, 2);
            for pos in (1..20_001).step_by(2) {
                for w in abelian_powers_at(&idx, pos, 3, 16).unwrap() {
                    assert_eq!(w.period % 2, 0, "seed {seed} pos {pos}");
                    let d = cube_desubstitute(&mut z, &w).unwrap();
                    assert_eq!(2 * d.n + 1, pos);
                }
                checked += 1;
            }
        }
        assert_eq!(checked, 100_000);
    }

    #[test]
    fn thue_morse_cubes_at_odd_positions_desubstitute() {
        let mut tm = thue_morse();
        let idx = tm.factor_index(10_000 + 3 * 64);
        let mut cubes = 0;
        for pos in (1..10_000).step_by(2) {
            for w in abelian_powers_at(&idx, pos, 3, 64).unwrap() {
                cube_desubstitute(&mut tm, &w).unwrap();
                cubes += 1;
            }
        }
        assert!(cubes > 0);
    }
}
