//! The acceptance suites: each one checks a stated property at a fixed
//! horizon and reports one row per checked statement.
//!
//! Rows carry no timing so reports are byte-for-byte reproducible; elapsed
//! time is returned alongside in [`SuiteReport`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    self, balance, complexity_profile, density, everywhere_k_repetitive, minimal_power_periods,
    shortest_abelian_power_at, square_avoiding_positions, PositionSet,
};
use crate::constructions::pvhh::{
    check_v_sum_lemma, check_w_lemma, pvhh_check, random_pvhh_word, search_pvhh_word,
    tau_block_boundaries, tau_encode, z_word,
};
use crate::constructions::{builtin_stream, enumerate_overlap_free, scan_prefix_pattern, PatternKind};
use crate::morphism::{forces_bounded_complexity, image_complexity_bound, Morphism};
use crate::oracle;
use crate::stream::{random_binary, PrefixStream};
use crate::tm::{expansion_lemma_check, special_position_cube_period, suffix_kpower_witness, thue_morse, tm_letter};
use crate::word::{FactorIndex, IntegerWord};
use crate::par;

type SuiteResult = Result<Vec<VerifyRow>, Box<dyn std::error::Error + Send + Sync>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    TmComplexity,
    MuImageComplexity,
    GFixedPoint,
    ExpansionLemma,
    CubePeriodBound,
    CubeFreePrefixes,
    SuffixKPowers,
    Repetitivity,
    PatternScans,
    SquareAvoidingPositions,
    Boundedness,
    ImageBound,
    IntegerWordLemmas,
    CrossOracle,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::TmComplexity,
        Suite::MuImageComplexity,
        Suite::GFixedPoint,
        Suite::ExpansionLemma,
        Suite::CubePeriodBound,
        Suite::CubeFreePrefixes,
        Suite::SuffixKPowers,
        Suite::Repetitivity,
        Suite::PatternScans,
        Suite::SquareAvoidingPositions,
        Suite::Boundedness,
        Suite::ImageBound,
        Suite::IntegerWordLemmas,
        Suite::CrossOracle,
    ];

    /// 1-based suite number.
    pub fn number(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).unwrap() + 1
    }

    pub fn slug(self) -> &'static str {
        match self {
            Suite::TmComplexity => "tm-complexity",
            Suite::MuImageComplexity => "mu-image-complexity",
            Suite::GFixedPoint => "g-fixed-point",
            Suite::ExpansionLemma => "expansion-lemma",
            Suite::CubePeriodBound => "cube-period-bound",
            Suite::CubeFreePrefixes => "cube-free-prefixes",
            Suite::SuffixKPowers => "suffix-k-powers",
            Suite::Repetitivity => "repetitivity",
            Suite::PatternScans => "w-h-pattern-scans",
            Suite::SquareAvoidingPositions => "square-avoiding-positions",
            Suite::Boundedness => "boundedness-classifier",
            Suite::ImageBound => "image-bound",
            Suite::IntegerWordLemmas => "integer-word-lemmas",
            Suite::CrossOracle => "cross-oracle",
        }
    }

    pub fn time_limit(self) -> Duration {
        let secs = match self {
            Suite::ExpansionLemma => 10,
            Suite::TmComplexity | Suite::MuImageComplexity | Suite::CubeFreePrefixes => 30,
            Suite::SquareAvoidingPositions | Suite::IntegerWordLemmas => 120,
            Suite::Boundedness => 5,
            _ => 60,
        };
        Duration::from_secs(secs)
    }

    pub fn run(self) -> SuiteReport {
        let start = Instant::now();
        let result = match self {
            Suite::TmComplexity => tm_complexity(),
            Suite::MuImageComplexity => mu_image_complexity(),
            Suite::GFixedPoint => g_fixed_point(),
            Suite::ExpansionLemma => expansion_lemma(),
            Suite::CubePeriodBound => cube_period_bound(),
            Suite::CubeFreePrefixes => cube_free_prefixes(),
            Suite::SuffixKPowers => suffix_k_powers(),
            Suite::Repetitivity => repetitivity(),
            Suite::PatternScans => pattern_scans(),
            Suite::SquareAvoidingPositions => square_avoiding(),
            Suite::Boundedness => boundedness(),
            Suite::ImageBound => image_bound(),
            Suite::IntegerWordLemmas => integer_word_lemmas(),
            Suite::CrossOracle => cross_oracle(),
        };
        let rows = result.unwrap_or_else(|e| {
            vec![VerifyRow::new(self, "internal-error", "-", "no error", e.to_string(), false)]
        });
        SuiteReport {
            suite: self,
            rows,
            elapsed: start.elapsed(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Suite {
    type Err = String;

    /// Accepts the slug or the 1-based number.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(n) = s.parse::<usize>() {
            return n
                .checked_sub(1)
                .and_then(|i| Suite::ALL.get(i).copied())
                .ok_or_else(|| format!("no suite numbered {n}"));
        }
        Suite::ALL
            .into_iter()
            .find(|suite| suite.slug() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub suite: String,
    pub statement: String,
    pub horizon: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl VerifyRow {
    fn new(
        suite: Suite,
        statement: impl Into<String>,
        horizon: impl fmt::Display,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) -> Self {
        VerifyRow {
            suite: suite.slug().to_string(),
            statement: statement.into(),
            horizon: horizon.to_string(),
            expected: expected.into(),
            observed: observed.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub rows: Vec<VerifyRow>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn rows_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn within_time(&self) -> bool {
        self.elapsed <= self.suite.time_limit()
    }

    pub fn passed(&self) -> bool {
        self.rows_pass() && self.within_time()
    }

    /// One-line summary, e.g. `PASS 01 tm-complexity (2/2 rows, 1.01 s, limit 30 s)`.
    pub fn summary(&self) -> String {
        let ok = self.rows.iter().filter(|r| r.pass).count();
        format!(
            "{} {:02} {} ({}/{} rows, {:.2} s, limit {} s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite.number(),
            self.suite,
            ok,
            self.rows.len(),
            self.elapsed.as_secs_f64(),
            self.suite.time_limit().as_secs(),
        )
    }
}

fn binary(name: &str) -> PrefixStream {
    builtin_stream(name)
        .expect("builtin word")
        .into_binary()
        .expect("binary builtin")
}

fn tm_profile_mismatch(values: &[usize]) -> Option<usize> {
    (1..values.len()).find(|&n| values[n] != if n % 2 == 1 { 2 } else { 3 })
}

fn tm_complexity() -> SuiteResult {
    let s = Suite::TmComplexity;
    let n_max = 2048;
    let mut tm = thue_morse();
    let small = complexity_profile(&tm.factor_index(1 << 16), n_max)?;
    let large = complexity_profile(&tm.factor_index(1 << 17), n_max)?;
    let mismatch = tm_profile_mismatch(&small.values);
    Ok(vec![
        VerifyRow::new(
            s,
            "tm-abelian-complexity-alternates-2-3",
            format!("n<={n_max} prefix=65536"),
            "2 for odd n; 3 for even n",
            match mismatch {
                None => "all match".to_string(),
                Some(n) => format!("n={n} gives {}", small.values[n]),
            },
            mismatch.is_none(),
        ),
        VerifyRow::new(
            s,
            "tm-abelian-complexity-stable-under-doubling",
            format!("n<={n_max} prefix=131072"),
            "same profile as prefix 65536",
            match small.values.iter().zip(&large.values).position(|(a, b)| a != b) {
                None => "identical".to_string(),
                Some(n) => format!("differs at n={n}"),
            },
            small.values == large.values,
        ),
    ])
}

fn mu_image_complexity() -> SuiteResult {
    let s = Suite::MuImageComplexity;
    let mu = Morphism::builtin("mu")?;
    let n_max = 512;
    let prefix = 1 << 15;
    let mut rows = Vec::new();
    for (label, lead) in [("mu(y)", None), ("0mu(y)", Some(0)), ("1mu(y)", Some(1))] {
        let mut bad = Vec::new();
        for seed in 0..20u64 {
            let image = mu.image_stream(random_binary(seed))?;
            let mut stream = match lead {
                Some(a) => image.prepend(a),
                None => image,
            };
            let profile = complexity_profile(&stream.factor_index(prefix), n_max)?;
            if let Some(n) = tm_profile_mismatch(&profile.values) {
                bad.push(format!("seed {seed} n={n}"));
            }
        }
        rows.push(VerifyRow::new(
            s,
            format!("{label}-abelian-complexity-alternates-2-3"),
            format!("20 random y; n<={n_max} prefix={prefix}"),
            "2 for odd n; 3 for even n",
            if bad.is_empty() {
                "20/20 streams match".to_string()
            } else {
                format!("{} mismatches; first {}", bad.len(), bad[0])
            },
            bad.is_empty(),
        ));
    }
    Ok(rows)
}

fn g_fixed_point() -> SuiteResult {
    let s = Suite::GFixedPoint;
    let horizon = 200_000;
    let mut g = binary("g_fp");
    let idx = g.factor_index(horizon);
    let prefix_square = shortest_abelian_power_at(&idx, 0, 2, horizon / 2)?;
    let positions = 5000;
    let bound = 999;
    let periods = minimal_power_periods(&idx, 1..positions + 1, 2, bound)?;
    let missing = periods.iter().position(Option::is_none).map(|i| i + 1);
    let max = periods.iter().flatten().max().copied().unwrap_or(0);
    let argmax = periods.iter().position(|&p| p == Some(max)).map(|i| i + 1).unwrap_or(0);
    Ok(vec![
        VerifyRow::new(
            s,
            "g-fixed-point-no-abelian-square-prefix",
            format!("prefix lengths <={horizon}"),
            "none",
            match prefix_square {
                None => "none".to_string(),
                Some(w) => format!("square of period {}", w.period),
            },
            prefix_square.is_none(),
        ),
        VerifyRow::new(
            s,
            "g-fixed-point-square-at-every-later-position",
            format!("positions 1..={positions} period<1000"),
            "every position; max minimal period < 1000",
            match missing {
                None => format!("max minimal period {max} at position {argmax}"),
                Some(p) => format!("no square of period <1000 at position {p}"),
            },
            missing.is_none(),
        ),
    ])
}

fn expansion_lemma() -> SuiteResult {
    let s = Suite::ExpansionLemma;
    let mut checked = 0u64;
    let mut failure = None;
    for n in 1..=16u32 {
        for k in 0..1u64 << n {
            checked += 1;
            if !expansion_lemma_check(n, k)?.holds && failure.is_none() {
                failure = Some((n, k));
            }
        }
    }
    Ok(vec![VerifyRow::new(
        s,
        "binary-expansion-10u-1u1",
        "1<=n<=16 0<=k<2^n",
        "true for all",
        match failure {
            None => format!("true for all {checked}"),
            Some((n, k)) => format!("false at n={n} k={k}"),
        },
        failure.is_none(),
    )])
}

fn cube_period_bound() -> SuiteResult {
    let s = Suite::CubePeriodBound;
    (1..=8u32)
        .map(|n| {
            let r = special_position_cube_period(n, 1 << (n + 2))?;
            Ok(VerifyRow::new(
                s,
                format!("tm-cube-period-at-2^{}-1", n + 2),
                format!("position {} period<={}", r.position, r.max_period),
                format!("no cube of period < {}", r.lower_bound),
                match r.minimal_period {
                    Some(p) => format!("minimal period {p}"),
                    None => format!("no cube of period <= {}", r.max_period),
                },
                r.bound_holds,
            ))
        })
        .collect()
}

fn cube_free_prefixes() -> SuiteResult {
    let s = Suite::CubeFreePrefixes;
    let max_period = 10_000;
    ["0tm", "1tm"]
        .into_iter()
        .map(|name| {
            let idx = binary(name).factor_index(3 * max_period + 2);
            let cube = shortest_abelian_power_at(&idx, 0, 3, max_period)?;
            Ok(VerifyRow::new(
                s,
                format!("{name}-no-abelian-cube-prefix"),
                format!("period<={max_period} prefix={}", 3 * max_period + 2),
                "none",
                match cube {
                    None => "none".to_string(),
                    Some(w) => format!("cube of period {}", w.period),
                },
                cube.is_none(),
            ))
        })
        .collect()
}

fn suffix_k_powers() -> SuiteResult {
    let s = Suite::SuffixKPowers;
    let last = 2000;
    let bound = 5000;
    let idx = thue_morse().factor_index(last + 1 + 5 * bound);
    let mut rows = Vec::new();
    for k in 2..=5 {
        let periods = minimal_power_periods(&idx, 0..last + 1, k, bound)?;
        let missing = periods.iter().position(Option::is_none);
        let max = periods.iter().flatten().max().copied().unwrap_or(0);
        let constructed = par::map_range(0..last + 1, |pos| suffix_kpower_witness(pos, k).is_ok());
        let invalid = constructed.iter().position(|ok| !ok);
        rows.push(VerifyRow::new(
            s,
            format!("tm-every-position-begins-abelian-{k}-power"),
            format!("positions 0..={last} period<={bound}"),
            "power at every position; constructed witnesses valid",
            match (missing, invalid) {
                (None, None) => format!("max minimal period {max}; {} witnesses valid", last + 1),
                (Some(p), _) => format!("no {k}-power of period <={bound} at {p}"),
                (None, Some(p)) => format!("constructed witness invalid at {p}"),
            },
            missing.is_none() && invalid.is_none(),
        ));
    }
    Ok(rows)
}

fn repetitivity() -> SuiteResult {
    let s = Suite::Repetitivity;
    let words = enumerate_overlap_free(10)?;
    let brute = (0u32..1 << 10)
        .map(|bits| (0..10).map(|i| ((bits >> (9 - i)) & 1) as u8).collect::<Vec<_>>())
        .filter(|w| oracle::is_overlap_free(w))
        .count();
    let without: Vec<String> = words
        .iter()
        .filter(|w| {
            let idx = FactorIndex::from_word(w);
            shortest_abelian_power_at(&idx, 0, 2, 5).expect("length 10").is_none()
        })
        .map(ToString::to_string)
        .collect();
    let mut rows = vec![
        VerifyRow::new(
            s,
            "overlap-free-length-10-count",
            "length 10",
            format!("{brute} (brute force)"),
            words.len().to_string(),
            words.len() == brute,
        ),
        VerifyRow::new(
            s,
            "overlap-free-length-10-abelian-square-prefix",
            "length 10",
            "every word",
            if without.is_empty() {
                format!("all {}", words.len())
            } else {
                format!("missing for {}", without.join(" "))
            },
            without.is_empty(),
        ),
    ];
    let prefix = 4096;
    let mut tm = thue_morse();
    let idx = tm.factor_index(prefix);
    for n in 1..=256 {
        let r = everywhere_k_repetitive(&idx, 3, n)?;
        let observed = match r.witness {
            Some(pos) => format!("factor {} at {pos}", &tm.prefix_string(pos + n)[pos..]),
            None => "every factor begins with an abelian cube".to_string(),
        };
        rows.push(VerifyRow::new(
            s,
            "tm-not-abelian-3-repetitive",
            format!("n={n} prefix={prefix}"),
            "a factor without abelian-cube prefix",
            observed,
            !r.holds,
        ));
    }
    Ok(rows)
}

fn pattern_scans() -> SuiteResult {
    let s = Suite::PatternScans;
    let bound = 100_000;
    let mut w = binary("w_h");
    let kinds = [PatternKind::ZeroXZeroYZero, PatternKind::ZeroOneZeroXZeroYZero]
        .into_iter()
        .chain((1..=4).map(PatternKind::HPowerPrefixed));
    Ok(kinds
        .map(|kind| {
            let r = scan_prefix_pattern(&mut w, kind, bound);
            let ok = r.lead_matches && r.found.is_none();
            VerifyRow::new(
                s,
                format!("w-h-has-no-prefix-{kind}"),
                format!("prefix={bound}"),
                "absent",
                match (&r.found, r.lead_matches) {
                    (_, false) => "lead does not match".to_string(),
                    (None, true) => "absent".to_string(),
                    (Some((x, _)), true) => format!("found with |x|={}", x.len()),
                },
                ok,
            )
        })
        .collect())
}

fn square_avoiding() -> SuiteResult {
    let s = Suite::SquareAvoidingPositions;
    let horizon = 100_000;
    let density_bound = 1000;
    let mut fw = binary("f_wh");
    let idx = fw.factor_index(horizon + 2 * 10_000);
    let mut rows = Vec::new();
    for n in 0..=4u32 {
        let pos = 10 * 8usize.pow(n) + 4;
        let max_period = if n <= 2 { 10_000 } else { 1000 };
        let found = shortest_abelian_power_at(&idx, pos, 2, max_period)?;
        rows.push(VerifyRow::new(
            s,
            "f-w-h-avoids-abelian-squares-after-f-h^n-01-0001",
            format!("n={n} position={pos} period<={max_period}"),
            "no abelian square",
            match found {
                None => "none".to_string(),
                Some(w) => format!("square of period {}", w.period),
            },
            found.is_none(),
        ));
    }
    let set = square_avoiding_positions(&idx, horizon, density_bound)?;
    let d = density(&set)?;
    let value = *d.numer() as f64 / *d.denom() as f64;
    rows.push(VerifyRow::new(
        s,
        "f-w-h-square-avoiding-density",
        format!("positions<{horizon} period<={density_bound}"),
        "< 0.01",
        format!("{}/{} = {value:.5}", set.len(), horizon),
        value < 0.01,
    ));
    Ok(rows)
}

fn boundedness() -> SuiteResult {
    let s = Suite::Boundedness;
    let mut rows = Vec::new();
    for (name, expected) in [("mu", Some(vec![1, 1])), ("f", Some(vec![3, 2])), ("g", None), ("h", None)] {
        let m = Morphism::builtin(name)?;
        let cert = forces_bounded_complexity(&m);
        let observed = cert.as_ref().map(|c| c.direction.clone());
        let fmt = |v: &Option<Vec<u64>>| match v {
            Some(d) => format!("({})", d.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")),
            None => "none".to_string(),
        };
        rows.push(VerifyRow::new(
            s,
            format!("{name}-bounded-complexity-certificate"),
            "exact",
            fmt(&expected),
            fmt(&observed),
            observed == expected && cert.is_none_or(|c| c.holds_for(&m)),
        ));
    }
    let g = Morphism::builtin("g")?;
    let prefix = 20_000;
    let n_max = 500;
    let mut image = g.image_stream(binary("pow_seq"))?;
    let r = balance(&image.factor_index(prefix), n_max)?;
    rows.push(VerifyRow::new(
        s,
        "g-of-power-sequence-unbalanced",
        format!("prefix={prefix} n<={n_max}"),
        "C > 10",
        match &r.witness {
            Some(w) => format!("C={} at length {}", r.c, w.length),
            None => format!("C={}", r.c),
        },
        r.c > 10,
    ));
    Ok(rows)
}

fn image_bound() -> SuiteResult {
    let s = Suite::ImageBound;
    let f = Morphism::builtin("f")?;
    let horizon = 4096;
    let mut fib = binary("fib");
    let fib_idx = fib.factor_index(1 << 14);
    let fib_c = balance(&fib_idx, 1024)?.c;
    let fib_k = complexity_profile(&fib_idx, 1024)?.max();
    let r = image_complexity_bound(&f, &mut fib, 1, 2, horizon)?;
    let n_max = 1024;
    let mut image = f.image_stream(binary("fib"))?;
    let profile = complexity_profile(&image.factor_index(1 << 16), n_max)?;
    let max = profile.max();
    Ok(vec![
        VerifyRow::new(
            s,
            "fibonacci-source-balance-and-complexity",
            "prefix=16384 n<=1024",
            "C=1 K=2",
            format!("C={fib_c} K={fib_k}"),
            fib_c == 1 && fib_k == 2,
        ),
        VerifyRow::new(s, "image-bound-k1", "exact", "10", r.k1.to_string(), r.k1 == 10),
        VerifyRow::new(s, "image-bound-m", "exact", "5", r.m.to_string(), r.m == 5),
        VerifyRow::new(
            s,
            "image-bound-k2-k3",
            format!("source horizon={horizon}"),
            "computed",
            format!("K2={} K3={}", r.k2, r.k3),
            r.k3 > 0,
        ),
        VerifyRow::new(
            s,
            "f-of-fibonacci-complexity-below-k3",
            format!("n<={n_max} prefix=65536"),
            format!("<= {}", r.k3),
            format!("max {max}"),
            max as u64 <= r.k3,
        ),
    ])
}

/// Certifies every `τ` block boundary of `x` as square-avoiding for all
/// periods that fit in the encoding. Returns the first failing boundary.
fn tau_failure(x: &IntegerWord) -> Result<Option<usize>, analysis::AnalysisError> {
    let encoded = tau_encode(x).expect("odd positive letters");
    let idx = FactorIndex::from_word(&encoded);
    for p in tau_block_boundaries(x) {
        let room = (encoded.len() - p) / 2;
        if !analysis::avoids_abelian_squares_at(&idx, p, room)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn integer_word_lemmas() -> SuiteResult {
    let s = Suite::IntegerWordLemmas;
    let mut rows = Vec::new();

    let failing: Vec<u32> = (2..=10u32)
        .filter(|&m| !check_v_sum_lemma(m, 120).unwrap_or(false))
        .collect();
    rows.push(VerifyRow::new(
        s,
        "v-equal-sums-force-congruent-lengths",
        "M=2..10 horizon=120",
        "true",
        if failing.is_empty() {
            "true for all M".to_string()
        } else {
            format!("false for M={failing:?}")
        },
        failing.is_empty(),
    ));

    let horizon = 300;
    for m in [4u32, 6] {
        let sources = std::iter::once(("tm".to_string(), thue_morse()))
            .chain((0..5u64).map(|seed| (format!("random{seed}"), random_binary(seed))));
        for (label, mut u) in sources {
            let r = check_w_lemma(&mut u, m, horizon)?;
            rows.push(VerifyRow::new(
                s,
                format!("w-equal-adjacent-sums-force-equal-u-sums-{label}"),
                format!("M={m} horizon={horizon}"),
                format!("true; |v difference| < {}", 1u64 << m),
                match r.witness {
                    None => format!(
                        "true over {} equal-sum pairs; max |v difference| {}",
                        r.equal_sum_pairs, r.max_v_difference
                    ),
                    Some((i, j, k)) => format!("false at i={i} j={j} k={k}"),
                },
                r.holds,
            ));
        }
    }

    for (alphabet, target) in [(vec![1i64, 3, 5], 30usize), (vec![1, 3, 5, 7], 40)] {
        let x = search_pvhh_word(&alphabet, target, target);
        let failure = tau_failure(&x)?;
        let label = alphabet.iter().map(i64::to_string).collect::<Vec<_>>().join("-");
        rows.push(VerifyRow::new(
            s,
            format!("tau-round-trip-over-{label}"),
            format!("search target={target}"),
            format!("length >= {target}; all block boundaries square-avoiding"),
            format!(
                "length {} (encoded {}); {}",
                x.len(),
                tau_encode(&x)?.len(),
                match failure {
                    None => "all boundaries avoid".to_string(),
                    Some(p) => format!("square at boundary {p}"),
                }
            ),
            x.len() >= target && failure.is_none(),
        ));
    }

    let block = 9;
    let mut instances_ok = 0;
    let mut first_problem = None;
    for seed in 0..50u64 {
        let x = random_pvhh_word(&[1, 3, 5, 7], 40, 40, seed);
        let problem = z_instance(&x, block)?;
        if problem.is_none() {
            instances_ok += 1;
        } else if first_problem.is_none() {
            first_problem = problem.map(|p| format!("seed {seed}: {p}"));
        }
    }
    rows.push(VerifyRow::new(
        s,
        "z-from-square-avoiding-positions-has-no-equal-adjacent-sums",
        format!("50 instances N={block}"),
        "no in-horizon violation",
        match &first_problem {
            None => format!("{instances_ok}/50 clean"),
            Some(p) => p.clone(),
        },
        first_problem.is_none(),
    ));
    Ok(rows)
}

/// Builds `u = τ(x)`, picks one certified position per window
/// `[iN, (i+1)N)`, and checks the resulting `z`.
fn z_instance(x: &IntegerWord, block: usize) -> Result<Option<String>, Box<dyn std::error::Error + Send + Sync>> {
    if x.len() < 2 {
        return Ok(Some(format!("search returned only {} letters", x.len())));
    }
    if let Some(p) = tau_failure(x)? {
        return Ok(Some(format!("boundary {p} not certified")));
    }
    let u = tau_encode(x)?.into_letters();
    let boundaries = tau_block_boundaries(x);
    let mut positions = Vec::new();
    for i in 0.. {
        let Some(&p) = boundaries.iter().find(|&&p| p >= i * block) else {
            break;
        };
        if p >= (i + 1) * block {
            return Ok(Some(format!("no boundary in window {i}")));
        }
        positions.push(p);
    }
    let set = PositionSet::uniform(positions, u.len(), u.len())?;
    let z = z_word(&u, &set, block)?;
    Ok(pvhh_check(&z, z.len() / 2).map(|(i, l)| format!("violation at i={i} l={l}")))
}

fn cross_oracle() -> SuiteResult {
    let s = Suite::CrossOracle;
    let n = 1usize << 20;
    let reference = oracle::thue_morse_by_iteration(n);
    let mismatch = par::find_first(0..n, |i| tm_letter(i as u64) != reference[i]);

    let samples = 1000;
    let max_period = 100;
    let sample_len = 20_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut indices: Vec<FactorIndex> = ["tm", "fib", "g_fp", "f_wh"]
        .iter()
        .map(|name| binary(name).factor_index(sample_len))
        .collect();
    indices.extend((0..4u64).map(|seed| random_binary(seed).factor_index(sample_len)));
    let mut disagreements = 0;
    let mut first = None;
    for _ in 0..samples {
        let which = rng.gen_range(0..indices.len());
        let pos = rng.gen_range(0..sample_len - 2 * max_period);
        let idx = &indices[which];
        let fast = shortest_abelian_power_at(idx, pos, 2, max_period)?.map(|w| w.period);
        let slow = oracle::shortest_abelian_power(idx.letters(), 2, pos, 2, max_period);
        if fast != slow {
            disagreements += 1;
            first.get_or_insert((which, pos));
        }
    }
    Ok(vec![
        VerifyRow::new(
            s,
            "tm-letter-matches-mu-iteration",
            format!("n<{n}"),
            "identical",
            match mismatch {
                None => "identical".to_string(),
                Some(i) => format!("differs at {i}"),
            },
            mismatch.is_none(),
        ),
        VerifyRow::new(
            s,
            "shortest-abelian-square-matches-naive-rescan",
            format!("{samples} samples period<={max_period}"),
            "0 disagreements",
            match first {
                None => "0 disagreements".to_string(),
                Some((w, p)) => format!("{disagreements} disagreements; first stream {w} position {p}"),
            },
            disagreements == 0,
        ),
    ])
}

/// Runs the given suites in order.
pub fn run_all(suites: &[Suite]) -> Vec<SuiteReport> {
    suites.iter().map(|s| s.run()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_and_numbers() {
        for (i, s) in Suite::ALL.into_iter().enumerate() {
            assert_eq!(s.number(), i + 1);
            assert_eq!(s.slug().parse::<Suite>(), Ok(s));
            assert_eq!((i + 1).to_string().parse::<Suite>(), Ok(s));
        }
        assert!("0".parse::<Suite>().is_err());
        assert!("15".parse::<Suite>().is_err());
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn profile_mismatch() {
        assert_eq!(tm_profile_mismatch(&[1, 2, 3, 2, 3]), None);
        assert_eq!(tm_profile_mismatch(&[1, 2, 3, 3]), Some(3));
    }

    #[test]
    fn quick_suite_rows() {
        let r = Suite::Boundedness.run();
        assert!(r.rows_pass(), "{:?}", r.rows);
        assert!(r.summary().starts_with("PASS 11 boundedness-classifier"));
    }
}
