//! Named words and the executable forms of the square-avoidance arguments:
//! the `g` fixed point and its square descent, the `h`/`f` construction with
//! its prefix-pattern scans and square replay, and overlap-free enumeration.
//! The integer-word machinery lives in [`pvhh`].

pub mod pvhh;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::analysis::{has_overlap_suffix, AnalysisError};
use crate::morphism::{Morphism, MorphismError};
use crate::stream::{PowerSequence, PrefixStream};
use crate::tm::thue_morse;
use crate::word::{abelian_equivalent, parikh, Alphabet, FiniteWord, Letter, WordError};

pub use pvhh::IntegerStream;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("unknown builtin word {0:?}")]
    UnknownWord(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("word is not a g-image: decoding fails at position {0}")]
    NotGImage(usize),
    #[error("g-preimage has odd length {0}")]
    OddPreimage(usize),
    #[error("halves are not Abelian equivalent")]
    NotAbelianSquare,
    #[error("descent violated: halves of the preimage are not Abelian equivalent")]
    DescentViolated,
    #[error("f(w) does not begin with 0001uv")]
    NotPrefix,
    #[error("|u| = {len} is {residue} mod 5; only residue 0 is consistent")]
    InconsistentResidue { len: usize, residue: usize },
    #[error("u does not have the shape 1 f(x) 0001")]
    UnexpectedShape,
    #[error("window condition i*N <= n_i < (i+1)*N fails at i = {0}")]
    WindowViolated(usize),
    #[error("letter {0} is not an odd positive integer")]
    NotOddPositive(i64),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// A built-in infinite word.
#[derive(Debug)]
pub enum BuiltinWord {
    Binary(PrefixStream),
    Integer(IntegerStream),
}

impl BuiltinWord {
    pub fn into_binary(self) -> Option<PrefixStream> {
        match self {
            BuiltinWord::Binary(s) => Some(s),
            BuiltinWord::Integer(_) => None,
        }
    }
}

fn morphism(name: &str) -> Morphism {
    Morphism::builtin(name).expect("builtin morphism")
}

/// Resolves a built-in word by name: `tm`, `0tm`, `1tm`, `fib`, `g_fp`,
/// `w_h`, `f_wh`, `pow_seq` (`∏ 0^i 1^i`) or `v:M`.
pub fn builtin_stream(name: &str) -> Result<BuiltinWord, ConstructionError> {
    let binary = |s| Ok(BuiltinWord::Binary(s));
    match name {
        "tm" => binary(thue_morse()),
        "0tm" => binary(thue_morse().prepend(0)),
        "1tm" => binary(thue_morse().prepend(1)),
        "fib" => binary(morphism("fib").fixed_point(0)?),
        "g_fp" => binary(morphism("g").fixed_point(0)?),
        "w_h" => binary(morphism("h").fixed_point(0)?),
        "f_wh" => binary(morphism("f").image_stream(morphism("h").fixed_point(0)?)?),
        "pow_seq" => binary(PrefixStream::new(Alphabet::binary(), PowerSequence::default())),
        _ => {
            let m = name
                .strip_prefix("v:")
                .or_else(|| name.strip_prefix("v(").and_then(|r| r.strip_suffix(')')))
                .ok_or_else(|| ConstructionError::UnknownWord(name.to_string()))?;
            let m: u32 = m
                .parse()
                .map_err(|_| ConstructionError::UnknownWord(name.to_string()))?;
            Ok(BuiltinWord::Integer(pvhh::v_stream(m)?))
        }
    }
}

/// Prefix shapes excluded from `w_h` by the induction on `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternKind {
    /// `0x0y0` with `|x| = |y|`
    ZeroXZeroYZero,
    /// `010x0y0` with `|x| = |y|`
    ZeroOneZeroXZeroYZero,
    /// `h^n(01) 0x0y0` with `|x| = |y|`
    HPowerPrefixed(u32),
}

impl PatternKind {
    /// Required literal prefix before the `0x0y0` part.
    pub fn lead(&self) -> Vec<Letter> {
        match self {
            PatternKind::ZeroXZeroYZero => vec![],
            PatternKind::ZeroOneZeroXZeroYZero => vec![0, 1],
            PatternKind::HPowerPrefixed(n) => {
                let h = morphism("h");
                (0..*n).fold(vec![0, 1], |w, _| h.apply_letters(&w))
            }
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::ZeroXZeroYZero => write!(f, "0x0y0"),
            PatternKind::ZeroOneZeroXZeroYZero => write!(f, "010x0y0"),
            PatternKind::HPowerPrefixed(n) => write!(f, "h^{n}(01)0x0y0"),
        }
    }
}

impl FromStr for PatternKind {
    type Err = ConstructionError;

    /// `0x0y0`, `010x0y0`, or `hn01:<n>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0x0y0" => Ok(PatternKind::ZeroXZeroYZero),
            "010x0y0" => Ok(PatternKind::ZeroOneZeroXZeroYZero),
            _ => s
                .strip_prefix("hn01:")
                .and_then(|n| n.parse().ok())
                .filter(|&n: &u32| n <= 10)
                .map(PatternKind::HPowerPrefixed)
                .ok_or_else(|| ConstructionError::Range(format!("unknown pattern kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixPatternReport {
    pub kind: PatternKind,
    pub bound: usize,
    /// Length of the literal lead before `0x0y0`.
    pub offset: usize,
    /// Whether the stream starts with the lead at all; if not, the pattern is
    /// trivially absent.
    pub lead_matches: bool,
    /// `(x, y)` of the shortest matching prefix, if any fits in `bound`.
    pub found: Option<(Vec<Letter>, Vec<Letter>)>,
}

/// Looks for a prefix of the given shape entirely inside the first `bound`
/// letters.
pub fn scan_prefix_pattern(
    stream: &mut PrefixStream,
    kind: PatternKind,
    bound: usize,
) -> PrefixPatternReport {
    let lead = kind.lead();
    let offset = lead.len();
    let letters = stream.prefix(bound.max(offset));
    let lead_matches = letters[..offset] == lead[..];
    let found = if lead_matches && offset < bound && letters[offset] == 0 {
        // `0x` has length `a ≥ 1`; the pattern spans [offset, offset + 2a].
        (1..)
            .take_while(|a| offset + 2 * a < bound)
            .find(|&a| letters[offset + a] == 0 && letters[offset + 2 * a] == 0)
            .map(|a| {
                (
                    letters[offset + 1..offset + a].to_vec(),
                    letters[offset + a + 1..offset + 2 * a].to_vec(),
                )
            })
    } else {
        None
    };
    PrefixPatternReport {
        kind,
        bound,
        offset,
        lead_matches,
        found,
    }
}

/// Decodes a word of the form `g(w)`; `g(0) = 0111110`, `g(1) = 01110`.
pub fn decode_g_image(word: &[Letter]) -> Result<Vec<Letter>, ConstructionError> {
    let mut out = Vec::new();
    let mut p = 0;
    while p < word.len() {
        if word[p] != 0 {
            return Err(ConstructionError::NotGImage(p));
        }
        let ones = word[p + 1..].iter().take_while(|&&l| l == 1).count();
        let close = p + 1 + ones;
        if close >= word.len() {
            return Err(ConstructionError::NotGImage(close));
        }
        out.push(match ones {
            5 => 0,
            3 => 1,
            _ => return Err(ConstructionError::NotGImage(p)),
        });
        p = close + 1;
    }
    Ok(out)
}

/// One descent step for an Abelian-square prefix `uv` of the `g` fixed
/// point: returns `w1, w2` with `u = g(w1)`, `v = g(w2)`, `|w1| = |w2|` and
/// `w1 ~ab w2`.
pub fn descend_square_g(uv: &FiniteWord) -> Result<(FiniteWord, FiniteWord), ConstructionError> {
    let letters = uv.letters();
    if letters.len() % 2 == 1 {
        return Err(ConstructionError::NotAbelianSquare);
    }
    let half = letters.len() / 2;
    let (u, v) = (uv.factor(0, half)?, uv.factor(half, letters.len())?);
    if !abelian_equivalent(&u, &v)? {
        return Err(ConstructionError::NotAbelianSquare);
    }
    let w = decode_g_image(letters)?;
    if w.len() % 2 == 1 {
        return Err(ConstructionError::OddPreimage(w.len()));
    }
    let g = morphism("g");
    let (w1, w2) = w.split_at(w.len() / 2);
    if g.apply_letters(w1) != u.letters() {
        return Err(ConstructionError::NotGImage(half));
    }
    let alphabet = uv.alphabet().clone();
    let w1 = FiniteWord::new(alphabet.clone(), w1.to_vec())?;
    let w2 = FiniteWord::new(alphabet, w2.to_vec())?;
    if parikh(&w1) != parikh(&w2) {
        return Err(ConstructionError::DescentViolated);
    }
    Ok((w1, w2))
}

/// Given `f(w) = 0001uv⋯` with `u ~ab v`, recovers `(x, y)` with `0x0y0` a
/// prefix of `w`. `f(0) = 00011`, `f(1) = 01100`.
pub fn replay_f_square_lemma(
    w: &mut PrefixStream,
    u: &FiniteWord,
    v: &FiniteWord,
) -> Result<(Vec<Letter>, Vec<Letter>), ConstructionError> {
    let f = morphism("f");
    let span = 4 + u.len() + v.len();
    let image = f.apply_letters(w.prefix(span.div_ceil(5)));
    let expected: Vec<Letter> = [&[0, 0, 0, 1][..], u.letters(), v.letters()].concat();
    if image[..span] != expected[..] {
        return Err(ConstructionError::NotPrefix);
    }
    if u.is_empty() || !abelian_equivalent(u, v)? {
        return Err(ConstructionError::NotAbelianSquare);
    }
    let residue = u.len() % 5;
    if residue != 0 {
        return Err(ConstructionError::InconsistentResidue {
            len: u.len(),
            residue,
        });
    }
    // u = 1 f(x) 0001 and v = 1 f(y) 0001, so w = 0 x 0 y 0 ⋯
    let tail = &u.letters()[u.len() - 4..];
    if u.letters()[0] != 1 || tail != [0, 0, 0, 1] {
        return Err(ConstructionError::UnexpectedShape);
    }
    let a = u.len() / 5;
    let prefix = w.prefix(2 * a + 1);
    if prefix[0] != 0 || prefix[a] != 0 || prefix[2 * a] != 0 {
        return Err(ConstructionError::UnexpectedShape);
    }
    Ok((prefix[1..a].to_vec(), prefix[a + 1..2 * a].to_vec()))
}

/// Largest length accepted by [`enumerate_overlap_free`].
pub const MAX_OVERLAP_FREE_LEN: usize = 20;

/// All binary overlap-free words of length `n`, in lexicographic order.
pub fn enumerate_overlap_free(n: usize) -> Result<Vec<FiniteWord>, ConstructionError> {
    if n > MAX_OVERLAP_FREE_LEN {
        return Err(ConstructionError::Range(format!(
            "length {n} exceeds {MAX_OVERLAP_FREE_LEN}"
        )));
    }
    fn extend(word: &mut Vec<Letter>, n: usize, out: &mut Vec<Vec<Letter>>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for letter in 0..2 {
            word.push(letter);
            if !has_overlap_suffix(word) {
                extend(word, n, out);
            }
            word.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, &mut out);
    let alphabet = Alphabet::binary();
    out.into_iter()
        .map(|w| FiniteWord::new(alphabet.clone(), w).map_err(Into::into))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_overlap_free, shortest_abelian_power_at};
    use crate::stream::periodic;
    use crate::word::FactorIndex;

    fn binary(name: &str) -> PrefixStream {
        builtin_stream(name).unwrap().into_binary().unwrap()
    }

    fn bin(s: &str) -> FiniteWord {
        FiniteWord::binary(s).unwrap()
    }

    #[test]
    fn builtin_prefixes() {
        assert_eq!(binary("g_fp").prefix_string(12), "011111001110");
        assert_eq!(binary("w_h").prefix_string(16), "0101111111101111");
        assert_eq!(binary("f_wh").prefix_string(10), "0001101100");
        assert_eq!(binary("0tm").prefix_string(5), "00110");
        assert_eq!(binary("1tm").prefix_string(5), "10110");
        assert_eq!(binary("pow_seq").prefix_string(6), "010011");
        assert_eq!(binary("fib").prefix_string(8), "01001010");
        assert!(matches!(builtin_stream("v:3"), Ok(BuiltinWord::Integer(_))));
        assert!(matches!(builtin_stream("v(4)"), Ok(BuiltinWord::Integer(_))));
        assert!(matches!(builtin_stream("nope"), Err(ConstructionError::UnknownWord(_))));
        assert!(matches!(builtin_stream("v:1"), Err(ConstructionError::Range(_))));
    }

    #[test]
    fn pattern_scans_on_w_h() {
        let mut wh = binary("w_h");
        for kind in [PatternKind::ZeroXZeroYZero, PatternKind::ZeroOneZeroXZeroYZero] {
            let r = scan_prefix_pattern(&mut wh, kind, 20_000);
            assert!(r.lead_matches);
            assert_eq!(r.found, None, "{kind}");
        }
        let r = scan_prefix_pattern(&mut wh, PatternKind::HPowerPrefixed(2), 20_000);
        assert_eq!((r.offset, r.lead_matches, r.found), (128, true, None));
    }

    #[test]
    fn pattern_scan_finds_periodic_counterexample() {
        let mut alt = periodic(Alphabet::binary(), vec![0, 1]);
        let r = scan_prefix_pattern(&mut alt, PatternKind::ZeroXZeroYZero, 100);
        assert_eq!(r.found, Some((vec![1], vec![1])));
        let r = scan_prefix_pattern(&mut alt, PatternKind::ZeroOneZeroXZeroYZero, 100);
        assert_eq!(r.found, Some((vec![1], vec![1])));
        // Lead mismatch: (01)^ω does not start with h(01).
        let r = scan_prefix_pattern(&mut alt, PatternKind::HPowerPrefixed(1), 100);
        assert!(!r.lead_matches);
        assert_eq!(r.found, None);
        // Bound too small to contain 01010.
        let r = scan_prefix_pattern(&mut alt, PatternKind::ZeroXZeroYZero, 4);
        assert_eq!(r.found, None);
    }

    #[test]
    fn pattern_kind_parsing() {
        assert_eq!("0x0y0".parse::<PatternKind>().unwrap(), PatternKind::ZeroXZeroYZero);
        assert_eq!("hn01:3".parse::<PatternKind>().unwrap(), PatternKind::HPowerPrefixed(3));
        assert!("hn01:x".parse::<PatternKind>().is_err());
        assert_eq!(PatternKind::HPowerPrefixed(0).lead(), vec![0, 1]);
        assert_eq!(PatternKind::HPowerPrefixed(1).lead().len(), 16);
    }

    #[test]
    fn descent_examples() {
        let g = morphism("g");
        let half = g.apply_letters(&[0, 1]);
        let uv = FiniteWord::new(Alphabet::binary(), [half.clone(), half].concat()).unwrap();
        let (w1, w2) = descend_square_g(&uv).unwrap();
        assert_eq!((w1.to_string(), w2.to_string()), ("01".into(), "01".into()));
        assert!(w1.len() + w2.len() < uv.len());

        let uv = FiniteWord::new(Alphabet::binary(), g.apply_letters(&[0, 1, 1, 0])).unwrap();
        let (w1, w2) = descend_square_g(&uv).unwrap();
        assert_eq!((w1.to_string(), w2.to_string()), ("01".into(), "10".into()));
        assert!(abelian_equivalent(&w1, &w2).unwrap());

        assert!(matches!(
            descend_square_g(&bin("0110")),
            Err(ConstructionError::NotGImage(_))
        ));
        assert!(matches!(
            descend_square_g(&bin("011")),
            Err(ConstructionError::NotAbelianSquare)
        ));
        // g(01)g(10) halves are not Abelian equivalent letterwise when split
        // at a non-block boundary.
        let odd = FiniteWord::new(Alphabet::binary(), g.apply_letters(&[0, 0, 1])).unwrap();
        assert!(descend_square_g(&odd).is_err());
    }

    #[test]
    fn descent_terminates_on_iterated_squares() {
        let g = morphism("g");
        let alphabet = Alphabet::binary();
        for base in [[0u8, 1, 1, 0], [1, 0, 0, 1], [0, 0, 0, 0]] {
            let mut word = base.to_vec();
            for _ in 0..3 {
                word = g.apply_letters(&word);
            }
            let mut current = FiniteWord::new(alphabet.clone(), word).unwrap();
            let mut steps = 0;
            while let Ok((w1, w2)) = descend_square_g(&current) {
                assert!(w1.len() + w2.len() < current.len());
                current = w1.concat(&w2).unwrap();
                steps += 1;
            }
            assert_eq!(steps, 3);
            assert_eq!(current.letters(), &base[..]);
        }
    }

    #[test]
    fn replay_recovers_planted_square() {
        // w = 0 x 0 y 0 1 1 ... with x ~ab y
        let x = [1u8, 1, 0];
        let y = [0u8, 1, 1];
        let head: Vec<Letter> = [&[0][..], &x, &[0], &y, &[0, 1, 1]].concat();
        let alphabet = Alphabet::binary();
        let mut w = periodic(alphabet.clone(), head.clone());
        let f = morphism("f");
        let image = f.apply_letters(&head);
        let a = x.len() + 1;
        let u = FiniteWord::new(alphabet.clone(), image[4..4 + 5 * a].to_vec()).unwrap();
        let v = FiniteWord::new(alphabet.clone(), image[4 + 5 * a..4 + 10 * a].to_vec()).unwrap();
        let (rx, ry) = replay_f_square_lemma(&mut w, &u, &v).unwrap();
        assert_eq!((rx, ry), (x.to_vec(), y.to_vec()));
    }

    #[test]
    fn replay_rejects_bad_inputs() {
        let alphabet = Alphabet::binary();
        let mut w = periodic(alphabet.clone(), vec![0, 1, 1, 0, 1]);
        let image = morphism("f").apply_letters(&[0, 1, 1, 0, 1, 0]);
        // |u| = 1: u = "1", v = "0" -> not equivalent.
        let u = FiniteWord::new(alphabet.clone(), image[4..5].to_vec()).unwrap();
        let v = FiniteWord::new(alphabet.clone(), image[5..6].to_vec()).unwrap();
        assert!(matches!(
            replay_f_square_lemma(&mut w, &u, &v),
            Err(ConstructionError::NotAbelianSquare)
        ));
        let wrong = bin("0");
        assert!(matches!(
            replay_f_square_lemma(&mut w, &wrong, &wrong),
            Err(ConstructionError::NotPrefix)
        ));
    }

    #[test]
    fn f_image_has_no_square_after_0001_without_pattern() {
        // w_h has no 0x0y0 prefix, so f(w_h) has no Abelian square at 4.
        let mut fw = binary("f_wh");
        let idx = FactorIndex::new(fw.prefix(4 + 2 * 3000), 2);
        assert_eq!(shortest_abelian_power_at(&idx, 4, 2, 3000).unwrap(), None);
    }

    #[test]
    fn residue_classes_other_than_zero_never_square() {
        // Exhaustively over short w and u-lengths: every Abelian square after
        // 0001 in f(w) has |u| ≡ 0 mod 5 and replays.
        let alphabet = Alphabet::binary();
        let f = morphism("f");
        for bits in 0u32..1 << 12 {
            let head: Vec<Letter> = std::iter::once(0)
                .chain((0..12).map(|i| ((bits >> i) & 1) as Letter))
                .collect();
            let image = f.apply_letters(&head);
            let idx = FactorIndex::new(&image, 2);
            for len in 1..=(image.len() - 4) / 2 {
                if idx.equivalent_blocks(4, 4 + len, len) {
                    assert_eq!(len % 5, 0);
                    let mut w = periodic(alphabet.clone(), head.clone());
                    let u = FiniteWord::new(alphabet.clone(), image[4..4 + len].to_vec()).unwrap();
                    let v = FiniteWord::new(alphabet.clone(), image[4 + len..4 + 2 * len].to_vec()).unwrap();
                    let (x, y) = replay_f_square_lemma(&mut w, &u, &v).unwrap();
                    assert_eq!(x.len(), y.len());
                }
            }
        }
    }

    #[test]
    fn overlap_free_enumeration() {
        let words = |n| -> Vec<String> {
            enumerate_overlap_free(n).unwrap().iter().map(|w| w.to_string()).collect()
        };
        assert_eq!(words(1), vec!["0", "1"]);
        assert_eq!(words(3), vec!["001", "010", "011", "100", "101", "110"]);
        for n in 0..=14 {
            let brute = (0u32..1 << n)
                .filter(|b| {
                    let w: Vec<Letter> = (0..n).rev().map(|i| ((b >> i) & 1) as Letter).collect();
                    is_overlap_free(&w)
                })
                .count();
            assert_eq!(enumerate_overlap_free(n).unwrap().len(), brute, "n={n}");
        }
        assert!(enumerate_overlap_free(21).is_err());
    }
}
