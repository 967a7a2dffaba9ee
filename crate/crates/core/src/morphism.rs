//! Substitutions: application, fixed points, incidence matrices, the
//! parallel-image classifier for bounded Abelian complexity and the
//! constructive image-complexity bound.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::stream::{FixedPoint, PrefixStream};
use crate::word::{Alphabet, FactorIndex, FiniteWord, Letter, ParikhVector, WordError};

#[derive(Debug, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("no rule for letter {0:?}")]
    MissingRule(char),
    #[error("duplicate rule for letter {0:?}")]
    DuplicateRule(char),
    #[error("malformed rule {0:?}; expected `letter -> image`")]
    MalformedRule(String),
    #[error("word is not over the morphism's domain")]
    DomainMismatch,
    #[error("domain and codomain differ")]
    NotEndomorphism,
    #[error("letter {seed:?} is not prolongable: {reason}")]
    NotProlongable { seed: char, reason: &'static str },
    #[error("unknown builtin morphism {0:?}")]
    UnknownBuiltin(String),
    #[error("cannot parse morphism file: {0}")]
    Parse(String),
    #[error("io error reading morphism file: {0}")]
    Io(#[from] std::io::Error),
    #[error(
        "horizon {horizon} too small: every factor length up to {longest_scanned} still has an image of length <= {limit}"
    )]
    HorizonTooSmall {
        horizon: usize,
        longest_scanned: usize,
        limit: usize,
    },
}

/// A letter-to-word substitution `domain -> codomain*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    name: String,
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    pub fn new(
        name: impl Into<String>,
        domain: Alphabet,
        codomain: Alphabet,
        images: Vec<Vec<Letter>>,
    ) -> Result<Self, MorphismError> {
        if images.len() != domain.len() {
            return Err(MorphismError::ImageCount {
                expected: domain.len(),
                got: images.len(),
            });
        }
        for image in &images {
            FiniteWord::new(codomain.clone(), image.clone())?;
        }
        Ok(Self {
            name: name.into(),
            domain,
            codomain,
            images,
        })
    }

    /// Binary endomorphism from the two image strings.
    pub fn binary(name: &str, image0: &str, image1: &str) -> Result<Self, MorphismError> {
        let a = Alphabet::binary();
        let images = vec![a.parse(image0)?, a.parse(image1)?];
        Self::new(name, a.clone(), a, images)
    }

    /// The built-in substitutions: `mu` (Thue–Morse), `g`, `f`, `h` and
    /// `fib` (Fibonacci).
    pub fn builtin(name: &str) -> Result<Self, MorphismError> {
        let (a, b) = match name {
            "mu" => ("01", "10"),
            "g" => ("0111110", "01110"),
            "f" => ("00011", "01100"),
            "h" => ("01011111", "11101111"),
            "fib" => ("01", "0"),
            "id" => ("0", "1"),
            _ => return Err(MorphismError::UnknownBuiltin(name.to_string())),
        };
        Self::binary(name, a, b)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn images(&self) -> &[Vec<Letter>] {
        &self.images
    }

    pub fn image_of(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize]
    }

    /// True iff all images share one length.
    pub fn is_uniform(&self) -> bool {
        self.images.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(Vec::is_empty)
    }

    /// Longest image length.
    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() * self.max_image_len());
        for &l in letters {
            out.extend_from_slice(&self.images[l as usize]);
        }
        out
    }

    pub fn apply(&self, word: &FiniteWord) -> Result<FiniteWord, MorphismError> {
        if word.alphabet() != &self.domain {
            return Err(MorphismError::DomainMismatch);
        }
        Ok(FiniteWord::new(
            self.codomain.clone(),
            self.apply_letters(word.letters()),
        )?)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism, MorphismError> {
        if other.codomain != self.domain {
            return Err(MorphismError::DomainMismatch);
        }
        let images = other.images.iter().map(|w| self.apply_letters(w)).collect();
        Morphism::new(
            format!("{}∘{}", self.name, other.name),
            other.domain.clone(),
            self.codomain.clone(),
            images,
        )
    }

    /// The fixed point obtained by iterating from `seed`.
    pub fn fixed_point(&self, seed: Letter) -> Result<PrefixStream, MorphismError> {
        if self.domain != self.codomain {
            return Err(MorphismError::NotEndomorphism);
        }
        let symbol = self.domain.symbol(seed);
        let image = &self.images[seed as usize];
        if image.first() != Some(&seed) {
            return Err(MorphismError::NotProlongable {
                seed: symbol,
                reason: "image does not begin with the seed",
            });
        }
        if image.len() < 2 {
            return Err(MorphismError::NotProlongable {
                seed: symbol,
                reason: "image of the seed is shorter than 2",
            });
        }
        // Growth can still stall if every later letter of the image is
        // erased forever; reject that by iterating on lengths.
        let mut word = image.clone();
        for _ in 0..self.domain.len() + 1 {
            let next = self.apply_letters(&word);
            if next.len() <= word.len() {
                return Err(MorphismError::NotProlongable {
                    seed: symbol,
                    reason: "iterated images stop growing",
                });
            }
            if next.len() > 1 << 16 {
                break;
            }
            word = next;
        }
        Ok(PrefixStream::new(
            self.domain.clone(),
            FixedPoint::new(self.images.clone(), seed),
        ))
    }

    /// Lazily applies this morphism to `source`.
    pub fn image_stream(&self, source: PrefixStream) -> Result<PrefixStream, MorphismError> {
        if source.alphabet() != &self.domain {
            return Err(MorphismError::DomainMismatch);
        }
        Ok(source.image(self.images.clone(), self.codomain.clone()))
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let rows = self.codomain.len();
        let entries = (0..rows)
            .map(|b| {
                self.images
                    .iter()
                    .map(|img| img.iter().filter(|&&l| l as usize == b).count() as u64)
                    .collect()
            })
            .collect();
        IncidenceMatrix { entries }
    }

    pub fn image_parikh(&self, letter: Letter) -> ParikhVector {
        ParikhVector::of_letters(&self.images[letter as usize], self.codomain.len())
    }

    /// Loads a morphism from its TOML description, e.g.
    ///
    /// ```toml
    /// domain = ["0", "1"]
    /// rules = ["0 -> 01", "1 -> 10"]
    /// ```
    ///
    /// An optional `codomain` list defaults to the domain; an optional
    /// `name` defaults to `"file"`.
    pub fn from_toml(text: &str) -> Result<Self, MorphismError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct File {
            name: Option<String>,
            domain: Vec<String>,
            codomain: Option<Vec<String>>,
            rules: Vec<String>,
        }
        let file: File = toml::from_str(text).map_err(|e| MorphismError::Parse(e.to_string()))?;
        let domain = alphabet_from_strings(&file.domain)?;
        let codomain = match &file.codomain {
            Some(c) => alphabet_from_strings(c)?,
            None => domain.clone(),
        };
        let mut images: Vec<Option<Vec<Letter>>> = vec![None; domain.len()];
        for rule in &file.rules {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| MorphismError::MalformedRule(rule.clone()))?;
            let lhs = single_char(lhs.trim()).ok_or_else(|| MorphismError::MalformedRule(rule.clone()))?;
            let letter = domain.index_of(lhs)?;
            let slot = &mut images[letter as usize];
            if slot.is_some() {
                return Err(MorphismError::DuplicateRule(lhs));
            }
            *slot = Some(codomain.parse(rhs.trim())?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or(MorphismError::MissingRule(domain.symbol(i as Letter))))
            .collect::<Result<Vec<_>, _>>()?;
        Morphism::new(file.name.unwrap_or_else(|| "file".into()), domain, codomain, images)
    }

    pub fn from_file(path: &Path) -> Result<Self, MorphismError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn alphabet_from_strings(symbols: &[String]) -> Result<Alphabet, MorphismError> {
    let chars = symbols
        .iter()
        .map(|s| single_char(s).ok_or_else(|| MorphismError::Parse(format!("symbol {s:?} is not a single character"))))
        .collect::<Result<Vec<_>, _>>()?;
    // Digit symbols keep their numeric value, anything else is valued by
    // position.
    let values = chars
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_digit(10).map_or(i as i64, |d| d as i64))
        .collect();
    Ok(Alphabet::new(chars, values)?)
}

/// `entries[b][a] = |image(a)|_b`: one column per domain letter, one row per
/// codomain letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Self {
        Self { entries }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row][col]
    }

    pub fn n_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn n_cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn column_sum(&self, col: usize) -> u64 {
        self.entries.iter().map(|r| r[col]).sum()
    }

    /// Matrix–vector product; maps `Ψ(w)` to `Ψ(f(w))`.
    pub fn apply(&self, v: &ParikhVector) -> ParikhVector {
        assert_eq!(v.dim(), self.n_cols());
        ParikhVector::from_counts(
            self.entries
                .iter()
                .map(|row| row.iter().zip(v.counts()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Some power `1..=n²` has all entries positive.
    pub fn is_primitive(&self) -> bool {
        let n = self.n_rows();
        if n == 0 || self.n_cols() != n {
            return false;
        }
        let base: Vec<Vec<bool>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x > 0).collect())
            .collect();
        let mut power = base.clone();
        for _ in 0..n * n {
            if power.iter().all(|r| r.iter().all(|&x| x)) {
                return true;
            }
            power = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).any(|k| power[i][k] && base[k][j]))
                        .collect()
                })
                .collect();
        }
        false
    }
}

/// `Ψ(image(a)) = multipliers[a] · direction` for every domain letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessCertificate {
    pub direction: Vec<u64>,
    pub multipliers: Vec<u64>,
}

impl BoundednessCertificate {
    pub fn holds_for(&self, morphism: &Morphism) -> bool {
        (0..morphism.domain().len()).all(|a| {
            let psi = morphism.image_parikh(a as Letter);
            psi.counts()
                .iter()
                .zip(&self.direction)
                .all(|(&c, &v)| c == self.multipliers[a] * v)
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether the morphism sends every infinite word to a word of bounded
/// Abelian complexity, i.e. all image Parikh vectors lie on one ray.
///
/// Proportionality is tested with exact cross-multiplication
/// `|f(b)|·Ψ(f(a)) = |f(a)|·Ψ(f(b))`. Empty images are compatible with any
/// direction and get multiplier 0. When every image is empty the direction
/// is the first unit vector.
pub fn forces_bounded_complexity(morphism: &Morphism) -> Option<BoundednessCertificate> {
    let dim = morphism.codomain().len();
    let parikhs: Vec<ParikhVector> = (0..morphism.domain().len())
        .map(|a| morphism.image_parikh(a as Letter))
        .collect();
    let lens: Vec<u64> = parikhs.iter().map(ParikhVector::total).collect();
    for a in 0..parikhs.len() {
        for b in a + 1..parikhs.len() {
            let proportional = parikhs[a]
                .counts()
                .iter()
                .zip(parikhs[b].counts())
                .all(|(&x, &y)| lens[b] * x == lens[a] * y);
            if !proportional {
                return None;
            }
        }
    }
    let direction = match parikhs.iter().find(|p| !p.is_zero()) {
        Some(p) => {
            let g = p.counts().iter().copied().fold(0, gcd);
            p.counts().iter().map(|&c| c / g).collect::<Vec<_>>()
        }
        None => {
            let mut e = vec![0; dim];
            e[0] = 1;
            e
        }
    };
    let norm: u64 = direction.iter().sum();
    let multipliers = lens.iter().map(|&l| l / norm).collect();
    let cert = BoundednessCertificate {
        direction,
        multipliers,
    };
    debug_assert!(cert.holds_for(morphism));
    Some(cert)
}

pub fn is_primitive(morphism: &Morphism) -> Result<bool, MorphismError> {
    if morphism.domain() != morphism.codomain() {
        return Err(MorphismError::NotEndomorphism);
    }
    Ok(morphism.incidence_matrix().is_primitive())
}

/// Constants of the constructive bound on the Abelian complexity of `f(w)`
/// given a `C`-balanced source `w` with Abelian complexity at most `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageBoundReport {
    pub c: u64,
    pub k: u64,
    /// `C · Σ_a |f(a)|`
    pub k1: u64,
    /// `max_a |f(a)|`
    pub m: u64,
    /// Longest source factor `y` (within the horizon) with `|f(y)| ≤ K1 + M`.
    pub k2: u64,
    /// `K · (M · #A)² · (K2 + 1)`
    pub k3: u64,
    pub horizon: usize,
    /// Shortest factor length at which every in-horizon factor has image
    /// longer than `K1 + M`. Exhaustion is relative to the horizon only.
    pub exhausted_at: usize,
    /// The image of the source is empty (erasing morphism); the constants
    /// are then zero and the bound is trivial.
    pub degenerate: bool,
}

/// Computes `K1, M, K2, K3` for `morphism` applied to the first `horizon`
/// letters of `source`.
///
/// `K2` is found by scanning factor lengths upward: the minimum image length
/// over length-`m` factors is nondecreasing in `m`, so the first length whose
/// minimum exceeds `K1 + M` ends the scan. Reaching the horizon first is an
/// error.
pub fn image_complexity_bound(
    morphism: &Morphism,
    source: &mut PrefixStream,
    c: u64,
    k: u64,
    horizon: usize,
) -> Result<ImageBoundReport, MorphismError> {
    if source.alphabet() != morphism.domain() {
        return Err(MorphismError::DomainMismatch);
    }
    let lens: Vec<u64> = morphism.images().iter().map(|i| i.len() as u64).collect();
    let k1 = c * lens.iter().sum::<u64>();
    let m = lens.iter().copied().max().unwrap_or(0);
    let letters = source.prefix(horizon);
    let image_len: u64 = letters.iter().map(|&l| lens[l as usize]).sum();
    if k1 == 0 || m == 0 || image_len == 0 {
        return Ok(ImageBoundReport {
            c,
            k,
            k1,
            m,
            k2: 0,
            k3: 0,
            horizon,
            exhausted_at: 0,
            degenerate: true,
        });
    }
    let mut cumulative = Vec::with_capacity(letters.len() + 1);
    cumulative.push(0u64);
    for &l in letters {
        cumulative.push(cumulative.last().unwrap() + lens[l as usize]);
    }
    let limit = k1 + m;
    let mut k2 = 0u64;
    let mut exhausted_at = None;
    for len in 1..=horizon {
        let min_image = (0..=horizon - len)
            .map(|i| cumulative[i + len] - cumulative[i])
            .min()
            .expect("at least one factor");
        if min_image > limit {
            exhausted_at = Some(len);
            break;
        }
        k2 = len as u64;
    }
    let exhausted_at = exhausted_at.ok_or(MorphismError::HorizonTooSmall {
        horizon,
        longest_scanned: horizon,
        limit: limit as usize,
    })?;
    let alpha = morphism.domain().len() as u64;
    let k3 = k * (m * alpha).pow(2) * (k2 + 1);
    Ok(ImageBoundReport {
        c,
        k,
        k1,
        m,
        k2,
        k3,
        horizon,
        exhausted_at,
        degenerate: false,
    })
}

/// Checks `Ψ(f(w)) = M_f · Ψ(w)`.
pub fn incidence_law_holds(morphism: &Morphism, letters: &[Letter]) -> bool {
    let psi = ParikhVector::of_letters(letters, morphism.domain().len());
    let image = ParikhVector::of_letters(&morphism.apply_letters(letters), morphism.codomain().len());
    morphism.incidence_matrix().apply(&psi) == image
}

/// Parikh vectors of image factors restricted to the first `n` letters of a
/// stream, convenient for tests that want a factor index of an image.
pub fn image_index(morphism: &Morphism, source: &mut PrefixStream, n: usize) -> FactorIndex {
    let image = morphism.apply_letters(source.prefix(n));
    FactorIndex::new(&image, morphism.codomain().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::periodic;
    use proptest::prelude::*;

    fn m(name: &str) -> Morphism {
        Morphism::builtin(name).unwrap()
    }

    fn bin(s: &str) -> FiniteWord {
        FiniteWord::binary(s).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(m("mu").apply(&bin("01")).unwrap().to_string(), "0110");
        assert_eq!(m("g").apply(&bin("0")).unwrap().to_string(), "0111110");
        assert_eq!(m("h").apply(&bin("")).unwrap().to_string(), "");
        assert!(m("f").is_uniform());
        assert!(!m("g").is_uniform());
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(m("mu").fixed_point(0).unwrap().prefix_string(8), "01101001");
        assert_eq!(m("g").fixed_point(0).unwrap().prefix_string(12), "011111001110");
        assert_eq!(
            m("h").fixed_point(0).unwrap().prefix_string(16),
            "0101111111101111"
        );
        assert!(matches!(
            m("mu").fixed_point(1).map(|mut s| s.prefix_string(4)),
            Ok(s) if s == "1001"
        ));
        assert!(matches!(
            m("f").fixed_point(1),
            Err(MorphismError::NotProlongable { .. })
        ));
        assert!(matches!(
            m("id").fixed_point(0),
            Err(MorphismError::NotProlongable { .. })
        ));
        let stalls = Morphism::binary("s", "01", "").unwrap();
        assert!(matches!(
            stalls.fixed_point(0),
            Err(MorphismError::NotProlongable { .. })
        ));
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(m("g").incidence_matrix().rows(), &[vec![2, 2], vec![5, 3]]);
        assert_eq!(m("mu").incidence_matrix().rows(), &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m("f").incidence_matrix().rows(), &[vec![3, 3], vec![2, 2]]);
        let mat = m("g").incidence_matrix();
        assert_eq!(mat.column_sum(0), 7);
        assert_eq!(mat.column_sum(1), 5);
    }

    #[test]
    fn classifier_examples() {
        let mu = forces_bounded_complexity(&m("mu")).unwrap();
        assert_eq!(mu.direction, vec![1, 1]);
        assert_eq!(mu.multipliers, vec![1, 1]);
        let f = forces_bounded_complexity(&m("f")).unwrap();
        assert_eq!(f.direction, vec![3, 2]);
        assert_eq!(f.multipliers, vec![1, 1]);
        assert_eq!(forces_bounded_complexity(&m("g")), None);
        assert_eq!(forces_bounded_complexity(&m("h")), None);

        let scaled = Morphism::binary("s", "0101", "").unwrap();
        let cert = forces_bounded_complexity(&scaled).unwrap();
        assert_eq!(cert.direction, vec![1, 1]);
        assert_eq!(cert.multipliers, vec![2, 0]);
        assert!(cert.holds_for(&scaled));

        let erase = Morphism::binary("e", "", "").unwrap();
        let cert = forces_bounded_complexity(&erase).unwrap();
        assert_eq!(cert.multipliers, vec![0, 0]);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&m("g")).unwrap());
        assert!(is_primitive(&m("h")).unwrap());
        assert!(is_primitive(&m("mu")).unwrap());
        assert!(is_primitive(&m("fib")).unwrap());
        assert!(!is_primitive(&m("id")).unwrap());
        let swap = Morphism::binary("swap", "1", "0").unwrap();
        assert!(!is_primitive(&swap).unwrap());
        let abc = Alphabet::from_symbols(vec!['a', 'b', 'c']).unwrap();
        let mixed = Morphism::new("x", Alphabet::binary(), abc, vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(is_primitive(&mixed), Err(MorphismError::NotEndomorphism)));
    }

    #[test]
    fn image_bound_for_f_over_fibonacci() {
        let mut fib = m("fib").fixed_point(0).unwrap();
        let r = image_complexity_bound(&m("f"), &mut fib, 1, 2, 1000).unwrap();
        assert_eq!((r.k1, r.m), (10, 5));
        // f is 5-uniform, so |f(y)| <= 15 iff |y| <= 3.
        assert_eq!(r.k2, 3);
        assert_eq!(r.k3, 2 * 100 * 4);
        assert_eq!(r.exhausted_at, 4);
        assert!(!r.degenerate);
    }

    #[test]
    fn image_bound_for_mu_over_thue_morse() {
        let mut tm = m("mu").fixed_point(0).unwrap();
        let r = image_complexity_bound(&m("mu"), &mut tm, 2, 3, 500).unwrap();
        assert_eq!((r.k1, r.m, r.k2), (8, 2, 5));
        assert_eq!(r.k3, 3 * 16 * 6);
    }

    #[test]
    fn image_bound_degenerate_and_short_horizon() {
        let erase = Morphism::binary("e", "", "").unwrap();
        let mut tm = m("mu").fixed_point(0).unwrap();
        let r = image_complexity_bound(&erase, &mut tm, 2, 3, 100).unwrap();
        assert!(r.degenerate);
        let mut tm = m("mu").fixed_point(0).unwrap();
        assert!(matches!(
            image_complexity_bound(&m("mu"), &mut tm, 2, 3, 4),
            Err(MorphismError::HorizonTooSmall { .. })
        ));
        // Source only uses an erased letter in its prefix.
        let half = Morphism::binary("half", "", "1").unwrap();
        let mut zeros = periodic(Alphabet::binary(), vec![0]);
        assert!(image_complexity_bound(&half, &mut zeros, 1, 1, 50).unwrap().degenerate);
    }

    #[test]
    fn toml_round() {
        let text = r#"
            domain = ["0", "1"]
            rules = ["0 -> 0111110", "1 -> 01110"]
        "#;
        let g = Morphism::from_toml(text).unwrap();
        assert_eq!(g.images(), m("g").images());
        let abc = r#"
            name = "abc"
            domain = ["a", "b", "c"]
            rules = ["a -> abc", "b -> ac", "c -> b"]
        "#;
        let t = Morphism::from_toml(abc).unwrap();
        assert_eq!(t.fixed_point(0).unwrap().prefix_string(10), "abcacbabcb");
        assert!(matches!(
            Morphism::from_toml("domain = [\"0\"]\nrules = []"),
            Err(MorphismError::MissingRule('0'))
        ));
        assert!(matches!(
            Morphism::from_toml("domain = [\"0\"]\nrules = [\"0 => 0\"]"),
            Err(MorphismError::MalformedRule(_))
        ));
        assert!(matches!(
            Morphism::from_toml("domain = [\"0\"]\nrules = [\"0 -> 2\"]"),
            Err(MorphismError::Word(WordError::UnknownSymbol('2')))
        ));
        assert!(matches!(
            Morphism::from_toml("domain = [\"0\"]\nrules = [\"0 -> 0\", \"0 -> 00\"]"),
            Err(MorphismError::DuplicateRule('0'))
        ));
        assert!(matches!(Morphism::from_toml("nonsense"), Err(MorphismError::Parse(_))));
    }

    proptest! {
        #[test]
        fn morphism_law_and_incidence(x in "[01]{0,30}", y in "[01]{0,30}", which in 0usize..5) {
            let name = ["mu", "g", "f", "h", "fib"][which];
            let f = m(name);
            let (x, y) = (bin(&x), bin(&y));
            let xy = x.concat(&y).unwrap();
            prop_assert_eq!(f.apply(&xy).unwrap(), f.apply(&x).unwrap().concat(&f.apply(&y).unwrap()).unwrap());
            prop_assert!(incidence_law_holds(&f, xy.letters()));
        }

        #[test]
        fn fixed_point_is_self_consistent(n in 1usize..400, which in 0usize..4) {
            let name = ["mu", "g", "h", "fib"][which];
            let f = m(name);
            let mut s = f.fixed_point(0).unwrap();
            let prefix = s.prefix(n).to_vec();
            let image = f.apply_letters(&prefix);
            prop_assert_eq!(&image[..n], &prefix[..]);
        }
    }
}
