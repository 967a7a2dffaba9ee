//! Alphabets, finite words, Parikh vectors and constant-time factor queries.

use std::fmt;
use std::ops::{Add, Index};
use std::sync::Arc;

use thiserror::Error;

/// Dense 0-based letter index into an [`Alphabet`].
pub type Letter = u8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("alphabet has more than 255 letters")]
    AlphabetTooLarge,
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol and value lists differ in length ({symbols} vs {values})")]
    ValueCountMismatch { symbols: usize, values: usize },
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("letter index {index} out of range for alphabet of size {size}")]
    LetterOutOfRange { index: Letter, size: usize },
    #[error("words are over different alphabets")]
    AlphabetMismatch,
    #[error("factor [{start}, {end}) out of range for length {len}")]
    FactorOutOfRange { start: usize, end: usize, len: usize },
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct AlphabetInner {
    symbols: Vec<char>,
    values: Vec<i64>,
}

/// An ordered set of distinct symbols, each carrying an integer value.
///
/// Cloning is cheap; the symbol table is shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<AlphabetInner>);

impl Alphabet {
    pub fn new(symbols: Vec<char>, values: Vec<i64>) -> Result<Self, WordError> {
        if symbols.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        if symbols.len() > Letter::MAX as usize {
            return Err(WordError::AlphabetTooLarge);
        }
        if symbols.len() != values.len() {
            return Err(WordError::ValueCountMismatch {
                symbols: symbols.len(),
                values: values.len(),
            });
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(WordError::DuplicateSymbol(*c));
            }
        }
        Ok(Self(Arc::new(AlphabetInner { symbols, values })))
    }

    /// Symbols valued by their position: `a, b, c` get values `0, 1, 2`.
    pub fn from_symbols(symbols: Vec<char>) -> Result<Self, WordError> {
        let values = (0..symbols.len() as i64).collect();
        Self::new(symbols, values)
    }

    /// `{0, 1}` with values 0 and 1.
    pub fn binary() -> Self {
        Self::new(vec!['0', '1'], vec![0, 1]).expect("binary alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.0.symbols
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.0.symbols[letter as usize]
    }

    pub fn value(&self, letter: Letter) -> i64 {
        self.0.values[letter as usize]
    }

    pub fn index_of(&self, symbol: char) -> Result<Letter, WordError> {
        self.0
            .symbols
            .iter()
            .position(|&c| c == symbol)
            .map(|i| i as Letter)
            .ok_or(WordError::UnknownSymbol(symbol))
    }

    /// Parses a string of single-character symbols into letter indices.
    pub fn parse(&self, text: &str) -> Result<Vec<Letter>, WordError> {
        text.chars().map(|c| self.index_of(c)).collect()
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        letters.iter().map(|&l| self.symbol(l)).collect()
    }

    fn check(&self, letters: &[Letter]) -> Result<(), WordError> {
        match letters.iter().find(|&&l| l as usize >= self.len()) {
            Some(&index) => Err(WordError::LetterOutOfRange {
                index,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.symbols.iter()).finish()
    }
}

/// A finite word over a declared alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self, WordError> {
        alphabet.check(&letters)?;
        Ok(Self { alphabet, letters })
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, WordError> {
        let letters = alphabet.parse(text)?;
        Ok(Self {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// Binary word from a string of `0`/`1`.
    pub fn binary(text: &str) -> Result<Self, WordError> {
        Self::parse(&Alphabet::binary(), text)
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Self {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The factor `[start, end)`.
    pub fn factor(&self, start: usize, end: usize) -> Result<FiniteWord, WordError> {
        if start > end || end > self.len() {
            return Err(WordError::FactorOutOfRange {
                start,
                end,
                len: self.len(),
            });
        }
        Ok(Self {
            alphabet: self.alphabet.clone(),
            letters: self.letters[start..end].to_vec(),
        })
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord, WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.letters))
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({self})")
    }
}

/// Letter-count vector of a finite word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector(Vec<u64>);

impl ParikhVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self(counts)
    }

    pub fn of_letters(letters: &[Letter], dim: usize) -> Self {
        let mut counts = vec![0u64; dim];
        for &l in letters {
            counts[l as usize] += 1;
        }
        Self(counts)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Sum of entries, i.e. the length of the counted word.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, factor: u64) -> Self {
        Self(self.0.iter().map(|&c| c * factor).collect())
    }
}

impl Index<usize> for ParikhVector {
    type Output = u64;

    fn index(&self, letter: usize) -> &u64 {
        &self.0[letter]
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.dim(), rhs.dim(), "Parikh vectors of different dimension");
        ParikhVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn parikh(word: &FiniteWord) -> ParikhVector {
    ParikhVector::of_letters(word.letters(), word.alphabet().len())
}

/// Whether `x` and `y` have the same Parikh vector. Words of different
/// lengths are never equivalent.
pub fn abelian_equivalent(x: &FiniteWord, y: &FiniteWord) -> Result<bool, WordError> {
    if x.alphabet() != y.alphabet() {
        return Err(WordError::AlphabetMismatch);
    }
    Ok(x.len() == y.len() && parikh(x) == parikh(y))
}

/// Cumulative letter counts over a materialized prefix, for O(1) factor
/// Parikh queries.
///
/// Row `i` holds the Parikh vector of the first `i` letters.
#[derive(Clone, Debug)]
pub struct FactorIndex {
    arity: usize,
    letters: Vec<Letter>,
    cumulative: Vec<u32>,
}

impl FactorIndex {
    pub fn new(letters: &[Letter], arity: usize) -> Self {
        assert!(arity >= 1, "arity must be positive");
        assert!(letters.len() < u32::MAX as usize, "prefix too long to index");
        let mut cumulative = vec![0u32; (letters.len() + 1) * arity];
        for (i, &l) in letters.iter().enumerate() {
            assert!((l as usize) < arity, "letter {l} out of range for arity {arity}");
            let (done, rest) = cumulative.split_at_mut((i + 1) * arity);
            let row = &mut rest[..arity];
            row.copy_from_slice(&done[i * arity..]);
            row[l as usize] += 1;
        }
        Self {
            arity,
            letters: letters.to_vec(),
            cumulative,
        }
    }

    pub fn from_word(word: &FiniteWord) -> Self {
        Self::new(word.letters(), word.alphabet().len())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Materialized length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Occurrences of `letter` in the first `i` letters.
    #[inline]
    pub fn prefix_count(&self, i: usize, letter: Letter) -> u32 {
        self.cumulative[i * self.arity + letter as usize]
    }

    /// Occurrences of `letter` in `[i, j)`. Positions are not range-checked
    /// beyond slice indexing.
    #[inline]
    pub fn count(&self, i: usize, j: usize, letter: Letter) -> u32 {
        self.prefix_count(j, letter) - self.prefix_count(i, letter)
    }

    pub fn factor_parikh(&self, i: usize, j: usize) -> Result<ParikhVector, WordError> {
        if i > j || j > self.len() {
            return Err(WordError::FactorOutOfRange {
                start: i,
                end: j,
                len: self.len(),
            });
        }
        Ok(ParikhVector(
            (0..self.arity)
                .map(|b| self.count(i, j, b as Letter) as u64)
                .collect(),
        ))
    }

    /// Whether the equal-length factors starting at `a` and `b` with length
    /// `len` are Abelian equivalent. Only the first `arity - 1` letters need
    /// comparing since both lengths agree.
    #[inline]
    pub fn equivalent_blocks(&self, a: usize, b: usize, len: usize) -> bool {
        (0..self.arity - 1).all(|c| {
            let c = c as Letter;
            self.count(a, a + len, c) == self.count(b, b + len, c)
        })
    }
}

/// A finite word whose letters are integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntegerWord(Vec<i64>);

impl IntegerWord {
    pub fn new(values: Vec<i64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum_index(&self) -> SumIndex {
        SumIndex::new(&self.0)
    }

    /// Sum of the letters in `[i, j)`.
    pub fn block_sum(&self, i: usize, j: usize) -> Result<i64, WordError> {
        if i > j || j > self.len() {
            return Err(WordError::FactorOutOfRange {
                start: i,
                end: j,
                len: self.len(),
            });
        }
        Ok(self.0[i..j].iter().sum())
    }
}

impl From<Vec<i64>> for IntegerWord {
    fn from(values: Vec<i64>) -> Self {
        Self(values)
    }
}

impl fmt::Display for IntegerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Prefix sums of an integer word.
#[derive(Clone, Debug)]
pub struct SumIndex {
    cumulative: Vec<i64>,
}

impl SumIndex {
    pub fn new(values: &[i64]) -> Self {
        let mut cumulative = Vec::with_capacity(values.len() + 1);
        cumulative.push(0);
        let mut acc = 0i64;
        for &v in values {
            acc += v;
            cumulative.push(acc);
        }
        Self { cumulative }
    }

    pub fn len(&self) -> usize {
        self.cumulative.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn sum(&self, i: usize, j: usize) -> i64 {
        self.cumulative[j] - self.cumulative[i]
    }

    pub fn block_sum(&self, i: usize, j: usize) -> Result<i64, WordError> {
        if i > j || j > self.len() {
            return Err(WordError::FactorOutOfRange {
                start: i,
                end: j,
                len: self.len(),
            });
        }
        Ok(self.sum(i, j))
    }
}
