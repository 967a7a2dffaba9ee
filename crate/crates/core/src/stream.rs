//! Lazily extended prefixes of infinite words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::word::{Alphabet, FactorIndex, FiniteWord, Letter};

/// Produces letters of an infinite word on demand.
///
/// `extend_to` must append letters to `buf` until it holds at least `target`
/// letters. Everything already in `buf` was produced by this source, so a
/// source may read it (fixed points do).
pub trait LetterSource: Send {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize);
}

/// An infinite word with a growable materialized prefix.
///
/// Growth is amortized doubling; the materialized prefix never changes once
/// produced.
pub struct PrefixStream {
    alphabet: Alphabet,
    buf: Vec<Letter>,
    source: Box<dyn LetterSource>,
}

impl PrefixStream {
    pub fn new(alphabet: Alphabet, source: impl LetterSource + 'static) -> Self {
        Self {
            alphabet,
            buf: Vec::new(),
            source: Box::new(source),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn materialized(&self) -> usize {
        self.buf.len()
    }

    /// Makes sure at least `n` letters are materialized.
    pub fn ensure(&mut self, n: usize) {
        if n > self.buf.len() {
            let target = n.max(self.buf.len() * 2);
            self.source.extend_to(&mut self.buf, target);
            debug_assert!(self.buf.len() >= target);
        }
    }

    /// The first `n` letters.
    pub fn prefix(&mut self, n: usize) -> &[Letter] {
        self.ensure(n);
        &self.buf[..n]
    }

    pub fn letter(&mut self, i: usize) -> Letter {
        self.ensure(i + 1);
        self.buf[i]
    }

    pub fn prefix_word(&mut self, n: usize) -> FiniteWord {
        let letters = self.prefix(n).to_vec();
        FiniteWord::new(self.alphabet.clone(), letters).expect("stream letters are in range")
    }

    pub fn prefix_string(&mut self, n: usize) -> String {
        let alphabet = self.alphabet.clone();
        alphabet.render(self.prefix(n))
    }

    /// Factor index over the first `n` letters.
    pub fn factor_index(&mut self, n: usize) -> FactorIndex {
        let arity = self.alphabet.len();
        FactorIndex::new(self.prefix(n), arity)
    }

    // Combinators.

    /// `letter` followed by this stream.
    pub fn prepend(self, letter: Letter) -> PrefixStream {
        let alphabet = self.alphabet.clone();
        PrefixStream::new(alphabet, Prepend { letter, inner: self, consumed: 0 })
    }

    /// Image of this stream under the substitution `images`, whose letters
    /// are over `codomain`.
    pub fn image(self, images: Vec<Vec<Letter>>, codomain: Alphabet) -> PrefixStream {
        PrefixStream::new(
            codomain,
            Image {
                images,
                inner: self,
                cursor: 0,
            },
        )
    }
}

impl std::fmt::Debug for PrefixStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrefixStream")
            .field("alphabet", &self.alphabet)
            .field("materialized", &self.buf.len())
            .finish()
    }
}

/// Letter at index `n` is a pure function of `n`.
pub struct Indexed<F>(pub F);

impl<F: Fn(u64) -> Letter + Send> LetterSource for Indexed<F> {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        let start = buf.len();
        buf.extend((start..target).map(|i| (self.0)(i as u64)));
    }
}

/// Fixed point of a prolongable substitution, grown by reading the already
/// produced prefix and appending images.
pub struct FixedPoint {
    images: Vec<Vec<Letter>>,
    seed: Letter,
    cursor: usize,
}

impl FixedPoint {
    /// Caller guarantees prolongability: `images[seed]` starts with `seed`,
    /// has length at least 2, and iterating from `seed` never stalls.
    pub fn new(images: Vec<Vec<Letter>>, seed: Letter) -> Self {
        Self {
            images,
            seed,
            cursor: 0,
        }
    }
}

impl LetterSource for FixedPoint {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        if buf.is_empty() {
            buf.extend_from_slice(&self.images[self.seed as usize]);
            self.cursor = 1;
        }
        while buf.len() < target {
            let letter = buf[self.cursor];
            buf.extend_from_slice(&self.images[letter as usize]);
            self.cursor += 1;
        }
    }
}

struct Prepend {
    letter: Letter,
    inner: PrefixStream,
    consumed: usize,
}

impl LetterSource for Prepend {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        if buf.is_empty() && target > 0 {
            buf.push(self.letter);
        }
        if buf.len() < target {
            let need = target - 1;
            let inner = self.inner.prefix(need);
            buf.extend_from_slice(&inner[self.consumed..need]);
            self.consumed = need;
        }
    }
}

/// Consecutive source letters allowed to map to the empty word before an
/// image stream is declared stalled.
const MAX_ERASED_RUN: usize = 1 << 24;

struct Image {
    images: Vec<Vec<Letter>>,
    inner: PrefixStream,
    cursor: usize,
}

impl LetterSource for Image {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        let mut erased = 0usize;
        while buf.len() < target {
            let letter = self.inner.letter(self.cursor);
            self.cursor += 1;
            let image = &self.images[letter as usize];
            if image.is_empty() {
                erased += 1;
                assert!(erased < MAX_ERASED_RUN, "image stream stalled on erased letters");
            } else {
                erased = 0;
                buf.extend_from_slice(image);
            }
        }
    }
}

/// `(period)^ω`.
pub struct Periodic(pub Vec<Letter>);

impl LetterSource for Periodic {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        assert!(!self.0.is_empty(), "periodic word needs a nonempty period");
        let p = self.0.len();
        let start = buf.len();
        buf.extend((start..target).map(|i| self.0[i % p]));
    }
}

/// The concatenation `0^1 1^1 0^2 1^2 0^3 1^3 ...`.
#[derive(Default)]
pub struct PowerSequence {
    next_exponent: usize,
}

impl LetterSource for PowerSequence {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        while buf.len() < target {
            self.next_exponent += 1;
            let e = self.next_exponent;
            buf.extend(std::iter::repeat_n(0, e));
            buf.extend(std::iter::repeat_n(1, e));
        }
    }
}

/// Uniform random letters from a seeded ChaCha generator.
pub struct Random {
    rng: ChaCha8Rng,
    arity: u8,
}

impl Random {
    pub fn new(seed: u64, arity: u8) -> Self {
        assert!(arity >= 1);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            arity,
        }
    }
}

impl LetterSource for Random {
    fn extend_to(&mut self, buf: &mut Vec<Letter>, target: usize) {
        while buf.len() < target {
            buf.push(self.rng.gen_range(0..self.arity));
        }
    }
}

/// Binary stream of seeded random letters.
pub fn random_binary(seed: u64) -> PrefixStream {
    PrefixStream::new(Alphabet::binary(), Random::new(seed, 2))
}

pub fn periodic(alphabet: Alphabet, period: Vec<Letter>) -> PrefixStream {
    PrefixStream::new(alphabet, Periodic(period))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_is_deterministic_across_growth() {
        let mut s = random_binary(7);
        let first = s.prefix(100).to_vec();
        s.ensure(10_000);
        assert_eq!(s.prefix(100), &first[..]);
        assert_eq!(s.prefix(37).len(), 37);
        let mut t = random_binary(7);
        assert_eq!(t.prefix(5000), s.prefix(5000));
    }

    #[test]
    fn fixed_point_of_thue_morse_substitution() {
        let mut s = PrefixStream::new(Alphabet::binary(), FixedPoint::new(vec![vec![0, 1], vec![1, 0]], 0));
        assert_eq!(s.prefix_string(8), "01101001");
        assert_eq!(s.prefix_string(1), "0");
    }

    #[test]
    fn combinators() {
        let s = periodic(Alphabet::binary(), vec![0, 1]);
        let mut t = s.prepend(1);
        assert_eq!(t.prefix_string(5), "10101");
        assert_eq!(t.prefix_string(12), "101010101010");

        let mut pw = PrefixStream::new(Alphabet::binary(), PowerSequence::default());
        assert_eq!(pw.prefix_string(12), "010011000111");

        let base = periodic(Alphabet::binary(), vec![0, 1]);
        let mut img = base.image(vec![vec![], vec![1, 1, 0]], Alphabet::binary());
        assert_eq!(img.prefix_string(7), "1101101");
    }
}
