//! Word-spec mini-language.
//!
//! ```text
//! tm | 0tm | 1tm | fib | g_fp | w_h | f_wh | pow_seq | v:M
//! random:<seed>
//! fixpoint:<morphism>:<seed letter>
//! image:<morphism>:<spec>
//! ```
//!
//! `<morphism>` is a built-in name (`mu`, `g`, `f`, `h`, `fib`, `id`) or a
//! path to a TOML morphism file. `image:` chains nest to the right, so the
//! innermost spec is evaluated first.

use std::path::Path;

use abelian_core::stream::random_binary;
use abelian_core::{builtin_stream, BuiltinWord, IntegerStream, Morphism, PrefixStream};
use anyhow::{bail, Context, Result};

pub enum Word {
    Letters(PrefixStream),
    Integers(IntegerStream),
}

impl Word {
    pub fn letters(self) -> Result<PrefixStream> {
        match self {
            Word::Letters(s) => Ok(s),
            Word::Integers(_) => bail!("expected a word over letters, got an integer word"),
        }
    }
}

pub fn morphism(name_or_path: &str) -> Result<Morphism> {
    if let Ok(m) = Morphism::builtin(name_or_path) {
        return Ok(m);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        bail!("{name_or_path:?} is neither a built-in morphism nor a file");
    }
    Morphism::from_file(path).with_context(|| format!("reading morphism file {name_or_path}"))
}

pub fn parse(spec: &str) -> Result<Word> {
    if let Some(rest) = spec.strip_prefix("random:") {
        let seed = rest.parse().with_context(|| format!("bad seed in {spec:?}"))?;
        return Ok(Word::Letters(random_binary(seed)));
    }
    if let Some(rest) = spec.strip_prefix("fixpoint:") {
        let (m, seed) = rest
            .rsplit_once(':')
            .with_context(|| format!("expected fixpoint:<morphism>:<seed> in {spec:?}"))?;
        let m = morphism(m)?;
        let mut symbols = seed.chars();
        let (Some(symbol), None) = (symbols.next(), symbols.next()) else {
            bail!("seed must be a single symbol, got {seed:?}");
        };
        let letter = m.domain().index_of(symbol)?;
        return Ok(Word::Letters(m.fixed_point(letter)?));
    }
    if let Some(rest) = spec.strip_prefix("image:") {
        let (m, inner) = split_image(rest)
            .with_context(|| format!("expected image:<morphism>:<spec> in {spec:?}"))?;
        let m = morphism(m)?;
        let source = parse(inner)?.letters()?;
        return Ok(Word::Letters(m.image_stream(source)?));
    }
    Ok(match builtin_stream(spec)? {
        BuiltinWord::Binary(s) => Word::Letters(s),
        BuiltinWord::Integer(s) => Word::Integers(s),
    })
}

/// Splits `<morphism>:<spec>` at the first colon that is followed by a
/// parseable spec, so morphism file paths may themselves contain colons.
fn split_image(rest: &str) -> Option<(&str, &str)> {
    rest.match_indices(':')
        .map(|(i, _)| (&rest[..i], &rest[i + 1..]))
        .find(|(m, _)| Morphism::builtin(m).is_ok() || Path::new(m).is_file())
}
