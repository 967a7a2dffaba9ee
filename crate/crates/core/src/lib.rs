//! Combinatorics on words with an Abelian slant: Parikh vectors, Abelian
//! complexity and balance, Abelian powers, morphisms and their fixed points,
//! Thue–Morse arithmetic, and the constructions that relate integer words
//! without equal-sum adjacent blocks to binary words with square-avoiding
//! positions.
//!
//! Infinite words are modelled as lazily materialized [`PrefixStream`]s;
//! every property is checked on a finite prefix with an explicit horizon.

pub mod analysis;
pub mod constructions;
pub mod morphism;
pub mod oracle;
pub mod par;
pub mod stream;
pub mod tm;
pub mod verify;
pub mod word;

pub use analysis::{AbelianPowerWitness, AnalysisError, PositionSet};
pub use constructions::{builtin_stream, BuiltinWord, ConstructionError, IntegerStream};
pub use morphism::{IncidenceMatrix, Morphism, MorphismError};
pub use stream::PrefixStream;
pub use tm::{thue_morse, tm_letter, TmError};
pub use word::{Alphabet, FactorIndex, FiniteWord, IntegerWord, Letter, ParikhVector, WordError};
