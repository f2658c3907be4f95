//! Deciders for subgroup membership in free, virtually free and related
//! groups, with independent brute-force oracles to validate every fast path.
//!
//! - [`word`]: alphabets, words, free reduction, inversion.
//! - [`oracle`]: normal-form oracles and the subgroup-membership abstraction.
//! - [`graph`]: X-graphs, Stallings folding, Cayley/Schreier balls, based
//!   ball isomorphism and the bounded GIB(k) check.
//! - [`eda`]: extended Dehn algorithms — length-reducing rewriting with a
//!   deterministic application order, rule generators, and the geodesy and
//!   realtime-bound verifiers.
//! - [`pda`]: the Schreier rewriting transducer, the coset automaton and the
//!   deterministic pushdown recognizer for virtually free groups.
//! - [`bruteforce`]: coset BFS tables and bounded subgroup enumeration.
//! - [`fixtures`]: the standard example groups and subgroups used by the
//!   verification suites.

pub mod bruteforce;
pub mod eda;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod pda;
pub mod word;

pub use error::{Error, Result};
pub use word::{free_reduce, invert_word, GeneratorAlphabet, SubgroupSpec, Sym, Word};

// compile the README's example as a doctest
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
