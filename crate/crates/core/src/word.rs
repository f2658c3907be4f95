//! Inverse-closed generator alphabets, words over them, free reduction and
//! inversion. Every other module speaks this vocabulary.
//!
//! A generator is declared by name; unless declared self-inverse it gets a
//! distinct companion symbol named `<name>^-1`. Symbol order is declaration
//! order (each generator immediately followed by its inverse), and every
//! shortlex choice elsewhere in the crate uses that order.

use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Index of a symbol inside its alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym(u16);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn new(index: usize) -> Sym {
        Sym(index as u16)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct AlphabetInner {
    names: Vec<String>,
    inverse: Vec<Sym>,
    index: HashMap<String, Sym>,
    /// Names as declared, for round-tripping alphabet files.
    generators: Vec<String>,
    self_inverse: Vec<String>,
}

/// A finite, inverse-closed symbol set. Cheap to clone and share.
#[derive(Clone)]
pub struct GeneratorAlphabet {
    inner: Arc<AlphabetInner>,
}

impl PartialEq for GeneratorAlphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for GeneratorAlphabet {}

impl fmt::Debug for GeneratorAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorAlphabet")
            .field("symbols", &self.inner.names)
            .finish()
    }
}

impl GeneratorAlphabet {
    /// Declare generators in order. Names listed in `self_inverse` become
    /// their own inverses; every other generator `x` gets a companion `x^-1`.
    pub fn new<S: AsRef<str>>(generators: &[S], self_inverse: &[S]) -> Result<Self> {
        let self_inv: Vec<&str> = self_inverse.iter().map(|s| s.as_ref()).collect();
        for s in &self_inv {
            if !generators.iter().any(|g| g.as_ref() == *s) {
                return Err(Error::InvalidAlphabet(format!(
                    "self-inverse symbol `{s}` is not a declared generator"
                )));
            }
        }
        let mut names = Vec::new();
        let mut inverse = Vec::new();
        let mut index = HashMap::new();
        for g in generators {
            let g = g.as_ref();
            if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') {
                return Err(Error::InvalidAlphabet(format!("bad generator name `{g}`")));
            }
            if index.contains_key(g) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{g}`")));
            }
            let id = Sym::new(names.len());
            names.push(g.to_string());
            index.insert(g.to_string(), id);
            if self_inv.contains(&g) {
                inverse.push(id);
            } else {
                let inv_name = format!("{g}^-1");
                let inv_id = Sym::new(names.len());
                names.push(inv_name.clone());
                index.insert(inv_name, inv_id);
                inverse.push(inv_id);
                inverse.push(id);
            }
        }
        Ok(GeneratorAlphabet {
            inner: Arc::new(AlphabetInner {
                names,
                inverse,
                index,
                generators: generators.iter().map(|s| s.as_ref().to_string()).collect(),
                self_inverse: self_inv.iter().map(|s| s.to_string()).collect(),
            }),
        })
    }

    /// Free-group style alphabet with generators `a, b, c, ...`.
    pub fn free(rank: usize) -> Self {
        assert!(rank <= 26, "rank limited to single-letter names");
        let names: Vec<String> = (0..rank)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        GeneratorAlphabet::new(&names, &[]).expect("generated names are valid")
    }

    /// Number of symbols, inverses included.
    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Sym> {
        (0..self.len()).map(Sym::new)
    }

    pub fn inverse(&self, s: Sym) -> Sym {
        self.inner.inverse[s.index()]
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.inner.names[s.index()]
    }

    pub fn symbol(&self, name: &str) -> Option<Sym> {
        self.inner.index.get(name).copied()
    }

    /// Declared generator names, without the derived inverses.
    pub fn generator_names(&self) -> &[String] {
        &self.inner.generators
    }

    pub fn self_inverse_names(&self) -> &[String] {
        &self.inner.self_inverse
    }

    /// Parse one token. `x^-1` for a self-inverse `x` is accepted as `x`.
    pub fn parse_symbol(&self, token: &str) -> Result<Sym> {
        if let Some(s) = self.symbol(token) {
            return Ok(s);
        }
        if let Some(base) = token.strip_suffix("^-1") {
            if let Some(s) = self.symbol(base) {
                if self.inverse(s) == s {
                    return Ok(s);
                }
            }
        }
        Err(Error::UnknownSymbol(token.to_string()))
    }

    /// Whitespace-separated tokens; an empty line is the empty word.
    pub fn parse_word(&self, line: &str) -> Result<Word> {
        line.split_whitespace()
            .map(|tok| self.parse_symbol(tok))
            .collect::<Result<Vec<_>>>()
            .map(Word::from_syms)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.iter()
            .map(|s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Alphabet file: a `generators:` line and an optional `self-inverse:` line.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut self_inverse: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("generators:") {
                generators = Some(rest.split_whitespace().map(str::to_string).collect());
            } else if let Some(rest) = line.strip_prefix("self-inverse:") {
                self_inverse = rest.split_whitespace().map(str::to_string).collect();
            } else {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("unexpected line `{line}` in alphabet file"),
                });
            }
        }
        let generators = generators.ok_or(Error::Parse {
            line: 0,
            msg: "missing `generators:` line".into(),
        })?;
        GeneratorAlphabet::new(&generators, &self_inverse)
    }

    pub fn to_file(&self) -> String {
        let mut out = format!("generators: {}\n", self.inner.generators.join(" "));
        if !self.inner.self_inverse.is_empty() {
            out.push_str(&format!("self-inverse: {}\n", self.inner.self_inverse.join(" ")));
        }
        out
    }

    /// Validates that every letter of `w` indexes into this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        for s in w.iter() {
            if s.index() >= self.len() {
                return Err(Error::AlphabetMismatch {
                    index: s.index(),
                    len: self.len(),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

/// A sequence of alphabet symbols, possibly empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(Vec<Sym>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_syms(syms: Vec<Sym>) -> Word {
        Word(syms)
    }

    pub fn single(s: Sym) -> Word {
        Word(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Sym] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Sym> + '_ {
        self.0.iter().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, s: Sym) {
        self.0.push(s);
    }

    pub(crate) fn splice(&mut self, start: usize, end_inclusive: usize, rhs: &[Sym]) {
        self.0.splice(start..=end_inclusive, rhs.iter().copied());
    }
}

impl std::ops::Deref for Word {
    type Target = [Sym];
    fn deref(&self) -> &[Sym] {
        &self.0
    }
}

impl FromIterator<Sym> for Word {
    fn from_iter<T: IntoIterator<Item = Sym>>(iter: T) -> Word {
        Word(iter.into_iter().collect())
    }
}

/// The unique word with no adjacent `x · x⁻¹` pair, obtained by cancellation.
pub fn free_reduce(alphabet: &GeneratorAlphabet, w: &Word) -> Word {
    let mut out: Vec<Sym> = Vec::with_capacity(w.len());
    for s in w.iter() {
        if out.last() == Some(&alphabet.inverse(s)) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    Word(out)
}

/// Reversed sequence of letterwise inverses; `w · invert_word(w)` freely
/// reduces to the empty word.
pub fn invert_word(alphabet: &GeneratorAlphabet, w: &Word) -> Word {
    w.letters().iter().rev().map(|&s| alphabet.inverse(s)).collect()
}

/// A finite list of subgroup generators, given as words over the ambient
/// alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    alphabet: GeneratorAlphabet,
    generators: Vec<Word>,
}

impl SubgroupSpec {
    /// Rejects generators that reduce to the empty word; an empty list is the
    /// trivial subgroup.
    pub fn new(alphabet: GeneratorAlphabet, generators: Vec<Word>) -> Result<Self> {
        for g in &generators {
            alphabet.check_word(g)?;
            if free_reduce(&alphabet, g).is_empty() {
                return Err(Error::TrivialGenerator(alphabet.format_word(g)));
            }
        }
        Ok(SubgroupSpec { alphabet, generators })
    }

    /// Accepts generators that reduce to the empty word (they are kept but
    /// contribute nothing).
    pub fn new_allowing_trivial(alphabet: GeneratorAlphabet, generators: Vec<Word>) -> Result<Self> {
        for g in &generators {
            alphabet.check_word(g)?;
        }
        Ok(SubgroupSpec { alphabet, generators })
    }

    pub fn trivial(alphabet: GeneratorAlphabet) -> Self {
        SubgroupSpec { alphabet, generators: Vec::new() }
    }

    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// One generator word per line; `#` starts a comment.
    pub fn parse(alphabet: GeneratorAlphabet, text: &str) -> Result<Self> {
        let mut generators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let w = alphabet.parse_word(line).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            generators.push(w);
        }
        SubgroupSpec::new(alphabet, generators)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(&self.alphabet.format_word(g));
            out.push('\n');
        }
        out
    }
}
