//! Normal-form oracles: the abstraction through which the rest of the crate
//! talks to a concrete group.
//!
//! An oracle maps each word to a canonical word such that two words map to the
//! same canonical word exactly when they represent the same group element. The
//! empty word represents the identity in every oracle.

use crate::error::{Error, Result};
use crate::word::{free_reduce, invert_word, GeneratorAlphabet, Word};
use std::sync::Arc;

pub trait NormalFormOracle: Send + Sync {
    fn alphabet(&self) -> &GeneratorAlphabet;

    /// Canonical representative of the element spelled by `w`.
    fn normal_form(&self, w: &Word) -> Word;
}

/// Free group on the non-self-inverse generators: canonical form is free
/// reduction. Self-inverse generators are treated as order-2 letters, so this
/// also covers free products of Z/2 factors.
pub struct FreeReductionOracle {
    alphabet: GeneratorAlphabet,
}

impl FreeReductionOracle {
    pub fn new(alphabet: GeneratorAlphabet) -> Self {
        FreeReductionOracle { alphabet }
    }
}

impl NormalFormOracle for FreeReductionOracle {
    fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        free_reduce(&self.alphabet, w)
    }
}

/// Free abelian group on the generators: canonical form lists each generator
/// block in declaration order with a signed exponent. A self-inverse
/// generator contributes modulo 2.
pub struct FreeAbelianOracle {
    alphabet: GeneratorAlphabet,
}

impl FreeAbelianOracle {
    pub fn new(alphabet: GeneratorAlphabet) -> Self {
        FreeAbelianOracle { alphabet }
    }
}

impl NormalFormOracle for FreeAbelianOracle {
    fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        let a = &self.alphabet;
        let mut exponent = vec![0i64; a.len()];
        for s in w.iter() {
            let inv = a.inverse(s);
            if inv == s {
                exponent[s.index()] += 1;
            } else if inv.index() < s.index() {
                // count on the positive symbol of the pair
                exponent[inv.index()] -= 1;
            } else {
                exponent[s.index()] += 1;
            }
        }
        let mut out = Word::empty();
        for s in a.symbols() {
            let inv = a.inverse(s);
            let mut e = exponent[s.index()];
            if inv == s {
                e = e.rem_euclid(2);
                for _ in 0..e {
                    out.push(s);
                }
            } else if inv.index() > s.index() {
                let letter = if e >= 0 { s } else { inv };
                for _ in 0..e.unsigned_abs() {
                    out.push(letter);
                }
            }
        }
        out
    }
}

/// The supported oracle constructions.
pub enum OracleSpec {
    Free(GeneratorAlphabet),
    FreeAbelian(GeneratorAlphabet),
    /// Normal forms for a virtually free group presented by a finite-index
    /// free subgroup with Schreier data.
    CosetTableOverFree(crate::pda::VfPresentation),
}

pub fn make_oracle(spec: OracleSpec) -> Result<Arc<dyn NormalFormOracle>> {
    match spec {
        OracleSpec::Free(a) => {
            if a.is_empty() {
                return Err(Error::Config("free oracle over an empty alphabet".into()));
            }
            Ok(Arc::new(FreeReductionOracle::new(a)))
        }
        OracleSpec::FreeAbelian(a) => {
            if a.is_empty() {
                return Err(Error::Config("abelian oracle over an empty alphabet".into()));
            }
            Ok(Arc::new(FreeAbelianOracle::new(a)))
        }
        OracleSpec::CosetTableOverFree(data) => {
            Ok(Arc::new(crate::pda::CosetNormalForm::new(data)?))
        }
    }
}

/// Membership in a fixed subgroup H of the ambient group, together with the
/// derived right-coset test `Hu = Hv ⟺ u·v⁻¹ ∈ H`.
pub trait SubgroupMembership: Send + Sync {
    fn alphabet(&self) -> &GeneratorAlphabet;

    fn contains(&self, w: &Word) -> bool;

    fn same_coset(&self, u: &Word, v: &Word) -> bool {
        let prod = u.concat(&invert_word(self.alphabet(), v));
        self.contains(&prod)
    }

    /// Exact canonical representative of the coset `Hw`, when this
    /// implementation can compute one. Two words get the same result exactly
    /// when they lie in the same right coset.
    fn coset_canonical(&self, _w: &Word) -> Option<Word> {
        None
    }
}
