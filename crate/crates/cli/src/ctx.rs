//! Group and subgroup loading shared by all commands.
//!
//! Groups are named `free:<rank>`, `abelian:<rank>` or `vf:<path>`; relative
//! paths that do not exist are retried under the fixture directory given by
//! `GWPKIT_FIXTURES` (default `fixtures`).

use anyhow::{anyhow, bail, Context, Result};
use gwpkit_core::bruteforce::{subgroup_enumerate, EnumeratedSubgroup};
use gwpkit_core::graph::CoreMembership;
use gwpkit_core::oracle::{
    make_oracle, NormalFormOracle, OracleSpec, SubgroupMembership,
};
use gwpkit_core::pda::{parse_vf_spec, VfSpecFile};
use gwpkit_core::{GeneratorAlphabet, SubgroupSpec, Word};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub fn resolve_path(name: &str) -> PathBuf {
    let direct = Path::new(name);
    if direct.exists() || direct.is_absolute() {
        return direct.to_path_buf();
    }
    let base = std::env::var("GWPKIT_FIXTURES").unwrap_or_else(|_| "fixtures".into());
    let under = Path::new(&base).join(name);
    if under.exists() {
        under
    } else {
        direct.to_path_buf()
    }
}

pub fn read_file(name: &str) -> Result<String> {
    let path = resolve_path(name);
    std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
}

pub enum GroupKind {
    Free,
    Abelian,
    VirtuallyFree(Box<VfSpecFile>),
}

pub struct GroupCtx {
    pub kind: GroupKind,
    /// Alphabet of query words (the ambient generators).
    pub alphabet: GeneratorAlphabet,
    oracle: Option<Arc<dyn NormalFormOracle>>,
}

impl GroupCtx {
    pub fn load(spec: &str) -> Result<GroupCtx> {
        let (kind, param) = spec
            .split_once(':')
            .ok_or_else(|| anyhow!("group spec must look like free:2, abelian:2 or vf:<path>"))?;
        match kind {
            "free" | "abelian" => {
                let alphabet = if let Ok(rank) = param.parse::<usize>() {
                    if rank == 0 || rank > 26 {
                        bail!("rank must be between 1 and 26");
                    }
                    GeneratorAlphabet::free(rank)
                } else {
                    GeneratorAlphabet::parse_file(&read_file(param)?)?
                };
                let oracle = if kind == "free" {
                    make_oracle(OracleSpec::Free(alphabet.clone()))?
                } else {
                    make_oracle(OracleSpec::FreeAbelian(alphabet.clone()))?
                };
                Ok(GroupCtx {
                    kind: if kind == "free" { GroupKind::Free } else { GroupKind::Abelian },
                    alphabet,
                    oracle: Some(oracle),
                })
            }
            "vf" => {
                let file = parse_vf_spec(&read_file(param)?)?;
                let alphabet = file.rewriter.x_alphabet().clone();
                let oracle = match &file.presentation {
                    Some(p) => Some(make_oracle(OracleSpec::CosetTableOverFree(p.clone()))?),
                    None => None,
                };
                Ok(GroupCtx {
                    kind: GroupKind::VirtuallyFree(Box::new(file)),
                    alphabet,
                    oracle,
                })
            }
            other => bail!("unknown group kind `{other}` (expected free, abelian or vf)"),
        }
    }

    pub fn oracle(&self) -> Result<Arc<dyn NormalFormOracle>> {
        self.oracle.clone().ok_or_else(|| {
            anyhow!("this group has no normal-form oracle (vf spec lacks `def`/`rep` lines)")
        })
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Ok(self.alphabet.parse_word(text)?)
    }

    /// Subgroup generators over the ambient alphabet from a file, or for
    /// virtually free groups the subgroup encoded in the vf spec, spelled
    /// over the ambient generators.
    pub fn ambient_subgroup(&self, sub_file: Option<&str>) -> Result<SubgroupSpec> {
        match (&self.kind, sub_file) {
            (_, Some(f)) => Ok(SubgroupSpec::parse(self.alphabet.clone(), &read_file(f)?)?),
            (GroupKind::VirtuallyFree(file), None) => {
                let p = file
                    .presentation
                    .as_ref()
                    .ok_or_else(|| anyhow!("vf spec lacks `def`/`rep` lines, cannot spell the subgroup over the ambient generators"))?;
                let mut gens: Vec<Word> = Vec::new();
                for g in file.subgroup.generators() {
                    let mut spelled = Word::empty();
                    for y in g.iter() {
                        for x in p.y_definitions[y.index()].iter() {
                            spelled.push(x);
                        }
                    }
                    gens.push(spelled);
                }
                for i in 1..file.rewriter.transversal_size() {
                    if file.rewriter.is_marked(i) {
                        gens.push(p.rep_words[i].clone());
                    }
                }
                Ok(SubgroupSpec::new_allowing_trivial(self.alphabet.clone(), gens)?)
            }
            (_, None) => bail!("--sub is required for this group"),
        }
    }

    /// Membership decider for the subgroup: exact Stallings-core membership
    /// for free groups, bounded enumeration elsewhere.
    pub fn membership(
        &self,
        sub_file: Option<&str>,
        products: usize,
    ) -> Result<Box<dyn SubgroupMembership>> {
        match &self.kind {
            GroupKind::Free => {
                let sub = self.ambient_subgroup(sub_file)?;
                Ok(Box::new(CoreMembership::new(&sub)))
            }
            _ => Ok(Box::new(self.enumerated(sub_file, products)?)),
        }
    }

    pub fn enumerated(&self, sub_file: Option<&str>, products: usize) -> Result<EnumeratedSubgroup> {
        let sub = self.ambient_subgroup(sub_file)?;
        Ok(subgroup_enumerate(&sub, self.oracle()?, products))
    }
}
