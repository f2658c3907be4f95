//! Standard examples shared by the test suites and the command-line verify
//! command: the rank-2 free group with three reference subgroups, its
//! abelianization, and the free product of two order-2 groups presented over
//! its index-2 infinite cyclic subgroup.

use crate::oracle::{FreeAbelianOracle, FreeReductionOracle, NormalFormOracle};
use crate::pda::{CosetNormalForm, SchreierRewriter, VfPresentation};
use crate::word::{GeneratorAlphabet, SubgroupSpec, Word};
use std::sync::Arc;

pub fn free_rank2() -> GeneratorAlphabet {
    GeneratorAlphabet::free(2)
}

pub fn free_oracle_rank2() -> Arc<dyn NormalFormOracle> {
    Arc::new(FreeReductionOracle::new(free_rank2()))
}

pub fn abelian_oracle_rank2() -> Arc<dyn NormalFormOracle> {
    Arc::new(FreeAbelianOracle::new(free_rank2()))
}

fn sub(alphabet: &GeneratorAlphabet, gens: &[&str]) -> SubgroupSpec {
    let words = gens
        .iter()
        .map(|g| alphabet.parse_word(g).expect("fixture word"))
        .collect();
    SubgroupSpec::new(alphabet.clone(), words).expect("fixture subgroup")
}

/// ⟨a⟩ inside the rank-2 free group (or its abelianization).
pub fn sub_a(alphabet: &GeneratorAlphabet) -> SubgroupSpec {
    sub(alphabet, &["a"])
}

/// ⟨a², b⟩.
pub fn sub_a2_b(alphabet: &GeneratorAlphabet) -> SubgroupSpec {
    sub(alphabet, &["a a", "b"])
}

/// ⟨a b a⁻¹, b²⟩.
pub fn sub_aba_b2(alphabet: &GeneratorAlphabet) -> SubgroupSpec {
    sub(alphabet, &["a b a^-1", "b b"])
}

/// The free product of two order-2 groups ⟨x⟩ ∗ ⟨y⟩, with its index-2 free
/// subgroup generated by g = xy, transversal {1, x}, and the subgroups
/// H = ⟨xy⟩ and H = ⟨(xy)²⟩ of the free part.
pub struct Z2Z2Fixture {
    pub rewriter: SchreierRewriter,
    pub oracle: Arc<CosetNormalForm>,
    /// K = ⟨g⟩, the whole free part.
    pub sub_full: SubgroupSpec,
    /// K = ⟨g²⟩.
    pub sub_square: SubgroupSpec,
}

pub fn z2z2() -> Z2Z2Fixture {
    let x_alphabet = GeneratorAlphabet::new(&["x", "y"], &["x", "y"]).expect("fixture alphabet");
    let y_alphabet = GeneratorAlphabet::new(&["g"], &[]).expect("fixture alphabet");
    let xw = |s: &str| x_alphabet.parse_word(s).expect("fixture word");
    let yw = |s: &str| y_alphabet.parse_word(s).expect("fixture word");

    // column order follows the x-alphabet: [x, y]
    // t_1 x = t_2          t_1 y = g^-1 t_2
    // t_2 x = t_1          t_2 y = g t_1
    let action = vec![vec![1, 1], vec![0, 0]];
    let words = vec![vec![yw(""), yw("g^-1")], vec![yw(""), yw("g")]];
    let rewriter = SchreierRewriter::new(
        x_alphabet.clone(),
        y_alphabet.clone(),
        vec![true, false],
        action,
        words,
    )
    .expect("fixture rewriter");

    let presentation = VfPresentation {
        rewriter: rewriter.clone(),
        y_definitions: vec![xw("x y"), xw("y x")],
        rep_words: vec![Word::empty(), xw("x")],
    };
    let oracle = Arc::new(CosetNormalForm::new(presentation).expect("fixture oracle"));

    let sub_full = SubgroupSpec::new(y_alphabet.clone(), vec![yw("g")]).expect("fixture subgroup");
    let sub_square =
        SubgroupSpec::new(y_alphabet.clone(), vec![yw("g g")]).expect("fixture subgroup");

    Z2Z2Fixture { rewriter, oracle, sub_full, sub_square }
}
