//! Membership in a finitely generated subgroup of a virtually free group,
//! decided in one left-to-right pass.
//!
//! The pipeline has two machines. A Schreier rewriter turns a word over the
//! ambient generators X into a word over the free-subgroup basis Y plus a
//! transversal index, via the relations `t_i x = u(i,x) t_j`. A deterministic
//! pushdown automaton then recognizes which words over Y lie in the subgroup
//! K of the free group: its live states are the vertices of K's folded core,
//! a sink state covers excursions off the core, and the stack stores the
//! free reduction of the prefix read so far, with a marked symbol recording
//! the state in which the machine last fell off the core. The input word
//! lies in the subgroup exactly when the rewriter ends on a marked
//! transversal element and the automaton ends in its start state.

use crate::error::{Error, Result};
use crate::graph::XGraph;
use crate::oracle::NormalFormOracle;
use crate::word::{free_reduce, invert_word, GeneratorAlphabet, SubgroupSpec, Sym, Word};

/// Finite automaton over the core of K: live states are core vertices, every
/// undefined core edge leads to an absorbing sink.
pub struct CosetFsa {
    alphabet: GeneratorAlphabet,
    delta: Vec<Vec<Option<u32>>>,
    start: u32,
}

impl CosetFsa {
    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn n_live(&self) -> usize {
        self.delta.len()
    }

    /// Start state, which is also the single accepting state.
    pub fn start(&self) -> u32 {
        self.start
    }

    /// Live transition, or `None` for the sink.
    pub fn step(&self, state: u32, s: Sym) -> Option<u32> {
        self.delta[state as usize][s.index()]
    }
}

/// Reads the folded core off into transition-table form.
pub fn build_coset_fsa(core: &XGraph) -> CosetFsa {
    let alphabet = core.alphabet().clone();
    let mut delta = Vec::with_capacity(core.n_vertices());
    for v in 0..core.n_vertices() as u32 {
        let row: Vec<Option<u32>> = alphabet.symbols().map(|s| core.edge(v, s)).collect();
        delta.push(row);
    }
    CosetFsa { alphabet, delta, start: core.base() }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PdaState {
    /// Tracking a live coset state.
    Coset(u32),
    /// Off the core; the return state is parked on the stack.
    Outside,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StackSym {
    Letter(Sym),
    /// A letter together with the live state the machine was in just before
    /// it went outside.
    Marked(Sym, u32),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdaConfig {
    pub state: PdaState,
    /// Bottom of the stack first. The empty vector is the bottom marker.
    pub stack: Vec<StackSym>,
}

/// Net stack effect of one transition; every transition either pops one
/// symbol or pushes one.
#[derive(Clone, Copy, Debug)]
pub struct StepEffect {
    pub popped: Option<StackSym>,
    pub pushed: Option<StackSym>,
}

/// The deterministic pushdown recognizer for `K ≤ F` built on the coset FSA.
pub struct GwpPda {
    fsa: CosetFsa,
}

impl GwpPda {
    pub fn new(fsa: CosetFsa) -> GwpPda {
        GwpPda { fsa }
    }

    pub fn from_core(core: &XGraph) -> GwpPda {
        GwpPda::new(build_coset_fsa(core))
    }

    pub fn fsa(&self) -> &CosetFsa {
        &self.fsa
    }

    pub fn start_config(&self) -> PdaConfig {
        PdaConfig { state: PdaState::Coset(self.fsa.start), stack: Vec::new() }
    }

    /// Acceptance is by final state alone; a nonempty stack in the start
    /// state spells a reduced loop word, which is a legitimate K-element.
    pub fn accepts(&self, config: &PdaConfig) -> bool {
        config.state == PdaState::Coset(self.fsa.start)
    }

    /// One transition. A pop that meets the stack bottom behaves like the
    /// mismatching-top case and pushes instead.
    pub fn step(&self, config: &mut PdaConfig, y: Sym) -> Result<StepEffect> {
        let alphabet = &self.fsa.alphabet;
        let y_inv = alphabet.inverse(y);
        let top = config.stack.last().copied();
        match config.state {
            PdaState::Coset(i) => {
                if matches!(top, Some(StackSym::Marked(..))) {
                    return Err(Error::Invariant(
                        "marked stack symbol while tracking a live state".into(),
                    ));
                }
                match self.fsa.step(i, y) {
                    Some(j) => {
                        config.state = PdaState::Coset(j);
                        if top == Some(StackSym::Letter(y_inv)) {
                            let popped = config.stack.pop();
                            Ok(StepEffect { popped, pushed: None })
                        } else {
                            config.stack.push(StackSym::Letter(y));
                            Ok(StepEffect { popped: None, pushed: Some(StackSym::Letter(y)) })
                        }
                    }
                    None => {
                        // with a reversible live part the top cannot be the
                        // inverse of a letter that has no live transition
                        if top == Some(StackSym::Letter(y_inv)) {
                            return Err(Error::Invariant(format!(
                                "dead transition on `{}` with its inverse on the stack",
                                alphabet.name(y)
                            )));
                        }
                        config.state = PdaState::Outside;
                        let mark = StackSym::Marked(y, i);
                        config.stack.push(mark);
                        Ok(StepEffect { popped: None, pushed: Some(mark) })
                    }
                }
            }
            PdaState::Outside => match top {
                Some(StackSym::Marked(z, i)) if z == y_inv => {
                    let popped = config.stack.pop();
                    config.state = PdaState::Coset(i);
                    Ok(StepEffect { popped, pushed: None })
                }
                Some(StackSym::Letter(z)) if z == y_inv => {
                    let popped = config.stack.pop();
                    Ok(StepEffect { popped, pushed: None })
                }
                _ => {
                    config.stack.push(StackSym::Letter(y));
                    Ok(StepEffect { popped: None, pushed: Some(StackSym::Letter(y)) })
                }
            },
        }
    }

    /// Runs the machine over a word from the start configuration.
    pub fn run(&self, v: &Word) -> Result<(bool, PdaConfig)> {
        self.fsa.alphabet.check_word(v)?;
        let mut config = self.start_config();
        for y in v.iter() {
            self.step(&mut config, y)?;
        }
        Ok((self.accepts(&config), config))
    }
}

/// Transversal data for a finite-index free subgroup F of the ambient group:
/// the right coset action of the X-generators on transversal indices, and the
/// free-subgroup word emitted with each move (`t_i x = u(i,x) t_j`). The
/// marked indices are the transversal elements lying inside the subgroup H.
#[derive(Clone)]
pub struct SchreierRewriter {
    x_alphabet: GeneratorAlphabet,
    y_alphabet: GeneratorAlphabet,
    marked: Vec<bool>,
    action: Vec<Vec<usize>>,
    words: Vec<Vec<Word>>,
}

impl SchreierRewriter {
    /// Indices are 0-based; index 0 is the identity coset and must be marked.
    pub fn new(
        x_alphabet: GeneratorAlphabet,
        y_alphabet: GeneratorAlphabet,
        marked: Vec<bool>,
        action: Vec<Vec<usize>>,
        words: Vec<Vec<Word>>,
    ) -> Result<SchreierRewriter> {
        let n = marked.len();
        if n == 0 {
            return Err(Error::Config("transversal must be nonempty".into()));
        }
        if !marked[0] {
            return Err(Error::Config("the identity coset (index 1) must be marked".into()));
        }
        if action.len() != n || words.len() != n {
            return Err(Error::Config("action and word tables must have one row per index".into()));
        }
        for i in 0..n {
            if action[i].len() != x_alphabet.len() || words[i].len() != x_alphabet.len() {
                return Err(Error::Config("tables must have one column per ambient symbol".into()));
            }
            for x in x_alphabet.symbols() {
                let j = action[i][x.index()];
                if j >= n {
                    return Err(Error::Config(format!("action index {} out of range", j + 1)));
                }
                if action[j][x_alphabet.inverse(x).index()] != i {
                    return Err(Error::Config(format!(
                        "action is not an involution-compatible groupoid at index {}, symbol {}",
                        i + 1,
                        x_alphabet.name(x)
                    )));
                }
                y_alphabet.check_word(&words[i][x.index()])?;
                let back = &words[j][x_alphabet.inverse(x).index()];
                let round = words[i][x.index()].concat(back);
                if !free_reduce(&y_alphabet, &round).is_empty() {
                    return Err(Error::Config(format!(
                        "emitted words at index {}, symbol {} are not mutually inverse",
                        i + 1,
                        x_alphabet.name(x)
                    )));
                }
            }
        }
        Ok(SchreierRewriter { x_alphabet, y_alphabet, marked, action, words })
    }

    pub fn transversal_size(&self) -> usize {
        self.marked.len()
    }

    pub fn is_marked(&self, index: usize) -> bool {
        self.marked[index]
    }

    pub fn x_alphabet(&self) -> &GeneratorAlphabet {
        &self.x_alphabet
    }

    pub fn y_alphabet(&self) -> &GeneratorAlphabet {
        &self.y_alphabet
    }

    pub fn action(&self, index: usize, x: Sym) -> usize {
        self.action[index][x.index()]
    }

    pub fn emitted(&self, index: usize, x: Sym) -> &Word {
        &self.words[index][x.index()]
    }
}

/// Left-to-right rewriting of an ambient word into (word over Y, transversal
/// index). The emitted word is not freely reduced.
pub fn schreier_rewrite(rw: &SchreierRewriter, w: &Word) -> Result<(Word, usize)> {
    rw.x_alphabet.check_word(w)?;
    let mut index = 0usize;
    let mut out = Word::empty();
    for x in w.iter() {
        for y in rw.emitted(index, x).iter() {
            out.push(y);
        }
        index = rw.action(index, x);
    }
    Ok((out, index))
}

/// Streaming composition of the rewriter with the pushdown recognizer:
/// emissions are fed into the machine letter by letter, and the verdict is
/// (final transversal index marked) ∧ (machine accepts).
pub fn gwp_virtually_free(rw: &SchreierRewriter, pda: &GwpPda, w: &Word) -> Result<bool> {
    rw.x_alphabet.check_word(w)?;
    let mut index = 0usize;
    let mut config = pda.start_config();
    for x in w.iter() {
        for y in rw.emitted(index, x).iter() {
            pda.step(&mut config, y)?;
        }
        index = rw.action(index, x);
    }
    Ok(rw.is_marked(index) && pda.accepts(&config))
}

/// A rewriter together with the spelling of the free-subgroup basis and the
/// transversal representatives as ambient words. Enough data to compute
/// canonical forms for the whole group.
#[derive(Clone)]
pub struct VfPresentation {
    pub rewriter: SchreierRewriter,
    /// Word over X for each symbol of the Y alphabet.
    pub y_definitions: Vec<Word>,
    /// Word over X for each transversal index; index 0 must spell the
    /// identity.
    pub rep_words: Vec<Word>,
}

/// Normal forms for the virtually free group: rewrite to (v, t), freely
/// reduce v over Y, then spell the result back over X and freely reduce.
/// Words are equal in the group exactly when they rewrite to the same pair,
/// so the rendering is a canonical form.
pub struct CosetNormalForm {
    data: VfPresentation,
}

impl CosetNormalForm {
    pub fn new(data: VfPresentation) -> Result<CosetNormalForm> {
        let rw = &data.rewriter;
        let n = rw.transversal_size();
        if data.y_definitions.len() != rw.y_alphabet.len() {
            return Err(Error::Config("one defining word per free generator required".into()));
        }
        if data.rep_words.len() != n {
            return Err(Error::Config("one representative word per transversal index required".into()));
        }
        for w in data.y_definitions.iter().chain(data.rep_words.iter()) {
            rw.x_alphabet.check_word(w)?;
        }
        // the definitions must rewrite back to what they claim to spell
        for y in rw.y_alphabet.symbols() {
            let (v, t) = schreier_rewrite(rw, &data.y_definitions[y.index()])?;
            if t != 0 || free_reduce(&rw.y_alphabet, &v).letters() != [y] {
                return Err(Error::Config(format!(
                    "definition of free generator `{}` does not rewrite to it",
                    rw.y_alphabet.name(y)
                )));
            }
        }
        for (i, rep) in data.rep_words.iter().enumerate() {
            let (v, t) = schreier_rewrite(rw, rep)?;
            if t != i || !free_reduce(&rw.y_alphabet, &v).is_empty() {
                return Err(Error::Config(format!(
                    "representative word for index {} does not rewrite to it",
                    i + 1
                )));
            }
        }
        Ok(CosetNormalForm { data })
    }

    pub fn presentation(&self) -> &VfPresentation {
        &self.data
    }
}

impl NormalFormOracle for CosetNormalForm {
    fn alphabet(&self) -> &GeneratorAlphabet {
        self.data.rewriter.x_alphabet()
    }

    fn normal_form(&self, w: &Word) -> Word {
        let rw = &self.data.rewriter;
        let (v, t) = schreier_rewrite(rw, w).expect("word checked by caller APIs");
        let v = free_reduce(rw.y_alphabet(), &v);
        let mut spelled = Word::empty();
        for y in v.iter() {
            for x in self.data.y_definitions[y.index()].iter() {
                spelled.push(x);
            }
        }
        for x in self.data.rep_words[t].iter() {
            spelled.push(x);
        }
        free_reduce(rw.x_alphabet(), &spelled)
    }
}

/// Parsed virtually-free group description: rewriter, the subgroup
/// `K = F ∩ H` over Y, and optionally the spelling data for normal forms.
pub struct VfSpecFile {
    pub rewriter: SchreierRewriter,
    pub subgroup: SubgroupSpec,
    pub presentation: Option<VfPresentation>,
}

/// Text format, one declaration per line (`#` comments allowed):
///
/// ```text
/// generators: x y          # ambient alphabet X
/// self-inverse: x y
/// free-generators: g       # free-subgroup basis Y (inverses implied)
/// transversal: 2
/// marked: 1                # 1-based indices, must include 1
/// act 1 x 2                # t_1 · x lies in coset 2 ...
/// sch 1 x :                # ... emitting this word over Y
/// def g : x y              # optional: spell each free generator over X
/// rep 2 : x                # optional: spell transversal elements over X
/// subgroup:                # generators of K over Y, one per line
/// g
/// ```
///
/// Action and emission entries for inverse symbols may be omitted; they are
/// filled in from the involution.
pub fn parse_vf_spec(text: &str) -> Result<VfSpecFile> {
    let mut x_generators: Option<Vec<String>> = None;
    let mut self_inverse: Vec<String> = Vec::new();
    let mut y_generators: Option<Vec<String>> = None;
    let mut transversal: Option<usize> = None;
    let mut marked_idx: Vec<usize> = Vec::new();
    let mut act_lines: Vec<(usize, usize, String, usize)> = Vec::new();
    let mut sch_lines: Vec<(usize, usize, String, String)> = Vec::new();
    let mut def_lines: Vec<(usize, String, String)> = Vec::new();
    let mut rep_lines: Vec<(usize, usize, String)> = Vec::new();
    let mut subgroup_lines: Vec<(usize, String)> = Vec::new();
    let mut in_subgroup = false;

    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    for (i, raw) in text.lines().enumerate() {
        let line = crate::word::strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        if in_subgroup {
            subgroup_lines.push((lineno, line.to_string()));
            continue;
        }
        if let Some(rest) = line.strip_prefix("generators:") {
            x_generators = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("self-inverse:") {
            self_inverse = rest.split_whitespace().map(str::to_string).collect();
        } else if let Some(rest) = line.strip_prefix("free-generators:") {
            y_generators = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = line.strip_prefix("transversal:") {
            transversal = Some(rest.trim().parse().map_err(|e| perr(lineno, format!("bad transversal size: {e}")))?);
        } else if let Some(rest) = line.strip_prefix("marked:") {
            for tok in rest.split_whitespace() {
                marked_idx.push(tok.parse().map_err(|e| perr(lineno, format!("bad marked index: {e}")))?);
            }
        } else if let Some(rest) = line.strip_prefix("act ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(perr(lineno, "expected `act <i> <symbol> <j>`".into()));
            }
            let i1: usize = parts[0].parse().map_err(|e| perr(lineno, format!("{e}")))?;
            let j1: usize = parts[2].parse().map_err(|e| perr(lineno, format!("{e}")))?;
            act_lines.push((lineno, i1, parts[1].to_string(), j1));
        } else if let Some(rest) = line.strip_prefix("sch ") {
            let (head, word) = rest.split_once(':').ok_or_else(|| perr(lineno, "expected `sch <i> <symbol> : <word>`".into()))?;
            let parts: Vec<&str> = head.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(perr(lineno, "expected `sch <i> <symbol> : <word>`".into()));
            }
            let i1: usize = parts[0].parse().map_err(|e| perr(lineno, format!("{e}")))?;
            sch_lines.push((lineno, i1, parts[1].to_string(), word.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("def ") {
            let (head, word) = rest.split_once(':').ok_or_else(|| perr(lineno, "expected `def <y> : <word>`".into()))?;
            def_lines.push((lineno, head.trim().to_string(), word.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("rep ") {
            let (head, word) = rest.split_once(':').ok_or_else(|| perr(lineno, "expected `rep <i> : <word>`".into()))?;
            let i1: usize = head.trim().parse().map_err(|e| perr(lineno, format!("{e}")))?;
            rep_lines.push((lineno, i1, word.trim().to_string()));
        } else if line == "subgroup:" {
            in_subgroup = true;
        } else {
            return Err(perr(lineno, format!("unexpected line `{line}`")));
        }
    }

    let x_generators = x_generators.ok_or_else(|| perr(0, "missing `generators:` line".into()))?;
    let y_generators = y_generators.ok_or_else(|| perr(0, "missing `free-generators:` line".into()))?;
    let n = transversal.ok_or_else(|| perr(0, "missing `transversal:` line".into()))?;
    if n == 0 {
        return Err(perr(0, "transversal size must be positive".into()));
    }
    let x_alphabet = GeneratorAlphabet::new(&x_generators, &self_inverse)?;
    let y_alphabet = GeneratorAlphabet::new(&y_generators, &[])?;

    let mut marked = vec![false; n];
    for idx in marked_idx {
        if idx == 0 || idx > n {
            return Err(perr(0, format!("marked index {idx} out of range 1..={n}")));
        }
        marked[idx - 1] = true;
    }

    let mut action: Vec<Vec<Option<usize>>> = vec![vec![None; x_alphabet.len()]; n];
    let mut words: Vec<Vec<Option<Word>>> = vec![vec![None; x_alphabet.len()]; n];
    let check_idx = |lineno: usize, i: usize| -> Result<usize> {
        if i == 0 || i > n {
            Err(perr(lineno, format!("index {i} out of range 1..={n}")))
        } else {
            Ok(i - 1)
        }
    };
    for (lineno, i1, sym, j1) in act_lines {
        let i = check_idx(lineno, i1)?;
        let j = check_idx(lineno, j1)?;
        let x = x_alphabet.parse_symbol(&sym).map_err(|e| perr(lineno, e.to_string()))?;
        if action[i][x.index()].replace(j).is_some() {
            return Err(perr(lineno, format!("duplicate action entry for index {i1}, symbol {sym}")));
        }
    }
    for (lineno, i1, sym, word) in sch_lines {
        let i = check_idx(lineno, i1)?;
        let x = x_alphabet.parse_symbol(&sym).map_err(|e| perr(lineno, e.to_string()))?;
        let w = y_alphabet.parse_word(&word).map_err(|e| perr(lineno, e.to_string()))?;
        if words[i][x.index()].replace(w).is_some() {
            return Err(perr(lineno, format!("duplicate emission entry for index {i1}, symbol {sym}")));
        }
    }
    // derive the inverse-symbol entries that were left out
    for i in 0..n {
        for x in x_alphabet.symbols() {
            if let Some(j) = action[i][x.index()] {
                let xi = x_alphabet.inverse(x);
                if action[j][xi.index()].is_none() {
                    action[j][xi.index()] = Some(i);
                }
                if words[j][xi.index()].is_none() {
                    if let Some(w) = &words[i][x.index()] {
                        words[j][xi.index()] = Some(invert_word(&y_alphabet, w));
                    }
                }
            }
        }
    }
    let mut action_full = Vec::with_capacity(n);
    let mut words_full = Vec::with_capacity(n);
    for i in 0..n {
        let mut arow = Vec::with_capacity(x_alphabet.len());
        let mut wrow = Vec::with_capacity(x_alphabet.len());
        for x in x_alphabet.symbols() {
            let j = action[i][x.index()].ok_or_else(|| {
                perr(0, format!("missing action for index {}, symbol {}", i + 1, x_alphabet.name(x)))
            })?;
            arow.push(j);
            wrow.push(words[i][x.index()].clone().unwrap_or_default());
        }
        action_full.push(arow);
        words_full.push(wrow);
    }
    let rewriter = SchreierRewriter::new(x_alphabet.clone(), y_alphabet.clone(), marked, action_full, words_full)?;

    let mut sub_words = Vec::new();
    for (lineno, line) in subgroup_lines {
        let w = y_alphabet.parse_word(&line).map_err(|e| perr(lineno, e.to_string()))?;
        sub_words.push(w);
    }
    let subgroup = SubgroupSpec::new(y_alphabet.clone(), sub_words)?;

    let presentation = if def_lines.is_empty() && rep_lines.is_empty() {
        None
    } else {
        let mut y_definitions: Vec<Option<Word>> = vec![None; y_alphabet.len()];
        for (lineno, name, word) in def_lines {
            let y = y_alphabet.parse_symbol(&name).map_err(|e| perr(lineno, e.to_string()))?;
            let w = x_alphabet.parse_word(&word).map_err(|e| perr(lineno, e.to_string()))?;
            if y_definitions[y.index()].replace(w).is_some() {
                return Err(perr(lineno, format!("duplicate definition for `{name}`")));
            }
        }
        // fill in inverse-symbol definitions that were left out
        for y in y_alphabet.symbols() {
            let yi = y_alphabet.inverse(y);
            if let Some(w) = y_definitions[y.index()].clone() {
                if y_definitions[yi.index()].is_none() {
                    y_definitions[yi.index()] = Some(invert_word(&x_alphabet, &w));
                }
            }
        }
        let mut rep_words: Vec<Option<Word>> = vec![None; n];
        rep_words[0] = Some(Word::empty());
        for (lineno, i1, word) in rep_lines {
            let i = check_idx(lineno, i1)?;
            let w = x_alphabet.parse_word(&word).map_err(|e| perr(lineno, e.to_string()))?;
            if i == 0 {
                if !free_reduce(&x_alphabet, &w).is_empty() {
                    return Err(perr(lineno, "representative of index 1 must spell the identity".into()));
                }
                continue;
            }
            if rep_words[i].replace(w).is_some() {
                return Err(perr(lineno, format!("duplicate representative for index {i1}")));
            }
        }
        let y_definitions: Vec<Word> = y_definitions
            .into_iter()
            .enumerate()
            .map(|(k, d)| d.ok_or_else(|| perr(0, format!("missing `def` for `{}`", y_alphabet.name(Sym::new(k))))))
            .collect::<Result<_>>()?;
        let rep_words: Vec<Word> = rep_words
            .into_iter()
            .enumerate()
            .map(|(k, d)| d.ok_or_else(|| perr(0, format!("missing `rep` for index {}", k + 1))))
            .collect::<Result<_>>()?;
        let data = VfPresentation { rewriter: rewriter.clone(), y_definitions, rep_words };
        CosetNormalForm::new(data.clone())?;
        Some(data)
    };

    Ok(VfSpecFile { rewriter, subgroup, presentation })
}

pub fn format_vf_spec(spec: &VfSpecFile) -> String {
    let rw = &spec.rewriter;
    let xa = rw.x_alphabet();
    let ya = rw.y_alphabet();
    let mut out = String::new();
    out.push_str(&format!("generators: {}\n", xa.generator_names().join(" ")));
    if !xa.self_inverse_names().is_empty() {
        out.push_str(&format!("self-inverse: {}\n", xa.self_inverse_names().join(" ")));
    }
    out.push_str(&format!("free-generators: {}\n", ya.generator_names().join(" ")));
    out.push_str(&format!("transversal: {}\n", rw.transversal_size()));
    let marked: Vec<String> = (0..rw.transversal_size())
        .filter(|&i| rw.is_marked(i))
        .map(|i| (i + 1).to_string())
        .collect();
    out.push_str(&format!("marked: {}\n", marked.join(" ")));
    for i in 0..rw.transversal_size() {
        for x in xa.symbols() {
            out.push_str(&format!("act {} {} {}\n", i + 1, xa.name(x), rw.action(i, x) + 1));
            out.push_str(&format!("sch {} {} : {}\n", i + 1, xa.name(x), ya.format_word(rw.emitted(i, x))));
        }
    }
    if let Some(p) = &spec.presentation {
        for y in ya.symbols() {
            out.push_str(&format!("def {} : {}\n", ya.name(y), xa.format_word(&p.y_definitions[y.index()])));
        }
        for (i, rep) in p.rep_words.iter().enumerate().skip(1) {
            out.push_str(&format!("rep {} : {}\n", i + 1, xa.format_word(rep)));
        }
    }
    out.push_str("subgroup:\n");
    out.push_str(&spec.subgroup.to_text());
    out
}
