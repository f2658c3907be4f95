//! Extended Dehn algorithms: finite, strictly length-reducing rewriting
//! systems over an inverse-closed alphabet, with plain rules (matched
//! anywhere) and anchored rules (matched only at the start of the tape, where
//! the implicit coset marker sits).
//!
//! The application order is fixed: among all left-hand-side occurrences the
//! one that ends closest to the start of the tape is rewritten; among those,
//! the longest left-hand side wins, and an anchored rule beats a plain rule
//! of the same length at the same position. With no two rules sharing a
//! (left-hand side, anchored) pair this makes reduction deterministic.
//!
//! `reduce_stream` consumes one letter at a time and keeps the tape reduced
//! throughout; because the tape is reduced before each letter arrives, fresh
//! occurrences can only end in the region a rewrite just touched, so the work
//! per letter is bounded and total rule applications never exceed the number
//! of letters consumed.

use crate::error::{Error, Result};
use crate::oracle::{NormalFormOracle, SubgroupMembership};
use crate::word::{strip_comment, GeneratorAlphabet, Sym, Word};
use std::collections::HashMap;

/// One rewriting rule; `|lhs| > |rhs|` always.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
    /// Anchored rules apply only when the left-hand side is a prefix of the
    /// tape.
    pub anchored: bool,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word, anchored: bool) -> Result<Rule> {
        if lhs.len() <= rhs.len() {
            return Err(Error::InvalidRule(format!(
                "rule must strictly reduce length ({} -> {})",
                lhs.len(),
                rhs.len()
            )));
        }
        Ok(Rule { lhs, rhs, anchored })
    }
}

/// A finite length-reducing rewriting system with the deterministic
/// application order described in the module docs.
pub struct Eda {
    alphabet: GeneratorAlphabet,
    rules: Vec<Rule>,
    plain: HashMap<Vec<Sym>, usize>,
    anchored: HashMap<Vec<Sym>, usize>,
    max_plain_len: usize,
    max_anchored_len: usize,
}

impl Eda {
    pub fn new(alphabet: GeneratorAlphabet, rules: Vec<Rule>) -> Result<Eda> {
        let mut eda = Eda {
            alphabet,
            rules: Vec::new(),
            plain: HashMap::new(),
            anchored: HashMap::new(),
            max_plain_len: 0,
            max_anchored_len: 0,
        };
        for r in rules {
            eda.insert(r)?;
        }
        Ok(eda)
    }

    fn insert(&mut self, rule: Rule) -> Result<()> {
        self.alphabet.check_word(&rule.lhs)?;
        self.alphabet.check_word(&rule.rhs)?;
        if rule.lhs.len() <= rule.rhs.len() {
            return Err(Error::InvalidRule("rule must strictly reduce length".into()));
        }
        let key = rule.lhs.letters().to_vec();
        let table = if rule.anchored { &mut self.anchored } else { &mut self.plain };
        if table.contains_key(&key) {
            return Err(Error::DuplicateRule(self.alphabet.format_word(&rule.lhs)));
        }
        table.insert(key, self.rules.len());
        if rule.anchored {
            self.max_anchored_len = self.max_anchored_len.max(rule.lhs.len());
        } else {
            self.max_plain_len = self.max_plain_len.max(rule.lhs.len());
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn max_anchored_len(&self) -> usize {
        self.max_anchored_len
    }

    /// A copy of this system extended by more rules.
    pub fn adjoin_rules<I: IntoIterator<Item = Rule>>(&self, extra: I) -> Result<Eda> {
        let mut rules = self.rules.clone();
        rules.extend(extra);
        Eda::new(self.alphabet.clone(), rules)
    }

    /// Is `w` reduced with respect to the plain rules alone (no left-hand
    /// side as a subword)?
    pub fn plain_reduced(&self, w: &[Sym]) -> bool {
        for end in 0..w.len() {
            let maxl = self.max_plain_len.min(end + 1);
            for len in 1..=maxl {
                if self.plain.contains_key(&w[end + 1 - len..=end]) {
                    return false;
                }
            }
        }
        true
    }

    /// First applicable occurrence at or after `from`, under the order
    /// (leftmost end, then longest lhs, then anchored before plain).
    fn best_match(&self, tape: &[Sym], from: usize) -> Option<(usize, usize, usize)> {
        let max_len = self.max_plain_len.max(self.max_anchored_len);
        for end in from..tape.len() {
            let maxl = max_len.min(end + 1);
            for len in (1..=maxl).rev() {
                let start = end + 1 - len;
                if start == 0 && len <= self.max_anchored_len {
                    if let Some(&idx) = self.anchored.get(&tape[..=end]) {
                        return Some((start, end, idx));
                    }
                }
                if len <= self.max_plain_len {
                    if let Some(&idx) = self.plain.get(&tape[start..=end]) {
                        return Some((start, end, idx));
                    }
                }
            }
        }
        None
    }

    /// Rule file: one `lhs -> rhs` per line, anchored rules prefixed `H `,
    /// empty right-hand sides allowed.
    pub fn parse_rules(alphabet: GeneratorAlphabet, text: &str) -> Result<Eda> {
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (anchored, body) = match line.strip_prefix("H ") {
                Some(rest) => (true, rest),
                None => (false, line),
            };
            let (lhs, rhs) = body.split_once("->").ok_or(Error::Parse {
                line: i + 1,
                msg: format!("missing `->` in rule `{line}`"),
            })?;
            let mk = |s: &str| {
                alphabet.parse_word(s).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })
            };
            let rule = Rule::new(mk(lhs)?, mk(rhs)?, anchored).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            rules.push(rule);
        }
        Eda::new(alphabet, rules)
    }

    pub fn format_rules(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            if r.anchored {
                out.push_str("H ");
            }
            out.push_str(&self.alphabet.format_word(&r.lhs));
            out.push_str(" -> ");
            out.push_str(&self.alphabet.format_word(&r.rhs));
            out.push('\n');
        }
        out
    }
}

/// Mutable state of one streaming reduction run.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReducerState {
    tape: Word,
    letters_consumed: u64,
    applications: u64,
    max_cascade: u64,
}

impl ReducerState {
    pub fn new() -> ReducerState {
        ReducerState::default()
    }

    pub fn tape(&self) -> &Word {
        &self.tape
    }

    pub fn letters_consumed(&self) -> u64 {
        self.letters_consumed
    }

    pub fn applications(&self) -> u64 {
        self.applications
    }

    pub fn max_cascade(&self) -> u64 {
        self.max_cascade
    }
}

/// Feeds one letter into the reducer and cascades rule applications until
/// the tape is reduced again.
pub fn reduce_stream(eda: &Eda, state: &mut ReducerState, letter: Sym) {
    state.tape.push(letter);
    state.letters_consumed += 1;
    let mut cascade = 0u64;
    // the tape was reduced, so matches can only end at the new last letter
    let mut from = state.tape.len() - 1;
    while let Some((start, end, idx)) = eda.best_match(&state.tape, from) {
        let rhs = eda.rules[idx].rhs.clone();
        state.tape.splice(start, end, rhs.letters());
        state.applications += 1;
        cascade += 1;
        from = start;
    }
    state.max_cascade = state.max_cascade.max(cascade);
}

/// Reduces a whole word under the global application order: repeatedly
/// rewrite the occurrence ending closest to the start. This is a separate
/// route from letterwise streaming; the two must produce identical tapes.
pub fn reduce_batch(eda: &Eda, w: &Word) -> ReducerState {
    let mut tape = w.clone();
    let mut applications = 0u64;
    let mut from = 0usize;
    while let Some((start, end, idx)) = eda.best_match(&tape, from) {
        let rhs = eda.rules[idx].rhs.clone();
        tape.splice(start, end, rhs.letters());
        applications += 1;
        // no occurrence can end before the start of the rewritten region
        from = start;
    }
    ReducerState {
        tape,
        letters_consumed: w.len() as u64,
        applications,
        max_cascade: 0,
    }
}

/// Shortlex breadth-first scan of the group out to `depth`: canonical form →
/// (geodesic length, shortlex-least word).
fn geodesic_table(
    oracle: &dyn NormalFormOracle,
    depth: usize,
) -> HashMap<Word, (usize, Word)> {
    let alphabet = oracle.alphabet();
    let mut table: HashMap<Word, (usize, Word)> = HashMap::new();
    let identity = oracle.normal_form(&Word::empty());
    table.insert(identity, (0, Word::empty()));
    let mut frontier: Vec<Word> = vec![Word::empty()];
    for d in 1..=depth {
        let mut next = Vec::new();
        for rep in &frontier {
            for s in alphabet.symbols() {
                let mut w = rep.clone();
                w.push(s);
                let c = oracle.normal_form(&w);
                if let std::collections::hash_map::Entry::Vacant(e) = table.entry(c) {
                    e.insert((d, w.clone()));
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    table
}

/// All shortening rules `u → v` with `|u| ≤ max_len`, where `u` is
/// non-geodesic, every proper subword of `u` is geodesic, and `v` is the
/// shortlex-least word equal to `u`. One rule per left-hand side.
pub fn generate_dehn_rules(oracle: &dyn NormalFormOracle, max_len: usize) -> Result<Eda> {
    if max_len < 2 {
        return Err(Error::Config("rule length bound must be at least 2".into()));
    }
    let alphabet = oracle.alphabet().clone();
    let table = geodesic_table(oracle, max_len);
    let elem_len = |w: &Word| table[&oracle.normal_form(w)].0;
    let mut rules = Vec::new();
    let mut words: Vec<Word> = vec![Word::empty()];
    for _ in 1..=max_len {
        let mut next = Vec::new();
        for w in &words {
            for s in alphabet.symbols() {
                let mut u = w.clone();
                u.push(s);
                next.push(u);
            }
        }
        for u in &next {
            let len = elem_len(u);
            if len >= u.len() {
                continue;
            }
            // minimality: every proper subword geodesic
            let mut minimal = true;
            'subwords: for i in 0..u.len() {
                for j in i..u.len() {
                    if j - i + 1 == u.len() {
                        continue;
                    }
                    let sub = Word::from_syms(u[i..=j].to_vec());
                    if elem_len(&sub) < sub.len() {
                        minimal = false;
                        break 'subwords;
                    }
                }
            }
            if !minimal {
                continue;
            }
            let rhs = table[&oracle.normal_form(u)].1.clone();
            rules.push(Rule { lhs: u.clone(), rhs, anchored: false });
        }
        words = next;
    }
    Eda::new(alphabet, rules)
}

/// All anchored coset-shortening rules `v₁ → v₂` with `|v₁| ≤ max_len`:
/// `v₁` freely reduced, its coset strictly closer to the base than `|v₁|`,
/// every proper prefix coset-geodesic, and `v₂` the shortlex-least word in
/// the coset. Left-hand sides reducible by a plain cancellation never
/// survive on a reduced tape, so they are filtered out here.
pub fn generate_anchored_rules(
    member: &dyn SubgroupMembership,
    max_len: usize,
) -> Result<Vec<Rule>> {
    if max_len == 0 {
        return Ok(Vec::new());
    }
    let alphabet = member.alphabet().clone();
    if member.coset_canonical(&Word::empty()).is_none() {
        return Err(Error::Config(
            "membership oracle does not support coset canonicalization".into(),
        ));
    }
    let key_of = |w: &Word| member.coset_canonical(w).expect("supported");

    // coset table to radius max_len: key → (distance, shortlex-least word)
    let mut table: HashMap<Word, (usize, Word)> = HashMap::new();
    table.insert(key_of(&Word::empty()), (0, Word::empty()));
    let mut frontier: Vec<Word> = vec![Word::empty()];
    for d in 1..=max_len {
        let mut next = Vec::new();
        for rep in &frontier {
            for s in alphabet.symbols() {
                let mut w = rep.clone();
                w.push(s);
                let key = key_of(&w);
                if let std::collections::hash_map::Entry::Vacant(e) = table.entry(key) {
                    e.insert((d, w.clone()));
                    next.push(w);
                }
            }
        }
        frontier = next;
    }

    // depth-first scan of freely reduced words, pruned at the first
    // non-geodesic prefix (which is where the rule gets emitted)
    let mut rules = Vec::new();
    let mut stack: Vec<Word> = alphabet.symbols().map(Word::single).collect();
    stack.reverse();
    while let Some(w) = stack.pop() {
        let dist = table[&key_of(&w)].0;
        if dist < w.len() {
            let rhs = table[&key_of(&w)].1.clone();
            rules.push(Rule { lhs: w, rhs, anchored: true });
            continue;
        }
        if w.len() < max_len {
            let last_inv = alphabet.inverse(*w.last().unwrap());
            for s in alphabet.symbols().rev() {
                if s == last_inv {
                    continue;
                }
                let mut nxt = w.clone();
                nxt.push(s);
                stack.push(nxt);
            }
        }
    }
    Ok(rules)
}

/// Adds anchored single-letter absorption rules `z → ε` for each symbol.
pub fn adjoin_absorption_rules(eda: &Eda, symbols: &[Sym]) -> Result<Eda> {
    let mut seen = Vec::new();
    let mut extra = Vec::new();
    for &s in symbols {
        if seen.contains(&s) {
            continue;
        }
        seen.push(s);
        extra.push(Rule {
            lhs: Word::single(s),
            rhs: Word::empty(),
            anchored: true,
        });
    }
    eda.adjoin_rules(extra)
}

/// Outcome of the geodesy verification.
#[derive(Debug, Default)]
pub struct PdeReport {
    /// Reduced words whose element is short (length ≤ D) but which are not
    /// geodesic themselves, as (word, element length).
    pub short_element_violations: Vec<(Word, usize)>,
    /// Reduced words of length ≤ E that are not geodesic, as
    /// (word, element length).
    pub short_word_violations: Vec<(Word, usize)>,
    pub words_checked: usize,
}

impl PdeReport {
    pub fn passed(&self) -> bool {
        self.short_element_violations.is_empty() && self.short_word_violations.is_empty()
    }
}

/// Checks the geodesy conditions of a word-problem rule set: every
/// plain-reduced word of length ≤ `max_word_len` (condition on words) and
/// every plain-reduced word representing an element of length ≤
/// `max_elem_len` (condition on elements) must be geodesic. Reduced words up
/// to `scan_len` are enumerated; `scan_len` must cover `max_word_len`.
pub fn verify_pde(
    eda: &Eda,
    oracle: &dyn NormalFormOracle,
    max_elem_len: usize,
    max_word_len: usize,
    scan_len: usize,
) -> Result<PdeReport> {
    if max_elem_len < max_word_len {
        return Err(Error::Config("element bound D must be at least the word bound E".into()));
    }
    if scan_len < max_word_len {
        return Err(Error::Config("scan length must cover the word bound E".into()));
    }
    let alphabet = oracle.alphabet().clone();
    let table = geodesic_table(oracle, scan_len);
    let mut report = PdeReport::default();
    // reduced words only: extend a reduced prefix and re-check its new suffixes
    let mut stack: Vec<Word> = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        if !w.is_empty() {
            report.words_checked += 1;
            let elem_len = table[&oracle.normal_form(&w)].0;
            if elem_len < w.len() {
                if elem_len <= max_elem_len {
                    report.short_element_violations.push((w.clone(), elem_len));
                }
                if w.len() <= max_word_len {
                    report.short_word_violations.push((w.clone(), elem_len));
                }
            }
        }
        if w.len() < scan_len {
            for s in alphabet.symbols() {
                let mut nxt = w.clone();
                nxt.push(s);
                if eda.plain_reduced(&nxt) {
                    stack.push(nxt);
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of the realtime-bound verification over all words up to a length.
#[derive(Debug, Default)]
pub struct RealtimeReport {
    /// (tape length, coset length, witness) achieving the largest ratio over
    /// words whose coset is not the base coset.
    pub max_ratio: Option<(usize, usize, Word)>,
    /// Words where the reduced tape is empty but the coset is not the base,
    /// or nonempty with the base coset: membership disagreements.
    pub membership_mismatches: Vec<Word>,
    /// Nonempty tapes longer than the anchored bound whose coset distance
    /// drops below half the tape length.
    pub distance_violations: Vec<Word>,
    pub words_checked: u64,
    pub total_letters: u64,
    pub total_applications: u64,
}

impl RealtimeReport {
    /// Was `|tape| ≤ k · coset length` everywhere (exact integer check)?
    pub fn ratio_at_most(&self, k: usize) -> bool {
        match &self.max_ratio {
            None => true,
            Some((tape, coset, _)) => *tape <= k * *coset,
        }
    }

    pub fn passed(&self, ratio_bound: usize) -> bool {
        self.ratio_at_most(ratio_bound)
            && self.membership_mismatches.is_empty()
            && self.distance_violations.is_empty()
    }
}

/// Runs the reducer over every word of length ≤ `max_len` and compares the
/// reduced tape against exact coset geodesic lengths: ratio `|tape| /
/// d(H, Hw)`, membership agreement (empty tape exactly on the base coset),
/// and the distance bound `d(H, Hw₁) ≥ |w₁|/2` for tapes longer than
/// `anchored_bound`.
pub fn verify_realtime_bound(
    eda: &Eda,
    cosets: &crate::bruteforce::CosetTableSnapshot,
    max_len: usize,
    anchored_bound: usize,
) -> Result<RealtimeReport> {
    if cosets.radius() < max_len {
        return Err(Error::InsufficientRadius { needed: max_len, have: cosets.radius() });
    }
    let alphabet = eda.alphabet().clone();
    let mut report = RealtimeReport::default();
    let mut path: Vec<Sym> = Vec::new();
    walk_realtime(
        eda,
        cosets,
        max_len,
        anchored_bound,
        &ReducerState::new(),
        cosets.base(),
        &alphabet,
        &mut path,
        &mut report,
    );
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn walk_realtime(
    eda: &Eda,
    cosets: &crate::bruteforce::CosetTableSnapshot,
    max_len: usize,
    anchored_bound: usize,
    state: &ReducerState,
    coset: u32,
    alphabet: &GeneratorAlphabet,
    path: &mut Vec<Sym>,
    report: &mut RealtimeReport,
) {
    report.words_checked += 1;
    let tape_len = state.tape().len();
    let coset_len = cosets.length(coset);
    let is_base = coset == cosets.base();
    if (tape_len == 0) != is_base {
        report
            .membership_mismatches
            .push(Word::from_syms(path.clone()));
    }
    if !is_base {
        let better = match &report.max_ratio {
            None => true,
            Some((t, c, _)) => tape_len * c > t * coset_len,
        };
        if better {
            report.max_ratio = Some((tape_len, coset_len, Word::from_syms(path.clone())));
        }
    }
    if tape_len > anchored_bound {
        // the tape is in the same coset as the word it came from
        if 2 * coset_len < tape_len {
            report
                .distance_violations
                .push(Word::from_syms(path.clone()));
        }
    }
    if path.len() == max_len {
        return;
    }
    for s in alphabet.symbols() {
        let mut next = state.clone();
        reduce_stream(eda, &mut next, s);
        let next_coset = cosets.step(coset, s).expect("within snapshot radius");
        path.push(s);
        report.total_letters += 1;
        report.total_applications = report.total_applications.saturating_add(
            next.applications() - state.applications(),
        );
        walk_realtime(
            eda,
            cosets,
            max_len,
            anchored_bound,
            &next,
            next_coset,
            alphabet,
            path,
            report,
        );
        path.pop();
    }
}
