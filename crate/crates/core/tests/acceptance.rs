//! End-to-end acceptance suite. Each test pins one headline guarantee of
//! the toolkit, checks it exhaustively at a fixed bound, and prints one
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use gwpkit_core::bruteforce::{coset_bfs, subgroup_enumerate};
use gwpkit_core::eda::{
    generate_anchored_rules, generate_dehn_rules, reduce_batch, reduce_stream, verify_pde,
    verify_realtime_bound, Eda, RealtimeReport, ReducerState,
};
use gwpkit_core::graph::{core_membership, gib_check, stallings_fold, CoreMembership, XGraph};
use gwpkit_core::oracle::{FreeReductionOracle, NormalFormOracle};
use gwpkit_core::pda::{gwp_virtually_free, GwpPda, PdaConfig};
use gwpkit_core::{fixtures, free_reduce, invert_word, GeneratorAlphabet, SubgroupSpec, Sym, Word};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

fn report(name: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if ok { "pass" } else { "FAIL" }
    );
}

fn fixture_subgroups(a: &GeneratorAlphabet) -> Vec<(&'static str, SubgroupSpec)> {
    vec![
        ("<a>", fixtures::sub_a(a)),
        ("<a^2,b>", fixtures::sub_a2_b(a)),
        ("<a b a^-1, b^2>", fixtures::sub_aba_b2(a)),
    ]
}

/// All words of length ≤ `max_len`, visited as a DFS; `visit` sees the word
/// alongside per-branch state cloned from the parent.
fn walk_words<S: Clone>(
    syms: &[Sym],
    max_len: usize,
    state: S,
    next: &mut impl FnMut(&S, Sym) -> S,
    visit: &mut impl FnMut(&[Sym], &S),
) {
    let mut path: Vec<Sym> = Vec::new();
    fn go<S: Clone>(
        syms: &[Sym],
        max_len: usize,
        path: &mut Vec<Sym>,
        state: &S,
        next: &mut impl FnMut(&S, Sym) -> S,
        visit: &mut impl FnMut(&[Sym], &S),
    ) {
        visit(path, state);
        if path.len() == max_len {
            return;
        }
        for &s in syms {
            let child = next(state, s);
            path.push(s);
            go(syms, max_len, path, state_ref(&child), next, visit);
            path.pop();
        }
    }
    fn state_ref<S>(s: &S) -> &S {
        s
    }
    go(syms, max_len, &mut path, &state, next, visit);
}

#[test]
fn pda_agrees_with_reduction_plus_core_membership() {
    let start = Instant::now();
    let a = GeneratorAlphabet::free(2);
    let syms: Vec<Sym> = a.symbols().collect();
    let max_len = 10usize;
    let mut total_words = 0u64;
    let mut disagreements = 0u64;
    for (_, sub) in fixture_subgroups(&a) {
        let core = stallings_fold(&sub);
        let pda = GwpPda::from_core(&core);
        #[derive(Clone)]
        struct St {
            config: PdaConfig,
            reduced: Word,
        }
        let alphabet = a.clone();
        let pda_ref = &pda;
        let core_ref = &core;
        walk_words(
            &syms,
            max_len,
            St { config: pda.start_config(), reduced: Word::empty() },
            &mut |st, s| {
                let mut config = st.config.clone();
                pda_ref.step(&mut config, s).unwrap();
                let mut reduced = st.reduced.clone();
                let cancels = reduced.last() == Some(&alphabet.inverse(s));
                if cancels {
                    reduced = Word::from_syms(reduced[..reduced.len() - 1].to_vec());
                } else {
                    reduced.push(s);
                }
                St { config, reduced }
            },
            &mut |_, st| {
                total_words += 1;
                let accepted = pda_ref.accepts(&st.config);
                let member = core_membership(core_ref, &st.reduced).unwrap();
                if accepted != member {
                    disagreements += 1;
                }
            },
        );
    }
    let elapsed = start.elapsed();
    let ok = disagreements == 0 && elapsed.as_secs() < 120;
    report(
        "pda-core-equivalence",
        ok,
        &format!("{total_words} words, {disagreements} disagreements, {:.1}s", elapsed.as_secs_f64()),
    );
    assert!(ok);
}

#[test]
fn pushdown_configuration_unwinds_cancelling_pairs() {
    let a = GeneratorAlphabet::free(2);
    let syms: Vec<Sym> = a.symbols().collect();
    let mut pairs = 0u64;
    let mut failures = 0u64;
    for (_, sub) in fixture_subgroups(&a) {
        let pda = GwpPda::from_core(&stallings_fold(&sub));
        // DFS over freely reduced words of length ≤ 8 carrying the machine
        // configuration reached by each word
        fn go(
            a: &GeneratorAlphabet,
            syms: &[Sym],
            pda: &GwpPda,
            last: Option<Sym>,
            depth_left: usize,
            config: &PdaConfig,
            pairs: &mut u64,
            failures: &mut u64,
        ) {
            for &y in syms {
                if last == Some(a.inverse(y)) {
                    continue;
                }
                let mut roundtrip = config.clone();
                pda.step(&mut roundtrip, y).unwrap();
                let after_y = roundtrip.clone();
                pda.step(&mut roundtrip, a.inverse(y)).unwrap();
                *pairs += 1;
                if &roundtrip != config {
                    *failures += 1;
                }
                if depth_left > 1 {
                    go(a, syms, pda, Some(y), depth_left - 1, &after_y, pairs, failures);
                }
            }
        }
        go(&a, &syms, &pda, None, 9, &pda.start_config(), &mut pairs, &mut failures);
    }
    let ok = failures == 0 && pairs >= 10_000;
    report(
        "configuration-unwind",
        ok,
        &format!("{pairs} (word, letter) pairs, {failures} failures"),
    );
    assert!(ok);
}

fn fixture_edas() -> Vec<(String, Eda)> {
    let a = GeneratorAlphabet::free(2);
    let free_o = FreeReductionOracle::new(a.clone());
    let member = CoreMembership::new(&fixtures::sub_a(&a));
    let fx = fixtures::z2z2();
    let z_alphabet = fx.rewriter.x_alphabet().clone();
    let z_oracle = FreeReductionOracle::new(z_alphabet.clone());
    let absorb_syms: Vec<Sym> = z_alphabet.symbols().collect();
    vec![
        ("free-cancellation".into(), generate_dehn_rules(&free_o, 2).unwrap()),
        (
            "cyclic-coset-reducer".into(),
            generate_dehn_rules(&free_o, 4)
                .unwrap()
                .adjoin_rules(generate_anchored_rules(&member, 6).unwrap())
                .unwrap(),
        ),
        ("order-two-product".into(), generate_dehn_rules(&z_oracle, 2).unwrap()),
        (
            "absorption-only".into(),
            gwpkit_core::eda::adjoin_absorption_rules(
                &Eda::new(z_alphabet, vec![]).unwrap(),
                &absorb_syms,
            )
            .unwrap(),
        ),
    ]
}

#[test]
fn streaming_reduction_equals_batch_reduction() {
    let start = Instant::now();
    let mut words = 0u64;
    let mut mismatches = 0u64;
    let mut work_violations = 0u64;
    for (_, eda) in fixture_edas() {
        let syms: Vec<Sym> = eda.alphabet().symbols().collect();
        let eda_ref = &eda;
        walk_words(
            &syms,
            10,
            ReducerState::new(),
            &mut |st, s| {
                let mut next = st.clone();
                reduce_stream(eda_ref, &mut next, s);
                next
            },
            &mut |path, st| {
                words += 1;
                let batch = reduce_batch(eda_ref, &Word::from_syms(path.to_vec()));
                if batch.tape() != st.tape() {
                    mismatches += 1;
                }
                if st.applications() > st.letters_consumed()
                    || batch.applications() > path.len() as u64
                {
                    work_violations += 1;
                }
            },
        );
    }
    let ok = mismatches == 0 && work_violations == 0;
    report(
        "streaming-vs-batch",
        ok,
        &format!(
            "{words} words, {mismatches} tape mismatches, {work_violations} work-bound violations, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

struct CyclicFixtureRun {
    report: RealtimeReport,
    snapshot_radius: usize,
}

fn cyclic_fixture_run() -> &'static CyclicFixtureRun {
    static RUN: OnceLock<CyclicFixtureRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let a = GeneratorAlphabet::free(2);
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&fixtures::sub_a(&a));
        let eda = generate_dehn_rules(&o, 4)
            .unwrap()
            .adjoin_rules(generate_anchored_rules(&member, 6).unwrap())
            .unwrap();
        let snap = coset_bfs(&member, &o, 12).unwrap();
        let report = verify_realtime_bound(&eda, &snap, 12, 6).unwrap();
        CyclicFixtureRun { report, snapshot_radius: snap.radius() }
    })
}

#[test]
fn generated_reducer_decides_membership_like_coset_search() {
    let start = Instant::now();
    let run = cyclic_fixture_run();
    let ok = run.report.membership_mismatches.is_empty() && run.snapshot_radius == 12;
    report(
        "reducer-vs-coset-search",
        ok,
        &format!(
            "{} words, {} disagreements, {:.1}s",
            run.report.words_checked,
            run.report.membership_mismatches.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

#[test]
fn reduction_ratio_and_distance_bounds_hold() {
    let run = cyclic_fixture_run();
    let ratio_ok = run.report.ratio_at_most(2);
    let distance_ok = run.report.distance_violations.is_empty();
    let detail = match &run.report.max_ratio {
        Some((t, c, _)) => format!(
            "max tape/coset ratio {t}/{c}, {} distance violations",
            run.report.distance_violations.len()
        ),
        None => "no off-base words".to_string(),
    };
    let ok = ratio_ok && distance_ok;
    report("ratio-and-distance-bounds", ok, &detail);
    assert!(ok);
}

#[test]
fn stable_ball_shapes_match_expectations() {
    let start = Instant::now();
    let a = GeneratorAlphabet::free(2);

    let free_oracle = FreeReductionOracle::new(a.clone());
    let free_member = CoreMembership::new(&fixtures::sub_a(&a));
    let free_reports = gib_check(&free_member, &free_oracle, 2, 3, 8).unwrap();
    let free_ok = !free_reports.is_empty() && free_reports.iter().all(|r| r.passed);

    let abelian_oracle = fixtures::abelian_oracle_rank2();
    let abelian_member = subgroup_enumerate(&fixtures::sub_a(&a), abelian_oracle.clone(), 16);
    let abelian_reports = gib_check(&abelian_member, abelian_oracle.as_ref(), 1, 1, 6).unwrap();
    let abelian_ok = !abelian_reports.is_empty()
        && abelian_reports.iter().all(|r| {
            !r.passed
                && match &r.witness {
                    Some((_, s)) => {
                        let name = a.name(*s);
                        name == "a" || name == "a^-1"
                    }
                    None => false,
                }
        });

    let elapsed = start.elapsed();
    let ok = free_ok && abelian_ok && elapsed.as_secs() < 30;
    report(
        "stable-balls",
        ok,
        &format!(
            "free fixture {} centres all pass: {free_ok}; abelian fixture {} centres all fail with loop witness: {abelian_ok}; {:.1}s",
            free_reports.len(),
            abelian_reports.len(),
            elapsed.as_secs_f64()
        ),
    );
    assert!(ok);
}

#[test]
fn virtually_free_pipeline_agrees_with_enumeration() {
    let fx = fixtures::z2z2();
    let xa = fx.rewriter.x_alphabet().clone();
    let syms: Vec<Sym> = xa.symbols().collect();
    let oracle: Arc<dyn NormalFormOracle> = fx.oracle.clone();
    let mut disagreements = 0u64;
    let mut words = 0u64;
    for (h_gens, sub_y) in [
        (vec!["x y"], fx.sub_full.clone()),
        (vec!["x y x y"], fx.sub_square.clone()),
    ] {
        let h_words = h_gens.iter().map(|g| xa.parse_word(g).unwrap()).collect();
        let h_spec = SubgroupSpec::new(xa.clone(), h_words).unwrap();
        let brute = subgroup_enumerate(&h_spec, oracle.clone(), 12);
        let pda = GwpPda::from_core(&stallings_fold(&sub_y));
        let rewriter = &fx.rewriter;
        walk_words(
            &syms,
            12,
            (),
            &mut |_, _| (),
            &mut |path, _| {
                words += 1;
                let w = Word::from_syms(path.to_vec());
                let got = gwp_virtually_free(rewriter, &pda, &w).unwrap();
                let want = brute.verdict(&w).expect("within enumeration radius");
                if got != want {
                    disagreements += 1;
                }
            },
        );
    }
    let ok = disagreements == 0;
    report(
        "virtually-free-pipeline",
        ok,
        &format!("{words} words over two subgroups, {disagreements} disagreements"),
    );
    assert!(ok);
}

#[test]
fn geodesy_verifier_passes_and_catches_planted_defect() {
    let a = GeneratorAlphabet::free(2);
    let o = FreeReductionOracle::new(a.clone());
    let eda = generate_dehn_rules(&o, 4).unwrap();
    let clean = verify_pde(&eda, &o, 3, 3, 5).unwrap();

    let planted_lhs = a.parse_word("a a^-1").unwrap();
    let remaining: Vec<_> = eda
        .rules()
        .iter()
        .filter(|r| r.lhs != planted_lhs)
        .cloned()
        .collect();
    let broken = Eda::new(a.clone(), remaining).unwrap();
    let caught = verify_pde(&broken, &o, 3, 3, 5).unwrap();
    let witness_found = caught
        .short_word_violations
        .iter()
        .any(|(w, _)| w == &planted_lhs);

    let ok = clean.passed() && !caught.passed() && witness_found;
    report(
        "geodesy-verifier",
        ok,
        &format!(
            "clean run: {} violations; planted run: {} violations, witness found: {witness_found}",
            clean.short_word_violations.len() + clean.short_element_violations.len(),
            caught.short_word_violations.len() + caught.short_element_violations.len()
        ),
    );
    assert!(ok);
}

// Cross-checks used by several criteria: the reference deciders must agree
// with each other before they are trusted as oracles above.
#[test]
fn reference_deciders_agree_with_each_other() {
    let a = GeneratorAlphabet::free(2);
    let o: Arc<dyn NormalFormOracle> = Arc::new(FreeReductionOracle::new(a.clone()));
    let syms: Vec<Sym> = a.symbols().collect();
    let mut checked = 0u64;
    for (_, sub) in fixture_subgroups(&a) {
        let core = stallings_fold(&sub);
        let enumerated = subgroup_enumerate(&sub, o.clone(), 8);
        walk_words(
            &syms,
            8,
            (),
            &mut |_, _| (),
            &mut |path, _| {
                let w = Word::from_syms(path.to_vec());
                let r = free_reduce(&a, &w);
                if r.len() <= 8 {
                    checked += 1;
                    let via_core = core_membership(&core, &r).unwrap();
                    assert_eq!(enumerated.verdict(&w), Some(via_core));
                }
            },
        );
    }
    assert!(checked > 100_000);
}

// The acceptance fixtures lean on ww⁻¹ acceptance with exact configuration
// equality; exercise it once more against hand-built inputs spanning all
// seven transition rows.
#[test]
fn pushdown_trace_covers_every_transition_row() {
    let a = GeneratorAlphabet::free(2);
    let core: XGraph = stallings_fold(&fixtures::sub_a2_b(&a));
    let pda = GwpPda::from_core(&core);
    let w = a.parse_word("a b b^-1 a b a^-1 a b^-1").unwrap();
    let mut config = pda.start_config();
    for s in w.iter() {
        pda.step(&mut config, s).unwrap();
    }
    let back = invert_word(&a, &w);
    for s in back.iter() {
        pda.step(&mut config, s).unwrap();
    }
    assert_eq!(config, pda.start_config());
}
