use crate::ctx::{read_file, GroupCtx, GroupKind};
use crate::report::Report;
use anyhow::{bail, Result};
use clap::{Args, Subcommand, ValueEnum};
use gwpkit_core::bruteforce::{coset_bfs, subgroup_enumerate};
use gwpkit_core::eda::{
    generate_anchored_rules, generate_dehn_rules, reduce_stream, verify_pde,
    verify_realtime_bound, Eda, ReducerState,
};
use gwpkit_core::graph::{cayley_ball, core_membership, gib_check, stallings_fold, CoreMembership, XGraph};
use gwpkit_core::pda::{GwpPda, PdaState, StackSym};
use gwpkit_core::{fixtures, GeneratorAlphabet, SubgroupSpec, Sym, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Read;
use std::sync::Mutex;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Decider {
    Pda,
    Eda,
    Oracle,
}

#[derive(Args)]
pub struct QueryArgs {
    /// Group: free:<rank>, abelian:<rank>, free:<alphabet-file> or vf:<path>.
    #[arg(long)]
    group: String,
    /// Subgroup generator file. For vf groups with the pda decider this is a
    /// file over the free-subgroup alphabet; it defaults to the subgroup
    /// section of the vf spec.
    #[arg(long)]
    sub: Option<String>,
    #[arg(long, value_enum, default_value = "pda")]
    decider: Decider,
    /// Plain-rule length bound for the eda decider.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Anchored-rule length bound for the eda decider.
    #[arg(long = "R", default_value_t = 6)]
    anchored_len: usize,
    /// Generator products for brute-force enumeration.
    #[arg(long, default_value_t = 12)]
    products: usize,
    /// Word tokens (e.g. `a b^-1 a`).
    #[arg(required = true)]
    word: Vec<String>,
}

/// Counts transducer emissions while composing rewriter and machine.
fn run_vf_pipeline(
    rw: &gwpkit_core::pda::SchreierRewriter,
    pda: &GwpPda,
    w: &Word,
) -> Result<(bool, u64)> {
    let mut index = 0usize;
    let mut config = pda.start_config();
    let mut steps = 0u64;
    for x in w.iter() {
        for y in rw.emitted(index, x).iter() {
            pda.step(&mut config, y)?;
            steps += 1;
        }
        index = rw.action(index, x);
    }
    Ok((rw.is_marked(index) && pda.accepts(&config), steps))
}

fn build_eda(ctx: &GroupCtx, args_k: usize, anchored_len: usize, sub: Option<&str>, products: usize) -> Result<Eda> {
    let oracle = ctx.oracle()?;
    let member = ctx.membership(sub, products.max(2 * (anchored_len + 1)))?;
    Ok(generate_dehn_rules(oracle.as_ref(), args_k)?
        .adjoin_rules(generate_anchored_rules(member.as_ref(), anchored_len)?)?)
}

pub fn query(args: QueryArgs, pretty: bool) -> Result<u8> {
    let ctx = GroupCtx::load(&args.group)?;
    let word = ctx.parse_word(&args.word.join(" "))?;
    let mut rep = Report::new("query");
    rep.push("group", &args.group)
        .push("word", ctx.alphabet.format_word(&word));
    let start = Instant::now();
    let member = match args.decider {
        Decider::Pda => {
            rep.push("decider", "pda");
            match &ctx.kind {
                GroupKind::Free => {
                    let sub = ctx.ambient_subgroup(args.sub.as_deref())?;
                    let pda = GwpPda::from_core(&stallings_fold(&sub));
                    let (accepted, _) = pda.run(&word)?;
                    rep.push("letters", word.len()).push("pda_steps", word.len());
                    accepted
                }
                GroupKind::VirtuallyFree(file) => {
                    let sub_k = match &args.sub {
                        Some(f) => SubgroupSpec::parse(
                            file.rewriter.y_alphabet().clone(),
                            &read_file(f)?,
                        )?,
                        None => file.subgroup.clone(),
                    };
                    let pda = GwpPda::from_core(&stallings_fold(&sub_k));
                    let (accepted, steps) = run_vf_pipeline(&file.rewriter, &pda, &word)?;
                    rep.push("letters", word.len()).push("pda_steps", steps);
                    accepted
                }
                GroupKind::Abelian => bail!("the pda decider applies to free and vf groups only"),
            }
        }
        Decider::Eda => {
            rep.push("decider", "eda");
            let eda = build_eda(&ctx, args.k, args.anchored_len, args.sub.as_deref(), args.products)?;
            let mut state = ReducerState::new();
            for s in word.iter() {
                reduce_stream(&eda, &mut state, s);
            }
            rep.push("letters", state.letters_consumed())
                .push("applications", state.applications())
                .push("max_cascade", state.max_cascade())
                .push("tape", ctx.alphabet.format_word(state.tape()));
            state.tape().is_empty()
        }
        Decider::Oracle => {
            rep.push("decider", "oracle");
            let enumerated = ctx.enumerated(args.sub.as_deref(), args.products)?;
            rep.push("elements_enumerated", enumerated.n_elements());
            match enumerated.verdict(&word) {
                Some(v) => v,
                None => bail!(
                    "word is outside the enumerated radius {}; raise --products",
                    enumerated.complete_len()
                ),
            }
        }
    };
    rep.push("verdict", if member { "member" } else { "non-member" })
        .push("elapsed_ms", start.elapsed().as_millis());
    rep.print(pretty);
    Ok(if member { 0 } else { 1 })
}

#[derive(Args)]
pub struct StreamArgs {
    /// Alphabet file (`generators:` / `self-inverse:` lines).
    #[arg(long)]
    alphabet: String,
    /// Rule file (`lhs -> rhs`, anchored rules prefixed `H `).
    #[arg(long)]
    rules: String,
}

pub fn stream(args: StreamArgs, pretty: bool) -> Result<u8> {
    let alphabet = GeneratorAlphabet::parse_file(&read_file(&args.alphabet)?)?;
    let eda = Eda::parse_rules(alphabet.clone(), &read_file(&args.rules)?)?;
    let mut input = String::new();
    std::io::stdin().read_to_string(&mut input)?;
    let mut state = ReducerState::new();
    for token in input.split_whitespace() {
        let s = alphabet.parse_symbol(token)?;
        reduce_stream(&eda, &mut state, s);
        let mut rec = Report::new("stream");
        rec.push("letter", alphabet.name(s))
            .push("tape", alphabet.format_word(state.tape()));
        rec.print(pretty);
    }
    let mut summary = Report::new("stream-summary");
    summary
        .push("letters", state.letters_consumed())
        .push("applications", state.applications())
        .push("max_cascade", state.max_cascade())
        .push("tape", alphabet.format_word(state.tape()));
    summary.print(pretty);
    Ok(0)
}

#[derive(Args)]
pub struct GenDehnArgs {
    #[arg(long)]
    group: String,
    /// Length bound for rule left-hand sides.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<String>,
}

pub fn gen_dehn(args: GenDehnArgs) -> Result<u8> {
    let ctx = GroupCtx::load(&args.group)?;
    let eda = generate_dehn_rules(ctx.oracle()?.as_ref(), args.k)?;
    emit(args.output.as_deref(), &eda.format_rules())
}

#[derive(Args)]
pub struct GenAnchoredArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    sub: Option<String>,
    /// Length bound for anchored left-hand sides.
    #[arg(long = "R", default_value_t = 6)]
    anchored_len: usize,
    #[arg(long, default_value_t = 12)]
    products: usize,
    #[arg(long)]
    output: Option<String>,
}

pub fn gen_anchored(args: GenAnchoredArgs) -> Result<u8> {
    let ctx = GroupCtx::load(&args.group)?;
    let member = ctx.membership(args.sub.as_deref(), args.products.max(2 * (args.anchored_len + 1)))?;
    let rules = generate_anchored_rules(member.as_ref(), args.anchored_len)?;
    let eda = Eda::new(ctx.alphabet.clone(), rules)?;
    emit(args.output.as_deref(), &eda.format_rules())
}

fn emit(output: Option<&str>, text: &str) -> Result<u8> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Worker threads for independent suite items.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    suite: Suite,
}

#[derive(Subcommand)]
pub enum Suite {
    /// Geodesy of reduced short words, plus a planted-defect control.
    Pde {
        /// Element-length bound.
        #[arg(long = "D", default_value_t = 3)]
        d: usize,
        /// Word-length bound.
        #[arg(long = "E", default_value_t = 3)]
        e: usize,
        /// Enumeration length (defaults to max(D, E) + 2).
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Tape-versus-coset-length bounds for the cyclic-subgroup reducer.
    Realtime {
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long = "R", default_value_t = 6)]
        anchored_len: usize,
    },
    /// Far Schreier balls match the Cayley ball (free fixture) and fail with
    /// loop witnesses (abelian fixture).
    Gib {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "K")]
        stable: Option<usize>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        fixture: GibFixture,
    },
    /// Exact configuration rewind on cancelling letter pairs.
    Star {
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
    },
    /// Pushdown recognizer versus reduction-plus-core membership.
    Equivalence {
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GibFixture {
    Free,
    Abelian,
    Both,
}

type SuiteItem = Box<dyn FnOnce() -> Result<(bool, Report)> + Send>;

type ItemResult = Result<(bool, Report)>;

fn run_items(items: Vec<SuiteItem>, jobs: usize, pretty: bool) -> Result<u8> {
    let n = items.len();
    let results: Mutex<Vec<Option<ItemResult>>> = Mutex::new((0..n).map(|_| None).collect());
    if jobs <= 1 {
        for (i, item) in items.into_iter().enumerate() {
            results.lock().unwrap()[i] = Some(item());
        }
    } else {
        let queue: Mutex<Vec<(usize, SuiteItem)>> = Mutex::new(items.into_iter().enumerate().collect());
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(n) {
                scope.spawn(|| loop {
                    let next = queue.lock().unwrap().pop();
                    match next {
                        Some((i, item)) => {
                            let r = item();
                            results.lock().unwrap()[i] = Some(r);
                        }
                        None => break,
                    }
                });
            }
        });
    }
    let mut all_ok = true;
    for slot in results.into_inner().unwrap() {
        let (ok, rep) = slot.expect("item ran")?;
        rep.print(pretty);
        all_ok &= ok;
    }
    Ok(if all_ok { 0 } else { 1 })
}

pub fn verify(args: VerifyArgs, pretty: bool) -> Result<u8> {
    let items: Vec<SuiteItem> = match args.suite {
        Suite::Pde { d, e, scan } => {
            let scan = scan.unwrap_or(d.max(e) + 2);
            vec![
                Box::new(move || {
                    let a = GeneratorAlphabet::free(2);
                    let o = gwpkit_core::oracle::FreeReductionOracle::new(a.clone());
                    let eda = generate_dehn_rules(&o, 2 * d.max(2))?;
                    let report = verify_pde(&eda, &o, d, e, scan)?;
                    let mut rec = Report::new("verify");
                    rec.push("suite", "pde")
                        .push("check", "free-shortening-rules")
                        .push("words_checked", report.words_checked)
                        .push("violations", report.short_element_violations.len() + report.short_word_violations.len())
                        .push("result", if report.passed() { "pass" } else { "fail" });
                    Ok((report.passed(), rec))
                }),
                Box::new(move || {
                    // planted control: drop one cancellation and expect a catch
                    let a = GeneratorAlphabet::free(2);
                    let o = gwpkit_core::oracle::FreeReductionOracle::new(a.clone());
                    let full = generate_dehn_rules(&o, 2 * d.max(2))?;
                    let planted = a.parse_word("a a^-1")?;
                    let rules: Vec<_> = full.rules().iter().filter(|r| r.lhs != planted).cloned().collect();
                    let broken = Eda::new(a.clone(), rules)?;
                    let report = verify_pde(&broken, &o, d, e, scan)?;
                    let caught = !report.passed()
                        && report.short_word_violations.iter().any(|(w, _)| w == &planted);
                    let mut rec = Report::new("verify");
                    rec.push("suite", "pde")
                        .push("check", "planted-defect-control")
                        .push("violations", report.short_element_violations.len() + report.short_word_violations.len())
                        .push("result", if caught { "pass" } else { "fail" });
                    Ok((caught, rec))
                }),
            ]
        }
        Suite::Realtime { maxlen, k, anchored_len } => {
            vec![Box::new(move || {
                let a = GeneratorAlphabet::free(2);
                let o = gwpkit_core::oracle::FreeReductionOracle::new(a.clone());
                let member = CoreMembership::new(&fixtures::sub_a(&a));
                let eda = generate_dehn_rules(&o, k)?
                    .adjoin_rules(generate_anchored_rules(&member, anchored_len)?)?;
                let snap = coset_bfs(&member, &o, maxlen)?;
                let report = verify_realtime_bound(&eda, &snap, maxlen, anchored_len)?;
                let ok = report.passed(2);
                let mut rec = Report::new("verify");
                rec.push("suite", "realtime")
                    .push("fixture", "free-rank2-cyclic")
                    .push("words_checked", report.words_checked)
                    .push("membership_mismatches", report.membership_mismatches.len())
                    .push("distance_violations", report.distance_violations.len());
                if let Some((t, c, w)) = &report.max_ratio {
                    rec.push("max_ratio", format!("{t}/{c}"))
                        .push("max_ratio_witness", a.format_word(w));
                }
                if let Some(w) = report.membership_mismatches.first() {
                    rec.push("witness", a.format_word(w));
                }
                rec.push("result", if ok { "pass" } else { "fail" });
                Ok((ok, rec))
            })]
        }
        Suite::Gib { k, stable, limit, fixture } => {
            let mut items: Vec<SuiteItem> = Vec::new();
            if fixture != GibFixture::Abelian {
                let (k, stable, limit) = (k.unwrap_or(2), stable.unwrap_or(3), limit.unwrap_or(8));
                items.push(Box::new(move || {
                    let a = GeneratorAlphabet::free(2);
                    let o = gwpkit_core::oracle::FreeReductionOracle::new(a.clone());
                    let member = CoreMembership::new(&fixtures::sub_a(&a));
                    let reports = gib_check(&member, &o, k, stable, limit)?;
                    let ok = !reports.is_empty() && reports.iter().all(|r| r.passed);
                    let mut rec = Report::new("verify");
                    rec.push("suite", "gib")
                        .push("fixture", "free-rank2-cyclic")
                        .push("centres", reports.len())
                        .push("failing", reports.iter().filter(|r| !r.passed).count())
                        .push("result", if ok { "pass" } else { "fail" });
                    Ok((ok, rec))
                }));
            }
            if fixture != GibFixture::Free {
                let (k, stable, limit) = (k.unwrap_or(1), stable.unwrap_or(1), limit.unwrap_or(6));
                items.push(Box::new(move || {
                    let a = GeneratorAlphabet::free(2);
                    let oracle = fixtures::abelian_oracle_rank2();
                    let member = subgroup_enumerate(
                        &fixtures::sub_a(&a),
                        oracle.clone(),
                        2 * (limit + k + 1),
                    );
                    let reports = gib_check(&member, oracle.as_ref(), k, stable, limit)?;
                    let all_fail_with_loop = !reports.is_empty()
                        && reports.iter().all(|r| {
                            !r.passed
                                && r.witness
                                    .as_ref()
                                    .map(|(_, s)| {
                                        let n = a.name(*s);
                                        n == "a" || n == "a^-1"
                                    })
                                    .unwrap_or(false)
                        });
                    let mut rec = Report::new("verify");
                    rec.push("suite", "gib")
                        .push("fixture", "abelian-rank2-cyclic")
                        .push("centres", reports.len())
                        .push("failing", reports.iter().filter(|r| !r.passed).count());
                    if let Some(r) = reports.first() {
                        if let (Some(word), Some((_, s))) = (&r.center_word, &r.witness) {
                            rec.push("witness_centre", a.format_word(word))
                                .push("witness_symbol", a.name(*s));
                        }
                    }
                    rec.push("result", if all_fail_with_loop { "pass" } else { "fail" });
                    Ok((all_fail_with_loop, rec))
                }));
            }
            items
        }
        Suite::Star { maxlen } => {
            let a = GeneratorAlphabet::free(2);
            [
                ("cyclic", fixtures::sub_a(&a)),
                ("index-two-free", fixtures::sub_a2_b(&a)),
                ("conjugate-pair", fixtures::sub_aba_b2(&a)),
            ]
            .into_iter()
            .map(|(name, sub)| -> SuiteItem {
                let a = a.clone();
                Box::new(move || {
                    let pda = GwpPda::from_core(&stallings_fold(&sub));
                    let syms: Vec<Sym> = a.symbols().collect();
                    let mut pairs = 0u64;
                    let mut failures = 0u64;
                    fn go(
                        a: &GeneratorAlphabet,
                        syms: &[Sym],
                        pda: &GwpPda,
                        last: Option<Sym>,
                        depth_left: usize,
                        config: &gwpkit_core::pda::PdaConfig,
                        pairs: &mut u64,
                        failures: &mut u64,
                    ) -> Result<()> {
                        for &y in syms {
                            if last == Some(a.inverse(y)) {
                                continue;
                            }
                            let mut probe = config.clone();
                            pda.step(&mut probe, y)?;
                            let after_y = probe.clone();
                            pda.step(&mut probe, a.inverse(y))?;
                            *pairs += 1;
                            if &probe != config {
                                *failures += 1;
                            }
                            if depth_left > 1 {
                                go(a, syms, pda, Some(y), depth_left - 1, &after_y, pairs, failures)?;
                            }
                        }
                        Ok(())
                    }
                    go(&a, &syms, &pda, None, maxlen + 1, &pda.start_config(), &mut pairs, &mut failures)?;
                    let ok = failures == 0;
                    let mut rec = Report::new("verify");
                    rec.push("suite", "star")
                        .push("fixture", name)
                        .push("pairs", pairs)
                        .push("failures", failures)
                        .push("result", if ok { "pass" } else { "fail" });
                    Ok((ok, rec))
                })
            })
            .collect()
        }
        Suite::Equivalence { maxlen } => {
            let a = GeneratorAlphabet::free(2);
            [
                ("cyclic", fixtures::sub_a(&a)),
                ("index-two-free", fixtures::sub_a2_b(&a)),
                ("conjugate-pair", fixtures::sub_aba_b2(&a)),
            ]
            .into_iter()
            .map(|(name, sub)| -> SuiteItem {
                let a = a.clone();
                Box::new(move || {
                    let core = stallings_fold(&sub);
                    let pda = GwpPda::from_core(&core);
                    let syms: Vec<Sym> = a.symbols().collect();
                    let mut words = 0u64;
                    let mut disagreements = 0u64;
                    struct Frame {
                        config: gwpkit_core::pda::PdaConfig,
                        reduced: Word,
                        depth: usize,
                    }
                    let mut stack = vec![Frame {
                        config: pda.start_config(),
                        reduced: Word::empty(),
                        depth: 0,
                    }];
                    while let Some(f) = stack.pop() {
                        words += 1;
                        let accepted = pda.accepts(&f.config);
                        let member = core_membership(&core, &f.reduced)?;
                        if accepted != member {
                            disagreements += 1;
                        }
                        if f.depth < maxlen {
                            for &s in &syms {
                                let mut config = f.config.clone();
                                pda.step(&mut config, s)?;
                                let mut reduced = f.reduced.clone();
                                if reduced.last() == Some(&a.inverse(s)) {
                                    reduced = Word::from_syms(reduced[..reduced.len() - 1].to_vec());
                                } else {
                                    reduced.push(s);
                                }
                                stack.push(Frame { config, reduced, depth: f.depth + 1 });
                            }
                        }
                    }
                    let ok = disagreements == 0;
                    let mut rec = Report::new("verify");
                    rec.push("suite", "equivalence")
                        .push("fixture", name)
                        .push("words", words)
                        .push("disagreements", disagreements)
                        .push("result", if ok { "pass" } else { "fail" });
                    Ok((ok, rec))
                })
            })
            .collect()
        }
    };
    run_items(items, args.jobs, pretty)
}

#[derive(Args)]
pub struct GibCheckArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    sub: Option<String>,
    /// Ball radius to compare.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Distance from the base coset beyond which balls must match.
    #[arg(long = "K", default_value_t = 3)]
    stable: usize,
    /// Largest centre distance to scan.
    #[arg(long, default_value_t = 8)]
    limit: usize,
    #[arg(long, default_value_t = 12)]
    products: usize,
    /// Also write the reference Cayley ball as a graph dump.
    #[arg(long)]
    dump_cayley: Option<String>,
}

pub fn gib_check_cmd(args: GibCheckArgs, pretty: bool) -> Result<u8> {
    let ctx = GroupCtx::load(&args.group)?;
    let member = ctx.membership(
        args.sub.as_deref(),
        args.products.max(2 * (args.limit + args.k + 1)),
    )?;
    let oracle = ctx.oracle()?;
    if let Some(path) = &args.dump_cayley {
        let ball = cayley_ball(oracle.as_ref(), args.k)?;
        std::fs::write(path, ball.to_dump())?;
    }
    let reports = gib_check(member.as_ref(), oracle.as_ref(), args.k, args.stable, args.limit)?;
    let mut failing = 0usize;
    for r in &reports {
        let mut rec = Report::new("gib-check");
        if let Some(w) = &r.center_word {
            rec.push("centre", ctx.alphabet.format_word(w));
        }
        rec.push("radius", r.radius)
            .push("passed", r.passed);
        if let Some((path, s)) = &r.witness {
            rec.push("witness_path", ctx.alphabet.format_word(path))
                .push("witness_symbol", ctx.alphabet.name(*s));
        }
        rec.print(pretty);
        if !r.passed {
            failing += 1;
        }
    }
    let mut summary = Report::new("gib-check-summary");
    summary
        .push("centres", reports.len())
        .push("failing", failing);
    summary.print(pretty);
    Ok(if failing == 0 { 0 } else { 1 })
}

#[derive(Args)]
pub struct RunPdaArgs {
    /// Alphabet file for the free-subgroup generators.
    #[arg(long)]
    alphabet: String,
    /// Subgroup generator file over that alphabet.
    #[arg(long, conflicts_with = "core")]
    sub: Option<String>,
    /// Folded core as a graph dump, instead of generators.
    #[arg(long)]
    core: Option<String>,
    /// Emit one record per transition.
    #[arg(long)]
    trace: bool,
    #[arg(required = true)]
    word: Vec<String>,
}

fn state_name(s: PdaState) -> String {
    match s {
        PdaState::Coset(i) => format!("s{}", i + 1),
        PdaState::Outside => "out".into(),
    }
}

fn stack_sym_name(alphabet: &GeneratorAlphabet, s: StackSym) -> String {
    match s {
        StackSym::Letter(y) => alphabet.name(y).to_string(),
        StackSym::Marked(y, i) => format!("({},s{})", alphabet.name(y), i + 1),
    }
}

pub fn run_pda(args: RunPdaArgs, pretty: bool) -> Result<u8> {
    let alphabet = GeneratorAlphabet::parse_file(&read_file(&args.alphabet)?)?;
    let core = match (&args.sub, &args.core) {
        (Some(sub), None) => {
            stallings_fold(&SubgroupSpec::parse(alphabet.clone(), &read_file(sub)?)?)
        }
        (None, Some(dump)) => XGraph::from_dump(alphabet.clone(), &read_file(dump)?)?,
        _ => bail!("exactly one of --sub and --core is required"),
    };
    let pda = GwpPda::from_core(&core);
    let word = alphabet.parse_word(&args.word.join(" "))?;
    let mut config = pda.start_config();
    for (i, y) in word.iter().enumerate() {
        let before = config.state;
        let effect = pda.step(&mut config, y)?;
        if args.trace {
            let mut rec = Report::new("pda-step");
            rec.push("step", i + 1)
                .push("state", state_name(before))
                .push("input", alphabet.name(y))
                .push(
                    "popped",
                    effect.popped.map(|s| stack_sym_name(&alphabet, s)).unwrap_or_default(),
                )
                .push(
                    "pushed",
                    effect.pushed.map(|s| stack_sym_name(&alphabet, s)).unwrap_or_default(),
                )
                .push("state_after", state_name(config.state));
            rec.print(pretty);
        }
    }
    let accepted = pda.accepts(&config);
    let stack: Vec<String> = config.stack.iter().map(|&s| stack_sym_name(&alphabet, s)).collect();
    let mut rec = Report::new("run-pda");
    rec.push("word", alphabet.format_word(&word))
        .push("verdict", if accepted { "accept" } else { "reject" })
        .push("final_state", state_name(config.state))
        .push("final_stack", stack.join(" "));
    rec.print(pretty);
    Ok(if accepted { 0 } else { 1 })
}

#[derive(Args)]
pub struct OracleDumpArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    sub: Option<String>,
    #[arg(long, default_value_t = 4)]
    radius: usize,
    #[arg(long, default_value_t = 12)]
    products: usize,
}

pub fn oracle_dump(args: OracleDumpArgs) -> Result<u8> {
    let ctx = GroupCtx::load(&args.group)?;
    let member = ctx.membership(args.sub.as_deref(), args.products.max(2 * (args.radius + 1)))?;
    let snap = coset_bfs(member.as_ref(), ctx.oracle()?.as_ref(), args.radius)?;
    for c in 0..snap.n_cosets() as u32 {
        let word = ctx.alphabet.format_word(snap.rep(c));
        if word.is_empty() {
            println!("{}", snap.length(c));
        } else {
            println!("{word} {}", snap.length(c));
        }
    }
    Ok(0)
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    sub: Option<String>,
    #[arg(long, value_enum)]
    decider: Decider,
    /// Corpus file, one word per line.
    #[arg(long)]
    corpus: Option<String>,
    /// Generate this many random words instead.
    #[arg(long)]
    random: Option<usize>,
    /// Length of each random word.
    #[arg(long, default_value_t = 64)]
    len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long = "R", default_value_t = 6)]
    anchored_len: usize,
    #[arg(long, default_value_t = 12)]
    products: usize,
}

pub fn bench(args: BenchArgs, pretty: bool) -> Result<u8> {
    let ctx = GroupCtx::load(&args.group)?;
    let words: Vec<Word> = match (&args.corpus, args.random) {
        (Some(path), None) => read_file(path)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| ctx.parse_word(l))
            .collect::<Result<_>>()?,
        (None, Some(count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let syms: Vec<Sym> = ctx.alphabet.symbols().collect();
            (0..count)
                .map(|_| {
                    (0..args.len)
                        .map(|_| syms[rng.gen_range(0..syms.len())])
                        .collect()
                })
                .collect()
        }
        _ => bail!("exactly one of --corpus and --random is required"),
    };
    let total_letters: u64 = words.iter().map(|w| w.len() as u64).sum();
    let start = Instant::now();
    let mut rec = Report::new("bench");
    rec.push("group", &args.group)
        .push("words", words.len())
        .push("letters", total_letters)
        .push("seed", args.seed);
    let work_ok = match args.decider {
        Decider::Eda => {
            rec.push("decider", "eda");
            let eda = build_eda(&ctx, args.k, args.anchored_len, args.sub.as_deref(), args.products)?;
            let mut applications = 0u64;
            let mut max_cascade = 0u64;
            let mut members = 0u64;
            for w in &words {
                let mut st = ReducerState::new();
                for s in w.iter() {
                    reduce_stream(&eda, &mut st, s);
                }
                applications += st.applications();
                max_cascade = max_cascade.max(st.max_cascade());
                members += st.tape().is_empty() as u64;
            }
            let mean = applications as f64 / total_letters.max(1) as f64;
            rec.push("applications", applications)
                .push("max_cascade", max_cascade)
                .push("mean_applications_per_letter", format!("{mean:.4}"))
                .push("members", members);
            applications <= total_letters
        }
        Decider::Pda => {
            rec.push("decider", "pda");
            let mut steps = 0u64;
            let mut members = 0u64;
            match &ctx.kind {
                GroupKind::Free => {
                    let sub = ctx.ambient_subgroup(args.sub.as_deref())?;
                    let pda = GwpPda::from_core(&stallings_fold(&sub));
                    for w in &words {
                        let (acc, _) = pda.run(w)?;
                        steps += w.len() as u64;
                        members += acc as u64;
                    }
                }
                GroupKind::VirtuallyFree(file) => {
                    let pda = GwpPda::from_core(&stallings_fold(&file.subgroup));
                    for w in &words {
                        let (acc, s) = run_vf_pipeline(&file.rewriter, &pda, w)?;
                        steps += s;
                        members += acc as u64;
                    }
                }
                GroupKind::Abelian => bail!("the pda decider applies to free and vf groups only"),
            }
            let per_letter = steps as f64 / total_letters.max(1) as f64;
            rec.push("pda_steps", steps)
                .push("steps_per_letter", format!("{per_letter:.4}"))
                .push("members", members);
            true
        }
        Decider::Oracle => bail!("bench supports the eda and pda deciders"),
    };
    rec.push("work_bound_ok", work_ok)
        .push("elapsed_ms", start.elapsed().as_millis());
    rec.print(pretty);
    Ok(if work_ok { 0 } else { 1 })
}
