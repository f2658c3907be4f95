//! X-graphs: deterministic partially edge-labeled graphs with an edge
//! involution (an `x`-edge from p to q is the same datum as an `x⁻¹`-edge from
//! q to p). Stallings cores, Cayley balls and Schreier balls are all built
//! here, together with based-ball isomorphism and the bounded GIB(k) check.

use crate::error::{Error, Result};
use crate::oracle::{NormalFormOracle, SubgroupMembership};
use crate::word::{free_reduce, strip_comment, GeneratorAlphabet, SubgroupSpec, Sym, Word};
use std::collections::{HashMap, VecDeque};

const MAX_BALL_VERTICES: usize = 5_000_000;

/// Deterministic partial edge-labeled graph with a base vertex.
#[derive(Clone, Debug)]
pub struct XGraph {
    alphabet: GeneratorAlphabet,
    edges: Vec<Vec<Option<u32>>>,
    base: u32,
    /// Radius around the base up to which this graph is a faithful ball of
    /// the ambient object it was cut from. `None` means the graph is complete
    /// as given (e.g. a folded core).
    known_radius: Option<usize>,
}

impl XGraph {
    fn with_vertices(alphabet: GeneratorAlphabet, n: usize) -> Self {
        let deg = alphabet.len();
        XGraph {
            alphabet,
            edges: vec![vec![None; deg]; n],
            base: 0,
            known_radius: None,
        }
    }

    pub fn single_vertex(alphabet: GeneratorAlphabet) -> Self {
        XGraph::with_vertices(alphabet, 1)
    }

    pub fn alphabet(&self) -> &GeneratorAlphabet {
        &self.alphabet
    }

    pub fn n_vertices(&self) -> usize {
        self.edges.len()
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn known_radius(&self) -> Option<usize> {
        self.known_radius
    }

    pub fn edge(&self, v: u32, s: Sym) -> Option<u32> {
        self.edges[v as usize][s.index()]
    }

    /// Inserts the edge and its involution partner; rejects conflicts with
    /// already present edges.
    fn add_edge(&mut self, src: u32, s: Sym, dst: u32) -> Result<()> {
        let inv = self.alphabet.inverse(s);
        for (p, x, q) in [(src, s, dst), (dst, inv, src)] {
            match self.edges[p as usize][x.index()] {
                None => self.edges[p as usize][x.index()] = Some(q),
                Some(existing) if existing == q => {}
                Some(_) => {
                    return Err(Error::Invariant(format!(
                        "conflicting {}-edge at vertex {p}",
                        self.alphabet.name(x)
                    )))
                }
            }
        }
        Ok(())
    }

    /// BFS distances from `from`, cut off at `limit` (inclusive). Unreached
    /// vertices are `None`.
    pub fn distances_from(&self, from: u32, limit: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_vertices()];
        let mut queue = VecDeque::new();
        dist[from as usize] = Some(0);
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            if let Some(l) = limit {
                if d == l {
                    continue;
                }
            }
            for s in self.alphabet.symbols() {
                if let Some(t) = self.edge(v, s) {
                    if dist[t as usize].is_none() {
                        dist[t as usize] = Some(d + 1);
                        queue.push_back(t);
                    }
                }
            }
        }
        dist
    }

    /// Dump format: header `xgraph <n_vertices> <base>`, then one line
    /// `src label dst` per directed edge.
    pub fn to_dump(&self) -> String {
        let mut out = format!("xgraph {} {}\n", self.n_vertices(), self.base);
        for v in 0..self.n_vertices() as u32 {
            for s in self.alphabet.symbols() {
                if let Some(t) = self.edge(v, s) {
                    out.push_str(&format!("{v} {} {t}\n", self.alphabet.name(s)));
                }
            }
        }
        out
    }

    pub fn from_dump(alphabet: GeneratorAlphabet, text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (mut n, mut base) = (None, 0u32);
        for (i, raw) in &mut lines {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "xgraph" {
                return Err(Error::Parse { line: i + 1, msg: "expected `xgraph <n> <base>` header".into() });
            }
            n = Some(parts[1].parse::<usize>().map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?);
            base = parts[2].parse::<u32>().map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            break;
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "empty graph dump".into() })?;
        if base as usize >= n.max(1) {
            return Err(Error::Parse { line: 1, msg: "base vertex out of range".into() });
        }
        let mut g = XGraph::with_vertices(alphabet, n.max(1));
        g.base = base;
        for (i, raw) in lines {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse { line: i + 1, msg: format!("bad edge line `{line}`") });
            }
            let src: u32 = parts[0].parse().map_err(|_| Error::Parse { line: i + 1, msg: "bad vertex id".into() })?;
            let dst: u32 = parts[2].parse().map_err(|_| Error::Parse { line: i + 1, msg: "bad vertex id".into() })?;
            if src as usize >= n || dst as usize >= n {
                return Err(Error::Parse { line: i + 1, msg: "vertex id out of range".into() });
            }
            let s = g.alphabet.parse_symbol(parts[1]).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            g.add_edge(src, s, dst).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
        }
        Ok(g)
    }
}

/// Folded core graph of a finitely generated subgroup of the free group on
/// the alphabet: the wedge of generator loops at the base, identified until
/// edges are deterministic. Freely reduced words labelling base-to-base loops
/// are exactly the subgroup elements.
pub fn stallings_fold(sub: &SubgroupSpec) -> XGraph {
    let alphabet = sub.alphabet().clone();
    // Wedge of loops, as a directed labeled edge list (one direction each).
    let mut n: u32 = 1;
    let mut edge_list: Vec<(u32, Sym, u32)> = Vec::new();
    for g in sub.generators() {
        let r = free_reduce(&alphabet, g);
        if r.is_empty() {
            continue;
        }
        let mut prev = 0u32;
        for (i, s) in r.iter().enumerate() {
            let next = if i + 1 == r.len() {
                0
            } else {
                n += 1;
                n - 1
            };
            edge_list.push((prev, s, next));
            prev = next;
        }
    }

    // Fold: merge targets whenever two equally-labeled edges leave one class.
    let mut parent: Vec<u32> = (0..n).collect();
    fn find(parent: &mut [u32], v: u32) -> u32 {
        let mut v = v;
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    loop {
        let mut merged = false;
        let mut slot: HashMap<(u32, Sym), u32> = HashMap::new();
        'scan: for &(u, s, v) in &edge_list {
            let inv = alphabet.inverse(s);
            for (p, x, q) in [(u, s, v), (v, inv, u)] {
                let rp = find(&mut parent, p);
                let rq = find(&mut parent, q);
                match slot.get(&(rp, x)) {
                    None => {
                        slot.insert((rp, x), rq);
                    }
                    Some(&other) if other == rq => {}
                    Some(&other) => {
                        let ra = find(&mut parent, other);
                        let rb = rq;
                        parent[ra as usize] = rb;
                        merged = true;
                        break 'scan;
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }

    // Canonical renumbering: BFS from the base class in symbol order.
    let base_root = find(&mut parent, 0);
    let mut adj: HashMap<u32, Vec<Option<u32>>> = HashMap::new();
    let deg = alphabet.len();
    for &(u, s, v) in &edge_list {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        let inv = alphabet.inverse(s);
        adj.entry(ru).or_insert_with(|| vec![None; deg])[s.index()] = Some(rv);
        adj.entry(rv).or_insert_with(|| vec![None; deg])[inv.index()] = Some(ru);
    }
    let mut order: HashMap<u32, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    order.insert(base_root, 0);
    queue.push_back(base_root);
    let mut listing = vec![base_root];
    while let Some(v) = queue.pop_front() {
        if let Some(row) = adj.get(&v) {
            for s in alphabet.symbols() {
                if let Some(t) = row[s.index()] {
                    if let std::collections::hash_map::Entry::Vacant(e) = order.entry(t) {
                        e.insert(listing.len() as u32);
                        listing.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    let mut out = XGraph::with_vertices(alphabet.clone(), listing.len());
    for (new_id, root) in listing.iter().enumerate() {
        if let Some(row) = adj.get(root) {
            for s in alphabet.symbols() {
                if let Some(t) = row[s.index()] {
                    out.edges[new_id][s.index()] = Some(order[&t]);
                }
            }
        }
    }
    out
}

/// Does the freely reduced word `w` label a base-to-base loop of `core`?
pub fn core_membership(core: &XGraph, w: &Word) -> Result<bool> {
    core.alphabet.check_word(w)?;
    for pair in w.windows(2) {
        if core.alphabet.inverse(pair[0]) == pair[1] {
            return Err(Error::NotFreelyReduced);
        }
    }
    let mut v = core.base;
    for s in w.iter() {
        match core.edge(v, s) {
            Some(t) => v = t,
            None => return Ok(false),
        }
    }
    Ok(v == core.base)
}

/// Exact membership and coset canonicalization for a free-group subgroup,
/// backed by its folded core.
///
/// Tracing a reduced word from the base follows core edges while they exist;
/// once it falls off the core it can never return (the remaining suffix is
/// reduced, and the first missing letter cannot cancel against an existing
/// edge). The pair (last core vertex, hanging suffix) therefore identifies
/// the coset exactly, and prefixing the vertex's shortlex geodesic gives a
/// canonical coset representative.
pub struct CoreMembership {
    core: XGraph,
    geodesic: Vec<Word>,
}

impl CoreMembership {
    pub fn new(sub: &SubgroupSpec) -> Self {
        CoreMembership::from_core(stallings_fold(sub))
    }

    pub fn from_core(core: XGraph) -> Self {
        let alphabet = core.alphabet.clone();
        let mut geodesic: Vec<Option<Word>> = vec![None; core.n_vertices()];
        geodesic[core.base as usize] = Some(Word::empty());
        let mut queue = VecDeque::new();
        queue.push_back(core.base);
        while let Some(v) = queue.pop_front() {
            let here = geodesic[v as usize].clone().unwrap();
            for s in alphabet.symbols() {
                if let Some(t) = core.edge(v, s) {
                    if geodesic[t as usize].is_none() {
                        let mut w = here.clone();
                        w.push(s);
                        geodesic[t as usize] = Some(w);
                        queue.push_back(t);
                    }
                }
            }
        }
        let geodesic = geodesic
            .into_iter()
            .map(|g| g.expect("core is connected"))
            .collect();
        CoreMembership { core, geodesic }
    }

    pub fn core(&self) -> &XGraph {
        &self.core
    }
}

impl SubgroupMembership for CoreMembership {
    fn alphabet(&self) -> &GeneratorAlphabet {
        &self.core.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        let r = free_reduce(&self.core.alphabet, w);
        core_membership(&self.core, &r).expect("reduced word")
    }

    fn coset_canonical(&self, w: &Word) -> Option<Word> {
        let r = free_reduce(&self.core.alphabet, w);
        let mut v = self.core.base;
        let mut idx = 0;
        for s in r.iter() {
            match self.core.edge(v, s) {
                Some(t) => {
                    v = t;
                    idx += 1;
                }
                None => break,
            }
        }
        let mut out = self.geodesic[v as usize].clone();
        for &s in &r[idx..] {
            out.push(s);
        }
        Some(out)
    }
}

/// Closed ball of radius `k` around the identity in the Cayley graph of the
/// oracle's group: vertices are canonical forms at distance at most `k`,
/// with all generator edges between them.
pub fn cayley_ball(oracle: &dyn NormalFormOracle, k: usize) -> Result<XGraph> {
    let alphabet = oracle.alphabet().clone();
    let origin = oracle.normal_form(&Word::empty());
    ball_from(&alphabet, origin, k, &mut |w| {
        let c = oracle.normal_form(w);
        let again = oracle.normal_form(&c);
        if again != c {
            return Err(Error::OracleInconsistency(alphabet.format_word(w)));
        }
        Ok(c)
    })
    .map(|b| b.graph)
}

/// A Schreier ball together with a canonical representative word and the
/// distance from the ball's base for every vertex.
pub struct SchreierBall {
    pub graph: XGraph,
    pub reps: Vec<Word>,
    pub dists: Vec<usize>,
}

/// Closed ball of radius `k` around the coset `H·center` in the Schreier
/// graph of the membership oracle's subgroup.
pub fn schreier_ball(
    member: &dyn SubgroupMembership,
    oracle: &dyn NormalFormOracle,
    center: &Word,
    k: usize,
) -> Result<XGraph> {
    schreier_ball_detailed(member, oracle, center, k).map(|b| b.graph)
}

pub fn schreier_ball_detailed(
    member: &dyn SubgroupMembership,
    oracle: &dyn NormalFormOracle,
    center: &Word,
    k: usize,
) -> Result<SchreierBall> {
    let alphabet = oracle.alphabet().clone();
    if member.coset_canonical(&Word::empty()).is_some() {
        let origin = member
            .coset_canonical(center)
            .expect("canonicalization supported");
        ball_from(&alphabet, origin, k, &mut |w| {
            Ok(member.coset_canonical(w).expect("canonicalization supported"))
        })
    } else {
        schreier_ball_pairwise(member, oracle, center, k)
    }
}

/// Generic closed-ball BFS over canonical vertex keys.
fn ball_from(
    alphabet: &GeneratorAlphabet,
    origin: Word,
    k: usize,
    key_of: &mut dyn FnMut(&Word) -> Result<Word>,
) -> Result<SchreierBall> {
    let mut index: HashMap<Word, u32> = HashMap::new();
    let mut reps: Vec<Word> = Vec::new();
    let mut dists: Vec<usize> = Vec::new();
    index.insert(origin.clone(), 0);
    reps.push(origin);
    dists.push(0);
    let mut edges: Vec<Vec<Option<u32>>> = vec![vec![None; alphabet.len()]];
    let mut head = 0usize;
    while head < reps.len() {
        let v = head as u32;
        head += 1;
        let d = dists[v as usize];
        for s in alphabet.symbols() {
            let mut cand = reps[v as usize].clone();
            cand.push(s);
            let key = key_of(&cand)?;
            match index.get(&key) {
                Some(&t) => edges[v as usize][s.index()] = Some(t),
                None if d < k => {
                    let t = reps.len() as u32;
                    if reps.len() >= MAX_BALL_VERTICES {
                        return Err(Error::ResourceLimit(format!(
                            "ball exceeded {MAX_BALL_VERTICES} vertices (complete through radius {d})"
                        )));
                    }
                    index.insert(key.clone(), t);
                    reps.push(key);
                    dists.push(d + 1);
                    edges.push(vec![None; alphabet.len()]);
                    edges[v as usize][s.index()] = Some(t);
                }
                None => {}
            }
        }
    }
    let graph = XGraph {
        alphabet: alphabet.clone(),
        edges,
        base: 0,
        known_radius: Some(k),
    };
    // determinism holds by keying; enforce the involution pairing explicitly
    for v in 0..graph.n_vertices() as u32 {
        for s in alphabet.symbols() {
            if let Some(t) = graph.edge(v, s) {
                let back = graph.edges[t as usize][alphabet.inverse(s).index()];
                if back != Some(v) {
                    return Err(Error::Invariant(format!(
                        "ball construction broke the edge involution at vertex {v}"
                    )));
                }
            }
        }
    }
    Ok(SchreierBall { graph, reps, dists })
}

/// Fallback Schreier BFS for membership oracles without canonical coset
/// forms: coset identity is decided by `member` on `u·v⁻¹`, memoized by the
/// canonical form of the element, with candidates limited to adjacent BFS
/// layers (coset distances along an edge differ by at most one).
fn schreier_ball_pairwise(
    member: &dyn SubgroupMembership,
    oracle: &dyn NormalFormOracle,
    center: &Word,
    k: usize,
) -> Result<SchreierBall> {
    let alphabet = oracle.alphabet().clone();
    let mut reps: Vec<Word> = vec![oracle.normal_form(center)];
    let mut dists: Vec<usize> = vec![0];
    let mut elem_to_vertex: HashMap<Word, u32> = HashMap::new();
    elem_to_vertex.insert(reps[0].clone(), 0);
    let mut layers: Vec<Vec<u32>> = vec![vec![0]];
    let mut edges: Vec<Vec<Option<u32>>> = vec![vec![None; alphabet.len()]];
    let mut head = 0usize;
    while head < reps.len() {
        let v = head as u32;
        head += 1;
        let d = dists[v as usize];
        for s in alphabet.symbols() {
            let mut cand = reps[v as usize].clone();
            cand.push(s);
            let c = oracle.normal_form(&cand);
            let found = match elem_to_vertex.get(&c) {
                Some(&t) => Some(t),
                None => {
                    let mut hit = None;
                    let lo = d.saturating_sub(1);
                    let hi = (d + 1).min(layers.len() - 1);
                    'search: for layer in lo..=hi {
                        for &u in &layers[layer] {
                            if member.same_coset(&c, &reps[u as usize]) {
                                hit = Some(u);
                                break 'search;
                            }
                        }
                    }
                    if let Some(u) = hit {
                        elem_to_vertex.insert(c.clone(), u);
                    }
                    hit
                }
            };
            match found {
                Some(t) => edges[v as usize][s.index()] = Some(t),
                None if d < k => {
                    let t = reps.len() as u32;
                    if reps.len() >= MAX_BALL_VERTICES {
                        return Err(Error::ResourceLimit(format!(
                            "ball exceeded {MAX_BALL_VERTICES} vertices (complete through radius {d})"
                        )));
                    }
                    elem_to_vertex.insert(c.clone(), t);
                    reps.push(c);
                    dists.push(d + 1);
                    while layers.len() <= d + 1 {
                        layers.push(Vec::new());
                    }
                    layers[d + 1].push(t);
                    edges.push(vec![None; alphabet.len()]);
                    edges[v as usize][s.index()] = Some(t);
                }
                None => {}
            }
        }
    }
    let graph = XGraph {
        alphabet,
        edges,
        base: 0,
        known_radius: Some(k),
    };
    Ok(SchreierBall { graph, reps, dists })
}

/// Outcome of one based-ball comparison.
#[derive(Clone, Debug)]
pub struct BallReport {
    /// Vertex the compared ball was centred on (in the first graph).
    pub center: u32,
    /// Representative word of the centre, when one is known.
    pub center_word: Option<Word>,
    pub radius: usize,
    pub passed: bool,
    /// Label path from the centre plus the symbol where the comparison broke.
    pub witness: Option<(Word, Sym)>,
}

/// Are the closed `k`-balls around the two base vertices isomorphic as based
/// X-graphs? Determinism makes the base-preserving isomorphism unique, so a
/// synchronized traversal is both sound and complete.
pub fn ball_isomorphic(g1: &XGraph, g2: &XGraph, k: usize) -> Result<BallReport> {
    if g1.alphabet != g2.alphabet {
        return Err(Error::Config("ball comparison across different alphabets".into()));
    }
    for g in [g1, g2] {
        if let Some(r) = g.known_radius {
            if r < k {
                return Err(Error::InsufficientRadius { needed: k, have: r });
            }
        }
    }
    Ok(ball_iso_at(g1, g1.base, g2, g2.base, k))
}

/// Synchronized BFS comparison of the two balls: label paths of length at
/// most `k` from the centres must agree on definedness and on which pairs of
/// paths land at the same vertex. Callers are responsible for both graphs
/// being faithful out to radius `k` around the chosen centres.
pub(crate) fn ball_iso_at(g1: &XGraph, c1: u32, g2: &XGraph, c2: u32, k: usize) -> BallReport {
    let mut fwd: HashMap<u32, u32> = HashMap::new();
    let mut bwd: HashMap<u32, u32> = HashMap::new();
    fwd.insert(c1, c2);
    bwd.insert(c2, c1);
    let mut queue: VecDeque<(u32, u32, Word)> = VecDeque::new();
    queue.push_back((c1, c2, Word::empty()));
    let fail = |path: Word, s: Sym| BallReport {
        center: c1,
        center_word: None,
        radius: k,
        passed: false,
        witness: Some((path, s)),
    };
    while let Some((u1, u2, path)) = queue.pop_front() {
        if path.len() == k {
            continue;
        }
        for s in g1.alphabet.symbols() {
            match (g1.edge(u1, s), g2.edge(u2, s)) {
                (None, None) => {}
                (Some(t1), Some(t2)) => match (fwd.get(&t1), bwd.get(&t2)) {
                    (Some(&m), _) => {
                        if m != t2 {
                            return fail(path, s);
                        }
                    }
                    (None, Some(_)) => return fail(path, s),
                    (None, None) => {
                        fwd.insert(t1, t2);
                        bwd.insert(t2, t1);
                        let mut next = path.clone();
                        next.push(s);
                        queue.push_back((t1, t2, next));
                    }
                },
                _ => return fail(path, s),
            }
        }
    }
    BallReport {
        center: c1,
        center_word: None,
        radius: k,
        passed: true,
        witness: None,
    }
}

/// Bounded empirical GIB(k) check: for every Schreier vertex p with
/// `min_dist ≤ d(base, p) ≤ max_dist`, compares the closed k-ball around p
/// with the Cayley k-ball around the identity and reports every centre.
pub fn gib_check(
    member: &dyn SubgroupMembership,
    oracle: &dyn NormalFormOracle,
    k: usize,
    min_dist: usize,
    max_dist: usize,
) -> Result<Vec<BallReport>> {
    if max_dist < min_dist {
        return Err(Error::Config(format!(
            "gib check needs radius limit >= K (got limit {max_dist} < K {min_dist})"
        )));
    }
    let cayley = cayley_ball(oracle, k)?;
    let big = schreier_ball_detailed(member, oracle, &Word::empty(), max_dist + k)?;
    let mut reports = Vec::new();
    for p in 0..big.graph.n_vertices() as u32 {
        let d = big.dists[p as usize];
        if d < min_dist || d > max_dist {
            continue;
        }
        let mut report = ball_iso_at(&big.graph, p, &cayley, cayley.base, k);
        report.center_word = Some(big.reps[p as usize].clone());
        reports.push(report);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{FreeAbelianOracle, FreeReductionOracle};

    fn f2() -> GeneratorAlphabet {
        GeneratorAlphabet::free(2)
    }

    fn sub(a: &GeneratorAlphabet, gens: &[&str]) -> SubgroupSpec {
        let words = gens.iter().map(|g| a.parse_word(g).unwrap()).collect();
        SubgroupSpec::new(a.clone(), words).unwrap()
    }

    #[test]
    fn fold_single_loop() {
        let a = f2();
        let core = stallings_fold(&sub(&a, &["a"]));
        assert_eq!(core.n_vertices(), 1);
        let sa = a.symbol("a").unwrap();
        let sb = a.symbol("b").unwrap();
        assert_eq!(core.edge(0, sa), Some(0));
        assert_eq!(core.edge(0, sb), None);
    }

    #[test]
    fn fold_a_squared_b() {
        let a = f2();
        let core = stallings_fold(&sub(&a, &["a a", "b"]));
        assert_eq!(core.n_vertices(), 2);
        let sa = a.symbol("a").unwrap();
        let sb = a.symbol("b").unwrap();
        assert_eq!(core.edge(0, sa), Some(1));
        assert_eq!(core.edge(1, sa), Some(0));
        assert_eq!(core.edge(0, sb), Some(0));
        assert_eq!(core.edge(1, sb), None);
    }

    #[test]
    fn fold_conjugate_loop() {
        // the wedge cycle a·b·a⁻¹ puts two a-edges on the base, so one fold
        // is forced and the core is a stick with a b-loop at its far end
        let a = f2();
        let core = stallings_fold(&sub(&a, &["a b a^-1"]));
        assert_eq!(core.n_vertices(), 2);
        let sa = a.symbol("a").unwrap();
        let sb = a.symbol("b").unwrap();
        assert_eq!(core.edge(0, sa), Some(1));
        assert_eq!(core.edge(1, sb), Some(1));
        assert_eq!(core.edge(0, sb), None);
        assert!(core_membership(&core, &a.parse_word("a b a^-1").unwrap()).unwrap());
        assert!(core_membership(&core, &a.parse_word("a b b a^-1").unwrap()).unwrap());
        assert!(!core_membership(&core, &a.parse_word("b").unwrap()).unwrap());
    }

    #[test]
    fn trivial_subgroup_core_is_a_point() {
        let a = f2();
        let core = stallings_fold(&SubgroupSpec::trivial(a));
        assert_eq!(core.n_vertices(), 1);
    }

    #[test]
    fn core_membership_examples() {
        let a = f2();
        let core = stallings_fold(&sub(&a, &["a"]));
        assert!(core_membership(&core, &a.parse_word("a a a").unwrap()).unwrap());
        assert!(!core_membership(&core, &a.parse_word("b").unwrap()).unwrap());
        let core2 = stallings_fold(&sub(&a, &["a a", "b"]));
        assert!(!core_membership(&core2, &a.parse_word("a b a^-1").unwrap()).unwrap());
        assert!(matches!(
            core_membership(&core2, &a.parse_word("a a^-1").unwrap()),
            Err(Error::NotFreelyReduced)
        ));
    }

    #[test]
    fn cayley_ball_counts_free_rank2() {
        let a = f2();
        let o = FreeReductionOracle::new(a);
        for (k, expect) in [(0usize, 1usize), (1, 5), (2, 17), (3, 53)] {
            let ball = cayley_ball(&o, k).unwrap();
            assert_eq!(ball.n_vertices(), expect, "radius {k}");
        }
    }

    #[test]
    fn cayley_ball_abelian_radius_one() {
        let a = f2();
        let o = FreeAbelianOracle::new(a);
        let ball = cayley_ball(&o, 1).unwrap();
        assert_eq!(ball.n_vertices(), 5);
    }

    #[test]
    fn schreier_ball_of_a_in_f2() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&sub(&a, &["a"]));
        let ball = schreier_ball(&member, &o, &Word::empty(), 1).unwrap();
        let sa = a.symbol("a").unwrap();
        let sb = a.symbol("b").unwrap();
        let sbi = a.symbol("b^-1").unwrap();
        assert_eq!(ball.n_vertices(), 3);
        assert_eq!(ball.edge(ball.base(), sa), Some(ball.base()));
        assert_ne!(ball.edge(ball.base(), sb), Some(ball.base()));
        assert_ne!(ball.edge(ball.base(), sbi), Some(ball.base()));
    }

    #[test]
    fn schreier_ball_abelian_has_loops_everywhere() {
        let a = f2();
        let o = FreeAbelianOracle::new(a.clone());
        let sa = a.symbol("a").unwrap();
        let member = crate::bruteforce::subgroup_enumerate(
            &sub(&a, &["a"]),
            std::sync::Arc::new(FreeAbelianOracle::new(a.clone())),
            12,
        );
        let center = a.parse_word("b b").unwrap();
        let ball = schreier_ball(&member, &o, &center, 1).unwrap();
        assert_eq!(ball.n_vertices(), 3);
        for v in 0..ball.n_vertices() as u32 {
            assert_eq!(ball.edge(v, sa), Some(v), "a-loop at vertex {v}");
        }
    }

    #[test]
    fn schreier_ball_whole_group_is_a_point() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&sub(&a, &["a", "b"]));
        let ball = schreier_ball(&member, &o, &Word::empty(), 2).unwrap();
        assert_eq!(ball.n_vertices(), 1);
        for s in a.symbols() {
            assert_eq!(ball.edge(0, s), Some(0));
        }
    }

    #[test]
    fn ball_isomorphic_identical_graphs() {
        let a = f2();
        let core = stallings_fold(&sub(&a, &["a a", "b"]));
        let rep = ball_isomorphic(&core, &core.clone(), 3).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn ball_isomorphic_detects_base_loop() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&sub(&a, &["a"]));
        let cay = cayley_ball(&o, 1).unwrap();
        let sig = schreier_ball(&member, &o, &Word::empty(), 1).unwrap();
        let rep = ball_isomorphic(&sig, &cay, 1).unwrap();
        assert!(!rep.passed);
        let (path, s) = rep.witness.unwrap();
        assert!(path.is_empty());
        assert_eq!(a.name(s), "a");
    }

    #[test]
    fn ball_isomorphic_far_vertex_looks_free() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&sub(&a, &["a"]));
        let cay = cayley_ball(&o, 2).unwrap();
        let center = a.parse_word("b b b").unwrap();
        let sig = schreier_ball(&member, &o, &center, 2).unwrap();
        let rep = ball_isomorphic(&sig, &cay, 2).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn ball_isomorphic_requires_enough_radius() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let b1 = cayley_ball(&o, 1).unwrap();
        let b2 = cayley_ball(&o, 2).unwrap();
        assert!(matches!(
            ball_isomorphic(&b1, &b2, 2),
            Err(Error::InsufficientRadius { .. })
        ));
    }

    #[test]
    fn fold_is_confluent_under_generator_permutation() {
        let a = f2();
        let variants = [
            vec!["a b a^-1", "b b"],
            vec!["b b", "a b a^-1"],
            vec!["b^-1 b^-1", "a b a^-1"],
            vec!["a b^-1 a^-1", "b b"],
        ];
        let cores: Vec<XGraph> = variants.iter().map(|v| stallings_fold(&sub(&a, v))).collect();
        let diameter = cores[0].n_vertices();
        for c in &cores[1..] {
            assert_eq!(c.n_vertices(), cores[0].n_vertices());
            assert!(ball_isomorphic(&cores[0], c, diameter).unwrap().passed);
        }
    }

    #[test]
    fn gib_passes_for_a_in_f2() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&sub(&a, &["a"]));
        let reports = gib_check(&member, &o, 2, 3, 5).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| r.passed));
    }

    #[test]
    fn gib_fails_for_a_in_z2() {
        let a = f2();
        let o = FreeAbelianOracle::new(a.clone());
        let member = crate::bruteforce::subgroup_enumerate(
            &sub(&a, &["a"]),
            std::sync::Arc::new(FreeAbelianOracle::new(a.clone())),
            20,
        );
        let reports = gib_check(&member, &o, 1, 1, 4).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(!r.passed);
            let (_, s) = r.witness.clone().unwrap();
            let name = a.name(s);
            assert!(name == "a" || name == "a^-1");
        }
    }

    #[test]
    fn gib_zero_radius_trivially_passes() {
        let a = f2();
        let o = FreeReductionOracle::new(a.clone());
        let member = CoreMembership::new(&sub(&a, &["a", "b"]));
        let reports = gib_check(&member, &o, 0, 0, 0).unwrap();
        assert!(reports.iter().all(|r| r.passed));
    }

    #[test]
    fn cayley_ball_rejects_inconsistent_oracle() {
        struct Broken(GeneratorAlphabet);
        impl crate::oracle::NormalFormOracle for Broken {
            fn alphabet(&self) -> &GeneratorAlphabet {
                &self.0
            }
            // appends a letter on every call, so it is never idempotent
            fn normal_form(&self, w: &Word) -> Word {
                let mut out = w.clone();
                out.push(Sym::new(0));
                out
            }
        }
        let err = cayley_ball(&Broken(f2()), 2).unwrap_err();
        assert!(matches!(err, Error::OracleInconsistency(_)));
    }

    #[test]
    fn dump_round_trip() {
        let a = f2();
        let core = stallings_fold(&sub(&a, &["a b a^-1", "b b"]));
        let text = core.to_dump();
        let back = XGraph::from_dump(a, &text).unwrap();
        assert_eq!(back.n_vertices(), core.n_vertices());
        assert_eq!(back.base(), core.base());
        for v in 0..core.n_vertices() as u32 {
            for s in core.alphabet().symbols() {
                assert_eq!(back.edge(v, s), core.edge(v, s));
            }
        }
    }
}
