//! Acceptance sweep: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wangtile::det::{
    boustrophedon_complete, counterexample_is_contradictory, detect_deterministic, partition_satisfies,
};
use wangtile::fo::{emit_formula, evaluate_formula, Atom, Formula, Var};
use wangtile::game::{adversary_wins, solve_game, verify_strategy, GameOptions, PlayerSequence, Strategy};
use wangtile::io::{
    parse_directed_graph, parse_undirected_graph, print_directed_graph, print_undirected_graph, InstanceFile,
};
use wangtile::solve::{enumerate_rows, solve, solve_fixed, RowConstraints, SolveOptions};
use wangtile::tiling::{brute_force_exists, validate_tiling};
use wangtile::tmred::corpus::{by_name, corpus};
use wangtile::tmred::{
    closable_at, compile_tileset, simulate, successors, tiling_to_trace, trace_to_rows, trace_to_tiling, Config,
    MachineDesc, NormalizedTm, Outcome,
};
use wangtile::width1::{graph_to_tiles, rotation_closure, solve_line, tiles_to_graph, undirected_reachable};
use wangtile::width1::{DirectedGraph, UndirectedGraph};
use wangtile::{Color, Height, TileSet, TileType, Tiling, TilingInstance};
use wangtile_cli::render::{render, Format, RenderSpec};

type Check = Result<String, String>;

/// Name, time limit in seconds, and the check itself.
type Criterion = (&'static str, u64, fn() -> Check);

const UNLIMITED: SolveOptions = SolveOptions { budget: u64::MAX };

fn all_tiles(colors: &[&str]) -> Vec<TileType> {
    let mut out = Vec::new();
    for l in colors {
        for t in colors {
            for r in colors {
                for b in colors {
                    out.push(TileType::new(*l, *t, *r, *b));
                }
            }
        }
    }
    out
}

/// Every subset of `0..n` with between 1 and `k` elements, as sorted indices.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn sets_over(colors: &[&str], k: usize) -> Vec<TileSet> {
    let tiles = all_tiles(colors);
    subsets(tiles.len(), k)
        .into_iter()
        .map(|idx| TileSet::new(idx.into_iter().map(|i| tiles[i].clone())))
        .collect()
}

fn seeds(set: &TileSet) -> Vec<Option<TileType>> {
    std::iter::once(None)
        .chain(set.tiles().iter().cloned().map(Some))
        .collect()
}

fn fail_if(bad: Vec<String>, ok: String) -> Check {
    match bad.len() {
        0 => Ok(ok),
        n => Err(format!("{n} discrepancies; first: {}", bad[0])),
    }
}

fn valid_witness(inst: &TilingInstance, w: &Tiling) -> bool {
    let height_ok = match inst.height {
        Height::Fixed(h) => w.height() == h,
        Height::Arbitrary => true,
    };
    height_ok
        && w.width() == inst.width
        && validate_tiling(&inst.tile_set, w, inst.seed.as_ref()).is_ok_and(|r| r.is_valid())
}

fn criterion_1() -> Check {
    let mut bad = Vec::new();
    let mut count = 0u64;
    for set in sets_over(&["white", "a", "b"], 3) {
        for seed in seeds(&set) {
            for h in 1..=3 {
                for w in 1..=3 {
                    let inst = TilingInstance::fixed(set.clone(), seed.clone(), h, w).unwrap();
                    let fast = solve_fixed(&inst, &UNLIMITED).unwrap();
                    let slow = brute_force_exists(&inst, 0, u64::MAX).unwrap();
                    count += 1;
                    let witness_ok = fast.witness.as_ref().is_none_or(|t| valid_witness(&inst, t));
                    if fast.exists != slow.is_some() || !witness_ok {
                        bad.push(format!("{:?} seed {:?} {h}x{w}", set.tiles(), seed));
                    }
                }
            }
        }
    }
    fail_if(bad, format!("{count} instances"))
}

/// Some run of at most `steps` steps within `width` cells reaches the final
/// state on an erased tape.
fn accepts_within(tm: &NormalizedTm, input: &[u16], width: usize, steps: usize) -> bool {
    let Ok(start) = Config::initial(tm, input, width) else {
        return false;
    };
    let mut layer = BTreeSet::from([start]);
    for _ in 0..=steps {
        if layer.iter().any(|c| c.tape_erased() && c.state == tm.final_state()) {
            return true;
        }
        layer = layer.iter().flat_map(|c| successors(tm, c)).collect();
    }
    false
}

fn criterion_2() -> Check {
    let entries = corpus();
    let mut bad = Vec::new();
    let mut literal_mismatch = 0;
    let mut count = 0;
    for e in &entries {
        let tm = &e.machine;
        for word in &e.inputs {
            let input = tm.parse_word(word).unwrap();
            for n in input.len().max(1)..=6 {
                let c = compile_tileset(tm, &input, n).unwrap();
                let res = solve(&c.instance, &UNLIMITED).unwrap();
                let oracle = n >= 2 && closable_at(tm, &input, n, n - 2).unwrap();
                count += 1;
                let decodes = res.witness.as_ref().is_none_or(|w| {
                    tiling_to_trace(&c, w).is_ok_and(|t| t.len() == n - 1 && t[n - 2].is_closable(tm))
                });
                if res.exists != oracle || !decodes {
                    bad.push(format!("{} on {word:?}, n={n}: tiling {} oracle {oracle}", e.name, res.exists));
                }
                if res.exists != accepts_within(tm, &input, n, n) {
                    literal_mismatch += 1;
                }
            }
        }
    }
    let bba_present = by_name("bba-walk").unwrap().inputs.contains(&"bba".to_string());
    if entries.len() < 10 || !bba_present {
        bad.push(format!("corpus has {} machines, bba present: {bba_present}", entries.len()));
    }
    let most_states = entries
        .iter()
        .map(|e| e.machine.states().len() - 2)
        .max()
        .unwrap_or(0);
    fail_if(
        bad,
        format!(
            "{count} instances over {} machines (at most {most_states} non-final states); \
             {literal_mismatch} differ from the loose 'accepts within n steps' reading",
            entries.len()
        ),
    )
}

/// Distinct bottom vectors of rows reachable from the top row: a
/// minimal-height tiling never repeats one.
fn pigeonhole_bound(inst: &TilingInstance) -> usize {
    let set = &inst.tile_set;
    let side = |r: &[TileType], f: fn(&TileType) -> &Color| r.iter().map(|t| f(t).clone()).collect::<Vec<_>>();
    let mut below: HashMap<Vec<Color>, Vec<Vec<Color>>> = HashMap::new();
    let mut frontier = Vec::new();
    for r in enumerate_rows(set, inst.width, &RowConstraints::default()) {
        let r = r.tiles(set);
        let (top, bottom) = (side(&r, |t| &t.top), side(&r, |t| &t.bottom));
        if top.iter().all(Color::is_white) && inst.seed.as_ref().is_none_or(|s| &r[0] == s) {
            frontier.push(bottom.clone());
        }
        below.entry(top).or_default().push(bottom);
    }
    let mut seen: HashSet<Vec<Color>> = frontier.iter().cloned().collect();
    while let Some(b) = frontier.pop() {
        for next in below.get(&b).into_iter().flatten() {
            if seen.insert(next.clone()) {
                frontier.push(next.clone());
            }
        }
    }
    seen.len()
}

fn arbitrary_matches_fixed(inst: &TilingInstance) -> Result<(), String> {
    let arb = solve(inst, &UNLIMITED).unwrap();
    let bound = pigeonhole_bound(inst);
    let first = (1..=bound).find(|&h| {
        solve_fixed(&inst.with_height(Height::Fixed(h)).unwrap(), &UNLIMITED)
            .unwrap()
            .exists
    });
    let height = arb.witness.as_ref().map(Tiling::height);
    let witness_ok = arb.witness.as_ref().is_none_or(|t| valid_witness(inst, t));
    if arb.exists != first.is_some() || height != first || !witness_ok {
        return Err(format!("arbitrary {:?}, fixed up to {bound}: {first:?}", height));
    }
    Ok(())
}

fn criterion_3() -> Check {
    let mut bad = Vec::new();
    let mut count = 0;
    for e in corpus() {
        let tm = &e.machine;
        for word in &e.inputs {
            let input = tm.parse_word(word).unwrap();
            // row enumeration for the bound explodes past width 4
            for w in input.len().max(1)..=4 {
                let c = compile_tileset(tm, &input, w).unwrap();
                count += 1;
                if let Err(m) = arbitrary_matches_fixed(&c.with_height(Height::Arbitrary).instance) {
                    bad.push(format!("{} on {word:?}, w={w}: {m}", e.name));
                }
            }
        }
    }
    for set in sets_over(&["white", "a", "b"], 2) {
        for seed in seeds(&set) {
            for w in 1..=2 {
                count += 1;
                let inst = TilingInstance::arbitrary(set.clone(), seed.clone(), w).unwrap();
                if let Err(m) = arbitrary_matches_fixed(&inst) {
                    bad.push(format!("{:?} w={w}: {m}", set.tiles()));
                }
            }
        }
    }
    fail_if(bad, format!("{count} instances"))
}

/// Try every two-class split of the non-white colors against the definition.
fn deterministic_by_partitions(set: &TileSet) -> bool {
    let colors: Vec<&Color> = set.colors().iter().filter(|c| !c.is_white()).collect();
    (0u32..1 << colors.len()).any(|mask| {
        // false: class One (with white), true: class Two
        let two = |c: &Color| colors.iter().position(|x| *x == c).is_some_and(|i| mask >> i & 1 == 1);
        if set.tiles().iter().any(|t| two(&t.top) == two(&t.bottom)) {
            return false;
        }
        let mut keys = HashSet::new();
        set.tiles().iter().all(|t| {
            let closing = t.bottom.is_white();
            let side = if two(&t.top) { &t.right } else { &t.left };
            keys.insert((closing, two(&t.top), side.clone(), t.top.clone()))
        })
    })
}

fn criterion_4() -> Check {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut sets = sets_over(&["white", "a", "b"], 3);
    sets.extend(sets_over(&["white", "a", "b", "c"], 2));
    for set in &sets {
        let cert = detect_deterministic(set);
        count += 1;
        let certified = match (&cert.partition, &cert.counterexample) {
            (Some(p), _) if cert.deterministic => partition_satisfies(set, p),
            (_, Some(cx)) if !cert.deterministic => counterexample_is_contradictory(cx),
            _ => false,
        };
        if cert.deterministic != deterministic_by_partitions(set) || !certified {
            bad.push(format!("{:?}: detector says {}", set.tiles(), cert.deterministic));
        }
    }
    let mut runs = 0;
    for e in corpus().into_iter().filter(|e| e.machine.is_deterministic()) {
        let tm = &e.machine;
        for word in &e.inputs {
            let input = tm.parse_word(word).unwrap();
            for n in input.len().max(1)..=6 {
                let c = compile_tileset(tm, &input, n).unwrap();
                let set = &c.instance.tile_set;
                let cert = detect_deterministic(set);
                if !cert.deterministic {
                    bad.push(format!("{} on {word:?}, n={n}: not certified", e.name));
                    continue;
                }
                let seed = c.instance.seed.clone().unwrap();
                let done = boustrophedon_complete(set, &cert, &seed, n, n).unwrap();
                let solved = solve_fixed(&c.instance, &UNLIMITED).unwrap();
                runs += 1;
                if done.result.exists != solved.exists || done.backtracks != 0 || done.cells_visited > n * n {
                    bad.push(format!("{} on {word:?}, n={n}: completion disagrees", e.name));
                }
            }
        }
    }
    fail_if(bad, format!("{count} tile sets, {runs} corpus completions"))
}

fn bfs_reachable(nodes: usize, edges: &[(usize, usize)], s: usize, t: usize) -> bool {
    let mut seen = vec![false; nodes];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = queue.pop_front() {
        for &(a, b) in edges {
            if a == u && !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen[t]
}

fn random_digraphs(count: usize) -> Vec<(DirectedGraph, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=6);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|(u, v)| u != v)
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            let t = rng.gen_range(1..n);
            let name = |i: usize| format!("v{i}");
            let g = DirectedGraph::new(
                (0..n).map(name),
                edges.iter().map(|&(u, v)| (name(u), name(v))),
                name(0),
                name(t),
            )
            .unwrap();
            (g, bfs_reachable(n, &edges, 0, t))
        })
        .collect()
}

/// Unions of rotation orbits: all of them over `{white, a}`, and up to two
/// over `{white, a, b}`.
fn rotation_closed_sets() -> Vec<TileSet> {
    let orbits = |colors: &[&str]| -> Vec<Vec<TileType>> {
        let found: BTreeSet<Vec<TileType>> = all_tiles(colors)
            .into_iter()
            .map(|t| {
                let mut o = rotation_closure(&TileSet::new([t])).tiles().to_vec();
                o.sort();
                o
            })
            .collect();
        found.into_iter().collect()
    };
    let mut out = Vec::new();
    for (colors, k) in [(&["white", "a"][..], usize::MAX), (&["white", "a", "b"][..], 2)] {
        let os = orbits(colors);
        for idx in subsets(os.len(), k.min(os.len())) {
            out.push(TileSet::new(idx.into_iter().flat_map(|i| os[i].clone())));
        }
    }
    out
}

fn criterion_5() -> Check {
    let mut bad = Vec::new();
    for (g, reach) in random_digraphs(50) {
        let inst = graph_to_tiles(&g);
        if solve_line(&inst.tile_set, inst.seed.as_ref().unwrap(), inst.height) != reach {
            bad.push(format!("digraph {:?}: expected {reach}", print_directed_graph(&g)));
        }
    }
    let mut count = 0;
    for set in rotation_closed_sets() {
        for seed in seeds(&set) {
            for h in 1..=4 {
                let inst = TilingInstance::fixed(set.clone(), seed.clone(), h, 1).unwrap();
                let g = tiles_to_graph(&inst).unwrap();
                let line = match &seed {
                    Some(s) => solve_line(&set, s, Height::Fixed(h)),
                    None => set.tiles().iter().any(|s| solve_line(&set, s, Height::Fixed(h))),
                };
                count += 1;
                if undirected_reachable(&g) != line {
                    bad.push(format!("{:?} seed {seed:?} h={h}: line {line}", set.tiles()));
                }
            }
        }
    }
    fail_if(bad, format!("50 digraphs, {count} rotation-closed instances"))
}

/// All horizontally valid rows with white outer sides, by exhaustive product.
fn product_rows(set: &TileSet, width: usize) -> Vec<Vec<TileType>> {
    let mut rows: Vec<Vec<TileType>> = vec![Vec::new()];
    for col in 0..width {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                set.tiles().iter().filter_map(move |t| {
                    let left = r.last().map_or(Color::white(), |p: &TileType| p.right.clone());
                    let right_ok = col + 1 < width || t.right.is_white();
                    (t.left == left && right_ok).then(|| {
                        let mut r = r.clone();
                        r.push(t.clone());
                        r
                    })
                })
            })
            .collect();
    }
    rows
}

/// Game-tree minimax for `(EA)*` at fixed height: E owns odd rows.
fn minimax(rows: &[Vec<TileType>], seed: Option<&TileType>, height: usize, depth: usize, above: Option<&[TileType]>) -> bool {
    let legal = rows.iter().filter(|r| match above {
        None => r.iter().all(|t| t.top.is_white()) && seed.is_none_or(|s| &r[0] == s),
        Some(a) => r.iter().zip(a).all(|(x, y)| x.top == y.bottom),
    });
    let mut any = false;
    let mut all = true;
    let mut moved = false;
    for r in legal {
        moved = true;
        let win = if depth == height {
            r.iter().all(|t| t.bottom.is_white())
        } else {
            minimax(rows, seed, height, depth + 1, Some(r))
        };
        any |= win;
        all &= win;
    }
    moved && if depth % 2 == 1 { any } else { all }
}

const VERIFY_BUDGET: u64 = 10_000_000;

fn game_sets() -> Vec<TileSet> {
    let mut sets = sets_over(&["white", "a"], 3);
    let tiles = all_tiles(&["white", "a", "b"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1500 {
        let pick: Vec<TileType> = (0..3).map(|_| tiles[rng.gen_range(0..tiles.len())].clone()).collect();
        sets.push(TileSet::new(pick));
    }
    sets
}

fn criterion_6() -> Check {
    let opts = GameOptions::default();
    let mut bad = Vec::new();
    let (mut count, mut verified) = (0, 0);
    let mut check_strategy = |inst: &TilingInstance, seq: &PlayerSequence, s: &Option<Strategy>, bad: &mut Vec<String>| {
        if let Some(s) = s {
            verified += 1;
            if !verify_strategy(inst, seq, inst.n, s, VERIFY_BUDGET).unwrap().passed() {
                bad.push(format!("strategy for {seq} on {:?} fails", inst.tile_set.tiles()));
            }
        }
    };
    let all_e = PlayerSequence::all_e();
    let heights = [Height::Fixed(1), Height::Fixed(2), Height::Fixed(3), Height::Arbitrary];
    for set in sets_over(&["white", "a", "b"], 2) {
        for seed in seeds(&set) {
            for w in 1..=2 {
                for h in heights {
                    let inst = TilingInstance::new(w as u64, set.clone(), seed.clone(), h, w).unwrap();
                    let g = solve_game(&inst, &all_e, inst.n, &opts).unwrap();
                    count += 1;
                    if g.winning != solve(&inst, &UNLIMITED).unwrap().exists {
                        bad.push(format!("E* on {:?} {h:?}x{w}", set.tiles()));
                    }
                    check_strategy(&inst, &all_e, &g.strategy, &mut bad);
                }
            }
        }
    }
    let ea = PlayerSequence::alternating();
    for set in game_sets() {
        for seed in seeds(&set) {
            for w in 1..=2 {
                let rows = product_rows(&set, w);
                for h in heights {
                    let inst = TilingInstance::new(w as u64, set.clone(), seed.clone(), h, w).unwrap();
                    let g = solve_game(&inst, &ea, inst.n, &opts).unwrap();
                    let expected = match h {
                        Height::Fixed(h) => minimax(&rows, seed.as_ref(), h, 1, None),
                        Height::Arbitrary => !adversary_wins(&inst, &ea, inst.n, &opts).unwrap(),
                    };
                    count += 1;
                    if g.winning != expected {
                        bad.push(format!("(EA)* on {:?} seed {seed:?} {h:?}x{w}", set.tiles()));
                    }
                    check_strategy(&inst, &ea, &g.strategy, &mut bad);
                }
            }
        }
    }
    fail_if(bad, format!("{count} games, {verified} strategies verified"))
}

fn criterion_7() -> Check {
    let mut bad = Vec::new();
    let f = emit_formula(2, 2, false).unwrap();
    let v = |i| Var(i);
    let core = [
        Atom::H(v(1), v(2)),
        Atom::H(v(3), v(4)),
        Atom::V(v(1), v(3)),
        Atom::V(v(2), v(4)),
    ];
    let atoms = f.atoms();
    let binary = atoms.iter().filter(|a| matches!(a, Atom::H(..) | Atom::V(..))).count();
    let vars_ok = matches!(&f, Formula::Exists(vs, _) if vs.len() == 4);
    if !vars_ok || atoms.len() < 4 || atoms[..4] != core || binary != 4 {
        bad.push(format!("2x2 sentence has the wrong shape: {f}"));
    }
    let mut sets = sets_over(&["white", "a", "b"], 2);
    sets.extend(sets_over(&["white", "a"], 3));
    let mut count = 0;
    for set in &sets {
        for seed in seeds(set) {
            for k in 1..=3 {
                for l in 1..=3 {
                    let f = emit_formula(k, l, seed.is_some()).unwrap();
                    let holds = evaluate_formula(&f, set, seed.as_ref());
                    let inst = TilingInstance::fixed(set.clone(), seed.clone(), k, l).unwrap();
                    count += 1;
                    if holds != solve_fixed(&inst, &UNLIMITED).unwrap().exists {
                        bad.push(format!("{:?} seed {seed:?} {k}x{l}", set.tiles()));
                    }
                }
            }
        }
    }
    fail_if(bad, format!("{count} evaluations"))
}

fn round_trips(bad: &mut Vec<String>) -> usize {
    let mut count = 0;
    let mut check = |ok: bool, what: String| {
        count += 1;
        if !ok {
            bad.push(what);
        }
    };
    for e in corpus() {
        let tm = &e.machine;
        let desc = tm.desc();
        check(desc.to_string().parse::<MachineDesc>().as_ref() == Ok(desc), format!("machine {}", e.name));
        for word in &e.inputs {
            let input = tm.parse_word(word).unwrap();
            for n in input.len().max(1)..=6 {
                let c = compile_tileset(tm, &input, n).unwrap();
                let file = InstanceFile::from_instance(&c.instance);
                check(InstanceFile::from_json(&file.to_json()).as_ref() == Ok(&file), format!("instance {}", e.name));
                let Some(w) = solve(&c.instance, &UNLIMITED).unwrap().witness else {
                    continue;
                };
                let json = serde_json::to_string(&w).unwrap();
                check(serde_json::from_str::<Tiling>(&json).ok().as_ref() == Some(&w), "tiling json".into());
                let trace = tiling_to_trace(&c, &w).unwrap();
                let back = trace_to_tiling(&c, &trace, n).unwrap();
                let again = tiling_to_trace(&c, &back).unwrap();
                check(back == w && again == trace, format!("tiling/trace {} on {word:?}, n={n}", e.name));
            }
            if tm.is_deterministic() {
                let width = input.len().max(1) + 2;
                let run = simulate(tm, &input, 12, width).unwrap();
                let c = compile_tileset(tm, &input, width).unwrap();
                let rows = Tiling::from_rows(trace_to_rows(&c, &run.trace).unwrap()).unwrap();
                check(tiling_to_trace(&c, &rows).as_ref() == Ok(&run.trace), format!("run rows {}", e.name));
                if let Outcome::Accepted { step } = run.outcome {
                    let t = trace_to_tiling(&c, &run.trace, step + 3).unwrap();
                    let tr = tiling_to_trace(&c, &t).unwrap();
                    check(tr[..run.trace.len()] == run.trace[..], format!("accepted run {}", e.name));
                }
            }
        }
    }
    for text in ["E*", "(EA)*", "E^n(A^nE^n)^2", "A^3(EA^2)*", "(E^2^nA^2^n)*", "EAE"] {
        let s: PlayerSequence = text.parse().unwrap();
        let json = serde_json::to_string(&s).unwrap();
        let ok = s.to_string().parse::<PlayerSequence>().as_ref() == Ok(&s)
            && serde_json::from_str::<PlayerSequence>(&json).ok().as_ref() == Some(&s);
        check(ok, format!("sequence {text}"));
    }
    for k in 1..=3 {
        for l in 1..=3 {
            for seed in [false, true] {
                let f = emit_formula(k, l, seed).unwrap();
                check(f.to_string().parse::<Formula>().as_ref() == Ok(&f), format!("formula {k}x{l}"));
            }
        }
    }
    for (g, _) in random_digraphs(50) {
        check(parse_directed_graph(&print_directed_graph(&g)).as_ref() == Ok(&g), "digraph".into());
    }
    for set in rotation_closed_sets().into_iter().take(40) {
        let inst = TilingInstance::fixed(set, None, 3, 1).unwrap();
        let g: UndirectedGraph = tiles_to_graph(&inst).unwrap();
        check(parse_undirected_graph(&print_undirected_graph(&g)).as_ref() == Ok(&g), "graph".into());
        let file = InstanceFile::from_instance(&inst);
        check(InstanceFile::from_json(&file.to_json()).as_ref() == Ok(&file), "instance".into());
    }
    let example = TilingInstance::fixed(
        wangtile::fixtures::example_tile_set(),
        Some(wangtile::fixtures::example_seed()),
        3,
        3,
    )
    .unwrap();
    for seq in [PlayerSequence::all_e(), PlayerSequence::alternating()] {
        if let Some(s) = solve_game(&example, &seq, 3, &GameOptions::default()).unwrap().strategy {
            let json = serde_json::to_string(&s).unwrap();
            check(serde_json::from_str::<Strategy>(&json).ok().as_ref() == Some(&s), "strategy".into());
        }
    }
    count
}

fn render_is_deterministic(bad: &mut Vec<String>) {
    let tm = by_name("bba-walk").unwrap().machine;
    let input = tm.parse_word("bba").unwrap();
    let run = simulate(&tm, &input, 10, 7).unwrap();
    let c = compile_tileset(&tm, &input, 7).unwrap();
    let bba = Tiling::from_rows(trace_to_rows(&c, &run.trace).unwrap()).unwrap();
    for t in [wangtile::fixtures::example_solution(), bba.clone()] {
        for format in [Format::Ascii, Format::Svg] {
            let a = render(&t, &RenderSpec::auto(&t, format, 40));
            let b = render(&t.clone(), &RenderSpec::auto(&t, format, 40));
            if a != b {
                bad.push(format!("{format:?} render differs between calls"));
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bba.json");
    std::fs::write(&path, serde_json::to_string(&bba).unwrap()).unwrap();
    let out = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_wangtile"))
            .args(["render", "--format", "svg"])
            .arg(&path)
            .output()
            .unwrap()
            .stdout
    };
    let first = out();
    if first.is_empty() || first != out() {
        bad.push("svg differs between processes".into());
    }
}

fn criterion_8() -> Check {
    let mut bad = Vec::new();
    let count = round_trips(&mut bad);
    render_is_deterministic(&mut bad);
    fail_if(bad, format!("{count} round trips, renders byte-identical"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", 60, criterion_1),
        ("machine encoding", 60, criterion_2),
        ("arbitrary height", 120, criterion_3),
        ("determinism", 60, criterion_4),
        ("width-1 reductions", 30, criterion_5),
        ("games", 120, criterion_6),
        ("first-order sentences", 10, criterion_7),
        ("round trips", 30, criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        let result = match result {
            Ok(s) if secs > limit as f64 => Err(format!("over the {limit}s limit; {s}")),
            r => r,
        };
        match result {
            Ok(s) => println!("criterion {} ({name}): PASS in {secs:.2}s; {s}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {secs:.2}s; {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
