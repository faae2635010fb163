use proptest::prelude::*;

use wangtile::det::{detect_deterministic, partition_satisfies};
use wangtile::fo::{emit_formula, evaluate_formula};
use wangtile::game::{adversary_wins, resolve_sequence, solve_game, GameOptions, PlayerSequence};
use wangtile::io::InstanceFile;
use wangtile::solve::{solve, solve_fixed, SolveOptions};
use wangtile::tiling::{brute_force_exists, validate_tiling};
use wangtile::width1::{graph_to_tiles, solve_line, DirectedGraph};
use wangtile::{Height, TileSet, TileType, TilingInstance};

fn color() -> impl Strategy<Value = &'static str> {
    prop_oneof![3 => Just("white"), 2 => Just("a"), 2 => Just("b")]
}

fn tile() -> impl Strategy<Value = TileType> {
    (color(), color(), color(), color()).prop_map(|(l, t, r, b)| TileType::new(l, t, r, b))
}

/// A tile set, an optional seed drawn from it, and a small rectangle.
fn instance(max_tiles: usize, max_side: usize) -> impl Strategy<Value = TilingInstance> {
    (
        prop::collection::vec(tile(), 1..=max_tiles),
        any::<prop::sample::Index>(),
        any::<bool>(),
        1..=max_side,
        1..=max_side,
    )
        .prop_map(|(tiles, pick, seeded, h, w)| {
            let set = TileSet::new(tiles);
            let seed = seeded.then(|| set.tiles()[pick.index(set.len())].clone());
            TilingInstance::fixed(set, seed, h, w).unwrap()
        })
}

fn opts() -> SolveOptions {
    SolveOptions { budget: u64::MAX }
}

proptest! {
    #[test]
    fn solver_agrees_with_exhaustive_search(inst in instance(5, 4)) {
        let fast = solve_fixed(&inst, &opts()).unwrap();
        let slow = brute_force_exists(&inst, 0, u64::MAX).unwrap();
        prop_assert_eq!(fast.exists, slow.is_some());
        if let Some(w) = &fast.witness {
            let report = validate_tiling(&inst.tile_set, w, inst.seed.as_ref()).unwrap();
            prop_assert!(report.is_valid());
        }
    }

    #[test]
    fn transposing_swaps_the_sides(inst in instance(5, 4)) {
        let Height::Fixed(h) = inst.height else { unreachable!() };
        let set = TileSet::new(inst.tile_set.tiles().iter().map(TileType::transposed));
        let seed = inst.seed.as_ref().map(TileType::transposed);
        let flipped = TilingInstance::fixed(set, seed, inst.width, h).unwrap();
        let a = solve_fixed(&inst, &opts()).unwrap();
        let b = solve_fixed(&flipped, &opts()).unwrap();
        prop_assert_eq!(a.exists, b.exists);
        if let Some(w) = a.witness {
            let t = w.transposed();
            prop_assert!(validate_tiling(&flipped.tile_set, &t, flipped.seed.as_ref()).unwrap().is_valid());
        }
    }

    #[test]
    fn arbitrary_height_witness_is_minimal(inst in instance(4, 2)) {
        let arb = solve(&inst.with_height(Height::Arbitrary).unwrap(), &opts()).unwrap();
        if let Some(w) = arb.witness {
            for h in 1..w.height() {
                let shorter = inst.with_height(Height::Fixed(h)).unwrap();
                prop_assert!(!solve_fixed(&shorter, &opts()).unwrap().exists);
            }
            let exact = inst.with_height(Height::Fixed(w.height())).unwrap();
            prop_assert!(solve_fixed(&exact, &opts()).unwrap().exists);
        }
    }

    #[test]
    fn certificates_check_out(tiles in prop::collection::vec(tile(), 1..=5)) {
        let set = TileSet::new(tiles);
        let cert = detect_deterministic(&set);
        if let Some(p) = &cert.partition {
            prop_assert!(cert.deterministic && partition_satisfies(&set, p));
        } else {
            prop_assert!(!cert.deterministic);
        }
    }

    #[test]
    fn formula_matches_solver(inst in instance(4, 3)) {
        let Height::Fixed(h) = inst.height else { unreachable!() };
        let f = emit_formula(h, inst.width, inst.seed.is_some()).unwrap();
        let holds = evaluate_formula(&f, &inst.tile_set, inst.seed.as_ref());
        prop_assert_eq!(holds, solve_fixed(&inst, &opts()).unwrap().exists);
    }

    #[test]
    fn games_and_duals(inst in instance(3, 2)) {
        let g = GameOptions::default();
        let all_e = PlayerSequence::all_e();
        let ea = PlayerSequence::alternating();
        let e_alone = solve_game(&inst, &all_e, inst.n, &g).unwrap().winning;
        prop_assert_eq!(e_alone, solve_fixed(&inst, &opts()).unwrap().exists);
        let contested = solve_game(&inst, &ea, inst.n, &g).unwrap().winning;
        // handing rows to the adversary never helps E
        prop_assert!(!contested || e_alone);
        prop_assert_eq!(contested, !adversary_wins(&inst, &ea, inst.n, &g).unwrap());
        let adversary_first = solve_game(&inst, &ea.dual(), inst.n, &g).unwrap().winning;
        prop_assert!(!adversary_first || e_alone);
    }

    #[test]
    fn line_reduction_decides_reachability(
        n in 2usize..=6,
        edges in prop::collection::vec((0usize..6, 0usize..6), 0..12),
        t in 1usize..6,
    ) {
        let t = t % n;
        let t = if t == 0 { 1 } else { t };
        let name = |i: usize| format!("v{i}");
        let edges: Vec<_> = edges.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
        let g = DirectedGraph::new((0..n).map(name), edges.iter().map(|&(u, v)| (name(u), name(v))), name(0), name(t)).unwrap();
        let inst = graph_to_tiles(&g);
        prop_assert_eq!(solve_line(&inst.tile_set, inst.seed.as_ref().unwrap(), inst.height), g.reachable());
        prop_assert_eq!(solve(&inst, &opts()).unwrap().exists, g.reachable());
    }

    #[test]
    fn instance_files_round_trip(inst in instance(6, 5)) {
        let file = InstanceFile::from_instance(&inst);
        let back = InstanceFile::from_json(&file.to_json()).unwrap();
        prop_assert_eq!(back.to_instance(None, None).unwrap(), inst);
    }
}

#[test]
fn doubling_sequences_expand_to_blocks() {
    let seq: PlayerSequence = "(E^2^nA^2^n)*".parse().unwrap();
    for (n, block) in [(1u64, 2usize), (2, 4)] {
        let owners = resolve_sequence(&seq, n).unwrap();
        for row in 1..=4 * block {
            let e_turn = (row - 1) / block % 2 == 0;
            assert_eq!(owners.owner(row).unwrap() == wangtile::game::Player::E, e_turn, "n={n} row={row}");
        }
    }
}
