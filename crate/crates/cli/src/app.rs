use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use wangtile::det::{boustrophedon_complete, detect_deterministic};
use wangtile::fo::{emit_formula, evaluate_formula, Formula};
use wangtile::game::{solve_game, verify_strategy, GameOptions, PlayerSequence, Verdict};
use wangtile::io::{parse_directed_graph, print_undirected_graph, InstanceFile};
use wangtile::solve::{solve, solve_seed_free, SolveOptions, DEFAULT_BUDGET};
use wangtile::tiling::brute_force_exists;
use wangtile::tmred::{check_normalized, compile_tileset, simulate, MachineDesc, NormalizedTm, Outcome};
use wangtile::width1::{graph_to_tiles, tiles_to_graph};
use wangtile::{Height, Tiling, TilingInstance};

use crate::gen::{gen_instance, Family};
use crate::render::{render, Format, RenderSpec};

/// Answer of a decision command, mapped to the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
            Status::Inconclusive => 2,
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Status::Yes
        } else {
            Status::No
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "wangtile", version, about = "Bounded Wang tiling workbench")]
pub struct Cli {
    /// Search budget (rows, states or assignments, depending on the command).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Use tile number i (0-based, in file order) as the seed.
    #[arg(long, global = true)]
    pub seed_index: Option<usize>,
    /// Machine-readable result on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Shape {
    /// Rows, or `*` for arbitrary height.
    #[arg(long)]
    pub height: Option<String>,
    #[arg(long)]
    pub width: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether an instance can be tiled.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        shape: Shape,
        /// Ignore the seed.
        #[arg(long)]
        seed_free: bool,
        /// Use exhaustive cell-by-cell search, trying heights up to this cap
        /// for arbitrary height.
        #[arg(long)]
        brute: Option<usize>,
        /// Write the witness tiling here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Look for a color partition making the tile set deterministic.
    DetCheck { tiles: PathBuf },
    /// Fill a rectangle of a deterministic set without backtracking.
    Complete {
        instance: PathBuf,
        #[command(flatten)]
        shape: Shape,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Solve the tiling game between E and A.
    Game {
        instance: PathBuf,
        #[command(flatten)]
        shape: Shape,
        /// Player sequence, e.g. `(EA)*` or `E^n(A^nE^n)`.
        #[arg(long)]
        seq: Option<String>,
        /// Value of `n` in the sequence.
        #[arg(long)]
        n: Option<u64>,
        /// Check the strategy against every adversary play.
        #[arg(long)]
        verify: bool,
        /// Write E's strategy here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Encode a normalized machine on an input as a tile set.
    CompileTm {
        machine: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long)]
        width: usize,
        /// Rows, or `*`; defaults to the width.
        #[arg(long)]
        height: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run a deterministic normalized machine.
    Simulate {
        machine: PathBuf,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 1000)]
        cells: usize,
    },
    /// Directed s-t reachability to a width-1 tiling instance.
    ReduceGraph {
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Rotation-closed width-1 instance to undirected reachability.
    ReduceTiles {
        instance: PathBuf,
        #[command(flatten)]
        shape: Shape,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Emit the first-order sentence for k x l tilings.
    Fo {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Pin the top-left cell to the seed.
        #[arg(long)]
        seed: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a sentence over the structure given by a tile set.
    FoEval { formula: PathBuf, tiles: PathBuf },
    /// Draw a tiling as text or SVG.
    Render {
        tiling: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long, default_value_t = 32)]
        cell_size: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Generate a benchmark instance.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_height(s: &str) -> Result<Height> {
    if s == "*" {
        return Ok(Height::Arbitrary);
    }
    let h = s
        .parse()
        .map_err(|_| anyhow!("height must be a number or `*`, got {s:?}"))?;
    Ok(Height::Fixed(h))
}

fn load_file(path: &Path, seed_index: Option<usize>) -> Result<InstanceFile> {
    let mut file = InstanceFile::from_json(&read(path)?)?;
    if let Some(i) = seed_index {
        let seed = file
            .tiles
            .get(i)
            .ok_or_else(|| anyhow!("--seed-index {i}: the file has {} tiles", file.tiles.len()))?;
        file.seed = Some(seed.clone());
    }
    Ok(file)
}

fn load_instance(path: &Path, shape: &Shape, seed_index: Option<usize>) -> Result<(InstanceFile, TilingInstance)> {
    let file = load_file(path, seed_index)?;
    let height = shape.height.as_deref().map(parse_height).transpose()?;
    let inst = file.to_instance(height, shape.width)?;
    Ok((file, inst))
}

fn load_machine(path: &Path) -> Result<NormalizedTm> {
    let desc: MachineDesc = read(path)?.parse()?;
    check_normalized(&desc).map_err(|v| {
        let lines: Vec<String> = v.iter().map(|x| format!("  {x}")).collect();
        anyhow!("machine is not normalized:\n{}", lines.join("\n"))
    })
}

fn tiling_json(t: &Tiling) -> String {
    serde_json::to_string_pretty(t).expect("plain data serializes") + "\n"
}

fn say(json_mode: bool, text: &str, value: serde_json::Value) {
    if json_mode {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

/// Run a parsed command line.
pub fn execute(cli: &Cli) -> Result<Status> {
    let js = cli.json;
    match &cli.command {
        Command::Solve {
            instance,
            shape,
            seed_free,
            brute,
            out,
        } => {
            let (_, inst) = load_instance(instance, shape, cli.seed_index)?;
            let (exists, witness, stats) = if let Some(cap) = brute {
                let inst = if *seed_free { inst.without_seed() } else { inst };
                let w = brute_force_exists(&inst, *cap, cli.budget)?;
                (w.is_some(), w, None)
            } else {
                let opts = SolveOptions { budget: cli.budget };
                let r = if *seed_free {
                    solve_seed_free(&inst, &opts)?
                } else {
                    solve(&inst, &opts)?
                };
                (r.exists, r.witness, Some(r.stats))
            };
            say(
                js,
                if exists { "yes" } else { "no" },
                json!({"exists": exists, "witness": witness, "stats": stats}),
            );
            if let (Some(p), Some(w)) = (out, &witness) {
                emit(Some(p), &tiling_json(w))?;
            }
            Ok(Status::from_bool(exists))
        }
        Command::DetCheck { tiles } => {
            let file = load_file(tiles, cli.seed_index)?;
            let cert = detect_deterministic(&file.tile_set());
            let text = if cert.deterministic {
                "deterministic"
            } else {
                "not deterministic"
            };
            say(js, text, serde_json::to_value(&cert)?);
            Ok(Status::from_bool(cert.deterministic))
        }
        Command::Complete { instance, shape, out } => {
            let (_, inst) = load_instance(instance, shape, cli.seed_index)?;
            let Height::Fixed(h) = inst.height else {
                bail!("completion needs a fixed height");
            };
            let seed = inst
                .seed
                .clone()
                .ok_or_else(|| anyhow!("completion needs a seed (file or --seed-index)"))?;
            let cert = detect_deterministic(&inst.tile_set);
            let done = boustrophedon_complete(&inst.tile_set, &cert, &seed, h, inst.width)?;
            let exists = done.result.exists;
            let text = match done.stuck_at {
                Some((r, c)) if !exists => format!("no (stuck at row {r}, column {c})"),
                _ if exists => "yes".to_string(),
                _ => "no".to_string(),
            };
            say(
                js,
                &text,
                json!({"exists": exists, "stuck_at": done.stuck_at, "cells_visited": done.cells_visited,
                       "witness": done.result.witness}),
            );
            if let (Some(p), Some(w)) = (out, &done.result.witness) {
                emit(Some(p), &tiling_json(w))?;
            }
            Ok(Status::from_bool(exists))
        }
        Command::Game {
            instance,
            shape,
            seq,
            n,
            verify,
            out,
        } => {
            let (file, inst) = load_instance(instance, shape, cli.seed_index)?;
            let seq: PlayerSequence = match (seq, &file.seq) {
                (Some(s), _) => s.parse()?,
                (None, Some(s)) => s.clone(),
                (None, None) => PlayerSequence::all_e(),
            };
            let n = n.unwrap_or(inst.n);
            let outcome = solve_game(&inst, &seq, n, &GameOptions { budget: cli.budget })?;
            let mut verdict = None;
            if let (true, Some(s)) = (*verify, &outcome.strategy) {
                verdict = Some(verify_strategy(&inst, &seq, n, s, cli.budget)?);
            }
            let mut text = if outcome.winning { "E wins" } else { "A wins" }.to_string();
            match &verdict {
                Some(Verdict::Pass) => text += "\nstrategy verified",
                Some(Verdict::Fail { reason, .. }) => text += &format!("\nstrategy FAILED: {reason:?}"),
                None => {}
            }
            say(
                js,
                &text,
                json!({"winning": outcome.winning, "stats": outcome.stats,
                       "verified": verdict.as_ref().map(Verdict::passed)}),
            );
            if let (Some(p), Some(s)) = (out, &outcome.strategy) {
                emit(Some(p), &(serde_json::to_string_pretty(s)? + "\n"))?;
            }
            let ok = outcome.winning && verdict.as_ref().is_none_or(Verdict::passed);
            Ok(Status::from_bool(ok))
        }
        Command::CompileTm {
            machine,
            input,
            width,
            height,
            out,
        } => {
            let tm = load_machine(machine)?;
            let word = tm.parse_word(input)?;
            let c = compile_tileset(&tm, &word, *width)?;
            let c = match height.as_deref().map(parse_height).transpose()? {
                Some(h) => c.with_height(h),
                None => c,
            };
            emit(out.as_deref(), &InstanceFile::from_instance(&c.instance).to_json())?;
            Ok(Status::Yes)
        }
        Command::Simulate {
            machine,
            input,
            steps,
            cells,
        } => {
            let tm = load_machine(machine)?;
            let word = tm.parse_word(input)?;
            let run = simulate(&tm, &word, *steps, *cells)?;
            let trace: Vec<_> = run.trace.iter().map(|c| c.named(&tm)).collect();
            if js {
                println!("{}", json!({"outcome": run.outcome, "trace": trace}));
            } else {
                for (i, c) in trace.iter().enumerate() {
                    let blank = tm.desc().blank.as_str();
                    let used = c.tape.iter().rposition(|s| s != blank).map_or(0, |i| i + 1);
                    let tape: Vec<String> = c.tape[..used.max(c.head)]
                        .iter()
                        .enumerate()
                        .map(|(j, s)| if j + 1 == c.head { format!("[{}]{s}", c.state) } else { s.clone() })
                        .collect();
                    println!("{i:>4}  {}", tape.join(" "));
                }
                println!("{:?}", run.outcome);
            }
            Ok(match run.outcome {
                Outcome::Accepted { .. } => Status::Yes,
                Outcome::Stuck { .. } => Status::No,
                Outcome::Running => Status::Inconclusive,
            })
        }
        Command::ReduceGraph { graph, out } => {
            let g = parse_directed_graph(&read(graph)?)?;
            emit(out.as_deref(), &InstanceFile::from_instance(&graph_to_tiles(&g)).to_json())?;
            Ok(Status::Yes)
        }
        Command::ReduceTiles { instance, shape, out } => {
            let (_, inst) = load_instance(instance, shape, cli.seed_index)?;
            let g = tiles_to_graph(&inst)?;
            emit(out.as_deref(), &print_undirected_graph(&g))?;
            Ok(Status::Yes)
        }
        Command::Fo { k, l, seed, out } => {
            let f = emit_formula(*k, *l, *seed)?;
            emit(out.as_deref(), &format!("{f}\n"))?;
            Ok(Status::Yes)
        }
        Command::FoEval { formula, tiles } => {
            let f: Formula = read(formula)?.trim().parse()?;
            let file = load_file(tiles, cli.seed_index)?;
            let holds = evaluate_formula(&f, &file.tile_set(), file.seed.as_ref());
            say(js, if holds { "true" } else { "false" }, json!({"holds": holds}));
            Ok(Status::from_bool(holds))
        }
        Command::Render {
            tiling,
            format,
            cell_size,
            out,
        } => {
            let t: Tiling = serde_json::from_str(&read(tiling)?).context("tiling JSON")?;
            let doc = render(&t, &RenderSpec::auto(&t, *format, *cell_size));
            emit(out.as_deref(), &doc)?;
            Ok(Status::Yes)
        }
        Command::Gen { family, n, k, out } => {
            let g = gen_instance(*family, *n, *k)?;
            let mut file = InstanceFile::from_instance(&g.instance);
            file.seq = g.seq;
            emit(out.as_deref(), &file.to_json())?;
            Ok(Status::Yes)
        }
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(s) => s.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
