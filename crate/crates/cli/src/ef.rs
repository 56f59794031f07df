use std::io::{BufRead, Write};

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use folab_core::game::{
    crosscheck_ehrenfeucht, solve_capped, GameState, Side, Solver, StrategyConfig, StrategyContext, Winner,
};
use folab_core::graph::Graph;
use folab_core::logic::{parse_sentence, random_sentence, Formula};
use folab_core::pairs::Alpha;

use crate::args::{EfCrosscheckArgs, EfPlayArgs, EfSolveArgs, Engine, Format, Role};
use crate::commands::{load_graph, read};
use crate::output::Sink;
use crate::UsageError;

fn winner_name(w: Winner) -> &'static str {
    match w {
        Winner::DuplicatorWins => "duplicator",
        Winner::SpoilerWins => "spoiler",
    }
}

fn board_name(side: Side) -> &'static str {
    match side {
        Side::G => "g",
        Side::H => "h",
    }
}

#[derive(Serialize)]
struct SolveRow {
    k: usize,
    winner: &'static str,
}

pub fn solve_cmd(args: &EfSolveArgs, sink: &Sink) -> Result<()> {
    let g = load_graph(&args.g)?;
    let h = load_graph(&args.h)?;
    let w = solve_capped(&g, &h, args.k, args.guard)?;
    sink.emit(
        "ef solve",
        Format::Text,
        &[SolveRow {
            k: args.k,
            winner: winner_name(w),
        }],
    )
}

/// Parses `pick <g|h> <vertex>`.
fn parse_pick(line: &str) -> std::result::Result<(Side, usize), String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    match words.as_slice() {
        ["pick", board, v] => {
            let side = match *board {
                "g" | "G" => Side::G,
                "h" | "H" => Side::H,
                other => return Err(format!("unknown graph `{other}`, use g or h")),
            };
            let v = v.parse().map_err(|_| format!("`{v}` is not a vertex number"))?;
            Ok((side, v))
        }
        _ => Err("expected `pick <g|h> <vertex>`".into()),
    }
}

enum Duplicator {
    Solver,
    Script(Box<StrategyContext>),
}

/// Runs one interactive game. The human's moves are read from `input`; all
/// prompts and replies go to `output`.
#[allow(clippy::too_many_arguments)]
pub fn play<R: BufRead, W: Write>(
    g: &Graph,
    h: &Graph,
    k: usize,
    role: Role,
    engine: Engine,
    alpha: Option<Alpha>,
    guard: u64,
    input: &mut R,
    output: &mut W,
) -> Result<Winner> {
    let mut solver = Solver::with_guard(g, h, guard);
    let mut duplicator = match (role, engine) {
        (Role::Spoiler, Engine::Script) => {
            let Some(alpha) = alpha else {
                return Err(UsageError("the scripted engine needs --alpha".into()).into());
            };
            let k32 = u32::try_from(k).map_err(|_| UsageError("k too large".into()))?;
            Duplicator::Script(Box::new(StrategyContext::new(StrategyConfig::new(k32, alpha))?))
        }
        (Role::Duplicator, Engine::Script) => {
            return Err(UsageError("the scripted engine only plays Duplicator; use --engine solver".into()).into())
        }
        _ => Duplicator::Solver,
    };
    for (name, board) in [("g", g), ("h", h)] {
        writeln!(output, "graph {name} ({} vertices)", board.vertex_count())?;
        for row in board.adjacency_rows() {
            writeln!(output, "  {row}")?;
        }
    }
    let mut state = GameState::new(g, h, k);
    let mut lines = input.lines();
    let mut next_pick = |output: &mut W, prompt: &str| -> Result<(Side, usize)> {
        loop {
            writeln!(output, "{prompt}")?;
            output.flush()?;
            let Some(line) = lines.next() else {
                bail!(folab_core::Error::Domain("input ended before the game finished".into()));
            };
            let line = line?;
            match parse_pick(line.trim()) {
                Ok(p) => return Ok(p),
                Err(msg) => writeln!(output, "invalid: {msg}")?,
            }
        }
    };
    while !state.is_over() {
        let round = state.rounds_played() + 1;
        let rounds_after = k - round;
        match role {
            Role::Spoiler => {
                loop {
                    let (side, v) = next_pick(output, &format!("round {round}: pick <graph> <vertex>"))?;
                    match state.spoiler_move(side, v) {
                        Ok(()) => break,
                        Err(e) => writeln!(output, "invalid: {e}")?,
                    }
                }
                if state.is_over() {
                    break;
                }
                let (side, x) = state.pending().expect("Spoiler just moved");
                let y = match &mut duplicator {
                    Duplicator::Solver => solver.best_reply(state.picks(), side, x, rounds_after)?.0,
                    Duplicator::Script(ctx) => ctx.duplicator_move(&state, &mut solver)?,
                };
                state.duplicator_move(y)?;
                writeln!(output, "reply {} {y}", board_name(side.other()))?;
            }
            Role::Duplicator => {
                let (side, x, _) = solver.best_spoiler_move(state.picks(), k - state.rounds_played())?;
                state.spoiler_move(side, x)?;
                writeln!(output, "spoiler picks {} {x}", board_name(side))?;
                if state.is_over() {
                    break;
                }
                loop {
                    let (reply_side, y) = next_pick(
                        output,
                        &format!("round {round}: pick {} <vertex>", board_name(side.other())),
                    )?;
                    if reply_side != side.other() {
                        writeln!(output, "invalid: reply on graph {}", board_name(side.other()))?;
                        continue;
                    }
                    match state.duplicator_move(y) {
                        Ok(()) => break,
                        Err(e) => writeln!(output, "invalid: {e}")?,
                    }
                }
            }
        }
    }
    let w = state.winner().expect("finished game");
    writeln!(output, "winner {}", winner_name(w))?;
    Ok(w)
}

pub fn play_cmd(args: &EfPlayArgs) -> Result<()> {
    let g = load_graph(&args.g)?;
    let h = load_graph(&args.h)?;
    let alpha = args.alpha.map(Alpha::new).transpose()?;
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    play(
        &g,
        &h,
        args.k,
        args.side,
        args.engine,
        alpha,
        args.guard,
        &mut stdin.lock(),
        &mut stdout.lock(),
    )?;
    Ok(())
}

fn random_graph(rng: &mut ChaCha8Rng, max_v: usize) -> Graph {
    let n = rng.gen_range(1..=max_v);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::new(n, edges).expect("valid random edges")
}

/// Reads sentences, one per line, skipping blanks and `#` comments.
pub fn load_battery(text: &str) -> folab_core::Result<Vec<Formula>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_sentence)
        .collect()
}

#[derive(Serialize)]
struct CrosscheckRow {
    pair: usize,
    g_vertices: usize,
    g_edges: usize,
    h_vertices: usize,
    h_edges: usize,
    winner: &'static str,
    distinguishing: usize,
    violations: usize,
}

pub fn crosscheck_cmd(args: &EfCrosscheckArgs, seed: u64, sink: &Sink) -> Result<()> {
    if args.max_v == 0 {
        return Err(UsageError("--max-v must be positive".into()).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let battery = match &args.battery {
        Some(path) => load_battery(&read(path)?)?,
        None => (0..args.sentences)
            .map(|_| random_sentence(&mut rng, args.depth))
            .collect(),
    };
    let pairs: Vec<(Graph, Graph)> = (0..args.pairs)
        .map(|_| (random_graph(&mut rng, args.max_v), random_graph(&mut rng, args.max_v)))
        .collect();
    let reports = pairs
        .par_iter()
        .map(|(g, h)| crosscheck_ehrenfeucht(g, h, args.depth, &battery))
        .collect::<folab_core::Result<Vec<_>>>()?;
    let rows: Vec<CrosscheckRow> = pairs
        .iter()
        .zip(&reports)
        .enumerate()
        .map(|(i, ((g, h), r))| CrosscheckRow {
            pair: i,
            g_vertices: g.vertex_count(),
            g_edges: g.edge_count(),
            h_vertices: h.vertex_count(),
            h_edges: h.edge_count(),
            winner: winner_name(r.winner),
            distinguishing: r.distinguishing,
            violations: r.violations.len(),
        })
        .collect();
    sink.emit("ef crosscheck", Format::Csv, &rows)?;
    let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
    if violations > 0 {
        bail!("{violations} crosscheck violations");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pick_lines_parse() {
        assert_eq!(parse_pick("pick g 3"), Ok((Side::G, 3)));
        assert_eq!(parse_pick("pick H 0"), Ok((Side::H, 0)));
        assert!(parse_pick("pick x 1").is_err());
        assert!(parse_pick("pick g -1").is_err());
        assert!(parse_pick("hello").is_err());
    }

    #[test]
    fn spoiler_beats_a_path_with_a_triangle() {
        let g = Graph::complete(3);
        let h = Graph::path(3);
        let mut out = Vec::new();
        // The human duplicator answers the engine's first pick and then
        // cannot keep the position.
        let w = play(
            &g,
            &h,
            2,
            Role::Duplicator,
            Engine::Solver,
            None,
            1_000_000,
            &mut format!(
                "pick h 9\n{}",
                "pick g 0\npick g 1\npick g 2\npick h 0\npick h 1\npick h 2\n".repeat(2)
            )
            .as_bytes(),
            &mut out,
        )
        .unwrap();
        assert_eq!(w, Winner::SpoilerWins);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("spoiler picks"));
        assert!(text.ends_with("winner spoiler\n"));
    }

    #[test]
    fn engine_duplicator_mirrors_on_equal_boards() {
        let g = Graph::cycle(5).unwrap();
        let mut out = Vec::new();
        let w = play(
            &g,
            &g,
            3,
            Role::Spoiler,
            Engine::Solver,
            None,
            1_000_000,
            &mut "nonsense\npick g 0\npick h 2\npick g 7\npick g 4\n".as_bytes(),
            &mut out,
        )
        .unwrap();
        assert_eq!(w, Winner::DuplicatorWins);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("invalid: expected"));
        assert!(text.contains("invalid: "));
    }
}
