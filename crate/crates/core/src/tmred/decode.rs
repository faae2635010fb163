//! Reading runs off tilings and writing runs as tilings.

use super::compile::{CompiledTm, Palette};
use super::machine::Move;
use super::sim::Config;
use super::TmredError;
use crate::tile::TileType;
use crate::tiling::{validate_tiling, Tiling};

/// Configurations shown by the rows of a tiling, step 0 first. A closing row
/// with white bottoms is accepted only as the last row.
pub fn tiling_to_trace(compiled: &CompiledTm, tiling: &Tiling) -> Result<Vec<Config>, TmredError> {
    let tm = &compiled.machine;
    let mut trace = Vec::new();
    for row in 1..=tiling.height() {
        let cells = tiling.row(row);
        if cells.iter().all(|t| t.bottom.is_white()) {
            if row != tiling.height() || row == 1 {
                return Err(TmredError::MisplacedClosure { row });
            }
            break;
        }
        let primed = row % 2 == 1;
        let mut tape = Vec::with_capacity(cells.len());
        let mut heads = Vec::new();
        for (i, t) in cells.iter().enumerate() {
            let col = i + 1;
            let cell = compiled
                .decode_color(&t.bottom)
                .ok_or(TmredError::Undecodable { row, col })?;
            if cell.primed != primed {
                return Err(TmredError::PrimeParity { row, col });
            }
            if let Some(q) = cell.state {
                heads.push((col, q));
            }
            tape.push(cell.symbol);
        }
        let (head, state) = match heads.as_slice() {
            [] => return Err(TmredError::NoHead { row }),
            [h] => *h,
            _ => {
                return Err(TmredError::MultipleHeads {
                    row,
                    cols: heads.iter().map(|h| h.0).collect(),
                })
            }
        };
        debug_assert_eq!(tm.is_primed(state), primed);
        trace.push(Config { tape, head, state });
    }
    Ok(trace)
}

/// Rows showing `trace`, without a closing row.
pub fn trace_to_rows(compiled: &CompiledTm, trace: &[Config]) -> Result<Vec<Vec<TileType>>, TmredError> {
    let tm = &compiled.machine;
    let width = compiled.width();
    let p = Palette::new(tm);
    let start = Config::initial(tm, &compiled.input, width)?;
    match trace.first() {
        Some(c) if *c == start => {}
        _ => return Err(TmredError::WrongStart),
    }
    let mut rows = vec![p.first_row(&compiled.input, width)];
    for (step, pair) in trace.windows(2).enumerate() {
        let (c, n) = (&pair[0], &pair[1]);
        let read = c.tape[c.head - 1];
        let action = tm.actions(c.state, read).iter().find(|&&(w, mv, q)| {
            let head = match mv {
                Move::L => c.head.checked_sub(1),
                Move::R => Some(c.head + 1),
                Move::S => Some(c.head),
            };
            let mut tape = c.tape.clone();
            tape[c.head - 1] = w;
            n.state == q && Some(n.head) == head && n.tape == tape
        });
        let Some(&(write, mv, to)) = action else {
            return Err(TmredError::NotAStep { step: step + 1 });
        };
        let top_primed = tm.is_primed(c.state);
        let row = (1..=width)
            .map(|j| {
                let s = c.tape[j - 1];
                if j == c.head {
                    p.transition(c.state, read, write, mv, to)
                } else if j == n.head && mv == Move::R {
                    p.receive_left(to, s)
                } else if j == n.head && mv == Move::L {
                    p.receive_right(to, s)
                } else {
                    p.copy(s, top_primed)
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// A full tiling of `height` rows showing `trace`. An accepting trace is
/// continued with the shuttle between the final state and its copy until
/// the row above the closing row.
pub fn trace_to_tiling(compiled: &CompiledTm, trace: &[Config], height: usize) -> Result<Tiling, TmredError> {
    let tm = &compiled.machine;
    let rows_needed = height.saturating_sub(1);
    if trace.len() > rows_needed {
        return Err(TmredError::TraceTooLong {
            steps: trace.len(),
            height,
        });
    }
    let mut full = trace.to_vec();
    while let Some(last) = full.last() {
        if full.len() >= rows_needed {
            break;
        }
        let finished = last.tape_erased()
            && (last.state == tm.final_state() || last.state == tm.final_copy());
        if !finished {
            break;
        }
        let toggled = if last.state == tm.final_state() {
            tm.final_copy()
        } else {
            tm.final_state()
        };
        let next = Config {
            state: toggled,
            ..last.clone()
        };
        full.push(next);
    }
    let closable = full.len() == rows_needed && full.last().is_some_and(|c| c.is_closable(tm));
    if !closable {
        return Err(TmredError::CannotClose { height });
    }
    let mut rows = trace_to_rows(compiled, &full)?;
    let last = full.last().expect("non-empty");
    let p = Palette::new(tm);
    rows.push((1..=compiled.width()).map(|j| p.closing(j == last.head)).collect());
    let tiling = Tiling::from_rows(rows)?;
    let report = validate_tiling(&compiled.instance.tile_set, &tiling, compiled.instance.seed.as_ref())?;
    assert!(report.is_valid(), "encoded run is not a tiling: {:?}", report.violations);
    Ok(tiling)
}
