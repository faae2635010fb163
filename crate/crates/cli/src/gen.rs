//! Instance generators over a fixed benchmark tile set.
//!
//! Every family uses the nine-tile 3x3 example set and its seed. Ladder
//! heights grow as `exp_k(n)`; anything past `k = 1` with tiny `n` is only
//! meant to be written out, not solved.

use wangtile::fixtures::{example_seed, example_tile_set};
use wangtile::game::PlayerSequence;
use wangtile::solve::expo;
use wangtile::{Height, Result, TilingInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// n x n rectangle.
    SquareN,
    /// exp_k(n) rows of width n.
    ExpLadder,
    /// n rows of width 1.
    LineN,
    /// n x (n(2k-1)) rectangle with the sequence E^n (A^n E^n)^(k-1).
    GameAlt,
}

pub struct Generated {
    pub instance: TilingInstance,
    pub seq: Option<PlayerSequence>,
}

pub fn gen_instance(family: Family, n: u64, k: u32) -> Result<Generated> {
    let set = example_tile_set();
    let seed = Some(example_seed());
    let width = n as usize;
    let (instance, seq) = match family {
        Family::SquareN => (TilingInstance::new(n, set, seed, Height::Fixed(width), width)?, None),
        Family::ExpLadder => {
            let h = expo(k, n)?;
            let h = usize::try_from(h).map_err(|_| wangtile::Error::Overflow {
                what: format!("exp_{k}({n})"),
            })?;
            (TilingInstance::new(n, set, seed, Height::Fixed(h), width)?, None)
        }
        Family::LineN => (TilingInstance::new(n, set, seed, Height::Fixed(width), 1)?, None),
        Family::GameAlt => {
            let k = k.max(1);
            let text = if k == 1 {
                format!("E^{n}")
            } else {
                format!("E^{n}(A^{n}E^{n})^{}", k - 1)
            };
            let seq: PlayerSequence = text.parse()?;
            let h = width * (2 * k as usize - 1);
            (TilingInstance::new(n, set, seed, Height::Fixed(h), width)?, Some(seq))
        }
    };
    Ok(Generated { instance, seq })
}
