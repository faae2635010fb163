//! Tilings of a constant-size rectangle as first-order sentences.
//!
//! The structure has the tiles as universe, `H(x, y)` when `x` may sit left of
//! `y`, `V(x, y)` when `x` may sit above `y`, and the unary border predicates
//! `LW`, `RW`, `TW`, `BW` for white left, right, top and bottom sides.
//! `SEED(x)` holds for the seed tile only.
//!
//! S-expression syntax: `(exists (t1 t2) (and (H t1 t2) (LW t1) ...))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tile::{TileSet, TileType};

/// Variable `t{index}`; cells are numbered row-major from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    H(Var, Var),
    V(Var, Var),
    LeftWhite(Var),
    RightWhite(Var),
    TopWhite(Var),
    BottomWhite(Var),
    Seed(Var),
}

impl Atom {
    fn vars(&self) -> (Var, Option<Var>) {
        match *self {
            Atom::H(a, b) | Atom::V(a, b) => (a, Some(b)),
            Atom::LeftWhite(a)
            | Atom::RightWhite(a)
            | Atom::TopWhite(a)
            | Atom::BottomWhite(a)
            | Atom::Seed(a) => (a, None),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Atom::H(..) => "H",
            Atom::V(..) => "V",
            Atom::LeftWhite(_) => "LW",
            Atom::RightWhite(_) => "RW",
            Atom::TopWhite(_) => "TW",
            Atom::BottomWhite(_) => "BW",
            Atom::Seed(_) => "SEED",
        }
    }

    fn holds(&self, env: &[Option<&TileType>], seed: Option<&TileType>) -> Option<bool> {
        let get = |v: Var| env.get(v.0 as usize).copied().flatten();
        let (a, b) = self.vars();
        let x = get(a)?;
        let y = match b {
            Some(b) => Some(get(b)?),
            None => None,
        };
        Some(match (self, y) {
            (Atom::H(..), Some(y)) => x.right == y.left,
            (Atom::V(..), Some(y)) => x.bottom == y.top,
            (Atom::LeftWhite(_), _) => x.left.is_white(),
            (Atom::RightWhite(_), _) => x.right.is_white(),
            (Atom::TopWhite(_), _) => x.top.is_white(),
            (Atom::BottomWhite(_), _) => x.bottom.is_white(),
            (Atom::Seed(_), _) => seed == Some(x),
            _ => unreachable!("binary atoms have two variables"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Exists(Vec<Var>, Box<Formula>),
    And(Vec<Formula>),
    Atom(Atom),
}

impl Formula {
    /// Number of AST nodes, counting each quantified variable.
    pub fn size(&self) -> usize {
        match self {
            Formula::Exists(vs, body) => 1 + vs.len() + body.size(),
            Formula::And(parts) => 1 + parts.iter().map(Formula::size).sum::<usize>(),
            Formula::Atom(_) => 1,
        }
    }

    /// Every atom, in order of appearance.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::Exists(_, body) => body.collect_atoms(out),
            Formula::And(parts) => parts.iter().for_each(|p| p.collect_atoms(out)),
            Formula::Atom(a) => out.push(*a),
        }
    }
}

/// The sentence saying that a `k x l` rectangle can be tiled.
pub fn emit_formula(k: usize, l: usize, with_seed: bool) -> Result<Formula> {
    if k == 0 || l == 0 {
        return Err(Error::EmptyRectangle { height: k, width: l });
    }
    let var = |i: usize, j: usize| Var(((i - 1) * l + j) as u32);
    let mut atoms = Vec::new();
    for i in 1..=k {
        for j in 1..l {
            atoms.push(Atom::H(var(i, j), var(i, j + 1)));
        }
    }
    for i in 1..k {
        for j in 1..=l {
            atoms.push(Atom::V(var(i, j), var(i + 1, j)));
        }
    }
    for i in 1..=k {
        for j in 1..=l {
            let v = var(i, j);
            if j == 1 {
                atoms.push(Atom::LeftWhite(v));
            }
            if j == l {
                atoms.push(Atom::RightWhite(v));
            }
            if i == 1 {
                atoms.push(Atom::TopWhite(v));
            }
            if i == k {
                atoms.push(Atom::BottomWhite(v));
            }
        }
    }
    if with_seed {
        atoms.push(Atom::Seed(var(1, 1)));
    }
    let vars = (1..=(k * l) as u32).map(Var).collect();
    Ok(Formula::Exists(
        vars,
        Box::new(Formula::And(atoms.into_iter().map(Formula::Atom).collect())),
    ))
}

fn max_var(f: &Formula) -> u32 {
    match f {
        Formula::Exists(vs, body) => vs.iter().map(|v| v.0).max().unwrap_or(0).max(max_var(body)),
        Formula::And(parts) => parts.iter().map(max_var).max().unwrap_or(0),
        Formula::Atom(a) => {
            let (x, y) = a.vars();
            x.0.max(y.map_or(0, |y| y.0))
        }
    }
}

/// Model check `f` over the structure of `tile_set`. Without a seed the
/// `SEED` predicate is empty. Free variables make atoms false.
pub fn evaluate_formula(f: &Formula, tile_set: &TileSet, seed: Option<&TileType>) -> bool {
    let mut env = vec![None; max_var(f) as usize + 1];
    eval(f, tile_set, seed, &mut env)
}

fn eval<'t>(f: &Formula, set: &'t TileSet, seed: Option<&TileType>, env: &mut Vec<Option<&'t TileType>>) -> bool {
    match f {
        Formula::Atom(a) => a.holds(env, seed).unwrap_or(false),
        Formula::And(parts) => parts.iter().all(|p| eval(p, set, seed, env)),
        Formula::Exists(vars, body) => {
            let saved: Vec<_> = vars.iter().map(|v| env[v.0 as usize]).collect();
            for v in vars {
                env[v.0 as usize] = None;
            }
            let found = search(vars, body, set, seed, env);
            for (v, old) in vars.iter().zip(saved) {
                env[v.0 as usize] = old;
            }
            found
        }
    }
}

/// Assign `vars` one by one, dropping partial assignments that already
/// falsify a conjunct atom of `body`.
fn search<'t>(
    vars: &[Var],
    body: &Formula,
    set: &'t TileSet,
    seed: Option<&TileType>,
    env: &mut Vec<Option<&'t TileType>>,
) -> bool {
    let Some((v, rest)) = vars.split_first() else {
        return eval(body, set, seed, env);
    };
    for t in set.tiles() {
        env[v.0 as usize] = Some(t);
        let consistent = match body {
            Formula::And(parts) => parts.iter().all(|p| match p {
                Formula::Atom(a) => a.holds(env, seed) != Some(false),
                _ => true,
            }),
            Formula::Atom(a) => a.holds(env, seed) != Some(false),
            Formula::Exists(..) => true,
        };
        if consistent && search(rest, body, set, seed, env) {
            env[v.0 as usize] = None;
            return true;
        }
    }
    env[v.0 as usize] = None;
    false
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Exists(vs, body) => {
                f.write_str("(exists (")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ") {body})")
            }
            Formula::And(parts) => {
                f.write_str("(and")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                f.write_str(")")
            }
            Formula::Atom(a) => {
                let (x, y) = a.vars();
                match y {
                    Some(y) => write!(f, "({} {x} {y})", a.name()),
                    None => write!(f, "({} {x})", a.name()),
                }
            }
        }
    }
}

#[derive(Debug)]
enum Sexp {
    Word(String),
    List(Vec<Sexp>),
}

fn tokenize(src: &str) -> Vec<String> {
    src.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(String::from)
        .collect()
}

fn read(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let bad = |m: &str| Error::Invalid(format!("formula: {m}"));
    let tok = tokens.get(*pos).ok_or_else(|| bad("unexpected end"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(bad("unclosed list")),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read(tokens, pos)?),
                }
            }
        }
        ")" => Err(bad("unexpected ')'")),
        w => Ok(Sexp::Word(w.to_string())),
    }
}

fn to_var(s: &Sexp) -> Result<Var> {
    match s {
        Sexp::Word(w) => w
            .strip_prefix('t')
            .and_then(|n| n.parse().ok())
            .map(Var)
            .ok_or_else(|| Error::Invalid(format!("formula: bad variable {w:?}"))),
        Sexp::List(_) => Err(Error::Invalid("formula: expected a variable".into())),
    }
}

fn to_formula(s: &Sexp) -> Result<Formula> {
    let bad = |m: String| Error::Invalid(format!("formula: {m}"));
    let Sexp::List(items) = s else {
        return Err(bad(format!("expected a list, got {s:?}")));
    };
    let Some(Sexp::Word(head)) = items.first() else {
        return Err(bad("expected an operator".into()));
    };
    let args = &items[1..];
    match (head.as_str(), args) {
        ("exists", [Sexp::List(vs), body]) => Ok(Formula::Exists(
            vs.iter().map(to_var).collect::<Result<_>>()?,
            Box::new(to_formula(body)?),
        )),
        ("and", parts) => Ok(Formula::And(parts.iter().map(to_formula).collect::<Result<_>>()?)),
        ("H", [a, b]) => Ok(Formula::Atom(Atom::H(to_var(a)?, to_var(b)?))),
        ("V", [a, b]) => Ok(Formula::Atom(Atom::V(to_var(a)?, to_var(b)?))),
        ("LW", [a]) => Ok(Formula::Atom(Atom::LeftWhite(to_var(a)?))),
        ("RW", [a]) => Ok(Formula::Atom(Atom::RightWhite(to_var(a)?))),
        ("TW", [a]) => Ok(Formula::Atom(Atom::TopWhite(to_var(a)?))),
        ("BW", [a]) => Ok(Formula::Atom(Atom::BottomWhite(to_var(a)?))),
        ("SEED", [a]) => Ok(Formula::Atom(Atom::Seed(to_var(a)?))),
        (op, _) => Err(bad(format!("bad use of {op:?}"))),
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let tokens = tokenize(src);
        let mut pos = 0;
        let sexp = read(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Invalid("formula: trailing input".into()));
        }
        to_formula(&sexp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_seed, example_tile_set};

    #[test]
    fn two_by_two_core() {
        let f = emit_formula(2, 2, false).unwrap();
        let s = f.to_string();
        assert!(s.starts_with("(exists (t1 t2 t3 t4) (and (H t1 t2) (H t3 t4) (V t1 t3) (V t2 t4) "));
        assert_eq!(f.atoms().len(), 4 + 8);
    }

    #[test]
    fn one_by_one() {
        let f = emit_formula(1, 1, false).unwrap();
        assert_eq!(f.to_string(), "(exists (t1) (and (LW t1) (RW t1) (TW t1) (BW t1)))");
    }

    #[test]
    fn neighbor_counts() {
        for k in 1..=4 {
            for l in 1..=4 {
                let atoms = emit_formula(k, l, true).unwrap().atoms();
                let h = atoms.iter().filter(|a| matches!(a, Atom::H(..))).count();
                let v = atoms.iter().filter(|a| matches!(a, Atom::V(..))).count();
                assert_eq!((h, v), (k * (l - 1), l * (k - 1)));
                assert_eq!(atoms.len(), h + v + 2 * (k + l) + 1);
            }
        }
    }

    #[test]
    fn example_satisfies_three_by_three() {
        let f = emit_formula(3, 3, true).unwrap();
        assert!(evaluate_formula(&f, &example_tile_set(), Some(&example_seed())));
        assert!(!evaluate_formula(&emit_formula(2, 3, true).unwrap(), &example_tile_set(), Some(&example_seed())));
        assert!(!evaluate_formula(&f, &example_tile_set(), None));
        assert!(!evaluate_formula(&f, &TileSet::empty(), None));
    }

    #[test]
    fn text_round_trip() {
        for (k, l) in [(1, 1), (2, 3), (3, 2)] {
            let f = emit_formula(k, l, true).unwrap();
            assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
        }
        for bad in ["", "(and", "(H t1)", "(exists t1 (and))", "(and) x", "(Q t1)"] {
            assert!(bad.parse::<Formula>().is_err(), "{bad}");
        }
    }
}
