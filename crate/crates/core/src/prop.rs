//! Propositional formulas with unbounded fan-in `∧`/`∨`, alternation depth
//! and exhaustive tautology checking.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::sexp::{read_one, Sexp, SyntaxError};

/// Bit `index` of the second-sort parameter `name`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PVar {
    pub name: String,
    pub index: usize,
}

impl PVar {
    pub fn new(name: &str, index: usize) -> Self {
        PVar { name: name.to_string(), index }
    }
}

impl fmt::Display for PVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropFormula {
    Const(bool),
    Var(PVar),
    And(Vec<PropFormula>),
    Or(Vec<PropFormula>),
    Not(Box<PropFormula>),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PropError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{found} variables exceed the cap of {cap}")]
    VarCap { found: usize, cap: usize },
}

pub const DEFAULT_VAR_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
    Not,
}

impl PropFormula {
    pub fn var(name: &str, index: usize) -> Self {
        PropFormula::Var(PVar::new(name, index))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: PropFormula) -> Self {
        PropFormula::Not(Box::new(p))
    }

    pub fn and2(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::And(vec![a, b])
    }

    pub fn or2(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Or(vec![a, b])
    }

    fn kind(&self) -> Option<Kind> {
        match self {
            PropFormula::And(_) => Some(Kind::And),
            PropFormula::Or(_) => Some(Kind::Or),
            PropFormula::Not(_) => Some(Kind::Not),
            _ => None,
        }
    }

    /// Alternation depth; a gate directly under a gate of the same kind adds
    /// nothing, so a big `∧` of literals has depth 2.
    pub fn depth(&self) -> usize {
        let children: &[PropFormula] = match self {
            PropFormula::Const(_) | PropFormula::Var(_) => return 0,
            PropFormula::And(xs) | PropFormula::Or(xs) => xs,
            PropFormula::Not(x) => std::slice::from_ref(&**x),
        };
        let kind = self.kind();
        1 + children
            .iter()
            .map(|c| {
                let d = c.depth();
                if c.kind() == kind {
                    d - 1
                } else {
                    d
                }
            })
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        match self {
            PropFormula::Const(_) | PropFormula::Var(_) => 1,
            PropFormula::And(xs) | PropFormula::Or(xs) => 1 + xs.iter().map(PropFormula::size).sum::<usize>(),
            PropFormula::Not(x) => 1 + x.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<PVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<PVar>) {
        match self {
            PropFormula::Const(_) => {}
            PropFormula::Var(v) => {
                out.insert(v.clone());
            }
            PropFormula::And(xs) | PropFormula::Or(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
            PropFormula::Not(x) => x.collect_vars(out),
        }
    }

    pub fn eval(&self, assign: &dyn Fn(&PVar) -> bool) -> bool {
        match self {
            PropFormula::Const(b) => *b,
            PropFormula::Var(v) => assign(v),
            PropFormula::And(xs) => xs.iter().all(|x| x.eval(assign)),
            PropFormula::Or(xs) => xs.iter().any(|x| x.eval(assign)),
            PropFormula::Not(x) => !x.eval(assign),
        }
    }

    /// Propagates constants upward; the result contains no `Const` unless
    /// it is one.
    pub fn simplify(&self) -> PropFormula {
        match self {
            PropFormula::Const(_) | PropFormula::Var(_) => self.clone(),
            PropFormula::Not(x) => match x.simplify() {
                PropFormula::Const(b) => PropFormula::Const(!b),
                y => PropFormula::not(y),
            },
            PropFormula::And(xs) | PropFormula::Or(xs) => {
                let is_and = matches!(self, PropFormula::And(_));
                let mut kept = Vec::with_capacity(xs.len());
                for x in xs {
                    match x.simplify() {
                        PropFormula::Const(b) if b == is_and => {}
                        PropFormula::Const(b) => return PropFormula::Const(b),
                        y => kept.push(y),
                    }
                }
                match kept.len() {
                    0 => PropFormula::Const(is_and),
                    1 => kept.pop().expect("one element"),
                    _ if is_and => PropFormula::And(kept),
                    _ => PropFormula::Or(kept),
                }
            }
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropFormula::Const(b) => write!(f, "(pc {})", *b as u8),
            PropFormula::Var(v) => write!(f, "(pv {} {})", v.name, v.index),
            PropFormula::And(xs) | PropFormula::Or(xs) => {
                f.write_str(if matches!(self, PropFormula::And(_)) { "(pand" } else { "(por" })?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                f.write_str(")")
            }
            PropFormula::Not(x) => write!(f, "(pnot {x})"),
        }
    }
}

pub fn parse_prop(text: &str) -> Result<PropFormula, PropError> {
    Ok(prop_from_sexp(&read_one(text)?)?)
}

pub fn prop_from_sexp(e: &Sexp) -> Result<PropFormula, SyntaxError> {
    let (items, p) = match e {
        Sexp::List(items, p) => (items, *p),
        Sexp::Atom(a, p) => return Err(SyntaxError::new(*p, format!("expected a propositional formula, found {a:?}"))),
    };
    let head = match items.first() {
        Some(Sexp::Atom(h, _)) => h.as_str(),
        _ => return Err(SyntaxError::new(p, "expected an operator")),
    };
    let args = &items[1..];
    let atom = |e: &Sexp| match e {
        Sexp::Atom(a, _) => Ok(a.clone()),
        other => Err(SyntaxError::new(other.pos(), "expected an atom")),
    };
    match head {
        "pc" if args.len() == 1 => match atom(&args[0])?.as_str() {
            "0" => Ok(PropFormula::Const(false)),
            "1" => Ok(PropFormula::Const(true)),
            _ => Err(SyntaxError::new(args[0].pos(), "constant must be 0 or 1")),
        },
        "pv" if args.len() == 2 => {
            let name = atom(&args[0])?;
            let index = atom(&args[1])?.parse().map_err(|_| SyntaxError::new(args[1].pos(), "bad variable index"))?;
            Ok(PropFormula::Var(PVar { name, index }))
        }
        "pnot" if args.len() == 1 => Ok(PropFormula::not(prop_from_sexp(&args[0])?)),
        "pand" => Ok(PropFormula::And(args.iter().map(prop_from_sexp).collect::<Result<_, _>>()?)),
        "por" => Ok(PropFormula::Or(args.iter().map(prop_from_sexp).collect::<Result<_, _>>()?)),
        _ => Err(SyntaxError::new(p, format!("bad propositional form {head:?}"))),
    }
}

pub fn prop_depth(p: &PropFormula) -> usize {
    p.depth()
}

/// Flattened formula evaluated 64 assignments at a time.
struct Compiled {
    ops: Vec<Op>,
    nvars: usize,
}

enum Op {
    Const(bool),
    Var(usize),
    And(usize),
    Or(usize),
    Not,
}

impl Compiled {
    fn new(p: &PropFormula) -> Self {
        let index: HashMap<PVar, usize> = p.vars().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut ops = Vec::new();
        Self::emit(p, &index, &mut ops);
        Compiled { ops, nvars: index.len() }
    }

    fn emit(p: &PropFormula, index: &HashMap<PVar, usize>, ops: &mut Vec<Op>) {
        match p {
            PropFormula::Const(b) => ops.push(Op::Const(*b)),
            PropFormula::Var(v) => ops.push(Op::Var(index[v])),
            PropFormula::And(xs) | PropFormula::Or(xs) => {
                xs.iter().for_each(|x| Self::emit(x, index, ops));
                ops.push(if matches!(p, PropFormula::And(_)) { Op::And(xs.len()) } else { Op::Or(xs.len()) });
            }
            PropFormula::Not(x) => {
                Self::emit(x, index, ops);
                ops.push(Op::Not);
            }
        }
    }

    /// Truth values under assignments `base .. base+64`, bit `t` for
    /// assignment `base + t`; variable `i` takes bit `i` of the assignment.
    fn eval_block(&self, base: u64, stack: &mut Vec<u64>) -> u64 {
        const LOW: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Const(b) => stack.push(if b { !0 } else { 0 }),
                Op::Var(i) => stack.push(if i < 6 {
                    LOW[i]
                } else if (base >> i) & 1 == 1 {
                    !0
                } else {
                    0
                }),
                Op::And(n) => {
                    let at = stack.len() - n;
                    let v = stack.drain(at..).fold(!0, |a, b| a & b);
                    stack.push(v);
                }
                Op::Or(n) => {
                    let at = stack.len() - n;
                    let v = stack.drain(at..).fold(0, |a, b| a | b);
                    stack.push(v);
                }
                Op::Not => {
                    let v = stack.pop().unwrap();
                    stack.push(!v);
                }
            }
        }
        stack.pop().unwrap()
    }

    fn valid_mask(&self) -> u64 {
        if self.nvars >= 6 {
            !0
        } else {
            (1u64 << (1u32 << self.nvars)) - 1
        }
    }

    fn blocks(&self) -> u64 {
        1u64 << self.nvars.saturating_sub(6)
    }
}

/// True iff every assignment satisfies `p`; refuses formulas with more than
/// `cap` variables.
pub fn taut_check_capped(p: &PropFormula, cap: usize) -> Result<bool, PropError> {
    let c = Compiled::new(p);
    if c.nvars > cap {
        return Err(PropError::VarCap { found: c.nvars, cap });
    }
    let mask = c.valid_mask();
    let block_ok = |blk: u64| {
        let mut stack = Vec::new();
        c.eval_block(blk << 6, &mut stack) & mask == mask
    };
    Ok(crate::par::all(c.blocks(), block_ok))
}

pub fn taut_check(p: &PropFormula) -> Result<bool, PropError> {
    taut_check_capped(p, DEFAULT_VAR_CAP)
}

/// Some satisfying assignment, by exhaustive search.
pub fn brute_sat(p: &PropFormula, cap: usize) -> Result<Option<Vec<(PVar, bool)>>, PropError> {
    let c = Compiled::new(p);
    if c.nvars > cap {
        return Err(PropError::VarCap { found: c.nvars, cap });
    }
    let vars: Vec<PVar> = p.vars().into_iter().collect();
    let mask = c.valid_mask();
    let mut stack = Vec::new();
    for blk in 0..c.blocks() {
        let hits = c.eval_block(blk << 6, &mut stack) & mask;
        if hits != 0 {
            let a = (blk << 6) | hits.trailing_zeros() as u64;
            return Ok(Some(vars.into_iter().enumerate().map(|(i, v)| (v, (a >> i) & 1 == 1)).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> PropFormula {
        PropFormula::var("X", i)
    }

    #[test]
    fn depth_examples() {
        let lits = PropFormula::And(vec![x(0), PropFormula::not(x(1)), x(2)]);
        assert_eq!(lits.depth(), 2);
        let cnf = PropFormula::And(vec![PropFormula::Or(vec![x(0), PropFormula::not(x(1))]), PropFormula::Or(vec![x(2)])]);
        assert_eq!(cnf.depth(), 3);
        assert_eq!(PropFormula::And(vec![PropFormula::And(vec![x(0)]), x(1)]).depth(), 1);
        assert_eq!(x(0).depth(), 0);
    }

    #[test]
    fn taut_examples() {
        assert!(taut_check(&PropFormula::or2(x(0), PropFormula::not(x(0)))).unwrap());
        assert!(!taut_check(&PropFormula::and2(x(0), PropFormula::not(x(0)))).unwrap());
        assert!(taut_check(&PropFormula::Const(true)).unwrap());
        assert!(!taut_check(&PropFormula::Or(vec![])).unwrap());
        let wide = PropFormula::Or((0..21).map(x).collect());
        assert_eq!(taut_check(&wide), Err(PropError::VarCap { found: 21, cap: 20 }));
    }

    #[test]
    fn bit_parallel_matches_row_by_row() {
        // (x0 ∨ … ∨ x8) ∧ ¬(x3 ∧ x7) fails only on a few rows
        let f = PropFormula::and2(PropFormula::Or((0..9).map(x).collect()), PropFormula::not(PropFormula::and2(x(3), x(7))));
        let vars: Vec<PVar> = f.vars().into_iter().collect();
        let mut all = true;
        for a in 0u32..(1 << 9) {
            let v = f.eval(&|p: &PVar| (a >> vars.iter().position(|q| q == p).unwrap()) & 1 == 1);
            all &= v;
        }
        assert_eq!(taut_check(&f).unwrap(), all);
        let sat = brute_sat(&PropFormula::not(f.clone()), 20).unwrap().unwrap();
        assert!(!f.eval(&|p: &PVar| sat.iter().find(|(q, _)| q == p).unwrap().1));
    }

    #[test]
    fn sexp_roundtrip() {
        let f = PropFormula::And(vec![PropFormula::Const(true), PropFormula::not(x(3)), PropFormula::Or(vec![])]);
        let s = f.to_string();
        assert_eq!(s, "(pand (pc 1) (pnot (pv X 3)) (por))");
        assert_eq!(parse_prop(&s).unwrap(), f);
        assert!(parse_prop("(pv X)").is_err());
    }
}
