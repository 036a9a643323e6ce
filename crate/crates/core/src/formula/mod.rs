//! Two-sorted bounded formulas: number terms, string atoms and bounded
//! quantifiers of both sorts.
//!
//! Number quantifiers are inclusive (`exN x t f` reads `∃x ≤ t. f`); string
//! quantifiers bound the length (`exS X t f` reads `∃X (|X| ≤ t ∧ f)`).
//!
//! Besides the core language two abbreviations are accepted:
//! decimal numerals (closed `+`/`·` terms written compactly) and the atom
//! `(bit t u)`, "bit `t` of the binary expansion of `u` is 1", which is
//! Δ₀-definable over the number sort and lets number-coded sequences be read
//! without leaving the string-quantifier-free fragment.

mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

pub use parse::{parse_formula, parse_term, FormulaError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NumTerm {
    Zero,
    One,
    /// Numeral `>= 2`; use [`NumTerm::lit`] to build one.
    Lit(BigUint),
    Var(String),
    Plus(Box<NumTerm>, Box<NumTerm>),
    Times(Box<NumTerm>, Box<NumTerm>),
    Len(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    EqNum(NumTerm, NumTerm),
    Leq(NumTerm, NumTerm),
    EqStr(String, String),
    Memb(NumTerm, String),
    /// `(bit t u)`: bit `t` of the number `u`.
    Bit(NumTerm, NumTerm),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    ExN(String, NumTerm, Box<Formula>),
    AlN(String, NumTerm, Box<Formula>),
    ExS(String, NumTerm, Box<Formula>),
    AlS(String, NumTerm, Box<Formula>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum QuantClass {
    SigmaB(u32),
    PiB(u32),
}

impl QuantClass {
    pub fn level(self) -> u32 {
        match self {
            QuantClass::SigmaB(i) | QuantClass::PiB(i) => i,
        }
    }
}

impl fmt::Display for QuantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantClass::SigmaB(i) => write!(f, "SigmaB({i})"),
            QuantClass::PiB(i) => write!(f, "PiB({i})"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("substituting for {var} would capture {captured}")]
pub struct CaptureError {
    pub var: String,
    pub captured: String,
}

pub fn is_string_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

// ---------------------------------------------------------------------------
// construction helpers

impl NumTerm {
    pub fn lit(n: impl Into<BigUint>) -> NumTerm {
        let n = n.into();
        if n.is_zero() {
            NumTerm::Zero
        } else if n.is_one() {
            NumTerm::One
        } else {
            NumTerm::Lit(n)
        }
    }

    pub fn var(name: &str) -> NumTerm {
        NumTerm::Var(name.to_string())
    }

    pub fn len(name: &str) -> NumTerm {
        NumTerm::Len(name.to_string())
    }

    pub fn plus(a: NumTerm, b: NumTerm) -> NumTerm {
        NumTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: NumTerm, b: NumTerm) -> NumTerm {
        NumTerm::Times(Box::new(a), Box::new(b))
    }

    /// `self + c`, omitting the addition when `c = 0`.
    pub fn add_const(self, c: u64) -> NumTerm {
        if c == 0 {
            self
        } else {
            NumTerm::plus(self, NumTerm::lit(c))
        }
    }

    /// `self · c`, omitting the product when `c = 1`.
    pub fn mul_const(self, c: &BigUint) -> NumTerm {
        if c.is_one() {
            self
        } else {
            NumTerm::times(self, NumTerm::lit(c.clone()))
        }
    }

    /// Closed term value, if the term has no variables.
    pub fn const_value(&self) -> Option<BigUint> {
        Some(match self {
            NumTerm::Zero => BigUint::zero(),
            NumTerm::One => BigUint::one(),
            NumTerm::Lit(n) => n.clone(),
            NumTerm::Var(_) | NumTerm::Len(_) => return None,
            NumTerm::Plus(a, b) => a.const_value()? + b.const_value()?,
            NumTerm::Times(a, b) => a.const_value()? * b.const_value()?,
        })
    }

    pub fn size(&self) -> usize {
        match self {
            NumTerm::Zero | NumTerm::One | NumTerm::Lit(_) | NumTerm::Var(_) => 1,
            NumTerm::Len(_) => 2,
            NumTerm::Plus(a, b) | NumTerm::Times(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn collect_vars(&self, nums: &mut BTreeSet<String>, strs: &mut BTreeSet<String>) {
        match self {
            NumTerm::Zero | NumTerm::One | NumTerm::Lit(_) => {}
            NumTerm::Var(v) => {
                nums.insert(v.clone());
            }
            NumTerm::Len(s) => {
                strs.insert(s.clone());
            }
            NumTerm::Plus(a, b) | NumTerm::Times(a, b) => {
                a.collect_vars(nums, strs);
                b.collect_vars(nums, strs);
            }
        }
    }

    /// All variable names (both sorts) occurring in the term.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut nums = BTreeSet::new();
        let mut strs = BTreeSet::new();
        self.collect_vars(&mut nums, &mut strs);
        nums.extend(strs);
        nums
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            NumTerm::Zero | NumTerm::One | NumTerm::Lit(_) => false,
            NumTerm::Var(v) | NumTerm::Len(v) => v == name,
            NumTerm::Plus(a, b) | NumTerm::Times(a, b) => a.mentions(name) || b.mentions(name),
        }
    }

    fn subst(&self, var: &str, t: &NumTerm) -> NumTerm {
        match self {
            NumTerm::Var(v) if v == var => t.clone(),
            NumTerm::Plus(a, b) => NumTerm::plus(a.subst(var, t), b.subst(var, t)),
            NumTerm::Times(a, b) => NumTerm::times(a.subst(var, t), b.subst(var, t)),
            other => other.clone(),
        }
    }

    fn rename(&self, map: &HashMap<String, String>) -> NumTerm {
        match self {
            NumTerm::Var(v) => NumTerm::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            NumTerm::Len(v) => NumTerm::Len(map.get(v).cloned().unwrap_or_else(|| v.clone())),
            NumTerm::Plus(a, b) => NumTerm::plus(a.rename(map), b.rename(map)),
            NumTerm::Times(a, b) => NumTerm::times(a.rename(map), b.rename(map)),
            other => other.clone(),
        }
    }
}

impl Formula {
    pub fn truth() -> Formula {
        Formula::Leq(NumTerm::Zero, NumTerm::Zero)
    }

    pub fn falsity() -> Formula {
        Formula::Leq(NumTerm::One, NumTerm::Zero)
    }

    pub fn eq(a: NumTerm, b: NumTerm) -> Formula {
        Formula::EqNum(a, b)
    }

    pub fn leq(a: NumTerm, b: NumTerm) -> Formula {
        Formula::Leq(a, b)
    }

    /// `a < b`, written `a + 1 ≤ b`.
    pub fn lt(a: NumTerm, b: NumTerm) -> Formula {
        Formula::Leq(a.add_const(1), b)
    }

    pub fn memb(t: NumTerm, s: &str) -> Formula {
        Formula::Memb(t, s.to_string())
    }

    pub fn bit(pos: NumTerm, num: NumTerm) -> Formula {
        Formula::Bit(pos, num)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn ex_n(x: &str, bound: NumTerm, body: Formula) -> Formula {
        Formula::ExN(x.to_string(), bound, Box::new(body))
    }

    pub fn al_n(x: &str, bound: NumTerm, body: Formula) -> Formula {
        Formula::AlN(x.to_string(), bound, Box::new(body))
    }

    pub fn ex_s(x: &str, bound: NumTerm, body: Formula) -> Formula {
        Formula::ExS(x.to_string(), bound, Box::new(body))
    }

    pub fn al_s(x: &str, bound: NumTerm, body: Formula) -> Formula {
        Formula::AlS(x.to_string(), bound, Box::new(body))
    }

    /// Balanced conjunction; empty input gives `0 ≤ 0`.
    pub fn and_all(items: Vec<Formula>) -> Formula {
        Self::balanced(items, Formula::and, Formula::truth)
    }

    /// Balanced disjunction; empty input gives `1 ≤ 0`.
    pub fn or_all(items: Vec<Formula>) -> Formula {
        Self::balanced(items, Formula::or, Formula::falsity)
    }

    fn balanced(
        mut items: Vec<Formula>,
        join: fn(Formula, Formula) -> Formula,
        empty: fn() -> Formula,
    ) -> Formula {
        match items.len() {
            0 => empty(),
            1 => items.pop().unwrap(),
            n => {
                let right = items.split_off(n / 2);
                join(Self::balanced(items, join, empty), Self::balanced(right, join, empty))
            }
        }
    }

    /// Node count of the AST; names and constants are leaves.
    pub fn size(&self) -> usize {
        match self {
            Formula::EqNum(a, b) | Formula::Leq(a, b) | Formula::Bit(a, b) => 1 + a.size() + b.size(),
            Formula::EqStr(_, _) => 3,
            Formula::Memb(t, _) => 2 + t.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Not(a) => 1 + a.size(),
            Formula::ExN(_, t, b) | Formula::AlN(_, t, b) | Formula::ExS(_, t, b) | Formula::AlS(_, t, b) => {
                2 + t.size() + b.size()
            }
        }
    }

    /// Syntactic class by counting string-quantifier alternations; number
    /// quantifiers are transparent.
    pub fn classify(&self) -> QuantClass {
        let (sigma, pi) = self.sigma_pi();
        if sigma == 0 {
            QuantClass::SigmaB(0)
        } else if sigma <= pi {
            QuantClass::SigmaB(sigma)
        } else {
            QuantClass::PiB(pi)
        }
    }

    /// Least `(i, j)` with the formula in Σ^B_i and in Π^B_j.
    fn sigma_pi(&self) -> (u32, u32) {
        match self {
            Formula::EqNum(..) | Formula::Leq(..) | Formula::EqStr(..) | Formula::Memb(..) | Formula::Bit(..) => {
                (0, 0)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (sa, pa) = a.sigma_pi();
                let (sb, pb) = b.sigma_pi();
                (sa.max(sb), pa.max(pb))
            }
            Formula::Imp(a, b) => {
                let (sa, pa) = a.sigma_pi();
                let (sb, pb) = b.sigma_pi();
                (pa.max(sb), sa.max(pb))
            }
            Formula::Not(a) => {
                let (s, p) = a.sigma_pi();
                (p, s)
            }
            Formula::ExN(_, _, b) | Formula::AlN(_, _, b) => b.sigma_pi(),
            Formula::ExS(_, _, b) => {
                let (s, p) = b.sigma_pi();
                let sigma = s.max(1).min(p + 1);
                (sigma, sigma + 1)
            }
            Formula::AlS(_, _, b) => {
                let (s, p) = b.sigma_pi();
                let pi = p.max(1).min(s + 1);
                (pi + 1, pi)
            }
        }
    }

    pub fn is_sigma0(&self) -> bool {
        self.classify() == QuantClass::SigmaB(0)
    }

    /// Alternation depth: connectives and quantifiers on a root-to-leaf path,
    /// with runs of the same kind counted once. `∃` shares a kind with `∨`
    /// and `∀` with `∧` (a bounded quantifier is an unbounded fan-in gate).
    pub fn depth(&self) -> usize {
        self.depth_kind().0
    }

    fn depth_kind(&self) -> (usize, Option<Kind>) {
        let node = |kind: Kind, children: &[&Formula]| {
            let d = children
                .iter()
                .map(|c| {
                    let (d, k) = c.depth_kind();
                    if k == Some(kind) {
                        d - 1
                    } else {
                        d
                    }
                })
                .max()
                .unwrap_or(0);
            (d + 1, Some(kind))
        };
        match self {
            Formula::EqNum(..) | Formula::Leq(..) | Formula::EqStr(..) | Formula::Memb(..) | Formula::Bit(..) => {
                (0, None)
            }
            Formula::And(a, b) => node(Kind::And, &[a, b]),
            Formula::Or(a, b) => node(Kind::Or, &[a, b]),
            Formula::Imp(a, b) => node(Kind::Imp, &[a, b]),
            Formula::Not(a) => node(Kind::Not, &[a]),
            Formula::ExN(_, _, b) | Formula::ExS(_, _, b) => node(Kind::Or, &[b]),
            Formula::AlN(_, _, b) | Formula::AlS(_, _, b) => node(Kind::And, &[b]),
        }
    }

    /// Free variables as `(numbers, strings)`.
    pub fn free_vars(&self) -> (BTreeSet<String>, BTreeSet<String>) {
        let mut nums = BTreeSet::new();
        let mut strs = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut nums, &mut strs);
        (nums, strs)
    }

    fn collect_free(&self, bound: &mut Vec<String>, nums: &mut BTreeSet<String>, strs: &mut BTreeSet<String>) {
        let term = |t: &NumTerm, bound: &Vec<String>, nums: &mut BTreeSet<String>, strs: &mut BTreeSet<String>| {
            let mut n = BTreeSet::new();
            let mut s = BTreeSet::new();
            t.collect_vars(&mut n, &mut s);
            nums.extend(n.into_iter().filter(|v| !bound.contains(v)));
            strs.extend(s.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::EqNum(a, b) | Formula::Leq(a, b) | Formula::Bit(a, b) => {
                term(a, bound, nums, strs);
                term(b, bound, nums, strs);
            }
            Formula::EqStr(x, y) => {
                for v in [x, y] {
                    if !bound.contains(v) {
                        strs.insert(v.clone());
                    }
                }
            }
            Formula::Memb(t, x) => {
                term(t, bound, nums, strs);
                if !bound.contains(x) {
                    strs.insert(x.clone());
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, nums, strs);
                b.collect_free(bound, nums, strs);
            }
            Formula::Not(a) => a.collect_free(bound, nums, strs),
            Formula::ExN(x, t, body) | Formula::AlN(x, t, body) | Formula::ExS(x, t, body) | Formula::AlS(x, t, body) => {
                term(t, bound, nums, strs);
                bound.push(x.clone());
                body.collect_free(bound, nums, strs);
                bound.pop();
            }
        }
    }

    /// Capture-avoiding substitution of the number term `t` for the free
    /// number variable `var`.
    pub fn substitute(&self, var: &str, t: &NumTerm) -> Result<Formula, CaptureError> {
        let tvars = t.vars();
        self.subst_inner(var, t, &tvars)
    }

    fn subst_inner(&self, var: &str, t: &NumTerm, tvars: &BTreeSet<String>) -> Result<Formula, CaptureError> {
        Ok(match self {
            Formula::EqNum(a, b) => Formula::EqNum(a.subst(var, t), b.subst(var, t)),
            Formula::Leq(a, b) => Formula::Leq(a.subst(var, t), b.subst(var, t)),
            Formula::Bit(a, b) => Formula::Bit(a.subst(var, t), b.subst(var, t)),
            Formula::EqStr(..) => self.clone(),
            Formula::Memb(a, x) => Formula::Memb(a.subst(var, t), x.clone()),
            Formula::And(a, b) => Formula::and(a.subst_inner(var, t, tvars)?, b.subst_inner(var, t, tvars)?),
            Formula::Or(a, b) => Formula::or(a.subst_inner(var, t, tvars)?, b.subst_inner(var, t, tvars)?),
            Formula::Imp(a, b) => Formula::imp(a.subst_inner(var, t, tvars)?, b.subst_inner(var, t, tvars)?),
            Formula::Not(a) => Formula::not(a.subst_inner(var, t, tvars)?),
            Formula::ExN(x, bd, body) | Formula::AlN(x, bd, body) | Formula::ExS(x, bd, body) | Formula::AlS(x, bd, body) => {
                let bd = bd.subst(var, t);
                let body = if x == var {
                    (**body).clone()
                } else {
                    let (n, s) = body.free_vars();
                    if tvars.contains(x) && (n.contains(var) || s.contains(var)) {
                        return Err(CaptureError { var: var.to_string(), captured: x.clone() });
                    }
                    body.subst_inner(var, t, tvars)?
                };
                self.rebuild_quant(x.clone(), bd, body)
            }
        })
    }

    fn rebuild_quant(&self, x: String, bound: NumTerm, body: Formula) -> Formula {
        let body = Box::new(body);
        match self {
            Formula::ExN(..) => Formula::ExN(x, bound, body),
            Formula::AlN(..) => Formula::AlN(x, bound, body),
            Formula::ExS(..) => Formula::ExS(x, bound, body),
            Formula::AlS(..) => Formula::AlS(x, bound, body),
            _ => unreachable!("not a quantifier"),
        }
    }

    /// Renames every binder to a name unique in the whole formula
    /// (`x` becomes `x_1`, `x_2`, ...), leaving free variables alone.
    pub fn alpha_normalize(&self) -> Formula {
        let (n, s) = self.free_vars();
        let mut used: BTreeSet<String> = n.into_iter().chain(s).collect();
        let mut counter = HashMap::new();
        self.alpha_inner(&HashMap::new(), &mut used, &mut counter)
    }

    fn alpha_inner(
        &self,
        map: &HashMap<String, String>,
        used: &mut BTreeSet<String>,
        counter: &mut HashMap<String, usize>,
    ) -> Formula {
        let rn = |v: &String| map.get(v).cloned().unwrap_or_else(|| v.clone());
        match self {
            Formula::EqNum(a, b) => Formula::EqNum(a.rename(map), b.rename(map)),
            Formula::Leq(a, b) => Formula::Leq(a.rename(map), b.rename(map)),
            Formula::Bit(a, b) => Formula::Bit(a.rename(map), b.rename(map)),
            Formula::EqStr(x, y) => Formula::EqStr(rn(x), rn(y)),
            Formula::Memb(t, x) => Formula::Memb(t.rename(map), rn(x)),
            Formula::And(a, b) => Formula::and(a.alpha_inner(map, used, counter), b.alpha_inner(map, used, counter)),
            Formula::Or(a, b) => Formula::or(a.alpha_inner(map, used, counter), b.alpha_inner(map, used, counter)),
            Formula::Imp(a, b) => Formula::imp(a.alpha_inner(map, used, counter), b.alpha_inner(map, used, counter)),
            Formula::Not(a) => Formula::not(a.alpha_inner(map, used, counter)),
            Formula::ExN(x, t, body) | Formula::AlN(x, t, body) | Formula::ExS(x, t, body) | Formula::AlS(x, t, body) => {
                let fresh = loop {
                    let c = counter.entry(x.clone()).or_insert(0);
                    *c += 1;
                    let cand = format!("{x}_{c}");
                    if used.insert(cand.clone()) {
                        break cand;
                    }
                };
                let bound = t.rename(map);
                let mut inner = map.clone();
                inner.insert(x.clone(), fresh.clone());
                let body = body.alpha_inner(&inner, used, counter);
                self.rebuild_quant(fresh, bound, body)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
    Not,
    Imp,
}

// ---------------------------------------------------------------------------
// printing

impl fmt::Display for NumTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumTerm::Zero => f.write_str("0"),
            NumTerm::One => f.write_str("1"),
            NumTerm::Lit(n) => write!(f, "{n}"),
            NumTerm::Var(v) => f.write_str(v),
            NumTerm::Plus(a, b) => write!(f, "(+ {a} {b})"),
            NumTerm::Times(a, b) => write!(f, "(* {a} {b})"),
            NumTerm::Len(x) => write!(f, "(len {x})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::EqNum(a, b) => write!(f, "(= {a} {b})"),
            Formula::Leq(a, b) => write!(f, "(leq {a} {b})"),
            Formula::EqStr(x, y) => write!(f, "(seteq {x} {y})"),
            Formula::Memb(t, x) => write!(f, "(in {t} {x})"),
            Formula::Bit(t, u) => write!(f, "(bit {t} {u})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Imp(a, b) => write!(f, "(imp {a} {b})"),
            Formula::ExN(x, t, b) => write!(f, "(exN {x} {t} {b})"),
            Formula::AlN(x, t, b) => write!(f, "(alN {x} {t} {b})"),
            Formula::ExS(x, t, b) => write!(f, "(exS {x} {t} {b})"),
            Formula::AlS(x, t, b) => write!(f, "(alS {x} {t} {b})"),
        }
    }
}

/// Prints the formula as an s-expression (inverse of [`parse_formula`]).
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::leq(NumTerm::var("x"), NumTerm::One)
    }

    #[test]
    fn depth_examples() {
        assert_eq!(Formula::leq(NumTerm::Zero, NumTerm::One).depth(), 0);
        assert_eq!(Formula::and(Formula::or(a(), a()), a()).depth(), 2);
        assert_eq!(Formula::and(Formula::and(a(), a()), a()).depth(), 1);
        assert_eq!(Formula::not(Formula::not(a())).depth(), 1);
        // a bounded ∀ over a conjunction is one unbounded ∧
        assert_eq!(Formula::al_n("y", NumTerm::One, Formula::and(a(), a())).depth(), 1);
    }

    #[test]
    fn classify_examples() {
        let lem = parse_formula("(alN z (len X) (or (in z X) (not (in z X))))").unwrap();
        assert_eq!(lem.classify(), QuantClass::SigmaB(0));
        let ex = Formula::ex_s("W", NumTerm::lit(4u32), lem.clone());
        assert_eq!(ex.classify(), QuantClass::SigmaB(1));
        let al = Formula::al_s("W", NumTerm::lit(4u32), lem.clone());
        assert_eq!(al.classify(), QuantClass::PiB(1));
        assert_eq!(Formula::not(ex.clone()).classify(), QuantClass::PiB(1));
        let alt = Formula::ex_s("V", NumTerm::One, al);
        assert_eq!(alt.classify(), QuantClass::SigmaB(2));
        // number quantifiers do not count
        assert_eq!(Formula::al_n("q", NumTerm::One, ex).classify(), QuantClass::SigmaB(1));
    }

    #[test]
    fn substitution_examples() {
        let f = parse_formula("(leq x 1)").unwrap();
        assert_eq!(f.substitute("x", &NumTerm::Zero).unwrap(), parse_formula("(leq 0 1)").unwrap());
        let g = parse_formula("(exN x 1 (leq x 1))").unwrap();
        assert_eq!(g.substitute("x", &NumTerm::Zero).unwrap(), g);
        let h = parse_formula("(leq x y)").unwrap();
        let t = NumTerm::plus(NumTerm::var("y"), NumTerm::One);
        assert_eq!(h.substitute("x", &t).unwrap(), parse_formula("(leq (+ y 1) y)").unwrap());
        let cap = parse_formula("(exN y 3 (leq x y))").unwrap();
        assert!(cap.substitute("x", &t).is_err());
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(Formula::leq(NumTerm::Zero, NumTerm::One).size(), 3);
    }

    #[test]
    fn alpha_normalize_separates_binders() {
        let f = parse_formula("(and (exN x 1 (leq x x)) (exN x 2 (leq x z)))").unwrap();
        let g = f.alpha_normalize();
        assert_eq!(g.to_string(), "(and (exN x_1 1 (leq x_1 x_1)) (exN x_2 2 (leq x_2 z)))");
        assert_eq!(g.free_vars().0, ["z".to_string()].into_iter().collect());
    }
}
