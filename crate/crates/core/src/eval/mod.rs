//! Semantics of bounded two-sorted formulas over a finite slice of the
//! standard model.
//!
//! The default strategy expands every bounded quantifier. The lifted
//! strategy keeps string quantifiers (and number quantifiers whose variable
//! is only read bitwise) symbolic and decides the resulting propositional
//! formula with the CDCL solver; it is checked against full expansion on
//! small instances.

mod lift;
pub mod mfv;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::formula::{is_string_name, Formula, NumTerm, QuantClass};

pub use lift::{eval_lifted, LiftStats};
pub use mfv::{check_mfv, mfv_witness, naive_value, node_value, node_value_traced, MfvError, MonotoneTree};

/// Numbers range over `[0, num_bound]`, strings over lengths `≤ str_width`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSlice {
    pub num_bound: BigUint,
    pub str_width: usize,
}

impl FiniteSlice {
    pub fn new(num_bound: impl Into<BigUint>, str_width: usize) -> Result<Self, EvalError> {
        let num_bound = num_bound.into();
        if num_bound.is_zero() {
            return Err(EvalError::BadSlice);
        }
        Ok(FiniteSlice { num_bound, str_width })
    }

    /// A slice admitting numbers below `2^bits` and strings up to `str_width`.
    pub fn pow2(bits: u64, str_width: usize) -> Self {
        FiniteSlice { num_bound: (BigUint::one() << bits) - 1u32, str_width }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub nums: BTreeMap<String, BigUint>,
    pub strs: BTreeMap<String, Bits>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_num(mut self, name: &str, v: impl Into<BigUint>) -> Self {
        self.nums.insert(name.to_string(), v.into());
        self
    }

    pub fn with_str(mut self, name: &str, v: Bits) -> Self {
        self.strs.insert(name.to_string(), v);
        self
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("slice number bound must be at least 1")]
    BadSlice,
    #[error("{what} = {value} exceeds the slice limit {limit}")]
    SliceExceeded { what: String, value: String, limit: String },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("expected a Σ^B_0 formula, got {0}")]
    NotSigma0(QuantClass),
    #[error("lifted evaluation unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Strategy {
    /// Full expansion of every quantifier.
    #[default]
    Brute,
    /// Symbolic string quantifiers decided by SAT.
    Lifted,
}

/// Checks that the assignment covers the free variables of `f` with the
/// right sorts and fits the slice.
pub(crate) fn check_env(f: &Formula, slice: &FiniteSlice, env: &Assignment) -> Result<(), EvalError> {
    for name in env.nums.keys() {
        if is_string_name(name) {
            return Err(EvalError::SortMismatch(format!("{name} bound to a number")));
        }
    }
    for (name, v) in &env.strs {
        if !is_string_name(name) {
            return Err(EvalError::SortMismatch(format!("{name} bound to a string")));
        }
        if v.len() > slice.str_width {
            return Err(EvalError::SliceExceeded {
                what: format!("|{name}|"),
                value: v.len().to_string(),
                limit: slice.str_width.to_string(),
            });
        }
    }
    let (nums, strs) = f.free_vars();
    for n in nums {
        if !env.nums.contains_key(&n) {
            return Err(EvalError::Unbound(n));
        }
    }
    for s in strs {
        if !env.strs.contains_key(&s) {
            return Err(EvalError::Unbound(s));
        }
    }
    Ok(())
}

pub(crate) fn check_num_bound(what: &NumTerm, v: &BigUint, slice: &FiniteSlice) -> Result<(), EvalError> {
    if v > &slice.num_bound {
        return Err(EvalError::SliceExceeded {
            what: what.to_string(),
            value: v.to_string(),
            limit: slice.num_bound.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn check_str_bound(what: &NumTerm, v: &BigUint, slice: &FiniteSlice) -> Result<usize, EvalError> {
    match v.to_usize() {
        Some(n) if n <= slice.str_width => Ok(n),
        _ => Err(EvalError::SliceExceeded {
            what: what.to_string(),
            value: v.to_string(),
            limit: slice.str_width.to_string(),
        }),
    }
}

/// Truth of `f` by full expansion.
pub fn eval(f: &Formula, slice: &FiniteSlice, env: &Assignment) -> Result<bool, EvalError> {
    check_env(f, slice, env)?;
    let mut stack = Env::from_assignment(env);
    Brute { slice }.formula(f, &mut stack, 0)
}

pub fn eval_with(f: &Formula, slice: &FiniteSlice, env: &Assignment, strategy: Strategy) -> Result<bool, EvalError> {
    match strategy {
        Strategy::Brute => eval(f, slice, env),
        Strategy::Lifted => eval_lifted(f, slice, env).map(|(v, _)| v),
    }
}

#[derive(Debug, Clone)]
enum Val {
    Num(BigUint),
    Str(Bits),
}

#[derive(Debug, Clone, Default)]
struct Env {
    /// Innermost binding last.
    vars: Vec<(String, Val)>,
}

impl Env {
    fn from_assignment(a: &Assignment) -> Self {
        let mut vars: Vec<(String, Val)> = a.nums.iter().map(|(k, v)| (k.clone(), Val::Num(v.clone()))).collect();
        vars.extend(a.strs.iter().map(|(k, v)| (k.clone(), Val::Str(v.clone()))));
        Env { vars }
    }

    fn get(&self, name: &str) -> Result<&Val, EvalError> {
        self.vars
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| EvalError::Unbound(name.to_string()))
    }

    fn num(&self, name: &str) -> Result<&BigUint, EvalError> {
        match self.get(name)? {
            Val::Num(n) => Ok(n),
            Val::Str(_) => Err(EvalError::SortMismatch(format!("{name} is a string"))),
        }
    }

    fn string(&self, name: &str) -> Result<&Bits, EvalError> {
        match self.get(name)? {
            Val::Str(s) => Ok(s),
            Val::Num(_) => Err(EvalError::SortMismatch(format!("{name} is a number"))),
        }
    }
}

struct Brute<'s> {
    slice: &'s FiniteSlice,
}

pub(crate) fn bit_of(n: &BigUint, pos: &BigUint) -> bool {
    pos.to_u64().is_some_and(|p| n.bit(p))
}

impl Brute<'_> {
    fn term(&self, t: &NumTerm, env: &Env) -> Result<BigUint, EvalError> {
        Ok(match t {
            NumTerm::Zero => BigUint::zero(),
            NumTerm::One => BigUint::one(),
            NumTerm::Lit(n) => n.clone(),
            NumTerm::Var(v) => env.num(v)?.clone(),
            NumTerm::Len(x) => BigUint::from(env.string(x)?.len()),
            NumTerm::Plus(a, b) => self.term(a, env)? + self.term(b, env)?,
            NumTerm::Times(a, b) => self.term(a, env)? * self.term(b, env)?,
        })
    }

    fn formula(&self, f: &Formula, env: &mut Env, depth: usize) -> Result<bool, EvalError> {
        match f {
            Formula::EqNum(a, b) => Ok(self.term(a, env)? == self.term(b, env)?),
            Formula::Leq(a, b) => Ok(self.term(a, env)? <= self.term(b, env)?),
            Formula::EqStr(x, y) => Ok(env.string(x)? == env.string(y)?),
            Formula::Memb(t, x) => {
                let i = self.term(t, env)?;
                let s = env.string(x)?;
                Ok(i.to_usize().is_some_and(|i| s.get(i)))
            }
            Formula::Bit(t, u) => Ok(bit_of(&self.term(u, env)?, &self.term(t, env)?)),
            Formula::And(a, b) => Ok(self.formula(a, env, depth)? && self.formula(b, env, depth)?),
            Formula::Or(a, b) => Ok(self.formula(a, env, depth)? || self.formula(b, env, depth)?),
            Formula::Imp(a, b) => Ok(!self.formula(a, env, depth)? || self.formula(b, env, depth)?),
            Formula::Not(a) => Ok(!self.formula(a, env, depth)?),
            Formula::ExN(x, t, body) | Formula::AlN(x, t, body) => {
                let bound = self.term(t, env)?;
                check_num_bound(t, &bound, self.slice)?;
                let exists = matches!(f, Formula::ExN(..));
                let n = bound.to_u64().expect("slice bounds fit in u64") + 1;
                let values: Box<dyn Iterator<Item = Val>> = Box::new((0..n).map(|v| Val::Num(BigUint::from(v))));
                self.quantify(x, values, n, body, exists, env, depth)
            }
            Formula::ExS(x, t, body) | Formula::AlS(x, t, body) => {
                let bound = self.term(t, env)?;
                let len = check_str_bound(t, &bound, self.slice)?;
                let exists = matches!(f, Formula::ExS(..));
                let n = (1u64 << (len + 1)) - 1;
                self.quantify(x, Box::new(Bits::all_up_to(len).map(Val::Str)), n, body, exists, env, depth)
            }
        }
    }

    /// Ordered search for the first branch that decides the quantifier
    /// (true for `∃`, false for `∀`) or fails.
    #[allow(clippy::too_many_arguments)]
    fn quantify(
        &self,
        x: &str,
        values: Box<dyn Iterator<Item = Val> + '_>,
        count: u64,
        body: &Formula,
        exists: bool,
        env: &mut Env,
        depth: usize,
    ) -> Result<bool, EvalError> {
        if crate::par::PARALLEL && depth == 0 && count > 1 {
            let values: Vec<Val> = values.collect();
            let decided = crate::par::find_map_first(&values, |v| {
                let mut local = env.clone();
                local.vars.push((x.to_string(), v.clone()));
                match self.formula(body, &mut local, depth + 1) {
                    Ok(b) if b == exists => Some(Ok(b)),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            return decided.unwrap_or(Ok(!exists));
        }
        for v in values {
            env.vars.push((x.to_string(), v));
            let r = self.formula(body, env, depth + 1);
            env.vars.pop();
            if r? == exists {
                return Ok(exists);
            }
        }
        Ok(!exists)
    }
}

/// The string `X` of length `y` with `X(z) ↔ φ(z)` for `z < y`; `φ` must
/// be Σ^B_0 with free number variable `z` (other free variables from `env`).
pub fn comprehension_witness(
    phi: &Formula,
    z: &str,
    y: usize,
    slice: &FiniteSlice,
    env: &Assignment,
) -> Result<Bits, EvalError> {
    let class = phi.classify();
    if class != QuantClass::SigmaB(0) {
        return Err(EvalError::NotSigma0(class));
    }
    let bits = crate::par::map_range(y, |i| eval(phi, slice, &env.clone().with_num(z, i as u64)));
    Ok(Bits::from_bools(bits.into_iter().collect::<Result<_, _>>()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn slice() -> FiniteSlice {
        FiniteSlice::new(16u32, 4).unwrap()
    }

    fn ev(s: &str) -> Result<bool, EvalError> {
        eval(&parse_formula(s).unwrap(), &slice(), &Assignment::new())
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(ev("(leq 1 (+ 1 1))"), Ok(true));
        assert_eq!(ev("(exN x 2 (= (+ x x) (* 2 1)))"), Ok(true));
        assert_eq!(ev("(alS X 2 (leq (len X) 2))"), Ok(true));
        assert_eq!(ev("(exS X 2 (leq 3 (len X)))"), Ok(false));
        assert_eq!(ev("(bit 2 12)"), Ok(true));
        assert_eq!(ev("(bit 0 12)"), Ok(false));
    }

    #[test]
    fn errors() {
        assert!(matches!(ev("(exN x 17 (leq x x))"), Err(EvalError::SliceExceeded { .. })));
        assert!(matches!(ev("(exS X 5 (leq 0 0))"), Err(EvalError::SliceExceeded { .. })));
        assert_eq!(ev("(leq y 0)"), Err(EvalError::Unbound("y".into())));
        let f = parse_formula("(in 0 X)").unwrap();
        let env = Assignment::new().with_str("X", Bits::from("11111"));
        assert!(matches!(eval(&f, &slice(), &env), Err(EvalError::SliceExceeded { .. })));
        let bad = Assignment { nums: [("X".to_string(), BigUint::one())].into(), ..Default::default() };
        assert!(matches!(eval(&f, &slice(), &bad), Err(EvalError::SortMismatch(_))));
    }

    #[test]
    fn strings_are_padded_with_zeros() {
        let f = parse_formula("(and (in 1 X) (not (in 7 X)))").unwrap();
        let env = Assignment::new().with_str("X", Bits::from("01"));
        assert_eq!(eval(&f, &slice(), &env), Ok(true));
    }

    #[test]
    fn comprehension_examples() {
        let s = slice();
        let env = Assignment::new();
        let leq1 = parse_formula("(leq z 1)").unwrap();
        assert_eq!(comprehension_witness(&leq1, "z", 3, &s, &env).unwrap(), Bits::from("110"));
        assert_eq!(comprehension_witness(&Formula::truth(), "z", 2, &s, &env).unwrap(), Bits::from("11"));
        assert_eq!(comprehension_witness(&Formula::falsity(), "z", 3, &s, &env).unwrap().count_ones(), 0);
        let sigma1 = parse_formula("(exS Y 1 (in z Y))").unwrap();
        assert!(matches!(comprehension_witness(&sigma1, "z", 2, &s, &env), Err(EvalError::NotSigma0(_))));
    }
}
