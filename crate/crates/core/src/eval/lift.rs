//! Lifted evaluation: partial evaluation of a sentence into a propositional
//! formula over Skolem bits, decided by the CDCL solver.
//!
//! A string quantifier that is existential in effect (`∃` under an even
//! number of negations, or `∀` under an odd number) becomes a block of
//! fresh propositional variables, one per position. If the body never looks
//! at `|X|` (no `len X`, no `seteq` on `X`) the length is fixed at the bound,
//! since a shorter string reads the same as its zero-padded extension;
//! otherwise each admissible length gets its own block. A number quantifier
//! of the same polarity whose variable is only ever read bitwise, as the
//! second argument of `bit`, becomes a bit vector with an `≤ bound`
//! comparator. Everything else is expanded over concrete values, with
//! constant folding and short-circuiting.
//!
//! When every symbolic quantifier is universal in effect the sentence is
//! decided through its negation.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{bit_of, check_env, check_num_bound, check_str_bound, Assignment, EvalError, FiniteSlice};
use crate::bits::Bits;
use crate::formula::{Formula, NumTerm};
use crate::prop::{PVar, PropFormula};

/// Concrete branches a single quantifier may expand into.
const EXPAND_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LiftStats {
    /// Decided through the negated sentence.
    pub dual: bool,
    pub prop_size: usize,
    pub sat_calls: usize,
}

#[derive(Debug, Clone)]
enum Bind {
    Num(BigUint),
    NumBits { tag: String, width: u64 },
    Str(Bits),
    StrVars { tag: String, len: usize },
}

struct Lifter<'s> {
    slice: &'s FiniteSlice,
    next_id: usize,
}

type Env<'f> = Vec<(&'f str, Bind)>;

fn lookup<'e>(env: &'e Env<'_>, name: &str) -> Result<&'e Bind, EvalError> {
    env.iter().rev().find(|(n, _)| *n == name).map(|(_, b)| b).ok_or_else(|| EvalError::Unbound(name.to_string()))
}

fn and_of(parts: Vec<PropFormula>) -> PropFormula {
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        match p {
            PropFormula::Const(true) => {}
            PropFormula::Const(false) => return PropFormula::Const(false),
            PropFormula::And(xs) => out.extend(xs),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => PropFormula::Const(true),
        1 => out.pop().unwrap(),
        _ => PropFormula::And(out),
    }
}

fn or_of(parts: Vec<PropFormula>) -> PropFormula {
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        match p {
            PropFormula::Const(false) => {}
            PropFormula::Const(true) => return PropFormula::Const(true),
            PropFormula::Or(xs) => out.extend(xs),
            other => out.push(other),
        }
    }
    match out.len() {
        0 => PropFormula::Const(false),
        1 => out.pop().unwrap(),
        _ => PropFormula::Or(out),
    }
}

fn not_of(p: PropFormula) -> PropFormula {
    match p {
        PropFormula::Const(b) => PropFormula::Const(!b),
        PropFormula::Not(x) => *x,
        other => PropFormula::not(other),
    }
}

fn iff_of(a: PropFormula, b: PropFormula) -> PropFormula {
    match (&a, &b) {
        (PropFormula::Const(x), _) => {
            if *x {
                b
            } else {
                not_of(b)
            }
        }
        (_, PropFormula::Const(_)) => iff_of(b, a),
        _ => or_of(vec![and_of(vec![a.clone(), b.clone()]), and_of(vec![not_of(a), not_of(b)])]),
    }
}

/// `Σ v_i 2^i ≤ bound` for the `width`-bit vector `tag`, or `None` when the
/// bound is `2^width − 1`.
fn leq_const(tag: &str, width: u64, bound: &BigUint) -> Option<PropFormula> {
    if bound.bits() == width && bound.count_ones() == width {
        return None;
    }
    // scan from the least significant bit: le_i = "bits below i+1 are ≤ bound's"
    let mut acc = PropFormula::Const(true);
    for i in 0..width {
        let v = PropFormula::Var(PVar { name: tag.to_string(), index: i as usize });
        acc = if bound.bit(i) { or_of(vec![not_of(v), acc]) } else { and_of(vec![not_of(v), acc]) };
    }
    Some(acc)
}

/// `x` only occurs as the number argument of `bit` atoms.
fn bitwise_only(x: &str, f: &Formula) -> bool {
    let clean = |t: &NumTerm| !t.mentions(x);
    match f {
        Formula::EqNum(a, b) | Formula::Leq(a, b) => clean(a) && clean(b),
        Formula::EqStr(..) => true,
        Formula::Memb(t, _) => clean(t),
        Formula::Bit(t, u) => clean(t) && (matches!(u, NumTerm::Var(v) if v == x) || clean(u)),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => bitwise_only(x, a) && bitwise_only(x, b),
        Formula::Not(a) => bitwise_only(x, a),
        Formula::ExN(y, t, body) | Formula::AlN(y, t, body) | Formula::ExS(y, t, body) | Formula::AlS(y, t, body) => {
            clean(t) && (y == x || bitwise_only(x, body))
        }
    }
}

/// The body inspects the length of `x`.
fn uses_length(x: &str, f: &Formula) -> bool {
    let term = |t: &NumTerm| matches_len(t, x);
    match f {
        Formula::EqNum(a, b) | Formula::Leq(a, b) | Formula::Bit(a, b) => term(a) || term(b),
        Formula::EqStr(a, b) => a == x || b == x,
        Formula::Memb(t, _) => term(t),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => uses_length(x, a) || uses_length(x, b),
        Formula::Not(a) => uses_length(x, a),
        Formula::ExN(_, t, body) | Formula::AlN(_, t, body) | Formula::ExS(_, t, body) | Formula::AlS(_, t, body) => {
            term(t) || uses_length(x, body)
        }
    }
}

fn matches_len(t: &NumTerm, x: &str) -> bool {
    match t {
        NumTerm::Len(y) => y == x,
        NumTerm::Plus(a, b) | NumTerm::Times(a, b) => matches_len(a, x) || matches_len(b, x),
        _ => false,
    }
}

/// Symbolic quantifiers that are existential (resp. universal) in effect.
fn polarity_counts(f: &Formula, pos: bool, out: &mut (usize, usize)) {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => {
            polarity_counts(a, pos, out);
            polarity_counts(b, pos, out);
        }
        Formula::Imp(a, b) => {
            polarity_counts(a, !pos, out);
            polarity_counts(b, pos, out);
        }
        Formula::Not(a) => polarity_counts(a, !pos, out),
        Formula::ExN(x, _, body) | Formula::AlN(x, _, body) | Formula::ExS(x, _, body) | Formula::AlS(x, _, body) => {
            let string = matches!(f, Formula::ExS(..) | Formula::AlS(..));
            if string || bitwise_only(x, body) {
                let exists = matches!(f, Formula::ExN(..) | Formula::ExS(..));
                if exists == pos {
                    out.0 += 1;
                } else {
                    out.1 += 1;
                }
            }
            polarity_counts(body, pos, out);
        }
        _ => {}
    }
}

impl<'s> Lifter<'s> {
    fn fresh(&mut self, name: &str) -> String {
        self.next_id += 1;
        format!("{name}#{}", self.next_id)
    }

    fn term(&self, t: &NumTerm, env: &Env<'_>) -> Result<BigUint, EvalError> {
        Ok(match t {
            NumTerm::Zero => BigUint::zero(),
            NumTerm::One => BigUint::one(),
            NumTerm::Lit(n) => n.clone(),
            NumTerm::Var(v) => match lookup(env, v)? {
                Bind::Num(n) => n.clone(),
                Bind::NumBits { .. } => return Err(EvalError::Unsupported(format!("{v} is symbolic but used arithmetically"))),
                _ => return Err(EvalError::SortMismatch(format!("{v} is a string"))),
            },
            NumTerm::Len(x) => match lookup(env, x)? {
                Bind::Str(s) => BigUint::from(s.len()),
                Bind::StrVars { len, .. } => BigUint::from(*len),
                _ => return Err(EvalError::SortMismatch(format!("{x} is a number"))),
            },
            NumTerm::Plus(a, b) => self.term(a, env)? + self.term(b, env)?,
            NumTerm::Times(a, b) => self.term(a, env)? * self.term(b, env)?,
        })
    }

    fn str_bit(&self, x: &str, i: &BigUint, env: &Env<'_>) -> Result<PropFormula, EvalError> {
        let i = i.to_usize();
        Ok(match lookup(env, x)? {
            Bind::Str(s) => PropFormula::Const(i.is_some_and(|i| s.get(i))),
            Bind::StrVars { tag, len } => match i {
                Some(i) if i < *len => PropFormula::Var(PVar { name: tag.clone(), index: i }),
                _ => PropFormula::Const(false),
            },
            _ => return Err(EvalError::SortMismatch(format!("{x} is a number"))),
        })
    }

    fn str_len(&self, x: &str, env: &Env<'_>) -> Result<usize, EvalError> {
        match lookup(env, x)? {
            Bind::Str(s) => Ok(s.len()),
            Bind::StrVars { len, .. } => Ok(*len),
            _ => Err(EvalError::SortMismatch(format!("{x} is a number"))),
        }
    }

    fn formula<'f>(&mut self, f: &'f Formula, env: &mut Env<'f>, pos: bool) -> Result<PropFormula, EvalError> {
        match f {
            Formula::EqNum(a, b) => Ok(PropFormula::Const(self.term(a, env)? == self.term(b, env)?)),
            Formula::Leq(a, b) => Ok(PropFormula::Const(self.term(a, env)? <= self.term(b, env)?)),
            Formula::Memb(t, x) => {
                let i = self.term(t, env)?;
                self.str_bit(x, &i, env)
            }
            Formula::Bit(t, u) => {
                let p = self.term(t, env)?;
                if let NumTerm::Var(v) = u {
                    if let Bind::NumBits { tag, width } = lookup(env, v)? {
                        return Ok(match p.to_u64() {
                            Some(i) if i < *width => PropFormula::Var(PVar { name: tag.clone(), index: i as usize }),
                            _ => PropFormula::Const(false),
                        });
                    }
                }
                Ok(PropFormula::Const(bit_of(&self.term(u, env)?, &p)))
            }
            Formula::EqStr(x, y) => {
                let (lx, ly) = (self.str_len(x, env)?, self.str_len(y, env)?);
                if lx != ly {
                    return Ok(PropFormula::Const(false));
                }
                let mut parts = Vec::with_capacity(lx);
                for i in 0..lx {
                    let i = BigUint::from(i);
                    let e = iff_of(self.str_bit(x, &i, env)?, self.str_bit(y, &i, env)?);
                    if e == PropFormula::Const(false) {
                        return Ok(e);
                    }
                    parts.push(e);
                }
                Ok(and_of(parts))
            }
            Formula::And(a, b) => {
                let pa = self.formula(a, env, pos)?;
                if pa == PropFormula::Const(false) {
                    return Ok(pa);
                }
                Ok(and_of(vec![pa, self.formula(b, env, pos)?]))
            }
            Formula::Or(a, b) => {
                let pa = self.formula(a, env, pos)?;
                if pa == PropFormula::Const(true) {
                    return Ok(pa);
                }
                Ok(or_of(vec![pa, self.formula(b, env, pos)?]))
            }
            Formula::Imp(a, b) => {
                let pa = not_of(self.formula(a, env, !pos)?);
                if pa == PropFormula::Const(true) {
                    return Ok(pa);
                }
                Ok(or_of(vec![pa, self.formula(b, env, pos)?]))
            }
            Formula::Not(a) => Ok(not_of(self.formula(a, env, !pos)?)),
            Formula::ExN(x, t, body) | Formula::AlN(x, t, body) => {
                let exists = matches!(f, Formula::ExN(..));
                let bound = self.term(t, env)?;
                check_num_bound(t, &bound, self.slice)?;
                if exists == pos && bitwise_only(x, body) {
                    let tag = self.fresh(x);
                    let width = bound.bits();
                    env.push((x, Bind::NumBits { tag: tag.clone(), width }));
                    let inner = self.formula(body, env, pos);
                    env.pop();
                    let inner = inner?;
                    return Ok(match leq_const(&tag, width, &bound) {
                        None => inner,
                        Some(le) if exists => and_of(vec![le, inner]),
                        Some(le) => or_of(vec![not_of(le), inner]),
                    });
                }
                let n = bound.to_u64().filter(|n| *n < EXPAND_CAP).ok_or_else(|| {
                    EvalError::Unsupported(format!("number quantifier over {x} ≤ {bound} needs expansion"))
                })?;
                let values = (0..=n).map(|v| Bind::Num(BigUint::from(v)));
                self.expand(x, values, body, exists, env, pos)
            }
            Formula::ExS(x, t, body) | Formula::AlS(x, t, body) => {
                let exists = matches!(f, Formula::ExS(..));
                let bound = self.term(t, env)?;
                let len = check_str_bound(t, &bound, self.slice)?;
                if exists == pos {
                    if uses_length(x, body) {
                        let mut tags = Vec::with_capacity(len + 1);
                        for l in 0..=len {
                            tags.push(Bind::StrVars { tag: self.fresh(x), len: l });
                        }
                        return self.expand(x, tags.into_iter(), body, exists, env, pos);
                    }
                    let tag = self.fresh(x);
                    env.push((x, Bind::StrVars { tag, len }));
                    let inner = self.formula(body, env, pos);
                    env.pop();
                    return inner;
                }
                if len >= 16 || (1u64 << (len + 1)) > EXPAND_CAP {
                    return Err(EvalError::Unsupported(format!("string quantifier over {x} ≤ {len} needs expansion")));
                }
                self.expand(x, Bits::all_up_to(len).map(Bind::Str), body, exists, env, pos)
            }
        }
    }

    fn expand<'f>(
        &mut self,
        x: &'f str,
        values: impl Iterator<Item = Bind>,
        body: &'f Formula,
        exists: bool,
        env: &mut Env<'f>,
        pos: bool,
    ) -> Result<PropFormula, EvalError> {
        let mut parts = Vec::new();
        for v in values {
            env.push((x, v));
            let p = self.formula(body, env, pos);
            env.pop();
            match p? {
                PropFormula::Const(b) if b == exists => return Ok(PropFormula::Const(b)),
                PropFormula::Const(_) => {}
                other => parts.push(other),
            }
        }
        Ok(if exists { or_of(parts) } else { and_of(parts) })
    }
}

fn initial_env(env: &Assignment) -> Env<'_> {
    let mut out: Env<'_> = env.nums.iter().map(|(k, v)| (k.as_str(), Bind::Num(v.clone()))).collect();
    out.extend(env.strs.iter().map(|(k, v)| (k.as_str(), Bind::Str(v.clone()))));
    out
}

/// Propositional image of `f` (or of `¬f` when `dual`).
fn lift(f: &Formula, slice: &FiniteSlice, env: &Assignment, dual: bool) -> Result<PropFormula, EvalError> {
    let mut lifter = Lifter { slice, next_id: 0 };
    let mut stack = initial_env(env);
    let p = lifter.formula(f, &mut stack, !dual)?;
    Ok(if dual { not_of(p) } else { p })
}

/// Satisfiability, splitting a top-level disjunction into independent
/// solver calls.
fn solve(p: &PropFormula) -> (bool, usize) {
    match p {
        PropFormula::Or(parts) => {
            let hit = crate::par::find_map_first(parts, |q| crate::sat::satisfiable(q).then_some(()));
            (hit.is_some(), parts.len())
        }
        other => (crate::sat::satisfiable(other), 1),
    }
}

/// Truth of `f` with symbolic quantifiers decided by SAT.
pub fn eval_lifted(f: &Formula, slice: &FiniteSlice, env: &Assignment) -> Result<(bool, LiftStats), EvalError> {
    check_env(f, slice, env)?;
    let mut counts = (0, 0);
    polarity_counts(f, true, &mut counts);
    let orientations: &[bool] = match counts {
        (_, 0) => &[false],
        (0, _) => &[true],
        _ => &[false, true],
    };
    let mut last = None;
    for &dual in orientations {
        match lift(f, slice, env, dual) {
            Ok(p) => {
                let (sat, calls) = solve(&p);
                let stats = LiftStats { dual, prop_size: p.size(), sat_calls: calls };
                return Ok((sat != dual, stats));
            }
            Err(e @ EvalError::Unsupported(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one orientation tried"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval;
    use crate::formula::parse_formula;

    fn both(s: &str, env: &Assignment) -> (bool, bool) {
        let f = parse_formula(s).unwrap();
        let slice = FiniteSlice::new(64u32, 5).unwrap();
        (eval(&f, &slice, env).unwrap(), eval_lifted(&f, &slice, env).unwrap().0)
    }

    #[test]
    fn agrees_with_expansion_on_handpicked_sentences() {
        let env = Assignment::new().with_str("Y", Bits::from("0110"));
        for s in [
            "(exS X 3 (and (in 0 X) (not (in 2 X))))",
            "(exS X 3 (in 3 X))",
            "(alS X 3 (or (in 1 X) (not (in 1 X))))",
            "(alS X 3 (in 1 X))",
            "(exS X 4 (seteq X Y))",
            "(exS X 3 (seteq X Y))",
            "(alS X 2 (leq (len X) 2))",
            "(exS X 4 (and (= (len X) 2) (in 1 X)))",
            "(exS X 4 (alN i (len Y) (imp (in i Y) (in i X))))",
            "(alS X 3 (exS Z 3 (alN i 2 (or (and (in i X) (not (in i Z))) (and (not (in i X)) (in i Z))))))",
            "(exN c 63 (and (bit 1 c) (and (bit 5 c) (not (bit 0 c)))))",
            "(exN c 40 (and (bit 5 c) (bit 4 c)))",
            "(exN c 40 (and (bit 5 c) (bit 3 c)))",
            "(alN c 40 (imp (bit 5 c) (not (bit 4 c))))",
            "(not (exS X 2 (in 1 X)))",
        ] {
            let (b, l) = both(s, &env);
            assert_eq!(b, l, "{s}");
        }
    }

    #[test]
    fn comparator_is_exact() {
        for bound in 0u32..40 {
            let tag = "c#0";
            let width = BigUint::from(bound).bits();
            let le = leq_const(tag, width, &BigUint::from(bound));
            for v in 0u32..(1 << width) {
                let holds = le.as_ref().is_none_or(|p| p.eval(&|q: &PVar| (v >> q.index) & 1 == 1));
                assert_eq!(holds, v <= bound, "{v} ≤ {bound}");
            }
        }
    }

    #[test]
    fn arithmetic_on_symbolic_numbers_is_not_lifted() {
        let f = parse_formula("(exN c 70000 (and (bit 0 c) (leq c 3)))").unwrap();
        let slice = FiniteSlice::new(1u32 << 20, 2).unwrap();
        assert!(matches!(eval_lifted(&f, &slice, &Assignment::new()), Err(EvalError::Unsupported(_))));
    }
}
