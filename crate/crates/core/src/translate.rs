//! Propositional translation of Σ^B_0 formulas at fixed parameter sizes.
//!
//! The translation is structural: each connective maps to the same gate,
//! a bounded number quantifier to a big gate over `0..=bound`, and only
//! atoms are decided. Number-only atoms become constants, `X(t)` becomes
//! the variable `(X, t)` when `t < |X|` and `0` otherwise. No constant
//! folding happens, so the gate shape (hence depth) depends only on the
//! formula; [`PropFormula::simplify`] folds afterwards when wanted.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::eval::{bit_of, EvalError};
use crate::formula::{is_string_name, Formula, NumTerm};
use crate::prop::PropFormula;

/// Largest quantifier bound the translation expands.
pub const BOUND_CAP: u64 = 1 << 16;

/// Concrete values for the number parameters and exact lengths for the
/// string parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SizeProfile {
    pub nums: BTreeMap<String, u64>,
    pub lens: BTreeMap<String, usize>,
}

impl SizeProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_num(mut self, name: &str, v: u64) -> Self {
        self.nums.insert(name.to_string(), v);
        self
    }

    pub fn with_len(mut self, name: &str, n: usize) -> Self {
        self.lens.insert(name.to_string(), n);
        self
    }
}

struct Translator<'a> {
    sizes: &'a SizeProfile,
    bound: Vec<(&'a str, BigUint)>,
}

impl<'a> Translator<'a> {
    fn term(&self, t: &NumTerm) -> Result<BigUint, EvalError> {
        Ok(match t {
            NumTerm::Zero => BigUint::zero(),
            NumTerm::One => BigUint::one(),
            NumTerm::Lit(n) => n.clone(),
            NumTerm::Var(x) => match self.bound.iter().rev().find(|(n, _)| n == x) {
                Some((_, v)) => v.clone(),
                None => BigUint::from(*self.sizes.nums.get(x).ok_or_else(|| EvalError::Unbound(x.clone()))?),
            },
            NumTerm::Len(x) => BigUint::from(self.len(x)?),
            NumTerm::Plus(a, b) => self.term(a)? + self.term(b)?,
            NumTerm::Times(a, b) => self.term(a)? * self.term(b)?,
        })
    }

    fn len(&self, x: &str) -> Result<usize, EvalError> {
        self.sizes.lens.get(x).copied().ok_or_else(|| EvalError::Unbound(x.to_string()))
    }

    fn str_bit(&self, x: &str, i: &BigUint) -> Result<PropFormula, EvalError> {
        let n = self.len(x)?;
        Ok(match i.to_usize() {
            Some(i) if i < n => PropFormula::var(x, i),
            _ => PropFormula::Const(false),
        })
    }

    fn formula(&mut self, f: &'a Formula) -> Result<PropFormula, EvalError> {
        Ok(match f {
            Formula::EqNum(a, b) => PropFormula::Const(self.term(a)? == self.term(b)?),
            Formula::Leq(a, b) => PropFormula::Const(self.term(a)? <= self.term(b)?),
            Formula::Bit(a, b) => PropFormula::Const(bit_of(&self.term(b)?, &self.term(a)?)),
            Formula::Memb(t, x) => {
                let i = self.term(t)?;
                self.str_bit(x, &i)?
            }
            Formula::EqStr(x, y) => {
                let (nx, ny) = (self.len(x)?, self.len(y)?);
                let mut parts = vec![PropFormula::Const(nx == ny)];
                for i in 0..nx.max(ny) {
                    let i = BigUint::from(i);
                    let (a, b) = (self.str_bit(x, &i)?, self.str_bit(y, &i)?);
                    parts.push(PropFormula::And(vec![
                        PropFormula::Or(vec![PropFormula::not(a.clone()), b.clone()]),
                        PropFormula::Or(vec![a, PropFormula::not(b)]),
                    ]));
                }
                PropFormula::And(parts)
            }
            Formula::And(a, b) => PropFormula::And(vec![self.formula(a)?, self.formula(b)?]),
            Formula::Or(a, b) => PropFormula::Or(vec![self.formula(a)?, self.formula(b)?]),
            Formula::Imp(a, b) => PropFormula::Or(vec![PropFormula::not(self.formula(a)?), self.formula(b)?]),
            Formula::Not(a) => PropFormula::not(self.formula(a)?),
            Formula::ExN(x, t, body) | Formula::AlN(x, t, body) => {
                let bound = self.term(t)?;
                let n = bound.to_u64().filter(|n| *n <= BOUND_CAP).ok_or_else(|| EvalError::SliceExceeded {
                    what: format!("bound of {x}"),
                    value: bound.to_string(),
                    limit: BOUND_CAP.to_string(),
                })?;
                let mut parts = Vec::with_capacity(n as usize + 1);
                for v in 0..=n {
                    self.bound.push((x, BigUint::from(v)));
                    let p = self.formula(body);
                    self.bound.pop();
                    parts.push(p?);
                }
                if matches!(f, Formula::ExN(..)) {
                    PropFormula::Or(parts)
                } else {
                    PropFormula::And(parts)
                }
            }
            Formula::ExS(..) | Formula::AlS(..) => unreachable!("checked Σ^B_0"),
        })
    }
}

/// `⟦phi⟧` at the given sizes.
pub fn translate(phi: &Formula, sizes: &SizeProfile) -> Result<PropFormula, EvalError> {
    if !phi.is_sigma0() {
        return Err(EvalError::NotSigma0(phi.classify()));
    }
    for name in sizes.nums.keys() {
        if is_string_name(name) {
            return Err(EvalError::SortMismatch(format!("{name} given a number value")));
        }
    }
    for name in sizes.lens.keys() {
        if !is_string_name(name) {
            return Err(EvalError::SortMismatch(format!("{name} given a length")));
        }
    }
    Translator { sizes, bound: Vec::new() }.formula(phi)
}

/// Least-squares fit of `log size = log C + D·log n`, returning `(C, D)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(n, s)| (n.ln(), s.ln())).unzip();
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let d = sxy / sxx;
    ((my - d * mx).exp(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::prop::taut_check;

    fn tr(s: &str, n: usize) -> PropFormula {
        translate(&parse_formula(s).unwrap(), &SizeProfile::new().with_len("X", n)).unwrap()
    }

    #[test]
    fn examples() {
        let p = tr("(alN z (len X) (imp (leq (+ z 1) (len X)) (or (in z X) (not (in z X)))))", 3);
        assert!(taut_check(&p).unwrap());
        assert_eq!(p.vars().len(), 3);
        assert_eq!(tr("(leq (len X) (len X))", 5), PropFormula::Const(true));
        let empty = tr("(exN z (len X) (and (leq (+ z 1) (len X)) (in z X)))", 0);
        assert_eq!(empty.simplify(), PropFormula::Const(false));
        assert!(!taut_check(&tr("(in 0 X)", 1)).unwrap());
        assert!(taut_check(&tr("(not (in 2 X))", 2)).unwrap());
    }

    #[test]
    fn errors() {
        let f = parse_formula("(exS Y 2 (in 0 Y))").unwrap();
        assert!(matches!(translate(&f, &SizeProfile::new()), Err(EvalError::NotSigma0(_))));
        let f = parse_formula("(leq x 1)").unwrap();
        assert_eq!(translate(&f, &SizeProfile::new()), Err(EvalError::Unbound("x".into())));
        assert_eq!(translate(&f, &SizeProfile::new().with_num("x", 1)).unwrap(), PropFormula::Const(true));
        let f = parse_formula("(exN z 100000 (leq z 0))").unwrap();
        assert!(matches!(translate(&f, &SizeProfile::new()), Err(EvalError::SliceExceeded { .. })));
    }

    #[test]
    fn power_law_fit_recovers_exponent() {
        let pts: Vec<(f64, f64)> = (1..=4).map(|n| (n as f64, 3.0 * (n as f64).powi(2))).collect();
        let (c, d) = fit_power_law(&pts);
        assert!((c - 3.0).abs() < 1e-9 && (d - 2.0).abs() < 1e-9);
    }
}
