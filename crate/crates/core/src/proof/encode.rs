//! Bit-level encoding of formulas and proofs, layout version 1.
//!
//! ```text
//! unary(n)  = 1^n 0
//! F         = 0 unary(i)          variable x_i
//!           | 100 F               negation
//!           | 101 LIST            conjunction
//!           | 110 LIST            disjunction
//!           | 111 b               constant b
//! LIST      = (1 F)* 0
//! RULE      = 0                   axiom
//!           | 1 tttt              other rules, tttt as in `rule_code`
//!           | 1 1000 unary(i)     cut:i
//! PREMISES  = (1 unary(k))* 0     premise at line n−1−k
//! LINE      = LIST LIST RULE PREMISES
//! PROOF     = (1 LINE)* 0
//! ```
//!
//! Only variables named `x` are encodable. Every code is self-delimiting,
//! so no encoding of a complete proof is a proper prefix of another.

use thiserror::Error;

use super::{Line, Proof, RuleTag, Sequent};
use crate::bits::Bits;
use crate::prop::PropFormula;

pub const LAYOUT_VERSION: u32 = 1;

/// The only encodable variable name.
pub const VAR_NAME: &str = "x";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("encoding ends early at bit {0}")]
    Truncated(usize),
    #[error("unknown rule code {code:04b} at bit {at}")]
    Rule { code: u8, at: usize },
    #[error("premise offset at bit {0} points before line 0")]
    Premise(usize),
    #[error("{0} trailing bits after the proof")]
    Trailing(usize),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("variable {0} is not named x")]
pub struct EncodeError(pub String);

fn unary(out: &mut Bits, n: usize) {
    for _ in 0..n {
        out.push(true);
    }
    out.push(false);
}

fn push_code(out: &mut Bits, code: &str) {
    code.chars().for_each(|c| out.push(c == '1'));
}

fn rule_code(r: RuleTag) -> Option<u8> {
    Some(match r {
        RuleTag::Axiom => return None,
        RuleTag::WeakLeft => 0,
        RuleTag::WeakRight => 1,
        RuleTag::AndLeft => 2,
        RuleTag::AndRight => 3,
        RuleTag::OrLeft => 4,
        RuleTag::OrRight => 5,
        RuleTag::NotLeft => 6,
        RuleTag::NotRight => 7,
        RuleTag::Cut(_) => 8,
    })
}

fn formula_into(out: &mut Bits, f: &PropFormula) -> Result<(), EncodeError> {
    match f {
        PropFormula::Var(v) => {
            if v.name != VAR_NAME {
                return Err(EncodeError(v.to_string()));
            }
            out.push(false);
            unary(out, v.index);
        }
        PropFormula::Not(a) => {
            push_code(out, "100");
            formula_into(out, a)?;
        }
        PropFormula::And(xs) | PropFormula::Or(xs) => {
            push_code(out, if matches!(f, PropFormula::And(_)) { "101" } else { "110" });
            list_into(out, xs)?;
        }
        PropFormula::Const(b) => {
            push_code(out, "111");
            out.push(*b);
        }
    }
    Ok(())
}

fn list_into(out: &mut Bits, xs: &[PropFormula]) -> Result<(), EncodeError> {
    for x in xs {
        out.push(true);
        formula_into(out, x)?;
    }
    out.push(false);
    Ok(())
}

pub fn encode_formula(f: &PropFormula) -> Result<Bits, EncodeError> {
    let mut out = Bits::new();
    formula_into(&mut out, f)?;
    Ok(out)
}

pub fn encode_proof(pi: &Proof) -> Result<Bits, EncodeError> {
    let mut out = Bits::new();
    for (n, line) in pi.lines.iter().enumerate() {
        out.push(true);
        list_into(&mut out, &line.seq.left)?;
        list_into(&mut out, &line.seq.right)?;
        match rule_code(line.rule) {
            None => out.push(false),
            Some(code) => {
                out.push(true);
                for k in (0..4).rev() {
                    out.push((code >> k) & 1 == 1);
                }
                if let RuleTag::Cut(i) = line.rule {
                    unary(&mut out, i);
                }
            }
        }
        for &p in &line.premises {
            out.push(true);
            // a forward premise has no back offset; it is clamped so the
            // encoding stays total, and the checker rejects the proof anyway
            unary(&mut out, n.saturating_sub(p + 1));
        }
        out.push(false);
    }
    out.push(false);
    Ok(out)
}

struct Reader<'a> {
    bits: &'a Bits,
    at: usize,
}

impl Reader<'_> {
    fn bit(&mut self) -> Result<bool, DecodeError> {
        if self.at >= self.bits.len() {
            return Err(DecodeError::Truncated(self.at));
        }
        self.at += 1;
        Ok(self.bits.get(self.at - 1))
    }

    fn unary(&mut self) -> Result<usize, DecodeError> {
        let mut n = 0;
        while self.bit()? {
            n += 1;
        }
        Ok(n)
    }

    fn formula(&mut self) -> Result<PropFormula, DecodeError> {
        if !self.bit()? {
            return Ok(PropFormula::var(VAR_NAME, self.unary()?));
        }
        Ok(match (self.bit()?, self.bit()?) {
            (false, false) => PropFormula::not(self.formula()?),
            (false, true) => PropFormula::And(self.list()?),
            (true, false) => PropFormula::Or(self.list()?),
            (true, true) => PropFormula::Const(self.bit()?),
        })
    }

    fn list(&mut self) -> Result<Vec<PropFormula>, DecodeError> {
        let mut out = Vec::new();
        while self.bit()? {
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn rule(&mut self) -> Result<RuleTag, DecodeError> {
        if !self.bit()? {
            return Ok(RuleTag::Axiom);
        }
        let at = self.at;
        let mut code = 0u8;
        for _ in 0..4 {
            code = code << 1 | self.bit()? as u8;
        }
        Ok(match code {
            0 => RuleTag::WeakLeft,
            1 => RuleTag::WeakRight,
            2 => RuleTag::AndLeft,
            3 => RuleTag::AndRight,
            4 => RuleTag::OrLeft,
            5 => RuleTag::OrRight,
            6 => RuleTag::NotLeft,
            7 => RuleTag::NotRight,
            8 => RuleTag::Cut(self.unary()?),
            _ => return Err(DecodeError::Rule { code, at }),
        })
    }

    fn finish(&self) -> Result<(), DecodeError> {
        match self.bits.len() - self.at {
            0 => Ok(()),
            n => Err(DecodeError::Trailing(n)),
        }
    }
}

/// Decodes a formula that spans all of `bits`.
pub fn decode_formula(bits: &Bits) -> Result<PropFormula, DecodeError> {
    let mut r = Reader { bits, at: 0 };
    let f = r.formula()?;
    r.finish()?;
    Ok(f)
}

/// Decodes a proof that spans all of `bits`.
pub fn decode_proof(bits: &Bits) -> Result<Proof, DecodeError> {
    let mut r = Reader { bits, at: 0 };
    let mut lines = Vec::new();
    while r.bit()? {
        let left = r.list()?;
        let right = r.list()?;
        let rule = r.rule()?;
        let mut premises = Vec::new();
        while r.bit()? {
            let at = r.at;
            let back = r.unary()?;
            premises.push(lines.len().checked_sub(back + 1).ok_or(DecodeError::Premise(at))?);
        }
        lines.push(Line { seq: Sequent::new(left, right), rule, premises });
    }
    r.finish()?;
    Ok(Proof { lines })
}
