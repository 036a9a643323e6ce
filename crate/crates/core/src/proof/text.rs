//! Line-oriented proof text: `n: (seq (f A …) (f B …)) <rule> [premises…]`.
//!
//! Lines are numbered from 0 in order; rules are `axiom`, `weak-left`,
//! `weak-right`, `and-left`, `and-right`, `or-left`, `or-right`,
//! `not-left`, `not-right` and `cut:<i>`. Blank lines and lines starting
//! with `;` are skipped.

use std::fmt;

use super::{Line, Proof, RuleTag, Sequent};
use crate::prop::{prop_from_sexp, PropFormula};
use crate::sexp::{read_all, Pos, Sexp, SyntaxError};

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleTag::Axiom => "axiom",
            RuleTag::WeakLeft => "weak-left",
            RuleTag::WeakRight => "weak-right",
            RuleTag::AndLeft => "and-left",
            RuleTag::AndRight => "and-right",
            RuleTag::OrLeft => "or-left",
            RuleTag::OrRight => "or-right",
            RuleTag::NotLeft => "not-left",
            RuleTag::NotRight => "not-right",
            RuleTag::Cut(i) => return write!(f, "cut:{i}"),
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for RuleTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(i) = s.strip_prefix("cut:") {
            return i.parse().map(RuleTag::Cut).map_err(|_| format!("bad cut index in {s:?}"));
        }
        RuleTag::PLAIN.into_iter().find(|t| t.to_string() == s).ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |xs: &[PropFormula]| xs.iter().map(|x| format!(" {x}")).collect::<String>();
        write!(f, "(seq (f{}) (f{}))", side(&self.left), side(&self.right))
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, line) in self.lines.iter().enumerate() {
            write!(f, "{n}: {} {}", line.seq, line.rule)?;
            for p in &line.premises {
                write!(f, " {p}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn side(e: &Sexp) -> Result<Vec<PropFormula>, SyntaxError> {
    match e {
        Sexp::List(items, p) => match items.split_first() {
            Some((Sexp::Atom(h, _), rest)) if h == "f" => rest.iter().map(prop_from_sexp).collect(),
            _ => Err(SyntaxError::new(*p, "expected (f …)")),
        },
        Sexp::Atom(_, p) => Err(SyntaxError::new(*p, "expected (f …)")),
    }
}

fn sequent(e: &Sexp) -> Result<Sequent, SyntaxError> {
    match e {
        Sexp::List(items, p) => match items.as_slice() {
            [Sexp::Atom(h, _), l, r] if h == "seq" => Ok(Sequent::new(side(l)?, side(r)?)),
            _ => Err(SyntaxError::new(*p, "expected (seq (f …) (f …))")),
        },
        Sexp::Atom(_, p) => Err(SyntaxError::new(*p, "expected (seq …)")),
    }
}

fn shift(mut e: SyntaxError, line: usize) -> SyntaxError {
    e.pos.line = line;
    e
}

pub fn parse_proof(text: &str) -> Result<Proof, SyntaxError> {
    let mut lines = Vec::new();
    for (row, raw) in text.lines().enumerate() {
        let row = row + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with(';') {
            continue;
        }
        let at = Pos { line: row, col: 1 };
        let items = read_all(trimmed).map_err(|e| shift(e, row))?;
        let (label, seq, rule, prems) = match items.as_slice() {
            [Sexp::Atom(l, _), s, Sexp::Atom(r, _), rest @ ..] => (l, s, r, rest),
            _ => return Err(SyntaxError::new(at, "expected `n: (seq …) rule premises…`")),
        };
        let want = format!("{}:", lines.len());
        if *label != want {
            return Err(SyntaxError::new(at, format!("expected line label {want}, found {label}")));
        }
        let seq = sequent(seq).map_err(|e| shift(e, row))?;
        let rule = rule.parse().map_err(|m| SyntaxError::new(at, m))?;
        let premises = prems
            .iter()
            .map(|p| match p {
                Sexp::Atom(a, _) => a.parse::<usize>().map_err(|_| SyntaxError::new(at, format!("bad premise {a:?}"))),
                Sexp::List(..) => Err(SyntaxError::new(at, "premises are line numbers")),
            })
            .collect::<Result<_, _>>()?;
        lines.push(Line { seq, rule, premises });
    }
    Ok(Proof { lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "; p or not p\n0: (seq (f (pv x 0)) (f (pv x 0))) axiom\n1: (seq (f) (f (pv x 0) (pnot (pv x 0)))) not-right 0\n";
        let pi = parse_proof(text).unwrap();
        assert_eq!(pi.lines.len(), 2);
        assert_eq!(pi.lines[1].rule, RuleTag::NotRight);
        assert_eq!(parse_proof(&pi.to_string()).unwrap(), pi);
        assert_eq!("cut:3".parse::<RuleTag>(), Ok(RuleTag::Cut(3)));
        let err = parse_proof("1: (seq (f) (f)) axiom").unwrap_err();
        assert_eq!(err.pos.line, 1);
        assert!(parse_proof("0: (seq (f) (f)) frobnicate").is_err());
        assert!(parse_proof("0: (seq (f (pv x 0))) axiom").is_err());
    }
}
