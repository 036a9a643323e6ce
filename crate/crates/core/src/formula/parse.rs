//! S-expression front end for formulas and terms.

use num_bigint::BigUint;
use thiserror::Error;

use super::{is_string_name, Formula, NumTerm};
use crate::sexp::{read_one, Pos, Sexp, SyntaxError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("duplicate binding of {name} at {pos}")]
    DuplicateBinding { name: String, pos: Pos },
    #[error("sort mismatch at {pos}: {msg}")]
    SortMismatch { pos: Pos, msg: String },
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let e = read_one(text)?;
    Parser { bound: Vec::new() }.formula(&e)
}

pub fn parse_term(text: &str) -> Result<NumTerm, FormulaError> {
    let e = read_one(text)?;
    Parser { bound: Vec::new() }.term(&e)
}

fn syntax(pos: Pos, msg: impl Into<String>) -> FormulaError {
    FormulaError::Syntax(SyntaxError::new(pos, msg))
}

fn sort(pos: Pos, msg: impl Into<String>) -> FormulaError {
    FormulaError::SortMismatch { pos, msg: msg.into() }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

struct Parser {
    /// Binders on the current root-to-node path.
    bound: Vec<String>,
}

impl Parser {
    fn string_name(&self, e: &Sexp) -> Result<String, FormulaError> {
        match e {
            Sexp::Atom(s, p) if is_ident(s) => {
                if is_string_name(s) {
                    Ok(s.clone())
                } else {
                    Err(sort(*p, format!("{s} is a number variable in string position")))
                }
            }
            other => Err(sort(other.pos(), "expected a string variable")),
        }
    }

    fn term(&self, e: &Sexp) -> Result<NumTerm, FormulaError> {
        match e {
            Sexp::Atom(s, p) => {
                if s.chars().all(|c| c.is_ascii_digit()) {
                    let n: BigUint = s.parse().map_err(|_| syntax(*p, "bad numeral"))?;
                    Ok(NumTerm::lit(n))
                } else if !is_ident(s) {
                    Err(syntax(*p, format!("bad identifier {s:?}")))
                } else if is_string_name(s) {
                    Err(sort(*p, format!("{s} is a string variable in term position")))
                } else {
                    Ok(NumTerm::Var(s.clone()))
                }
            }
            Sexp::List(items, p) => {
                let (head, args) = split_head(items, *p)?;
                match (head, args.len()) {
                    ("+", 2) => Ok(NumTerm::plus(self.term(&args[0])?, self.term(&args[1])?)),
                    ("*", 2) => Ok(NumTerm::times(self.term(&args[0])?, self.term(&args[1])?)),
                    ("len", 1) => Ok(NumTerm::Len(self.string_name(&args[0])?)),
                    ("+" | "*" | "len", n) => Err(syntax(*p, format!("{head} takes {} arguments, got {n}", if head == "len" { 1 } else { 2 }))),
                    _ => Err(syntax(*p, format!("unknown term operator {head:?}"))),
                }
            }
        }
    }

    fn formula(&mut self, e: &Sexp) -> Result<Formula, FormulaError> {
        let (items, p) = match e {
            Sexp::List(items, p) => (items, *p),
            Sexp::Atom(s, p) => return Err(syntax(*p, format!("expected a formula, found atom {s:?}"))),
        };
        let (head, args) = split_head(items, p)?;
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(p, format!("{head} takes {n} arguments, got {}", args.len())))
            }
        };
        match head {
            "=" | "leq" | "bit" => {
                arity(2)?;
                let a = self.term(&args[0])?;
                let b = self.term(&args[1])?;
                Ok(match head {
                    "=" => Formula::EqNum(a, b),
                    "leq" => Formula::Leq(a, b),
                    _ => Formula::Bit(a, b),
                })
            }
            "seteq" => {
                arity(2)?;
                Ok(Formula::EqStr(self.string_name(&args[0])?, self.string_name(&args[1])?))
            }
            "in" | "memb" => {
                arity(2)?;
                Ok(Formula::Memb(self.term(&args[0])?, self.string_name(&args[1])?))
            }
            "and" | "or" | "imp" => {
                arity(2)?;
                let a = self.formula(&args[0])?;
                let b = self.formula(&args[1])?;
                Ok(match head {
                    "and" => Formula::and(a, b),
                    "or" => Formula::or(a, b),
                    _ => Formula::imp(a, b),
                })
            }
            "not" => {
                arity(1)?;
                Ok(Formula::not(self.formula(&args[0])?))
            }
            "exN" | "alN" | "exS" | "alS" => {
                arity(3)?;
                let string_sort = head.ends_with('S');
                let (name, npos) = match &args[0] {
                    Sexp::Atom(s, q) if is_ident(s) => (s.clone(), *q),
                    other => return Err(syntax(other.pos(), "expected a binder name")),
                };
                if is_string_name(&name) != string_sort {
                    let want = if string_sort { "string" } else { "number" };
                    return Err(sort(npos, format!("{head} binds a {want} variable, got {name}")));
                }
                // the bound is outside the binder's scope
                let bound = self.term(&args[1])?;
                if self.bound.contains(&name) {
                    return Err(FormulaError::DuplicateBinding { name, pos: npos });
                }
                self.bound.push(name.clone());
                let body = self.formula(&args[2]);
                self.bound.pop();
                let body = body?;
                Ok(match head {
                    "exN" => Formula::ex_n(&name, bound, body),
                    "alN" => Formula::al_n(&name, bound, body),
                    "exS" => Formula::ex_s(&name, bound, body),
                    _ => Formula::al_s(&name, bound, body),
                })
            }
            _ => Err(syntax(p, format!("unknown formula operator {head:?}"))),
        }
    }
}

fn split_head(items: &[Sexp], p: Pos) -> Result<(&str, &[Sexp]), FormulaError> {
    match items.split_first() {
        Some((Sexp::Atom(h, _), rest)) => Ok((h.as_str(), rest)),
        Some((other, _)) => Err(syntax(other.pos(), "operator must be an atom")),
        None => Err(syntax(p, "empty list")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trivial_examples() {
        assert_eq!(parse_formula("(leq 0 1)").unwrap(), Formula::leq(NumTerm::Zero, NumTerm::One));
        let f = parse_formula("(alN z (len X) (or (memb z X) (not (memb z X))))").unwrap();
        let x = || Formula::memb(NumTerm::var("z"), "X");
        assert_eq!(f, Formula::al_n("z", NumTerm::len("X"), Formula::or(x(), Formula::not(x()))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_formula("(exN x") {
            Err(FormulaError::Syntax(e)) => assert_eq!((e.pos.line, e.pos.col), (1, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("(leq 0)"), Err(FormulaError::Syntax(_))));
        assert!(matches!(parse_formula("(frob 0 1)"), Err(FormulaError::Syntax(_))));
    }

    #[test]
    fn rejects_sort_mismatches() {
        assert!(matches!(parse_formula("(in 0 x)"), Err(FormulaError::SortMismatch { .. })));
        assert!(matches!(parse_formula("(leq X 0)"), Err(FormulaError::SortMismatch { .. })));
        assert!(matches!(parse_formula("(exS x 2 (leq 0 0))"), Err(FormulaError::SortMismatch { .. })));
        assert!(matches!(parse_formula("(alN Y 2 (leq 0 0))"), Err(FormulaError::SortMismatch { .. })));
    }

    #[test]
    fn rejects_shadowing_but_not_siblings() {
        let err = parse_formula("(exN x 3 (alN x 2 (leq x x)))").unwrap_err();
        assert!(matches!(err, FormulaError::DuplicateBinding { ref name, .. } if name == "x"));
        assert!(parse_formula("(and (exN x 3 (leq x x)) (exN x 2 (leq x 1)))").is_ok());
        // a bound may mention an outer variable of the same name as the binder
        assert!(parse_formula("(exN x x (leq x 1))").is_ok());
    }

    #[test]
    fn numerals_and_bit_atoms() {
        let f = parse_formula("(bit 3 1024)").unwrap();
        assert_eq!(f, Formula::bit(NumTerm::lit(3u32), NumTerm::lit(1024u32)));
        assert_eq!(f.to_string(), "(bit 3 1024)");
    }
}
