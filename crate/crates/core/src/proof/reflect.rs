//! Reflection instances: "every proof of length at most `t(x)` proves a
//! true formula", as a Π^B_1 sentence over the strings `P`, `X`, `Z`.
//!
//! The three predicates are finite tables. All strings up to length
//! `T = t(x)` are decoded once; `Fla(X)` lists the well-formed formula
//! codes, `Prf(P, X)` lists the pairs the checker accepts, and `Sat(Z, X)`
//! spells out each listed formula with `x_i` read as `Z(i)`. The sentence
//! is therefore exactly as sound as the checker that built the tables.

use serde::Serialize;
use thiserror::Error;

use super::encode::{decode_formula, decode_proof, encode_formula};
use super::{check_lines, Proof, System};
use crate::bits::Bits;
use crate::eval::FiniteSlice;
use crate::formula::{Formula, NumTerm};
use crate::poly::PolyBound;
use crate::prop::PropFormula;

/// Longest string the tables enumerate; `2^(T+1)` decodes per table.
pub const MAX_TABLE_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Checker {
    Honest,
    /// Accepts every premise-free axiom line whatever its sequent.
    SkipAxiomShape,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReflectError {
    #[error("table length t(x) = {0} exceeds {MAX_TABLE_LEN}")]
    TooLong(u64),
}

fn accepts(system: System, checker: Checker, pi: &Proof, target: &PropFormula) -> bool {
    let ok = check_lines(pi, target, checker == Checker::Honest) == Ok(true);
    match system {
        System::Frege => ok,
        System::DepthFrege(d) => ok && pi.max_depth() <= d,
    }
}

struct Tables {
    len: usize,
    /// Well-formed formula codes up to `len`, with their formulas.
    formulas: Vec<(Bits, PropFormula)>,
    /// Accepted proof codes and the code of the formula each proves.
    accepted: Vec<(Bits, Bits)>,
    proofs_decoded: usize,
}

fn tables(system: System, checker: Checker, t: &PolyBound, x: u64) -> Result<Tables, ReflectError> {
    let len = t.eval(x);
    if len > MAX_TABLE_LEN as u64 {
        return Err(ReflectError::TooLong(len));
    }
    let len = len as usize;
    let all: Vec<Bits> = Bits::all_up_to(len).collect();
    let formulas = all.iter().filter_map(|b| decode_formula(b).ok().map(|f| (b.clone(), f))).collect();
    let decoded: Vec<(Bits, Proof)> = all.iter().filter_map(|b| decode_proof(b).ok().map(|p| (b.clone(), p))).collect();
    let verdicts = crate::par::map(&decoded, |(bits, pi)| {
        let target = pi.conclusion()?;
        let code = encode_formula(target).ok()?;
        (code.len() <= len && accepts(system, checker, pi, target)).then(|| (bits.clone(), code))
    });
    Ok(Tables { len, formulas, accepted: verdicts.into_iter().flatten().collect(), proofs_decoded: decoded.len() })
}

/// `S = w` for a constant string `w`.
fn str_is(s: &str, w: &Bits) -> Formula {
    let mut parts = vec![Formula::eq(NumTerm::len(s), NumTerm::lit(w.len()))];
    for (i, b) in w.iter().enumerate() {
        let m = Formula::memb(NumTerm::lit(i), s);
        parts.push(if b { m } else { Formula::not(m) });
    }
    Formula::and_all(parts)
}

/// `f` with each `x_i` read as `Z(i)`.
fn over_z(f: &PropFormula) -> Formula {
    match f {
        PropFormula::Var(v) => Formula::memb(NumTerm::lit(v.index), "Z"),
        PropFormula::Not(a) => Formula::not(over_z(a)),
        PropFormula::And(xs) => Formula::and_all(xs.iter().map(over_z).collect()),
        PropFormula::Or(xs) => Formula::or_all(xs.iter().map(over_z).collect()),
        PropFormula::Const(true) => Formula::truth(),
        PropFormula::Const(false) => Formula::falsity(),
    }
}

fn sentence(tb: &Tables, t: &PolyBound, x: u64) -> Formula {
    let fla = Formula::or_all(tb.formulas.iter().map(|(code, _)| str_is("X", code)).collect());
    let prf =
        Formula::or_all(tb.accepted.iter().map(|(p, code)| Formula::and(str_is("P", p), str_is("X", code))).collect());
    let sat = Formula::or_all(tb.formulas.iter().map(|(code, f)| Formula::and(str_is("X", code), over_z(f))).collect());
    let bound = t.to_term(&NumTerm::lit(x));
    let body = Formula::imp(Formula::and(fla, prf), sat);
    Formula::al_s("P", bound.clone(), Formula::al_s("X", bound.clone(), Formula::al_s("Z", bound, body)))
}

/// The reflection sentence for the honest checker.
pub fn reflection_instance(system: System, t: &PolyBound, x: u64) -> Result<Formula, ReflectError> {
    reflection_instance_with(system, Checker::Honest, t, x)
}

pub fn reflection_instance_with(system: System, checker: Checker, t: &PolyBound, x: u64) -> Result<Formula, ReflectError> {
    Ok(sentence(&tables(system, checker, t, x)?, t, x))
}

/// A slice wide enough to evaluate the sentence.
pub fn instance_slice(t: &PolyBound, x: u64) -> FiniteSlice {
    FiniteSlice::new(1u32, t.eval(x) as usize).expect("nonzero bound")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub proof: String,
    pub formula: String,
    pub assignment: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionReport {
    pub table_len: usize,
    pub proofs_decoded: usize,
    pub formulas: usize,
    pub accepted: usize,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

/// Decides the sentence directly: every accepted proof is checked against
/// every `Z` up to the table length.
pub fn reflection_sweep(system: System, checker: Checker, t: &PolyBound, x: u64) -> Result<ReflectionReport, ReflectError> {
    let tb = tables(system, checker, t, x)?;
    let zs: Vec<Bits> = Bits::all_up_to(tb.len).collect();
    let mut counterexample = None;
    for (p, code) in &tb.accepted {
        let f = decode_formula(code).expect("accepted targets decode");
        if let Some(z) = zs.iter().find(|z| !f.eval(&|v| v.index < z.len() && z.get(v.index))) {
            counterexample = Some(Counterexample { proof: p.to_string(), formula: f.to_string(), assignment: z.to_string() });
            break;
        }
    }
    Ok(ReflectionReport {
        table_len: tb.len,
        proofs_decoded: tb.proofs_decoded,
        formulas: tb.formulas.len(),
        accepted: tb.accepted.len(),
        holds: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_lifted;
    use crate::formula::QuantClass;

    #[test]
    fn honest_holds_and_broken_fails() {
        let t = PolyBound::constant(11);
        let honest = reflection_sweep(System::Frege, Checker::Honest, &t, 0).unwrap();
        assert!(honest.holds);
        // ⟶ 1 is the only 11-bit proof with a one-formula endsequent
        assert_eq!(honest.accepted, 1);
        let broken = reflection_sweep(System::Frege, Checker::SkipAxiomShape, &t, 0).unwrap();
        assert!(!broken.holds);
        assert!(broken.accepted > honest.accepted);
    }

    #[test]
    fn sentence_agrees_with_sweep() {
        let t = PolyBound::constant(9);
        for checker in [Checker::Honest, Checker::SkipAxiomShape] {
            let phi = reflection_instance_with(System::Frege, checker, &t, 0).unwrap();
            assert_eq!(phi.classify(), QuantClass::PiB(1));
            let (truth, _) = eval_lifted(&phi, &instance_slice(&t, 0), &Default::default()).unwrap();
            let sweep = reflection_sweep(System::Frege, checker, &t, 0).unwrap();
            assert_eq!(truth, sweep.holds, "{checker:?}");
        }
    }

    #[test]
    fn table_cap() {
        assert_eq!(reflection_sweep(System::Frege, Checker::Honest, &PolyBound::constant(15), 0).unwrap_err(), ReflectError::TooLong(15));
    }
}
