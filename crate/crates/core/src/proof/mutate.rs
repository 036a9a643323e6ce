//! Single-line corruptions of a proof and a sweep that expects the checker
//! to reject every one.

use serde::Serialize;

use super::{check, Proof, RuleTag, System};
use crate::prop::PropFormula;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Mutation {
    Rule { line: usize, to: String },
    Premise { line: usize, slot: usize, to: usize },
    Drop { line: usize, right: bool, pos: usize },
    Insert { line: usize, right: bool },
    Negate { line: usize, right: bool, pos: usize },
}

fn fresh_var(pi: &Proof) -> PropFormula {
    let mut top = 0;
    for l in &pi.lines {
        for f in l.seq.formulas() {
            for v in f.vars() {
                top = top.max(v.index + 1);
            }
        }
    }
    PropFormula::var("x", top)
}

/// Every corruption of one line: another rule tag, another earlier premise,
/// a dropped, inserted or negated formula.
pub fn mutations(pi: &Proof) -> Vec<(Mutation, Proof)> {
    let fresh = fresh_var(pi);
    let mut out = Vec::new();
    for (n, line) in pi.lines.iter().enumerate() {
        let with = |edit: &dyn Fn(&mut Proof)| {
            let mut m = pi.clone();
            edit(&mut m);
            m
        };
        let tags = RuleTag::PLAIN.into_iter().chain((0..3).map(RuleTag::Cut));
        for to in tags.filter(|t| *t != line.rule) {
            out.push((Mutation::Rule { line: n, to: to.to_string() }, with(&|m| m.lines[n].rule = to)));
        }
        for (slot, &p) in line.premises.iter().enumerate() {
            for to in (0..n).filter(|&j| j != p) {
                out.push((Mutation::Premise { line: n, slot, to }, with(&|m| m.lines[n].premises[slot] = to)));
            }
        }
        for right in [false, true] {
            let on_side = |edit: &dyn Fn(&mut Vec<PropFormula>)| {
                with(&|m| {
                    let s = &mut m.lines[n].seq;
                    edit(if right { &mut s.right } else { &mut s.left })
                })
            };
            let len = if right { line.seq.right.len() } else { line.seq.left.len() };
            for pos in 0..len {
                out.push((Mutation::Drop { line: n, right, pos }, on_side(&|v| {
                    v.remove(pos);
                })));
                out.push((Mutation::Negate { line: n, right, pos }, on_side(&|v| v[pos] = PropFormula::not(v[pos].clone()))));
            }
            out.push((Mutation::Insert { line: n, right }, on_side(&|v| v.push(fresh.clone()))));
        }
    }
    out
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MutationReport {
    pub total: usize,
    pub survivors: Vec<Mutation>,
}

/// Checks every mutant against the original target.
pub fn mutation_sweep(system: System, pi: &Proof, target: &PropFormula) -> MutationReport {
    let all = mutations(pi);
    let survived = crate::par::map(&all, |(_, m)| check(system, m, target) == Ok(true));
    MutationReport {
        total: all.len(),
        survivors: all.into_iter().zip(survived).filter(|(_, s)| *s).map(|((m, _), _)| m).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::corpus;

    #[test]
    fn every_corpus_mutant_is_rejected() {
        for (name, pi) in corpus::proofs() {
            let target = pi.conclusion().unwrap().clone();
            let r = mutation_sweep(System::Frege, &pi, &target);
            assert!(r.total > 10 * pi.lines.len(), "{name}");
            assert!(r.survivors.is_empty(), "{name}: {:?}", r.survivors);
        }
    }
}
