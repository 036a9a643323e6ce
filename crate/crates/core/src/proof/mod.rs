//! PK-style sequent proofs and their checkers.
//!
//! Sequents are compared as sets, so contraction and exchange are implicit.
//! Each rule instance shares one context between premises and conclusion:
//! for a side with principal formula `C` and active formulas `P_i` in
//! premise `i`, there must be a `Γ` with `prem_i = Γ ∪ P_i` for all `i`
//! and `concl = Γ ∪ {C}`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::prop::{taut_check_capped, PropFormula};

pub mod corpus;
pub mod encode;
pub mod mutate;
pub mod reflect;
pub mod text;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequent {
    pub left: Vec<PropFormula>,
    pub right: Vec<PropFormula>,
}

impl Sequent {
    pub fn new(left: Vec<PropFormula>, right: Vec<PropFormula>) -> Self {
        Sequent { left, right }
    }

    fn sets(&self) -> (Set<'_>, Set<'_>) {
        (self.left.iter().collect(), self.right.iter().collect())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &PropFormula> {
        self.left.iter().chain(&self.right)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleTag {
    Axiom,
    WeakLeft,
    WeakRight,
    AndLeft,
    AndRight,
    OrLeft,
    OrRight,
    NotLeft,
    NotRight,
    /// The cut formula is entry `.0` of the first premise's right side.
    Cut(usize),
}

impl RuleTag {
    /// Every tag except cuts.
    pub const PLAIN: [RuleTag; 9] = [
        RuleTag::Axiom,
        RuleTag::WeakLeft,
        RuleTag::WeakRight,
        RuleTag::AndLeft,
        RuleTag::AndRight,
        RuleTag::OrLeft,
        RuleTag::OrRight,
        RuleTag::NotLeft,
        RuleTag::NotRight,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub seq: Sequent,
    pub rule: RuleTag,
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Proof {
    pub lines: Vec<Line>,
}

impl Proof {
    /// `A` when the last line is `⟶ A`.
    pub fn conclusion(&self) -> Option<&PropFormula> {
        let last = self.lines.last()?;
        match (last.seq.left.as_slice(), last.seq.right.as_slice()) {
            ([], [a]) => Some(a),
            _ => None,
        }
    }

    /// Deepest formula anywhere in the proof.
    pub fn max_depth(&self) -> usize {
        self.lines.iter().flat_map(|l| l.seq.formulas()).map(PropFormula::depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error("line {line} cites premise {premise}, which is not an earlier line")]
    Dangling { line: usize, premise: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum System {
    Frege,
    /// Every formula in the proof has depth at most `.0`.
    DepthFrege(usize),
}

type Set<'a> = BTreeSet<&'a PropFormula>;

/// Is there a `Γ` with `prem_i = Γ ∪ active_i` and `concl = Γ ∪ {principal}`?
fn shares_context(prems: &[(&Set<'_>, Set<'_>)], concl: &Set<'_>, principal: Option<&PropFormula>) -> bool {
    if principal.is_some_and(|c| !concl.contains(c)) {
        return false;
    }
    if prems.iter().any(|(p, act)| !act.is_subset(p)) {
        return false;
    }
    let mut lower: Set<'_> = concl.iter().copied().filter(|f| Some(*f) != principal).collect();
    for (p, act) in prems {
        lower.extend(p.difference(act).copied());
    }
    lower.iter().all(|f| concl.contains(f) && prems.iter().all(|(p, _)| p.contains(f)))
}

fn one<'a>(f: &'a PropFormula) -> Set<'a> {
    std::iter::once(f).collect()
}

fn line_ok(line: &Line, prems: &[&Sequent], axiom_shape: bool) -> bool {
    let (cl, cr) = line.seq.sets();
    let sets: Vec<(Set<'_>, Set<'_>)> = prems.iter().map(|s| s.sets()).collect();
    match line.rule {
        RuleTag::Axiom => {
            let truth = PropFormula::Const(true);
            let falsity = PropFormula::Const(false);
            prems.is_empty()
                && (!axiom_shape
                    || (cl.len() == 1 && cl == cr)
                    || (cl.is_empty() && cr == one(&truth))
                    || (cl == one(&falsity) && cr.is_empty()))
        }
        RuleTag::WeakLeft | RuleTag::WeakRight => {
            let [(pl, pr)] = sets.as_slice() else { return false };
            let (p, c, other_p, other_c) =
                if line.rule == RuleTag::WeakLeft { (pl, &cl, pr, &cr) } else { (pr, &cr, pl, &cl) };
            other_p == other_c && p.is_subset(c) && c.len() == p.len() + 1
        }
        RuleTag::AndLeft | RuleTag::OrRight => {
            let [(pl, pr)] = sets.as_slice() else { return false };
            let is_and = line.rule == RuleTag::AndLeft;
            let (p, c, other_p, other_c) = if is_and { (pl, &cl, pr, &cr) } else { (pr, &cr, pl, &cl) };
            other_p == other_c
                && c.iter().any(|f| match (f, is_and) {
                    (PropFormula::And(xs), true) | (PropFormula::Or(xs), false) => {
                        shares_context(&[(p, xs.iter().collect())], c, Some(f))
                    }
                    _ => false,
                })
        }
        RuleTag::AndRight | RuleTag::OrLeft => {
            let is_and = line.rule == RuleTag::AndRight;
            let (c, other_c) = if is_and { (&cr, &cl) } else { (&cl, &cr) };
            if sets.is_empty() || !sets.iter().all(|(pl, pr)| if is_and { pl == other_c } else { pr == other_c }) {
                return false;
            }
            c.iter().any(|f| match (f, is_and) {
                (PropFormula::And(xs), true) | (PropFormula::Or(xs), false) if xs.len() == sets.len() => {
                    let act: Vec<(&Set<'_>, Set<'_>)> = sets
                        .iter()
                        .zip(xs)
                        .map(|((pl, pr), x)| (if is_and { pr } else { pl }, one(x)))
                        .collect();
                    shares_context(&act, c, Some(f))
                }
                _ => false,
            })
        }
        RuleTag::NotLeft | RuleTag::NotRight => {
            let [(pl, pr)] = sets.as_slice() else { return false };
            let is_left = line.rule == RuleTag::NotLeft;
            // the negation appears on `to`, its body leaves `from`
            let (p_to, c_to, p_from, c_from) = if is_left { (pl, &cl, pr, &cr) } else { (pr, &cr, pl, &cl) };
            c_to.iter().any(|f| match f {
                PropFormula::Not(a) => {
                    shares_context(&[(p_to, Set::new())], c_to, Some(f))
                        && shares_context(&[(p_from, one(a))], c_from, None)
                }
                _ => false,
            })
        }
        RuleTag::Cut(i) => {
            let [(pl0, pr0), (pl1, pr1)] = sets.as_slice() else { return false };
            let Some(a) = prems[0].right.get(i) else { return false };
            shares_context(&[(pr0, one(a)), (pr1, Set::new())], &cr, None)
                && shares_context(&[(pl0, Set::new()), (pl1, one(a))], &cl, None)
        }
    }
}

/// With `axiom_shape` off, any premise-free axiom line is accepted; this is
/// the deliberately broken checker used to exercise reflection.
pub(crate) fn check_lines(pi: &Proof, target: &PropFormula, axiom_shape: bool) -> Result<bool, ProofError> {
    for (n, line) in pi.lines.iter().enumerate() {
        if let Some(&p) = line.premises.iter().find(|&&p| p >= n) {
            return Err(ProofError::Dangling { line: n, premise: p });
        }
    }
    let Some(last) = pi.lines.last() else { return Ok(false) };
    let end = Sequent::new(vec![], vec![target.clone()]);
    if last.seq.sets() != end.sets() {
        return Ok(false);
    }
    Ok(pi.lines.iter().all(|line| {
        let prems: Vec<&Sequent> = line.premises.iter().map(|&p| &pi.lines[p].seq).collect();
        line_ok(line, &prems, axiom_shape)
    }))
}

/// Every line follows by its rule and the endsequent is `⟶ target`.
pub fn check_frege(pi: &Proof, target: &PropFormula) -> Result<bool, ProofError> {
    check_lines(pi, target, true)
}

/// [`check_frege`] with every formula of depth at most `d`.
pub fn check_depth_frege(pi: &Proof, target: &PropFormula, d: usize) -> Result<bool, ProofError> {
    Ok(check_lines(pi, target, true)? && pi.max_depth() <= d)
}

pub fn check(system: System, pi: &Proof, target: &PropFormula) -> Result<bool, ProofError> {
    match system {
        System::Frege => check_frege(pi, target),
        System::DepthFrege(d) => check_depth_frege(pi, target, d),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub accepted: usize,
    pub rejected: usize,
    /// Indices of accepted proofs whose conclusion is not a tautology or
    /// could not be checked within the variable cap.
    pub failures: Vec<usize>,
}

/// Truth-table check of every accepted conclusion.
pub fn soundness_sweep(system: System, var_cap: usize, corpus: &[Proof]) -> SoundnessReport {
    let verdicts = crate::par::map(corpus, |pi| {
        let target = pi.conclusion()?;
        match check(system, pi, target) {
            Ok(true) => Some(taut_check_capped(target, var_cap).unwrap_or(false)),
            _ => None,
        }
    });
    let mut report = SoundnessReport::default();
    for (n, v) in verdicts.into_iter().enumerate() {
        match v {
            None => report.rejected += 1,
            Some(ok) => {
                report.accepted += 1;
                if !ok {
                    report.failures.push(n);
                }
            }
        }
    }
    report
}
