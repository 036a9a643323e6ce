//! Ten valid proofs over the variables `x_i`, plus a forged one.
//!
//! No two lines of a proof carry the same sequent and no side lists a
//! formula twice, so every single-line corruption changes what some rule
//! instance sees.

use super::text::parse_proof;
use super::{Line, Proof, RuleTag, Sequent};
use crate::prop::PropFormula;

pub const EXCLUDED_MIDDLE_PK: &str = include_str!("../../data/proofs/excluded-middle.pk");
pub const BAD_PK: &str = include_str!("../../data/proofs/bad.pk");

fn x(i: usize) -> PropFormula {
    PropFormula::var("x", i)
}

fn not(a: PropFormula) -> PropFormula {
    PropFormula::not(a)
}

fn and(xs: &[PropFormula]) -> PropFormula {
    PropFormula::And(xs.to_vec())
}

fn or(xs: &[PropFormula]) -> PropFormula {
    PropFormula::Or(xs.to_vec())
}

#[derive(Default)]
struct Builder {
    lines: Vec<Line>,
}

impl Builder {
    fn line(&mut self, left: &[PropFormula], right: &[PropFormula], rule: RuleTag, premises: &[usize]) -> usize {
        self.lines.push(Line { seq: Sequent::new(left.to_vec(), right.to_vec()), rule, premises: premises.to_vec() });
        self.lines.len() - 1
    }

    fn ax(&mut self, a: &PropFormula) -> usize {
        self.line(&[a.clone()], &[a.clone()], RuleTag::Axiom, &[])
    }

    fn done(self) -> Proof {
        Proof { lines: self.lines }
    }
}

use RuleTag::*;

fn excluded_middle() -> Proof {
    let mut b = Builder::default();
    let a = b.ax(&x(0));
    let n = b.line(&[], &[x(0), not(x(0))], NotRight, &[a]);
    b.line(&[], &[or(&[x(0), not(x(0))])], OrRight, &[n]);
    b.done()
}

fn non_contradiction() -> Proof {
    let mut b = Builder::default();
    let a = b.ax(&x(0));
    let n = b.line(&[x(0), not(x(0))], &[], NotLeft, &[a]);
    let c = b.line(&[and(&[x(0), not(x(0))])], &[], AndLeft, &[n]);
    b.line(&[], &[not(and(&[x(0), not(x(0))]))], NotRight, &[c]);
    b.done()
}

fn and_commutes() -> Proof {
    let (p, q) = (x(0), x(1));
    let (pq, qp) = (and(&[p.clone(), q.clone()]), and(&[q.clone(), p.clone()]));
    let mut b = Builder::default();
    let a0 = b.ax(&p);
    let a1 = b.ax(&q);
    let w0 = b.line(&[p.clone(), q.clone()], &[p.clone()], WeakLeft, &[a0]);
    let w1 = b.line(&[p.clone(), q.clone()], &[q.clone()], WeakLeft, &[a1]);
    let r = b.line(&[p.clone(), q.clone()], &[qp.clone()], AndRight, &[w1, w0]);
    let l = b.line(&[pq.clone()], &[qp.clone()], AndLeft, &[r]);
    let n = b.line(&[], &[not(pq.clone()), qp.clone()], NotRight, &[l]);
    b.line(&[], &[or(&[not(pq), qp])], OrRight, &[n]);
    b.done()
}

fn or_commutes() -> Proof {
    let (p, q) = (x(0), x(1));
    let (pq, qp) = (or(&[p.clone(), q.clone()]), or(&[q.clone(), p.clone()]));
    let mut b = Builder::default();
    let a0 = b.ax(&p);
    let a1 = b.ax(&q);
    let w0 = b.line(&[p.clone()], &[q.clone(), p.clone()], WeakRight, &[a0]);
    let w1 = b.line(&[q.clone()], &[q.clone(), p.clone()], WeakRight, &[a1]);
    let l = b.line(&[pq.clone()], &[q.clone(), p.clone()], OrLeft, &[w0, w1]);
    let r = b.line(&[pq.clone()], &[qp.clone()], OrRight, &[l]);
    let n = b.line(&[], &[not(pq.clone()), qp.clone()], NotRight, &[r]);
    b.line(&[], &[or(&[not(pq), qp])], OrRight, &[n]);
    b.done()
}

fn triple_negation() -> Proof {
    let p = x(0);
    let mut b = Builder::default();
    let a = b.ax(&p);
    let n1 = b.line(&[], &[p.clone(), not(p.clone())], NotRight, &[a]);
    let n2 = b.line(&[not(not(p.clone()))], &[p.clone()], NotLeft, &[n1]);
    let n3 = b.line(&[], &[not(not(not(p.clone()))), p.clone()], NotRight, &[n2]);
    b.line(&[], &[or(&[not(not(not(p.clone()))), p])], OrRight, &[n3]);
    b.done()
}

fn modus_ponens() -> Proof {
    let (p, q) = (x(0), x(1));
    let imp = or(&[not(p.clone()), q.clone()]);
    let mut b = Builder::default();
    let a0 = b.ax(&p);
    let a1 = b.ax(&q);
    let n = b.line(&[p.clone(), not(p.clone())], &[], NotLeft, &[a0]);
    let w0 = b.line(&[p.clone(), not(p.clone())], &[q.clone()], WeakRight, &[n]);
    let w1 = b.line(&[p.clone(), q.clone()], &[q.clone()], WeakLeft, &[a1]);
    let l = b.line(&[p.clone(), imp.clone()], &[q.clone()], OrLeft, &[w0, w1]);
    let r1 = b.line(&[p.clone()], &[not(imp.clone()), q.clone()], NotRight, &[l]);
    let r2 = b.line(&[], &[not(p.clone()), not(imp.clone()), q.clone()], NotRight, &[r1]);
    b.line(&[], &[or(&[not(p), not(imp), q])], OrRight, &[r2]);
    b.done()
}

/// Proves the lemma `x1 ∨ ¬x1` once and cuts it into a context.
fn lemma_by_cut() -> Proof {
    let (p, q) = (x(0), x(1));
    let lemma = or(&[q.clone(), not(q.clone())]);
    let goal = and(&[p.clone(), lemma.clone()]);
    let mut b = Builder::default();
    let a0 = b.ax(&q);
    let n = b.line(&[], &[q.clone(), not(q.clone())], NotRight, &[a0]);
    let lem = b.line(&[], &[lemma.clone()], OrRight, &[n]);
    let ap = b.ax(&p);
    let al = b.ax(&lemma);
    let w0 = b.line(&[p.clone(), lemma.clone()], &[p.clone()], WeakLeft, &[ap]);
    let w1 = b.line(&[p.clone(), lemma.clone()], &[lemma.clone()], WeakLeft, &[al]);
    let g = b.line(&[p.clone(), lemma.clone()], &[goal.clone()], AndRight, &[w0, w1]);
    let lp = b.line(&[p.clone()], &[lemma.clone()], WeakLeft, &[lem]);
    let lpg = b.line(&[p.clone()], &[lemma.clone(), goal.clone()], WeakRight, &[lp]);
    let cut = b.line(&[p.clone()], &[goal.clone()], Cut(0), &[lpg, g]);
    let r = b.line(&[], &[not(p.clone()), goal.clone()], NotRight, &[cut]);
    b.line(&[], &[or(&[not(p), goal])], OrRight, &[r]);
    b.done()
}

fn de_morgan() -> Proof {
    let (p, q) = (x(0), x(1));
    let pq = or(&[p.clone(), q.clone()]);
    let npq = not(pq.clone());
    let both = and(&[not(p.clone()), not(q.clone())]);
    let mut b = Builder::default();
    let half = |b: &mut Builder, v: &PropFormula| {
        let a = b.ax(v);
        let w = b.line(&[v.clone()], &[p.clone(), q.clone()], WeakRight, &[a]);
        let o = b.line(&[v.clone()], &[pq.clone()], OrRight, &[w]);
        let l = b.line(&[v.clone(), npq.clone()], &[], NotLeft, &[o]);
        b.line(&[npq.clone()], &[not(v.clone())], NotRight, &[l])
    };
    let hp = half(&mut b, &p);
    let hq = half(&mut b, &q);
    let r = b.line(&[npq.clone()], &[both.clone()], AndRight, &[hp, hq]);
    let n = b.line(&[], &[not(npq.clone()), both.clone()], NotRight, &[r]);
    b.line(&[], &[or(&[not(npq), both])], OrRight, &[n]);
    b.done()
}

fn distributivity() -> Proof {
    let (p, q, r) = (x(0), x(1), x(2));
    let (pq, pr) = (and(&[p.clone(), q.clone()]), and(&[p.clone(), r.clone()]));
    let lhs = and(&[p.clone(), or(&[q.clone(), r.clone()])]);
    let rhs = or(&[pq.clone(), pr.clone()]);
    let mut b = Builder::default();
    let ap = b.ax(&p);
    let aq = b.ax(&q);
    let ar = b.ax(&r);
    let branch = |b: &mut Builder, v: &PropFormula, av: usize, conj: &PropFormula| {
        let w0 = b.line(&[p.clone(), v.clone()], &[p.clone()], WeakLeft, &[ap]);
        let w1 = b.line(&[p.clone(), v.clone()], &[v.clone()], WeakLeft, &[av]);
        let c = b.line(&[p.clone(), v.clone()], &[conj.clone()], AndRight, &[w0, w1]);
        b.line(&[p.clone(), v.clone()], &[pq.clone(), pr.clone()], WeakRight, &[c])
    };
    let bq = branch(&mut b, &q, aq, &pq);
    let br = branch(&mut b, &r, ar, &pr);
    let l = b.line(&[p.clone(), or(&[q.clone(), r.clone()])], &[pq.clone(), pr.clone()], OrLeft, &[bq, br]);
    let al = b.line(&[lhs.clone()], &[pq.clone(), pr.clone()], AndLeft, &[l]);
    let o = b.line(&[lhs.clone()], &[rhs.clone()], OrRight, &[al]);
    let n = b.line(&[], &[not(lhs.clone()), rhs.clone()], NotRight, &[o]);
    b.line(&[], &[or(&[not(lhs), rhs])], OrRight, &[n]);
    b.done()
}

/// `x0, x0 → x1, x1 → x2 ⊢ x2`, chaining the two steps with a cut on `x1`.
fn chain_by_cut() -> Proof {
    let (p, q, r) = (x(0), x(1), x(2));
    let i1 = or(&[not(p.clone()), q.clone()]);
    let i2 = or(&[not(q.clone()), r.clone()]);
    let mut b = Builder::default();
    let (ap, aq, ar) = (b.ax(&p), b.ax(&q), b.ax(&r));
    // a, (¬a ∨ c) ⟶ c from the axioms `aa` and `ac`
    let mp = |b: &mut Builder, a: &PropFormula, c: &PropFormula, imp: &PropFormula, aa: usize, ac: usize| {
        let n = b.line(&[a.clone(), not(a.clone())], &[], NotLeft, &[aa]);
        let w0 = b.line(&[a.clone(), not(a.clone())], &[c.clone()], WeakRight, &[n]);
        let w1 = b.line(&[a.clone(), c.clone()], &[c.clone()], WeakLeft, &[ac]);
        b.line(&[a.clone(), imp.clone()], &[c.clone()], OrLeft, &[w0, w1])
    };
    let m1 = mp(&mut b, &p, &q, &i1, ap, aq);
    let m2 = mp(&mut b, &q, &r, &i2, aq, ar);
    let ctx = [p.clone(), i1.clone(), i2.clone()];
    // x0, I1, I2 ⟶ x1, x2
    let s1 = b.line(&[p.clone(), i1.clone(), i2.clone()], &[q.clone()], WeakLeft, &[m1]);
    let s2 = b.line(&ctx, &[q.clone(), r.clone()], WeakRight, &[s1]);
    // x0, I1, I2, x1 ⟶ x2
    let t1 = b.line(&[q.clone(), i2.clone(), p.clone()], &[r.clone()], WeakLeft, &[m2]);
    let t2 = b.line(&[q.clone(), i2.clone(), p.clone(), i1.clone()], &[r.clone()], WeakLeft, &[t1]);
    let cut = b.line(&ctx, &[r.clone()], Cut(0), &[s2, t2]);
    let n1 = b.line(&[p.clone(), i1.clone()], &[not(i2.clone()), r.clone()], NotRight, &[cut]);
    let n2 = b.line(&[p.clone()], &[not(i1.clone()), not(i2.clone()), r.clone()], NotRight, &[n1]);
    let n3 = b.line(&[], &[not(p.clone()), not(i1.clone()), not(i2.clone()), r.clone()], NotRight, &[n2]);
    b.line(&[], &[or(&[not(p), not(i1), not(i2), r])], OrRight, &[n3]);
    b.done()
}

/// The valid corpus, named.
pub fn proofs() -> Vec<(&'static str, Proof)> {
    vec![
        ("excluded-middle", excluded_middle()),
        ("non-contradiction", non_contradiction()),
        ("and-commutes", and_commutes()),
        ("or-commutes", or_commutes()),
        ("triple-negation", triple_negation()),
        ("modus-ponens", modus_ponens()),
        ("lemma-by-cut", lemma_by_cut()),
        ("de-morgan", de_morgan()),
        ("distributivity", distributivity()),
        ("chain-by-cut", chain_by_cut()),
    ]
}

/// A one-line "proof" of `x0 ∧ ¬x0` that cites the axiom rule.
pub fn forged() -> Proof {
    parse_proof(BAD_PK).expect("shipped proof parses")
}

/// `p ⟶ p` followed by a cut on a formula of depth `depth`, ending in `⟶ p ∨ ¬p`.
pub fn deep_cut(depth: usize) -> Proof {
    let p = x(0);
    let mut deep = x(1);
    for i in 0..depth {
        deep = if i % 2 == 0 { and(&[deep, x(2)]) } else { or(&[deep, x(2)]) };
    }
    let goal = or(&[p.clone(), not(p.clone())]);
    let mut b = Builder::default();
    let a = b.ax(&p);
    let n = b.line(&[], &[p.clone(), not(p.clone())], NotRight, &[a]);
    let g = b.line(&[], &[goal.clone()], OrRight, &[n]);
    let wr = b.line(&[], &[deep.clone(), goal.clone()], WeakRight, &[g]);
    let wl = b.line(&[deep.clone()], &[goal.clone()], WeakLeft, &[g]);
    b.line(&[], &[goal], Cut(0), &[wr, wl]);
    b.done()
}
