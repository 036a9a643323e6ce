//! Conflict-driven clause-learning SAT solver and Tseitin encoding of
//! [`PropFormula`]s.
//!
//! Two watched literals with blockers, first-UIP learning, VSIDS decisions
//! with phase saving, Luby restarts. Learnt clauses are kept; the instances
//! produced by the lifted evaluator are small enough that database
//! reduction does not pay off.

use std::collections::HashMap;

use crate::prop::{PVar, PropFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: u32, positive: bool) -> Lit {
        Lit(var << 1 | (!positive) as u32)
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Default)]
pub struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<Watcher>>,
    /// Per variable: 0 false, 1 true, [`UNDEF`].
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    polarity: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    heap: Vec<u32>,
    heap_pos: Vec<i32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    unsat: bool,
    pub conflicts: u64,
}

impl Solver {
    pub fn new() -> Self {
        Solver { var_inc: 1.0, ..Default::default() }
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn new_var(&mut self) -> u32 {
        let v = self.assigns.len() as u32;
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.polarity.push(false);
        self.activity.push(0.0);
        self.heap_pos.push(-1);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap_insert(v);
        v
    }

    fn lit_value(&self, l: Lit) -> u8 {
        let a = self.assigns[l.var() as usize];
        if a == UNDEF {
            UNDEF
        } else {
            a ^ (!l.positive()) as u8
        }
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        match self.assigns[var as usize] {
            UNDEF => None,
            a => Some(a == 1),
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause at decision level 0. Returns false once the clause set
    /// is known unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if self.unsat {
            return false;
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if c.iter().any(|&l| self.lit_value(l) == 1) {
            return true;
        }
        c.retain(|&l| self.lit_value(l) != 0);
        match c.len() {
            0 => {
                self.unsat = true;
                false
            }
            1 => {
                self.enqueue(c[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
                !self.unsat
            }
            _ => {
                self.attach(c);
                true
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[c[0].idx()].push(Watcher { cref, blocker: c[1] });
        self.watches[c[1].idx()].push(Watcher { cref, blocker: c[0] });
        self.clauses.push(c);
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var() as usize;
        self.assigns[v] = l.positive() as u8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.idx()]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.lit_value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                let c = &mut self.clauses[cref];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if first != w.blocker && lit_value_of(&self.assigns, first) == 1 {
                    ws[j] = Watcher { cref: w.cref, blocker: first };
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    if lit_value_of(&self.assigns, c[k]) != 0 {
                        c.swap(1, k);
                        let nl = c[1];
                        self.watches[nl.idx()].push(Watcher { cref: w.cref, blocker: first });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watcher { cref: w.cref, blocker: first };
                j += 1;
                if self.lit_value(first) == 0 {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.idx()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        loop {
            let start = if p.is_some() { 1 } else { 0 };
            for k in start..self.clauses[confl as usize].len() {
                let q = self.clauses[confl as usize][k];
                let v = q.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump(q.var());
                    self.seen[v] = true;
                    if self.level[v] >= self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            let lit = loop {
                idx -= 1;
                let l = self.trail[idx];
                if self.seen[l.var() as usize] {
                    break l;
                }
            };
            p = Some(lit);
            self.seen[lit.var() as usize] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var() as usize];
        }
        learnt[0] = !p.unwrap();
        for l in &learnt[1..] {
            self.seen[l.var() as usize] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let (mi, _) = learnt.iter().enumerate().skip(1).max_by_key(|(_, l)| self.level[l.var() as usize]).unwrap();
            learnt.swap(1, mi);
            back = self.level[learnt[1].var() as usize];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var() as usize;
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.polarity[v] = l.positive();
            if self.heap_pos[v] < 0 {
                self.heap_insert(v as u32);
            }
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = lim;
    }

    fn bump(&mut self, v: u32) {
        let a = &mut self.activity[v as usize];
        *a += self.var_inc;
        if *a > 1e100 {
            for x in &mut self.activity {
                *x *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap_pos[v as usize] >= 0 {
            self.heap_up(self.heap_pos[v as usize] as usize);
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap_pop() {
            if self.assigns[v as usize] == UNDEF {
                return Some(Lit::new(v, self.polarity[v as usize]));
            }
        }
        None
    }

    /// Decides satisfiability; on `true` the model is readable via [`Solver::value`].
    pub fn solve(&mut self) -> bool {
        if self.unsat {
            return false;
        }
        if self.propagate().is_some() {
            self.unsat = true;
            return false;
        }
        let mut restart = 0u32;
        loop {
            let budget = 100 * luby(restart);
            restart += 1;
            let mut used = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.conflicts += 1;
                    used += 1;
                    if self.decision_level() == 0 {
                        self.unsat = true;
                        return false;
                    }
                    let (learnt, back) = self.analyze(confl);
                    self.backtrack(back);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], NO_REASON);
                    } else {
                        let first = learnt[0];
                        let cref = self.attach(learnt);
                        self.enqueue(first, cref);
                    }
                    self.var_inc /= 0.95;
                } else {
                    if used >= budget {
                        self.backtrack(0);
                        break;
                    }
                    match self.pick_branch() {
                        None => return true,
                        Some(l) => {
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, NO_REASON);
                        }
                    }
                }
            }
        }
    }

    // --- activity heap (max-heap on `activity`)

    fn heap_insert(&mut self, v: u32) {
        self.heap_pos[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.heap_up(self.heap.len() - 1);
    }

    fn heap_pop(&mut self) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.heap_pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.heap_pos[last as usize] = 0;
            self.heap_down(0);
        }
        Some(top)
    }

    fn heap_up(&mut self, mut i: usize) {
        let v = self.heap[i];
        let act = self.activity[v as usize];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if self.activity[pv as usize] >= act {
                break;
            }
            self.heap[i] = pv;
            self.heap_pos[pv as usize] = i as i32;
            i = parent;
        }
        self.heap[i] = v;
        self.heap_pos[v as usize] = i as i32;
    }

    fn heap_down(&mut self, mut i: usize) {
        let v = self.heap[i];
        let act = self.activity[v as usize];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && self.activity[self.heap[r] as usize] > self.activity[self.heap[l] as usize] { r } else { l };
            let cv = self.heap[c];
            if self.activity[cv as usize] <= act {
                break;
            }
            self.heap[i] = cv;
            self.heap_pos[cv as usize] = i as i32;
            i = c;
        }
        self.heap[i] = v;
        self.heap_pos[v as usize] = i as i32;
    }
}

fn lit_value_of(assigns: &[u8], l: Lit) -> u8 {
    let a = assigns[l.var() as usize];
    if a == UNDEF {
        UNDEF
    } else {
        a ^ (!l.positive()) as u8
    }
}

fn luby(i: u32) -> u64 {
    // i-th element (0-based) of 1,1,2,1,1,2,4,...
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = i as u64;
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1u64 << seq
}

/// Tseitin encoding: every gate gets a variable equivalent to it.
pub struct Encoder {
    pub solver: Solver,
    pub vars: HashMap<PVar, u32>,
    truth: Option<u32>,
}

impl Default for Encoder {
    fn default() -> Self {
        Self::new()
    }
}

impl Encoder {
    pub fn new() -> Self {
        Encoder { solver: Solver::new(), vars: HashMap::new(), truth: None }
    }

    fn constant(&mut self, b: bool) -> Lit {
        let t = match self.truth {
            Some(t) => t,
            None => {
                let t = self.solver.new_var();
                self.solver.add_clause(&[Lit::new(t, true)]);
                self.truth = Some(t);
                t
            }
        };
        Lit::new(t, b)
    }

    pub fn encode(&mut self, p: &PropFormula) -> Lit {
        match p {
            PropFormula::Const(b) => self.constant(*b),
            PropFormula::Var(v) => {
                let solver = &mut self.solver;
                let id = *self.vars.entry(v.clone()).or_insert_with(|| solver.new_var());
                Lit::new(id, true)
            }
            PropFormula::Not(x) => !self.encode(x),
            PropFormula::And(xs) | PropFormula::Or(xs) => {
                let is_and = matches!(p, PropFormula::And(_));
                let kids: Vec<Lit> = xs.iter().map(|x| self.encode(x)).collect();
                if kids.len() == 1 {
                    return kids[0];
                }
                let g = Lit::new(self.solver.new_var(), true);
                // and: g → k for each k, and (∧k) → g; or is the dual
                let (g, kids): (Lit, Vec<Lit>) = if is_and { (g, kids) } else { (!g, kids.into_iter().map(|k| !k).collect()) };
                let mut big = vec![g];
                for &k in &kids {
                    self.solver.add_clause(&[!g, k]);
                    big.push(!k);
                }
                self.solver.add_clause(&big);
                if is_and {
                    g
                } else {
                    !g
                }
            }
        }
    }

    /// Asserts `p` and solves.
    pub fn assert_and_solve(&mut self, p: &PropFormula) -> bool {
        let l = self.encode(p);
        self.solver.add_clause(&[l]);
        self.solver.solve()
    }

    pub fn model_value(&self, v: &PVar) -> Option<bool> {
        self.vars.get(v).and_then(|&id| self.solver.value(id))
    }
}

/// Satisfiability of a propositional formula.
pub fn satisfiable(p: &PropFormula) -> bool {
    match p {
        PropFormula::Const(b) => *b,
        _ => Encoder::new().assert_and_solve(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::brute_sat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn luby_prefix() {
        let got: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    fn pigeonhole(holes: usize) -> Solver {
        let mut s = Solver::new();
        let pigeons = holes + 1;
        let v: Vec<Vec<u32>> = (0..pigeons).map(|_| (0..holes).map(|_| s.new_var()).collect()).collect();
        for p in &v {
            s.add_clause(&p.iter().map(|&x| Lit::new(x, true)).collect::<Vec<_>>());
        }
        for h in 0..holes {
            for a in 0..pigeons {
                for b in a + 1..pigeons {
                    s.add_clause(&[Lit::new(v[a][h], false), Lit::new(v[b][h], false)]);
                }
            }
        }
        s
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for h in 1..=6 {
            assert!(!pigeonhole(h).solve(), "php {h}");
        }
    }

    #[test]
    fn random_3cnf_agrees_with_truth_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(3..12);
            let m = rng.gen_range(1..(5 * n));
            let clauses: Vec<Vec<(usize, bool)>> =
                (0..m).map(|_| (0..3).map(|_| (rng.gen_range(0..n), rng.gen())).collect()).collect();
            let f = PropFormula::And(
                clauses
                    .iter()
                    .map(|c| {
                        PropFormula::Or(
                            c.iter()
                                .map(|&(v, s)| {
                                    let x = PropFormula::var("p", v);
                                    if s {
                                        x
                                    } else {
                                        PropFormula::not(x)
                                    }
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            );
            let expect = brute_sat(&f, 20).unwrap().is_some();
            let mut enc = Encoder::new();
            let got = enc.assert_and_solve(&f);
            assert_eq!(got, expect);
            if got {
                assert!(f.eval(&|v: &PVar| enc.model_value(v).unwrap_or(false)));
            }
        }
    }

    #[test]
    fn nested_gates_and_constants() {
        let x = |i| PropFormula::var("X", i);
        let f = PropFormula::And(vec![
            PropFormula::Or(vec![x(0), PropFormula::Const(false)]),
            PropFormula::not(PropFormula::And(vec![x(0), x(1)])),
            PropFormula::Or(vec![x(1), PropFormula::not(PropFormula::Or(vec![x(2), x(0)]))]),
        ]);
        assert!(!satisfiable(&f));
        assert!(satisfiable(&PropFormula::Or(vec![x(0), PropFormula::Const(true)])));
        assert!(!satisfiable(&PropFormula::Or(vec![])));
    }
}
