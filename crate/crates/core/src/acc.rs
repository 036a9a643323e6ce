//! Σ^B_1 acceptance and reachability predicates for a machine with a
//! polynomial time bound.
//!
//! The witness `W` is a computation tableau flattened in mixed radix: field
//! `f` of cell `i` in row `j` is `W((j·width + i)·F + f)`, where `F = 1 + sb`
//! holds the tape bit and an `sb`-bit little-endian state field (0 = no
//! head). For acceptance both the row and cell indices run over
//! `0..=p(|X|)`, so `width = p(|X|) + 1`.
//!
//! A left move is stated from the receiving cell's side (cell `i` takes
//! the head from `i + 1`), which keeps every index a term without cutoff
//! subtraction; a left move on cell 0 and a right move on the last cell
//! leave the head in place.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::formula::{Formula, NumTerm};
use crate::poly::PolyBound;
use crate::tm::{Configuration, Move, TmDescription};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AccError {
    #[error("witness has {got} bits, the layout needs {need}")]
    Layout { got: usize, need: usize },
}

/// Dimensions of a tableau witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Layout {
    /// Rows are `0..=steps`.
    pub steps: usize,
    /// Cells per row.
    pub width: usize,
    /// Bits per cell.
    pub field: usize,
}

impl Layout {
    /// The acceptance layout for inputs of length `n`.
    pub fn acc(tm: &TmDescription, p: &PolyBound, n: usize) -> Self {
        let steps = p.eval(n as u64) as usize;
        Layout { steps, width: steps + 1, field: 1 + tm.state_bits() }
    }

    pub fn pos(&self, j: usize, i: usize, f: usize) -> usize {
        (j * self.width + i) * self.field + f
    }

    /// Bits covered by the layout; every one of them is constrained.
    pub fn len(&self) -> usize {
        (self.steps + 1) * self.width * self.field
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn state(&self, w: &Bits, j: usize, i: usize) -> u32 {
        (1..self.field).map(|s| (w.get(self.pos(j, i, s)) as u32) << (s - 1)).sum()
    }

    fn bit(&self, w: &Bits, j: usize, i: usize) -> bool {
        w.get(self.pos(j, i, 0))
    }
}

/// Formula vocabulary for one tableau layout.
struct Tableau<'a> {
    tm: &'a TmDescription,
    /// Name of the witness string.
    w: &'static str,
    /// Last row index.
    steps: NumTerm,
    /// Cells per row.
    width: NumTerm,
    field: usize,
}

fn v(name: &str) -> NumTerm {
    NumTerm::var(name)
}

impl Tableau<'_> {
    fn pos(&self, j: &NumTerm, i: &NumTerm, f: usize) -> NumTerm {
        let row = NumTerm::plus(NumTerm::times(j.clone(), self.width.clone()), i.clone());
        NumTerm::times(row, NumTerm::lit(self.field as u64)).add_const(f as u64)
    }

    fn bit(&self, j: &NumTerm, i: &NumTerm) -> Formula {
        Formula::memb(self.pos(j, i, 0), self.w)
    }

    fn bit_is(&self, j: &NumTerm, i: &NumTerm, b: bool) -> Formula {
        if b {
            self.bit(j, i)
        } else {
            Formula::not(self.bit(j, i))
        }
    }

    fn state_is(&self, j: &NumTerm, i: &NumTerm, q: u32) -> Formula {
        Formula::and_all(
            (1..self.field)
                .map(|s| {
                    let at = Formula::memb(self.pos(j, i, s), self.w);
                    if (q >> (s - 1)) & 1 == 1 {
                        at
                    } else {
                        Formula::not(at)
                    }
                })
                .collect(),
        )
    }

    /// `∀i < width. body`, written `∀i ≤ width (i < width → body)`.
    fn all_cells(&self, i: &str, body: Formula) -> Formula {
        Formula::al_n(i, self.width.clone(), Formula::imp(Formula::lt(v(i), self.width.clone()), body))
    }

    /// Transition, frame and head-movement clauses between rows `j` and `j+1` at cell `i`.
    fn step_clauses(&self, j: &NumTerm, i: &NumTerm) -> Formula {
        let j1 = j.clone().add_const(1);
        let i1 = i.clone().add_const(1);
        let has_next = Formula::leq(i.clone().add_const(2), self.width.clone());
        let is_last = Formula::eq(i1.clone(), self.width.clone());
        let mut clauses = vec![Formula::imp(
            self.state_is(j, i, 0),
            Formula::iff(self.bit(&j1, i), self.bit(j, i)),
        )];
        for (q, b, a) in self.tm.entries() {
            let here = Formula::and(self.state_is(j, i, q), self.bit_is(j, i, b));
            clauses.push(Formula::imp(here.clone(), self.bit_is(&j1, i, a.write)));
            let lands = |cell: &NumTerm| self.state_is(&j1, cell, a.state);
            match a.mv {
                Move::Stay => clauses.push(Formula::imp(here, lands(i))),
                Move::Right => {
                    clauses.push(Formula::imp(
                        here,
                        Formula::and(Formula::imp(has_next.clone(), lands(&i1)), Formula::imp(is_last.clone(), lands(i))),
                    ));
                }
                Move::Left => {
                    let from_right = Formula::and(self.state_is(j, &i1, q), self.bit_is(j, &i1, b));
                    clauses.push(Formula::imp(Formula::and(has_next.clone(), from_right), lands(i)));
                    clauses.push(Formula::imp(Formula::and(Formula::eq(i.clone(), NumTerm::Zero), here), lands(i)));
                }
            }
        }
        Formula::and_all(clauses)
    }

    /// Frame, transitions and single-head condition over all rows.
    fn matrix(&self) -> Formula {
        let (j, i, i2) = (v("j"), v("i"), v("ii"));
        let steps = Formula::al_n(
            "j",
            self.steps.clone(),
            Formula::imp(Formula::lt(j.clone(), self.steps.clone()), self.all_cells("i", self.step_clauses(&j, &i))),
        );
        let single_head = Formula::al_n(
            "j",
            self.steps.clone(),
            self.all_cells(
                "i",
                self.all_cells(
                    "ii",
                    Formula::imp(
                        Formula::not(Formula::eq(i.clone(), i2.clone())),
                        Formula::imp(Formula::not(self.state_is(&j, &i, 0)), self.state_is(&j, &i2, 0)),
                    ),
                ),
            ),
        );
        Formula::and(steps, single_head)
    }

    /// Row `j` equals the configuration string `y` field by field.
    fn row_is(&self, j: &NumTerm, y: &str) -> Formula {
        let (i, f) = (v("i"), v("f"));
        let at_w = NumTerm::plus(NumTerm::times(NumTerm::plus(NumTerm::times(j.clone(), self.width.clone()), i.clone()), NumTerm::lit(self.field as u64)), f.clone());
        let at_y = NumTerm::plus(NumTerm::times(i.clone(), NumTerm::lit(self.field as u64)), f.clone());
        self.all_cells(
            "i",
            Formula::al_n(
                "f",
                NumTerm::lit((self.field - 1) as u64),
                Formula::iff(Formula::memb(at_w, self.w), Formula::memb(at_y, y)),
            ),
        )
    }
}

fn acc_tableau<'a>(tm: &'a TmDescription, p: &PolyBound) -> Tableau<'a> {
    let steps = p.to_term(&NumTerm::len("X"));
    Tableau { tm, w: "W", width: steps.clone().add_const(1), steps, field: 1 + tm.state_bits() }
}

/// The Σ^B_0 matrix of the acceptance predicate, free in `X` and `W`.
pub fn acc_matrix(tm: &TmDescription, p: &PolyBound) -> Formula {
    let t = acc_tableau(tm, p);
    let (i, zero) = (v("i"), NumTerm::Zero);
    let x_len = NumTerm::len("X");
    let initial = Formula::and(
        t.all_cells(
            "i",
            Formula::and_all(vec![
                Formula::imp(Formula::lt(i.clone(), x_len.clone()), Formula::iff(t.bit(&zero, &i), Formula::memb(i.clone(), "X"))),
                Formula::imp(Formula::leq(x_len, i.clone()), Formula::not(t.bit(&zero, &i))),
                Formula::imp(Formula::lt(NumTerm::Zero, i.clone()), t.state_is(&zero, &i, 0)),
            ]),
        ),
        t.state_is(&zero, &zero, 1),
    );
    let accepting = Formula::ex_n("i", t.steps.clone(), t.state_is(&t.steps, &i, tm.k()));
    Formula::and_all(vec![initial, t.matrix(), accepting])
}

/// `∃W ≤ (p(|X|)+1)²·F. matrix(X, W)`.
pub fn compile_acc(tm: &TmDescription, p: &PolyBound) -> Formula {
    let t = acc_tableau(tm, p);
    let bound = NumTerm::times(NumTerm::times(t.width.clone(), t.width.clone()), NumTerm::lit(t.field as u64));
    Formula::ex_s("W", bound, acc_matrix(tm, p))
}

/// `REACH(Y, Yp)`: `Y` and `Yp` code configurations of `c` cells (`F` bits
/// each) and the machine goes from `Y` to `Yp` in exactly `p(c)` steps.
pub fn compile_reach(tm: &TmDescription, p: &PolyBound) -> Formula {
    let field = 1 + tm.state_bits();
    let c = v("c");
    let t = Tableau { tm, w: "W", steps: p.to_term(&c), width: c.clone(), field };
    let bound = NumTerm::times(NumTerm::times(t.steps.clone().add_const(1), c.clone()), NumTerm::lit(field as u64));
    let body = Formula::and_all(vec![t.row_is(&NumTerm::Zero, "Y"), t.matrix(), t.row_is(&t.steps, "Yp")]);
    Formula::ex_n(
        "c",
        NumTerm::len("Y"),
        Formula::and_all(vec![
            Formula::eq(NumTerm::times(c.clone(), NumTerm::lit(field as u64)), NumTerm::len("Y")),
            Formula::eq(NumTerm::len("Yp"), NumTerm::len("Y")),
            Formula::ex_s("W", bound, body),
        ]),
    )
}

/// A configuration as a string of `F`-bit cells.
pub fn encode_config(c: &Configuration, state_bits: usize) -> Bits {
    let f = 1 + state_bits;
    let mut out = Bits::zeros(c.cells.len() * f);
    for (i, cell) in c.cells.iter().enumerate() {
        out.set(i * f, cell.bit);
        for s in 0..state_bits {
            out.set(i * f + 1 + s, (cell.state >> s) & 1 == 1);
        }
    }
    out
}

/// The simulator's tableau for `x` in the acceptance layout.
pub fn witness_for(tm: &TmDescription, p: &PolyBound, x: &Bits) -> Bits {
    let l = Layout::acc(tm, p, x.len());
    let shown = Bits::from_bools(x.iter().take(l.width).collect());
    tm.run(&shown, l.steps, l.width).expect("width covers the shown input").to_witness()
}

/// Evaluates every clause of the acceptance matrix at the given `W`.
pub fn check_witness(tm: &TmDescription, p: &PolyBound, x: &Bits, w: &Bits) -> Result<bool, AccError> {
    let l = Layout::acc(tm, p, x.len());
    if w.len() < l.len() {
        return Err(AccError::Layout { got: w.len(), need: l.len() });
    }
    let last = l.width - 1;
    let state = |j, i| l.state(w, j, i);
    let bit = |j, i| l.bit(w, j, i);
    for i in 0..l.width {
        if bit(0, i) != x.get(i) || (i > 0 && state(0, i) != 0) {
            return Ok(false);
        }
    }
    if state(0, 0) != 1 {
        return Ok(false);
    }
    for j in 0..l.steps {
        for i in 0..l.width {
            if state(j, i) == 0 && bit(j + 1, i) != bit(j, i) {
                return Ok(false);
            }
            for (q, b, a) in tm.entries() {
                let here = state(j, i) == q && bit(j, i) == b;
                if here && bit(j + 1, i) != a.write {
                    return Ok(false);
                }
                let ok = match a.mv {
                    Move::Stay => !here || state(j + 1, i) == a.state,
                    Move::Right => {
                        !here || (i < last && state(j + 1, i + 1) == a.state) || (i == last && state(j + 1, i) == a.state)
                    }
                    Move::Left => {
                        let from_right = i < last && state(j, i + 1) == q && bit(j, i + 1) == b;
                        (!from_right || state(j + 1, i) == a.state) && (!(i == 0 && here) || state(j + 1, i) == a.state)
                    }
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    for j in 0..=l.steps {
        if (0..l.width).filter(|&i| state(j, i) != 0).count() > 1 {
            return Ok(false);
        }
    }
    Ok((0..l.width).any(|i| state(l.steps, i) == tm.k()))
}

/// Bound term value of the acceptance witness for inputs of length `n`.
pub fn acc_bound(tm: &TmDescription, p: &PolyBound, n: usize) -> BigUint {
    BigUint::from(Layout::acc(tm, p, n).len())
}
