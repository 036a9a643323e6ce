//! Σ^B_0 definitions of small-space computations by iterated
//! divide-and-conquer over intermediate configurations.
//!
//! A configuration is `s` cells of `F = 1 + sb` bits (tape bit, then the
//! state field, 0 = no head), packed into one number: field `f` of cell `i`
//! is bit `i·F + f`. A level-`ℓ` computation `comp` holds rows `0..=b`,
//! row `r` being the configuration after `r·b^ℓ` steps, with field `f` of
//! cell `i` in row `r` at bit `(r·s + i)·F + f`. Level 0 checks each row
//! against the transition function; level `ℓ > 0` checks each row hand-off
//! with a level `ℓ−1` computation started from the previous row.
//!
//! Every quantifier bound is a literal fixed by [`NepoBounds`], so the
//! emitted formulas only mention `X` through `X(i)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::eval::FiniteSlice;
use crate::formula::{Formula, NumTerm};
use crate::tm::{Configuration, Move, TmDescription};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NepoError {
    #[error("space exponent {0}/{1} must satisfy 0 < eps <= 1/k")]
    Eps(u32, u32),
    #[error("input-length exponent k must be positive")]
    K,
    #[error("base length m must be at least 2")]
    M,
    #[error("level {level} exceeds recursion depth {d}")]
    Level { level: u32, d: u32 },
    #[error("depth {d} covers {covered} steps, the time bound is {time}")]
    Depth { d: u32, covered: BigUint, time: BigUint },
}

/// Parameters of a `TimeSpace(m^c, m^eps)` computation on inputs of
/// length up to `m^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NepoBounds {
    pub c: u32,
    /// `(numerator, denominator)` in lowest terms.
    pub eps: (u32, u32),
    pub k: u32,
    pub d: u32,
    pub m: u64,
}

/// `⌈m^(num/den)⌉` by exact integer root.
pub fn ceil_pow(m: u64, num: u32, den: u32) -> BigUint {
    let x = BigUint::from(m).pow(num);
    let r = x.nth_root(den);
    if r.pow(den) < x {
        r + 1u32
    } else {
        r
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NepoBounds {
    /// Bounds with the least depth whose budget `b^(d+1) − 1` covers `m^c`.
    pub fn new(m: u64, c: u32, eps: (u32, u32), k: u32) -> Result<Self, NepoError> {
        if k == 0 {
            return Err(NepoError::K);
        }
        if m < 2 {
            return Err(NepoError::M);
        }
        let g = gcd(eps.0, eps.1).max(1);
        let eps = (eps.0 / g, eps.1 / g);
        if eps.0 == 0 || eps.1 == 0 || u64::from(eps.0) * u64::from(k) > u64::from(eps.1) {
            return Err(NepoError::Eps(eps.0, eps.1));
        }
        let mut b = NepoBounds { c, eps, k, d: 0, m };
        let (base, time) = (BigUint::from(b.branching()), b.time());
        let mut reach = base.clone();
        while reach <= time {
            reach *= &base;
            b.d += 1;
        }
        Ok(b)
    }

    /// Overrides the recursion depth; it must still cover the time bound.
    pub fn with_depth(mut self, d: u32) -> Result<Self, NepoError> {
        let covered = BigUint::from(self.branching()).pow(d + 1) - 1u32;
        if covered < self.time() {
            return Err(NepoError::Depth { d, covered, time: self.time() });
        }
        self.d = d;
        Ok(self)
    }

    /// `len(I) = m^k`.
    pub fn input_len(&self) -> BigUint {
        BigUint::from(self.m).pow(self.k)
    }

    /// Tape width `s = ⌈(m^k)^eps⌉`.
    pub fn width(&self) -> usize {
        usize::try_from(ceil_pow(self.m, self.k * self.eps.0, self.eps.1)).expect("tape width fits usize")
    }

    /// Rows per level minus one, `⌈(m^k)^((1−k·eps)/k)⌉`, at least 2.
    pub fn branching(&self) -> usize {
        let b = ceil_pow(self.m, self.eps.1 - self.k * self.eps.0, self.eps.1);
        usize::try_from(b).expect("branching fits usize").max(2)
    }

    /// Total steps `m^c`.
    pub fn time(&self) -> BigUint {
        BigUint::from(self.m).pow(self.c)
    }

    /// Steps between consecutive rows of a level-`level` computation.
    pub fn stride(&self, level: u32) -> BigUint {
        BigUint::from(self.branching()).pow(level)
    }

    /// Base-`b` digits `r_0..=r_d` of `i`, low first.
    pub fn radix(&self, i: &BigUint) -> Option<Vec<usize>> {
        let b = BigUint::from(self.branching());
        let mut rest = i.clone();
        let mut out = Vec::with_capacity(self.d as usize + 1);
        for _ in 0..=self.d {
            out.push(usize::try_from(&rest % &b).expect("digit below b"));
            rest /= &b;
        }
        rest.is_zero().then_some(out)
    }
}

/// Where a configuration's bits come from.
#[derive(Debug, Clone)]
pub enum ConfigSource {
    /// A number variable in the configuration layout.
    Num(String),
    /// Row `row` of a computation variable.
    Row { comp: String, row: NumTerm },
    /// The initial configuration on input string `X`: head on cell 0 in state 1.
    Input(String),
}

struct Nepo<'a> {
    tm: &'a TmDescription,
    s: usize,
    b: usize,
    field: usize,
}

fn v(name: &str) -> NumTerm {
    NumTerm::var(name)
}

fn lit(n: usize) -> NumTerm {
    NumTerm::lit(n as u64)
}

impl<'a> Nepo<'a> {
    fn new(tm: &'a TmDescription, b: &NepoBounds) -> Self {
        Nepo { tm, s: b.width(), b: b.branching(), field: 1 + tm.state_bits() }
    }

    fn comp_bits(&self) -> usize {
        (self.b + 1) * self.s * self.field
    }

    fn comp_bound(&self) -> NumTerm {
        NumTerm::lit((BigUint::one() << self.comp_bits()) - 1u32)
    }

    fn comp_field(&self, comp: &str, row: &NumTerm, i: &NumTerm, f: usize) -> Formula {
        let at = NumTerm::plus(NumTerm::times(row.clone(), lit(self.s)), i.clone());
        Formula::bit(NumTerm::times(at, lit(self.field)).add_const(f as u64), v(comp))
    }

    fn source_field(&self, src: &ConfigSource, i: &NumTerm, f: usize) -> Formula {
        match src {
            ConfigSource::Num(x) => Formula::bit(NumTerm::times(i.clone(), lit(self.field)).add_const(f as u64), v(x)),
            ConfigSource::Row { comp, row } => self.comp_field(comp, row, i, f),
            ConfigSource::Input(x) => match f {
                0 => Formula::memb(i.clone(), x),
                1 => Formula::eq(i.clone(), NumTerm::Zero),
                _ => Formula::falsity(),
            },
        }
    }

    fn bit_is(&self, comp: &str, row: &NumTerm, i: &NumTerm, b: bool) -> Formula {
        let at = self.comp_field(comp, row, i, 0);
        if b {
            at
        } else {
            Formula::not(at)
        }
    }

    fn state_is(&self, comp: &str, row: &NumTerm, i: &NumTerm, q: u32) -> Formula {
        Formula::and_all(
            (1..self.field)
                .map(|f| {
                    let at = self.comp_field(comp, row, i, f);
                    if (q >> (f - 1)) & 1 == 1 {
                        at
                    } else {
                        Formula::not(at)
                    }
                })
                .collect(),
        )
    }

    /// `∀i < s. body` as `∀i ≤ s−1. body`.
    fn all_cells(&self, i: &str, body: Formula) -> Formula {
        Formula::al_n(i, lit(self.s - 1), body)
    }

    /// Two configurations agree on every field of every cell.
    fn rows_agree(&self, i: &str, lhs: impl Fn(&NumTerm, usize) -> Formula, rhs: impl Fn(&NumTerm, usize) -> Formula) -> Formula {
        let iv = v(i);
        self.all_cells(i, Formula::and_all((0..self.field).map(|f| Formula::iff(lhs(&iv, f), rhs(&iv, f))).collect()))
    }

    fn step_clauses(&self, comp: &str, j: &NumTerm, i: &NumTerm) -> Formula {
        let j1 = j.clone().add_const(1);
        let i1 = i.clone().add_const(1);
        let last = lit(self.s - 1);
        let has_next = Formula::leq(i1.clone(), last.clone());
        let is_last = Formula::eq(i.clone(), last);
        let bit = |row: &NumTerm, cell: &NumTerm| self.comp_field(comp, row, cell, 0);
        let mut clauses =
            vec![Formula::imp(self.state_is(comp, j, i, 0), Formula::iff(bit(&j1, i), bit(j, i)))];
        for (q, b, a) in self.tm.entries() {
            let here = Formula::and(self.state_is(comp, j, i, q), self.bit_is(comp, j, i, b));
            clauses.push(Formula::imp(here.clone(), self.bit_is(comp, &j1, i, a.write)));
            let lands = |cell: &NumTerm| self.state_is(comp, &j1, cell, a.state);
            match a.mv {
                Move::Stay => clauses.push(Formula::imp(here, lands(i))),
                Move::Right => clauses.push(Formula::imp(
                    here,
                    Formula::and(Formula::imp(has_next.clone(), lands(&i1)), Formula::imp(is_last.clone(), lands(i))),
                )),
                Move::Left => {
                    let from_right = Formula::and(self.state_is(comp, j, &i1, q), self.bit_is(comp, j, &i1, b));
                    clauses.push(Formula::imp(Formula::and(has_next.clone(), from_right), lands(i)));
                    clauses.push(Formula::imp(Formula::and(Formula::eq(i.clone(), NumTerm::Zero), here), lands(i)));
                }
            }
        }
        Formula::and_all(clauses)
    }

    /// `comp` is the level-`level` computation started from `src`.
    fn run(&self, src: &ConfigSource, comp: &str, level: u32) -> Formula {
        let (jn, in_, iin) = (format!("j{level}"), format!("i{level}"), format!("ii{level}"));
        let (j, i, ii) = (v(&jn), v(&in_), v(&iin));
        let start = self.rows_agree(&in_, |c, f| self.comp_field(comp, &NumTerm::Zero, c, f), |c, f| self.source_field(src, c, f));
        let rows = lit(self.b - 1);
        if level == 0 {
            let steps = Formula::al_n(&jn, rows, self.all_cells(&in_, self.step_clauses(comp, &j, &i)));
            let single_head = Formula::al_n(
                &jn,
                lit(self.b),
                self.all_cells(
                    &in_,
                    self.all_cells(
                        &iin,
                        Formula::imp(
                            Formula::not(Formula::eq(i.clone(), ii.clone())),
                            Formula::imp(Formula::not(self.state_is(comp, &j, &i, 0)), self.state_is(comp, &j, &ii, 0)),
                        ),
                    ),
                ),
            );
            return Formula::and_all(vec![start, steps, single_head]);
        }
        let inner = format!("comp{}", level - 1);
        let from = ConfigSource::Row { comp: comp.to_string(), row: j.clone() };
        let hand_off = self.rows_agree(
            &in_,
            |c, f| self.comp_field(&inner, &lit(self.b), c, f),
            |c, f| self.comp_field(comp, &j.clone().add_const(1), c, f),
        );
        let steps = Formula::al_n(
            &jn,
            rows,
            Formula::ex_n(&inner, self.comp_bound(), Formula::and(self.run(&from, &inner, level - 1), hand_off)),
        );
        Formula::and(start, steps)
    }

    /// `cell` equals row `p1`, cell `p2` of `comp`, field by field.
    fn cell_is(&self, comp: &str, p1: &NumTerm, p2: &NumTerm, cell: &str) -> Formula {
        Formula::and_all(
            (0..self.field)
                .map(|f| Formula::iff(Formula::bit(lit(f), v(cell)), self.comp_field(comp, p1, p2, f)))
                .collect(),
        )
    }

    fn reach(&self, level: u32) -> Formula {
        let src = ConfigSource::Num("start".into());
        Formula::and(self.run(&src, "comp", level), self.cell_is("comp", &v("p1"), &v("p2"), "cell"))
    }

    /// `∃r_0..r_d < b ∃chain_d..chain_0 (i = Σ r_ℓ b^ℓ ∧ chain_d from X̃ ∧
    /// chain_{ℓ−1} from row r_ℓ of chain_ℓ ∧ tail(chain_0, r_0))`.
    fn chain(&self, d: u32, step: NumTerm, tail: Formula) -> Formula {
        let digit = |l: u32| v(&format!("r{l}"));
        let chain = |l: u32| format!("chain{l}");
        let mut sum = digit(0);
        let mut weight = BigUint::one();
        for l in 1..=d {
            weight *= self.b;
            sum = NumTerm::plus(sum, digit(l).mul_const(&weight));
        }
        let mut body = tail;
        for l in 0..=d {
            let src = if l == d {
                ConfigSource::Input("X".into())
            } else {
                ConfigSource::Row { comp: chain(l + 1), row: digit(l + 1) }
            };
            body = Formula::ex_n(&chain(l), self.comp_bound(), Formula::and(self.run(&src, &chain(l), l), body));
        }
        body = Formula::and(Formula::eq(step, sum), body);
        for l in (0..=d).rev() {
            body = Formula::ex_n(&format!("r{l}"), lit(self.b - 1), body);
        }
        body
    }
}

/// `reach^0(start, p1, p2, cell, comp)`: `comp` is the level-0 computation from
/// configuration `start` and `cell` is its cell `p2` after `p1` steps.
pub fn compile_reach0(tm: &TmDescription, b: &NepoBounds) -> Formula {
    Nepo::new(tm, b).reach(0)
}

/// `Reach^level(start, p1, p2, cell) = ∃comp reach^level(start, …, comp)`:
/// cell `p2` after `p1·b^level` steps from `start`.
pub fn compile_reach(tm: &TmDescription, b: &NepoBounds, level: u32) -> Result<Formula, NepoError> {
    if level > b.d {
        return Err(NepoError::Level { level, d: b.d });
    }
    let n = Nepo::new(tm, b);
    Ok(Formula::ex_n("comp", n.comp_bound(), n.reach(level)))
}

/// `W[i, j] = cell` with free `X`, `i`, `j`, `cell`: cell `j` after `i`
/// steps on input `X`, for `i < b^(d+1)`.
pub fn compile_cell_predicate(tm: &TmDescription, b: &NepoBounds) -> Formula {
    let n = Nepo::new(tm, b);
    let tail = n.cell_is("chain0", &v("r0"), &v("j"), "cell");
    n.chain(b.d, v("i"), tail)
}

/// Acceptance on `X`: after `m^c` steps some cell carries state `k`.
pub fn compile_acceptance_sigma0(tm: &TmDescription, b: &NepoBounds) -> Formula {
    let n = Nepo::new(tm, b);
    let tail = Formula::ex_n("j", lit(n.s - 1), n.state_is("chain0", &v("r0"), &v("j"), tm.k()));
    n.chain(b.d, NumTerm::lit(b.time()), tail)
}

/// Node count of the AST.
pub fn formula_size(f: &Formula) -> usize {
    f.size()
}

/// A configuration in the packed cell layout.
pub fn config_number(c: &Configuration, state_bits: usize) -> BigUint {
    let f = 1 + state_bits;
    let mut out = BigUint::zero();
    for (i, cell) in c.cells.iter().enumerate() {
        if cell.bit {
            out.set_bit((i * f) as u64, true);
        }
        for s in 0..state_bits {
            if (cell.state >> s) & 1 == 1 {
                out.set_bit((i * f + 1 + s) as u64, true);
            }
        }
    }
    out
}

/// The true level-`level` computation from `start`, rows `0..=b`.
pub fn comp_number(tm: &TmDescription, b: &NepoBounds, start: &Configuration, level: u32) -> BigUint {
    let (s, rows) = (b.width(), b.branching());
    let sb = tm.state_bits();
    let stride = usize::try_from(b.stride(level)).expect("stride fits usize");
    let mut out = BigUint::zero();
    let mut c = start.clone();
    for r in 0..=rows {
        if r > 0 {
            for _ in 0..stride {
                c = tm.step(&c).expect("single head");
            }
        }
        out |= config_number(&c, sb) << (r * s * (1 + sb));
    }
    out
}

/// A cell as a number: bit 0 is the tape bit, the state field above it.
pub fn cell_number(c: &Configuration, i: usize) -> u64 {
    let cell = c.cells[i];
    u64::from(cell.bit) | (u64::from(cell.state) << 1)
}

/// A slice wide enough for every bound the compiled formulas use.
pub fn slice_for(tm: &TmDescription, b: &NepoBounds) -> FiniteSlice {
    let n = Nepo::new(tm, b);
    let bound = (BigUint::one() << n.comp_bits()).max(b.time() + 1u32);
    FiniteSlice::new(bound, n.s).expect("positive bound")
}

/// Emitted-size summary for one machine and bound set.
#[derive(Debug, Clone, Serialize)]
pub struct SizeReport {
    pub width: usize,
    pub branching: usize,
    pub time: String,
    pub depth: u32,
    pub field: usize,
    pub comp_bits: usize,
    /// Sizes of `Reach^0..=Reach^d`.
    pub reach_sizes: Vec<usize>,
    pub acceptance_size: usize,
    pub node_cap: usize,
    pub over_cap: bool,
}

pub fn size_report(tm: &TmDescription, b: &NepoBounds, node_cap: usize) -> SizeReport {
    let n = Nepo::new(tm, b);
    let reach_sizes = (0..=b.d).map(|l| compile_reach(tm, b, l).expect("level within depth").size()).collect();
    let acceptance_size = compile_acceptance_sigma0(tm, b).size();
    SizeReport {
        width: n.s,
        branching: n.b,
        time: b.time().to_string(),
        depth: b.d,
        field: n.field,
        comp_bits: n.comp_bits(),
        reach_sizes,
        acceptance_size,
        node_cap,
        over_cap: acceptance_size > node_cap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::Bits;
    use crate::corpus;
    use crate::eval::{eval, eval_lifted, Assignment};
    use crate::formula::QuantClass;

    fn b16() -> NepoBounds {
        NepoBounds::new(16, 1, (1, 2), 2).unwrap()
    }

    #[test]
    fn derived_bounds() {
        let b = b16();
        assert_eq!((b.width(), b.branching(), b.time(), b.d), (16, 2, BigUint::from(16u32), 4));
        assert_eq!(ceil_pow(10, 1, 2), BigUint::from(4u32));
        assert_eq!(ceil_pow(16, 3, 4), BigUint::from(8u32));
        let b = NepoBounds::new(81, 1, (1, 4), 2).unwrap();
        assert_eq!((b.width(), b.branching(), b.d), (9, 9, 2));
        assert_eq!(NepoBounds::new(16, 1, (2, 3), 2), Err(NepoError::Eps(2, 3)));
        assert_eq!(NepoBounds::new(16, 1, (2, 4), 2).unwrap().eps, (1, 2));
        assert!(b16().with_depth(2).is_err());
        assert_eq!(b16().with_depth(6).unwrap().d, 6);
    }

    #[test]
    fn radix_is_unique_below_budget() {
        for m in [2u64, 4, 9, 16] {
            let b = NepoBounds::new(m, 1, (1, 2), 2).unwrap();
            let base = b.branching();
            let budget = base.pow(b.d + 1);
            for i in 0..budget {
                // brute force: exactly one digit vector recombines to i
                let hits = (0..budget)
                    .filter(|&code| {
                        let digits: Vec<usize> = (0..=b.d).map(|l| code / base.pow(l) % base).collect();
                        digits.iter().enumerate().map(|(l, r)| r * base.pow(l as u32)).sum::<usize>() == i
                    })
                    .count();
                assert_eq!(hits, 1);
                let r = b.radix(&BigUint::from(i)).unwrap();
                assert_eq!(r.iter().enumerate().map(|(l, r)| r * base.pow(l as u32)).sum::<usize>(), i);
            }
            assert!(b.radix(&BigUint::from(budget)).is_none());
        }
    }

    #[test]
    fn classes_and_sizes() {
        let tm = corpus::scan1();
        let b = b16();
        assert_eq!(compile_reach0(&tm, &b).classify(), QuantClass::SigmaB(0));
        assert_eq!(compile_acceptance_sigma0(&tm, &b).classify(), QuantClass::SigmaB(0));
        let sizes: Vec<usize> = (0..=2).map(|l| compile_reach(&tm, &b, l).unwrap().size()).collect();
        assert!(sizes[0] < sizes[1] && sizes[1] < sizes[2]);
        assert!(compile_reach(&tm, &b, 5).is_err());
        assert_eq!(formula_size(&Formula::leq(NumTerm::Zero, NumTerm::One)), 3);
    }

    #[test]
    fn reach0_with_true_and_corrupted_comp() {
        let tm = corpus::scan1();
        let b = b16();
        let f = compile_reach0(&tm, &b);
        let slice = slice_for(&tm, &b);
        let start = Configuration::initial(&Bits::from("001"), b.width());
        let comp = comp_number(&tm, &b, &start, 0);
        let sb = tm.state_bits();
        let env = |comp: &BigUint, cell: u64| {
            Assignment::new()
                .with_num("start", config_number(&start, sb))
                .with_num("p1", 2u32)
                .with_num("p2", 2u32)
                .with_num("cell", cell)
                .with_num("comp", comp.clone())
        };
        let after2 = tm.step(&tm.step(&start).unwrap()).unwrap();
        let cell = cell_number(&after2, 2);
        assert!(eval(&f, &slice, &env(&comp, cell)).unwrap());
        assert!(!eval(&f, &slice, &env(&comp, cell ^ 1)).unwrap());
        // flip the head's state bit in row 1
        let bad = &comp ^ (BigUint::one() << ((b.width() + 1) * (1 + sb) + 1));
        assert!(!eval(&f, &slice, &env(&bad, cell)).unwrap());
    }

    #[test]
    fn comp_is_unique_on_a_tiny_layout() {
        // m = 2: s = 2 cells, b = 2, 3 rows of 2 cells of 3 bits
        let tm = corpus::scan1();
        let b = NepoBounds::new(2, 1, (1, 2), 2).unwrap();
        let n = Nepo::new(&tm, &b);
        assert_eq!(n.comp_bits(), 18);
        let body = n.run(&ConfigSource::Num("start".into()), "comp", 0);
        let slice = slice_for(&tm, &b);
        for x in ["01", "10"] {
            let start = Configuration::initial(&Bits::from(x), 2);
            let i = config_number(&start, tm.state_bits());
            let hits: Vec<u64> = (0u64..1 << 18)
                .filter(|&comp| {
                    let env = Assignment::new().with_num("start", i.clone()).with_num("comp", comp);
                    eval(&body, &slice, &env).unwrap()
                })
                .collect();
            assert_eq!(hits.len(), 1);
            assert_eq!(BigUint::from(hits[0]), comp_number(&tm, &b, &start, 0));
        }
    }

    #[test]
    fn reach1_cells() {
        let tm = corpus::parity();
        let b = b16();
        let f = compile_reach(&tm, &b, 1).unwrap();
        let slice = slice_for(&tm, &b);
        let sb = tm.state_bits();
        let start = Configuration::initial(&Bits::from("1101"), b.width());
        let mut c = start.clone();
        for _ in 0..4 {
            c = tm.step(&c).unwrap();
        }
        for (p2, flip) in [(3, 0u64), (4, 0), (4, 1), (4, 2)] {
            let env = Assignment::new()
                .with_num("start", config_number(&start, sb))
                .with_num("p1", 2u32)
                .with_num("p2", p2 as u64)
                .with_num("cell", cell_number(&c, p2) ^ flip);
            assert_eq!(eval_lifted(&f, &slice, &env).unwrap().0, flip == 0, "p2 {p2} flip {flip}");
        }
    }

    #[test]
    fn cell_predicate_examples() {
        let tm = corpus::scan1();
        let b = b16();
        let f = compile_cell_predicate(&tm, &b);
        assert_eq!(f.classify(), QuantClass::SigmaB(0));
        let slice = slice_for(&tm, &b);
        let run = tm.run(&Bits::from("10"), 1, b.width()).unwrap();
        let env = |i: u64, j: u64, cell: u64| {
            Assignment::new().with_str("X", Bits::from("10")).with_num("i", i).with_num("j", j).with_num("cell", cell)
        };
        let want = cell_number(&run.rows[1], 0);
        assert!(eval_lifted(&f, &slice, &env(1, 0, want)).unwrap().0);
        assert!(!eval_lifted(&f, &slice, &env(1, 0, want ^ 2)).unwrap().0);
        let initial = cell_number(&run.rows[0], 1);
        assert!(eval_lifted(&f, &slice, &env(0, 1, initial)).unwrap().0);
    }

    #[test]
    fn acceptance_examples() {
        let tm = corpus::scan1();
        let b = b16();
        let f = compile_acceptance_sigma0(&tm, &b);
        let slice = slice_for(&tm, &b);
        for (x, want) in [("001", true), ("000", false)] {
            let env = Assignment::new().with_str("X", Bits::from(x));
            assert_eq!(eval_lifted(&f, &slice, &env).unwrap().0, want, "{x}");
        }
    }
}
