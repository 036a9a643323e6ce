//! Single-tape deterministic Turing machines over {0,1} and their
//! computation tableaux. The simulator here is the ground truth that every
//! compiled formula is checked against.
//!
//! State 1 is initial, state `k` accepting. A head at cell 0 moving left and
//! a head at the last cell moving right both stay put.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::poly::PolyBound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    Stay = 0,
    Left = 1,
    Right = 2,
}

impl Move {
    pub fn from_code(m: u32) -> Option<Move> {
        match m {
            0 => Some(Move::Stay),
            1 => Some(Move::Left),
            2 => Some(Move::Right),
            _ => None,
        }
    }

    pub fn code(self) -> u32 {
        self as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Action {
    pub state: u32,
    pub write: bool,
    pub mv: Move,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TmDescription {
    k: u32,
    /// Entry `2·(q−1) + b` is `δ(q, b)`.
    delta: Vec<Action>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TmError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("δ({state},{bit}) defined twice")]
    Nondeterministic { state: u32, bit: u8 },
    #[error("δ({state},{bit}) undefined")]
    Missing { state: u32, bit: u8 },
    #[error("state {0} outside 1..=k")]
    StateRange(u32),
    #[error("configuration must carry exactly one head, found {0}")]
    HeadCount(usize),
    #[error("tape width {width} smaller than input length {len}")]
    Width { width: usize, len: usize },
}

impl TmDescription {
    /// Builds a machine from `(q, b, q', b', move)` rows; `δ` must be total
    /// and single-valued on `{1..k} × {0,1}`.
    pub fn new(k: u32, rows: &[(u32, u8, u32, u8, Move)]) -> Result<Self, TmError> {
        if k == 0 {
            return Err(TmError::StateRange(0));
        }
        let mut slots: Vec<Option<Action>> = vec![None; 2 * k as usize];
        for &(q, b, q2, b2, mv) in rows {
            for s in [q, q2] {
                if s == 0 || s > k {
                    return Err(TmError::StateRange(s));
                }
            }
            let slot = &mut slots[2 * (q as usize - 1) + (b & 1) as usize];
            if slot.is_some() {
                return Err(TmError::Nondeterministic { state: q, bit: b & 1 });
            }
            *slot = Some(Action { state: q2, write: b2 & 1 == 1, mv });
        }
        let delta = slots
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or(TmError::Missing { state: i as u32 / 2 + 1, bit: (i % 2) as u8 }))
            .collect::<Result<_, _>>()?;
        Ok(TmDescription { k, delta })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn delta(&self, q: u32, b: bool) -> Action {
        self.delta[2 * (q as usize - 1) + b as usize]
    }

    /// `(q, b, δ(q, b))` in order of `q` then `b`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, bool, Action)> + '_ {
        self.delta.iter().enumerate().map(|(i, a)| (i as u32 / 2 + 1, i % 2 == 1, *a))
    }

    /// Bits needed to store a state number `0..=k` (0 marks "no head").
    pub fn state_bits(&self) -> usize {
        state_bits(self.k)
    }

    pub fn step(&self, c: &Configuration) -> Result<Configuration, TmError> {
        let (head, q) = c.head()?;
        let a = self.delta(q, c.cells[head].bit);
        let mut next = c.clone();
        next.cells[head] = Cell { bit: a.write, state: 0 };
        let last = c.cells.len() - 1;
        let to = match a.mv {
            Move::Stay => head,
            Move::Left => head.saturating_sub(1),
            Move::Right => (head + 1).min(last),
        };
        next.cells[to].state = a.state;
        Ok(next)
    }

    /// Tableau of `steps + 1` rows over `width` cells, starting from the
    /// zero-padded input with the head on cell 0 in state 1.
    pub fn run(&self, input: &Bits, steps: usize, width: usize) -> Result<Tableau, TmError> {
        if width < input.len() || width == 0 {
            return Err(TmError::Width { width, len: input.len() });
        }
        let mut row = Configuration::initial(input, width);
        let mut rows = Vec::with_capacity(steps + 1);
        for _ in 0..steps {
            let next = self.step(&row)?;
            rows.push(row);
            row = next;
        }
        rows.push(row);
        Ok(Tableau { rows, width, state_bits: self.state_bits() })
    }

    /// True iff the head is in state `k` after exactly `p(|X|)` steps.
    pub fn accepts(&self, input: &Bits, p: &PolyBound) -> bool {
        let steps = p.eval(input.len() as u64) as usize;
        let width = input.len().max(steps + 1);
        let t = self.run(input, steps, width).expect("width covers input");
        t.final_state() == self.k
    }
}

pub fn state_bits(k: u32) -> usize {
    (u32::BITS - k.leading_zeros()) as usize
}

impl FromStr for TmDescription {
    type Err = TmError;

    /// `states <k>` followed by `<q> <b> -> <q'> <b'> <m>` lines; `#`
    /// starts a comment.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut k = None;
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: &str| TmError::Parse { line, msg: msg.to_string() };
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks[0] == "states" {
                if k.is_some() || toks.len() != 2 {
                    return Err(err("expected a single `states <k>` line"));
                }
                k = Some(toks[1].parse::<u32>().map_err(|_| err("bad state count"))?);
                continue;
            }
            if toks.len() != 6 || toks[2] != "->" {
                return Err(err("expected `<q> <b> -> <q'> <b'> <m>`"));
            }
            let num = |s: &str| s.parse::<u32>().map_err(|_| err("bad number"));
            let bit = |s: &str| match s {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => Err(err("bits are 0 or 1")),
            };
            let mv = Move::from_code(num(toks[5])?).ok_or_else(|| err("move is 0, 1 or 2"))?;
            rows.push((num(toks[0])?, bit(toks[1])?, num(toks[3])?, bit(toks[4])?, mv));
        }
        let k = k.ok_or(TmError::Parse { line: 1, msg: "missing `states <k>`".into() })?;
        TmDescription::new(k, &rows)
    }
}

impl fmt::Display for TmDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.k)?;
        for (q, b, a) in self.entries() {
            writeln!(f, "{q} {} -> {} {} {}", b as u8, a.state, a.write as u8, a.mv.code())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    pub bit: bool,
    /// 0 off the head, otherwise the machine state.
    pub state: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    pub cells: Vec<Cell>,
}

impl Configuration {
    pub fn initial(input: &Bits, width: usize) -> Self {
        let mut cells: Vec<Cell> = (0..width).map(|i| Cell { bit: input.get(i), state: 0 }).collect();
        cells[0].state = 1;
        Configuration { cells }
    }

    pub fn head(&self) -> Result<(usize, u32), TmError> {
        let mut heads = self.cells.iter().enumerate().filter(|(_, c)| c.state != 0);
        match (heads.next(), heads.next()) {
            (Some((i, c)), None) => Ok((i, c.state)),
            _ => Err(TmError::HeadCount(self.cells.iter().filter(|c| c.state != 0).count())),
        }
    }

    pub fn tape(&self) -> Bits {
        Bits::from_bools(self.cells.iter().map(|c| c.bit).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tableau {
    pub rows: Vec<Configuration>,
    pub width: usize,
    pub state_bits: usize,
}

impl Tableau {
    pub fn final_state(&self) -> u32 {
        self.rows.last().and_then(|r| r.head().ok()).map_or(0, |(_, q)| q)
    }

    /// Bits per cell: the tape bit followed by the state field.
    pub fn field_width(&self) -> usize {
        1 + self.state_bits
    }

    /// Flat witness: field `f` of cell `i` in row `j` sits at
    /// `(j·width + i)·F + f`, the state field little-endian from `f = 1`.
    pub fn to_witness(&self) -> Bits {
        let f = self.field_width();
        let mut w = Bits::zeros(self.rows.len() * self.width * f);
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.cells.iter().enumerate() {
                let base = (j * self.width + i) * f;
                w.set(base, c.bit);
                for s in 0..self.state_bits {
                    w.set(base + 1 + s, (c.state >> s) & 1 == 1);
                }
            }
        }
        w
    }
}

pub fn tableau_to_witness(t: &Tableau) -> Bits {
    t.to_witness()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn head_of(t: &Tableau, j: usize) -> (usize, u32) {
        t.rows[j].head().unwrap()
    }

    #[test]
    fn scan1_steps() {
        let tm = corpus::scan1();
        let c = Configuration::initial(&Bits::from("00"), 2);
        let n = tm.step(&c).unwrap();
        assert_eq!(n.head().unwrap(), (1, 1));
        assert_eq!(n.tape(), Bits::from("00"));
        let c = Configuration::initial(&Bits::from("10"), 2);
        let n = tm.step(&c).unwrap();
        assert_eq!(n.head().unwrap(), (0, 2));
        assert_eq!(n.tape(), Bits::from("10"));
    }

    #[test]
    fn run_examples() {
        let tm = corpus::scan1();
        let t = tm.run(&Bits::from("01"), 2, 4).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(head_of(&t, 2), (1, 2));
        let t = tm.run(&Bits::from("00"), 4, 4).unwrap();
        assert!(t.rows.iter().all(|r| r.head().unwrap().1 != tm.k()));
        let t = tm.run(&Bits::new(), 0, 1).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(head_of(&t, 0), (0, 1));
        assert!(matches!(tm.run(&Bits::from("011"), 1, 2), Err(TmError::Width { .. })));
    }

    #[test]
    fn stay_machine_composes() {
        let tm: TmDescription = "states 2\n1 0 -> 1 1 0\n1 1 -> 1 0 0\n2 0 -> 2 0 0\n2 1 -> 2 1 0".parse().unwrap();
        let c = Configuration::initial(&Bits::from("0"), 1);
        let twice = tm.run(&Bits::from("0"), 2, 1).unwrap();
        assert_eq!(twice.rows[2], tm.step(&tm.step(&c).unwrap()).unwrap());
        assert_eq!(twice.rows[2].tape(), Bits::from("0"));
    }

    #[test]
    fn acceptance_examples() {
        let tm = corpus::scan1();
        let p = PolyBound::linear_plus(2);
        assert!(tm.accepts(&Bits::from("001"), &p));
        assert!(!tm.accepts(&Bits::from("000"), &p));
        assert!(!tm.accepts(&Bits::new(), &p));
    }

    #[test]
    fn corpus_machines_decide_their_languages() {
        let p = PolyBound::linear_plus(2);
        for x in Bits::all_up_to(6) {
            let ones = x.count_ones();
            assert_eq!(corpus::scan1().accepts(&x, &p), ones > 0, "{x}");
            assert_eq!(corpus::parity().accepts(&x, &p), ones % 2 == 1, "{x}");
            assert_eq!(corpus::zeros().accepts(&x, &p), ones == 0, "{x}");
        }
    }

    #[test]
    fn left_moves_clamp_at_cell_zero() {
        let tm: TmDescription = "states 2\n1 0 -> 2 1 1\n1 1 -> 2 1 1\n2 0 -> 2 0 1\n2 1 -> 2 1 1".parse().unwrap();
        let t = tm.run(&Bits::from("0"), 3, 2).unwrap();
        assert!(t.rows.iter().all(|r| r.head().unwrap().0 == 0));
    }

    #[test]
    fn load_errors() {
        let dup = "states 1\n1 0 -> 1 0 0\n1 0 -> 1 1 0\n1 1 -> 1 1 0";
        assert_eq!(dup.parse::<TmDescription>(), Err(TmError::Nondeterministic { state: 1, bit: 0 }));
        let missing = "states 1\n1 0 -> 1 0 0";
        assert_eq!(missing.parse::<TmDescription>(), Err(TmError::Missing { state: 1, bit: 1 }));
        assert!(matches!("states 1\n1 0 -> 1 0 3\n".parse::<TmDescription>(), Err(TmError::Parse { line: 2, .. })));
        let bad_head = Configuration { cells: vec![Cell { bit: false, state: 1 }, Cell { bit: false, state: 1 }] };
        assert_eq!(corpus::scan1().step(&bad_head), Err(TmError::HeadCount(2)));
    }

    #[test]
    fn text_roundtrip() {
        for tm in [corpus::scan1(), corpus::parity(), corpus::zeros()] {
            assert_eq!(tm.to_string().parse::<TmDescription>().unwrap(), tm);
        }
    }

    #[test]
    fn tableau_invariants() {
        let tm = corpus::zeros();
        for x in Bits::all_up_to(4) {
            let t = tm.run(&x, 6, 7).unwrap();
            for w in t.rows.windows(2) {
                let (h, _) = w[0].head().unwrap();
                for i in 0..t.width {
                    if i != h {
                        assert_eq!(w[0].cells[i].bit, w[1].cells[i].bit);
                    }
                }
            }
            let wit = t.to_witness();
            assert_eq!(wit.len(), 7 * 7 * 3);
        }
    }
}
