//! Monotone formula trees in heap layout, the recursive node evaluator and
//! evaluation strings `Y` satisfying the δ_MFV clauses.
//!
//! Node 1 is the root, node `x` has children `2x` and `2x+1`; nodes
//! `1..a` are gates (`G(x) = 1` is `∧`, `0` is `∨`) and nodes `a..2a` are
//! the inputs `I(0..a)`. `Y(0)` is unused by the layout and set to 1.

use serde::Serialize;
use thiserror::Error;

use crate::bits::Bits;
use crate::formula::{Formula, NumTerm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneTree {
    /// Gate labels; position 0 is ignored.
    pub g: Bits,
    /// Leaf offset, a power of two.
    pub a: usize,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MfvError {
    #[error("leaf count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("node index 0 is not a tree node")]
    ZeroIndex,
    #[error("input has length {got}, tree has {want} leaves")]
    SizeMismatch { got: usize, want: usize },
}

impl MonotoneTree {
    pub fn new(g: Bits, a: usize) -> Result<Self, MfvError> {
        if !a.is_power_of_two() {
            return Err(MfvError::NotPowerOfTwo(a));
        }
        Ok(MonotoneTree { g, a })
    }

    /// Tree with gates `labels[0]` at node 1, `labels[1]` at node 2, ….
    pub fn from_labels(labels: &[bool]) -> Result<Self, MfvError> {
        let a = labels.len() + 1;
        let mut g = Bits::zeros(a);
        for (i, &l) in labels.iter().enumerate() {
            g.set(i + 1, l);
        }
        Self::new(g, a)
    }

    fn check_input(&self, i: &Bits) -> Result<(), MfvError> {
        if i.len() != self.a {
            return Err(MfvError::SizeMismatch { got: i.len(), want: self.a });
        }
        Ok(())
    }

    /// The recursion-depth budget `⌈log₂(2a+1)⌉ + 1`.
    pub fn depth_budget(&self) -> usize {
        let n = 2 * self.a + 1;
        (usize::BITS - (n - 1).leading_zeros()) as usize + 1
    }
}

/// Value of node `i` under input `input`.
pub fn node_value(t: &MonotoneTree, input: &Bits, i: usize) -> Result<bool, MfvError> {
    node_value_traced(t, input, i).map(|(v, _)| v)
}

/// Value of node `i` with the deepest recursion reached (the call itself
/// counts as depth 1).
pub fn node_value_traced(t: &MonotoneTree, input: &Bits, i: usize) -> Result<(bool, usize), MfvError> {
    if i == 0 {
        return Err(MfvError::ZeroIndex);
    }
    t.check_input(input)?;
    Ok(node_rec(t, input, i))
}

fn node_rec(t: &MonotoneTree, input: &Bits, i: usize) -> (bool, usize) {
    if i >= 2 * t.a {
        return (false, 1);
    }
    if i >= t.a {
        return (input.get(i - t.a), 1);
    }
    let (left, dl) = node_rec(t, input, 2 * i);
    let (right, dr) = node_rec(t, input, 2 * i + 1);
    let v = if t.g.get(i) { left && right } else { left || right };
    (v, 1 + dl.max(dr))
}

/// Reference evaluator over an explicit pointer tree, independent of the
/// heap arithmetic above.
pub fn naive_value(t: &MonotoneTree, input: &Bits) -> bool {
    enum Node {
        Leaf(bool),
        Gate(bool, Box<Node>, Box<Node>),
    }
    fn build(t: &MonotoneTree, input: &Bits, lo: usize, width: usize, label: usize) -> Node {
        // the subtree over leaves lo..lo+width, rooted at heap node `label`
        if width == 1 {
            return Node::Leaf(input.get(lo));
        }
        let half = width / 2;
        Node::Gate(
            t.g.get(label),
            Box::new(build(t, input, lo, half, 2 * label)),
            Box::new(build(t, input, lo + half, half, 2 * label + 1)),
        )
    }
    fn value(n: &Node) -> bool {
        match n {
            Node::Leaf(b) => *b,
            Node::Gate(true, l, r) => value(l) && value(r),
            Node::Gate(false, l, r) => value(l) || value(r),
        }
    }
    value(&build(t, input, 0, t.a, 1))
}

/// `Y` of length `2a` with every node value, built node by node.
pub fn mfv_witness(t: &MonotoneTree, input: &Bits) -> Result<Bits, MfvError> {
    t.check_input(input)?;
    let mut y = Bits::zeros(2 * t.a);
    y.set(0, true);
    for x in 1..2 * t.a {
        y.set(x, node_value(t, input, x)?);
    }
    Ok(y)
}

/// Every δ_MFV clause for `x < a`.
pub fn check_mfv(t: &MonotoneTree, input: &Bits, y: &Bits) -> bool {
    let a = t.a;
    if !y.get(0) {
        return false;
    }
    (0..a).all(|x| {
        let leaf = y.get(x + a) == input.get(x);
        let gate = x == 0 || {
            let (l, r) = (y.get(2 * x), y.get(2 * x + 1));
            y.get(x) == if t.g.get(x) { l && r } else { l || r }
        };
        leaf && gate
    })
}

/// δ_MFV(a, G, I, Y) as a formula with free `a`, `G`, `I`, `Y`.
pub fn delta_mfv_formula() -> Formula {
    let x = || NumTerm::var("x");
    let two_x = || NumTerm::times(NumTerm::lit(2u32), x());
    let y = |t: NumTerm| Formula::memb(t, "Y");
    let g = || Formula::memb(x(), "G");
    let gate = Formula::or(
        Formula::and_all(vec![g(), y(two_x()), y(two_x().add_const(1))]),
        Formula::and(Formula::not(g()), Formula::or(y(two_x()), y(two_x().add_const(1)))),
    );
    let body = Formula::and_all(vec![
        Formula::iff(y(NumTerm::plus(x(), NumTerm::var("a"))), Formula::memb(x(), "I")),
        y(NumTerm::Zero),
        Formula::imp(Formula::lt(NumTerm::Zero, x()), Formula::iff(y(x()), gate)),
    ]);
    // ∀x < a, written ∀x ≤ a (x < a → …)
    Formula::al_n("x", NumTerm::var("a"), Formula::imp(Formula::lt(x(), NumTerm::var("a")), body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval, Assignment, FiniteSlice};

    fn tree(labels: &[bool]) -> MonotoneTree {
        MonotoneTree::from_labels(labels).unwrap()
    }

    #[test]
    fn node_value_examples() {
        let t = tree(&[true, false, false]);
        assert!(node_value(&t, &Bits::from("1001"), 1).unwrap());
        assert!(!node_value(&t, &Bits::from("0000"), 1).unwrap());
        assert!(!node_value(&t, &Bits::from("1111"), 9).unwrap());
        assert_eq!(node_value(&t, &Bits::from("1111"), 0), Err(MfvError::ZeroIndex));
        assert!(matches!(node_value(&t, &Bits::from("11"), 1), Err(MfvError::SizeMismatch { .. })));
    }

    #[test]
    fn witness_examples() {
        let t = tree(&[true]);
        let y = mfv_witness(&t, &Bits::from("11")).unwrap();
        assert!(y.get(1) && y.get(2) && y.get(3));
        assert!(!mfv_witness(&t, &Bits::from("10")).unwrap().get(1));
        let leaf = tree(&[]);
        for i in ["0", "1"] {
            let y = mfv_witness(&leaf, &Bits::from(i)).unwrap();
            assert_eq!(y.get(1), i == "1");
            assert!(check_mfv(&leaf, &Bits::from(i), &y));
        }
    }

    #[test]
    fn check_mfv_rejects_corruptions() {
        let t = tree(&[true, false, true]);
        let i = Bits::from("1101");
        let y = mfv_witness(&t, &i).unwrap();
        assert!(check_mfv(&t, &i, &y));
        for pos in 0..y.len() {
            let mut bad = y.clone();
            bad.flip(pos);
            assert!(!check_mfv(&t, &i, &bad), "flip at {pos}");
        }
    }

    #[test]
    fn formula_route_agrees_with_native_check() {
        let slice = FiniteSlice::new(64u32, 16).unwrap();
        let f = delta_mfv_formula();
        let t = tree(&[false, true, false]);
        for i in Bits::all_of_len(4) {
            let y = mfv_witness(&t, &i).unwrap();
            let mut variants = vec![y.clone()];
            for pos in [0, 1, 3, 6] {
                let mut bad = y.clone();
                bad.flip(pos);
                variants.push(bad);
            }
            for yy in variants {
                let env = Assignment::new().with_num("a", 4u32).with_str("G", t.g.clone()).with_str("I", i.clone()).with_str("Y", yy.clone());
                assert_eq!(eval(&f, &slice, &env).unwrap(), check_mfv(&t, &i, &yy));
            }
        }
    }
}
