//! Shipped machines and formula corpus.

use crate::tm::TmDescription;

pub const SCAN1_TM: &str = include_str!("../data/scan1.tm");
pub const PARITY_TM: &str = include_str!("../data/parity.tm");
pub const ZEROS_TM: &str = include_str!("../data/zeros.tm");

/// Accepts iff the input contains a 1.
pub fn scan1() -> TmDescription {
    SCAN1_TM.parse().expect("shipped machine")
}

/// Accepts iff the input has an odd number of 1s.
pub fn parity() -> TmDescription {
    PARITY_TM.parse().expect("shipped machine")
}

/// Accepts iff the input is all zeros.
pub fn zeros() -> TmDescription {
    ZEROS_TM.parse().expect("shipped machine")
}

pub fn machines() -> Vec<(&'static str, TmDescription)> {
    vec![("SCAN1", scan1()), ("PARITY", parity()), ("ZEROS", zeros())]
}

/// Σ^B_0 sentences over one string parameter `X`, tautologies and
/// non-tautologies mixed.
pub const SENTENCES: [(&str, &str); 10] = [
    ("excluded-middle", "(alN z (len X) (or (in z X) (not (in z X))))"),
    ("beyond-length", "(alN z (len X) (imp (leq (len X) z) (not (in z X))))"),
    ("some-one", "(exN z (len X) (in z X))"),
    ("length-arith", "(and (leq (len X) (* 2 (len X))) (or (in 0 X) (not (in 0 X))))"),
    (
        "one-then-zero",
        "(alN z (len X) (imp (and (in z X) (not (in (+ z 1) X))) (exN y (len X) (and (in y X) (not (in (+ y 1) X))))))",
    ),
    (
        "last-one",
        "(imp (exN z (len X) (in z X)) (exN z (len X) (and (in z X) (alN y (len X) (imp (leq (+ z 1) y) (not (in y X)))))))",
    ),
    ("upper-bound", "(exN z (len X) (alN y (len X) (imp (in y X) (leq y z))))"),
    ("constant", "(alN z (len X) (alN y (len X) (and (imp (in z X) (in y X)) (imp (in y X) (in z X)))))"),
    (
        "least-one",
        "(alN z (len X) (imp (in z X) (exN y z (and (in y X) (alN w y (imp (in w X) (leq y w)))))))",
    ),
    ("two-prefix", "(or (in 0 X) (in 1 X))"),
];
