//! Number pairing, tupling and number-coded sequences.
//!
//! `encode_seq(xs) = pair(len, pair(w, packed))` where `w` is the bit length
//! of the largest element and `packed` holds element `j` in bits
//! `[j·w, (j+1)·w)`. The code is canonical: `w` is exactly the maximal bit
//! length, so every sequence has one code and decoding rejects the rest.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::bits::Bits;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("tuple index {index} out of range for arity {arity}")]
    Index { index: usize, arity: usize },
    #[error("empty tuple")]
    EmptyTuple,
    #[error("malformed sequence code: {0}")]
    Malformed(&'static str),
    #[error("sequence of length {0} is too long to expand")]
    TooLong(u64),
    #[error("string of length {len} exceeds slice width {width}")]
    SliceExceeded { len: usize, width: usize },
}

/// Cantor pairing `(x+y)(x+y+1)/2 + y`.
pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32) >> 1u32) + y
}

pub fn unpair(n: &BigUint) -> (BigUint, BigUint) {
    // w = ⌊(√(8n+1) − 1) / 2⌋ is the diagonal index
    let w = ((n * 8u32 + 1u32).sqrt() - 1u32) >> 1u32;
    let t = &w * (&w + 1u32) >> 1u32;
    let y = n - t;
    let x = &w - &y;
    (x, y)
}

/// Left-nested tuple `⟨x₀,…,x_{k−1}⟩ = pair(⟨x₀,…,x_{k−2}⟩, x_{k−1})`.
pub fn tuple_k(xs: &[BigUint]) -> Result<BigUint, SeqError> {
    let (first, rest) = xs.split_first().ok_or(SeqError::EmptyTuple)?;
    Ok(rest.iter().fold(first.clone(), |acc, x| pair(&acc, x)))
}

/// Component `i` of a `k`-tuple code.
pub fn project(n: &BigUint, i: usize, k: usize) -> Result<BigUint, SeqError> {
    if i >= k {
        return Err(SeqError::Index { index: i, arity: k });
    }
    let mut cur = n.clone();
    for pos in (1..k).rev() {
        let (left, right) = unpair(&cur);
        if pos == i {
            return Ok(right);
        }
        cur = left;
    }
    Ok(cur)
}

pub fn encode_seq(xs: &[BigUint]) -> BigUint {
    let w = xs.iter().map(|x| x.bits()).max().unwrap_or(0);
    let mut packed = BigUint::zero();
    for x in xs.iter().rev() {
        packed = (packed << w) | x;
    }
    pair(&BigUint::from(xs.len()), &pair(&BigUint::from(w), &packed))
}

/// Longest sequence [`decode_seq`] materializes; the code of a long run of
/// zeros is tiny, so the length field alone cannot be trusted.
pub const MAX_DECODE_LEN: u64 = 1 << 20;

struct Header {
    len: u64,
    w: u64,
    packed: BigUint,
}

impl Header {
    /// Never allocates more than the payload, however large `w` is.
    fn element(&self, j: u64) -> BigUint {
        let at = u128::from(j) * u128::from(self.w);
        if j >= self.len || at >= u128::from(self.packed.bits()) {
            return BigUint::zero();
        }
        let tail = &self.packed >> (at as u64);
        if tail.bits() <= self.w {
            return tail;
        }
        let high = &tail >> self.w;
        tail - (high << self.w)
    }
}

/// Splits and validates a code without expanding it; only the elements
/// that can be nonzero are inspected.
fn header(code: &BigUint) -> Result<Header, SeqError> {
    let (len, rest) = unpair(code);
    let (w, packed) = unpair(&rest);
    let len = len.to_u64().ok_or(SeqError::Malformed("length too large"))?;
    let w = w.to_u64().ok_or(SeqError::Malformed("width too large"))?;
    if len == 0 {
        return if w == 0 && packed.is_zero() {
            Ok(Header { len, w, packed })
        } else {
            Err(SeqError::Malformed("nonempty payload for empty sequence"))
        };
    }
    if u128::from(packed.bits()) > u128::from(len) * u128::from(w) {
        return Err(SeqError::Malformed("payload wider than len·w"));
    }
    let h = Header { len, w, packed };
    let live = if w == 0 { 0 } else { h.packed.bits().div_ceil(w) };
    if (0..live).map(|j| h.element(j).bits()).max().unwrap_or(0) != w {
        return Err(SeqError::Malformed("field width is not the maximal element width"));
    }
    Ok(h)
}

pub fn decode_seq(code: &BigUint) -> Result<Vec<BigUint>, SeqError> {
    let h = header(code)?;
    if h.len > MAX_DECODE_LEN {
        return Err(SeqError::TooLong(h.len));
    }
    Ok((0..h.len).map(|j| h.element(j)).collect())
}

/// `⟨x⟩_j`, or 0 when `j` is past the end.
pub fn seq_get(code: &BigUint, j: usize) -> Result<BigUint, SeqError> {
    Ok(header(code)?.element(j as u64))
}

/// Sequence code of the bits of `X`; `width` is the slice limit on `|X|`.
pub fn str_to_num(x: &Bits, width: usize) -> Result<BigUint, SeqError> {
    if x.len() > width {
        return Err(SeqError::SliceExceeded { len: x.len(), width });
    }
    let xs: Vec<BigUint> = x.iter().map(|b| BigUint::from(b as u8)).collect();
    Ok(encode_seq(&xs))
}

/// The first `n` entries of the sequence coded by `x`, as bits (nonzero
/// entries read as 1).
pub fn num_to_str(x: &BigUint, n: usize) -> Result<Bits, SeqError> {
    let h = header(x)?;
    Ok(Bits::from_bools((0..n as u64).map(|j| !h.element(j).is_zero()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Index of `(x, y)` in the diagonal enumeration (0,0),(1,0),(0,1),(2,0),…
    fn diagonal_index(x: u64, y: u64) -> u64 {
        let mut idx = 0;
        for s in 0.. {
            for yy in 0..=s {
                if (s - yy, yy) == (x, y) {
                    return idx;
                }
                idx += 1;
            }
        }
        unreachable!()
    }

    #[test]
    fn pair_matches_diagonal_enumeration() {
        assert_eq!(pair(&n(0), &n(0)), n(0));
        assert_eq!(pair(&n(1), &n(0)), n(1));
        assert_eq!(pair(&n(0), &n(1)), n(2));
        for x in 0..20 {
            for y in 0..20 {
                assert_eq!(pair(&n(x), &n(y)), n(diagonal_index(x, y)));
            }
        }
        assert_eq!(unpair(&n(2)), (n(0), n(1)));
        assert_eq!(unpair(&n(1)), (n(1), n(0)));
        assert_eq!(unpair(&n(0)), (n(0), n(0)));
    }

    #[test]
    fn pair_injective_and_monotone_on_512_square() {
        let mut seen = std::collections::HashSet::new();
        for x in 0u64..512 {
            for y in 0u64..512 {
                let p = pair(&n(x), &n(y));
                assert!(p < pair(&n(x + 1), &n(y)));
                assert!(p < pair(&n(x), &n(y + 1)));
                assert_eq!(unpair(&p), (n(x), n(y)));
                assert!(seen.insert(p));
            }
        }
    }

    #[test]
    fn tuples_over_16_cube() {
        for a in 0..16 {
            for b in 0..16 {
                for c in 0..16 {
                    let t = tuple_k(&[n(a), n(b), n(c)]).unwrap();
                    // apply unpair twice by hand
                    let (ab, c2) = unpair(&t);
                    let (a2, b2) = unpair(&ab);
                    assert_eq!((a2.clone(), b2.clone(), c2.clone()), (n(a), n(b), n(c)));
                    for (i, v) in [a2, b2, c2].iter().enumerate() {
                        assert_eq!(&project(&t, i, 3).unwrap(), v);
                    }
                }
            }
        }
        assert_eq!(tuple_k(&[n(5)]).unwrap(), n(5));
        assert_eq!(project(&n(9), 3, 3), Err(SeqError::Index { index: 3, arity: 3 }));
    }

    #[test]
    fn sequence_examples() {
        let c = encode_seq(&[n(4), n(9)]);
        assert_eq!(seq_get(&c, 1).unwrap(), n(9));
        assert_eq!(seq_get(&c, 0).unwrap(), n(4));
        assert_eq!(seq_get(&c, 5).unwrap(), n(0));
        assert_eq!(seq_get(&encode_seq(&[]), 0).unwrap(), n(0));
    }

    #[test]
    fn non_canonical_codes_are_rejected() {
        // every code is some (len, w, packed) triple; only canonical ones decode
        let mut ok = 0;
        for code in 0u64..4000 {
            if let Ok(xs) = decode_seq(&n(code)) {
                assert_eq!(encode_seq(&xs), n(code));
                ok += 1;
            }
        }
        assert!(ok > 10);
        // width 2 but elements fit in 1 bit
        let bad = pair(&n(1), &pair(&n(2), &n(1)));
        assert!(matches!(decode_seq(&bad), Err(SeqError::Malformed(_))));
    }

    #[test]
    fn string_identification() {
        let x = str_to_num(&Bits::from("101"), 10).unwrap();
        let got: Vec<_> = (0..3).map(|j| seq_get(&x, j).unwrap()).collect();
        assert_eq!(got, vec![n(1), n(0), n(1)]);
        assert_eq!(str_to_num(&Bits::new(), 10).unwrap(), encode_seq(&[]));
        assert_eq!(str_to_num(&Bits::from("0110"), 3), Err(SeqError::SliceExceeded { len: 4, width: 3 }));
        for b in Bits::all_up_to(10) {
            let x = str_to_num(&b, 10).unwrap();
            assert_eq!(num_to_str(&x, b.len()).unwrap(), b);
        }
    }
}
