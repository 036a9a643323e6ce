//! Finite bit strings, the second-sort objects of the workbench.
//!
//! A string has an explicit length; `X(i)` is false for every `i >= |X|`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Bits(Vec<bool>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid bit character {0:?} at offset {1}")]
pub struct BitsParseError(pub char, pub usize);

impl Bits {
    pub fn new() -> Self {
        Bits(Vec::new())
    }

    pub fn zeros(len: usize) -> Self {
        Bits(vec![false; len])
    }

    pub fn from_bools(v: Vec<bool>) -> Self {
        Bits(v)
    }

    /// The `len` low bits of `value`, least significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        Bits((0..len).map(|i| i < 64 && (value >> i) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Membership `X(i)`; out-of-range positions read as 0.
    pub fn get(&self, i: usize) -> bool {
        self.0.get(i).copied().unwrap_or(false)
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if i >= self.0.len() {
            self.0.resize(i + 1, false);
        }
        self.0[i] = v;
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn push(&mut self, v: bool) {
        self.0.push(v);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    /// Every bit string of length exactly `len`, in counting order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = Bits> {
        assert!(len < 64, "enumeration length {len} too large");
        (0u64..(1u64 << len)).map(move |v| Bits::from_u64(v, len))
    }

    /// Every bit string of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Bits> {
        (0..=max_len).flat_map(Bits::all_of_len)
    }
}

impl From<&str> for Bits {
    /// Panics on characters other than `0`/`1`; use `parse` for fallible input.
    fn from(s: &str) -> Self {
        s.parse().expect("bit literal")
    }
}

impl FromStr for Bits {
    type Err = BitsParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(BitsParseError(c, i)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits(\"{self}\")")
    }
}
