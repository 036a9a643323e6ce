//! Univariate polynomials with nonnegative integer coefficients, used as
//! running-time and proof-size bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::formula::NumTerm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyBound {
    /// Lowest degree first; no trailing zeros except for the zero polynomial.
    coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("bad coefficient {0:?}")]
    BadCoefficient(String),
    #[error("constant polynomial {0}; build it with PolyBound::constant")]
    Constant(u64),
}

impl PolyBound {
    pub fn new(coeffs: Vec<u64>) -> Result<Self, PolyError> {
        let p = Self::normalized(coeffs);
        if p.degree() == 0 {
            return Err(PolyError::Constant(p.coeffs[0]));
        }
        Ok(p)
    }

    pub fn constant(c: u64) -> Self {
        PolyBound { coeffs: vec![c] }
    }

    /// `n + c`.
    pub fn linear_plus(c: u64) -> Self {
        PolyBound { coeffs: vec![c, 1] }
    }

    fn normalized(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        PolyBound { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, n: u64) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, c| {
            acc.checked_mul(n).and_then(|v| v.checked_add(*c)).expect("polynomial bound overflows u64")
        })
    }

    /// Horner-form term `c₀ + n·(c₁ + n·(c₂ + …))`.
    pub fn to_term(&self, n: &NumTerm) -> NumTerm {
        let mut acc: Option<NumTerm> = None;
        for &c in self.coeffs.iter().rev() {
            acc = Some(match acc {
                None => NumTerm::lit(c),
                Some(inner) => {
                    let prod = if inner == NumTerm::One { n.clone() } else { NumTerm::times(n.clone(), inner) };
                    if c == 0 {
                        prod
                    } else {
                        NumTerm::plus(NumTerm::lit(BigUint::from(c)), prod)
                    }
                }
            });
        }
        acc.unwrap_or(NumTerm::Zero)
    }
}

impl FromStr for PolyBound {
    type Err = PolyError;

    /// Comma-separated coefficients, lowest degree first: `"2,1"` is `n + 2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| PolyError::BadCoefficient(c.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        PolyBound::new(coeffs)
    }
}

impl fmt::Display for PolyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::NumTerm;

    #[test]
    fn parse_eval_and_term() {
        let p: PolyBound = "2,1".parse().unwrap();
        assert_eq!(p.eval(3), 5);
        assert_eq!(p.to_term(&NumTerm::len("X")).to_string(), "(+ 2 (len X))");
        let q: PolyBound = "1,0,3".parse().unwrap();
        assert_eq!(q.eval(2), 13);
        assert_eq!(q.to_term(&NumTerm::var("n")).to_string(), "(+ 1 (* n (* n 3)))");
        assert!(matches!("4".parse::<PolyBound>(), Err(PolyError::Constant(4))));
        assert!(matches!("4,0".parse::<PolyBound>(), Err(PolyError::Constant(4))));
        assert_eq!(PolyBound::constant(4).to_term(&NumTerm::var("n")), NumTerm::lit(4u32));
    }

    #[test]
    fn term_agrees_with_eval() {
        let p: PolyBound = "3,0,2,1".parse().unwrap();
        for n in 0..10u64 {
            let t = p.to_term(&NumTerm::lit(n));
            assert_eq!(t.const_value().unwrap(), BigUint::from(p.eval(n)));
        }
    }
}
