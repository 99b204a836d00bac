//! The coefficients `Θ_{m,J}(c)` weighting the untwisted-ψ genus-zero
//! invariants in the standard-minus-reduced difference.
//!
//! [`theta_closed`] sums over all labeled splittings `J = J_0 ⊔ J_1 ⊔ … ⊔ J_m`
//! (blocks may be empty). [`theta_recursive`] uses only the three reduction
//! rules and the initial value `Θ_{1,∅} = -1/24`, and reports
//! [`ThetaRecursive::Inapplicable`] when no rule fires.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::taut::{bracket, TautKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("Θ needs m >= 1, got m = {0}")]
    ZeroM(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaKey {
    m: u32,
    c: Vec<u32>,
}

impl ThetaKey {
    pub fn new(m: u32, mut c: Vec<u32>) -> Result<Self, ThetaError> {
        if m == 0 {
            return Err(ThetaError::ZeroM(m));
        }
        c.sort_unstable();
        Ok(Self { m, c })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.c
    }
}

/// Multinomial coefficient `top! / ∏ parts!`; zero when a part is negative or
/// the parts do not sum to `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multinomial {
    pub top: i64,
    pub parts: Vec<i64>,
}

impl Multinomial {
    pub fn value(&self) -> BigInt {
        if self.top < 0 || self.parts.iter().any(|&p| p < 0) || self.parts.iter().sum::<i64>() != self.top {
            return BigInt::zero();
        }
        self.parts.iter().fold(rational::factorial(self.top as u64), |acc, &p| acc / rational::factorial(p as u64))
    }

    /// `binom(|B|-1; (c_j)_{j∈B}, |B|-1-p_B)` for a block `B`, with the
    /// empty block weighted 1.
    pub fn block_weight(exponents: &[i64]) -> BigInt {
        if exponents.is_empty() {
            return BigInt::one();
        }
        let top = exponents.len() as i64 - 1;
        let mut parts = exponents.to_vec();
        parts.push(top - exponents.iter().sum::<i64>());
        Multinomial { top, parts }.value()
    }
}

/// Θ by direct enumeration of the `(m+1)^{|J|}` block assignments.
pub fn theta_closed(key: &ThetaKey) -> Rational {
    let c: Vec<i64> = key.c.iter().map(|&x| x as i64).collect();
    theta_closed_signed(key.m, &c)
}

fn theta_closed_signed(m: u32, c: &[i64]) -> Rational {
    let blocks = m as usize + 1;
    let mut total = Rational::zero();
    let mut assignment = vec![0usize; c.len()];
    let mut members: Vec<Vec<i64>> = vec![Vec::new(); blocks];
    loop {
        for block in &mut members {
            block.clear();
        }
        for (j, &b) in assignment.iter().enumerate() {
            members[b].push(c[j]);
        }
        let weight: BigInt = members[1..].iter().map(|b| Multinomial::block_weight(b)).product();
        if !weight.is_zero() {
            let base = &members[0];
            let p0: i64 = base.iter().sum();
            let tilde_c = m as i64 + base.len() as i64 - p0;
            let value = bracket(&TautKey::new(m, base.clone(), tilde_c));
            let sign = rational::sign(tilde_c);
            total += value * (weight * sign);
        }
        // Next assignment in base (m+1).
        let mut pos = 0;
        loop {
            if pos == assignment.len() {
                return total;
            }
            assignment[pos] += 1;
            if assignment[pos] < blocks {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaRecursive {
    Value(Rational),
    /// No reduction rule applies (e.g. `m = 1` with every `c_j >= 2`).
    Inapplicable,
}

impl ThetaRecursive {
    pub fn value(self) -> Option<Rational> {
        match self {
            ThetaRecursive::Value(v) => Some(v),
            ThetaRecursive::Inapplicable => None,
        }
    }
}

/// Θ from the reduction rules alone.
pub fn theta_recursive(key: &ThetaKey) -> ThetaRecursive {
    let c: Vec<i64> = key.c.iter().map(|&x| x as i64).collect();
    match recurse(key.m, c) {
        Some(v) => ThetaRecursive::Value(v),
        None => ThetaRecursive::Inapplicable,
    }
}

fn recurse(m: u32, mut c: Vec<i64>) -> Option<Rational> {
    c.sort_unstable();
    if c.iter().any(|&x| x < 0) {
        return Some(Rational::zero());
    }
    if let Some(at) = c.iter().position(|&x| x == 0) {
        c.remove(at);
        let mut total = Rational::zero();
        for j in 0..c.len() {
            let mut lowered = c.clone();
            lowered[j] -= 1;
            total += recurse(m, lowered)?;
        }
        return Some(total);
    }
    if let Some(at) = c.iter().position(|&x| x == 1) {
        let factor = BigInt::from(m as usize + c.len() - 1);
        c.remove(at);
        return Some(recurse(m, c)? * factor);
    }
    if m > 1 {
        let mut total = recurse(m - 1, c.clone())? * BigInt::from(-(m as i64 - 1));
        for j in 0..c.len() {
            let mut lowered = c.clone();
            lowered[j] -= 1;
            total += recurse(m - 1, lowered)?;
        }
        return Some(total);
    }
    if c.is_empty() {
        return Some(rational::ratio(-1, 24));
    }
    None
}
