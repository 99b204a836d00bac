//! Top intersections `⟨c̃; (c_j)_{j∈J}⟩_{(I,J)}` of the twisted Hodge class
//! with pulled-back ψ-classes on blowups of genus-one curve moduli.
//!
//! Evaluation uses only the vanishing rule, the zero-stripping recursion, the
//! move of a point of `I` into `J`, and the `(m-1)!/24` base case. The
//! dilaton relation is exposed separately as [`dilaton_step`] so that it can
//! cross-check the evaluator without sharing its code path.
//!
//! Both `I` and `J` are label-free: a key carries `|I|` and the sorted
//! multiset of exponents.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautError {
    #[error("dilaton relation needs an exponent equal to 1 and |I| + |J| >= 2, got {0}")]
    DilatonInapplicable(TautKey),
}

/// Canonical bracket key: `|I|`, the sorted exponents `c_j`, and `c̃`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TautKey {
    i_count: u32,
    c: Vec<i64>,
    tilde_c: i64,
}

impl TautKey {
    /// Exponents may be given in any order; they are sorted here.
    pub fn new(i_count: u32, mut c: Vec<i64>, tilde_c: i64) -> Self {
        c.sort_unstable();
        Self { i_count, c, tilde_c }
    }

    pub fn i_count(&self) -> u32 {
        self.i_count
    }

    pub fn exponents(&self) -> &[i64] {
        &self.c
    }

    pub fn tilde_c(&self) -> i64 {
        self.tilde_c
    }

    /// `|I| + |J|`, the number of points on the genus-one curve.
    pub fn points(&self) -> usize {
        self.i_count as usize + self.c.len()
    }

    fn vanishes(&self) -> bool {
        let total: i64 = self.tilde_c + self.c.iter().sum::<i64>();
        total != self.points() as i64 || self.tilde_c < 0 || self.c.iter().any(|&x| x < 0)
    }

    fn without(&self, index: usize) -> Vec<i64> {
        let mut rest = self.c.clone();
        rest.remove(index);
        rest
    }
}

impl std::fmt::Display for TautKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}; {:?}>_(|I|={})", self.tilde_c, self.c, self.i_count)
    }
}

/// Memoizing bracket evaluator. Safe to share across threads; the cache is
/// behind a mutex that is never held across a recursive call.
#[derive(Debug, Default)]
pub struct Brackets {
    memo: Mutex<HashMap<TautKey, Rational>>,
    max_depth: AtomicUsize,
}

impl Brackets {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eval(&self, key: &TautKey) -> Rational {
        self.eval_at(key, 0)
    }

    /// Deepest recursion reached by any uncached evaluation so far.
    pub fn max_depth(&self) -> usize {
        self.max_depth.load(Ordering::Relaxed)
    }

    pub fn cache_len(&self) -> usize {
        self.memo.lock().expect("bracket cache poisoned").len()
    }

    fn eval_at(&self, key: &TautKey, depth: usize) -> Rational {
        if key.vanishes() {
            return Rational::zero();
        }
        if let Some(hit) = self.memo.lock().expect("bracket cache poisoned").get(key) {
            return hit.clone();
        }
        self.max_depth.fetch_max(depth, Ordering::Relaxed);
        let value = self.compute(key, depth);
        self.memo.lock().expect("bracket cache poisoned").insert(key.clone(), value.clone());
        value
    }

    fn compute(&self, key: &TautKey, depth: usize) -> Rational {
        let i = key.i_count;
        match key.points() {
            0 => return Rational::zero(),
            // One point: ∫ψ = ∫λ = 1/24 on M̄_{1,1}; the recursions would
            // land on the empty configuration.
            1 => return rational::ratio(1, 24),
            _ => {}
        }

        if let Some(zero_at) = key.c.iter().position(|&x| x == 0) {
            let rest = key.without(zero_at);
            let mut total = Rational::zero();
            if i > 0 {
                let lowered = TautKey::new(i, rest.clone(), key.tilde_c - 1);
                total += self.eval_at(&lowered, depth + 1) * BigInt::from(i);
            }
            // Group equal exponents: each copy contributes the same term.
            let mut start = 0;
            while start < rest.len() {
                let value = rest[start];
                let run = rest[start..].iter().take_while(|&&x| x == value).count();
                let mut shifted = rest.clone();
                shifted[start] -= 1;
                let term = self.eval_at(&TautKey::new(i, shifted, key.tilde_c), depth + 1);
                total += term * BigInt::from(run);
                start += run;
            }
            return total;
        }

        if i > 0 {
            let mut moved = key.c.clone();
            moved.push(0);
            return self.eval_at(&TautKey::new(i - 1, moved, key.tilde_c), depth + 1);
        }

        // I empty, all exponents positive: degree forces c̃ = 0 and c_j = 1.
        debug_assert!(key.tilde_c == 0 && key.c.iter().all(|&x| x == 1), "unexpected key {key}");
        Rational::new(rational::factorial(key.c.len() as u64 - 1), BigInt::from(24))
    }
}

fn shared() -> &'static Brackets {
    static CACHE: OnceLock<Brackets> = OnceLock::new();
    CACHE.get_or_init(Brackets::new)
}

/// Exact bracket value using the process-wide cache.
pub fn bracket(key: &TautKey) -> Rational {
    shared().eval(key)
}

/// `|I|^{|J|} (|I|-1)! / 24`, the closed value of `⟨|I|+|J|; 0,…,0⟩_{(I,J)}`.
pub fn bracket_closed_psitop(i_count: u32, j_count: u32) -> Rational {
    if i_count == 0 {
        return Rational::zero();
    }
    let numer = BigInt::from(i_count).pow(j_count) * rational::factorial(i_count as u64 - 1);
    Rational::new(numer, BigInt::from(24))
}

/// Dilaton relation: removes one exponent equal to 1 and multiplies by
/// `|I| + |J| - 1`. Needs at least two points.
pub fn dilaton_step(key: &TautKey) -> Result<Rational, TautError> {
    let at = key.c.iter().position(|&x| x == 1);
    match at {
        Some(at) if key.points() >= 2 => {
            let reduced = TautKey::new(key.i_count, key.without(at), key.tilde_c);
            Ok(bracket(&reduced) * BigInt::from(key.points() - 1))
        }
        _ => Err(TautError::DilatonInapplicable(key.clone())),
    }
}
