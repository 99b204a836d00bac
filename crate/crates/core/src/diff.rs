//! Standard-minus-reduced genus-one invariants from genus-zero input tables.
//!
//! A table holds the numbers `GW_{(m,J)}(η_p, c_{d-p}(TX); μ)` (flavor
//! [`Flavor::Eta`]) or their untwisted-ψ counterparts with `η̃_p`
//! ([`Flavor::EtaTilde`]), keyed by `(m, J, p)` where `J ⊆ [k]` is the set of
//! marked points carried to the node and `0 <= p <= d_{m,J}(μ)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::taut::{bracket, TautKey};
use crate::theta::{theta_closed, Multinomial, ThetaKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("missing table entry (m={m}, J={j:?}, p={p}); pass assume-zero to treat absent entries as 0")]
    MissingEntry { m: u32, j: Vec<usize>, p: i64 },
    #[error("table flavor is {found}, expected {expected}")]
    Flavor { expected: Flavor, found: Flavor },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "eta")]
    Eta,
    #[serde(rename = "eta_tilde")]
    EtaTilde,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Eta => "eta",
            Flavor::EtaTilde => "eta_tilde",
        })
    }
}

/// How lookups treat absent table entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Missing {
    #[default]
    Error,
    AssumeZero,
}

/// Subset of the marked points `[k]`, bit `j-1` standing for point `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// From 1-based point labels; rejects labels outside `[k]` and repeats.
    pub fn from_points(points: &[usize], k: usize) -> Result<Self, DiffError> {
        let mut bits = 0u32;
        for &j in points {
            if j == 0 || j > k {
                return Err(DiffError::Validation(format!("marked point {j} is outside [1, {k}]")));
            }
            let bit = 1 << (j - 1);
            if bits & bit != 0 {
                return Err(DiffError::Validation(format!("marked point {j} repeated in J")));
            }
            bits |= bit;
        }
        Ok(Subset(bits))
    }

    pub fn points(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b as usize + 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains_all(self, other: Subset) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// All subsets of `[k]`, in increasing bit order.
    pub fn all(k: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << k).map(Subset)
    }
}

/// The descendant data `μ = (c_1..c_k; μ_1..μ_k)` on a target of complex
/// dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescendantProblem {
    n: u32,
    c: Vec<u32>,
    mu_deg: Vec<u32>,
    c1_beta: Option<i64>,
}

impl DescendantProblem {
    /// Validates list lengths and, when `⟨c_1(TX), β⟩` is given, the genus-one
    /// dimension constraint `Σ(2c_j + deg μ_j) = 2(⟨c_1,β⟩ + k)`.
    pub fn new(n: u32, c: Vec<u32>, mu_deg: Vec<u32>, c1_beta: Option<i64>) -> Result<Self, DiffError> {
        if c.len() != mu_deg.len() {
            return Err(DiffError::Validation(format!("c has {} entries but mu_deg has {}", c.len(), mu_deg.len())));
        }
        if c.len() > 16 {
            return Err(DiffError::Validation(format!("k = {} marked points is too many", c.len())));
        }
        if let Some(c1) = c1_beta {
            let lhs: i64 = c.iter().zip(&mu_deg).map(|(&cj, &dj)| 2 * cj as i64 + dj as i64).sum();
            let rhs = 2 * (c1 + c.len() as i64);
            if lhs != rhs {
                return Err(DiffError::Validation(format!("dimension mismatch: |mu| = {lhs} but 2 dim_(1,k) = {rhs}")));
            }
        }
        Ok(Self { n, c, mu_deg, c1_beta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.c.len()
    }

    pub fn c(&self) -> &[u32] {
        &self.c
    }

    pub fn mu_deg(&self) -> &[u32] {
        &self.mu_deg
    }

    pub fn c1_beta(&self) -> Option<i64> {
        self.c1_beta
    }

    /// `p_J(μ) = Σ_{j∈J} c_j`.
    pub fn p_of(&self, j: Subset) -> i64 {
        j.points().iter().map(|&pt| self.c[pt - 1] as i64).sum()
    }

    /// Exponents `(c_j)_{j∈J}`.
    pub fn exponents(&self, j: Subset) -> Vec<i64> {
        j.points().iter().map(|&pt| self.c[pt - 1] as i64).collect()
    }

    /// `d_{m,J}(μ) = n - 2m - |J| + p_J(μ)`.
    pub fn d_mj(&self, m: u32, j: Subset) -> i64 {
        self.n as i64 - 2 * m as i64 - j.len() as i64 + self.p_of(j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct EntryKey {
    m: u32,
    j: Subset,
    p: u32,
}

/// Sparse genus-zero input table of one flavor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTable {
    flavor: Flavor,
    entries: BTreeMap<EntryKey, Rational>,
}

impl InvariantTable {
    pub fn new(flavor: Flavor) -> Self {
        Self { flavor, entries: BTreeMap::new() }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `m` with an entry, or 0 for an empty table.
    pub fn m_max(&self) -> u32 {
        self.entries.keys().map(|k| k.m).max().unwrap_or(0)
    }

    /// Adds an entry; rejects `m = 0`, `p > d_{m,J}`, and duplicates.
    pub fn insert(
        &mut self,
        problem: &DescendantProblem,
        m: u32,
        j: Subset,
        p: u32,
        value: Rational,
    ) -> Result<(), DiffError> {
        if m == 0 {
            return Err(DiffError::Validation("entry with m = 0".into()));
        }
        let d = problem.d_mj(m, j);
        if p as i64 > d {
            return Err(DiffError::Validation(format!(
                "entry (m={m}, J={:?}, p={p}) exceeds d_(m,J) = {d}",
                j.points()
            )));
        }
        let key = EntryKey { m, j, p };
        if self.entries.contains_key(&key) {
            return Err(DiffError::Validation(format!("duplicate entry (m={m}, J={:?}, p={p})", j.points())));
        }
        self.entries.insert(key, value);
        Ok(())
    }

    pub fn get(&self, m: u32, j: Subset, p: u32) -> Option<&Rational> {
        self.entries.get(&EntryKey { m, j, p })
    }

    /// Entries as `(m, J, p, value)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, Subset, u32, &Rational)> {
        self.entries.iter().map(|(k, v)| (k.m, k.j, k.p, v))
    }

    fn lookup(&self, m: u32, j: Subset, p: i64, missing: Missing) -> Result<Rational, DiffError> {
        if p < 0 {
            return Ok(Rational::zero());
        }
        match (self.get(m, j, p as u32), missing) {
            (Some(v), _) => Ok(v.clone()),
            (None, Missing::AssumeZero) => Ok(Rational::zero()),
            (None, Missing::Error) => Err(DiffError::MissingEntry { m, j: j.points(), p }),
        }
    }

    fn require(&self, flavor: Flavor) -> Result<(), DiffError> {
        if self.flavor == flavor {
            Ok(())
        } else {
            Err(DiffError::Flavor { expected: flavor, found: self.flavor })
        }
    }
}

/// Sum over labeled splittings of `extra` into `m` possibly-empty blocks of
/// the product of block multinomials.
fn splitting_weight(problem: &DescendantProblem, extra: Subset, m: u32) -> BigInt {
    let exps = problem.exponents(extra);
    let blocks = m as usize;
    let mut total = BigInt::zero();
    let mut assignment = vec![0usize; exps.len()];
    let mut members: Vec<Vec<i64>> = vec![Vec::new(); blocks];
    loop {
        for b in &mut members {
            b.clear();
        }
        for (idx, &b) in assignment.iter().enumerate() {
            members[b].push(exps[idx]);
        }
        total += members.iter().map(|b| Multinomial::block_weight(b)).product::<BigInt>();
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

/// Rewrites an `η̃` table as an `η` table.
///
/// Each target `(m, J, p)` collects, over `J ⊆ J' ⊆ [k]`, the splitting weight
/// of `J' - J` times the `η̃` entry at `(m, J', p - |J'-J| + p_{J'-J})`.
/// The result has an entry for every `(m, J, p)` with `m <= m_max` and
/// `0 <= p <= d_{m,J}`.
pub fn eta_from_tilde(
    problem: &DescendantProblem,
    table: &InvariantTable,
    missing: Missing,
) -> Result<InvariantTable, DiffError> {
    table.require(Flavor::EtaTilde)?;
    let k = problem.k();
    let mut out = InvariantTable::new(Flavor::Eta);
    for m in 1..=table.m_max() {
        for j in Subset::all(k) {
            let d = problem.d_mj(m, j);
            if d < 0 {
                continue;
            }
            let supersets: Vec<(Subset, BigInt, i64)> = Subset::all(k)
                .filter(|jp| jp.contains_all(j))
                .filter_map(|jp| {
                    let extra = jp.minus(j);
                    let weight = splitting_weight(problem, extra, m);
                    let shift = extra.len() as i64 - problem.p_of(extra);
                    (!weight.is_zero()).then_some((jp, weight, shift))
                })
                .collect();
            for p in 0..=d {
                let mut value = Rational::zero();
                for (jp, weight, shift) in &supersets {
                    let entry = table.lookup(m, *jp, p - shift, missing)?;
                    value += entry * weight.clone();
                }
                out.entries.insert(EntryKey { m, j, p: p as u32 }, value);
            }
        }
    }
    Ok(out)
}

/// One `(m, J)` summand of a difference formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub m: u32,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
    pub entries: Vec<TermEntry>,
    #[serde(with = "rational::serde_str")]
    pub contribution: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermEntry {
    pub p: u32,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

/// Value of a difference formula with the terms that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub formula: &'static str,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    /// Largest `m` summed over.
    pub m_bound: u32,
    pub terms: Vec<Term>,
}

fn evaluate(
    formula: &'static str,
    problem: &DescendantProblem,
    table: &InvariantTable,
    missing: Missing,
    m_bound: u32,
    subsets: &[Subset],
    coefficient: impl Fn(u32, Subset) -> Rational,
) -> Result<Report, DiffError> {
    let mut terms = Vec::new();
    let mut value = Rational::zero();
    for m in 1..=m_bound {
        for &j in subsets {
            let d = problem.d_mj(m, j);
            if d < 0 {
                continue;
            }
            let coeff = coefficient(m, j);
            if coeff.is_zero() {
                continue;
            }
            let mut entries = Vec::new();
            let mut sum = Rational::zero();
            for p in 0..=d {
                let v = table.lookup(m, j, p, missing)?;
                sum += &v;
                entries.push(TermEntry { p: p as u32, value: v });
            }
            let contribution = &coeff * &sum;
            value += &contribution;
            terms.push(Term { m, j: j.points(), coefficient: coeff, entries, contribution });
        }
    }
    Ok(Report { formula, value, m_bound, terms })
}

/// `(-1)^{m+|J|-p_J} ⟨m+|J|-p_J; (c_j)_{j∈J}⟩_{([m],J)}`.
pub fn thm1_coefficient(problem: &DescendantProblem, m: u32, j: Subset) -> Rational {
    let tilde_c = m as i64 + j.len() as i64 - problem.p_of(j);
    bracket(&TautKey::new(m, problem.exponents(j), tilde_c)) * BigInt::from(rational::sign(tilde_c))
}

/// `Θ_{m,J}((c_j)_{j∈J})`.
pub fn thm2_coefficient(problem: &DescendantProblem, m: u32, j: Subset) -> Rational {
    let c = j.points().iter().map(|&pt| problem.c[pt - 1]).collect();
    theta_closed(&ThetaKey::new(m, c).expect("m >= 1"))
}

/// Difference from an `η` table with bracket-number coefficients.
pub fn diff_thm1_report(
    problem: &DescendantProblem,
    table: &InvariantTable,
    missing: Missing,
) -> Result<Report, DiffError> {
    table.require(Flavor::Eta)?;
    let subsets: Vec<_> = Subset::all(problem.k()).collect();
    evaluate("theorem1", problem, table, missing, table.m_max(), &subsets, |m, j| thm1_coefficient(problem, m, j))
}

pub fn diff_thm1(problem: &DescendantProblem, table: &InvariantTable, missing: Missing) -> Result<Rational, DiffError> {
    diff_thm1_report(problem, table, missing).map(|r| r.value)
}

/// Difference from an `η̃` table with Θ coefficients.
pub fn diff_thm2_report(
    problem: &DescendantProblem,
    table: &InvariantTable,
    missing: Missing,
) -> Result<Report, DiffError> {
    table.require(Flavor::EtaTilde)?;
    let subsets: Vec<_> = Subset::all(problem.k()).collect();
    evaluate("theorem2", problem, table, missing, table.m_max(), &subsets, |m, j| thm2_coefficient(problem, m, j))
}

pub fn diff_thm2(problem: &DescendantProblem, table: &InvariantTable, missing: Missing) -> Result<Rational, DiffError> {
    diff_thm2_report(problem, table, missing).map(|r| r.value)
}

/// Descendant-free difference: `(1/24) Σ_{2m<=n} (-1)^m (m-1)! Σ_{p<=n-2m}`
/// of the `J = ∅` entries. The `m`-sum also stops at the table's `m_max`.
pub fn diff_descendant_free_report(
    problem: &DescendantProblem,
    table: &InvariantTable,
    missing: Missing,
) -> Result<Report, DiffError> {
    if problem.c.iter().any(|&c| c != 0) {
        return Err(DiffError::Precondition("descendant-free formula needs every c_j = 0".into()));
    }
    // With no marked points both flavors coincide.
    if problem.k() > 0 {
        table.require(Flavor::EtaTilde)?;
    }
    let m_bound = (problem.n / 2).min(table.m_max());
    evaluate("descendant_free", problem, table, missing, m_bound, &[Subset::EMPTY], |m, _| {
        Rational::new(rational::factorial(m as u64 - 1) * rational::sign(m as i64), BigInt::from(24))
    })
}

pub fn diff_descendant_free(
    problem: &DescendantProblem,
    table: &InvariantTable,
    missing: Missing,
) -> Result<Rational, DiffError> {
    diff_descendant_free_report(problem, table, missing).map(|r| r.value)
}

/// JSON input: problem data and one table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffInput {
    pub n: u32,
    pub k: usize,
    pub c: Vec<u32>,
    pub mu_deg: Vec<u32>,
    #[serde(default)]
    pub c1_beta: Option<i64>,
    pub flavor: Flavor,
    pub entries: Vec<EntryRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub m: u32,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub p: u32,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

impl DiffInput {
    pub fn into_parts(self) -> Result<(DescendantProblem, InvariantTable), DiffError> {
        if self.k != self.c.len() {
            return Err(DiffError::Validation(format!("k = {} but c has {} entries", self.k, self.c.len())));
        }
        let problem = DescendantProblem::new(self.n, self.c, self.mu_deg, self.c1_beta)?;
        let mut table = InvariantTable::new(self.flavor);
        for e in self.entries {
            let j = Subset::from_points(&e.j, problem.k())?;
            table.insert(&problem, e.m, j, e.p, e.value)?;
        }
        Ok((problem, table))
    }

    pub fn from_parts(problem: &DescendantProblem, table: &InvariantTable) -> Self {
        DiffInput {
            n: problem.n,
            k: problem.k(),
            c: problem.c.clone(),
            mu_deg: problem.mu_deg.clone(),
            c1_beta: problem.c1_beta,
            flavor: table.flavor,
            entries: table.iter().map(|(m, j, p, v)| EntryRecord { m, j: j.points(), p, value: v.clone() }).collect(),
        }
    }
}
