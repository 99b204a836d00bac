//! Invariant suites run by `gw1 selftest`, at parameters small enough to
//! finish in seconds.
//!
//! The Θ suite takes the Θ evaluator as a parameter so that a deliberately
//! corrupted implementation can be shown to fail it.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diff::{self, DescendantProblem, Flavor, InvariantTable, Missing, Subset};
use crate::mirror::{self, HypersurfaceConfig, MirrorData};
use crate::rational::{self, Rational};
use crate::series::QSeries;
use crate::taut::{bracket, bracket_closed_psitop, dilaton_step, TautKey};
use crate::theta::{theta_closed, theta_recursive, ThetaKey, ThetaRecursive};

pub type ThetaFn = dyn Fn(&ThetaKey) -> Rational + Sync;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every suite with the production Θ.
pub fn run_all() -> Vec<SuiteOutcome> {
    run_with_theta(&theta_closed)
}

pub fn run_with_theta(theta: &ThetaFn) -> Vec<SuiteOutcome> {
    vec![series_suite(), bracket_suite(), theta_suite(theta), difference_suite(), mirror_suite()]
}

fn series_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("series");
    let order = 6;
    let x = QSeries::from_rationals((0..=order as i64).map(|k| rational::ratio(k * k - 2, k + 1)).collect());
    let unit = QSeries::one(order).add(&x.sub(&QSeries::constant(order, x.coeff(0).coeff(0))).unwrap()).unwrap();
    let round = unit.log().and_then(|l| l.exp());
    s.check(round.as_ref() == Ok(&unit), || "exp(log u) != u".into());
    let inverse = unit.inv().and_then(|i| i.mul(&unit));
    s.check(inverse == Ok(QSeries::one(order)), || "u·u^{-1} != 1".into());
    match unit.revert() {
        Ok(v) => {
            // q = Q·v(Q) and Q = q·u(q) must compose to the identity.
            let q = QSeries::from_rationals((0..=order).map(|k| rational::int((k == 1) as i64)).collect());
            let qu = q.mul(&unit).unwrap();
            s.check(qu.substitute(&v).as_ref() == Ok(&q), || "reversion does not invert q·u(q)".into());
        }
        Err(e) => s.check(false, || format!("revert failed: {e}")),
    }
    s
}

fn bracket_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("brackets");
    for i in 1..=4u32 {
        for j in 0..=4u32 {
            let key = TautKey::new(i, vec![0; j as usize], (i + j) as i64);
            let (got, want) = (bracket(&key), bracket_closed_psitop(i, j));
            s.check(got == want, || format!("{key}: {got} != {want}"));
        }
    }
    for key in dilaton_keys(3, 3, 3) {
        if let Ok(step) = dilaton_step(&key) {
            let direct = bracket(&key);
            s.check(direct == step, || format!("dilaton at {key}: {direct} != {step}"));
        }
    }
    s
}

/// Every degree-compatible key with `|I| <= max_i`, `|J| <= max_len`, and
/// exponents at most `max_c`.
pub fn dilaton_keys(max_i: u32, max_len: usize, max_c: i64) -> Vec<TautKey> {
    let mut out = Vec::new();
    for i in 0..=max_i {
        for c in multisets(max_len, max_c) {
            let total: i64 = c.iter().sum();
            let tilde_c = i as i64 + c.len() as i64 - total;
            if tilde_c >= 0 {
                out.push(TautKey::new(i, c, tilde_c));
            }
        }
    }
    out
}

/// Sorted multisets of `0..=max_value` with at most `max_len` elements.
pub fn multisets(max_len: usize, max_value: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for base in &frontier {
            let start = base.last().copied().unwrap_or(0);
            for v in start..=max_value {
                let mut grown: Vec<i64> = base.clone();
                grown.push(v);
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `(-1)^m (m-1)!/24`.
pub fn theta_empty_value(m: u32) -> Rational {
    Rational::new(rational::factorial(m as u64 - 1) * rational::sign(m as i64), BigInt::from(24))
}

fn theta_suite(theta: &ThetaFn) -> SuiteOutcome {
    let mut s = SuiteOutcome::new("theta");
    for m in 1..=4u32 {
        for len in 0..=3usize {
            let key = ThetaKey::new(m, vec![0; len]).expect("m >= 1");
            let want = if len == 0 { theta_empty_value(m) } else { Rational::zero() };
            let got = theta(&key);
            s.check(got == want, || format!("Θ_{m} at {len} zero exponents: {got} != {want}"));
        }
        for c in multisets(3, 3) {
            let c: Vec<u32> = c.into_iter().map(|x| x as u32).collect();
            let key = ThetaKey::new(m, c.clone()).expect("m >= 1");
            if let ThetaRecursive::Value(rec) = theta_recursive(&key) {
                let got = theta(&key);
                s.check(got == rec, || format!("Θ_{m}({c:?}): closed {got} != recursive {rec}"));
            }
        }
    }
    s
}

/// A random descendant problem with `k <= 3` points and a random `η̃` table
/// with `m <= 3`. Missing entries are meant to be read as zero.
pub fn random_tilde_instance(rng: &mut impl Rng) -> (DescendantProblem, InvariantTable) {
    let n = rng.gen_range(2..=7u32);
    let k = rng.gen_range(0..=3usize);
    let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    let mu_deg: Vec<u32> = (0..k).map(|_| rng.gen_range(0..=4)).collect();
    let problem = DescendantProblem::new(n, c, mu_deg, None).expect("unconstrained problem");
    let m_max = rng.gen_range(1..=3u32);
    let mut table = InvariantTable::new(Flavor::EtaTilde);
    for m in 1..=m_max {
        for j in Subset::all(k) {
            let d = problem.d_mj(m, j);
            for p in 0..=d.max(-1) {
                if rng.gen_bool(0.8) {
                    let value = rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6));
                    table.insert(&problem, m, j, p as u32, value).expect("p within range");
                }
            }
        }
    }
    (problem, table)
}

/// Theorem 1 applied to the transformed table against Theorem 2 applied to
/// the original.
pub fn two_theorem_gap(problem: &DescendantProblem, table: &InvariantTable) -> Result<Option<String>, diff::DiffError> {
    let eta = diff::eta_from_tilde(problem, table, Missing::AssumeZero)?;
    let first = diff::diff_thm1(problem, &eta, Missing::Error)?;
    let second = diff::diff_thm2(problem, table, Missing::AssumeZero)?;
    Ok((first != second).then(|| format!("theorem 1 gives {first}, theorem 2 gives {second}")))
}

fn difference_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("difference");
    let mut rng = ChaCha8Rng::seed_from_u64(0x6731);
    for round in 0..25 {
        let (problem, table) = random_tilde_instance(&mut rng);
        match two_theorem_gap(&problem, &table) {
            Ok(gap) => s.check(gap.is_none(), || format!("table {round}: {}", gap.unwrap_or_default())),
            Err(e) => s.check(false, || format!("table {round}: {e}")),
        }
    }
    s
}

/// Checks shared by the selftest and the acceptance run for one degree.
pub fn mirror_checks(data: &MirrorData) -> Vec<String> {
    let mut failures = Vec::new();
    let n = data.config.n();
    for (p, ipp) in data.ipp.iter().enumerate().take(n as usize - 1) {
        if !(ipp.is_t_free() && ipp.coeff(0).as_constant() == Some(rational::int(1))) {
            failures.push(format!("n={n}: I_({p},{p}) is not a t-free unit"));
        }
    }
    let shape = mirror::untwisted_rbar(&data.rbar, &data.t_minus_t).and_then(|s| mirror::check_identity_shape(&s));
    if let Err(e) = shape {
        failures.push(format!("n={n}: {e}"));
    }
    let assembled = data.f1_standard().and_then(|std| {
        let red = data.f1_reduced()?;
        let diff = data.f1_difference()?;
        Ok(std.sub(&red)? == diff)
    });
    match assembled {
        Ok(true) => {}
        Ok(false) => failures.push(format!("n={n}: standard - reduced != difference")),
        Err(e) => failures.push(format!("n={n}: {e}")),
    }
    failures
}

fn mirror_suite() -> SuiteOutcome {
    let mut s = SuiteOutcome::new("mirror");
    for n in 3..=6u32 {
        let config = HypersurfaceConfig::new(n, 4).expect("valid config");
        match MirrorData::build(&config) {
            Ok(data) => {
                let failures = mirror_checks(&data);
                s.checks += 1;
                s.failures.extend(failures);
            }
            Err(e) => s.check(false, || format!("n={n}: {e}")),
        }
    }
    if let Ok(data) = MirrorData::build(&HypersurfaceConfig::new(5, 2).expect("valid config")) {
        let n1 = data.f1_standard().and_then(|f| mirror::extract_invariants(&f, 2));
        let want = vec![rational::ratio(2875, 12), rational::ratio(407125, 8)];
        s.check(n1.as_ref() == Ok(&want), || format!("quintic low degrees: {n1:?}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for outcome in run_all() {
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.failures);
            assert!(outcome.checks > 0, "{} ran nothing", outcome.name);
        }
    }

    #[test]
    fn sign_flipped_theta_is_caught() {
        let flipped = |k: &ThetaKey| -theta_closed(k);
        let outcomes = run_with_theta(&flipped);
        let theta = outcomes.iter().find(|o| o.name == "theta").unwrap();
        assert!(!theta.passed());
    }

    #[test]
    fn multiset_counts() {
        // Multisets of {0,1} with at most 2 elements: [], [0], [1], [0,0], [0,1], [1,1].
        assert_eq!(multisets(2, 1).len(), 6);
    }
}
