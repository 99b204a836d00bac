//! Genus-one invariants of a degree-`n` hypersurface `X ⊂ P^{n-1}` from
//! hypergeometric series.
//!
//! Pipeline: the generating series `R(w,t)`, the functions `I_{p,q}(t)`, the
//! mirror map `T = I_{0,1}/I_{0,0}`, the normalized series `R̄ = R/I_{0,0}`,
//! the one-point series `Z_r` read off `e^{-Tw} R̄`, and the slices
//! `D_w^p ln R̄`. These assemble into the standard and reduced genus-one
//! series and their difference, re-expanded in `Q = e^T`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::series::{QSeries, SeriesError, TPoly, WSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MirrorError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("mirror identity violated: {0}")]
    IdentityViolation(String),
    #[error("assembled series has a nonzero constant term: {0}")]
    Assembly(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HypersurfaceConfig {
    n: u32,
    max_degree: usize,
    w_order: usize,
}

impl HypersurfaceConfig {
    /// Degree `n >= 3`, series through `q^max_degree`, `w`-order `n - 1`.
    pub fn new(n: u32, max_degree: usize) -> Result<Self, MirrorError> {
        Self::with_w_order(n, max_degree, n.saturating_sub(1) as usize)
    }

    /// `w_order` must lie in `[n-2, n-1]`: the identities hold modulo `w^n`
    /// and the log slices go up to `w^{n-2}`.
    pub fn with_w_order(n: u32, max_degree: usize, w_order: usize) -> Result<Self, MirrorError> {
        if n < 3 {
            return Err(MirrorError::Config(format!("need n >= 3, got {n}")));
        }
        if max_degree < 1 {
            return Err(MirrorError::Config("need max degree >= 1".into()));
        }
        let n_us = n as usize;
        if w_order + 2 < n_us || w_order + 1 > n_us {
            return Err(MirrorError::Config(format!("w-order must be n-2 or n-1, got {w_order} for n = {n}")));
        }
        Ok(Self { n, max_degree, w_order })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn w_order(&self) -> usize {
        self.w_order
    }
}

/// Every intermediate series of the pipeline for one configuration.
#[derive(Debug, Clone)]
pub struct MirrorData {
    pub config: HypersurfaceConfig,
    pub r: WSeries,
    /// `I_{0,q}` for `q = 0..=W`.
    pub i0q: Vec<QSeries>,
    /// Diagonal `I_{p,p}` for `p = 0..=W`.
    pub ipp: Vec<QSeries>,
    /// `T - t`, a pure `q`-series.
    pub t_minus_t: QSeries,
    /// `u = exp(T - t)`, so that `e^T = q·u(q)`.
    pub qchange: QSeries,
    /// Inverse change of variables: `q = Q·v(Q)` with `Q = e^T`.
    pub reversion: QSeries,
    pub rbar: WSeries,
    /// `Z_r(e^T)` for `r = 0..=W-2`.
    pub z: Vec<QSeries>,
    /// `D_w^p ln R̄` (in `q`) for `p = 2..=n-2`; index 0 is `p = 2`.
    pub dln_rbar: Vec<QSeries>,
}

/// Taylor coefficients of `∏_{r=1}^{nd}(nw+r) / ∏_{r=1}^{d}(w+r)^n` through
/// `w^W`, for `d = 0..=D`.
fn hypergeometric_terms(config: &HypersurfaceConfig) -> Vec<Vec<Rational>> {
    let n = config.n as i64;
    let w = config.w_order;
    let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); w + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b[..=w - i].iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut terms = Vec::with_capacity(config.max_degree + 1);
    let mut current = vec![Rational::zero(); w + 1];
    current[0] = Rational::one();
    terms.push(current.clone());
    for d in 1..=config.max_degree as i64 {
        for r in n * (d - 1) + 1..=n * d {
            let mut linear = vec![Rational::zero(); w + 1];
            linear[0] = rational::int(r);
            if w >= 1 {
                linear[1] = rational::int(n);
            }
            current = mul(&current, &linear);
        }
        // (w+d)^{-n} = d^{-n} Σ_k (-1)^k C(n+k-1, k) (w/d)^k
        let inverse: Vec<Rational> = (0..=w)
            .map(|k| {
                let binom = binomial(n as u64 + k as u64 - 1, k as u64);
                let denom = BigInt::from(d).pow(n as u32 + k as u32);
                Rational::new(binom * rational::sign(k as i64), denom)
            })
            .collect();
        current = mul(&current, &inverse);
        terms.push(current.clone());
    }
    terms
}

fn binomial(top: u64, bottom: u64) -> BigInt {
    rational::factorial(top) / (rational::factorial(bottom) * rational::factorial(top - bottom))
}

/// `R(w,t) = e^{wt} Σ_d q^d ∏(nw+r)/∏(w+r)^n` modulo `w^{W+1}`.
pub fn build_r(config: &HypersurfaceConfig) -> Result<WSeries, MirrorError> {
    let terms = hypergeometric_terms(config);
    let rows =
        (0..=config.w_order).map(|a| QSeries::from_rationals(terms.iter().map(|t| t[a].clone()).collect())).collect();
    let hypergeometric = WSeries::from_coeffs(rows)?;
    let twist = WSeries::exp_wt(1, config.w_order, config.max_degree);
    Ok(twist.mul(&hypergeometric)?)
}

fn is_unit(series: &QSeries) -> bool {
    series.is_t_free() && series.coeff(0) == &TPoly::one()
}

/// `I_{0,q}` from `R`, and the diagonal `I_{p,p}` of the recursion
/// `I_{p,q} = d/dt (I_{p-1,q} / I_{p-1,p-1})`.
pub fn build_i(r: &WSeries) -> Result<(Vec<QSeries>, Vec<QSeries>), MirrorError> {
    let w = r.w_order();
    let i0q: Vec<QSeries> = r.coeffs().to_vec();
    let mut row = i0q.clone();
    let mut ipp = Vec::with_capacity(w + 1);
    for p in 0..=w {
        let diag = row[p].clone();
        if !is_unit(&diag) {
            return Err(MirrorError::Consistency(format!("I_({p},{p}) is not a t-free unit: {diag}")));
        }
        if p < w {
            let inv = diag.inv()?;
            let mut next = vec![QSeries::zero(r.q_order()); w + 1];
            for q in p + 1..=w {
                next[q] = row[q].mul(&inv)?.ddt();
            }
            row = next;
        }
        ipp.push(diag);
    }
    Ok((i0q, ipp))
}

/// `T - t = I_{0,1}/I_{0,0} - t` and the unit `exp(T - t)`.
pub fn mirror_map(i0q: &[QSeries]) -> Result<(QSeries, QSeries), MirrorError> {
    let order = i0q[0].order();
    let ratio = i0q[1].mul(&i0q[0].inv()?)?;
    let g = ratio.sub(&QSeries::t(order))?;
    if !g.is_t_free() {
        return Err(MirrorError::Consistency(format!("T - t is not t-free: {g}")));
    }
    if !g.coeff(0).is_zero() {
        return Err(MirrorError::Consistency(format!("T - t has constant term {}", g.coeff(0))));
    }
    let u = g.exp()?;
    Ok((g, u))
}

/// `e^{-Tw} R̄ = e^{-tw} · exp(-w (T - t)) · R̄` modulo `w^{W+1}`.
pub fn untwisted_rbar(rbar: &WSeries, t_minus_t: &QSeries) -> Result<WSeries, MirrorError> {
    let w = rbar.w_order();
    let e_tw = WSeries::exp_wt(-1, w, rbar.q_order());
    let e_gw = WSeries::exp_w_times(&t_minus_t.neg(), w)?;
    Ok(e_tw.mul(&e_gw)?.mul(rbar)?)
}

/// `Z_r(e^T)` for `r = 0..=W-2`, after checking the `w^0` row is 1, the
/// `w^1` row is 0, and every row is `t`-free.
pub fn build_z(rbar: &WSeries, t_minus_t: &QSeries, reversion: &QSeries) -> Result<Vec<QSeries>, MirrorError> {
    let shape = untwisted_rbar(rbar, t_minus_t)?;
    check_identity_shape(&shape)?;
    shape.coeffs()[2..].iter().map(|row| row.substitute(reversion).map_err(MirrorError::from)).collect()
}

/// The `w^0 = 1`, `w^1 = 0`, `t`-free shape of `e^{-Tw} R̄`.
pub fn check_identity_shape(shape: &WSeries) -> Result<(), MirrorError> {
    if shape.coeff(0) != &QSeries::one(shape.q_order()) {
        return Err(MirrorError::IdentityViolation(format!("w^0 row is {}", shape.coeff(0))));
    }
    if shape.w_order() >= 1 && !shape.coeff(1).is_zero() {
        return Err(MirrorError::IdentityViolation(format!("w^1 row is {}", shape.coeff(1))));
    }
    if let Some(a) = shape.coeffs().iter().position(|row| !row.is_t_free()) {
        return Err(MirrorError::IdentityViolation(format!("w^{a} row depends on t")));
    }
    Ok(())
}

/// `D_w^p ln R̄` for `p = 2..=min(n-2, W)`: the `w^p` slices of
/// `ln(e^{-wt} R̄)`.
pub fn dwp_ln_rbar(config: &HypersurfaceConfig, rbar: &WSeries) -> Result<Vec<QSeries>, MirrorError> {
    let e_tw = WSeries::exp_wt(-1, rbar.w_order(), rbar.q_order());
    let log = e_tw.mul(rbar)?.log()?;
    let top = (config.n as usize - 2).min(rbar.w_order());
    (2..=top)
        .map(|p| {
            let slice = log.dwp(p)?;
            if !slice.is_t_free() {
                return Err(MirrorError::Consistency(format!("D_w^{p} ln R̄ depends on t")));
            }
            Ok(slice)
        })
        .collect()
}

/// `w^q` Taylor coefficient of `(1+w)^n / (1+nw)`: `Σ_i C(n,i) (-n)^{q-i}`.
pub fn chern_weight(n: u32, q: u32) -> Rational {
    let total: BigInt =
        (0..=q.min(n)).map(|i| binomial(n as u64, i as u64) * BigInt::from(-(n as i64)).pow(q - i)).sum();
    Rational::from_integer(total)
}

/// Compositions of `total` into `parts` summands, each at least `min`.
fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut first = min;
    while first + min * (parts - 1) <= total {
        for mut rest in compositions(total - first, parts - 1, min) {
            rest.insert(0, first);
            out.push(rest);
        }
        first += 1;
    }
    out
}

/// Both sides of the standard-minus-reduced series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceRoutes {
    /// `(n/24) Σ_p c_{n-2-p} Σ_m ((-1)^m/m) Σ ∏ Z_{p_i-2}`.
    pub z_products: QSeries,
    /// `-(n/24) Σ_p c_{n-2-p} D_w^p ln R̄`, in `e^T`.
    pub log_slices: QSeries,
}

impl MirrorData {
    pub fn build(config: &HypersurfaceConfig) -> Result<Self, MirrorError> {
        let r = build_r(config)?;
        let (i0q, ipp) = build_i(&r)?;
        let (t_minus_t, qchange) = mirror_map(&i0q)?;
        let reversion = qchange.revert()?;
        let rbar = r.mul_q(&i0q[0].inv()?)?;
        let z = build_z(&rbar, &t_minus_t, &reversion)?;
        let dln_rbar = dwp_ln_rbar(config, &rbar)?;
        Ok(Self { config: *config, r, i0q, ipp, t_minus_t, qchange, reversion, rbar, z, dln_rbar })
    }

    fn order(&self) -> usize {
        self.config.max_degree
    }

    fn n(&self) -> u32 {
        self.config.n
    }

    /// `D_w^p ln R̄` for `2 <= p <= n-2`.
    pub fn dln(&self, p: usize) -> Option<&QSeries> {
        p.checked_sub(2).and_then(|i| self.dln_rbar.get(i))
    }

    fn require_full_log_range(&self) -> Result<(), MirrorError> {
        let needed = (self.n() as usize).saturating_sub(3);
        if self.dln_rbar.len() < needed {
            return Err(MirrorError::Config("w-order too small for the genus-one formula".into()));
        }
        Ok(())
    }

    /// Re-expands a `t`-free `q`-series in `Q = e^T`.
    pub fn to_flat(&self, series: &QSeries) -> Result<QSeries, MirrorError> {
        if !series.is_t_free() {
            return Err(MirrorError::Consistency("series still depends on t".into()));
        }
        Ok(series.substitute(&self.reversion)?)
    }

    /// Right-hand side of the genus-one mirror formula, as a series in `q`.
    fn standard_in_q(&self) -> Result<QSeries, MirrorError> {
        let n = self.n() as i64;
        let order = self.order();
        let one_minus_n = (1 - n).pow(self.n());
        let mirror_coeff = rational::ratio((n - 2) * (n + 1), 48) + rational::ratio(1 - one_minus_n, 24 * n * n);
        let log_i00_coeff = rational::ratio(n * n - 1 + one_minus_n, 24 * n);

        // ln(1 - n^n q) = -Σ_k n^{nk} q^k / k
        let nn = BigInt::from(n).pow(self.n());
        let discriminant = QSeries::from_rationals(
            (0..=order)
                .map(|k| if k == 0 { Rational::zero() } else { Rational::new(-nn.pow(k as u32), BigInt::from(k)) })
                .collect(),
        );

        let mut total = self.t_minus_t.scale(&mirror_coeff).add(&self.ipp[0].log()?.scale(&log_i00_coeff))?;
        let (disc_coeff, diagonal): (Rational, Vec<(usize, Rational)>) = if n % 2 == 1 {
            (
                rational::ratio(n - 1, 48),
                (0..=((n - 3) / 2) as usize).map(|p| (p, rational::ratio((n - 1 - 2 * p as i64).pow(2), 8))).collect(),
            )
        } else {
            (
                rational::ratio(n - 4, 48),
                (0..=((n - 4) / 2) as usize)
                    .map(|p| (p, rational::ratio((n - 2 * p as i64) * (n - 2 - 2 * p as i64), 8)))
                    .collect(),
            )
        };
        total = total.sub(&discriminant.scale(&disc_coeff))?;
        for (p, coeff) in diagonal {
            let ipp = self.ipp.get(p).ok_or_else(|| MirrorError::Config(format!("I_({p},{p}) not built")))?;
            total = total.sub(&ipp.log()?.scale(&coeff))?;
        }
        Ok(total)
    }

    fn check_no_constant(&self, series: &QSeries, what: &str) -> Result<(), MirrorError> {
        if !series.coeff(0).is_zero() {
            return Err(MirrorError::Assembly(format!("{what}: {}", series.coeff(0))));
        }
        Ok(())
    }

    /// `Σ_{d>=1} e^{dT} N_1^d`.
    pub fn f1_standard(&self) -> Result<QSeries, MirrorError> {
        self.require_full_log_range()?;
        let flat = self.to_flat(&self.standard_in_q()?)?;
        self.check_no_constant(&flat, "standard genus-one series")?;
        Ok(flat)
    }

    /// `(n/24) Σ_{p=2}^{n-2} c_{n-2-p} D_w^p ln R̄`, in `e^T`.
    fn reduced_correction(&self) -> Result<QSeries, MirrorError> {
        self.require_full_log_range()?;
        let n = self.n();
        let mut total = QSeries::zero(self.order());
        for p in 2..=(n as usize).saturating_sub(2) {
            let weight = chern_weight(n, n - 2 - p as u32);
            let slice = self.dln(p).expect("log range checked");
            total = total.add(&slice.scale(&weight))?;
        }
        self.to_flat(&total.scale(&rational::ratio(n as i64, 24)))
    }

    /// `Σ_{d>=1} e^{dT} N_1^{d;0}`.
    pub fn f1_reduced(&self) -> Result<QSeries, MirrorError> {
        let reduced = self.f1_standard()?.add(&self.reduced_correction()?)?;
        self.check_no_constant(&reduced, "reduced genus-one series")?;
        Ok(reduced)
    }

    /// Both evaluations of `Σ_d e^{dT}(N_1^d - N_1^{d;0})`.
    pub fn f1_difference_routes(&self) -> Result<DifferenceRoutes, MirrorError> {
        let log_slices = self.reduced_correction()?.neg();

        let n = self.n();
        let mut z_products = QSeries::zero(self.order());
        for p in 2..=(n as usize).saturating_sub(2) {
            let mut inner = QSeries::zero(self.order());
            for m in 1..=p / 2 {
                let mut products = QSeries::zero(self.order());
                for parts in compositions(p, m, 2) {
                    let mut prod = QSeries::one(self.order());
                    for part in parts {
                        let z = self
                            .z
                            .get(part - 2)
                            .ok_or_else(|| MirrorError::Config(format!("Z_{} not built", part - 2)))?;
                        prod = prod.mul(z)?;
                    }
                    products = products.add(&prod)?;
                }
                inner = inner.add(&products.scale(&rational::ratio(rational::sign(m as i64), m as i64)))?;
            }
            let weight = chern_weight(n, n - 2 - p as u32) * BigInt::from(n);
            z_products = z_products.add(&inner.scale(&weight))?;
        }
        let z_products = z_products.scale(&rational::ratio(1, 24));
        Ok(DifferenceRoutes { z_products, log_slices })
    }

    /// `Σ_d e^{dT}(N_1^d - N_1^{d;0})`, checked against the `Z`-product route.
    pub fn f1_difference(&self) -> Result<QSeries, MirrorError> {
        let routes = self.f1_difference_routes()?;
        if routes.z_products != routes.log_slices {
            return Err(MirrorError::IdentityViolation(format!(
                "Z-product route {} differs from log route {}",
                routes.z_products, routes.log_slices
            )));
        }
        Ok(routes.log_slices)
    }
}

/// `[N^1, …, N^D]` from `Σ_{d>=1} e^{dT} N^d`.
pub fn extract_invariants(series: &QSeries, max_degree: usize) -> Result<Vec<Rational>, MirrorError> {
    let coeffs = series.rational_coeffs().ok_or_else(|| MirrorError::Contract("series depends on t".into()))?;
    if !coeffs[0].is_zero() {
        return Err(MirrorError::Contract(format!("nonzero constant term {}", rational::format(&coeffs[0]))));
    }
    if max_degree > series.order() {
        return Err(MirrorError::Contract(format!(
            "asked for degree {max_degree} from a series truncated at {}",
            series.order()
        )));
    }
    Ok(coeffs[1..=max_degree].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn data(n: u32, d: usize) -> MirrorData {
        MirrorData::build(&HypersurfaceConfig::new(n, d).unwrap()).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(HypersurfaceConfig::new(2, 3).is_err());
        assert!(HypersurfaceConfig::new(5, 0).is_err());
        assert!(HypersurfaceConfig::with_w_order(5, 3, 5).is_err());
        assert!(HypersurfaceConfig::with_w_order(5, 3, 2).is_err());
        assert_eq!(HypersurfaceConfig::new(5, 3).unwrap().w_order(), 4);
    }

    #[test]
    fn quintic_hypergeometric_values() {
        let r = build_r(&HypersurfaceConfig::new(5, 2).unwrap()).unwrap();
        let row0 = r.coeff(0);
        assert_eq!(row0.coeff(1), &TPoly::constant(int(120)));
        assert_eq!(row0.coeff(2), &TPoly::constant(int(113400)));
    }

    #[test]
    fn degree_zero_row_is_e_to_wt() {
        let cfg = HypersurfaceConfig::new(6, 2).unwrap();
        let r = build_r(&cfg).unwrap();
        let expected = WSeries::exp_wt(1, cfg.w_order(), cfg.max_degree());
        for a in 0..=cfg.w_order() {
            assert_eq!(r.coeff(a).coeff(0), expected.coeff(a).coeff(0));
        }
    }

    #[test]
    fn i_function_shapes() {
        let d = data(5, 3);
        assert_eq!(d.i0q[0].coeff(0), &TPoly::one());
        // t-linear part of I_{0,1} is t·I_{0,0}.
        for k in 0..=3 {
            let i00 = d.i0q[0].coeff(k).coeff(0);
            assert_eq!(d.i0q[1].coeff(k).coeff(1), i00);
        }
        assert_eq!(d.ipp[1].coeff(0), &TPoly::one());
    }

    #[test]
    fn quintic_mirror_map() {
        let d = data(5, 2);
        assert!(d.t_minus_t.coeff(0).is_zero());
        assert_eq!(d.t_minus_t.coeff(1), &TPoly::constant(int(770)));
        assert_eq!(d.qchange.coeff(0), &TPoly::one());
    }

    #[test]
    fn z_series_start_in_degree_one() {
        let d = data(6, 4);
        assert_eq!(d.z.len(), 4);
        for z in &d.z {
            assert!(z.coeff(0).is_zero());
        }
        for s in &d.dln_rbar {
            assert!(s.coeff(0).is_zero());
        }
    }

    #[test]
    fn chern_weights_against_division() {
        // Independent oracle: expand (1+w)^n, then divide by 1+nw term by term.
        for n in 3..=9u32 {
            let mut numer: Vec<BigInt> = vec![BigInt::one()];
            for _ in 0..n {
                let mut next = vec![BigInt::zero(); numer.len() + 1];
                for (i, c) in numer.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c;
                }
                numer = next;
            }
            let mut quotient: Vec<BigInt> = Vec::new();
            for q in 0..=(n as usize - 2) {
                let prev = if q == 0 { BigInt::zero() } else { quotient[q - 1].clone() };
                quotient.push(numer[q].clone() - prev * n);
            }
            for (q, value) in quotient.iter().enumerate() {
                assert_eq!(chern_weight(n, q as u32), Rational::from_integer(value.clone()), "n={n} q={q}");
            }
        }
        assert_eq!(chern_weight(5, 0), int(1));
        assert_eq!(chern_weight(5, 1), int(0));
        assert_eq!(chern_weight(5, 2), int(10));
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(4, 2, 2), vec![vec![2, 2]]);
        assert_eq!(compositions(5, 2, 2), vec![vec![2, 3], vec![3, 2]]);
        assert_eq!(compositions(3, 2, 2), Vec::<Vec<usize>>::new());
        assert_eq!(compositions(4, 1, 2), vec![vec![4]]);
    }

    #[test]
    fn quintic_low_degrees() {
        let d = data(5, 3);
        let n1 = extract_invariants(&d.f1_standard().unwrap(), 3).unwrap();
        assert_eq!(n1, vec![ratio(2875, 12), ratio(407125, 8), ratio(243388750, 9)]);
    }

    #[test]
    fn cubic_difference_vanishes() {
        let d = data(3, 3);
        assert!(d.f1_difference().unwrap().is_zero());
        assert_eq!(d.f1_standard().unwrap(), d.f1_reduced().unwrap());
    }

    #[test]
    fn quartic_reduced_adds_single_term() {
        let d = data(4, 3);
        assert_eq!(chern_weight(4, 0), int(1));
        let expected = d.to_flat(&d.dln(2).unwrap().scale(&ratio(4, 24))).unwrap();
        let diff = d.f1_reduced().unwrap().sub(&d.f1_standard().unwrap()).unwrap();
        assert_eq!(diff, expected);
    }

    #[test]
    fn routes_agree() {
        for n in [5, 6] {
            let routes = data(n, 4).f1_difference_routes().unwrap();
            assert_eq!(routes.z_products, routes.log_slices, "n={n}");
        }
    }

    #[test]
    fn extract_rules() {
        assert_eq!(extract_invariants(&QSeries::zero(3), 3).unwrap(), vec![int(0); 3]);
        let s = QSeries::from_rationals(vec![int(0), int(1), int(2)]);
        assert_eq!(extract_invariants(&s, 2).unwrap(), vec![int(1), int(2)]);
        assert!(extract_invariants(&QSeries::one(2), 2).is_err());
        assert!(extract_invariants(&s, 3).is_err());
    }
}
