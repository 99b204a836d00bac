use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{check_orders, SeriesError, TPoly};
use crate::rational::{self, Rational};

/// Truncated power series in `q = e^t` with polynomial-in-`t` coefficients.
///
/// Holds exactly `D + 1` coefficients, for `q^0 ..= q^D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<TPoly>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![TPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, value: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = TPoly::constant(value);
        s
    }

    /// The series `t` (a constant in `q` of degree one in `t`).
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = TPoly::monomial(Rational::one(), 1);
        s
    }

    /// `value * q^power`, zero if `power > order`.
    pub fn monomial(order: usize, value: Rational, power: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = TPoly::constant(value);
        }
        s
    }

    /// Builds from `D + 1` polynomial coefficients.
    pub fn from_tpolys(coeffs: Vec<TPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a QSeries needs at least the q^0 coefficient");
        Self { coeffs }
    }

    /// Builds a `t`-free series from its `q`-coefficients.
    pub fn from_rationals(coeffs: Vec<Rational>) -> Self {
        Self::from_tpolys(coeffs.into_iter().map(TPoly::constant).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> &TPoly {
        &self.coeffs[power]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TPoly::is_zero)
    }

    /// Largest `t`-degree over all coefficients; `None` for the zero series.
    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(TPoly::degree).max()
    }

    pub fn is_t_free(&self) -> bool {
        self.t_degree().is_none_or(|d| d == 0)
    }

    /// The `q`-coefficients of a `t`-free series.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(TPoly::as_constant).collect()
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        check_orders(self.order(), other.order())?;
        Ok(self.zip_with(other, TPoly::add))
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        check_orders(self.order(), other.order())?;
        Ok(self.zip_with(other, TPoly::sub))
    }

    pub fn neg(&self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(TPoly::neg).collect() }
    }

    pub fn scale(&self, factor: &Rational) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect() }
    }

    pub fn mul(&self, other: &QSeries) -> Result<QSeries, SeriesError> {
        check_orders(self.order(), other.order())?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &QSeries) -> QSeries {
        let order = self.order();
        let mut out = vec![TPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        QSeries { coeffs: out }
    }

    fn zip_with(&self, other: &QSeries, op: impl Fn(&TPoly, &TPoly) -> TPoly) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect() }
    }

    fn constant_term(&self) -> Option<Rational> {
        self.coeffs[0].as_constant()
    }

    /// Multiplicative inverse; the `q^0` coefficient must be a nonzero constant.
    pub fn inv(&self) -> Result<QSeries, SeriesError> {
        let lead = self
            .constant_term()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| SeriesError::NotAUnit(self.coeffs[0].to_string()))?;
        let lead_inv = lead.recip();
        let order = self.order();
        let mut out: Vec<TPoly> = Vec::with_capacity(order + 1);
        out.push(TPoly::constant(lead_inv.clone()));
        for k in 1..=order {
            let mut acc = TPoly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(acc.scale(&-lead_inv.clone()));
        }
        Ok(QSeries { coeffs: out })
    }

    /// Logarithm of a series whose `q^0` coefficient is exactly `1`.
    pub fn log(&self) -> Result<QSeries, SeriesError> {
        if self.coeffs[0] != TPoly::one() {
            return Err(SeriesError::Domain(format!("log needs constant term 1, got {}", self.coeffs[0])));
        }
        let mut x = self.clone();
        x.coeffs[0] = TPoly::zero();
        // log(1 + x) = sum (-1)^{k+1} x^k / k; x^k = O(q^k).
        let mut out = QSeries::zero(self.order());
        let mut power = x.clone();
        for k in 1..=self.order() {
            let factor = rational::ratio(rational::sign(k as i64 + 1), k as i64);
            out = out.zip_with(&power.scale(&factor), TPoly::add);
            power = power.mul_unchecked(&x);
        }
        Ok(out)
    }

    /// Exponential of a series with vanishing `q^0` coefficient.
    pub fn exp(&self) -> Result<QSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::Domain(format!("exp needs constant term 0, got {}", self.coeffs[0])));
        }
        let mut out = QSeries::one(self.order());
        let mut term = QSeries::one(self.order());
        for k in 1..=self.order() {
            term = term.mul_unchecked(self).scale(&rational::ratio(1, k as i64));
            out = out.zip_with(&term, TPoly::add);
        }
        Ok(out)
    }

    /// `d/dt`, using `d/dt (t^a q^d) = a t^{a-1} q^d + d t^a q^d`.
    pub fn ddt(&self) -> QSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, p)| p.derivative().add(&p.scale(&Rational::from_integer(d.into()))))
            .collect();
        QSeries { coeffs }
    }

    fn require_reversion_unit(&self, what: &str) -> Result<(), SeriesError> {
        if !self.is_t_free() {
            return Err(SeriesError::Domain(format!("{what} must be t-free")));
        }
        if self.coeffs[0] != TPoly::one() {
            return Err(SeriesError::Domain(format!("{what} must have constant term 1, got {}", self.coeffs[0])));
        }
        Ok(())
    }

    /// Reverts the change of variables `Q = q·u(q)`, where `self` is `u`.
    ///
    /// Returns the unit `v` with `q = Q·v(Q)`, found by iterating
    /// `v <- 1 / u(Q·v)`; each pass fixes one more coefficient.
    pub fn revert(&self) -> Result<QSeries, SeriesError> {
        self.require_reversion_unit("reversion input")?;
        let mut v = QSeries::one(self.order());
        for _ in 0..=self.order() {
            v = self.compose_unchecked(&v).inv()?;
        }
        Ok(v)
    }

    /// Evaluates `self` at `q = Q·v(Q)`, giving a series in `Q`.
    ///
    /// Only `t`-free series may change variables.
    pub fn substitute(&self, v: &QSeries) -> Result<QSeries, SeriesError> {
        check_orders(self.order(), v.order())?;
        if !self.is_t_free() {
            return Err(SeriesError::Domain("only t-free series can change variables".into()));
        }
        v.require_reversion_unit("substitution unit")?;
        Ok(self.compose_unchecked(v))
    }

    fn compose_unchecked(&self, v: &QSeries) -> QSeries {
        let order = self.order();
        // Q·v(Q), truncated.
        let mut shifted = vec![TPoly::zero()];
        shifted.extend(v.coeffs[..order].iter().cloned());
        let shifted = QSeries { coeffs: shifted };
        // Horner in the substituted variable.
        let mut out = QSeries::zero(order);
        for k in (0..=order).rev() {
            out = out.mul_unchecked(&shifted);
            out.coeffs[0] = out.coeffs[0].add(&self.coeffs[k]);
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]q^{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// Serialized as a JSON array (indexed by the power of `q`) of arrays
/// (indexed by the power of `t`) of `"p/q"` strings.
impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.coeffs.iter().map(|p| p.coeffs().iter().map(rational::format).collect()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        if rows.is_empty() {
            return Err(D::Error::custom("a series needs at least one coefficient"));
        }
        let coeffs = rows
            .iter()
            .map(|row| row.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>, _>>().map(TPoly::from_coeffs))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(QSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn pure(coeffs: &[i64]) -> QSeries {
        QSeries::from_rationals(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = pure(&[1, 1, 0]);
        let b = pure(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), pure(&[1, 0, -1]));
        assert_eq!(a.mul(&QSeries::one(2)).unwrap(), a);
    }

    #[test]
    fn square_truncates() {
        let a = pure(&[1, 120]);
        assert_eq!(a.mul(&a).unwrap(), pure(&[1, 240]));
    }

    #[test]
    fn mismatched_orders_fail() {
        let err = pure(&[1, 1]).mul(&pure(&[1, 1, 1])).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 1, right: 2 });
        assert!(pure(&[1]).add(&pure(&[1, 0])).is_err());
    }

    #[test]
    fn inverses() {
        assert_eq!(QSeries::one(4).inv().unwrap(), QSeries::one(4));
        assert_eq!(pure(&[1, 1, 0, 0]).inv().unwrap(), pure(&[1, -1, 1, -1]));
        assert_eq!(pure(&[1, 120, 0]).inv().unwrap(), pure(&[1, -120, 14400]));
        assert!(matches!(pure(&[0, 1]).inv(), Err(SeriesError::NotAUnit(_))));
        assert!(matches!(QSeries::t(2).inv(), Err(SeriesError::NotAUnit(_))));
    }

    #[test]
    fn log_and_exp() {
        assert!(QSeries::one(3).log().unwrap().is_zero());
        assert_eq!(QSeries::zero(3).exp().unwrap(), QSeries::one(3));
        let mercator = QSeries::from_rationals(vec![int(0), int(1), ratio(-1, 2), ratio(1, 3)]);
        assert_eq!(pure(&[1, 1, 0, 0]).log().unwrap(), mercator);
        assert!(pure(&[2, 1]).log().is_err());
        assert!(pure(&[1, 1]).exp().is_err());
    }

    #[test]
    fn ddt_rules() {
        assert_eq!(QSeries::t(2).ddt(), QSeries::one(2));
        assert_eq!(QSeries::monomial(4, int(1), 3).ddt(), QSeries::monomial(4, int(3), 3));
        // d/dt(t q) = q + t q
        let tq = QSeries::from_tpolys(vec![TPoly::zero(), TPoly::monomial(int(1), 1), TPoly::zero()]);
        let expected =
            QSeries::from_tpolys(vec![TPoly::zero(), TPoly::from_coeffs(vec![int(1), int(1)]), TPoly::zero()]);
        assert_eq!(tq.ddt(), expected);
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(QSeries::one(3).revert().unwrap(), QSeries::one(3));
        // Q = q + q^2  =>  q = Q - Q^2 + 2Q^3 - ..., so v = 1 - Q + 2Q^2.
        assert_eq!(pure(&[1, 1, 0]).revert().unwrap(), pure(&[1, -1, 2]));
        assert!(pure(&[2, 1]).revert().is_err());
        assert!(QSeries::t(2).add(&QSeries::one(2)).unwrap().revert().is_err());
    }

    #[test]
    fn substitution_examples() {
        let q = QSeries::monomial(4, int(1), 1);
        assert_eq!(q.substitute(&QSeries::one(4)).unwrap(), q);
        let q2 = QSeries::monomial(4, int(1), 2);
        assert_eq!(q2.substitute(&pure(&[1, 1, 0, 0, 0])).unwrap(), pure(&[0, 0, 1, 2, 1]));
        assert!(QSeries::t(4).substitute(&QSeries::one(4)).is_err());
    }

    #[test]
    fn json_format() {
        let s = QSeries::from_tpolys(vec![TPoly::one(), TPoly::from_coeffs(vec![ratio(-1, 24), int(2)])]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"[["1"],["-1/24","2"]]"#);
        assert_eq!(serde_json::from_str::<QSeries>(&text).unwrap(), s);
    }

    fn arb_tpoly() -> impl Strategy<Value = TPoly> {
        prop::collection::vec((-5i64..=5, 1i64..=3), 0..3)
            .prop_map(|v| TPoly::from_coeffs(v.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    fn arb_series(order: usize) -> impl Strategy<Value = QSeries> {
        prop::collection::vec(arb_tpoly(), order + 1).prop_map(QSeries::from_tpolys)
    }

    fn arb_pure_tail(order: usize) -> impl Strategy<Value = QSeries> {
        prop::collection::vec((-4i64..=4, 1i64..=3), order).prop_map(|v| {
            let mut c = vec![int(0)];
            c.extend(v.into_iter().map(|(n, d)| ratio(n, d)));
            QSeries::from_rationals(c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_laws(a in arb_series(5), b in arb_series(5), c in arb_series(5)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn leibniz(a in arb_series(5), b in arb_series(5)) {
            let lhs = a.mul(&b).unwrap().ddt();
            let rhs = a.ddt().mul(&b).unwrap().add(&a.mul(&b.ddt()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn log_exp_inverse(x in arb_pure_tail(6), y in arb_pure_tail(6)) {
            let a = x.exp().unwrap();
            prop_assert_eq!(a.log().unwrap(), x.clone());
            prop_assert_eq!(a.log().unwrap().exp().unwrap(), a.clone());
            let b = y.exp().unwrap();
            prop_assert_eq!(a.mul(&b).unwrap().log().unwrap(), a.log().unwrap().add(&b.log().unwrap()).unwrap());
        }

        #[test]
        fn revert_round_trip(tail in arb_pure_tail(6)) {
            // u = 1 + tail/q shifted: make a unit with constant term 1.
            let mut c = vec![int(1)];
            c.extend(tail.rational_coeffs().unwrap().into_iter().skip(1));
            let u = QSeries::from_rationals(c);
            let v = u.revert().unwrap();
            // Substituting q = Q v(Q) into q·u(q) must give back Q.
            let q_u = QSeries::monomial(6, int(1), 1).mul(&u).unwrap();
            prop_assert_eq!(q_u.substitute(&v).unwrap(), QSeries::monomial(6, int(1), 1));
            // and the inverse change of variables undoes it.
            let f = tail.add(&QSeries::one(6)).unwrap();
            prop_assert_eq!(f.substitute(&v).unwrap().substitute(&u).unwrap(), f);
        }
    }
}
