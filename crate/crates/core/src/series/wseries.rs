use num_bigint::BigInt;

use super::{check_orders, QSeries, SeriesError, TPoly};
use crate::rational::{self, Rational};

/// Polynomial in `w` truncated after `w^W`, with [`QSeries`] coefficients that
/// all share one `q`-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSeries {
    coeffs: Vec<QSeries>,
}

impl WSeries {
    pub fn zero(w_order: usize, q_order: usize) -> Self {
        Self { coeffs: vec![QSeries::zero(q_order); w_order + 1] }
    }

    pub fn one(w_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(w_order, q_order);
        s.coeffs[0] = QSeries::one(q_order);
        s
    }

    pub fn from_coeffs(coeffs: Vec<QSeries>) -> Result<Self, SeriesError> {
        let first = coeffs.first().ok_or_else(|| SeriesError::Domain("empty w-series".into()))?;
        let q_order = first.order();
        for c in &coeffs {
            check_orders(q_order, c.order())?;
        }
        Ok(Self { coeffs })
    }

    pub fn w_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.coeffs[0].order()
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> &QSeries {
        &self.coeffs[power]
    }

    fn check_shape(&self, other: &WSeries) -> Result<(), SeriesError> {
        check_orders(self.w_order(), other.w_order())?;
        check_orders(self.q_order(), other.q_order())
    }

    pub fn add(&self, other: &WSeries) -> Result<WSeries, SeriesError> {
        self.check_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(WSeries { coeffs })
    }

    pub fn scale(&self, factor: &Rational) -> WSeries {
        WSeries { coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect() }
    }

    /// Multiplies every `w`-coefficient by the same `q`-series.
    pub fn mul_q(&self, factor: &QSeries) -> Result<WSeries, SeriesError> {
        let coeffs = self.coeffs.iter().map(|c| c.mul(factor)).collect::<Result<_, _>>()?;
        Ok(WSeries { coeffs })
    }

    /// Product modulo `w^{W+1}`.
    pub fn mul(&self, other: &WSeries) -> Result<WSeries, SeriesError> {
        self.check_shape(other)?;
        let w = self.w_order();
        let mut out = WSeries::zero(w, self.q_order());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=w - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Logarithm as `log(c0) + log(1 + rest/c0)`, expanded to `w^W`.
    ///
    /// The `w^0` coefficient `c0` must have `q^0` term exactly `1`.
    pub fn log(&self) -> Result<WSeries, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.coeff(0) != &TPoly::one() {
            return Err(SeriesError::Domain(format!("w-log needs the w^0 row to start with 1, got {}", c0.coeff(0))));
        }
        let log_c0 = c0.log()?;
        let c0_inv = c0.inv()?;
        let mut x = self.mul_q(&c0_inv)?;
        x.coeffs[0] = QSeries::zero(self.q_order());

        let mut out = WSeries::zero(self.w_order(), self.q_order());
        out.coeffs[0] = log_c0;
        // x has no w^0 term, so x^k = O(w^k).
        let mut power = x.clone();
        for k in 1..=self.w_order() {
            let factor = rational::ratio(rational::sign(k as i64 + 1), k as i64);
            out = out.add(&power.scale(&factor))?;
            power = power.mul(&x)?;
        }
        Ok(out)
    }

    /// `sum_{a <= W} (sign·t)^a w^a / a!`, i.e. `e^{±wt}` modulo `w^{W+1}`.
    pub fn exp_wt(sign: i64, w_order: usize, q_order: usize) -> WSeries {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let coeffs = (0..=w_order)
            .map(|a| {
                let value = Rational::new(BigInt::from(sign).pow(a as u32), rational::factorial(a as u64));
                let mut row = vec![TPoly::monomial(value, a)];
                row.extend(std::iter::repeat_n(TPoly::zero(), q_order));
                QSeries::from_tpolys(row)
            })
            .collect();
        WSeries { coeffs }
    }

    /// `exp(w·g)` for a `q`-series `g`, modulo `w^{W+1}`.
    pub fn exp_w_times(g: &QSeries, w_order: usize) -> Result<WSeries, SeriesError> {
        let mut coeffs = Vec::with_capacity(w_order + 1);
        let mut term = QSeries::one(g.order());
        coeffs.push(term.clone());
        for a in 1..=w_order {
            term = term.mul(g)?.scale(&rational::ratio(1, a as i64));
            coeffs.push(term.clone());
        }
        Ok(WSeries { coeffs })
    }

    /// The normalized `p`-th `w`-derivative at `w = 0`, i.e. the `w^p`
    /// coefficient.
    pub fn dwp(&self, p: usize) -> Result<QSeries, SeriesError> {
        self.coeffs.get(p).cloned().ok_or(SeriesError::Truncation { requested: p, order: self.w_order() })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == QSeries::one(self.q_order()) && self.coeffs[1..].iter().all(QSeries::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn constant_w(coeffs: &[Rational], q_order: usize) -> WSeries {
        WSeries::from_coeffs(coeffs.iter().map(|c| QSeries::constant(q_order, c.clone())).collect()).unwrap()
    }

    #[test]
    fn product_mod_w() {
        let a = constant_w(&[int(1), int(1)], 2);
        let b = constant_w(&[int(1), int(-1)], 2);
        assert!(a.mul(&b).unwrap().is_one());
    }

    #[test]
    fn log_examples() {
        let one = WSeries::one(4, 3);
        assert_eq!(one.log().unwrap(), WSeries::zero(4, 3));
        let a = constant_w(&[int(1), int(0), int(1), int(0), int(0)], 3);
        let expected = constant_w(&[int(0), int(0), int(1), int(0), ratio(-1, 2)], 3);
        let log = a.log().unwrap();
        assert_eq!(log, expected);
        assert_eq!(log.dwp(4).unwrap(), QSeries::constant(3, ratio(-1, 2)));
        assert!(constant_w(&[int(2), int(1)], 1).log().is_err());
    }

    #[test]
    fn exp_wt_examples() {
        assert!(WSeries::exp_wt(1, 0, 3).is_one());
        let e = WSeries::exp_wt(-1, 2, 1);
        assert_eq!(e.coeff(1).coeff(0), &TPoly::monomial(int(-1), 1));
        assert_eq!(e.coeff(2).coeff(0), &TPoly::monomial(ratio(1, 2), 2));
        for w in 0..6 {
            let prod = WSeries::exp_wt(1, w, 2).mul(&WSeries::exp_wt(-1, w, 2)).unwrap();
            assert!(prod.is_one());
        }
    }

    #[test]
    fn dwp_extracts() {
        assert_eq!(WSeries::one(3, 2).dwp(0).unwrap(), QSeries::one(2));
        let w2 = constant_w(&[int(0), int(0), int(1)], 2);
        assert_eq!(w2.dwp(2).unwrap(), QSeries::one(2));
        assert_eq!(w2.dwp(3), Err(SeriesError::Truncation { requested: 3, order: 2 }));
    }

    #[test]
    fn shape_mismatch() {
        assert!(WSeries::one(2, 2).mul(&WSeries::one(3, 2)).is_err());
        assert!(WSeries::one(2, 2).mul(&WSeries::one(2, 3)).is_err());
    }

    fn arb_w(w: usize, q: usize) -> impl Strategy<Value = WSeries> {
        prop::collection::vec(prop::collection::vec(-4i64..=4, (q + 1) * 2), w + 1).prop_map(move |rows| {
            let coeffs = rows
                .into_iter()
                .map(|r| {
                    QSeries::from_tpolys(r.chunks(2).map(|c| TPoly::from_coeffs(vec![int(c[0]), int(c[1])])).collect())
                })
                .collect();
            WSeries::from_coeffs(coeffs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn w_ring_laws(a in arb_w(3, 3), b in arb_w(3, 3), c in arb_w(3, 3)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }

        #[test]
        fn w_log_is_additive(a in arb_w(3, 2), b in arb_w(3, 2)) {
            // Force units: w^0 row starts with exactly 1 and is t-free at q^0.
            let fix = |s: WSeries| {
                let mut rows = s.coeffs().to_vec();
                let mut q0 = rows[0].coeffs().to_vec();
                q0[0] = TPoly::one();
                rows[0] = QSeries::from_tpolys(q0);
                WSeries::from_coeffs(rows).unwrap()
            };
            let (a, b) = (fix(a), fix(b));
            let lhs = a.mul(&b).unwrap().log().unwrap();
            let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
