use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{self, Rational};

/// Dense polynomial in `t` with rational coefficients.
///
/// Index `a` holds the coefficient of `t^a`. Trailing zeros are stripped, so
/// the zero polynomial is the empty vector and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Self::from_coeffs(vec![value])
    }

    /// `value * t^power`.
    pub fn monomial(value: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = value;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The `t^0` coefficient when the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|a| self.coeff(a) + other.coeff(a)).collect();
        TPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|a| self.coeff(a) - other.coeff(a)).collect();
        TPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> TPoly {
        TPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, factor: &Rational) -> TPoly {
        if factor.is_zero() {
            return TPoly::zero();
        }
        TPoly { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                coeffs[a + b] += x * y;
            }
        }
        TPoly::from_coeffs(coeffs)
    }

    /// Ordinary derivative in `t`.
    pub fn derivative(&self) -> TPoly {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(a, c)| c * Rational::from_integer(a.into())).collect();
        TPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match a {
                0 => write!(f, "{}", rational::format(c))?,
                1 => write!(f, "({})t", rational::format(c))?,
                _ => write!(f, "({})t^{a}", rational::format(c))?,
            }
        }
        Ok(())
    }
}
