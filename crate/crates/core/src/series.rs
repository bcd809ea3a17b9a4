//! Truncated formal power series over the rationals.
//!
//! A [`Series`] stores exactly the coefficients that are known. Its `order`
//! is the number of valid coefficients; every operation returns a series
//! whose order is the largest the inputs justify, never more.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Series {
    #[serde(with = "rational::serde_str::vec")]
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Series { coeffs }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Series::new(rational::ints(values))
    }

    /// A polynomial, known exactly, padded with zeros up to `order`.
    pub fn from_poly(poly: &[Rational], order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        for (c, p) in coeffs.iter_mut().zip(poly) {
            *c = p.clone();
        }
        Series { coeffs }
    }

    pub fn from_int_poly(poly: &[i64], order: usize) -> Self {
        Series::from_poly(&rational::ints(poly), order)
    }

    pub fn zero(order: usize) -> Self {
        Series::from_poly(&[], order)
    }

    pub fn one(order: usize) -> Self {
        Series::from_poly(&[int(1)], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Series::from_poly(&[int(0), int(1)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`; panics past the valid order.
    pub fn coeff(&self, k: usize) -> &Rational {
        assert!(k < self.order(), "coefficient {k} beyond order {}", self.order());
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    /// Index of the first nonzero coefficient, or `order` if none is known.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.order())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Series::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `x^k`. The result is known to `k` more terms.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divide by `x^k`, assuming the first `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Series::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series::new(out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Series> {
        let n = self.order();
        let g0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => return Err(Error::ZeroConstantTerm),
        };
        let inv0 = g0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Series::new(out))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.recip()?))
    }

    /// Square root on the branch with constant term `+1`.
    pub fn sqrt(&self) -> Result<Series> {
        if self.coeffs.first().map_or(true, |c| !c.is_one()) {
            return Err(Error::NonUnitConstant);
        }
        let n = self.order();
        let half = rational::frac(1, 2);
        let mut r: Vec<Rational> = Vec::with_capacity(n);
        r.push(int(1));
        // f_k = 2 r_k + sum_{0<i<k} r_i r_{k-i}
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &r[i] * &r[k - i];
            }
            r.push(acc * &half);
        }
        Ok(Series::new(r))
    }

    /// `self(inner(x))`. Valid to `min(inner.order, self.order * val(inner))`.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if inner.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::NonzeroInnerConstant);
        }
        let v = inner.valuation().max(1);
        let n = inner.order().min(self.order().saturating_mul(v));
        let inner = inner.truncate(n);
        // Horner from the highest coefficient that can reach below x^n.
        let top = self.order().min(n.div_ceil(v)).max(1);
        let mut acc = Series::zero(n);
        for c in self.coeffs[..top.min(self.order())].iter().rev() {
            acc = acc.mul(&inner);
            if n > 0 {
                acc.coeffs[0] += c;
            }
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[x^n] u = (1/n) [x^{n-1}] (x / f)^n`.
    pub fn revert(&self) -> Result<Series> {
        let n = self.order();
        if n < 2 || !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(Error::NotRevertible);
        }
        let h = self.shift_down(1).recip()?;
        let mut out = vec![Rational::zero(); n];
        let mut power = Series::one(n - 1);
        for k in 1..n {
            power = power.mul(&h);
            out[k] = power.coeff(k - 1) / int(k as i64);
        }
        Ok(Series::new(out))
    }

    /// `(1/(1 - r x)) f(x/(1 - r x))`, i.e. `b_n = sum_k C(n,k) r^(n-k) f_k`.
    pub fn binomial_transform(&self, r: &Rational) -> Series {
        let n = self.order();
        let powers: Vec<Rational> = (0..n as u32).map(|e| rational::pow(r, e)).collect();
        let out = (0..n)
            .map(|m| {
                (0..=m).fold(Rational::zero(), |acc, k| {
                    let b = Rational::from_integer(rational::binomial(m as u64, k as u64));
                    acc + b * &powers[m - k] * &self.coeffs[k]
                })
            })
            .collect();
        Series::new(out)
    }

    /// Catalan generating function `C(x) = (1 - sqrt(1 - 4x)) / (2x)`.
    pub fn catalan(order: usize) -> Series {
        Series::new(
            (0..order as u64)
                .map(|n| Rational::from_integer(rational::catalan(n)))
                .collect(),
        )
    }

    /// Coefficients as integers, if they all are.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::new((0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series::new((0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
