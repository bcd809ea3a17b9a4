//! Hankel transforms, Somos-4 parameters and Jacobi continued fractions.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::{CurveParams, CurvePoint};
use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::riordan::AMatrix;
use crate::series::Series;

/// `h_n = det(seq[i+j])_{0 <= i,j <= n}` for `n < count`.
pub fn hankel_transform(seq: &[Rational], count: usize) -> Result<Vec<Rational>> {
    let needed = (2 * count).saturating_sub(1);
    if seq.len() < needed {
        return Err(Error::InsufficientTerms { needed, available: seq.len() });
    }
    Ok((0..count).map(|n| hankel_det(seq, n + 1)).collect())
}

fn hankel_det(seq: &[Rational], size: usize) -> Rational {
    // Clear denominators row by row, then run Bareiss over the integers.
    let window = &seq[..2 * size - 1];
    let scale = rational::lcm_of_denominators(window);
    let scaled: Vec<BigInt> = window
        .iter()
        .map(|v| (v * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let matrix: Vec<Vec<BigInt>> = (0..size)
        .map(|i| (0..size).map(|j| scaled[i + j].clone()).collect())
        .collect();
    let det = bareiss_det(matrix);
    Rational::new(det, num_traits::pow(scale, size))
}

/// Fraction-free Gaussian elimination with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `(r, s)` in `a_n a_{n-4} = r a_{n-1} a_{n-3} + s a_{n-2}^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SomosParams {
    #[serde(with = "rational::serde_str")]
    pub r: Rational,
    #[serde(with = "rational::serde_str")]
    pub s: Rational,
}

/// `(1, -ac + b + c^2)`.
pub fn somos_params(curve: &CurveParams) -> SomosParams {
    SomosParams {
        r: int(1),
        s: -(&curve.a * &curve.c) + &curve.b + &curve.c * &curve.c,
    }
}

/// `(delta^2, delta^2 (alpha gamma - beta + gamma^2))`.
pub fn somos_params_am(am: &AMatrix) -> SomosParams {
    let d2 = &am.delta * &am.delta;
    let s = &d2 * (&am.alpha * &am.gamma - &am.beta + &am.gamma * &am.gamma);
    SomosParams { r: d2, s }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SomosReport {
    /// Indices `n` where the relation was checked.
    pub checked: Vec<usize>,
    /// Indices where it failed.
    pub failures: Vec<usize>,
    /// Indices skipped because `a_{n-4} = 0`.
    pub zero_divisors: Vec<usize>,
}

impl SomosReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn somos_verify(seq: &[Rational], p: &SomosParams) -> Result<SomosReport> {
    if seq.len() < 5 {
        return Err(Error::InsufficientTerms { needed: 5, available: seq.len() });
    }
    let mut report = SomosReport::default();
    for n in 4..seq.len() {
        if seq[n - 4].is_zero() {
            report.zero_divisors.push(n);
            continue;
        }
        let lhs = &seq[n] * &seq[n - 4];
        let rhs = &p.r * &seq[n - 1] * &seq[n - 3] + &p.s * &seq[n - 2] * &seq[n - 2];
        report.checked.push(n);
        if lhs != rhs {
            report.failures.push(n);
        }
    }
    Ok(report)
}

/// `g = 1/(1 - b_0 x - lam_1 x^2/(1 - b_1 x - lam_2 x^2/(...)))`.
///
/// `lam[j]` holds `lambda_{j+1}`; the depth is the number of lambdas.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct JFraction {
    #[serde(with = "rational::serde_str::vec")]
    pub b: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub lam: Vec<Rational>,
}

impl JFraction {
    pub fn depth(&self) -> usize {
        self.lam.len()
    }

    /// Number of leading coefficients the finite fraction determines exactly.
    pub fn valid_order(&self) -> usize {
        2 * self.depth() + 1 + usize::from(self.b.len() > self.depth())
    }

    /// `h_n = prod_{k=1}^{n} lambda_k^{n+1-k}` for `n <= depth`.
    pub fn hankel(&self) -> Vec<Rational> {
        (0..=self.depth())
            .map(|n| {
                (1..=n).fold(int(1), |acc, k| acc * rational::pow(&self.lam[k - 1], (n + 1 - k) as u32))
            })
            .collect()
    }
}

/// Peels `g = 1/(1 - b_0 x - lambda_1 x^2 g_1)` repeatedly.
pub fn jfrac_extract(g: &Series, depth: usize) -> Result<JFraction> {
    let needed = 2 * depth + 1;
    if g.order() < needed {
        return Err(Error::InsufficientOrder { needed, available: g.order() });
    }
    if !g.coeff(0).is_one() {
        return Err(Error::NonUnitConstant);
    }
    let mut jf = JFraction::default();
    let mut current = g.truncate(needed);
    for level in 0..depth {
        let inv = current.recip()?;
        let b = -inv.coeff(1);
        let lam = -inv.coeff(2);
        jf.b.push(b.clone());
        if lam.is_zero() {
            return Err(Error::ZeroLambda { index: level + 1, achieved: level });
        }
        jf.lam.push(lam.clone());
        // g_1 = (1 - b x - 1/g) / (lambda x^2)
        let head = Series::from_poly(&[int(1), -b], inv.order());
        current = (&head - &inv).shift_down(2).scale(&lam.recip());
    }
    Ok(jf)
}

/// Coefficients from the multiples `[kP]`, shifted by `shift` binomial
/// transforms: `b_j = ([(j+2)P]_2 - 1)/[(j+2)P]_1 + shift - 1 + c - a`,
/// `lambda_j = -[(j+1)P]_1`. The constant makes `b_0` the linear coefficient
/// of the shifted series, since `[2P] = (x, 1 + (a - c) x)`.
pub fn jfrac_from_points(curve: &CurveParams, shift: i64, depth: usize) -> Result<JFraction> {
    let multiples = curve.multiples(depth + 1);
    let coords = |k: usize| -> Result<(&Rational, &Rational)> {
        match multiples.get(k) {
            Some(CurvePoint::Affine { x, y }) => {
                if x.is_zero() {
                    Err(Error::ZeroXCoordinate { multiple: k })
                } else {
                    Ok((x, y))
                }
            }
            _ => Err(Error::TorsionDepth { multiple: k }),
        }
    };
    let offset = int(shift - 1) + &curve.c - &curve.a;
    let mut jf = JFraction::default();
    for j in 0..depth {
        let (x, y) = coords(j + 2)?;
        jf.b.push((y - int(1)) / x + &offset);
        jf.lam.push(-x.clone());
    }
    Ok(jf)
}

/// Expands the finite fraction to `order` coefficients through its last
/// convergent: `A_j = (1 - b_j x) A_{j-1} - lambda_j x^2 A_{j-2}`, likewise
/// `B_j`, and the value is `A/B`.
pub fn jfrac_eval(jf: &JFraction, order: usize) -> Result<Series> {
    if order > jf.valid_order() {
        return Err(Error::InsufficientDepth { depth: jf.depth(), order });
    }
    let b_at = |j: usize| jf.b.get(j).cloned().unwrap_or_else(Rational::zero);
    let step = |cur: &Series, prev: &Series, j: usize| -> Series {
        let linear = cur.shift_up(1).truncate(order).scale(&b_at(j));
        let quadratic = prev.shift_up(2).truncate(order).scale(&jf.lam[j - 1]);
        &(cur - &linear) - &quadratic
    };
    // Level 0 has numerator 1 in place of -lambda x^2.
    let (mut a_prev, mut a) = (Series::zero(order), Series::one(order));
    let (mut b_prev, mut b) = (Series::one(order), Series::from_poly(&[int(1), -b_at(0)], order));
    for j in 1..=jf.depth() {
        let a_next = step(&a, &a_prev, j);
        let b_next = step(&b, &b_prev, j);
        a_prev = std::mem::replace(&mut a, a_next);
        b_prev = std::mem::replace(&mut b, b_next);
    }
    a.div(&b)
}

/// `prod_{k=0}^{n} (-[(k+2)P]_1)^{n-k}`; with `signed = false` the
/// coordinates are used without the sign change.
pub fn hankel_point_product(curve: &CurveParams, n: usize, signed: bool) -> Result<Rational> {
    let multiples = curve.multiples(n + 2);
    let mut acc = int(1);
    for k in 0..=n {
        let m = k + 2;
        let x = multiples
            .get(m)
            .and_then(CurvePoint::x)
            .ok_or(Error::TorsionDepth { multiple: m })?;
        let base = if signed { -x } else { x.clone() };
        acc *= rational::pow(&base, (n - k) as u32);
    }
    Ok(acc)
}

pub fn abs_eq(a: &Rational, b: &Rational) -> bool {
    a.abs() == b.abs()
}
