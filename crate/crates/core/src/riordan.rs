//! Riordan arrays `(g, f)` with a materialized triangle, and the A-matrix
//! recurrence that describes Bell-type arrays.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::Series;

/// Lower-triangular matrix stored row by row; row `n` has `n + 1` entries.
pub type Triangle = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanArray {
    pub g: Series,
    pub f: Series,
    pub rows: Triangle,
}

impl RiordanArray {
    /// Materializes `t[n][k] = [x^n] g f^k` for `0 <= k <= n < n_rows`.
    pub fn build(g: &Series, f: &Series, n_rows: usize) -> Result<Self> {
        let available = g.order().min(f.order());
        if available < n_rows {
            return Err(Error::InsufficientOrder { needed: n_rows, available });
        }
        let g = g.truncate(n_rows);
        let f = f.truncate(n_rows);
        let mut rows: Triangle = (0..n_rows).map(|n| vec![Rational::zero(); n + 1]).collect();
        let mut column = g.clone();
        for k in 0..n_rows {
            for (n, row) in rows.iter_mut().enumerate().skip(k) {
                row[k] = column.coeff(n).clone();
            }
            column = column.mul(&f);
        }
        Ok(RiordanArray { g, f, rows })
    }

    /// Bell array `(g, x g)`.
    pub fn bell(g: &Series, n_rows: usize) -> Result<Self> {
        RiordanArray::build(g, &g.shift_up(1), n_rows)
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Group product `(g1, f1)(g2, f2) = (g1 (g2 o f1), f2 o f1)`.
    pub fn multiply(&self, other: &RiordanArray) -> Result<RiordanArray> {
        let n_rows = self.n_rows().min(other.n_rows());
        let g = self.g.mul(&other.g.compose(&self.f)?);
        let f = other.f.compose(&self.f)?;
        RiordanArray::build(&g, &f, n_rows)
    }

    pub fn identity(n_rows: usize) -> RiordanArray {
        RiordanArray::build(&Series::one(n_rows), &Series::x(n_rows), n_rows)
            .expect("identity has full order")
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(k, t)| if k == n { t.is_one() } else { t.is_zero() })
        })
    }
}

/// True iff `(g, -x g)^2` is the identity on `n_rows` rows.
pub fn pseudo_involution_check(g: &Series, n_rows: usize) -> Result<bool> {
    let m = RiordanArray::build(g, &-&g.shift_up(1), n_rows)?;
    Ok(m.multiply(&m)?.is_identity())
}

/// Parameters of `t[n][k] = t[n-1][k-1] + gamma t[n-2][k-1] + alpha t[n-1][k]
/// + beta t[n-2][k] + delta t[n-2][k+1]`.
///
/// As a 2x3 A-matrix this is `[[gamma, beta, delta], [1, alpha, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AMatrix {
    #[serde(with = "rational::serde_str")]
    pub alpha: Rational,
    #[serde(with = "rational::serde_str")]
    pub beta: Rational,
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
}

impl AMatrix {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Self {
        AMatrix { alpha, beta, gamma, delta }
    }

    pub fn from_ints(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        AMatrix::new(int(alpha), int(beta), int(gamma), int(delta))
    }

    pub fn as_matrix(&self) -> [[Rational; 3]; 2] {
        [
            [self.gamma.clone(), self.beta.clone(), self.delta.clone()],
            [int(1), self.alpha.clone(), Rational::zero()],
        ]
    }

    /// `[x^1]` of the generating function the kernel defines.
    pub fn first_coefficient(&self) -> Rational {
        &self.alpha + &self.gamma
    }
}

/// Fills the A-matrix recurrence with `t[0][0] = 1`, zero outside the
/// quadrant, and `t[1][0]` replaced by `t10_override` when given.
pub fn from_recurrence(am: &AMatrix, n_rows: usize, t10_override: Option<&Rational>) -> Triangle {
    let mut t: Triangle = Vec::with_capacity(n_rows);
    let at = |t: &Triangle, n: isize, k: isize| -> Rational {
        if n < 0 || k < 0 || k > n {
            return Rational::zero();
        }
        t[n as usize][k as usize].clone()
    };
    for n in 0..n_rows as isize {
        let mut row = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            let value = if n == 0 {
                int(1)
            } else if n == 1 && k == 0 && t10_override.is_some() {
                t10_override.unwrap().clone()
            } else {
                at(&t, n - 1, k - 1)
                    + &am.gamma * at(&t, n - 2, k - 1)
                    + &am.alpha * at(&t, n - 1, k)
                    + &am.beta * at(&t, n - 2, k)
                    + &am.delta * at(&t, n - 2, k + 1)
            };
            row.push(value);
        }
        t.push(row);
    }
    t
}

/// Checks `u/x = 1 + gamma x + alpha u + beta u x + delta u^2 x` to the order of `u`.
pub fn verify_kernel(u: &Series, am: &AMatrix) -> bool {
    if u.order() == 0 || !u.coeff(0).is_zero() {
        return false;
    }
    let n = u.order() - 1;
    let lhs = u.shift_down(1);
    let x = Series::x(n);
    let u = u.truncate(n);
    let ux = u.mul(&x);
    let rhs = &(&(&Series::from_poly(&[int(1), am.gamma.clone()], n) + &u.scale(&am.alpha))
        + &ux.scale(&am.beta))
        + &u.mul(&ux).scale(&am.delta);
    lhs == rhs
}
