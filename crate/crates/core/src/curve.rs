//! Curves `y^2 - a x y - y = x^3 - b x^2 - c x` and the point `P = (0,0)`.
//!
//! In long Weierstrass form the coefficients are `a1 = -a`, `a2 = -b`,
//! `a3 = -1`, `a4 = -c`, `a6 = 0`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// The `a_i` and `b_i` invariants of the long Weierstrass model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weierstrass {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
}

impl Weierstrass {
    pub fn discriminant(&self) -> Rational {
        let Weierstrass { b2, b4, b6, b8, .. } = self;
        -(b2 * b2 * b8) - int(8) * b4 * b4 * b4 - int(27) * b6 * b6 + int(9) * b2 * b4 * b6
    }
}

impl CurveParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let curve = CurveParams { a, b, c };
        if curve.weierstrass().discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        CurveParams::new(int(a), int(b), int(c))
    }

    pub fn weierstrass(&self) -> Weierstrass {
        let a1 = -&self.a;
        let a2 = -&self.b;
        let a3 = int(-1);
        let a4 = -&self.c;
        let a6 = Rational::zero();
        let b2 = &a1 * &a1 + int(4) * &a2;
        let b4 = int(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + int(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + int(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3
            - &a4 * &a4;
        Weierstrass { a1, a2, a3, a4, a6, b2, b4, b6, b8 }
    }

    pub fn discriminant(&self) -> Rational {
        self.weierstrass().discriminant()
    }

    /// Left minus right side of the curve equation at `(x, y)`.
    fn residual(&self, x: &Rational, y: &Rational) -> Rational {
        let lhs = y * y - &self.a * x * y - y;
        let rhs = x * x * x - &self.b * x * x - &self.c * x;
        lhs - rhs
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => self.residual(x, y).is_zero(),
        }
    }

    pub fn base_point(&self) -> CurvePoint {
        CurvePoint::affine(int(0), int(0))
    }

    /// Chord-tangent addition with the full `a1..a6` formulas.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::PointNotOnCurve);
        }
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let w = self.weierstrass();
        if x1 == x2 && (y1 + y2 + &w.a1 * x2 + &w.a3).is_zero() {
            return Ok(CurvePoint::Infinity);
        }
        let (lambda, nu) = if x1 == x2 {
            let den = int(2) * y1 + &w.a1 * x1 + &w.a3;
            let lambda = (int(3) * x1 * x1 + int(2) * &w.a2 * x1 + &w.a4 - &w.a1 * y1) / &den;
            let nu = (-(x1 * x1 * x1) + &w.a4 * x1 + int(2) * &w.a6 - &w.a3 * y1) / &den;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + &w.a1 * &lambda - &w.a2 - x1 - x2;
        let y3 = -(&lambda + &w.a1) * &x3 - nu - &w.a3;
        Ok(CurvePoint::affine(x3, y3))
    }

    /// `[1P, 2P, ..., n_max P]` by repeated addition.
    pub fn multiples(&self, n_max: usize) -> Multiples {
        let p = self.base_point();
        let mut points = Vec::with_capacity(n_max);
        let mut current = CurvePoint::Infinity;
        for k in 1..=n_max {
            current = self.add(&current, &p).expect("multiples of P stay on the curve");
            if current.is_infinity() {
                return Multiples { points, torsion_order: Some(k) };
            }
            points.push(current.clone());
        }
        Multiples { points, torsion_order: None }
    }

    /// The two branches of `y` as power series in `x`.
    ///
    /// `y1` is the branch through `(0,0)` (expanding `0, c, ...`); `y2 = 1 + a x - y1`.
    pub fn solve_for_y(&self, order: usize) -> (Series, Series) {
        let two = int(2);
        let radicand = Series::from_poly(
            &[
                int(1),
                &two * (&self.a - &two * &self.c),
                &self.a * &self.a - int(4) * &self.b,
                int(4),
            ],
            order,
        );
        let root = radicand.sqrt().expect("radicand has constant term 1");
        let linear = Series::from_poly(&[int(1), self.a.clone()], order);
        let half = rational::frac(1, 2);
        let y1 = (&linear - &root).scale(&half);
        let y2 = (&linear + &root).scale(&half);
        (y1, y2)
    }

    /// `W_n = psi_n(0,0)` for `n = 0..=n_max`.
    pub fn eds(&self, n_max: usize) -> EdsSequence {
        let w = self.weierstrass();
        let psi2 = w.a3.clone();
        let psi3 = w.b8.clone();
        let psi4 = &psi2 * (&w.b4 * &w.b8 - &w.b6 * &w.b6);
        let mut terms = vec![Rational::zero(), Rational::one(), psi2, psi3, psi4];
        for m in 5..=n_max {
            let next = if m % 2 == 1 {
                let k = (m - 1) / 2;
                &terms[k + 2] * cube(&terms[k]) - &terms[k - 1] * cube(&terms[k + 1])
            } else {
                let k = m / 2;
                let inner = &terms[k + 2] * &terms[k - 1] * &terms[k - 1]
                    - &terms[k - 2] * &terms[k + 1] * &terms[k + 1];
                // psi_2(P) = a3 = -1 for this family, never zero.
                &terms[k] * inner / &terms[2]
            };
            terms.push(next);
        }
        terms.truncate(n_max + 1);
        EdsSequence { terms }
    }
}

fn cube(r: &Rational) -> Rational {
    r * r * r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Affine { x: Rational, y: Rational },
    Infinity,
}

impl CurvePoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }
}

// Wire form: {"x":"p/q","y":"p/q"} or {"infinity":true}.
#[derive(Serialize, Deserialize)]
struct PointRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    infinity: bool,
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            CurvePoint::Affine { x, y } => PointRepr {
                x: Some(rational::format(x)),
                y: Some(rational::format(y)),
                infinity: false,
            },
            CurvePoint::Infinity => PointRepr { x: None, y: None, infinity: true },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurvePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PointRepr::deserialize(d)?;
        match (repr.infinity, repr.x, repr.y) {
            (true, None, None) => Ok(CurvePoint::Infinity),
            (false, Some(x), Some(y)) => Ok(CurvePoint::affine(
                rational::parse(&x).map_err(D::Error::custom)?,
                rational::parse(&y).map_err(D::Error::custom)?,
            )),
            _ => Err(D::Error::custom("expected {\"x\",\"y\"} or {\"infinity\":true}")),
        }
    }
}

/// Multiples of `P`, stopping at the first `kP = O`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiples {
    /// `points[k-1] = kP`.
    pub points: Vec<CurvePoint>,
    /// Order of `P` if it was reached.
    pub torsion_order: Option<usize>,
}

impl Multiples {
    pub fn get(&self, k: usize) -> Option<&CurvePoint> {
        k.checked_sub(1).and_then(|i| self.points.get(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdsSequence {
    #[serde(with = "rational::serde_str::vec")]
    pub terms: Vec<Rational>,
}

impl EdsSequence {
    /// `W_{m+n} W_{m-n} = W_{m+1} W_{m-1} W_n^2 - W_{n+1} W_{n-1} W_m^2`.
    pub fn bilinear_holds(&self, m: usize, n: usize) -> bool {
        let w = &self.terms;
        let lhs = &w[m + n] * &w[m - n];
        let rhs = &w[m + 1] * &w[m - 1] * &w[n] * &w[n] - &w[n + 1] * &w[n - 1] * &w[m] * &w[m];
        lhs == rhs
    }
}
