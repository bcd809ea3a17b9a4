//! Weighted lattice paths in the quadrant `k >= 0`.
//!
//! A step `(dx, dy)` advances the row index `n` by `dx` and the height
//! (Riordan column) `k` by `dy`. Weights are signed multiplicities; a path
//! contributes the product of its step weights.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::pipeline;
use crate::rational::{self, int, Rational};
use crate::riordan::{AMatrix, Triangle};

/// Largest `n` accepted by the enumeration oracle.
pub const BRUTE_FORCE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub dx: i64,
    pub dy: i64,
    #[serde(with = "rational::serde_str")]
    pub w: Rational,
}

impl Step {
    pub fn new(dx: i64, dy: i64, w: Rational) -> Self {
        Step { dx, dy, w }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StepSet {
    pub steps: Vec<Step>,
    /// Replacement value for `t[1][0]`: the weight of a first horizontal
    /// step taken from the origin.
    #[serde(default, with = "rational::serde_str::option", skip_serializing_if = "Option::is_none")]
    pub origin_override: Option<Rational>,
}

impl StepSet {
    pub fn new(steps: Vec<Step>, origin_override: Option<Rational>) -> Result<Self> {
        for s in &steps {
            if !(1..=2).contains(&s.dx) || !(-1..=1).contains(&s.dy) {
                return Err(Error::InvalidStep { dx: s.dx, dy: s.dy });
            }
        }
        Ok(StepSet { steps, origin_override })
    }

    /// `{(1,1):1, (1,0):alpha, (2,0):beta, (2,1):gamma, (2,-1):delta}`.
    pub fn from_amatrix(am: &AMatrix, origin_override: Option<Rational>) -> Self {
        StepSet {
            steps: vec![
                Step::new(1, 1, int(1)),
                Step::new(1, 0, am.alpha.clone()),
                Step::new(2, 0, am.beta.clone()),
                Step::new(2, 1, am.gamma.clone()),
                Step::new(2, -1, am.delta.clone()),
            ],
            origin_override,
        }
    }

    /// Total weight of the steps equal to `(dx, dy)`.
    pub fn weight(&self, dx: i64, dy: i64) -> Rational {
        self.steps
            .iter()
            .filter(|s| s.dx == dx && s.dy == dy)
            .fold(Rational::zero(), |acc, s| acc + &s.w)
    }

    /// The equivalent recurrence parameters, when the `(1,1)` step has weight 1.
    pub fn to_amatrix(&self) -> Option<AMatrix> {
        (self.weight(1, 1) == int(1)).then(|| {
            AMatrix::new(self.weight(1, 0), self.weight(2, 0), self.weight(2, 1), self.weight(2, -1))
        })
    }

    /// Steps with duplicates merged and zero weights dropped.
    fn merged(&self) -> Vec<Step> {
        let mut out: Vec<Step> = Vec::new();
        for s in &self.steps {
            match out.iter_mut().find(|o| o.dx == s.dx && o.dy == s.dy) {
                Some(o) => o.w += &s.w,
                None => out.push(s.clone()),
            }
        }
        out.retain(|s| !s.w.is_zero());
        out
    }

    fn is_origin_step(&self, s: &Step) -> bool {
        self.origin_override.is_some() && s.dx == 1 && s.dy == 0
    }
}

/// Step set of the Bell array `(g, x g)` derived from the curve.
pub fn stepset_for_g(curve: &CurveParams) -> StepSet {
    let am = pipeline::g_family(curve);
    let t10 = am.first_coefficient();
    StepSet::from_amatrix(&am, Some(t10))
}

/// `{(1,1):1, (1,0):a-2c, (2,0):ac-b-c^2, (2,-1):1}`.
pub fn stepset_for_gamma(curve: &CurveParams) -> StepSet {
    let am = pipeline::gamma_family(curve);
    StepSet {
        steps: vec![
            Step::new(1, 1, int(1)),
            Step::new(1, 0, am.alpha),
            Step::new(2, 0, am.beta),
            Step::new(2, -1, am.delta),
        ],
        origin_override: None,
    }
}

/// Step set of the `r`-th binomial transform of `g`.
pub fn stepset_orbit(curve: &CurveParams, r: i64) -> StepSet {
    let am = pipeline::orbit_params(curve, r);
    let t10 = am.first_coefficient();
    StepSet::from_amatrix(&am, Some(t10))
}

/// `t[n][k]` = weighted number of paths `(0,0) -> (n,k)`, for `n < n_rows`.
pub fn dp_count(steps: &StepSet, n_rows: usize) -> Triangle {
    let mut t: Triangle = Vec::with_capacity(n_rows);
    for n in 0..n_rows {
        let mut row = vec![Rational::zero(); n + 1];
        if n == 0 {
            row[0] = int(1);
        }
        for (k, entry) in row.iter_mut().enumerate() {
            if n == 1 && k == 0 {
                if let Some(v) = &steps.origin_override {
                    *entry = v.clone();
                    continue;
                }
            }
            for s in &steps.steps {
                let (pn, pk) = (n as i64 - s.dx, k as i64 - s.dy);
                if pn < 0 || pk < 0 || pk > pn {
                    continue;
                }
                let prev = &t[pn as usize][pk as usize];
                if !prev.is_zero() {
                    *entry += &s.w * prev;
                }
            }
        }
        t.push(row);
    }
    t
}

/// Sum over every explicit path `(0,0) -> (n,k)` staying at height `>= 0`
/// of the product of its step weights.
pub fn brute_force_count(steps: &StepSet, n: usize, k: usize) -> Result<Rational> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SearchSpaceTooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    let merged = steps.merged();
    let origin = origin_steps(steps);
    let up2 = merged.iter().map(|s| 2 * s.dy / s.dx).max().unwrap_or(0);
    let down2 = merged.iter().map(|s| -2 * s.dy / s.dx).max().unwrap_or(0);
    let target = Target { n: n as i64, k: k as i64, up2, down2 };
    let mut total = Rational::zero();
    walk(&merged, &origin, &target, 0, 0, int(1), &mut total);
    Ok(total)
}

struct Target {
    n: i64,
    k: i64,
    up2: i64,
    down2: i64,
}

impl Target {
    fn reachable(&self, m: i64, h: i64) -> bool {
        let rest = self.n - m;
        rest >= 0 && 2 * (self.k - h) <= rest * self.up2 && 2 * (h - self.k) <= rest * self.down2
    }
}

/// Step list used for the first move from the origin.
fn origin_steps(steps: &StepSet) -> Vec<Step> {
    let mut first: Vec<Step> = steps.merged().into_iter().filter(|s| !steps.is_origin_step(s)).collect();
    if let Some(v) = &steps.origin_override {
        if !v.is_zero() {
            first.push(Step::new(1, 0, v.clone()));
        }
    }
    first
}

fn walk(steps: &[Step], current: &[Step], t: &Target, m: i64, h: i64, w: Rational, total: &mut Rational) {
    if m == t.n && h == t.k {
        *total += &w;
        return;
    }
    for s in current {
        let (nm, nh) = (m + s.dx, h + s.dy);
        if nh < 0 || !t.reachable(nm, nh) {
            continue;
        }
        walk(steps, steps, t, nm, nh, &w * &s.w, total);
    }
}

/// Every path with `n <= n_max` enumerated once; entry `[n][k]` is the
/// weighted count of those ending at `(n, k)`.
pub fn brute_force_table(steps: &StepSet, n_max: usize) -> Result<Triangle> {
    if n_max > BRUTE_FORCE_LIMIT {
        return Err(Error::SearchSpaceTooLarge { n: n_max, limit: BRUTE_FORCE_LIMIT });
    }
    let merged = steps.merged();
    let origin = origin_steps(steps);
    let mut table: Triangle = (0..=n_max).map(|n| vec![Rational::zero(); n + 1]).collect();
    tally(&merged, &origin, n_max as i64, 0, 0, &int(1), &mut table);
    Ok(table)
}

fn tally(steps: &[Step], current: &[Step], n_max: i64, m: i64, h: i64, w: &Rational, table: &mut Triangle) {
    table[m as usize][h as usize] += w;
    for s in current {
        let (nm, nh) = (m + s.dx, h + s.dy);
        if nm > n_max || nh < 0 {
            continue;
        }
        tally(steps, steps, n_max, nm, nh, &(w * &s.w), table);
    }
}
