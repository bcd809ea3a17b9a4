//! Randomized invariant suites shared by the `properties` and `acceptance`
//! targets. Each suite runs a fixed number of cases from a deterministic RNG.
#![allow(dead_code)]

use ec_riordan::curve::{CurveParams, CurvePoint};
use ec_riordan::rational::{frac, int, Rational};
use ec_riordan::riordan::RiordanArray;
use ec_riordan::{pipeline, transforms, Series};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 128;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn series_with_head(head: Vec<Rational>, max_len: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), 1..max_len).prop_map(move |tail| {
        let mut c = head.clone();
        c.extend(tail);
        Series::new(c)
    })
}

pub fn any_series(max_len: usize) -> impl Strategy<Value = Series> {
    series_with_head(Vec::new(), max_len)
}

pub fn int_sequence(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6).prop_map(int), len)
}

pub fn curve() -> impl Strategy<Value = CurveParams> {
    (-3i64..=3, -3i64..=3, -3i64..=3).prop_filter_map("singular", |(a, b, c)| CurveParams::from_ints(a, b, c).ok())
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.into()))
    }
}

fn wrap(e: ec_riordan::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for (j, head) in m[0].iter().enumerate() {
        if head.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = head * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn series_round_trips(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    let unit = || series_with_head(vec![int(1)], 12);
    r.run(&(any_series(12), unit()), |(f, g)| {
        let n = f.order().min(g.order());
        let back = f.mul(&g).div(&g).map_err(wrap)?;
        check(back == f.truncate(n), "div(mul(f, g), g) != f")
    })
    .map_err(|e| format!("mul/div: {e}"))?;
    r.run(&unit(), |f| {
        let s = f.sqrt().map_err(wrap)?;
        check(s.mul(&s) == f, "sqrt(f)^2 != f")
    })
    .map_err(|e| format!("sqrt: {e}"))?;
    r.run(&series_with_head(vec![int(0), int(1)], 11), |f| {
        let u = f.revert().map_err(wrap)?;
        let x = Series::x(f.order());
        check(f.compose(&u).map_err(wrap)? == x, "f(rev f) != x")?;
        check(u.compose(&f).map_err(wrap)? == x, "rev f(f) != x")
    })
    .map_err(|e| format!("revert: {e}"))?;
    r.run(&(any_series(14), -3i64..=3), |(f, k)| {
        let back = f.binomial_transform(&int(k)).binomial_transform(&int(-k));
        check(back == f, "B^-r B^r f != f")
    })
    .map_err(|e| format!("binomial: {e}"))?;
    r.run(&(1usize..40), |n| {
        let c = Series::catalan(n);
        check(c == (&Series::one(n) + &c.mul(&c).shift_up(1)).truncate(n), "C != 1 + x C^2")
    })
    .map_err(|e| format!("catalan: {e}"))?;
    r.run(&(nonzero_rational(), nonzero_rational()), |(a, b)| {
        // (-b - sqrt(b^2 - 4at))/(2a) on the branch sqrt(b^2) = -b, against -(t/b) C(a t / b^2).
        let n = 12;
        let s = Series::from_poly(&[int(1), -int(4) * &a / (&b * &b)], n + 1).sqrt().map_err(wrap)?;
        let lhs = (&s - &Series::one(n + 1)).scale(&(&b / (int(2) * &a))).truncate(n);
        let arg = Series::from_poly(&[int(0), &a / (&b * &b)], n);
        let rhs = Series::catalan(n).compose(&arg).map_err(wrap)?.shift_up(1).truncate(n).scale(&-b.recip());
        check(lhs == rhs, "root identity")
    })
    .map_err(|e| format!("root identity: {e}"))
}

pub fn hankel_invariances(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    r.run(&(1usize..=6).prop_flat_map(|n| int_sequence(2 * n - 1)), |seq| {
        let n = seq.len().div_ceil(2);
        let h = transforms::hankel_transform(&seq, n).map_err(wrap)?;
        for (k, hk) in h.iter().enumerate() {
            let m: Vec<Vec<Rational>> = (0..=k).map(|i| seq[i..=i + k].to_vec()).collect();
            check(*hk == cofactor_det(&m), format!("h_{k} vs cofactor"))?;
        }
        Ok(())
    })
    .map_err(|e| format!("cofactor oracle: {e}"))?;
    r.run(&(int_sequence(15), -3i64..=3), |(seq, k)| {
        let h = transforms::hankel_transform(&seq, 8).map_err(wrap)?;
        let shifted = Series::new(seq.clone()).binomial_transform(&int(k));
        check(transforms::hankel_transform(shifted.coeffs(), 8).map_err(wrap)? == h, "binomial invariance")?;
        let alt: Vec<Rational> =
            seq.iter().enumerate().map(|(i, a)| if i % 2 == 0 { a.clone() } else { -a }).collect();
        check(transforms::hankel_transform(&alt, 8).map_err(wrap)? == h, "sign invariance")
    })
    .map_err(|e| format!("invariance: {e}"))
}

pub fn lambda_product(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    let strategy = (1usize..=5).prop_flat_map(|d| (Just(d), int_sequence(2 * d)));
    r.run(&strategy, |(d, tail)| {
        let g = Series::new([vec![int(1)], tail].concat());
        let jf = match transforms::jfrac_extract(&g, d) {
            Ok(jf) => jf,
            Err(ec_riordan::Error::ZeroLambda { .. }) => return Ok(()),
            Err(e) => return Err(wrap(e)),
        };
        let h = transforms::hankel_transform(g.coeffs(), d + 1).map_err(wrap)?;
        for (n, hn) in h.iter().enumerate() {
            let mut p = int(1);
            for k in 1..=n {
                for _ in 0..(n + 1 - k) {
                    p *= &jf.lam[k - 1];
                }
            }
            check(*hn == p, format!("h_{n} != lambda product"))?;
        }
        let eval = transforms::jfrac_eval(&jf, 2 * d).map_err(wrap)?;
        check(eval == g.truncate(2 * d), "eval(extract(g)) != g")
    })
    .map_err(|e| format!("lambda product: {e}"))
}

pub fn eds_bilinear(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&curve(), |c| {
            let w = c.eds(16);
            for m in 3..=8 {
                for n in 2..m {
                    check(w.bilinear_holds(m, n), format!("m = {m}, n = {n}"))?;
                }
            }
            Ok(())
        })
        .map_err(|e| format!("eds bilinear: {e}"))
}

pub fn associativity(cases: u32) -> Result<(), String> {
    let mut r = runner(cases);
    r.run(&(curve(), 1usize..=4, 1usize..=4, 1usize..=4), |(c, i, j, k)| {
        let m = c.multiples(12);
        let pt = |n: usize| m.get(n).cloned().unwrap_or(CurvePoint::Infinity);
        let (p, q, s) = (pt(i), pt(j), pt(k));
        let left = c.add(&c.add(&p, &q).map_err(wrap)?, &s).map_err(wrap)?;
        let right = c.add(&p, &c.add(&q, &s).map_err(wrap)?).map_err(wrap)?;
        check(left == right, "(P+Q)+S != P+(Q+S)")?;
        check(c.contains(&left), "sum off the curve")?;
        let expected = if m.torsion_order.is_some() { left.clone() } else { pt(i + j + k) };
        check(left == expected, "iP + jP + kP != (i+j+k)P")
    })
    .map_err(|e| format!("point associativity: {e}"))?;
    let bell = || series_with_head(vec![int(1)], 8).prop_map(|g| g.truncate(8));
    r.run(&(bell(), bell(), bell()), |(a, b, c)| {
        let n = a.order().min(b.order()).min(c.order());
        let arr = |g: &Series| RiordanArray::bell(g, n).map_err(wrap);
        let (a, b, c) = (arr(&a)?, arr(&b)?, arr(&c)?);
        let left = a.multiply(&b).map_err(wrap)?.multiply(&c).map_err(wrap)?;
        let right = a.multiply(&b.multiply(&c).map_err(wrap)?).map_err(wrap)?;
        check(left.rows == right.rows, "riordan product not associative")
    })
    .map_err(|e| format!("riordan associativity: {e}"))
}

pub fn orbit_somos_invariance(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(curve(), -3i64..=6), |(c, r)| {
            let am = pipeline::orbit_params(&c, r);
            let inv = &am.alpha * &am.gamma - &am.beta + &am.gamma * &am.gamma;
            let expected = -(&c.a * &c.c) + &c.b + &c.c * &c.c;
            check(inv == expected, "alpha gamma - beta + gamma^2 moved")?;
            check(transforms::somos_params_am(&am) == transforms::somos_params(&c), "somos forms differ")
        })
        .map_err(|e| format!("orbit invariance: {e}"))
}

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

pub const SUITES: [Suite; 6] = [
    ("series round-trips", series_round_trips),
    ("hankel invariances", hankel_invariances),
    ("lambda-product identity", lambda_product),
    ("eds bilinear identity", eds_bilinear),
    ("associativity", associativity),
    ("orbit somos invariance", orbit_somos_invariance),
];
