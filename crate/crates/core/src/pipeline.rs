//! From curve parameters to `g`, `gamma` and every object built on them,
//! plus a report that cross-checks each route against the others.

use num_traits::Zero;
use serde::Serialize;

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::paths::{self, StepSet};
use crate::rational::{self, int, Rational};
use crate::riordan::{self, AMatrix, RiordanArray};
use crate::series::Series;
use crate::transforms::{self, JFraction};

/// Recurrence parameters of the Bell array `(g, x g)`:
/// `(2(c-1)-a, a(c-1)-b-(c-1)^2, a-2c+1, 1)`.
pub fn g_family(curve: &CurveParams) -> AMatrix {
    let (a, b, c) = (&curve.a, &curve.b, &curve.c);
    let c1 = c - int(1);
    AMatrix::new(
        int(2) * &c1 - a,
        a * &c1 - b - &c1 * &c1,
        a - int(2) * c + int(1),
        int(1),
    )
}

/// Recurrence parameters of `(gamma, x gamma)`: `(a-2c, ac-b-c^2, 0, 1)`.
pub fn gamma_family(curve: &CurveParams) -> AMatrix {
    let (a, b, c) = (&curve.a, &curve.b, &curve.c);
    AMatrix::new(a - int(2) * c, a * c - b - c * c, Rational::zero(), int(1))
}

/// Parameters after `r` binomial transforms of `g`:
/// `(alpha + 2r, beta - r(alpha + r), gamma - r, delta)`.
pub fn orbit_params(curve: &CurveParams, r: i64) -> AMatrix {
    transport(&g_family(curve), &int(r))
}

pub fn transport(am: &AMatrix, r: &Rational) -> AMatrix {
    AMatrix::new(
        &am.alpha + int(2) * r,
        &am.beta - r * (&am.alpha + r),
        &am.gamma - r,
        am.delta.clone(),
    )
}

/// Binomial shift taking `g` to `gamma`: `a - 2c + 1`.
pub fn gamma_shift(curve: &CurveParams) -> Rational {
    g_family(curve).gamma
}

/// Solve for `y`, strip the first two terms, revert `x/(1 - x - x^2 z)`.
pub fn derive_g(curve: &CurveParams, order: usize) -> Result<Series> {
    let (y1, _) = curve.solve_for_y(order);
    let linear = Series::from_poly(&[int(0), curve.c.clone()], order);
    let z = (&y1 - &linear).shift_down(2);
    let den = &Series::from_int_poly(&[1, -1], order) - &z.shift_up(2);
    let big_g = den.recip()?.shift_up(1).truncate(order + 1);
    let f = big_g.revert()?;
    Ok(f.shift_down(1).truncate(order))
}

pub fn derive_gamma(curve: &CurveParams, order: usize) -> Result<Series> {
    Ok(derive_g(curve, order)?.binomial_transform(&gamma_shift(curve)))
}

/// `(1+gamma x)/(1-alpha x-beta x^2) C(delta x^3 (1+gamma x)/(1-alpha x-beta x^2)^2)`.
pub fn appendix_g(am: &AMatrix, order: usize) -> Result<Series> {
    let num = Series::from_poly(&[int(1), am.gamma.clone()], order);
    let den = Series::from_poly(&[int(1), -am.alpha.clone(), -am.beta.clone()], order);
    let arg = num.shift_up(3).truncate(order).scale(&am.delta).div(&den.mul(&den))?;
    let c = Series::catalan(order).compose(&arg)?;
    Ok(num.div(&den)?.mul(&c))
}

/// The quadratic solution `u` of the kernel equation, by radicals.
pub fn appendix_u(am: &AMatrix, order: usize) -> Result<Series> {
    if am.delta.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let (al, be, ga, de) = (&am.alpha, &am.beta, &am.gamma, &am.delta);
    let n = order + 2;
    let radicand = Series::from_poly(
        &[
            int(1),
            int(-2) * al,
            al * al - int(2) * be,
            int(2) * (al * be - int(2) * de),
            be * be - int(4) * ga * de,
        ],
        n,
    );
    let head = Series::from_poly(&[int(1), -al.clone(), -be.clone()], n);
    let num = &head - &radicand.sqrt()?;
    Ok(num.shift_down(2).scale(&(int(2) * de).recip()).truncate(order))
}

pub fn closed_form_g(curve: &CurveParams, order: usize) -> Result<Series> {
    appendix_g(&g_family(curve), order)
}

pub fn closed_form_gamma(curve: &CurveParams, order: usize) -> Result<Series> {
    appendix_g(&gamma_family(curve), order)
}

/// `sum_k sum_j C(k+1,j) gamma^j sum_i C(2k+i,i) C(i,n-3k-i-j)
/// alpha^(2i+3k+j-n) beta^(n-3k-i-j) delta^k C_k`.
pub fn catalan_sum(am: &AMatrix, n: usize) -> Result<Rational> {
    let n = n as i64;
    let mut total = Rational::zero();
    for k in 0..=n {
        let weight_k = Rational::from_integer(rational::catalan(k as u64)) * rational::pow(&am.delta, k as u32);
        for j in 0..=k + 1 {
            let top = n - 3 * k - j;
            if top < 0 {
                break;
            }
            let cj = Rational::from_integer(rational::binomial((k + 1) as u64, j as u64))
                * rational::pow(&am.gamma, j as u32);
            for i in 0..=top {
                let l = top - i;
                let choose_il = rational::binomial(i as u64, l as u64);
                let e = 2 * i + 3 * k + j - n;
                if e < 0 {
                    if choose_il.is_zero() {
                        continue;
                    }
                    return Err(Error::FormulaDomainError { n: n as usize });
                }
                let term = Rational::from_integer(rational::binomial((2 * k + i) as u64, i as u64) * choose_il)
                    * rational::pow(&am.alpha, e as u32)
                    * rational::pow(&am.beta, l as u32);
                total += term * &cj * &weight_k;
            }
        }
    }
    Ok(total)
}

/// `[x^n] g` from the closed-form triple sum, in the g-family parameters.
pub fn u_n_formula(curve: &CurveParams, n: usize) -> Result<Rational> {
    catalan_sum(&g_family(curve), n)
}

/// `v_n = sum_k sum_j C(2k+j,j) C(j,n-3k-j) (ac-b-c^2)^(n-3k-j) (a-2c)^(2j-n+3k) C_k`.
pub fn v_n_formula(curve: &CurveParams, n: usize) -> Result<Rational> {
    let am = gamma_family(curve);
    let n = n as i64;
    let mut total = Rational::zero();
    for k in 0..=n / 3 {
        let ck = Rational::from_integer(rational::catalan(k as u64));
        for j in 0..=n - 3 * k {
            let l = n - 3 * k - j;
            let choose_jl = rational::binomial(j as u64, l as u64);
            let e = 2 * j - n + 3 * k;
            if e < 0 {
                if choose_jl.is_zero() {
                    continue;
                }
                return Err(Error::FormulaDomainError { n: n as usize });
            }
            let term = Rational::from_integer(rational::binomial((2 * k + j) as u64, j as u64) * choose_jl)
                * rational::pow(&am.beta, l as u32)
                * rational::pow(&am.alpha, e as u32);
            total += term * &ck;
        }
    }
    Ok(total)
}

/// `h_2 = a^2 c - a(b + 3c^2) + 2bc + 2c^3 - 1`.
pub fn hankel_h2(curve: &CurveParams) -> Rational {
    let (a, b, c) = (&curve.a, &curve.b, &curve.c);
    a * a * c - a * (b + int(3) * c * c) + int(2) * b * c + int(2) * c * c * c - int(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveJson {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl From<&CurveParams> for CurveJson {
    fn from(c: &CurveParams) -> Self {
        CurveJson { a: rational::format(&c.a), b: rational::format(&c.b), c: rational::format(&c.c) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub curve: CurveJson,
    pub order: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.to_string(), pass, detail: detail.into() });
    }

    fn push_result(&mut self, name: &str, r: Result<(bool, String)>) {
        match r {
            Ok((pass, detail)) => self.push(name, pass, detail),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }
}

fn first_mismatch(a: &[Rational], b: &[Rational]) -> String {
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(i) => format!("first mismatch at index {i}: {} vs {}", rational::format(&a[i]), rational::format(&b[i])),
        None if a.len() != b.len() => format!("length {} vs {}", a.len(), b.len()),
        None => format!("{} terms equal", a.len()),
    }
}

fn compare(a: &[Rational], b: &[Rational]) -> (bool, String) {
    (a == b, first_mismatch(a, b))
}

/// Number of rows used for triangle comparisons.
const TRIANGLE_ROWS: usize = 12;

/// Runs every cross-check on `curve` with series known to `order` terms.
pub fn full_verify(curve: &CurveParams, order: usize) -> Result<VerifyReport> {
    let g = derive_g(curve, order)?;
    let gamma = g.binomial_transform(&gamma_shift(curve));
    let g_am = g_family(curve);
    let gamma_am = gamma_family(curve);
    let rows = TRIANGLE_ROWS.min(order);
    let count = order.div_ceil(2);
    let mut checks = Checks(Vec::new());

    checks.push_result("g_closed_form", closed_form_g(curve, order).map(|cf| compare(g.coeffs(), cf.coeffs())));
    checks.push_result(
        "gamma_closed_form",
        closed_form_gamma(curve, order).map(|cf| compare(gamma.coeffs(), cf.coeffs())),
    );
    checks.push_result(
        "u_n_formula",
        (0..order).map(|n| u_n_formula(curve, n)).collect::<Result<Vec<_>>>().map(|u| compare(g.coeffs(), &u)),
    );
    checks.push_result(
        "v_n_formula",
        (0..order).map(|n| v_n_formula(curve, n)).collect::<Result<Vec<_>>>().map(|v| compare(gamma.coeffs(), &v)),
    );
    let kernel_g = riordan::verify_kernel(&g.shift_up(1), &g_am);
    let kernel_gamma = riordan::verify_kernel(&gamma.shift_up(1), &gamma_am);
    checks.push("kernel_equations", kernel_g && kernel_gamma, format!("g: {kernel_g}, gamma: {kernel_gamma}"));

    checks.push_result("dp_equals_riordan_g", dp_vs_riordan(&paths::stepset_for_g(curve), &g, rows));
    checks.push_result("dp_equals_riordan_gamma", dp_vs_riordan(&paths::stepset_for_gamma(curve), &gamma, rows));
    checks.push_result(
        "recurrence_equals_riordan",
        RiordanArray::bell(&g, rows).map(|bell| {
            let dp = riordan::from_recurrence(&g_am, rows, Some(g.coeff(1)));
            (dp == bell.rows, format!("{rows} rows"))
        }),
    );
    checks.push_result("orbit_binomial_columns", orbit_columns(curve, &g, rows));

    let h_g = transforms::hankel_transform(g.coeffs(), count)?;
    let h_gamma = transforms::hankel_transform(gamma.coeffs(), count)?;
    let (same, detail) = compare(&h_g, &h_gamma);
    checks.push("hankel_binomial_invariance", same, detail);
    let h1 = &curve.a * &curve.c - &curve.b - &curve.c * &curve.c;
    let h2 = hankel_h2(curve);
    checks.push(
        "hankel_prefix_formulas",
        h_g.len() > 2 && h_g[1] == h1 && h_g[2] == h2,
        format!("h1 = {}, h2 = {}", rational::format(&h1), rational::format(&h2)),
    );

    let somos = transforms::somos_params(curve);
    let forms_agree = (-3..=6).all(|r| transforms::somos_params_am(&orbit_params(curve, r)) == somos)
        && transforms::somos_params_am(&gamma_am) == somos;
    checks.push(
        "somos_forms_agree",
        forms_agree,
        format!("({}, {})", rational::format(&somos.r), rational::format(&somos.s)),
    );
    checks.push_result(
        "hankel_somos",
        transforms::somos_verify(&h_g, &somos).map(|r| {
            (r.holds(), format!("checked {:?}, zero divisors {:?}, failures {:?}", r.checked, r.zero_divisors, r.failures))
        }),
    );

    let eds = curve.eds(count + 1);
    let aligned = (0..count).all(|n| transforms::abs_eq(&eds.terms[n + 2], &h_g[n]));
    let signs: Vec<i8> = (0..count)
        .map(|n| rational::sign(&eds.terms[n + 2]) * rational::sign(&h_g[n]))
        .collect();
    checks.push("eds_hankel_alignment", aligned, format!("sign(W_(n+2)) * sign(h_n) = {signs:?}"));

    let depth = (order - 1) / 2;
    checks.push_result("jfrac_points_g", jfrac_points_check(curve, &g, 0, depth));
    let shift = gamma_shift(curve);
    match rational_to_i64(&shift) {
        Some(s) => checks.push_result("jfrac_points_gamma", jfrac_points_check(curve, &gamma, s, depth)),
        None => checks.push("jfrac_points_gamma", true, "non-integral shift; skipped"),
    }
    checks.push_result("hankel_point_product", point_product_check(curve, &h_g));

    let expect_involution = gamma_am.beta.is_zero();
    checks.push_result(
        "pseudo_involution",
        riordan::pseudo_involution_check(&gamma, rows).map(|is| {
            (is == expect_involution, format!("involution: {is}, ac-b-c^2 = {}", rational::format(&gamma_am.beta)))
        }),
    );

    Ok(VerifyReport { curve: curve.into(), order, checks: checks.0 })
}

fn rational_to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

fn dp_vs_riordan(steps: &StepSet, g: &Series, rows: usize) -> Result<(bool, String)> {
    let bell = RiordanArray::bell(g, rows)?;
    let dp = paths::dp_count(steps, rows);
    Ok((dp == bell.rows, format!("{rows} rows")))
}

fn orbit_columns(curve: &CurveParams, g: &Series, rows: usize) -> Result<(bool, String)> {
    for r in 0..=6 {
        let dp = paths::dp_count(&paths::stepset_orbit(curve, r), rows);
        let column: Vec<Rational> = dp.iter().map(|row| row[0].clone()).collect();
        let expected = g.binomial_transform(&int(r)).truncate(rows);
        if column != expected.coeffs() {
            return Ok((false, format!("r = {r}: {}", first_mismatch(&column, expected.coeffs()))));
        }
    }
    Ok((true, "r = 0..6".to_string()))
}

/// Either the fraction from `[kP]` reproduces the series, or both the
/// points and the series fail to give a J-fraction at the same level.
fn jfrac_points_check(curve: &CurveParams, series: &Series, shift: i64, depth: usize) -> Result<(bool, String)> {
    match transforms::jfrac_from_points(curve, shift, depth) {
        Ok(jf) => {
            let order = series.order().min(jf.valid_order());
            let eval = transforms::jfrac_eval(&jf, order)?;
            Ok((eval == series.truncate(order), format!("depth {depth}, {order} coefficients")))
        }
        Err(Error::ZeroXCoordinate { multiple }) => {
            let extracted: Result<JFraction> = transforms::jfrac_extract(series, depth);
            let consistent = matches!(extracted, Err(Error::ZeroLambda { index, .. }) if index + 1 == multiple);
            Ok((consistent, format!("[{multiple}P] has x = 0; series extraction: {extracted:?}")))
        }
        Err(e) => Err(e),
    }
}

fn point_product_check(curve: &CurveParams, h: &[Rational]) -> Result<(bool, String)> {
    let limit = h.len().min(8);
    for n in 0..limit {
        match transforms::hankel_point_product(curve, n, true) {
            Ok(p) if p != h[n] => {
                return Ok((false, format!("n = {n}: {} vs {}", rational::format(&p), rational::format(&h[n]))))
            }
            // A vanishing x-coordinate ends the fraction; later h_n are not products.
            Ok(p) if p.is_zero() => return Ok((true, format!("n <= {n}; fraction ends at a zero x-coordinate"))),
            Ok(_) => continue,
            Err(Error::TorsionDepth { multiple }) => {
                return Ok((true, format!("n < {n}; torsion at {multiple}P")));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((true, format!("n < {limit}")))
}
