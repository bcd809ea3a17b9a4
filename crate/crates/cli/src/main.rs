use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ec_riordan::curve::{CurveParams, CurvePoint};
use ec_riordan::paths::{self, Step, StepSet};
use ec_riordan::pipeline::{self, CurveJson, VerifyReport};
use ec_riordan::rational::{self, Rational};
use ec_riordan::riordan::{AMatrix, Triangle};
use ec_riordan::transforms::{self, JFraction, SomosParams};
use ec_riordan::Series;
use serde::Serialize;

mod oeis;
mod output;

use output::{Format, Output};

#[derive(Debug)]
pub enum CliError {
    /// A check ran and failed, or a comparison mismatched.
    Check(String),
    /// Malformed, singular or otherwise unusable input.
    Input(String),
    Network(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
            CliError::Network(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Check(m) | CliError::Input(m) => f.write_str(m),
            CliError::Network(m) => write!(f, "network failure: {m}"),
        }
    }
}

impl From<ec_riordan::Error> for CliError {
    fn from(e: ec_riordan::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Elliptic curves y^2 - axy - y = x^3 - bx^2 - cx, their Riordan arrays,
/// lattice paths, Hankel transforms and continued fractions, in exact arithmetic.
#[derive(Parser)]
#[command(name = "ec-riordan", version)]
struct Cli {
    /// Number of series coefficients to compute.
    #[arg(long, global = true, default_value_t = 32)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Use bundled OEIS fixtures only; never touch the network.
    #[arg(long, global = true)]
    offline: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
}

impl CurveArgs {
    fn given(&self) -> bool {
        self.a.is_some() || self.b.is_some() || self.c.is_some()
    }

    fn curve(&self) -> CliResult<CurveParams> {
        let get = |name: &str, v: &Option<String>| -> CliResult<Rational> {
            let v = v.as_deref().ok_or_else(|| CliError::Input(format!("missing --{name}")))?;
            Ok(rational::parse(v)?)
        };
        let (a, b, c) = (get("a", &self.a)?, get("b", &self.b)?, get("c", &self.c)?);
        Ok(CurveParams::new(a, b, c)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    G,
    Gamma,
    Orbit,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesSource {
    G,
    Gamma,
    Catalan,
}

#[derive(Subcommand)]
enum Command {
    /// g, gamma, step sets, Somos parameters, Hankel and EDS prefixes.
    Derive(CurveArgs),
    /// Cross-check every construction; exit 1 if any check fails.
    Verify(CurveArgs),
    /// Weighted lattice-path counts.
    Paths {
        /// JSON array of {"dx","dy","w"} steps.
        #[arg(long, conflicts_with = "family")]
        steps: Option<String>,
        /// Weight of a first horizontal step from the origin.
        #[arg(long, allow_hyphen_values = true)]
        origin_override: Option<String>,
        /// Derive the step set from the curve instead.
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Binomial-transform count for `--family orbit`.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        r: i64,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        /// Also enumerate every path and fail on disagreement.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Hankel transform of a sequence ("1,2,3", "-" for stdin, "@file").
    Hankel {
        #[arg(allow_hyphen_values = true)]
        sequence: String,
        /// Number of determinants (default: as many as the terms allow).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Elliptic divisibility sequence W_0..W_n at P = (0,0).
    Eds {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 12)]
        n: usize,
    },
    /// Multiples P, 2P, ..., nP of P = (0,0).
    Points {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// J-fraction of a sequence, or of B^shift g from the multiples of P.
    Jfrac {
        #[arg(allow_hyphen_values = true)]
        sequence: Option<String>,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        shift: i64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Also expand the fraction back into a series.
        #[arg(long)]
        eval: bool,
    },
    /// Compare a sequence with an OEIS entry.
    Oeis {
        #[arg(long)]
        id: String,
        #[arg(allow_hyphen_values = true)]
        sequence: Option<String>,
        /// Compare a series computed here instead of a given sequence.
        #[arg(long, value_enum, conflicts_with = "sequence")]
        from: Option<SeriesSource>,
        #[command(flatten)]
        curve: CurveArgs,
    },
}

fn read_sequence(arg: &str) -> CliResult<Vec<Rational>> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?
    } else {
        arg.to_string()
    };
    let values = rational::parse_list(text.trim().trim_start_matches('[').trim_end_matches(']').replace('"', " ").as_str())?;
    if values.is_empty() {
        return Err(CliError::Input("empty sequence".into()));
    }
    Ok(values)
}

#[derive(Serialize)]
struct SomosForms {
    curve_form: SomosParams,
    appendix_form: SomosParams,
}

#[derive(Serialize)]
struct DeriveOutput {
    curve: CurveJson,
    order: usize,
    #[serde(with = "rational::serde_str::vec")]
    g: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    gamma: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    gamma_shift: Rational,
    steps_g: StepSet,
    steps_gamma: StepSet,
    a_matrix_g: AMatrix,
    a_matrix_gamma: AMatrix,
    somos: SomosForms,
    #[serde(with = "rational::serde_str::vec")]
    hankel: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    eds: Vec<Rational>,
}

fn derive(curve: &CurveParams, order: usize) -> CliResult<Output> {
    let g = pipeline::derive_g(curve, order)?;
    let gamma = pipeline::derive_gamma(curve, order)?;
    let count = order / 2;
    let hankel = transforms::hankel_transform(g.coeffs(), count)?;
    let am = pipeline::g_family(curve);
    let out = DeriveOutput {
        curve: curve.into(),
        order,
        g: g.coeffs().to_vec(),
        gamma: gamma.coeffs().to_vec(),
        gamma_shift: pipeline::gamma_shift(curve),
        steps_g: paths::stepset_for_g(curve),
        steps_gamma: paths::stepset_for_gamma(curve),
        a_matrix_gamma: pipeline::gamma_family(curve),
        somos: SomosForms { curve_form: transforms::somos_params(curve), appendix_form: transforms::somos_params_am(&am) },
        a_matrix_g: am,
        hankel,
        eds: curve.eds(count + 1).terms,
    };
    let mut text = output::Lines::default();
    let mut csv = output::Csv::default();
    let seqs = [("g", &out.g), ("gamma", &out.gamma), ("hankel", &out.hankel), ("eds", &out.eds)];
    for (name, s) in seqs {
        text.seq(name, s);
        csv.seq(name, s);
    }
    text.line("gamma_shift", rational::format(&out.gamma_shift));
    csv.seq("gamma_shift", std::slice::from_ref(&out.gamma_shift));
    for (name, set) in [("steps_g", &out.steps_g), ("steps_gamma", &out.steps_gamma)] {
        text.line(name, output::steps_text(set));
        for s in &set.steps {
            csv.record([name.to_string(), s.dx.to_string(), s.dy.to_string(), rational::format(&s.w)]);
        }
        if let Some(o) = &set.origin_override {
            csv.record([format!("{name}_origin_override"), rational::format(o)]);
        }
    }
    for (name, p) in [("somos_curve_form", &out.somos.curve_form), ("somos_appendix_form", &out.somos.appendix_form)] {
        text.line(name, format!("r = {}, s = {}", rational::format(&p.r), rational::format(&p.s)));
        csv.record([name.to_string(), rational::format(&p.r), rational::format(&p.s)]);
    }
    Output::new(&out, text.finish(), csv.finish())
}

fn verify(curve: &CurveParams, order: usize, format: Format) -> CliResult<()> {
    let report: VerifyReport = pipeline::full_verify(curve, order)?;
    let mut text = output::Lines::default();
    let mut csv = output::Csv::default();
    csv.record(["name", "pass", "detail"]);
    for c in &report.checks {
        text.raw(format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
        csv.record([c.name.clone(), c.pass.to_string(), c.detail.clone()]);
    }
    Output::new(&report, text.finish(), csv.finish())?.print(format);
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("failed checks: {}", failed.join(", "))))
    }
}

#[derive(Serialize)]
struct PathsOutput {
    steps: StepSet,
    #[serde(with = "rational::serde_str::matrix")]
    rows: Triangle,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force_agrees: Option<bool>,
}

#[allow(clippy::too_many_arguments)]
fn paths_cmd(
    steps: Option<&str>,
    origin_override: Option<&str>,
    family: Option<Family>,
    r: i64,
    rows: usize,
    brute_force: bool,
    curve: &CurveArgs,
    format: Format,
) -> CliResult<()> {
    let set = match (steps, family) {
        (Some(json), None) => {
            let steps: Vec<Step> =
                serde_json::from_str(json).map_err(|e| CliError::Input(format!("--steps: {e}")))?;
            let o = origin_override.map(rational::parse).transpose()?;
            StepSet::new(steps, o)?
        }
        (None, Some(family)) => {
            let c = curve.curve()?;
            match family {
                Family::G => paths::stepset_for_g(&c),
                Family::Gamma => paths::stepset_for_gamma(&c),
                Family::Orbit => paths::stepset_orbit(&c, r),
            }
        }
        _ => return Err(CliError::Input("give either --steps or --family with a curve".into())),
    };
    let triangle = paths::dp_count(&set, rows);
    let agrees = if brute_force {
        let n_max = rows.checked_sub(1).ok_or_else(|| CliError::Input("--rows must be positive".into()))?;
        Some(paths::brute_force_table(&set, n_max)? == triangle)
    } else {
        None
    };
    let mut text = output::Lines::default();
    let mut csv = output::Csv::default();
    for row in &triangle {
        text.raw(rational::format_list(row));
        csv.values(row);
    }
    if let Some(a) = agrees {
        text.line("brute_force_agrees", a.to_string());
    }
    let out = PathsOutput { steps: set, rows: triangle, brute_force_agrees: agrees };
    Output::new(&out, text.finish(), csv.finish())?.print(format);
    match agrees {
        Some(false) => Err(CliError::Check("dynamic programming and enumeration disagree".into())),
        _ => Ok(()),
    }
}

fn sequence_output(values: &[Rational]) -> CliResult<Output> {
    let mut csv = output::Csv::default();
    csv.values(values);
    Output::new(&output::Seq(values), rational::format_list(values), csv.finish())
}

#[derive(Serialize)]
struct PointsOutput {
    points: Vec<CurvePoint>,
    torsion_order: Option<usize>,
}

fn points(curve: &CurveParams, n: usize) -> CliResult<Output> {
    let m = curve.multiples(n);
    let mut text = output::Lines::default();
    let mut csv = output::Csv::default();
    csv.record(["k", "x", "y"]);
    for (i, p) in m.points.iter().enumerate() {
        match p {
            CurvePoint::Affine { x, y } => {
                text.raw(format!("{}P = ({}, {})", i + 1, rational::format(x), rational::format(y)));
                csv.record([(i + 1).to_string(), rational::format(x), rational::format(y)]);
            }
            CurvePoint::Infinity => {
                text.raw(format!("{}P = O", i + 1));
                csv.record([(i + 1).to_string(), "inf".into(), "inf".into()]);
            }
        }
    }
    if let Some(t) = m.torsion_order {
        text.line("torsion_order", t.to_string());
    }
    Output::new(&PointsOutput { points: m.points, torsion_order: m.torsion_order }, text.finish(), csv.finish())
}

#[derive(Serialize)]
struct JfracOutput {
    #[serde(flatten)]
    fraction: JFraction,
    #[serde(skip_serializing_if = "Option::is_none", with = "output::opt_seq")]
    series: Option<Vec<Rational>>,
}

fn jfrac(jf: JFraction, eval: bool) -> CliResult<Output> {
    let series = if eval {
        Some(transforms::jfrac_eval(&jf, jf.valid_order())?.into_coeffs())
    } else {
        None
    };
    let mut text = output::Lines::default();
    let mut csv = output::Csv::default();
    text.seq("b", &jf.b);
    text.seq("lam", &jf.lam);
    csv.seq("b", &jf.b);
    csv.seq("lam", &jf.lam);
    if let Some(s) = &series {
        text.seq("series", s);
        csv.seq("series", s);
    }
    Output::new(&JfracOutput { fraction: jf, series }, text.finish(), csv.finish())
}

fn oeis_cmd(
    id: &str,
    sequence: Option<&str>,
    from: Option<SeriesSource>,
    curve: &CurveArgs,
    order: usize,
    offline: bool,
    format: Format,
) -> CliResult<()> {
    let given = match (sequence, from) {
        (Some(s), _) => read_sequence(s)?,
        (None, Some(SeriesSource::Catalan)) => Series::catalan(order).into_coeffs(),
        (None, Some(SeriesSource::G)) => pipeline::derive_g(&curve.curve()?, order)?.into_coeffs(),
        (None, Some(SeriesSource::Gamma)) => pipeline::derive_gamma(&curve.curve()?, order)?.into_coeffs(),
        (None, None) => return Err(CliError::Input("give a sequence or --from".into())),
    };
    let cmp = oeis::compare(id, &given, offline)?;
    let summary = match cmp.first_mismatch {
        None => format!("{} match: {} terms at offset {} ({})", cmp.id, cmp.compared, cmp.offset, cmp.source.as_str()),
        Some(i) => {
            format!("{} mismatch at index {i}: {} terms compared ({})", cmp.id, cmp.compared, cmp.source.as_str())
        }
    };
    let mut csv = output::Csv::default();
    csv.record(["id", "match", "offset", "compared", "first_mismatch"]);
    csv.record([
        cmp.id.clone(),
        cmp.matches.to_string(),
        cmp.offset.to_string(),
        cmp.compared.to_string(),
        cmp.first_mismatch.map(|i| i.to_string()).unwrap_or_default(),
    ]);
    Output::new(&cmp, summary, csv.finish())?.print(format);
    if cmp.matches {
        Ok(())
    } else {
        Err(CliError::Check(format!("{} does not match", cmp.id)))
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let format = cli.format;
    if cli.order < 2 {
        return Err(CliError::Input("--order must be at least 2".into()));
    }
    match &cli.command {
        Command::Derive(c) => derive(&c.curve()?, cli.order)?.print(format),
        Command::Verify(c) => return verify(&c.curve()?, cli.order, format),
        Command::Paths { steps, origin_override, family, r, rows, brute_force, curve } => {
            return paths_cmd(
                steps.as_deref(),
                origin_override.as_deref(),
                *family,
                *r,
                *rows,
                *brute_force,
                curve,
                format,
            )
        }
        Command::Hankel { sequence, count } => {
            let seq = read_sequence(sequence)?;
            let count = count.unwrap_or(seq.len().div_ceil(2));
            sequence_output(&transforms::hankel_transform(&seq, count)?)?.print(format)
        }
        Command::Eds { curve, n } => sequence_output(&curve.curve()?.eds(*n).terms)?.print(format),
        Command::Points { curve, n } => points(&curve.curve()?, *n)?.print(format),
        Command::Jfrac { sequence, curve, shift, depth, eval } => {
            let jf = match sequence {
                Some(s) if !curve.given() => transforms::jfrac_extract(&Series::new(read_sequence(s)?), *depth)?,
                None if curve.given() => transforms::jfrac_from_points(&curve.curve()?, *shift, *depth)?,
                _ => return Err(CliError::Input("give either a sequence or a curve".into())),
            };
            jfrac(jf, *eval)?.print(format)
        }
        Command::Oeis { id, sequence, from, curve } => {
            return oeis_cmd(id, sequence.as_deref(), *from, curve, cli.order, cli.offline, format)
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
