//! Command-line front end. Every verb resolves its options (defaults
//! included), runs the kernels and produces a [`Report`]; the binary only
//! parses `argv` and maps the report to an exit code.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::numfield::{NfContext, NumberFieldElement};
use crate::arith::{ArithError, Coeff, FieldSpec, LocalField, LocalRational, ResidueElement, Series};
use crate::fgl::{
    self, additive_log, araki::coordinates_from_log, hazewinkel_log, honda_log, multiplicative_log, CheckReport,
    Convention, FglError, FormalGroupLaw, Provenance,
};
use crate::groups::{self, FiniteGroup, GroupError};
use crate::hkr::{self, Budgets, Character, HkrError};

pub mod corpus;
pub mod suite;

/// Output format of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Which logarithm a formal-group verb works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogKind {
    Hazewinkel,
    Honda,
    Additive,
    Multiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// `pi X + X^q`
    Standard,
    /// `(1 + X)^p - 1`
    Binomial,
}

#[derive(Parser, Debug)]
#[command(name = "lt-hkr", version, about = "Formal group laws over p-adic fields and character schemes of finite groups")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct LawArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Height parameter: `q = p^n`.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = LogKind::Hazewinkel)]
    pub kind: LogKind,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Coefficients of a logarithm.
    FglLog {
        #[command(flatten)]
        #[serde(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = 20)]
        degree: usize,
    },
    /// Functional equation and integrality of `log(pX)/p`.
    FglVerify {
        #[command(flatten)]
        #[serde(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = 50)]
        degree: usize,
    },
    /// The law `exp(log X + log Y)` with its axiom checks.
    FglLaw {
        #[command(flatten)]
        #[serde(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = 20)]
        degree: usize,
    },
    /// The endomorphism `[a]`, optionally checked against `[b]`.
    FglEndo {
        #[command(flatten)]
        #[serde(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = 20)]
        degree: usize,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<i64>,
        /// Work in `Q[x]/(u)` for this field and use `a = x`.
        #[arg(long)]
        field: Option<String>,
    },
    /// Araki coordinates `v_k`.
    FglAraki {
        #[command(flatten)]
        #[serde(flatten)]
        law: LawArgs,
        /// Truncation; defaults to `p^(n+1)`.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = ConventionArg::Araki)]
        convention: ConventionArg,
    },
    /// A Lubin-Tate law over a local field.
    LtConstruct {
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = 16)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = SeriesKind::Standard)]
        series: SeriesKind,
        /// Working precision override.
        #[arg(long)]
        precision: Option<u32>,
        /// Integer endomorphism parameters.
        #[arg(long = "endo", allow_negative_numbers = true)]
        endo: Vec<i64>,
        /// Also build `[x]` for the tower generator `x`.
        #[arg(long)]
        generator: bool,
    },
    /// Genus of the Hazewinkel law on `CP^m`.
    Genus {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Weierstrass degree of the `r`-fold iterate of `[p]`.
    Torsion {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Truncation; defaults to `max(p^(rn), 20)`.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Order, element orders and conjugacy classes of a group.
    GroupInfo {
        #[arg(long)]
        group: String,
    },
    /// Classes of commuting tuples modelling `Hom(o_L, G)/conj`.
    HkrClasses {
        #[arg(long)]
        field: String,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = groups::DEFAULT_TUPLE_BUDGET)]
        tuple_budget: u64,
    },
    /// Decomposition into closed points under the unit (and Frobenius) action.
    HkrScheme {
        #[arg(long)]
        field: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        frobenius: bool,
        #[arg(long, default_value_t = groups::DEFAULT_TUPLE_BUDGET)]
        tuple_budget: u64,
        #[arg(long, default_value_t = crate::arith::DEFAULT_ENUMERATION_CAP)]
        enumeration_cap: u64,
    },
    /// Number of classes.
    HkrRank {
        #[arg(long)]
        field: String,
        #[arg(long)]
        group: String,
    },
    /// Oracle counts, well-definedness, level stability and equivariance.
    HkrCheck {
        #[arg(long)]
        field: String,
        #[arg(long)]
        group: String,
        /// Character file; every character is checked when omitted.
        #[arg(long)]
        character: Option<PathBuf>,
        #[arg(long)]
        level: Option<u32>,
    },
    /// Runs the registered checks over a corpus.
    Suite {
        /// Restrict to an area (fgl, groups, hkr, cli) or criterion number.
        #[arg(long)]
        only: Vec<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Seconds.
        #[arg(long, default_value_t = 600)]
        time_limit: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionArg {
    Araki,
    Hazewinkel,
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::FglLog { .. } => "fgl-log",
            Command::FglVerify { .. } => "fgl-verify",
            Command::FglLaw { .. } => "fgl-law",
            Command::FglEndo { .. } => "fgl-endo",
            Command::FglAraki { .. } => "fgl-araki",
            Command::LtConstruct { .. } => "lt-construct",
            Command::Genus { .. } => "genus",
            Command::Torsion { .. } => "torsion",
            Command::GroupInfo { .. } => "group-info",
            Command::HkrClasses { .. } => "hkr-classes",
            Command::HkrScheme { .. } => "hkr-scheme",
            Command::HkrRank { .. } => "hkr-rank",
            Command::HkrCheck { .. } => "hkr-check",
            Command::Suite { .. } => "suite",
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    #[error("{0}")]
    Input(String),
    /// Input rejected by a mathematical validation: exit 1.
    #[error("{check}: {message}")]
    Invalid { check: String, message: String },
}

impl From<FglError> for CliError {
    fn from(e: FglError) -> Self {
        match e {
            FglError::IntegralityViolation { .. }
            | FglError::NotPTypical { .. }
            | FglError::NotPTypifiable { .. }
            | FglError::HeightMismatch { .. }
            | FglError::PrecisionExhausted { .. }
            | FglError::Arith(ArithError::ReversionFailed(_)) => CliError::Invalid {
                check: "formal group law".into(),
                message: e.to_string(),
            },
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotAssociative { .. }
            | GroupError::NoIdentity
            | GroupError::NoInverse(_)
            | GroupError::ActionNotWellDefined => CliError::Invalid {
                check: "group validation".into(),
                message: e.to_string(),
            },
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<HkrError> for CliError {
    fn from(e: HkrError) -> Self {
        match e {
            HkrError::Group(g) => g.into(),
            HkrError::Arith(a) => a.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// The outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub options: Value,
    pub checks: Vec<CheckReport>,
    pub result: Value,
    /// Human-readable body used by the text format.
    pub lines: Vec<String>,
}

impl Report {
    fn new(command: &str, options: Value) -> Self {
        Report {
            command: command.to_string(),
            options,
            checks: Vec::new(),
            result: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "options": self.options,
            "pass": self.pass(),
            "checks": self.checks.iter().map(CheckReport::json).collect::<Vec<_>>(),
            "result": self.result,
        })
    }

    /// Pretty JSON; keys are sorted, so the bytes depend only on the content.
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn text_string(&self) -> String {
        let mut out = format!("# lt-hkr {}", self.command);
        if let Value::Object(map) = &self.options {
            for (k, v) in map {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!(" {k}={v}"));
            }
        }
        out.push('\n');
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        // the suite prints its own matrix
        let checks: &[CheckReport] = if self.command == "suite" { &[] } else { &self.checks };
        for c in checks {
            let status = if c.pass { "pass".to_string() } else { format!("FAIL at {}", c.first_failure.map_or("?".into(), |d| d.to_string())) };
            out.push_str(&format!("{}: {status}\n", c.check));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text_string(),
            Format::Json => self.json_string(),
        }
    }
}

fn options_json(cli_format: Format, output: &Option<PathBuf>, command: &Command) -> Value {
    let mut options = serde_json::to_value(command).expect("options serialize");
    if let Value::Object(map) = &mut options {
        map.insert("format".into(), json!(cli_format));
        map.insert("output".into(), json!(output.as_ref().map(|p| p.display().to_string())));
    }
    options
}

/// Resolves a field argument: a JSON file, or `Q<p>` for `Q_p` at the
/// default precision.
pub fn resolve_field(arg: &str) -> Result<Arc<LocalField>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        let spec: FieldSpec =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return Ok(spec.build()?);
    }
    let p = arg
        .strip_prefix("Q_")
        .or_else(|| arg.strip_prefix('Q'))
        .and_then(|s| s.parse::<u64>().ok())
        .ok_or_else(|| CliError::Input(format!("no field file or Q<p> name: {arg}")))?;
    Ok(LocalField::qp(p, crate::arith::DEFAULT_PRECISION)?)
}

/// Resolves a group argument: a JSON file, or one of the built-in names
/// `Z<n>`, `S<n>`, `D<n>`, `A4`, `Q8`, `Z4xZ2`.
pub fn resolve_group(arg: &str) -> Result<Arc<FiniteGroup>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Arc::new(groups::load_group_file(path)?));
    }
    let small = |s: &str| s.parse::<usize>().ok().filter(|&n| (1..=64).contains(&n));
    let g = match arg {
        "A4" => FiniteGroup::alternating4(),
        "Q8" => FiniteGroup::quaternion(),
        "Z4xZ2" => FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)),
        _ => match (arg.get(..1), arg.get(1..).and_then(small)) {
            (Some("Z"), Some(n)) => FiniteGroup::cyclic(n),
            (Some("S"), Some(n)) if n <= 6 => FiniteGroup::symmetric(n),
            (Some("D"), Some(n)) if n >= 3 => FiniteGroup::dihedral(n),
            _ => return Err(CliError::Input(format!("no group file or built-in group: {arg}"))),
        },
    };
    Ok(Arc::new(g))
}

fn log_of(kind: LogKind, p: u64, n: u32, degree: usize) -> (Series<LocalRational>, Provenance) {
    match kind {
        LogKind::Hazewinkel => (hazewinkel_log(p, n, degree), Provenance::Hazewinkel { p, n }),
        LogKind::Honda => (honda_log(p, n, degree), Provenance::Logarithm { name: format!("honda({p},{n})") }),
        LogKind::Additive => (additive_log(p, degree), Provenance::Logarithm { name: "additive".into() }),
        LogKind::Multiplicative => {
            (multiplicative_log(p, degree), Provenance::Logarithm { name: "multiplicative".into() })
        }
    }
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if crate::arith::is_prime(p) {
        Ok(())
    } else {
        Err(ArithError::NotPrime(p).into())
    }
}

fn build_law(law: &LawArgs, degree: usize) -> Result<FormalGroupLaw<LocalRational>, CliError> {
    check_prime(law.p)?;
    let (log, provenance) = log_of(law.kind, law.p, law.n, degree);
    Ok(fgl::law_from_log(&log, degree, law.p, provenance)?)
}

fn series_lines<C: Coeff>(s: &Series<C>) -> Vec<String> {
    s.terms()
        .map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .zip(["X", "Y", "Z"])
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            format!("  {}: {c}", mono.join(" "))
        })
        .collect()
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> (u8, String, Option<PathBuf>, Format)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                return (0, rendered, None, Format::Text);
            }
            eprint!("{rendered}");
            return (2, String::new(), None, Format::Text);
        }
    };
    let format = cli.format;
    let output = cli.output.clone();
    match execute(&cli) {
        Ok(report) => (report.exit_code(), report.render(format), output, format),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            (2, String::new(), None, format)
        }
        Err(CliError::Invalid { .. }) => unreachable!("execute folds validation failures into the report"),
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, body, output, _) = run(argv);
    match output {
        Some(path) if !body.is_empty() => {
            if let Err(e) = std::fs::write(&path, &body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        _ => print!("{body}"),
    }
    ExitCode::from(code)
}

/// Runs a parsed command. Validation failures become failing checks.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let options = options_json(cli.format, &cli.output, &cli.command);
    let mut report = Report::new(cli.command.verb(), options);
    match dispatch(&cli.command, &mut report) {
        Ok(()) => Ok(report),
        Err(CliError::Invalid { check, message }) => {
            report.lines.push(format!("error: {message}"));
            report.result = json!({"error": message});
            report.checks.push(CheckReport::exact(check, Some(0)));
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn dispatch(command: &Command, report: &mut Report) -> Result<(), CliError> {
    match command {
        Command::FglLog { law, degree } => {
            check_prime(law.p)?;
            let (log, _) = log_of(law.kind, law.p, law.n, *degree);
            report.lines = series_lines(&log);
            report.result = log.to_json();
        }
        Command::FglVerify { law, degree } => {
            check_prime(law.p)?;
            let (log, _) = log_of(law.kind, law.p, law.n, *degree);
            let q = law.p.pow(law.n);
            report.checks.push(fgl::verify_functional_equation(&log, law.p, q, *degree));
            let (g, integral) = fgl::integral_g(&log, law.p);
            report.checks.push(integral);
            report.result = json!({"g": g.to_json(), "truncation": degree});
        }
        Command::FglLaw { law, degree } => {
            let f = build_law(law, *degree)?;
            report.checks.extend(fgl::verify_axioms(&f));
            report.lines.push(format!("height: {}", f.height().map_or("unknown".into(), |h| h.to_string())));
            report.lines.extend(series_lines(&f.law().truncated((*degree).min(6))));
            report.result = f.to_json();
        }
        Command::FglEndo { law, degree, a, b, field } => {
            let f = build_law(law, *degree)?;
            match field {
                None => {
                    let ar = LocalRational::from_int(*a, law.p);
                    let ea = fgl::endomorphism(&f, &ar)?;
                    if let Some(b) = b {
                        let br = LocalRational::from_int(*b, law.p);
                        report.checks.push(fgl::verify_ring_hom(&f, &ar, &br, *degree)?);
                    }
                    report.lines = series_lines(&ea.truncated((*degree).min(8)));
                    report.result = json!({"a": a, "endomorphism": ea.to_json()});
                }
                Some(name) => {
                    let field = resolve_field(name)?;
                    if field.p() != law.p {
                        return Err(CliError::Input(format!("field has p = {}, law has p = {}", field.p(), law.p)));
                    }
                    let ctx = NfContext::from_field(&field);
                    let nf = f.to_number_field(&ctx);
                    let x = NumberFieldElement::generator(&ctx);
                    let ex = fgl::endomorphism(&nf, &x)?;
                    if let Some(b) = b {
                        let bn = x.from_i64_like(*b);
                        report.checks.push(fgl::verify_ring_hom(&nf, &x, &bn, *degree)?);
                    }
                    report.lines = series_lines(&ex.truncated((*degree).min(8)));
                    report.result = json!({"a": x.json(), "endomorphism": ex.to_json()});
                }
            }
        }
        Command::FglAraki { law, degree, convention } => {
            let p = law.p as usize;
            let d = degree.unwrap_or(p.pow(law.n + 1));
            let f = build_law(law, d)?;
            let kmax = (0u32..).take_while(|&k| p.pow(k) <= d).last().unwrap_or(0);
            let coords = match convention {
                ConventionArg::Araki => fgl::araki_coordinates(&f, kmax)?,
                ConventionArg::Hazewinkel => coordinates_from_log(&f, kmax, Convention::Hazewinkel)?,
            };
            for (k, v) in coords.values.iter().enumerate() {
                report.lines.push(format!("  v_{k} = {v}"));
            }
            report.result = coords.json();
        }
        Command::LtConstruct { field, degree, series, precision, endo, generator } => {
            let mut k = resolve_field(field)?;
            if let Some(n) = precision {
                if *n == 0 {
                    return Err(ArithError::ZeroPrecision.into());
                }
                k = k.with_precision(*n);
            }
            let f = match series {
                SeriesKind::Standard => fgl::standard_uniformizer_series(&k, *degree),
                SeriesKind::Binomial => {
                    if !k.is_unramified() || k.f() != 1 {
                        return Err(CliError::Input("the binomial series needs the field Q_p".into()));
                    }
                    fgl::binomial_series(&k, *degree)
                }
            };
            let mut params: Vec<ResidueElement> =
                endo.iter().map(|&a| ResidueElement::from_int(&k, &a.into())).collect();
            if *generator {
                params.push(ResidueElement::generator(&k));
            }
            let lt = fgl::lubin_tate_law(&k, &f, *degree, &params)?;
            report.checks.extend(lt.checks.iter().cloned());
            report.lines.push(format!("field: {}", k.label()));
            report.lines.push(format!("precision achieved: {} p-adic digits", lt.precision()));
            report.lines.push(format!(
                "weierstrass degree of [pi]: {}",
                lt.law.p_series().weierstrass_degree().map_or("none".into(), |d| d.to_string())
            ));
            report.result = lt.to_json();
        }
        Command::Genus { p, n, m } => {
            check_prime(*p)?;
            let v = fgl::genus_value(*p, *n, *m);
            report.checks.push(fgl::verify_genus(*p, *n, *m));
            report.lines.push(v.to_string());
            report.result = json!({"m": m, "value": v.json()});
        }
        Command::Torsion { p, n, r, degree } => {
            check_prime(*p)?;
            let expected = (*p as usize).pow(r * n);
            let d = degree.unwrap_or(expected.max(20));
            let f = FormalGroupLaw::hazewinkel(*p, *n, d)?;
            let order = fgl::torsion_order(&f, *r)?;
            report.lines.push(order.to_string());
            report.checks.push(CheckReport::exact(
                format!("torsion order = p^(r n) = {expected}"),
                (order != expected).then_some(order),
            ));
            report.result = json!({"r": r, "torsion_order": order, "truncation": d});
        }
        Command::GroupInfo { group } => {
            let g = resolve_group(group)?;
            report.lines.push(format!("{}: order {}", g.name(), g.order()));
            for c in g.conjugacy_classes() {
                report.lines.push(format!("  class of {}: size {}, order {}", c[0], c.len(), g.element_order(c[0])));
            }
            report.result = g.to_json();
        }
        Command::HkrClasses { field, group, tuple_budget } => {
            let k = resolve_field(field)?;
            let g = resolve_group(group)?;
            let budgets = Budgets { tuple_budget: *tuple_budget, ..Budgets::default() };
            let s = hkr::hom_classes(&k, &g, budgets)?;
            report.lines.push(format!("{} classes", s.len()));
            for c in &s.classes {
                report.lines.push(format!("  {:?} ({} tuples)", c.rep, c.size));
            }
            report.result = s.to_json();
        }
        Command::HkrScheme { field, group, level, frobenius, tuple_budget, enumeration_cap } => {
            let k = resolve_field(field)?;
            let g = resolve_group(group)?;
            let budgets = Budgets { tuple_budget: *tuple_budget, enumeration_cap: *enumeration_cap };
            let d = if *frobenius {
                hkr::frobenius_orbits(&k, &g, *level, budgets)?
            } else {
                hkr::unit_orbits(&k, &g, *level, budgets)?
            };
            report.lines.push(format!("degrees: {:?}", d.degrees()));
            for pt in &d.points {
                report.lines.push(format!("  {:?}: degree {}, stabilizer {}", pt.rep, pt.degree, pt.stabilizer_order));
            }
            let sum: usize = d.degrees().iter().sum();
            report.checks.push(CheckReport::exact(
                "sum of degrees = number of classes",
                (sum != d.total_classes).then_some(sum),
            ));
            report.result = d.to_json();
        }
        Command::HkrRank { field, group } => {
            let k = resolve_field(field)?;
            let g = resolve_group(group)?;
            let r = hkr::rank(&k, &g, Budgets::default())?;
            report.lines.push(r.to_string());
            report.result = json!({"rank": r});
        }
        Command::HkrCheck { field, group, character, level } => {
            let k = resolve_field(field)?;
            let g = resolve_group(group)?;
            hkr_check(&k, &g, character.as_deref(), *level, report)?;
        }
        Command::Suite { only, corpus, time_limit } => {
            let opts = suite::SuiteOptions {
                only: only.clone(),
                corpus: corpus.clone(),
                time_limit: std::time::Duration::from_secs(*time_limit),
            };
            let out = suite::run_suite(&opts).map_err(|e| CliError::Input(e.to_string()))?;
            report.lines = out.text_lines();
            report.checks = out.summary_checks();
            report.result = out.to_json();
        }
    }
    Ok(())
}

fn hkr_check(
    field: &Arc<LocalField>,
    g: &Arc<FiniteGroup>,
    character: Option<&Path>,
    level: Option<u32>,
    report: &mut Report,
) -> Result<(), CliError> {
    let budgets = Budgets::default();
    let n = field.degree();
    let p = field.p();
    let s = hkr::hom_classes(field, g, budgets)?;
    let oracle = groups::centralizer_count_oracle(g, n, p, budgets.tuple_budget)?;
    let burnside = groups::burnside_count(g, s.tuples())?;
    let count = s.len() as u64;
    report.checks.push(CheckReport::exact(
        "class count = centralizer recursion = Burnside average",
        (oracle != count || burnside != count).then_some(s.len()),
    ));
    let r = level.unwrap_or_else(|| hkr::default_level(field, g));
    let here = hkr::unit_orbits(field, g, Some(r), budgets)?;
    let bumped = hkr::unit_orbits(field, g, Some(r + 1), budgets)?;
    let sum: usize = here.degrees().iter().sum();
    report.checks.push(CheckReport::exact(
        "unit action is well defined and the degrees sum to the class count",
        (sum != s.len()).then_some(sum),
    ));
    report.checks.push(CheckReport::exact(
        format!("decomposition at level {r} equals that at level {}", r + 1),
        (here.degrees() != bumped.degrees()).then_some(r as usize + 1),
    ));
    let characters = match character {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            vec![Character::from_json(&value)?]
        }
        None => hkr::enumerate_characters(g)?,
    };
    if field.is_unramified() {
        for lambda in &characters {
            report.checks.push(hkr::equivariance_check(field, lambda, &s, budgets.enumeration_cap)?);
        }
    } else {
        report.lines.push("equivariance: skipped (the trace identification needs an unramified field)".into());
        for lambda in &characters {
            hkr::character_pullback(lambda, &s)?;
        }
    }
    report.lines.push(format!("{} classes, degrees {:?}", s.len(), here.degrees()));
    report.result = json!({
        "classes": s.len(),
        "degrees": here.degrees(),
        "level_r": r,
        "characters": characters.iter().map(Character::to_json).collect::<Vec<_>>(),
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (u8, Value) {
        let mut argv = vec!["lt-hkr"];
        argv.extend_from_slice(args);
        argv.extend_from_slice(&["--format", "json"]);
        let (code, body, _, _) = run(argv);
        (code, serde_json::from_str(&body).unwrap_or(Value::Null))
    }

    #[test]
    fn verbs_and_exit_codes() {
        let (code, v) = run_json(&["fgl-verify", "--p", "2", "--n", "1", "--degree", "50"]);
        assert_eq!(code, 0);
        assert_eq!(v["options"]["degree"], json!(50));
        assert_eq!(v["options"]["kind"], json!("hazewinkel"));
        let (code, _) = run_json(&["fgl-verify", "--kind", "honda", "--degree", "10"]);
        assert_eq!(code, 1);
        let (code, v) = run_json(&["genus", "--p", "3", "--n", "1", "--m", "2"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["value"]["num"], json!("-1"));
        let (code, v) = run_json(&["hkr-rank", "--field", "Q3", "--group", "S3"]);
        assert_eq!((code, v["result"]["rank"].clone()), (0, json!(2)));
        let (code, _) = run_json(&["fgl-law", "--frobnicate"]);
        assert_eq!(code, 2);
        let (code, _) = run_json(&["no-such-verb"]);
        assert_eq!(code, 2);
        let (code, _) = run_json(&["hkr-rank", "--field", "Q4", "--group", "S3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn text_output() {
        let (code, body, _, _) = run(["lt-hkr", "genus", "--p", "3", "--n", "1", "--m", "2"]);
        assert_eq!(code, 0);
        assert_eq!(body.lines().nth(1), Some("-1/8"));
        let (_, body, _, _) = run(["lt-hkr", "fgl-verify", "--p", "2", "--n", "1", "--degree", "50"]);
        assert!(body.contains("functional equation p*log(X) = log(pX) + log(X^q): pass"));
    }
}
