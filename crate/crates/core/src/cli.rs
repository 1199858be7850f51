//! Command-line front end.
//!
//! Every subcommand produces an [`Output`] carrying a JSON value, a text
//! rendering and, for tables, CSV. Errors are reported as
//! `{"error": {"code": ..., "message": ...}}` on stdout with exit code 2 for
//! usage and configuration problems and 1 for everything else.

use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::acceptance::{self, Outcome, SuiteConfig};
use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::genus::{
    a_hat_zeta_parameters, chern_character, coaction, coaction_is_coassociative, deform_genus,
    diagonal_vanishing_check, evaluate_certified, gamma_exponential, genus, genus_from_exponential,
    morphism_module_series, primitivity_check, zeta_values, DeformationParameters, GenusSeries, ManifoldModel,
};
use crate::mzv::{homomorphism_check, is_admissible, mzv_eval, zeta_specialize};
use crate::poly::GradedPolynomial;
use crate::qsym::{
    deconcatenation, free_algebra_hilbert, lyndon_generators, pairing, GeneratorProfile, HilbertFlavor, NSymm, QSymm,
};
use crate::rational::{parse_rational, Rational};
use crate::series::UniSeries;
use crate::symm::{
    a_classes, check_identity, convert, coproduct, d_classes, indecomposables, primitive_space, GeneratorConvention,
    HopfModel, Identity, SymmBasis, SymmFn,
};
use crate::tor::{coefficient_ring_series, parse_algebra, tor_via_bar, CoefficientRing, TorCell};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format {s:?} (expected json, csv or text)"))),
        }
    }
}

/// Effective settings after merging flags, config file and defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub degree: u32,
    pub target_error: f64,
    pub convention: GeneratorConvention,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = SuiteConfig::default();
        RunConfig {
            degree: suite.degree,
            target_error: suite.target_error,
            convention: suite.convention,
            format: None,
            output: None,
            seed: suite.seed,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Config("degree must be at least 1".into()));
        }
        if !(self.target_error > 0.0 && self.target_error.is_finite()) {
            return Err(Error::Config("target error must be positive and finite".into()));
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "target_error": self.target_error,
            "convention": self.convention.name(),
            "format": self.format,
            "output": self.output.as_ref().map(|p| p.display().to_string()),
            "seed": self.seed,
        })
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    degree: Option<u32>,
    target_error: Option<f64>,
    convention: Option<String>,
    format: Option<String>,
    output: Option<PathBuf>,
    seed: Option<u64>,
}

fn load_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))
}

#[derive(Debug, Parser)]
#[command(name = "gtalg", version, about = "Exact graded algebra for characteristic classes and genera")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with degree, target_error, convention, format, output, seed.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Truncation degree D.
    #[arg(long, short = 'D', global = true)]
    pub degree: Option<u32>,
    /// Target error for floating-point results.
    #[arg(long = "target-error", global = true)]
    pub target_error: Option<f64>,
    /// Generator convention: k>=0 (default) or i>0.
    #[arg(long, global = true)]
    pub convention: Option<String>,
    /// json, csv or text.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write the result here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetric functions.
    #[command(subcommand)]
    Symm(SymmCommand),
    /// Quasisymmetric and noncommutative symmetric functions.
    #[command(subcommand)]
    Qsymm(QsymmCommand),
    /// Multiple zeta values.
    #[command(subcommand)]
    Mzv(MzvCommand),
    /// Tor of a graded algebra via the bar construction.
    Tor {
        /// exterior:5,9 | squarezero:5,9 | trivial
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Dimension tables of the coefficient rings.
    Series {
        /// sOmega, THH or KTheoryFiber.
        #[arg(long)]
        which: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Genera, Chern characters and deformations on manifold models.
    #[command(subcommand)]
    Genus(GenusCommand),
    /// Coaction of the polynomial coefficient ring on a cohomology class.
    Coaction {
        #[command(flatten)]
        manifold: ManifoldArg,
        /// Class in the model's generators, e.g. "x" or "1 + x^2".
        #[arg(long, default_value = "1")]
        class: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Runs the verification suite.
    Acceptance {
        /// Comma-separated check ids to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SymmCommand {
    /// Rewrites a symmetric function in another basis.
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        expr: String,
    },
    /// Checks one of the built-in identities through a weight.
    IdentityCheck {
        /// d-classes, chern-newton or a-classes.
        #[arg(long)]
        which: String,
        #[arg(long = "max-weight")]
        max_weight: Option<u32>,
    },
    /// Coproduct, in the elementary basis.
    Coproduct {
        #[arg(long, default_value = "E")]
        basis: String,
        #[arg(long)]
        expr: String,
    },
    /// Basis of the primitives in one weight.
    Primitives {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value = "bumodso")]
        model: String,
    },
    /// Dimension of the indecomposables in one weight.
    Indecomposables {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value = "bumodso")]
        model: String,
    },
    /// Components of the d- or a-classes through a weight.
    Classes {
        /// d-classes or a-classes.
        #[arg(long)]
        which: String,
        #[arg(long)]
        bound: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum QsymmCommand {
    /// Quasi-shuffle product, e.g. --left "M(1)" --right "M(2)".
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Deconcatenation coproduct.
    Coproduct {
        #[arg(long)]
        expr: String,
    },
    /// Duality pairing of a noncommutative word sum with a quasisymmetric function.
    Pair {
        #[arg(long)]
        nsymm: String,
        #[arg(long)]
        qsymm: String,
    },
    /// Lyndon compositions of one degree.
    Lyndon {
        #[arg(long)]
        degree: u32,
        /// all | arithmetic:S:T | 3,5,7
        #[arg(long, default_value = "all")]
        profile: String,
    },
    /// Hilbert series of the free algebra on a profile.
    Hilbert {
        #[arg(long, default_value = "all")]
        profile: String,
        /// associative, lie or polynomial-on-lyndon.
        #[arg(long, default_value = "associative")]
        flavor: String,
        #[arg(long)]
        bound: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MzvCommand {
    /// Certified value of one multizeta index.
    Eval {
        #[arg(long)]
        index: String,
        #[arg(long)]
        error: Option<f64>,
    },
    /// Evaluates a quasisymmetric function such as "M(2) + 2*M(1,2)".
    Specialize {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        error: Option<f64>,
    },
    /// Compares the value of a product with the product of the values.
    Stuffle {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct ManifoldArg {
    /// Catalog name: point, CP1..CP6, or products such as CP1xCP2.
    #[arg(long, default_value = "CP1")]
    pub manifold: String,
    /// JSON presentation file; overrides --manifold.
    #[arg(long = "manifold-file")]
    pub manifold_file: Option<PathBuf>,
}

impl ManifoldArg {
    fn load(&self) -> Result<ManifoldModel> {
        match &self.manifold_file {
            Some(path) => ManifoldModel::from_json(&std::fs::read_to_string(path)?),
            None => ManifoldModel::catalog(&self.manifold),
        }
    }
}

#[derive(Debug, Args)]
pub struct SeriesArg {
    /// A-hat, Todd, L or Gamma.
    #[arg(long, default_value = "A-hat")]
    pub series: String,
    /// Characteristic series coefficients "1,0,-1/24,..."; overrides --series.
    #[arg(long)]
    pub characteristic: Option<String>,
    /// Exponential coefficients "0,1,1/2,..."; overrides --series.
    #[arg(long)]
    pub exponential: Option<String>,
}

impl SeriesArg {
    fn load(&self, bound: u32) -> Result<(String, GenusSeries)> {
        if let Some(c) = &self.characteristic {
            return Ok((format!("characteristic:{c}"), GenusSeries::from_rational_characteristic(parse_coeffs(c)?)?));
        }
        if let Some(c) = &self.exponential {
            return Ok((format!("exponential:{c}"), GenusSeries::from_rational_exponential(parse_coeffs(c)?)?));
        }
        Ok((self.series.clone(), GenusSeries::named(&self.series, bound)?))
    }
}

#[derive(Debug, Subcommand)]
pub enum GenusCommand {
    /// Genus of a manifold model.
    Compute {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[command(flatten)]
        series: SeriesArg,
    },
    /// Genus deformed by exp(Σ t_k ch_k).
    Deform {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[command(flatten)]
        series: SeriesArg,
        /// Parameters "k:value,..."; values are rationals, a+bi, or t for symbolic.
        #[arg(long, default_value = "")]
        t: String,
        /// Use t_k = ζ(k) for odd k ≥ 3 (certified).
        #[arg(long)]
        zeta: bool,
    },
    /// Chern character component ch_k.
    ChernCharacter {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        k: u32,
    },
    /// ch_k(TM) + ch_k(conjugate) = 0.
    CheckDiagonal {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        k: u32,
    },
    /// Additivity of ch_k on a product, odd k.
    CheckPrimitivity {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        other: String,
        #[arg(long)]
        k: u32,
    },
    /// Betti series convolved with the sOmega series.
    MorphismSeries {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Value on CP^n computed from an exponential.
    FromExponential {
        #[arg(long)]
        exponential: String,
        #[arg(long)]
        n: u32,
    },
    /// Coefficients of 1/Γ(x), symbolic and numeric.
    Gamma {
        #[arg(long)]
        bound: Option<u32>,
    },
}

/// Result of a subcommand in each available rendering.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub default_format: Format,
    pub failed: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            csv: None,
            default_format: Format::Json,
            failed: false,
        }
    }

    fn table(json: Value, csv: String) -> Self {
        Output {
            json,
            text: csv.clone(),
            csv: Some(csv),
            default_format: Format::Csv,
            failed: false,
        }
    }

    fn render(&self, format: Format, config: &RunConfig) -> Result<String> {
        match format {
            Format::Json => {
                let mut value = match &self.json {
                    Value::Object(map) => Value::Object(map.clone()),
                    other => json!({ "result": other }),
                };
                value["config"] = config.to_json();
                let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::Config("this command has no CSV rendering".into())),
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                Ok(s)
            }
        }
    }
}

fn error_json(code: &str, message: &str) -> String {
    let mut s = serde_json::to_string(&json!({ "error": { "code": code, "message": message } })).expect("serializes");
    s.push('\n');
    s
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => 2,
        _ => 1,
    }
}

/// Parses arguments and runs; returns the exit code. Output goes to the
/// given writers so the dispatcher can be driven in tests.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stdout, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 }
                }
                _ => {
                    let message = e.render().to_string();
                    let first = message.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
                    let _ = stdout.write_all(error_json("usage", first).as_bytes());
                    2
                }
            };
        }
    };
    let config = match resolve_config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            let _ = stdout.write_all(error_json(e.code(), &e.to_string()).as_bytes());
            return exit_code(&e);
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli.command, &config, stderr).and_then(|out| {
        let format = config.format.unwrap_or(out.default_format);
        Ok((out.render(format, &config)?, out.failed))
    });
    let _ = writeln!(stderr, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok((text, failed)) => {
            let written = match &config.output {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = stdout.write_all(error_json(e.code(), &e.to_string()).as_bytes());
                return 1;
            }
            if failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = stdout.write_all(error_json(e.code(), &e.to_string()).as_bytes());
            exit_code(&e)
        }
    }
}

/// Flags over config file over defaults.
pub fn resolve_config(global: &GlobalArgs) -> Result<RunConfig> {
    let file = match &global.config {
        Some(path) => load_file_config(path)?,
        None => FileConfig::default(),
    };
    let defaults = RunConfig::default();
    let convention = match global.convention.as_ref().or(file.convention.as_ref()) {
        Some(s) => s.parse().map_err(|e: Error| Error::Config(e.to_string()))?,
        None => defaults.convention,
    };
    let format = match global.format.as_ref().or(file.format.as_ref()) {
        Some(s) => Some(s.parse()?),
        None => None,
    };
    let config = RunConfig {
        degree: global.degree.or(file.degree).unwrap_or(defaults.degree),
        target_error: global.target_error.or(file.target_error).unwrap_or(defaults.target_error),
        convention,
        format,
        output: global.output.clone().or(file.output),
        seed: global.seed.or(file.seed).unwrap_or(defaults.seed),
    };
    config.validate()?;
    Ok(config)
}

fn parse_coeffs(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(str::trim)
        .enumerate()
        .map(|(i, c)| parse_rational(c).ok_or_else(|| Error::parse(i, format!("bad coefficient {c:?}"))))
        .collect()
}

fn dims_csv(header: &str, dims: &[BigInt]) -> String {
    let mut s = format!("degree,{header}\n");
    for (n, d) in dims.iter().enumerate() {
        writeln!(s, "{n},{d}").unwrap();
    }
    s
}

fn dims_json(dims: &[BigInt]) -> Value {
    Value::Array(dims.iter().map(|d| Value::String(d.to_string())).collect())
}

fn symm_json(f: &SymmFn) -> Value {
    json!({ "basis": format!("{:?}", f.basis()), "expr": f.to_string() })
}

fn dispatch(command: &Command, config: &RunConfig, stderr: &mut dyn std::io::Write) -> Result<Output> {
    match command {
        Command::Symm(c) => symm(c, config),
        Command::Qsymm(c) => qsymm(c, config),
        Command::Mzv(c) => mzv(c, config),
        Command::Tor { algebra, bound } => {
            let bound = bound.unwrap_or(config.degree);
            let alg = parse_algebra(algebra, bound)?;
            let table = tor_via_bar(&alg, bound)?;
            let cells: Vec<Value> = table
                .cells
                .iter()
                .map(|(&(s, t), cell)| {
                    let dim = match cell {
                        TorCell::Known(d) => json!(d),
                        TorCell::Unknown => json!("unknown"),
                    };
                    json!({ "s": s, "t": t, "total": s + t, "dim": dim })
                })
                .collect();
            let totals: Vec<Value> = table.total_degree_dims().iter().map(|d| json!(d)).collect();
            Ok(Output::table(
                json!({
                    "algebra": algebra,
                    "bound": bound,
                    "exact_through": alg.exact_through(),
                    "d_squared_zero": table.d_squared_zero,
                    "cells": cells,
                    "total_degree_dims": totals,
                }),
                table.to_csv(),
            ))
        }
        Command::Series { which, bound } => {
            let bound = bound.unwrap_or(config.degree);
            let ring: CoefficientRing = which.parse()?;
            let dims = coefficient_ring_series(ring, bound, config.convention);
            Ok(Output::table(
                json!({ "which": which, "bound": bound, "dims": dims_json(&dims) }),
                dims_csv("dim", &dims),
            ))
        }
        Command::Genus(c) => genus_command(c, config),
        Command::Coaction { manifold, class, bound } => {
            let m = manifold.load()?;
            let bound = bound.unwrap_or(config.degree);
            let x = m.parse_class(class)?;
            let c = coaction(&m, &x, bound, config.convention);
            let counit = c.counit() == x;
            let coassociative = coaction_is_coassociative(&m, &x, bound, config.convention);
            let terms: Vec<Value> = c
                .terms
                .iter()
                .map(|(alpha, cls)| json!({ "dual_basis": alpha.to_string(), "class": cls.to_string() }))
                .collect();
            let mut text = String::new();
            for (alpha, cls) in &c.terms {
                writeln!(text, "({cls}) ⊗ β[{alpha}]").unwrap();
            }
            writeln!(text, "counit: {counit}, coassociative: {coassociative}").unwrap();
            Ok(Output::new(
                json!({
                    "manifold": m.name,
                    "class": x.to_string(),
                    "bound": bound,
                    "terms": terms,
                    "counit": counit,
                    "coassociative": coassociative,
                }),
                text,
            ))
        }
        Command::Acceptance { only } => {
            let suite = SuiteConfig {
                degree: config.degree,
                target_error: config.target_error,
                convention: config.convention,
                seed: config.seed,
            };
            let results = acceptance::run(&suite, only);
            let color = stdout_color();
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(stderr, "check {:>2}: {:.3}s", r.id, r.seconds);
                let line = r.line();
                if color {
                    let code = match r.outcome {
                        Outcome::Pass => "32",
                        Outcome::Fail => "31",
                        Outcome::Skipped => "33",
                    };
                    writeln!(text, "\x1b[{code}m{line}\x1b[0m").unwrap();
                } else {
                    writeln!(text, "{line}").unwrap();
                }
            }
            let count = |o: Outcome| results.iter().filter(|r| r.outcome == o).count();
            let (pass, fail, skip) = (count(Outcome::Pass), count(Outcome::Fail), count(Outcome::Skipped));
            writeln!(text, "{pass} passed, {fail} failed, {skip} skipped").unwrap();
            let mut csv = String::from("id,name,outcome,detail\n");
            for r in &results {
                writeln!(csv, "{},{},{:?},\"{}\"", r.id, r.name, r.outcome, r.detail.replace('"', "'")).unwrap();
            }
            Ok(Output {
                json: json!({ "checks": results, "passed": pass, "failed": fail, "skipped": skip }),
                text,
                csv: Some(csv),
                default_format: Format::Text,
                failed: fail > 0,
            })
        }
    }
}

/// Color is on for terminals unless `NO_COLOR` is set.
fn stdout_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn symm(command: &SymmCommand, config: &RunConfig) -> Result<Output> {
    match command {
        SymmCommand::Convert { from, to, expr } => {
            let from: SymmBasis = from.parse()?;
            let to: SymmBasis = to.parse()?;
            let f = SymmFn::parse(from, expr)?;
            let g = convert(&f, to);
            Ok(Output::new(json!({ "input": symm_json(&f), "result": symm_json(&g) }), g.to_string()))
        }
        SymmCommand::IdentityCheck { which, max_weight } => {
            let which: Identity = which.parse()?;
            let report = check_identity(which, max_weight.unwrap_or(config.degree))?;
            let text = serde_json::to_string(&report).expect("serializes");
            Ok(Output::new(serde_json::to_value(&report).expect("serializes"), text))
        }
        SymmCommand::Coproduct { basis, expr } => {
            let f = SymmFn::parse(basis.parse()?, expr)?;
            let t = coproduct(&f);
            Ok(Output::new(json!({ "input": symm_json(&f), "coproduct": t.to_string() }), t.to_string()))
        }
        SymmCommand::Primitives { weight, model } => {
            let model: HopfModel = model.parse()?;
            let space = primitive_space(*weight, model);
            let basis: Vec<Value> = space
                .iter()
                .map(|f| json!({ "elementary": f.to_string(), "power_sum": convert(f, SymmBasis::P).to_string() }))
                .collect();
            let text = space
                .iter()
                .map(|f| convert(f, SymmBasis::P).to_string())
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(
                json!({ "weight": weight, "dimension": space.len(), "basis": basis }),
                if text.is_empty() { "0".into() } else { text },
            ))
        }
        SymmCommand::Indecomposables { weight, model } => {
            let model: HopfModel = model.parse()?;
            let ind = indecomposables(*weight, model);
            let reps: Vec<String> = ind.representatives.iter().map(|f| f.to_string()).collect();
            Ok(Output::new(
                json!({ "weight": weight, "dimension": ind.dimension, "representatives": reps }),
                ind.dimension.to_string(),
            ))
        }
        SymmCommand::Classes { which, bound } => {
            let bound = bound.unwrap_or(config.degree);
            let series = match which.to_ascii_lowercase().as_str() {
                "d-classes" | "d" => d_classes(bound),
                "a-classes" | "a" => a_classes(bound),
                _ => return Err(Error::domain(format!("unknown classes {which:?} (expected d-classes or a-classes)"))),
            };
            let comps: Vec<String> = (0..=bound).map(|k| series.component(k).to_string()).collect();
            let mut csv = String::from("weight,class\n");
            for (k, c) in comps.iter().enumerate() {
                writeln!(csv, "{k},\"{c}\"").unwrap();
            }
            Ok(Output {
                json: json!({ "which": which, "bound": bound, "components": comps }),
                text: comps.iter().enumerate().map(|(k, c)| format!("{k}: {c}")).collect::<Vec<_>>().join("\n"),
                csv: Some(csv),
                default_format: Format::Json,
                failed: false,
            })
        }
    }
}

fn qsymm(command: &QsymmCommand, config: &RunConfig) -> Result<Output> {
    match command {
        QsymmCommand::Product { left, right } => {
            let a: QSymm = left.parse()?;
            let b: QSymm = right.parse()?;
            let p = a.mul(&b);
            Ok(Output::new(json!({ "left": a.to_string(), "right": b.to_string(), "product": p.to_string() }), p.to_string()))
        }
        QsymmCommand::Coproduct { expr } => {
            let a: QSymm = expr.parse()?;
            let t = deconcatenation(&a);
            let terms: Vec<Value> = t
                .terms()
                .map(|((l, r), c)| json!({ "left": l.to_string(), "right": r.to_string(), "coeff": crate::rational::format_rational(c) }))
                .collect();
            let text = t
                .terms()
                .map(|((l, r), c)| format!("{} M{l} ⊗ M{r}", crate::rational::format_rational(c)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::new(json!({ "input": a.to_string(), "terms": terms }), text))
        }
        QsymmCommand::Pair { nsymm, qsymm } => {
            let a: NSymm = nsymm.parse()?;
            let x: QSymm = qsymm.parse()?;
            let v = crate::rational::format_rational(&pairing(&a, &x));
            Ok(Output::new(json!({ "pairing": v }), v))
        }
        QsymmCommand::Lyndon { degree, profile } => {
            let profile: GeneratorProfile = profile.parse()?;
            let words: Vec<String> = lyndon_generators(*degree, &profile)?.iter().map(|w| w.to_string()).collect();
            Ok(Output::new(
                json!({ "degree": degree, "count": words.len(), "generators": words }),
                words.join("\n"),
            ))
        }
        QsymmCommand::Hilbert { profile, flavor, bound } => {
            let bound = bound.unwrap_or(config.degree);
            let p: GeneratorProfile = profile.parse()?;
            let f: HilbertFlavor = flavor.parse()?;
            let dims = free_algebra_hilbert(&p, bound, f)?;
            Ok(Output::table(
                json!({ "profile": profile, "flavor": f.name(), "bound": bound, "dims": dims_json(&dims) }),
                dims_csv("dim", &dims),
            ))
        }
    }
}

fn mzv(command: &MzvCommand, config: &RunConfig) -> Result<Output> {
    match command {
        MzvCommand::Eval { index, error } => {
            let idx: Composition = index.parse()?;
            let v = mzv_eval(&idx, error.unwrap_or(config.target_error))?;
            Ok(Output::new(
                json!({ "index": idx.to_string(), "value": v.value, "error_bound": v.error_bound, "admissible": is_admissible(&idx) }),
                v.to_string(),
            ))
        }
        MzvCommand::Specialize { expr, error } => {
            let q: QSymm = expr.parse()?;
            let v = zeta_specialize(&q, error.unwrap_or(config.target_error))?;
            Ok(Output::new(
                json!({ "expr": q.to_string(), "value": v.value, "error_bound": v.error_bound }),
                v.to_string(),
            ))
        }
        MzvCommand::Stuffle { left, right, tol } => {
            let a: QSymm = left.parse()?;
            let b: QSymm = right.parse()?;
            let report = homomorphism_check(&a, &b, *tol)?;
            let text = format!("{} vs {}: {}", report.product_of_values, report.value_of_product, if report.pass { "pass" } else { "fail" });
            let failed = !report.pass;
            let mut out = Output::new(serde_json::to_value(&report).expect("serializes"), text);
            out.failed = failed;
            Ok(out)
        }
    }
}

fn genus_command(command: &GenusCommand, config: &RunConfig) -> Result<Output> {
    match command {
        GenusCommand::Compute { manifold, series } => {
            let m = manifold.load()?;
            let (name, rho) = series.load(config.degree.max(m.dim_c + 1))?;
            let value = genus(&m, &rho)?;
            let mut result = json!({ "manifold": m.name, "series": name, "value": value.to_string() });
            if !value.vars().is_empty() {
                let max_k = value.vars().iter().filter(|v| v.family == 'z').map(|v| v.index).max().unwrap_or(2);
                let values = zeta_values(max_k, config.target_error)?;
                let v = evaluate_certified(&value, &|v| values.get(v).copied())?;
                result["numeric"] = json!({ "value": v.value, "error_bound": v.error_bound });
            }
            Ok(Output::new(result, value.to_string()))
        }
        GenusCommand::Deform { manifold, series, t, zeta } => {
            let m = manifold.load()?;
            let (name, rho) = series.load(config.degree.max(m.dim_c + 1))?;
            let mut params = DeformationParameters::parse(t, config.convention)?;
            if *zeta {
                let z = a_hat_zeta_parameters(2 * m.dim_c.max(1) + 1, config.target_error)?;
                let mut merged = z.values().clone();
                merged.extend(params.values().clone());
                params = DeformationParameters::new(merged, config.convention)?;
            }
            let value = deform_genus(&m, &rho, &params)?;
            let t_json: serde_json::Map<String, Value> = params
                .values()
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v.to_string())))
                .collect();
            Ok(Output::new(
                json!({ "manifold": m.name, "series": name, "t": t_json, "value": value.to_string() }),
                value.to_string(),
            ))
        }
        GenusCommand::ChernCharacter { manifold, k } => {
            let m = manifold.load()?;
            let ch = chern_character(&m, *k);
            Ok(Output::new(json!({ "manifold": m.name, "k": k, "class": ch.to_string() }), ch.to_string()))
        }
        GenusCommand::CheckDiagonal { manifold, k } => {
            let m = manifold.load()?;
            let ok = diagonal_vanishing_check(&m, *k);
            Ok(Output::new(json!({ "manifold": m.name, "k": k, "vanishes": ok }), ok.to_string()))
        }
        GenusCommand::CheckPrimitivity { manifold, other, k } => {
            let m = manifold.load()?;
            let n = ManifoldModel::catalog(other)?;
            let ok = primitivity_check(&m, &n, *k)?;
            Ok(Output::new(json!({ "left": m.name, "right": n.name, "k": k, "primitive": ok }), ok.to_string()))
        }
        GenusCommand::MorphismSeries { manifold, bound } => {
            let m = manifold.load()?;
            let bound = bound.unwrap_or(config.degree);
            let dims = morphism_module_series(&m, bound, config.convention);
            Ok(Output::table(
                json!({ "manifold": m.name, "bound": bound, "dims": dims_json(&dims) }),
                dims_csv("dim", &dims),
            ))
        }
        GenusCommand::FromExponential { exponential, n } => {
            let coeffs = parse_coeffs(exponential)?;
            let f = UniSeries::new(coeffs.into_iter().map(GradedPolynomial::constant).collect());
            let v = genus_from_exponential(&f, *n)?;
            Ok(Output::new(json!({ "n": n, "value": v.to_string() }), v.to_string()))
        }
        GenusCommand::Gamma { bound } => {
            let bound = bound.unwrap_or(config.degree.min(8));
            let g = gamma_exponential(bound)?;
            let values = zeta_values(bound.max(2), config.target_error)?;
            let mut rows = Vec::new();
            let mut text = String::new();
            for k in 0..=bound {
                let c = g.series().coeff(k);
                let v = evaluate_certified(c, &|v| values.get(v).copied())?;
                writeln!(text, "x^{k}: {c}  ≈ {v}").unwrap();
                rows.push(json!({ "power": k, "symbolic": c.to_string(), "value": v.value, "error_bound": v.error_bound }));
            }
            Ok(Output::new(json!({ "bound": bound, "coefficients": rows }), text))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gtalg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn identity_check_json() {
        let (code, out) = run_args(&["symm", "identity-check", "--which", "d-classes", "--max-weight", "8"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "exact-match");
        assert_eq!(v["config"]["convention"], "k>=0");
    }

    #[test]
    fn exit_codes() {
        let (code, out) = run_args(&["mzv", "eval", "--index", "(1)"]);
        assert_eq!(code, 1);
        assert!(out.contains("\"code\":\"divergent\""));
        let (code, out) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"code\":\"usage\""));
        let (code, _) = run_args(&["--degree", "0", "series", "--which", "thh"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn tables_default_to_csv() {
        let (code, out) = run_args(&["series", "--which", "THH", "--bound", "6"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("degree,dim\n0,1\n1,1\n2,1\n"));
        let (code, out) = run_args(&["tor", "--algebra", "exterior:5,9", "--bound", "14"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("s,t,total,dim\n"));
        assert!(out.contains("1,5,6,1"));
    }

    #[test]
    fn config_precedence() {
        let dir = std::env::temp_dir().join(format!("gtalg-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "degree = 7\nconvention = \"i>0\"\n").unwrap();
        let p = path.to_str().unwrap();
        let (_, out) = run_args(&["--config", p, "--degree", "9", "series", "--which", "somega", "--format", "json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["config"]["degree"], 9);
        assert_eq!(v["config"]["convention"], "i>0");
        std::fs::write(&path, "degree = \"many\"\n").unwrap();
        let (code, out) = run_args(&["--config", p, "series", "--which", "somega"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"code\":\"config\""));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
