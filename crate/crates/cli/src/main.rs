//! `kedl`: parse, reason about and verify two-sorted KEDL knowledge bases.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kedl_core::km::{self, KmError};
use kedl_core::oracle::{self, BoundedVerdict, Bounds, Target};
use kedl_core::semantics::{FunctionalityMode, Interpretation, Reading};
use kedl_core::syntax::{parse_concept_inferring, parse_kb, ConceptExpr, Formula, KnowledgeBase, Signature};
use kedl_core::tableau::{suite, SatResult, Tableau, TableauError};

mod report;

use report::{Report, SuiteLine, INPUT_ERROR, NEGATIVE, OK};

const DEFAULT_BOUNDS: (usize, usize) = (2, 2);

#[derive(Parser)]
#[command(
    name = "kedl",
    version,
    about = "Reasoning toolkit for the two-sorted description logic KEDL"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// How cross roles are read: at most one, exactly one, or any number of
    /// attribute successors.
    #[arg(long, value_enum, global = true, default_value = "at-most-one")]
    mode: Mode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    AtMostOne,
    ExactlyOne,
    Unrestricted,
}

impl From<Mode> for FunctionalityMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::AtMostOne => FunctionalityMode::AtMostOne,
            Mode::ExactlyOne => FunctionalityMode::ExactlyOne,
            Mode::Unrestricted => FunctionalityMode::Unrestricted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Universal,
    PaperExistential,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a knowledge base is consistent.
    Check {
        /// Knowledge base file.
        kb: PathBuf,
    },
    /// Decide whether a concept is satisfiable with respect to a knowledge base.
    Sat {
        /// Knowledge base file.
        kb: PathBuf,
        /// Concept to test.
        #[arg(short = 'c', long)]
        concept: String,
    },
    /// Decide whether one concept is subsumed by another.
    Subsumes {
        /// Knowledge base file.
        kb: PathBuf,
        /// Candidate subconcept.
        #[arg(short = 's', long)]
        sub: String,
        /// Candidate superconcept.
        #[arg(short = 't', long)]
        sup: String,
    },
    /// Decide whether an individual is an instance of a concept.
    Instance {
        /// Knowledge base file.
        kb: PathBuf,
        /// Declared individual.
        #[arg(short = 'i', long)]
        individual: String,
        /// Concept to test membership in.
        #[arg(short = 'c', long)]
        concept: String,
    },
    /// Compute the subsumption order of the named concepts.
    Classify {
        /// Knowledge base file.
        kb: PathBuf,
    },
    /// Check every axiom and property with the tableau and the bounded oracle.
    VerifySuite {
        /// Run only the items whose id starts with this, e.g. `axiom16`.
        #[arg(long)]
        only: Option<String>,
        /// Oracle bounds `d,s`. Defaults to KEDL_BOUNDS, then 2,2.
        #[arg(long)]
        bounds: Option<Bounds>,
    },
    /// Query the bounded model enumerator.
    Oracle(OracleArgs),
    /// Knowledge-element files.
    #[command(subcommand)]
    Km(KmCommand),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("goal").required(true).args(["find_model", "count", "validity"]))]
struct OracleArgs {
    /// Search for a model of the concept and/or knowledge base.
    #[arg(long)]
    find_model: bool,
    /// Count the interpretations where the concept is non-empty.
    #[arg(long)]
    count: bool,
    /// Search for a countermodel of `top <= CONCEPT`, or of `SUB <= SUP`.
    #[arg(long)]
    validity: bool,
    /// Concept to query; undeclared names get their sorts from use.
    #[arg(short = 'c', long)]
    concept: Option<String>,
    /// Left side of the inclusion checked by `--validity`.
    #[arg(short = 's', long, requires = "sup")]
    sub: Option<String>,
    /// Right side of the inclusion checked by `--validity`.
    #[arg(short = 't', long, requires = "sub")]
    sup: Option<String>,
    /// Knowledge base whose statements every model must satisfy.
    #[arg(long)]
    kb: Option<PathBuf>,
    /// File whose declarations fix the signature; statements are ignored.
    #[arg(long)]
    decl: Option<PathBuf>,
    /// Domain size limits `d,s`. Defaults to KEDL_BOUNDS, then 2,2.
    #[arg(long)]
    bounds: Option<Bounds>,
    /// How `--validity` reads the inclusion.
    #[arg(long, value_enum, default_value = "universal")]
    reading: ReadingArg,
    /// Write the model or countermodel found to this file.
    #[arg(long)]
    model_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum KmCommand {
    /// Translate knowledge elements into a knowledge base.
    Translate {
        /// Knowledge-element file.
        input: PathBuf,
        /// Output file; standard output if absent.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// List the side conditions the elements break.
    Validate {
        /// Knowledge-element file.
        input: PathBuf,
    },
}

/// Input problems, reported with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_kb(path: &Path) -> Result<KnowledgeBase, Failure> {
    parse_kb(&read(path)?).map_err(|e| Failure(format!("{}:{e}", path.display())))
}

/// Parses a concept against `sig`, inferring categories of new names.
fn concept(text: &str, sig: &Signature) -> Result<(ConceptExpr, Signature), Failure> {
    parse_concept_inferring(text, sig).map_err(|e| Failure(format!("in `{text}`: {e}")))
}

fn bounds(flag: Option<Bounds>, mode: FunctionalityMode) -> Result<Bounds, Failure> {
    let b = match flag {
        Some(b) => b,
        None => match std::env::var("KEDL_BOUNDS") {
            Ok(v) => v.parse().map_err(|e| Failure(format!("KEDL_BOUNDS: {e}")))?,
            Err(_) => Bounds::new(DEFAULT_BOUNDS.0, DEFAULT_BOUNDS.1),
        },
    };
    Ok(b.with_mode(mode))
}

/// Milliseconds, rounded to microseconds.
fn millis(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn tableau_failure(e: TableauError) -> Failure {
    Failure(e.to_string())
}

fn sat_report(result: SatResult, yes: &str, no: &str) -> Report {
    match result {
        SatResult::Satisfiable(w) => {
            let mut r = Report::new(yes, OK);
            r.interpretation = Some(w.interpretation.to_string());
            r.merged = w.merged;
            r
        }
        SatResult::Unsatisfiable(t) => {
            let mut r = Report::new(no, NEGATIVE);
            r.trace = t.steps.iter().chain([&t.clash]).map(|s| s.to_string()).collect();
            r
        }
    }
}

fn truth(b: bool) -> Report {
    if b {
        Report::new("true", OK)
    } else {
        Report::new("false", NEGATIVE)
    }
}

fn check(path: &Path, mode: FunctionalityMode) -> Outcome {
    let kb = load_kb(path)?;
    let result = Tableau::new(&kb)
        .with_mode(mode)
        .is_consistent()
        .map_err(tableau_failure)?;
    Ok(sat_report(result, "consistent", "inconsistent"))
}

fn sat(path: &Path, text: &str, mode: FunctionalityMode) -> Outcome {
    let kb = load_kb(path)?;
    let (e, _) = concept(text, &kb.sig)?;
    let result = Tableau::new(&kb)
        .with_mode(mode)
        .is_satisfiable(&e)
        .map_err(tableau_failure)?;
    Ok(sat_report(result, "satisfiable", "unsatisfiable"))
}

fn subsumes(path: &Path, sub: &str, sup: &str, mode: FunctionalityMode) -> Outcome {
    let kb = load_kb(path)?;
    let (s, sig) = concept(sub, &kb.sig)?;
    let (t, _) = concept(sup, &sig)?;
    Ok(truth(
        Tableau::new(&kb)
            .with_mode(mode)
            .subsumes(&s, &t)
            .map_err(tableau_failure)?,
    ))
}

fn instance(path: &Path, ind: &str, text: &str, mode: FunctionalityMode) -> Outcome {
    let kb = load_kb(path)?;
    let (e, _) = concept(text, &kb.sig)?;
    Ok(truth(
        Tableau::new(&kb)
            .with_mode(mode)
            .instance_of(ind, &e)
            .map_err(tableau_failure)?,
    ))
}

fn classify(path: &Path, mode: FunctionalityMode) -> Outcome {
    let kb = load_kb(path)?;
    match Tableau::new(&kb).with_mode(mode).classify() {
        Ok(c) => {
            let mut r = Report::new("classified", OK);
            r.hierarchy = Some(c.to_string());
            Ok(r)
        }
        Err(TableauError::Inconsistent) => Ok(Report::new("inconsistent", NEGATIVE)),
        Err(e) => Err(tableau_failure(e)),
    }
}

fn verify_suite(only: Option<&str>, b: Bounds) -> Outcome {
    let report = suite::verify_suite(b, only).map_err(tableau_failure)?;
    if report.items.is_empty() {
        return Err(Failure(format!("no suite item matches `{}`", only.unwrap_or_default())));
    }
    let mut r = if report.all_passed() {
        Report::new("pass", OK)
    } else {
        Report::new("fail", NEGATIVE)
    };
    r.message = Some(format!(
        "{}/{} items passed, mode {}, bounds {}",
        report.passed(),
        report.items.len(),
        b.mode,
        b
    ));
    r.items = report
        .items
        .iter()
        .map(|i| SuiteLine {
            id: i.item.id.clone(),
            sort: i.item.sort.to_string(),
            concept: i.item.concept.to_string(),
            passed: i.passed(),
            tableau: if i.tableau_valid { "valid" } else { "not valid" }.into(),
            oracle: if i.oracle.is_countermodel() {
                "countermodel"
            } else {
                "no countermodel"
            }
            .into(),
            countermodel: i.oracle.interpretation().map(Interpretation::to_string),
            elapsed_ms: millis(i.elapsed),
        })
        .collect();
    r.elapsed_ms = millis(report.elapsed);
    Ok(r)
}

fn verdict_report(v: &BoundedVerdict) -> Report {
    let (verdict, exit) = match v {
        BoundedVerdict::Model(_) => ("model", OK),
        BoundedVerdict::NoModelUpToBound(_) => ("no-model", NEGATIVE),
        BoundedVerdict::Countermodel(_) => ("countermodel", NEGATIVE),
        BoundedVerdict::NoCountermodelUpToBound(_) => ("no-countermodel", OK),
    };
    let mut r = Report::new(verdict, exit);
    match v {
        BoundedVerdict::Model(i) | BoundedVerdict::Countermodel(i) => {
            r.interpretation = Some(i.to_string());
        }
        BoundedVerdict::NoModelUpToBound(b) => r.message = Some(format!("no model up to bounds {b}")),
        BoundedVerdict::NoCountermodelUpToBound(b) => r.message = Some(format!("no countermodel up to bounds {b}")),
    }
    r
}

fn run_oracle(a: &OracleArgs, mode: FunctionalityMode) -> Outcome {
    let b = bounds(a.bounds, mode)?;
    let kb = a.kb.as_deref().map(load_kb).transpose()?;
    let mut sig = match &a.decl {
        Some(p) => load_kb(p)?.sig,
        None => Signature::new(),
    };
    if let Some(kb) = &kb {
        sig.merge(&kb.sig)?;
    }
    let mut parse = |text: &Option<String>| -> Result<Option<ConceptExpr>, Failure> {
        text.as_deref()
            .map(|t| {
                let (e, extended) = concept(t, &sig)?;
                sig = extended;
                Ok(e)
            })
            .transpose()
    };
    let c = parse(&a.concept)?;
    let sub = parse(&a.sub)?;
    let sup = parse(&a.sup)?;
    let empty = KnowledgeBase::default();

    let verdict = if a.count {
        let e = c.ok_or_else(|| Failure("--count needs a concept (-c)".into()))?;
        let mut r = Report::new("count", OK);
        r.count = Some(oracle::count_models(&e, &sig, b));
        r.message = Some(format!("interpretations up to bounds {b} where `{e}` is non-empty"));
        return Ok(r);
    } else if a.find_model {
        match (&c, &kb) {
            (Some(e), Some(kb)) => oracle::find_model(Target::ConceptInKb(e, kb), b),
            (Some(e), None) => oracle::find_model(e, b),
            (None, Some(kb)) => oracle::find_model(kb, b),
            (None, None) => return Err(Failure("--find-model needs a concept (-c) or --kb".into())),
        }
    } else {
        let f = match (c, sub, sup) {
            (Some(e), None, None) => Formula::Inclusion(ConceptExpr::Top, e),
            (None, Some(s), Some(t)) => Formula::Inclusion(s, t),
            _ => return Err(Failure("--validity needs either -c or both -s and -t".into())),
        };
        let reading = match a.reading {
            ReadingArg::Universal => Reading::Universal,
            ReadingArg::PaperExistential => Reading::PaperExistential,
        };
        oracle::check_validity_reading(&f, kb.as_ref().unwrap_or(&empty), b, reading)
    };
    if let (Some(path), Some(i)) = (&a.model_out, verdict.interpretation()) {
        std::fs::write(path, i.to_string()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(verdict_report(&verdict))
}

fn km_error(path: &Path, e: KmError) -> Failure {
    match e {
        KmError::Syntax(e) => Failure(format!("{}:{e}", path.display())),
        other => Failure(other.to_string()),
    }
}

fn km_translate(input: &Path, output: Option<&Path>) -> Outcome {
    let elements = km::parse_km(&read(input)?).map_err(|e| km_error(input, e))?;
    let t = km::translate(&elements).map_err(|e| km_error(input, e))?;
    let text = t.to_string();
    let mut r = Report::new("translated", OK);
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            r.message = Some(format!(
                "{} elements, {} definitions, {} inclusions written to {}",
                elements.len(),
                t.kb.definitions().len(),
                t.kb.inclusions().len(),
                path.display()
            ));
        }
        None => r.output = Some(text),
    }
    Ok(r)
}

fn km_validate(input: &Path) -> Outcome {
    let elements = km::read_km(&read(input)?).map_err(|e| Failure(format!("{}:{e}", input.display())))?;
    let violations = km::validate_km(&elements);
    let mut r = if violations.is_empty() {
        Report::new("valid", OK)
    } else {
        Report::new("invalid", NEGATIVE)
    };
    r.message = Some(format!("{} elements, {} violations", elements.len(), violations.len()));
    r.violations = violations.iter().map(|v| v.to_string()).collect();
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = FunctionalityMode::from(cli.mode);
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Check { kb } => check(kb, mode),
        Command::Sat { kb, concept } => sat(kb, concept, mode),
        Command::Subsumes { kb, sub, sup } => subsumes(kb, sub, sup, mode),
        Command::Instance {
            kb,
            individual,
            concept,
        } => instance(kb, individual, concept, mode),
        Command::Classify { kb } => classify(kb, mode),
        Command::VerifySuite { only, bounds: b } => bounds(*b, mode).and_then(|b| verify_suite(only.as_deref(), b)),
        Command::Oracle(a) => run_oracle(a, mode),
        Command::Km(KmCommand::Translate { input, output }) => km_translate(input, output.as_deref()),
        Command::Km(KmCommand::Validate { input }) => km_validate(input),
    };
    let report = match outcome {
        Ok(mut r) => {
            if r.elapsed_ms == 0.0 {
                r.elapsed_ms = millis(start.elapsed());
            }
            r
        }
        Err(Failure(m)) => Report::error(m),
    };
    match cli.format {
        Format::Machine => println!("{}", report.to_json()),
        Format::Text if report.exit == INPUT_ERROR => eprintln!("error: {}", report.message.as_deref().unwrap_or("")),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit as u8)
}
