//! The `unaware` command line. [`run`] does all the work and returns the
//! text and exit code, so the binary stays a thin shell and tests can call
//! it directly.

pub mod format;

use crate::proofcheck::{check_proof, soundness_sweep, ProofError, ProofScript, System, Verdict};
use crate::semantics::TruthValue;
use crate::structures::{
    validate_awareness, validate_gsm, validate_hms, validate_kripke, ClassSpec,
};
use crate::syntax::{
    is_definitely_two_valued, is_implication_free, is_simple, modal_depth, parse, primitives,
    Formula, Language, LanguageTag, ParseError,
};
use crate::translate::{awareness_to_hms, hms_to_awareness};
use crate::validity::{
    failing_points, point_values, prop3_status, search_countermodel, Model, Prop3Verdict,
    SearchBounds, StructureKind, ValidityError, ValidityMode,
};
use clap::{Args, Parser, Subcommand};
use format::{FormatError, ModelFile, Witness};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
/// A countermodel, an invalid formula, a falsifiable table or a rejected
/// proof.
pub const EXIT_COUNTERMODEL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_UNKNOWN_STATE: i32 = 4;
pub const EXIT_USAGE: i32 = 5;

/// Default sample count for `search --seed`.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "unaware",
    version,
    about = "Three-valued logics of awareness: evaluation, translation, validity and proofs"
)]
pub struct Cli {
    /// Write the main output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and print its core form and syntactic properties.
    Parse {
        #[arg(long, default_value = "knimp")]
        lang: Language,
        #[arg(long, default_value_t = 9)]
        agents: usize,
        formula: String,
    },
    /// Evaluate a formula at a state of a model file.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        formula: String,
    },
    /// Check the conditions of a model file.
    Validate {
        #[arg(long)]
        model: PathBuf,
        /// Also require the class, a subset of `rte`.
        #[arg(long)]
        class: Option<ClassSpec>,
        /// For awareness structures, also require propositional determination.
        #[arg(long)]
        pd: bool,
    },
    /// Translate an HMS structure to an awareness structure or back.
    Translate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value = "")]
        class: ClassSpec,
    },
    /// Decide validity of a formula in one model.
    Valid {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        mode: ValidityMode,
        #[arg(long)]
        formula: String,
    },
    /// Search bounded structures for a countermodel.
    Search {
        #[arg(long)]
        kind: StructureKind,
        #[arg(long, default_value = "")]
        class: ClassSpec,
        #[arg(long)]
        mode: ValidityMode,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check a proof file, or run a soundness sweep for a system.
    Proof {
        #[arg(required_unless_present = "sweep", conflicts_with = "sweep")]
        file: Option<PathBuf>,
        /// Sweep the axioms of SYSTEM over its structures instead.
        #[arg(long, value_name = "SYSTEM")]
        sweep: Option<String>,
        #[arg(long, requires = "sweep")]
        class: Option<ClassSpec>,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Three-valued truth table of a propositional formula.
    Taut3 {
        formula: String,
        /// Print every row.
        #[arg(long)]
        table: bool,
    },
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub max_atoms: Option<usize>,
    #[arg(long)]
    pub max_agents: Option<usize>,
    /// States per space for HMS structures, objective states for GSMs,
    /// states otherwise.
    #[arg(long)]
    pub max_states: Option<usize>,
    /// Sample randomly with this seed instead of enumerating.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, requires = "seed")]
    pub samples: Option<usize>,
}

impl BoundArgs {
    fn apply(&self, kind: StructureKind) -> SearchBounds {
        let mut b = SearchBounds::default_for(kind);
        if let Some(a) = self.max_atoms {
            b = b.with_atoms(a);
        }
        if let Some(a) = self.max_agents {
            b = b.with_agents(a);
        }
        if let Some(s) = self.max_states {
            b = b.with_states(s);
        }
        if let Some(seed) = self.seed {
            b = b.randomized(seed, self.samples.unwrap_or(DEFAULT_SAMPLES));
        }
        b
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Step = Result<(i32, String), Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Output {
                code,
                stdout,
                stderr,
            };
        }
    };
    let result = execute(&cli.command);
    let (code, text, err) = match result {
        Ok((code, text)) => (code, text, String::new()),
        Err(f) => (f.code, String::new(), f.message + "\n"),
    };
    match (&cli.out, text.is_empty()) {
        (Some(path), false) => match std::fs::write(path, &text) {
            Ok(()) => Output {
                code,
                stdout: String::new(),
                stderr: err,
            },
            Err(e) => Output {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("cannot write {}: {e}\n", path.display()),
            },
        },
        _ => Output {
            code,
            stdout: text,
            stderr: err,
        },
    }
}

fn execute(command: &Command) -> Step {
    match command {
        Command::Parse {
            lang,
            agents,
            formula,
        } => cmd_parse(LanguageTag::new(*lang, *agents), formula),
        Command::Eval {
            model,
            state,
            formula,
        } => cmd_eval(model, state, formula),
        Command::Validate { model, class, pd } => cmd_validate(model, *class, *pd),
        Command::Translate { model, class } => cmd_translate(model, *class),
        Command::Valid {
            model,
            mode,
            formula,
        } => cmd_valid(model, *mode, formula),
        Command::Search {
            kind,
            class,
            mode,
            formula,
            bounds,
        } => cmd_search(*kind, *class, *mode, formula, bounds),
        Command::Proof {
            file,
            sweep,
            class,
            bounds,
        } => match (file, sweep) {
            (_, Some(system)) => cmd_sweep(system, *class, bounds),
            (Some(file), None) => cmd_proof(file),
            (None, None) => Err(fail(EXIT_USAGE, "give a proof file or --sweep SYSTEM")),
        },
        Command::Taut3 { formula, table } => cmd_taut3(formula, *table),
    }
}

fn parse_failure(text: &str, e: &ParseError) -> Failure {
    let column = text[..e.position.min(text.len())].chars().count();
    fail(
        EXIT_PARSE,
        format!(
            "parse error at position {}: {}\n  {text}\n  {}^",
            e.position,
            e.kind,
            " ".repeat(column)
        ),
    )
}

fn parse_formula(text: &str, tag: LanguageTag) -> Result<Formula, Failure> {
    parse(text, tag).map_err(|e| parse_failure(text, &e))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_parse(tag: LanguageTag, text: &str) -> Step {
    let f = parse_formula(text, tag)?;
    let prims: Vec<String> = primitives(&f).iter().map(|a| a.to_string()).collect();
    let mut out = String::new();
    writeln!(out, "core: {f}").unwrap();
    writeln!(out, "primitives: {{{}}}", prims.join(", ")).unwrap();
    writeln!(out, "size: {}", f.size()).unwrap();
    writeln!(out, "modal depth: {}", modal_depth(&f)).unwrap();
    writeln!(out, "implication-free: {}", yes(is_implication_free(&f))).unwrap();
    writeln!(
        out,
        "definitely two-valued: {}",
        yes(is_definitely_two_valued(&f))
    )
    .unwrap();
    writeln!(out, "simple: {}", yes(is_simple(&f))).unwrap();
    Ok((EXIT_OK, out))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
}

fn format_failure(e: FormatError) -> Failure {
    match e {
        FormatError::Json(_) => fail(EXIT_PARSE, e.to_string()),
        FormatError::Structure(_) => fail(EXIT_VALIDATION, format!("invalid model: {e}")),
    }
}

/// Reads a model file, without checking the semantic conditions.
pub fn load_model(path: &Path) -> Result<(Model, Option<Witness>), String> {
    load(path).map_err(|f| f.message)
}

fn load(path: &Path) -> Result<(Model, Option<Witness>), Failure> {
    let file = ModelFile::parse(&read_file(path)?).map_err(format_failure)?;
    let model = file.to_model().map_err(format_failure)?;
    Ok((model, file.witness))
}

/// The language formulas about a model are read in.
pub fn language_of(kind: StructureKind, agents: usize) -> LanguageTag {
    match kind {
        StructureKind::Kripke => LanguageTag::k(agents),
        StructureKind::Awareness | StructureKind::AwarenessPd => LanguageTag::kxa(agents),
        StructureKind::Hms | StructureKind::Gsm => LanguageTag::knimp(agents),
    }
}

/// One line per condition, and whether the structure is well formed (plus,
/// when asked, in `class` and pd).
pub fn validation_report(m: &Model, class: Option<ClassSpec>, pd: bool) -> (bool, String) {
    let mut out = String::new();
    let mut line = |name: &str, ok: bool| writeln!(out, "{name}: {}", yes(ok)).unwrap();
    let (well_formed, in_class) = match m {
        Model::Kripke(k) => match validate_kripke(k) {
            Ok(r) => {
                line("reflexive", r.reflexive);
                line("transitive", r.transitive);
                line("euclidean", r.euclidean);
                (true, class.is_none_or(|c| r.in_class(c)))
            }
            Err(e) => return (false, format!("malformed: {e}\n")),
        },
        Model::Awareness(a) => match validate_awareness(a) {
            Ok(r) => {
                line("reflexive", r.kripke.reflexive);
                line("transitive", r.kripke.transitive);
                line("euclidean", r.kripke.euclidean);
                line("generated by primitive propositions", r.pg);
                line("agents know what they are aware of", r.ka);
                line("propositionally determined", r.pd);
                (
                    true,
                    class.is_none_or(|c| r.kripke.in_class(c)) && (!pd || r.pd),
                )
            }
            Err(e) => return (false, format!("malformed: {e}\n")),
        },
        Model::Hms(h) => {
            let r = validate_hms(h);
            let mut out2 = String::new();
            for v in &r.structural {
                writeln!(out2, "structural: {v}").unwrap();
            }
            line("structural invariants", r.well_formed());
            line("confinedness", r.confinedness);
            line("projections preserve knowledge", r.proj_knowledge);
            line("projections preserve ignorance", r.proj_ignorance);
            line("generalized reflexivity", r.gen_reflexivity);
            line("stationarity (a)", r.stationarity_a);
            line("stationarity (b)", r.stationarity_b);
            out.push_str(&out2);
            (r.class().is_some(), class.is_none_or(|c| r.in_class(c)))
        }
        Model::Gsm(g) => match validate_gsm(g) {
            Ok(r) => {
                line("images agree on their atoms", r.cond_1a);
                line("images agree on possibilities", r.cond_1b);
                line("possibilities stay in the image's space", r.cond_2);
                line("reflexive", r.kripke.reflexive);
                line("transitive", r.kripke.transitive);
                line("euclidean", r.kripke.euclidean);
                (r.conditions(), class.is_none_or(|c| r.in_class(c)))
            }
            Err(e) => return (false, format!("malformed: {e}\n")),
        },
    };
    if let Some(c) = class {
        writeln!(out, "in class {{{c}}}: {}", yes(well_formed && in_class)).unwrap();
    }
    (well_formed && in_class, out)
}

fn load_valid(path: &Path) -> Result<(Model, Option<Witness>), Failure> {
    let (m, w) = load(path)?;
    let (ok, report) = validation_report(&m, None, false);
    if !ok {
        return Err(fail(
            EXIT_VALIDATION,
            format!("model does not validate:\n{report}"),
        ));
    }
    Ok((m, w))
}

fn validity_failure(e: ValidityError) -> Failure {
    match e {
        ValidityError::IncompatibleMode { .. } => fail(EXIT_USAGE, e.to_string()),
        ValidityError::Modal | ValidityError::Eval(_) => fail(EXIT_PARSE, e.to_string()),
        _ => fail(EXIT_VALIDATION, e.to_string()),
    }
}

fn render_value(kind: StructureKind, v: TruthValue) -> String {
    match kind {
        StructureKind::Kripke | StructureKind::Awareness | StructureKind::AwarenessPd => {
            v.is_true().to_string()
        }
        _ => v.to_string(),
    }
}

fn cmd_eval(path: &Path, state: &str, text: &str) -> Step {
    let (m, _) = load_valid(path)?;
    let s = m
        .point_index(state)
        .ok_or_else(|| fail(EXIT_UNKNOWN_STATE, format!("unknown state {state:?}")))?;
    let f = parse_formula(text, language_of(m.kind(), m.agents()))?;
    let values = point_values(&m, &f).map_err(validity_failure)?;
    Ok((EXIT_OK, format!("{}\n", render_value(m.kind(), values[s]))))
}

fn cmd_validate(path: &Path, class: Option<ClassSpec>, pd: bool) -> Step {
    let (m, _) = load(path)?;
    let (ok, report) = validation_report(&m, class, pd);
    if ok {
        Ok((EXIT_OK, report))
    } else {
        Err(fail(EXIT_VALIDATION, report.trim_end()))
    }
}

fn cmd_translate(path: &Path, class: ClassSpec) -> Step {
    let (m, _) = load_valid(path)?;
    let translated = match &m {
        Model::Hms(h) => hms_to_awareness(h, class).map(|t| Model::Awareness(t.structure)),
        Model::Awareness(a) => awareness_to_hms(a, class).map(|t| Model::Hms(t.structure)),
        other => {
            return Err(fail(
                EXIT_USAGE,
                format!(
                    "translate takes hms or awareness structures, not {}",
                    other.kind()
                ),
            ))
        }
    }
    .map_err(|e| fail(EXIT_VALIDATION, e.to_string()))?;
    Ok((EXIT_OK, ModelFile::from_model(&translated, None).to_json()))
}

fn cmd_valid(path: &Path, mode: ValidityMode, text: &str) -> Step {
    let (m, _) = load_valid(path)?;
    let f = parse_formula(text, language_of(m.kind(), m.agents()))?;
    let failing = failing_points(&m, &f, mode).map_err(validity_failure)?;
    if failing.is_empty() {
        return Ok((EXIT_OK, format!("valid ({mode})\n")));
    }
    let names = m.point_names();
    let values = point_values(&m, &f).map_err(validity_failure)?;
    let mut out = format!("invalid ({mode})\n");
    for s in failing {
        writeln!(
            out,
            "fails at {}: {}",
            names[s],
            render_value(m.kind(), values[s])
        )
        .unwrap();
    }
    Ok((EXIT_COUNTERMODEL, out))
}

fn cmd_search(
    kind: StructureKind,
    class: ClassSpec,
    mode: ValidityMode,
    text: &str,
    bounds: &BoundArgs,
) -> Step {
    let b = bounds.apply(kind);
    let f = parse_formula(text, language_of(kind, 9))?;
    match search_countermodel(&f, kind, class, mode, &b).map_err(validity_failure)? {
        None => Ok((EXIT_OK, "none within bounds\n".into())),
        Some(c) => {
            let witness = Witness {
                formula: f.to_string(),
                mode: mode.name().into(),
                state: c.state_name.clone(),
                value: c.value,
            };
            Ok((
                EXIT_COUNTERMODEL,
                ModelFile::from_model(&c.model, Some(witness)).to_json(),
            ))
        }
    }
}

fn proof_failure(e: ProofError) -> Failure {
    match e {
        ProofError::UnknownSystem(_) | ProofError::IncompatibleSweep { .. } => {
            fail(EXIT_USAGE, e.to_string())
        }
        _ => fail(EXIT_VALIDATION, e.to_string()),
    }
}

fn cmd_proof(path: &Path) -> Step {
    let script: ProofScript = serde_json::from_str(&read_file(path)?)
        .map_err(|e| fail(EXIT_PARSE, format!("malformed proof file: {e}")))?;
    match check_proof(&script).map_err(proof_failure)? {
        Verdict::Ok => Ok((
            EXIT_OK,
            format!("ok: {} lines in {}\n", script.lines.len(), script.system),
        )),
        bad => Ok((EXIT_COUNTERMODEL, format!("{bad}\n"))),
    }
}

fn cmd_sweep(name: &str, class: Option<ClassSpec>, bounds: &BoundArgs) -> Step {
    let system = System::named(name).map_err(proof_failure)?;
    let target = system
        .sweep_target()
        .ok_or_else(|| fail(EXIT_USAGE, format!("{name} has no structure sweep")))?;
    let b = bounds.apply(target.kind);
    let report = soundness_sweep(&system, class.unwrap_or(target.class), target.mode, &b)
        .map_err(proof_failure)?;
    let mut out = format!(
        "{} on {} {{{}}} ({}): {} structures, {} checks, {} violations\n",
        report.system,
        report.kind,
        report.class,
        report.mode,
        report.structures,
        report.checks,
        report.violation_count
    );
    for v in &report.violations {
        writeln!(
            out,
            "{}: {} is {} at {}",
            v.axiom, v.instance, v.value, v.state_name
        )
        .unwrap();
    }
    let code = if report.is_sound() {
        EXIT_OK
    } else {
        EXIT_COUNTERMODEL
    };
    Ok((code, out))
}

fn cmd_taut3(text: &str, table: bool) -> Step {
    let f = parse_formula(text, LanguageTag::knimp(0))?;
    let status = prop3_status(&f).map_err(validity_failure)?;
    let mut out = format!("{}\n", status.verdict);
    if table {
        let header: Vec<String> = status.atoms.iter().map(|a| a.to_string()).collect();
        writeln!(out, "{} | value", header.join(" ")).unwrap();
        for (row, v) in &status.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(out, "{} | {v}", cells.join(" ")).unwrap();
        }
    } else if let Some((row, v)) = status.rows.iter().find(|(_, v)| !v.is_true()) {
        let cells: Vec<String> = status
            .atoms
            .iter()
            .zip(row)
            .map(|(a, x)| format!("{a}={x}"))
            .collect();
        writeln!(out, "value {v} at {}", cells.join(", ")).unwrap();
    }
    let code = match status.verdict {
        Prop3Verdict::Falsifiable => EXIT_COUNTERMODEL,
        _ => EXIT_OK,
    };
    Ok((code, out))
}
