//! Command line surface and dispatch.

use crate::commands;
use crate::report::{digest, CmdError, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser, Debug, Clone)]
#[command(name = "modelbench", version, about = "Executable model-structure checks for finite categories, complexes, dg algebras and dg categories")]
pub struct Cli {
    #[command(flatten)]
    pub flags: Flags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// An inclusive degree range written `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
        let lo = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
        let hi = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
        if lo > hi {
            return Err(format!("empty window {lo}..{hi}"));
        }
        Ok(Window { lo, hi })
    }
}

#[derive(Args, Debug, Clone)]
pub struct Flags {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Stage cap for replacements and the small object argument.
    #[arg(long, global = true)]
    pub max_stages: Option<usize>,
    /// Degree window, e.g. `--window=-6..0`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<Window>,
    /// Word length (weight) cap for truncations and searches.
    #[arg(long, global = true)]
    pub max_word_len: Option<u32>,
    /// Cap on enumerated candidates.
    #[arg(long, global = true)]
    pub guard: Option<usize>,
    /// Re-check every emitted witness by an independent route.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Flags {
    pub fn window_or(&self, lo: i64, hi: i64) -> (i64, i64) {
        self.window.map_or((lo, hi), |w| (w.lo, w.hi))
    }

    pub fn guard(&self) -> usize {
        self.guard.unwrap_or(modelbench::cat::DEFAULT_GUARD)
    }

    pub fn len_or(&self, n: u32) -> u32 {
        self.max_word_len.unwrap_or(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Cylinder,
    Cocylinder,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parse a document and resolve every block.
    Parse { file: Option<PathBuf> },
    /// Print a document in canonical form.
    Print { file: Option<PathBuf> },
    /// Model axioms on the named categories, or on the built-in corpus.
    CheckModelAxioms {
        file: Option<PathBuf>,
        #[arg(long = "category")]
        categories: Vec<String>,
    },
    /// Structural classes of a functor.
    Classify {
        file: Option<PathBuf>,
        #[arg(long)]
        functor: String,
    },
    /// Whether `left` has the left lifting property against `right`.
    Orthogonal {
        file: Option<PathBuf>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// A diagonal filler of a commuting square.
    Lift {
        file: Option<PathBuf>,
        #[arg(long)]
        square: String,
    },
    /// Bounded small object argument against the generating injections.
    Soa {
        file: Option<PathBuf>,
        #[arg(long)]
        functor: String,
    },
    /// Factor a functor through its cylinder or cocylinder.
    Factorize {
        file: Option<PathBuf>,
        #[arg(long)]
        functor: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Natural isomorphism of two parallel functors by three routes.
    Homotopic {
        file: Option<PathBuf>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Functors between two categories up to natural isomorphism.
    HoHom {
        file: Option<PathBuf>,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Limit of a diagram of finite categories.
    Limit {
        file: Option<PathBuf>,
        #[arg(long)]
        diagram: String,
    },
    /// Colimit presentation, saturated up to `--max-word-len` when given.
    Colimit {
        file: Option<PathBuf>,
        #[arg(long)]
        diagram: String,
    },
    /// Paths of a quiver up to `--max-word-len`.
    Paths {
        file: Option<PathBuf>,
        #[arg(long)]
        quiver: String,
    },
    /// Cohomology of a complex, with chosen representatives.
    Cohomology {
        file: Option<PathBuf>,
        #[arg(long)]
        complex: String,
    },
    /// The three characterizations of surjective quasi-isomorphisms.
    SurjQuas {
        file: Option<PathBuf>,
        #[arg(long)]
        map: String,
    },
    /// Commands on dg algebras.
    Dgalg {
        #[command(subcommand)]
        op: DgAlgOp,
    },
    /// Commands on dg categories.
    Dgcat {
        #[command(subcommand)]
        op: DgCatOp,
    },
    /// Every command block of the built-in corpus plus seeded random checks.
    Suite,
    /// Execute a `command` block of a document.
    Run {
        file: Option<PathBuf>,
        #[arg(long)]
        command: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum DgAlgOp {
    /// Bounded cofibrant replacement of a finite algebra.
    Replace {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
    },
    /// The cocylinder projections and their homotopies.
    Homotopy {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
    },
    /// Cohomology of each Hom complex of a truncated presentation.
    Cohomology {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum DgCatOp {
    /// Symbolic and truncated well-formedness checks, with semi-free layers.
    Validate {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
    },
    /// Identity, diagonal and projection functors of the path object.
    Classify {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
    },
    /// Adjoin the cone of a morphism and check it.
    Cone {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        morphism: String,
    },
    /// Bounded checks on the two-object contractible category.
    KReport,
    /// The category of closed morphisms and the path object.
    Mor {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
    },
    /// Endomorphism algebras joined by a homotopy equivalence.
    Zigzag {
        file: Option<PathBuf>,
        #[arg(long)]
        name: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        morphism: String,
    },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Parse { .. } => "parse".into(),
            Command::Print { .. } => "print".into(),
            Command::CheckModelAxioms { .. } => "check-model-axioms".into(),
            Command::Classify { .. } => "classify".into(),
            Command::Orthogonal { .. } => "orthogonal".into(),
            Command::Lift { .. } => "lift".into(),
            Command::Soa { .. } => "soa".into(),
            Command::Factorize { .. } => "factorize".into(),
            Command::Homotopic { .. } => "homotopic".into(),
            Command::HoHom { .. } => "ho-hom".into(),
            Command::Limit { .. } => "limit".into(),
            Command::Colimit { .. } => "colimit".into(),
            Command::Paths { .. } => "paths".into(),
            Command::Cohomology { .. } => "cohomology".into(),
            Command::SurjQuas { .. } => "surj-quas".into(),
            Command::Dgalg { op } => format!(
                "dgalg {}",
                match op {
                    DgAlgOp::Replace { .. } => "replace",
                    DgAlgOp::Homotopy { .. } => "homotopy",
                    DgAlgOp::Cohomology { .. } => "cohomology",
                }
            ),
            Command::Dgcat { op } => format!(
                "dgcat {}",
                match op {
                    DgCatOp::Validate { .. } => "validate",
                    DgCatOp::Classify { .. } => "classify",
                    DgCatOp::Cone { .. } => "cone",
                    DgCatOp::KReport => "k-report",
                    DgCatOp::Mor { .. } => "mor",
                    DgCatOp::Zigzag { .. } => "zigzag",
                }
            ),
            Command::Suite => "suite".into(),
            Command::Run { .. } => "run".into(),
        }
    }

    pub fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Parse { file }
            | Command::Print { file }
            | Command::CheckModelAxioms { file, .. }
            | Command::Classify { file, .. }
            | Command::Orthogonal { file, .. }
            | Command::Lift { file, .. }
            | Command::Soa { file, .. }
            | Command::Factorize { file, .. }
            | Command::Homotopic { file, .. }
            | Command::HoHom { file, .. }
            | Command::Limit { file, .. }
            | Command::Colimit { file, .. }
            | Command::Paths { file, .. }
            | Command::Cohomology { file, .. }
            | Command::SurjQuas { file, .. }
            | Command::Run { file, .. } => file.as_ref(),
            Command::Dgalg { op } => match op {
                DgAlgOp::Replace { file, .. } | DgAlgOp::Homotopy { file, .. } | DgAlgOp::Cohomology { file, .. } => file.as_ref(),
            },
            Command::Dgcat { op } => match op {
                DgCatOp::Validate { file, .. } | DgCatOp::Classify { file, .. } | DgCatOp::Cone { file, .. } | DgCatOp::Mor { file, .. } | DgCatOp::Zigzag { file, .. } => {
                    file.as_ref()
                }
                DgCatOp::KReport => None,
            },
            Command::Suite => None,
        }
    }
}

/// A document given on the command line or by an enclosing `run`.
#[derive(Clone)]
pub struct Source {
    pub text: String,
    pub doc: crate::Document,
}

impl Source {
    pub fn parse(text: String) -> Result<Source, CmdError> {
        let doc = crate::parse(&text)?;
        Ok(Source { text, doc })
    }
}

/// The document text, when there is one, and the parsed document.
fn load(cmd: &Command, inherited: Option<&Source>) -> (String, Result<Option<Source>, CmdError>) {
    match cmd.file() {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => (text.clone(), Source::parse(text).map(Some)),
            Err(e) => (String::new(), Err(CmdError::input(format!("cannot read {}: {e}", path.display())))),
        },
        None => (inherited.map(|s| s.text.clone()).unwrap_or_default(), Ok(inherited.cloned())),
    }
}

/// Runs one command given its arguments without the file, returning the
/// rendered output and the exit code.
pub fn execute(cli: &Cli, argv: &[String], inherited: Option<&Source>) -> (String, i32) {
    if let Command::Print { .. } = &cli.command {
        let (text, src) = load(&cli.command, inherited);
        return match src {
            Ok(Some(src)) => (crate::print(&src.doc), 0),
            Ok(None) => report(cli, argv, &text, Err(CmdError::input("print needs a document"))),
            Err(e) => report(cli, argv, &text, Err(e)),
        };
    }
    let started = Instant::now();
    let (text, src) = load(&cli.command, inherited);
    let result = match (&cli.command, src) {
        (_, Err(e)) => Err(e),
        (Command::Run { command, .. }, Ok(src)) => return run_block(cli, command, src),
        (c, Ok(src)) => commands::dispatch(c, &cli.flags, src.as_ref()),
    };
    let (mut out, code) = report(cli, argv, &text, result);
    if cli.flags.timings {
        out = attach_timing(&out, cli.flags.format, started.elapsed().as_millis());
    }
    (out, code)
}

fn attach_timing(out: &str, format: Format, ms: u128) -> String {
    match format {
        Format::Json => match serde_json::from_str::<serde_json::Value>(out) {
            Ok(serde_json::Value::Object(mut m)) => {
                m.insert("timings".into(), serde_json::json!({ "total_ms": ms }));
                serde_json::to_string_pretty(&serde_json::Value::Object(m)).unwrap() + "\n"
            }
            _ => out.to_string(),
        },
        Format::Text => format!("{out}timings:\n  total_ms: {ms}\n"),
    }
}

fn report(cli: &Cli, argv: &[String], text: &str, result: Result<crate::report::Outcome, CmdError>) -> (String, i32) {
    let inputs = digest(&[text.as_bytes(), argv.join("\0").as_bytes()]);
    let r = Report::from_result(&cli.command.name(), inputs, result);
    (r.render(cli.flags.format == Format::Text), r.status.exit_code())
}

/// The argument vector without the program name and the document path.
pub fn normalized_argv(args: &[String], file: Option<&PathBuf>) -> Vec<String> {
    let f = file.map(|p| p.to_string_lossy().into_owned());
    args.iter().skip(1).filter(|a| Some(*a) != f.as_ref()).cloned().collect()
}

fn run_block(outer: &Cli, name: &str, src: Option<Source>) -> (String, i32) {
    let fail = |msg: String| {
        let r = Report::from_result("run", digest(&[name.as_bytes()]), Err(CmdError::input(msg)));
        (r.render(outer.flags.format == Format::Text), r.status.exit_code())
    };
    let Some(src) = src else { return fail("run needs a document".into()) };
    let argv = match src.doc.get(name).map(|b| &b.body) {
        Some(crate::ast::Body::Command(c)) => c.argv.clone(),
        Some(b) => return fail(format!("`{name}` is a {}, not a command", b.keyword())),
        None => return fail(format!("no command named `{name}`")),
    };
    let full: Vec<String> = std::iter::once("modelbench".to_string()).chain(argv.iter().cloned()).collect();
    let mut inner = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => return fail(format!("command `{name}`: {}", e.to_string().lines().next().unwrap_or_default())),
    };
    if matches!(inner.command, Command::Run { .. }) {
        return fail(format!("command `{name}` may not run another command"));
    }
    inner.flags.format = outer.flags.format;
    inner.flags.verify |= outer.flags.verify;
    inner.flags.timings = outer.flags.timings;
    execute(&inner, &argv, Some(&src))
}

/// Entry point shared by the binary and the tests.
pub fn main_with(args: Vec<String>) -> Result<(String, i32), clap::Error> {
    let cli = Cli::try_parse_from(&args)?;
    let argv = normalized_argv(&args, cli.command.file());
    Ok(execute(&cli, &argv, None))
}
