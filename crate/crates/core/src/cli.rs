//! Command-line front end. [`run`] takes the argument list and two writers
//! and returns the exit code: 0 on success, 1 when a verification fails,
//! 2 on malformed input.
//!
//! A `<file>` argument is a path, or `corpus:<name>` for a bundled entry.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::catlab::{enumerate_subcategory_lattice, validate_table, CategoryTable, SubcategoryKind, TableDoc};
use crate::check::{self, CheckReport};
use crate::corpus;
use crate::error::{Error, Result};
use crate::hom::check_hom;
use crate::lattice::{load_lattice, FiniteLattice, LatticeDoc};
use crate::space::{build_space, SpaceKind};
use crate::spectra::spectrum_report;
use crate::topology::{load_space, t0_quotient, FiniteSpace, SpaceDoc};

#[derive(Debug, Parser)]
#[command(name = "latspace", version, about = "Spectra and classifying spaces of finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    file: String,
    /// Subcategory kind, required for table documents.
    #[arg(long = "type")]
    table_kind: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load a document and report what it is.
    Validate { file: String },
    /// Classify every element and list the points of every kind of space.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Build one classifying space.
    Space {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        kind: String,
        /// Also write the specialization order as DOT to this path.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Run theorem checks; exits 1 if any fails.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        distributive: bool,
        #[arg(long)]
        t0: bool,
        #[arg(long, value_name = "CLASS")]
        bijection: Option<String>,
        #[arg(long, value_name = "HOMFILE")]
        functor: Option<String>,
        #[arg(long)]
        text: bool,
    },
    /// T0-quotient of a space.
    Quotient { file: String },
    /// Lattice of subcategories of a table.
    Catlab {
        file: String,
        #[arg(long = "type")]
        kind: String,
    },
    /// Bundled examples.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    List,
    Run {
        name: Option<String>,
        #[arg(long)]
        text: bool,
    },
}

/// Hom document: `{ "map": [index], "target": lattice-doc? }`. Without a
/// target the map is an endomorphism of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<LatticeDoc>,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Lattice(FiniteLattice),
    Space(FiniteSpace),
    Table(CategoryTable),
}

enum Failure {
    /// Exit 1; the report was already written.
    Verification,
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Reads a path or a `corpus:` reference. Bundled tables come with their
/// entry's subcategory kind.
fn read_source(file: &str) -> std::result::Result<(String, Option<String>), Failure> {
    if let Some(name) = file.strip_prefix("corpus:") {
        if let Some(e) = corpus::entry(name) {
            return Ok((e.document().to_string(), e.subcategory.clone()));
        }
        return corpus::bundled_file(name)
            .map(|body| (body.to_string(), None))
            .ok_or_else(|| Failure::Input(format!("no bundled entry named {name}")));
    }
    std::fs::read_to_string(file)
        .map(|body| (body, None))
        .map_err(|e| Failure::Input(format!("{file}: {e}")))
}

/// Sniffs the document type from its keys.
pub fn parse_document(body: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(body)?;
    if value.get("objects").is_some() {
        let doc: TableDoc = serde_json::from_value(value)?;
        Ok(Document::Table(validate_table(&doc)?))
    } else if value.get("closed_sets").is_some() {
        let doc: SpaceDoc = serde_json::from_value(value)?;
        Ok(Document::Space(load_space(&doc)?))
    } else {
        let doc: LatticeDoc = serde_json::from_value(value)?;
        Ok(Document::Lattice(load_lattice(&doc)?))
    }
}

struct Loaded {
    doc: Document,
    kind: Option<String>,
}

fn load(file: &str, kind: Option<&str>) -> std::result::Result<Loaded, Failure> {
    let (body, bundled_kind) = read_source(file)?;
    let doc = parse_document(&body).map_err(|e| Failure::Input(format!("{file}: {e}")))?;
    Ok(Loaded { doc, kind: kind.map(str::to_string).or(bundled_kind) })
}

impl Loaded {
    fn table_kind(&self) -> std::result::Result<SubcategoryKind, Failure> {
        match &self.kind {
            Some(k) => Ok(k.parse()?),
            None => Err(Failure::Input("table documents need --type".into())),
        }
    }

    /// The lattice a document stands for: itself, the closed sets of a
    /// space, or the subcategories of a table.
    fn lattice(&self) -> std::result::Result<FiniteLattice, Failure> {
        match &self.doc {
            Document::Lattice(l) => Ok(l.clone()),
            Document::Space(x) => Ok(x.closed_set_lattice()),
            Document::Table(t) => Ok(enumerate_subcategory_lattice(t, self.table_kind()?)?),
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out, "{s}").map_err(|e| Failure::Input(e.to_string()))
}

fn emit_report(out: &mut dyn Write, report: &CheckReport, text: bool) -> Outcome {
    if text {
        write!(out, "{}", report.to_text()).map_err(|e| Failure::Input(e.to_string()))?;
    } else {
        emit_json(out, report)?;
    }
    if report.ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn validate(out: &mut dyn Write, file: &str) -> Outcome {
    let loaded = load(file, None)?;
    let summary = match &loaded.doc {
        Document::Lattice(l) => serde_json::json!({
            "type": "lattice", "name": l.name(), "elements": l.len(), "covers": l.covers().len(),
        }),
        Document::Space(x) => serde_json::json!({
            "type": "space", "name": x.name(), "points": x.len(), "closed_sets": x.closed_sets().len(),
        }),
        Document::Table(t) => serde_json::json!({
            "type": "table", "name": t.name, "objects": t.len(), "sequences": t.ses.len(),
        }),
    };
    emit_json(out, &summary)
}

fn space(out: &mut dyn Write, input: &Input, kind: &str, dot: Option<&PathBuf>) -> Outcome {
    let kind: SpaceKind = kind.parse()?;
    let lattice = load(&input.file, input.table_kind.as_deref())?.lattice()?;
    let s = build_space(&lattice, kind);
    if let Some(path) = dot {
        std::fs::write(path, s.to_dot()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    emit_json(out, &s)
}

struct CheckFlags<'a> {
    all: bool,
    distributive: bool,
    t0: bool,
    bijection: Option<&'a str>,
    functor: Option<&'a str>,
}

fn check_cmd(out: &mut dyn Write, input: &Input, flags: CheckFlags<'_>, text: bool) -> Outcome {
    let loaded = load(&input.file, input.table_kind.as_deref())?;
    let lattice = loaded.lattice()?;
    let none = !(flags.distributive || flags.t0 || flags.bijection.is_some() || flags.functor.is_some());
    let all = flags.all || none;
    let mut report = CheckReport::new(match &loaded.doc {
        Document::Space(x) => format!("space {} ({} points)", x.name(), x.len()),
        Document::Table(t) => format!("table {} ({} objects)", t.name, t.len()),
        Document::Lattice(_) => format!("lattice {} ({} elements)", lattice.name(), lattice.len()),
    });

    if all {
        if let Document::Space(x) = &loaded.doc {
            report.extend(check::space_lines(x));
        }
        if let Document::Table(t) = &loaded.doc {
            let kind = loaded.table_kind()?;
            if kind == SubcategoryKind::Serre {
                report.extend(check::monoform_lines(t, kind)?);
            }
        }
        report.extend(check::lattice_suite(&lattice).lines);
    } else {
        if flags.distributive {
            report.push(check::distributivity(&lattice));
        }
        if flags.t0 {
            if let Document::Space(x) = &loaded.doc {
                report.extend(check::space_lines(x));
            }
            report.push(check::t0(&lattice));
        }
        if let Some(class) = flags.bijection {
            report.push(check::bijection(&lattice, class.parse()?));
        }
    }
    if let Some(homfile) = flags.functor {
        let (body, _) = read_source(homfile)?;
        let doc: HomDoc = serde_json::from_str(&body).map_err(|e| Failure::Input(format!("{homfile}: {e}")))?;
        let target = match &doc.target {
            Some(t) => load_lattice(t)?,
            None => lattice.clone(),
        };
        let hom = check_hom(doc.map.clone(), &lattice, &target)?;
        report.extend(check::hom_suite(&hom).lines);
    }
    emit_report(out, &report, text)
}

fn quotient(out: &mut dyn Write, file: &str) -> Outcome {
    let Document::Space(x) = load(file, None)?.doc else {
        return Err(Failure::Input(format!("{file}: not a space document")));
    };
    let q = t0_quotient(&x);
    let classes: Vec<Vec<&str>> =
        q.classes.iter().map(|c| c.iter().map(|&p| x.points()[p].as_str()).collect()).collect();
    emit_json(
        out,
        &serde_json::json!({
            "source": x.name(),
            "classes": classes,
            "projection": q.projection,
            "quotient": q.quotient.to_doc(),
            "t0": q.quotient.is_t0(),
        }),
    )
}

fn catlab(out: &mut dyn Write, file: &str, kind: &str) -> Outcome {
    let loaded = load(file, Some(kind))?;
    let Document::Table(t) = &loaded.doc else {
        return Err(Failure::Input(format!("{file}: not a table document")));
    };
    let lattice = enumerate_subcategory_lattice(t, loaded.table_kind()?)?;
    emit_json(out, &lattice.to_doc())
}

fn corpus_cmd(out: &mut dyn Write, action: &CorpusAction) -> Outcome {
    match action {
        CorpusAction::List => {
            let list: Vec<serde_json::Value> = corpus::entries()
                .iter()
                .map(|e| serde_json::json!({ "name": e.name, "kind": e.kind, "file": e.file, "type": e.subcategory }))
                .collect();
            emit_json(out, &list)
        }
        CorpusAction::Run { name, text } => {
            let entries: Vec<_> = match name {
                Some(n) => vec![corpus::entry(n).ok_or_else(|| Failure::Input(format!("no bundled entry named {n}")))?],
                None => corpus::entries(),
            };
            let mut reports = Vec::new();
            for e in &entries {
                reports.push(check::run_entry(e)?);
            }
            let ok = reports.iter().all(|r| r.ok);
            if *text {
                for r in &reports {
                    write!(out, "{}", r.to_text()).map_err(|e| Failure::Input(e.to_string()))?;
                }
            } else {
                emit_json(out, &serde_json::json!({ "ok": ok, "entries": reports }))?;
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Validate { file } => validate(out, file),
        Command::Analyze { input, text, .. } => load(&input.file, input.table_kind.as_deref())
            .and_then(|l| l.lattice())
            .and_then(|l| {
                let report = spectrum_report(&l);
                if *text {
                    write!(out, "{}", report.to_text()).map_err(|e| Failure::Input(e.to_string()))
                } else {
                    emit_json(out, &report)
                }
            }),
        Command::Space { input, kind, dot } => space(out, input, kind, dot.as_ref()),
        Command::Check { input, all, distributive, t0, bijection, functor, text } => check_cmd(
            out,
            input,
            CheckFlags {
                all: *all,
                distributive: *distributive,
                t0: *t0,
                bijection: bijection.as_deref(),
                functor: functor.as_deref(),
            },
            *text,
        ),
        Command::Quotient { file } => quotient(out, file),
        Command::Catlab { file, kind } => catlab(out, file, kind),
        Command::Corpus { action } => corpus_cmd(out, action),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["latspace"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn missing_file_is_malformed() {
        let (code, _, err) = run_str(&["analyze", "missing.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("missing.json"));
    }

    #[test]
    fn kgp_space_of_a2() {
        let (code, out, _) = run_str(&["space", "corpus:a2-nullity", "--kind", "kgp"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["points"], serde_json::json!(["⟨0⟩", "⟨a⟩", "⟨c⟩"]));
    }

    #[test]
    fn check_all_on_a2() {
        let (code, out, _) = run_str(&["check", "corpus:a2-nullity", "--all", "--text"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("K family not a topology (counterexample attached)"));
        assert!(out.contains("5 closed subsets"));
    }

    #[test]
    fn table_needs_type() {
        let (code, _, err) = run_str(&["analyze", "corpus:a2.table.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("--type"));
    }
}
