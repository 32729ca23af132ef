//! The `roc` command line. Results go to `out`, diagnostics to `err`.
//! Exit codes: 0 success, 1 findings (violations, uncovered problems,
//! unsupported goals, unreachable exit), 2 usage, I/O or parse errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::alignment::{align, component_table, ComponentMap, PlaceCorrespondence, Problem};
use crate::casebase::{self, reuse, test_reuse, Scenario, SimilarityWeights};
use crate::dot::{goals_to_dot, process_to_dot};
use crate::dsl::{self, DslError};
use crate::goals::GoalGraph;
use crate::net::{ModelKind, ProcessModel, RefinementTree, DEFAULT_BOUND};
use crate::report::{render_components, render_report, ReportFormat};
use crate::violation::Violation;
use crate::Id;

#[derive(Debug, Parser)]
#[command(name = "roc", version, about = "Model, align and reuse organisational change projects")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check model files for well-formedness.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Check that the exit is reachable and every fragment can fire.
    Fulfil {
        model: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Align an As-Is model with a To-Be model.
    Align {
        as_is: PathBuf,
        to_be: PathBuf,
        /// Place correspondence; defaults to pairing equal place ids.
        #[arg(long)]
        corr: Option<PathBuf>,
        #[arg(long)]
        problems: Option<PathBuf>,
        #[arg(long, default_value = "plain")]
        format: String,
    },
    /// Print the fragment-to-component table.
    Components { to_be: PathBuf, map: PathBuf },
    /// Check that every enterprise leaf goal is supported by a realised ERP goal.
    GoalsCheck {
        goals: PathBuf,
        #[arg(required = true)]
        to_be: Vec<PathBuf>,
    },
    /// Validate a refinement tree against a model.
    RefineCheck { model: PathBuf, tree: PathBuf },
    /// Case base operations.
    Case {
        #[command(subcommand)]
        op: CaseOp,
    },
    /// Write a Graphviz rendering of a process model or goal graph.
    ExportDot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CaseBaseArg {
    /// Case base directory.
    #[arg(long, env = "ROC_CASEBASE")]
    casebase: PathBuf,
}

#[derive(Debug, Subcommand)]
enum CaseOp {
    /// Store a finished project.
    Retain {
        #[command(flatten)]
        cb: CaseBaseArg,
        #[arg(long)]
        id: String,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        goals: PathBuf,
        #[arg(long)]
        as_is: PathBuf,
        #[arg(long)]
        to_be: PathBuf,
        #[arg(long)]
        cmap: Option<PathBuf>,
        #[arg(long)]
        corr: Option<PathBuf>,
        #[arg(long)]
        problems: Option<PathBuf>,
        /// `key=value` metadata, repeatable.
        #[arg(long = "meta")]
        meta: Vec<String>,
        #[arg(long)]
        overwrite: bool,
    },
    /// Rank stored cases by similarity to a new one.
    Retrieve {
        #[command(flatten)]
        cb: CaseBaseArg,
        #[arg(long)]
        goals: Option<PathBuf>,
        #[arg(long)]
        to_be: Option<PathBuf>,
        #[arg(long)]
        cmap: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Goal, place, strategy and component weights.
        #[arg(long, default_value = "1,1,1,1")]
        weights: String,
    },
    /// Draft a To-Be model from a stored case in the vocabulary of a new one.
    Reuse {
        #[command(flatten)]
        cb: CaseBaseArg,
        id: String,
        /// Model whose place labels the draft adopts.
        #[arg(long)]
        vocabulary: PathBuf,
        /// Stored To-Be place -> vocabulary place; defaults to equal ids.
        #[arg(long)]
        corr: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
}

/// Error ending a command with exit code 2.
struct Fatal(String);

impl From<DslError> for Fatal {
    fn from(e: DslError) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<i32, Fatal>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn named(path: &Path) -> String {
    path.display().to_string()
}

fn load_process(path: &Path) -> Result<ProcessModel, Fatal> {
    Ok(dsl::parse_process(&read(path)?).map_err(|e| e.with_file(named(path)))?)
}

fn load_goals(path: &Path) -> Result<GoalGraph, Fatal> {
    Ok(dsl::parse_goals(&read(path)?).map_err(|e| e.with_file(named(path)))?)
}

fn load_components(path: &Path) -> Result<ComponentMap, Fatal> {
    dsl::parse_components(&read(path)?).map_err(|e| Fatal(e.with_file(named(path)).to_string()))
}

fn load_registry(path: &Path) -> Result<Vec<Problem>, Fatal> {
    dsl::parse_registry(&read(path)?).map_err(|e| Fatal(e.with_file(named(path)).to_string()))
}

fn load_correspondence(path: &Path) -> Result<PlaceCorrespondence, Fatal> {
    dsl::parse_correspondence(&read(path)?).map_err(|e| Fatal(e.with_file(named(path)).to_string()))
}

fn load_refinement(path: &Path) -> Result<RefinementTree, Fatal> {
    dsl::parse_refinement(&read(path)?).map_err(|e| Fatal(e.with_file(named(path)).to_string()))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Fatal> {
    out.write_all(text.as_bytes()).map_err(|e| Fatal(format!("writing output: {e}")))
}

fn report_violations(err: &mut dyn Write, file: &Path, violations: &[Violation]) {
    for v in violations {
        let _ = writeln!(err, "{}: {v}", file.display());
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { files } => validate(&files, out, err),
        Command::Fulfil { model, bound } => {
            if bound == 0 {
                return Err(Fatal("--bound must be positive".into()));
            }
            let m = load_process(&model)?;
            let r = m.check_fulfilment(bound);
            let dead = r.dead_fragments.iter().map(Id::as_str).collect::<Vec<_>>().join(", ");
            write_out(
                out,
                &format!(
                    "exit reachable: {}\ndead fragments: {}\nexplored markings: {}\nbound hit: {}\n",
                    if r.exit_reachable { "yes" } else { "no" },
                    if dead.is_empty() { "none" } else { &dead },
                    r.explored_markings,
                    if r.bound_hit { "yes" } else { "no" },
                ),
            )?;
            Ok(if r.exit_reachable && r.dead_fragments.is_empty() { 0 } else { 1 })
        }
        Command::Align {
            as_is,
            to_be,
            corr,
            problems,
            format,
        } => {
            let format: ReportFormat = format.parse().map_err(|e: crate::report::UnknownFormat| Fatal(e.to_string()))?;
            let a = load_process(&as_is)?;
            let b = load_process(&to_be)?;
            let corr = match corr {
                Some(p) => load_correspondence(&p)?,
                None => PlaceCorrespondence::identity(&a, &b),
            };
            let mut report = align(&a, &b, &corr).map_err(|e| Fatal(e.to_string()))?;
            if let Some(p) = problems {
                let registry = load_registry(&p)?;
                report.apply_registry(&registry).map_err(|e| Fatal(e.to_string()))?;
            }
            write_out(out, &render_report(&report, format))?;
            if report.uncovered.is_empty() {
                Ok(0)
            } else {
                let _ = writeln!(err, "{} problem(s) not resolved by any To-Be fragment", report.uncovered.len());
                Ok(1)
            }
        }
        Command::Components { to_be, map } => {
            let m = load_process(&to_be)?;
            let cmap = load_components(&map)?;
            match component_table(&m, &cmap) {
                Ok(rows) => {
                    write_out(out, &render_components(&rows))?;
                    Ok(0)
                }
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", map.display());
                    Ok(1)
                }
            }
        }
        Command::GoalsCheck { goals, to_be } => {
            let g = load_goals(&goals)?;
            let models = to_be.iter().map(|p| load_process(p)).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&ProcessModel> = models.iter().collect();
            let r = g.support_check_all(&refs);
            let mut text = String::new();
            for (goal, supporters) in &r.supported {
                let by = supporters.iter().map(Id::as_str).collect::<Vec<_>>().join(", ");
                text.push_str(&format!("supported   {goal}  by {by}\n"));
            }
            for goal in &r.unsupported {
                text.push_str(&format!("unsupported {goal}\n"));
            }
            write_out(out, &text)?;
            Ok(if r.unsupported.is_empty() { 0 } else { 1 })
        }
        Command::RefineCheck { model, tree } => {
            let m = load_process(&model)?;
            let t = load_refinement(&tree)?;
            let violations = m.validate_refinement(&t);
            report_violations(err, &tree, &violations);
            if violations.is_empty() {
                write_out(out, &format!("{}: ok\n", tree.display()))?;
                Ok(0)
            } else {
                Ok(1)
            }
        }
        Command::ExportDot { input, output } => {
            let text = read(&input)?;
            let dot = match input.extension().and_then(|e| e.to_str()) {
                Some("proc") => process_to_dot(&dsl::parse_process(&text).map_err(|e| e.with_file(named(&input)))?),
                Some("goals") => goals_to_dot(&dsl::parse_goals(&text).map_err(|e| e.with_file(named(&input)))?),
                _ => return Err(Fatal(format!("{}: expected a .proc or .goals file", input.display()))),
            };
            match output {
                Some(path) => fs::write(&path, dot).map_err(|e| Fatal(format!("{}: {e}", path.display())))?,
                None => write_out(out, &dot)?,
            }
            Ok(0)
        }
        Command::Case { op } => case(op, out, err),
    }
}

fn validate(files: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut code = 0;
    for file in files {
        let text = read(file)?;
        let name = named(file);
        let parse_fail = |e: dsl::ParseError| Fatal(e.with_file(name.clone()).to_string());
        let violations = match file.extension().and_then(|e| e.to_str()) {
            Some("proc") => dsl::parse_process_unchecked(&text).map_err(parse_fail)?.validate(),
            Some("goals") => dsl::parse_goals_unchecked(&text).map_err(parse_fail)?.validate(),
            Some("problems") => dsl::parse_registry(&text).map(|_| Vec::new()).map_err(parse_fail)?,
            Some("cmap") => dsl::parse_components(&text).map(|_| Vec::new()).map_err(parse_fail)?,
            Some("corr") => dsl::parse_correspondence(&text).map(|_| Vec::new()).map_err(parse_fail)?,
            Some("refine") => dsl::parse_refinement(&text).map(|_| Vec::new()).map_err(parse_fail)?,
            _ => return Err(Fatal(format!("{name}: unknown file kind"))),
        };
        if violations.is_empty() {
            write_out(out, &format!("{name}: ok\n"))?;
        } else {
            report_violations(err, file, &violations);
            code = 1;
        }
    }
    Ok(code)
}

fn parse_weights(text: &str) -> Result<SimilarityWeights, Fatal> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Fatal(format!("--weights {text:?}: expected four comma-separated numbers")))?;
    let [g, p, s, c] = parts[..] else {
        return Err(Fatal(format!("--weights {text:?}: expected four comma-separated numbers")));
    };
    SimilarityWeights::new(g, p, s, c).map_err(|e| Fatal(e.to_string()))
}

fn parse_id(text: &str) -> Result<Id, Fatal> {
    if Id::is_valid(text) {
        Ok(Id::from(text))
    } else {
        Err(Fatal(format!("{text:?} is not a valid scenario id")))
    }
}

fn case(op: CaseOp, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let storage = |e: casebase::CaseBaseError| Fatal(e.to_string());
    match op {
        CaseOp::Retain {
            cb,
            id,
            name,
            goals,
            as_is,
            to_be,
            cmap,
            corr,
            problems,
            meta,
            overwrite,
        } => {
            let id = parse_id(&id)?;
            let g = load_goals(&goals)?;
            let a = load_process(&as_is)?;
            let b = load_process(&to_be)?;
            let cmap = cmap.map(|p| load_components(&p)).transpose()?.unwrap_or_default();
            let corr = match corr {
                Some(p) => load_correspondence(&p)?,
                None => PlaceCorrespondence::identity(&a, &b),
            };
            let problems = problems.map(|p| load_registry(&p)).transpose()?.unwrap_or_default();
            let mut metadata = BTreeMap::new();
            for kv in meta {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Fatal(format!("--meta {kv:?}: expected key=value")))?;
                metadata.insert(k.to_string(), v.to_string());
            }
            let name = name.unwrap_or_else(|| id.to_string());
            let mut s = Scenario::build(id, name, g, a, b, cmap, corr, problems).map_err(storage)?;
            s.metadata = metadata;
            let mut base = casebase::load(&cb.casebase).map_err(storage)?;
            match base.retain(s, overwrite) {
                Ok(()) => {
                    write_out(out, &format!("retained; case base holds {} scenario(s)\n", base.len()))?;
                    Ok(0)
                }
                Err(e @ casebase::CaseBaseError::DuplicateId(_)) => {
                    let _ = writeln!(err, "{e}; pass --overwrite to replace it");
                    Ok(1)
                }
                Err(e) => Err(storage(e)),
            }
        }
        CaseOp::Retrieve {
            cb,
            goals,
            to_be,
            cmap,
            k,
            weights,
        } => {
            if k == 0 {
                return Err(Fatal("--k must be positive".into()));
            }
            let w = parse_weights(&weights)?;
            let base = casebase::load(&cb.casebase).map_err(storage)?;
            let query = query_scenario(goals, to_be, cmap)?;
            let ranked = base.retrieve(&query, k, &w).map_err(storage)?;
            let width = ranked.iter().map(|(id, _)| id.as_str().len()).max().unwrap_or(0);
            let mut text = String::new();
            for (i, (id, score)) in ranked.iter().enumerate() {
                text.push_str(&format!("{}  {:<width$}  {:.6}\n", i + 1, id.as_str(), score));
            }
            write_out(out, &text)?;
            Ok(0)
        }
        CaseOp::Reuse {
            cb,
            id,
            vocabulary,
            corr,
            bound,
        } => {
            let id = parse_id(&id)?;
            let base = casebase::load(&cb.casebase).map_err(storage)?;
            let retrieved = base.get(&id).ok_or_else(|| Fatal(format!("no scenario {id} in the case base")))?;
            let vocab = load_process(&vocabulary)?;
            let corr = match corr {
                Some(p) => load_correspondence(&p)?,
                None => PlaceCorrespondence::identity(&retrieved.to_be, &vocab),
            };
            let draft = reuse(retrieved, &corr, &vocab).map_err(storage)?;
            write_out(out, &dsl::serialize_process(&draft.model))?;
            for p in &draft.flagged_places {
                let _ = writeln!(err, "review: place {p} has no counterpart and keeps its old label");
            }
            let _ = writeln!(err, "review: goal graph copied unchanged from {id}");
            let r = test_reuse(&draft.model, bound);
            let _ = writeln!(err, "exit reachable: {}", if r.exit_reachable { "yes" } else { "no" });
            Ok(if r.exit_reachable { 0 } else { 1 })
        }
    }
}

/// A new case made of whatever the analyst has so far.
fn query_scenario(goals: Option<PathBuf>, to_be: Option<PathBuf>, cmap: Option<PathBuf>) -> Result<Scenario, Fatal> {
    let goal_graph = goals.map(|p| load_goals(&p)).transpose()?.unwrap_or_default();
    let to_be = to_be
        .map(|p| load_process(&p))
        .transpose()?
        .unwrap_or_else(|| ProcessModel::new("query", ModelKind::ToBe));
    let component_map = cmap.map(|p| load_components(&p)).transpose()?.unwrap_or_default();
    let as_is = ProcessModel::new("query", ModelKind::AsIs);
    let report = align(&as_is, &ProcessModel::new("query", ModelKind::ToBe), &PlaceCorrespondence::new())
        .map_err(|e| Fatal(e.to_string()))?;
    Ok(Scenario {
        id: Id::from("query"),
        name: "query".into(),
        goal_graph,
        as_is,
        to_be,
        report,
        component_map,
        correspondence: PlaceCorrespondence::new(),
        problems: Vec::new(),
        metadata: BTreeMap::new(),
    })
}
