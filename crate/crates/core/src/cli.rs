//! The `atlas` command line: `validate`, `convert`, `query`, `stats`.
//!
//! Exit codes: 0 success, 1 validation failure, 2 unreadable or
//! unparsable input, 3 unsupported operation. Data goes to stdout,
//! diagnostics to stderr. A path of `-` means stdin or stdout.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::aif::{self, Lexicon, ParseOptions};
use crate::content::Content;
use crate::convert::{self, ColumnTier};
use crate::graph::AnnotationGraph;
use crate::set::{AnnotationSet, Criterion};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Aif,
    TimitColumns,
    Lexicon,
    ReportText,
}

#[derive(Debug, Parser)]
#[command(
    name = "atlas",
    version,
    about = "Validate, convert and query annotation documents"
)]
pub struct Cli {
    /// Treat unknown XML elements and attributes as errors.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check documents for well-formedness.
    Validate {
        #[arg(long, value_enum, default_value = "aif")]
        from: Format,
        #[arg(long)]
        timeline: Option<String>,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Convert between formats.
    Convert {
        #[arg(long, value_enum)]
        from: Format,
        #[arg(long, value_enum)]
        to: Format,
        /// Arc type to write when converting to timit-columns.
        #[arg(long = "type")]
        arc_type: Option<String>,
        /// Timeline id for timit-columns input (default: first file stem).
        #[arg(long)]
        timeline: Option<String>,
        #[arg(short, long, default_value = "-")]
        output: String,
        /// Inputs; timit-columns takes one file per tier, as TYPE=PATH or a
        /// .wrd (W) / .phn (P) file.
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// List annotations matching every filter.
    Query {
        #[arg(long, value_enum, default_value = "aif")]
        from: Format,
        #[arg(long)]
        timeline: Option<String>,
        #[arg(long = "type")]
        types: Vec<String>,
        /// NAME=VALUE, matching a literal feature value.
        #[arg(long = "feature")]
        features: Vec<String>,
        #[arg(long = "signal-group")]
        signal_groups: Vec<String>,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Print object counts.
    Stats {
        #[arg(long, value_enum, default_value = "aif")]
        from: Format,
        #[arg(long)]
        timeline: Option<String>,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn unsupported(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_UNSUPPORTED,
            message: message.into(),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

enum Document {
    Graph(AnnotationGraph),
    Lexicon(Lexicon),
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_PARSE
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome<i32> {
    let opts = ParseOptions {
        strict: cli.strict,
        ..Default::default()
    };
    match &cli.command {
        Command::Validate {
            from,
            timeline,
            inputs,
        } => validate(*from, timeline.as_deref(), inputs, opts, out, err),
        Command::Convert {
            from,
            to,
            arc_type,
            timeline,
            output,
            inputs,
        } => {
            check_conversion(*from, *to)?;
            let doc = load(*from, inputs, timeline.as_deref(), opts)?;
            let bytes = render(&doc, *to, arc_type.as_deref())?;
            write_output(output, &bytes, out)?;
            Ok(EXIT_OK)
        }
        Command::Query {
            from,
            timeline,
            types,
            features,
            signal_groups,
            inputs,
        } => {
            let mut criteria: Vec<Criterion> = types.iter().map(Criterion::by_type).collect();
            for f in features {
                let (name, value) = f.split_once('=').ok_or_else(|| {
                    Failure::parse(format!("--feature expects NAME=VALUE, got {f:?}"))
                })?;
                criteria.push(Criterion::by_feature(name, Content::literal(value)));
            }
            criteria.extend(signal_groups.iter().map(Criterion::by_signal_group));
            let Document::Graph(g) = load(*from, inputs, timeline.as_deref(), opts)? else {
                return Err(Failure::unsupported("query needs an annotation document"));
            };
            write_all(
                out,
                query_lines(&AnnotationSet::from_graph(&g), &criteria).as_bytes(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Stats {
            from,
            timeline,
            inputs,
        } => {
            let doc = load(*from, inputs, timeline.as_deref(), opts)?;
            write_all(out, stats_text(&doc).as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn validate(
    from: Format,
    timeline: Option<&str>,
    inputs: &[String],
    opts: ParseOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome<i32> {
    let opts = ParseOptions {
        check_xrefs: false,
        ..opts
    };
    // Tier files together make one document; XML inputs are each their own.
    let groups: Vec<Vec<String>> = match from {
        Format::TimitColumns => vec![inputs.to_vec()],
        _ => inputs.iter().map(|p| vec![p.clone()]).collect(),
    };
    let mut code = EXIT_OK;
    for group in groups {
        let name = group.join(" ");
        let report = match load(from, &group, timeline, opts)? {
            Document::Graph(g) => g.validate(),
            Document::Lexicon(_) => Default::default(),
        };
        for v in report.iter() {
            let _ = writeln!(err, "{v}");
        }
        if report.is_empty() {
            write_all(out, format!("{name}: ok\n").as_bytes())?;
        } else {
            write_all(
                out,
                format!("{name}: {} violation(s)\n", report.len()).as_bytes(),
            )?;
            code = EXIT_INVALID;
        }
    }
    Ok(code)
}

fn check_conversion(from: Format, to: Format) -> Outcome {
    use Format::*;
    let ok = matches!(
        (from, to),
        (Aif | TimitColumns, Aif | TimitColumns | ReportText) | (Lexicon, Lexicon | ReportText)
    );
    if ok {
        Ok(())
    } else {
        Err(Failure::unsupported(format!(
            "cannot convert {} to {}",
            format_name(from),
            format_name(to)
        )))
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Aif => "aif",
        Format::TimitColumns => "timit-columns",
        Format::Lexicon => "lexicon",
        Format::ReportText => "report-text",
    }
}

fn read_input(path: &str) -> Outcome<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::parse(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read(path).map_err(|e| Failure::parse(format!("{path}: {e}")))
}

fn load(
    from: Format,
    inputs: &[String],
    timeline: Option<&str>,
    opts: ParseOptions,
) -> Outcome<Document> {
    match from {
        Format::Aif | Format::Lexicon => {
            let [path] = inputs else {
                return Err(Failure::unsupported(format!(
                    "{} input takes exactly one file",
                    format_name(from)
                )));
            };
            let bytes = read_input(path)?;
            if from == Format::Aif {
                aif::parse_aif_with(&bytes, opts)
                    .map(Document::Graph)
                    .map_err(|e| Failure::parse(format!("{path}: {e}")))
            } else {
                aif::parse_lexicon_with(&bytes, opts)
                    .map(Document::Lexicon)
                    .map_err(|e| Failure::parse(format!("{path}: {e}")))
            }
        }
        Format::TimitColumns => {
            let mut tiers = Vec::new();
            for arg in inputs {
                tiers.push(read_tier(arg)?);
            }
            let timeline = match timeline {
                Some(t) => t.to_owned(),
                None => inputs
                    .first()
                    .map(|s| tier_path(s).1)
                    .and_then(|p| Path::new(p).file_stem())
                    .map(|s| s.to_string_lossy().into_owned())
                    .filter(|s| !s.is_empty() && s != "-")
                    .unwrap_or_else(|| "T".to_owned()),
            };
            convert::build_graph(&tiers, &timeline)
                .map(Document::Graph)
                .map_err(|e| Failure::parse(e.to_string()))
        }
        Format::ReportText => Err(Failure::unsupported("report-text is an output format")),
    }
}

/// Splits `TYPE=PATH`; a bare path yields no type.
fn tier_path(arg: &str) -> (Option<&str>, &str) {
    match arg.split_once('=') {
        Some((t, p)) if !t.is_empty() => (Some(t), p),
        _ => (None, arg),
    }
}

fn read_tier(arg: &str) -> Outcome<ColumnTier> {
    let (arc_type, path) = tier_path(arg);
    let arc_type = match arc_type {
        Some(t) => t,
        None => match Path::new(path).extension().and_then(|e| e.to_str()) {
            Some("wrd") => "W",
            Some("phn") => "P",
            _ => {
                return Err(Failure::unsupported(format!(
                    "{path}: cannot tell the tier type; pass TYPE={path}"
                )))
            }
        },
    };
    let bytes = read_input(path)?;
    let text = String::from_utf8(bytes).map_err(|e| Failure::parse(format!("{path}: {e}")))?;
    let name = Path::new(path)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    convert::parse_tier(&text, arc_type)
        .map(|t| t.with_source_name(name))
        .map_err(|e| Failure::parse(format!("{path}: {e}")))
}

fn render(doc: &Document, to: Format, arc_type: Option<&str>) -> Outcome<Vec<u8>> {
    match (doc, to) {
        (Document::Graph(g), Format::Aif) => {
            aif::serialize_aif(g).map_err(|e| Failure::invalid(e.to_string()))
        }
        (Document::Graph(g), Format::TimitColumns) => {
            let report = g.validate();
            if !report.is_empty() {
                return Err(Failure::invalid(format!(
                    "graph is not well-formed:\n{report}"
                )));
            }
            let types: std::collections::BTreeSet<&str> =
                g.arcs().map(|a| a.arc_type.as_str()).collect();
            let arc_type = match (arc_type, types.len()) {
                (Some(t), _) => t,
                (None, 1) => types.first().copied().unwrap(),
                (None, 0) => return Ok(Vec::new()),
                (None, _) => {
                    return Err(Failure::unsupported(
                        "several arc types present; choose one with --type",
                    ))
                }
            };
            convert::serialize_tier(g, arc_type)
                .map(String::into_bytes)
                .map_err(|e| Failure::unsupported(e.to_string()))
        }
        (Document::Lexicon(l), Format::Lexicon) => {
            aif::serialize_lexicon(l).map_err(|e| Failure::invalid(e.to_string()))
        }
        (doc, Format::ReportText) => Ok(stats_text(doc).into_bytes()),
        _ => Err(Failure::unsupported("unsupported conversion")),
    }
}

fn write_all(out: &mut dyn Write, bytes: &[u8]) -> Outcome {
    out.write_all(bytes)
        .map_err(|e| Failure::parse(format!("write failed: {e}")))
}

/// Writes to stdout for `-`, otherwise through a temporary file renamed
/// into place.
fn write_output(path: &str, bytes: &[u8], out: &mut dyn Write) -> Outcome {
    if path == "-" {
        return write_all(out, bytes);
    }
    let target = Path::new(path);
    let dir = match target.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: &dyn std::fmt::Display| Failure::parse(format!("{path}: {e}"));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| fail(&e))?;
    tmp.write_all(bytes).map_err(|e| fail(&e))?;
    tmp.persist(target).map_err(|e| fail(&e))?;
    Ok(())
}

/// One line per matching annotation: `id type start..end content`, with
/// `?` for an unplaced anchor.
pub fn query_lines(set: &AnnotationSet, criteria: &[Criterion]) -> String {
    let place = |anchor: &str| {
        set.anchor(anchor)
            .and_then(|a| a.offsets.as_ref())
            .map(|o| {
                o.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_else(|| "?".to_owned())
    };
    let mut text = String::new();
    for id in set.select_all(criteria) {
        let a = set.annotation(id.as_str()).expect("selected from this set");
        text.push_str(&format!(
            "{} {} {}..{} {}\n",
            a.id,
            a.ann_type,
            place(a.region.start().as_str()),
            place(a.region.end().as_str()),
            a.content
        ));
    }
    text
}

fn stats_text(doc: &Document) -> String {
    match doc {
        Document::Graph(g) => graph_stats(g),
        Document::Lexicon(l) => {
            let lexemes: std::collections::BTreeSet<&str> =
                l.entries.iter().map(|e| e.lexeme.as_str()).collect();
            format!(
                "signals: {}\nentries: {}\nlexemes: {}\n",
                usize::from(l.signal.is_some()),
                l.entries.len(),
                lexemes.len()
            )
        }
    }
}

/// `key: value` lines: signals, timelines, nodes, anchored, unanchored,
/// arcs, then `type <T>: n` per arc type in ascending order.
pub fn graph_stats(g: &AnnotationGraph) -> String {
    let anchored = g.nodes().filter(|n| n.offset.is_some()).count();
    let mut types: BTreeMap<&str, usize> = BTreeMap::new();
    for a in g.arcs() {
        *types.entry(a.arc_type.as_str()).or_default() += 1;
    }
    let mut s = format!(
        "signals: {}\ntimelines: {}\nnodes: {}\nanchored: {}\nunanchored: {}\narcs: {}\n",
        g.signals().count(),
        g.timelines().count(),
        g.node_count(),
        anchored,
        g.node_count() - anchored,
        g.arc_count()
    );
    for (t, n) in types {
        s.push_str(&format!("type {t}: {n}\n"));
    }
    s
}
