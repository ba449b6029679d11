//! `linkcalc`: command-line front end.
//!
//! Exit status: 0 for a definite answer, 2 for Inconclusive, 1 for errors.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use linkcalc::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "linkcalc",
    version,
    about = "Link diagrams, Reidemeister search and twist surgery"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Absolute crossing cap for searches (default: start + headroom).
    #[arg(long, global = true, env = "LINKCALC_MAX_CROSSINGS")]
    max_crossings: Option<usize>,
    /// Crossings allowed above the start when no cap is given.
    #[arg(long, global = true, env = "LINKCALC_HEADROOM", default_value_t = 2)]
    headroom: usize,
    #[arg(
        long,
        global = true,
        env = "LINKCALC_MAX_NODES",
        default_value_t = 100_000
    )]
    max_nodes: usize,
    #[arg(
        long,
        global = true,
        env = "LINKCALC_MAX_DEPTH",
        default_value_t = 1_000
    )]
    max_depth: usize,
    #[arg(long, global = true, env = "LINKCALC_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Classify sublinks one at a time (results never depend on this).
    #[arg(long, global = true, env = "LINKCALC_DETERMINISTIC", action = ArgAction::Set,
          num_args = 0..=1, default_value_t = true, default_missing_value = "true")]
    deterministic: bool,
    /// Skip the greedy removal pass before breadth-first search.
    #[arg(long, global = true)]
    no_greedy: bool,
    /// Write a line-delimited JSON trace here.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a diagram.
    Validate { input: String },
    /// Linking matrix, writhe, faces and canonical key.
    Invariants { input: String },
    /// List Reidemeister moves, or apply one by index.
    Moves {
        input: String,
        /// Crossing cap for additions (default: current count + 2).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        apply: Option<usize>,
    },
    /// Search for a diagram satisfying a target.
    Reduce {
        input: String,
        /// crossingless, self-crossing-free, or bundled.
        #[arg(long, value_enum, default_value_t = Target::Crossingless)]
        target: Target,
        /// Component for the component targets.
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
    /// Bounded unknot recognition for a knot.
    Unknot { input: String },
    /// Recursive unlink recognition.
    Trivial {
        input: String,
        /// Twist used in the recursion: 1 or -1.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        q: i64,
        /// Report Inconclusive after the first inconclusive component.
        #[arg(long)]
        first_component_only: bool,
    },
    /// Homological triviality, Brunnian property and their consistency.
    Classify {
        input: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        q: i64,
    },
    /// Twist along a component (searching for a bundled form if needed).
    Twist {
        input: String,
        #[arg(long)]
        component: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        q: i64,
        /// Keep the component instead of deleting it.
        #[arg(long)]
        keep: bool,
    },
    /// Apply a slope vector such as "*,inf,1/-1".
    Slopes {
        input: String,
        #[arg(long)]
        slopes: String,
    },
    /// The built-in example diagrams.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Crossingless,
    SelfCrossingFree,
    Bundled,
}

type Fallible<T> = Result<T, Box<dyn std::error::Error>>;

/// Output of one command: JSON value, text rendering, exit status.
struct Out {
    json: Value,
    text: String,
    code: u8,
}

impl Out {
    fn ok(json: Value, text: String) -> Self {
        Out {
            json,
            text,
            code: 0,
        }
    }

    fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }
}

fn read_input(src: &str) -> Fallible<LinkDiagram> {
    if let Some(name) = src.strip_prefix("corpus:") {
        return Ok(corpus_load(name)?);
    }
    let mut text = String::new();
    if src == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(src).map_err(|e| format!("{src}: {e}"))?;
    }
    if text.trim_start().starts_with('{') {
        Ok(from_json(&serde_json::from_str(&text)?)?)
    } else {
        Ok(parse_pd(&text)?)
    }
}

impl Opts {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_crossings: self.max_crossings,
            headroom: self.headroom,
            max_nodes: self.max_nodes,
            max_depth: self.max_depth,
        }
    }

    fn search(&self) -> SearchConfig {
        SearchConfig {
            workers: self.workers,
            greedy: !self.no_greedy,
            trace: self.trace.is_some(),
            deterministic: self.deterministic,
        }
    }

    fn classifier(&self, q: i64, all: bool) -> ClassifierConfig {
        ClassifierConfig {
            search: self.search(),
            q,
            try_all_components: all,
        }
    }

    fn write_trace<T: serde::Serialize>(&self, records: &[T]) -> Fallible<()> {
        if let Some(path) = &self.trace {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            for r in records {
                serde_json::to_writer(&mut f, r)?;
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default()
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    m.iter()
        .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}

fn diagram_out(d: &LinkDiagram) -> Value {
    json!({ "pd": to_pd(d), "diagram": to_json(d), "components": d.component_count(), "crossings": d.crossing_count() })
}

fn verdict_out(v: &Verdict, label: &str) -> Out {
    let code = if v.is_inconclusive() { 2 } else { 0 };
    let detail = match v {
        Verdict::Trivial { evidence } => format!("evidence:\n{}", pretty(evidence)),
        Verdict::Nontrivial { witness } => format!("witness:\n{}", pretty(witness)),
        Verdict::Inconclusive { report } => format!(
            "reason: {}\nnodes explored: {}, frontier: {}, caps hit: [{}], exhausted: {}",
            report.reason,
            report.nodes_explored,
            report.frontier,
            report.caps_hit.join(", "),
            report.exhausted
        ),
    };
    Out::ok(
        serde_json::to_value(v).unwrap_or_default(),
        format!("{label}: {}\n{detail}", v.kind()),
    )
    .with_code(code)
}

fn run(cli: &Cli) -> Fallible<Out> {
    let o = &cli.opts;
    Ok(match &cli.cmd {
        Cmd::Validate { input } => {
            let d = read_input(input)?;
            let text = format!(
                "valid: {} components, {} crossings\n{}",
                d.component_count(),
                d.crossing_count(),
                to_pd(&d)
            );
            Out::ok(json!({ "valid": true, "diagram": diagram_out(&d) }), text)
        }
        Cmd::Invariants { input } => {
            let d = read_input(input)?;
            let m = d.linking_matrix();
            let self_crossings: Vec<usize> = (0..d.component_count())
                .map(|i| d.self_crossings(i))
                .collect();
            let mut bundled = Vec::new();
            for k in 0..d.component_count() {
                if let Some(s) = detect_bundle(&d, k)? {
                    bundled.push(json!({ "component": k, "strands": s.strands() }));
                }
            }
            let key = canonical_key(&d);
            let text = format!(
                "components: {}\ncrossings: {}\nwrithe: {}\nfaces: {}\npieces: {}\nself-crossings: {:?}\nbundled: {}\nlinking matrix:\n{}",
                d.component_count(),
                d.crossing_count(),
                d.writhe(),
                d.faces().len(),
                d.piece_count(),
                self_crossings,
                bundled.iter().map(|b| b["component"].to_string()).collect::<Vec<_>>().join(", "),
                matrix_text(m.rows()),
            );
            Out::ok(
                json!({
                    "components": d.component_count(),
                    "crossings": d.crossing_count(),
                    "writhe": d.writhe(),
                    "faces": d.faces().len(),
                    "pieces": d.piece_count(),
                    "self_crossings": self_crossings,
                    "linking_matrix": m.rows(),
                    "homologically_trivial": m.is_zero(),
                    "bundled": bundled,
                    "key": key,
                }),
                text,
            )
        }
        Cmd::Moves { input, cap, apply } => {
            let d = read_input(input)?;
            let moves = enumerate_moves(&d, cap.unwrap_or(d.crossing_count() + 2));
            match apply {
                None => {
                    let text = moves
                        .iter()
                        .enumerate()
                        .map(|(i, m)| {
                            format!("{i:>4} {}", serde_json::to_string(m).unwrap_or_default())
                        })
                        .collect::<Vec<_>>()
                        .join("\n");
                    Out::ok(
                        json!({ "moves": moves }),
                        format!("{} moves\n{text}", moves.len()),
                    )
                }
                Some(i) => {
                    let m = moves.get(*i).ok_or_else(|| {
                        format!("move index {i} out of range ({} moves)", moves.len())
                    })?;
                    let next = apply_move(&d, m)?;
                    Out::ok(
                        json!({ "move": m, "result": diagram_out(&next) }),
                        to_pd(&next),
                    )
                }
            }
        }
        Cmd::Reduce {
            input,
            target,
            component,
        } => {
            let d = read_input(input)?;
            let t = match target {
                Target::Crossingless => TargetPredicate::Crossingless,
                Target::SelfCrossingFree => TargetPredicate::ComponentSelfCrossingFree(*component),
                Target::Bundled => TargetPredicate::ComponentBundled(*component),
            };
            let out = search_reduce(&d, &t, &o.budget(), &o.search())?;
            o.write_trace(&out.report().trace)?;
            let r = out.report();
            let stats = format!(
                "nodes explored: {}, frontier: {}, cap: {}, caps hit: [{}], exhausted: {}",
                r.nodes_explored,
                r.frontier,
                r.last_cap,
                r.caps_hit.join(", "),
                r.exhausted
            );
            let mut report = serde_json::to_value(r)?;
            report.as_object_mut().map(|m| m.remove("trace"));
            match &out {
                SearchOutcome::Found {
                    diagram,
                    certificate,
                    ..
                } => Out::ok(
                    json!({ "found": true, "result": diagram_out(diagram), "certificate": certificate, "report": report }),
                    format!(
                        "found in {} moves: {}\n{stats}\ncertificate:\n{}",
                        certificate.len(),
                        to_pd(diagram),
                        pretty(certificate)
                    ),
                ),
                SearchOutcome::NotFound { .. } => Out::ok(
                    json!({ "found": false, "report": report }),
                    format!("not found\n{stats}"),
                )
                .with_code(2),
            }
        }
        Cmd::Unknot { input } => {
            let d = read_input(input)?;
            let v = is_unknot(&d, &o.budget(), &o.search())?;
            verdict_out(&v, "unknot")
        }
        Cmd::Trivial {
            input,
            q,
            first_component_only,
        } => {
            let d = read_input(input)?;
            let (v, trace) =
                is_trivial_link_traced(&d, &o.budget(), &o.classifier(*q, !first_component_only));
            o.write_trace(&trace)?;
            verdict_out(&v, "trivial link")
        }
        Cmd::Classify { input, q } => {
            let d = read_input(input)?;
            let r = classify_htb(&d, &o.budget(), &o.classifier(*q, true));
            o.write_trace(&r.trace)?;
            let brunnian = if r.brunnian.by_convention {
                format!("{} (fewer than two components)", r.brunnian.verdict)
            } else {
                r.brunnian.verdict.to_string()
            };
            let text = format!(
                "homologically trivial: {}\nlinking matrix:\n{}\nbrunnian: {brunnian}\nhtb: {:?}\ntrivial: {}",
                r.homologically_trivial,
                matrix_text(&r.linking_matrix),
                r.htb,
                r.trivial.kind(),
            );
            let code = if r.htb == Htb::Inconclusive { 2 } else { 0 };
            Out::ok(serde_json::to_value(&r)?, text).with_code(code)
        }
        Cmd::Twist {
            input,
            component,
            q,
            keep,
        } => {
            let d = read_input(input)?;
            if *component >= d.component_count() {
                return Err(format!("component {component} out of range").into());
            }
            match bundle_component(&d, *component, &o.budget(), &o.search())? {
                Err(report) => Out::ok(
                    json!({ "bundled": false, "report": report }),
                    format!(
                        "no bundled form within budget ({} nodes)",
                        report.nodes_explored
                    ),
                )
                .with_code(2),
                Ok((bundled, moves, site, _)) => {
                    let t = twist(&bundled, &site, *q, *keep)?;
                    let text = format!(
                        "{}\nstrands through the component: {}\nbundling moves: {}\nlinking matrix:\n{}",
                        to_pd(&t),
                        site.strands(),
                        moves.len(),
                        matrix_text(t.linking_matrix().rows())
                    );
                    Out::ok(
                        json!({ "bundled": true, "bundling": moves, "site": site, "result": diagram_out(&t),
                                "linking_matrix": t.linking_matrix().rows() }),
                        text,
                    )
                }
            }
        }
        Cmd::Slopes { input, slopes } => {
            let d = read_input(input)?;
            let s: SlopeVector = slopes.parse()?;
            match apply_slopes(&d, &s, &o.budget(), &o.search())? {
                SlopeOutcome::Applied(r) => Out::ok(
                    json!({ "slopes": s.to_string(), "result": diagram_out(&r), "linking_matrix": r.linking_matrix().rows() }),
                    format!("{}\nlinking matrix:\n{}", to_pd(&r), matrix_text(r.linking_matrix().rows())),
                ),
                SlopeOutcome::Failed { component, report } => Out::ok(
                    json!({ "slopes": s.to_string(), "failed_component": component, "report": report }),
                    format!("component {component}: no bundled form within budget"),
                )
                .with_code(2),
            }
        }
        Cmd::Corpus {
            cmd: CorpusCmd::List,
        } => {
            let rows: Vec<Value> = CORPUS
                .iter()
                .map(|e| json!({ "name": e.name, "components": e.components, "crossings": e.crossings, "description": e.description }))
                .collect();
            let text = CORPUS
                .iter()
                .map(|e| {
                    format!(
                        "{:<18} {:>2} comp {:>3} cross  {}",
                        e.name, e.components, e.crossings, e.description
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Out::ok(Value::Array(rows), text)
        }
        Cmd::Corpus {
            cmd: CorpusCmd::Show { name },
        } => {
            let e = linkcalc::corpus::entry(name)
                .ok_or_else(|| format!("no corpus entry named {name:?}"))?;
            let text = format!(
                "{}: {}\n{}\ncomponents: {}, crossings: {}, bundled component: {}\nlinking matrix:\n{}",
                e.name,
                e.description,
                e.pd,
                e.components,
                e.crossings,
                e.bundled.map_or("none".into(), |b| b.to_string()),
                matrix_text(&e.linking_matrix())
            );
            Out::ok(
                json!({ "name": e.name, "description": e.description, "pd": e.pd, "components": e.components,
                        "crossings": e.crossings, "linking_matrix": e.linking_matrix(), "bundled": e.bundled }),
                text,
            )
        }
    })
}

fn main() -> ExitCode {
    // clap would exit 2 on usage errors, which is reserved for Inconclusive
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.opts.format {
                Format::Json => println!("{}", pretty(&out.json)),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("linkcalc: {e}");
            ExitCode::from(1)
        }
    }
}
