//! `pmgraph`: invariants, identity checks, family comparisons, bound
//! searches and matrix exports for polarized metrized graphs.
//!
//! Exit codes: 0 success, 1 a verification or comparison failed, 2 bad input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pmgraph::bounds::{bound_suite, random_search, SearchConfig};
use pmgraph::families::{compare_reference, family_reference, make_family, FamilySpec};
use pmgraph::invariants::{invariant_report, Depth};
use pmgraph::io::{
    bound_rows, bounds_to_json, format_value, graph_to_json, matrix_rows, matrix_to_json, parse_graph, report_rows,
    report_to_json, BOUND_HEADER, REPORT_HEADER,
};
use pmgraph::linres::{build_laplacian, pseudo_inverse, resistance_matrix};
use pmgraph::verify::{all_passed, verify_graph};
use pmgraph::{Error, PmGraph, Rational, Scalar};

#[derive(Parser)]
#[command(name = "pmgraph", version, about = "Invariants of polarized metrized graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every invariant of a graph file.
    Compute {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        output: Output,
        /// Also evaluate the bound suite.
        #[arg(long)]
        bounds: bool,
        /// Evaluate one route per invariant instead of cross-checking all.
        #[arg(long)]
        primary: bool,
    },
    /// Run the identity and bound suite; exit 1 if anything fails.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        #[command(flatten)]
        output: Output,
    },
    /// Build a family member and compare it with its closed forms.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        /// Comma separated edge lengths (circle, bouquet, banana, genus3_*).
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<String>,
        /// Vertex count (complete, necklace).
        #[arg(long)]
        vertices: Option<usize>,
        /// Parallel edges per step (necklace).
        #[arg(long)]
        multiplicity: Option<usize>,
        /// Total length (complete, necklace).
        #[arg(long, default_value = "1")]
        total: String,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
        #[command(flatten)]
        output: Output,
    },
    /// Sample random bridgeless pm-graphs and evaluate the bound suite.
    Search {
        /// Pm-genus range, `MIN` or `MIN:MAX`.
        #[arg(long, default_value = "2:5", value_parser = parse_range::<u64>)]
        genus: (u64, u64),
        #[arg(long, default_value = "1:8", value_parser = parse_range::<usize>)]
        vertices: (usize, usize),
        #[arg(long, default_value = "1:14", value_parser = parse_range::<usize>)]
        edges: (usize, usize),
        /// Lengths are drawn from multiples of `1/grid` up to 1.
        #[arg(long, default_value_t = 12)]
        grid: u32,
        /// Fraction of samples with positive polarization.
        #[arg(long, default_value_t = 0.25)]
        polarized: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        decimals: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Laplacian, its pseudo-inverse or the resistance matrix.
    Export {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = MatrixKind::Resistance)]
        matrix: MatrixKind,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file in JSON.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Round numbers to this many decimal places.
    #[arg(long)]
    decimals: Option<usize>,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Circle,
    Bouquet,
    Banana,
    Complete,
    Necklace,
    Genus3Gamma,
    Genus3Beta,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MatrixKind {
    Laplacian,
    Pinv,
    Resistance,
}

fn parse_range<T: std::str::FromStr + Copy>(text: &str) -> Result<(T, T), String> {
    let one = |s: &str| s.trim().parse::<T>().map_err(|_| format!("not a number: {s:?}"));
    match text.split_once(':') {
        Some((a, b)) => Ok((one(a)?, one(b)?)),
        None => one(text).map(|x| (x, x)),
    }
}

/// What a command produced: text to write and whether checks passed.
struct Done {
    text: String,
    passed: bool,
}

enum Failure {
    Input(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Run = Result<Done, Failure>;

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn csv_text<R: IntoIterator<Item = impl AsRef<str>>>(rows: impl IntoIterator<Item = R>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row.into_iter().map(|c| c.as_ref().to_string()).collect::<Vec<_>>())
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

fn load<S: Scalar>(input: &GraphInput) -> Result<PmGraph<S>, Failure> {
    let text = fs::read_to_string(&input.graph).map_err(|e| Failure::Io(format!("{}: {e}", input.graph.display())))?;
    Ok(parse_graph(&text)?)
}

fn graph_id(input: &GraphInput) -> String {
    input.graph.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "graph".into())
}

fn compute<S: Scalar>(input: &GraphInput, out: &Output, bounds: bool, primary: bool) -> Run {
    let pg = load::<S>(input)?;
    let report = invariant_report(&pg, if primary { Depth::Primary } else { Depth::Full })?;
    let checks = if bounds { Some(bound_suite(&pg)?) } else { None };
    let id = graph_id(input);
    let text = match out.format {
        Format::Json => {
            let mut v = report_to_json(&report, out.decimals);
            if let Some(c) = &checks {
                v["bounds"] = bounds_to_json(c, out.decimals);
            }
            json_text(&v)
        }
        Format::Csv => {
            let mut text = csv_text(
                std::iter::once(REPORT_HEADER.to_vec().into_iter().map(String::from).collect::<Vec<_>>())
                    .chain(report_rows(&id, &report, out.decimals).into_iter().map(Vec::from)),
            )?;
            if let Some(c) = &checks {
                text.push('\n');
                text += &csv_text(
                    std::iter::once(BOUND_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                        .chain(bound_rows(&id, c, out.decimals).into_iter().map(Vec::from)),
                )?;
            }
            text
        }
    };
    Ok(Done { text, passed: true })
}

fn verify<S: Scalar>(input: &GraphInput, out: &Output) -> Run {
    let pg = load::<S>(input)?;
    let items = verify_graph(&pg)?;
    let passed = all_passed(&items);
    let text = match out.format {
        Format::Json => json_text(&json!({
            "backend": S::NAME,
            "passed": passed,
            "items": items.iter().map(|i| json!({"name": i.name, "passed": i.passed, "detail": i.detail})).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            std::iter::once(vec!["check".to_string(), "passed".into(), "detail".into()])
                .chain(items.iter().map(|i| vec![i.name.clone(), i.passed.to_string(), i.detail.clone()])),
        )?,
    };
    Ok(Done { text, passed })
}

fn family_spec<S: Scalar>(
    kind: FamilyKind,
    lengths: &[String],
    vertices: Option<usize>,
    multiplicity: Option<usize>,
    total: &str,
) -> Result<FamilySpec<S>, Error> {
    let lens = lengths.iter().map(|s| S::parse(s)).collect::<Result<Vec<S>, _>>()?;
    let need = |what: &str| Error::InvalidArgument(format!("--{what} is required for this family"));
    let six = |v: &[S]| -> Result<[S; 6], Error> {
        v.to_vec().try_into().map_err(|_| Error::InvalidArgument("genus-3 families take exactly six lengths".into()))
    };
    Ok(match kind {
        FamilyKind::Circle => match lens.as_slice() {
            [l] => FamilySpec::Circle { length: l.clone() },
            _ => return Err(Error::InvalidArgument("a circle takes exactly one length".into())),
        },
        FamilyKind::Bouquet => FamilySpec::Bouquet { lengths: lens },
        FamilyKind::Banana => FamilySpec::Banana { lengths: lens },
        FamilyKind::Complete => {
            FamilySpec::CompleteEqual { vertices: vertices.ok_or_else(|| need("vertices"))?, total: S::parse(total)? }
        }
        FamilyKind::Necklace => FamilySpec::Necklace {
            vertices: vertices.ok_or_else(|| need("vertices"))?,
            multiplicity: multiplicity.ok_or_else(|| need("multiplicity"))?,
            total: S::parse(total)?,
        },
        FamilyKind::Genus3Gamma => FamilySpec::Genus3Gamma { lengths: six(&lens)? },
        FamilyKind::Genus3Beta => FamilySpec::Genus3Beta { lengths: six(&lens)? },
    })
}

fn family<S: Scalar>(spec: FamilySpec<S>, out: &Output) -> Run {
    let pg = make_family(&spec)?;
    let report = invariant_report(&pg, Depth::Full)?;
    let rows = compare_reference(&pg, &family_reference(&spec)?, &report)?;
    let passed = rows.iter().all(|r| r.matches);
    let d = out.decimals;
    let text = match out.format {
        Format::Json => json_text(&json!({
            "family": spec.kind(),
            "backend": S::NAME,
            "graph": graph_to_json(&pg),
            "passed": passed,
            "comparison": rows.iter().map(|r| json!({
                "quantity": r.quantity,
                "expected": format_value(&r.expected, d),
                "computed": format_value(&r.computed, d),
                "matches": r.matches,
            })).collect::<Vec<_>>(),
            "report": report_to_json(&report, d),
        })),
        Format::Csv => csv_text(
            std::iter::once(vec![
                "family".to_string(),
                "quantity".into(),
                "expected".into(),
                "computed".into(),
                "matches".into(),
            ])
            .chain(rows.iter().map(|r| {
                vec![
                    spec.kind().to_string(),
                    r.quantity.clone(),
                    format_value(&r.expected, d),
                    format_value(&r.computed, d),
                    r.matches.to_string(),
                ]
            })),
        )?,
    };
    Ok(Done { text, passed })
}

fn search<S: Scalar>(cfg: &SearchConfig, format: Format, decimals: Option<usize>) -> Run {
    let summary = random_search::<S>(cfg)?;
    let passed = summary.violations.is_empty();
    let text = match format {
        Format::Csv => {
            csv_text(std::iter::once(BOUND_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()).chain(
                summary.hits.iter().flat_map(|h| bound_rows(&h.id(), &h.checks, decimals).into_iter().map(Vec::from)),
            ))?
        }
        Format::Json => json_text(&json!({
            "backend": S::NAME,
            "seed": cfg.seed,
            "samples": cfg.samples,
            "violations": summary.violations.iter().map(|(i, b)| json!({"sample": i, "bound": b})).collect::<Vec<_>>(),
            "tightest": summary.per_bound.iter().map(|(name, e)| (name.to_string(), json!({
                "normalized_margin": e.normalized_margin,
                "sample": e.sample,
                "hash": e.hash,
            }))).collect::<serde_json::Map<_, _>>(),
            "ranked": summary.hits.iter().map(|h| json!({
                "id": h.id(),
                "worst_bound": h.worst.map(|w| w.0),
                "worst_normalized_margin": h.worst.map(|w| w.1),
                "rechecked_exactly": h.rechecked,
                "graph": graph_to_json(&h.graph),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Done { text, passed })
}

fn export<S: Scalar>(input: &GraphInput, kind: MatrixKind, out: &Output) -> Run {
    let pg = load::<S>(input)?;
    let (ids, m) = match kind {
        MatrixKind::Resistance => (pg.graph().ids().to_vec(), resistance_matrix(pg.graph())),
        MatrixKind::Laplacian | MatrixKind::Pinv => {
            let lap = build_laplacian(&pg.graph().normalize_vertex_set())?;
            if kind == MatrixKind::Laplacian {
                (lap.ids, lap.matrix)
            } else {
                let p = pseudo_inverse(&lap)?;
                (p.ids, p.matrix)
            }
        }
    };
    let text = match out.format {
        Format::Json => json_text(&matrix_to_json(&ids, &m, out.decimals)),
        Format::Csv => csv_text(matrix_rows(&ids, &m, out.decimals))?,
    };
    Ok(Done { text, passed: true })
}

fn dispatch(cmd: &Command) -> (Run, Option<&PathBuf>) {
    macro_rules! by_backend {
        ($backend:expr, $f:ident($($arg:expr),*)) => {
            match $backend {
                Backend::Rational => $f::<Rational>($($arg),*),
                Backend::Float => $f::<f64>($($arg),*),
            }
        };
    }
    match cmd {
        Command::Compute { input, output, bounds, primary } => {
            (by_backend!(input.backend, compute(input, output, *bounds, *primary)), output.out.as_ref())
        }
        Command::Verify { input, output } => (by_backend!(input.backend, verify(input, output)), output.out.as_ref()),
        Command::Family { kind, lengths, vertices, multiplicity, total, backend, output } => {
            let run = match backend {
                Backend::Rational => family_spec::<Rational>(*kind, lengths, *vertices, *multiplicity, total)
                    .map_err(Failure::from)
                    .and_then(|s| family(s, output)),
                Backend::Float => family_spec::<f64>(*kind, lengths, *vertices, *multiplicity, total)
                    .map_err(Failure::from)
                    .and_then(|s| family(s, output)),
            };
            (run, output.out.as_ref())
        }
        Command::Search {
            genus,
            vertices,
            edges,
            grid,
            polarized,
            samples,
            seed,
            threads,
            backend,
            format,
            decimals,
            out,
        } => {
            let cfg = SearchConfig {
                genus: *genus,
                vertices: *vertices,
                edges: *edges,
                grid: *grid,
                polarized_fraction: *polarized,
                samples: *samples,
                seed: *seed,
                threads: *threads,
            };
            (by_backend!(backend, search(&cfg, *format, *decimals)), out.as_ref())
        }
        Command::Export { input, matrix, output } => {
            (by_backend!(input.backend, export(input, *matrix, output)), output.out.as_ref())
        }
    }
}

fn fail(kind: &str, message: String) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, out) = dispatch(&cli.command);
    match run {
        Ok(done) => {
            if let Some(path) = out {
                if let Err(e) = fs::write(path, &done.text) {
                    return fail("io", format!("{}: {e}", path.display()));
                }
            } else {
                print!("{}", done.text);
            }
            if done.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => fail(e.kind(), e.to_string()),
        Err(Failure::Io(m)) => fail("io", m),
    }
}
