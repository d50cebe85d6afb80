use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use forest_algebra::algebra::{
    quotient_hilbert_traced, subalgebra_hilbert_traced, AlgebraBounds, DEFAULT_MAX_BASIS, DEFAULT_MAX_SUBSET_VERTICES,
};
use forest_algebra::corpus::{self, NamedGraph};
use forest_algebra::forest::{self, DEFAULT_MAX_FORESTS};
use forest_algebra::recovery;
use forest_algebra::tutte::{self, DEFAULT_RECURSION_BUDGET};
use forest_algebra::verify::{self, Bounds, CorpusOptions, Method, VerifyReport};
use forest_algebra::{Error, HilbertFunction, Multigraph, TutteOptions};

#[derive(Parser)]
#[command(
    name = "forestalg",
    version,
    about = "Hilbert functions of forest algebras and Tutte polynomials of multigraphs"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Include wall-clock timings (output is no longer byte-reproducible).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Tutte polynomial by deletion-contraction.
    Tutte {
        #[command(flatten)]
        input: GraphInput,
        /// Also expand over subforests and compare.
        #[arg(long)]
        via_activity: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Tutte polynomial of the t-clone graph, computed on the original graph.
    Jpoly {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        /// Also build the clone graph explicitly and compare.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Graded dimensions of the forest algebra.
    Hilbert {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Evaluation points for the substitution identity (with --method all).
        #[arg(long)]
        samples: Option<usize>,
        /// Report matrix shape and rank per degree (subalgebra and quotient only).
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Tutte polynomial from a Hilbert function.
    Recover {
        /// JSON file holding {"t": .., "dims": [..]} or a bare array; `-` reads stdin.
        input: PathBuf,
        /// Required when the input is a bare array.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: Option<u32>,
        /// Vertex count of the (connected, loopless) graph.
        #[arg(long)]
        n: usize,
    },
    /// Subforests with their external activity.
    Forests {
        #[command(flatten)]
        input: GraphInput,
        /// List every subforest instead of only the count table.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_FORESTS, value_parser = clap::value_parser!(u64).range(1..))]
        max_forests: u64,
    },
    /// Full invariant suite over the built-in corpus and any extra graph files.
    Verify {
        graphs: Vec<PathBuf>,
        /// Label counts to sweep; repeat the flag for several.
        #[arg(long = "t", value_parser = clap::value_parser!(u32).range(1..))]
        ts: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        permutations: usize,
        #[arg(long)]
        samples: Option<usize>,
        /// Skip the built-in corpus.
        #[arg(long)]
        no_builtin: bool,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Graph file ("n m" then m edge lines); `-` reads stdin.
    #[arg(required_unless_present = "builtin")]
    input: Option<PathBuf>,
    /// Use a built-in corpus graph instead of a file.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_FORESTS, value_parser = clap::value_parser!(u64).range(1..))]
    max_forests: u64,
    /// Cap on the truncated edge algebra dimension and on quotient monomial counts.
    #[arg(long, default_value_t = DEFAULT_MAX_BASIS, value_parser = clap::value_parser!(u64).range(1..))]
    max_basis: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSET_VERTICES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_subset: u64,
    /// Cap on deletion-contraction recursion nodes.
    #[arg(long, default_value_t = DEFAULT_RECURSION_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_forests: self.max_forests,
            algebra: AlgebraBounds { max_basis: self.max_basis, max_subset_vertices: self.max_subset as usize },
            tutte: TutteOptions { budget: self.budget, ..TutteOptions::default() },
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Forests,
    Tutte,
    Subalgebra,
    Quotient,
    All,
}

impl MethodArg {
    fn single(self) -> Option<Method> {
        match self {
            MethodArg::Forests => Some(Method::Forests),
            MethodArg::Tutte => Some(Method::Tutte),
            MethodArg::Subalgebra => Some(Method::Subalgebra),
            MethodArg::Quotient => Some(Method::Quotient),
            MethodArg::All => None,
        }
    }
}

/// A failure together with its exit status.
struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        Failure { kind, message: message.into(), code: 2 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use forest_algebra::RecoveryError as R;
        let (kind, code) = match &e {
            Error::Parse { .. } => ("parse", 2),
            Error::InvalidEdge { .. } | Error::InvalidEndpoint { .. } | Error::ZeroLabels => ("invalid-input", 2),
            Error::ForestBound { .. } => ("forest-bound", 3),
            Error::BasisBound { .. } => ("basis-bound", 3),
            Error::SubsetBound { .. } => ("subset-bound", 3),
            Error::BudgetExceeded { .. } => ("budget-exceeded", 3),
            Error::Recovery(r) => (
                match r {
                    R::ZeroHilbert => "zero-hilbert",
                    R::LabelMismatch { .. } => "label-mismatch",
                    R::TopDegreeNotDivisible { .. } => "top-degree-not-divisible",
                    R::LoopsPresent { .. } => "loops-present",
                    R::TooFewLabels { .. } => "too-few-labels",
                    R::NegativeResidual { .. } => "negative-residual",
                    R::ForestTooLarge { .. } => "forest-too-large",
                },
                1,
            ),
            Error::DegreeOverflow { .. } => ("degree-overflow", 1),
            Error::ContractLoop(_)
            | Error::CyclicSubset
            | Error::ForbiddenSample(_)
            | Error::ZeroPoint
            | Error::BadCoefficient { .. } => ("internal", 1),
        };
        Failure { kind, message: e.to_string(), code }
    }
}

type Outcome = Result<Output, Failure>;

/// What a command prints, plus whether it counts as a pass.
struct Output {
    text: String,
    json: Value,
    pass: bool,
}

fn ok(text: String, json: Value) -> Outcome {
    Ok(Output { text, json, pass: true })
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage("io", format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
    }
}

fn load_graph(path: &Path) -> Result<Multigraph, Failure> {
    read_source(path)?
        .parse::<Multigraph>()
        .map_err(|e| Failure { message: format!("{}: {e}", path.display()), ..Failure::from(e) })
}

impl GraphInput {
    fn load(&self) -> Result<(String, Multigraph), Failure> {
        match (&self.builtin, &self.input) {
            (Some(name), _) => corpus::by_name(name)
                .map(|ng| (ng.name, ng.graph))
                .ok_or_else(|| Failure::usage("unknown-graph", format!("no built-in graph named {name:?}"))),
            (None, Some(path)) => Ok((path.display().to_string(), load_graph(path)?)),
            (None, None) => Err(Failure::usage("usage", "no graph given")),
        }
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn cmd_tutte(input: &GraphInput, via_activity: bool, bounds: &BoundArgs) -> Outcome {
    let (_, g) = input.load()?;
    let b = bounds.bounds();
    let tp = tutte::tutte_with(&g, b.tutte)?;
    if !via_activity {
        return ok(tp.poly.to_string(), serde_json::to_value(&tp).unwrap());
    }
    let table = forest::activity_table(&g, b.max_forests)?;
    let alt = tutte::tutte_via_activity(&table);
    let equal = alt.poly == tp.poly;
    Ok(Output {
        text: format!("{}\nvia activity: {}\nequal: {equal}", tp.poly, alt.poly),
        json: json!({ "tutte": tp, "via_activity": alt, "equal": equal }),
        pass: equal,
    })
}

fn cmd_jpoly(input: &GraphInput, t: u32, check: bool, bounds: &BoundArgs) -> Outcome {
    let (_, g) = input.load()?;
    let opts = bounds.bounds().tutte;
    let j = tutte::j_poly_with(&g, t, opts)?;
    if !check {
        return ok(j.poly.to_string(), serde_json::to_value(&j).unwrap());
    }
    let equal = tutte::j_poly_clone_check(&g, t, opts)?;
    Ok(Output {
        text: format!("{}\nclone check: {equal}", j.poly),
        json: json!({ "jpoly": j, "clone_check": equal }),
        pass: equal,
    })
}

fn report_text(r: &VerifyReport, timings: bool) -> String {
    let mut lines = Vec::new();
    for m in &r.methods {
        let time = if timings { format!("  ({:.3} ms)", ms(m.elapsed)) } else { String::new() };
        lines.push(format!("{:<11} {}{time}", m.method.name(), m.hilbert));
    }
    let all_agree = r.agreement.iter().all(|p| p.equal);
    lines.push(format!("agreement   {all_agree}"));
    lines.push(format!("clone check {}", r.clone_check));
    lines.push(format!(
        "bijection   {} labeled forests, {} violations",
        r.activity_bijection_checked, r.activity_bijection_violations
    ));
    lines.push(format!("identity    {} at {} points", r.identity_holds, r.identity_samples));
    lines.push(format!("pass        {}", r.pass));
    lines.join("\n")
}

fn report_json(r: &VerifyReport, timings: bool) -> Value {
    let mut v = serde_json::to_value(r).unwrap();
    if timings {
        v["timings_ms"] = r.methods.iter().map(|m| (m.method.name().to_string(), json!(ms(m.elapsed)))).collect();
    }
    v
}

fn cmd_hilbert(
    input: &GraphInput,
    t: u32,
    method: MethodArg,
    samples: Option<usize>,
    trace: bool,
    bounds: &BoundArgs,
    timings: bool,
) -> Outcome {
    let (name, g) = input.load()?;
    let b = bounds.bounds();
    match method.single() {
        Some(m) => {
            let start = Instant::now();
            let (h, steps) = match (trace, m) {
                (true, Method::Subalgebra) => subalgebra_hilbert_traced(&g, t, b.algebra)?,
                (true, Method::Quotient) => quotient_hilbert_traced(&g, t, b.algebra)?,
                (true, _) => return Err(Failure::usage("usage", "--trace applies to subalgebra and quotient only")),
                (false, _) => (verify::hilbert(&g, t, m, &b)?, Vec::new()),
            };
            let mut json = serde_json::to_value(&h).unwrap();
            let mut text = h.to_string();
            if trace {
                json["trace"] = serde_json::to_value(&steps).unwrap();
                text += "\ndegree rows columns rank";
                for s in &steps {
                    text += &format!("\n{:>6} {:>4} {:>7} {:>4}", s.degree, s.rows, s.columns, s.rank);
                }
            }
            if timings {
                json["elapsed_ms"] = json!(ms(start.elapsed()));
                text += &format!("  ({:.3} ms)", ms(start.elapsed()));
            }
            ok(text, json)
        }
        None => {
            let r = verify::verify_graph(&name, &g, t, &b, samples)?;
            Ok(Output { text: report_text(&r, timings), json: report_json(&r, timings), pass: r.pass })
        }
    }
}

fn parse_hilbert(source: &str, t: Option<u32>) -> Result<HilbertFunction, Failure> {
    let bad = |e: serde_json::Error| Failure::usage("parse", format!("line {}: {e}", e.line()));
    let value: Value = serde_json::from_str(source).map_err(bad)?;
    let h = if value.is_array() {
        let dims: Vec<u64> = serde_json::from_value(value).map_err(bad)?;
        let t = t.ok_or_else(|| Failure::usage("usage", "--t is required when the input is a bare array"))?;
        HilbertFunction::new(t, dims)
    } else {
        serde_json::from_value(value).map_err(bad)?
    };
    // A mismatched --t is reported by recovery itself.
    Ok(h)
}

fn cmd_recover(input: &Path, t: Option<u32>, n: usize) -> Outcome {
    let h = parse_hilbert(&read_source(input)?, t)?;
    let t = t.unwrap_or(h.t);
    let counts = recovery::recover_activity_counts(&h, t).map_err(Error::from)?;
    let tp = recovery::recover_tutte(&h, t, n).map_err(Error::from)?;
    let rows: Vec<[u64; 3]> = counts.iter().map(|(&(a, b), &c)| [a as u64, b as u64, c]).collect();
    let mut text = vec![tp.poly.to_string(), "size activity count".to_string()];
    text.extend(rows.iter().map(|[a, b, c]| format!("{a:>4} {b:>8} {c:>5}")));
    ok(text.join("\n"), json!({ "tutte": tp, "counts": rows }))
}

fn cmd_forests(input: &GraphInput, list: bool, max_forests: u64) -> Outcome {
    let (_, g) = input.load()?;
    let table = forest::activity_table(&g, max_forests)?;
    let mut text = vec!["size activity count".to_string()];
    text.extend(table.counts.iter().map(|(&(a, b), c)| format!("{a:>4} {b:>8} {c:>5}")));
    text.push(format!("total {}", table.total()));
    let mut json = json!({ "table": table });
    if list {
        let records = forest::enumerate_subforests(&g, max_forests)?;
        text.push(String::new());
        text.extend(records.iter().map(|r| format!("{:?} activity {} active {:?}", r.edges, r.activity, r.active)));
        json["forests"] = serde_json::to_value(&records).unwrap();
    }
    ok(text.join("\n"), json)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    graphs: &[PathBuf],
    ts: &[u32],
    seed: u64,
    permutations: usize,
    samples: Option<usize>,
    no_builtin: bool,
    bounds: &BoundArgs,
    timings: bool,
) -> Outcome {
    let mut list: Vec<NamedGraph> = if no_builtin { Vec::new() } else { corpus::builtin() };
    for path in graphs {
        list.push(NamedGraph { name: path.display().to_string(), graph: load_graph(path)? });
    }
    let opts = CorpusOptions {
        ts: if ts.is_empty() { CorpusOptions::default().ts } else { ts.to_vec() },
        seed,
        permutations,
        samples,
        bounds: bounds.bounds(),
    };
    let report = verify::verify_corpus(&list, &opts)?;

    let mut text = Vec::new();
    for r in &report.entries {
        let agree = r.agreement.iter().all(|p| p.equal);
        let time = if timings {
            format!("  ({:.3} ms)", r.methods.iter().map(|m| ms(m.elapsed)).sum::<f64>())
        } else {
            String::new()
        };
        text.push(format!(
            "{}  {} t={}  {}  agree={agree} clone={} identity={}{time}",
            if r.pass { "PASS" } else { "FAIL" },
            r.graph,
            r.t,
            r.methods[0].hilbert,
            r.clone_check && r.activity_bijection_violations == 0,
            r.identity_holds,
        ));
    }
    for c in &report.checks {
        text.push(format!("{}  {} {}  {}", if c.passed { "PASS" } else { "FAIL" }, c.check, c.graph, c.detail));
    }
    text.push(format!("overall {}", if report.pass { "PASS" } else { "FAIL" }));

    let mut json = serde_json::to_value(&report).unwrap();
    if timings {
        for (entry, r) in json["entries"].as_array_mut().unwrap().iter_mut().zip(&report.entries) {
            *entry = report_json(r, true);
        }
    }
    Ok(Output { text: text.join("\n"), json, pass: report.pass })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Tutte { input, via_activity, bounds } => cmd_tutte(input, *via_activity, bounds),
        Command::Jpoly { input, t, check, bounds } => cmd_jpoly(input, *t, *check, bounds),
        Command::Hilbert { input, t, method, samples, trace, bounds } => {
            cmd_hilbert(input, *t, *method, *samples, *trace, bounds, cli.timings)
        }
        Command::Recover { input, t, n } => cmd_recover(input, *t, *n),
        Command::Forests { input, list, max_forests } => cmd_forests(input, *list, *max_forests),
        Command::Verify { graphs, ts, seed, permutations, samples, no_builtin, bounds } => {
            cmd_verify(graphs, ts, *seed, *permutations, *samples, *no_builtin, bounds, cli.timings)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(f) => {
            match cli.format {
                Format::Text => eprintln!("error[{}]: {}", f.kind, f.message),
                Format::Json => eprintln!("{}", json!({ "error": f.kind, "message": f.message, "exit_code": f.code })),
            }
            ExitCode::from(f.code)
        }
    }
}
