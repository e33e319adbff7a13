use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use twisted_mps::hamiltonian::{render_residues, HamiltonianSpec, QuerySet};
use twisted_mps::mps::{AmplitudeTable, Boundary, ALL_AMPLITUDES_CAP, PRUNE_THRESHOLD};
use twisted_mps::oracle::{expand_wordwise_capped, WORDWISE_CAP};
use twisted_mps::pauli::{anticommutation_graph, AnticommGraph};
use twisted_mps::suites::{self, Scale, DEFAULT_SEED};
use twisted_mps::twisted::{find_pu_ordering, WEIGHT_TOL};
use twisted_mps::{Error, PilotModel};

#[derive(Parser)]
#[command(
    name = "twmps",
    version,
    about = "Twisted multinomial amplitudes via matrix product states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Look for a predecessor-uniform relabeling of the generators.
    CheckOrder(Common),
    /// Amplitudes of h^k (or of a polynomial in h) in the ordered monomials.
    Amplitudes(AmplitudeArgs),
    /// Anticommutation graph: edges, component sizes, largest component.
    Graph(Common),
    /// Run the seeded cross-check suites.
    Selftest(SelftestArgs),
    /// Median single-amplitude sweep time for mutually anticommuting models.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Output {
    /// Defaults to json, or csv for bench.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    /// JSON Hamiltonian specification.
    #[arg(long)]
    spec: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct AmplitudeArgs {
    #[command(flatten)]
    common: Common,
    /// Power of h; overrides the spec file.
    #[arg(long, conflicts_with = "poly")]
    k: Option<usize>,
    /// Polynomial coefficients a_0,a_1,... in h; overrides the spec file.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    poly: Option<Vec<f64>>,
    /// Residue tuples as digit strings, e.g. 0120; repeat or comma-separate.
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    query: Vec<String>,
    /// Every residue tuple (nonzero amplitudes only).
    #[arg(long)]
    all: bool,
    /// Use the exponential-cost word expansion instead of the MPS.
    #[arg(long)]
    oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Small,
    Full,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = ScaleArg::Small)]
    scale: ScaleArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    /// Generator counts.
    #[arg(long, value_delimiter = ',', default_value = "101,202")]
    m: Vec<usize>,
    /// Degrees.
    #[arg(long, value_delimiter = ',', default_value = "20")]
    k: Vec<usize>,
    /// Timed repetitions per (m, k); the median is reported.
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[command(flatten)]
    output: Output,
}

/// A run that finished but should still exit nonzero.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NoPuOrdering => 2,
        Error::SizeLimit { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (result, out) = match &cli.command {
        Command::CheckOrder(c) => (check_order(c), &c.output),
        Command::Amplitudes(a) => (amplitudes(a), &a.common.output),
        Command::Graph(c) => (graph(c), &c.output),
        Command::Selftest(s) => (selftest(s), &s.output),
        Command::Bench(b) => (bench(b), &b.output),
    };
    match result.and_then(|o| emit(&o.text, out.out.as_deref()).map(|_| o.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::NoPuOrdering) {
                eprintln!("hint: --oracle computes the amplitudes by exponential-cost word expansion");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Argument(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Argument(format!("stdout: {e}"))),
    }
}

fn load(path: &Path) -> Result<HamiltonianSpec, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    HamiltonianSpec::from_json(&text)
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Error::Argument(format!("csv: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Argument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serialization cannot fail");
    s.push('\n');
    s
}

fn check_order(c: &Common) -> Result<Outcome, Error> {
    let spec = load(&c.spec)?;
    let w = spec.weight_matrix()?;
    let ordering = find_pu_ordering(&w);
    let code = if ordering.is_some() { 0 } else { 2 };
    let text = match (c.output.format.unwrap_or(Format::Json), &ordering) {
        (Format::Json, Some(o)) => json_text(&json!({
            "found": true,
            "identity": o.is_identity(),
            "perm": o.perm.iter().map(|g| g + 1).collect::<Vec<_>>(),
            "q": o.qs.iter().map(|q| json!([q.re, q.im])).collect::<Vec<_>>(),
        })),
        (Format::Json, None) => json_text(&json!({ "found": false })),
        (Format::Csv, Some(o)) => csv_text(
            &["position", "generator", "q_re", "q_im"],
            &o.perm
                .iter()
                .zip(&o.qs)
                .enumerate()
                .map(|(p, (g, q))| vec![(p + 1).to_string(), (g + 1).to_string(), num(q.re), num(q.im)])
                .collect::<Vec<_>>(),
        )?,
        (Format::Csv, None) => csv_text(&["position", "generator", "q_re", "q_im"], &[])?,
    };
    if ordering.is_none() {
        eprintln!("no predecessor-uniform ordering exists; amplitudes need --oracle");
    }
    Ok(Outcome { text, code })
}

fn amplitudes(args: &AmplitudeArgs) -> Result<Outcome, Error> {
    let spec = load(&args.common.spec)?;
    let boundary = match (args.k, &args.poly) {
        (Some(k), _) => Boundary::Monomial(k),
        (None, Some(p)) if p.is_empty() => return Err(Error::Argument("--poly needs at least one coefficient".into())),
        (None, Some(p)) => Boundary::Polynomial(p.iter().map(|&x| Complex64::new(x, 0.0)).collect()),
        (None, None) => spec
            .boundary()
            .ok_or_else(|| Error::Argument("give --k or --poly (or \"k\"/\"poly\" in the spec)".into()))?,
    };
    let (a, m) = (spec.order(), spec.m());
    let queries = if args.all {
        QuerySet::All
    } else if !args.query.is_empty() {
        QuerySet::List(
            args.query
                .iter()
                .map(|s| twisted_mps::hamiltonian::parse_residues(s, a, m))
                .collect::<Result<_, _>>()?,
        )
    } else {
        spec.query_set()?.unwrap_or(QuerySet::All)
    };
    let degree = match &boundary {
        Boundary::Monomial(k) => *k,
        Boundary::Polynomial(p) => p.len() - 1,
    };
    let w = spec.weight_matrix()?;
    let coeffs = spec.coefficients();

    let (method, records): (&str, Vec<(Vec<usize>, Complex64)>) = if args.oracle {
        eprintln!("note: word expansion visits m^k words (exponential cost)");
        let mut table = AmplitudeTable::new(a, m);
        let powers: Vec<(usize, Complex64)> = match &boundary {
            Boundary::Monomial(k) => vec![(*k, Complex64::new(1.0, 0.0))],
            Boundary::Polynomial(p) => p.iter().copied().enumerate().collect(),
        };
        for (k, ak) in powers {
            if ak == Complex64::new(0.0, 0.0) {
                continue;
            }
            let res = expand_wordwise_capped(&w, &coeffs, a, k, WORDWISE_CAP)?;
            for (r, v) in res.table.iter() {
                table.accumulate(r.clone(), ak * v);
            }
        }
        table.prune(PRUNE_THRESHOLD);
        ("wordwise-oracle", select(&table, &queries))
    } else {
        let pilot = PilotModel::new(&w, &coeffs, degree)?;
        let records = match &queries {
            QuerySet::All => pilot
                .all_amplitudes(&boundary, ALL_AMPLITUDES_CAP)?
                .iter()
                .map(|(r, v)| (r.clone(), *v))
                .collect(),
            QuerySet::List(list) => sorted_unique(list)
                .into_iter()
                .map(|r| pilot.amplitude(&boundary, &r).map(|v| (r, v)))
                .collect::<Result<_, _>>()?,
        };
        ("mps", records)
    };

    let text = match args.common.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let body: Vec<String> = records
                .iter()
                .map(|(r, v)| {
                    format!(
                        "    {{\"r\": \"{}\", \"re\": {}, \"im\": {}}}",
                        render_residues(r),
                        num(v.re),
                        num(v.im)
                    )
                })
                .collect();
            format!(
                "{{\n  \"method\": \"{method}\",\n  \"amplitudes\": [\n{}\n  ]\n}}\n",
                body.join(",\n")
            )
        }
        Format::Csv => csv_text(
            &["r", "re", "im"],
            &records
                .iter()
                .map(|(r, v)| vec![render_residues(r), num(v.re), num(v.im)])
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Outcome::ok(text))
}

fn sorted_unique(list: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut v = list.to_vec();
    v.sort();
    v.dedup();
    v
}

fn select(table: &AmplitudeTable<Complex64>, queries: &QuerySet) -> Vec<(Vec<usize>, Complex64)> {
    match queries {
        QuerySet::All => table.iter().map(|(r, v)| (r.clone(), *v)).collect(),
        QuerySet::List(list) => sorted_unique(list)
            .into_iter()
            .map(|r| {
                let v = table.get(&r);
                (r, v)
            })
            .collect(),
    }
}

fn graph(c: &Common) -> Result<Outcome, Error> {
    let spec = load(&c.spec)?;
    let g: AnticommGraph = match spec.paulis()? {
        Some(gens) => anticommutation_graph(&gens)?,
        None => AnticommGraph::from_weight_matrix(&spec.weight_matrix()?, WEIGHT_TOL),
    };
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect();
    let text = match c.output.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "m": g.m(),
            "edges": edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "components": g.components().iter().map(|comp| comp.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "component_sizes": g.component_sizes(),
            "c_max": g.c_max(),
        })),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = edges
                .iter()
                .map(|&(i, j)| vec!["edge".into(), i.to_string(), j.to_string()])
                .collect();
            rows.extend(
                g.component_sizes()
                    .iter()
                    .enumerate()
                    .map(|(i, s)| vec!["component".into(), (i + 1).to_string(), s.to_string()]),
            );
            rows.push(vec!["c_max".into(), g.c_max().to_string(), String::new()]);
            csv_text(&["kind", "a", "b"], &rows)?
        }
    };
    Ok(Outcome::ok(text))
}

fn selftest(s: &SelftestArgs) -> Result<Outcome, Error> {
    let scale = match s.scale {
        ScaleArg::Small => Scale::Small,
        ScaleArg::Full => Scale::Full,
    };
    let reports = suites::run_all(scale, s.seed)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let text = match s.output.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "seed": s.seed,
            "passed": reports.len() - failed,
            "failed": failed,
            "criteria": reports.iter().map(|r| json!({
                "id": r.id,
                "name": r.name,
                "pass": r.pass,
                "cases": r.cases,
                "metric": r.metric,
                "value": r.max_err,
                "tol": r.tol,
                "detail": r.detail,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["id", "name", "pass", "cases", "metric", "value", "tol"],
            &reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        r.name.to_string(),
                        r.pass.to_string(),
                        r.cases.to_string(),
                        r.metric.to_string(),
                        format!("{:e}", r.max_err),
                        format!("{:e}", r.tol),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    for r in &reports {
        eprintln!("{r}");
    }
    Ok(Outcome {
        text,
        code: if failed == 0 { 0 } else { 1 },
    })
}

fn bench(b: &BenchArgs) -> Result<Outcome, Error> {
    let mut rows = Vec::new();
    for &m in &b.m {
        for &k in &b.k {
            let nanos = suites::median_sweep_nanos(m, k, b.reps, 1)?;
            rows.push((m, k, nanos.round() as u64));
        }
    }
    let text = match b.output.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_text(
            &["m", "k", "nanos"],
            &rows
                .iter()
                .map(|(m, k, t)| vec![m.to_string(), k.to_string(), t.to_string()])
                .collect::<Vec<_>>(),
        )?,
        Format::Json => json_text(&json!(rows
            .iter()
            .map(|(m, k, t)| json!({ "m": m, "k": k, "nanos": t }))
            .collect::<Vec<_>>())),
    };
    Ok(Outcome::ok(text))
}
