use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cellres::cell_complex::{build_lambda, build_x, CellComplexJson, SimplicialJson};
use cellres::families;
use cellres::homology::{taylor_betti, DEFAULT_TAYLOR_BOUND};
use cellres::monomial::{IdealJson, Monomial, MonomialIdeal};
use cellres::verify::{run_suite, SuiteOptions};
use cellres::{build_resolution, AdmissibleOrder, Error, SearchOptions};

const EXIT_USAGE: u8 = 1;
const EXIT_NO_ORDER: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cellres",
    version,
    about = "Cellular resolutions of monomial ideals with linear quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find or check an admissible order and report its colon sets.
    Order {
        #[command(flatten)]
        input: Input,
        /// Require a regular decomposition function.
        #[arg(long)]
        regular: bool,
    },
    /// Build the explicit resolution and print its Betti table.
    Resolve(Input),
    /// Build the cell complex and its simplicial subdivision.
    Complex(Input),
    /// Run every consistency check.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Facet cap for the shelling search.
        #[arg(long, default_value_t = cellres::cell_complex::DEFAULT_SHELLING_BOUND)]
        bound: usize,
        /// Generator cap for the Taylor oracle.
        #[arg(long, default_value_t = DEFAULT_TAYLOR_BOUND)]
        taylor_bound: usize,
        /// Negate the K-th incidence sign before checking (0-based).
        #[arg(long, value_name = "K")]
        flip_sign: Option<usize>,
    },
    /// Betti numbers from the Taylor complex.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Generator cap.
        #[arg(long, default_value_t = DEFAULT_TAYLOR_BOUND)]
        bound: usize,
    },
    /// Generate an ideal from a family.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Args)]
struct Input {
    /// Comma separated generators, or a path to a text or JSON file.
    ideal: String,
    /// Number of variables; inferred from the largest index when omitted.
    #[arg(short)]
    n: Option<usize>,
    /// Order as 0-based indices into the canonical generator list.
    #[arg(long, value_name = "I,J,...")]
    order: Option<String>,
    /// Seed for shuffling ties in the order search.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON form of the result here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Gen {
    /// Smallest stable ideal containing the seeds.
    Stable(GenSeeds),
    /// Smallest squarefree strongly stable ideal containing the seeds.
    Sqfree(GenSeeds),
    /// All squarefree monomials of degree K in N variables.
    Uniform {
        k: usize,
        #[arg(name = "N")]
        vars: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// One generator per spanning tree; edges like "1-2,1-3,2-3".
    Graphic {
        edges: String,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args)]
struct GenSeeds {
    seeds: String,
    #[arg(short)]
    n: Option<usize>,
    #[command(flatten)]
    out: GenOut,
}

#[derive(Args)]
struct GenOut {
    /// Maximum number of generators.
    #[arg(long, default_value_t = families::DEFAULT_MAX_GENERATORS)]
    bound: usize,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command, out: &mut String) -> Outcome {
    match cmd {
        Command::Order { input, regular } => cmd_order(&input, regular, out),
        Command::Resolve(input) => cmd_resolve(&input, out),
        Command::Complex(input) => cmd_complex(&input, out),
        Command::Verify {
            input,
            bound,
            taylor_bound,
            flip_sign,
        } => {
            let opts = SuiteOptions {
                shelling_bound: bound,
                taylor_bound,
                flip_sign,
                ..SuiteOptions::default()
            };
            cmd_verify(&input, &opts, out)
        }
        Command::Oracle { input, bound } => {
            let ideal = read_ideal(&input.ideal, input.n)?;
            let t = taylor_betti(&ideal, bound)?;
            let _ = writeln!(out, "betti: {}", join(t.totals()));
            out.push_str(&t.render_text());
            write_json(input.json.as_deref(), &t.to_json())
        }
        Command::Gen(g) => cmd_gen(g, out),
    }
}

fn read_ideal(arg: &str, n: Option<usize>) -> Result<MonomialIdeal, Failure> {
    let path = Path::new(arg);
    let text = if !arg.contains(',') && path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_USAGE, format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    if text.trim_start().starts_with('{') {
        let j: IdealJson = serde_json::from_str(&text).map_err(Error::from)?;
        return Ok(MonomialIdeal::from_json(&j)?);
    }
    let n = match n.or_else(|| MonomialIdeal::max_variable_in(&text)) {
        Some(n) => n,
        None => {
            return Err(Failure::new(
                EXIT_USAGE,
                "cannot infer the number of variables; pass -n",
            ))
        }
    };
    Ok(MonomialIdeal::parse(&text, n)?)
}

fn parse_order(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::new(EXIT_USAGE, format!("bad order entry {s:?}")))
        })
        .collect()
}

/// The supplied order, or a searched one. Exit 2 when none qualifies.
fn obtain_order(input: &Input, ideal: &MonomialIdeal, regular: bool) -> Result<AdmissibleOrder, Failure> {
    if let Some(text) = &input.order {
        let idx = parse_order(text)?;
        return match AdmissibleOrder::is_admissible(ideal, &idx) {
            Ok(a) => {
                if regular {
                    a.check_regular()
                        .map_err(|w| Failure::new(EXIT_NO_ORDER, format!("order is not regular: {w}")))?;
                }
                Ok(a)
            }
            Err(e @ Error::NotPermutation(_)) => Err(e.into()),
            Err(e) => Err(Failure::new(
                EXIT_NO_ORDER,
                format!("order is not admissible: {e}"),
            )),
        };
    }
    let opts = SearchOptions {
        require_regular: regular,
        seed: input.seed,
    };
    AdmissibleOrder::find(ideal, &opts).ok_or_else(|| {
        let what = if regular {
            "no regular admissible order"
        } else {
            "no admissible order"
        };
        Failure::new(EXIT_NO_ORDER, what)
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Outcome {
    let Some(path) = path else { return Ok(()) };
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn tuple<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    format!(
        "({})",
        xs.into_iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn describe_order(a: &AdmissibleOrder, out: &mut String) {
    let _ = writeln!(
        out,
        "order: {}",
        a.generators()
            .iter()
            .map(Monomial::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        out,
        "indices: {}",
        a.positions()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    for (u, q) in a.generators().iter().zip(a.qsets()) {
        let _ = writeln!(out, "q({u}) = {q}");
    }
}

fn cmd_order(input: &Input, regular: bool, out: &mut String) -> Outcome {
    let ideal = read_ideal(&input.ideal, input.n)?;
    let a = obtain_order(input, &ideal, regular)?;
    describe_order(&a, out);
    match a.check_regular() {
        Ok(()) => out.push_str("regular: true\n"),
        Err(w) => {
            let _ = writeln!(out, "regular: false ({w})");
        }
    }
    write_json(input.json.as_deref(), &a.to_json())
}

fn cmd_resolve(input: &Input, out: &mut String) -> Outcome {
    let ideal = read_ideal(&input.ideal, input.n)?;
    let a = obtain_order(input, &ideal, true)?;
    let f = build_resolution(&a)?;
    let t = f.betti_table();
    let _ = writeln!(out, "betti: {}", join(t.totals()));
    out.push_str(&t.render_text());
    let verdict = f.verify();
    let _ = writeln!(
        out,
        "complex: {}",
        verdict
            .as_ref()
            .map_or_else(|d| format!("fail ({d})"), |_| "ok".into())
    );
    let _ = writeln!(out, "minimal: {}", if f.is_minimal() { "ok" } else { "fail" });
    write_json(input.json.as_deref(), &f.to_json())?;
    if verdict.is_err() || !f.is_minimal() {
        return Err(Failure::new(EXIT_VERIFY, "resolution checks failed"));
    }
    Ok(())
}

#[derive(Serialize)]
struct ComplexPair {
    x: CellComplexJson,
    lambda: SimplicialJson,
}

fn cmd_complex(input: &Input, out: &mut String) -> Outcome {
    let ideal = read_ideal(&input.ideal, input.n)?;
    let a = obtain_order(input, &ideal, true)?;
    let x = build_x(&a)?;
    let l = build_lambda(&a)?;
    out.push_str(&x.render_text());
    let _ = writeln!(out, "f(X) = {}", tuple(x.f_vector()));
    let _ = writeln!(out, "f(Lambda) = {}", tuple(l.f_vector()));
    let _ = writeln!(out, "chi(X) = {}", x.euler_characteristic());
    let _ = writeln!(out, "chi(Lambda) = {}", l.euler_characteristic());
    write_json(
        input.json.as_deref(),
        &ComplexPair {
            x: x.to_json(),
            lambda: l.to_json(),
        },
    )
}

fn cmd_verify(input: &Input, opts: &SuiteOptions, out: &mut String) -> Outcome {
    let ideal = read_ideal(&input.ideal, input.n)?;
    let a = obtain_order(input, &ideal, true)?;
    describe_order(&a, out);
    let report = run_suite(&a, opts)?;
    let _ = write!(out, "{report}");
    write_json(input.json.as_deref(), &report)?;
    if report.passed() {
        out.push_str("all checks passed\n");
        Ok(())
    } else {
        let n = report.failures().count();
        Err(Failure::new(EXIT_VERIFY, format!("{n} check(s) failed")))
    }
}

fn cmd_gen(g: Gen, out: &mut String) -> Outcome {
    let (ideal, gout) = match g {
        Gen::Stable(s) => {
            let seeds = read_ideal(&s.seeds, s.n)?;
            (families::gen_stable(seeds.n(), seeds.gens(), s.out.bound)?, s.out)
        }
        Gen::Sqfree(s) => {
            let seeds = read_ideal(&s.seeds, s.n)?;
            (
                families::gen_squarefree_stable(seeds.n(), seeds.gens(), s.out.bound)?,
                s.out,
            )
        }
        Gen::Uniform { k, vars, out } => (families::gen_uniform(k, vars, out.bound)?, out),
        Gen::Graphic { edges, out } => (families::gen_graphic(&parse_edges(&edges)?, out.bound)?, out),
    };
    let _ = writeln!(out, "{ideal}");
    write_json(gout.json.as_deref(), &ideal.to_json())
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|e| {
            let bad = || Failure::new(EXIT_USAGE, format!("bad edge {e:?}, expected a-b"));
            let (a, b) = e.trim().split_once('-').ok_or_else(bad)?;
            Ok((
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}
