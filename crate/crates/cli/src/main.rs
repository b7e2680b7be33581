//! `asmgraph`: command line front end for the ASM graph library.
//!
//! Permutations are given in one-line notation (`4312`, or `4 3 1 2` for
//! n > 9); an ASM is given as a path to a text file (size line, then rows)
//! or a JSON file `{"n": .., "entries": [[..], ..]}`.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use asmgraph::bigrassmannian::{
    bq_definition_with, bq_product, bq_qdet_with, bq_recursion, dodgson, poly_json, q_dodgson_check, IntPoly,
};
use asmgraph::enumerate::{enumerate_asms_with, enumerate_permutations_with};
use asmgraph::lattice::{asm_leq, beta, build_graph_with, covering_chain, export_dot, DotOptions};
use asmgraph::linalg::{det_gauss, Rational};
use asmgraph::suite::{random_rational_matrix, run_suite};
use asmgraph::symbolic::sfl_certificate;
use asmgraph::tnn::{counterexample_matrix, qtnn_scan};
use asmgraph::{Asm, Error, Limit, Permutation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCOMPARABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "asmgraph", version, about = "ASM graph, ASM order certificates and B_n(q)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands (required by them).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Lift the default size guards of exponential computations.
    #[arg(long, global = true)]
    limit_override: bool,
}

impl Global {
    fn limit(&self) -> Limit {
        if self.limit_override {
            Limit::Override
        } else {
            Limit::Default
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the ASMs of size n in lexicographic order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// List permutations instead.
        #[arg(long)]
        permutations: bool,
    },
    /// Build the ASM graph of size n.
    Graph {
        #[arg(long)]
        n: usize,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
        /// Put the matrices into the DOT node labels.
        #[arg(long)]
        matrices: bool,
    },
    /// Decide A ≤ B.
    Leq { a: String, b: String },
    /// The bigrassmannian statistic β.
    Beta { a: String },
    /// A saturated chain from A up to B.
    Chain { a: String, b: String },
    /// Certificate for A ≤ B, or a TNN counterexample (exit 3).
    Certify {
        a: String,
        b: String,
        /// Also write the certificate or counterexample as JSON here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample x^A - x^B on locally TNN matrices over a grid of q.
    Scan {
        a: String,
        b: String,
        /// Comma separated perfect rational squares.
        #[arg(long, default_value = "1/4,1,4")]
        grid: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// The signed bigrassmannian polynomial B_n(q).
    Bq {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Dodgson condensation checks.
    Dodgson {
        #[command(subcommand)]
        action: DodgsonAction,
    },
    /// Run the self-checks at size n.
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum DodgsonAction {
    /// Random exact trials of the plain and q-weighted identities.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Def,
    Prod,
    Qdet,
    Rec,
    All,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn require_seed(g: &Global) -> Result<u64, Failure> {
    g.seed.ok_or_else(|| Failure::Usage("this command is randomized and needs --seed".into()))
}

/// A file path holding an ASM, or a permutation in one-line notation.
fn parse_asm(arg: &str) -> Result<Asm, Error> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")));
        }
        return Asm::parse_text(&text);
    }
    Ok(arg.parse::<Permutation>()?.to_asm())
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn label(a: &Asm) -> String {
    match a.to_permutation() {
        Ok(p) => p.to_string(),
        Err(_) => format!("{:?}", a.rows()),
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Enumerate { n, count_only, permutations } => enumerate(g, *n, *count_only, *permutations),
        Command::Graph { n, dot, matrices } => graph(g, *n, *dot, *matrices),
        Command::Leq { a, b } => {
            let leq = asm_leq(&parse_asm(a)?, &parse_asm(b)?)?;
            if g.json {
                print_json(&json!({ "leq": leq }));
            } else {
                println!("{leq}");
            }
            Ok(0)
        }
        Command::Beta { a } => {
            let b = beta(&parse_asm(a)?);
            if g.json {
                print_json(&json!({ "beta": b }));
            } else {
                println!("{b}");
            }
            Ok(0)
        }
        Command::Chain { a, b } => {
            let chain = covering_chain(&parse_asm(a)?, &parse_asm(b)?)?;
            if g.json {
                let items: Vec<_> = chain.iter().map(|c| json!({ "beta": beta(c), "asm": c })).collect();
                print_json(&json!(items));
            } else {
                for (t, c) in chain.iter().enumerate() {
                    if t > 0 {
                        println!();
                    }
                    println!("beta {}", beta(c));
                    println!("{c}");
                }
            }
            Ok(0)
        }
        Command::Certify { a, b, out } => certify(g, &parse_asm(a)?, &parse_asm(b)?, out.as_deref()),
        Command::Scan { a, b, grid, samples } => scan(g, &parse_asm(a)?, &parse_asm(b)?, grid, *samples),
        Command::Bq { n, method } => bq(g, *n, *method),
        Command::Dodgson { action: DodgsonAction::Verify { n, trials } } => dodgson_verify(g, *n, *trials),
        Command::VerifyAll { n } => {
            let results = run_suite(*n, require_seed(g)?);
            if g.json {
                print_json(&json!(results));
            } else {
                for r in &results {
                    println!("{} {:<13} {} ({} ms)", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail, r.millis);
                }
            }
            Ok(if results.iter().all(|r| r.passed) { 0 } else { EXIT_ERROR })
        }
    }
}

fn enumerate(g: &Global, n: usize, count_only: bool, permutations: bool) -> Outcome {
    if permutations {
        let perms = enumerate_permutations_with(n, g.limit())?;
        match (count_only, g.json) {
            (true, false) => println!("{}", perms.len()),
            (true, true) => print_json(&json!({ "n": n, "count": perms.len() })),
            (false, true) => print_json(&json!(perms.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>())),
            (false, false) => perms.iter().for_each(|p| println!("{p}")),
        }
        return Ok(0);
    }
    let asms = enumerate_asms_with(n, g.limit())?;
    match (count_only, g.json) {
        (true, false) => println!("{}", asms.len()),
        (true, true) => print_json(&json!({ "n": n, "count": asms.len() })),
        (false, true) => print_json(&json!(asms)),
        (false, false) => {
            for (i, a) in asms.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("{a}");
            }
        }
    }
    Ok(0)
}

fn graph(g: &Global, n: usize, dot: bool, matrices: bool) -> Outcome {
    let graph = build_graph_with(n, g.limit())?;
    if dot {
        print!("{}", export_dot(&graph, &DotOptions { show_matrices: matrices }));
        return Ok(0);
    }
    if g.json {
        let edges: Vec<_> = graph
            .edges()
            .map(|e| json!({ "source": e.source, "target": e.target, "rect": e.rect, "type": e.edge_type }))
            .collect();
        let betas: Vec<u32> = (0..graph.nodes().len()).map(|i| graph.beta(i)).collect();
        print_json(&json!({ "n": n, "nodes": graph.nodes(), "beta": betas, "edges": edges }));
        return Ok(0);
    }
    println!("{} nodes, {} edges", graph.nodes().len(), graph.edge_count());
    for e in graph.edges() {
        println!(
            "{} -> {}  type {:>2}  {}  beta {} -> {}",
            label(&graph.nodes()[e.source]),
            label(&graph.nodes()[e.target]),
            e.edge_type,
            e.rect,
            graph.beta(e.source),
            graph.beta(e.target)
        );
    }
    Ok(0)
}

fn write_out(path: Option<&str>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| Failure::Domain(Error::Parse(format!("cannot write {p}: {e}"))))?;
    }
    Ok(())
}

fn certify(g: &Global, a: &Asm, b: &Asm, out: Option<&str>) -> Outcome {
    match sfl_certificate(a, b) {
        Ok(cert) => {
            let text = cert.to_json();
            write_out(out, &text)?;
            if g.json {
                println!("{text}");
            } else {
                println!("CERTIFICATE");
                println!("{cert}");
            }
            Ok(0)
        }
        Err(Error::Incomparable) => {
            let cx = counterexample_matrix(a, b)?;
            let value = serde_json::to_value(&cx).expect("counterexample serializes");
            write_out(out, &serde_json::to_string_pretty(&value).expect("json values serialize"))?;
            if g.json {
                print_json(&value);
            } else {
                println!("COUNTEREXAMPLE");
                println!("witness ({},{})", cx.witness.0, cx.witness.1);
                println!("matrix {}", cx.matrix);
                println!("x^A - x^B = {}", cx.value);
            }
            Ok(EXIT_INCOMPARABLE)
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_grid(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| Failure::Usage(format!("bad grid value {s:?}"))))
        .collect()
}

fn scan(g: &Global, a: &Asm, b: &Asm, grid: &str, samples: usize) -> Outcome {
    let seed = require_seed(g)?;
    let report = qtnn_scan(a, b, &parse_grid(grid)?, samples, seed)?;
    if g.json {
        print_json(&serde_json::to_value(&report).expect("report serializes"));
    } else {
        println!("{}", if report.comparable { "comparable" } else { "incomparable" });
        for r in &report.rows {
            println!(
                "q0 = {:<5} samples {}  violations {}  weighting mismatches {}  undefined {}  min {}",
                r.q0,
                r.samples,
                r.violations,
                r.weighting_mismatches,
                r.undefined,
                r.min_value.as_deref().unwrap_or("-")
            );
        }
        if let Some(cx) = &report.counterexample {
            println!("counterexample at q0 = 1: witness ({},{}) value {}", cx.witness.0, cx.witness.1, cx.value);
        }
    }
    Ok(if report.comparable { 0 } else { EXIT_INCOMPARABLE })
}

fn bq(g: &Global, n: usize, method: Method) -> Outcome {
    let compute = |m: Method| -> Result<IntPoly, Error> {
        match m {
            Method::Def => bq_definition_with(n, g.limit()),
            Method::Prod => Ok(bq_product(n)),
            Method::Qdet => bq_qdet_with(n, g.limit()),
            Method::Rec => bq_recursion(n),
            Method::All => unreachable!("expanded by the caller"),
        }
    };
    let methods: Vec<(&str, Method)> = match method {
        Method::All => vec![("def", Method::Def), ("prod", Method::Prod), ("qdet", Method::Qdet), ("rec", Method::Rec)],
        Method::Def => vec![("def", Method::Def)],
        Method::Prod => vec![("prod", Method::Prod)],
        Method::Qdet => vec![("qdet", Method::Qdet)],
        Method::Rec => vec![("rec", Method::Rec)],
    };
    let polys = methods.iter().map(|&(name, m)| Ok((name, compute(m)?))).collect::<Result<Vec<_>, Error>>()?;
    let agree = polys.windows(2).all(|w| w[0].1 == w[1].1);
    if g.json {
        let mut v = serde_json::to_value(poly_json(n, &polys[0].1)).expect("poly serializes");
        if polys.len() > 1 {
            v["agree"] = json!(agree);
        }
        print_json(&v);
    } else if polys.len() == 1 {
        println!("{}", polys[0].1);
    } else {
        for (name, p) in &polys {
            println!("{name:<5}{p}");
        }
    }
    if !agree {
        eprintln!("error: methods disagree");
        return Ok(EXIT_ERROR);
    }
    Ok(0)
}

fn dodgson_verify(g: &Global, n: usize, trials: usize) -> Outcome {
    let seed = require_seed(g)?;
    if n < 2 {
        return Err(Failure::Usage("dodgson verify needs --n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut plain, mut singular, mut q_ok) = (0usize, 0usize, 0usize);
    for _ in 0..trials {
        let m = random_rational_matrix(n, &mut rng);
        match dodgson(&m) {
            Ok(d) => plain += usize::from(d == det_gauss(m.rows())),
            Err(Error::SingularInterior) => singular += 1,
            Err(e) => return Err(e.into()),
        }
        q_ok += usize::from(q_dodgson_check(&m)?.holds);
    }
    let passed = plain + singular == trials && q_ok == trials;
    if g.json {
        print_json(&json!({
            "n": n, "trials": trials, "dodgson_pass": plain, "singular_interior": singular,
            "q_dodgson_pass": q_ok, "passed": passed
        }));
    } else {
        println!("dodgson    {plain}/{} agree with elimination ({singular} singular interiors skipped)", trials - singular);
        println!("q-dodgson  {q_ok}/{trials} identities hold");
    }
    Ok(if passed { 0 } else { EXIT_ERROR })
}
