//! `fincat`: command-line front end for finite-space computations.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fincat_core::compat::{self, CompatibilityOracle, CoverReport, Mode, Selection2};
use fincat_core::hypergraph::{self, Hypergraph};
use fincat_core::{families, height_one, homotopy, invariants, io, iso, simplicial};
use fincat_core::{Budget, Error, FinitePoset};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::process::ExitCode;

const FORMATS: &str = "\
INPUT FORMATS
  Poset, text (one statement per line, `#` starts a comment):
      a < b < c        relations, chains allowed
      d                a point on its own
  Poset, JSON:
      {\"elements\": [\"a\", \"b\"], \"relations\": [[\"a\", \"b\"]], \"relations_are_covers\": true}
  Element order is the order of first appearance. `-` reads standard input.

  Cover file (strongify): one member per line, comma-separated maximal labels.
  Order file (bound --order): universe labels separated by spaces, commas or newlines.
  Hypergraph: one hyperedge per line, comma-separated vertex labels.

EXIT STATUS
  0 success, 1 bad input or a domain error, 2 a budget ran out (the best
  interval found is still printed).

EXAMPLES
  fincat family 'bipartite(2,3)' > x.txt
  fincat invariants x.txt --json
  fincat bound x.txt --algo h1 --mode gcatp --shuffle --seed 7
  fincat strongify y.txt --cover cover.txt --dot";

#[derive(Parser)]
#[command(name = "fincat", version, about = "Homotopy invariants of finite spaces given as posets", after_help = FORMATS)]
struct Cli {
    /// How to read poset files.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on candidate subsets and antichains in exact searches.
    #[arg(long, global = true, env = "FINCAT_BUDGET")]
    budget: Option<usize>,
    /// Cap on branch-and-bound nodes.
    #[arg(long, global = true, env = "FINCAT_NODES")]
    nodes: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Core obtained by removing beat points, lowest index first.
    Core {
        input: String,
        /// Print the removals, one `<label> up|down witness=<label>` per line.
        #[arg(long)]
        trace: bool,
    },
    /// `true` when the core is a single point.
    IsContractible { input: String },
    /// gcat, gcat_p, Cat_u, the height-one category and the size bounds.
    Invariants { input: String },
    /// Covers from the U/D algorithms or the two heuristics.
    Bound(BoundArgs),
    /// Exact category of a space of height one (or with a height-one core).
    Cat {
        input: String,
        #[arg(long, required = true)]
        height1: bool,
    },
    /// Rebuild a height-one cover into a contractible cover of an
    /// equivalent space of height two.
    Strongify {
        input: String,
        #[arg(long)]
        cover: String,
        /// Print the new space as a DOT graph.
        #[arg(long)]
        dot: bool,
    },
    /// Hypergraph covering and transversal numbers.
    Hypergraph {
        #[arg(value_enum)]
        op: HyperOp,
        input: String,
    },
    /// Iterated subdivision, the face poset of the order complex.
    Sd {
        input: String,
        #[arg(short = 'k', default_value_t = 1)]
        k: usize,
        /// Print the order complex of the result instead of the poset.
        #[arg(long)]
        complex: bool,
        /// Largest poset allowed.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Order isomorphism between two posets.
    Iso { input: String, other: String },
    /// Convert a poset to another format.
    Export {
        input: String,
        #[arg(long)]
        dot: bool,
    },
    /// Print a standard family, e.g. `chain(4)`, `cycle(6)`, `bipartite(2,3)`,
    /// `cone(fence(5))`, `c5crowns`, `hub_fan(4)`.
    Family { kind: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum HyperOp {
    Cover,
    Transversal,
    Dual,
    Sperner,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    U,
    D,
    H1,
    H2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pick {
    Disjoint,
    Covering,
}

#[derive(Args)]
struct BoundArgs {
    input: String,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long, default_value = "gcat")]
    mode: Mode,
    /// Stop length for U/D (default: all lengths), subset size for h2.
    #[arg(long)]
    k: Option<usize>,
    /// Universe order for h1.
    #[arg(long)]
    order: Option<String>,
    /// Random universe order for h1.
    #[arg(long, conflicts_with = "order")]
    shuffle: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// h1: let each block skip one failing point.
    #[arg(long)]
    skip_one: bool,
    /// h2: how the next subset is chosen.
    #[arg(long, value_enum, default_value_t = Pick::Disjoint)]
    pick: Pick,
    /// U/D: also print every evaluated subset as `{a,b}:0|1`.
    #[arg(long)]
    table: bool,
}

/// What a command produced: text for stdout and an exit status.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn with_exactness(text: String, exact: bool) -> Self {
        Output { text, code: if exact { 0 } else { 2 } }
    }
}

struct Ctx {
    format: InputFormat,
    json: bool,
    budget: Budget,
}

fn read(path: &str) -> Result<String, Error> {
    let res = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    res.map_err(|e| Error::BadParameter(format!("cannot read {path}: {e}")))
}

impl Ctx {
    fn poset(&self, path: &str) -> Result<FinitePoset, Error> {
        let text = read(path)?;
        match self.format {
            InputFormat::Auto => io::parse_any(&text),
            InputFormat::Text => io::parse_text(&text),
            InputFormat::Json => io::parse_json(&text),
        }
    }

    fn poset_value(p: &FinitePoset) -> Value {
        serde_json::from_str(&io::to_json(p)).expect("poset JSON is valid")
    }

    fn emit(&self, value: Value, text: String) -> String {
        if self.json {
            serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
        } else {
            text
        }
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    let mut budget = Budget::default();
    if let Some(c) = cli.budget {
        if c == 0 {
            return Err(Error::BadParameter("budget must be positive".into()));
        }
        budget = budget.with_candidates(c);
    }
    if let Some(n) = cli.nodes {
        if n == 0 {
            return Err(Error::BadParameter("node budget must be positive".into()));
        }
        budget = budget.with_nodes(n);
    }
    let ctx = Ctx {
        format: cli.input_format,
        json: cli.json,
        budget,
    };
    match cli.command {
        Command::Core { input, trace } => core_cmd(&ctx, &input, trace),
        Command::IsContractible { input } => {
            let p = ctx.poset(&input)?;
            let c = homotopy::is_contractible(&p);
            Ok(Output::ok(ctx.emit(json!({ "contractible": c }), format!("{c}\n"))))
        }
        Command::Invariants { input } => invariants_cmd(&ctx, &input),
        Command::Bound(args) => bound_cmd(&ctx, args),
        Command::Cat { input, .. } => cat_cmd(&ctx, &input),
        Command::Strongify { input, cover, dot } => strongify_cmd(&ctx, &input, &cover, dot),
        Command::Hypergraph { op, input } => hypergraph_cmd(&ctx, op, &input),
        Command::Sd {
            input,
            k,
            complex,
            max_size,
        } => {
            let p = ctx.poset(&input)?;
            let mut b = ctx.budget;
            if let Some(m) = max_size {
                b.subdivision_size = m;
            }
            let sd = simplicial::subdivide(&p, k, &b)?;
            if complex {
                let c = simplicial::order_complex(&sd);
                let simplices: Vec<Vec<String>> =
                    c.simplices().iter().map(|s| s.iter().map(|&v| sd.label(v).to_string()).collect()).collect();
                Ok(Output::ok(ctx.emit(json!({ "simplices": simplices }), c.export())))
            } else {
                Ok(Output::ok(ctx.emit(Ctx::poset_value(&sd), io::to_text(&sd))))
            }
        }
        Command::Iso { input, other } => {
            let p = ctx.poset(&input)?;
            let q = ctx.poset(&other)?;
            let map = iso::is_isomorphic_within(&p, &q, ctx.budget.iso_size.max(p.len()))?;
            let pairs: Vec<(String, String)> = map
                .iter()
                .flatten()
                .enumerate()
                .map(|(i, &j)| (p.label(i).to_string(), q.label(j).to_string()))
                .collect();
            let mut text = format!("{}\n", map.is_some());
            for (a, b) in &pairs {
                let _ = writeln!(text, "{a} -> {b}");
            }
            Ok(Output::ok(ctx.emit(json!({ "isomorphic": map.is_some(), "map": pairs }), text)))
        }
        Command::Export { input, dot } => {
            let p = ctx.poset(&input)?;
            let text = if dot {
                io::to_dot(&p)
            } else if ctx.json {
                io::to_json(&p) + "\n"
            } else {
                io::to_text(&p)
            };
            Ok(Output::ok(text))
        }
        Command::Family { kind } => {
            let p = families::make_family(&kind.parse()?)?;
            Ok(Output::ok(ctx.emit(Ctx::poset_value(&p), io::to_text(&p))))
        }
    }
}

fn core_cmd(ctx: &Ctx, input: &str, trace: bool) -> Result<Output, Error> {
    let p = ctx.poset(input)?;
    let c = homotopy::core(&p);
    let steps: Vec<Value> = c
        .removal_trace
        .iter()
        .map(|r| {
            json!({
                "point": p.label(r.point),
                "kind": r.kind.trace_name(),
                "witness": p.label(r.witness),
            })
        })
        .collect();
    let value = json!({
        "core": Ctx::poset_value(&c.core),
        "contractible": c.is_point(),
        "trace": steps,
    });
    let text = if trace { c.trace_log(&p) } else { io::to_text(&c.core) };
    Ok(Output::ok(ctx.emit(value, text)))
}

fn invariants_cmd(ctx: &Ctx, input: &str) -> Result<Output, Error> {
    let p = ctx.poset(input)?;
    let r = invariants::invariant_chain_report(&p, &ctx.budget)?;
    let exact = [r.gcat, r.gcat_p, r.cat_u].iter().all(|e| e.is_exact()) && r.cat_h1.is_none_or(|c| c.is_exact());
    Ok(Output::with_exactness(ctx.emit(r.to_json(), r.text()), exact))
}

fn universe_order(oracle: &CompatibilityOracle, args: &BoundArgs) -> Result<Vec<usize>, Error> {
    let n = oracle.universe_len();
    if let Some(path) = &args.order {
        let labels = oracle.universe_labels();
        return io::parse_label_list(&read(path)?)
            .iter()
            .map(|l| {
                labels
                    .iter()
                    .position(|u| u == l)
                    .ok_or_else(|| Error::UnknownLabel(l.clone()))
            })
            .collect();
    }
    let mut order: Vec<usize> = (0..n).collect();
    if args.shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(args.seed));
    }
    Ok(order)
}

fn bound_cmd(ctx: &Ctx, args: BoundArgs) -> Result<Output, Error> {
    let p = ctx.poset(&args.input)?;
    let oracle = CompatibilityOracle::new(&p, args.mode)?;
    let n = oracle.universe_len();
    let (report, table): (CoverReport, Option<String>) = match args.algo {
        Algo::U => {
            let out = compat::u_algorithm(&oracle, args.k.unwrap_or(n).min(n))?;
            (out.report, Some(out.table.export()))
        }
        Algo::D => {
            let out = compat::d_algorithm(&oracle, args.k.unwrap_or(1))?;
            (out.report, Some(out.table.export()))
        }
        Algo::H1 => {
            let order = universe_order(&oracle, &args)?;
            (compat::heuristic1(&oracle, &order, args.skip_one)?, None)
        }
        Algo::H2 => {
            let k = args
                .k
                .ok_or_else(|| Error::BadParameter("h2 needs --k".into()))?;
            let pick = match args.pick {
                Pick::Disjoint => Selection2::Disjoint,
                Pick::Covering => Selection2::Covering,
            };
            (compat::heuristic2(&oracle, k, pick, None)?, None)
        }
    };
    let mut value = serde_json::to_value(&report).expect("report serializes");
    let mut text = report.text();
    let _ = writeln!(text, "evaluations: {}", report.evaluations);
    if let (true, Some(t)) = (args.table, table) {
        value["table"] = Value::String(t.clone());
        text.push_str(&t);
    }
    Ok(Output::ok(ctx.emit(value, text)))
}

fn cat_cmd(ctx: &Ctx, input: &str) -> Result<Output, Error> {
    let p = ctx.poset(input)?;
    let c = match height_one::cat_height1(&p, &ctx.budget) {
        Err(Error::BudgetExceeded(why)) => {
            eprintln!("budget exceeded: {why}");
            let e = invariants::fallback_interval(&p, Mode::CatH1);
            let value = json!({ "cat": e, "exact": false, "cover": [] });
            return Ok(Output::with_exactness(ctx.emit(value, format!("cat {e}\n")), false));
        }
        r => r?,
    };
    let cover = c.cover_labels();
    let mut text = format!("cat {}\n", c.value);
    for m in &cover {
        let _ = writeln!(text, "  {{{}}}", m.join(","));
    }
    let value = json!({
        "cat": c.value,
        "exact": c.value.is_exact(),
        "cover": cover,
    });
    Ok(Output::with_exactness(ctx.emit(value, text), c.value.is_exact()))
}

fn strongify_cmd(ctx: &Ctx, input: &str, cover: &str, dot: bool) -> Result<Output, Error> {
    let p = ctx.poset(input)?;
    let members = io::parse_cover(&read(cover)?, &p)?;
    let s = height_one::strongify(&p, &members)?;
    if dot {
        return Ok(Output::ok(io::to_dot(&s.y)));
    }
    let cover = s.cover_labels();
    let mut text = io::to_text(&s.y);
    text.push_str("# cover\n");
    for m in &cover {
        let _ = writeln!(text, "# {}", m.join(","));
    }
    let added: Vec<&str> = s.added.iter().map(|&x| s.y.label(x)).collect();
    let value = json!({ "poset": Ctx::poset_value(&s.y), "cover": cover, "added": added });
    Ok(Output::ok(ctx.emit(value, text)))
}

fn hypergraph_cmd(ctx: &Ctx, op: HyperOp, input: &str) -> Result<Output, Error> {
    let h = Hypergraph::parse(&read(input)?)?;
    let edges_json = |g: &Hypergraph| -> Value {
        json!(g.edges.iter().map(|e| g.edge_labels(e)).collect::<Vec<_>>())
    };
    match op {
        HyperOp::Cover | HyperOp::Transversal => {
            let (name, w) = match op {
                HyperOp::Cover => ("covering number", hypergraph::covering_number(&h, &ctx.budget)?),
                _ => ("transversal number", hypergraph::transversal_number(&h, &ctx.budget)?),
            };
            let witness: Vec<Value> = w
                .witness
                .iter()
                .map(|&i| match op {
                    HyperOp::Cover => json!(h.edge_labels(&h.edges[i])),
                    _ => json!(h.vertices[i]),
                })
                .collect();
            let mut text = format!("{name} {}\n", w.value);
            for x in &witness {
                let _ = writeln!(text, "  {}", x.to_string().replace('"', ""));
            }
            let value = json!({ "value": w.value, "exact": w.value.is_exact(), "witness": witness });
            Ok(Output::with_exactness(ctx.emit(value, text), w.value.is_exact()))
        }
        HyperOp::Dual => {
            let d = hypergraph::dual_hypergraph(&h);
            Ok(Output::ok(ctx.emit(edges_json(&d), d.to_text())))
        }
        HyperOp::Sperner => {
            let s = hypergraph::sperner_reduction(&h);
            Ok(Output::ok(ctx.emit(edges_json(&s), s.to_text())))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) | Error::SizeBudgetExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
