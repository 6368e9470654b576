use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};

use wlpa_core::brute::{literal_gk_dimension, literal_quasicycle_classes};
use wlpa_core::quasicycle::{is_selfconnected, quasicycle_classes};
use wlpa_core::{
    choose_base, decompose, dimension_oracle, gk_dimension_with, parse_graph, unweighted_gk,
    BasePointChoice, Error, GkResult, NodAutomaton, WeightedGraph,
};

#[derive(Parser)]
#[command(name = "wlpa", version, about = "Growth and structure of weighted Leavitt path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the base edge at a vertex, as VERTEX=EDGE (repeatable).
    #[arg(long = "base", global = true, value_name = "VERTEX=EDGE")]
    base: Vec<String>,

    /// Repeat the computation for every valid base choice and report agreement.
    #[arg(long, global = true)]
    all_bases: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Cross-check against the brute-force reference implementations.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a graph file.
    Validate { file: PathBuf },
    /// Vertices, edges, sinks, weighted edges, range weight forest, base choice.
    Info { file: PathBuf },
    /// Quasi-cycle classes with their star partners and selfconnected flags.
    Quasicycles { file: PathBuf },
    /// Growth type and GK dimension.
    Gkdim {
        file: PathBuf,
        /// Use the cycle criterion for unweighted graphs.
        #[arg(long)]
        fast_unweighted: bool,
    },
    /// Nod-path counts by length and the cumulative growth function.
    Growth {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        /// Also print the per-length counts.
        #[arg(long)]
        counts: bool,
    },
    /// The nod-paths of length at most N.
    Basis {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Matrix decomposition of a finite-dimensional algebra.
    Decompose { file: PathBuf },
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(Value, String), Failure>;

fn read_graph(path: &PathBuf) -> Result<WeightedGraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    Ok(parse_graph(&text)?)
}

fn base_choice(g: &WeightedGraph, overrides: &[String]) -> Result<BasePointChoice, Failure> {
    let mut choice = choose_base(g);
    for spec in overrides {
        let (v, e) = spec
            .split_once('=')
            .ok_or_else(|| Failure::Input(format!("--base expects VERTEX=EDGE, got '{spec}'")))?;
        let vid = g.vertex_by_name(v).ok_or_else(|| Error::UnknownName(v.to_string()))?;
        let eid = g.edge_by_name(e).ok_or_else(|| Error::UnknownName(e.to_string()))?;
        choice = choice.with_override(g, vid, eid)?;
    }
    Ok(choice)
}

fn choices(cli: &Cli, g: &WeightedGraph) -> Result<Vec<BasePointChoice>, Failure> {
    if cli.all_bases {
        Ok(BasePointChoice::all(g))
    } else {
        Ok(vec![base_choice(g, &cli.base)?])
    }
}

fn choice_json(g: &WeightedGraph, choice: &BasePointChoice) -> Value {
    let map: Map<String, Value> = choice
        .iter()
        .map(|(v, e)| (g.vertex_name(v).to_string(), Value::from(g.edge_name(e))))
        .collect();
    Value::Object(map)
}

fn names<'a>(g: &'a WeightedGraph, vs: impl IntoIterator<Item = wlpa_core::VertexId>) -> Vec<&'a str> {
    vs.into_iter().map(|v| g.vertex_name(v)).collect()
}

fn big(n: impl ToString) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

fn validate(g: &WeightedGraph) -> Outcome {
    let text = format!("valid: {} vertices, {} edges\n", g.vertex_count(), g.edge_count());
    Ok((json!({"valid": true, "vertices": g.vertex_count(), "edges": g.edge_count()}), text))
}

fn info(cli: &Cli, g: &WeightedGraph) -> Outcome {
    let choice = base_choice(g, &cli.base)?;
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "source": g.vertex_name(e.source),
                "range": g.vertex_name(e.range),
                "weight": e.weight,
            })
        })
        .collect();
    let weighted: Vec<&str> = g.weighted_edges().into_iter().map(|e| g.edge_name(e)).collect();
    let value = json!({
        "vertices": g.vertex_names(),
        "edges": edges,
        "sinks": names(g, g.sinks()),
        "weighted_edges": weighted,
        "rwf": names(g, g.rwf()),
        "base": choice_json(g, &choice),
    });
    let mut text = String::new();
    writeln!(text, "vertices: {}", g.vertex_names().join(" ")).unwrap();
    for e in g.edges() {
        writeln!(text, "edge {}: {} -> {} (weight {})", e.name, g.vertex_name(e.source), g.vertex_name(e.range), e.weight)
            .unwrap();
    }
    writeln!(text, "sinks: {}", names(g, g.sinks()).join(" ")).unwrap();
    writeln!(text, "weighted edges: {}", weighted.join(" ")).unwrap();
    writeln!(text, "range weight forest: {}", names(g, g.rwf()).join(" ")).unwrap();
    for (v, e) in choice.iter() {
        writeln!(text, "base at {}: {}", g.vertex_name(v), g.edge_name(e)).unwrap();
    }
    Ok((value, text))
}

fn quasicycles(cli: &Cli, g: &WeightedGraph) -> Outcome {
    let aut = NodAutomaton::new(g, base_choice(g, &cli.base)?)?;
    let classes = quasicycle_classes(&aut);
    if cli.oracle && classes != literal_quasicycle_classes(&aut) {
        return Err(Failure::Internal("quasi-cycle classes differ from the literal search".into()));
    }
    let mut text = String::new();
    let list: Vec<Value> = classes
        .iter()
        .map(|c| {
            let word = g.word_name(c.canonical.letters());
            let star = g.word_name(c.canonical.star().canonical().letters());
            let selfconnected = is_selfconnected(&aut, &c.canonical);
            writeln!(text, "[{word}] star [{star}]{}", if selfconnected { " selfconnected" } else { "" }).unwrap();
            json!({
                "canonical": word,
                "members": c.members.iter().map(|p| g.word_name(p.letters())).collect::<Vec<_>>(),
                "star": star,
                "selfconnected": selfconnected,
            })
        })
        .collect();
    if classes.is_empty() {
        text.push_str("no quasi-cycles\n");
    }
    Ok((json!({"classes": list}), text))
}

fn gk_json(g: &WeightedGraph, r: &GkResult) -> (Value, String) {
    match r {
        GkResult::Polynomial { dimension, chain } => {
            let chain: Vec<String> = chain.iter().map(|p| g.word_name(p.letters())).collect();
            let text = format!("growth: polynomial\ngk dimension: {dimension}\nchain: {}\n", chain.join(" => "));
            (json!({"growth": "polynomial", "gk_dimension": dimension, "chain": chain}), text)
        }
        GkResult::Exponential { witness, connector } => {
            let w = g.word_name(witness.letters());
            let o = g.word_name(connector);
            let text = format!("growth: exponential\ngk dimension: infinite\nwitness: {w}\nconnector: {o}\n");
            (json!({"growth": "exponential", "witness": w, "connector": o}), text)
        }
    }
}

fn gkdim(cli: &Cli, g: &WeightedGraph, fast_unweighted: bool) -> Outcome {
    let choices = choices(cli, g)?;
    let first = NodAutomaton::new(g, choices[0].clone())?;
    let result = if fast_unweighted { unweighted_gk(g)? } else { gk_dimension_with(&first)? };
    let (mut value, mut text) = gk_json(g, &result);
    if cli.all_bases {
        for choice in &choices {
            let r = gk_dimension_with(&NodAutomaton::new(g, choice.clone())?)?;
            if (r.growth(), r.dimension()) != (result.growth(), result.dimension()) {
                return Err(Failure::Internal(format!(
                    "base choice {} gives {} instead of {}",
                    choice_json(g, choice),
                    r.dimension(),
                    result.dimension()
                )));
            }
        }
        value["bases_checked"] = json!(choices.len());
        writeln!(text, "all {} base choices agree", choices.len()).unwrap();
    }
    if cli.oracle {
        let reference = literal_gk_dimension(&first);
        if reference != result.dimension() {
            return Err(Failure::Internal(format!(
                "literal search gives {reference}, fast path {}",
                result.dimension()
            )));
        }
        value["oracle"] = json!("ok");
        text.push_str("oracle: ok\n");
    }
    Ok((value, text))
}

fn growth(cli: &Cli, g: &WeightedGraph, max_len: usize, counts: bool) -> Outcome {
    let aut = NodAutomaton::new(g, base_choice(g, &cli.base)?)?;
    let c = aut.count_by_length(max_len);
    let d = aut.growth_function(max_len);
    let mut value = json!({"max_len": max_len});
    if counts {
        value["counts"] = Value::Array(c.iter().map(big).collect());
    }
    value["growth"] = Value::Array(d.iter().map(big).collect());
    let mut text = String::new();
    for (n, dn) in d.iter().enumerate() {
        if counts {
            writeln!(text, "{n}\t{}\t{dn}", c[n]).unwrap();
        } else {
            writeln!(text, "{n}\t{dn}").unwrap();
        }
    }
    Ok((value, text))
}

fn basis(cli: &Cli, g: &WeightedGraph, max_len: usize) -> Outcome {
    let aut = NodAutomaton::new(g, base_choice(g, &cli.base)?)?;
    let levels = aut.enumerate_nod_paths(max_len);
    let rendered: Vec<Vec<String>> =
        levels.iter().map(|level| level.iter().map(|w| g.render_word(w)).collect()).collect();
    let mut text = String::new();
    for (n, level) in rendered.iter().enumerate() {
        for w in level {
            writeln!(text, "{n}\t{w}").unwrap();
        }
    }
    Ok((json!({"max_len": max_len, "paths": rendered}), text))
}

fn decomposition(g: &WeightedGraph) -> Outcome {
    let d = decompose(g)?;
    let oracle = dimension_oracle(g)?;
    if oracle != d.dimension {
        return Err(Failure::Internal(format!(
            "sizes {:?} give dimension {} but there are {oracle} nod-paths",
            d.sizes, d.dimension
        )));
    }
    let blocks: Vec<String> = d.sizes.iter().map(|n| format!("M_{n}(K)")).collect();
    let text = format!("{}\ndimension: {}\noracle: ok\n", blocks.join(" x "), d.dimension);
    Ok((json!({"sizes": d.sizes, "dimension": d.dimension, "oracle": "ok"}), text))
}

fn run(cli: &Cli) -> Outcome {
    let file = match &cli.command {
        Command::Validate { file }
        | Command::Info { file }
        | Command::Quasicycles { file }
        | Command::Gkdim { file, .. }
        | Command::Growth { file, .. }
        | Command::Basis { file, .. }
        | Command::Decompose { file } => file,
    };
    let g = read_graph(file)?;
    match &cli.command {
        Command::Validate { .. } => validate(&g),
        Command::Info { .. } => info(cli, &g),
        Command::Quasicycles { .. } => quasicycles(cli, &g),
        Command::Gkdim { fast_unweighted, .. } => gkdim(cli, &g, *fast_unweighted),
        Command::Growth { max_len, counts, .. } => growth(cli, &g, *max_len, *counts),
        Command::Basis { max_len, .. } => basis(cli, &g, *max_len),
        Command::Decompose { .. } => decomposition(&g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text)) => {
            match cli.format {
                Format::Json => println!("{value}"),
                Format::Text => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
