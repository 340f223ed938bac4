use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nilrep_core::lie::LieBasisElement;
use nilrep_core::poly::Polynomial;
use nilrep_core::rep::{build_rep, classify_from_action, verify_representation, GeneratorTables};
use nilrep_core::structure::{sl2_exact_sequence_witness, submodule_report};
use nilrep_core::tensor::{clebsch_gordan_components, decompose_tensor, default_truncation, split_tensor_l1};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nilrep", version, about = "Exact computations with sl(n+1)-modules M(p) on polynomial rings")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build M(p) and check every bracket relation.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Worker threads for the pair checks.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Apply one basis element of sl(n+1) to a polynomial.
    Act {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        on: String,
    },
    /// Compare the simplicity criterion with the invariant-ideal search.
    Simplicity {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Recover p from a JSON file of p_ij and q_i.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// The exact sequence of V(p) when p(0) is a nonpositive integer.
    Sl2Sequence {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Split V(p) ⊗ L(1) into V(p-1) ⊕ V(p+1).
    TensorSplit {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Decompose V(p) ⊗ L(k).
    TensorDecompose {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Highest weights of L(k) ⊗ L(m).
    Cg {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
    },
}

enum Failure {
    /// Bad input: message only, exit status 2.
    Usage(String),
    /// The engine ran and reported a negative result, exit status 1.
    Engine(Value, String),
}

type Outcome = Result<Value, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse_poly(text: &str, n: usize) -> Result<Polynomial, Failure> {
    Polynomial::parse(text, n).map_err(|e| usage(format!("cannot parse {:?}: {}", text, e)))
}

fn verify(n: usize, p: &str, jobs: Option<usize>) -> Outcome {
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(usage)?;
    }
    let rep = build_rep(n, &parse_poly(p, n)?).map_err(usage)?;
    let report = verify_representation(&rep);
    let value = to_value(&report);
    if report.passed() {
        Ok(value)
    } else {
        let msg = format!("{} bracket relations fail", report.failures.len());
        Err(Failure::Engine(value, msg))
    }
}

fn act(n: usize, p: &str, element: &str, on: &str) -> Outcome {
    let p = parse_poly(p, n)?;
    let f = parse_poly(on, n)?;
    let b: LieBasisElement = element.parse().map_err(usage)?;
    let b = b.validate(n).map_err(usage)?;
    let rep = build_rep(n, &p).map_err(usage)?;
    let result = rep.act(b, &f).map_err(usage)?;
    Ok(json!({
        "n": n,
        "p": p.to_string(),
        "element": b.to_string(),
        "on": f.to_string(),
        "result": result.to_string(),
    }))
}

fn simplicity(n: usize, p: &str, bound: Option<u32>) -> Outcome {
    let rep = build_rep(n, &parse_poly(p, n)?).map_err(usage)?;
    let report = submodule_report(&rep, bound).map_err(usage)?;
    Ok(to_value(&report))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    n: usize,
    pij: BTreeMap<String, String>,
    qi: BTreeMap<String, String>,
}

fn parse_index(key: &str, n: usize) -> Option<usize> {
    key.trim().parse().ok().filter(|&i| (1..=n).contains(&i))
}

fn read_tables(path: &PathBuf) -> Result<GeneratorTables, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
    let file: TableFile = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {}", path.display(), e)))?;
    let n = file.n;
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let mut pij = vec![vec![None; n]; n];
    for (key, expr) in &file.pij {
        let (i, j) = key
            .split_once(',')
            .and_then(|(a, b)| Some((parse_index(a, n)?, parse_index(b, n)?)))
            .ok_or_else(|| usage(format!("bad pij key {:?}", key)))?;
        pij[i - 1][j - 1] = Some(parse_poly(expr, n)?);
    }
    let mut qi = vec![None; n];
    for (key, expr) in &file.qi {
        let i = parse_index(key, n).ok_or_else(|| usage(format!("bad qi key {:?}", key)))?;
        qi[i - 1] = Some(parse_poly(expr, n)?);
    }
    let pij = pij
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, f)| f.ok_or_else(|| usage(format!("missing pij entry \"{},{}\"", i + 1, j + 1))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let qi = qi
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| usage(format!("missing qi entry \"{}\"", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    GeneratorTables::new(n, pij, qi).map_err(usage)
}

fn classify(input: &PathBuf) -> Outcome {
    let tables = read_tables(input)?;
    let n = tables.rank();
    match classify_from_action(&tables) {
        Ok(p) => Ok(json!({ "n": n, "p": p.to_string() })),
        Err(e) => {
            let msg = e.to_string();
            Err(Failure::Engine(json!({ "n": n, "inconsistency": to_value(&e) }), msg))
        }
    }
}

fn sl2_sequence(p: &str) -> Outcome {
    let p = parse_poly(p, 1)?;
    match sl2_exact_sequence_witness(&p) {
        None => Ok(json!({ "p": p.to_string(), "applicable": false })),
        Some(w) => {
            let mut value = to_value(&w);
            value["p"] = json!(p.to_string());
            value["applicable"] = json!(true);
            if w.intertwiner_ok && w.submodule_ok {
                Ok(value)
            } else {
                Err(Failure::Engine(value, "intertwiner check failed".into()))
            }
        }
    }
}

fn tensor_split(p: &str) -> Outcome {
    let p = parse_poly(p, 1)?;
    match split_tensor_l1(&p) {
        Ok(split) if split.checks.passed() => Ok(to_value(&split)),
        Ok(split) => Err(Failure::Engine(to_value(&split), "splitting checks failed".into())),
        Err(e) => {
            let msg = e.to_string();
            let mut value = to_value(&e);
            value["p"] = json!(p.to_string());
            Err(Failure::Engine(value, msg))
        }
    }
}

fn tensor_decompose(p: &str, k: u32, degree: Option<u32>) -> Outcome {
    let p = parse_poly(p, 1)?;
    let degree = degree.unwrap_or_else(|| default_truncation(&p, k));
    match decompose_tensor(&p, k, degree) {
        Ok(dec) => Ok(to_value(&dec)),
        Err(e) => {
            let msg = e.to_string();
            let mut value = to_value(&e);
            value["p"] = json!(p.to_string());
            value["k"] = json!(k);
            Err(Failure::Engine(value, msg))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify { n, p, jobs } => verify(*n, p, *jobs),
        Command::Act { n, p, element, on } => act(*n, p, element, on),
        Command::Simplicity { n, p, bound } => simplicity(*n, p, *bound),
        Command::Classify { input } => classify(input),
        Command::Sl2Sequence { p } => sl2_sequence(p),
        Command::TensorSplit { p } => tensor_split(p),
        Command::TensorDecompose { p, k, degree } => tensor_decompose(p, *k, *degree),
        Command::Cg { k, m } => Ok(json!({ "components": clebsch_gordan_components(*k, *m) })),
    }
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            emit(&value, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(Failure::Engine(value, msg)) => {
            emit(&value, cli.pretty);
            eprintln!("nilrep: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("nilrep: {}", msg);
            ExitCode::from(2)
        }
    }
}
