use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use letterkit::checks::{self, CheckConfig, Status};
use letterkit::composer::{compose, ComposeOptions};
use letterkit::graph::{from_graph6, threshold, to_dot, to_graph6, Family, ThresholdStep};
use letterkit::letter::{decode, parse_shorthand, verify, Lettering};
use letterkit::modular::{decomposition_tree, quotient, DecompositionTree};
use letterkit::obstructions::{bounds, profile_report};
use letterkit::solver::{is_k_letterable, LetterClassConstraint, Outcome, SolveOptions};
use letterkit::{par, Error, Graph};

/// Letter graphs: lettericity, modular decomposition, obstructions and
/// lettering construction.
#[derive(Parser)]
#[command(name = "letterkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph from a named family.
    Gen(GenArgs),
    /// Decode a word under a decoder such as "ab,ba".
    Decode {
        #[arg(long)]
        decoder: String,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        format: Format,
    },
    /// Exact lettericity, optionally under letter-class constraints.
    Lettericity {
        /// graph6 file, or "-" / nothing for stdin
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        /// JSON file holding vertex classes, e.g. [[0,4],[1,5]]
        #[arg(long)]
        classes: Option<PathBuf>,
        /// Time budget in seconds
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Quotient and modules, or the full decomposition tree.
    Decompose {
        file: Option<PathBuf>,
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        json: bool,
    },
    /// The (p, q, r) profile and, with --m, the letter-count bounds.
    Profile {
        file: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build a lettering from the decomposition.
    Compose {
        file: Option<PathBuf>,
        /// Decode the result and compare with the input
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        /// Time budget in seconds for each prime quotient
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Run the named verification checks.
    VerifyPaper {
        /// Comma-separated check names; see --list
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long)]
        budget: Option<f64>,
        /// Required when a randomized check is selected
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
        /// List the available checks
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Family name (alternative to --family)
    #[arg(value_name = "FAMILY", conflicts_with = "family")]
    family_name: Option<String>,
    /// Size parameter (alternative to --n)
    #[arg(value_name = "N", conflicts_with = "n")]
    size: Option<usize>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Creation sequence for the threshold family, e.g. "iidd"
    #[arg(long)]
    seq: Option<String>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// graph6 (default)
    #[arg(long)]
    g6: bool,
    #[arg(long)]
    dot: bool,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Check(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            Error::QuotientOutOfReach { ref reason, .. }
                if matches!(**reason, Error::BudgetExhausted { .. }) =>
            {
                Failure::Budget(e.to_string())
            }
            Error::Internal(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    par::configure_from_env();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Gen(a) => gen(a),
        Command::Decode {
            decoder,
            word,
            format,
        } => {
            let (d, w) = parse_shorthand(&decoder, &word)?;
            print_graph(&decode(&d, &w)?, &format);
            Ok(true)
        }
        Command::Lettericity {
            file,
            max_k,
            classes,
            budget,
            json,
        } => lettericity_cmd(file, max_k, classes, budget, json),
        Command::Decompose { file, tree, json } => {
            let g = read_graph(file)?;
            if tree {
                let t = decomposition_tree(&g)?;
                if json {
                    println!("{}", to_json(&t)?);
                } else {
                    print_tree(&t, 0);
                }
            } else {
                let q = quotient(&g)?;
                if json {
                    println!("{}", to_json(&q)?);
                } else {
                    println!("kind: {:?}", q.kind);
                    println!("quotient: {}", to_graph6(&q.quotient));
                    for (v, m) in q.modules.iter().enumerate() {
                        println!("module {v}: {m:?}");
                    }
                }
            }
            Ok(true)
        }
        Command::Profile { file, m, json } => {
            let g = read_graph(file)?;
            let p = profile_report(&g);
            let b = m
                .map(|m| bounds(m, p.profile.p, p.profile.q, p.profile.r))
                .transpose()?;
            if json {
                let mut v = serde_json::to_value(&p).map_err(Error::from)?;
                if let Some(b) = &b {
                    v["bounds"] = serde_json::to_value(b).map_err(Error::from)?;
                }
                println!("{v}");
            } else {
                println!("p={} q={} r={}", p.profile.p, p.profile.q, p.profile.r);
                if let Some(b) = b {
                    println!("m={} f_paper={} F_impl={}", b.m, b.f_paper, b.f_impl);
                }
            }
            Ok(true)
        }
        Command::Compose {
            file,
            verify: check,
            json,
            budget,
        } => {
            let g = read_graph(file)?;
            let mut opts = ComposeOptions::default();
            opts.solver.budget = budget.map(seconds).transpose()?;
            let c = compose(&g, &opts)?;
            let ok = !check || verify(&g, &c.lettering)?;
            if json {
                println!("{}", to_json(&c)?);
            } else {
                println!("letters: {}", c.alphabet_size);
                print_lettering(&c.lettering);
                if let Some(b) = &c.bound_check {
                    println!(
                        "bound: F_impl={} f_paper={} (m={}, p={} q={} r={})",
                        b.bounds.f_impl,
                        b.bounds.f_paper,
                        c.m,
                        b.profile.p,
                        b.profile.q,
                        b.profile.r
                    );
                }
                if check {
                    println!("verified: {ok}");
                }
            }
            Ok(ok)
        }
        Command::VerifyPaper {
            suite,
            budget,
            seed,
            json,
            list,
        } => verify_paper(suite, budget, seed, json, list),
    }
}

fn gen(a: GenArgs) -> CmdResult {
    let name = a
        .family
        .or(a.family_name)
        .ok_or_else(|| Failure::Usage("a family is required".into()))?;
    let g = if name == "threshold" {
        let seq = a
            .seq
            .ok_or_else(|| Failure::Usage("threshold needs --seq".into()))?;
        threshold(&ThresholdStep::parse_sequence(&seq)?)
    } else {
        let family = Family::from_name(&name).ok_or_else(|| {
            let known: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
            Failure::Usage(format!(
                "unknown family '{name}' (known: {}, threshold)",
                known.join(", ")
            ))
        })?;
        let n = a.n.or(a.size).unwrap_or(0);
        family.build(n)?
    };
    print_graph(&g, &a.format);
    Ok(true)
}

fn lettericity_cmd(
    file: Option<PathBuf>,
    max_k: usize,
    classes: Option<PathBuf>,
    budget: Option<f64>,
    json: bool,
) -> CmdResult {
    let g = read_graph(file)?;
    let constraint = classes
        .map(|p| -> Result<LetterClassConstraint, Failure> {
            let text = read_text(&p)?;
            let raw: Vec<Vec<usize>> = serde_json::from_str(&text).map_err(Error::from)?;
            Ok(LetterClassConstraint::new(raw)?)
        })
        .transpose()?;
    let opts = SolveOptions {
        max_k,
        budget: budget.map(seconds).transpose()?,
        ..SolveOptions::default()
    };
    if g.n() == 0 {
        println!("0");
        return Ok(true);
    }
    let mut last = None;
    for k in 1..=max_k {
        let r = is_k_letterable(&g, k, constraint.as_ref(), &opts)?;
        let found = r.outcome.is_found();
        last = Some(r);
        if found {
            break;
        }
    }
    let r = last.ok_or_else(|| Failure::Usage("--max-k must be at least 1".into()))?;
    if json {
        println!("{}", to_json(&r)?);
    } else {
        match &r.outcome {
            Outcome::Found(l) => {
                println!("{}", r.k);
                print_lettering(l);
            }
            Outcome::Exhausted => println!("more than {max_k}"),
        }
    }
    Ok(true)
}

fn verify_paper(
    suite: Vec<String>,
    budget: Option<f64>,
    seed: Option<u64>,
    json: bool,
    list: bool,
) -> CmdResult {
    if list {
        for (name, claim, seeded) in checks::CHECKS {
            let tag = if *seeded { " (needs --seed)" } else { "" };
            println!("{name}: {claim}{tag}");
        }
        return Ok(true);
    }
    let names: Vec<&str> = if suite.is_empty() {
        checks::DEFAULT_CHECKS.to_vec()
    } else {
        suite.iter().map(String::as_str).collect()
    };
    for n in &names {
        if !checks::CHECKS.iter().any(|c| c.0 == *n) {
            return Err(Failure::Usage(format!("unknown check '{n}'; see --list")));
        }
        if checks::needs_seed(n) && seed.is_none() {
            return Err(Failure::Usage(format!(
                "check '{n}' is randomized; pass --seed"
            )));
        }
    }
    let cfg = CheckConfig {
        budget: budget.map(seconds).transpose()?,
        seed,
    };
    let result = checks::run_suite(&names, &cfg)?;
    if json {
        println!("{}", to_json(&result)?);
    } else {
        for c in &result.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::BudgetExhausted => "BUDGET",
            };
            let counters: Vec<String> =
                c.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!(
                "{tag} {} ({} ms): {} [{}]",
                c.name,
                c.elapsed_ms,
                c.claim,
                counters.join(" ")
            );
            for f in &c.failures {
                println!("  {f}");
            }
        }
    }
    if result.checks.iter().any(|c| c.status == Status::Fail) {
        Ok(false)
    } else if result
        .checks
        .iter()
        .any(|c| c.status == Status::BudgetExhausted)
    {
        Err(Failure::Budget(
            "budget exhausted before every check finished".into(),
        ))
    } else {
        Ok(true)
    }
}

fn seconds(s: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s).map_err(|e| Failure::Usage(format!("bad budget {s}: {e}")))
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(file: Option<PathBuf>) -> Result<Graph, Failure> {
    let text = match file {
        Some(p) if p.as_os_str() != "-" => read_text(&p)?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            s
        }
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Failure::Usage("no graph6 input".into()))?;
    Ok(from_graph6(line)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string(v).map_err(Error::from)?)
}

fn print_graph(g: &Graph, f: &Format) {
    if f.dot {
        print!("{}", to_dot(g, "G"));
    } else if f.json {
        let v = serde_json::json!({
            "graph6": to_graph6(g),
            "n": g.n(),
            "edges": g.edges(),
        });
        println!("{v}");
    } else {
        println!("{}", to_graph6(g));
    }
}

fn print_lettering(l: &Lettering) {
    println!("decoder: {}", l.decoder().to_shorthand());
    println!("word: {}", l.word_string());
    let order: Vec<String> = l
        .vertex_of_position()
        .iter()
        .map(|v| v.to_string())
        .collect();
    println!("vertices: {}", order.join(" "));
}

fn print_tree(t: &DecompositionTree, depth: usize) {
    let pad = "  ".repeat(depth);
    match (&t.kind, &t.quotient) {
        (Some(k), Some(q)) => println!("{pad}{:?} {q} {:?}", k, t.vertices),
        _ => println!("{pad}vertex {:?}", t.vertices),
    }
    for c in &t.children {
        print_tree(c, depth + 1);
    }
}
