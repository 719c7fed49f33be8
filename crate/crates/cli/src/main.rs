mod context;
mod document;
mod fixtures;
mod tasks;

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use norma::suite::{self, SuiteConfig};
use norma::Error;
use serde_json::{json, Value};

use context::Context;
use document::{AlgebraSpec, Document, Element, ModuleSpec, Op, Task};
use tasks::{run_task, Status};

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

#[derive(Parser)]
#[command(name = "norma", version, about = "Exact computations with the norm functor of finite free extensions")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Seed of the pseudo-random sampler.
    #[arg(long, global = true, env = "NORMA_SEED", default_value_t = 0)]
    seed: u64,
    /// Random samples per probabilistic check.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a JSON document ("-" reads standard input).
    Run { path: String },
    /// Norm of a free module over R[x]/(f).
    Norm {
        #[arg(long, default_value = "Q")]
        domain: String,
        /// Monic modulus of the extension.
        #[arg(long)]
        etale: String,
        /// Rank of the free module.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// List the multiset basis of the divided powers of a free module.
    GammaBasis {
        #[arg(long, default_value = "Q")]
        domain: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Determinant of the tensor-factor permutation j(σ) on (F^r)^⊗d.
    Segre {
        #[arg(long, default_value = "Q")]
        domain: String,
        /// Cycle notation, 1-based, e.g. "(1 2)".
        #[arg(long)]
        perm: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
    },
    /// The integral split quadratic triple for sizes 2n_1, .., 2n_d.
    QuadpairSplit {
        #[arg(long, value_delimiter = ',', default_value = "1,1")]
        ns: Vec<usize>,
    },
    /// Quadratic triple of the norm of a quaternion algebra over R[x]/(f).
    A1d2 {
        #[arg(long, default_value = "Q")]
        domain: String,
        #[arg(long)]
        etale: String,
        /// "a,b" with a and b in the base.
        #[arg(long, allow_hyphen_values = true)]
        quaternion: String,
    },
    /// Run verification criteria by number, or "all" (which also runs the
    /// bundled fixture documents).
    VerifySuite {
        #[arg(default_value = "all")]
        criteria: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let common = cli.common;
    let code = match cli.command {
        Command::Run { path } => match read_document(&path) {
            Ok(doc) => run_document(&doc, common),
            Err(code) => code,
        },
        Command::Norm { domain, etale, n } => {
            let mut doc = single(&domain, Task { module: Some("M".into()), ..Task::new("norm", Op::Norm) });
            doc.algebras.insert("R'".into(), AlgebraSpec::Polynomial { modulus: etale });
            doc.modules.insert("M".into(), ModuleSpec { algebra: "R'".into(), rank: Some(n), blocks: None, action: None });
            run_document(&doc, common)
        }
        Command::GammaBasis { domain, n, d } => {
            run_document(&single(&domain, Task { n: Some(n), d: Some(d), ..Task::new("gamma-basis", Op::GammaBasis) }), common)
        }
        Command::Segre { domain, perm, r, d } => {
            let task = Task { perm: Some(perm), r: Some(r), d: Some(d), ..Task::new("segre", Op::SegreParity) };
            run_document(&single(&domain, task), common)
        }
        Command::QuadpairSplit { ns } => {
            run_document(&single("Q", Task { ns, ..Task::new("quadpair-split", Op::SplitTriple) }), common)
        }
        Command::A1d2 { domain, etale, quaternion } => {
            let Some((a, b)) = quaternion.split_once(',') else {
                eprintln!("error: --quaternion expects \"a,b\"");
                return ExitCode::from(EXIT_PARSE);
            };
            let mut doc = single(&domain, Task { algebra: Some("B".into()), ..Task::new("a1d2", Op::A1d2) });
            doc.algebras.insert("R'".into(), AlgebraSpec::Polynomial { modulus: etale });
            doc.algebras.insert(
                "B".into(),
                AlgebraSpec::Quaternion {
                    a: Element::Scalar(a.trim().into()),
                    b: Element::Scalar(b.trim().into()),
                    over: Some("R'".into()),
                },
            );
            run_document(&doc, common)
        }
        Command::VerifySuite { criteria } => verify_suite(&criteria, common),
    };
    ExitCode::from(code)
}

fn single(domain: &str, task: Task) -> Document {
    Document { domain: domain.into(), algebras: Default::default(), modules: Default::default(), tasks: vec![task] }
}

fn read_document(path: &str) -> Result<Document, u8> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    if let Err(e) = read {
        eprintln!("error: cannot read {path}: {e}");
        return Err(EXIT_PARSE);
    }
    serde_json::from_str(&text).map_err(|e| {
        eprintln!("parse error: {e}");
        EXIT_PARSE
    })
}

/// Exit code of a failed load: malformed text is a parse error, anything
/// else is the document failing validation.
fn load_exit(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        _ => EXIT_VALIDATION,
    }
}

/// Runs every task of a document and returns the report and exit code.
pub fn evaluate(doc: &Document, seed: u64, samples: usize) -> Result<(Value, u8), Error> {
    let ctx = Context::build(doc)?;
    let outcomes: Vec<tasks::TaskOutcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = doc
            .tasks
            .iter()
            .enumerate()
            .map(|(i, task)| {
                let ctx = &ctx;
                scope.spawn(move || run_task(ctx, task, seed.wrapping_add(i as u64), samples))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("task panicked")).collect()
    });
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let (passed, failed, errors) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
    let code = if errors > 0 {
        EXIT_PRECONDITION
    } else if failed > 0 {
        EXIT_FAIL
    } else {
        0
    };
    let report = json!({
        "domain": ctx.domain.to_string(),
        "seed": seed,
        "samples": samples,
        "tasks": outcomes.into_iter().map(|o| o.json).collect::<Vec<_>>(),
        "summary": { "passed": passed, "failed": failed, "errors": errors },
    });
    Ok((report, code))
}

fn run_document(doc: &Document, common: Common) -> u8 {
    let start = Instant::now();
    match evaluate(doc, common.seed, common.samples) {
        Ok((report, code)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            for task in report["tasks"].as_array().unwrap() {
                eprintln!("{:<6} {}", task["status"].as_str().unwrap(), task["name"].as_str().unwrap());
            }
            eprintln!("{} task(s) in {:.2?}", doc.tasks.len(), start.elapsed());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            load_exit(&e)
        }
    }
}

fn verify_suite(selection: &[String], common: Common) -> u8 {
    let config = SuiteConfig { seed: common.seed, samples: common.samples };
    let all = selection.iter().any(|s| s == "all");
    let ids: Vec<usize> = if all {
        suite::criteria().into_iter().map(|(id, _)| id).collect()
    } else {
        let mut ids = Vec::new();
        for s in selection {
            match s.parse::<usize>() {
                Ok(id) if (1..=suite::criteria().len()).contains(&id) => ids.push(id),
                _ => {
                    eprintln!("error: unknown criterion {s:?}");
                    return EXIT_PARSE;
                }
            }
        }
        ids
    };
    let start = Instant::now();
    let mut ok = true;
    let mut criteria = Vec::new();
    for id in ids {
        let outcome = suite::run(id, &config).expect("validated id");
        eprintln!(
            "criterion {id:>2} {} {} ({} ms)",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.name,
            outcome.millis
        );
        ok &= outcome.passed;
        criteria.push(json!({ "id": id, "name": outcome.name, "passed": outcome.passed, "detail": outcome.detail }));
    }
    let mut documents = Vec::new();
    if all {
        for (name, text) in fixtures::BUNDLED {
            let passed = match serde_json::from_str::<Document>(text).map_err(|e| Error::Parse(e.to_string())) {
                Ok(doc) => matches!(evaluate(&doc, config.seed, config.samples), Ok((_, 0))),
                Err(_) => false,
            };
            eprintln!("fixture {name} {}", if passed { "PASS" } else { "FAIL" });
            ok &= passed;
            documents.push(json!({ "fixture": name, "passed": passed }));
        }
    }
    let report = json!({ "seed": config.seed, "samples": config.samples, "criteria": criteria, "fixtures": documents, "passed": ok });
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    eprintln!("suite finished in {:.2?}", start.elapsed());
    if ok {
        0
    } else {
        EXIT_FAIL
    }
}
