//! `sscirc`: build networks, synthesize sharing circuits, and verify both.
//!
//! Exit status is 0 on success (including `sampled_pass`), 2 when a check
//! is refuted, and 1 on usage or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use sscirc::ackermann::{alpha, lambda};
use sscirc::circuit::synthesize_valid;
use sscirc::concentrator::{build_depth1, ConcentratorParams, DEFAULT_RETRIES};
use sscirc::format::{
    circuit_from_json, circuit_to_json, network_from_json, network_to_json, share_vector_to_json, shares_from_json,
};
use sscirc::infocheck::{enumerate_distribution, han_check, verify_entropy_bounds, verify_threshold_definition, DEFAULT_TOL};
use sscirc::network::{verify_concentrator, verify_partial_sc, verify_superconcentrator, DEFAULT_BUDGET};
use sscirc::subsets::next_combination;
use sscirc::superconcentrator::{self, recommended_depth, BuildOptions, ScBuildSpec, DEFAULT_EPSILON};
use sscirc::{bench, FieldModulus, Verdict, VerificationReport, MERSENNE_61};

const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "sscirc", version, about = "Threshold secret-sharing circuits from superconcentrators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random depth-1 (inputs, outputs, k)-concentrator, verified.
    GenConcentrator {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        outputs: usize,
        #[arg(long)]
        k: usize,
        /// Per-input degree; defaults to the builder's formula.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Superconcentrator with the given inputs and outputs.
    GenSc {
        #[arg(long)]
        inputs: usize,
        #[arg(long)]
        outputs: usize,
        /// A depth limit, or `auto` for alpha(m, n) + 3.
        #[arg(long, default_value = "auto")]
        depth: String,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Subset checks for each inner concentrator and for the final
        /// verification.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a network file for a connectivity property.
    VerifyGraph {
        /// `sc`, `concentrator:K`, or `partial:P,Q`.
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        file: PathBuf,
    },
    /// Random coefficients on a network, retried until the scheme checks out.
    SynthSs {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = MERSENNE_61)]
        modulus: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank checks of a circuit's threshold conditions.
    VerifySs {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Shares of a secret.
    Share {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        secret: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recovers the secret from the first t shares in the file.
    Reconstruct {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        shares: PathBuf,
    },
    /// Exact entropy checks by enumerating all inputs (small fields only).
    EntropyVerify {
        #[arg(long)]
        circuit: PathBuf,
        /// Defaults to the circuit's threshold.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Prints lambda_d(n).
    Lambda { d: u32, n: u64 },
    /// Prints alpha(m, n).
    Alpha { m: u64, n: u64 },
    /// CSV of builder edge counts.
    Bench {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 2_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn status(verdict: Verdict) -> u8 {
    if verdict.passed() {
        0
    } else {
        2
    }
}

fn report(r: &VerificationReport) -> u8 {
    println!("property {}", r.property);
    if let Some(seed) = r.sample_seed {
        println!("sample_seed {seed}");
    }
    println!("{}", r.summary_line());
    status(r.verdict)
}

enum GraphProperty {
    Sc,
    Concentrator(usize),
    Partial(usize, usize),
}

fn parse_property(s: &str) -> Result<GraphProperty> {
    if s == "sc" {
        return Ok(GraphProperty::Sc);
    }
    if let Some(k) = s.strip_prefix("concentrator:") {
        return Ok(GraphProperty::Concentrator(k.parse().context("concentrator capacity")?));
    }
    if let Some(pq) = s.strip_prefix("partial:") {
        let (p, q) = pq.split_once(',').context("partial takes P,Q")?;
        return Ok(GraphProperty::Partial(p.trim().parse()?, q.trim().parse()?));
    }
    bail!("unknown property {s:?}; expected sc, concentrator:K or partial:P,Q")
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::GenConcentrator { inputs, outputs, k, degree, seed, budget, retries, out } => {
            let mut params = match degree {
                Some(degree) => ConcentratorParams { inputs, outputs, k, degree, max_retries: retries, rng_seed: seed, budget },
                None => ConcentratorParams::new(inputs, outputs, k, seed)?,
            };
            params.max_retries = retries;
            params.budget = budget;
            let (net, r) = build_depth1(&params)?;
            write(&out, &network_to_json(&net))?;
            println!("wrote {}", out.display());
            println!("vertices {} edges {} depth {} degree {}", net.vertex_count(), net.edge_count(), net.depth(), params.degree);
            Ok(report(&r))
        }
        Command::GenSc { inputs, outputs, depth, epsilon, seed, budget, out } => {
            let target_depth = match depth.as_str() {
                "auto" => None,
                d => Some(d.parse::<u32>().with_context(|| format!("depth must be a number or auto, got {d:?}"))?),
            };
            let spec = ScBuildSpec { inputs, outputs, target_depth, epsilon, rng_seed: seed, budget };
            let net = superconcentrator::build(&spec)?;
            write(&out, &network_to_json(&net))?;
            println!("wrote {}", out.display());
            if target_depth.is_none() {
                println!("recommended_depth {}", recommended_depth(inputs.max(outputs), inputs.min(outputs))?);
            }
            println!("vertices {} edges {} depth {}", net.vertex_count(), net.edge_count(), net.depth());
            Ok(report(&verify_superconcentrator(&net, budget, seed)))
        }
        Command::VerifyGraph { property, budget, seed, file } => {
            let prop = parse_property(&property)?;
            let net = network_from_json(&read(&file)?)?;
            println!("vertices {} edges {} depth {}", net.vertex_count(), net.edge_count(), net.depth());
            let r = match prop {
                GraphProperty::Sc => verify_superconcentrator(&net, budget, seed),
                GraphProperty::Concentrator(k) => verify_concentrator(&net, k, budget, seed),
                GraphProperty::Partial(p, q) => verify_partial_sc(&net, p, q, budget, seed),
            };
            Ok(report(&r))
        }
        Command::SynthSs { graph, t, modulus, seed, budget, retries, out } => {
            let net = network_from_json(&read(&graph)?)?;
            let f = FieldModulus::new(modulus)?;
            let (circ, r, used) = synthesize_valid(&net, t, f, seed, budget, retries)?;
            write(&out, &circuit_to_json(&circ))?;
            println!("wrote {}", out.display());
            println!("draws {} seed {used}", used.wrapping_sub(seed) + 1);
            println!("recover_checks {} privacy_checks {} mode {:?}", r.recover_checks, r.privacy_checks, r.mode);
            println!("{}", r.summary_line());
            Ok(status(r.verdict))
        }
        Command::VerifySs { circuit, budget, seed } => {
            let circ = circuit_from_json(&read(&circuit)?)?;
            let r = circ.validate_scheme(budget, seed);
            println!("recover_checks {} failures {}", r.recover_checks, r.recover_failures);
            println!("privacy_checks {} failures {}", r.privacy_checks, r.privacy_failures);
            println!("{}", r.summary_line());
            Ok(status(r.verdict))
        }
        Command::Share { circuit, secret, seed, out } => {
            let circ = circuit_from_json(&read(&circuit)?)?;
            let f = circ.modulus();
            if secret >= f.p() {
                bail!("secret {secret} is not below the modulus {}", f.p());
            }
            let y = circ.share(f.elem(secret), seed)?;
            write(&out, &share_vector_to_json(&y))?;
            println!("wrote {} shares to {}", y.values.len(), out.display());
            Ok(0)
        }
        Command::Reconstruct { circuit, shares } => {
            let circ = circuit_from_json(&read(&circuit)?)?;
            let (f, indexed) = shares_from_json(&read(&shares)?)?;
            if f != circ.modulus() {
                bail!("shares are mod {} but the circuit is mod {}", f.p(), circ.modulus().p());
            }
            let t = circ.threshold();
            if indexed.len() < t {
                bail!("need {t} shares, file has {}", indexed.len());
            }
            let (idx, vals): (Vec<usize>, Vec<_>) = indexed[..t].iter().copied().unzip();
            let s = circ.reconstruct(&idx, &vals)?;
            println!("secret {}", s.value());
            Ok(0)
        }
        Command::EntropyVerify { circuit, t, tol } => entropy_verify(&circuit, t, tol),
        Command::Lambda { d, n } => {
            if d == 0 || n == 0 {
                bail!("lambda needs d >= 1 and n >= 1");
            }
            println!("{}", lambda(d, n));
            Ok(0)
        }
        Command::Alpha { m, n } => {
            println!("{}", alpha(m, n)?);
            Ok(0)
        }
        Command::Bench { seed, budget, out } => {
            let rows = bench::run(&BuildOptions::new(seed).with_budget(budget))?;
            let csv = bench::to_csv(&rows);
            match out {
                Some(path) => {
                    write(&path, &csv)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

fn entropy_verify(path: &Path, t: Option<usize>, tol: f64) -> Result<u8> {
    let circ = circuit_from_json(&read(path)?)?;
    let t = t.unwrap_or(circ.threshold());
    let dist = enumerate_distribution(&circ)?;
    let n = dist.share_count();
    if t == 0 || t > n {
        bail!("threshold {t} not in 1..={n}");
    }
    println!("H(S) {:.9}", dist.entropy(&[0]));
    for k in [t - 1, t] {
        if k == 0 {
            continue;
        }
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            let vars: Vec<usize> = c.iter().map(|&i| i + 1).collect();
            let label = c.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            println!("|T|={k} T={{{label}}} H(S|Y_T) {:.9}", dist.cond_entropy(&[0], &vars));
            if !next_combination(&mut c, n) {
                break;
            }
        }
    }
    let shares: Vec<usize> = (1..=n).collect();
    if n >= 2 {
        println!("han_residual {:.9}", han_check(&dist, &shares));
    }
    let bounds = verify_entropy_bounds(&dist, t, tol);
    println!("entropy_bounds {} checked {}", bounds.verdict, bounds.subsets_checked);
    let def = verify_threshold_definition(&dist, t, tol);
    println!("property {}", def.property);
    println!("{}", def.summary_line());
    Ok(status(def.verdict))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
