//! Batch front end: configuration-driven verification runs plus ad-hoc
//! membership, delta, basis, and presentation queries.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use diffpow::chevalley::{PowerComparison, VerificationReport};
use diffpow::config::{self, CheckOutcome, JobConfig};
use diffpow::groebner::{self, IdealHandle, MonomialOrder};
use diffpow::parse::{format_polynomial, parse_polynomial};
use diffpow::pderiv::PDerivation;
use diffpow::poly::Polynomial;
use diffpow::ring::Ring;
use diffpow::summand::{GroupAction, GroupElement, SummandSpec};

#[derive(Parser)]
#[command(
    name = "diffpow",
    version,
    about = "differential and symbolic power toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct RingArgs {
    /// Comma-separated variable names; inferred from the input when omitted.
    #[arg(long)]
    vars: Option<String>,
    /// Comma-separated positive weights (default: all one).
    #[arg(long)]
    weights: Option<String>,
    /// Designated prime.
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Work modulo p instead of over the integers.
    #[arg(long)]
    mod_p: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks described by a JSON config file.
    Verify {
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Concurrent checks (output order stays deterministic).
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Scale factor for the computation budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Seed recorded for randomized suites (reports are deterministic).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Ideal membership of a polynomial.
    Member {
        #[command(flatten)]
        ring: RingArgs,
        /// Comma-separated ideal generators.
        #[arg(long)]
        ideal: String,
        element: String,
    },
    /// Apply the p-derivation delta.
    Delta {
        #[command(flatten)]
        ring: RingArgs,
        /// Iterate delta this many times.
        #[arg(long, default_value_t = 1)]
        iterations: u32,
        element: String,
    },
    /// Print a Groebner (strong) basis.
    Gb {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        /// Monomial order: grevlex (default) or lex.
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Print the presentation kernel of a summand family.
    Presentation {
        #[arg(long)]
        family: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Veronese degree.
        #[arg(long)]
        d: Option<u64>,
        /// Segre block sizes.
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Monomial-subring generators, comma separated.
        #[arg(long)]
        generators: Option<String>,
        /// Diagonal sign action, e.g. "-1,-1"; repeatable.
        #[arg(long)]
        diagonal: Vec<String>,
        /// Permutation action as 0-based images, e.g. "1,0"; repeatable.
        #[arg(long)]
        permutation: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify {
            config,
            format,
            out,
            workers,
            budget,
            seed,
        } => verify(config, format, out, workers, budget, seed),
        Command::Member {
            ring,
            ideal,
            element,
        } => {
            let (r, _) = build_ring(&ring, &[&ideal, &element])?;
            let gens = parse_list(&r, &ideal)?;
            let f = parse_polynomial(&r, &element)?;
            let handle = IdealHandle::new(gens)?;
            println!("{}", handle.member(&f)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta {
            ring,
            iterations,
            element,
        } => {
            if ring.mod_p {
                bail!("delta acts on integer-coefficient rings");
            }
            let (r, _) = build_ring(&ring, &[&element])?;
            let f = parse_polynomial(&r, &element)?;
            let pd = PDerivation::new(&r)?.with_cap(iterations.max(4));
            let out = pd.delta_iter(&f, iterations)?;
            println!("{}", format_polynomial(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gb { ring, ideal, order } => {
            let (r, _) = build_ring(&ring, &[&ideal])?;
            let gens = parse_list(&r, &ideal)?;
            let ord = match order.as_str() {
                "grevlex" => MonomialOrder::weighted_grevlex(&r),
                "lex" => MonomialOrder::lex(&r),
                other => bail!("unknown order {other:?} (expected grevlex or lex)"),
            };
            let handle = IdealHandle::with_order(gens, ord)?;
            let basis = handle.basis()?;
            for g in &basis.elements {
                println!("{}", format_polynomial(g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Presentation {
            family,
            vars,
            p,
            d,
            rows,
            cols,
            generators,
            diagonal,
            permutation,
        } => {
            let spec = build_family(
                &family,
                vars.as_deref(),
                p,
                d,
                rows,
                cols,
                generators.as_deref(),
                &diagonal,
                &permutation,
            )?;
            let pres = spec.presentation()?;
            if pres.kernel.is_empty() {
                println!("0");
            }
            for g in &pres.kernel {
                println!("{}", format_polynomial(g));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(
    path: PathBuf,
    format: Option<Format>,
    out: Option<PathBuf>,
    workers: usize,
    budget: Option<u64>,
    seed: Option<u64>,
) -> anyhow::Result<ExitCode> {
    if let Some(scale) = budget {
        groebner::set_budget_scale(scale);
    }
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let config = JobConfig::from_json(&text)?;
    let job = config::resolve(&config)?;
    let format = format.unwrap_or(match job.output.format.as_deref() {
        Some("machine") => Format::Machine,
        _ => Format::Text,
    });

    let outcomes = run_checks(&job, workers.max(1))?;
    let all_pass = outcomes.iter().all(|o| o.passed());

    let mut rendered = String::new();
    match format {
        Format::Machine => {
            let mut tree = serde_json::json!({
                "config": path.display().to_string(),
                "checks": outcomes,
                "verdict": if all_pass { "PASS" } else { "FAIL" },
            });
            if let Some(seed) = seed.or(config.seed) {
                tree["seed"] = serde_json::json!(seed);
            }
            rendered = serde_json::to_string_pretty(&tree)? + "\n";
        }
        Format::Text => {
            for outcome in &outcomes {
                render_text(outcome, &mut rendered);
            }
            rendered += &format!("overall: {}\n", if all_pass { "PASS" } else { "FAIL" });
        }
    }

    let out_path = out.or_else(|| job.output.path.clone().map(PathBuf::from));
    match out_path {
        Some(p) => std::fs::write(&p, rendered)
            .with_context(|| format!("cannot write report {}", p.display()))?,
        None => print!("{rendered}"),
    }

    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_checks(job: &config::ResolvedJob, workers: usize) -> anyhow::Result<Vec<CheckOutcome>> {
    if workers <= 1 || job.checks.len() <= 1 {
        return Ok(config::run(job)?);
    }
    // Run single-check jobs concurrently, reassembling in config order.
    let indices: Vec<usize> = (0..job.checks.len()).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<diffpow::Result<Vec<CheckOutcome>>>>> = indices
        .iter()
        .map(|_| std::sync::Mutex::new(None))
        .collect();
    std::thread::scope(|scope| {
        for _ in 0..workers.min(job.checks.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= job.checks.len() {
                    break;
                }
                let single = config::ResolvedJob {
                    ring: job.ring.clone(),
                    spec: single_spec_view(job),
                    primes: job.primes.clone(),
                    checks: vec![job.checks[i].clone()],
                    output: job.output.clone(),
                };
                *results[i].lock().unwrap() = Some(config::run(&single));
            });
        }
    });
    let mut outcomes = Vec::new();
    for cell in results {
        let r = cell
            .into_inner()
            .unwrap()
            .ok_or_else(|| anyhow!("worker dropped a check"))?;
        outcomes.extend(r?);
    }
    Ok(outcomes)
}

// The summand spec caches are per-instance; give each worker its own view.
fn single_spec_view(job: &config::ResolvedJob) -> SummandSpec {
    job.spec.clone()
}

fn render_text(outcome: &CheckOutcome, out: &mut String) {
    match outcome {
        CheckOutcome::Report(r) => render_report(r, out),
        CheckOutcome::Comparison(c) => render_comparison(c, out),
    }
}

fn render_report(r: &VerificationReport, out: &mut String) {
    out.push_str(&format!(
        "check {}: {} ({} evidence rows, {} ms)\n",
        r.check,
        if r.verdict { "PASS" } else { "FAIL" },
        r.evidence.len(),
        r.millis
    ));
    for e in &r.evidence {
        if !e.verdict {
            out.push_str(&format!(
                "  FAIL {} in {} [{}]\n",
                e.element, e.ideal, e.oracle
            ));
        }
    }
}

fn render_comparison(c: &PowerComparison, out: &mut String) {
    out.push_str(&format!("table {} ({} ms)\n", c.check, c.millis));
    out.push_str("  probe | n | symbolic | summand-diff | mixed\n");
    for row in &c.rows {
        let opt = |v: Option<bool>| match v {
            Some(true) => "true",
            Some(false) => "false",
            None => "-",
        };
        out.push_str(&format!(
            "  {} | {} | {} | {} | {}\n",
            row.probe,
            row.index,
            opt(row.symbolic),
            row.summand_diff,
            opt(row.mixed)
        ));
    }
    for o in &c.observed {
        out.push_str(&format!("  observed {o}\n"));
    }
}

/// Builds the working ring from explicit flags or identifier inference.
fn build_ring(args: &RingArgs, texts: &[&str]) -> anyhow::Result<(Ring, Vec<String>)> {
    let vars: Vec<String> = match &args.vars {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
        // A constant expression legitimately yields a variable-free ring.
        None => infer_vars(texts),
    };
    let weights: Vec<u64> = match &args.weights {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .context("bad --weights")?,
        None => vec![1; vars.len()],
    };
    let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut ring = Ring::integers(&refs, &weights, args.p)?;
    if args.mod_p {
        ring = ring.mod_p_twin();
    }
    Ok((ring, vars))
}

/// Identifiers in order of first appearance.
fn infer_vars(texts: &[&str]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut vars = Vec::new();
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = text[start..i].to_string();
                if seen.insert(name.clone()) {
                    vars.push(name);
                }
            } else {
                i += 1;
            }
        }
    }
    vars
}

fn parse_list(ring: &Ring, list: &str) -> anyhow::Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(parse_polynomial(ring, part)?);
    }
    if out.is_empty() {
        bail!("empty generator list");
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn build_family(
    family: &str,
    vars: Option<&str>,
    p: u64,
    d: Option<u64>,
    rows: Option<usize>,
    cols: Option<usize>,
    generators: Option<&str>,
    diagonal: &[String],
    permutation: &[String],
) -> anyhow::Result<SummandSpec> {
    let named_ring = |fallback: &str| -> anyhow::Result<Ring> {
        let list = vars.unwrap_or(fallback);
        let names: Vec<&str> = list.split(',').map(|s| s.trim()).collect();
        Ok(Ring::standard(&names, p)?)
    };
    match family {
        "veronese" => {
            let d = d.ok_or_else(|| anyhow!("--d required for veronese"))?;
            Ok(SummandSpec::veronese(&named_ring("x,y")?, d)?)
        }
        "segre" => {
            let rows = rows.ok_or_else(|| anyhow!("--rows required for segre"))?;
            let cols = cols.ok_or_else(|| anyhow!("--cols required for segre"))?;
            Ok(SummandSpec::segre(rows, cols, p)?)
        }
        "monomial" => {
            let ring = named_ring("x,y")?;
            let gens = generators.ok_or_else(|| anyhow!("--generators required"))?;
            let mut monos = Vec::new();
            for g in gens.split(',') {
                let poly = parse_polynomial(&ring, g.trim())?;
                let mut terms = poly.terms();
                let (m, c) = terms
                    .next()
                    .ok_or_else(|| anyhow!("generator {g:?} is zero"))?;
                if terms.next().is_some() || c != &num_bigint::BigInt::from(1) {
                    bail!("generator {g:?} is not a plain monomial");
                }
                monos.push(m.clone());
            }
            Ok(SummandSpec::monomial_subring(&ring, monos)?)
        }
        "invariant" => {
            let ring = named_ring("x,y")?;
            let mut gens: Vec<GroupElement> = Vec::new();
            for spec in diagonal {
                let signs: Vec<i8> = spec
                    .split(',')
                    .map(|s| s.trim().parse::<i8>())
                    .collect::<Result<_, _>>()
                    .context("bad --diagonal")?;
                gens.push(GroupElement::Diagonal(signs));
            }
            for spec in permutation {
                let perm: Vec<usize> = spec
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .context("bad --permutation")?;
                gens.push(GroupElement::Permutation(perm));
            }
            let action = GroupAction::from_generators(gens, ring.num_vars())?;
            Ok(SummandSpec::invariant(&ring, action)?)
        }
        other => bail!("unknown family {other:?}"),
    }
}
