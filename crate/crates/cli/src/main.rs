//! Command-line front end: critical sets, Kostant representatives, Γ-factor
//! ratios, Galois signatures, and property sweeps over hand-written model
//! and weight files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use eiscomb_core::critical;
use eiscomb_core::field::FieldModel;
use eiscomb_core::gamma::{self, Gl2Quadrature};
use eiscomb_core::input;
use eiscomb_core::rational::Half;
use eiscomb_core::signature;
use eiscomb_core::sweep;
use eiscomb_core::weight::Weight;

const SCHEMA: &str = "eiscomb/1";

/// Exit codes: 0 success, 2 validation failure, 3 property-suite
/// counterexample, 4 resource budget exceeded.
#[derive(Parser)]
#[command(name = "eiscomb", version, about = "Exact combinatorics of critical Rankin-Selberg L-values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct ModelArg {
    /// Field model file (TOML).
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Weight file for the first factor.
    #[arg(long)]
    mu: PathBuf,
    /// Weight file for the second factor.
    #[arg(long = "mu-prime")]
    mu_prime: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check every structural invariant of a model file.
    Validate(ModelArg),
    /// Abelian and cuspidal widths and the critical set of a pair.
    Critset(PairArgs),
    /// Balanced Kostant representative: constructive vs brute force.
    Kostant {
        #[command(flatten)]
        pair: PairArgs,
        /// Enumeration budget for the brute-force oracle.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Symbolic L-factor ratio at a critical point, with optional numeric
    /// GL(2) verification.
    Gamma {
        #[command(flatten)]
        pair: PairArgs,
        /// Evaluation point (integer or half-integer, e.g. "-1" or "-3/2").
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Run the numeric GL(2) intertwining integral for this K-type
        /// parameter and compare against 2π/(2m−1).
        #[arg(long = "gl2-m")]
        gl2_m: Option<u32>,
        /// Relative tolerance for the numeric verification.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Galois signatures for every element carried by the model file.
    Sign(PairArgs),
    /// Property sweeps; nonzero exit on any counterexample.
    Sweep {
        /// Which suite to run.
        #[arg(long, value_enum, default_value_t = Suite::Comb)]
        suite: Suite,
        /// Rank of the first factor.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Rank of the second factor.
        #[arg(long = "n-prime", default_value_t = 1)]
        n_prime: usize,
        /// Lower entry bound of the weight box.
        #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
        lo: i64,
        /// Upper entry bound of the weight box.
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        hi: i64,
        /// Enumeration budget for the brute-force oracle.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Sample this many instances instead of exhausting the box.
        #[arg(long)]
        sample: Option<u64>,
        /// Seed for sampled sweeps (exhaustive sweeps ignore it).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances for randomized suites.
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Deliberately flip one inequality to prove counterexamples are
        /// detected.
        #[arg(long, default_value_t = false)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Suite {
    /// Combinatorial-lemma equivalence over a weight box.
    Comb,
    /// Strong purity implies base-change, exhaustively on the degree-6 model.
    BaseChange,
    /// Closed-form critical set vs pointwise Γ-finiteness.
    Critical,
    /// Boundary weight identities on comb-lemma instances.
    Identities,
    /// Schedule product vs direct Rankin-Selberg ratio.
    Factorization,
    /// Signature identities on the degree-6 and randomized layered models.
    Signatures,
    /// Empty critical sets on the TR model with both ranks odd.
    TrCritical,
}

struct Report {
    command: String,
    digest: String,
    results: Value,
    pass: u64,
    fail: u64,
    elapsed_ms: u128,
}

impl Report {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                // timing is deliberately omitted so reports are byte-stable
                let doc = json!({
                    "schema": SCHEMA,
                    "command": self.command,
                    "inputs_digest": self.digest,
                    "results": self.results,
                    "pass": self.pass,
                    "fail": self.fail,
                });
                serde_json::to_string_pretty(&doc).expect("report serializes")
            }
            Format::Table => {
                let mut out = String::new();
                out.push_str(&format!("command:  {}\n", self.command));
                out.push_str(&format!("inputs:   sha256:{}\n", self.digest));
                out.push_str(&format!(
                    "status:   {} pass, {} fail ({} ms)\n",
                    self.pass, self.fail, self.elapsed_ms
                ));
                render_value(&mut out, &self.results, 0);
                out
            }
        }
    }
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(out, val, indent + 1);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, item, indent + 1);
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{v}\n")),
    }
}

fn digest_files(paths: &[&Path]) -> anyhow::Result<String> {
    let mut hasher = Sha256::new();
    for p in paths {
        let bytes =
            fs::read(p).with_context(|| format!("cannot read input `{}`", p.display()))?;
        hasher.update(&bytes);
    }
    Ok(hex_string(&hasher.finalize()))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn load_model(path: &Path) -> anyhow::Result<input::ModelInput> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read model `{}`", path.display()))?;
    Ok(input::parse_model(&text)?)
}

fn load_weight(path: &Path) -> anyhow::Result<Weight> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read weight `{}`", path.display()))?;
    Ok(input::parse_weight(&text)?)
}

fn require_valid(model: &FieldModel) -> anyhow::Result<()> {
    let report = model.validate();
    if let Some(check) = report.first_failure() {
        Err(anyhow!("model invalid: {}: {}", check.name, check.detail))
    } else {
        Ok(())
    }
}

fn half_to_value(h: Half) -> Value {
    json!(h.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let format = cli.format;
    match run(cli) {
        Ok((report, code)) => {
            println!("{}", report.render(format));
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.downcast_ref::<BudgetError>().is_some()
                || matches!(
                    e.downcast_ref::<eiscomb_core::Error>(),
                    Some(eiscomb_core::Error::BudgetExceeded(_))
                )
            {
                ExitCode::from(4)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<(Report, ExitCode)> {
    let start = Instant::now();
    let (command, digest, results, pass, fail, code) = match &cli.command {
        Command::Validate(args) => {
            let digest = digest_files(&[&args.model])?;
            let parsed = load_model(&args.model)?;
            let report = parsed.model.validate();
            let mut pass = report.checks.iter().filter(|c| c.ok).count() as u64;
            let mut fail = report.checks.len() as u64 - pass;
            let mut galois_results = Vec::new();
            for g in &parsed.galois {
                match parsed.model.validate_galois(g) {
                    Ok(()) => {
                        pass += 1;
                        galois_results.push(json!({ "name": g.name, "ok": true }));
                    }
                    Err(e) => {
                        fail += 1;
                        galois_results
                            .push(json!({ "name": g.name, "ok": false, "error": e.to_string() }));
                    }
                }
            }
            let classification = parsed
                .model
                .classify()
                .map(|c| format!("{c:?}"))
                .unwrap_or_else(|e| e.to_string());
            let results = json!({
                "checks": report.checks,
                "classification": classification,
                "galois": galois_results,
            });
            let code = if fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) };
            ("validate".to_string(), digest, results, pass, fail, code)
        }
        Command::Critset(args) => {
            let digest = digest_files(&[&args.model.model, &args.mu, &args.mu_prime])?;
            let parsed = load_model(&args.model.model)?;
            require_valid(&parsed.model)?;
            let mu = load_weight(&args.mu)?;
            let mup = load_weight(&args.mu_prime)?;
            let data = critical::widths(&mu, &mup, &parsed.model)?;
            let set = critical::critical_set_from_widths(&data);
            let per_place: Vec<Value> = data
                .per_place
                .iter()
                .map(|pw| {
                    json!({
                        "grid": pw.grid,
                        "width": pw.width,
                        "r": pw.r,
                        "l_set": pw.l_set,
                        "delta": pw.delta,
                    })
                })
                .collect();
            let results = json!({
                "abelian_width": data.abelian.to_string(),
                "cuspidal_width": data.cuspidal,
                "purity_weights": [data.purity_weights.0, data.purity_weights.1],
                "per_place": per_place,
                "critical_set": {
                    "empty": set.is_empty(),
                    "lower": half_to_value(set.lower),
                    "upper": half_to_value(set.upper),
                    "size": set.len(),
                    "points": set.points().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                },
            });
            ("critset".into(), digest, results, 1, 0, ExitCode::SUCCESS)
        }
        Command::Kostant { pair, budget } => {
            let digest = digest_files(&[&pair.model.model, &pair.mu, &pair.mu_prime])?;
            let parsed = load_model(&pair.model.model)?;
            require_valid(&parsed.model)?;
            let mu = load_weight(&pair.mu)?;
            let mup = load_weight(&pair.mu_prime)?;
            let constructive = critical::find_balanced_kostant(&mu, &mup, &parsed.model)?;
            let oracle = critical::brute_force_balanced(&mu, &mup, &parsed.model, *budget);
            let oracle = match oracle {
                Ok(v) => v,
                Err(e @ eiscomb_core::Error::BudgetExceeded(_)) => {
                    return Err(anyhow::Error::new(BudgetError(e.to_string())));
                }
                Err(e) => return Err(e.into()),
            };
            let agreement = match &constructive {
                Some(w) => oracle.contains(w),
                None => oracle.is_empty(),
            };
            let concat = mu.concat(&mup)?;
            let rep_value = |w: &eiscomb_core::weyl::KostantRep| -> Value {
                let per: Vec<Value> = parsed
                    .model
                    .labels()
                    .iter()
                    .enumerate()
                    .map(|(e, label)| {
                        let kappa = &w.components[e];
                        let lambda = kappa.dot_inverse(concat.component(label).unwrap());
                        json!({
                            "embedding": label,
                            "kappa": kappa.entries(),
                            "length": kappa.length(),
                            "straightened": lambda,
                        })
                    })
                    .collect();
                json!(per)
            };
            let results = json!({
                "found": constructive.is_some(),
                "representative": constructive.as_ref().map(rep_value),
                "message": if constructive.is_some() { Value::Null } else {
                    json!("no balanced dominant representative")
                },
                "oracle_count": oracle.len(),
                "oracle_agreement": agreement,
            });
            let (pass, fail, code) = if agreement {
                (1, 0, ExitCode::SUCCESS)
            } else {
                (0, 1, ExitCode::from(3))
            };
            ("kostant".into(), digest, results, pass, fail, code)
        }
        Command::Gamma {
            pair,
            m,
            gl2_m,
            tolerance,
        } => {
            let digest = digest_files(&[&pair.model.model, &pair.mu, &pair.mu_prime])?;
            let parsed = load_model(&pair.model.model)?;
            require_valid(&parsed.model)?;
            let mu = load_weight(&pair.mu)?;
            let mup = load_weight(&pair.mu_prime)?;
            let m = Half::parse(m)?;
            let ratio = gamma::rankin_selberg_ratio(&mu, &mup, &parsed.model, m)?;
            let via_schedule = gamma::schedule_ratio(&mu, &mup, &parsed.model, m)?;
            let schedule_agrees = ratio == via_schedule;
            let mut pass = u64::from(schedule_agrees);
            let mut fail = u64::from(!schedule_agrees);
            let numeric = match gl2_m {
                Some(k) => {
                    let exact = 2.0 * std::f64::consts::PI / f64::from(2 * k - 1);
                    let r_max = gamma::gl2_r_max_for_tolerance(*k, tolerance / 5.0);
                    let value = gamma::gl2_intertwining_numeric(*k, r_max, Gl2Quadrature::Fast);
                    let rel = ((value - exact) / exact).abs();
                    let ok = rel < *tolerance;
                    if ok {
                        pass += 1;
                    } else {
                        fail += 1;
                    }
                    json!({
                        "k_type": k,
                        "value": value,
                        "exact": exact,
                        "relative_error": rel,
                        "ok": ok,
                    })
                }
                None => Value::Null,
            };
            let results = json!({
                "m": m.to_string(),
                "ratio": ratio.to_schema()?,
                "ratio_display": ratio.to_string(),
                "pi_exponent": ratio.pi_exponent().map(|p| p.to_string()),
                "schedule_agrees": schedule_agrees,
                "gl2_numeric": numeric,
            });
            let code = if fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) };
            ("gamma".into(), digest, results, pass, fail, code)
        }
        Command::Sign(pair) => {
            let digest = digest_files(&[&pair.model.model, &pair.mu, &pair.mu_prime])?;
            let parsed = load_model(&pair.model.model)?;
            require_valid(&parsed.model)?;
            if parsed.galois.is_empty() {
                return Err(anyhow!("model file carries no [[galois]] elements"));
            }
            let mu = load_weight(&pair.mu)?;
            let mup = load_weight(&pair.mu_prime)?;
            let w = critical::find_balanced_kostant(&mu, &mup, &parsed.model)?
                .ok_or_else(|| anyhow!("no balanced dominant representative for this pair"))?;
            let mut pass = 0u64;
            let mut fail = 0u64;
            let mut rows = Vec::new();
            for g in &parsed.galois {
                let report = signature::product_identity(&w, g, &parsed.model)?;
                let ok = report.epsilon_direct == report.epsilon_formula
                    && report.product == report.fiberwise_sign_pow;
                if ok {
                    pass += 1;
                } else {
                    fail += 1;
                }
                rows.push(json!({
                    "galois": report.galois,
                    "epsilon_direct": report.epsilon_direct,
                    "epsilon_formula": report.epsilon_formula,
                    "epsilon_input_ordering": report.epsilon_input_ordering,
                    "place_perm_sign": report.place_perm_sign,
                    "j_gamma": report.j_gamma,
                    "fiber_signs": report.fiber_signs,
                    "product": report.product,
                    "fiberwise_sign_pow": report.fiberwise_sign_pow,
                    "ok": ok,
                }));
            }
            let results = json!({
                "lengths": w.lengths(),
                "signatures": rows,
            });
            let code = if fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) };
            ("sign".into(), digest, results, pass, fail, code)
        }
        Command::Sweep {
            suite,
            n,
            n_prime,
            lo,
            hi,
            budget,
            sample,
            seed,
            count,
            inject_fault,
        } => {
            let outcome = match suite {
                Suite::Comb => match sample {
                    Some(count) => sweep::comb_lemma_sweep_sampled(
                        *n, *n_prime, *lo, *hi, *budget, *count, *seed,
                    )?,
                    None => sweep::comb_lemma_sweep_exhaustive(
                        *n,
                        *n_prime,
                        *lo,
                        *hi,
                        *budget,
                        *inject_fault,
                    )?,
                },
                Suite::BaseChange => sweep::base_change_sweep(*n, *lo, *hi),
                Suite::Critical => sweep::critical_pointwise_sweep(*count, *seed),
                Suite::Identities => sweep::weight_identity_sweep(*count, *seed),
                Suite::Factorization => sweep::factorization_sweep(*count, *seed),
                Suite::Signatures => sweep::signature_sweep(*count, *seed),
                Suite::TrCritical => sweep::tr_empty_critical_sweep(*lo, *hi),
            };
            let results = json!({
                "checked": outcome.checked,
                "counterexamples": outcome.counterexamples,
            });
            let fail = outcome.counterexamples.len() as u64;
            let pass = outcome.checked - fail;
            let code = if fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(3) };
            ("sweep".into(), String::new(), results, pass, fail, code)
        }
    };
    let report = Report {
        command,
        digest,
        results,
        pass,
        fail,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok((report, code))
}

/// Distinguishes budget exhaustion so `main` can map it to exit code 4.
#[derive(Debug)]
struct BudgetError(String);

impl std::fmt::Display for BudgetError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for BudgetError {}
