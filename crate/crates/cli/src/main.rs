//! `approxdim`: command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 input error, 3 computation error.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use approxdim::algebra::parse_algebra;
use approxdim::approx::{self, DomDimMethod, TiltingVerdict, WakamatsuVerdict};
use approxdim::repmod::{self, read_module, write_module};
use approxdim::transport::{self, CheckKind, Report, Transporter};
use approxdim::{corpus, stablecat, Algebra, Error, ExtendedNat, Representation, VERSION};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "approxdim", version, about = "Approximation dimensions and stable-equivalence checks for bound quiver algebras")]
struct Cli {
    /// Seed for the randomized decomposition.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cutoff for iterative dimensions.
    #[arg(long, global = true, default_value_t = 12)]
    cutoff: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis size, Loewy length, blocks and standing hypotheses of an algebra.
    AlgebraCheck {
        #[arg(long)]
        algebra: String,
    },
    /// Homological invariants of a module.
    Invariants {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        module: String,
    },
    /// l.app of a module with respect to omega.
    Lapp {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        module: String,
    },
    /// Faithful dimension of omega.
    Fadim {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        omega: String,
    },
    /// Dominant dimension of a module.
    Domdim {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "regular")]
        module: String,
        #[arg(long, value_enum, default_value_t = Method::Lapp)]
        method: Method,
    },
    /// Auslander-Reiten translate (or its inverse), printed as a module file.
    Tau {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Indecomposable summands of a module.
    Decompose {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        module: String,
    },
    /// Is omega a tilting module? Exits 1 unless the verdict is yes
    CheckTilting {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        omega: String,
    },
    /// Is omega a Wakamatsu tilting module? Exits 1 on a negative verdict
    CheckWakamatsu {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        omega: String,
    },
    /// Transfer checks on a curated pair, swept over all indecomposables.
    Verify {
        #[arg(long)]
        pair: String,
        /// A check name, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
    },
    /// Built-in algebras and pairs.
    CorpusList,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Lapp,
    Coresolution,
    Both,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidField(_)
            | Error::InvalidQuiver(_)
            | Error::RelationIllFormed(_)
            | Error::NotAdmissibleWithinBound { .. }
            | Error::InvalidModule(_)
            | Error::InvalidCutoff(_)
            | Error::UnknownName(_)
            | Error::AlgebraMismatch
            | Error::ZeroOmega
            | Error::DimensionMismatch(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Out = Result<(Value, String, bool), Failure>;

fn load_algebra(arg: &str) -> Result<Arc<Algebra>, Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))?;
        return Ok(Arc::new(parse_algebra(&text)?));
    }
    corpus::by_name(arg)
        .map(Arc::new)
        .map_err(|_| input_error(format!("'{arg}' is neither a file nor a corpus algebra ({})", corpus::NAMES.join(", "))))
}

/// A module file, or `+`-separated keywords: `regular`, `dual`, `simple:i`,
/// `projective:i`, `injective:i` (vertices 1-based).
fn load_module(alg: &Arc<Algebra>, arg: &str) -> Result<Representation, Failure> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| input_error(format!("{arg}: {e}")))?;
        return Ok(read_module(alg, &text)?);
    }
    let mut parts = Vec::new();
    for word in arg.split('+') {
        let word = word.trim();
        let m = match word.split_once(':') {
            None if word == "regular" => Representation::regular(alg),
            None if word == "dual" => Representation::dual_regular(alg),
            None if word == "zero" => Representation::zero(alg),
            Some((kind, v)) => {
                let v: usize = v.parse().map_err(|_| input_error(format!("bad vertex in '{word}'")))?;
                if v == 0 || v > alg.vertex_count() {
                    return Err(input_error(format!("vertex {v} out of range 1..={}", alg.vertex_count())));
                }
                match kind {
                    "simple" => Representation::simple(alg, v - 1),
                    "projective" => Representation::projective(alg, v - 1),
                    "injective" => Representation::injective(alg, v - 1),
                    _ => return Err(input_error(format!("unknown module keyword '{kind}'"))),
                }
            }
            None => return Err(input_error(format!("'{word}' is neither a file nor a module keyword"))),
        };
        parts.push(m);
    }
    Ok(Representation::direct_sum_all(alg, &parts)?)
}

fn ext(v: ExtendedNat) -> Value {
    json!({ "value": v, "display": v.to_string() })
}

fn run(cli: &Cli) -> Out {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let cutoff = cli.cutoff;
    if cutoff == 0 {
        return Err(input_error("--cutoff must be at least 1"));
    }
    match &cli.cmd {
        Command::AlgebraCheck { algebra } => {
            let a = load_algebra(algebra)?;
            let assoc = a.check_associative();
            let report = stablecat::hypothesis_report(&a, &mut rng)?;
            let blocks = a.blocks();
            let text = format!(
                "algebra {}\nfield GF({})\ndimension {}\nloewy length {}\nassociative {}\nblocks {}\nnodes {:?}\nsemisimple blocks {:?}\nself-injective {}\nprojective-injective {:?}",
                a.name(),
                a.field().p(),
                a.dim(),
                a.loewy_bound(),
                assoc,
                blocks.len(),
                one_based(&report.nodes),
                report.semisimple_blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
                report.self_injective,
                one_based(&report.proj_inj),
            );
            let v = json!({
                "algebra": a.name(),
                "field": a.field().p(),
                "dimension": a.dim(),
                "loewy_length": a.loewy_bound(),
                "associative": assoc,
                "blocks": blocks,
                "hypotheses": report,
            });
            Ok((v, text, assoc))
        }
        Command::Invariants { algebra, module } => {
            let a = load_algebra(algebra)?;
            let m = load_module(&a, module)?;
            let parts = if m.is_zero() { Vec::new() } else { repmod::decompose(&m, &mut rng)?.parts };
            let pd = approx::pd(&m, cutoff)?;
            let id = approx::id(&m, cutoff)?;
            let dd = approx::domdim(&m, cutoff, DomDimMethod::Lapp, &mut rng)?;
            let proj = repmod::is_projective(&m)?;
            let inj = repmod::is_injective(&m)?;
            let text = format!(
                "dims {:?}\ntotal dimension {}\nindecomposable summands {}\nprojective {proj}\ninjective {inj}\npd {pd}\nid {id}\ndomdim {dd}",
                m.dims(),
                m.total_dim(),
                parts.len()
            );
            let v = json!({
                "dims": m.dims(),
                "total_dim": m.total_dim(),
                "summands": parts.len(),
                "projective": proj,
                "injective": inj,
                "pd": ext(pd),
                "id": ext(id),
                "domdim": ext(dd),
            });
            Ok((v, text, true))
        }
        Command::Lapp { algebra, omega, module } => {
            let a = load_algebra(algebra)?;
            let w = load_module(&a, omega)?;
            let m = load_module(&a, module)?;
            let chain = approx::lapp(&w, &m, cutoff, &mut rng)?;
            Ok((json!({ "lapp": ext(chain.verdict), "chain": chain.to_json() }), chain.verdict.to_string(), true))
        }
        Command::Fadim { algebra, omega } => {
            let a = load_algebra(algebra)?;
            let w = load_module(&a, omega)?;
            let v = approx::fadim(&w, cutoff, &mut rng)?;
            Ok((json!({ "fadim": ext(v) }), v.to_string(), true))
        }
        Command::Domdim { algebra, module, method } => {
            let a = load_algebra(algebra)?;
            let m = load_module(&a, module)?;
            match method {
                Method::Lapp | Method::Coresolution => {
                    let mm = if matches!(method, Method::Lapp) { DomDimMethod::Lapp } else { DomDimMethod::Coresolution };
                    let v = approx::domdim(&m, cutoff, mm, &mut rng)?;
                    Ok((json!({ "domdim": ext(v) }), v.to_string(), true))
                }
                Method::Both => {
                    let l = approx::domdim(&m, cutoff, DomDimMethod::Lapp, &mut rng)?;
                    let c = approx::domdim(&m, cutoff, DomDimMethod::Coresolution, &mut rng)?;
                    let agree = l.capped(cutoff) == c.capped(cutoff);
                    let text = format!("{l} / {c} ({})", if agree { "agree" } else { "disagree" });
                    Ok((json!({ "lapp": ext(l), "coresolution": ext(c), "agree": agree }), text, agree))
                }
            }
        }
        Command::Tau { algebra, module, inverse } => {
            let a = load_algebra(algebra)?;
            let m = load_module(&a, module)?;
            let t = if m.is_zero() {
                m.clone()
            } else if *inverse {
                repmod::tau_inverse(&m)?
            } else {
                repmod::tau(&m)?
            };
            let text = write_module(&t);
            Ok((json!({ "dims": t.dims(), "module": text }), text.trim_end().to_string(), true))
        }
        Command::Decompose { algebra, module } => {
            let a = load_algebra(algebra)?;
            let m = load_module(&a, module)?;
            let parts = if m.is_zero() { Vec::new() } else { repmod::decompose(&m, &mut rng)?.parts };
            let mut lines = Vec::new();
            let mut recs = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let proj = repmod::is_projective(p)?;
                let inj = repmod::is_injective(p)?;
                lines.push(format!("summand {}: dims {:?} projective {proj} injective {inj}", i + 1, p.dims()));
                recs.push(json!({ "dims": p.dims(), "projective": proj, "injective": inj, "module": write_module(p) }));
            }
            Ok((json!({ "summands": recs }), lines.join("\n"), true))
        }
        Command::CheckTilting { algebra, omega } => {
            let a = load_algebra(algebra)?;
            let w = load_module(&a, omega)?;
            let v = approx::is_tilting(&w, cutoff, &mut rng)?;
            let text = match &v {
                TiltingVerdict::Yes(n) => format!("yes ({n}-tilting)"),
                TiltingVerdict::No(r) => format!("no: {r}"),
                TiltingVerdict::Inconclusive(r) => format!("inconclusive: {r}"),
            };
            let ok = matches!(v, TiltingVerdict::Yes(_));
            Ok((json!({ "tilting": v }), text, ok))
        }
        Command::CheckWakamatsu { algebra, omega } => {
            let a = load_algebra(algebra)?;
            let w = load_module(&a, omega)?;
            let v = approx::is_wakamatsu(&w, cutoff, &mut rng)?;
            let text = match &v {
                WakamatsuVerdict::No(r) => format!("no: {r}"),
                other => other.kind().replace('_', " "),
            };
            let ok = !matches!(v, WakamatsuVerdict::No(_));
            Ok((json!({ "wakamatsu": v }), text, ok))
        }
        Command::Verify { pair, check } => verify(pair, check, cli.seed, cutoff, &mut rng),
        Command::CorpusList => {
            let mut lines = vec!["algebras:".to_string()];
            let mut algs = Vec::new();
            for name in corpus::NAMES {
                let a = corpus::by_name(name)?;
                lines.push(format!("  {name:<8} vertices {} dimension {}", a.vertex_count(), a.dim()));
                algs.push(json!({ "name": name, "vertices": a.vertex_count(), "dimension": a.dim() }));
            }
            lines.push("pairs:".to_string());
            let mut pairs = Vec::new();
            for p in transport::curated_pairs() {
                let tag = if p.negative_control { " (negative control)" } else { "" };
                lines.push(format!("  {:<11} {} on {}{tag}", p.name, p.functor, p.lambda.name()));
                pairs.push(json!({
                    "name": p.name,
                    "functor": p.functor,
                    "algebra": p.lambda.name(),
                    "negative_control": p.negative_control,
                }));
            }
            lines.push(format!("checks: {}", CheckKind::ALL.map(|c| c.name()).join(", ")));
            Ok((json!({ "algebras": algs, "pairs": pairs }), lines.join("\n"), true))
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn verify(pair: &str, check: &str, seed: u64, cutoff: usize, rng: &mut ChaCha8Rng) -> Out {
    let spec = transport::pair_by_name(pair)?;
    let checks: Vec<CheckKind> = if check == "all" {
        CheckKind::ALL.to_vec()
    } else {
        vec![CheckKind::from_name(check)?]
    };
    let t = Transporter::new(spec);
    let mut reports: Vec<Report> = Vec::new();
    let mut errors: Vec<Value> = Vec::new();
    let mut lines = Vec::new();
    for c in checks {
        let jobs = transport::sweep_jobs(&t, c, cutoff, rng)?;
        let (mut pass, mut fail, mut err) = (0, 0, 0);
        for r in t.verify_many(&jobs, cutoff, seed) {
            match r {
                Ok(rep) => {
                    if rep.pass {
                        pass += 1;
                    } else {
                        fail += 1;
                    }
                    reports.push(rep);
                }
                Err(e) => {
                    err += 1;
                    errors.push(json!({ "check": c, "error": e.to_string() }));
                }
            }
        }
        let status = if fail == 0 && err == 0 { "PASS" } else { "FAIL" };
        lines.push(format!("{status}  {:<13} {pass} passed, {fail} failed, {err} errors", c.name()));
    }
    let flags: Vec<&String> = reports.iter().flat_map(|r| &r.hypothesis_flags).collect();
    if t.pair.negative_control {
        lines.push("note: negative control pair, hypothesis flags are expected".to_string());
    } else if !flags.is_empty() {
        lines.push(format!("note: {} hypothesis flags raised", flags.len()));
    }
    let ok = errors.is_empty() && reports.iter().all(|r| r.pass);
    let mut doc = transport::emit_report(&reports);
    doc["errors"] = json!(errors);
    doc["pair"] = json!(t.pair.name);
    doc["cutoff"] = json!(cutoff);
    Ok((doc, lines.join("\n"), ok))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((mut doc, text, ok)) => {
            if cli.json {
                if let Value::Object(map) = &mut doc {
                    map.insert("tool".into(), json!("approxdim"));
                    map.insert("version".into(), json!(VERSION));
                    map.insert("seed".into(), json!(cli.seed));
                }
                emit(&serde_json::to_string_pretty(&doc).expect("serializable report"));
            } else {
                let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                emit(&format!("# approxdim {VERSION}  seed {}  cutoff {}  time {now}\n{text}", cli.seed, cli.cutoff));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
