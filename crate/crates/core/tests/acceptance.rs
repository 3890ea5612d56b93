//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use approxdim::approx::{self, DomDimMethod};
use approxdim::repmod::{
    decompose, hom_dim, is_injective, is_isomorphic, is_projective, random_module, rank_nullity_stats, tau,
    tau_inverse,
};
use approxdim::stablecat::{indecomposables, is_node, stable_hom_dim};
use approxdim::transport::{basic_wakamatsu_modules, pair_by_name, sweep_jobs, CheckKind, TransferInputs, Transporter};
use approxdim::{corpus, Algebra, ExtendedNat, Representation, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0;
const MAX_IND_DIM: usize = 8;
const DOMDIM_CUTOFF: usize = 12;
const DOMDIM_BUDGET: Duration = Duration::from_secs(60);
const THM35_CUTOFF: usize = 6;
const SAMPLE_CUTOFF: usize = 6;
const MIN_SAMPLES: usize = 50;
const EXT_SAMPLES_PER_PAIR: usize = 40;
const MONOTONE_TRIPLES: usize = 200;
const MONOTONE_CUTOFF: usize = 6;
const WTC_CUTOFF: usize = 6;
const TORSIONFREE_CUTOFF: usize = 8;
const KS_SUMS: usize = 100;
const HOM_P_MODULES: usize = 100;
const SUITE_BUDGET: Duration = Duration::from_secs(300);

/// Pairs used by the transfer criteria: identity on A3 and N(3,3), and the
/// first two syzygy powers on N(3,3).
const TRANSFER_PAIRS: [&str; 4] = ["a3-id", "nak33-id", "nak33-syz1", "nak33-syz2"];
const ALL_VALID_PAIRS: [&str; 5] = ["a3-id", "nak33-id", "nak33-syz1", "nak33-syz2", "square-id"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn corpus_algebras() -> Vec<Arc<Algebra>> {
    corpus::all().into_iter().map(Arc::new).collect()
}

/// Runs `jobs` and counts passes; errors count as failures.
fn run_jobs(t: &Transporter, jobs: &[(CheckKind, TransferInputs)], cutoff: usize) -> (usize, usize, Vec<String>) {
    let mut pass = 0;
    let mut bad = Vec::new();
    for (i, r) in t.verify_many(jobs, cutoff, SEED).into_iter().enumerate() {
        match r {
            Ok(rep) if rep.pass => pass += 1,
            Ok(rep) => bad.push(format!("{} {} job {i}: lhs {} rhs {}", rep.pair, rep.check.name(), rep.lhs, rep.rhs)),
            Err(e) => bad.push(format!("{} {} job {i}: {e}", t.pair.name, jobs[i].0.name())),
        }
    }
    (pass, jobs.len(), bad)
}

fn summarize(pass: usize, total: usize, bad: &[String]) -> String {
    match bad.first() {
        Some(b) => format!("{pass}/{total} pass; first failure: {b}"),
        None => format!("{pass}/{total} pass"),
    }
}

fn criterion_1() -> Result<Outcome> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut total, mut agree) = (0, 0);
    let mut bad = Vec::new();
    for alg in corpus_algebras() {
        let mut mods = indecomposables(&alg, MAX_IND_DIM, &mut rng)?;
        // Summands of a generated family, as a cross-check on the enumeration.
        for _ in 0..8 {
            let m = random_module(&alg, 2, MAX_IND_DIM, &mut rng)?;
            mods.extend(decompose(&m, &mut rng)?.parts.into_iter().filter(|x| x.total_dim() <= MAX_IND_DIM));
        }
        for m in &mods {
            let a = approx::domdim(m, DOMDIM_CUTOFF, DomDimMethod::Lapp, &mut rng)?.capped(DOMDIM_CUTOFF);
            let b = approx::domdim(m, DOMDIM_CUTOFF, DomDimMethod::Coresolution, &mut rng)?.capped(DOMDIM_CUTOFF);
            total += 1;
            if a == b {
                agree += 1;
            } else {
                bad.push(format!("{} dims {:?}: lapp {a} coresolution {b}", alg.name(), m.dims()));
            }
        }
    }
    let t = start.elapsed();
    let detail = format!("{} in {:.1}s (budget {}s)", summarize(agree, total, &bad), t.as_secs_f64(), DOMDIM_BUDGET.as_secs());
    outcome(agree == total && total > 0 && t < DOMDIM_BUDGET, detail)
}

fn criterion_2() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pass, mut total, mut bad) = (0, 0, Vec::new());
    for name in TRANSFER_PAIRS {
        let t = Transporter::new(pair_by_name(name)?);
        let jobs = sweep_jobs(&t, CheckKind::Thm35, THM35_CUTOFF, &mut rng)?;
        let (p, n, b) = run_jobs(&t, &jobs, THM35_CUTOFF);
        pass += p;
        total += n;
        bad.extend(b);
    }
    outcome(pass == total && total > 0, summarize(pass, total, &bad))
}

fn criterion_3() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pass, mut total, mut bad) = (0, 0, Vec::new());
    for name in TRANSFER_PAIRS {
        let t = Transporter::new(pair_by_name(name)?);
        let mut jobs = sweep_jobs(&t, CheckKind::Fadim, SAMPLE_CUTOFF, &mut rng)?;
        let ext = sweep_jobs(&t, CheckKind::ExtIso, SAMPLE_CUTOFF, &mut rng)?;
        jobs.extend(ext.choose_multiple(&mut rng, EXT_SAMPLES_PER_PAIR).cloned());
        let (p, n, b) = run_jobs(&t, &jobs, SAMPLE_CUTOFF);
        pass += p;
        total += n;
        bad.extend(b);
    }
    outcome(pass == total && total >= MIN_SAMPLES, format!("{} (need >= {MIN_SAMPLES} samples)", summarize(pass, total, &bad)))
}

/// Golden values: the pinned expectation, the library value, and an
/// independent oracle value must all agree.
fn criterion_4() -> Result<Outcome> {
    use common::Interval;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let a3 = Arc::new(corpus::a3());
    let dual = Arc::new(corpus::truncated_polynomial(2));
    let a3_small = common::a3_over(3);
    let dual_small = common::dual_numbers_over(3);
    let mut checks: Vec<(&str, String, String, String)> = Vec::new();
    let mut push = |name, want: String, got: String, oracle: String| checks.push((name, want, got, oracle));

    let reg = Representation::regular(&a3);
    let got = approx::domdim(&reg, DOMDIM_CUTOFF, DomDimMethod::Coresolution, &mut rng)?;
    let proj = [Interval(1, 3), Interval(2, 3), Interval(3, 3)];
    let oracle = common::interval_domdim(&proj, 3, DOMDIM_CUTOFF);
    push("domdim A3", "1".into(), got.to_string(), format!("{}", oracle.map_or(-1, |x| x as i64)));

    let s1 = Representation::simple(&a3, 0);
    let got = approx::lapp(&reg, &s1, DOMDIM_CUTOFF, &mut rng)?.verdict;
    // Every map S1 -> Λ is zero, so the approximation is not mono at step 0.
    let oracle = if common::hom_dim(&Representation::simple(&a3_small, 0), &Representation::regular(&a3_small)) == 0 { 0 } else { -1 };
    push("lapp(Λ, S1) A3", "0".into(), got.to_string(), oracle.to_string());

    let s2 = Representation::simple(&a3, 1);
    let got = approx::ext_dim(&s1, &s2, 1)?;
    let oracle = common::ext1_hereditary(&Representation::simple(&a3_small, 0), &Representation::simple(&a3_small, 1));
    let interval = common::interval_ext1(Interval(1, 1), Interval(2, 2));
    push("Ext1(S1,S2) A3", "1".into(), got.to_string(), if oracle == interval { oracle.to_string() } else { "disagree".into() });

    let got = approx::fadim(&Representation::dual_regular(&a3), DOMDIM_CUTOFF, &mut rng)?;
    let oracle = common::interval_lapp_injective(&proj, &[Interval(1, 1), Interval(1, 2), Interval(1, 3)], DOMDIM_CUTOFF);
    push("fadim(DΛ) A3", ExtendedNat::Infinity.to_string(), got.to_string(), oracle.map_or(ExtendedNat::Infinity, ExtendedNat::Finite).to_string());

    let s = Representation::simple(&dual, 0);
    let got = approx::pd(&s, DOMDIM_CUTOFF)?;
    // Ω S is the kernel of Λ -> S, of dimension dim Λ − dim Hom(Λ, S); a
    // one-dimensional module over k[x]/(x²) is S because x must act nilpotently,
    // so the resolution is periodic and never stops.
    let small_s = Representation::simple(&dual_small, 0);
    let omega_dim = 2 - common::hom_dim(&Representation::regular(&dual_small), &small_s);
    let one_dim_modules = (0..3u64).filter(|x| x * x % 3 == 0).count();
    let oracle = if omega_dim == 1 && one_dim_modules == 1 { ExtendedNat::AtLeast(DOMDIM_CUTOFF) } else { ExtendedNat::Finite(0) };
    push("pd(S) k[x]/(x²)", ExtendedNat::AtLeast(DOMDIM_CUTOFF).to_string(), got.capped(DOMDIM_CUTOFF).to_string(), oracle.to_string());

    let got = stable_hom_dim(&s, &s)?;
    let oracle = common::stable_hom_dim_through(&small_s, &small_s, &Representation::regular(&dual_small));
    push("stable_hom(S,S) k[x]/(x²)", "1".into(), got.to_string(), oracle.to_string());

    let bad: Vec<String> = checks
        .iter()
        .filter(|(_, w, g, o)| w != g || w != o)
        .map(|(n, w, g, o)| format!("{n}: expected {w}, got {g}, oracle {o}"))
        .collect();
    outcome(bad.is_empty(), summarize(checks.len() - bad.len(), checks.len(), &bad))
}

fn criterion_5() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let expected = [("dual", true), ("nak32", true), ("nak33", false), ("kx3", false), ("a3", false)];
    let (mut pass, mut total, mut bad) = (0, 0, Vec::new());
    for (name, want) in expected {
        let alg = Arc::new(corpus::by_name(name)?);
        for v in 0..alg.vertex_count() {
            total += 1;
            let got = is_node(&Representation::simple(&alg, v), &mut rng)?;
            if got == want {
                pass += 1;
            } else {
                bad.push(format!("{name} S{}: is_node = {got}", v + 1));
            }
        }
    }
    outcome(pass == total, summarize(pass, total, &bad))
}

fn criterion_6() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let algs = corpus_algebras();
    let mut bad = Vec::new();
    for i in 0..MONOTONE_TRIPLES {
        let alg = &algs[rng.gen_range(0..algs.len())];
        let omega = random_module(alg, 2, 6, &mut rng)?;
        let m1 = random_module(alg, 2, 6, &mut rng)?;
        let m2 = random_module(alg, 2, 6, &mut rng)?;
        let m = m1.direct_sum(&m2)?;
        let a = approx::lapp(&omega, &m1, MONOTONE_CUTOFF, &mut rng)?.verdict.capped(MONOTONE_CUTOFF);
        let b = approx::lapp(&omega, &m, MONOTONE_CUTOFF, &mut rng)?.verdict.capped(MONOTONE_CUTOFF);
        if a.lower_bound() < b.lower_bound() {
            bad.push(format!("triple {i} over {}: lapp(M1) = {a} < lapp(M1 ⊕ M2) = {b}", alg.name()));
        }
    }
    outcome(bad.is_empty(), summarize(MONOTONE_TRIPLES - bad.len(), MONOTONE_TRIPLES, &bad))
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pass, mut total, mut bad) = (0, 0, Vec::new());
    let mut found = 0;
    for name in TRANSFER_PAIRS {
        let t = Transporter::new(pair_by_name(name)?);
        let wtc = basic_wakamatsu_modules(&t.pair.lambda, WTC_CUTOFF, &mut rng)?;
        found += wtc.len();
        let mut jobs = Vec::new();
        for check in [CheckKind::PhiPsi, CheckKind::Tilting, CheckKind::Wakamatsu] {
            for w in &wtc {
                jobs.push((check, TransferInputs { omega: Some(w.clone()), ..Default::default() }));
            }
        }
        let (p, n, b) = run_jobs(&t, &jobs, WTC_CUTOFF);
        pass += p;
        total += n;
        bad.extend(b);
    }
    outcome(pass == total && found > 0, format!("{} over {found} Wakamatsu tilting modules", summarize(pass, total, &bad)))
}

fn criterion_8() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pass, mut total, mut bad) = (0, 0, Vec::new());
    for name in ALL_VALID_PAIRS {
        let t = Transporter::new(pair_by_name(name)?);
        let mut jobs = Vec::new();
        for check in [CheckKind::Torsionfree, CheckKind::GdimZero, CheckKind::NTorsionfree, CheckKind::GorProj] {
            jobs.extend(sweep_jobs(&t, check, TORSIONFREE_CUTOFF, &mut rng)?);
        }
        let (p, n, b) = run_jobs(&t, &jobs, TORSIONFREE_CUTOFF);
        pass += p;
        total += n;
        bad.extend(b);
    }
    outcome(pass == total && total > 0, summarize(pass, total, &bad))
}

/// Matches the parts of two decompositions up to isomorphism.
fn same_parts(x: &[Representation], y: &[Representation], rng: &mut ChaCha8Rng) -> Result<bool> {
    if x.len() != y.len() {
        return Ok(false);
    }
    let mut used = vec![false; y.len()];
    for a in x {
        let mut hit = false;
        for (j, b) in y.iter().enumerate() {
            if !used[j] && is_isomorphic(a, b, rng)? {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_9(suite_start: Instant) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let algs = corpus_algebras();
    let mut bad = Vec::new();
    for i in 0..KS_SUMS {
        let alg = &algs[rng.gen_range(0..algs.len())];
        let m1 = random_module(alg, 2, 5, &mut rng)?;
        let m2 = random_module(alg, 2, 5, &mut rng)?;
        let sum = m1.direct_sum(&m2)?;
        let d = decompose(&sum, &mut rng)?;
        let mut expected = decompose(&m1, &mut rng)?.parts;
        expected.extend(decompose(&m2, &mut rng)?.parts);
        if !d.iso(&sum)?.is_iso() || !same_parts(&d.parts, &expected, &mut rng)? {
            bad.push(format!("Krull-Schmidt sum {i} over {}", alg.name()));
        }
    }
    let mut tau_checks = 0;
    for alg in &algs {
        for x in indecomposables(alg, MAX_IND_DIM, &mut rng)? {
            if !is_injective(&x)? {
                tau_checks += 1;
                if !is_isomorphic(&tau(&tau_inverse(&x)?)?, &x, &mut rng)? {
                    bad.push(format!("τ τ⁻¹ on {} dims {:?}", alg.name(), x.dims()));
                }
            }
            if !is_projective(&x)? {
                tau_checks += 1;
                if !is_isomorphic(&tau_inverse(&tau(&x)?)?, &x, &mut rng)? {
                    bad.push(format!("τ⁻¹ τ on {} dims {:?}", alg.name(), x.dims()));
                }
            }
        }
    }
    for i in 0..HOM_P_MODULES {
        let alg = &algs[rng.gen_range(0..algs.len())];
        let m = random_module(alg, 3, 10, &mut rng)?;
        for v in 0..alg.vertex_count() {
            if hom_dim(&Representation::projective(alg, v), &m)? != m.dim(v) {
                bad.push(format!("Hom(P({}), M) on module {i} over {}", v + 1, alg.name()));
            }
        }
    }
    let (calls, violations) = rank_nullity_stats();
    if violations > 0 || calls == 0 {
        bad.push(format!("rank-nullity: {violations} violations in {calls} calls"));
    }
    let t = suite_start.elapsed();
    if t > SUITE_BUDGET {
        bad.push(format!("suite took {:.0}s", t.as_secs_f64()));
    }
    let detail = format!(
        "{KS_SUMS} sums, {tau_checks} τ round trips, {HOM_P_MODULES} Hom(P(i), M) modules, {calls} rank-nullity checks, {violations} rank-nullity violations, suite {:.1}s; {}",
        t.as_secs_f64(),
        bad.first().map_or("no violations".to_string(), |b| format!("first failure: {b}"))
    );
    outcome(bad.is_empty(), detail)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome>>)> = vec![
        ("domdim via lapp matches injective coresolution", Box::new(criterion_1)),
        ("lapp transfers along stable equivalences", Box::new(criterion_2)),
        ("fadim and Ext dimensions transfer (sampled)", Box::new(criterion_3)),
        ("golden values match oracles", Box::new(criterion_4)),
        ("node detection", Box::new(criterion_5)),
        ("lapp is monotone under direct sums", Box::new(criterion_6)),
        ("Wakamatsu tilting bijection and verdict transfer", Box::new(criterion_7)),
        ("torsionfree and G-dimension transfer", Box::new(criterion_8)),
        ("infrastructure properties", Box::new(move || criterion_9(start))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {detail} ({:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
