//! Transport of modules along explicit stable equivalences and the transfer
//! checks run over them.
//!
//! Only object-level functors are available: the identity, and syzygy powers
//! on a self-injective algebra. Functors act on the stable category, so
//! projective summands are stripped before applying `F` (and injective
//! summands before applying `F' = τ ∘ F ∘ τ⁻¹`).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::approx::{
    domdim, ext_dim, fadim, gdim_zero_unchecked, is_self_injective, is_tilting, is_wakamatsu, lapp,
    pd, projective_injective_sum, self_orthogonal, torsionfree_check, DomDimMethod, GdimVerdict,
    TiltingVerdict, WakamatsuVerdict,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::extnat::ExtendedNat;
use crate::repmod::{
    cosyzygy, decompose, is_injective, is_isomorphic, is_projective, syzygy, tau, tau_inverse,
    Representation,
};
use crate::stablecat::{hypothesis_report, HypothesisReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "k", rename_all = "snake_case")]
pub enum StableFunctor {
    Identity,
    /// `Ω^k`, or `Ω^{-k}` (cosyzygies) for negative `k`.
    SyzygyPower(i32),
}

impl StableFunctor {
    pub fn inverse(self) -> StableFunctor {
        match self {
            StableFunctor::Identity => StableFunctor::Identity,
            StableFunctor::SyzygyPower(k) => StableFunctor::SyzygyPower(-k),
        }
    }
}

impl fmt::Display for StableFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StableFunctor::Identity => write!(f, "identity"),
            StableFunctor::SyzygyPower(k) => write!(f, "syzygy^{k}"),
        }
    }
}

/// `M ≅ Y ⊕ I' ⊕ P'`: `Y` has no injective summands, `I'` is injective with
/// no projective summands, `P'` is projective-injective.
#[derive(Clone, Debug)]
pub struct SummandSplit {
    pub y: Representation,
    pub iprime: Representation,
    pub pprime: Representation,
}

pub fn split_module<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<SummandSplit> {
    let alg = m.algebra();
    let (mut y, mut i, mut p) = (Vec::new(), Vec::new(), Vec::new());
    if !m.is_zero() {
        for part in decompose(m, rng)?.parts {
            match (is_projective(&part)?, is_injective(&part)?) {
                (true, true) => p.push(part),
                (false, true) => i.push(part),
                _ => y.push(part),
            }
        }
    }
    Ok(SummandSplit {
        y: Representation::direct_sum_all(alg, &y)?,
        iprime: Representation::direct_sum_all(alg, &i)?,
        pprime: Representation::direct_sum_all(alg, &p)?,
    })
}

/// The indecomposable summands of `m`, with projective (or injective) ones dropped.
fn summands_without<R: Rng + ?Sized>(m: &Representation, injective: bool, rng: &mut R) -> Result<Vec<Representation>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in decompose(m, rng)?.parts {
        let drop = if injective { is_injective(&part)? } else { is_projective(&part)? };
        if !drop {
            out.push(part);
        }
    }
    Ok(out)
}

/// `F` on one module without projective summands.
fn functor_raw(f: StableFunctor, m: &Representation) -> Result<Representation> {
    match f {
        StableFunctor::Identity => Ok(m.clone()),
        StableFunctor::SyzygyPower(k) => {
            if !is_self_injective(m.algebra())? {
                return Err(Error::NotSelfInjective);
            }
            if k >= 0 {
                syzygy(m, k as usize)
            } else {
                cosyzygy(m, k.unsigned_abs() as usize)
            }
        }
    }
}

fn tau_or_zero(m: &Representation) -> Result<Representation> {
    if m.is_zero() {
        Ok(m.clone())
    } else {
        tau(m)
    }
}

fn tau_inverse_or_zero(m: &Representation) -> Result<Representation> {
    if m.is_zero() {
        Ok(m.clone())
    } else {
        tau_inverse(m)
    }
}

pub fn apply_f<R: Rng + ?Sized>(f: StableFunctor, m: &Representation, rng: &mut R) -> Result<Representation> {
    let parts = summands_without(m, false, rng)?
        .iter()
        .map(|p| functor_raw(f, p))
        .collect::<Result<Vec<_>>>()?;
    Representation::direct_sum_all(m.algebra(), &parts)
}

/// `F' = τ ∘ F ∘ τ⁻¹`, after dropping injective summands.
pub fn apply_f_prime<R: Rng + ?Sized>(f: StableFunctor, m: &Representation, rng: &mut R) -> Result<Representation> {
    let parts = summands_without(m, true, rng)?
        .iter()
        .map(|p| {
            let x = tau_inverse_or_zero(p)?;
            tau_or_zero(&apply_f(f, &x, rng)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::direct_sum_all(m.algebra(), &parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    F,
    FPrime,
}

type Memo = HashMap<(Op, StableFunctor, Vec<usize>), Vec<(Representation, Representation)>>;

/// A source/target pair of algebras with a stable functor between them.
#[derive(Clone, Debug)]
pub struct PairSpec {
    pub name: String,
    pub lambda: Arc<Algebra>,
    pub gamma: Arc<Algebra>,
    pub functor: StableFunctor,
    pub negative_control: bool,
}

/// The built-in pairs. The last two are negative controls: their algebras
/// have nodes.
pub fn curated_pairs() -> Vec<PairSpec> {
    let same = |name: &str, alg: Algebra, functor, negative_control| {
        let a = Arc::new(alg);
        PairSpec {
            name: name.to_string(),
            lambda: a.clone(),
            gamma: a,
            functor,
            negative_control,
        }
    };
    vec![
        same("a3-id", corpus::a3(), StableFunctor::Identity, false),
        same("nak33-id", corpus::nakayama(3, 3), StableFunctor::Identity, false),
        same("nak33-syz1", corpus::nakayama(3, 3), StableFunctor::SyzygyPower(1), false),
        same("nak33-syz2", corpus::nakayama(3, 3), StableFunctor::SyzygyPower(2), false),
        same("square-id", corpus::commutative_square(), StableFunctor::Identity, false),
        same("nak32-id", corpus::nakayama(3, 2), StableFunctor::Identity, true),
        same("dual-id", corpus::truncated_polynomial(2), StableFunctor::Identity, true),
    ]
}

pub fn pair_by_name(name: &str) -> Result<PairSpec> {
    curated_pairs()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// A pair together with a memo table for functor applications.
#[derive(Debug)]
pub struct Transporter {
    pub pair: PairSpec,
    memo: RwLock<Memo>,
    reports: OnceLock<(HypothesisReport, HypothesisReport)>,
}

impl Transporter {
    pub fn new(pair: PairSpec) -> Self {
        Transporter {
            pair,
            memo: RwLock::new(HashMap::new()),
            reports: OnceLock::new(),
        }
    }

    fn cached<R: Rng + ?Sized>(
        &self,
        op: Op,
        f: StableFunctor,
        part: &Representation,
        rng: &mut R,
        compute: impl FnOnce(&mut R) -> Result<Representation>,
    ) -> Result<Representation> {
        let key = (op, f, part.dims().to_vec());
        let hits: Vec<(Representation, Representation)> = self
            .memo
            .read()
            .expect("memo lock")
            .get(&key)
            .cloned()
            .unwrap_or_default();
        for (src, img) in &hits {
            if is_isomorphic(src, part, rng)? {
                return Ok(img.clone());
            }
        }
        let img = compute(rng)?;
        self.memo
            .write()
            .expect("memo lock")
            .entry(key)
            .or_default()
            .push((part.clone(), img.clone()));
        Ok(img)
    }

    fn target_of(&self, f: StableFunctor) -> &Arc<Algebra> {
        if f == self.pair.functor {
            &self.pair.gamma
        } else {
            &self.pair.lambda
        }
    }

    fn apply<R: Rng + ?Sized>(&self, op: Op, f: StableFunctor, m: &Representation, rng: &mut R) -> Result<Representation> {
        let parts = summands_without(m, op == Op::FPrime, rng)?;
        let mut out = Vec::with_capacity(parts.len());
        for p in &parts {
            out.push(self.cached(op, f, p, rng, |rng| match op {
                Op::F => functor_raw(f, p),
                Op::FPrime => apply_f_prime(f, p, rng),
            })?);
        }
        Representation::direct_sum_all(self.target_of(f), &out)
    }

    pub fn f<R: Rng + ?Sized>(&self, m: &Representation, rng: &mut R) -> Result<Representation> {
        self.apply(Op::F, self.pair.functor, m, rng)
    }

    pub fn f_prime<R: Rng + ?Sized>(&self, m: &Representation, rng: &mut R) -> Result<Representation> {
        self.apply(Op::FPrime, self.pair.functor, m, rng)
    }

    /// `M = Y ⊕ I' ⊕ P'  ↦  F'(Y) ⊕ F(I') ⊕ Q'` with `Q'` either `0` or `Q`.
    pub fn transport<R: Rng + ?Sized>(&self, m: &Representation, with_q: bool, rng: &mut R) -> Result<Representation> {
        self.transport_along(self.pair.functor, m, with_q, rng)
    }

    fn transport_along<R: Rng + ?Sized>(
        &self,
        f: StableFunctor,
        m: &Representation,
        with_q: bool,
        rng: &mut R,
    ) -> Result<Representation> {
        let s = split_module(m, rng)?;
        let target = self.target_of(f).clone();
        let mut parts = vec![
            self.apply(Op::FPrime, f, &s.y, rng)?,
            self.apply(Op::F, f, &s.iprime, rng)?,
        ];
        if with_q {
            parts.push(projective_injective_sum(&target)?);
        }
        Representation::direct_sum_all(&target, &parts)
    }

    /// `Φ(ω) = F'(X) ⊕ F(I) ⊕ Q`.
    pub fn phi<R: Rng + ?Sized>(&self, omega: &Representation, rng: &mut R) -> Result<Representation> {
        if omega.is_zero() {
            return Err(Error::ZeroOmega);
        }
        self.transport_along(self.pair.functor, omega, true, rng)
    }

    /// `Ψ(ν) = F'⁻¹(Y) ⊕ F⁻¹(J) ⊕ P`.
    pub fn psi<R: Rng + ?Sized>(&self, nu: &Representation, rng: &mut R) -> Result<Representation> {
        if nu.is_zero() {
            return Err(Error::ZeroOmega);
        }
        self.transport_along(self.pair.functor.inverse(), nu, true, rng)
    }

    pub fn hypothesis_reports<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<&(HypothesisReport, HypothesisReport)> {
        if let Some(r) = self.reports.get() {
            return Ok(r);
        }
        let r = (
            hypothesis_report(&self.pair.lambda, rng)?,
            hypothesis_report(&self.pair.gamma, rng)?,
        );
        Ok(self.reports.get_or_init(|| r))
    }
}

/// Prefix of hypothesis flags that are reported without blocking a check.
/// Ext¹-self-orthogonality of ω is one: on identity pairs the transferred
/// quantities agree without it.
pub const ADVISORY: &str = "advisory: ";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Thm35,
    Fadim,
    DomDim,
    ExtIso,
    Wakamatsu,
    Tilting,
    PhiPsi,
    Torsionfree,
    GdimZero,
    NTorsionfree,
    GorProj,
    WtcInstance,
}

impl CheckKind {
    pub const ALL: [CheckKind; 12] = [
        CheckKind::Thm35,
        CheckKind::Fadim,
        CheckKind::DomDim,
        CheckKind::ExtIso,
        CheckKind::Wakamatsu,
        CheckKind::Tilting,
        CheckKind::PhiPsi,
        CheckKind::Torsionfree,
        CheckKind::GdimZero,
        CheckKind::NTorsionfree,
        CheckKind::GorProj,
        CheckKind::WtcInstance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Thm35 => "thm35",
            CheckKind::Fadim => "fadim",
            CheckKind::DomDim => "domdim",
            CheckKind::ExtIso => "ext_iso",
            CheckKind::Wakamatsu => "wakamatsu",
            CheckKind::Tilting => "tilting",
            CheckKind::PhiPsi => "phi_psi",
            CheckKind::Torsionfree => "torsionfree",
            CheckKind::GdimZero => "gdim_zero",
            CheckKind::NTorsionfree => "n_torsionfree",
            CheckKind::GorProj => "gor_proj",
            CheckKind::WtcInstance => "wtc_instance",
        }
    }

    pub fn from_name(s: &str) -> Result<CheckKind> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }

    /// Which inputs the check reads.
    pub fn needs(self) -> (bool, bool, bool) {
        // (omega, module M, Ext pair)
        match self {
            CheckKind::Thm35 | CheckKind::Torsionfree | CheckKind::GdimZero => (true, true, false),
            CheckKind::Fadim | CheckKind::Wakamatsu | CheckKind::Tilting | CheckKind::PhiPsi | CheckKind::WtcInstance => {
                (true, false, false)
            }
            CheckKind::DomDim | CheckKind::NTorsionfree | CheckKind::GorProj => (false, true, false),
            CheckKind::ExtIso => (false, false, true),
        }
    }
}

/// Inputs to a transfer check. Which fields are read depends on the check.
#[derive(Clone, Debug, Default)]
pub struct TransferInputs {
    pub omega: Option<Representation>,
    pub m: Option<Representation>,
    pub a: Option<Representation>,
    pub a2: Option<Representation>,
    /// `n` for torsionfree checks, the Ext degree for `ExtIso`.
    pub n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub pair: String,
    pub check: CheckKind,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub cutoff: usize,
    pub pass: bool,
    pub hypothesis_flags: Vec<String>,
    pub evidence: Value,
}

fn descriptor(m: &Representation) -> Value {
    json!({ "dims": m.dims(), "total_dim": m.total_dim() })
}

fn require<'a>(x: &'a Option<Representation>, what: &str) -> Result<&'a Representation> {
    x.as_ref()
        .ok_or_else(|| Error::InvalidModule(format!("check needs input '{what}'")))
}

fn capped_eq(a: ExtendedNat, b: ExtendedNat, cutoff: usize) -> bool {
    a.capped(cutoff) == b.capped(cutoff)
}

fn tilting_kind(v: &TiltingVerdict) -> &'static str {
    match v {
        TiltingVerdict::Yes(_) => "yes",
        TiltingVerdict::No(_) => "no",
        TiltingVerdict::Inconclusive(_) => "inconclusive",
    }
}

fn gdim_kind(v: &GdimVerdict) -> &'static str {
    match v {
        GdimVerdict::YesUpToCutoff => "yes_up_to_cutoff",
        GdimVerdict::No(_) => "no",
    }
}

impl Transporter {
    /// Flags for hypotheses of `check` that fail on these inputs. Flags
    /// starting with [`ADVISORY`] are recorded but do not stop the check.
    fn hypothesis_flags<R: Rng + ?Sized>(
        &self,
        check: CheckKind,
        inputs: &TransferInputs,
        rng: &mut R,
    ) -> Result<Vec<String>> {
        let mut flags = Vec::new();
        let (rl, rg) = self.hypothesis_reports(rng)?;
        if !rl.satisfied() || !rg.satisfied() {
            flags.push("algebra has nodes or semisimple blocks".to_string());
        }
        if matches!(check, CheckKind::Thm35 | CheckKind::Fadim | CheckKind::Torsionfree) {
            let omega = require(&inputs.omega, "omega")?;
            if !self_orthogonal(omega, 1..=1)?[0].1 {
                flags.push(format!("{ADVISORY}Ext^1(omega, omega) != 0"));
            }
            let q = projective_injective_sum(omega.algebra())?;
            if !contains_all_summands(omega, &q, rng)? {
                flags.push("omega lacks a projective-injective summand".to_string());
            }
        }
        Ok(flags)
    }

    /// Runs one transfer check. On a pair that is not a negative control a
    /// failed hypothesis is an error; negative controls report it in
    /// `hypothesis_flags` and run anyway.
    pub fn verify<R: Rng + ?Sized>(
        &self,
        check: CheckKind,
        inputs: &TransferInputs,
        cutoff: usize,
        rng: &mut R,
    ) -> Result<Report> {
        if cutoff == 0 {
            return Err(Error::InvalidCutoff("cutoff must be at least 1".into()));
        }
        let flags = self.hypothesis_flags(check, inputs, rng)?;
        let blocking: Vec<&String> = flags.iter().filter(|f| !f.starts_with(ADVISORY)).collect();
        if !blocking.is_empty() && !self.pair.negative_control {
            let msg: Vec<&str> = blocking.iter().map(|s| s.as_str()).collect();
            return Err(Error::HypothesisFailed(msg.join("; ")));
        }
        let mut input_desc = serde_json::Map::new();
        for (k, v) in [("omega", &inputs.omega), ("m", &inputs.m), ("a", &inputs.a), ("a2", &inputs.a2)] {
            if let Some(x) = v {
                input_desc.insert(k.to_string(), descriptor(x));
            }
        }
        input_desc.insert("n".into(), json!(inputs.n));

        let (lhs, rhs, pass, evidence) = match check {
            CheckKind::Thm35 => {
                let omega = require(&inputs.omega, "omega")?;
                let m = require(&inputs.m, "m")?;
                let nu = self.phi(omega, rng)?;
                let left = lapp(omega, m, cutoff, rng)?;
                let mut rhs = Vec::new();
                let mut ev = vec![json!({ "side": "lambda", "chain": left.to_json() })];
                let mut pass = true;
                for with_q in [false, true] {
                    let n = self.transport(m, with_q, rng)?;
                    let right = lapp(&nu, &n, cutoff, rng)?;
                    pass &= capped_eq(left.verdict, right.verdict, cutoff);
                    rhs.push(json!({ "q_prime": if with_q { "Q" } else { "0" }, "value": right.verdict }));
                    ev.push(json!({ "side": "gamma", "q_prime": with_q, "n": descriptor(&n), "chain": right.to_json() }));
                }
                (json!(left.verdict), json!(rhs), pass, json!(ev))
            }
            CheckKind::Fadim => {
                let omega = require(&inputs.omega, "omega")?;
                let nu = self.phi(omega, rng)?;
                let l = fadim(omega, cutoff, rng)?;
                let r = fadim(&nu, cutoff, rng)?;
                (json!(l), json!(r), capped_eq(l, r, cutoff), json!({ "nu": descriptor(&nu) }))
            }
            CheckKind::DomDim => {
                let m = require(&inputs.m, "m")?;
                let l = domdim(m, cutoff, DomDimMethod::Lapp, rng)?;
                let mut rhs = Vec::new();
                let mut pass = true;
                for with_q in [false, true] {
                    let n = self.transport(m, with_q, rng)?;
                    let r = domdim(&n, cutoff, DomDimMethod::Lapp, rng)?;
                    pass &= capped_eq(l, r, cutoff);
                    rhs.push(json!({ "q_prime": if with_q { "Q" } else { "0" }, "value": r }));
                }
                (json!(l), json!(rhs), pass, Value::Null)
            }
            CheckKind::ExtIso => {
                let a = require(&inputs.a, "a")?;
                let a2 = require(&inputs.a2, "a2")?;
                if inputs.n == 0 {
                    return Err(Error::InvalidModule("Ext degree must be positive".into()));
                }
                let l = ext_dim(a, a2, inputs.n)?;
                let mut rhs = Vec::new();
                let mut pass = true;
                for with_q in [false, true] {
                    let b = self.transport(a, with_q, rng)?;
                    let b2 = self.transport(a2, with_q, rng)?;
                    let r = ext_dim(&b, &b2, inputs.n)?;
                    pass &= l == r;
                    rhs.push(json!({ "q_prime": if with_q { "Q" } else { "0" }, "value": r }));
                }
                (json!(l), json!(rhs), pass, Value::Null)
            }
            CheckKind::Wakamatsu => {
                let omega = require(&inputs.omega, "omega")?;
                let nu = self.phi(omega, rng)?;
                let l = is_wakamatsu(omega, cutoff, rng)?;
                let r = is_wakamatsu(&nu, cutoff, rng)?;
                (json!(l), json!(r), l.kind() == r.kind(), json!({ "nu": descriptor(&nu) }))
            }
            CheckKind::Tilting => {
                let omega = require(&inputs.omega, "omega")?;
                let nu = self.phi(omega, rng)?;
                let l = is_tilting(omega, cutoff, rng)?;
                let r = is_tilting(&nu, cutoff, rng)?;
                let pass = tilting_kind(&l) == tilting_kind(&r);
                (json!(l), json!(r), pass, json!({ "nu": descriptor(&nu) }))
            }
            CheckKind::PhiPsi => {
                let omega = require(&inputs.omega, "omega")?;
                let nu = self.phi(omega, rng)?;
                let back = self.psi(&nu, rng)?;
                let iso = is_isomorphic(&back, omega, rng)?;
                (
                    descriptor(omega),
                    descriptor(&back),
                    iso,
                    json!({ "nu": descriptor(&nu) }),
                )
            }
            CheckKind::Torsionfree => {
                let omega = require(&inputs.omega, "omega")?;
                let m = require(&inputs.m, "m")?;
                let nu = self.phi(omega, rng)?;
                let l = torsionfree_check(omega, m, inputs.n, cutoff, rng)?;
                let mut rhs = Vec::new();
                let mut pass = true;
                for with_q in [false, true] {
                    let n = self.transport(m, with_q, rng)?;
                    let r = torsionfree_check(&nu, &n, inputs.n, cutoff, rng)?;
                    pass &= l == r;
                    rhs.push(json!({ "q_prime": if with_q { "Q" } else { "0" }, "value": r }));
                }
                (json!(l), json!(rhs), pass, Value::Null)
            }
            CheckKind::GdimZero => {
                let omega = require(&inputs.omega, "omega")?;
                let m = require(&inputs.m, "m")?;
                if let WakamatsuVerdict::No(reason) = is_wakamatsu(omega, cutoff, rng)? {
                    return Err(Error::NotWakamatsu(reason));
                }
                let nu = self.phi(omega, rng)?;
                self.gdim_sides(omega, &nu, m, cutoff, rng)?
            }
            CheckKind::NTorsionfree => {
                let m = require(&inputs.m, "m")?;
                let reg_l = Representation::regular(&self.pair.lambda);
                let reg_g = Representation::regular(&self.pair.gamma);
                let l = torsionfree_check(&reg_l, m, inputs.n, cutoff, rng)?;
                let mut rhs = Vec::new();
                let mut pass = true;
                for with_q in [false, true] {
                    let n = self.transport(m, with_q, rng)?;
                    let r = torsionfree_check(&reg_g, &n, inputs.n, cutoff, rng)?;
                    pass &= l == r;
                    rhs.push(json!({ "q_prime": if with_q { "Q" } else { "0" }, "value": r }));
                }
                (json!(l), json!(rhs), pass, Value::Null)
            }
            CheckKind::GorProj => {
                let m = require(&inputs.m, "m")?;
                let reg_l = Representation::regular(&self.pair.lambda);
                let reg_g = Representation::regular(&self.pair.gamma);
                self.gdim_sides(&reg_l, &reg_g, m, cutoff, rng)?
            }
            CheckKind::WtcInstance => {
                let omega = require(&inputs.omega, "omega")?;
                let nu = self.phi(omega, rng)?;
                let side = |w: &Representation, rng: &mut R| -> Result<Value> {
                    let wak = is_wakamatsu(w, cutoff, rng)?;
                    let p = pd(w, cutoff)?;
                    let t = is_tilting(w, cutoff, rng)?;
                    Ok(json!({
                        "wakamatsu": wak.kind(),
                        "pd_finite": p.is_finite(),
                        "tilting": tilting_kind(&t),
                    }))
                };
                let l = side(omega, rng)?;
                let r = side(&nu, rng)?;
                let pass = l == r;
                (l, r, pass, json!({ "nu": descriptor(&nu) }))
            }
        };
        Ok(Report {
            pair: self.pair.name.clone(),
            check,
            inputs: Value::Object(input_desc),
            lhs,
            rhs,
            cutoff,
            pass,
            hypothesis_flags: flags,
            evidence,
        })
    }

    fn gdim_sides<R: Rng + ?Sized>(
        &self,
        omega: &Representation,
        nu: &Representation,
        m: &Representation,
        cutoff: usize,
        rng: &mut R,
    ) -> Result<(Value, Value, bool, Value)> {
        let l = gdim_zero_unchecked(omega, m, cutoff, rng)?;
        let mut rhs = Vec::new();
        let mut pass = true;
        for with_q in [false, true] {
            let n = self.transport(m, with_q, rng)?;
            let r = gdim_zero_unchecked(nu, &n, cutoff, rng)?;
            pass &= gdim_kind(&l) == gdim_kind(&r);
            rhs.push(json!({ "q_prime": if with_q { "Q" } else { "0" }, "value": r }));
        }
        Ok((json!(l), json!(rhs), pass, json!({ "nu": descriptor(nu) })))
    }

    /// Runs independent checks in parallel. Each job gets its own RNG seeded
    /// from `seed` and its index, so results do not depend on scheduling.
    pub fn verify_many(
        &self,
        jobs: &[(CheckKind, TransferInputs)],
        cutoff: usize,
        seed: u64,
    ) -> Vec<Result<Report>> {
        jobs.par_iter()
            .enumerate()
            .map(|(i, (check, inputs))| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                self.verify(*check, inputs, cutoff, &mut rng)
            })
            .collect()
    }
}

/// Does every indecomposable summand of `q` occur in `omega`?
fn contains_all_summands<R: Rng + ?Sized>(omega: &Representation, q: &Representation, rng: &mut R) -> Result<bool> {
    if q.is_zero() {
        return Ok(true);
    }
    let have = decompose(omega, rng)?.parts;
    for part in decompose(q, rng)?.parts {
        let mut found = false;
        for h in &have {
            if h.dims() == part.dims() && is_isomorphic(h, &part, rng)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{"checks": [...]}` with one record per report, in input order.
pub fn emit_report(reports: &[Report]) -> Value {
    json!({ "checks": reports })
}

/// Subsets of `0..n` (as sorted index lists) in which every pair, including
/// each element with itself, satisfies `ok`.
pub fn compatible_subsets(n: usize, ok: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((cur, next)) = stack.pop() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for j in next..n {
            if ok(j, j) && cur.iter().all(|&i| ok(i, j) && ok(j, i)) {
                let mut c = cur.clone();
                c.push(j);
                stack.push((c, j + 1));
            }
        }
    }
    out.sort();
    out
}

/// `ext[i][j] = true` iff `Ext^d(ind_i, ind_j) = 0` for `1 <= d <= degrees`.
fn ext_vanishing(ind: &[Representation], degrees: usize) -> Result<Vec<Vec<bool>>> {
    let res: Vec<_> = ind
        .iter()
        .map(|m| crate::approx::projective_resolution(m, degrees + 1))
        .collect::<Result<_>>()?;
    res.iter()
        .map(|r| {
            ind.iter()
                .map(|n| {
                    for d in 1..=degrees {
                        if crate::approx::ext_from_resolution(r, n, d)? != 0 {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })
                .collect()
        })
        .collect()
}

/// Basic modules built from indecomposables (total dimension at most 8)
/// that are self-orthogonal up to `cutoff`, with their tilting and
/// Wakamatsu verdicts.
pub fn self_orthogonal_basics<R: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    cutoff: usize,
    rng: &mut R,
) -> Result<Vec<(Representation, TiltingVerdict, WakamatsuVerdict)>> {
    let ind = crate::stablecat::indecomposables(alg, 8, rng)?;
    let ext = ext_vanishing(&ind, cutoff)?;
    let mut out = Vec::new();
    for subset in compatible_subsets(ind.len(), |i, j| ext[i][j]) {
        let parts: Vec<Representation> = subset.iter().map(|&i| ind[i].clone()).collect();
        let w = Representation::direct_sum_all(alg, &parts)?;
        let t = is_tilting(&w, cutoff, rng)?;
        let wk = is_wakamatsu(&w, cutoff, rng)?;
        out.push((w, t, wk));
    }
    Ok(out)
}

/// Basic modules from [`self_orthogonal_basics`] whose Wakamatsu verdict is
/// not `no`.
pub fn basic_wakamatsu_modules<R: Rng + ?Sized>(alg: &Arc<Algebra>, cutoff: usize, rng: &mut R) -> Result<Vec<Representation>> {
    Ok(self_orthogonal_basics(alg, cutoff, rng)?
        .into_iter()
        .filter(|(_, _, w)| !matches!(w, WakamatsuVerdict::No(_)))
        .map(|x| x.0)
        .collect())
}

pub fn basic_tilting_modules<R: Rng + ?Sized>(alg: &Arc<Algebra>, cutoff: usize, rng: &mut R) -> Result<Vec<Representation>> {
    Ok(self_orthogonal_basics(alg, cutoff, rng)?
        .into_iter()
        .filter(|(_, t, _)| matches!(t, TiltingVerdict::Yes(_)))
        .map(|x| x.0)
        .collect())
}

/// The ω used by sweeps: `Λ`, `DΛ`, `Λ ⊕ DΛ`, then every basic tilting
/// module not isomorphic to one already listed.
pub fn omega_candidates<R: Rng + ?Sized>(alg: &Arc<Algebra>, cutoff: usize, rng: &mut R) -> Result<Vec<Representation>> {
    let reg = Representation::regular(alg);
    let dreg = Representation::dual_regular(alg);
    let mut out = vec![reg.clone(), dreg.clone(), reg.direct_sum(&dreg)?];
    for t in basic_tilting_modules(alg, cutoff, rng)? {
        let mut seen = false;
        for o in &out {
            if is_isomorphic(o, &t, rng)? {
                seen = true;
                break;
            }
        }
        if !seen {
            out.push(t);
        }
    }
    Ok(out)
}

/// Inputs for an exhaustive sweep of `check` on a pair: modules range over
/// all indecomposables, ω over [`omega_candidates`] (or the basic Wakamatsu
/// tilting modules for `PhiPsi` and `GdimZero`).
pub fn sweep_jobs<R: Rng + ?Sized>(
    t: &Transporter,
    check: CheckKind,
    cutoff: usize,
    rng: &mut R,
) -> Result<Vec<(CheckKind, TransferInputs)>> {
    let alg = t.pair.lambda.clone();
    let ind = crate::stablecat::indecomposables(&alg, 8, rng)?;
    let omegas = match check {
        CheckKind::PhiPsi | CheckKind::GdimZero => basic_wakamatsu_modules(&alg, cutoff, rng)?,
        _ if check.needs().0 => omega_candidates(&alg, cutoff, rng)?,
        _ => Vec::new(),
    };
    let degrees: Vec<usize> = match check {
        CheckKind::Torsionfree | CheckKind::NTorsionfree => (0..=1).filter(|n| n + 2 <= cutoff).collect(),
        _ => vec![0],
    };
    let mut jobs = Vec::new();
    let job = |omega: Option<&Representation>, m: Option<&Representation>, n: usize| TransferInputs {
        omega: omega.cloned(),
        m: m.cloned(),
        n,
        ..Default::default()
    };
    match check.needs() {
        (true, true, _) => {
            for w in &omegas {
                for m in &ind {
                    for &n in &degrees {
                        jobs.push((check, job(Some(w), Some(m), n)));
                    }
                }
            }
        }
        (true, false, _) => jobs.extend(omegas.iter().map(|w| (check, job(Some(w), None, 0)))),
        (false, true, _) => {
            for m in &ind {
                for &n in &degrees {
                    jobs.push((check, job(None, Some(m), n)));
                }
            }
        }
        (false, false, _) => {
            for a in &ind {
                for a2 in &ind {
                    for n in 1..=4 {
                        jobs.push((
                            check,
                            TransferInputs {
                                a: Some(a.clone()),
                                a2: Some(a2.clone()),
                                n,
                                ..Default::default()
                            },
                        ));
                    }
                }
            }
        }
    }
    Ok(jobs)
}
