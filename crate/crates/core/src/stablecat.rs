//! Hom modulo projectives, almost split sequences, nodes and the standing
//! hypothesis report for an algebra.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::approx::projective_injectives;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::repmod::{
    cokernel, decompose, end_algebra, hom_basis, hom_dim, is_indecomposable, is_injective,
    is_isomorphic, is_projective, is_split_mono, kernel, projective_cover, tau, tau_inverse,
    Morphism, ProjectiveSum, Representation,
};

/// `dim Hom(M, N) / P(M, N)`, where `P` is the maps factoring through a
/// projective. These are exactly the maps factoring through the cover of `N`.
pub fn stable_hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.same_algebra(n)?;
    let total = hom_dim(m, n)?;
    if total == 0 {
        return Ok(0);
    }
    let (p, pi) = projective_cover(n)?;
    let via: Vec<Vec<u64>> = hom_basis(m, &p.rep)?
        .iter()
        .map(|h| h.then(&pi).map(|x| x.flatten()))
        .collect::<Result<_>>()?;
    let len: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let r = Matrix::from_vec(m.field(), via.len(), len, via.concat()).rank();
    Ok(total - r)
}

/// Lifts `g: P -> Y` through the epimorphism `pi: Z -> Y`.
fn lift(p: &ProjectiveSum, g: &Morphism, pi: &Morphism) -> Result<Morphism> {
    let fld = g.source().field();
    let mut gens = Vec::with_capacity(p.tops.len());
    for k in 0..p.tops.len() {
        let (s, gi) = p.generator(k);
        let y = Matrix::column(fld, &g.comp(s).col(gi));
        let x = pi
            .comp(s)
            .solve(&y)?
            .ok_or_else(|| Error::LiftFailed("map does not lift through an epimorphism".into()))?;
        gens.push(x.col(0));
    }
    Ok(p.map_generators(pi.source(), &gens))
}

/// The map `E -> Y` induced by `phi: Z -> Y` through the epimorphism
/// `q: Z -> E`, assuming `phi` vanishes on `ker q`.
fn descend(q: &Morphism, phi: &Morphism) -> Result<Morphism> {
    let mut comps = Vec::with_capacity(q.comps().len());
    for (qv, fv) in q.comps().iter().zip(phi.comps()) {
        let h = qv
            .transpose()
            .solve(&fv.transpose())?
            .ok_or_else(|| Error::LiftFailed("map does not factor through the quotient".into()))?;
        comps.push(h.transpose());
    }
    Morphism::new(q.target().clone(), phi.target().clone(), comps)
}

#[derive(Clone, Debug)]
pub struct AlmostSplitSequence {
    pub left: Representation,
    pub middle: Representation,
    pub right: Representation,
    pub mono: Morphism,
    pub epi: Morphism,
    pub middle_parts: Vec<Representation>,
}

/// The almost split sequence `0 -> M -> E -> τ⁻¹M -> 0`.
pub fn almost_split_starting_at<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<AlmostSplitSequence> {
    if is_injective(m)? {
        return Err(Error::IsInjective);
    }
    if !is_indecomposable(m, rng)? {
        return Err(Error::NotIndecomposable);
    }
    let fld = m.field();
    let x = tau_inverse(m)?;
    let (p0, pi) = projective_cover(&x)?;
    let (omega, iota) = kernel(&pi)?;

    // Ext¹(X, M) = Hom(ΩX, M) / (maps extending over P0).
    let hom = hom_basis(&omega, m)?;
    let len: usize = omega.dims().iter().zip(m.dims()).map(|(a, b)| a * b).sum();
    let bound: Vec<Vec<u64>> = hom_basis(&p0.rep, m)?
        .iter()
        .map(|h| iota.then(h).map(|c| c.flatten()))
        .collect::<Result<_>>()?;
    let bmat = Matrix::from_vec(fld, bound.len(), len, bound.concat());
    // Rows of `annih` cut out span(bound).
    let annih = bmat.kernel_basis();
    let reduce = |v: &[u64]| annih.mul(&Matrix::column(fld, v)).col(0);

    // The classes killed by the right action of rad End(X).
    let end = end_algebra(&x)?;
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for r in 0..end.radical.rows() {
        let terms: Vec<(u64, &Morphism)> = end.radical.row(r).iter().copied().zip(&end.basis).collect();
        let e = Morphism::linear_combination(&x, &x, &terms);
        let lifted = lift(&p0, &pi.then(&e)?, &pi)?;
        // Restrict the lift to ΩX.
        let restricted = lift_into_kernel(&iota, &iota.then(&lifted)?)?;
        let cols: Vec<Vec<u64>> = hom
            .iter()
            .map(|c| restricted.then(c).map(|y| reduce(&y.flatten())))
            .collect::<Result<_>>()?;
        for row in 0..annih.rows() {
            eqs.push(cols.iter().map(|c| c[row]).collect());
        }
    }
    let sys = Matrix::from_vec(fld, eqs.len(), hom.len(), eqs.concat());
    let sols = sys.kernel_basis();
    let mut cocycle = None;
    for s in 0..sols.rows() {
        let terms: Vec<(u64, &Morphism)> = sols.row(s).iter().copied().zip(&hom).collect();
        let c = Morphism::linear_combination(&omega, m, &terms);
        if reduce(&c.flatten()).iter().any(|&v| v != 0) {
            cocycle = Some(c);
            break;
        }
    }
    let c = cocycle.ok_or_else(|| Error::LiftFailed("no almost split extension class found".into()))?;

    // Pushout of 0 -> ΩX -> P0 -> X -> 0 along c.
    let neg_iota = iota.scale(fld.neg(1));
    let glue = c.pair(&neg_iota)?;
    let (middle, q) = cokernel(&glue)?;
    let mono = m.direct_sum_with_maps(&p0.rep)?.inj[0].then(&q)?;
    let from_sum = Morphism::zero(m, &x).copair(&pi)?;
    let epi = descend(&q, &from_sum)?;

    if !mono.is_mono() || !epi.is_epi() || is_split_mono(&mono)? {
        return Err(Error::LiftFailed("constructed sequence is split or not exact".into()));
    }
    if !is_isomorphic(&tau(&x)?, m, rng)? {
        return Err(Error::LiftFailed("tau of the right term is not the left term".into()));
    }
    let dims_ok = middle
        .dims()
        .iter()
        .zip(m.dims().iter().zip(x.dims()))
        .all(|(e, (a, b))| *e == a + b);
    if !dims_ok {
        return Err(Error::LiftFailed("dimension vectors do not add up".into()));
    }
    let middle_parts = decompose(&middle, rng)?.parts;
    Ok(AlmostSplitSequence {
        left: m.clone(),
        middle,
        right: x,
        mono,
        epi,
        middle_parts,
    })
}

/// Factors `g: K -> Z` through the mono `iota: K' -> Z` (image of `g` must lie in it).
fn lift_into_kernel(iota: &Morphism, g: &Morphism) -> Result<Morphism> {
    let mut comps = Vec::with_capacity(g.comps().len());
    for (iv, gv) in iota.comps().iter().zip(g.comps()) {
        comps.push(
            iv.solve(gv)?
                .ok_or_else(|| Error::LiftFailed("map does not land in the kernel".into()))?,
        );
    }
    Morphism::new(g.source().clone(), iota.source().clone(), comps)
}

/// Is the simple `s` a node: neither projective nor injective, and the
/// middle of the almost split sequence starting at it is projective.
pub fn is_node<R: Rng + ?Sized>(s: &Representation, rng: &mut R) -> Result<bool> {
    if s.total_dim() != 1 {
        return Err(Error::NotSimple);
    }
    if is_projective(s)? || is_injective(s)? {
        return Ok(false);
    }
    let seq = almost_split_starting_at(s, rng)?;
    for p in &seq.middle_parts {
        if !is_projective(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub algebra: String,
    /// Vertices (0-based) whose simple is a node.
    pub nodes: Vec<usize>,
    /// Vertex sets of the semisimple blocks.
    pub semisimple_blocks: Vec<Vec<usize>>,
    pub self_injective: bool,
    /// Vertices `i` with `P(i)` injective.
    pub proj_inj: Vec<usize>,
}

impl HypothesisReport {
    /// No nodes and no semisimple blocks.
    pub fn satisfied(&self) -> bool {
        self.nodes.is_empty() && self.semisimple_blocks.is_empty()
    }
}

pub fn hypothesis_report<R: Rng + ?Sized>(alg: &Arc<Algebra>, rng: &mut R) -> Result<HypothesisReport> {
    let mut nodes = Vec::new();
    for v in 0..alg.vertex_count() {
        if is_node(&Representation::simple(alg, v), rng)? {
            nodes.push(v);
        }
    }
    let semisimple_blocks = alg
        .blocks()
        .into_iter()
        .filter(|b| b.semisimple)
        .map(|b| b.vertices)
        .collect();
    let proj_inj: Vec<usize> = projective_injectives(alg)?.into_iter().map(|x| x.0).collect();
    Ok(HypothesisReport {
        algebra: alg.name().to_string(),
        nodes,
        semisimple_blocks,
        self_injective: proj_inj.len() == alg.vertex_count(),
        proj_inj,
    })
}

/// All indecomposables of total dimension at most `max_dim`, up to
/// isomorphism, reachable from the standard modules by τ, τ⁻¹ and middle
/// terms of almost split sequences. On a representation-finite connected
/// algebra whose indecomposables all fit under the cap this is all of them.
pub fn indecomposables<R: Rng + ?Sized>(alg: &Arc<Algebra>, max_dim: usize, rng: &mut R) -> Result<Vec<Representation>> {
    let mut found: Vec<Representation> = Vec::new();
    let mut queue: Vec<Representation> = Vec::new();
    for v in 0..alg.vertex_count() {
        queue.push(Representation::simple(alg, v));
        queue.push(Representation::projective(alg, v));
        queue.push(Representation::injective(alg, v));
    }
    while let Some(m) = queue.pop() {
        if m.is_zero() || m.total_dim() > max_dim {
            continue;
        }
        let mut seen = false;
        for f in &found {
            if f.dims() == m.dims() && is_isomorphic(f, &m, rng)? {
                seen = true;
                break;
            }
        }
        if seen {
            continue;
        }
        found.push(m.clone());
        if !is_injective(&m)? {
            let seq = almost_split_starting_at(&m, rng)?;
            queue.push(seq.right);
            queue.extend(seq.middle_parts);
        }
        if !is_projective(&m)? {
            queue.push(tau(&m)?);
        }
    }
    found.sort_by(|a, b| (a.total_dim(), a.dims()).cmp(&(b.total_dim(), b.dims())));
    Ok(found)
}
