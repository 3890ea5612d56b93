use std::sync::Arc;

use rand::Rng;

use super::proj::{ElementMatrix, ProjectiveSum};
use super::sub::cokernel;
use super::Representation;
use crate::algebra::Algebra;
use crate::error::Result;

/// The cokernel of a random map `⊕ P(s_k) -> ⊕ P(t_l)` whose components are
/// random combinations of nontrivial paths.
pub fn random_quotient_of_projectives<R: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    tops0: &[usize],
    tops1: &[usize],
    rng: &mut R,
) -> Result<Representation> {
    let p = alg.field().p();
    let p0 = ProjectiveSum::new(alg, tops0.to_vec());
    let p1 = ProjectiveSum::new(alg, tops1.to_vec());
    let c: ElementMatrix = tops0
        .iter()
        .map(|&t| {
            tops1
                .iter()
                .map(|&s| {
                    alg.paths_between(t, s)
                        .iter()
                        .filter(|&&b| !alg.basis()[b].is_trivial())
                        .filter_map(|&b| {
                            // Sparse on purpose: dense maps mostly give projectives' tops.
                            if rng.gen_bool(0.6) {
                                Some((b, rng.gen_range(1..p)))
                            } else {
                                None
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let g = p1.morphism_to(&p0, &c);
    Ok(cokernel(&g)?.0)
}

/// A random nonzero module of total dimension at most `max_dim` (when
/// possible), with projective presentation of up to `max_tops` summands on
/// each side.
pub fn random_module<R: Rng + ?Sized>(
    alg: &Arc<Algebra>,
    max_tops: usize,
    max_dim: usize,
    rng: &mut R,
) -> Result<Representation> {
    let n = alg.vertex_count();
    let mut last = None;
    for _ in 0..32 {
        let k0 = rng.gen_range(1..=max_tops.max(1));
        let k1 = rng.gen_range(0..=max_tops);
        let tops0: Vec<usize> = (0..k0).map(|_| rng.gen_range(0..n)).collect();
        let tops1: Vec<usize> = (0..k1).map(|_| rng.gen_range(0..n)).collect();
        let m = random_quotient_of_projectives(alg, &tops0, &tops1, rng)?;
        if !m.is_zero() && m.total_dim() <= max_dim {
            return Ok(m);
        }
        if !m.is_zero() {
            last = Some(m);
        }
    }
    Ok(last.unwrap_or_else(|| Representation::simple(alg, rng.gen_range(0..n))))
}
