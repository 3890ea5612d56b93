use std::collections::HashMap;
use std::sync::Arc;

use super::sub::{cokernel, complement, kernel, radical_bases};
use super::{Morphism, Representation};
use crate::algebra::{Algebra, SparseVec};
use crate::error::{Error, Result};
use crate::exactla::Matrix;

/// `C[l][k] ∈ e_{t_l} A e_{s_k}`: the component from source summand `k` to
/// target summand `l` of a map between sums of indecomposable projectives.
pub type ElementMatrix = Vec<Vec<SparseVec>>;

/// `⊕_k P(tops[k])` with a fixed coordinate layout.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub tops: Vec<usize>,
    pub rep: Representation,
    /// `coords[t][r] = (summand, basis index)` of coordinate `r` at vertex `t`.
    coords: Vec<Vec<(usize, usize)>>,
    pos: HashMap<(usize, usize), usize>,
}

impl ProjectiveSum {
    pub fn new(alg: &Arc<Algebra>, tops: Vec<usize>) -> Self {
        let f = alg.field();
        let n = alg.vertex_count();
        let mut coords = vec![Vec::new(); n];
        let mut pos = HashMap::new();
        for (t, ct) in coords.iter_mut().enumerate() {
            for (k, &s) in tops.iter().enumerate() {
                for &b in alg.paths_between(s, t) {
                    pos.insert((k, b), ct.len());
                    ct.push((k, b));
                }
            }
        }
        let dims: Vec<usize> = coords.iter().map(Vec::len).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let arrow = alg.arrow_basis_index(ai);
                let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
                for (c, &(k, b)) in coords[a.source].iter().enumerate() {
                    for &(b2, x) in alg.mult(b, arrow) {
                        m.set(pos[&(k, b2)], c, x);
                    }
                }
                m
            })
            .collect();
        let rep = Representation::new_unchecked(alg.clone(), dims, maps);
        ProjectiveSum {
            tops,
            rep,
            coords,
            pos,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.rep.algebra()
    }

    /// Vertex and coordinate of the generator `e_{s_k}` of summand `k`.
    pub fn generator(&self, k: usize) -> (usize, usize) {
        let s = self.tops[k];
        (s, self.pos[&(k, self.algebra().idempotent(s))])
    }

    /// The morphism sending generator `k` to `gens[k] ∈ target_{s_k}`.
    pub fn map_generators(&self, target: &Representation, gens: &[Vec<u64>]) -> Morphism {
        let f = target.field();
        let comps = (0..self.coords.len())
            .map(|t| {
                let mut m = Matrix::zeros(f, target.dim(t), self.rep.dim(t));
                for (c, &(k, b)) in self.coords[t].iter().enumerate() {
                    let img = target.basis_action(b).mul(&Matrix::column(f, &gens[k]));
                    m.set_block(0, c, &img);
                }
                m
            })
            .collect();
        Morphism::new_unchecked(self.rep.clone(), target.clone(), comps)
    }

    /// The morphism `self -> dst` with element matrix `c` (`c[l][k]`).
    pub fn morphism_to(&self, dst: &ProjectiveSum, c: &ElementMatrix) -> Morphism {
        let f = self.rep.field();
        let alg = self.algebra();
        let comps = (0..self.coords.len())
            .map(|t| {
                let mut m = Matrix::zeros(f, dst.rep.dim(t), self.rep.dim(t));
                for (col, &(k, b)) in self.coords[t].iter().enumerate() {
                    for (l, row) in c.iter().enumerate() {
                        for &(e, x) in &row[k] {
                            for &(b2, y) in alg.mult(e, b) {
                                let r = dst.pos[&(l, b2)];
                                m.set(r, col, f.add(m.get(r, col), f.mul(x, y)));
                            }
                        }
                    }
                }
                m
            })
            .collect();
        Morphism::new_unchecked(self.rep.clone(), dst.rep.clone(), comps)
    }

    /// Reads off the element matrix of a morphism `self -> dst`.
    pub fn elements_of(&self, g: &Morphism, dst: &ProjectiveSum) -> ElementMatrix {
        let mut c = vec![vec![Vec::new(); self.tops.len()]; dst.tops.len()];
        for k in 0..self.tops.len() {
            let (s, gi) = self.generator(k);
            let comp = g.comp(s);
            for (r, &(l, b)) in dst.coords[s].iter().enumerate() {
                let x = comp.get(r, gi);
                if x != 0 {
                    c[l][k].push((b, x));
                }
            }
        }
        c
    }
}

/// A projective cover `π: P ↠ M` with `ker π ⊆ rad P`.
pub fn projective_cover(m: &Representation) -> Result<(ProjectiveSum, Morphism)> {
    let rad = radical_bases(m);
    let mut tops = Vec::new();
    let mut gens = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let e = complement(r);
        for c in 0..e.cols() {
            tops.push(v);
            gens.push(e.col(c));
        }
    }
    let p = ProjectiveSum::new(m.algebra(), tops);
    let pi = p.map_generators(m, &gens);
    if !pi.is_epi() {
        return Err(Error::LiftFailed("top generators do not generate the module".into()));
    }
    Ok((p, pi))
}

/// An injective envelope `ι: M ↪ E`, the dual of a projective cover of `D M`.
pub fn injective_envelope(m: &Representation) -> Result<(Representation, Morphism)> {
    let (_, pi) = projective_cover(&m.dual())?;
    let iota = pi.dual();
    let e = iota.target().rebase(m.algebra())?;
    Ok((e.clone(), iota.with_endpoints(m, &e)))
}

pub fn is_projective(m: &Representation) -> Result<bool> {
    let (p, _) = projective_cover(m)?;
    Ok(p.rep.total_dim() == m.total_dim())
}

pub fn is_injective(m: &Representation) -> Result<bool> {
    is_projective(&m.dual())
}

/// `Ω^k M`, iterated kernels of projective covers.
pub fn syzygy(m: &Representation, k: usize) -> Result<Representation> {
    let mut cur = m.clone();
    for _ in 0..k {
        let (_, pi) = projective_cover(&cur)?;
        cur = kernel(&pi)?.0;
    }
    Ok(cur)
}

/// `Ω^{-k} M`, iterated cokernels of injective envelopes.
pub fn cosyzygy(m: &Representation, k: usize) -> Result<Representation> {
    let mut cur = m.clone();
    for _ in 0..k {
        let (_, iota) = injective_envelope(&cur)?;
        cur = cokernel(&iota)?.0;
    }
    Ok(cur)
}

/// A minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p0: ProjectiveSum,
    pub p1: ProjectiveSum,
    pub cover: Morphism,
    pub differential: Morphism,
    pub elements: ElementMatrix,
}

pub fn minimal_presentation(m: &Representation) -> Result<Presentation> {
    let (p0, cover) = projective_cover(m)?;
    let (k, incl) = kernel(&cover)?;
    let (p1, pi1) = projective_cover(&k)?;
    let differential = pi1.then(&incl)?;
    let elements = p1.elements_of(&differential, &p0);
    Ok(Presentation {
        p0,
        p1,
        cover,
        differential,
        elements,
    })
}

/// `Tr M` over the opposite algebra: the cokernel of `Hom(P0, A) -> Hom(P1, A)`
/// for a minimal presentation.
pub fn transpose(m: &Representation) -> Result<Representation> {
    let pres = minimal_presentation(m)?;
    let op = m.algebra().opposite_arc();
    let src = ProjectiveSum::new(&op, pres.p0.tops.clone());
    let dst = ProjectiveSum::new(&op, pres.p1.tops.clone());
    // Hom(P(i), A) = e_i A is P(i) over the opposite algebra, and the same
    // elements act, so the element matrix just transposes.
    let c = &pres.elements;
    let ct: ElementMatrix = (0..pres.p1.tops.len())
        .map(|k| (0..pres.p0.tops.len()).map(|l| c[l][k].clone()).collect())
        .collect();
    let g = src.morphism_to(&dst, &ct);
    Ok(cokernel(&g)?.0)
}

/// `τ M = D Tr M`.
pub fn tau(m: &Representation) -> Result<Representation> {
    transpose(m)?.dual().rebase(m.algebra())
}

/// `τ⁻¹ M = Tr D M`.
pub fn tau_inverse(m: &Representation) -> Result<Representation> {
    transpose(&m.dual())?.rebase(m.algebra())
}
