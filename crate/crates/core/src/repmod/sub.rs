use std::sync::atomic::{AtomicU64, Ordering};

use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::exactla::Matrix;

static SUB_QUOTIENT_CALLS: AtomicU64 = AtomicU64::new(0);
static RANK_NULLITY_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// `(calls, violations)` of the per-vertex rank-nullity check run by
/// [`sub_quotient`], [`kernel`] and [`cokernel`].
pub fn rank_nullity_stats() -> (u64, u64) {
    (
        SUB_QUOTIENT_CALLS.load(Ordering::Relaxed),
        RANK_NULLITY_VIOLATIONS.load(Ordering::Relaxed),
    )
}

/// Kernel, image and cokernel of a morphism with their structure maps.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub kernel: Representation,
    /// `ker f -> M`
    pub kernel_inclusion: Morphism,
    pub image: Representation,
    /// `M -> im f`
    pub coimage_projection: Morphism,
    /// `im f -> N`
    pub image_inclusion: Morphism,
    pub cokernel: Representation,
    /// `N -> coker f`
    pub cokernel_projection: Morphism,
}

/// Solves `basis * X = y` where `basis` has independent columns spanning a
/// space that contains the columns of `y`.
fn coords_in(basis: &Matrix, y: &Matrix) -> Result<Matrix> {
    basis
        .solve(y)?
        .ok_or_else(|| Error::InvalidModule("subspace is not closed under the arrow action".into()))
}

/// The submodule spanned at each vertex by the (independent) columns of
/// `bases[v]`, with its inclusion.
pub fn submodule(m: &Representation, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
    let arrows = m.algebra().quiver().arrows();
    let mut maps = Vec::with_capacity(arrows.len());
    for (k, a) in arrows.iter().enumerate() {
        let y = m.arrow_map(k).mul(&bases[a.source]);
        maps.push(coords_in(&bases[a.target], &y)?);
    }
    let dims = bases.iter().map(Matrix::cols).collect();
    let sub = Representation::new_unchecked(m.algebra().clone(), dims, maps);
    let incl = Morphism::new_unchecked(sub.clone(), m.clone(), bases.to_vec());
    Ok((sub, incl))
}

/// Extends the independent columns of `b` by standard basis vectors to a
/// basis of the whole space; returns the added columns.
pub(crate) fn complement(b: &Matrix) -> Matrix {
    let f = b.field();
    let n = b.rows();
    let mut cur = b.clone();
    let mut rank = cur.cols();
    let mut picked = Vec::new();
    for i in 0..n {
        if rank == n {
            break;
        }
        let mut e = Matrix::zeros(f, n, 1);
        e.set(i, 0, 1);
        let cand = cur.hstack(&e);
        if cand.rank() > rank {
            cur = cand;
            rank += 1;
            picked.push(i);
        }
    }
    Matrix::from_fn(f, n, picked.len(), |r, c| u64::from(r == picked[c]))
}

/// The quotient by the submodule spanned by `bases`, with its projection.
pub fn quotient(m: &Representation, bases: &[Matrix]) -> Result<(Representation, Morphism)> {
    let nv = m.dims().len();
    let mut proj = Vec::with_capacity(nv);
    let mut lifts = Vec::with_capacity(nv);
    for b in bases.iter().take(nv) {
        let e = complement(b);
        let full = b.hstack(&e);
        let inv = full
            .inverse()
            .ok_or_else(|| Error::InvalidModule("subspace basis is not independent".into()))?;
        proj.push(inv.block(b.cols(), 0, e.cols(), inv.cols()));
        lifts.push(e);
    }
    let arrows = m.algebra().quiver().arrows();
    let maps = arrows
        .iter()
        .enumerate()
        .map(|(k, a)| proj[a.target].mul(&m.arrow_map(k).mul(&lifts[a.source])))
        .collect();
    let dims = lifts.iter().map(Matrix::cols).collect();
    let q = Representation::new_unchecked(m.algebra().clone(), dims, maps);
    let pi = Morphism::new_unchecked(m.clone(), q.clone(), proj);
    Ok((q, pi))
}

fn column_kernel(a: &Matrix) -> Matrix {
    a.kernel_basis().transpose()
}

/// Per-vertex kernel and image bases of `f`, checking rank-nullity.
fn kernels_and_images(f: &Morphism) -> (Vec<Matrix>, Vec<Matrix>) {
    SUB_QUOTIENT_CALLS.fetch_add(1, Ordering::Relaxed);
    let m = f.source();
    let mut kers = Vec::with_capacity(m.dims().len());
    let mut ims = Vec::with_capacity(m.dims().len());
    for (v, c) in f.comps().iter().enumerate() {
        let k = column_kernel(c);
        let i = c.column_space();
        if k.cols() + i.cols() != m.dim(v) {
            RANK_NULLITY_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        }
        kers.push(k);
        ims.push(i);
    }
    (kers, ims)
}

pub fn sub_quotient(f: &Morphism) -> Result<SubQuotient> {
    let (m, n) = (f.source(), f.target());
    let nv = m.dims().len();
    let (kers, ims) = kernels_and_images(f);
    let (kernel, kernel_inclusion) = submodule(m, &kers)?;
    let (image, image_inclusion) = submodule(n, &ims)?;
    let coim: Vec<Matrix> = (0..nv)
        .map(|v| coords_in(&ims[v], f.comp(v)))
        .collect::<Result<_>>()?;
    let coimage_projection = Morphism::new_unchecked(m.clone(), image.clone(), coim);
    let (cokernel, cokernel_projection) = quotient(n, &ims)?;
    Ok(SubQuotient {
        kernel,
        kernel_inclusion,
        image,
        coimage_projection,
        image_inclusion,
        cokernel,
        cokernel_projection,
    })
}

pub fn kernel(f: &Morphism) -> Result<(Representation, Morphism)> {
    let (kers, _) = kernels_and_images(f);
    submodule(f.source(), &kers)
}

pub fn cokernel(f: &Morphism) -> Result<(Representation, Morphism)> {
    let (_, ims) = kernels_and_images(f);
    quotient(f.target(), &ims)
}

/// Radical, socle and top with their canonical maps.
#[derive(Clone, Debug)]
pub struct RadicalSocleTop {
    pub radical: Representation,
    pub radical_inclusion: Morphism,
    pub socle: Representation,
    pub socle_inclusion: Morphism,
    pub top: Representation,
    pub top_projection: Morphism,
}

/// Per-vertex bases (columns) of `rad M`.
pub(crate) fn radical_bases(m: &Representation) -> Vec<Matrix> {
    let fld = m.field();
    let arrows = m.algebra().quiver().arrows();
    (0..m.dims().len())
        .map(|j| {
            let mut acc = Matrix::zeros(fld, m.dim(j), 0);
            for (k, a) in arrows.iter().enumerate() {
                if a.target == j {
                    acc = acc.hstack(m.arrow_map(k));
                }
            }
            acc.column_space()
        })
        .collect()
}

pub fn radical_socle_top(m: &Representation) -> Result<RadicalSocleTop> {
    let fld = m.field();
    let arrows = m.algebra().quiver().arrows();
    let rad = radical_bases(m);
    let soc: Vec<Matrix> = (0..m.dims().len())
        .map(|i| {
            let mut stacked = Matrix::zeros(fld, 0, m.dim(i));
            for (k, a) in arrows.iter().enumerate() {
                if a.source == i {
                    stacked = stacked.vstack(m.arrow_map(k));
                }
            }
            column_kernel(&stacked)
        })
        .collect();
    let (radical, radical_inclusion) = submodule(m, &rad)?;
    let (socle, socle_inclusion) = submodule(m, &soc)?;
    let (top, top_projection) = quotient(m, &rad)?;
    Ok(RadicalSocleTop {
        radical,
        radical_inclusion,
        socle,
        socle_inclusion,
        top,
        top_projection,
    })
}

/// The submodule generated by the given elements (`(vertex, vector)` pairs).
pub fn generated_submodule(
    m: &Representation,
    gens: &[(usize, Vec<u64>)],
) -> Result<(Representation, Morphism)> {
    let fld = m.field();
    let alg = m.algebra();
    let nv = m.dims().len();
    let mut spans: Vec<Matrix> = (0..nv).map(|v| Matrix::zeros(fld, m.dim(v), 0)).collect();
    for (v, x) in gens {
        let col = Matrix::column(fld, x);
        for t in 0..nv {
            for &b in alg.paths_between(*v, t) {
                let img = m.basis_action(b).mul(&col);
                spans[t] = spans[t].hstack(&img);
            }
        }
    }
    let bases: Vec<Matrix> = spans.iter().map(Matrix::column_space).collect();
    submodule(m, &bases)
}

/// Is `f` a split mono, i.e. does some `g` satisfy `g ∘ f = id`? Checked by
/// linear algebra on `Hom(N, M)`.
pub fn is_split_mono(f: &Morphism) -> Result<bool> {
    let basis = super::hom_basis(f.target(), f.source())?;
    let fld = f.source().field();
    let id = Morphism::identity(f.source()).flatten();
    let cols: Vec<Vec<u64>> = basis.iter().map(|g| f.then(g).map(|c| c.flatten())).collect::<Result<_>>()?;
    let a = Matrix::from_fn(fld, id.len(), cols.len(), |r, c| cols[c][r]);
    let b = Matrix::column(fld, &id);
    Ok(a.solve(&b)?.is_some())
}
