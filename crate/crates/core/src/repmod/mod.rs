//! Finite-dimensional modules as quiver representations, and the module
//! category operations built on them.
//!
//! A representation assigns a space `k^{d_i}` to each vertex and, to each
//! arrow `a: i -> j`, a `d_j x d_i` matrix acting on column vectors. A path
//! `a*b` acts by `M_b * M_a`.

mod duality;
mod endo;
mod hom;
mod io;
mod proj;
mod random;
mod sub;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Path};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};

pub use endo::{decompose, end_algebra, is_indecomposable, is_isomorphic, Decomposition, EndAlgebra};
pub use hom::{hom_basis, hom_dim};
pub use io::{read_module, write_module};
pub use proj::{
    cosyzygy, injective_envelope, is_injective, is_projective, minimal_presentation,
    projective_cover, syzygy, tau, tau_inverse, transpose, ElementMatrix, Presentation,
    ProjectiveSum,
};
pub use random::{random_module, random_quotient_of_projectives};
pub use sub::{
    cokernel, generated_submodule, is_split_mono, kernel, quotient, radical_socle_top,
    rank_nullity_stats, sub_quotient, submodule, RadicalSocleTop, SubQuotient,
};

/// A module over a bound quiver algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A relation (or nilpotency witness) that does not vanish on a module.
#[derive(Clone, Debug)]
pub struct Violation {
    pub relation: String,
    pub source: usize,
    pub target: usize,
    pub residual: Matrix,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation({} dims {:?})", self.alg.name(), self.dims)
    }
}

impl Representation {
    /// Builds and validates a representation.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let m = Self::from_parts(alg, dims, maps)?;
        if let Some(v) = m.validate().first() {
            return Err(Error::InvalidModule(format!(
                "relation {} does not vanish",
                v.relation
            )));
        }
        Ok(m)
    }

    /// Shape checks only; relations are not evaluated.
    pub fn from_parts(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() {
            return Err(Error::InvalidModule(format!(
                "expected {} dimensions, got {}",
                q.vertex_count(),
                dims.len()
            )));
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::InvalidModule(format!(
                "expected {} arrow maps, got {}",
                q.arrows().len(),
                maps.len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidModule(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::InvalidModule("matrix over the wrong field".into()));
            }
        }
        Ok(Representation { alg, dims, maps })
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert!(Self::from_parts(alg.clone(), dims.clone(), maps.clone()).is_ok());
        Representation { alg, dims, maps }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let f = alg.field();
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Representation {
            alg: alg.clone(),
            dims: vec![0; alg.vertex_count()],
            maps,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// Offset of vertex `v` in the concatenated total space.
    pub fn offset(&self, v: usize) -> usize {
        self.dims[..v].iter().sum()
    }

    pub fn same_algebra(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// The action of a path, `d_target x d_source`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let f = self.field();
        let mut acc = Matrix::identity(f, self.dims[p.source]);
        for &a in &p.arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// The action of algebra basis element `i`.
    pub fn basis_action(&self, i: usize) -> Matrix {
        self.path_matrix(&self.alg.basis()[i])
    }

    /// The action of a sparse element supported on paths `s -> t`.
    pub fn element_action(&self, x: &[(usize, u64)], s: usize, t: usize) -> Matrix {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dims[t], self.dims[s]);
        for &(i, c) in x {
            let b = &self.alg.basis()[i];
            debug_assert_eq!((b.source, b.target), (s, t));
            out.add_scaled(&self.path_matrix(b), c);
        }
        out
    }

    /// Every element of the defining ideal that acts nonzero.
    pub fn validate(&self) -> Vec<Violation> {
        let f = self.field();
        let mut out = Vec::new();
        for row in self.alg.ideal_rows() {
            let Some((_, first)) = row.first() else { continue };
            let (s, t) = (first.source, first.target);
            let mut acc = Matrix::zeros(f, self.dims[t], self.dims[s]);
            for (c, p) in row {
                acc.add_scaled(&self.path_matrix(p), *c);
            }
            if !acc.is_zero() {
                let rel = row
                    .iter()
                    .map(|(c, p)| format!("{}*{}", c, p.display(self.alg.quiver())))
                    .collect::<Vec<_>>()
                    .join(" + ");
                out.push(Violation {
                    relation: rel,
                    source: s,
                    target: t,
                    residual: acc,
                });
            }
        }
        out
    }

    pub fn simple(alg: &Arc<Algebra>, i: usize) -> Self {
        let f = alg.field();
        let mut dims = vec![0; alg.vertex_count()];
        dims[i] = 1;
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Representation {
            alg: alg.clone(),
            dims,
            maps,
        }
    }

    /// `P(i)`: paths starting at `i`, arrows acting by appending.
    pub fn projective(alg: &Arc<Algebra>, i: usize) -> Self {
        ProjectiveSum::new(alg, vec![i]).rep
    }

    /// `I(i) = D(P(i) over the opposite algebra)`.
    pub fn injective(alg: &Arc<Algebra>, i: usize) -> Self {
        Representation::projective(&alg.opposite_arc(), i).dual()
    }

    /// The regular module `⊕ P(i)`.
    pub fn regular(alg: &Arc<Algebra>) -> Self {
        ProjectiveSum::new(alg, (0..alg.vertex_count()).collect()).rep
    }

    /// `D(Λ) = ⊕ I(i)`.
    pub fn dual_regular(alg: &Arc<Algebra>) -> Self {
        Representation::regular(&alg.opposite_arc()).dual()
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.same_algebra(other)?;
        let q = self.alg.quiver();
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = (0..q.arrows().len())
            .map(|a| self.maps[a].block_diag(&other.maps[a]))
            .collect();
        Ok(Representation {
            alg: self.alg.clone(),
            dims,
            maps,
        })
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum_with_maps(&self, other: &Representation) -> Result<DirectSum> {
        let sum = self.direct_sum(other)?;
        let f = self.field();
        let n = self.alg.vertex_count();
        let mut inj = (Vec::new(), Vec::new());
        let mut proj = (Vec::new(), Vec::new());
        for v in 0..n {
            let (a, b) = (self.dims[v], other.dims[v]);
            let ia = Matrix::identity(f, a).vstack(&Matrix::zeros(f, b, a));
            let ib = Matrix::zeros(f, a, b).vstack(&Matrix::identity(f, b));
            proj.0.push(ia.transpose());
            proj.1.push(ib.transpose());
            inj.0.push(ia);
            inj.1.push(ib);
        }
        Ok(DirectSum {
            inj: [
                Morphism::new_unchecked(self.clone(), sum.clone(), inj.0),
                Morphism::new_unchecked(other.clone(), sum.clone(), inj.1),
            ],
            proj: [
                Morphism::new_unchecked(sum.clone(), self.clone(), proj.0),
                Morphism::new_unchecked(sum.clone(), other.clone(), proj.1),
            ],
            sum,
        })
    }

    pub fn direct_sum_all(alg: &Arc<Algebra>, parts: &[Representation]) -> Result<Representation> {
        let mut acc = Representation::zero(alg);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> Representation {
        let mut acc = Representation::zero(&self.alg);
        for _ in 0..n {
            acc = acc.direct_sum(self).expect("same algebra");
        }
        acc
    }

    /// Moves the module to a structurally equal algebra handle.
    pub fn rebase(&self, alg: &Arc<Algebra>) -> Result<Representation> {
        if *self.alg != **alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Representation {
            alg: alg.clone(),
            dims: self.dims.clone(),
            maps: self.maps.clone(),
        })
    }

    /// Base change: `g_v` invertible `d_v x d_v`, new maps `g_j M_a g_i^{-1}`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Representation> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::InvalidModule("singular base change".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| g[a.target].mul(&self.maps[k]).mul(&inv[a.source]))
            .collect();
        Ok(Representation {
            alg: self.alg.clone(),
            dims: self.dims.clone(),
            maps,
        })
    }
}

/// A direct sum `M ⊕ N` with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Representation,
    pub inj: [Morphism; 2],
    pub proj: [Morphism; 2],
}

/// A module homomorphism, given by one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    comps: Vec<Matrix>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism({:?} -> {:?})",
            self.source.dims, self.target.dims
        )
    }
}

impl Morphism {
    /// Builds a morphism, checking shapes and the intertwining equations.
    pub fn new(source: Representation, target: Representation, comps: Vec<Matrix>) -> Result<Self> {
        source.same_algebra(&target)?;
        let n = source.alg.vertex_count();
        if comps.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} components, got {}",
                comps.len()
            )));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::DimensionMismatch(format!(
                    "component at vertex {} has shape {:?}",
                    v + 1,
                    c.shape()
                )));
            }
        }
        let m = Morphism {
            source,
            target,
            comps,
        };
        if !m.intertwines() {
            return Err(Error::InvalidModule("components do not intertwine the arrow maps".into()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, comps: Vec<Matrix>) -> Self {
        let m = Morphism {
            source,
            target,
            comps,
        };
        debug_assert!(m.intertwines());
        m
    }

    pub fn intertwines(&self) -> bool {
        self.source
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(k, a)| {
                self.comps[a.target].mul(&self.source.maps[k])
                    == self.target.maps[k].mul(&self.comps[a.source])
            })
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let f = source.field();
        let comps = (0..source.dims.len())
            .map(|v| Matrix::zeros(f, target.dims[v], source.dims[v]))
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    pub fn identity(m: &Representation) -> Self {
        let f = m.field();
        let comps = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
        Morphism {
            source: m.clone(),
            target: m.clone(),
            comps,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.target.dims != next.source.dims {
            return Err(Error::DimensionMismatch("composition of incompatible morphisms".into()));
        }
        let comps = self
            .comps
            .iter()
            .zip(&next.comps)
            .map(|(a, b)| b.mul(a))
            .collect();
        Ok(Morphism {
            source: self.source.clone(),
            target: next.target.clone(),
            comps,
        })
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.combine(other, self.source.field().neg(1))
    }

    fn combine(&self, other: &Morphism, c: u64) -> Morphism {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| {
                let mut a = a.clone();
                a.add_scaled(b, c);
                a
            })
            .collect();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn scale(&self, c: u64) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// `Σ c_i f_i` over morphisms with a common source and target.
    pub fn linear_combination(source: &Representation, target: &Representation, terms: &[(u64, &Morphism)]) -> Morphism {
        let mut acc = Morphism::zero(source, target);
        for (c, f) in terms {
            if *c != 0 {
                acc = acc.combine(f, *c);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(Matrix::rank).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_mono()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let comps = self
            .comps
            .iter()
            .map(|c| c.inverse())
            .collect::<Option<Vec<_>>>()?;
        Some(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            comps,
        })
    }

    /// Entries of all components, concatenated row-major. Used as coordinates
    /// in Hom spaces.
    pub fn flatten(&self) -> Vec<u64> {
        self.comps.iter().flat_map(|c| c.data().iter().copied()).collect()
    }

    /// Inverse of [`Morphism::flatten`].
    pub fn unflatten(source: &Representation, target: &Representation, data: &[u64]) -> Morphism {
        let f = source.field();
        let mut pos = 0;
        let comps = (0..source.dims.len())
            .map(|v| {
                let (r, c) = (target.dims[v], source.dims[v]);
                let m = Matrix::from_vec(f, r, c, data[pos..pos + r * c].to_vec());
                pos += r * c;
                m
            })
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self) -> Matrix {
        let f = self.source.field();
        let mut m = Matrix::zeros(f, self.target.total_dim(), self.source.total_dim());
        let (mut r, mut c) = (0, 0);
        for comp in &self.comps {
            m.set_block(r, c, comp);
            r += comp.rows();
            c += comp.cols();
        }
        m
    }

    /// The morphism `(f, g): M -> N ⊕ N'` into a direct sum.
    pub fn pair(&self, other: &Morphism) -> Result<Morphism> {
        if self.source.dims != other.source.dims {
            return Err(Error::DimensionMismatch("pair needs a common source".into()));
        }
        let target = self.target.direct_sum(&other.target)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.vstack(b)).collect();
        Ok(Morphism {
            source: self.source.clone(),
            target,
            comps,
        })
    }

    /// `[f g]: M ⊕ M' -> N` out of a direct sum.
    pub fn copair(&self, other: &Morphism) -> Result<Morphism> {
        if self.target.dims != other.target.dims {
            return Err(Error::DimensionMismatch("copair needs a common target".into()));
        }
        let source = self.source.direct_sum(&other.source)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.hstack(b)).collect();
        Ok(Morphism {
            source,
            target: self.target.clone(),
            comps,
        })
    }

    /// `f ⊕ g`.
    pub fn direct_sum(&self, other: &Morphism) -> Result<Morphism> {
        let source = self.source.direct_sum(&other.source)?;
        let target = self.target.direct_sum(&other.target)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Morphism {
            source,
            target,
            comps,
        })
    }

    /// Same components, relabelled endpoints (which must have equal dims).
    pub(crate) fn with_endpoints(&self, source: &Representation, target: &Representation) -> Morphism {
        debug_assert_eq!(source.dims, self.source.dims);
        debug_assert_eq!(target.dims, self.target.dims);
        Morphism {
            source: source.clone(),
            target: target.clone(),
            comps: self.comps.clone(),
        }
    }
}

#[cfg(test)]
mod tests;
