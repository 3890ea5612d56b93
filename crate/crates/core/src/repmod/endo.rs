use std::sync::OnceLock;

use rand::Rng;

use super::hom::{coordinate_rows, hom_basis, hom_len};
use super::sub::{kernel, submodule};
use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::exactla::poly::{split, Split};
use crate::exactla::Matrix;

/// Retry budget for randomized splitting before giving up.
const SPLIT_ATTEMPTS: usize = 64;

/// `End(M)` with a basis, the radical, and lazily computed structure constants.
#[derive(Debug)]
pub struct EndAlgebra {
    pub module: Representation,
    pub basis: Vec<Morphism>,
    /// Rows are coordinate vectors (in `basis`) spanning the radical.
    pub radical: Matrix,
    coords: Matrix,
    constants: OnceLock<Vec<Vec<Vec<u64>>>>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.rows()
    }

    /// `dim End(M) / rad End(M)`.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    /// Coordinates of an endomorphism in `basis`.
    pub fn coordinates(&self, f: &Morphism) -> Result<Vec<u64>> {
        let fld = self.module.field();
        let b = Matrix::column(fld, &f.flatten());
        let x = self
            .coords
            .transpose()
            .solve(&b)?
            .ok_or_else(|| Error::InvalidModule("not an endomorphism".into()))?;
        Ok(x.col(0))
    }

    pub fn in_radical(&self, f: &Morphism) -> Result<bool> {
        let c = self.coordinates(f)?;
        let fld = self.module.field();
        let stacked = self.radical.vstack(&Matrix::row_vector(fld, &c));
        Ok(stacked.rank() == self.radical.rank())
    }

    /// `constants[i][j]` = coordinates of `basis[i] ∘ basis[j]`.
    pub fn structure_constants(&self) -> &Vec<Vec<Vec<u64>>> {
        self.constants.get_or_init(|| {
            let fld = self.module.field();
            let d = self.dim();
            let len = self.coords.cols();
            let mut rhs = Matrix::zeros(fld, len, d * d);
            for i in 0..d {
                for j in 0..d {
                    let prod = self.basis[j].then(&self.basis[i]).expect("endomorphisms compose");
                    for (r, x) in prod.flatten().into_iter().enumerate() {
                        rhs.set(r, i * d + j, x);
                    }
                }
            }
            let sol = self
                .coords
                .transpose()
                .solve(&rhs)
                .expect("shapes agree")
                .expect("End(M) is closed under composition");
            (0..d)
                .map(|i| (0..d).map(|j| sol.col(i * d + j)).collect())
                .collect()
        })
    }
}

fn trace_of_product(a: &Morphism, b: &Morphism) -> u64 {
    let f = a.source().field();
    let mut acc = 0;
    for (x, y) in a.comps().iter().zip(b.comps()) {
        let n = x.rows();
        for r in 0..n {
            for c in 0..n {
                acc = f.add(acc, f.mul(x.get(r, c), y.get(c, r)));
            }
        }
    }
    acc
}

/// `End(M)`. The radical is the radical of the trace form `(x, y) ↦ tr_M(xy)`,
/// valid because `p > dim M`.
pub fn end_algebra(m: &Representation) -> Result<EndAlgebra> {
    let fld = m.field();
    let basis = hom_basis(m, m)?;
    let needed = m.total_dim().max(basis.len()) as u64;
    if fld.p() <= needed {
        return Err(Error::FieldTooSmall {
            p: fld.p(),
            needed,
        });
    }
    let d = basis.len();
    let gram = Matrix::from_fn(fld, d, d, |i, j| trace_of_product(&basis[i], &basis[j]));
    let radical = gram.kernel_basis();
    let coords = coordinate_rows(&basis, hom_len(m, m), fld);
    Ok(EndAlgebra {
        module: m.clone(),
        basis,
        radical,
        coords,
        constants: OnceLock::new(),
    })
}

fn random_endomorphism<R: Rng + ?Sized>(e: &EndAlgebra, rng: &mut R) -> Morphism {
    let p = e.module.field().p();
    let coeffs: Vec<u64> = (0..e.dim()).map(|_| rng.gen_range(0..p)).collect();
    let terms: Vec<(u64, &Morphism)> = coeffs.iter().copied().zip(&e.basis).collect();
    Morphism::linear_combination(&e.module, &e.module, &terms)
}

/// `g(ψ)` vertexwise, by Horner's rule.
fn eval_poly(g: &[u64], psi: &Morphism) -> Morphism {
    let fld = psi.source().field();
    let comps = psi
        .comps()
        .iter()
        .map(|x| {
            let n = x.rows();
            let mut acc = Matrix::zeros(fld, n, n);
            for &c in g.iter().rev() {
                acc = acc.mul(x);
                acc.add_scaled(&Matrix::identity(fld, n), c);
            }
            acc
        })
        .collect();
    Morphism::new_unchecked(psi.source().clone(), psi.target().clone(), comps)
}

/// `M = ker φ^N ⊕ im φ^N` for an endomorphism `φ`, `N = dim M`. Returns the
/// inclusions of both parts.
fn fitting_split(phi: &Morphism) -> Result<(Morphism, Morphism)> {
    let m = phi.source();
    let n = m.total_dim() as u64;
    let comps: Vec<Matrix> = phi.comps().iter().map(|x| x.pow(n)).collect();
    let power = Morphism::new_unchecked(m.clone(), m.clone(), comps);
    let (_, k_incl) = kernel(&power)?;
    let ims: Vec<Matrix> = power.comps().iter().map(Matrix::column_space).collect();
    let (_, i_incl) = submodule(m, &ims)?;
    Ok((k_incl, i_incl))
}

enum Step {
    Local,
    Split(Morphism, Morphism),
}

fn split_step<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<Step> {
    let e = end_algebra(m)?;
    let r = e.top_dim();
    if r == 1 {
        return Ok(Step::Local);
    }
    let fld = m.field();
    for _ in 0..SPLIT_ATTEMPTS {
        let psi = random_endomorphism(&e, rng);
        let chi = psi.total_matrix().charpoly();
        match split(fld, &chi, rng) {
            Split::Factor(g) => {
                let (a, b) = fitting_split(&eval_poly(&g, &psi))?;
                if a.source().is_zero() || b.source().is_zero() {
                    continue;
                }
                return Ok(Step::Split(a, b));
            }
            Split::Irreducible(f0) => {
                // ψ generates a field of degree deg f0 inside End/rad; if that
                // is everything, End/rad is a field and M is indecomposable.
                if f0.len() - 1 == r && e.in_radical(&eval_poly(&f0, &psi))? {
                    return Ok(Step::Local);
                }
            }
        }
    }
    Err(Error::RandomizationExhausted)
}

pub fn is_indecomposable<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(matches!(split_step(m, rng)?, Step::Local))
}

/// `M ≅ ⊕ parts`, with `inclusions[i]: parts[i] -> M` and
/// `projections[i]: M -> parts[i]`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parts: Vec<Representation>,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

impl Decomposition {
    /// The isomorphism `⊕ parts -> M`.
    pub fn iso(&self, m: &Representation) -> Result<Morphism> {
        let mut acc = Morphism::zero(&Representation::zero(m.algebra()), m);
        for inc in &self.inclusions {
            acc = acc.copair(inc)?;
        }
        Ok(acc)
    }
}

fn sort_key(m: &Representation) -> (usize, Vec<usize>, Vec<u64>) {
    (
        m.total_dim(),
        m.dims().to_vec(),
        m.maps().iter().flat_map(|x| x.data().iter().copied()).collect(),
    )
}

/// Krull–Schmidt decomposition by Fitting splittings of random endomorphisms.
pub fn decompose<R: Rng + ?Sized>(m: &Representation, rng: &mut R) -> Result<Decomposition> {
    let fld = m.field();
    let needed = (m.total_dim() * m.total_dim()) as u64;
    if fld.p() <= needed {
        return Err(Error::FieldTooSmall {
            p: fld.p(),
            needed,
        });
    }
    let mut out: Vec<(Representation, Morphism, Morphism)> = Vec::new();
    let mut stack = vec![(m.clone(), Morphism::identity(m), Morphism::identity(m))];
    while let Some((x, inc, proj)) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match split_step(&x, rng)? {
            Step::Local => out.push((x, inc, proj)),
            Step::Split(a, b) => {
                // Projections onto the two summands from the inverse of [a b].
                let sum = a.copair(&b)?;
                let inv = sum
                    .inverse()
                    .ok_or_else(|| Error::LiftFailed("Fitting parts do not span".into()))?;
                let ds = a.source().direct_sum_with_maps(b.source())?;
                let inv = inv.with_endpoints(&x, &ds.sum);
                let pa = inv.then(&ds.proj[0])?;
                let pb = inv.then(&ds.proj[1])?;
                stack.push((b.source().clone(), b.then(&inc)?, proj.then(&pb)?));
                stack.push((a.source().clone(), a.then(&inc)?, proj.then(&pa)?));
            }
        }
    }
    out.sort_by_key(|x| sort_key(&x.0));
    let mut d = Decomposition {
        parts: Vec::new(),
        inclusions: Vec::new(),
        projections: Vec::new(),
    };
    for (x, i, p) in out {
        d.parts.push(x);
        d.inclusions.push(i);
        d.projections.push(p);
    }
    Ok(d)
}

const ISO_TRIALS: usize = 8;

/// Two indecomposables are isomorphic iff some `g ∘ f` with `f`, `g` from
/// Hom bases is invertible (End of either side is local).
pub(crate) fn indecomposables_isomorphic(x: &Representation, y: &Representation) -> Result<bool> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let fs = hom_basis(x, y)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let gs = hom_basis(y, x)?;
    for f in &fs {
        for g in &gs {
            if f.then(g)?.is_iso() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn is_isomorphic<R: Rng + ?Sized>(m: &Representation, n: &Representation, rng: &mut R) -> Result<bool> {
    m.same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok(false);
    }
    let p = m.field().p();
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<u64> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
        let terms: Vec<(u64, &Morphism)> = coeffs.iter().copied().zip(&basis).collect();
        if Morphism::linear_combination(m, n, &terms).is_iso() {
            return Ok(true);
        }
    }
    let dm = decompose(m, rng)?;
    let dn = decompose(n, rng)?;
    multisets_isomorphic(&dm.parts, &dn.parts)
}

/// Matches two lists of indecomposables up to isomorphism.
pub(crate) fn multisets_isomorphic(a: &[Representation], b: &[Representation]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && indecomposables_isomorphic(x, y)? {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}
