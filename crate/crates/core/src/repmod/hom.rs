use super::{Morphism, Representation};
use crate::error::Result;
use crate::exactla::Matrix;

/// The intertwining system `f_j M_a - N_a f_i = 0` as a matrix whose columns
/// index the entries of `(f_v)_v`, laid out as in [`Morphism::flatten`].
fn hom_system(m: &Representation, n: &Representation) -> Matrix {
    let f = m.field();
    let nv = m.dims().len();
    let mut var_offset = vec![0usize; nv + 1];
    for v in 0..nv {
        var_offset[v + 1] = var_offset[v] + n.dim(v) * m.dim(v);
    }
    let nvars = var_offset[nv];
    let arrows = m.algebra().quiver().arrows();
    let neqs: usize = arrows.iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut sys = Matrix::zeros(f, neqs, nvars);
    let mut row0 = 0;
    for (k, a) in arrows.iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let (ma, na) = (m.arrow_map(k), n.arrow_map(k));
        let (di, dj) = (m.dim(i), m.dim(j));
        let (ei, ej) = (n.dim(i), n.dim(j));
        // Equation (r, c), r < ej, c < di.
        for r in 0..ej {
            for c in 0..di {
                let row = row0 + r * di + c;
                // + Σ_k f_j[r, k] M_a[k, c]
                for kk in 0..dj {
                    let v = ma.get(kk, c);
                    if v != 0 {
                        let col = var_offset[j] + r * dj + kk;
                        sys.set(row, col, f.add(sys.get(row, col), v));
                    }
                }
                // - Σ_k N_a[r, k] f_i[k, c]
                for kk in 0..ei {
                    let v = na.get(r, kk);
                    if v != 0 {
                        let col = var_offset[i] + kk * di + c;
                        sys.set(row, col, f.sub(sys.get(row, col), v));
                    }
                }
            }
        }
        row0 += ej * di;
    }
    sys
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    m.same_algebra(n)?;
    let sys = hom_system(m, n);
    let ker = sys.kernel_basis();
    Ok((0..ker.rows())
        .map(|r| Morphism::unflatten(m, n, ker.row(r)))
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    m.same_algebra(n)?;
    let sys = hom_system(m, n);
    Ok(sys.cols() - sys.rank())
}

/// Coordinates of morphisms as rows of a matrix (one row per morphism).
pub(crate) fn coordinate_rows(maps: &[Morphism], len: usize, field: crate::PrimeField) -> Matrix {
    let data: Vec<u64> = maps.iter().flat_map(|g| g.flatten()).collect();
    Matrix::from_vec(field, maps.len(), len, data)
}

/// Number of `Hom` coordinates between modules of these shapes.
pub(crate) fn hom_len(m: &Representation, n: &Representation) -> usize {
    m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum()
}
