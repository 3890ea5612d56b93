//! Brute-force oracles. They enumerate over tiny fields or use the interval
//! combinatorics of linear A_n, and share no algorithm with the library.

#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use approxdim::algebra::{Algebra, Path, PathExpr, Quiver};
use approxdim::{PrimeField, Representation};

pub type Mat = Vec<Vec<u64>>;

/// Algebras rebuilt over a small field so that enumeration is feasible.
pub fn a3_over(p: u64) -> Arc<Algebra> {
    let q = Quiver::from_edges(3, &[("a", 0, 1), ("b", 1, 2)]).unwrap();
    Arc::new(Algebra::build("a3", q, vec![], PrimeField::new(p).unwrap(), 30).unwrap())
}

pub fn dual_numbers_over(p: u64) -> Arc<Algebra> {
    let q = Quiver::from_edges(1, &[("x", 0, 0)]).unwrap();
    let rel = PathExpr::path(Path::from_arrows(&q, &[0, 0]).unwrap());
    Arc::new(Algebra::build("dual", q, vec![rel], PrimeField::new(p).unwrap(), 30).unwrap())
}

pub fn nakayama_over(n: usize, l: usize, p: u64) -> Arc<Algebra> {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let edges: Vec<(&str, usize, usize)> =
        names.iter().enumerate().map(|(i, s)| (s.as_str(), i, (i + 1) % n)).collect();
    let q = Quiver::from_edges(n, &edges).unwrap();
    let rels = (0..n)
        .map(|s| PathExpr::path(Path::from_arrows(&q, &(0..l).map(|k| (s + k) % n).collect::<Vec<_>>()).unwrap()))
        .collect();
    Arc::new(Algebra::build("nak", q, rels, PrimeField::new(p).unwrap(), 30).unwrap())
}

fn entries(m: &approxdim::Matrix) -> Mat {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect()
}

/// `a` is `rows x inner`, `b` is `inner x cols`.
fn mul(a: &Mat, b: &Mat, (rows, inner, cols): (usize, usize, usize), p: u64) -> Mat {
    let mut out = vec![vec![0; cols]; rows];
    for i in 0..rows {
        for j in 0..cols {
            let mut s = 0;
            for k in 0..inner {
                s = (s + a[i][k] * b[k][j]) % p;
            }
            out[i][j] = s;
        }
    }
    out
}

/// Every tuple of per-vertex matrices `N_v x M_v` over GF(p), as flat
/// coordinate vectors.
fn all_tuples(m: &Representation, n: &Representation, p: u64) -> Vec<Vec<u64>> {
    let len: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    assert!((p as f64).powi(len as i32) <= 2.0e6, "enumeration too large");
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| (0..p).map(move |x| {
                let mut w = v.clone();
                w.push(x);
                w
            }))
            .collect();
    }
    out
}

fn unpack(flat: &[u64], m: &Representation, n: &Representation) -> Vec<Mat> {
    let mut off = 0;
    (0..m.dims().len())
        .map(|v| {
            let (r, c) = (n.dim(v), m.dim(v));
            let mat = (0..r).map(|i| (0..c).map(|j| flat[off + i * c + j]).collect()).collect();
            off += r * c;
            mat
        })
        .collect()
}

fn intertwines(f: &[Mat], m: &Representation, n: &Representation, p: u64) -> bool {
    let q = m.algebra().quiver();
    q.arrows().iter().enumerate().all(|(ai, a)| {
        let ma = entries(m.arrow_map(ai));
        let na = entries(n.arrow_map(ai));
        let (s, t) = (a.source, a.target);
        let lhs = mul(&na, &f[s], (n.dim(t), n.dim(s), m.dim(s)), p);
        let rhs = mul(&f[t], &ma, (n.dim(t), m.dim(t), m.dim(s)), p);
        lhs == rhs
    })
}

fn log_p(count: usize, p: u64) -> usize {
    let mut d = 0;
    let mut c = 1usize;
    while c < count {
        c *= p as usize;
        d += 1;
    }
    assert_eq!(c, count, "count is not a power of p");
    d
}

/// All module homomorphisms `M -> N`, by enumeration.
pub fn homs(m: &Representation, n: &Representation) -> Vec<Vec<Mat>> {
    let p = m.field().p();
    all_tuples(m, n, p)
        .into_iter()
        .map(|t| unpack(&t, m, n))
        .filter(|f| intertwines(f, m, n, p))
        .collect()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    log_p(homs(m, n).len(), m.field().p())
}

/// `dim Ext¹(M, N)` for a quiver without relations: the cokernel of
/// `(f_v) ↦ (N_a f_s − f_t M_a)_a`, with the image found by enumeration.
pub fn ext1_hereditary(m: &Representation, n: &Representation) -> usize {
    let p = m.field().p();
    let q = m.algebra().quiver();
    assert!(m.algebra().relations().is_empty());
    let mut image = HashSet::new();
    for t in all_tuples(m, n, p) {
        let f = unpack(&t, m, n);
        let mut out = Vec::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            let na = entries(n.arrow_map(ai));
            let ma = entries(m.arrow_map(ai));
            let (s, t) = (a.source, a.target);
            let l = mul(&na, &f[s], (n.dim(t), n.dim(s), m.dim(s)), p);
            let r = mul(&f[t], &ma, (n.dim(t), m.dim(t), m.dim(s)), p);
            for (lr, rr) in l.iter().zip(&r) {
                for (x, y) in lr.iter().zip(rr) {
                    out.push((x + p - y) % p);
                }
            }
        }
        image.insert(out);
    }
    let target: usize = q.arrows().iter().map(|a| m.dim(a.source) * n.dim(a.target)).sum();
    target - log_p(image.len(), p)
}

/// `dim Hom(M, N) − dim` of the maps factoring through `via`, by enumeration
/// of all composites `M -> via -> N`.
pub fn stable_hom_dim_through(m: &Representation, n: &Representation, via: &Representation) -> usize {
    let p = m.field().p();
    let total = hom_dim(m, n);
    let fs = homs(m, via);
    let gs = homs(via, n);
    let mut comps = HashSet::new();
    for f in &fs {
        for g in &gs {
            let c: Vec<Mat> = (0..m.dims().len())
                .map(|v| mul(&g[v], &f[v], (n.dim(v), via.dim(v), m.dim(v)), p))
                .collect();
            comps.insert(c);
        }
    }
    // The composites span a subspace; with all of Hom(M, via) and Hom(via, N)
    // enumerated the set of composites is closed under sums only through
    // `via^k`, so take the span.
    total - span_dim(comps.into_iter().map(|c| c.concat().concat()).collect(), p)
}

fn span_dim(vs: Vec<Vec<u64>>, p: u64) -> usize {
    // Grow a span by enumeration: keep adding vectors not yet reachable.
    let mut span: HashSet<Vec<u64>> = HashSet::new();
    let len = vs.first().map_or(0, Vec::len);
    span.insert(vec![0; len]);
    let mut dim = 0;
    for v in vs {
        if span.contains(&v) {
            continue;
        }
        let old: Vec<Vec<u64>> = span.iter().cloned().collect();
        for s in old {
            for c in 1..p {
                span.insert(s.iter().zip(&v).map(|(a, b)| (a + c * b) % p).collect());
            }
        }
        dim += 1;
    }
    dim
}

/// Interval modules `[i, j]` (1-based, `i <= j`) of the linear quiver
/// `1 -> 2 -> ... -> n` without relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval(pub usize, pub usize);

/// `P(i)` is spanned by paths starting at `i`, so it is `[i, n]`; `I(i)` is `[1, i]`.
pub fn projective(i: usize, n: usize) -> Interval {
    Interval(i, n)
}

pub fn injective(i: usize) -> Interval {
    Interval(1, i)
}

/// Injective envelope of `[i, j]` is `I(j) = [1, j]`, with cokernel `[1, i-1]`.
pub fn envelope(m: Interval) -> (Interval, Option<Interval>) {
    (Interval(1, m.1), if m.0 > 1 { Some(Interval(1, m.0 - 1)) } else { None })
}

pub fn is_projective(m: Interval, n: usize) -> bool {
    m.1 == n
}

/// Dominant dimension of a direct sum of intervals by the minimal injective
/// coresolution; `None` means infinite within `cutoff`.
pub fn interval_domdim(ms: &[Interval], n: usize, cutoff: usize) -> Option<usize> {
    let mut cur: Vec<Interval> = ms.to_vec();
    for k in 0..cutoff {
        if cur.is_empty() {
            return None;
        }
        let mut next = Vec::new();
        for m in &cur {
            let (e, c) = envelope(*m);
            if !is_projective(e, n) {
                return Some(k);
            }
            next.extend(c);
        }
        cur = next;
    }
    None
}

/// `Hom([a,b], [c,d]) ≠ 0` iff `c <= a <= d <= b`.
pub fn interval_hom(x: Interval, y: Interval) -> usize {
    usize::from(y.0 <= x.0 && x.0 <= y.1 && y.1 <= x.1)
}

/// Euler form of linear A_n: `dim Hom − dim Ext¹`.
pub fn euler_a(x: Interval, y: Interval) -> i64 {
    let dv = |m: Interval, v: usize| i64::from(m.0 <= v && v <= m.1);
    let n = x.1.max(y.1);
    let verts: i64 = (1..=n).map(|v| dv(x, v) * dv(y, v)).sum();
    let arrows: i64 = (1..n).map(|v| dv(x, v) * dv(y, v + 1)).sum();
    verts - arrows
}

/// `dim Ext¹` of intervals from the Euler form and the Hom rule.
pub fn interval_ext1(x: Interval, y: Interval) -> usize {
    (interval_hom(x, y) as i64 - euler_a(x, y)) as usize
}

/// l.app of a sum of intervals relative to `ω`, for ω a sum of injective
/// intervals (so the minimal left approximation is an injective envelope
/// restricted to summands reachable in add ω). Returns `None` for infinity.
pub fn interval_lapp_injective(ms: &[Interval], omega: &[Interval], cutoff: usize) -> Option<usize> {
    let mut cur = ms.to_vec();
    if cur.is_empty() {
        return None;
    }
    for k in 0..cutoff {
        if cur.is_empty() {
            return None;
        }
        let mut next = Vec::new();
        for m in &cur {
            let (e, c) = envelope(*m);
            if !omega.contains(&e) {
                return Some(k);
            }
            next.extend(c);
        }
        cur = next;
    }
    Some(cutoff)
}
