//! Dense univariate polynomials over GF(p), coefficients low degree first.
//! Only what eigenvalue search and Fitting splittings need.

use rand::Rng;

use super::field::PrimeField;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn rem(f: PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = degree(m).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let lead_inv = f.inv(m[dm]);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let q = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &c) in m[..=dm].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(q, c));
        }
        r = trim(r);
    }
    r
}

fn mulmod(f: PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    rem(f, &out, m)
}

fn powmod(f: PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    acc
}

fn gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = f.inv(a[d]);
        for c in a.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    a
}

fn sub_poly(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(0),
                b.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

/// Some root of `poly` in GF(p), if one exists (Cantor-Zassenhaus splitting
/// of the product of its distinct linear factors).
pub fn find_root<R: Rng + ?Sized>(f: PrimeField, poly: &[u64], rng: &mut R) -> Option<u64> {
    let poly = trim(poly.to_vec());
    let d = degree(&poly)?;
    if d == 0 {
        return None;
    }
    let p = f.p();
    let xp = powmod(f, &[0, 1], p, &poly);
    let mut g = gcd(f, &poly, &sub_poly(f, &xp, &[0, 1]));
    loop {
        match degree(&g) {
            None | Some(0) => return None,
            Some(1) => return Some(f.neg(f.mul(g[0], f.inv(g[1])))),
            Some(dg) => {
                let a = rng.gen_range(0..p);
                let t = powmod(f, &[a, 1], (p - 1) / 2, &g);
                let h = gcd(f, &g, &sub_poly(f, &t, &[1]));
                if let Some(dh) = degree(&h) {
                    if dh > 0 && dh < dg {
                        g = h;
                    }
                }
            }
        }
    }
}

fn div_exact(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else {
        return Vec::new();
    };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![0u64; da - db + 1];
    let lead_inv = f.inv(b[db]);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for (i, &x) in b[..=db].iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, x));
        }
        r = trim(r);
    }
    trim(q)
}

fn monic(f: PrimeField, mut a: Vec<u64>) -> Vec<u64> {
    if let Some(d) = degree(&a) {
        let inv = f.inv(a[d]);
        for c in a.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    a
}

fn derivative(f: PrimeField, a: &[u64]) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, i as u64 % f.p()))
            .collect(),
    )
}

/// Outcome of looking for a nontrivial factor of the squarefree part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    /// The squarefree part is irreducible (monic); the input is a power of it.
    Irreducible(Vec<u64>),
    /// A monic factor of the squarefree part, of degree strictly between 0
    /// and the squarefree degree.
    Factor(Vec<u64>),
}

/// Finds a proper factor of the squarefree part of `poly`, which must have
/// positive degree below `p` (so the derivative test is valid).
pub fn split<R: Rng + ?Sized>(f: PrimeField, poly: &[u64], rng: &mut R) -> Split {
    let poly = trim(poly.to_vec());
    let d = degree(&poly).expect("zero polynomial");
    assert!(d > 0, "constant polynomial");
    let g = gcd(f, &poly, &derivative(f, &poly));
    let s = monic(f, div_exact(f, &poly, &g));
    let ds = degree(&s).unwrap();
    if ds == 1 {
        return Split::Irreducible(s);
    }
    let p = f.p();
    // Distinct-degree step.
    let mut h = vec![0u64, 1];
    for deg in 1..=ds {
        h = powmod(f, &h, p, &s);
        let g = gcd(f, &s, &sub_poly(f, &h, &[0, 1]));
        let dg = degree(&g).unwrap_or(0);
        if dg == 0 {
            continue;
        }
        if dg < ds {
            return Split::Factor(g);
        }
        if deg == ds {
            return Split::Irreducible(s);
        }
        // Every irreducible factor of s has degree `deg`: equal-degree splitting.
        loop {
            let t: Vec<u64> = (0..ds).map(|_| rng.gen_range(0..p)).collect();
            let t = trim(t);
            if degree(&t).unwrap_or(0) == 0 {
                continue;
            }
            let mut u = rem(f, &t, &s);
            let mut frob = u.clone();
            for _ in 1..deg {
                frob = powmod(f, &frob, p, &s);
                u = mulmod(f, &u, &frob, &s);
            }
            let w = powmod(f, &u, (p - 1) / 2, &s);
            let g = gcd(f, &s, &sub_poly(f, &w, &[1]));
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < ds {
                return Split::Factor(g);
            }
        }
    }
    Split::Irreducible(s)
}
