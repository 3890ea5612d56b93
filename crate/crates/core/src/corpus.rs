//! Small named algebras used by tests, the acceptance suite and the CLI.

use crate::algebra::{Algebra, Path, PathExpr, Quiver, DEFAULT_MAX_LEN};
use crate::error::{Error, Result};
use crate::exactla::PrimeField;

fn build(name: &str, q: Quiver, rels: Vec<PathExpr>) -> Algebra {
    Algebra::build(name, q, rels, PrimeField::default(), DEFAULT_MAX_LEN)
        .expect("corpus algebra is admissible")
}

/// Linear quiver 1 → 2 → 3 with no relations.
pub fn a3() -> Algebra {
    let q = Quiver::from_edges(3, &[("a", 0, 1), ("b", 1, 2)]).unwrap();
    build("a3", q, vec![])
}

/// Linear quiver 1 → ... → n with no relations.
pub fn linear(n: usize) -> Algebra {
    let names: Vec<String> = (0..n.saturating_sub(1)).map(|i| format!("a{}", i + 1)).collect();
    let edges: Vec<(&str, usize, usize)> =
        names.iter().enumerate().map(|(i, s)| (s.as_str(), i, i + 1)).collect();
    let q = Quiver::from_edges(n, &edges).unwrap();
    build(&format!("a{n}"), q, vec![])
}

/// Cyclic quiver on `n` vertices with every path of length `l` set to zero.
pub fn nakayama(n: usize, l: usize) -> Algebra {
    assert!(n >= 1 && l >= 2);
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let edges: Vec<(&str, usize, usize)> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i, (i + 1) % n))
        .collect();
    let q = Quiver::from_edges(n, &edges).unwrap();
    let rels = (0..n)
        .map(|start| {
            let arrows: Vec<usize> = (0..l).map(|k| (start + k) % n).collect();
            PathExpr::path(Path::from_arrows(&q, &arrows).unwrap())
        })
        .collect();
    build(&format!("nak{n}{l}"), q, rels)
}

/// `k[x]/(x^k)` as a one-loop quiver.
pub fn truncated_polynomial(k: usize) -> Algebra {
    assert!(k >= 2);
    let q = Quiver::from_edges(1, &[("x", 0, 0)]).unwrap();
    let rel = PathExpr::path(Path::from_arrows(&q, &vec![0; k]).unwrap());
    let name = if k == 2 { "dual".to_string() } else { format!("kx{k}") };
    build(&name, q, vec![rel])
}

/// Commutative square 1 → 2 → 4, 1 → 3 → 4 with `a*b = c*d`.
pub fn commutative_square() -> Algebra {
    let q = Quiver::from_edges(4, &[("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)]).unwrap();
    let ab = Path::from_arrows(&q, &[0, 1]).unwrap();
    let cd = Path::from_arrows(&q, &[2, 3]).unwrap();
    build("square", q, vec![PathExpr::new(vec![(1, ab), (-1, cd)])])
}

pub const NAMES: &[&str] = &["a3", "nak33", "nak32", "dual", "kx3", "square"];

pub fn by_name(name: &str) -> Result<Algebra> {
    Ok(match name {
        "a3" => a3(),
        "nak33" => nakayama(3, 3),
        "nak32" => nakayama(3, 2),
        "dual" => truncated_polynomial(2),
        "kx3" => truncated_polynomial(3),
        "square" => commutative_square(),
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

pub fn all() -> Vec<Algebra> {
    NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}
