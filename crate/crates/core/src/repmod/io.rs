//! Module file format.
//!
//! ```text
//! module
//! dims 1 1 1
//! map a 1 x 1      (arrow name, then rows x cols of the d_target x d_source matrix)
//! 1                (one line per row, entries separated by spaces)
//! map b 1 x 1
//! 1
//! ```
//!
//! Arrows without a `map` block act by zero. Blocks with zero columns have
//! no row lines. Entries may be negative; they are reduced mod p.

use std::sync::Arc;

use super::Representation;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::Matrix;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn write_module(m: &Representation) -> String {
    let mut s = String::from("module\n");
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    s.push_str(&format!("dims {}\n", dims.join(" ")));
    for (a, x) in m.algebra().quiver().arrows().iter().zip(m.maps()) {
        s.push_str(&format!("map {} {} x {}\n", a.name, x.rows(), x.cols()));
        if x.cols() > 0 {
            for r in 0..x.rows() {
                let row: Vec<String> = x.row(r).iter().map(|v| v.to_string()).collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
        }
    }
    s
}

pub fn read_module(alg: &Arc<Algebra>, text: &str) -> Result<Representation> {
    let f = alg.field();
    let q = alg.quiver();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "module")) => {}
        Some((n, other)) => return Err(err(n, format!("expected 'module', found '{other}'"))),
        None => return Err(err(0, "empty module file")),
    }
    let (n, dims_line) = lines.next().ok_or_else(|| err(0, "missing 'dims' line"))?;
    let dims: Vec<usize> = match dims_line.strip_prefix("dims") {
        Some(rest) => rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(n, format!("bad dimension '{t}'"))))
            .collect::<Result<_>>()?,
        None => return Err(err(n, "expected 'dims'")),
    };
    if dims.len() != q.vertex_count() {
        return Err(err(
            n,
            format!("algebra has {} vertices, got {} dims", q.vertex_count(), dims.len()),
        ));
    }
    let mut maps: Vec<Option<Matrix>> = vec![None; q.arrows().len()];
    while let Some((n, line)) = lines.next() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 5 || parts[0] != "map" || parts[3] != "x" {
            return Err(err(n, "expected 'map <arrow> <rows> x <cols>'"));
        }
        let ai = q
            .arrow_index(parts[1])
            .ok_or_else(|| err(n, format!("unknown arrow '{}'", parts[1])))?;
        if maps[ai].is_some() {
            return Err(err(n, format!("duplicate map for arrow '{}'", parts[1])));
        }
        let parse_dim = |t: &str| t.parse::<usize>().map_err(|_| err(n, format!("bad size '{t}'")));
        let (r, c) = (parse_dim(parts[2])?, parse_dim(parts[4])?);
        let a = &q.arrows()[ai];
        if (r, c) != (dims[a.target], dims[a.source]) {
            return Err(err(
                n,
                format!(
                    "arrow {} needs {} x {}, got {r} x {c}",
                    a.name, dims[a.target], dims[a.source]
                ),
            ));
        }
        let mut data = Vec::with_capacity(r * c);
        if c > 0 {
            for _ in 0..r {
                let (rn, row) = lines
                    .next()
                    .ok_or_else(|| err(n, format!("matrix for '{}' is missing rows", a.name)))?;
                let vals: Vec<u64> = row
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<i64>()
                            .map(|v| f.from_i64(v))
                            .map_err(|_| err(rn, format!("bad entry '{t}'")))
                    })
                    .collect::<Result<_>>()?;
                if vals.len() != c {
                    return Err(err(rn, format!("expected {c} entries, got {}", vals.len())));
                }
                data.extend(vals);
            }
        }
        maps[ai] = Some(Matrix::from_vec(f, r, c, data));
    }
    let maps = maps
        .into_iter()
        .zip(q.arrows())
        .map(|(m, a)| m.unwrap_or_else(|| Matrix::zeros(f, dims[a.target], dims[a.source])))
        .collect();
    Representation::new(alg.clone(), dims, maps)
}
