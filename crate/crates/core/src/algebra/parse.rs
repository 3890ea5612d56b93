//! Reader for the algebra file format.
//!
//! ```text
//! # comment
//! name a3               (optional)
//! field 32003           (optional, default 32003)
//! maxlen 30             (optional)
//! vertices 3
//! arrow a 1 2           (name, source, target; vertices are 1-based)
//! arrow b 2 3
//! relation 1*a*b        (terms joined by '+' or '-'; coefficient optional)
//! ```
//!
//! Paths are written left factor first: `a*b` traverses `a`, then `b`.

use super::{Algebra, Arrow, Path, PathExpr, Quiver, DEFAULT_MAX_LEN};
use crate::error::{Error, Result};
use crate::exactla::PrimeField;

/// The parsed contents of an algebra file, before the ideal is closed.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub field: PrimeField,
    pub max_len: usize,
    pub quiver: Quiver,
    pub relations: Vec<PathExpr>,
}

impl AlgebraSpec {
    pub fn build(self) -> Result<Algebra> {
        Algebra::build(self.name, self.quiver, self.relations, self.field, self.max_len)
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses and builds an algebra.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    parse_spec(text)?.build()
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec> {
    let mut name = String::from("algebra");
    let mut field = PrimeField::default();
    let mut max_len = DEFAULT_MAX_LEN;
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut raw_relations: Vec<(usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match kw {
            "name" => name = rest.to_string(),
            "field" => {
                let p: u64 = rest
                    .parse()
                    .map_err(|_| err(lineno, format!("bad field characteristic '{rest}'")))?;
                field = PrimeField::new(p).map_err(|e| err(lineno, e.to_string()))?;
            }
            "maxlen" => {
                max_len = rest
                    .parse()
                    .map_err(|_| err(lineno, format!("bad maxlen '{rest}'")))?;
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(err(lineno, "duplicate 'vertices' line"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| err(lineno, format!("bad vertex count '{rest}'")))?;
                vertices = Some(n);
            }
            "arrow" => {
                let Some(n) = vertices else {
                    return Err(err(lineno, "'arrow' before 'vertices'"));
                };
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(err(lineno, "expected 'arrow <name> <source> <target>'"));
                }
                let endpoint = |s: &str| -> Result<usize> {
                    let v: usize = s
                        .parse()
                        .map_err(|_| err(lineno, format!("bad vertex '{s}'")))?;
                    if v == 0 || v > n {
                        return Err(err(lineno, format!("vertex {v} outside 1..={n}")));
                    }
                    Ok(v - 1)
                };
                let arrow_name = parts[0];
                if !arrow_name
                    .chars()
                    .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
                    || arrow_name.chars().all(|c| c.is_ascii_digit())
                {
                    return Err(err(lineno, format!("bad arrow name '{arrow_name}'")));
                }
                if arrows.iter().any(|a| a.name == arrow_name) {
                    return Err(err(lineno, format!("duplicate arrow '{arrow_name}'")));
                }
                arrows.push(Arrow {
                    name: arrow_name.to_string(),
                    source: endpoint(parts[1])?,
                    target: endpoint(parts[2])?,
                });
            }
            "relation" => raw_relations.push((lineno, rest.to_string())),
            other => return Err(err(lineno, format!("unknown keyword '{other}'"))),
        }
    }
    let Some(n) = vertices else {
        return Err(err(0, "missing 'vertices' line"));
    };
    let quiver = Quiver::new(n, arrows).map_err(|e| err(0, e.to_string()))?;
    let relations = raw_relations
        .into_iter()
        .map(|(lineno, s)| parse_expr(&quiver, &s).map_err(|m| err(lineno, m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraSpec {
        name,
        field,
        max_len,
        quiver,
        relations,
    })
}

/// Parses `[coef*]x*y*... (+|-) ...` against a quiver.
pub fn parse_expr(q: &Quiver, s: &str) -> std::result::Result<PathExpr, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty relation".into());
    }
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    let mut flush = |current: &mut String, sign: i64| -> std::result::Result<(), String> {
        if current.is_empty() {
            return Err("empty term".into());
        }
        terms.push(parse_term(q, current, sign)?);
        current.clear();
        Ok(())
    };
    let mut pending_sign = false;
    for c in compact.chars() {
        match c {
            '+' | '-' => {
                let s = if c == '-' { -1 } else { 1 };
                if current.is_empty() {
                    // Leading sign, or a sign right after a separator ("+ -2*x").
                    if pending_sign && c == '+' {
                        return Err("repeated '+'".into());
                    }
                    sign *= s;
                } else {
                    flush(&mut current, sign)?;
                    sign = s;
                }
                pending_sign = true;
            }
            _ => {
                current.push(c);
                pending_sign = false;
            }
        }
    }
    flush(&mut current, sign)?;
    Ok(PathExpr::new(terms))
}

fn parse_term(q: &Quiver, s: &str, sign: i64) -> std::result::Result<(i64, Path), String> {
    let mut coef = sign;
    let mut arrows = Vec::new();
    for (i, factor) in s.split('*').enumerate() {
        if factor.is_empty() {
            return Err(format!("empty factor in '{s}'"));
        }
        if i == 0 && factor.chars().all(|c| c.is_ascii_digit()) {
            let c: i64 = factor
                .parse()
                .map_err(|_| format!("coefficient '{factor}' out of range"))?;
            coef *= c;
            continue;
        }
        let a = q
            .arrow_index(factor)
            .ok_or_else(|| format!("unknown arrow '{factor}'"))?;
        arrows.push(a);
    }
    if arrows.is_empty() {
        return Err(format!("term '{s}' has no arrows"));
    }
    let path = Path::from_arrows(q, &arrows).map_err(|e| e.to_string())?;
    Ok((coef, path))
}
