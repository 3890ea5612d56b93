//! Bound quiver algebras `kQ/I` presented by a reduced path basis and a
//! multiplication table.
//!
//! The ideal is closed degree by degree: at truncation length `l` the span
//! of `u*r*v` (relations `r`, paths `u`, `v`) is computed modulo paths of
//! length `> l`, and the first `l` at which every path of length `l` lies in
//! that span becomes the Loewy bound. For an admissible ideal this gives
//! exactly `kQ/I`, homogeneous or not.

mod parse;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};

pub use parse::{parse_algebra, AlgebraSpec};

/// Default search bound for nilpotency of the arrow ideal.
pub const DEFAULT_MAX_LEN: usize = 30;

/// Guard against path explosion on non-admissible input with many loops.
const MAX_ENUMERATED_PATHS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with 0-based vertices. Loops and multiple arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("quiver needs at least one vertex".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has endpoint outside 1..={}",
                    a.name, vertex_count
                )));
            }
            if !seen.insert(a.name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {}", a.name)));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Convenience constructor from `(name, source, target)` with 0-based vertices.
    pub fn from_edges(vertex_count: usize, edges: &[(&str, usize, usize)]) -> Result<Self> {
        let arrows = edges
            .iter()
            .map(|&(n, s, t)| Arrow {
                name: n.to_string(),
                source: s,
                target: t,
            })
            .collect();
        Self::new(vertex_count, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }
}

/// A path: a composable arrow sequence, or the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::RelationIllFormed("empty arrow sequence".into()));
        };
        let qa = q.arrows();
        for w in arrows.windows(2) {
            if qa[w[0]].target != qa[w[1]].source {
                return Err(Error::RelationIllFormed(format!(
                    "{}*{} is not composable",
                    qa[w[0]].name, qa[w[1]].name
                )));
            }
        }
        Ok(Path {
            source: qa[first].source,
            target: qa[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` then `other`, if the endpoints match.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source + 1)
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows()[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A linear combination of paths with integer coefficients (reduced mod p on use).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathExpr {
    pub terms: Vec<(i64, Path)>,
}

impl PathExpr {
    pub fn new(terms: Vec<(i64, Path)>) -> Self {
        PathExpr { terms }
    }

    pub fn path(p: Path) -> Self {
        PathExpr { terms: vec![(1, p)] }
    }

    /// Checks the shape required of an ideal generator: nonempty, every
    /// path of length at least 2, one common source and target.
    fn validate_relation(&self, q: &Quiver) -> Result<()> {
        let Some((_, first)) = self.terms.first() else {
            return Err(Error::RelationIllFormed("empty relation".into()));
        };
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(Error::RelationIllFormed(format!(
                    "term {} has length < 2",
                    p.display(q)
                )));
            }
            if p.source != first.source || p.target != first.target {
                return Err(Error::RelationIllFormed(format!(
                    "terms {} and {} have different endpoints",
                    first.display(q),
                    p.display(q)
                )));
            }
        }
        Ok(())
    }

    pub fn reversed(&self) -> PathExpr {
        PathExpr {
            terms: self.terms.iter().map(|(c, p)| (*c, p.reversed())).collect(),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("{}*{}", c, p.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sparse coordinate vector over the algebra basis.
pub type SparseVec = Vec<(usize, u64)>;

/// A finite-dimensional bound quiver algebra.
#[derive(Clone)]
pub struct Algebra {
    name: String,
    quiver: Quiver,
    field: PrimeField,
    relations: Vec<PathExpr>,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    mult: Vec<Vec<SparseVec>>,
    normal_forms: HashMap<Path, SparseVec>,
    /// Each entry is a path combination lying in the ideal; together they
    /// generate `I + J^L`. Used to validate representations.
    ideal_rows: Vec<Vec<(u64, Path)>>,
    loewy_bound: usize,
    /// `paths[s][t]`: basis indices of paths from `s` to `t`, ascending.
    paths: Vec<Vec<Vec<usize>>>,
    op: OnceLock<OpLink>,
}

/// The shared opposite algebra. The original owns its opposite; the
/// opposite points back weakly so `D(D M)` lands over the original `Arc`.
#[derive(Clone)]
enum OpLink {
    Forward(Arc<Algebra>),
    Back(Weak<Algebra>),
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field
                && self.quiver == other.quiver
                && self.loewy_bound == other.loewy_bound
                && self.basis == other.basis
                && self.mult == other.mult)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("vertices", &self.quiver.vertex_count)
            .field("arrows", &self.quiver.arrows.len())
            .field("dim", &self.basis.len())
            .field("p", &self.field.p())
            .finish()
    }
}

/// A block of the algebra: a connected component of the underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub semisimple: bool,
}

impl Algebra {
    /// Builds `kQ/I` from generators of an admissible ideal.
    pub fn build(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<PathExpr>,
        field: PrimeField,
        max_len: usize,
    ) -> Result<Self> {
        for r in &relations {
            r.validate_relation(&quiver)?;
        }
        let name = name.into();
        if quiver.arrows.is_empty() {
            let basis: Vec<Path> = (0..quiver.vertex_count).map(Path::trivial).collect();
            return Ok(Self::assemble(
                name,
                quiver,
                field,
                relations,
                basis,
                HashMap::new(),
                Vec::new(),
                1,
            ));
        }
        for ell in 2..=max_len.max(2) {
            let paths = enumerate_paths(&quiver, ell)?;
            if let Some((normal_forms, ideal_rows, basis)) =
                close_ideal(&quiver, &relations, field, &paths, ell)
            {
                return Ok(Self::assemble(
                    name,
                    quiver,
                    field,
                    relations,
                    basis,
                    normal_forms,
                    ideal_rows,
                    ell,
                ));
            }
        }
        Err(Error::NotAdmissibleWithinBound {
            max_len,
            detail: "no path length is fully annihilated".into(),
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        quiver: Quiver,
        field: PrimeField,
        relations: Vec<PathExpr>,
        basis: Vec<Path>,
        mut normal_forms: HashMap<Path, SparseVec>,
        ideal_rows: Vec<Vec<(u64, Path)>>,
        loewy_bound: usize,
    ) -> Self {
        let basis_index: HashMap<Path, usize> =
            basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        for (p, &i) in &basis_index {
            normal_forms.insert(p.clone(), vec![(i, 1)]);
        }
        let n = quiver.vertex_count;
        let mut paths = vec![vec![Vec::new(); n]; n];
        for (i, b) in basis.iter().enumerate() {
            paths[b.source][b.target].push(i);
        }
        let mut alg = Algebra {
            name,
            quiver,
            field,
            relations,
            basis,
            basis_index,
            mult: Vec::new(),
            normal_forms,
            ideal_rows,
            loewy_bound,
            paths,
            op: OnceLock::new(),
        };
        let d = alg.basis.len();
        let mut mult = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                if let Some(p) = alg.basis[i].then(&alg.basis[j]) {
                    mult[i][j] = alg.reduce_path(&p);
                }
            }
        }
        alg.mult = mult;
        alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn relations(&self) -> &[PathExpr] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }

    /// Basis index of the trivial path at `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.basis_index[&Path::trivial(v)]
    }

    /// Basis index of arrow `a` (arrows are never in an admissible ideal).
    pub fn arrow_basis_index(&self, a: usize) -> usize {
        let arrow = &self.quiver.arrows[a];
        self.basis_index[&Path {
            source: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        }]
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Basis indices of paths from `s` to `t`.
    pub fn paths_between(&self, s: usize, t: usize) -> &[usize] {
        &self.paths[s][t]
    }

    pub(crate) fn ideal_rows(&self) -> &[Vec<(u64, Path)>] {
        &self.ideal_rows
    }

    /// Structure constants: `b_i * b_j` as sparse coordinates.
    pub fn mult(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    /// Normal form of a single path.
    pub fn reduce_path(&self, p: &Path) -> SparseVec {
        if p.len() >= self.loewy_bound {
            return Vec::new();
        }
        self.normal_forms.get(p).cloned().unwrap_or_default()
    }

    /// Coordinates of a path combination over the basis.
    pub fn reduce_path_expr(&self, x: &PathExpr) -> Result<Vec<u64>> {
        let f = self.field;
        let mut out = vec![0u64; self.dim()];
        for (c, p) in &x.terms {
            self.check_path(p)?;
            let c = f.from_i64(*c);
            for (i, v) in self.reduce_path(p) {
                out[i] = f.add(out[i], f.mul(c, v));
            }
        }
        Ok(out)
    }

    fn check_path(&self, p: &Path) -> Result<()> {
        let n = self.vertex_count();
        if p.source >= n || p.target >= n {
            return Err(Error::RelationIllFormed("vertex out of range".into()));
        }
        if p.arrows.is_empty() {
            return if p.source == p.target {
                Ok(())
            } else {
                Err(Error::RelationIllFormed("trivial path with distinct endpoints".into()))
            };
        }
        let q = Path::from_arrows(&self.quiver, &p.arrows)?;
        if q.source != p.source || q.target != p.target {
            return Err(Error::RelationIllFormed("path endpoints disagree with arrows".into()));
        }
        Ok(())
    }

    /// Product of two dense coordinate vectors.
    pub fn multiply(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0u64; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in &self.mult[i][j] {
                    out[k] = f.add(out[k], f.mul(ab, c));
                }
            }
        }
        out
    }

    /// The opposite algebra: arrows reversed, basis paths reversed with the
    /// same indices, multiplication transposed. `A.opposite().opposite() == A`.
    pub fn opposite(&self) -> Algebra {
        let basis: Vec<Path> = self.basis.iter().map(Path::reversed).collect();
        let basis_index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let d = basis.len();
        let mut mult = vec![vec![Vec::new(); d]; d];
        for (i, row) in mult.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.mult[j][i].clone();
            }
        }
        let normal_forms = self
            .normal_forms
            .iter()
            .map(|(p, v)| (p.reversed(), v.clone()))
            .collect();
        let ideal_rows = self
            .ideal_rows
            .iter()
            .map(|row| row.iter().map(|(c, p)| (*c, p.reversed())).collect())
            .collect();
        let n = self.vertex_count();
        let mut paths = vec![vec![Vec::new(); n]; n];
        for (s, row) in self.paths.iter().enumerate() {
            for (t, list) in row.iter().enumerate() {
                paths[t][s] = list.clone();
            }
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        Algebra {
            name,
            quiver: self.quiver.reversed(),
            field: self.field,
            relations: self.relations.iter().map(PathExpr::reversed).collect(),
            basis,
            basis_index,
            mult,
            normal_forms,
            ideal_rows,
            loewy_bound: self.loewy_bound,
            paths,
            op: OnceLock::new(),
        }
    }

    /// The opposite algebra, built once and shared. Taking the opposite of the
    /// result returns `self` while `self` is alive.
    pub fn opposite_arc(self: &Arc<Self>) -> Arc<Algebra> {
        let link = self.op.get_or_init(|| {
            let op = self.opposite();
            let _ = op.op.set(OpLink::Back(Arc::downgrade(self)));
            OpLink::Forward(Arc::new(op))
        });
        match link {
            OpLink::Forward(a) => a.clone(),
            OpLink::Back(w) => w.upgrade().unwrap_or_else(|| Arc::new(self.opposite())),
        }
    }

    /// Connected components of the underlying undirected graph.
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for a in &self.quiver.arrows {
            let (ra, rb) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            comps.entry(r).or_default().push(v);
        }
        comps
            .into_values()
            .map(|vertices| {
                let semisimple = !self
                    .quiver
                    .arrows
                    .iter()
                    .any(|a| vertices.contains(&a.source));
                Block {
                    vertices,
                    semisimple,
                }
            })
            .collect()
    }

    /// Serializes in the line-oriented algebra file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("name {}\n", self.name));
        s.push_str(&format!("field {}\n", self.field.p()));
        s.push_str(&format!("vertices {}\n", self.vertex_count()));
        for a in &self.quiver.arrows {
            s.push_str(&format!("arrow {} {} {}\n", a.name, a.source + 1, a.target + 1));
        }
        for r in &self.relations {
            s.push_str(&format!("relation {}\n", r.display(&self.quiver)));
        }
        s
    }

    /// Spot-checks associativity on every basis triple (algebras here are small).
    pub fn check_associative(&self) -> bool {
        let d = self.dim();
        let unit = |i: usize| {
            let mut v = vec![0u64; d];
            v[i] = 1;
            v
        };
        for i in 0..d {
            for j in 0..d {
                let ij = self.multiply(&unit(i), &unit(j));
                for k in 0..d {
                    let left = self.multiply(&ij, &unit(k));
                    let right = self.multiply(&unit(i), &self.multiply(&unit(j), &unit(k)));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All paths of length `<= max_len`, in the column order used for ideal
/// closure: longest first, then reverse lexicographic on `(arrows, source)`.
fn enumerate_paths(q: &Quiver, max_len: usize) -> Result<Vec<Path>> {
    let mut layers: Vec<Vec<Path>> = vec![(0..q.vertex_count).map(Path::trivial).collect()];
    let mut total = layers[0].len();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in layers.last().unwrap() {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        total += next.len();
        if total > MAX_ENUMERATED_PATHS {
            return Err(Error::NotAdmissibleWithinBound {
                max_len,
                detail: format!("more than {MAX_ENUMERATED_PATHS} paths"),
            });
        }
        layers.push(next);
    }
    let mut all: Vec<Path> = layers.into_iter().flatten().collect();
    all.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| b.arrows.cmp(&a.arrows))
            .then_with(|| b.source.cmp(&a.source))
    });
    Ok(all)
}

type Closure = (HashMap<Path, SparseVec>, Vec<Vec<(u64, Path)>>, Vec<Path>);

/// Closes the relation span at truncation length `ell`. Returns `None` when
/// some path of length `ell` survives.
fn close_ideal(
    q: &Quiver,
    relations: &[PathExpr],
    field: PrimeField,
    paths: &[Path],
    ell: usize,
) -> Option<Closure> {
    let f = field;
    let ncols = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Semi-echelon rows keyed by pivot column.
    let mut rows: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let mut queue: VecDeque<Vec<u64>> = VecDeque::new();

    for r in relations {
        let mut v = vec![0u64; ncols];
        for (c, p) in &r.terms {
            if p.len() <= ell {
                let i = index[p];
                v[i] = f.add(v[i], f.from_i64(*c));
            }
        }
        queue.push_back(v);
    }
    // Paths of length exactly `ell + 1` are dropped, so the truncation is
    // automatic when extending.
    while let Some(mut v) = queue.pop_front() {
        let mut pivot = None;
        for c in 0..ncols {
            if v[c] == 0 {
                continue;
            }
            if let Some(row) = rows.get(&c) {
                let factor = v[c];
                for (x, &y) in v[c..].iter_mut().zip(&row[c..]) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            } else {
                pivot = Some(c);
                break;
            }
        }
        let Some(c) = pivot else { continue };
        let inv = f.inv(v[c]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Products with single arrows on both sides.
        for (ai, a) in q.arrows.iter().enumerate() {
            let mut left = vec![0u64; ncols];
            let mut right = vec![0u64; ncols];
            let (mut any_left, mut any_right) = (false, false);
            for (i, &x) in v.iter().enumerate() {
                if x == 0 || paths[i].len() + 1 > ell {
                    continue;
                }
                let p = &paths[i];
                if a.target == p.source {
                    let mut arrows = vec![ai];
                    arrows.extend_from_slice(&p.arrows);
                    let np = Path {
                        source: a.source,
                        target: p.target,
                        arrows,
                    };
                    left[index[&np]] = f.add(left[index[&np]], x);
                    any_left = true;
                }
                if p.target == a.source {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let np = Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    };
                    right[index[&np]] = f.add(right[index[&np]], x);
                    any_right = true;
                }
            }
            if any_left {
                queue.push_back(left);
            }
            if any_right {
                queue.push_back(right);
            }
        }
        rows.insert(c, v);
    }

    // Every length-ell column must be a pivot whose row is a unit vector
    // after full reduction.
    let m = Matrix::from_vec(
        field,
        rows.len(),
        ncols,
        rows.values().flat_map(|r| r.iter().copied()).collect(),
    );
    let rr = m.rref();
    let top: Vec<usize> = (0..ncols).filter(|&c| paths[c].len() == ell).collect();
    let mut pivot_row = HashMap::new();
    for (ri, &c) in rr.pivots.iter().enumerate() {
        pivot_row.insert(c, ri);
    }
    for &c in &top {
        let Some(&ri) = pivot_row.get(&c) else {
            return None;
        };
        if (0..ncols).any(|j| j != c && rr.matrix.get(ri, j) != 0) {
            return None;
        }
    }

    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &rr.pivots {
            v[c] = true;
        }
        v
    };
    let mut basis: Vec<Path> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|c| paths[c].clone())
        .collect();
    basis.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.arrows.cmp(&b.arrows))
            .then_with(|| a.source.cmp(&b.source))
    });
    let basis_pos: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut normal_forms = HashMap::new();
    let mut ideal_rows = Vec::new();
    for (ri, &c) in rr.pivots.iter().enumerate() {
        let mut row = Vec::new();
        let mut nf = Vec::new();
        for j in 0..ncols {
            let x = rr.matrix.get(ri, j);
            if x == 0 {
                continue;
            }
            row.push((x, paths[j].clone()));
            if j != c {
                nf.push((basis_pos[&paths[j]], f.neg(x)));
            }
        }
        ideal_rows.push(row);
        if paths[c].len() < ell {
            nf.sort_unstable();
            normal_forms.insert(paths[c].clone(), nf);
        }
    }
    Some((normal_forms, ideal_rows, basis))
}
