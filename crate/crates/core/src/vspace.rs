//! Coordinate subspaces of GF(q)^n stored as canonical reduced row echelon bases.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{build_field, FieldElement, FieldError, FieldSpec};
use crate::matroid::matroid_of;

pub type Point = Vec<FieldElement>;

/// Default cap on explicit point enumeration.
pub const DEFAULT_POINT_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VSpaceError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands live over different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u32, u32),
    #[error("coordinate {index} out of range for dimension {n}")]
    BadIndex { index: usize, n: usize },
    #[error("{count} points exceed the enumeration cap of {cap}")]
    TooLarge { count: u128, cap: usize },
    #[error("value {value} is not an element of GF({q})")]
    InvalidElement { value: u32, q: u32 },
    #[error("matroid of the subspace is not a single connected component without coloops")]
    NotConnectedComponent,
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A subspace `S` of GF(q)^n with its canonical RREF basis.
#[derive(Clone)]
pub struct Subspace {
    field: Arc<FieldSpec>,
    n: usize,
    basis: Vec<Point>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.n == other.n && self.basis == other.basis
    }
}
impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(GF({})^{}, {:?})", self.field.q(), self.n, self.basis)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_point(row))?;
        }
        write!(f, "> in GF({})^{}", self.field.q(), self.n)
    }
}

/// Serialised form of a subspace: field order, length and generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceSpec {
    pub q: u32,
    pub n: usize,
    pub generators: Vec<Point>,
}

impl SubspaceSpec {
    pub fn build(&self) -> Result<Subspace, VSpaceError> {
        Subspace::from_rows(self.q, self.n, &self.generators)
    }
}

/// Reads a subspace from JSON (`{"q":4,"n":3,"generators":[[1,1,0]]}`) or
/// from text: a `q n` line followed by one generator per line. Blank lines
/// and `#` comments are skipped.
pub fn parse_subspace(text: &str) -> Result<Subspace, VSpaceError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let spec: SubspaceSpec = serde_json::from_str(text).map_err(|e| VSpaceError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        return spec.build();
    }
    let err = |line: usize, column: usize, message: String| VSpaceError::Parse { line, column, message };
    let mut header: Option<(u32, usize)> = None;
    let mut gens = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut nums = Vec::new();
        for (start, tok) in tokens(line) {
            let col = start + 1;
            let v: u32 = tok
                .parse()
                .map_err(|_| err(ln + 1, col, format!("expected a nonnegative integer, found `{tok}`")))?;
            nums.push((v, col));
        }
        if nums.is_empty() {
            continue;
        }
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(err(ln + 1, 1, "expected a header line `q n`".into()));
                }
                header = Some((nums[0].0, nums[1].0 as usize));
                build_field(nums[0].0).map_err(|e| err(ln + 1, nums[0].1, e.to_string()))?;
            }
            Some((q, n)) => {
                if nums.len() != n {
                    return Err(err(ln + 1, 1, format!("expected {n} entries, found {}", nums.len())));
                }
                if let Some(&(v, c)) = nums.iter().find(|(v, _)| *v >= q) {
                    return Err(err(ln + 1, c, format!("{v} is not an element of GF({q})")));
                }
                gens.push(nums.iter().map(|&(v, _)| v as FieldElement).collect());
            }
        }
    }
    let (q, n) = header.ok_or_else(|| err(1, 1, "missing header line `q n`".into()))?;
    Subspace::from_rows(q, n, &gens)
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split(char::is_whitespace)
        .scan(0usize, |pos, tok| {
            let start = *pos;
            *pos += tok.len() + 1;
            Some((start, tok))
        })
        .filter(|(_, t)| !t.is_empty())
}

pub fn format_point(p: &[FieldElement]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Row reduces `rows` in place to canonical RREF and drops zero rows.
/// Returns the pivot column of every surviving row.
pub(crate) fn rref(f: &FieldSpec, rows: &mut Vec<Point>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{c : sum_i c_i * cols... }`: the right null space of `m` (rows x k).
pub(crate) fn null_space(f: &FieldSpec, m: &[Point], k: usize) -> Vec<Point> {
    let mut rows: Vec<Point> = m.to_vec();
    let pivots = rref(f, &mut rows, k);
    let mut out = Vec::new();
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; k];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        out.push(v);
    }
    out
}

impl Subspace {
    /// The span of `generators` in GF(q)^n.
    pub fn span(
        field: &Arc<FieldSpec>,
        n: usize,
        generators: &[Point],
    ) -> Result<Subspace, VSpaceError> {
        for g in generators {
            if g.len() != n {
                return Err(VSpaceError::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
            if let Some(&bad) = g.iter().find(|&&x| x as u32 >= field.q()) {
                return Err(VSpaceError::InvalidElement {
                    value: bad as u32,
                    q: field.q(),
                });
            }
        }
        let mut rows = generators.to_vec();
        rref(field, &mut rows, n);
        Ok(Subspace {
            field: Arc::clone(field),
            n,
            basis: rows,
        })
    }

    /// Convenience constructor from a field order.
    pub fn from_rows(q: u32, n: usize, generators: &[Point]) -> Result<Subspace, VSpaceError> {
        let f = build_field(q)?;
        Subspace::span(&f, n, generators)
    }

    /// Wraps a basis already known to be in canonical RREF.
    pub(crate) fn from_rref(field: &Arc<FieldSpec>, n: usize, basis: Vec<Point>) -> Subspace {
        debug_assert!({
            let mut b = basis.clone();
            rref(field, &mut b, n);
            b == basis
        });
        Subspace {
            field: Arc::clone(field),
            n,
            basis,
        }
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Subspace {
        Subspace::from_rref(field, n, Vec::new())
    }

    pub fn full(field: &Arc<FieldSpec>, n: usize) -> Subspace {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::from_rref(field, n, basis)
    }

    /// `{x : x_1 + ... + x_n = 0}`.
    pub fn zero_sum(field: &Arc<FieldSpec>, n: usize) -> Subspace {
        let minus_one = field.neg(1);
        let gens: Vec<Point> = (1..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[0] = 1;
                v[i] = minus_one;
                v
            })
            .collect();
        Subspace::span(field, n, &gens).expect("well-formed generators")
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn spec(&self) -> SubspaceSpec {
        SubspaceSpec {
            q: self.q(),
            n: self.n,
            generators: self.basis.clone(),
        }
    }

    /// The text input format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.q(), self.n);
        for row in &self.basis {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect()
    }

    pub fn point_count(&self) -> u128 {
        (self.q() as u128).pow(self.dim() as u32)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, pc) in self.basis.iter().zip(self.pivots()) {
            let c = w[pc];
            if c != 0 {
                for j in 0..self.n {
                    w[j] = f.sub(w[j], f.mul(c, row[j]));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// The combination `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[FieldElement]) -> Point {
        let f = &self.field;
        let mut out = vec![0; self.n];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if *c != 0 {
                for j in 0..self.n {
                    out[j] = f.add(out[j], f.mul(*c, row[j]));
                }
            }
        }
        out
    }

    /// All points, sorted lexicographically by encoded coordinates.
    pub fn enumerate_points(&self, cap: usize) -> Result<Vec<Point>, VSpaceError> {
        let count = self.point_count();
        if count > cap as u128 {
            return Err(VSpaceError::TooLarge { count, cap });
        }
        let q = self.q() as u8;
        let r = self.dim();
        let mut coeffs = vec![0u8; r];
        let mut out = Vec::with_capacity(count as usize);
        loop {
            out.push(self.combine(&coeffs));
            let mut i = 0;
            loop {
                if i == r {
                    out.sort_unstable();
                    return Ok(out);
                }
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    pub fn points(&self) -> Result<Vec<Point>, VSpaceError> {
        self.enumerate_points(DEFAULT_POINT_CAP)
    }

    /// `S1 x S2 = {(x, y) : x in S1, y in S2}`.
    pub fn product(&self, other: &Subspace) -> Result<Subspace, VSpaceError> {
        if self.q() != other.q() {
            return Err(VSpaceError::FieldMismatch(self.q(), other.q()));
        }
        let n = self.n + other.n;
        let mut basis = Vec::with_capacity(self.dim() + other.dim());
        for row in &self.basis {
            let mut v = row.clone();
            v.resize(n, 0);
            basis.push(v);
        }
        for row in &other.basis {
            let mut v = vec![0; self.n];
            v.extend_from_slice(row);
            basis.push(v);
        }
        Ok(Subspace::from_rref(&self.field, n, basis))
    }

    fn check_indices(&self, idx: &[usize]) -> Result<(), VSpaceError> {
        match idx.iter().find(|&&i| i >= self.n) {
            Some(&index) => Err(VSpaceError::BadIndex { index, n: self.n }),
            None => Ok(()),
        }
    }

    /// `{x / J : x in S}`: drops the coordinates in `drop`.
    pub fn project(&self, drop: &[usize]) -> Result<Subspace, VSpaceError> {
        self.check_indices(drop)?;
        let keep: Vec<usize> = (0..self.n).filter(|i| !drop.contains(i)).collect();
        let rows: Vec<Point> = self
            .basis
            .iter()
            .map(|r| keep.iter().map(|&j| r[j]).collect())
            .collect();
        Subspace::span(&self.field, keep.len(), &rows)
    }

    /// Keeps only the coordinates in `keep`, in the given order.
    pub fn project_onto(&self, keep: &[usize]) -> Result<Subspace, VSpaceError> {
        self.check_indices(keep)?;
        let rows: Vec<Point> = self
            .basis
            .iter()
            .map(|r| keep.iter().map(|&j| r[j]).collect())
            .collect();
        Subspace::span(&self.field, keep.len(), &rows)
    }

    /// The subspace of points supported inside `allowed`.
    pub fn supported_within(&self, allowed: &[usize]) -> Result<Subspace, VSpaceError> {
        self.check_indices(allowed)?;
        let f = &self.field;
        let r = self.dim();
        // one equation per forbidden coordinate, unknowns are basis coefficients
        let eqs: Vec<Point> = (0..self.n)
            .filter(|j| !allowed.contains(j))
            .map(|j| (0..r).map(|i| self.basis[i][j]).collect())
            .collect();
        let kernel = if eqs.is_empty() {
            (0..r)
                .map(|i| {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            null_space(f, &eqs, r)
        };
        let rows: Vec<Point> = kernel.iter().map(|c| self.combine(c)).collect();
        Subspace::span(f, self.n, &rows)
    }

    /// The subspace `S'` of the matroid-minor correspondence: points vanishing
    /// on `delete`, with the coordinates of `delete` and `contract` dropped.
    pub fn minor_space(&self, delete: &[usize], contract: &[usize]) -> Result<Subspace, VSpaceError> {
        self.check_indices(delete)?;
        self.check_indices(contract)?;
        let allowed: Vec<usize> = (0..self.n).filter(|i| !delete.contains(i)).collect();
        let shortened = self.supported_within(&allowed)?;
        let mut drop: Vec<usize> = delete.iter().chain(contract).copied().collect();
        drop.sort_unstable();
        drop.dedup();
        shortened.project(&drop)
    }

    /// The point with support exactly `support`, scaled so its first nonzero
    /// entry is 1, if the points supported inside `support` form a line.
    pub fn circuit_vector(&self, support: &[usize]) -> Option<Point> {
        let sub = self.supported_within(support).ok()?;
        if sub.dim() != 1 {
            return None;
        }
        let v = sub.basis[0].clone();
        let full = support.iter().all(|&j| v[j] != 0);
        full.then_some(v)
    }

    /// `S ∩ (U_1 x ... x U_n)` as an explicit set system; coordinates on which
    /// all surviving points agree are dropped.
    pub fn restrict(&self, boxes: &[Vec<FieldElement>]) -> Result<SetSystem, VSpaceError> {
        if boxes.len() != self.n {
            return Err(VSpaceError::DimensionMismatch {
                expected: self.n,
                got: boxes.len(),
            });
        }
        let mut clean: Vec<Vec<FieldElement>> = Vec::with_capacity(self.n);
        for b in boxes {
            let mut b = b.clone();
            b.sort_unstable();
            b.dedup();
            if let Some(&bad) = b.iter().find(|&&x| x as u32 >= self.q()) {
                return Err(VSpaceError::InvalidElement {
                    value: bad as u32,
                    q: self.q(),
                });
            }
            clean.push(b);
        }
        let pts: Vec<Point> = self
            .points()?
            .into_iter()
            .filter(|p| p.iter().zip(&clean).all(|(x, b)| b.contains(x)))
            .collect();
        let mut coords = Vec::new();
        let mut dropped = Vec::new();
        for i in 0..self.n {
            let agree = !pts.is_empty() && pts.iter().all(|p| p[i] == pts[0][i]);
            if agree {
                dropped.push(i);
            } else {
                coords.push(i);
            }
        }
        let mut points: Vec<Point> = pts
            .iter()
            .map(|p| coords.iter().map(|&i| p[i]).collect())
            .collect();
        points.sort_unstable();
        points.dedup();
        Ok(SetSystem {
            field: Arc::clone(&self.field),
            coords: coords.clone(),
            boxes: coords.iter().map(|&i| clean[i].clone()).collect(),
            points,
            dropped: dropped.iter().map(|&i| (i, clean[i].clone())).collect(),
        })
    }

    /// One basis vector per circuit when the circuits of the matroid are
    /// pairwise disjoint; the vectors then have pairwise disjoint supports.
    pub fn disjoint_support_basis(&self) -> Result<Option<Vec<Point>>, VSpaceError> {
        let m = matroid_of(self)?;
        if m.intersecting_circuits().is_some() {
            return Ok(None);
        }
        let mut rows = Vec::new();
        for &c in m.circuits() {
            let support = crate::bits::elements(c);
            let v = self
                .circuit_vector(&support)
                .expect("every circuit of the matroid is the support of a point");
            rows.push(v);
        }
        let respan = Subspace::span(&self.field, self.n, &rows)?;
        assert_eq!(&respan, self, "disjoint circuit vectors must span the space");
        Ok(Some(rows))
    }

    /// Sunflower basis of a space whose matroid is one connected component
    /// without coloops; absent unless the matroid is a subdivision of `A_t`,
    /// `t >= 3`.
    pub fn sunflower_basis(&self) -> Result<Option<SunflowerWitness>, VSpaceError> {
        let m = matroid_of(self)?;
        let comps = m.components();
        if comps.len() != 1 || m.circuits().is_empty() {
            return Err(VSpaceError::NotConnectedComponent);
        }
        let classes = m.series_classes();
        let t = classes.len();
        if t < 3 || self.dim() != t - 1 {
            return Ok(None);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let projected = self.project_onto(&reps)?;
        let pm = matroid_of(&projected)?;
        let all_pairs = pm.circuits().len() == t * (t - 1) / 2
            && pm.circuits().iter().all(|c| c.count_ones() == 2);
        if !all_pairs {
            return Ok(None);
        }
        // classes are sorted by minimum element, so the head holds coordinate 0
        let head = &classes[0];
        let f = &self.field;
        let mut rows = Vec::with_capacity(t - 1);
        for tail in &classes[1..] {
            let mut support: Vec<usize> = head.iter().chain(tail).copied().collect();
            support.sort_unstable();
            let Some(v) = self.circuit_vector(&support) else {
                return Ok(None);
            };
            let scale = f.inv(v[head[0]]).expect("head entry is nonzero");
            rows.push(v.iter().map(|&x| f.mul(x, scale)).collect::<Point>());
        }
        let permutation: Vec<usize> = classes.iter().flatten().copied().collect();
        let witness = SunflowerWitness {
            permutation,
            block_sizes: classes.iter().map(|c| c.len()).collect(),
            rows,
        };
        if !witness.is_valid_for(self) {
            return Ok(None);
        }
        Ok(Some(witness))
    }

    /// The finest product decomposition: one factor per connected component of
    /// the matroid, coloops as `{0}` factors of length one.
    pub fn factor(&self) -> Result<Vec<(Vec<usize>, Subspace)>, VSpaceError> {
        let m = matroid_of(self)?;
        let mut out = Vec::new();
        for comp in m.components() {
            let sub = self.project_onto(&comp)?;
            out.push((comp, sub));
        }
        Ok(out)
    }

    /// Reassembles a factorisation into a subspace of GF(q)^n.
    pub fn from_factors(
        field: &Arc<FieldSpec>,
        n: usize,
        factors: &[(Vec<usize>, Subspace)],
    ) -> Result<Subspace, VSpaceError> {
        let mut rows = Vec::new();
        for (coords, sub) in factors {
            for r in sub.basis() {
                let mut v = vec![0; n];
                for (&c, &x) in coords.iter().zip(r) {
                    if c >= n {
                        return Err(VSpaceError::BadIndex { index: c, n });
                    }
                    v[c] = x;
                }
                rows.push(v);
            }
        }
        Subspace::span(field, n, &rows)
    }
}

/// An explicit point set inside a box `U_1 x ... x U_m`, typically a
/// restriction of a subspace. `coords` records the original coordinate of each
/// remaining position; `dropped` lists removed coordinates with their boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub field: Arc<FieldSpec>,
    pub coords: Vec<usize>,
    pub boxes: Vec<Vec<FieldElement>>,
    pub points: Vec<Point>,
    pub dropped: Vec<(usize, Vec<FieldElement>)>,
}

impl SetSystem {
    pub fn from_subspace(s: &Subspace) -> Result<SetSystem, VSpaceError> {
        let full: Vec<FieldElement> = s.field().elements().collect();
        Ok(SetSystem {
            field: Arc::clone(s.field()),
            coords: (0..s.n()).collect(),
            boxes: vec![full; s.n()],
            points: s.points()?,
            dropped: Vec::new(),
        })
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A basis of the shape: rows `[u0 | u1 | 0 ...]`, `[u0 | 0 | u2 | ...]`, ...
/// after permuting coordinates; `u0` is the shared head block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunflowerWitness {
    /// Coordinates listed head block first, then each tail block in row order.
    pub permutation: Vec<usize>,
    /// `d_0, d_1, ..., d_r`.
    pub block_sizes: Vec<usize>,
    /// Rows in the original coordinate order.
    pub rows: Vec<Point>,
}

impl SunflowerWitness {
    pub fn head(&self) -> &[usize] {
        &self.permutation[..self.block_sizes[0]]
    }

    pub fn block(&self, i: usize) -> &[usize] {
        let start: usize = self.block_sizes[..i].iter().sum();
        &self.permutation[start..start + self.block_sizes[i]]
    }

    /// Checks the displayed pattern and that the rows span `s`.
    pub fn is_valid_for(&self, s: &Subspace) -> bool {
        let r = self.rows.len();
        if r < 2 || self.block_sizes.len() != r + 1 || self.block_sizes.contains(&0) {
            return false;
        }
        let mut perm = self.permutation.clone();
        perm.sort_unstable();
        if perm != (0..s.n()).collect::<Vec<_>>() {
            return false;
        }
        let head = self.head();
        let u0: Vec<FieldElement> = head.iter().map(|&j| self.rows[0][j]).collect();
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != s.n() {
                return false;
            }
            if head.iter().map(|&j| row[j]).ne(u0.iter().copied()) || u0.contains(&0) {
                return false;
            }
            for b in 1..=r {
                let own = b == i + 1;
                if !self.block(b).iter().all(|&j| (row[j] != 0) == own) {
                    return false;
                }
            }
        }
        matches!(Subspace::span(s.field(), s.n(), &self.rows), Ok(t) if &t == s)
    }

    /// The rows with columns permuted into the displayed block layout.
    pub fn displayed_matrix(&self) -> Vec<Point> {
        self.rows
            .iter()
            .map(|r| self.permutation.iter().map(|&j| r[j]).collect())
            .collect()
    }
}
