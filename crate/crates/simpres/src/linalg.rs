//! Sparse exact linear algebra: vectors, column-major matrices, a streaming
//! reduced row echelon accumulator, row-span subspaces, and quotient spaces
//! with explicit projection/section pairs.
//!
//! All arithmetic is exact; there are no tolerances anywhere. Subspaces are
//! stored in reduced row echelon form, which is a canonical basis: two
//! subspaces are equal as sets of vectors iff their stored bases are equal
//! componentwise.

use std::collections::HashMap;

use crate::scalar::{repr_size, Field, Scalar};

/// Sparse vector: entries sorted by index, zeros never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVec {
            entries: vec![(index, field.one())],
        }
    }

    pub fn single(index: usize, value: Scalar) -> Self {
        if value.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(index, value)],
            }
        }
    }

    /// Normalizes arbitrary (index, value) pairs: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_entries(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w = w.add(&v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    /// Builds from pairs already sorted by strictly increasing index with no
    /// zero values; checked in debug builds.
    pub fn from_sorted(pairs: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries: pairs }
    }

    pub fn from_dense(row: &[Scalar]) -> Self {
        SparseVec {
            entries: row
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn dense(&self, dim: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, Scalar)> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Smallest-index entry.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.merge_with(other, None)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let minus_one = match self.entries.first().or(other.entries.first()) {
            Some((_, v)) => v.field().integer(-1),
            None => return SparseVec::new(),
        };
        self.merge_with(other, Some(&minus_one))
    }

    /// `self + c * other`, the elimination primitive.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        self.merge_with(other, Some(c))
    }

    fn merge_with(&self, other: &SparseVec, scale: Option<&Scalar>) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i == j => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let y = match scale {
                        Some(c) => y.mul(c),
                        None => y.clone(),
                    };
                    let s = x.add(&y);
                    if !s.is_zero() {
                        out.push((*i, s));
                    }
                }
                (Some((i, _)), Some((j, _))) if i < j => {
                    let (i, x) = a.next().unwrap();
                    out.push((*i, x.clone()));
                }
                (Some(_), Some(_)) | (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    let y = match scale {
                        Some(c) => y.mul(c),
                        None => y.clone(),
                    };
                    if !y.is_zero() {
                        out.push((*j, y));
                    }
                }
                (Some(_), None) => {
                    let (i, x) = a.next().unwrap();
                    out.push((*i, x.clone()));
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    /// Re-indexes through a strictly monotone map (tensor embeddings).
    pub fn map_index(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        let mapped: Vec<(usize, Scalar)> = self
            .entries
            .iter()
            .map(|(i, v)| (f(*i), v.clone()))
            .collect();
        debug_assert!(mapped.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries: mapped }
    }
}

/// Sparse matrix stored column-major: column `j` is the image of the j-th
/// basis vector. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        Matrix {
            rows,
            cols,
            field,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        Matrix {
            rows: n,
            cols: n,
            field,
            columns: (0..n).map(|j| SparseVec::unit(j, field)).collect(),
        }
    }

    pub fn from_columns(rows: usize, field: Field, columns: Vec<SparseVec>) -> Self {
        for c in &columns {
            debug_assert!(c.max_index().is_none_or(|m| m < rows));
        }
        Matrix {
            rows,
            cols: columns.len(),
            field,
            columns,
        }
    }

    /// Builds from dense rows (the JSON wire format).
    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    columns[c].push((r, v.clone()));
                }
            }
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            field,
            columns: columns.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.columns[c]
            .get(r)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Overwrites one entry (used by the fault-injection tests).
    pub fn set_entry(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        let mut pairs: Vec<(usize, Scalar)> = self.columns[c]
            .iter()
            .filter(|(i, _)| *i != r)
            .cloned()
            .collect();
        if !v.is_zero() {
            pairs.push((r, v));
        }
        self.columns[c] = SparseVec::from_entries(pairs);
    }

    /// Matrix–vector product `self · v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, c) in v.iter() {
            debug_assert!(*j < self.cols, "vector index out of range");
            acc = acc.add_scaled(&self.columns[*j], c);
        }
        acc
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "composition dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            field: self.field,
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            columns: self
                .columns
                .iter()
                .zip(&rhs.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.scaled(&self.field.integer(-1)))
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            columns: self.columns.iter().map(|col| col.scaled(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            columns: self.row_vectors(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_empty)
    }

    /// The rows of the matrix as sparse vectors over column indices.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[*i].push((j, v.clone()));
            }
        }
        rows.into_iter().map(SparseVec::from_sorted).collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, self.field);
        for r in presorted(self.row_vectors()) {
            ech.insert(r);
        }
        ech.rank()
    }

    /// Basis of `{ v : self · v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new(self.cols, self.field);
        for r in presorted(self.row_vectors()) {
            ech.insert(r);
        }
        ech.kernel_basis()
    }
}

/// Pivot-size heuristic: rows are offered to the echelon smallest first
/// (support length, then leading-entry representation size), which keeps
/// rational entries from blowing up on the dense-ish inputs.
fn presorted(mut rows: Vec<SparseVec>) -> Vec<SparseVec> {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| {
        (
            r.support_len(),
            r.leading().map_or(0, |(_, v)| repr_size(v)),
        )
    });
    rows
}

/// Streaming reduced row echelon form over a fixed ambient dimension.
///
/// Rows are fully reduced against each other at all times: every stored row
/// has coefficient 1 at its pivot column and zeros at every other pivot
/// column. Inserting therefore costs one reduction pass plus back-substitution
/// into the rows that mention the new pivot.
pub struct Echelon {
    field: Field,
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_of_col: HashMap<usize, usize>,
    occupancy: HashMap<usize, Vec<usize>>,
}

impl Echelon {
    pub fn new(ambient: usize, field: Field) -> Self {
        Echelon {
            field,
            ambient,
            rows: Vec::new(),
            pivot_of_col: HashMap::new(),
            occupancy: HashMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows. The residual has no support on
    /// pivot columns; it is zero iff `v` lies in the current row span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_recording(v, |_, _| {})
    }

    fn reduce_recording(
        &self,
        v: &SparseVec,
        mut on_use: impl FnMut(usize, &Scalar),
    ) -> SparseVec {
        // Stored rows touch pivot columns only at their own pivot, so one
        // subtraction per pivot entry of `v` suffices and no new pivot
        // entries can appear.
        let mut acc = v.clone();
        loop {
            let hit = acc
                .iter()
                .find_map(|(i, c)| self.pivot_of_col.get(i).map(|r| (*r, c.clone())));
            match hit {
                Some((row, coeff)) => {
                    on_use(row, &coeff);
                    acc = acc.add_scaled(&self.rows[row], &coeff.neg());
                }
                None => return acc,
            }
        }
    }

    /// Coefficients expressing `v` over the stored rows, if `v` is in span.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<(usize, Scalar)>> {
        let mut used: Vec<(usize, Scalar)> = Vec::new();
        let residual = self.reduce_recording(v, |row, c| used.push((row, c.clone())));
        residual.is_empty().then_some(used)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a vector; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let reduced = self.reduce(&v);
        let Some((pivot, lead)) = reduced.leading() else {
            return false;
        };
        debug_assert!(pivot < self.ambient, "vector exceeds ambient dimension");
        let normalized = reduced.scaled(&lead.inv());
        let new_row = self.rows.len();

        // Back-substitute into existing rows that mention the new pivot.
        if let Some(holders) = self.occupancy.remove(&pivot) {
            for r in holders {
                let Some(c) = self.rows[r].get(pivot).cloned() else {
                    continue; // stale occupancy entry
                };
                let updated = self.rows[r].add_scaled(&normalized, &c.neg());
                for (i, _) in updated.iter() {
                    if *i != pivot {
                        self.occupancy.entry(*i).or_default().push(r);
                    }
                }
                self.rows[r] = updated;
            }
        }

        for (i, _) in normalized.iter() {
            self.occupancy.entry(*i).or_default().push(new_row);
        }
        self.pivot_of_col.insert(pivot, new_row);
        self.rows.push(normalized);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_of_col.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivot_of_col.contains_key(c))
            .collect()
    }

    /// Rows sorted by pivot column (the canonical RREF basis).
    pub fn sorted_rows(&self) -> Vec<SparseVec> {
        let mut order: Vec<(usize, usize)> =
            self.pivot_of_col.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort_unstable();
        order.iter().map(|(_, r)| self.rows[*r].clone()).collect()
    }

    /// Kernel basis of the system whose rows were inserted: one vector per
    /// free column, `v[f] = 1`, `v[pivot_r] = -row_r[f]`.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let mut out = Vec::with_capacity(free.len());
        for f in free {
            let mut pairs = vec![(f, self.field.one())];
            for (col, row) in &self.pivot_of_col {
                if let Some(c) = self.rows[*row].get(f) {
                    pairs.push((*col, c.neg()));
                }
            }
            out.push(SparseVec::from_entries(pairs));
        }
        out
    }

    pub fn into_subspace(self) -> Subspace {
        let basis = self.sorted_rows();
        let pivots = self.pivot_columns();
        Subspace {
            ambient: self.ambient,
            field: self.field,
            basis,
            pivots,
        }
    }
}

/// A linear subspace held as its canonical reduced-row-echelon basis.
/// Structural equality coincides with equality of spans.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(
        ambient: usize,
        field: Field,
        vecs: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let mut ech = Echelon::new(ambient, field);
        for v in vecs {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.express(v).is_some()
    }

    /// Coordinates of `v` over the stored basis, if `v` lies in the subspace.
    /// Because the basis is in RREF, the coordinate over basis vector `k` is
    /// just `v[pivots[k]]`; the residual check then decides membership.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self
            .pivots
            .iter()
            .map(|p| v.get(*p).cloned().unwrap_or_else(|| self.field.zero()))
            .collect();
        let mut residual = v.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                residual = residual.add_scaled(b, &c.neg());
            }
        }
        residual.is_empty().then_some(coeffs)
    }
}

/// A quotient of `k^ambient` by the span of a family of relations, with an
/// explicit basis of free coordinates, a projection onto it, and a section
/// back. `project ∘ section = id` holds by construction; relations project
/// to zero.
pub struct QuotientSpace {
    ambient: usize,
    field: Field,
    relations: Echelon,
    free_cols: Vec<usize>,
    quot_of_col: HashMap<usize, usize>,
}

impl QuotientSpace {
    pub fn from_echelon(relations: Echelon) -> Self {
        let free_cols = relations.free_columns();
        let quot_of_col = free_cols
            .iter()
            .enumerate()
            .map(|(q, c)| (*c, q))
            .collect();
        QuotientSpace {
            ambient: relations.ambient(),
            field: relations.field,
            relations,
            free_cols,
            quot_of_col,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.free_cols.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// The relation rows in canonical RREF order (used for containment
    /// checks when inducing maps on quotients).
    pub fn relation_rows(&self) -> Vec<SparseVec> {
        self.relations.sorted_rows()
    }

    pub fn relations_contain(&self, v: &SparseVec) -> bool {
        self.relations.contains(v)
    }

    /// Image of an ambient vector in quotient coordinates.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let residual = self.relations.reduce(v);
        residual.map_index(|i| self.quot_of_col[&i])
    }

    /// Ambient representative of the q-th quotient basis vector.
    pub fn section_vec(&self, q: usize) -> SparseVec {
        SparseVec::unit(self.free_cols[q], self.field)
    }

    pub fn projection_matrix(&self) -> Matrix {
        let cols = (0..self.ambient)
            .map(|j| self.project(&SparseVec::unit(j, self.field)))
            .collect();
        Matrix::from_columns(self.dim(), self.field, cols)
    }

    pub fn section_matrix(&self) -> Matrix {
        let cols = (0..self.dim()).map(|q| self.section_vec(q)).collect();
        Matrix::from_columns(self.ambient, self.field, cols)
    }
}

/// Quotient of `k^ambient` by the span of `relations`.
pub fn quotient_by(
    ambient: usize,
    field: Field,
    relations: impl IntoIterator<Item = SparseVec>,
) -> QuotientSpace {
    let mut ech = Echelon::new(ambient, field);
    for r in relations {
        ech.insert(r);
    }
    QuotientSpace::from_echelon(ech)
}

/// Solution space of the homogeneous system `constraints · x = 0`.
pub fn solve_linear_constraints(constraints: &Matrix) -> Subspace {
    Subspace::from_vectors(
        constraints.cols(),
        constraints.field(),
        constraints.kernel_basis(),
    )
}
