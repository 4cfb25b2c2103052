//! Sparse exact Gaussian elimination over GF(p).
//!
//! Matrices are stored column-sparse. Elimination is the standard
//! left-to-right column reduction with "lowest nonzero row" pivots, which is
//! deterministic and keeps a record of column operations so kernels and
//! solutions come out as chains over the column labels.

use std::collections::HashMap;

use crate::chain::Chain;
use crate::complex::Complex;
use crate::error::Result;
use crate::field::Field;
use crate::simplex::{subsets, Simplex};

/// A sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, u32)>;

/// `a + s·b` for sorted sparse vectors.
pub fn axpy(field: Field, a: &[(usize, u32)], s: u32, b: &[(usize, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(s, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(s, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A matrix whose rows and columns are labelled by simplices.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    field: Field,
    rows: Vec<Simplex>,
    cols: Vec<Simplex>,
    row_index: HashMap<Simplex, usize>,
    columns: Vec<SparseVec>,
    row_dim: isize,
    col_dim: isize,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: Vec<Simplex>, cols: Vec<Simplex>) -> Self {
        let row_index = rows
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let columns = vec![Vec::new(); cols.len()];
        let col_dim = cols.first().map(Simplex::dim).unwrap_or(0);
        let row_dim = rows.first().map(Simplex::dim).unwrap_or(col_dim - 1);
        SparseMatrix {
            field,
            rows,
            cols,
            row_index,
            columns,
            row_dim,
            col_dim,
        }
    }

    /// Matrix whose column `j` is the chain `columns[j]` expressed over `rows`.
    /// Terms on simplices outside `rows` are an error of the caller and panic.
    pub fn from_chains(
        field: Field,
        rows: Vec<Simplex>,
        cols: Vec<Simplex>,
        columns: &[Chain],
    ) -> Self {
        let mut m = SparseMatrix::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            m.columns[j] = m.chain_to_vec(c).expect("column supported on row labels");
        }
        m
    }

    /// The matrix of `∂` from the simplices `cols` to the union of their facets.
    pub fn boundary_of(field: Field, cols: Vec<Simplex>) -> Self {
        let mut rows: Vec<Simplex> = cols
            .iter()
            .flat_map(|s| s.boundary_faces().map(|(_, t)| t).collect::<Vec<_>>())
            .collect();
        rows.sort();
        rows.dedup();
        SparseMatrix::boundary_onto(field, rows, cols)
    }

    /// The matrix of `∂` with prescribed row labels, which must contain every
    /// facet of every column simplex.
    pub fn boundary_onto(field: Field, rows: Vec<Simplex>, cols: Vec<Simplex>) -> Self {
        let mut m = SparseMatrix::zeros(field, rows, cols);
        for j in 0..m.cols.len() {
            let mut col: SparseVec = m.cols[j]
                .boundary_faces()
                .map(|(sign, t)| (m.row_index[&t], field.from_sign(sign)))
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            m.columns[j] = col;
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_labels(&self) -> &[Simplex] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[Simplex] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.columns[col]
            .binary_search_by_key(&row, |e| e.0)
            .map(|k| self.columns[col][k].1)
            .unwrap_or(0)
    }

    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        let value = value % self.field.p();
        let c = &mut self.columns[col];
        match c.binary_search_by_key(&row, |e| e.0) {
            Ok(k) if value == 0 => {
                c.remove(k);
            }
            Ok(k) => c[k].1 = value,
            Err(k) if value != 0 => c.insert(k, (row, value)),
            Err(_) => {}
        }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    fn chain_to_vec(&self, c: &Chain) -> Option<SparseVec> {
        let mut v: SparseVec = Vec::with_capacity(c.len());
        for (s, coeff) in c.terms() {
            v.push((*self.row_index.get(s)?, coeff));
        }
        v.sort_unstable_by_key(|e| e.0);
        Some(v)
    }

    fn vec_to_chain(&self, labels: &[Simplex], v: &[(usize, u32)], dim: isize) -> Chain {
        let mut c = Chain::zero(dim, self.field);
        for &(i, x) in v {
            c.add_term(labels[i].clone(), x);
        }
        c
    }

    fn col_dim(&self) -> isize {
        self.col_dim
    }

    fn row_dim(&self) -> isize {
        self.row_dim
    }

    /// Overrides the dimensions reported for chains over the rows and columns,
    /// which matters only when a label list is empty.
    pub fn with_dims(mut self, row_dim: isize, col_dim: isize) -> Self {
        self.row_dim = row_dim;
        self.col_dim = col_dim;
        self
    }

    /// `M·x` for a chain over the column labels. Terms outside the column
    /// labels are ignored.
    pub fn apply(&self, x: &Chain) -> Chain {
        let col_index: HashMap<&Simplex, usize> =
            self.cols.iter().enumerate().map(|(j, s)| (s, j)).collect();
        let mut acc: SparseVec = Vec::new();
        for (s, c) in x.terms() {
            if let Some(&j) = col_index.get(s) {
                acc = axpy(self.field, &acc, c, &self.columns[j]);
            }
        }
        self.vec_to_chain(&self.rows, &acc, self.row_dim())
    }

    /// Restricts to the columns whose labels satisfy `keep`, preserving order.
    pub fn select_columns<F: Fn(&Simplex) -> bool>(&self, keep: F) -> SparseMatrix {
        let mut cols = Vec::new();
        let mut columns = Vec::new();
        for (s, c) in self.cols.iter().zip(&self.columns) {
            if keep(s) {
                cols.push(s.clone());
                columns.push(c.clone());
            }
        }
        SparseMatrix {
            field: self.field,
            rows: self.rows.clone(),
            cols,
            row_index: self.row_index.clone(),
            columns,
            row_dim: self.row_dim,
            col_dim: self.col_dim,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.field, self.cols.clone(), self.rows.clone())
            .with_dims(self.col_dim, self.row_dim);
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                t.columns[i].push((j, v));
            }
        }
        t
    }
}

/// Incremental echelon basis: vectors are reduced against stored pivots
/// (keyed by their lowest index) while tracking the combination of inserted
/// vectors that produced them.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    pivots: HashMap<usize, usize>,
    // (reduced vector, combination over inserted vectors, low index)
    basis: Vec<(SparseVec, SparseVec, usize)>,
}

/// Result of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub residual: SparseVec,
    /// `v = residual + Σ combination[k]·(inserted vector k)`.
    pub combination: SparseVec,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            pivots: HashMap::new(),
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, v: &[(usize, u32)]) -> Reduction {
        let f = self.field;
        let mut residual: SparseVec = v.to_vec();
        let mut combination: SparseVec = Vec::new();
        while let Some(&(low, x)) = residual.last() {
            let Some(&k) = self.pivots.get(&low) else {
                break;
            };
            let (r, comb, _) = &self.basis[k];
            let pivot = r.last().expect("basis vectors are nonzero").1;
            let s = f.mul(x, f.inv(pivot).expect("nonzero pivot"));
            residual = axpy(f, &residual, f.neg(s), r);
            combination = axpy(f, &combination, s, comb);
        }
        Reduction {
            residual,
            combination,
        }
    }

    /// Inserts `v`; returns `true` if it was independent of the basis.
    pub fn insert(&mut self, v: &[(usize, u32)]) -> bool {
        let k = self.basis.len();
        let red = self.reduce(v);
        if red.residual.is_empty() {
            return false;
        }
        // residual = v - Σ comb_j·e_j, so in terms of inserted vectors it is e_k - comb
        let f = self.field;
        let mut comb: SparseVec = red
            .combination
            .iter()
            .map(|&(j, c)| (j, f.neg(c)))
            .collect();
        comb.push((k, 1));
        let low = red.residual.last().unwrap().0;
        self.pivots.insert(low, k);
        self.basis.push((red.residual, comb, low));
        true
    }

    /// Drops every basis vector inserted after the first `len`.
    pub fn truncate(&mut self, len: usize) {
        while self.basis.len() > len {
            let (_, _, low) = self.basis.pop().unwrap();
            self.pivots.remove(&low);
        }
    }
}

/// Full column reduction of a list of sparse columns.
struct ColumnReduction {
    rank: usize,
    kernel: Vec<SparseVec>,
    echelon: Echelon,
    // index in echelon -> original column
    echelon_cols: Vec<usize>,
}

fn reduce_columns(field: Field, columns: &[SparseVec]) -> ColumnReduction {
    let f = field;
    let mut echelon = Echelon::new(f);
    let mut echelon_cols = Vec::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let red = echelon.reduce(col);
        if red.residual.is_empty() {
            // col = Σ comb_k·(echelon input k); translate inputs back to columns
            let mut v: SparseVec = red
                .combination
                .iter()
                .map(|&(k, c)| (echelon_cols[k], f.neg(c)))
                .collect();
            v.push((j, 1));
            kernel.push(v);
        } else {
            echelon.insert(col);
            echelon_cols.push(j);
        }
    }
    ColumnReduction {
        rank: echelon.rank(),
        kernel,
        echelon,
        echelon_cols,
    }
}

/// Rank of the span of `columns`.
pub fn rank_of_columns(field: Field, columns: &[SparseVec]) -> usize {
    reduce_columns(field, columns).rank
}

/// A basis of the dependencies among `columns`: each vector `v` satisfies
/// `Σ v[j]·columns[j] = 0`.
pub fn kernel_of_columns(field: Field, columns: &[SparseVec]) -> Vec<SparseVec> {
    reduce_columns(field, columns).kernel
}

/// A linearly independent list of chains spanning a subspace.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub dim: isize,
    pub vectors: Vec<Chain>,
}

impl SubspaceBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    reduce_columns(m.field, &m.columns).rank
}

/// Basis of the right kernel, as chains over the column labels.
pub fn kernel_basis(m: &SparseMatrix) -> SubspaceBasis {
    let red = reduce_columns(m.field, &m.columns);
    let dim = m.col_dim();
    SubspaceBasis {
        dim,
        vectors: red
            .kernel
            .iter()
            .map(|v| m.vec_to_chain(&m.cols, v, dim))
            .collect(),
    }
}

/// Some `x` with `M·x = b`, or `None` when `b` is outside the column space.
/// Only the independent (pivot) columns are used, so the answer is unique
/// whenever the columns are independent.
pub fn solve(m: &SparseMatrix, b: &Chain) -> Option<Chain> {
    let red = reduce_columns(m.field, &m.columns);
    let bv = m.chain_to_vec(b)?;
    let r = red.echelon.reduce(&bv);
    if !r.residual.is_empty() {
        return None;
    }
    let f = m.field;
    let mut x: SparseVec = Vec::new();
    for &(k, c) in &r.combination {
        x = axpy(f, &x, c, &[(red.echelon_cols[k], 1)]);
    }
    Some(m.vec_to_chain(&m.cols, &x, m.col_dim()))
}

/// Reduced Betti number `dim ker ∂_d - rank ∂_{d+1}` over `field`.
pub fn betti_reduced(k: &Complex, d: isize, field: Field) -> usize {
    if d < -1 {
        return 0;
    }
    let faces_d = k.faces(d).len();
    let rank_d = if d >= 0 {
        rank(&k.boundary_matrix(d, field))
    } else {
        0
    };
    let rank_up = if k.faces(d + 1).is_empty() {
        0
    } else {
        rank(&k.boundary_matrix(d + 1, field))
    };
    faces_d - rank_d - rank_up
}

/// Dimension of the space of cycles supported on a set of equal-dimension simplices.
pub fn cycle_space_dim(faces: &[Simplex], field: Field) -> usize {
    if faces.is_empty() {
        return 0;
    }
    let m = SparseMatrix::boundary_of(field, faces.to_vec());
    m.ncols() - rank(&m)
}

/// Orders used to pick "compressed" families of `(r+1)`-subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompressionOrder {
    /// Compare by largest differing element (the initial segments are `[m]`-skeleta).
    Colex,
    /// Lexicographic order reversed.
    ReverseLex,
}

/// The first `t` of the `(r+1)`-subsets of `[n]` in the given order.
pub fn compressed_family(n: u32, r: usize, t: usize, order: CompressionOrder) -> Vec<Simplex> {
    let mut all = subsets(n, r + 1);
    match order {
        CompressionOrder::Colex => {
            all.sort_by(|a, b| a.vertices().iter().rev().cmp(b.vertices().iter().rev()))
        }
        CompressionOrder::ReverseLex => all.reverse(),
    }
    all.truncate(t);
    all
}

pub fn check_dims(faces: &[Simplex]) -> Result<isize> {
    let d = faces.first().map(Simplex::dim).unwrap_or(0);
    if let Some(bad) = faces.iter().find(|s| s.dim() != d) {
        return Err(crate::Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    Ok(d)
}
