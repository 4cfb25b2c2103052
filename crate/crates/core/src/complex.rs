//! Downward-closed simplicial complexes over `[n]`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseMatrix;
use crate::simplex::Simplex;

static NO_FACES: BTreeSet<Simplex> = BTreeSet::new();

/// A simplicial complex stored per dimension. Slot `k` holds the faces of
/// dimension `k - 1`, so slot 0 is `{∅}` for every nonvoid complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex {
    n: u32,
    faces: Vec<BTreeSet<Simplex>>,
}

impl Complex {
    /// The void complex (no faces at all, not even `∅`).
    pub fn void(n: u32) -> Self {
        Complex {
            n,
            faces: Vec::new(),
        }
    }

    /// Smallest complex containing the given simplices.
    pub fn closure<I: IntoIterator<Item = Simplex>>(simplices: I, n: u32) -> Result<Self> {
        let mut k = Complex::void(n);
        for s in simplices {
            if s.max_vertex() > n {
                return Err(Error::InvalidSimplex {
                    vertices: s.vertices().to_vec(),
                    reason: format!("vertex exceeds n={n}"),
                });
            }
            k.insert_closed(&s);
        }
        Ok(k)
    }

    fn slot(&mut self, d: isize) -> &mut BTreeSet<Simplex> {
        let i = (d + 1) as usize;
        if self.faces.len() <= i {
            self.faces.resize_with(i + 1, BTreeSet::new);
        }
        &mut self.faces[i]
    }

    fn insert_closed(&mut self, s: &Simplex) {
        if self.contains(s) {
            return;
        }
        for face in s.all_faces() {
            let d = face.dim();
            self.slot(d).insert(face);
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Top dimension; -1 for `{∅}` and -2 for the void complex.
    pub fn dim(&self) -> isize {
        self.faces
            .iter()
            .rposition(|s| !s.is_empty())
            .map(|i| i as isize - 1)
            .unwrap_or(-2)
    }

    pub fn faces(&self, d: isize) -> &BTreeSet<Simplex> {
        if d < -1 {
            return &NO_FACES;
        }
        self.faces.get((d + 1) as usize).unwrap_or(&NO_FACES)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.faces(s.dim()).contains(s)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(BTreeSet::len).sum()
    }

    /// Number of faces in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.faces(d).len()).collect()
    }

    /// All faces, lowest dimension first, lexicographic within a dimension.
    pub fn all_faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    /// Maximal faces, in dimension then lexicographic order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in -1..=self.dim() {
            for s in self.faces(d) {
                if !self.has_coface(s) {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Whether some face of dimension one higher contains `s`.
    pub fn has_coface(&self, s: &Simplex) -> bool {
        self.cofaces(s).next().is_some()
    }

    /// The faces of dimension `dim(s) + 1` containing `s`.
    pub fn cofaces<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        let up = self.faces(s.dim() + 1);
        (1..=self.n)
            .filter(move |&v| !s.contains(v))
            .map(move |v| s.with_vertex(v).0)
            .filter(move |t| up.contains(t))
    }

    /// Removes a single face. The caller is responsible for keeping the
    /// complex downward closed (the face must have no cofaces).
    pub fn remove(&mut self, s: &Simplex) -> bool {
        debug_assert!(!self.has_coface(s));
        let d = s.dim();
        if d < -1 || (d + 1) as usize >= self.faces.len() {
            return false;
        }
        let removed = self.faces[(d + 1) as usize].remove(s);
        while self.faces.last().is_some_and(BTreeSet::is_empty) {
            self.faces.pop();
        }
        removed
    }

    /// The subcomplex of faces of dimension at most `d`.
    pub fn skeleton(&self, d: isize) -> Complex {
        Complex {
            n: self.n,
            faces: self
                .faces
                .iter()
                .take((d + 2).max(0) as usize)
                .cloned()
                .collect(),
        }
    }

    /// The boundary matrix from `d`-faces to `(d-1)`-faces, rows and columns
    /// in lexicographic order. For `d = 0` the single row is `∅`.
    pub fn boundary_matrix(&self, d: isize, field: Field) -> SparseMatrix {
        let rows: Vec<Simplex> = self.faces(d - 1).iter().cloned().collect();
        let cols: Vec<Simplex> = self.faces(d).iter().cloned().collect();
        SparseMatrix::boundary_onto(field, rows, cols).with_dims(d - 1, d)
    }
}
