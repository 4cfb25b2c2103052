//! Abstract cell complexes given as graded posets with boundary chains, the
//! three axioms (closed cells are lattices, `∂∂ = 0`, cell boundaries are
//! simple cycles), and open-face removal on simplicial sphere boundaries.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::facet_graph::Graph;
use crate::field::Field;
use crate::linalg::{axpy, betti_reduced, kernel_of_columns, SparseVec};
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: isize,
}

/// A graded poset of open cells with a boundary chain for each cell.
/// Cell 0 is always the unique cell of dimension -1.
#[derive(Clone, Debug)]
pub struct CellPoset {
    field: Field,
    cells: Vec<Cell>,
    index: HashMap<String, usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    boundary: Vec<SparseVec>,
    // below[x][y] == true iff y <= x
    below: Vec<Vec<bool>>,
}

impl CellPoset {
    /// Builds a poset from cells, covering pairs `(lower, upper)` and boundary
    /// chains given as `(facet id, coefficient)` lists. A missing bottom cell
    /// is added, covered by every 0-cell with boundary coefficient 1.
    pub fn new(
        field: Field,
        cells: Vec<Cell>,
        covers: Vec<(String, String)>,
        boundary: BTreeMap<String, Vec<(String, i64)>>,
    ) -> Result<Self> {
        let mut cells = cells;
        let mut covers = covers;
        let mut boundary = boundary;
        let bottoms: Vec<&Cell> = cells.iter().filter(|c| c.dim == -1).collect();
        match bottoms.len() {
            0 => {
                let bottom = "∅".to_string();
                let zero: Vec<String> = cells
                    .iter()
                    .filter(|c| c.dim == 0)
                    .map(|c| c.id.clone())
                    .collect();
                cells.insert(
                    0,
                    Cell {
                        id: bottom.clone(),
                        dim: -1,
                    },
                );
                for v in zero {
                    covers.push((bottom.clone(), v.clone()));
                    boundary
                        .entry(v)
                        .or_insert_with(|| vec![(bottom.clone(), 1)]);
                }
            }
            1 => {
                let pos = cells.iter().position(|c| c.dim == -1).unwrap();
                let b = cells.remove(pos);
                cells.insert(0, b);
            }
            _ => {
                return Err(Error::malformed(
                    "cells",
                    "more than one cell of dimension -1",
                ))
            }
        }
        let mut index = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if c.dim < -1 {
                return Err(Error::malformed(
                    format!("cells[{}].dim", c.id),
                    "dimension below -1",
                ));
            }
            if index.insert(c.id.clone(), i).is_some() {
                return Err(Error::malformed(
                    "cells",
                    format!("duplicate id `{}`", c.id),
                ));
            }
        }
        let lookup = |id: &str, field: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::malformed(field, format!("unknown cell `{id}`")))
        };
        let n = cells.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (k, (lo, hi)) in covers.iter().enumerate() {
            let (a, b) = (lookup(lo, "covers")?, lookup(hi, "covers")?);
            if cells[a].dim + 1 != cells[b].dim {
                return Err(Error::malformed(
                    format!("covers[{k}]"),
                    format!("`{lo}` and `{hi}` do not differ in dimension by one"),
                ));
            }
            down[b].push(a);
            up[a].push(b);
        }
        for v in down.iter_mut().chain(up.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        for (i, c) in cells.iter().enumerate().skip(1) {
            if down[i].is_empty() {
                return Err(Error::malformed(
                    "covers",
                    format!(
                        "cell `{}` covers nothing, so the bottom cell is not unique",
                        c.id
                    ),
                ));
            }
        }
        let mut chains = vec![Vec::new(); n];
        for (id, terms) in &boundary {
            let i = lookup(id, "boundary")?;
            let mut v: SparseVec = Vec::new();
            for (fid, c) in terms {
                let j = lookup(fid, &format!("boundary.{id}"))?;
                if down[i].binary_search(&j).is_err() {
                    return Err(Error::malformed(
                        format!("boundary.{id}"),
                        format!("`{fid}` is not a facet of `{id}`"),
                    ));
                }
                v = axpy(field, &v, field.reduce(*c), &[(j, 1)]);
            }
            chains[i] = v;
        }
        // transitive closure of the cover relation, processed by dimension
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| cells[i].dim);
        let mut below = vec![vec![false; n]; n];
        for &x in &order {
            below[x][x] = true;
            for &y in &down[x] {
                let row = below[y].clone();
                for (dst, src) in below[x].iter_mut().zip(row) {
                    *dst |= src;
                }
            }
        }
        Ok(CellPoset {
            field,
            cells,
            index,
            down,
            up,
            boundary: chains,
            below,
        })
    }

    /// Every face of `k` becomes a cell named by its vertex tuple.
    pub fn from_complex(k: &Complex, field: Field) -> Result<Self> {
        let cells: Vec<Cell> = k
            .all_faces()
            .map(|s| Cell {
                id: s.to_string(),
                dim: s.dim(),
            })
            .collect();
        let mut covers = Vec::new();
        let mut boundary = BTreeMap::new();
        for s in k.all_faces().filter(|s| !s.is_empty()) {
            let terms: Vec<(String, i64)> = s
                .boundary_faces()
                .map(|(sign, t)| (t.to_string(), sign as i64))
                .collect();
            for (t, _) in &terms {
                covers.push((t.clone(), s.to_string()));
            }
            boundary.insert(s.to_string(), terms);
        }
        CellPoset::new(field, cells, covers, boundary)
    }

    /// Builds the face poset of a polytope given by the vertex sets of its
    /// faces (vertices included as singletons, the empty face implied).
    /// Covers are inclusions between faces one dimension apart; boundary
    /// chains are the unique cycles on each cell's facets, normalized so the
    /// first facet has coefficient 1.
    pub fn from_vertex_faces(
        field: Field,
        faces: &[(String, isize, BTreeSet<u32>)],
    ) -> Result<Self> {
        let mut cells = vec![Cell {
            id: "∅".into(),
            dim: -1,
        }];
        cells.extend(faces.iter().map(|(id, dim, _)| Cell {
            id: id.clone(),
            dim: *dim,
        }));
        let mut covers = Vec::new();
        for (lo, dl, vl) in faces {
            if *dl == 0 {
                covers.push(("∅".to_string(), lo.clone()));
            }
            for (hi, dh, vh) in faces {
                if *dh == dl + 1 && vl.is_subset(vh) {
                    covers.push((lo.clone(), hi.clone()));
                }
            }
        }
        let mut poset = CellPoset::new(field, cells, covers, BTreeMap::new())?;
        let mut ids: Vec<usize> = (0..poset.cells.len()).collect();
        ids.sort_by_key(|&i| poset.cells[i].dim);
        for i in ids {
            if poset.cells[i].dim < 0 {
                continue;
            }
            let facets = poset.down[i].clone();
            let cols: Vec<SparseVec> = facets.iter().map(|&j| poset.boundary[j].clone()).collect();
            let ker = kernel_of_columns(field, &cols);
            if ker.len() != 1 || ker[0].len() != facets.len() {
                return Err(Error::InvalidParameter(format!(
                    "cell `{}` has no unique boundary cycle",
                    poset.cells[i].id
                )));
            }
            let v = &ker[0];
            let scale = field.inv(v[0].1)?;
            poset.boundary[i] = v
                .iter()
                .map(|&(k, c)| (facets[k], field.mul(c, scale)))
                .collect();
        }
        Ok(poset)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.cells[i].id
    }

    pub fn dim(&self, i: usize) -> isize {
        self.cells[i].dim
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// The cells covered by `i`.
    pub fn facets_of(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// The cells covering `i`.
    pub fn cofacets_of(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn boundary_of(&self, i: usize) -> &[(usize, u32)] {
        &self.boundary[i]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.below[y][x]
    }

    /// The closed cell of `i`: every cell below it, including itself.
    pub fn closed_cell(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.below[i][j]).collect()
    }

    /// Boundary of a cell chain given as `(cell, coefficient)` pairs.
    pub fn boundary_chain(&self, z: &[(usize, u32)]) -> SparseVec {
        let mut acc = Vec::new();
        for &(i, c) in z {
            acc = axpy(self.field, &acc, c, &self.boundary[i]);
        }
        acc
    }

    /// Cells of dimension `d`, in input order.
    pub fn cells_of_dim(&self, d: isize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.cells[i].dim == d)
            .collect()
    }

    /// Some cell lies above every cell of `set`; vacuously true for `∅`.
    pub fn is_compatible(&self, set: &[usize]) -> bool {
        (0..self.len()).any(|c| set.iter().all(|&x| self.below[c][x]))
    }

    /// Union of the closed cells of `set`.
    pub fn closure_of(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| set.iter().any(|&x| self.below[x][j]))
            .collect()
    }

    /// Reduced Betti number of a downward-closed set of cells.
    pub fn betti_reduced(&self, cells: &[usize], d: isize) -> usize {
        let in_set: BTreeSet<usize> = cells.iter().copied().collect();
        let of_dim = |k: isize| -> Vec<usize> {
            cells
                .iter()
                .copied()
                .filter(|&i| self.cells[i].dim == k)
                .collect()
        };
        let rank = |k: isize| -> usize {
            if k < 0 {
                return 0;
            }
            let cols: Vec<SparseVec> = of_dim(k)
                .iter()
                .map(|&i| {
                    debug_assert!(self.boundary[i].iter().all(|(j, _)| in_set.contains(j)));
                    self.boundary[i].clone()
                })
                .collect();
            cols.len() - kernel_of_columns(self.field, &cols).len()
        };
        of_dim(d).len() - rank(d) - rank(d + 1)
    }
}

/// Result of one axiom check; a failure carries a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomOutcome {
    Pass,
    Fail(String),
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        *self == AxiomOutcome::Pass
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub lattice: AxiomOutcome,
    pub boundary_squared: AxiomOutcome,
    pub simple_boundaries: AxiomOutcome,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.lattice.passed() && self.boundary_squared.passed() && self.simple_boundaries.passed()
    }
}

fn check_lattices(p: &CellPoset) -> AxiomOutcome {
    for c in 0..p.len() {
        let cell = p.closed_cell(c);
        for (a, &x) in cell.iter().enumerate() {
            for &y in &cell[a + 1..] {
                let lower: Vec<usize> = cell
                    .iter()
                    .copied()
                    .filter(|&m| p.le(m, x) && p.le(m, y))
                    .collect();
                let meets = lower
                    .iter()
                    .filter(|&&m| lower.iter().all(|&l| p.le(l, m)))
                    .count();
                if meets != 1 {
                    return AxiomOutcome::Fail(format!(
                        "`{}` and `{}` have no unique meet inside `{}`",
                        p.id(x),
                        p.id(y),
                        p.id(c)
                    ));
                }
                let upper: Vec<usize> = cell
                    .iter()
                    .copied()
                    .filter(|&u| p.le(x, u) && p.le(y, u))
                    .collect();
                let joins = upper
                    .iter()
                    .filter(|&&u| upper.iter().all(|&w| p.le(u, w)))
                    .count();
                if joins != 1 {
                    return AxiomOutcome::Fail(format!(
                        "`{}` and `{}` have no unique join inside `{}`",
                        p.id(x),
                        p.id(y),
                        p.id(c)
                    ));
                }
            }
        }
    }
    AxiomOutcome::Pass
}

fn check_boundary_squared(p: &CellPoset) -> AxiomOutcome {
    for c in 0..p.len() {
        if p.dim(c) < 0 {
            continue;
        }
        let supp: Vec<usize> = p.boundary_of(c).iter().map(|e| e.0).collect();
        if supp != p.facets_of(c) {
            return AxiomOutcome::Fail(format!(
                "boundary of `{}` is not supported on all of its facets",
                p.id(c)
            ));
        }
        if !p.boundary_chain(p.boundary_of(c)).is_empty() {
            return AxiomOutcome::Fail(format!("∂∂ of `{}` is nonzero", p.id(c)));
        }
    }
    AxiomOutcome::Pass
}

fn check_simple_boundaries(p: &CellPoset) -> AxiomOutcome {
    for c in 0..p.len() {
        if p.dim(c) < 0 {
            continue;
        }
        let ridges: Vec<usize> = p
            .closed_cell(c)
            .into_iter()
            .filter(|&j| p.dim(j) == p.dim(c) - 1)
            .collect();
        let cols: Vec<SparseVec> = ridges.iter().map(|&j| p.boundary_of(j).to_vec()).collect();
        let ker = kernel_of_columns(p.field(), &cols);
        if ker.len() != 1 {
            return AxiomOutcome::Fail(format!(
                "closed cell `{}` carries {} independent cycles below the top",
                p.id(c),
                ker.len()
            ));
        }
    }
    AxiomOutcome::Pass
}

pub fn validate_axioms(p: &CellPoset) -> AxiomReport {
    AxiomReport {
        lattice: check_lattices(p),
        boundary_squared: check_boundary_squared(p),
        simple_boundaries: check_simple_boundaries(p),
    }
}

/// Graph on the given cells (all of one dimension), adjacent when they
/// cover a common cell.
pub fn cell_facet_graph(p: &CellPoset, top: &[usize]) -> Result<Graph> {
    if let Some(&bad) = top.iter().find(|&&c| p.dim(c) != p.dim(top[0])) {
        return Err(Error::DimensionMismatch {
            expected: p.dim(top[0]),
            found: p.dim(bad),
        });
    }
    let mut edges = Vec::new();
    for a in 0..top.len() {
        for b in a + 1..top.len() {
            let fa = p.facets_of(top[a]);
            if p.facets_of(top[b])
                .iter()
                .any(|x| fa.binary_search(x).is_ok())
            {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(top.len(), edges))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCycleReport {
    pub is_cycle: bool,
    pub is_simple: bool,
    pub compatible: bool,
    pub size: usize,
    /// `Some(size >= d + 2)` when the support is compatible.
    pub min_size_ok: Option<bool>,
}

pub fn cell_cycle_check(p: &CellPoset, z: &[(usize, u32)]) -> CellCycleReport {
    let supp: Vec<usize> = z.iter().filter(|e| e.1 != 0).map(|e| e.0).collect();
    let is_cycle = p.boundary_chain(z).is_empty();
    let cols: Vec<SparseVec> = supp.iter().map(|&i| p.boundary_of(i).to_vec()).collect();
    let ker = kernel_of_columns(p.field(), &cols);
    let is_simple = is_cycle && !supp.is_empty() && ker.len() == 1 && ker[0].len() == supp.len();
    let compatible = p.is_compatible(&supp);
    let d = supp.first().map(|&i| p.dim(i)).unwrap_or(0);
    CellCycleReport {
        is_cycle,
        is_simple,
        compatible,
        size: supp.len(),
        min_size_ok: (compatible && is_cycle && !supp.is_empty())
            .then_some(supp.len() as isize >= d + 2),
    }
}

fn face(
    id: impl Into<String>,
    dim: isize,
    verts: impl IntoIterator<Item = u32>,
) -> (String, isize, BTreeSet<u32>) {
    (id.into(), dim, verts.into_iter().collect())
}

/// A convex `k`-gon: vertices `v1..vk`, edges `e1..ek` with `e_i` from
/// `v_i` to `v_{i+1}`, and the 2-cell `F`.
pub fn polygon_poset(k: u32, field: Field) -> Result<CellPoset> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "a polygon needs 3 sides, got {k}"
        )));
    }
    let mut cells: Vec<Cell> = (1..=k)
        .map(|i| Cell {
            id: format!("v{i}"),
            dim: 0,
        })
        .collect();
    cells.extend((1..=k).map(|i| Cell {
        id: format!("e{i}"),
        dim: 1,
    }));
    cells.push(Cell {
        id: "F".into(),
        dim: 2,
    });
    let mut covers = Vec::new();
    let mut boundary = BTreeMap::new();
    for i in 1..=k {
        let j = i % k + 1;
        covers.push((format!("v{i}"), format!("e{i}")));
        covers.push((format!("v{j}"), format!("e{i}")));
        covers.push((format!("e{i}"), "F".to_string()));
        boundary.insert(
            format!("e{i}"),
            vec![(format!("v{j}"), 1), (format!("v{i}"), -1)],
        );
    }
    boundary.insert("F".into(), (1..=k).map(|i| (format!("e{i}"), 1)).collect());
    CellPoset::new(field, cells, covers, boundary)
}

/// The solid 3-cube with all its faces; the top cell is `cube`.
pub fn cube_poset(field: Field) -> Result<CellPoset> {
    // a face is a pattern in {0,1,*}^3; vertices are numbered by bitmask + 1
    let mut faces = Vec::new();
    for pattern in 0..27u32 {
        let digits = [pattern % 3, pattern / 3 % 3, pattern / 9];
        let free = digits.iter().filter(|&&x| x == 2).count() as isize;
        let verts: Vec<u32> = (0..8u32)
            .filter(|v| (0..3).all(|b| digits[b] == 2 || digits[b] == (v >> b & 1)))
            .map(|v| v + 1)
            .collect();
        let name: String = digits
            .iter()
            .map(|&x| ['0', '1', '*'][x as usize])
            .collect();
        let id = if free == 3 { "cube".to_string() } else { name };
        faces.push(face(id, free, verts));
    }
    CellPoset::from_vertex_faces(field, &faces)
}

/// The solid triangular prism over triangles `(1,2,3)` and `(4,5,6)`; the
/// top cell is `prism`.
pub fn prism_poset(field: Field) -> Result<CellPoset> {
    let mut faces = Vec::new();
    for v in 1..=6 {
        faces.push(face(format!("{v}"), 0, [v]));
    }
    for (a, b) in [
        (1, 2),
        (1, 3),
        (2, 3),
        (4, 5),
        (4, 6),
        (5, 6),
        (1, 4),
        (2, 5),
        (3, 6),
    ] {
        faces.push(face(format!("{a}{b}"), 1, [a, b]));
    }
    faces.push(face("123", 2, [1, 2, 3]));
    faces.push(face("456", 2, [4, 5, 6]));
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        faces.push(face(
            format!("{a}{b}{}{}", a + 3, b + 3),
            2,
            [a, b, a + 3, b + 3],
        ));
    }
    faces.push(face("prism", 3, 1..=6));
    CellPoset::from_vertex_faces(field, &faces)
}

/// Four polygons on vertices `1..5` whose signed sum is a 2-cycle although
/// no cell contains them all: the pentagon `C1` and triangles `C2`, `C3`, `C4`.
pub fn pentagon_poset(field: Field) -> Result<CellPoset> {
    let edges = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (1, 4)];
    let mut cells: Vec<Cell> = (1..=5)
        .map(|v| Cell {
            id: format!("({v})"),
            dim: 0,
        })
        .collect();
    let eid = |a: u32, b: u32| format!("({a},{b})");
    cells.extend(edges.iter().map(|&(a, b)| Cell {
        id: eid(a, b),
        dim: 1,
    }));
    for c in ["C1", "C2", "C3", "C4"] {
        cells.push(Cell {
            id: c.into(),
            dim: 2,
        });
    }
    let mut covers = Vec::new();
    let mut boundary = BTreeMap::new();
    for &(a, b) in &edges {
        covers.push((format!("({a})"), eid(a, b)));
        covers.push((format!("({b})"), eid(a, b)));
        boundary.insert(
            eid(a, b),
            vec![(format!("({b})"), 1), (format!("({a})"), -1)],
        );
    }
    type SignedEdges = Vec<((u32, u32), i64)>;
    let polys: [(&str, SignedEdges); 4] = [
        (
            "C1",
            vec![
                ((1, 2), 1),
                ((2, 3), 1),
                ((3, 4), 1),
                ((4, 5), 1),
                ((1, 5), -1),
            ],
        ),
        ("C2", vec![((1, 2), 1), ((2, 3), 1), ((1, 3), -1)]),
        ("C3", vec![((1, 3), 1), ((3, 4), 1), ((1, 4), -1)]),
        ("C4", vec![((1, 4), 1), ((4, 5), 1), ((1, 5), -1)]),
    ];
    for (id, terms) in polys {
        for &((a, b), _) in &terms {
            covers.push((eid(a, b), id.to_string()));
        }
        boundary.insert(
            id.to_string(),
            terms
                .into_iter()
                .map(|((a, b), c)| (eid(a, b), c))
                .collect(),
        );
    }
    CellPoset::new(field, cells, covers, boundary)
}

/// The 2-cycle `C1 - C2 - C3 - C4` on [`pentagon_poset`].
pub fn pentagon_cycle(p: &CellPoset) -> Vec<(usize, u32)> {
    let f = p.field();
    let mut z: Vec<(usize, u32)> = [("C1", 1), ("C2", -1), ("C3", -1), ("C4", -1)]
        .iter()
        .map(|&(id, c)| (p.index_of(id).expect("pentagon cell"), f.reduce(c)))
        .collect();
    z.sort_unstable();
    z
}

/// `B` minus every face containing a member of `removed`.
pub fn open_face_removal(b: &Complex, removed: &[Simplex]) -> Complex {
    let kept = b
        .all_faces()
        .filter(|s| !removed.iter().any(|f| f.is_face_of(s)));
    let mut out = Complex::closure(kept.cloned(), b.n()).expect("faces of a complex");
    if !removed.iter().any(Simplex::is_empty) && out.dim() < -1 && b.dim() >= -1 {
        out = Complex::closure([Simplex::empty()], b.n()).expect("empty face");
    }
    out
}

/// Homological `r`-connectivity: reduced Betti numbers `0..=r` vanish.
pub fn is_homologically_connected(k: &Complex, r: isize, field: Field) -> bool {
    (0..=r).all(|i| betti_reduced(k, i, field) == 0)
}

/// Which removal sets to try.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalSets {
    /// Every set of at most `d - r` nonempty faces.
    Exhaustive,
    /// This many seeded random sets per size.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Default)]
pub struct MixedConnectivityReport {
    pub instances: usize,
    /// Removal sets after which connectivity or the `r`-skeleton failed.
    pub violations: Vec<Vec<Simplex>>,
    /// Removal sets where the direct and the dual Betti numbers differ.
    pub duality_mismatches: Vec<Vec<Simplex>>,
}

/// Complex spanned by the complements (in `[n]`) of the removed faces,
/// always containing the empty face.
pub fn complement_closure(removed: &[Simplex], n: u32) -> Complex {
    Complex::closure(
        removed
            .iter()
            .map(|f| f.complement(n))
            .chain([Simplex::empty()]),
        n,
    )
    .expect("complements lie in [n]")
}

/// Nonempty sets of at most `max` faces: all of them, or `count` seeded
/// random sets of each size. The empty set comes first.
pub fn removal_sets(faces: &[Simplex], max: usize, mode: RemovalSets) -> Vec<Vec<Simplex>> {
    use rand::seq::index::sample;
    use rand::SeedableRng;
    let mut out = vec![Vec::new()];
    match mode {
        RemovalSets::Exhaustive => {
            fn rec(
                faces: &[Simplex],
                start: usize,
                max: usize,
                cur: &mut Vec<Simplex>,
                out: &mut Vec<Vec<Simplex>>,
            ) {
                if cur.len() == max {
                    return;
                }
                for i in start..faces.len() {
                    cur.push(faces[i].clone());
                    out.push(cur.clone());
                    rec(faces, i + 1, max, cur, out);
                    cur.pop();
                }
            }
            rec(faces, 0, max, &mut Vec::new(), &mut out);
        }
        RemovalSets::Sampled { count, seed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for size in 1..=max.min(faces.len()) {
                for _ in 0..count {
                    let mut set: Vec<Simplex> = sample(&mut rng, faces.len(), size)
                        .into_iter()
                        .map(|i| faces[i].clone())
                        .collect();
                    set.sort();
                    out.push(set);
                }
            }
        }
    }
    out
}

/// Outcome of removing one family of open faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RemovalOutcome {
    /// Homologically `r`-connected with a nonempty `r`-skeleton.
    pub connected: bool,
    /// Direct and dual Betti numbers agree; `None` when `b` is not the
    /// boundary of the simplex on `[d+2]`.
    pub dual_agrees: Option<bool>,
}

fn is_simplex_boundary(b: &Complex, d: usize) -> bool {
    b.n() as usize == d + 2 && b.dim() == d as isize && b.faces(d as isize).len() == d + 2
}

pub fn removal_outcome(
    b: &Complex,
    set: &[Simplex],
    d: usize,
    r: usize,
    field: Field,
) -> RemovalOutcome {
    let rest = open_face_removal(b, set);
    let connected =
        is_homologically_connected(&rest, r as isize, field) && !rest.faces(r as isize).is_empty();
    let dual_agrees = is_simplex_boundary(b, d).then(|| {
        let dual = complement_closure(set, b.n());
        (-1..=d as isize).all(|i| {
            betti_reduced(&rest, i, field) == betti_reduced(&dual, d as isize - i - 1, field)
        })
    });
    RemovalOutcome {
        connected,
        dual_agrees,
    }
}

/// Removes every admissible family of at most `d - r` open faces from the
/// boundary complex `b` of a simplicial `(d+1)`-polytope and checks that
/// reduced homology vanishes up to degree `r` with a nonempty `r`-skeleton.
/// When `b` is the boundary of the simplex on `[d+2]`, each instance is also
/// compared against the Betti numbers of the complement complex.
pub fn mixed_connectivity_check(
    b: &Complex,
    d: usize,
    r: usize,
    field: Field,
    mode: RemovalSets,
) -> Result<MixedConnectivityReport> {
    if r >= d {
        return Err(Error::InvalidParameter(format!(
            "need r < d, got r={r}, d={d}"
        )));
    }
    let faces: Vec<Simplex> = b.all_faces().filter(|s| !s.is_empty()).cloned().collect();
    let sets = removal_sets(&faces, d - r, mode);
    let results: Vec<RemovalOutcome> = sets
        .par_iter()
        .map(|set| removal_outcome(b, set, d, r, field))
        .collect();
    let mut report = MixedConnectivityReport {
        instances: sets.len(),
        ..Default::default()
    };
    for (set, out) in sets.into_iter().zip(results) {
        if !out.connected {
            report.violations.push(set.clone());
        }
        if out.dual_agrees == Some(false) {
            report.duality_mismatches.push(set);
        }
    }
    Ok(report)
}

/// Names accepted by [`zoo_poset`].
pub const ZOO: &[&str] = &[
    "polygon:3",
    "polygon:4",
    "polygon:5",
    "polygon:8",
    "cube",
    "prism",
    "pentagon",
    "simplex:3",
    "simplex-boundary:2",
    "simplex-boundary:3",
    "cross-polytope:2",
    "torus:4",
];

pub fn zoo_poset(name: &str, field: Field) -> Result<CellPoset> {
    let (kind, arg) = match name.split_once(':') {
        Some((k, a)) => (
            k,
            Some(
                a.parse::<u32>()
                    .map_err(|_| Error::InvalidParameter(format!("bad size in `{name}`")))?,
            ),
        ),
        None => (name, None),
    };
    let import = |k: Complex| CellPoset::from_complex(&k, field);
    match (kind, arg) {
        ("polygon", Some(k)) => polygon_poset(k, field),
        ("cube", None) => cube_poset(field),
        ("prism", None) => prism_poset(field),
        ("pentagon", None) => pentagon_poset(field),
        ("simplex", Some(d)) => import(Complex::closure([Simplex::from_set(1..=d + 1)], d + 1)?),
        ("simplex-boundary", Some(d)) => {
            import(crate::generators::simplex_boundary_complex(d as usize))
        }
        ("cross-polytope", Some(d)) => {
            import(crate::generators::cross_polytope_complex(d as usize))
        }
        ("torus", Some(k)) => {
            let z = crate::generators::torus_cycle(k, field)?;
            import(Complex::closure(z.support().cloned(), k * k)?)
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown cell complex `{name}`"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facet_graph::FacetGraph;
    use crate::generators::{cross_polytope_complex, simplex_boundary_complex};
    use crate::simplex;

    fn f(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn simplicial_imports_pass() {
        for k in [
            Complex::closure([simplex![1, 2, 3, 4]], 4).unwrap(),
            simplex_boundary_complex(3),
            cross_polytope_complex(2),
        ] {
            let p = CellPoset::from_complex(&k, f(3)).unwrap();
            let report = validate_axioms(&p);
            assert!(report.all_pass(), "{report:?}");
        }
    }

    #[test]
    fn zoo_passes() {
        for p in [
            polygon_poset(3, f(3)).unwrap(),
            polygon_poset(6, f(5)).unwrap(),
            cube_poset(f(3)).unwrap(),
            prism_poset(f(3)).unwrap(),
            pentagon_poset(f(3)).unwrap(),
        ] {
            assert!(validate_axioms(&p).all_pass(), "{:?}", validate_axioms(&p));
        }
    }

    #[test]
    fn lattice_violation_is_reported() {
        // two 2-cells glued along both edges of a digon-like pair of vertices
        let cells = vec![
            Cell {
                id: "a".into(),
                dim: 0,
            },
            Cell {
                id: "b".into(),
                dim: 0,
            },
            Cell {
                id: "x".into(),
                dim: 1,
            },
            Cell {
                id: "y".into(),
                dim: 1,
            },
            Cell {
                id: "P".into(),
                dim: 2,
            },
        ];
        let covers = [
            ("a", "x"),
            ("b", "x"),
            ("a", "y"),
            ("b", "y"),
            ("x", "P"),
            ("y", "P"),
        ]
        .iter()
        .map(|&(l, h)| (l.to_string(), h.to_string()))
        .collect();
        let mut boundary = BTreeMap::new();
        boundary.insert(
            "x".to_string(),
            vec![("b".to_string(), 1), ("a".to_string(), -1)],
        );
        boundary.insert(
            "y".to_string(),
            vec![("b".to_string(), 1), ("a".to_string(), -1)],
        );
        boundary.insert(
            "P".to_string(),
            vec![("x".to_string(), 1), ("y".to_string(), -1)],
        );
        let p = CellPoset::new(f(3), cells, covers, boundary).unwrap();
        let r = validate_axioms(&p);
        assert!(matches!(r.lattice, AxiomOutcome::Fail(_)));
        assert!(r.boundary_squared.passed());
    }

    #[test]
    fn compatibility() {
        let p = CellPoset::from_complex(&Complex::closure([simplex![1, 2, 3]], 3).unwrap(), f(3))
            .unwrap();
        let faces: Vec<usize> = ["(1,2)", "(2,3)", "(1)"]
            .iter()
            .map(|s| p.index_of(s).unwrap())
            .collect();
        assert!(p.is_compatible(&faces));
        assert!(p.is_compatible(&[]));
        let pent = pentagon_poset(f(3)).unwrap();
        let top: Vec<usize> = ["C1", "C2", "C3", "C4"]
            .iter()
            .map(|s| pent.index_of(s).unwrap())
            .collect();
        assert!(!pent.is_compatible(&top));
    }

    #[test]
    fn cell_graphs() {
        let cube = cube_poset(f(3)).unwrap();
        let squares = cube.cells_of_dim(2);
        let g = cell_facet_graph(&cube, &squares).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.vertex_connectivity(), 4);

        let pent = pentagon_poset(f(3)).unwrap();
        let z = pentagon_cycle(&pent);
        let top: Vec<usize> = z.iter().map(|e| e.0).collect();
        assert_eq!(
            cell_facet_graph(&pent, &top).unwrap().vertex_connectivity(),
            2
        );

        let single = cell_facet_graph(&cube, &[cube.index_of("cube").unwrap()]).unwrap();
        assert_eq!(single.order(), 1);
    }

    #[test]
    fn import_graph_matches_facet_graph() {
        let k = cross_polytope_complex(2);
        let p = CellPoset::from_complex(&k, f(3)).unwrap();
        let top = p.cells_of_dim(2);
        let g = cell_facet_graph(&p, &top).unwrap();
        let facets: Vec<Simplex> = top
            .iter()
            .map(|&i| {
                k.faces(2)
                    .iter()
                    .find(|s| s.to_string() == p.id(i))
                    .unwrap()
                    .clone()
            })
            .collect();
        let fg = FacetGraph::build(&facets).unwrap();
        // both vertex lists are lexicographic, so the identity labelling must be an isomorphism
        assert_eq!(&g, fg.graph());
    }

    #[test]
    fn cell_cycles() {
        let poly = polygon_poset(5, f(3)).unwrap();
        let fcell = poly.index_of("F").unwrap();
        let z = poly.boundary_of(fcell).to_vec();
        let r = cell_cycle_check(&poly, &z);
        assert!(r.is_cycle && r.is_simple && r.compatible);
        assert_eq!(r.min_size_ok, Some(true));

        let cube = cube_poset(f(3)).unwrap();
        let z = cube.boundary_of(cube.index_of("cube").unwrap()).to_vec();
        let r = cell_cycle_check(&cube, &z);
        assert!(r.is_simple && r.compatible);
        assert_eq!(r.size, 6);

        let pent = pentagon_poset(f(3)).unwrap();
        let r = cell_cycle_check(&pent, &pentagon_cycle(&pent));
        assert!(r.is_cycle && r.is_simple && !r.compatible);
        assert_eq!(r.min_size_ok, None);
    }

    #[test]
    fn open_face_removal_examples() {
        let b = simplex_boundary_complex(2);
        let rest = open_face_removal(&b, &[simplex![1]]);
        assert_eq!(rest, Complex::closure([simplex![2, 3, 4]], 4).unwrap());
        assert_eq!(open_face_removal(&b, &[]), b);
        let b4 = simplex_boundary_complex(3);
        let rest = open_face_removal(&b4, &[simplex![1], simplex![2]]);
        assert_eq!(rest.faces(0).len(), 3);
        assert!(is_homologically_connected(&rest, 0, f(2)));
    }

    #[test]
    fn mixed_connectivity_on_small_spheres() {
        let field = f(2);
        let r = mixed_connectivity_check(
            &simplex_boundary_complex(2),
            2,
            0,
            field,
            RemovalSets::Exhaustive,
        )
        .unwrap();
        assert!(r.violations.is_empty() && r.duality_mismatches.is_empty());
        assert_eq!(r.instances, 1 + 14 + 91);
        let oct = cross_polytope_complex(2);
        let r = mixed_connectivity_check(&oct, 2, 1, field, RemovalSets::Exhaustive).unwrap();
        assert!(r.violations.is_empty());
        let r = mixed_connectivity_check(
            &simplex_boundary_complex(3),
            3,
            1,
            field,
            RemovalSets::Exhaustive,
        )
        .unwrap();
        assert!(r.violations.is_empty() && r.duality_mismatches.is_empty());
        assert_eq!(r.instances, 1 + 30 + 435);
    }

    #[test]
    fn removing_too_much_breaks_connectivity() {
        // removing the three edges at a vertex isolates it
        let b = simplex_boundary_complex(2);
        let rest = open_face_removal(&b, &[simplex![1, 2], simplex![1, 3], simplex![1, 4]]);
        assert!(!is_homologically_connected(&rest, 0, f(2)));
    }

    #[test]
    fn zoo_is_valid() {
        for name in ZOO {
            let p = zoo_poset(name, f(3)).unwrap();
            assert!(validate_axioms(&p).all_pass(), "{name}");
        }
        assert!(zoo_poset("polygon", f(3)).is_err());
        assert!(zoo_poset("dodecahedron", f(3)).is_err());
    }
}
