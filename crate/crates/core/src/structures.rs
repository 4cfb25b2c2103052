//! Hypertrees, fundamental cycles, simple cycles, hypercuts, the signed
//! complement duality, and small-scale circuit enumeration.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{boundary, coboundary, Chain};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_of_columns, rank_of_columns, solve, Echelon, SparseMatrix, SparseVec};
use crate::simplex::{binomial, subsets, Simplex};

/// Largest face set accepted by the exhaustive circuit search.
pub const CIRCUIT_LIMIT: usize = 22;

/// Indexes a fixed list of simplices so chains can be turned into sparse vectors.
#[derive(Clone, Debug)]
pub(crate) struct FaceIndex {
    index: HashMap<Simplex, usize>,
}

impl FaceIndex {
    pub(crate) fn new<'a, I: IntoIterator<Item = &'a Simplex>>(faces: I) -> Self {
        let mut index = HashMap::new();
        for s in faces {
            let k = index.len();
            index.entry(s.clone()).or_insert(k);
        }
        FaceIndex { index }
    }

    /// Sparse vector of `chain`, registering unseen simplices on the fly.
    pub(crate) fn vector(&mut self, chain: &Chain) -> SparseVec {
        let mut v: SparseVec = chain
            .terms()
            .map(|(s, c)| {
                let k = self.index.len();
                (*self.index.entry(s.clone()).or_insert(k), c)
            })
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }
}

fn boundary_columns(faces: &[Simplex], field: Field) -> Vec<SparseVec> {
    let mut idx = FaceIndex::new(std::iter::empty());
    faces
        .iter()
        .map(|s| idx.vector(&boundary(&Chain::simplex(s.clone(), field))))
        .collect()
}

fn coboundary_columns(faces: &[Simplex], n: u32, field: Field) -> Vec<SparseVec> {
    let mut idx = FaceIndex::new(std::iter::empty());
    faces
        .iter()
        .map(|s| idx.vector(&coboundary(&Chain::simplex(s.clone(), field), n)))
        .collect()
}

/// A maximal acyclic set of `d`-simplices of the complete complex on `[n]`.
#[derive(Clone, Debug)]
pub struct Hypertree {
    n: u32,
    d: usize,
    field: Field,
    simplices: Vec<Simplex>,
    matrix: SparseMatrix,
}

impl Hypertree {
    /// Validates that `simplices` is acyclic and has `C(n-1, d)` members.
    pub fn new(n: u32, d: usize, field: Field, mut simplices: Vec<Simplex>) -> Result<Self> {
        if (d as u32) >= n {
            return Err(Error::InvalidParameter(format!(
                "need n > d, got n={n}, d={d}"
            )));
        }
        simplices.sort();
        simplices.dedup();
        if let Some(bad) = simplices
            .iter()
            .find(|s| s.len() != d + 1 || s.max_vertex() > n)
        {
            return Err(Error::InvalidSimplex {
                vertices: bad.vertices().to_vec(),
                reason: format!("not a {d}-simplex over [{n}]"),
            });
        }
        let expected = binomial(n as u64 - 1, d as u64) as usize;
        if simplices.len() != expected {
            return Err(Error::PreconditionViolated(format!(
                "a {d}-hypertree on {n} vertices has {expected} simplices, got {}",
                simplices.len()
            )));
        }
        if rank_of_columns(field, &boundary_columns(&simplices, field)) != simplices.len() {
            return Err(Error::PreconditionViolated(
                "simplex set carries a cycle".into(),
            ));
        }
        let matrix = SparseMatrix::boundary_onto(field, subsets(n, d), simplices.clone());
        Ok(Hypertree {
            n,
            d,
            field,
            simplices,
            matrix,
        })
    }

    fn from_order(n: u32, d: usize, field: Field, order: Vec<Simplex>) -> Result<Self> {
        let mut idx = FaceIndex::new(std::iter::empty());
        let mut ech = Echelon::new(field);
        let mut kept = Vec::new();
        for s in order {
            let col = idx.vector(&boundary(&Chain::simplex(s.clone(), field)));
            if ech.insert(&col) {
                kept.push(s);
            }
        }
        Hypertree::new(n, d, field, kept)
    }

    /// Greedy scan of all `d`-simplices in lexicographic order.
    pub fn greedy(n: u32, d: usize, field: Field) -> Result<Self> {
        if (d as u32) >= n {
            return Err(Error::InvalidParameter(format!(
                "need n > d, got n={n}, d={d}"
            )));
        }
        Hypertree::from_order(n, d, field, subsets(n, d + 1))
    }

    /// Greedy scan in a seeded random order.
    pub fn random(n: u32, d: usize, field: Field, seed: u64) -> Result<Self> {
        if (d as u32) >= n {
            return Err(Error::InvalidParameter(format!(
                "need n > d, got n={n}, d={d}"
            )));
        }
        let mut order = subsets(n, d + 1);
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Hypertree::from_order(n, d, field, order)
    }

    /// All `d`-simplices containing vertex `n`.
    pub fn star(n: u32, d: usize, field: Field) -> Result<Self> {
        if (d as u32) + 2 > n {
            return Err(Error::InvalidParameter(format!(
                "need n >= d+2, got n={n}, d={d}"
            )));
        }
        let simplices = subsets(n - 1, d)
            .into_iter()
            .map(|s| s.with_vertex(n).0)
            .collect();
        Hypertree::new(n, d, field, simplices)
    }

    /// The star with `(1,...,d,n)` swapped for `(1,...,d+1)`; its new member
    /// has exactly `d` neighbours in the facet graph.
    pub fn perturbed(n: u32, d: usize, field: Field) -> Result<Self> {
        let star = Hypertree::star(n, d, field)?;
        let out = Simplex::from_set((1..=d as u32).chain([n]));
        let inn = Simplex::from_set(1..=d as u32 + 1);
        let simplices = star
            .simplices
            .into_iter()
            .map(|s| if s == out { inn.clone() } else { s })
            .collect();
        Hypertree::new(n, d, field, simplices)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.binary_search(s).is_ok()
    }

    /// The unique chain on the hypertree whose boundary equals `∂sigma`.
    pub fn cap(&self, sigma: &Simplex) -> Result<Chain> {
        if sigma.len() != self.d + 1 || sigma.max_vertex() > self.n {
            return Err(Error::InvalidSimplex {
                vertices: sigma.vertices().to_vec(),
                reason: format!("not a {}-simplex over [{}]", self.d, self.n),
            });
        }
        if self.contains(sigma) {
            return Err(Error::PreconditionViolated(format!(
                "{sigma} already belongs to the hypertree"
            )));
        }
        let b = boundary(&Chain::simplex(sigma.clone(), self.field));
        solve(&self.matrix, &b).ok_or_else(|| {
            Error::InternalInconsistency(format!("boundary of {sigma} outside the hypertree span"))
        })
    }

    /// `sigma - cap(sigma)`, the unique circuit in the hypertree plus `sigma`.
    pub fn fundamental_cycle(&self, sigma: &Simplex) -> Result<Chain> {
        let cap = self.cap(sigma)?;
        Ok(&Chain::simplex(sigma.clone(), self.field) - &cap)
    }
}

pub fn is_cycle(z: &Chain) -> bool {
    boundary(z).is_zero()
}

/// Nonzero cycle whose support carries no other cycle up to scale.
pub fn is_simple_cycle(z: &Chain) -> bool {
    if z.is_zero() || !is_cycle(z) {
        return false;
    }
    let supp = z.support_vec();
    let ker = kernel_of_columns(z.field(), &boundary_columns(&supp, z.field()));
    ker.len() == 1 && ker[0].len() == supp.len()
}

pub fn is_cocycle(c: &Chain, n: u32) -> bool {
    coboundary(c, n).is_zero()
}

/// Nonzero cocycle of minimal support.
pub fn is_hypercut(c: &Chain, n: u32) -> bool {
    if c.is_zero() || !is_cocycle(c, n) {
        return false;
    }
    let supp = c.support_vec();
    let ker = kernel_of_columns(c.field(), &coboundary_columns(&supp, n, c.field()));
    ker.len() == 1 && ker[0].len() == supp.len()
}

/// `δ(tau)`: the cochain `Σ_{v ∉ tau} sign(tau ∪ v, tau)·(tau ∪ v)`.
pub fn star_hypercut(tau: &Simplex, n: u32, field: Field) -> Result<Chain> {
    if tau.max_vertex() > n {
        return Err(Error::InvalidSimplex {
            vertices: tau.vertices().to_vec(),
            reason: format!("vertex exceeds n={n}"),
        });
    }
    Ok(coboundary(&Chain::simplex(tau.clone(), field), n))
}

/// Sign of the complement map: `Π (-1)^(v-1)` over the vertices of `sigma`.
pub fn duality_sign(sigma: &Simplex) -> i8 {
    let parity: u64 = sigma.vertices().iter().map(|&v| (v - 1) as u64).sum();
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The signed complement `sigma* = s(sigma)·([n] \ sigma)`, extended linearly.
/// A chain of dimension `k` maps to dimension `n - k - 2`.
pub fn dual(z: &Chain, n: u32) -> Result<Chain> {
    if z.max_vertex() > n {
        return Err(Error::InvalidParameter(format!(
            "chain uses vertex {} outside [{n}]",
            z.max_vertex()
        )));
    }
    let f = z.field();
    let mut out = Chain::zero(n as isize - z.dim() - 2, f);
    for (s, c) in z.terms() {
        out.add_term(s.complement(n), f.mul(c, f.from_sign(duality_sign(s))));
    }
    Ok(out)
}

/// `(-1)^(C(n+1,2) - n)`, the scalar by which applying [`dual`] twice acts.
pub fn double_dual_sign(n: u32) -> i8 {
    let e = binomial(n as u64 + 1, 2) - n as u64;
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All circuits of the column matroid: each as the dependency `(index, coeff)`
/// list, scaled so the largest index has coefficient 1.
pub fn circuits_of_columns(field: Field, columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut out = Vec::new();
    let mut ech = Echelon::new(field);
    let mut chosen = Vec::new();
    circuit_search(field, columns, 0, &mut ech, &mut chosen, &mut out);
    out
}

// Visits every independent set in increasing index order. A circuit C is
// reported exactly once, from the independent set C minus its largest element.
fn circuit_search(
    field: Field,
    columns: &[SparseVec],
    start: usize,
    ech: &mut Echelon,
    chosen: &mut Vec<usize>,
    out: &mut Vec<SparseVec>,
) {
    for e in start..columns.len() {
        let red = ech.reduce(&columns[e]);
        if red.residual.is_empty() {
            if red.combination.len() == chosen.len() {
                let mut circuit: SparseVec = red
                    .combination
                    .iter()
                    .map(|&(k, c)| (chosen[k], field.neg(c)))
                    .collect();
                circuit.push((e, 1));
                out.push(circuit);
            }
        } else {
            let len = ech.rank();
            ech.insert(&columns[e]);
            chosen.push(e);
            circuit_search(field, columns, e + 1, ech, chosen, out);
            chosen.pop();
            ech.truncate(len);
        }
    }
}

fn check_circuit_size(faces: &[Simplex]) -> Result<()> {
    if faces.len() > CIRCUIT_LIMIT {
        return Err(Error::InstanceTooLarge(format!(
            "{} faces exceed the exhaustive limit of {CIRCUIT_LIMIT}",
            faces.len()
        )));
    }
    Ok(())
}

fn to_chains(faces: &[Simplex], dim: isize, field: Field, circuits: Vec<SparseVec>) -> Vec<Chain> {
    let mut out: Vec<Chain> = circuits
        .into_iter()
        .map(|v| {
            let mut c = Chain::zero(dim, field);
            for (j, x) in v {
                c.add_term(faces[j].clone(), x);
            }
            c.normalized()
        })
        .collect();
    out.sort_by_key(|a| a.support_vec());
    out
}

fn common_dim(faces: &[Simplex]) -> Result<isize> {
    crate::linalg::check_dims(faces)
}

/// Every simple cycle supported on `faces`, normalized, sorted by support.
pub fn enumerate_circuits(faces: &[Simplex], field: Field) -> Result<Vec<Chain>> {
    check_circuit_size(faces)?;
    let dim = common_dim(faces)?;
    let mut faces = faces.to_vec();
    faces.sort();
    faces.dedup();
    let circuits = circuits_of_columns(field, &boundary_columns(&faces, field));
    Ok(to_chains(&faces, dim, field, circuits))
}

/// Every `d`-hypercut of the complete complex on `[n]`.
pub fn enumerate_hypercuts(n: u32, d: usize, field: Field) -> Result<Vec<Chain>> {
    let faces = subsets(n, d + 1);
    check_circuit_size(&faces)?;
    let circuits = circuits_of_columns(field, &coboundary_columns(&faces, n, field));
    Ok(to_chains(&faces, d as isize, field, circuits))
}

/// Classes of the relation "lie on a common simple cycle within `faces`",
/// closed under reflexivity. Faces on no circuit form singleton classes.
pub fn biconnected_classes(faces: &[Simplex], field: Field) -> Result<Vec<Vec<Simplex>>> {
    let circuits = enumerate_circuits(faces, field)?;
    let mut faces = faces.to_vec();
    faces.sort();
    faces.dedup();
    let mut parent: Vec<usize> = (0..faces.len()).collect();
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
    for c in &circuits {
        let idx: Vec<usize> = c
            .support()
            .map(|s| faces.binary_search(s).expect("circuit within faces"))
            .collect();
        for w in idx.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut classes: HashMap<usize, Vec<Simplex>> = HashMap::new();
    for (i, s) in faces.iter().enumerate() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(s.clone());
    }
    let mut out: Vec<Vec<Simplex>> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;
    use proptest::prelude::*;
    use rand::Rng;

    fn f(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn chain(dim: isize, p: u64, terms: &[(Simplex, i64)]) -> Chain {
        Chain::from_terms(dim, f(p), terms.iter().cloned()).unwrap()
    }

    #[test]
    fn hypertree_cardinalities() {
        let t = Hypertree::greedy(4, 1, f(2)).unwrap();
        assert_eq!(t.simplices().len(), 3);
        let t = Hypertree::greedy(5, 2, f(3)).unwrap();
        assert_eq!(t.simplices().len(), 6);
        let t = Hypertree::greedy(4, 3, f(3)).unwrap();
        assert_eq!(t.simplices(), &[simplex![1, 2, 3, 4]]);
        let s = Hypertree::star(4, 1, f(3)).unwrap();
        assert_eq!(
            s.simplices(),
            &[simplex![1, 4], simplex![2, 4], simplex![3, 4]]
        );
        assert_eq!(Hypertree::star(5, 2, f(3)).unwrap().simplices().len(), 6);
        let p = Hypertree::perturbed(5, 2, f(3)).unwrap();
        assert!(p.contains(&simplex![1, 2, 3]));
        assert!(!p.contains(&simplex![1, 2, 5]));
        assert!(Hypertree::star(3, 2, f(3)).is_err());
        assert!(Hypertree::new(
            4,
            1,
            f(3),
            vec![simplex![1, 2], simplex![2, 3], simplex![1, 3]]
        )
        .is_err());
    }

    #[test]
    fn cap_examples() {
        let star = Hypertree::star(4, 1, f(3)).unwrap();
        let cap = star.cap(&simplex![1, 2]).unwrap();
        assert_eq!(
            cap,
            chain(1, 3, &[(simplex![1, 4], 1), (simplex![2, 4], -1)])
        );
        let z = star.fundamental_cycle(&simplex![1, 2]).unwrap();
        assert_eq!(
            z,
            chain(
                1,
                3,
                &[
                    (simplex![1, 2], 1),
                    (simplex![1, 4], -1),
                    (simplex![2, 4], 1)
                ]
            )
        );
        assert!(star.cap(&simplex![1, 4]).is_err());

        let star2 = Hypertree::star(4, 2, f(5)).unwrap();
        let cap = star2.cap(&simplex![1, 2, 3]).unwrap();
        assert_eq!(
            cap,
            chain(
                2,
                5,
                &[
                    (simplex![1, 2, 4], 1),
                    (simplex![1, 3, 4], -1),
                    (simplex![2, 3, 4], 1)
                ]
            )
        );
        let z = star2.fundamental_cycle(&simplex![1, 2, 3]).unwrap();
        let tet = boundary(&Chain::simplex(simplex![1, 2, 3, 4], f(5)));
        assert!(z == tet || z == -&tet);
    }

    #[test]
    fn simplicity_examples() {
        let tet = boundary(&Chain::simplex(simplex![1, 2, 3, 4], f(3)));
        assert!(is_simple_cycle(&tet));
        let two = &boundary(&Chain::simplex(simplex![1, 2, 3], f(3)))
            + &boundary(&Chain::simplex(simplex![4, 5, 6], f(3)));
        assert!(is_cycle(&two));
        assert!(!is_simple_cycle(&two));
        let quad = chain(
            1,
            3,
            &[
                (simplex![1, 2], 1),
                (simplex![2, 3], 1),
                (simplex![3, 4], 1),
                (simplex![1, 4], -1),
            ],
        );
        assert!(is_simple_cycle(&quad));
        assert!(!is_simple_cycle(&Chain::zero(1, f(3))));
        assert!(!is_simple_cycle(&Chain::simplex(simplex![1, 2], f(3))));
    }

    #[test]
    fn duality_examples() {
        let c = Chain::simplex(simplex![1, 2], f(5));
        assert_eq!(dual(&c, 4).unwrap(), chain(1, 5, &[(simplex![3, 4], -1)]));
        let tet = boundary(&Chain::simplex(simplex![2, 3, 4, 5], f(3)));
        let d = dual(&tet, 5).unwrap();
        assert_eq!(d.dim(), 1);
        assert!(is_hypercut(&d, 5));
        let mut supp = d.support_vec();
        supp.sort();
        assert_eq!(
            supp,
            vec![
                simplex![1, 2],
                simplex![1, 3],
                simplex![1, 4],
                simplex![1, 5]
            ]
        );
        let cut = star_hypercut(&simplex![1], 5, f(3)).unwrap();
        assert!(d == cut || d == -&cut);
    }

    #[test]
    fn star_hypercut_examples() {
        let h = star_hypercut(&simplex![1, 2], 6, f(3)).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h
            .terms()
            .all(|(s, c)| s.vertices()[..2] == [1, 2] && c == 1));
        assert!(is_hypercut(&h, 6));
        let h = star_hypercut(&simplex![1], 5, f(3)).unwrap();
        assert_eq!(h.len(), 4);
        assert!(is_hypercut(&h, 5));
    }

    #[test]
    fn sum_of_far_star_cuts_is_not_a_hypercut() {
        let field = f(3);
        let h = &star_hypercut(&simplex![1, 2, 3], 7, field).unwrap()
            + &star_hypercut(&simplex![4, 5, 6], 7, field).unwrap();
        assert!(is_cocycle(&h, 7));
        assert!(!is_hypercut(&h, 7));
    }

    #[test]
    fn circuit_examples() {
        let k4 = subsets(4, 2);
        let cs = enumerate_circuits(&k4, f(2)).unwrap();
        assert_eq!(cs.len(), 7);
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
        let cs = enumerate_circuits(&subsets(4, 3), f(3)).unwrap();
        assert_eq!(cs.len(), 1);
        let tet = boundary(&Chain::simplex(simplex![1, 2, 3, 4], f(3)));
        assert_eq!(cs[0], tet.normalized());
        let tree = Hypertree::greedy(6, 2, f(3)).unwrap();
        assert!(enumerate_circuits(tree.simplices(), f(3))
            .unwrap()
            .is_empty());
        assert!(matches!(
            enumerate_circuits(&subsets(8, 2)[..23], f(2)),
            Err(Error::InstanceTooLarge(_))
        ));
        for c in enumerate_circuits(&subsets(5, 2), f(5)).unwrap() {
            assert!(is_simple_cycle(&c));
        }
    }

    #[test]
    fn hypercut_enumeration_agrees_with_graph_cuts() {
        // bonds of K_4: 4 stars plus 3 cuts splitting 2|2
        let cuts = enumerate_hypercuts(4, 1, f(3)).unwrap();
        assert_eq!(cuts.len(), 7);
        for c in &cuts {
            assert!(is_hypercut(c, 4));
        }
    }

    #[test]
    fn biconnected_examples() {
        let cls = biconnected_classes(&subsets(5, 3), f(3)).unwrap();
        assert_eq!(cls.len(), 1);
        let two: Vec<Simplex> = subsets(3, 2)
            .into_iter()
            .chain([simplex![4, 5], simplex![4, 6], simplex![5, 6]])
            .collect();
        assert_eq!(biconnected_classes(&two, f(2)).unwrap().len(), 2);
        let tree = Hypertree::star(5, 1, f(2)).unwrap();
        let cls = biconnected_classes(tree.simplices(), f(2)).unwrap();
        assert_eq!(cls.len(), 4);
        assert!(cls.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn duality_signs_and_double_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2, 3, 5] {
            for n in 2..=8u32 {
                for k in 0..n as usize {
                    let mut c = Chain::zero(k as isize - 1, f(p));
                    for s in subsets(n, k) {
                        c.add_term(s, rng.gen_range(0..p as u32));
                    }
                    let dd = dual(&dual(&c, n).unwrap(), n).unwrap();
                    assert_eq!(dd, c.scale(f(p).from_sign(double_dual_sign(n))));
                }
            }
        }
    }

    #[test]
    fn every_hypercut_meets_every_hypertree() {
        for n in 3..=6u32 {
            for d in 1..=2usize.min(n as usize - 2) {
                let field = f(3);
                let cuts = enumerate_hypercuts(n, d, field).unwrap();
                for seed in 0..4 {
                    let t = Hypertree::random(n, d, field, seed).unwrap();
                    for h in &cuts {
                        assert!(h.support().any(|s| t.contains(s)), "n={n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn duality_maps_circuits_to_hypercuts() {
        let field = f(3);
        for n in 4..=6u32 {
            for k in 2..=n as usize - 2 {
                let circuits = enumerate_circuits(&subsets(n, k), field);
                let Ok(circuits) = circuits else { continue };
                let cuts = enumerate_hypercuts(n, n as usize - k - 1, field).unwrap();
                assert_eq!(circuits.len(), cuts.len(), "n={n} k={k}");
                let mut duals: Vec<Chain> = circuits
                    .iter()
                    .map(|c| dual(c, n).unwrap().normalized())
                    .collect();
                duals.sort_by_key(|a| a.support_vec());
                assert_eq!(duals, cuts);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn fundamental_cycles_are_simple(seed in any::<u64>(), n in 3u32..=7, d in 1usize..=3, p in prop::sample::select(vec![2u64, 3, 5])) {
            prop_assume!((d as u32) + 2 <= n);
            let field = f(p);
            let t = Hypertree::random(n, d, field, seed).unwrap();
            prop_assert_eq!(t.simplices().len() as u64, binomial(n as u64 - 1, d as u64));
            let outside: Vec<Simplex> = subsets(n, d + 1).into_iter().filter(|s| !t.contains(s)).collect();
            let sigma = &outside[(seed % outside.len() as u64) as usize];
            let z = t.fundamental_cycle(sigma).unwrap();
            prop_assert!(is_simple_cycle(&z));
            prop_assert!(z.support().all(|s| s == sigma || t.contains(s)));
        }

        #[test]
        fn duality_commutes_with_boundary(seed in any::<u64>(), n in 2u32..=8, p in prop::sample::select(vec![2u64, 3, 5])) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = f(p);
            let k = rng.gen_range(1..=n as usize);
            let mut c = Chain::zero(k as isize - 1, field);
            for s in subsets(n, k) {
                if rng.gen_bool(0.5) {
                    c.add_term(s, rng.gen_range(1..field.p()));
                }
            }
            let lhs = dual(&boundary(&c), n).unwrap();
            let rhs = coboundary(&dual(&c, n).unwrap(), n);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn duality_is_linear(seed in any::<u64>(), a in 0u32..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = f(5);
            let mut x = Chain::zero(2, field);
            let mut y = Chain::zero(2, field);
            for s in subsets(7, 3) {
                x.add_term(s.clone(), rng.gen_range(0..5));
                y.add_term(s, rng.gen_range(0..5));
            }
            let mut lhs = x.scale(a);
            lhs.axpy(1, &y);
            let mut rhs = dual(&x, 7).unwrap().scale(a);
            rhs.axpy(1, &dual(&y, 7).unwrap());
            prop_assert_eq!(dual(&lhs, 7).unwrap(), rhs);
        }
    }
}
