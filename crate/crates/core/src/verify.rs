//! Named, repeatable property checks run over parameter grids.
//!
//! Every instance of a check is a self-contained [`Predicate`]; a failing
//! instance is reported as that predicate, so re-evaluating the payload of
//! a violation reproduces it.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cell_complex::{
    cell_cycle_check, cell_facet_graph, pentagon_cycle, pentagon_poset, removal_outcome,
    validate_axioms, zoo_poset, ZOO,
};
use crate::chain::{boundary, coboundary, Chain};
use crate::collapse::{collapse_small_set, express_cycle_as_boundary, replay};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::facet_graph::FacetGraph;
use crate::field::Field;
use crate::generators::{
    cross_polytope_complex, cross_polytope_cycle, random_simple_cycle, simplex_boundary_complex,
    simplex_boundary_cycle, torus_cycle,
};
use crate::linalg::{
    betti_reduced, compressed_family, cycle_space_dim, kernel_basis, rank_of_columns,
    CompressionOrder, SparseVec,
};
use crate::simplex::{binomial, subsets, Simplex};
use crate::structures::{
    biconnected_classes, circuits_of_columns, double_dual_sign, dual, enumerate_hypercuts,
    is_cocycle, is_hypercut, is_simple_cycle, star_hypercut, Hypertree,
};

/// Grids larger than this many instances are refused.
pub const MAX_INSTANCES: usize = 10_000_000;

pub const CHECK_IDS: &[&str] = &[
    "cycle-connectivity",
    "cycle-mixed-removal",
    "biconnected-sets",
    "tree-connectivity",
    "r-connected-complex",
    "hypercut-complement",
    "hypercut-connectivity",
    "two-cocycle",
    "duality-identity",
    "double-dual",
    "duality-graph-isomorphism",
    "small-set-acyclicity",
    "components-localization",
    "component-bound",
    "betti-crude-bound",
    "toughness",
    "hypersimplex-connectivity",
    "mixed-connectivity",
    "cell-axioms",
    "cell-cycle-connectivity",
    "pentagon",
    "compressed-optimal",
    "full-skeleton-cycles",
];

/// What to run: a registered id plus optional overrides of its default grid.
#[derive(Clone, Debug, Default)]
pub struct CheckSpec {
    pub id: String,
    pub n: Option<Vec<u32>>,
    pub d: Option<Vec<usize>>,
    pub p: Option<Vec<u64>>,
    pub seeds: Option<usize>,
    pub exhaustive: bool,
}

impl CheckSpec {
    pub fn new(id: impl Into<String>) -> Self {
        CheckSpec {
            id: id.into(),
            ..Default::default()
        }
    }

    pub fn exhaustive(mut self) -> Self {
        self.exhaustive = true;
        self
    }
}

/// A chain in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainData {
    pub p: u64,
    pub dim: isize,
    pub terms: Vec<(Simplex, u32)>,
}

impl ChainData {
    pub fn from_chain(c: &Chain) -> Self {
        ChainData {
            p: c.field().p() as u64,
            dim: c.dim(),
            terms: c.terms().map(|(s, a)| (s.clone(), a)).collect(),
        }
    }

    pub fn to_chain(&self) -> Result<Chain> {
        let field = Field::new(self.p)?;
        Chain::from_terms(
            self.dim,
            field,
            self.terms.iter().map(|(s, a)| (s.clone(), *a as i64)),
        )
    }
}

/// One checkable instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Predicate {
    /// `κ(G(faces)) >= bound`.
    KappaAtLeast {
        faces: Vec<Simplex>,
        bound: usize,
    },
    KappaEquals {
        faces: Vec<Simplex>,
        value: usize,
    },
    /// Minimum degree and connectivity both equal `value`.
    MinDegreeEquals {
        faces: Vec<Simplex>,
        value: usize,
    },
    /// The facet graph stays connected after deleting the given facets and
    /// every edge labelled by one of the given ridges.
    MixedRemoval {
        faces: Vec<Simplex>,
        vertices: Vec<Simplex>,
        labels: Vec<Simplex>,
    },
    /// The dual of a simple cycle is a hypercut `H` with `κ >= n - dim H - 1`.
    HypercutOfDual {
        n: u32,
        cycle: ChainData,
    },
    /// The star cut of `tau` is a hypercut whose facet graph is a clique of
    /// connectivity exactly `n - dim - 1`.
    StarCut {
        n: u32,
        tau: Simplex,
        p: u64,
    },
    /// A nonzero cocycle; either `κ >= 2` or, with `disconnected`, a
    /// disconnected facet graph.
    Cocycle {
        n: u32,
        cochain: ChainData,
        disconnected: bool,
    },
    DualityIdentity {
        n: u32,
        chain: ChainData,
    },
    DoubleDual {
        n: u32,
        chain: ChainData,
    },
    /// The complement map is an isomorphism between the facet graphs of a
    /// simple cycle and of its dual hypercut.
    DualGraphIsomorphism {
        n: u32,
        cycle: ChainData,
    },
    /// Collapse certificate, vanishing homology and boundary expression for
    /// a set of at most `d` simplices.
    SmallSet {
        d: usize,
        set: Vec<Simplex>,
        p: u64,
        seed: u64,
    },
    /// Boundaries of the components left by deleting `removed` from a
    /// simple cycle have disjoint supports inside `K(removed)` and any all
    /// but one are independent modulo the boundaries of `removed`.
    ComponentsLocalization {
        cycle: ChainData,
        removed: Vec<Simplex>,
    },
    /// Components after removal are at most `1 + β̃_{d-1}(K(removed))`.
    ComponentBound {
        faces: Vec<Simplex>,
        removed: Vec<Simplex>,
        p: u64,
    },
    /// Components after removal are at most `|removed|`.
    Toughness {
        faces: Vec<Simplex>,
        removed: Vec<Simplex>,
    },
    ComponentsEqual {
        faces: Vec<Simplex>,
        removed: Vec<Simplex>,
        value: usize,
    },
    /// `β̃_{d-1}(K(set)) <= d·|set|`.
    BettiCrudeBound {
        d: usize,
        set: Vec<Simplex>,
        p: u64,
    },
    /// With `m` the least number of faces any hypercut shares with `faces`,
    /// `κ >= d + m - 1` whenever `m >= 1`.
    RConnected {
        n: u32,
        d: usize,
        p: u64,
        faces: Vec<Simplex>,
    },
    /// The complement of a hypercut in the full `d`-skeleton has `κ >= d - 1`.
    HypercutComplement {
        n: u32,
        d: usize,
        cut: ChainData,
    },
    /// Both compressed families of size `t` reach the largest cycle-space
    /// dimension over all families of `(r+1)`-subsets of `[n]` of that size.
    CompressedOptimal {
        n: u32,
        r: usize,
        t: usize,
        p: u64,
    },
    /// The full `r`-skeleton of `[n]` has cycle space of dimension `C(n-1, r+1)`.
    FullSkeleton {
        n: u32,
        r: usize,
        p: u64,
    },
    /// Removing open faces from a sphere boundary keeps it homologically
    /// `r`-connected; on the simplex boundary the dual Betti numbers agree.
    MixedConnectivity {
        polytope: String,
        d: usize,
        r: usize,
        p: u64,
        removed: Vec<Simplex>,
    },
    CellAxioms {
        zoo: String,
        p: u64,
    },
    /// Every compatible set of at most `d` cells of dimension `d` has a
    /// closure with vanishing `β̃_{d-1}`.
    CellSmallSets {
        zoo: String,
        p: u64,
    },
    /// A simple cell cycle with compatible support has at least `d + 2`
    /// cells and a `(d+1)`-connected facet graph.
    CellCycle {
        zoo: String,
        p: u64,
        cycle: Vec<(String, u32)>,
    },
    /// The pentagon cycle is simple with incompatible support and `κ = 2`.
    Pentagon {
        p: u64,
    },
}

/// Outcome of evaluating one predicate.
#[derive(Clone, Debug, Default)]
pub struct Evaluation {
    pub ok: bool,
    pub detail: String,
    pub stats: Vec<(&'static str, i64)>,
}

impl Evaluation {
    fn verdict(ok: bool, detail: impl Into<String>, stats: Vec<(&'static str, i64)>) -> Self {
        Evaluation {
            ok,
            detail: if ok { String::new() } else { detail.into() },
            stats,
        }
    }
}

fn field(p: u64) -> Result<Field> {
    Field::new(p)
}

fn facet_graph(faces: &[Simplex]) -> Result<FacetGraph> {
    FacetGraph::build(faces)
}

fn indices(g: &FacetGraph, faces: &[Simplex]) -> Result<Vec<usize>> {
    faces
        .iter()
        .map(|s| {
            g.index_of(s).ok_or_else(|| {
                Error::InvalidParameter(format!("{s} is not a vertex of the facet graph"))
            })
        })
        .collect()
}

fn kappa_at_least(faces: &[Simplex], bound: usize) -> Result<Evaluation> {
    let k = facet_graph(faces)?.vertex_connectivity();
    Ok(Evaluation::verdict(
        k >= bound,
        format!("connectivity {k} below {bound}"),
        vec![("kappa", k as i64), ("excess", k as i64 - bound as i64)],
    ))
}

fn closure(set: &[Simplex]) -> Result<Complex> {
    let n = set.iter().map(Simplex::max_vertex).max().unwrap_or(0);
    Complex::closure(set.iter().cloned(), n)
}

type HypercutCache = Mutex<HashMap<(u32, usize, u32), Arc<Vec<Chain>>>>;

fn hypercuts(n: u32, d: usize, f: Field) -> Result<Arc<Vec<Chain>>> {
    static CACHE: OnceLock<HypercutCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, d, f.p());
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let cuts = Arc::new(enumerate_hypercuts(n, d, f)?);
    cache.lock().expect("cache lock").insert(key, cuts.clone());
    Ok(cuts)
}

fn polytope(name: &str, d: usize) -> Result<Complex> {
    match name {
        "simplex-boundary" => Ok(simplex_boundary_complex(d)),
        "cross-polytope" => Ok(cross_polytope_complex(d)),
        other => Err(Error::InvalidParameter(format!(
            "unknown polytope `{other}`"
        ))),
    }
}

/// Largest cycle-space dimension over all `t`-element families of `faces`.
fn best_cycle_dim(faces: &[Simplex], t: usize, f: Field) -> usize {
    subsets(faces.len() as u32, t)
        .par_iter()
        .map(|pick| {
            let fam: Vec<Simplex> = pick
                .vertices()
                .iter()
                .map(|&i| faces[i as usize - 1].clone())
                .collect();
            cycle_space_dim(&fam, f)
        })
        .max()
        .unwrap_or(0)
}

impl Predicate {
    pub fn evaluate(&self) -> Result<Evaluation> {
        match self {
            Predicate::KappaAtLeast { faces, bound } => kappa_at_least(faces, *bound),
            Predicate::KappaEquals { faces, value } => {
                let k = facet_graph(faces)?.vertex_connectivity();
                Ok(Evaluation::verdict(
                    k == *value,
                    format!("connectivity {k}, expected {value}"),
                    vec![("kappa", k as i64)],
                ))
            }
            Predicate::MinDegreeEquals { faces, value } => {
                let g = facet_graph(faces)?;
                let (delta, k) = (g.graph().min_degree(), g.vertex_connectivity());
                Ok(Evaluation::verdict(
                    delta == *value && k == *value,
                    format!("minimum degree {delta} and connectivity {k}, expected {value}"),
                    vec![("min-degree", delta as i64), ("kappa", k as i64)],
                ))
            }
            Predicate::MixedRemoval {
                faces,
                vertices,
                labels,
            } => {
                let g = facet_graph(faces)?;
                let removed = indices(&g, vertices)?;
                let ok = g.connected_after_mixed_removal(&removed, labels);
                Ok(Evaluation::verdict(
                    ok,
                    "disconnected by the removal",
                    vec![],
                ))
            }
            Predicate::HypercutOfDual { n, cycle } => {
                let z = cycle.to_chain()?;
                if !is_simple_cycle(&z) {
                    return Ok(Evaluation::verdict(
                        false,
                        "input is not a simple cycle",
                        vec![],
                    ));
                }
                let h = dual(&z, *n)?;
                if !is_hypercut(&h, *n) {
                    return Ok(Evaluation::verdict(false, "dual is not a hypercut", vec![]));
                }
                kappa_at_least(
                    &h.support_vec(),
                    (*n as isize - h.dim() - 1).max(0) as usize,
                )
            }
            Predicate::StarCut { n, tau, p } => {
                let h = star_hypercut(tau, *n, field(*p)?)?;
                let want = (*n as isize - h.dim() - 1).max(0) as usize;
                let g = facet_graph(&h.support_vec())?;
                let k = g.vertex_connectivity();
                Ok(Evaluation::verdict(
                    is_hypercut(&h, *n) && g.graph().is_complete() && k == want,
                    format!("star cut of {tau}: connectivity {k}, expected {want}"),
                    vec![("kappa", k as i64)],
                ))
            }
            Predicate::Cocycle {
                n,
                cochain,
                disconnected,
            } => {
                let c = cochain.to_chain()?;
                if c.is_zero() || !is_cocycle(&c, *n) {
                    return Ok(Evaluation::verdict(false, "not a nonzero cocycle", vec![]));
                }
                let g = facet_graph(&c.support_vec())?;
                if *disconnected {
                    let comps = g.graph().components();
                    Ok(Evaluation::verdict(
                        comps > 1,
                        "facet graph is connected",
                        vec![("components", comps as i64)],
                    ))
                } else {
                    kappa_at_least(&c.support_vec(), 2)
                }
            }
            Predicate::DualityIdentity { n, chain } => {
                let c = chain.to_chain()?;
                let lhs = dual(&boundary(&c), *n)?;
                let rhs = coboundary(&dual(&c, *n)?, *n);
                Ok(Evaluation::verdict(
                    lhs == rhs,
                    "dual of the boundary differs from coboundary of the dual",
                    vec![],
                ))
            }
            Predicate::DoubleDual { n, chain } => {
                let c = chain.to_chain()?;
                let twice = dual(&dual(&c, *n)?, *n)?;
                let want = c.scale(c.field().from_sign(double_dual_sign(*n)));
                Ok(Evaluation::verdict(
                    twice == want,
                    "double dual differs from the signed identity",
                    vec![],
                ))
            }
            Predicate::DualGraphIsomorphism { n, cycle } => {
                let z = cycle.to_chain()?;
                let h = dual(&z, *n)?;
                if !is_simple_cycle(&z) || !is_hypercut(&h, *n) {
                    return Ok(Evaluation::verdict(
                        false,
                        "not a circuit and hypercut pair",
                        vec![],
                    ));
                }
                let faces = z.support_vec();
                let g1 = facet_graph(&faces)?;
                let g2 = facet_graph(&h.support_vec())?;
                let image: Vec<usize> = indices(
                    &g2,
                    &faces.iter().map(|s| s.complement(*n)).collect::<Vec<_>>(),
                )?;
                let mut edges = 0;
                for i in 0..faces.len() {
                    for j in i + 1..faces.len() {
                        let e = g1.graph().has_edge(i, j);
                        edges += e as i64;
                        if e != g2.graph().has_edge(image[i], image[j]) {
                            return Ok(Evaluation::verdict(
                                false,
                                format!(
                                    "adjacency of {} and {} is not preserved",
                                    faces[i], faces[j]
                                ),
                                vec![],
                            ));
                        }
                    }
                }
                let ok = g1.graph().size() == g2.graph().size();
                Ok(Evaluation::verdict(
                    ok,
                    "edge counts differ",
                    vec![("edges", edges)],
                ))
            }
            Predicate::SmallSet { d, set, p, seed } => {
                let f = field(*p)?;
                let d = *d;
                let cert = collapse_small_set(d, set)?;
                let top_gone = cert.residual.faces(d as isize).is_empty()
                    && cert.residual.faces(d as isize - 1).is_empty();
                if !top_gone {
                    return Ok(Evaluation::verdict(
                        false,
                        "residual keeps faces of dimension d or d-1",
                        vec![],
                    ));
                }
                if replay(&cert.start, &cert.steps)? != cert.residual {
                    return Ok(Evaluation::verdict(
                        false,
                        "replay does not reach the residual",
                        vec![],
                    ));
                }
                let beta = betti_reduced(&cert.start, d as isize - 1, f);
                if beta != 0 {
                    return Ok(Evaluation::verdict(
                        false,
                        format!("β̃_(d-1) = {beta}"),
                        vec![],
                    ));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut z = Chain::zero(d as isize - 1, f);
                for v in &kernel_basis(&cert.start.boundary_matrix(d as isize - 1, f)).vectors {
                    z.axpy(rng.gen_range(0..f.p()), v);
                }
                let u = express_cycle_as_boundary(&z, set, d)?;
                Ok(Evaluation::verdict(
                    boundary(&u) == z,
                    "boundary of the returned chain differs from the cycle",
                    vec![("steps", cert.steps.len() as i64)],
                ))
            }
            Predicate::ComponentsLocalization { cycle, removed } => {
                let z = cycle.to_chain()?;
                let f = z.field();
                let faces = z.support_vec();
                let g = facet_graph(&faces)?;
                let labels = g.graph().component_labels(&indices(&g, removed)?);
                let m = labels.iter().flatten().max().map_or(0, |&x| x + 1);
                let mut parts = vec![Chain::zero(z.dim(), f); m];
                for (i, s) in faces.iter().enumerate() {
                    if let Some(c) = labels[i] {
                        parts[c].add_term(s.clone(), z.coeff(s));
                    }
                }
                let bds: Vec<Chain> = parts.iter().map(boundary).collect();
                let k = closure(removed)?;
                let mut seen = BTreeSet::new();
                for b in &bds {
                    for s in b.support() {
                        if !k.contains(s) {
                            return Ok(Evaluation::verdict(
                                false,
                                format!("{s} lies outside K(removed)"),
                                vec![],
                            ));
                        }
                        if !seen.insert(s.clone()) {
                            return Ok(Evaluation::verdict(
                                false,
                                format!("{s} is shared by two components"),
                                vec![],
                            ));
                        }
                    }
                }
                let mut idx = HashMap::new();
                let mut column = |c: &Chain| -> SparseVec {
                    let mut v: SparseVec = c
                        .terms()
                        .map(|(s, a)| {
                            let k = idx.len();
                            (*idx.entry(s.clone()).or_insert(k), a)
                        })
                        .collect();
                    v.sort_unstable();
                    v
                };
                let removed_cols: Vec<SparseVec> = removed
                    .iter()
                    .map(|s| column(&boundary(&Chain::simplex(s.clone(), f))))
                    .collect();
                let mut cols: Vec<SparseVec> = bds
                    .iter()
                    .take(m.saturating_sub(1))
                    .map(&mut column)
                    .collect();
                let base = rank_of_columns(f, &removed_cols);
                cols.extend(removed_cols);
                let ok = rank_of_columns(f, &cols) == base + m.saturating_sub(1);
                Ok(Evaluation::verdict(
                    ok,
                    "component boundaries are dependent modulo boundaries of the removed set",
                    vec![("components", m as i64)],
                ))
            }
            Predicate::ComponentBound { faces, removed, p } => {
                let g = facet_graph(faces)?;
                let comps = g.components_after_removal(&indices(&g, removed)?);
                let d = faces.first().map_or(0, Simplex::dim);
                let beta = betti_reduced(&closure(removed)?, d - 1, field(*p)?);
                Ok(Evaluation::verdict(
                    comps <= 1 + beta,
                    format!("{comps} components exceed 1 + {beta}"),
                    vec![("components", comps as i64), ("betti", beta as i64)],
                ))
            }
            Predicate::Toughness { faces, removed } => {
                let g = facet_graph(faces)?;
                let comps = g.components_after_removal(&indices(&g, removed)?);
                Ok(Evaluation::verdict(
                    comps <= removed.len(),
                    format!("{comps} components after removing {}", removed.len()),
                    vec![("components", comps as i64)],
                ))
            }
            Predicate::ComponentsEqual {
                faces,
                removed,
                value,
            } => {
                let g = facet_graph(faces)?;
                let comps = g.components_after_removal(&indices(&g, removed)?);
                Ok(Evaluation::verdict(
                    comps == *value,
                    format!("{comps} components, expected {value}"),
                    vec![("components", comps as i64)],
                ))
            }
            Predicate::BettiCrudeBound { d, set, p } => {
                let beta = betti_reduced(&closure(set)?, *d as isize - 1, field(*p)?);
                Ok(Evaluation::verdict(
                    beta <= d * set.len(),
                    format!("β̃ = {beta} exceeds {}", d * set.len()),
                    vec![("betti", beta as i64)],
                ))
            }
            Predicate::RConnected { n, d, p, faces } => {
                let cuts = hypercuts(*n, *d, field(*p)?)?;
                let set: BTreeSet<&Simplex> = faces.iter().collect();
                let meet = cuts
                    .iter()
                    .map(|h| h.support().filter(|s| set.contains(s)).count())
                    .min()
                    .unwrap_or(0);
                if meet == 0 {
                    return Ok(Evaluation::verdict(true, "", vec![("min-meet", 0)]));
                }
                let mut e = kappa_at_least(faces, d + meet - 1)?;
                e.stats.push(("min-meet", meet as i64));
                Ok(e)
            }
            Predicate::HypercutComplement { n, d, cut } => {
                let h = cut.to_chain()?;
                if !is_hypercut(&h, *n) {
                    return Ok(Evaluation::verdict(false, "not a hypercut", vec![]));
                }
                let rest: Vec<Simplex> = subsets(*n, d + 1)
                    .into_iter()
                    .filter(|s| h.coeff(s) == 0)
                    .collect();
                kappa_at_least(&rest, d.saturating_sub(1))
            }
            Predicate::CompressedOptimal { n, r, t, p } => {
                let f = field(*p)?;
                let all = subsets(*n, r + 1);
                let best = best_cycle_dim(&all, *t, f);
                let colex =
                    cycle_space_dim(&compressed_family(*n, *r, *t, CompressionOrder::Colex), f);
                let revlex = cycle_space_dim(
                    &compressed_family(*n, *r, *t, CompressionOrder::ReverseLex),
                    f,
                );
                Ok(Evaluation::verdict(
                    colex == best && revlex == best,
                    format!("compressed families reach {colex} and {revlex}, optimum {best}"),
                    vec![("cycle-dim", best as i64)],
                ))
            }
            Predicate::FullSkeleton { n, r, p } => {
                let got = cycle_space_dim(&subsets(*n, r + 1), field(*p)?);
                let want = binomial(*n as u64 - 1, *r as u64 + 1) as usize;
                Ok(Evaluation::verdict(
                    got == want,
                    format!("cycle space dimension {got}, expected {want}"),
                    vec![("cycle-dim", got as i64)],
                ))
            }
            Predicate::MixedConnectivity {
                polytope: name,
                d,
                r,
                p,
                removed,
            } => {
                let b = polytope(name, *d)?;
                let out = removal_outcome(&b, removed, *d, *r, field(*p)?);
                let detail = if !out.connected {
                    "homological connectivity lost"
                } else {
                    "direct and dual Betti numbers differ"
                };
                Ok(Evaluation::verdict(
                    out.connected && out.dual_agrees != Some(false),
                    detail,
                    vec![],
                ))
            }
            Predicate::CellAxioms { zoo, p } => {
                let report = validate_axioms(&zoo_poset(zoo, field(*p)?)?);
                Ok(Evaluation::verdict(
                    report.all_pass(),
                    format!("{report:?}"),
                    vec![],
                ))
            }
            Predicate::CellSmallSets { zoo, p } => {
                let poset = zoo_poset(zoo, field(*p)?)?;
                let top = poset.cells().iter().map(|c| c.dim).max().unwrap_or(-1);
                let mut checked = 0;
                for d in 1..=top {
                    let cells = poset.cells_of_dim(d);
                    for size in 1..=(d as usize).min(cells.len()) {
                        for pick in subsets(cells.len() as u32, size) {
                            let set: Vec<usize> = pick
                                .vertices()
                                .iter()
                                .map(|&i| cells[i as usize - 1])
                                .collect();
                            if !poset.is_compatible(&set) {
                                continue;
                            }
                            checked += 1;
                            let beta = poset.betti_reduced(&poset.closure_of(&set), d - 1);
                            if beta != 0 {
                                let ids: Vec<&str> = set.iter().map(|&c| poset.id(c)).collect();
                                return Ok(Evaluation::verdict(
                                    false,
                                    format!("closure of {ids:?} has β̃ = {beta}"),
                                    vec![],
                                ));
                            }
                        }
                    }
                }
                Ok(Evaluation::verdict(true, "", vec![("sets", checked)]))
            }
            Predicate::CellCycle { zoo, p, cycle } => {
                let poset = zoo_poset(zoo, field(*p)?)?;
                let f = poset.field();
                let mut z: Vec<(usize, u32)> = cycle
                    .iter()
                    .map(|(id, c)| {
                        poset
                            .index_of(id)
                            .map(|i| (i, f.reduce(*c as i64)))
                            .ok_or_else(|| Error::InvalidParameter(format!("unknown cell `{id}`")))
                    })
                    .collect::<Result<_>>()?;
                z.sort_unstable();
                let report = cell_cycle_check(&poset, &z);
                let supp: Vec<usize> = z.iter().map(|e| e.0).collect();
                let d = supp.first().map_or(0, |&c| poset.dim(c));
                let k = cell_facet_graph(&poset, &supp)?.vertex_connectivity();
                let ok = report.is_cycle
                    && report.is_simple
                    && report.compatible
                    && report.min_size_ok == Some(true)
                    && k as isize > d;
                Ok(Evaluation::verdict(
                    ok,
                    format!("{report:?}, connectivity {k}"),
                    vec![("kappa", k as i64), ("size", report.size as i64)],
                ))
            }
            Predicate::Pentagon { p } => {
                let poset = pentagon_poset(field(*p)?)?;
                let z = pentagon_cycle(&poset);
                let report = cell_cycle_check(&poset, &z);
                let supp: Vec<usize> = z.iter().map(|e| e.0).collect();
                let k = cell_facet_graph(&poset, &supp)?.vertex_connectivity();
                let ok = validate_axioms(&poset).all_pass()
                    && report.is_cycle
                    && report.is_simple
                    && !report.compatible
                    && k == 2;
                Ok(Evaluation::verdict(
                    ok,
                    format!("{report:?}, connectivity {k}"),
                    vec![("kappa", k as i64)],
                ))
            }
        }
    }
}

struct Grid {
    ns: Vec<u32>,
    ds: Vec<usize>,
    ps: Vec<Field>,
    seeds: usize,
    exhaustive: bool,
}

struct Defaults {
    n: RangeInclusive<u32>,
    d: RangeInclusive<usize>,
    p: &'static [u64],
    seeds: usize,
}

fn defaults(id: &str) -> Option<Defaults> {
    let g = |n: RangeInclusive<u32>, d: RangeInclusive<usize>, p: &'static [u64], seeds| Defaults {
        n,
        d,
        p,
        seeds,
    };
    Some(match id {
        "cycle-connectivity" => g(3..=8, 1..=3, &[2, 3, 5], 12),
        "cycle-mixed-removal" => g(4..=7, 1..=3, &[2, 3], 3),
        "biconnected-sets" => g(4..=6, 1..=2, &[2, 3], 10),
        "tree-connectivity" => g(3..=8, 1..=3, &[2, 3, 5], 4),
        "r-connected-complex" => g(4..=6, 1..=2, &[2, 3], 8),
        "hypercut-complement" => g(4..=6, 1..=2, &[2, 3], 25),
        "hypercut-connectivity" => g(4..=7, 1..=5, &[2, 3, 5], 5),
        "two-cocycle" => g(5..=7, 2..=3, &[2, 3, 5], 70),
        "duality-identity" | "double-dual" => g(2..=8, 0..=0, &[2, 3, 5], 200),
        "duality-graph-isomorphism" => g(4..=7, 1..=4, &[3, 5], 5),
        "small-set-acyclicity" => g(9..=9, 2..=4, &[2, 3, 5], 100),
        "components-localization" | "component-bound" | "toughness" => g(5..=8, 1..=3, &[2, 3], 3),
        "betti-crude-bound" => g(4..=8, 1..=3, &[2], 20),
        "hypersimplex-connectivity" => g(2..=7, 0..=5, &[2], 1),
        "mixed-connectivity" => g(0..=0, 1..=3, &[2], 20),
        "cell-axioms" | "cell-cycle-connectivity" => g(0..=0, 0..=0, &[2, 3], 1),
        "pentagon" => g(0..=0, 0..=0, &[2, 3, 5], 1),
        "compressed-optimal" => g(2..=7, 0..=6, &[2], 1),
        "full-skeleton-cycles" => g(2..=7, 0..=6, &[2, 3], 1),
        _ => return None,
    })
}

fn resolve(spec: &CheckSpec, def: Defaults) -> Result<Grid> {
    let ps = spec
        .p
        .clone()
        .unwrap_or_else(|| def.p.to_vec())
        .into_iter()
        .map(Field::new)
        .collect::<Result<Vec<_>>>()?;
    Ok(Grid {
        ns: spec.n.clone().unwrap_or_else(|| def.n.collect()),
        ds: spec.d.clone().unwrap_or_else(|| def.d.collect()),
        ps,
        seeds: spec.seeds.unwrap_or(def.seeds),
        exhaustive: spec.exhaustive,
    })
}

struct Plan {
    items: Vec<Predicate>,
}

impl Plan {
    fn reserve(&self, extra: u128) -> Result<()> {
        if self.items.len() as u128 + extra > MAX_INSTANCES as u128 {
            return Err(Error::InstanceTooLarge(format!(
                "grid needs more than {MAX_INSTANCES} instances"
            )));
        }
        Ok(())
    }

    fn push(&mut self, p: Predicate) -> Result<()> {
        self.reserve(1)?;
        self.items.push(p);
        Ok(())
    }
}

fn count_up_to(len: usize, max: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for s in 1..=max.min(len) {
        c = c * (len - s + 1) as u128 / s as u128;
        total += c;
    }
    total
}

/// Nonempty subsets of `items` of size at most `max`: all of them, or
/// `per_size` random ones of each size.
fn sets_up_to<T: Clone>(
    items: &[T],
    max: usize,
    exhaustive: bool,
    per_size: usize,
    rng: &mut ChaCha8Rng,
    plan: &Plan,
) -> Result<Vec<Vec<T>>> {
    let mut out = Vec::new();
    if exhaustive {
        plan.reserve(count_up_to(items.len(), max))?;
        for size in 1..=max.min(items.len()) {
            for pick in subsets(items.len() as u32, size) {
                out.push(
                    pick.vertices()
                        .iter()
                        .map(|&i| items[i as usize - 1].clone())
                        .collect(),
                );
            }
        }
    } else {
        for size in 1..=max.min(items.len()) {
            for _ in 0..per_size {
                let mut idx = sample(rng, items.len(), size).into_vec();
                idx.sort_unstable();
                out.push(idx.into_iter().map(|i| items[i].clone()).collect());
            }
        }
    }
    Ok(out)
}

fn seed_of(parts: &[u64]) -> u64 {
    parts.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, &x| {
        (h ^ x).wrapping_mul(0x0100_0000_01b3).rotate_left(17)
    })
}

fn random_chain(rng: &mut ChaCha8Rng, n: u32, f: Field) -> Chain {
    let k = rng.gen_range(1..=n as usize);
    let mut c = Chain::zero(k as isize - 1, f);
    for s in subsets(n, k) {
        if rng.gen_bool(0.5) {
            c.add_term(s, rng.gen_range(1..f.p()));
        }
    }
    c
}

fn random_small_set(rng: &mut ChaCha8Rng, d: usize, n: u32) -> Vec<Simplex> {
    let size = rng.gen_range(1..=d);
    let verts: Vec<u32> = (1..=n).collect();
    (0..size)
        .map(|_| {
            let k = if rng.gen_bool(0.7) {
                d + 1
            } else {
                rng.gen_range(1..=d + 1)
            };
            Simplex::from_set(verts.choose_multiple(rng, k).copied())
        })
        .collect()
}

fn cycles_for_removal(g: &Grid, rng: &mut ChaCha8Rng) -> Result<Vec<(Chain, bool)>> {
    // (cycle, whether removal sets on it may be exhaustive)
    let f = g.ps[0];
    let mut out = vec![
        (cross_polytope_cycle(2, f)?, true),
        (torus_cycle(4, f)?, true),
    ];
    for &p in &g.ps {
        for &n in &g.ns {
            for &d in &g.ds {
                if d as u32 + 2 > n {
                    continue;
                }
                for _ in 0..g.seeds {
                    out.push((random_simple_cycle(n, d, p, rng.gen())?, false));
                }
            }
        }
    }
    Ok(out)
}

fn removal_instances(
    g: &Grid,
    plan: &mut Plan,
    make: impl Fn(&Chain, Vec<Simplex>) -> Predicate,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_of(&[1, g.seeds as u64]));
    for (z, exhaustive_ok) in cycles_for_removal(g, &mut rng)? {
        let faces = z.support_vec();
        for set in sets_up_to(&faces, 4, g.exhaustive && exhaustive_ok, 10, &mut rng, plan)? {
            plan.push(make(&z, set))?;
        }
    }
    Ok(())
}

fn pseudomanifold_cycles(g: &Grid, f: Field) -> Result<Vec<(Chain, usize)>> {
    let mut out = Vec::new();
    for &d in &g.ds {
        if d == 0 {
            continue;
        }
        out.push((
            simplex_boundary_cycle(&Simplex::from_set(1..=d as u32 + 2), f)?,
            d,
        ));
        out.push((cross_polytope_cycle(d, f)?, d));
        if d == 2 {
            out.push((torus_cycle(4, f)?, 2));
            out.push((torus_cycle(6, f)?, 2));
        }
    }
    Ok(out)
}

fn plan_instances(id: &str, g: &Grid) -> Result<Vec<Predicate>> {
    let mut plan = Plan { items: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed_of(&[id.len() as u64, g.seeds as u64]));
    let nd_pairs = |min_gap: u32| -> Vec<(u32, usize)> {
        let mut v = Vec::new();
        for &n in &g.ns {
            for &d in &g.ds {
                if d as u32 + min_gap <= n {
                    v.push((n, d));
                }
            }
        }
        v
    };
    match id {
        "cycle-connectivity" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(2) {
                    for s in 0..g.seeds {
                        let z = random_simple_cycle(
                            n,
                            d,
                            f,
                            seed_of(&[n as u64, d as u64, f.p() as u64, s as u64]),
                        )?;
                        plan.push(Predicate::KappaAtLeast {
                            faces: z.support_vec(),
                            bound: d + 1,
                        })?;
                    }
                }
                for (z, d) in pseudomanifold_cycles(g, f)? {
                    plan.push(Predicate::KappaEquals {
                        faces: z.support_vec(),
                        value: d + 1,
                    })?;
                }
            }
        }
        "cycle-mixed-removal" => {
            for &f in &g.ps {
                let mut cycles: Vec<(Chain, usize)> = pseudomanifold_cycles(g, f)?
                    .into_iter()
                    .filter(|(z, _)| z.len() <= 16)
                    .collect();
                for (n, d) in nd_pairs(2) {
                    for _ in 0..g.seeds {
                        cycles.push((random_simple_cycle(n, d, f, rng.gen())?, d));
                    }
                }
                for (z, d) in cycles {
                    let faces = z.support_vec();
                    let labels = facet_graph(&faces)?.edge_labels();
                    for r in 0..=d {
                        let q = d - r;
                        let vsets = if r == 0 {
                            vec![Vec::new()]
                        } else {
                            sets_of_size(&faces, r, g.exhaustive, g.seeds.max(5), &mut rng, &plan)?
                        };
                        let lsets = if q == 0 {
                            vec![Vec::new()]
                        } else {
                            sets_of_size(&labels, q, g.exhaustive, g.seeds.max(5), &mut rng, &plan)?
                        };
                        plan.reserve((vsets.len() * lsets.len()) as u128)?;
                        for vs in &vsets {
                            for ls in &lsets {
                                plan.push(Predicate::MixedRemoval {
                                    faces: faces.clone(),
                                    vertices: vs.clone(),
                                    labels: ls.clone(),
                                })?;
                            }
                        }
                    }
                }
            }
        }
        "biconnected-sets" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(2) {
                    let all = subsets(n, d + 1);
                    for _ in 0..g.seeds {
                        let size = rng.gen_range((d + 2).min(all.len())..=all.len().min(18));
                        let mut set: Vec<Simplex> =
                            all.choose_multiple(&mut rng, size).cloned().collect();
                        set.sort();
                        for class in biconnected_classes(&set, f)? {
                            if class.len() > 1 {
                                plan.push(Predicate::KappaAtLeast {
                                    faces: class,
                                    bound: d + 1,
                                })?;
                            }
                        }
                    }
                }
            }
        }
        "tree-connectivity" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(2) {
                    let mut trees = vec![Hypertree::star(n, d, f)?, Hypertree::greedy(n, d, f)?];
                    for _ in 0..g.seeds {
                        trees.push(Hypertree::random(n, d, f, rng.gen())?);
                    }
                    for t in trees {
                        plan.push(Predicate::KappaAtLeast {
                            faces: t.simplices().to_vec(),
                            bound: d,
                        })?;
                    }
                    let t = Hypertree::perturbed(n, d, f)?;
                    plan.push(Predicate::MinDegreeEquals {
                        faces: t.simplices().to_vec(),
                        value: d,
                    })?;
                }
            }
        }
        "r-connected-complex" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(1) {
                    let all = subsets(n, d + 1);
                    for _ in 0..g.seeds {
                        let keep = [0.5, 0.7, 0.85, 1.0][rng.gen_range(0..4)];
                        let faces: Vec<Simplex> =
                            all.iter().filter(|_| rng.gen_bool(keep)).cloned().collect();
                        if faces.is_empty() {
                            continue;
                        }
                        plan.push(Predicate::RConnected {
                            n,
                            d,
                            p: f.p() as u64,
                            faces,
                        })?;
                    }
                }
            }
        }
        "hypercut-complement" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(1) {
                    let cuts = hypercuts(n, d, f)?;
                    let pick: Vec<&Chain> = if g.exhaustive {
                        plan.reserve(cuts.len() as u128)?;
                        cuts.iter().collect()
                    } else {
                        cuts.choose_multiple(&mut rng, g.seeds).collect()
                    };
                    for h in pick {
                        plan.push(Predicate::HypercutComplement {
                            n,
                            d,
                            cut: ChainData::from_chain(h),
                        })?;
                    }
                }
            }
        }
        "hypercut-connectivity" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(1) {
                    // cycles of dimension n - d - 2 dualize to d-dimensional hypercuts
                    let c = n as isize - d as isize - 2;
                    if c >= 1 {
                        for _ in 0..g.seeds {
                            let z = random_simple_cycle(n, c as usize, f, rng.gen())?;
                            plan.push(Predicate::HypercutOfDual {
                                n,
                                cycle: ChainData::from_chain(&z),
                            })?;
                        }
                    }
                    if d + 2 <= n as usize {
                        for tau in subsets(n, d) {
                            plan.push(Predicate::StarCut {
                                n,
                                tau,
                                p: f.p() as u64,
                            })?;
                        }
                    }
                }
            }
        }
        "two-cocycle" => {
            for &f in &g.ps {
                for &n in &g.ns {
                    let edges = subsets(n, 2);
                    let mut made = 0;
                    while made < g.seeds {
                        let mut c = Chain::zero(1, f);
                        for e in &edges {
                            if rng.gen_bool(0.5) {
                                c.add_term(e.clone(), rng.gen_range(1..f.p()));
                            }
                        }
                        let dc = coboundary(&c, n);
                        if dc.is_zero() {
                            continue;
                        }
                        made += 1;
                        plan.push(Predicate::Cocycle {
                            n,
                            cochain: ChainData::from_chain(&dc),
                            disconnected: false,
                        })?;
                    }
                    if n >= 6 && g.ds.contains(&3) {
                        let mut h = star_hypercut(&Simplex::from_set([1, 2, 3]), n, f)?;
                        h.axpy(1, &star_hypercut(&Simplex::from_set([4, 5, 6]), n, f)?);
                        plan.push(Predicate::Cocycle {
                            n,
                            cochain: ChainData::from_chain(&h),
                            disconnected: true,
                        })?;
                    }
                }
            }
        }
        "duality-identity" | "double-dual" => {
            for &f in &g.ps {
                for &n in &g.ns {
                    for _ in 0..g.seeds {
                        let chain = ChainData::from_chain(&random_chain(&mut rng, n, f));
                        plan.push(if id == "double-dual" {
                            Predicate::DoubleDual { n, chain }
                        } else {
                            Predicate::DualityIdentity { n, chain }
                        })?;
                    }
                }
            }
        }
        "duality-graph-isomorphism" => {
            for &f in &g.ps {
                for (n, c) in nd_pairs(3) {
                    for _ in 0..g.seeds {
                        let z = random_simple_cycle(n, c, f, rng.gen())?;
                        plan.push(Predicate::DualGraphIsomorphism {
                            n,
                            cycle: ChainData::from_chain(&z),
                        })?;
                    }
                }
            }
        }
        "small-set-acyclicity" => {
            let n_max = g.ns.iter().copied().max().unwrap_or(9);
            for &d in &g.ds {
                if d < 2 || n_max < d as u32 + 1 {
                    continue;
                }
                for s in 0..g.seeds {
                    let n = rng.gen_range(d as u32 + 1..=n_max);
                    let set = random_small_set(&mut rng, d, n);
                    let p = g.ps[s % g.ps.len()].p() as u64;
                    plan.push(Predicate::SmallSet {
                        d,
                        set,
                        p,
                        seed: rng.gen(),
                    })?;
                }
            }
        }
        "components-localization" => removal_instances(g, &mut plan, |z, removed| {
            Predicate::ComponentsLocalization {
                cycle: ChainData::from_chain(z),
                removed,
            }
        })?,
        "component-bound" => {
            let p = g.ps[0].p() as u64;
            removal_instances(g, &mut plan, |z, removed| Predicate::ComponentBound {
                faces: z.support_vec(),
                removed,
                p,
            })?
        }
        "toughness" => {
            removal_instances(g, &mut plan, |z, removed| Predicate::Toughness {
                faces: z.support_vec(),
                removed,
            })?;
            for &d in g.ds.iter().filter(|&&d| (1..=3).contains(&d)) {
                let z = cross_polytope_cycle(d, g.ps[0])?;
                let faces = z.support_vec();
                let colours = facet_graph(&faces)?.graph().bipartition().ok_or_else(|| {
                    Error::InternalInconsistency("cross-polytope graph is not bipartite".into())
                })?;
                for side in [false, true] {
                    let removed: Vec<Simplex> = faces
                        .iter()
                        .zip(&colours)
                        .filter(|(_, &c)| c == side)
                        .map(|(s, _)| s.clone())
                        .collect();
                    let value = removed.len();
                    plan.push(Predicate::ComponentsEqual {
                        faces: faces.clone(),
                        removed,
                        value,
                    })?;
                }
            }
        }
        "betti-crude-bound" => {
            for &f in &g.ps {
                for (n, d) in nd_pairs(1) {
                    let all = subsets(n, d + 1);
                    for _ in 0..g.seeds {
                        let size = rng.gen_range(1..=all.len().min(12));
                        let set: Vec<Simplex> =
                            all.choose_multiple(&mut rng, size).cloned().collect();
                        plan.push(Predicate::BettiCrudeBound {
                            d,
                            set,
                            p: f.p() as u64,
                        })?;
                    }
                }
            }
        }
        "hypersimplex-connectivity" => {
            for (n, d) in nd_pairs(2) {
                plan.push(Predicate::KappaEquals {
                    faces: subsets(n, d + 1),
                    value: (d + 1) * (n as usize - d - 1),
                })?;
            }
        }
        "mixed-connectivity" => {
            for &f in &g.ps {
                for &d in &g.ds {
                    if d < 1 {
                        continue;
                    }
                    for name in ["simplex-boundary", "cross-polytope"] {
                        let b = polytope(name, d)?;
                        let faces: Vec<Simplex> =
                            b.all_faces().filter(|s| !s.is_empty()).cloned().collect();
                        let exhaustive = name == "simplex-boundary" || g.exhaustive;
                        for r in 0..d {
                            plan.push(Predicate::MixedConnectivity {
                                polytope: name.into(),
                                d,
                                r,
                                p: f.p() as u64,
                                removed: Vec::new(),
                            })?;
                            for removed in
                                sets_up_to(&faces, d - r, exhaustive, g.seeds, &mut rng, &plan)?
                            {
                                plan.push(Predicate::MixedConnectivity {
                                    polytope: name.into(),
                                    d,
                                    r,
                                    p: f.p() as u64,
                                    removed,
                                })?;
                            }
                        }
                    }
                }
            }
        }
        "cell-axioms" => {
            for &f in &g.ps {
                for zoo in ZOO {
                    plan.push(Predicate::CellAxioms {
                        zoo: zoo.to_string(),
                        p: f.p() as u64,
                    })?;
                    plan.push(Predicate::CellSmallSets {
                        zoo: zoo.to_string(),
                        p: f.p() as u64,
                    })?;
                }
            }
        }
        "cell-cycle-connectivity" => {
            for &f in &g.ps {
                for zoo in ZOO.iter().filter(|z| **z != "pentagon") {
                    let poset = zoo_poset(zoo, f)?;
                    let mut seen = BTreeSet::new();
                    for c in 0..poset.len() {
                        let closed = poset.closed_cell(c);
                        for d in 0..poset.dim(c) {
                            let cells: Vec<usize> = closed
                                .iter()
                                .copied()
                                .filter(|&j| poset.dim(j) == d)
                                .collect();
                            if cells.len() > 22 {
                                continue;
                            }
                            let cols: Vec<SparseVec> = cells
                                .iter()
                                .map(|&j| poset.boundary_of(j).to_vec())
                                .collect();
                            for circuit in circuits_of_columns(f, &cols) {
                                let cycle: Vec<(String, u32)> = circuit
                                    .iter()
                                    .map(|&(k, a)| (poset.id(cells[k]).to_string(), a))
                                    .collect();
                                let key: Vec<String> = cycle.iter().map(|e| e.0.clone()).collect();
                                if seen.insert(key) {
                                    plan.push(Predicate::CellCycle {
                                        zoo: zoo.to_string(),
                                        p: f.p() as u64,
                                        cycle,
                                    })?;
                                }
                            }
                        }
                    }
                }
            }
        }
        "pentagon" => {
            for &f in &g.ps {
                plan.push(Predicate::Pentagon { p: f.p() as u64 })?;
            }
        }
        "compressed-optimal" => {
            for &f in &g.ps {
                for (n, r) in nd_pairs(1) {
                    let total = binomial(n as u64, r as u64 + 1);
                    if total > 15 {
                        continue;
                    }
                    for t in 0..=total as usize {
                        plan.push(Predicate::CompressedOptimal {
                            n,
                            r,
                            t,
                            p: f.p() as u64,
                        })?;
                    }
                }
            }
        }
        "full-skeleton-cycles" => {
            for &f in &g.ps {
                for (n, r) in nd_pairs(1) {
                    plan.push(Predicate::FullSkeleton {
                        n,
                        r,
                        p: f.p() as u64,
                    })?;
                }
            }
        }
        other => return Err(Error::UnknownTheorem(other.to_string())),
    }
    Ok(plan.items)
}

fn sets_of_size<T: Clone>(
    items: &[T],
    size: usize,
    exhaustive: bool,
    count: usize,
    rng: &mut ChaCha8Rng,
    plan: &Plan,
) -> Result<Vec<Vec<T>>> {
    if size > items.len() {
        return Ok(Vec::new());
    }
    if exhaustive {
        plan.reserve(binomial(items.len() as u64, size as u64) as u128)?;
        return Ok(subsets(items.len() as u32, size)
            .into_iter()
            .map(|pick| {
                pick.vertices()
                    .iter()
                    .map(|&i| items[i as usize - 1].clone())
                    .collect()
            })
            .collect());
    }
    Ok((0..count)
        .map(|_| {
            let mut idx = sample(rng, items.len(), size).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| items[i].clone()).collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub detail: String,
    pub instance: Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub passed: bool,
    pub instances: usize,
    pub violations: Vec<Violation>,
    /// `[min, max]` of every statistic reported by the instances.
    pub extremes: BTreeMap<String, [i64; 2]>,
    /// Histogram of every statistic.
    pub distributions: BTreeMap<String, BTreeMap<i64, usize>>,
    pub wall_time_ms: u64,
}

pub fn run_check(spec: &CheckSpec) -> Result<CheckReport> {
    let def = defaults(&spec.id).ok_or_else(|| Error::UnknownTheorem(spec.id.clone()))?;
    let grid = resolve(spec, def)?;
    let start = Instant::now();
    let instances = plan_instances(&spec.id, &grid)?;
    let results: Vec<Result<Evaluation>> = instances.par_iter().map(Predicate::evaluate).collect();
    let mut report = CheckReport {
        id: spec.id.clone(),
        passed: true,
        instances: instances.len(),
        violations: Vec::new(),
        extremes: BTreeMap::new(),
        distributions: BTreeMap::new(),
        wall_time_ms: 0,
    };
    for (inst, res) in instances.into_iter().zip(results) {
        let eval = res.unwrap_or_else(|e| Evaluation::verdict(false, e.to_string(), vec![]));
        for (key, v) in &eval.stats {
            let ext = report.extremes.entry(key.to_string()).or_insert([*v, *v]);
            ext[0] = ext[0].min(*v);
            ext[1] = ext[1].max(*v);
            *report
                .distributions
                .entry(key.to_string())
                .or_default()
                .entry(*v)
                .or_default() += 1;
        }
        if !eval.ok {
            report.violations.push(Violation {
                detail: eval.detail,
                instance: inst,
            });
        }
    }
    report.passed = report.violations.is_empty();
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Re-evaluates the payload of a violation; true when it still fails.
pub fn recheck(v: &Violation) -> bool {
    !matches!(v.instance.evaluate(), Ok(Evaluation { ok: true, .. }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn report_render(r: &CheckReport, format: ReportFormat) -> String {
    if format == ReportFormat::Json {
        let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
        s.push('\n');
        return s;
    }
    let mut out = if r.passed {
        format!("PASS {} {} instances\n", r.id, r.instances)
    } else {
        format!(
            "FAIL {} {} instances, {} violations\n",
            r.id,
            r.instances,
            r.violations.len()
        )
    };
    for (key, [lo, hi]) in &r.extremes {
        let hist: Vec<String> = r.distributions[key]
            .iter()
            .map(|(v, c)| format!("{v}:{c}"))
            .collect();
        out.push_str(&format!(
            "  {key}: min {lo}, max {hi}  [{}]\n",
            hist.join(" ")
        ));
    }
    for v in r.violations.iter().take(10) {
        out.push_str(&format!(
            "  violation: {}\n    {}\n",
            v.detail,
            serde_json::to_string(&v.instance).expect("predicates serialize")
        ));
    }
    if r.violations.len() > 10 {
        out.push_str(&format!("  ... {} more\n", r.violations.len() - 10));
    }
    out.push_str(&format!("  wall time {} ms\n", r.wall_time_ms));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex;

    fn quick(id: &str) -> CheckReport {
        let mut spec = CheckSpec::new(id);
        spec.seeds = Some(2);
        run_check(&spec).unwrap()
    }

    #[test]
    fn every_id_is_registered_and_passes_small_grids() {
        for id in CHECK_IDS {
            let r = quick(id);
            assert!(r.passed, "{}", report_render(&r, ReportFormat::Text));
            assert!(r.instances > 0, "{id}");
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert_eq!(
            run_check(&CheckSpec::new("four-colour")).unwrap_err(),
            Error::UnknownTheorem("four-colour".into())
        );
    }

    #[test]
    fn oversized_grids_are_refused() {
        let mut spec = CheckSpec::new("mixed-connectivity").exhaustive();
        spec.d = Some(vec![7]);
        assert!(matches!(run_check(&spec), Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = quick("cycle-connectivity");
        let b = quick("cycle-connectivity");
        assert_eq!(
            (a.instances, &a.extremes, &a.distributions),
            (b.instances, &b.extremes, &b.distributions)
        );
    }

    #[test]
    fn json_round_trip() {
        let mut r = quick("pentagon");
        r.violations.push(Violation {
            detail: "planted".into(),
            instance: Predicate::KappaAtLeast {
                faces: vec![simplex![1, 2], simplex![2, 3], simplex![1, 3]],
                bound: 3,
            },
        });
        let text = report_render(&r, ReportFormat::Json);
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(report_render(&quick("pentagon"), ReportFormat::Text)
            .starts_with("PASS pentagon 3 instances"));
    }

    #[test]
    fn violations_recheck() {
        // a triangle boundary has connectivity 2, so demanding 3 must fail and keep failing
        let planted = [
            Predicate::KappaAtLeast {
                faces: vec![simplex![1, 2], simplex![2, 3], simplex![1, 3]],
                bound: 3,
            },
            Predicate::Toughness {
                faces: vec![simplex![1, 2], simplex![2, 3], simplex![3, 4]],
                removed: vec![],
            },
            Predicate::KappaEquals {
                faces: subsets(5, 2),
                value: 5,
            },
        ];
        for p in planted {
            let eval = p.evaluate().unwrap();
            assert!(!eval.ok);
            let v = Violation {
                detail: eval.detail,
                instance: p,
            };
            let json = serde_json::to_string(&v).unwrap();
            let back: Violation = serde_json::from_str(&json).unwrap();
            assert!(recheck(&back));
        }
    }

    #[test]
    fn witnesses_and_tightness() {
        let r = run_check(&CheckSpec::new("toughness").exhaustive()).unwrap();
        assert!(r.passed);
        let mut spec = CheckSpec::new("two-cocycle");
        spec.seeds = Some(3);
        spec.n = Some(vec![7]);
        let r = run_check(&spec).unwrap();
        assert!(r.passed);
        assert_eq!(r.extremes["components"], [2, 2]);
        let r = run_check(&CheckSpec::new("pentagon")).unwrap();
        assert_eq!(r.extremes["kappa"], [2, 2]);
    }
}
