//! Standard complexes and cycles: complete skeleta, simplex boundaries,
//! cross-polytopes, the triangulated torus and random fundamental cycles.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeMap;

use crate::cell_complex::{pentagon_poset, validate_axioms, CellPoset};
use crate::chain::{boundary, Chain};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::facet_graph::FacetGraph;
use crate::field::Field;
use crate::io;
use crate::linalg::{kernel_basis, SparseMatrix};
use crate::simplex::{subsets, Simplex};
use crate::structures::{is_hypercut, is_simple_cycle, star_hypercut, Hypertree};

/// All faces of dimension at most `d` over `[n]`.
pub fn complete_complex(n: u32, d: usize) -> Complex {
    let top = (d + 1).min(n as usize);
    Complex::closure(subsets(n, top), n).expect("vertices within [n]")
}

/// The boundary complex of the `(d+1)`-simplex on `[d+2]`.
pub fn simplex_boundary_complex(d: usize) -> Complex {
    let n = d as u32 + 2;
    Complex::closure(subsets(n, d + 1), n).expect("vertices within [n]")
}

/// `∂sigma` for a simplex with at least two vertices.
pub fn simplex_boundary_cycle(sigma: &Simplex, field: Field) -> Result<Chain> {
    if sigma.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "{sigma} has no nonempty boundary cycle"
        )));
    }
    Ok(boundary(&Chain::simplex(sigma.clone(), field)))
}

/// The unique (up to scale) cycle on `facets`, normalized so that the least
/// facet has coefficient 1.
fn unique_cycle_on(facets: Vec<Simplex>, field: Field) -> Result<Chain> {
    let m = SparseMatrix::boundary_of(field, facets);
    let ker = kernel_basis(&m);
    if ker.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "expected a one-dimensional cycle space, found dimension {}",
            ker.len()
        )));
    }
    Ok(ker.vectors[0].normalized())
}

/// Facets of the boundary of the `(d+1)`-dimensional cross-polytope on
/// `[2d+2]` with antipodal pairs `(2i-1, 2i)`.
pub fn cross_polytope_facets(d: usize) -> Vec<Simplex> {
    (0u32..1 << (d + 1))
        .map(|mask| Simplex::from_set((0..=d as u32).map(|i| 2 * i + 1 + (mask >> i & 1))))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub fn cross_polytope_complex(d: usize) -> Complex {
    Complex::closure(cross_polytope_facets(d), 2 * d as u32 + 2).expect("vertices within [n]")
}

/// The fundamental `d`-cycle of the cross-polytope boundary.
pub fn cross_polytope_cycle(d: usize, field: Field) -> Result<Chain> {
    if d < 1 {
        return Err(Error::InvalidParameter(
            "cross-polytope cycle needs d >= 1".into(),
        ));
    }
    unique_cycle_on(cross_polytope_facets(d), field)
}

/// Triangles of the `k × k` torus grid with north-east diagonals; vertex
/// `(i, j)` is numbered `i·k + j + 1`.
pub fn torus_facets(k: u32) -> Vec<Simplex> {
    let v = |i: u32, j: u32| (i % k) * k + (j % k) + 1;
    let mut out = Vec::with_capacity(2 * (k * k) as usize);
    for i in 0..k {
        for j in 0..k {
            out.push(Simplex::from_set([v(i, j), v(i + 1, j), v(i + 1, j + 1)]));
            out.push(Simplex::from_set([v(i, j), v(i, j + 1), v(i + 1, j + 1)]));
        }
    }
    out.sort();
    out
}

/// The fundamental 2-cycle of the `k × k` torus; `k` must be even and at least 4.
pub fn torus_cycle(k: u32, field: Field) -> Result<Chain> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "torus side must be even and at least 4, got {k}"
        )));
    }
    unique_cycle_on(torus_facets(k), field)
}

/// Fundamental cycle of a seeded random hypertree and a seeded simplex outside it.
pub fn random_simple_cycle(n: u32, d: usize, field: Field, seed: u64) -> Result<Chain> {
    if (d as u32) + 2 > n {
        return Err(Error::InvalidParameter(format!(
            "need n >= d+2, got n={n}, d={d}"
        )));
    }
    let tree = Hypertree::random(n, d, field, seed)?;
    let outside: Vec<Simplex> = subsets(n, d + 1)
        .into_iter()
        .filter(|s| !tree.contains(s))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c1c1e);
    let sigma = outside
        .choose(&mut rng)
        .expect("n >= d+2 leaves simplices outside");
    tree.fundamental_cycle(sigma)
}

/// Parameters accepted by [`named_instance`]; unset values fall back to
/// per-instance defaults.
#[derive(Clone, Debug, Default)]
pub struct GenParams {
    pub n: Option<u32>,
    pub d: Option<usize>,
    pub k: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Complex(Complex),
    Chain { n: u32, chain: Chain },
    Cells(CellPoset),
}

/// Property a generated instance claims about itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Advertised {
    SimpleCycle,
    Pseudomanifold,
    Hypertree,
    Hypercut,
    CellAxioms,
    Regular(usize),
}

#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub name: String,
    pub field: Field,
    pub n: u32,
    pub d: isize,
    pub payload: Payload,
    pub advertised: Vec<Advertised>,
}

pub const INSTANCE_NAMES: &[&str] = &[
    "complete",
    "simplex-boundary",
    "cross-polytope",
    "torus",
    "random-cycle",
    "star-tree",
    "perturbed-tree",
    "star-cut",
    "hypersimplex",
    "pentagon-cells",
];

pub fn named_instance(name: &str, params: &GenParams, field: Field) -> Result<NamedInstance> {
    let need = |v: Option<u32>, what: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs --{what}")))
    };
    let n_param = need(params.n, "n");
    let d_param = params
        .d
        .ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs --d")));
    let chain =
        |name: &str, n: u32, d: usize, chain: Chain, advertised: Vec<Advertised>| NamedInstance {
            name: name.into(),
            field,
            n,
            d: d as isize,
            payload: Payload::Chain { n, chain },
            advertised,
        };
    let tree = |t: Hypertree| -> Result<NamedInstance> {
        Ok(NamedInstance {
            name: name.into(),
            field,
            n: t.n(),
            d: t.d() as isize,
            payload: Payload::Complex(Complex::closure(t.simplices().iter().cloned(), t.n())?),
            advertised: vec![Advertised::Hypertree],
        })
    };
    match name {
        "complete" | "hypersimplex" => {
            let (n, d) = (n_param?, d_param?);
            if d as u32 + 1 > n {
                return Err(Error::InvalidParameter(format!(
                    "need d+1 <= n, got n={n}, d={d}"
                )));
            }
            let advertised = if name == "hypersimplex" {
                vec![Advertised::Regular((d + 1) * (n as usize - d - 1))]
            } else {
                Vec::new()
            };
            Ok(NamedInstance {
                name: name.into(),
                field,
                n,
                d: d as isize,
                payload: Payload::Complex(complete_complex(n, d)),
                advertised,
            })
        }
        "simplex-boundary" => {
            let d = d_param?.max(1);
            let n = d as u32 + 2;
            let z = simplex_boundary_cycle(&Simplex::from_set(1..=n), field)?;
            Ok(chain(
                name,
                n,
                d,
                z,
                vec![Advertised::SimpleCycle, Advertised::Pseudomanifold],
            ))
        }
        "cross-polytope" => {
            let d = d_param?;
            let z = cross_polytope_cycle(d, field)?;
            Ok(chain(
                name,
                2 * d as u32 + 2,
                d,
                z,
                vec![Advertised::SimpleCycle, Advertised::Pseudomanifold],
            ))
        }
        "torus" => {
            let k = need(params.k, "k")?;
            let z = torus_cycle(k, field)?;
            Ok(chain(
                name,
                k * k,
                2,
                z,
                vec![Advertised::SimpleCycle, Advertised::Pseudomanifold],
            ))
        }
        "random-cycle" => {
            let (n, d) = (n_param?, d_param?);
            let z = random_simple_cycle(n, d, field, params.seed.unwrap_or(0))?;
            Ok(chain(name, n, d, z, vec![Advertised::SimpleCycle]))
        }
        "star-tree" => tree(Hypertree::star(n_param?, d_param?, field)?),
        "perturbed-tree" => tree(Hypertree::perturbed(n_param?, d_param?, field)?),
        "star-cut" => {
            let (n, d) = (n_param?, d_param?);
            if d < 1 || d as u32 + 1 > n {
                return Err(Error::InvalidParameter(format!(
                    "need 1 <= d < n, got n={n}, d={d}"
                )));
            }
            let tau = Simplex::from_set(1..=d as u32);
            let h = star_hypercut(&tau, n, field)?;
            Ok(chain(name, n, d, h, vec![Advertised::Hypercut]))
        }
        "pentagon-cells" => Ok(NamedInstance {
            name: name.into(),
            field,
            n: 5,
            d: 2,
            payload: Payload::Cells(pentagon_poset(field)?),
            advertised: vec![Advertised::CellAxioms],
        }),
        other => Err(Error::InvalidParameter(format!(
            "unknown instance `{other}`; known: {}",
            INSTANCE_NAMES.join(", ")
        ))),
    }
}

impl NamedInstance {
    pub fn to_json(&self) -> String {
        match &self.payload {
            Payload::Complex(k) => io::complex_to_json(k, self.field),
            Payload::Chain { n, chain } => io::chain_to_json(chain, *n),
            Payload::Cells(p) => io::cell_poset_to_json(p),
        }
    }

    /// Rechecks every advertised property with the independent predicates.
    pub fn holds_advertised(&self) -> bool {
        self.advertised.iter().all(|a| match (a, &self.payload) {
            (Advertised::SimpleCycle, Payload::Chain { chain, .. }) => is_simple_cycle(chain),
            (Advertised::Pseudomanifold, Payload::Chain { chain, .. }) => is_pseudomanifold(chain),
            (Advertised::Hypercut, Payload::Chain { n, chain }) => is_hypercut(chain, *n),
            (Advertised::Hypertree, Payload::Complex(k)) => {
                let faces: Vec<Simplex> = k.faces(self.d).iter().cloned().collect();
                Hypertree::new(self.n, self.d as usize, self.field, faces).is_ok()
            }
            (Advertised::CellAxioms, Payload::Cells(p)) => validate_axioms(p).all_pass(),
            (Advertised::Regular(r), Payload::Complex(k)) => {
                let faces: Vec<Simplex> = k.faces(self.d).iter().cloned().collect();
                FacetGraph::build(&faces)
                    .map(|g| (0..faces.len()).all(|v| g.graph().degree(v) == *r))
                    .unwrap_or(false)
            }
            _ => false,
        })
    }
}

/// Every ridge of the support lies in exactly two support facets.
pub fn is_pseudomanifold(z: &Chain) -> bool {
    let mut count: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in z.support() {
        for (_, r) in s.boundary_faces() {
            *count.entry(r).or_default() += 1;
        }
    }
    !count.is_empty() && count.values().all(|&c| c == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::betti_reduced;
    use crate::simplex;

    fn f(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn complete_complex_counts() {
        assert_eq!(complete_complex(4, 1).faces(1).len(), 6);
        assert_eq!(complete_complex(5, 2).faces(2).len(), 10);
        assert_eq!(complete_complex(3, 5).dim(), 2);
    }

    #[test]
    fn simplex_boundaries() {
        let z = simplex_boundary_cycle(&simplex![1, 2, 3], f(3)).unwrap();
        assert_eq!(z.len(), 3);
        let z = simplex_boundary_cycle(&simplex![1, 2, 3, 4], f(3)).unwrap();
        assert_eq!(z.len(), 4);
        assert!(is_simple_cycle(&z));
        assert!(simplex_boundary_cycle(&simplex![1], f(3)).is_err());
    }

    #[test]
    fn cross_polytopes() {
        for p in [2, 3, 5] {
            let q = cross_polytope_cycle(1, f(p)).unwrap();
            assert_eq!(q.len(), 4);
            for d in 1..=3 {
                let z = cross_polytope_cycle(d, f(p)).unwrap();
                assert_eq!(z.len(), 1 << (d + 1));
                assert!(is_simple_cycle(&z));
                assert!(is_pseudomanifold(&z));
            }
        }
        let oct = cross_polytope_cycle(2, f(3)).unwrap();
        let g = FacetGraph::build(&oct.support_vec()).unwrap();
        let colours = g.graph().bipartition().unwrap();
        assert_eq!(colours.iter().filter(|&&c| c).count(), 4);
        assert!((0..8).all(|v| g.graph().degree(v) == 3));
    }

    #[test]
    fn torus() {
        let field = f(3);
        let z = torus_cycle(4, field).unwrap();
        assert_eq!(z.len(), 32);
        let k = Complex::closure(z.support().cloned(), 16).unwrap();
        assert_eq!(k.f_vector(), vec![16, 48, 32]);
        assert_eq!(betti_reduced(&k, 1, field), 2);
        assert_eq!(betti_reduced(&k, 2, field), 1);
        assert!(is_pseudomanifold(&z));
        let g = FacetGraph::build(&z.support_vec()).unwrap();
        assert!(g.graph().bipartition().is_some());
        assert!(torus_cycle(5, field).is_err());
        assert!(torus_cycle(2, field).is_err());
        assert_eq!(torus_cycle(6, f(2)).unwrap().len(), 72);
    }

    #[test]
    fn random_cycles() {
        for seed in 0..30 {
            let z = random_simple_cycle(7, 2, f(5), seed).unwrap();
            assert!(is_simple_cycle(&z));
            assert!(z.len() >= 4);
            assert_eq!(z, random_simple_cycle(7, 2, f(5), seed).unwrap());
        }
        assert!(random_simple_cycle(3, 2, f(3), 0).is_err());
    }

    #[test]
    fn named_instances_hold_their_claims() {
        let field = f(3);
        let cases: [(&str, GenParams); 10] = [
            (
                "complete",
                GenParams {
                    n: Some(5),
                    d: Some(2),
                    ..Default::default()
                },
            ),
            (
                "simplex-boundary",
                GenParams {
                    d: Some(3),
                    ..Default::default()
                },
            ),
            (
                "cross-polytope",
                GenParams {
                    d: Some(2),
                    ..Default::default()
                },
            ),
            (
                "torus",
                GenParams {
                    k: Some(4),
                    ..Default::default()
                },
            ),
            (
                "random-cycle",
                GenParams {
                    n: Some(7),
                    d: Some(2),
                    seed: Some(4),
                    ..Default::default()
                },
            ),
            (
                "star-tree",
                GenParams {
                    n: Some(6),
                    d: Some(2),
                    ..Default::default()
                },
            ),
            (
                "perturbed-tree",
                GenParams {
                    n: Some(6),
                    d: Some(2),
                    ..Default::default()
                },
            ),
            (
                "star-cut",
                GenParams {
                    n: Some(6),
                    d: Some(2),
                    ..Default::default()
                },
            ),
            (
                "hypersimplex",
                GenParams {
                    n: Some(6),
                    d: Some(2),
                    ..Default::default()
                },
            ),
            ("pentagon-cells", GenParams::default()),
        ];
        for (name, params) in cases {
            let inst = named_instance(name, &params, field).unwrap();
            assert!(inst.holds_advertised(), "{name}");
            assert!(!inst.to_json().is_empty());
        }
        assert!(named_instance("torus", &GenParams::default(), field).is_err());
        assert!(named_instance("klein-bottle", &GenParams::default(), field).is_err());
        assert!(!is_pseudomanifold(
            &random_simple_cycle(7, 1, field, 1).unwrap().scale(0)
        ));
    }
}
