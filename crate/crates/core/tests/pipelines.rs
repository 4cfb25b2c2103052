use facetlab::collapse::{collapse_small_set, express_cycle_as_boundary, replay};
use facetlab::generators::random_simple_cycle;
use facetlab::io;
use facetlab::linalg::betti_reduced;
use facetlab::structures::{dual, is_hypercut, is_simple_cycle};
use facetlab::{boundary, Complex, FacetGraph, Field, Hypertree, Simplex};
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_cycles_dualize_to_connected_hypercuts(
        n in 4u32..=7,
        d in 1usize..=3,
        p in prop::sample::select(vec![2u64, 3, 5]),
        seed in any::<u64>(),
    ) {
        prop_assume!(d + 2 <= n as usize);
        let f = Field::new(p).unwrap();
        let z = random_simple_cycle(n, d, f, seed).unwrap();
        prop_assert!(is_simple_cycle(&z));
        let faces = z.support_vec();
        prop_assert!(FacetGraph::build(&faces).unwrap().vertex_connectivity() > d);

        let h = dual(&z, n).unwrap();
        prop_assert!(is_hypercut(&h, n));
        let cut_faces = h.support_vec();
        let hd = h.dim() as usize;
        prop_assert!(FacetGraph::build(&cut_faces).unwrap().vertex_connectivity() + hd + 1 >= n as usize);

        let text = io::chain_to_json(&z, n);
        let back = io::chain_from_json(&text).unwrap();
        prop_assert_eq!(back.chain, z);
    }

    #[test]
    fn random_hypertrees_are_acyclic_and_spanning(n in 3u32..=7, d in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(d < n as usize);
        let f = Field::new(3).unwrap();
        let t = Hypertree::random(n, d, f, seed).unwrap();
        prop_assert_eq!(t.simplices().len() as u64, binomial(n as u64 - 1, d as u64));
        let k = Complex::closure(t.simplices().iter().cloned(), n).unwrap();
        prop_assert_eq!(betti_reduced(&k, d as isize, f), 0);
        prop_assert_eq!(betti_reduced(&k, d as isize - 1, f), 0);
        let full = Complex::closure([Simplex::from_set(1..=n)], n).unwrap();
        for sigma in full.faces(d as isize).iter().filter(|s| !t.contains(s)) {
            let c = t.cap(sigma).unwrap();
            prop_assert_eq!(boundary(&c), boundary(&facetlab::Chain::simplex(sigma.clone(), f)));
        }
    }

    #[test]
    fn small_sets_collapse_and_bound_their_cycles(
        d in 2usize..=3,
        picks in prop::collection::vec(prop::collection::btree_set(1u32..=7, 1..=4), 1..=3),
    ) {
        let set: Vec<Simplex> = picks
            .into_iter()
            .take(d)
            .map(|s| Simplex::from_set(s.into_iter().take(d + 1)))
            .collect();
        let cert = collapse_small_set(d, &set).unwrap();
        prop_assert!(cert.residual.faces(d as isize).is_empty());
        prop_assert!(cert.residual.faces(d as isize - 1).is_empty());
        prop_assert_eq!(replay(&cert.start, &cert.steps).unwrap(), cert.residual.clone());

        let f = Field::new(3).unwrap();
        let k = Complex::closure(set.iter().cloned(), 7).unwrap();
        prop_assert_eq!(betti_reduced(&k, d as isize - 1, f), 0);
        for top in set.iter().filter(|s| s.dim() == d as isize) {
            let z = boundary(&facetlab::Chain::simplex(top.clone(), f));
            let u = express_cycle_as_boundary(&z, &set, d).unwrap();
            prop_assert_eq!(boundary(&u), z);
        }
    }
}
