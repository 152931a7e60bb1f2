use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use schreier_lab::action::{build_action, ActionInstance, GroupElement, Point};
use schreier_lab::diameter::{auto_diameter, exact_diameter, pivot_bounds, Method, DEFAULT_BUDGET};
use schreier_lab::random::{sample_multiset, GeneratorMultiset, SeededRng};
use schreier_lab::schreier::{build_graph, PointSet, SchreierGraph};

fn inst(s: &str) -> ActionInstance {
    build_action(s.parse().unwrap()).unwrap()
}

/// Endpoints of all words of length exactly t, by enumerating the words.
fn word_endpoints(instance: &ActionInstance, a: &GeneratorMultiset, omega: u32, t: u32) -> BTreeSet<u32> {
    let mut ends = BTreeSet::from([omega]);
    for _ in 0..t {
        ends = ends
            .iter()
            .flat_map(|&x| a.iter().map(move |g| instance.act(g, Point(x)).unwrap().0))
            .collect();
    }
    ends
}

/// Distance by brute force: the shortest t for which some word of length t
/// ends at the target.
fn word_distances(instance: &ActionInstance, a: &GeneratorMultiset, omega: u32) -> Vec<u32> {
    let n = instance.degree();
    let mut dist = vec![u32::MAX; n];
    let mut seen = BTreeSet::new();
    for t in 0..=n as u32 {
        for x in word_endpoints(instance, a, omega, t) {
            if seen.insert(x) {
                dist[x as usize] = t;
            }
        }
    }
    dist
}

fn small_cases() -> Vec<(ActionInstance, GeneratorMultiset)> {
    let mut rng = SeededRng::new(10);
    let mut out = Vec::new();
    for spec in ["sym:n=6", "sym-tuples:n=4,r=2", "cyclic:m=9", "abelian:m=3,d=2", "dihedral:m=7", "affine:p=11", "proj:p=7"] {
        for k in 1..=3 {
            let instance = inst(spec);
            let a = sample_multiset(&instance, k, &mut rng).unwrap();
            out.push((instance, a));
        }
    }
    out
}

#[test]
fn spheres_match_word_enumeration() {
    for (instance, a) in small_cases() {
        let g = build_graph(&instance, &a).unwrap();
        for t in 0..6 {
            let sphere: BTreeSet<u32> = g.sphere(0, t).iter().collect();
            assert_eq!(sphere, word_endpoints(&instance, &a, 0, t), "{} t={t}", instance.spec());
        }
    }
}

#[test]
fn bfs_distances_match_word_enumeration() {
    for (instance, a) in small_cases() {
        let g = build_graph(&instance, &a).unwrap();
        for omega in [0, instance.degree() as u32 - 1] {
            assert_eq!(g.distances_from(omega), word_distances(&instance, &a, omega), "{}", instance.spec());
        }
    }
}

#[test]
fn reverse_distances_are_transposed() {
    let mut rng = SeededRng::new(11);
    for _ in 0..30 {
        let instance = inst(&format!("sym:n={}", rng.random_range(3..40)));
        let a = sample_multiset(&instance, rng.random_range(1..4), &mut rng).unwrap();
        let g = build_graph(&instance, &a).unwrap();
        let r = g.reverse();
        let n = g.degree() as u32;
        let fwd: Vec<Vec<u32>> = (0..n).map(|x| g.distances_from(x)).collect();
        for y in 0..n {
            let back = r.distances_from(y);
            for x in 0..n as usize {
                assert_eq!(back[x], fwd[x][y as usize]);
            }
        }
    }
}

fn relabel(g: &SchreierGraph, pi: &[u32]) -> SchreierGraph {
    let tables = g
        .tables()
        .iter()
        .map(|t| {
            let mut out = vec![0u32; t.len()];
            for (x, &y) in t.iter().enumerate() {
                out[pi[x] as usize] = pi[y as usize];
            }
            out
        })
        .collect();
    SchreierGraph::from_tables(g.degree(), tables).unwrap()
}

#[test]
fn diameter_is_invariant_under_relabelling() {
    let mut rng = SeededRng::new(12);
    for spec in ["sym:n=60", "dihedral:m=50", "affine:p=53", "proj:p=41", "sym-tuples:n=9,r=2"] {
        let instance = inst(spec);
        let a = sample_multiset(&instance, 3, &mut rng).unwrap();
        let g = build_graph(&instance, &a).unwrap();
        let mut pi: Vec<u32> = (0..g.degree() as u32).collect();
        pi.shuffle(&mut rng);
        let h = relabel(&g, &pi);
        let dg = exact_diameter(&g, u64::MAX).ok().map(|r| r.exact);
        let dh = exact_diameter(&h, u64::MAX).ok().map(|r| r.exact);
        assert_eq!(dg, dh, "{spec}");
        assert_eq!(g.is_connected(), h.is_connected());
    }
}

#[test]
fn pivot_bounds_sandwich_exact() {
    let mut rng = SeededRng::new(13);
    let mut checked = 0;
    while checked < 200 {
        let spec = match rng.random_range(0..4) {
            0 => format!("sym:n={}", rng.random_range(3..=512)),
            1 => format!("dihedral:m={}", rng.random_range(3..=256)),
            2 => format!("cyclic:m={}", rng.random_range(2..=512)),
            _ => format!("affine:p={}", [5, 17, 101, 257, 509][rng.random_range(0..5)]),
        };
        let instance = inst(&spec);
        let a = sample_multiset(&instance, rng.random_range(2..=16), &mut rng).unwrap();
        let g = build_graph(&instance, &a).unwrap();
        if !g.is_connected() {
            continue;
        }
        let exact = exact_diameter(&g, u64::MAX).unwrap().exact.unwrap();
        let b = pivot_bounds(&g, 4, &mut rng).unwrap();
        assert!(b.lower.unwrap() <= exact && exact <= b.upper.unwrap(), "{spec}");
        checked += 1;
    }
}

#[test]
fn vertex_transitive_upper_at_most_twice_exact() {
    let mut rng = SeededRng::new(14);
    for spec in ["cyclic:m=300", "abelian:m=5,d=3", "abelian:m=2,d=8"] {
        let instance = inst(spec);
        for _ in 0..10 {
            let a = sample_multiset(&instance, 10, &mut rng).unwrap();
            let g = build_graph(&instance, &a).unwrap();
            if !g.is_connected() {
                continue;
            }
            let exact = exact_diameter(&g, u64::MAX).unwrap().exact.unwrap();
            let b = pivot_bounds(&g, 2, &mut rng).unwrap();
            assert!(b.upper.unwrap() <= 2 * exact);
            // Cayley graph: every eccentricity equals the diameter
            assert_eq!(b.lower.unwrap(), exact);
        }
    }
}

#[test]
fn too_few_generators_never_connect_the_cube() {
    let instance = inst("abelian:m=2,d=12");
    let mut rng = SeededRng::new(15);
    for _ in 0..20 {
        let a = sample_multiset(&instance, 6, &mut rng).unwrap();
        assert!(!build_graph(&instance, &a).unwrap().is_connected());
    }
}

#[test]
fn auto_falls_back_on_large_degree() {
    let instance = inst("sym:n=1000000");
    let mut rng = SeededRng::new(16);
    let a = sample_multiset(&instance, 8, &mut rng).unwrap();
    let g = build_graph(&instance, &a).unwrap();
    let r = auto_diameter(&g, DEFAULT_BUDGET, 2, &mut rng);
    assert_eq!(r.method, Method::PivotBounds);
    assert!(r.connected);
    assert!(r.lower.unwrap() <= r.upper.unwrap());
}

#[test]
fn identity_loops_do_not_change_distances() {
    let instance = inst("cyclic:m=12");
    let a = GeneratorMultiset::new(vec![GroupElement::Cyclic(5)]);
    let with_loop = GeneratorMultiset::new(vec![GroupElement::Cyclic(5), GroupElement::Cyclic(0)]);
    let g = build_graph(&instance, &a).unwrap();
    let h = build_graph(&instance, &with_loop).unwrap();
    assert_eq!(g.distances_from(0), h.distances_from(0));
    // with a loop the spheres are nested, so the covering radius is the eccentricity
    let ecc = h.eccentricity(0, 100).radius();
    assert_eq!(h.covering_radius(0, 100).radius(), ecc);
    assert_eq!(PointSet::full(12), h.sphere(0, ecc.unwrap()));
}
