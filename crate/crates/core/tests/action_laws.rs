use proptest::prelude::*;

use schreier_lab::action::{build_action, ActionInstance, Point};
use schreier_lab::random::SeededRng;

const SPECS: [&str; 12] = [
    "sym:n=1",
    "sym:n=7",
    "sym:n=200",
    "sym-tuples:n=6,r=3",
    "cyclic:m=1",
    "cyclic:m=97",
    "abelian:m=4,d=3",
    "dihedral:m=9",
    "dihedral:m=2",
    "affine:p=2",
    "affine:p=31",
    "proj:p=13",
];

fn inst(i: usize) -> ActionInstance {
    build_action(SPECS[i].parse().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn right_action_law(family in 0..SPECS.len(), seed in any::<u64>(), p in any::<u32>()) {
        let g_inst = inst(family);
        let mut rng = SeededRng::new(seed);
        let g = g_inst.sample_uniform(&mut rng);
        let h = g_inst.sample_uniform(&mut rng);
        let p = Point(p % g_inst.degree() as u32);
        let gh = g_inst.compose(&g, &h).unwrap();
        let stepwise = g_inst.act(&h, g_inst.act(&g, p).unwrap()).unwrap();
        prop_assert_eq!(g_inst.act(&gh, p).unwrap(), stepwise);
    }

    #[test]
    fn composition_is_associative(family in 0..SPECS.len(), seed in any::<u64>()) {
        let g_inst = inst(family);
        let mut rng = SeededRng::new(seed);
        let [a, b, c] = std::array::from_fn(|_| g_inst.sample_uniform(&mut rng));
        let left = g_inst.compose(&g_inst.compose(&a, &b).unwrap(), &c).unwrap();
        let right = g_inst.compose(&a, &g_inst.compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_identity(family in 0..SPECS.len(), seed in any::<u64>()) {
        let g_inst = inst(family);
        let g = g_inst.sample_uniform(&mut SeededRng::new(seed));
        let inv = g_inst.invert(&g).unwrap();
        let e = g_inst.identity();
        prop_assert_eq!(g_inst.compose(&g, &inv).unwrap(), e.clone());
        prop_assert_eq!(g_inst.compose(&inv, &g).unwrap(), e.clone());
        prop_assert_eq!(g_inst.compose(&e, &g).unwrap(), g.clone());
        prop_assert_eq!(g_inst.invert(&inv).unwrap(), g);
    }

    #[test]
    fn materialized_tables_are_inverse_permutations(family in 0..SPECS.len(), seed in any::<u64>()) {
        let g_inst = inst(family);
        let g = g_inst.sample_uniform(&mut SeededRng::new(seed));
        let fwd = g_inst.materialize(&g).unwrap();
        let bwd = g_inst.materialize(&g_inst.invert(&g).unwrap()).unwrap();
        prop_assert_eq!(fwd.len(), g_inst.degree());
        for x in 0..fwd.len() {
            prop_assert_eq!(bwd[fwd[x] as usize] as usize, x);
        }
    }
}

#[test]
fn identity_materializes_to_identity_table() {
    for i in 0..SPECS.len() {
        let g_inst = inst(i);
        let t = g_inst.materialize(&g_inst.identity()).unwrap();
        assert!(t.iter().enumerate().all(|(x, &y)| x as u32 == y), "{}", SPECS[i]);
    }
}

#[test]
fn actions_are_transitive() {
    // the orbit of point 0 under the whole group is all of Ω
    for i in 0..SPECS.len() {
        let g_inst = inst(i);
        let Ok(all) = g_inst.enumerate_group(1 << 16) else { continue };
        let mut hit = vec![false; g_inst.degree()];
        for g in &all {
            hit[g_inst.act(g, Point(0)).unwrap().index()] = true;
        }
        assert!(hit.iter().all(|&h| h), "{}", SPECS[i]);
    }
}
