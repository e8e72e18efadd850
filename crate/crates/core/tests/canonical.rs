mod common;

use common::*;
use confspace::canonical::*;
use confspace::point::{pairs, triples, Configuration};
use confspace::ratio::ExtendedRatio;
use confspace::tree::{enumerate_trees, FTree, Parenthesization, SetMap, Variant};
use confspace::verdict::{Condition, Manifold};
use rand::Rng;

#[test]
fn cocycle_identities_on_alpha_images() {
    let mut r = rng(1);
    for _ in 0..200 {
        let n = r.gen_range(3..=7);
        let m = r.gen_range(1..=4);
        let a = alpha(&random_config(&mut r, n, m, 1e-3));
        for (i, j, k) in triples(n) {
            let p = a.d(i, j, k) * a.d(i, k, j);
            assert!((p.value() - 1.0).abs() <= 1e-12);
            for l in (0..n).filter(|&l| l != i && l != j && l != k) {
                let q = ExtendedRatio::product(&[a.d(i, j, k), a.d(i, l, j), a.d(i, k, l)]);
                assert!((q.value() - 1.0).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn normalize_preserves_directions_and_ratios() {
    let mut r = rng(2);
    for _ in 0..100 {
        let c = random_config(&mut r, 5, 3, 1e-3);
        let a = alpha(&c);
        let b = alpha(&normalize(&c));
        assert!(a.simplicial().max_u_diff(b.simplicial()) < 1e-12);
        for (i, j, k) in triples(5) {
            assert!(rel(a.d(i, j, k).value(), b.d(i, j, k).value()) < 1e-12);
        }
        assert!(normalize(&normalize(&c)).max_diff(&normalize(&c)) < 1e-15);
    }
}

#[test]
fn law_of_sines_matches_distance_ratio() {
    let mut r = rng(3);
    let mut checked = 0;
    while checked < 1000 {
        let m = r.gen_range(2..=4);
        let c = random_config(&mut r, 3, m, 1e-2);
        let a = alpha(&c);
        let t = TriangleDirections::from_point(a.simplicial(), 0, 1, 2);
        if let RatioEstimate::Value(v) = ratio_from_directions(&t, 1e-9).unwrap() {
            let direct = confspace::linalg::dist(c.point(0), c.point(1))
                / confspace::linalg::dist(c.point(0), c.point(2));
            assert!((v.value() - direct).abs() / direct <= 1e-9);
            checked += 1;
        }
    }
}

#[test]
fn alpha_images_are_members() {
    let mut r = rng(4);
    for _ in 0..200 {
        let n = r.gen_range(2..=6);
        let m = r.gen_range(1..=4);
        let v = membership_canonical(&alpha(&random_config(&mut r, n, m, 1e-3)), Manifold::Euclidean(m), 1e-9);
        assert!(v.pass(), "{v:?}");
        assert!(v.max_residual <= 1e-10);
    }
}

#[test]
fn alpha_is_equivariant() {
    let mut r = rng(5);
    for _ in 0..100 {
        let n = r.gen_range(2..=6);
        let c = random_config(&mut r, n, 2, 1e-3);
        let sigma = SetMap::new(n, random_perm(&mut r, n)).unwrap();
        let lhs = permute(&sigma, &alpha(&c)).unwrap();
        let rhs = alpha(&c.permute(&sigma).unwrap());
        assert_eq!(lhs, rhs);
    }
}

fn all_small_trees() -> Vec<FTree> {
    (1..=5)
        .flat_map(|n| enumerate_trees(n, Variant::Full).unwrap())
        .collect()
}

#[test]
fn boundary_round_trip_and_classification() {
    let mut seed = 0;
    for t in all_small_trees() {
        for _ in 0..5 {
            seed += 1;
            let m = 1 + (seed as usize % 3);
            let s = stratum_sample(&t, m, seed).unwrap().with_zero_scales();
            let a = expand_chart(&s).unwrap();
            assert_eq!(tree_of(&a, 1e-6).unwrap(), t);
            let v = membership_canonical(&a, Manifold::Euclidean(m), 1e-9);
            assert!(v.pass(), "{t:?} {v:?}");
            let back = invert_chart(&t, &a, 1e-9).unwrap();
            assert!(back.max_diff(&s) <= 1e-10, "{t:?}: {}", back.max_diff(&s));
        }
    }
}

#[test]
fn interior_round_trip() {
    let mut seed = 1000;
    for t in all_small_trees() {
        for _ in 0..5 {
            seed += 1;
            let m = 1 + (seed as usize % 3);
            let s = stratum_sample(&t, m, seed).unwrap();
            let a = expand_chart(&s).unwrap();
            let v = membership_canonical(&a, Manifold::Euclidean(m), 1e-9);
            assert!(v.pass(), "{t:?} {v:?}");
            let back = invert_chart(&t, &a, 1e-9).unwrap();
            let again = expand_chart(&back).unwrap();
            assert!(again.max_diff(&a) <= 1e-8, "{t:?}");
            assert!(back.max_diff(&s) <= 1e-8);
        }
    }
}

#[test]
fn positive_scales_agree_with_alpha() {
    let mut seed = 2000;
    for t in all_small_trees() {
        seed += 1;
        let s = stratum_sample(&t, 2, seed).unwrap();
        if s.scales().iter().any(|&x| x < 1e-3) {
            continue;
        }
        let a = expand_chart(&s).unwrap();
        let c = Configuration::new(2, a.positions().to_vec()).unwrap();
        let b = alpha(&c);
        assert!(a.simplicial().max_u_diff(b.simplicial()) < 1e-9);
        for (i, j, k) in triples(t.leaf_count()) {
            assert!(rel(a.d(i, j, k).value(), b.d(i, j, k).value()) < 1e-9);
        }
    }
}

#[test]
fn degeneration_converges_to_the_boundary() {
    let mut seed = 3000;
    for t in all_small_trees().into_iter().filter(|t| t.codim() > 0) {
        seed += 1;
        let s = stratum_sample(&t, 2, seed).unwrap();
        let path = degeneration_path(&s, 40).unwrap();
        let limit = expand_chart(&s.with_zero_scales()).unwrap();
        assert!(path[40].max_diff(&limit) <= 1e-6, "{t:?}");
        assert_eq!(tree_of(&limit, 1e-6).unwrap(), t);
    }
}

#[test]
fn permutation_moves_strata() {
    let t = FTree::from_paren(&Parenthesization::new(3, vec![vec![0, 1]]).unwrap());
    let a = expand_chart(&stratum_sample(&t, 2, 9).unwrap().with_zero_scales()).unwrap();
    let swap = SetMap::new(3, vec![0, 2, 1]).unwrap();
    let b = permute(&swap, &a).unwrap();
    assert_ne!(b, a);
    assert!(pairs(3).any(|(i, j)| b.u(i, j) != a.u(i, j)));
    assert_eq!(tree_of(&b, 1e-9).unwrap(), t.permute(&swap).unwrap());
    assert!(membership_canonical(&b, Manifold::Euclidean(2), 1e-9).pass());
    assert_eq!(permute(&SetMap::identity(3), &a).unwrap(), a);
}

#[test]
fn all_equal_points_have_trunk() {
    let t = FTree::trunk(3);
    let a = expand_chart(&stratum_sample(&t, 2, 4).unwrap().with_zero_scales()).unwrap();
    assert!(tree_of(&a, 1e-9).unwrap().has_trunk());
}

#[test]
fn perturbed_ratio_fails() {
    let mut r = rng(6);
    let mut a = alpha(&random_config(&mut r, 4, 2, 0.1));
    let d = a.d(0, 1, 2).value();
    a.set_d(0, 1, 2, ExtendedRatio::new(d * 1.01).unwrap()).unwrap();
    let v = membership_canonical(&a, Manifold::Euclidean(2), 1e-9);
    assert!(v.fails(Condition::Macroscopic));
    assert!(v.fails(Condition::Cocycle));
}
