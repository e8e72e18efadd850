use std::collections::BTreeSet;

use confspace::assoc::*;
use confspace::canonical::{membership_canonical, tree_of};
use confspace::point::AmbientPoint;
use confspace::verdict::Manifold;

type System = BTreeSet<Vec<usize>>;

/// Consecutive intervals of `0..len` with at least two and fewer than `len`
/// elements, collected into pairwise nested-or-disjoint systems.
fn interval_systems(len: usize) -> Vec<System> {
    let mut intervals = Vec::new();
    for a in 0..len {
        for b in a + 2..=len {
            if b - a < len {
                intervals.push((a..b).collect::<Vec<usize>>());
            }
        }
    }
    let compatible = |x: &Vec<usize>, y: &Vec<usize>| {
        let (xa, xb) = (x[0], x[x.len() - 1]);
        let (ya, yb) = (y[0], y[y.len() - 1]);
        xb < ya || yb < xa || (xa <= ya && yb <= xb) || (ya <= xa && xb <= yb)
    };
    let mut out = Vec::new();
    fn grow(
        start: usize,
        current: &mut Vec<usize>,
        intervals: &[Vec<usize>],
        ok: &dyn Fn(&Vec<usize>, &Vec<usize>) -> bool,
        out: &mut Vec<System>,
    ) {
        out.push(current.iter().map(|&i| intervals[i].clone()).collect());
        for k in start..intervals.len() {
            if current.iter().all(|&c| ok(&intervals[c], &intervals[k])) {
                current.push(k);
                grow(k + 1, current, intervals, ok, out);
                current.pop();
            }
        }
    }
    grow(0, &mut Vec::new(), &intervals, &compatible, &mut out);
    out
}

fn catalan(n: usize) -> usize {
    let mut c = vec![1usize; n + 1];
    for k in 1..=n {
        c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
    }
    c[n]
}

#[test]
fn faces_are_interval_systems() {
    for n in 0..=5 {
        let poset = face_poset(n).unwrap();
        let systems = interval_systems(n + 2);
        let ours: BTreeSet<System> = poset
            .faces()
            .iter()
            .map(|t| t.paren().sets().iter().cloned().collect())
            .collect();
        let theirs: BTreeSet<System> = systems.iter().cloned().collect();
        assert_eq!(ours, theirs, "n = {n}");
        // covering relation is removal of one interval
        let index: Vec<System> = poset
            .faces()
            .iter()
            .map(|t| t.paren().sets().iter().cloned().collect())
            .collect();
        let mut expected = BTreeSet::new();
        for (i, a) in index.iter().enumerate() {
            for (j, b) in index.iter().enumerate() {
                if a.len() == b.len() + 1 && b.is_subset(a) {
                    expected.insert((i, j));
                }
            }
        }
        let got: BTreeSet<(usize, usize)> = poset.covers().iter().copied().collect();
        assert_eq!(got, expected);
        for &(lo, hi) in poset.covers() {
            assert_eq!(poset.dim(lo) + 1, poset.dim(hi));
        }
    }
}

#[test]
fn vertices_are_catalan_and_euler_sum_is_one() {
    for n in 0..=6 {
        let f = f_vector(n).unwrap();
        assert_eq!(f[0], catalan(n + 1));
        assert_eq!(f[n], 1);
        let euler: i64 = f
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        assert_eq!(euler, 1);
    }
    assert_eq!(f_vector(2).unwrap(), vec![5, 5, 1]);
    assert_eq!(f_vector(3).unwrap(), vec![14, 21, 9, 1]);
}

fn signature(a: &AmbientPoint) -> Vec<u8> {
    let n = a.n();
    let mut s = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    let d = a.d(i, j, k);
                    s.push(if d.is_zero() {
                        0
                    } else if d.is_infinite() {
                        2
                    } else if (d.value() - 1.0).abs() < 1e-12 {
                        1
                    } else {
                        3
                    });
                }
            }
        }
    }
    s
}

#[test]
fn realized_faces_classify_back() {
    for n in 0..=4 {
        let poset = face_poset(n).unwrap();
        let mut vertex_signatures = BTreeSet::new();
        for (i, t) in poset.faces().iter().enumerate() {
            let a = realize_face(t, &default_params(t)).unwrap();
            assert!(membership_canonical(&a, Manifold::Euclidean(1), 1e-9).pass());
            assert_eq!(&tree_of(&a, 1e-9).unwrap(), t);
            assert_eq!(a.x(0), &[0.0]);
            assert_eq!(a.x(n + 1), &[1.0]);
            if poset.dim(i) == 0 {
                vertex_signatures.insert(signature(&a));
            }
        }
        assert_eq!(vertex_signatures.len(), catalan(n + 1));
    }
}

#[test]
fn non_planar_faces_rejected() {
    let t = confspace::tree::FTree::from_paren(
        &confspace::tree::Parenthesization::new(3, vec![vec![0, 2]]).unwrap(),
    );
    assert!(matches!(realize_face(&t, &[vec![], vec![0.0, 1.0]]), Err(confspace::Error::NotPlanar)));
}
