//! One PASS/FAIL line per acceptance criterion. Exits non-zero on any FAIL.

mod common;

use std::time::Instant;

use common::*;
use confspace::assoc::{f_vector, realize_face};
use confspace::canonical::*;
use confspace::linalg::dist;
use confspace::maps::*;
use confspace::point::{normalize_points, AmbientPoint, Configuration};
use confspace::simplicial::*;
use confspace::tree::{count_trees, enumerate_trees, FTree, Parenthesization, SetMap, Variant};
use confspace::verdict::Manifold;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn nested_collection_count(n: usize) -> usize {
    let subsets: Vec<u32> = (1u32..1 << n).filter(|s| s.count_ones() >= 2).collect();
    fn grow(start: usize, cur: &mut Vec<u32>, subsets: &[u32]) -> usize {
        let mut total = 1;
        for k in start..subsets.len() {
            let s = subsets[k];
            if cur.iter().all(|&c| c & s == 0 || c & s == c || c & s == s) {
                cur.push(s);
                total += grow(k + 1, cur, subsets);
                cur.pop();
            }
        }
        total
    }
    grow(0, &mut Vec::new(), &subsets)
}

fn catalan(n: usize) -> usize {
    let mut c = vec![1usize; n + 1];
    for k in 1..=n {
        c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
    }
    c[n]
}

fn counting() -> Outcome {
    let psi2 = count_trees(2, Variant::Full).unwrap();
    let psi3 = count_trees(3, Variant::Full).unwrap();
    let planar3 = enumerate_trees(3, Variant::Planar).unwrap().len();
    let pentagon = f_vector(2).unwrap();
    let vertices: Vec<(usize, usize)> =
        (0..=6).map(|n| (f_vector(n).unwrap()[0], catalan(n + 1))).collect();
    let pass = psi2 == 2
        && psi2 == nested_collection_count(2)
        && psi3 == 8
        && psi3 == nested_collection_count(3)
        && planar3 == 3
        && pentagon == vec![5, 5, 1]
        && vertices.iter().all(|(a, b)| a == b);
    outcome(
        pass,
        format!("|Psi_2|={psi2} |Psi_3|={psi3} |Psi^o_3|={planar3} f(A_2)={pentagon:?} vertices={:?}",
            vertices.iter().map(|v| v.0).collect::<Vec<_>>()),
    )
}

fn membership_of_images() -> Outcome {
    let mut r = rng(1001);
    let (mut worst, mut failures) = (0.0f64, 0);
    for _ in 0..500 {
        let n = r.gen_range(2..=7);
        let m = r.gen_range(1..=4);
        let c = random_config(&mut r, n, m, 1e-3);
        let a = alpha(&c);
        let v1 = membership_canonical(&a, Manifold::Euclidean(m), 1e-9);
        let v2 = membership_simplicial(&project_q(&a), Manifold::Euclidean(m), 1e-9);
        worst = worst.max(v1.max_residual).max(v2.max_residual);
        failures += usize::from(!v1.pass()) + usize::from(!v2.pass());
    }
    outcome(failures == 0 && worst <= 1e-10, format!("500 configs, {failures} rejections, max residual {worst:.2e}"))
}

fn law_of_sines() -> Outcome {
    let mut r = rng(1002);
    let (mut checked, mut worst) = (0, 0.0f64);
    while checked < 1000 {
        let m = r.gen_range(2..=4);
        let c = random_config(&mut r, 3, m, 1e-2);
        let t = TriangleDirections::from_point(alpha(&c).simplicial(), 0, 1, 2);
        if let Ok(RatioEstimate::Value(v)) = ratio_from_directions(&t, 1e-9) {
            let direct = dist(c.point(0), c.point(1)) / dist(c.point(0), c.point(2));
            worst = worst.max((v.value() - direct).abs() / direct);
            checked += 1;
        }
    }
    outcome(worst <= 1e-9, format!("1000 triangles, max relative error {worst:.2e}"))
}

fn small_trees() -> Vec<FTree> {
    (1..=5).flat_map(|n| enumerate_trees(n, Variant::Full).unwrap()).collect()
}

fn chart_round_trips() -> Outcome {
    let trees = small_trees();
    let (mut boundary, mut interior, mut errors) = (0.0f64, 0.0f64, 0);
    let mut seed = 40_000;
    for t in &trees {
        for _ in 0..20 {
            seed += 1;
            let m = 1 + (seed as usize % 3);
            let s = stratum_sample(t, m, seed).unwrap();
            let s0 = s.with_zero_scales();
            match expand_chart(&s0).and_then(|a| invert_chart(t, &a, 1e-9)) {
                Ok(back) => boundary = boundary.max(back.max_diff(&s0)),
                Err(_) => errors += 1,
            }
            let a = expand_chart(&s).unwrap();
            match invert_chart(t, &a, 1e-9).and_then(|b| expand_chart(&b)) {
                Ok(again) => interior = interior.max(again.max_diff(&a)),
                Err(_) => errors += 1,
            }
        }
    }
    outcome(
        errors == 0 && boundary <= 1e-10 && interior <= 1e-8,
        format!("{} trees x 20, t=0 error {boundary:.2e}, interior error {interior:.2e}, {errors} failures", trees.len()),
    )
}

fn log2_slope(ys: &[f64]) -> f64 {
    let xs: Vec<f64> = (0..ys.len()).map(|k| k as f64).collect();
    let ls: Vec<f64> = ys.iter().map(|y| y.log2()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ls.iter().sum::<f64>() / ls.len() as f64;
    let sxy: f64 = xs.iter().zip(&ls).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn degeneration() -> Outcome {
    let mut r = rng(1005);
    let pool: Vec<FTree> = (2..=6)
        .flat_map(|n| enumerate_trees(n, Variant::Full).unwrap())
        .filter(|t| t.codim() > 0)
        .collect();
    let (mut misclassified, mut not_cauchy) = (0, 0);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..100 {
        let t = &pool[r.gen_range(0..pool.len())];
        let m = r.gen_range(1..=3);
        let s = stratum_sample(t, m, 50_000 + k).unwrap();
        let limit = expand_chart(&s.with_zero_scales()).unwrap();
        if tree_of(&limit, 1e-6).ok().as_ref() != Some(t) {
            misclassified += 1;
        }
        let path = degeneration_path(&s, 30).unwrap();
        let steps: Vec<f64> = path.windows(2).map(|w| w[0].max_diff(&w[1])).collect();
        let tail = &steps[5..25];
        if path[30].max_diff(&limit) > 1e-6 || tail.iter().any(|&d| d <= 0.0) {
            not_cauchy += 1;
            continue;
        }
        let slope = log2_slope(tail);
        lo = lo.min(slope);
        hi = hi.max(slope);
        if !(-1.2..=-0.8).contains(&slope) {
            not_cauchy += 1;
        }
    }
    outcome(
        misclassified == 0 && not_cauchy == 0,
        format!("100 pairs, {misclassified} misclassified, {not_cauchy} without geometric decay, log2 step slopes in [{lo:.3}, {hi:.3}]"),
    )
}

fn antisym(r: &mut ChaCha8Rng, m: usize) -> impl Fn(usize, usize) -> Vec<f64> {
    let dirs: Vec<Vec<f64>> = (0..6).map(|_| random_unit(r, m)).collect();
    move |a: usize, b: usize| {
        let k = match (a.min(b), a.max(b)) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            _ => 5,
        };
        if a < b {
            dirs[k].clone()
        } else {
            dirs[k].iter().map(|x| -x).collect()
        }
    }
}

fn basis(m: usize, p: usize) -> Vec<f64> {
    let mut e = vec![0.0; m];
    e[p] = 1.0;
    e
}

fn four_consistency() -> Outcome {
    let mut r = rng(1006);
    let mut worst = 0.0f64;
    for k in 0..1000 {
        let m = if k % 2 == 0 { 2 } else { 3 };
        let p = alpha(&random_config(&mut r, 4, m, 1e-2)).into_simplicial();
        let u = |a: usize, b: usize| p.u(a, b).to_vec();
        for a in 0..m {
            for b in 0..m {
                worst = worst.max(four_consistency_residual(&u, &basis(m, a), &basis(m, b)).abs());
            }
        }
        for (_, _, c) in four_consistency_coefficients(&u, m) {
            worst = worst.max(c.abs());
        }
    }
    let mut violated = 0;
    for _ in 0..1000 {
        let u = antisym(&mut r, 3);
        let big = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| four_consistency_residual(&u, &basis(3, a), &basis(3, b)).abs())
            .fold(0.0, f64::max);
        violated += usize::from(big > 1e-4);
    }
    let mut cr = rng(1007);
    let samples: Vec<_> = (0..200)
        .map(|_| {
            let p = alpha(&random_config(&mut cr, 4, 2, 1e-2)).into_simplicial();
            let v = random_unit(&mut cr, 2);
            let w = random_unit(&mut cr, 2);
            let u: Box<dyn Fn(usize, usize) -> Vec<f64>> = Box::new(move |a, b| p.u(a, b).to_vec());
            (u, v, w)
        })
        .collect();
    let sols = calibrate(&samples, 1e-12);
    let unique = sols.len() == 2
        && (0..12).all(|k| sols[0][k] == -sols[1][k])
        && {
            let s = if sols[0][0] > 0 { sols[0] } else { sols[1] };
            oriented_circuits(&s) == CIRCUITS.to_vec()
        };
    outcome(
        worst <= 1e-10 && violated >= 990 && unique,
        format!(
            "members max residual {worst:.2e}; {violated}/1000 unrelated tuples exceed 1e-4; {} calibration solutions",
            sols.len()
        ),
    )
}

fn reconstruction() -> Outcome {
    let mut r = rng(1007);
    let (mut udiff, mut xdiff, mut errors) = (0.0f64, 0.0f64, 0);
    for _ in 0..500 {
        let n = r.gen_range(3..=7);
        let m = r.gen_range(2..=4);
        let c = random_config(&mut r, n, m, 1e-2);
        let p = project_q(&alpha(&c));
        match reconstruct_rho(&p, 1e-9) {
            Ok(rho) => {
                udiff = udiff.max(alpha(&rho).simplicial().max_u_diff(&p));
                xdiff = xdiff.max(rho.max_diff(&normalize(&c)));
            }
            Err(_) => errors += 1,
        }
    }
    outcome(
        errors == 0 && udiff <= 1e-8 && xdiff <= 1e-6,
        format!("500 points, direction error {udiff:.2e}, position error {xdiff:.2e}, {errors} failures"),
    )
}

fn eps_slope(eps: &[f64], err: &[f64]) -> f64 {
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn epsilon_families() -> Outcome {
    let mut r = rng(1008);
    let pool: Vec<FTree> = (3..=6)
        .flat_map(|n| enumerate_trees(n, Variant::Full).unwrap())
        .filter(|t| t.codim() > 0 && !t.has_trunk())
        .collect();
    let eps = [1e-2, 1e-3, 1e-4];
    let (mut lo, mut hi, mut errors) = (f64::INFINITY, f64::NEG_INFINITY, 0);
    for k in 0..50 {
        let t = &pool[r.gen_range(0..pool.len())];
        let m = r.gen_range(2..=3);
        let a = expand_chart(&stratum_sample(t, m, 60_000 + k).unwrap().with_zero_scales()).unwrap();
        let p = project_q(&a);
        let errs: Option<Vec<f64>> = eps
            .iter()
            .map(|&e| approx_family(&p, e, 1e-9).ok().map(|x| alpha(&x).simplicial().max_u_diff(&p)))
            .collect();
        match errs {
            Some(errs) if errs.iter().all(|&e| e > 0.0) => {
                let s = eps_slope(&eps, &errs);
                lo = lo.min(s);
                hi = hi.max(s);
            }
            _ => errors += 1,
        }
    }
    outcome(
        errors == 0 && lo >= 0.8 && hi <= 1.2,
        format!("50 clustered points, slopes in [{lo:.3}, {hi:.3}], {errors} failures"),
    )
}

fn framed_ambient(r: &mut ChaCha8Rng, a: AmbientPoint) -> FramedAmbient {
    let frames = (0..a.n()).map(|_| random_unit(r, a.m())).collect();
    Framed::new(a, frames).unwrap()
}

fn interval_point(r: &mut ChaCha8Rng, n: usize) -> Option<FramedSimplicial> {
    let mut ts: Vec<f64> = (0..n).map(|_| r.gen_range(0.01..0.99)).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    if ts.len() != n {
        return None;
    }
    let pts: Vec<Vec<f64>> = std::iter::once(0.0).chain(ts).chain(std::iter::once(1.0)).map(|t| vec![t]).collect();
    let len = pts.len();
    let frames = (0..len)
        .map(|j| vec![if j == 0 || j + 1 == len || r.gen_bool(0.5) { 1.0 } else { -1.0 }])
        .collect();
    let c = Configuration::new(1, pts).unwrap();
    Some(Framed::new(alpha(&c).into_simplicial(), frames).unwrap())
}

fn coface(n: usize, i: usize) -> SetMap {
    SetMap::new(n + 1, (0..n).map(|k| if k < i { k } else { k + 1 }).collect()).unwrap()
}

fn codegeneracy(n: usize, i: usize) -> SetMap {
    SetMap::new(n + 1, (0..n + 2).map(|k| if k <= i { k } else { k - 1 }).collect()).unwrap()
}

/// Largest discrepancy between two composites of cosimplicial maps, each
/// listed in order of application, over random points of `[a]`.
fn identity_gap(r: &mut ChaCha8Rng, a: usize, lhs: &[&SetMap], rhs: &[&SetMap]) -> f64 {
    let apply = |maps: &[&SetMap], p: &FramedSimplicial| {
        maps.iter().fold(p.clone(), |q, s| cosimplicial_map(s, &q).unwrap())
    };
    let mut worst = 0.0f64;
    for _ in 0..20 {
        if let Some(p) = interval_point(r, a) {
            let (x, y) = (apply(lhs, &p), apply(rhs, &p));
            worst = worst.max(x.point().max_diff(y.point()));
            if x.frames() != y.frames() {
                worst = f64::INFINITY;
            }
        }
    }
    worst
}

fn cosimplicial_suite(r: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        for j in 1..=n + 1 {
            for i in 0..j {
                worst = worst.max(identity_gap(r, n - 1, &[&coface(n, i), &coface(n + 1, j)], &[&coface(n, j - 1), &coface(n + 1, i)]));
            }
        }
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = [&coface(n + 1, i), &codegeneracy(n, j)];
                let gap = if i < j {
                    identity_gap(r, n, &lhs, &[&codegeneracy(n - 1, j - 1), &coface(n, i)])
                } else if i == j || i == j + 1 {
                    identity_gap(r, n, &lhs, &[])
                } else {
                    identity_gap(r, n, &lhs, &[&codegeneracy(n - 1, j), &coface(n, i - 1)])
                };
                worst = worst.max(gap);
            }
        }
        for j in 0..n {
            for i in 0..=j {
                worst = worst.max(identity_gap(
                    r,
                    n + 1,
                    &[&codegeneracy(n, i), &codegeneracy(n - 1, j)],
                    &[&codegeneracy(n, j + 1), &codegeneracy(n - 1, i)],
                ));
            }
        }
    }
    worst
}

fn assoc_vertex(first_pair: bool) -> AmbientPoint {
    let set = if first_pair { vec![0, 1] } else { vec![1, 2] };
    let t = FTree::from_paren(&Parenthesization::new(3, vec![set]).unwrap());
    realize_face(&t, &[vec![], vec![0.0, 1.0]]).unwrap()
}

fn random_assoc(r: &mut ChaCha8Rng, k: usize) -> AmbientPoint {
    let faces = enumerate_trees(k + 1, Variant::Planar).unwrap();
    let t = &faces[r.gen_range(0..faces.len())];
    let mut sorted = |len: usize, lo: f64, hi: f64| {
        let mut v: Vec<f64> = (0..len).map(|_| r.gen_range(lo..hi)).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let mut params = vec![sorted(t.children(0).len() - 2, 0.05, 0.95)];
    for v in t.internal_vertices() {
        params.push(sorted(t.children(v).len(), -1.0, 1.0));
    }
    realize_face(t, &params).unwrap()
}

fn functorial() -> Outcome {
    let mut r = rng(1009);
    let mut projection_exact = true;
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let k = r.gen_range(1..=n);
        let m = r.gen_range(1..=3);
        let c = random_config(&mut r, n, m, 1e-3);
        let perm = random_perm(&mut r, n);
        let sigma = SetMap::new(n, perm[..k].to_vec()).unwrap();
        let sub = Configuration::new(c.m(), (0..k).map(|a| c.point(sigma.apply(a)).to_vec()).collect()).unwrap();
        projection_exact &= project_sigma(&sigma, &alpha(&c)).unwrap() == alpha(&sub);
    }

    let mut contravariance = 0.0f64;
    for _ in 0..200 {
        let n = r.gen_range(1..=4);
        let (mid, l) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let c = random_config(&mut r, n, 2, 1e-2);
        let p = framed_ambient(&mut r, alpha(&c)).simplicial();
        let sigma = SetMap::new(n, (0..mid).map(|_| r.gen_range(0..n)).collect()).unwrap();
        let mut tv: Vec<usize> = (0..l).map(|_| r.gen_range(0..mid)).collect();
        tv.sort_unstable();
        let tau = SetMap::new(mid, tv).unwrap();
        let direct = f_sigma(&sigma.after(&tau).unwrap(), &p).unwrap();
        let staged = f_sigma(&tau, &f_sigma(&sigma, &p).unwrap()).unwrap();
        contravariance = contravariance.max(direct.point().max_diff(staged.point()));
        if direct.frames() != staged.frames() {
            contravariance = f64::INFINITY;
        }
    }

    let cosimplicial = cosimplicial_suite(&mut r);

    let (mut section_exact, mut witnessed, mut boundary) = (true, true, 0.0f64);
    for _ in 0..50 {
        let n = r.gen_range(2..=4);
        let i = r.gen_range(0..n);
        let k = r.gen_range(1..=3);
        let c = random_config(&mut r, n, 2, 1e-2);
        let p = framed_ambient(&mut r, alpha(&c));
        let e = random_assoc(&mut r, k);
        let q = diagonal(&p, i, k, Some(&e)).unwrap();
        section_exact &= project_sigma(&section_map(n, i, k).unwrap(), &q).unwrap() == p;
        let once = diagonal(&p, i, 1, None).unwrap();
        let same = diagonal(&once, i, 1, None).unwrap();
        let next = diagonal(&once, i + 1, 1, None).unwrap();
        witnessed &= same != next;
        let left = diagonal(&p, i, 2, Some(&assoc_vertex(true))).unwrap();
        let right = diagonal(&p, i, 2, Some(&assoc_vertex(false))).unwrap();
        boundary = boundary.max(left.point().max_diff(same.point())).max(right.point().max_diff(next.point()));
    }
    outcome(
        projection_exact && contravariance <= 1e-12 && cosimplicial <= 1e-12 && section_exact && witnessed && boundary <= 1e-12,
        format!(
            "projection exact: {projection_exact}; contravariance on order-compatible pairs {contravariance:.1e}; cosimplicial identities {cosimplicial:.1e}; \
             section exact: {section_exact}; repeated diagonals differ: {witnessed}; boundary restrictions {boundary:.1e}"
        ),
    )
}

fn fiber_collapse() -> Outcome {
    // leaves 0, 1, 2 collide along a line; only the ratio inside differs
    let t = FTree::from_paren(&Parenthesization::new(4, vec![vec![0, 1, 2]]).unwrap());
    let root = normalize_points(&[vec![0.0, 0.0], vec![1.0, 2.0]]);
    let point = |s: f64| {
        let cluster = normalize_points(&[vec![0.0, 0.0], vec![s, s], vec![1.0, 1.0]]);
        let sp = StratumPoint::new(t.clone(), 2, root.clone(), vec![cluster], vec![0.0]).unwrap();
        expand_chart(&sp).unwrap()
    };
    let (a, b) = (point(0.25), point(0.6));
    let distinct = a != b && (a.d(0, 1, 2).value() - b.d(0, 1, 2).value()).abs() > 0.1;
    let gap = project_q(&a).max_diff(&project_q(&b));
    let members = membership_canonical(&a, Manifold::Euclidean(2), 1e-9).pass()
        && membership_canonical(&b, Manifold::Euclidean(2), 1e-9).pass();
    outcome(
        distinct && members && gap <= 1e-12,
        format!(
            "d_123 = {:.3} vs {:.3}, both members: {members}, simplicial images differ by {gap:.1e}",
            a.d(0, 1, 2).value(),
            b.d(0, 1, 2).value()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("counting", counting),
        ("membership of images", membership_of_images),
        ("law of sines", law_of_sines),
        ("chart round trips", chart_round_trips),
        ("degeneration classification", degeneration),
        ("four-consistency", four_consistency),
        ("reconstruction", reconstruction),
        ("epsilon families", epsilon_families),
        ("functorial identities", functorial),
        ("fiber collapse", fiber_collapse),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let ok = o.pass && secs < 60.0;
        failed += usize::from(!ok);
        println!("{} {:>2} {name}: {} ({secs:.1}s)", if ok { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
