//! The simplicial variant `C_n⟨ℝ^m⟩`, which keeps positions and directions
//! but forgets distance ratios.

mod four;

pub use four::{
    calibrate, four_consistency, four_consistency_coefficients, four_consistency_residual,
    monomials, oriented_circuits,
    unoriented_circuits, Circuit3, FourConsistency, CIRCUITS,
};

pub use crate::dependence::{three_dependence, three_dependent, Dependence};

use crate::canonical::{
    check_antisymmetry, check_macroscopic_directions, check_manifold, check_three_dependence,
};
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist, dot, parallel_gap, scale, solve_sym2, sub};
use crate::point::{normalize_points, triples, AmbientPoint, Configuration, SimplicialPoint};
use crate::tree::{ExclusionRelation, FTree, SetMap};
use crate::verdict::{Condition, Manifold, Verdict};

/// Forgets the ratio coordinates.
pub fn project_q(a: &AmbientPoint) -> SimplicialPoint {
    a.simplicial().clone()
}

/// The four-consistency identity for indices `idx` of `p`.
pub fn four_consistency_at(
    p: &SimplicialPoint,
    idx: [usize; 4],
    v: &[f64],
    w: &[f64],
) -> FourConsistency {
    four_consistency(&|a, b| p.u(idx[a], idx[b]).to_vec(), v, w)
}

/// One row per 4-subset and pair of cubic monomials in `v` and `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualRow {
    pub subset: [usize; 4],
    pub v: [usize; 3],
    pub w: [usize; 3],
    pub residual: f64,
}

/// Four-consistency coefficients over all 4-subsets. These vanish exactly
/// when the identity holds for every `v` and `w`.
pub fn four_consistency_report(p: &SimplicialPoint) -> Vec<ResidualRow> {
    let n = p.n();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let idx = [a, b, c, d];
                    let u = |i: usize, j: usize| p.u(idx[i], idx[j]).to_vec();
                    for (v, w, residual) in four_consistency_coefficients(&u, p.m()) {
                        rows.push(ResidualRow { subset: idx, v, w, residual });
                    }
                }
            }
        }
    }
    rows
}

/// Checks the characterization of `C_n⟨M⟩`: directions match positions
/// where these differ, antisymmetry, three-dependence of every 3-loop,
/// four-consistency of every 4-subset, and tangency on a sphere.
pub fn membership_simplicial(p: &SimplicialPoint, manifold: Manifold, tol: f64) -> Verdict {
    let mut v = Verdict::default();
    check_macroscopic_directions(p, tol, &mut v);
    check_antisymmetry(p, tol, &mut v);
    check_three_dependence(p, tol, &mut v);
    for row in four_consistency_report(p) {
        v.record(Condition::FourConsistency, &row.subset, row.residual.abs(), tol);
    }
    check_manifold(p, manifold, tol, &mut v);
    v
}

/// `i, j` exclude `k` when `u_ik = u_jk ≠ ±u_ij`.
pub fn direction_exclusions(p: &SimplicialPoint, tol: f64) -> Result<ExclusionRelation> {
    Ok(ExclusionRelation::new(
        p.n(),
        triples(p.n()).filter(|&(i, j, k)| {
            dist(p.u(i, k), p.u(j, k)) <= tol && parallel_gap(p.u(i, j), p.u(i, k)) > tol
        }),
    )?)
}

/// The stratum read off directions alone, with a trunk when all positions
/// coincide. Collinear clusters are invisible here.
pub fn tree_of_directions(p: &SimplicialPoint, tol: f64) -> Result<FTree> {
    let n = p.n();
    let trunk = n >= 2 && (1..n).all(|i| p.coincide(0, i, tol));
    Ok(direction_exclusions(p, tol)?.to_tree(trunk)?)
}

/// A configuration realizing the directions of `p` (positions are ignored).
///
/// Collinear data are spaced evenly along the line in the order the
/// directions dictate. Otherwise points are placed one at a time, each at
/// the intersection of the rays towards it from two points already placed.
/// The result is normalized.
pub fn reconstruct_rho(p: &SimplicialPoint, tol: f64) -> Result<Configuration> {
    let n = p.n();
    let m = p.m();
    if n == 1 {
        return Configuration::new(m, vec![vec![0.0; m]]);
    }
    if !direction_exclusions(p, tol)?.is_empty() {
        return Err(Error::Exclusions);
    }
    let line = p.u(0, 1).to_vec();
    let collinear = triples(n).all(|(i, j, _)| parallel_gap(p.u(i, j), &line) <= tol);
    if collinear {
        // rank of i: how many j lie behind it along `line`
        let rank: Vec<usize> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && dist(p.u(i, j), &line) <= tol)
                    .count()
            })
            .collect();
        let pts: Vec<Vec<f64>> = rank.iter().map(|&r| scale(&line, r as f64)).collect();
        return Configuration::new(m, normalize_points(&pts)).map_err(|_| Error::NoIntersection);
    }

    let mut x: Vec<Option<Vec<f64>>> = vec![None; n];
    x[0] = Some(vec![0.0; m]);
    x[1] = Some(p.u(1, 0).to_vec());
    for _ in 2..n {
        let found = (0..n).filter(|&k| x[k].is_none()).find_map(|k| {
            let placed: Vec<usize> = (0..n).filter(|&i| x[i].is_some()).collect();
            placed.iter().enumerate().find_map(|(a, &i)| {
                placed[a + 1..].iter().find_map(|&j| {
                    let (uki, ukj) = (p.u(k, i), p.u(k, j));
                    if parallel_gap(uki, ukj) <= tol {
                        return None;
                    }
                    let (xi, xj) = (x[i].as_ref()?, x[j].as_ref()?);
                    // x_i + s u_ki = x_j + r u_kj
                    let rhs = sub(xj, xi);
                    let c = dot(uki, ukj);
                    let (s, r) = solve_sym2(1.0, -c, 1.0, dot(uki, &rhs), -dot(ukj, &rhs))?;
                    (s > tol && r > tol).then(|| (k, axpy(xi, s, uki)))
                })
            })
        });
        let (k, pk) = found.ok_or(Error::NoIntersection)?;
        x[k] = Some(pk);
    }
    let pts: Vec<Vec<f64>> = x.into_iter().map(|v| v.expect("placed")).collect();
    Configuration::new(m, normalize_points(&pts)).map_err(|_| Error::NoIntersection)
}

/// `x_i(ε) = Σ ε^{h(e)} x_e` over the edges `e` from leaf `i` down to the
/// root, where `(x_e)` realizes the directions among representatives of
/// the branches at each vertex and `h(e)` is the depth of the vertex the
/// edge leaves from.
///
/// Below a collision the family is translated so the deepest leaf sits at
/// the origin: every point is summed only over edges below its join with
/// that leaf, so deep clusters on its branch keep full relative precision.
pub fn approx_family(p: &SimplicialPoint, eps: f64, tol: f64) -> Result<Configuration> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!("epsilon {eps} not in (0, 1)")));
    }
    let t = tree_of_directions(p, tol)?;
    let m = p.m();
    let mut local: Vec<Vec<Vec<f64>>> = vec![Vec::new(); t.vertex_count()];
    for v in (0..t.vertex_count()).filter(|&v| !t.is_leaf(v)) {
        let reps = t.representatives(v);
        let sigma = SetMap::new(p.n(), reps)?;
        local[v] = reconstruct_rho(&p.select(&sigma), tol)?.into_points();
    }
    // Σ ε^{h(e)} x_e over the edges from `leaf` up to `top`
    let climb = |leaf: usize, top: usize| {
        let mut x = vec![0.0; m];
        let mut e = t.leaf(leaf);
        while e != top {
            let v = t.parent(e).expect("top is an ancestor");
            let idx = t.children(v).iter().position(|&c| c == e).expect("child");
            x = axpy(&x, eps.powi(t.depth(v) as i32), &local[v][idx]);
            e = v;
        }
        x
    };
    if t.internal_vertices().is_empty() {
        return Configuration::new(m, (0..p.n()).map(|i| climb(i, 0)).collect());
    }
    let anchor = (0..p.n()).max_by_key(|&i| (t.depth(t.leaf(i)), std::cmp::Reverse(i))).expect("n > 0");
    let mut pts = Vec::with_capacity(p.n());
    for i in 0..p.n() {
        let top = t.join(&[i, anchor])?;
        pts.push(sub(&climb(i, top), &climb(anchor, top)));
    }
    Configuration::new(m, pts)
}
