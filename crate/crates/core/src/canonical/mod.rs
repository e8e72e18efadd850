//! The canonical compactification `C_n[ℝ^m]`: the coordinate map, the
//! membership test, stratum classification, and chart maps.

mod chart;

pub use chart::{
    degeneration_path, expand_chart, invert_chart, stratum_sample, StratumPoint,
};

use crate::dependence::three_dependence;
use crate::error::{Error, Result};
use crate::linalg::{direction, dist, norm, parallel_gap, sin_between};
use crate::point::{pairs, triples, AmbientPoint, Configuration, SimplicialPoint};
use crate::ratio::ExtendedRatio;
use crate::tree::{ExclusionRelation, FTree, SetMap};
use crate::verdict::{Condition, Manifold, Verdict};

/// Default tolerance for direction equality, vanishing ratios and
/// coincidence of points (relative to `max(1, max ‖x_i‖)`).
pub const DEFAULT_TOL: f64 = 1e-9;

/// `u_ij = (x_i − x_j)/‖x_i − x_j‖`, `d_ijk = ‖x_i − x_j‖/‖x_i − x_k‖`.
pub fn alpha(c: &Configuration) -> AmbientPoint {
    let x = c.points().to_vec();
    let base = SimplicialPoint::from_fn(c.m(), x, |i, j| {
        direction(c.point(i), c.point(j)).expect("configuration points are distinct")
    })
    .expect("directions of a configuration are unit vectors");
    AmbientPoint::with_ratios(base, |i, j, k| {
        ExtendedRatio::new(dist(c.point(i), c.point(j)) / dist(c.point(i), c.point(k)))
            .expect("distances are positive")
    })
}

pub fn normalize(c: &Configuration) -> Configuration {
    c.normalize()
}

/// `σ·a`: index `i` of `a` becomes index `σ(i)`.
pub fn permute(sigma: &SetMap, a: &AmbientPoint) -> Result<AmbientPoint> {
    a.permute(sigma)
}

/// The six directions among three indices `i, j, k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleDirections {
    pub ij: Vec<f64>,
    pub ji: Vec<f64>,
    pub jk: Vec<f64>,
    pub kj: Vec<f64>,
    pub ik: Vec<f64>,
    pub ki: Vec<f64>,
}

impl TriangleDirections {
    pub fn from_point(p: &SimplicialPoint, i: usize, j: usize, k: usize) -> Self {
        Self {
            ij: p.u(i, j).to_vec(),
            ji: p.u(j, i).to_vec(),
            jk: p.u(j, k).to_vec(),
            kj: p.u(k, j).to_vec(),
            ik: p.u(i, k).to_vec(),
            ki: p.u(k, i).to_vec(),
        }
    }

    fn all(&self) -> [&[f64]; 6] {
        [&self.ij, &self.ji, &self.jk, &self.kj, &self.ik, &self.ki]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RatioEstimate {
    Value(ExtendedRatio),
    /// The three lines coincide, so the directions do not determine the ratio.
    Indeterminate,
}

/// `d_ijk` as determined by directions alone, where it is.
pub fn ratio_from_directions(t: &TriangleDirections, tol: f64) -> Result<RatioEstimate> {
    for v in t.all() {
        let r = norm(v);
        if (r - 1.0).abs() > 1e-6 {
            return Err(Error::NonUnit(r));
        }
    }
    let distinct = parallel_gap(&t.ij, &t.jk) > tol
        && parallel_gap(&t.jk, &t.ik) > tol
        && parallel_gap(&t.ij, &t.ik) > tol;
    if distinct {
        let v = sin_between(&t.ki, &t.kj) / sin_between(&t.ji, &t.jk);
        return Ok(RatioEstimate::Value(
            ExtendedRatio::new(v).expect("sines are nonnegative"),
        ));
    }
    if dist(&t.ik, &t.jk) <= tol && parallel_gap(&t.ij, &t.ik) > tol {
        return Ok(RatioEstimate::Value(ExtendedRatio::ZERO));
    }
    Ok(RatioEstimate::Indeterminate)
}

/// The stratum of a point: `i, j` exclude `k` when `d_ijk ≤ tol`, with a
/// trunk when all positions coincide.
pub fn tree_of(a: &AmbientPoint, tol: f64) -> Result<FTree> {
    let n = a.n();
    let rel = ExclusionRelation::new(
        n,
        triples(n).filter(|&(i, j, k)| a.d(i, j, k).value() <= tol),
    )?;
    let trunk = n >= 2 && (1..n).all(|i| a.coincide(0, i, tol));
    Ok(rel.to_tree(trunk)?)
}

fn ratio_residual(d: ExtendedRatio, target: f64) -> f64 {
    if d.is_infinite() {
        if target.is_infinite() {
            0.0
        } else {
            f64::INFINITY
        }
    } else if target.is_infinite() {
        f64::INFINITY
    } else {
        (d.value() - target).abs() / target.max(1.0)
    }
}

pub(crate) fn check_manifold(p: &SimplicialPoint, manifold: Manifold, tol: f64, v: &mut Verdict) {
    if manifold.ambient_dim() != p.m() {
        v.record(Condition::Manifold, &[], f64::INFINITY, tol);
        return;
    }
    for i in 0..p.n() {
        v.record(Condition::Manifold, &[i], manifold.point_residual(p.x(i)), tol);
    }
    for (i, j) in pairs(p.n()) {
        if p.coincide(i, j, tol) {
            v.record(
                Condition::Manifold,
                &[i, j],
                manifold.tangent_residual(p.x(i), p.u(i, j)),
                tol,
            );
        }
    }
}

pub(crate) fn check_macroscopic_directions(p: &SimplicialPoint, tol: f64, v: &mut Verdict) {
    for (i, j) in pairs(p.n()) {
        if !p.coincide(i, j, tol) {
            let w = direction(p.x(i), p.x(j)).expect("points differ");
            v.record(Condition::Macroscopic, &[i, j], dist(p.u(i, j), &w), tol);
        }
    }
}

pub(crate) fn check_antisymmetry(p: &SimplicialPoint, tol: f64, v: &mut Verdict) {
    for (i, j) in pairs(p.n()).filter(|(i, j)| i < j) {
        let s: Vec<f64> = p.u(i, j).iter().zip(p.u(j, i)).map(|(a, b)| a + b).collect();
        v.record(Condition::Antisymmetry, &[i, j], norm(&s), tol);
    }
}

pub(crate) fn check_three_dependence(p: &SimplicialPoint, tol: f64, v: &mut Verdict) {
    for (i, j, k) in triples(p.n()).filter(|&(i, j, k)| i < j && i < k) {
        let dep = three_dependence(p.u(i, j), p.u(j, k), p.u(k, i), tol);
        v.record(Condition::ThreeDependence, &[i, j, k], dep.residual, tol);
    }
}

/// Checks every condition characterizing `C_n[M]` inside `A_n[M]`.
pub fn membership_canonical(a: &AmbientPoint, manifold: Manifold, tol: f64) -> Verdict {
    let n = a.n();
    let p = a.simplicial();
    let mut v = Verdict::default();

    check_macroscopic_directions(p, tol, &mut v);
    for (i, j, k) in triples(n) {
        if !a.coincide(i, k, tol) {
            let r = dist(a.x(i), a.x(j)) / dist(a.x(i), a.x(k));
            v.record(Condition::Macroscopic, &[i, j, k], ratio_residual(a.d(i, j, k), r), tol);
        }
    }

    for (i, j, k) in triples(n) {
        let t = TriangleDirections::from_point(p, i, j, k);
        match ratio_from_directions(&t, tol) {
            Ok(RatioEstimate::Value(f)) => {
                let r = if f.is_zero() {
                    a.d(i, j, k).value()
                } else {
                    ratio_residual(a.d(i, j, k), f.value())
                };
                v.record(Condition::LawOfSines, &[i, j, k], r, tol);
            }
            Ok(RatioEstimate::Indeterminate) => {}
            Err(_) => v.record(Condition::LawOfSines, &[i, j, k], f64::INFINITY, tol),
        }
    }

    check_antisymmetry(p, tol, &mut v);
    check_three_dependence(p, tol, &mut v);

    for (i, j, k) in triples(n) {
        let two = a.d(i, j, k) * a.d(i, k, j);
        v.record(Condition::Cocycle, &[i, j, k], two.distance_from_one(), tol);
        if i < j && i < k {
            let three = ExtendedRatio::product(&[a.d(i, j, k), a.d(j, k, i), a.d(k, i, j)]);
            v.record(Condition::Cocycle, &[i, j, k], three.distance_from_one(), tol);
        }
        for l in (0..n).filter(|&l| l != i && l != j && l != k) {
            let four = ExtendedRatio::product(&[a.d(i, j, k), a.d(i, k, l), a.d(i, l, j)]);
            v.record(Condition::Cocycle, &[i, j, k, l], four.distance_from_one(), tol);
        }
    }

    check_manifold(p, manifold, tol, &mut v);
    v
}
