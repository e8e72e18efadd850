//! Non-negative linear dependence of three unit vectors.

use crate::linalg::{axpy, dot, norm, parallel_gap, sub, unit};

/// Outcome of the test together with a continuous measure of failure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dependence {
    pub dependent: bool,
    /// Zero when dependent; otherwise a distance-like measure of how far
    /// the origin is from the convex hull of the three vectors.
    pub residual: f64,
}

/// Distance from the origin to the segment `[p, q]`.
fn segment_distance(p: &[f64], q: &[f64]) -> f64 {
    let e = sub(q, p);
    let ee = dot(&e, &e);
    let s = if ee == 0.0 {
        0.0
    } else {
        (-dot(p, &e) / ee).clamp(0.0, 1.0)
    };
    norm(&p.iter().zip(&e).map(|(a, b)| a + s * b).collect::<Vec<_>>())
}

/// Distance from the origin to the triangle `conv(a, b, c)` of unit vectors.
///
/// Works in the plane of the most independent pair so that nearly
/// collinear triples keep their orientation information: the in-plane part
/// is decided by signs of 2-d cross products, the out-of-plane part is the
/// height of the third vector over that plane.
fn hull_distance(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let edges = segment_distance(a, b)
        .min(segment_distance(b, c))
        .min(segment_distance(a, c));
    let vs = [a, b, c];
    let (p, q, r) = [(0, 1, 2), (1, 2, 0), (0, 2, 1)]
        .into_iter()
        .max_by(|x, y| {
            parallel_gap(vs[x.0], vs[x.1]).total_cmp(&parallel_gap(vs[y.0], vs[y.1]))
        })
        .expect("three pairs");
    let e1 = vs[p];
    let w = axpy(vs[q], -dot(vs[q], e1), e1);
    let Some(e2) = unit(&w) else {
        return edges;
    };
    let coords = |v: &[f64]| [dot(v, e1), dot(v, &e2)];
    let pts = [coords(vs[p]), coords(vs[q]), coords(vs[r])];
    let height = norm(&axpy(&axpy(vs[r], -pts[2][0], e1), -pts[2][1], &e2));
    let cross = |u: [f64; 2], v: [f64; 2]| u[0] * v[1] - u[1] * v[0];
    let signs = [
        cross(pts[0], pts[1]),
        cross(pts[1], pts[2]),
        cross(pts[2], pts[0]),
    ];
    let inside = signs.iter().all(|&x| x >= 0.0) || signs.iter().all(|&x| x <= 0.0);
    let planar = if inside {
        0.0
    } else {
        let seg = |u: [f64; 2], v: [f64; 2]| segment_distance(&u, &v);
        seg(pts[0], pts[1]).min(seg(pts[1], pts[2])).min(seg(pts[0], pts[2]))
    };
    planar.hypot(height).min(edges)
}

/// Whether `α a + β b + γ c = 0` for some `α, β, γ ≥ 0`, not all zero.
///
/// Equivalently the origin lies in the convex hull of the three vectors;
/// the residual is its distance from that hull, which stays well
/// conditioned for the skinny triangles met near the boundary strata.
pub fn three_dependence(a: &[f64], b: &[f64], c: &[f64], tol: f64) -> Dependence {
    let r = hull_distance(a, b, c);
    Dependence {
        dependent: r <= tol,
        residual: r,
    }
}

pub fn three_dependent(a: &[f64], b: &[f64], c: &[f64], tol: f64) -> bool {
    three_dependence(a, b, c, tol).dependent
}
