//! Small dense-vector helpers on `&[f64]`.
//!
//! Points and directions live in ℝ^m with `m` chosen at runtime, so plain
//! slices are used throughout instead of fixed-size vector types.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    // hypot-style accumulation is not needed at the scales used here
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| -x).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Unit vector along `a`, or `None` for the zero vector.
pub fn unit(a: &[f64]) -> Option<Vec<f64>> {
    let r = norm(a);
    if r == 0.0 || !r.is_finite() {
        None
    } else {
        Some(scale(a, 1.0 / r))
    }
}

/// Unit vector from `b` towards `a`, i.e. along `a - b`.
pub fn direction(a: &[f64], b: &[f64]) -> Option<Vec<f64>> {
    unit(&sub(a, b))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `|sin θ|` for the angle between two unit vectors.
///
/// Computed as `‖a − b‖·‖a + b‖ / 2`, which keeps full relative precision
/// for nearly parallel vectors where `sqrt(1 − (a·b)²)` cancels.
pub fn sin_between(a: &[f64], b: &[f64]) -> f64 {
    0.5 * dist(a, b) * norm(&add(a, b))
}

/// Distance of `a` from the line through `±b`, for unit vectors.
pub fn parallel_gap(a: &[f64], b: &[f64]) -> f64 {
    dist(a, b).min(norm(&add(a, b)))
}

pub fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let m = points.first().map_or(0, Vec::len);
    let mut c = vec![0.0; m];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    let k = points.len().max(1) as f64;
    c.iter_mut().for_each(|x| *x /= k);
    c
}

/// Solves the 2×2 system `[[a, b], [b, c]] [s, t]ᵀ = [p, q]ᵀ`.
pub(crate) fn solve_sym2(a: f64, b: f64, c: f64, p: f64, q: f64) -> Option<(f64, f64)> {
    let det = a * c - b * b;
    if det.abs() <= f64::EPSILON * (a * c).abs().max(f64::MIN_POSITIVE) {
        return None;
    }
    Some(((c * p - b * q) / det, (a * q - b * p) / det))
}
