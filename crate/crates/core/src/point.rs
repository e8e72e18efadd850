//! Configurations and the coordinate tuples `(x, u)` and `(x, u, d)`.

use crate::error::{Error, Result};
use crate::linalg::{centroid, dist, max_abs_diff, norm, scale, sub};
use crate::ratio::ExtendedRatio;
use crate::tree::SetMap;

/// Ordered pairs `(i, j)` of distinct indices in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Ordered triples of distinct indices in lexicographic order.
pub fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(i, j)| {
        (0..n)
            .filter(move |&k| k != i && k != j)
            .map(move |k| (i, j, k))
    })
}

fn check_points(m: usize, points: &[Vec<f64>]) -> Result<()> {
    for p in points {
        if p.len() != m {
            return Err(Error::Dimension {
                expected: m,
                found: p.len(),
            });
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

/// Centroid at the origin, largest norm one. A single point goes to the origin.
pub fn normalize_points(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let c = centroid(points);
    let shifted: Vec<Vec<f64>> = points.iter().map(|p| sub(p, &c)).collect();
    let r = shifted.iter().map(|p| norm(p)).fold(0.0, f64::max);
    if r == 0.0 {
        return shifted;
    }
    shifted.iter().map(|p| scale(p, 1.0 / r)).collect()
}

/// Scale used for coincidence tests: `max(1, max ‖x_i‖)`.
pub fn coordinate_scale(points: &[Vec<f64>]) -> f64 {
    points.iter().map(|p| norm(p)).fold(1.0, f64::max)
}

/// `n` pairwise distinct points of ℝ^m.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    m: usize,
    points: Vec<Vec<f64>>,
}

impl Configuration {
    pub fn new(m: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        check_points(m, &points)?;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::Duplicate(i, j));
                }
            }
        }
        Ok(Self { m, points })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Vec<f64>> {
        self.points
    }

    /// Translates the centroid to the origin and scales the largest norm to one.
    pub fn normalize(&self) -> Configuration {
        Configuration {
            m: self.m,
            points: normalize_points(&self.points),
        }
    }

    /// Point `i` moves to position `perm(i)`.
    pub fn permute(&self, perm: &SetMap) -> Result<Configuration> {
        check_perm(perm, self.n())?;
        let mut points = self.points.clone();
        for (i, p) in self.points.iter().enumerate() {
            points[perm.apply(i)] = p.clone();
        }
        Ok(Configuration { m: self.m, points })
    }

    pub fn max_diff(&self, other: &Configuration) -> f64 {
        self.points
            .iter()
            .zip(&other.points)
            .map(|(a, b)| max_abs_diff(a, b))
            .fold(0.0, f64::max)
    }

    pub fn min_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                best = best.min(dist(&self.points[i], &self.points[j]));
            }
        }
        best
    }
}

fn check_perm(perm: &SetMap, n: usize) -> Result<()> {
    if perm.domain() != n || !perm.is_bijective() {
        return Err(Error::Malformed(format!(
            "expected a permutation of {n} indices"
        )));
    }
    Ok(())
}

/// Positions and pairwise unit directions: a point of `A_n⟨ℝ^m⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialPoint {
    m: usize,
    x: Vec<Vec<f64>>,
    // n × n, diagonal entries empty
    u: Vec<Vec<f64>>,
}

fn renormalize(v: Vec<f64>, m: usize) -> Result<Vec<f64>> {
    if v.len() != m {
        return Err(Error::Dimension {
            expected: m,
            found: v.len(),
        });
    }
    let r = norm(&v);
    if !r.is_finite() || r == 0.0 {
        return Err(Error::NonUnit(r));
    }
    if (r - 1.0).abs() > 1e-6 {
        return Err(Error::NonUnit(r));
    }
    // already unit up to rounding: keep copies exact
    if (r - 1.0).abs() <= 4.0 * f64::EPSILON {
        return Ok(v);
    }
    Ok(scale(&v, 1.0 / r))
}

impl SimplicialPoint {
    /// Direction vectors within `1e-6` of unit length are rescaled to unit
    /// length; anything further off is rejected.
    pub fn from_fn(
        m: usize,
        x: Vec<Vec<f64>>,
        mut u: impl FnMut(usize, usize) -> Vec<f64>,
    ) -> Result<Self> {
        check_points(m, &x)?;
        let n = x.len();
        let mut table = vec![Vec::new(); n * n];
        for (i, j) in pairs(n) {
            table[i * n + j] = renormalize(u(i, j), m)?;
        }
        Ok(Self { m, x, u: table })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self, i: usize) -> &[f64] {
        &self.x[i]
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn u(&self, i: usize, j: usize) -> &[f64] {
        assert!(i != j, "u is defined for distinct indices only");
        &self.u[i * self.n() + j]
    }

    pub fn set_u(&mut self, i: usize, j: usize, v: Vec<f64>) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n || i == j {
            return Err(Error::Index { index: i.max(j), n });
        }
        self.u[i * n + j] = renormalize(v, self.m)?;
        Ok(())
    }

    pub fn set_x(&mut self, i: usize, p: Vec<f64>) -> Result<()> {
        check_points(self.m, std::slice::from_ref(&p))?;
        self.x[i] = p;
        Ok(())
    }

    /// Index `i` moves to `perm(i)`.
    pub fn permute(&self, perm: &SetMap) -> Result<Self> {
        check_perm(perm, self.n())?;
        let n = self.n();
        let mut x = self.x.clone();
        let mut u = vec![Vec::new(); n * n];
        for i in 0..n {
            x[perm.apply(i)] = self.x[i].clone();
        }
        for (i, j) in pairs(n) {
            u[perm.apply(i) * n + perm.apply(j)] = self.u(i, j).to_vec();
        }
        Ok(Self { m: self.m, x, u })
    }

    /// Keeps index `σ(a)` as index `a`.
    pub fn select(&self, sigma: &SetMap) -> Self {
        let x = (0..sigma.domain()).map(|a| self.x[sigma.apply(a)].clone()).collect();
        let n = sigma.domain();
        let mut u = vec![Vec::new(); n * n];
        for (a, b) in pairs(n) {
            u[a * n + b] = self.u(sigma.apply(a), sigma.apply(b)).to_vec();
        }
        Self { m: self.m, x, u }
    }

    /// Largest coordinate difference over `x` and `u`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.n() != other.n() || self.m != other.m {
            return f64::INFINITY;
        }
        let dx = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| max_abs_diff(a, b));
        let du = pairs(self.n()).map(|(i, j)| max_abs_diff(self.u(i, j), other.u(i, j)));
        dx.chain(du).fold(0.0, f64::max)
    }

    pub fn max_u_diff(&self, other: &Self) -> f64 {
        pairs(self.n())
            .map(|(i, j)| max_abs_diff(self.u(i, j), other.u(i, j)))
            .fold(0.0, f64::max)
    }

    pub fn coordinate_scale(&self) -> f64 {
        coordinate_scale(&self.x)
    }

    pub fn coincide(&self, i: usize, j: usize, tol: f64) -> bool {
        dist(&self.x[i], &self.x[j]) <= tol * self.coordinate_scale()
    }
}

/// Positions, directions and distance ratios: a point of `A_n[ℝ^m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientPoint {
    base: SimplicialPoint,
    // n × n × n, entries with repeated indices unused
    d: Vec<ExtendedRatio>,
}

impl AmbientPoint {
    pub fn from_fn(
        m: usize,
        x: Vec<Vec<f64>>,
        u: impl FnMut(usize, usize) -> Vec<f64>,
        d: impl FnMut(usize, usize, usize) -> ExtendedRatio,
    ) -> Result<Self> {
        Ok(Self::with_ratios(SimplicialPoint::from_fn(m, x, u)?, d))
    }

    pub fn with_ratios(
        base: SimplicialPoint,
        mut d: impl FnMut(usize, usize, usize) -> ExtendedRatio,
    ) -> Self {
        let n = base.n();
        let mut table = vec![ExtendedRatio::ONE; n * n * n];
        for (i, j, k) in triples(n) {
            table[(i * n + j) * n + k] = d(i, j, k);
        }
        Self { base, d: table }
    }

    pub fn simplicial(&self) -> &SimplicialPoint {
        &self.base
    }

    pub fn into_simplicial(self) -> SimplicialPoint {
        self.base
    }

    pub fn m(&self) -> usize {
        self.base.m
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn x(&self, i: usize) -> &[f64] {
        self.base.x(i)
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        self.base.positions()
    }

    pub fn u(&self, i: usize, j: usize) -> &[f64] {
        self.base.u(i, j)
    }

    pub fn d(&self, i: usize, j: usize, k: usize) -> ExtendedRatio {
        assert!(i != j && j != k && i != k, "d is defined for distinct indices only");
        let n = self.n();
        self.d[(i * n + j) * n + k]
    }

    pub fn set_u(&mut self, i: usize, j: usize, v: Vec<f64>) -> Result<()> {
        self.base.set_u(i, j, v)
    }

    pub fn set_x(&mut self, i: usize, p: Vec<f64>) -> Result<()> {
        self.base.set_x(i, p)
    }

    pub fn set_d(&mut self, i: usize, j: usize, k: usize, v: ExtendedRatio) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n || k >= n || i == j || j == k || i == k {
            return Err(Error::Index { index: i.max(j).max(k), n });
        }
        self.d[(i * n + j) * n + k] = v;
        Ok(())
    }

    pub fn permute(&self, perm: &SetMap) -> Result<Self> {
        let base = self.base.permute(perm)?;
        let inv = perm.inverse()?;
        Ok(Self::with_ratios(base, |a, b, c| {
            self.d(inv.apply(a), inv.apply(b), inv.apply(c))
        }))
    }

    pub fn select(&self, sigma: &SetMap) -> Self {
        Self::with_ratios(self.base.select(sigma), |a, b, c| {
            self.d(sigma.apply(a), sigma.apply(b), sigma.apply(c))
        })
    }

    /// Largest coordinate difference over `x`, `u` and `d`, the latter
    /// compared through [`ratio_diff`].
    pub fn max_diff(&self, other: &Self) -> f64 {
        let base = self.base.max_diff(&other.base);
        if !base.is_finite() {
            return base;
        }
        triples(self.n())
            .map(|(i, j, k)| ratio_diff(self.d(i, j, k), other.d(i, j, k)))
            .fold(base, f64::max)
    }

    pub fn coincide(&self, i: usize, j: usize, tol: f64) -> bool {
        self.base.coincide(i, j, tol)
    }
}

/// Difference of ratios after the homeomorphism `[0, ∞] → [0, 1]`,
/// `d ↦ d/(1 + d)`, so that convergence to `∞` is measurable.
pub fn ratio_diff(a: ExtendedRatio, b: ExtendedRatio) -> f64 {
    let squash = |r: ExtendedRatio| {
        if r.is_infinite() {
            1.0
        } else {
            r.value() / (1.0 + r.value())
        }
    };
    (squash(a) - squash(b)).abs()
}
