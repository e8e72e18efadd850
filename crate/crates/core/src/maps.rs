//! Functoriality in the index set: projections, framed points, doubling and
//! diagonal maps, and the cosimplicial structure on the interval.

use crate::canonical::{alpha, membership_canonical, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{neg, norm, scale};
use crate::point::{AmbientPoint, Configuration, SimplicialPoint};
use crate::ratio::ExtendedRatio;
use crate::tree::{FTree, Parenthesization, SetMap};
use crate::verdict::{Condition, Manifold, Verdict};

/// Points whose indices can be pulled back along an injective map.
pub trait IndexedPoint: Sized {
    fn n(&self) -> usize;
    fn m(&self) -> usize;
    fn x(&self, i: usize) -> &[f64];
    /// Index `a` of the result is index `σ(a)` of `self`.
    fn select(&self, sigma: &SetMap) -> Self;
}

impl IndexedPoint for SimplicialPoint {
    fn n(&self) -> usize {
        SimplicialPoint::n(self)
    }
    fn m(&self) -> usize {
        SimplicialPoint::m(self)
    }
    fn x(&self, i: usize) -> &[f64] {
        SimplicialPoint::x(self, i)
    }
    fn select(&self, sigma: &SetMap) -> Self {
        SimplicialPoint::select(self, sigma)
    }
}

impl IndexedPoint for AmbientPoint {
    fn n(&self) -> usize {
        AmbientPoint::n(self)
    }
    fn m(&self) -> usize {
        AmbientPoint::m(self)
    }
    fn x(&self, i: usize) -> &[f64] {
        AmbientPoint::x(self, i)
    }
    fn select(&self, sigma: &SetMap) -> Self {
        AmbientPoint::select(self, sigma)
    }
}

/// A point together with a unit tangent vector `u_ii` at each position.
#[derive(Clone, Debug, PartialEq)]
pub struct Framed<P> {
    point: P,
    frames: Vec<Vec<f64>>,
}

pub type FramedAmbient = Framed<AmbientPoint>;
pub type FramedSimplicial = Framed<SimplicialPoint>;

impl<P: IndexedPoint> Framed<P> {
    /// Frames within `1e-6` of unit length are rescaled; others are rejected.
    pub fn new(point: P, frames: Vec<Vec<f64>>) -> Result<Self> {
        if frames.len() != point.n() {
            return Err(Error::Malformed(format!(
                "{} frames for {} points",
                frames.len(),
                point.n()
            )));
        }
        let m = point.m();
        let frames = frames
            .into_iter()
            .map(|f| {
                if f.len() != m {
                    return Err(Error::Dimension {
                        expected: m,
                        found: f.len(),
                    });
                }
                let r = norm(&f);
                if !r.is_finite() || (r - 1.0).abs() > 1e-6 {
                    return Err(Error::NonUnit(r));
                }
                if (r - 1.0).abs() <= 4.0 * f64::EPSILON {
                    Ok(f)
                } else {
                    Ok(scale(&f, 1.0 / r))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { point, frames })
    }

    pub fn point(&self) -> &P {
        &self.point
    }

    pub fn frames(&self) -> &[Vec<f64>] {
        &self.frames
    }

    pub fn frame(&self, i: usize) -> &[f64] {
        &self.frames[i]
    }

    pub fn into_parts(self) -> (P, Vec<Vec<f64>>) {
        (self.point, self.frames)
    }

    /// Tangency of every frame; empty for Euclidean space.
    pub fn frame_verdict(&self, manifold: Manifold, tol: f64) -> Verdict {
        let mut v = Verdict::default();
        for (i, f) in self.frames.iter().enumerate() {
            v.record(
                Condition::Manifold,
                &[i, i],
                manifold.tangent_residual(self.point.x(i), f),
                tol,
            );
        }
        v
    }
}

impl<P: IndexedPoint> IndexedPoint for Framed<P> {
    fn n(&self) -> usize {
        self.point.n()
    }
    fn m(&self) -> usize {
        self.point.m()
    }
    fn x(&self, i: usize) -> &[f64] {
        self.point.x(i)
    }
    fn select(&self, sigma: &SetMap) -> Self {
        Self {
            point: self.point.select(sigma),
            frames: (0..sigma.domain())
                .map(|a| self.frames[sigma.apply(a)].clone())
                .collect(),
        }
    }
}

impl FramedAmbient {
    pub fn simplicial(&self) -> FramedSimplicial {
        Framed {
            point: self.point.simplicial().clone(),
            frames: self.frames.clone(),
        }
    }
}

fn check_target(sigma: &SetMap, n: usize) -> Result<()> {
    if sigma.codomain() != n {
        return Err(Error::Parameter(format!(
            "map has codomain {}, point has {n} indices",
            sigma.codomain()
        )));
    }
    Ok(())
}

/// Forgets the indices outside the image of an injective `σ`.
pub fn project_sigma<P: IndexedPoint>(sigma: &SetMap, p: &P) -> Result<P> {
    check_target(sigma, p.n())?;
    if !sigma.is_injective() {
        return Err(Error::Parameter("projection needs an injective map".into()));
    }
    Ok(p.select(sigma))
}

/// Pulls a framed simplicial point back along an arbitrary `σ`. Indices
/// sent to the same point are doubled along its frame, later indices
/// displaced in the frame direction, so `u_ab = −frame` for `a < b`.
pub fn f_sigma(sigma: &SetMap, p: &FramedSimplicial) -> Result<FramedSimplicial> {
    check_target(sigma, p.n())?;
    let q = &p.point;
    let x = (0..sigma.domain()).map(|a| q.x(sigma.apply(a)).to_vec()).collect();
    let point = SimplicialPoint::from_fn(q.m(), x, |a, b| {
        let (s, t) = (sigma.apply(a), sigma.apply(b));
        if s != t {
            q.u(s, t).to_vec()
        } else if a < b {
            neg(&p.frames[s])
        } else {
            p.frames[s].clone()
        }
    })?;
    let frames = (0..sigma.domain()).map(|a| p.frames[sigma.apply(a)].clone()).collect();
    Ok(Framed { point, frames })
}

/// `σ_i`: collapses `K_i = {i, …, i+k}` of `n + k` indices onto `i`.
pub fn collapse_map(n: usize, i: usize, k: usize) -> Result<SetMap> {
    if i >= n {
        return Err(Error::Index { index: i, n });
    }
    let map = (0..n + k)
        .map(|j| if j < i { j } else if j <= i + k { i } else { j - k })
        .collect();
    Ok(SetMap::new(n, map)?)
}

/// The section of [`collapse_map`] keeping `i` and skipping the rest of `K_i`.
pub fn section_map(n: usize, i: usize, k: usize) -> Result<SetMap> {
    if i >= n {
        return Err(Error::Index { index: i, n });
    }
    let map = (0..n).map(|j| if j <= i { j } else { j + k }).collect();
    Ok(SetMap::new(n + k, map)?)
}

/// The unique point of the ordered 1-dimensional compactification on two indices.
pub fn unit_interval_point() -> AmbientPoint {
    alpha(&Configuration::new(1, vec![vec![0.0], vec![1.0]]).expect("distinct points"))
}

/// Checks that `a` is an ordered point of the compactified line on `k + 1`
/// indices, i.e. a point of the associahedron parameter space.
pub fn check_assoc(a: &AmbientPoint, k: usize) -> Result<()> {
    if a.n() != k + 1 || a.m() != 1 {
        return Err(Error::Parameter(format!(
            "expected an ordered point on {} indices in dimension 1",
            k + 1
        )));
    }
    for b in 0..a.n() {
        for c in b + 1..a.n() {
            if a.u(b, c)[0] > -1.0 + DEFAULT_TOL {
                return Err(Error::Parameter(format!("indices {b} and {c} are out of order")));
            }
        }
    }
    if !membership_canonical(a, Manifold::Euclidean(1), DEFAULT_TOL).pass() {
        return Err(Error::Parameter("not a member of the compactified line".into()));
    }
    Ok(())
}

/// `δ^i_k`: replaces index `i` by `k + 1` infinitesimally close copies laid
/// out along its frame with relative spacing given by `assoc`. For `k = 1`
/// `assoc` may be omitted.
pub fn diagonal(
    p: &FramedAmbient,
    i: usize,
    k: usize,
    assoc: Option<&AmbientPoint>,
) -> Result<FramedAmbient> {
    if k == 0 {
        return Err(Error::Parameter("multiplicity must be at least 1".into()));
    }
    let n = p.n();
    let sigma = collapse_map(n, i, k)?;
    let default;
    let e = match assoc {
        Some(a) => a,
        None if k == 1 => {
            default = unit_interval_point();
            &default
        }
        None => return Err(Error::Parameter("an associahedron point is required".into())),
    };
    check_assoc(e, k)?;
    let q = &p.point;
    let inside = |j: usize| (i..=i + k).contains(&j);
    let x = (0..n + k).map(|j| q.x(sigma.apply(j)).to_vec()).collect();
    let base = SimplicialPoint::from_fn(q.m(), x, |a, b| {
        let (s, t) = (sigma.apply(a), sigma.apply(b));
        if s != t {
            q.u(s, t).to_vec()
        } else {
            scale(&p.frames[s], e.u(a - i, b - i)[0])
        }
    })?;
    let point = AmbientPoint::with_ratios(base, |j, l, m| {
        match (inside(j), inside(l), inside(m)) {
            (true, true, true) => e.d(j - i, l - i, m - i),
            (true, true, false) => ExtendedRatio::ZERO,
            (false, true, true) => ExtendedRatio::ONE,
            (true, false, true) => ExtendedRatio::INFINITY,
            _ => q.d(sigma.apply(j), sigma.apply(l), sigma.apply(m)),
        }
    });
    let frames = (0..n + k).map(|j| p.frames[sigma.apply(j)].clone()).collect();
    Ok(Framed { point, frames })
}

/// The stratum of `δ^i_k` applied to a point of stratum `tree`: leaf `i`
/// becomes a cluster of `k + 1` leaves.
pub fn graft_cluster(tree: &FTree, i: usize, k: usize) -> Result<FTree> {
    let n = tree.leaf_count();
    let sigma = collapse_map(n, i, k)?;
    let mut sets: Vec<Vec<usize>> = tree
        .paren()
        .sets()
        .iter()
        .map(|s| (0..n + k).filter(|&j| s.contains(&sigma.apply(j))).collect())
        .collect();
    sets.push((i..=i + k).collect());
    Ok(FTree::from_paren(&Parenthesization::new(n + k, sets)?))
}

/// For monotone `σ: [n] → [m]`, the map `{0..m+1} → {0..n+1}` on the
/// coordinates `0 = t_0 ≤ t_1 ≤ … ≤ t_{n+1} = 1` of the simplex realizing
/// the linear extension of `σ` on vertices.
pub fn sigma_star(sigma: &SetMap) -> Result<SetMap> {
    if !sigma.is_monotone() {
        return Err(Error::NotMonotone);
    }
    let n = sigma.domain() - 1;
    let m = sigma.codomain() - 1;
    let map = (0..=m + 1)
        .map(|j| n + 1 - sigma.values().iter().filter(|&&s| s + j <= m).count())
        .collect();
    Ok(SetMap::new(n + 2, map)?)
}

/// Checks the endpoint decoration on the interval `[0, 1]`: the first and
/// last points sit at 0 and 1, the first frame points inward and the last
/// outward.
pub fn check_interval_endpoints(p: &FramedSimplicial) -> Result<()> {
    let n = p.n();
    let ok = p.m() == 1
        && n >= 2
        && p.x(0) == [0.0]
        && p.x(n - 1) == [1.0]
        && p.frame(0) == [1.0]
        && p.frame(n - 1) == [1.0]
        && (0..n).all(|i| (0.0..=1.0).contains(&p.x(i)[0]));
    if ok {
        Ok(())
    } else {
        Err(Error::Parameter("missing interval endpoint decoration".into()))
    }
}

/// The cosimplicial structure map for monotone `σ: [n] → [m]` on framed
/// points of the interval with `n` free points and two pinned endpoints.
pub fn cosimplicial_map(sigma: &SetMap, p: &FramedSimplicial) -> Result<FramedSimplicial> {
    let tau = sigma_star(sigma)?;
    if p.n() != sigma.domain() + 1 {
        return Err(Error::Parameter(format!(
            "a map out of [{}] acts on {} points, found {}",
            sigma.domain() - 1,
            sigma.domain() + 1,
            p.n()
        )));
    }
    check_interval_endpoints(p)?;
    f_sigma(&tau, p)
}
