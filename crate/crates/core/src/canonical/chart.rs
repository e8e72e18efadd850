use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{axpy, centroid, direction, dist, norm, scale};
use crate::point::{normalize_points, AmbientPoint, SimplicialPoint};
use crate::ratio::ExtendedRatio;
use crate::tree::FTree;

use super::tree_of;

const NORMALIZATION_TOL: f64 = 1e-9;

/// Chart coordinates on a neighbourhood of the stratum of `tree`: a
/// configuration of the root's children, a normalized configuration of the
/// children of each internal vertex, and one scale per internal vertex.
///
/// Configurations are indexed by the children of their vertex in canonical
/// order; internal vertices follow [`FTree::internal_vertices`].
#[derive(Clone, Debug, PartialEq)]
pub struct StratumPoint {
    tree: FTree,
    m: usize,
    root: Vec<Vec<f64>>,
    configs: Vec<Vec<Vec<f64>>>,
    scales: Vec<f64>,
}

fn check_distinct(points: &[Vec<f64>], vertex: usize) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::Malformed(format!(
                    "points {i} and {j} coincide at vertex {vertex}"
                )));
            }
        }
    }
    Ok(())
}

fn check_dims(points: &[Vec<f64>], m: usize) -> Result<()> {
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

impl StratumPoint {
    /// Validates shapes, distinctness, normalization and `0 ≤ t < 1`. The
    /// chart radius is checked by [`expand_chart`], not here.
    pub fn new(
        tree: FTree,
        m: usize,
        root: Vec<Vec<f64>>,
        configs: Vec<Vec<Vec<f64>>>,
        scales: Vec<f64>,
    ) -> Result<Self> {
        let internal = tree.internal_vertices();
        if root.len() != tree.children(0).len() {
            return Err(Error::Malformed(format!(
                "root configuration has {} points, the root has {} children",
                root.len(),
                tree.children(0).len()
            )));
        }
        if configs.len() != internal.len() || scales.len() != internal.len() {
            return Err(Error::Malformed(format!(
                "expected {} internal configurations and scales",
                internal.len()
            )));
        }
        check_dims(&root, m)?;
        check_distinct(&root, 0)?;
        for (&v, c) in internal.iter().zip(&configs) {
            if c.len() != tree.children(v).len() {
                return Err(Error::Malformed(format!(
                    "configuration at vertex {v} has {} points, expected {}",
                    c.len(),
                    tree.children(v).len()
                )));
            }
            check_dims(c, m)?;
            check_distinct(c, v)?;
            let max = c.iter().map(|p| norm(p)).fold(0.0, f64::max);
            if norm(&centroid(c)) > NORMALIZATION_TOL || (max - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::NotNormalized(v));
            }
        }
        for (&v, &t) in internal.iter().zip(&scales) {
            if !(0.0..1.0).contains(&t) {
                return Err(Error::ScaleBound {
                    vertex: v,
                    t,
                    radius: 1.0,
                });
            }
        }
        Ok(Self {
            tree,
            m,
            root,
            configs,
            scales,
        })
    }

    pub fn tree(&self) -> &FTree {
        &self.tree
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn root_config(&self) -> &[Vec<f64>] {
        &self.root
    }

    pub fn internal_configs(&self) -> &[Vec<Vec<f64>>] {
        &self.configs
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Configuration at a non-leaf vertex, indexed by its children.
    pub fn config(&self, v: usize) -> &[Vec<f64>] {
        if v == 0 {
            &self.root
        } else {
            &self.configs[self.tree.internal_index(v).expect("internal vertex")]
        }
    }

    /// `t_v`, with `t = 1` at the root.
    pub fn scale(&self, v: usize) -> f64 {
        if v == 0 {
            1.0
        } else {
            self.scales[self.tree.internal_index(v).expect("internal vertex")]
        }
    }

    pub fn with_scales(&self, scales: Vec<f64>) -> Result<Self> {
        Self::new(
            self.tree.clone(),
            self.m,
            self.root.clone(),
            self.configs.clone(),
            scales,
        )
    }

    pub fn with_zero_scales(&self) -> Self {
        let mut s = self.clone();
        s.scales.iter_mut().for_each(|t| *t = 0.0);
        s
    }

    /// `r` with `r/(1 − r)` one third of the smallest distance between two
    /// points of the same vertex configuration, root included.
    pub fn radius(&self) -> f64 {
        let mut min = f64::INFINITY;
        for c in std::iter::once(&self.root).chain(&self.configs) {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    min = min.min(dist(&c[i], &c[j]));
                }
            }
        }
        if min.is_infinite() {
            return 1.0;
        }
        let q = min / 3.0;
        q / (1.0 + q)
    }

    pub fn check_radius(&self) -> Result<()> {
        let r = self.radius();
        for (v, &t) in self.tree.internal_vertices().into_iter().zip(&self.scales) {
            if t >= r {
                return Err(Error::ScaleBound {
                    vertex: v,
                    t,
                    radius: r,
                });
            }
        }
        Ok(())
    }

    /// Largest difference over configurations and scales.
    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.tree != other.tree || self.m != other.m {
            return f64::INFINITY;
        }
        let pts = |s: &Self| {
            std::iter::once(s.root.clone())
                .chain(s.configs.iter().cloned())
                .flatten()
                .flatten()
                .collect::<Vec<f64>>()
        };
        let a = pts(self);
        let b = pts(other);
        let dp = a.iter().zip(&b).map(|(x, y)| (x - y).abs());
        let dt = self.scales.iter().zip(&other.scales).map(|(x, y)| (x - y).abs());
        dp.chain(dt).fold(0.0, f64::max)
    }

    /// Leaf positions of the expansion of the subtree over `v` with the
    /// scale at `v` set to one, indexed by label (`None` off the subtree).
    fn subtree_positions(&self, v: usize) -> Vec<Option<Vec<f64>>> {
        let mut out = vec![None; self.tree.leaf_count()];
        let mut stack = vec![(v, vec![0.0; self.m], 1.0)];
        while let Some((w, y, s)) = stack.pop() {
            for (idx, &e) in self.tree.children(w).iter().enumerate() {
                let ye = axpy(&y, s, &self.config(w)[idx]);
                match self.tree.label(e) {
                    Some(l) if self.tree.is_leaf(e) => out[l] = Some(ye),
                    _ => stack.push((e, ye, s * self.scale(e))),
                }
            }
        }
        out
    }
}

/// Evaluates the chart: positions by nested expansion, and each direction
/// and ratio on the expansion of the subtree over the join of its indices.
pub fn expand_chart(s: &StratumPoint) -> Result<AmbientPoint> {
    s.check_radius()?;
    let t = &s.tree;
    let n = t.leaf_count();
    let frames: Vec<Option<Vec<Option<Vec<f64>>>>> = (0..t.vertex_count())
        .map(|v| (!t.is_leaf(v)).then(|| s.subtree_positions(v)))
        .collect();
    let frame_point = |v: usize, i: usize| -> &Vec<f64> {
        frames[v].as_ref().expect("non-leaf vertex")[i]
            .as_ref()
            .expect("leaf over vertex")
    };
    let x: Vec<Vec<f64>> = (0..n).map(|i| frame_point(0, i).clone()).collect();

    let mut bad = None;
    let base = SimplicialPoint::from_fn(s.m, x, |i, j| {
        let v = t.join(&[i, j]).expect("labels in range");
        direction(frame_point(v, i), frame_point(v, j)).unwrap_or_else(|| {
            bad = Some((i, j));
            vec![1.0; s.m]
        })
    });
    if let Some((i, j)) = bad {
        return Err(Error::Malformed(format!(
            "leaves {i} and {j} coincide in their own frame"
        )));
    }
    let base = base?;
    Ok(AmbientPoint::with_ratios(base, |i, j, k| {
        let v = t.join(&[i, j, k]).expect("labels in range");
        let (a, b, c) = (frame_point(v, i), frame_point(v, j), frame_point(v, k));
        ExtendedRatio::quotient(dist(a, b), dist(a, c)).unwrap_or(ExtendedRatio::ONE)
    }))
}

/// `t_v = 2^{-k} t_v` for `k = 0..=k_max`.
pub fn degeneration_path(s: &StratumPoint, k_max: u32) -> Result<Vec<AmbientPoint>> {
    (0..=k_max)
        .map(|k| {
            let f = 0.5f64.powi(k as i32);
            expand_chart(&s.with_scales(s.scales.iter().map(|t| t * f).collect())?)
        })
        .collect()
}

/// Leaf positions over `v`, up to similarity, read off the directions and
/// ratios among those leaves.
fn reconstruct_frame(t: &FTree, a: &AmbientPoint, v: usize) -> Vec<Option<Vec<f64>>> {
    let reps = t.representatives(v);
    let (r1, r2) = (reps[0], reps[1]);
    let mut out = vec![None; t.leaf_count()];
    for &i in t.leaves_over(v) {
        let p = if i == r1 {
            vec![0.0; a.m()]
        } else if i == r2 {
            a.u(r2, r1).to_vec()
        } else {
            let d = a.d(r1, i, r2).value();
            scale(a.u(i, r1), if d.is_finite() { d } else { 0.0 })
        };
        out[i] = Some(p);
    }
    out
}

/// Recursive averages: a leaf is its own position, any other vertex the
/// mean of its children. Only vertices over `v` are filled.
fn centers(t: &FTree, frame: &[Option<Vec<f64>>], v: usize) -> Vec<Option<Vec<f64>>> {
    fn go(t: &FTree, frame: &[Option<Vec<f64>>], w: usize, out: &mut Vec<Option<Vec<f64>>>) {
        if t.is_leaf(w) {
            out[w] = frame[t.label(w).expect("leaf")].clone();
            return;
        }
        let mut pts = Vec::new();
        for &c in t.children(w) {
            go(t, frame, c, out);
            pts.push(out[c].clone().expect("child filled"));
        }
        out[w] = Some(centroid(&pts));
    }
    let mut out = vec![None; t.vertex_count()];
    go(t, frame, v, &mut out);
    out
}

fn spread(t: &FTree, centers: &[Option<Vec<f64>>], w: usize) -> f64 {
    let c = centers[w].as_ref().expect("filled");
    t.children(w)
        .iter()
        .map(|&e| dist(centers[e].as_ref().expect("filled"), c))
        .fold(0.0, f64::max)
}

/// Recovers chart coordinates for a point whose stratum is a contraction
/// of `tree`. The recovered scales are not checked against the chart radius.
pub fn invert_chart(tree: &FTree, a: &AmbientPoint, tol: f64) -> Result<StratumPoint> {
    if tree.leaf_count() != a.n() {
        return Err(Error::Tree(crate::tree::TreeError::LeafCountMismatch(
            tree.leaf_count(),
            a.n(),
        )));
    }
    let actual = tree_of(a, tol)?;
    if !tree.leq(&actual)? {
        return Err(Error::OutsideChart);
    }
    let global: Vec<Option<Vec<f64>>> = a.positions().iter().cloned().map(Some).collect();
    let root_centers = centers(tree, &global, 0);
    let root: Vec<Vec<f64>> = tree
        .children(0)
        .iter()
        .map(|&e| root_centers[e].clone().expect("filled"))
        .collect();

    let internal = tree.internal_vertices();
    let mut frame_centers: Vec<Vec<Option<Vec<f64>>>> = Vec::with_capacity(internal.len());
    let mut configs = Vec::with_capacity(internal.len());
    for &v in &internal {
        let frame = reconstruct_frame(tree, a, v);
        let c = centers(tree, &frame, v);
        let pts: Vec<Vec<f64>> = tree
            .children(v)
            .iter()
            .map(|&e| c[e].clone().expect("filled"))
            .collect();
        configs.push(normalize_points(&pts));
        frame_centers.push(c);
    }

    let mut scales = Vec::with_capacity(internal.len());
    for &w in &internal {
        let p = tree.parent(w).expect("internal vertex has a parent");
        let t = if p == 0 {
            spread(tree, &root_centers, w)
        } else {
            let c = &frame_centers[tree.internal_index(p).expect("internal")];
            spread(tree, c, w) / spread(tree, c, p)
        };
        if t.is_nan() || t >= 1.0 {
            return Err(Error::OutsideChart);
        }
        scales.push(t);
    }
    StratumPoint::new(tree.clone(), a.m(), root, configs, scales)
}

/// `k` points with pairwise distances at least `0.1` after normalization.
fn spaced_points(rng: &mut ChaCha8Rng, k: usize, m: usize) -> Vec<Vec<f64>> {
    if k == 1 {
        return vec![vec![0.0; m]];
    }
    if m == 1 {
        let mut pos = vec![0.0];
        for _ in 1..k {
            let last = *pos.last().expect("nonempty");
            pos.push(last + rng.gen_range(1.0..2.0));
        }
        pos.shuffle(rng);
        let pts: Vec<Vec<f64>> = pos.into_iter().map(|p| vec![p]).collect();
        return normalize_points(&pts);
    }
    loop {
        let pts: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let pts = normalize_points(&pts);
        let ok = (0..k).all(|i| (i + 1..k).all(|j| dist(&pts[i], &pts[j]) >= 0.1));
        if ok {
            return pts;
        }
    }
}

/// Deterministic pseudo-random chart coordinates with distinctness margin
/// `0.1` and scales uniform in `[0, r)`.
pub fn stratum_sample(tree: &FTree, m: usize, seed: u64) -> Result<StratumPoint> {
    if m == 0 {
        return Err(Error::Parameter("m must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let root: Vec<Vec<f64>> = spaced_points(&mut rng, tree.children(0).len(), m)
        .into_iter()
        .map(|p| axpy(&offset, 1.0, &p))
        .collect();
    let internal = tree.internal_vertices();
    let configs: Vec<Vec<Vec<f64>>> = internal
        .iter()
        .map(|&v| spaced_points(&mut rng, tree.children(v).len(), m))
        .collect();
    let s = StratumPoint::new(tree.clone(), m, root, configs, vec![0.0; internal.len()])?;
    let r = s.radius();
    let scales = (0..internal.len()).map(|_| rng.gen_range(0.0..r)).collect();
    s.with_scales(scales)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{alpha, membership_canonical};
    use crate::point::Configuration;
    use crate::tree::Parenthesization;
    use crate::verdict::Manifold;

    fn trunk2(t: f64) -> StratumPoint {
        StratumPoint::new(
            FTree::trunk(2),
            1,
            vec![vec![0.0]],
            vec![vec![vec![-1.0], vec![1.0]]],
            vec![t],
        )
        .unwrap()
    }

    #[test]
    fn trunk_radius_is_two_fifths() {
        assert!((trunk2(0.0).radius() - 0.4).abs() < 1e-15);
        assert!(matches!(
            expand_chart(&trunk2(0.5)),
            Err(Error::ScaleBound { .. })
        ));
    }

    #[test]
    fn trunk_expansion() {
        let a = expand_chart(&trunk2(0.25)).unwrap();
        assert_eq!(a.positions(), &[vec![-0.25], vec![0.25]]);
        assert_eq!(a.u(0, 1), &[-1.0]);
        let a0 = expand_chart(&trunk2(0.0)).unwrap();
        assert_eq!(a0.positions(), &[vec![0.0], vec![0.0]]);
        assert_eq!(a0.u(0, 1), &[-1.0]);
        assert_eq!(tree_of(&a0, 1e-9).unwrap(), FTree::trunk(2));
    }

    #[test]
    fn trunk_inversion_beyond_radius() {
        let a = alpha(&Configuration::new(1, vec![vec![-0.5], vec![0.5]]).unwrap());
        let s = invert_chart(&FTree::trunk(2), &a, 1e-9).unwrap();
        assert_eq!(s.root_config(), &[vec![0.0]]);
        assert_eq!(s.internal_configs()[0], vec![vec![-1.0], vec![1.0]]);
        assert!((s.scales()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn corolla_chart_is_identity() {
        let c = Configuration::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.5], vec![-0.3, 2.0]]).unwrap();
        let s = invert_chart(&FTree::corolla(3), &alpha(&c), 1e-9).unwrap();
        assert_eq!(s.root_config(), c.points());
        assert!(s.scales().is_empty());
    }

    #[test]
    fn cluster_limit_classifies() {
        let t = FTree::from_paren(&Parenthesization::new(3, vec![vec![0, 1]]).unwrap());
        let s = stratum_sample(&t, 2, 7).unwrap().with_zero_scales();
        let a = expand_chart(&s).unwrap();
        assert_eq!(a.d(0, 1, 2), ExtendedRatio::ZERO);
        assert_eq!(a.d(1, 0, 2), ExtendedRatio::ZERO);
        assert_eq!(tree_of(&a, 1e-9).unwrap(), t);
        assert!(membership_canonical(&a, Manifold::Euclidean(2), 1e-9).pass());
    }

    #[test]
    fn outside_chart_rejected() {
        let t = FTree::from_paren(&Parenthesization::new(3, vec![vec![0, 1]]).unwrap());
        let other = FTree::from_paren(&Parenthesization::new(3, vec![vec![0, 2]]).unwrap());
        let a = expand_chart(&stratum_sample(&t, 2, 1).unwrap().with_zero_scales()).unwrap();
        assert_eq!(invert_chart(&other, &a, 1e-9), Err(Error::OutsideChart));
    }

    #[test]
    fn sample_is_deterministic_and_valid() {
        let t = FTree::from_paren(&Parenthesization::new(4, vec![vec![0, 1], vec![0, 1, 2]]).unwrap());
        let a = stratum_sample(&t, 3, 11).unwrap();
        assert_eq!(a, stratum_sample(&t, 3, 11).unwrap());
        assert!(a.check_radius().is_ok());
    }
}
