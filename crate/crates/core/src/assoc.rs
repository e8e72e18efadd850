//! Associahedra as compactified configurations of ordered points on the
//! line: face posets, f-vectors and realizations of faces.

use std::collections::HashMap;

use crate::canonical::{expand_chart, StratumPoint};
use crate::error::{Error, Result};
use crate::point::{normalize_points, AmbientPoint};
use crate::tree::{enumerate_trees, FTree, Parenthesization, Variant};

pub const MAX_ASSOC_DIM: usize = 8;

/// Faces of `A_n` as planar trees on `n + 2` leaves, with covering
/// relations `(lower, upper)` given by contracting one internal edge.
#[derive(Clone, Debug, PartialEq)]
pub struct FacePoset {
    n: usize,
    faces: Vec<FTree>,
    covers: Vec<(usize, usize)>,
}

impl FacePoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[FTree] {
        &self.faces
    }

    pub fn dim(&self, face: usize) -> usize {
        self.n - self.faces[face].codim()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.n + 1];
        for i in 0..self.faces.len() {
            f[self.dim(i)] += 1;
        }
        f
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_ASSOC_DIM {
        return Err(Error::Parameter(format!(
            "associahedron dimension {n} exceeds {MAX_ASSOC_DIM}"
        )));
    }
    Ok(())
}

pub fn face_poset(n: usize) -> Result<FacePoset> {
    check_n(n)?;
    let faces = enumerate_trees(n + 2, Variant::Planar)?;
    let index: HashMap<Parenthesization, usize> =
        faces.iter().enumerate().map(|(i, t)| (t.paren(), i)).collect();
    let mut covers = Vec::new();
    for (lo, t) in faces.iter().enumerate() {
        for v in t.internal_vertices() {
            let up = t.contract(&[v])?;
            covers.push((lo, index[&up.paren()]));
        }
    }
    covers.sort_unstable();
    Ok(FacePoset { n, faces, covers })
}

/// Face counts by dimension, `0..=n`.
pub fn f_vector(n: usize) -> Result<Vec<usize>> {
    Ok(face_poset(n)?.f_vector())
}

fn increasing(xs: &[f64]) -> bool {
    xs.iter().all(|x| x.is_finite()) && xs.windows(2).all(|w| w[0] < w[1])
}

/// Realizes a point of the face `tree` of the ordered compactified line
/// with the first and last points pinned at 0 and 1.
///
/// `params[0]` holds the interior positions of the root's children in
/// `(0, 1)`, all but the first and last. Each later entry, in the order of
/// [`FTree::internal_vertices`], holds increasing positions for that
/// vertex's children; these are normalized here.
pub fn realize_face(tree: &FTree, params: &[Vec<f64>]) -> Result<AmbientPoint> {
    if !tree.is_planar() {
        return Err(Error::NotPlanar);
    }
    let internal = tree.internal_vertices();
    if params.len() != internal.len() + 1 {
        return Err(Error::Parameter(format!(
            "expected {} parameter lists",
            internal.len() + 1
        )));
    }
    let root_len = tree.children(0).len();
    let interior = &params[0];
    if interior.len() + 2 != root_len
        || !increasing(interior)
        || interior.first().is_some_and(|&x| x <= 0.0)
        || interior.last().is_some_and(|&x| x >= 1.0)
    {
        return Err(Error::Parameter(format!(
            "root needs {} increasing positions in (0, 1)",
            root_len - 2
        )));
    }
    let root: Vec<Vec<f64>> = std::iter::once(0.0)
        .chain(interior.iter().copied())
        .chain(std::iter::once(1.0))
        .map(|x| vec![x])
        .collect();
    let mut configs = Vec::with_capacity(internal.len());
    for (&v, xs) in internal.iter().zip(&params[1..]) {
        if xs.len() != tree.children(v).len() || !increasing(xs) {
            return Err(Error::Parameter(format!(
                "vertex {v} needs {} increasing positions",
                tree.children(v).len()
            )));
        }
        let pts: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        configs.push(normalize_points(&pts));
    }
    let s = StratumPoint::new(tree.clone(), 1, root, configs, vec![0.0; internal.len()])?;
    expand_chart(&s)
}

/// Evenly spaced parameters for [`realize_face`].
pub fn default_params(tree: &FTree) -> Vec<Vec<f64>> {
    let even = |k: usize| (0..k).map(|i| i as f64).collect::<Vec<_>>();
    let c = tree.children(0).len();
    let mut out = vec![(1..c - 1).map(|i| i as f64 / (c - 1) as f64).collect()];
    out.extend(tree.internal_vertices().iter().map(|&v| even(tree.children(v).len())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::tree_of;
    use crate::ratio::ExtendedRatio;

    #[test]
    fn small_cases() {
        assert_eq!(f_vector(0).unwrap(), vec![1]);
        assert_eq!(f_vector(1).unwrap(), vec![2, 1]);
        assert_eq!(f_vector(2).unwrap(), vec![5, 5, 1]);
        assert!(face_poset(9).is_err());
    }

    #[test]
    fn corolla_ratio() {
        let t = FTree::corolla(4);
        let a = realize_face(&t, &[vec![0.2, 0.4]]).unwrap();
        // d_102 = 0.2 / 0.2 and d_012 = 0.2 / 0.4
        assert!((a.d(1, 0, 2).value() - 1.0).abs() < 1e-12);
        assert!((a.d(0, 1, 2).value() - 0.5).abs() < 1e-12);
        assert_eq!(tree_of(&a, 1e-9).unwrap(), t);
    }

    #[test]
    fn collided_face_carries_ratio() {
        let t = FTree::from_paren(&Parenthesization::new(4, vec![vec![0, 1, 2]]).unwrap());
        let s = 0.3;
        let a = realize_face(&t, &[vec![], vec![0.0, s, 1.0]]).unwrap();
        assert!((a.d(0, 1, 2).value() - s).abs() < 1e-12);
        assert_eq!(a.u(0, 1), &[-1.0]);
        assert_eq!(a.d(0, 1, 3), ExtendedRatio::ZERO);
        assert!(matches!(
            realize_face(&FTree::corolla(3), &[vec![]]),
            Err(Error::Parameter(_))
        ));
    }
}
