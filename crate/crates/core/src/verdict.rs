//! Membership verdicts and the manifolds points may be constrained to.

use serde::Serialize;

use crate::linalg::{dot, norm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// Directions and ratios agree with the positions where these differ.
    Macroscopic,
    /// Ratios follow from directions by the law of sines.
    LawOfSines,
    Antisymmetry,
    /// `u_ij, u_jk, u_ki` are non-negatively dependent.
    ThreeDependence,
    /// Products of ratios around cycles equal one.
    Cocycle,
    FourConsistency,
    /// Points lie on the manifold with tangent directions at coincidences.
    Manifold,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Macroscopic => "macroscopic",
            Condition::LawOfSines => "law-of-sines",
            Condition::Antisymmetry => "antisymmetry",
            Condition::ThreeDependence => "three-dependence",
            Condition::Cocycle => "cocycle",
            Condition::FourConsistency => "four-consistency",
            Condition::Manifold => "manifold",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub indices: Vec<usize>,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    /// Largest residual over every check performed, passing or not.
    pub max_residual: f64,
}

impl Verdict {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    pub(crate) fn record(&mut self, condition: Condition, indices: &[usize], residual: f64, tol: f64) {
        let r = if residual.is_nan() { f64::INFINITY } else { residual };
        self.max_residual = self.max_residual.max(r);
        if r > tol {
            self.violations.push(Violation {
                condition,
                indices: indices.to_vec(),
                residual: r,
            });
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Manifold {
    Euclidean(usize),
    /// Unit sphere `S^d ⊂ ℝ^{d+1}`.
    Sphere(usize),
}

impl Manifold {
    pub fn ambient_dim(self) -> usize {
        match self {
            Manifold::Euclidean(m) => m,
            Manifold::Sphere(d) => d + 1,
        }
    }

    /// Distance of `x` from the manifold.
    pub fn point_residual(self, x: &[f64]) -> f64 {
        match self {
            Manifold::Euclidean(_) => 0.0,
            Manifold::Sphere(_) => (norm(x) - 1.0).abs(),
        }
    }

    /// Normal component of `u` at `x`.
    pub fn tangent_residual(self, x: &[f64], u: &[f64]) -> f64 {
        match self {
            Manifold::Euclidean(_) => 0.0,
            Manifold::Sphere(_) => dot(u, x).abs() / norm(x).max(f64::MIN_POSITIVE),
        }
    }

    pub fn contains(self, x: &[f64], tol: f64) -> bool {
        x.len() == self.ambient_dim() && self.point_residual(x) <= tol
    }

    pub fn is_tangent(self, x: &[f64], u: &[f64], tol: f64) -> bool {
        self.tangent_residual(x, u) <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_tangency() {
        let s = Manifold::Sphere(2);
        let north = [0.0, 0.0, 1.0];
        assert!(s.contains(&north, 1e-12));
        assert!(s.is_tangent(&north, &[1.0, 0.0, 0.0], 1e-12));
        assert!(!s.is_tangent(&north, &[0.0, 0.0, 1.0], 1e-12));
        assert!(Manifold::Euclidean(3).is_tangent(&north, &[0.0, 0.0, 1.0], 0.0));
    }

    #[test]
    fn verdict_bookkeeping() {
        let mut v = Verdict::default();
        v.record(Condition::Cocycle, &[0, 1, 2], 1e-14, 1e-9);
        assert!(v.pass());
        v.record(Condition::Cocycle, &[0, 1, 2], f64::NAN, 1e-9);
        assert!(!v.pass());
        assert!(v.fails(Condition::Cocycle));
        assert_eq!(v.max_residual, f64::INFINITY);
    }
}
