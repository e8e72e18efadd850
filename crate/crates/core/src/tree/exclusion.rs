use std::collections::BTreeSet;

use super::paren::Parenthesization;
use super::{FTree, TreeError};

/// Triples `((i, j), k)` of distinct labels, read "`i` and `j` exclude `k`".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExclusionRelation {
    n: usize,
    triples: BTreeSet<(usize, usize, usize)>,
}

impl ExclusionRelation {
    /// Collects the triples; axioms are checked by [`Self::check_axioms`].
    pub fn new(
        n: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, TreeError> {
        let mut set = BTreeSet::new();
        for (i, j, k) in triples {
            if i >= n || j >= n || k >= n {
                return Err(TreeError::UnknownLabel(i.max(j).max(k)));
            }
            if i == j || j == k || i == k {
                return Err(TreeError::Malformed(format!(
                    "triple ({i},{j}),{k} has repeated labels"
                )));
            }
            set.insert((i, j, k));
        }
        Ok(Self { n, triples: set })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            triples: BTreeSet::new(),
        }
    }

    /// `((i,j),k)` whenever some member set holds `i, j` but not `k`.
    pub fn from_paren(p: &Parenthesization) -> Self {
        let mut triples = BTreeSet::new();
        for s in p.sets() {
            for &i in s {
                for &j in s {
                    if i == j {
                        continue;
                    }
                    for k in (0..p.n()).filter(|k| s.binary_search(k).is_err()) {
                        triples.insert((i, j, k));
                    }
                }
            }
        }
        Self { n: p.n(), triples }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize, j: usize, k: usize) -> bool {
        self.triples.contains(&(i, j, k))
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.triples.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn check_axioms(&self) -> Result<(), TreeError> {
        for &(i, j, k) in &self.triples {
            if !self.contains(j, i, k) {
                return Err(TreeError::ExclusionAxiom {
                    axiom: 1,
                    detail: format!("(({i},{j}),{k}) present without (({j},{i}),{k})"),
                });
            }
            if self.contains(i, k, j) {
                return Err(TreeError::ExclusionAxiom {
                    axiom: 1,
                    detail: format!("(({i},{j}),{k}) and (({i},{k}),{j}) both present"),
                });
            }
        }
        // ((x,y),z) and ((w,x),y) imply ((w,x),z)
        for &(x, y, z) in &self.triples {
            for w in 0..self.n {
                if self.contains(w, x, y) && w != z && !self.contains(w, x, z) {
                    return Err(TreeError::ExclusionAxiom {
                        axiom: 2,
                        detail: format!(
                            "(({x},{y}),{z}) and (({w},{x}),{y}) present without (({w},{x}),{z})"
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// The member sets: for each pair, the pair together with every label it
    /// does not exclude. The full set is added iff `trunk`.
    pub fn to_paren(&self, trunk: bool) -> Result<Parenthesization, TreeError> {
        self.check_axioms()?;
        let n = self.n;
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                let s: Vec<usize> = (0..n)
                    .filter(|&l| l == i || l == j || !self.contains(i, j, l))
                    .collect();
                if s.len() < n {
                    sets.insert(s);
                }
            }
        }
        if trunk && n >= 2 {
            sets.insert((0..n).collect());
        }
        let p = Parenthesization::new(n, sets)?;
        if Self::from_paren(&p) != *self {
            return Err(TreeError::ExclusionAxiom {
                axiom: 2,
                detail: "relation is not the exclusion relation of any tree".into(),
            });
        }
        Ok(p)
    }

    pub fn to_tree(&self, trunk: bool) -> Result<FTree, TreeError> {
        Ok(FTree::from_paren(&self.to_paren(trunk)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corolla_has_empty_relation() {
        assert!(FTree::corolla(4).exclusion().is_empty());
        assert_eq!(ExclusionRelation::empty(4).to_tree(false).unwrap(), FTree::corolla(4));
        assert_eq!(ExclusionRelation::empty(4).to_tree(true).unwrap(), FTree::trunk(4));
    }

    #[test]
    fn pair_cluster_relation() {
        let t = FTree::from_paren(&Parenthesization::new(3, vec![vec![0, 1]]).unwrap());
        let r = t.exclusion();
        let got: Vec<_> = r.triples().collect();
        assert_eq!(got, vec![(0, 1, 2), (1, 0, 2)]);
    }

    #[test]
    fn missing_symmetric_triple_rejected() {
        let r = ExclusionRelation::new(3, vec![(0, 1, 2)]).unwrap();
        assert!(matches!(
            r.check_axioms(),
            Err(TreeError::ExclusionAxiom { axiom: 1, .. })
        ));
    }

    #[test]
    fn contradictory_triples_rejected() {
        let r = ExclusionRelation::new(3, vec![(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1)]).unwrap();
        assert!(matches!(
            r.check_axioms(),
            Err(TreeError::ExclusionAxiom { axiom: 1, .. })
        ));
    }

    #[test]
    fn transitivity_violation_rejected() {
        // clusters {0,1} and {0,1,2} force ((1,2),3), which is absent
        let r = ExclusionRelation::new(
            4,
            vec![(0, 1, 2), (1, 0, 2), (0, 1, 3), (1, 0, 3), (0, 2, 3), (2, 0, 3)],
        )
        .unwrap();
        assert!(r.to_tree(false).is_err());
    }

    #[test]
    fn repeated_labels_rejected() {
        assert!(ExclusionRelation::new(3, vec![(0, 0, 1)]).is_err());
        assert!(ExclusionRelation::new(3, vec![(0, 1, 5)]).is_err());
    }
}
