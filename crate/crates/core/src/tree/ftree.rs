use std::collections::BTreeSet;

use super::paren::Parenthesization;
use super::{ExclusionRelation, SetMap, TreeError};

/// A rooted tree with `n` labelled leaves and no bivalent non-root vertex.
///
/// Vertices are numbered canonically: the root is `0` and the rest follow a
/// depth-first preorder in which the children of every vertex are visited in
/// the order of the smallest leaf label above them. Two trees are isomorphic
/// (preserving labels) exactly when they compare equal.
///
/// An edge is named by its terminal vertex, the end further from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FTree {
    n: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    label: Vec<Option<usize>>,
    leaf_vertex: Vec<usize>,
    over: Vec<Vec<usize>>,
    depth: Vec<usize>,
}

enum Node {
    Root,
    Set(usize),
    Leaf(usize),
}

impl FTree {
    /// The tree with all leaves attached directly to the root.
    pub fn corolla(n: usize) -> Self {
        Self::from_paren(&Parenthesization::empty(n))
    }

    /// The tree with a univalent root and a single internal vertex.
    pub fn trunk(n: usize) -> Self {
        Self::from_paren(&Parenthesization::empty(n).with_full_set())
    }

    /// Builds the tree with one internal vertex per member set.
    pub fn from_paren(p: &Parenthesization) -> Self {
        let n = p.n();
        let sets = p.sets();
        // smallest member strictly containing each set / each label
        let smallest_over = |pred: &dyn Fn(&[usize]) -> bool| -> Option<usize> {
            sets.iter()
                .enumerate()
                .filter(|(_, s)| pred(s))
                .min_by_key(|(_, s)| s.len())
                .map(|(k, _)| k)
        };
        let mut kids: Vec<Vec<Node>> = (0..=sets.len()).map(|_| Vec::new()).collect();
        for (k, s) in sets.iter().enumerate() {
            let up = smallest_over(&|t: &[usize]| {
                t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok())
            });
            kids[up.map_or(0, |u| u + 1)].push(Node::Set(k));
        }
        for i in 0..n {
            let up = smallest_over(&|t: &[usize]| t.binary_search(&i).is_ok());
            kids[up.map_or(0, |u| u + 1)].push(Node::Leaf(i));
        }
        let min_label = |node: &Node| match node {
            Node::Leaf(i) => *i,
            Node::Set(k) => sets[*k][0],
            Node::Root => 0,
        };
        for list in kids.iter_mut() {
            list.sort_by_key(|nd| min_label(nd));
        }

        let mut tree = FTree {
            n,
            parent: Vec::new(),
            children: Vec::new(),
            label: Vec::new(),
            leaf_vertex: vec![0; n],
            over: Vec::new(),
            depth: Vec::new(),
        };
        // iterative preorder
        let mut stack: Vec<(Node, Option<usize>)> = vec![(Node::Root, None)];
        while let Some((node, par)) = stack.pop() {
            let id = tree.parent.len();
            tree.parent.push(par);
            tree.children.push(Vec::new());
            tree.depth.push(par.map_or(0, |p| tree.depth[p] + 1));
            if let Some(p) = par {
                tree.children[p].push(id);
            }
            match node {
                Node::Leaf(i) => {
                    tree.label.push(Some(i));
                    tree.leaf_vertex[i] = id;
                    tree.over.push(vec![i]);
                }
                Node::Root => {
                    tree.label.push(None);
                    tree.over.push((0..n).collect());
                    for child in std::mem::take(&mut kids[0]).into_iter().rev() {
                        stack.push((child, Some(id)));
                    }
                }
                Node::Set(k) => {
                    tree.label.push(None);
                    tree.over.push(sets[k].clone());
                    for child in std::mem::take(&mut kids[k + 1]).into_iter().rev() {
                        stack.push((child, Some(id)));
                    }
                }
            }
        }
        tree
    }

    /// Validates an arbitrary parent array / leaf labelling and returns the
    /// canonical tree. `labels[v]` is `Some(label)` exactly for leaves.
    pub fn from_parts(
        n: usize,
        parents: &[Option<usize>],
        labels: &[Option<usize>],
    ) -> Result<Self, TreeError> {
        let nv = parents.len();
        if labels.len() != nv {
            return Err(TreeError::Malformed("parents and labels differ in length".into()));
        }
        let roots: Vec<usize> = (0..nv).filter(|&v| parents[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(TreeError::Malformed(format!("{} roots", roots.len())));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); nv];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= nv {
                    return Err(TreeError::Malformed(format!("parent {p} out of range")));
                }
                children[p].push(v);
            }
        }
        // reachability from the root also rules out cycles
        let mut seen = vec![false; nv];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &c in &children[v] {
                if seen[c] {
                    return Err(TreeError::Malformed("cycle".into()));
                }
                seen[c] = true;
                order.push(c);
            }
        }
        if order.len() != nv {
            return Err(TreeError::Malformed("not connected".into()));
        }
        let mut label_seen = vec![false; n];
        for v in 0..nv {
            let is_leaf = v != root && children[v].is_empty();
            match (is_leaf, labels[v]) {
                (true, Some(l)) => {
                    if l >= n || label_seen[l] {
                        return Err(TreeError::Malformed(format!("bad leaf label {l}")));
                    }
                    label_seen[l] = true;
                }
                (true, None) => return Err(TreeError::Malformed(format!("leaf {v} unlabelled"))),
                (false, Some(_)) if !(v == root && n == 1 && children[v].is_empty()) => {
                    return Err(TreeError::Malformed(format!("non-leaf {v} labelled")))
                }
                _ => {}
            }
            if v != root && children[v].len() == 1 {
                return Err(TreeError::Malformed(format!("vertex {v} is bivalent")));
            }
        }
        if label_seen.iter().any(|s| !s) {
            return Err(TreeError::Malformed("leaf labels are not a bijection".into()));
        }
        // leaves over each vertex, bottom-up
        let mut over: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for &v in order.iter().rev() {
            if let Some(l) = labels[v] {
                over[v].push(l);
            }
            let mut acc: Vec<usize> = children[v].iter().flat_map(|&c| over[c].clone()).collect();
            over[v].append(&mut acc);
            over[v].sort_unstable();
        }
        let sets: Vec<Vec<usize>> = (0..nv)
            .filter(|&v| v != root && !children[v].is_empty())
            .map(|v| over[v].clone())
            .collect();
        let p = Parenthesization::new(n, sets)?;
        Ok(Self::from_paren(&p))
    }

    pub fn leaf_count(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children of `v` in canonical `E(v)` order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn label(&self, v: usize) -> Option<usize> {
        self.label[v]
    }

    pub fn leaf(&self, label: usize) -> usize {
        self.leaf_vertex[label]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.label[v].is_some() && v != 0
    }

    pub fn is_internal(&self, v: usize) -> bool {
        v != 0 && self.label[v].is_none()
    }

    /// Sorted leaf labels lying over `v`.
    pub fn leaves_over(&self, v: usize) -> &[usize] {
        &self.over[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != 0)
    }

    /// Internal vertices (neither root nor leaf) in preorder.
    pub fn internal_vertices(&self) -> Vec<usize> {
        (1..self.vertex_count()).filter(|&v| self.is_internal(v)).collect()
    }

    /// Position of `v` within [`Self::internal_vertices`].
    pub fn internal_index(&self, v: usize) -> Option<usize> {
        if !self.is_internal(v) {
            return None;
        }
        Some((1..v).filter(|&w| self.is_internal(w)).count())
    }

    /// True when the root is univalent over at least two leaves.
    pub fn has_trunk(&self) -> bool {
        self.n >= 2 && self.children[0].len() == 1
    }

    /// Smallest leaf label over each edge leaving `v`, in `E(v)` order.
    pub fn representatives(&self, v: usize) -> Vec<usize> {
        self.children[v].iter().map(|&c| self.over[c][0]).collect()
    }

    /// Index within `E(v)` of the child edge of `v` lying under leaf `label`.
    pub fn branch_toward(&self, v: usize, label: usize) -> Option<usize> {
        self.children[v]
            .iter()
            .position(|&c| self.over[c].binary_search(&label).is_ok())
    }

    /// Vertices on the path from `v` down to the root, `v` first.
    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out
    }

    /// The sets of leaves over internal vertices.
    pub fn paren(&self) -> Parenthesization {
        let mut sets: Vec<Vec<usize>> = self
            .internal_vertices()
            .into_iter()
            .map(|v| self.over[v].clone())
            .collect();
        sets.sort();
        Parenthesization::from_canonical(self.n, sets)
    }

    pub fn from_exclusion(r: &ExclusionRelation, trunk: bool) -> Result<Self, TreeError> {
        r.to_tree(trunk)
    }

    pub fn exclusion(&self) -> ExclusionRelation {
        ExclusionRelation::from_paren(&self.paren())
    }

    /// Number of internal vertices, the codimension of the stratum.
    pub fn codim(&self) -> usize {
        self.internal_vertices().len()
    }

    /// Contracts the internal edges named by their terminal vertices.
    pub fn contract(&self, edges: &[usize]) -> Result<Self, TreeError> {
        let mut drop = Vec::with_capacity(edges.len());
        for &e in edges {
            if e >= self.vertex_count() || !self.is_internal(e) {
                return Err(TreeError::NotInternalEdge(e));
            }
            drop.push(self.over[e].clone());
        }
        Ok(Self::from_paren(&self.paren().without(&drop)))
    }

    /// Whether `other` is (isomorphic to) a contraction of `self`.
    pub fn leq(&self, other: &FTree) -> Result<bool, TreeError> {
        if self.n != other.n {
            return Err(TreeError::LeafCountMismatch(self.n, other.n));
        }
        Ok(other.paren().is_subset_of(&self.paren()))
    }

    /// Deepest vertex lying under every named leaf.
    pub fn join(&self, labels: &[usize]) -> Result<usize, TreeError> {
        let first = *labels.first().ok_or(TreeError::EmptyLabels)?;
        if let Some(&bad) = labels.iter().find(|&&l| l >= self.n) {
            return Err(TreeError::UnknownLabel(bad));
        }
        let mut v = self.leaf_vertex[first];
        while !labels.iter().all(|l| self.over[v].binary_search(l).is_ok()) {
            v = self.parent[v].expect("root lies under every leaf");
        }
        Ok(v)
    }

    /// Pulls the tree back along an injection `σ: m → n`, keeping only the
    /// leaves in the image and relabelling leaf `σ(a)` as `a`.
    pub fn prune(&self, sigma: &SetMap) -> Result<Self, TreeError> {
        if sigma.codomain() != self.n {
            return Err(TreeError::LeafCountMismatch(sigma.codomain(), self.n));
        }
        if !sigma.is_injective() {
            return Err(TreeError::NotInjective);
        }
        let mut pre = vec![None; self.n];
        for a in 0..sigma.domain() {
            pre[sigma.apply(a)] = Some(a);
        }
        let sets: BTreeSet<Vec<usize>> = self
            .paren()
            .sets()
            .iter()
            .map(|s| {
                let mut r: Vec<usize> = s.iter().filter_map(|&l| pre[l]).collect();
                r.sort_unstable();
                r
            })
            .filter(|s| s.len() >= 2)
            .collect();
        Ok(Self::from_paren(&Parenthesization::from_canonical(
            sigma.domain(),
            sets.into_iter().collect(),
        )))
    }

    /// Relabels leaf `i` as `perm(i)`.
    pub fn permute(&self, perm: &SetMap) -> Result<Self, TreeError> {
        if perm.domain() != self.n || perm.codomain() != self.n || !perm.is_injective() {
            return Err(TreeError::NotInjective);
        }
        let sets = self
            .paren()
            .sets()
            .iter()
            .map(|s| s.iter().map(|&l| perm.apply(l)).collect())
            .collect::<Vec<_>>();
        Ok(Self::from_paren(&Parenthesization::new(self.n, sets)?))
    }

    /// Whether every vertex carries a consecutive run of labels and the
    /// root has valence greater than one.
    pub fn is_planar(&self) -> bool {
        self.children[0].len() > 1
            && self
                .over
                .iter()
                .all(|s| s.last().is_none_or(|&hi| hi - s[0] + 1 == s.len()))
    }

    /// Parent array and 0-based leaf labels in canonical vertex order.
    pub fn parts(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        let labels = (0..self.vertex_count())
            .map(|v| if v == 0 && self.n != 1 { None } else { self.label[v] })
            .collect();
        (self.parent.clone(), labels)
    }
}
