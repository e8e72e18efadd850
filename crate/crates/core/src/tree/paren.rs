use super::TreeError;

/// A collection of nested subsets of `0..n`, each with at least two elements.
///
/// Stored in canonical form: every subset sorted, the collection sorted
/// lexicographically, no repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parenthesization {
    n: usize,
    sets: Vec<Vec<usize>>,
}

pub(crate) fn nested(a: &[usize], b: &[usize]) -> bool {
    let inter = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
    inter == 0 || inter == a.len() || inter == b.len()
}

impl Parenthesization {
    pub fn new(n: usize, sets: impl IntoIterator<Item = Vec<usize>>) -> Result<Self, TreeError> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if s.len() < 2 {
                return Err(TreeError::BadSubset(s, "fewer than two elements"));
            }
            if s.iter().any(|&x| x >= n) {
                return Err(TreeError::BadSubset(s, "label out of range"));
            }
            out.push(s);
        }
        out.sort();
        out.dedup();
        for (i, a) in out.iter().enumerate() {
            for b in &out[i + 1..] {
                if !nested(a, b) {
                    return Err(TreeError::NotNested(a.clone(), b.clone()));
                }
            }
        }
        Ok(Self { n, sets: out })
    }

    /// Builds without validation; callers guarantee canonical, nested input.
    pub(crate) fn from_canonical(n: usize, sets: Vec<Vec<usize>>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        Self { n, sets }
    }

    pub fn empty(n: usize) -> Self {
        Self { n, sets: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).is_ok()
    }

    /// Whether the full label set `0..n` is a member.
    pub fn has_full_set(&self) -> bool {
        self.n >= 2 && self.sets.iter().any(|s| s.len() == self.n)
    }

    pub fn is_subset_of(&self, other: &Parenthesization) -> bool {
        self.n == other.n && self.sets.iter().all(|s| other.contains(s))
    }

    pub(crate) fn without(&self, drop: &[Vec<usize>]) -> Self {
        Self {
            n: self.n,
            sets: self
                .sets
                .iter()
                .filter(|s| !drop.contains(s))
                .cloned()
                .collect(),
        }
    }

    pub(crate) fn with_full_set(&self) -> Self {
        if self.n < 2 || self.has_full_set() {
            return self.clone();
        }
        let mut sets = self.sets.clone();
        sets.push((0..self.n).collect());
        sets.sort();
        Self { n: self.n, sets }
    }
}
