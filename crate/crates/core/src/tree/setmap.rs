use super::TreeError;

/// A map `{0..m} → {0..n}` given by its value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetMap {
    n: usize,
    map: Vec<usize>,
    injective: bool,
}

impl SetMap {
    pub fn new(n: usize, map: Vec<usize>) -> Result<Self, TreeError> {
        if let Some(&value) = map.iter().find(|&&v| v >= n) {
            return Err(TreeError::MapOutOfRange { value, n });
        }
        let mut seen = vec![false; n];
        let mut injective = true;
        for &v in &map {
            injective &= !std::mem::replace(&mut seen[v], true);
        }
        Ok(Self { n, map, injective })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            map: (0..n).collect(),
            injective: true,
        }
    }

    pub fn domain(&self) -> usize {
        self.map.len()
    }

    pub fn codomain(&self) -> usize {
        self.n
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.map.len() == self.n
    }

    /// Weakly increasing.
    pub fn is_monotone(&self) -> bool {
        self.map.windows(2).all(|w| w[0] <= w[1])
    }

    /// `self ∘ inner`, i.e. `i ↦ self(inner(i))`.
    pub fn after(&self, inner: &SetMap) -> Result<SetMap, TreeError> {
        if inner.n != self.domain() {
            return Err(TreeError::Incomposable(format!(
                "inner codomain {} but outer domain {}",
                inner.n,
                self.domain()
            )));
        }
        SetMap::new(self.n, inner.map.iter().map(|&i| self.map[i]).collect())
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<SetMap, TreeError> {
        if !self.is_bijective() {
            return Err(TreeError::NotInjective);
        }
        let mut inv = vec![0; self.n];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        SetMap::new(self.n, inv)
    }
}
