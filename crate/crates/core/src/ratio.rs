use std::fmt;
use std::ops::Mul;

/// A value in `[0, ∞]` with `0 · ∞ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ExtendedRatio(f64);

impl ExtendedRatio {
    pub const ZERO: Self = Self(0.0);
    pub const ONE: Self = Self(1.0);
    pub const INFINITY: Self = Self(f64::INFINITY);

    /// `None` for negative or NaN input. `f64::INFINITY` is the point at infinity.
    pub fn new(v: f64) -> Option<Self> {
        (v >= 0.0).then_some(Self(v))
    }

    /// `a / b` for nonnegative lengths, with `a / 0 = ∞` for `a > 0`.
    /// `0 / 0` is `None`.
    pub fn quotient(a: f64, b: f64) -> Option<Self> {
        if b == 0.0 {
            (a > 0.0).then_some(Self::INFINITY)
        } else {
            Self::new(a / b)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// Product of several factors. Multiplication under the convention is
    /// not associative once both `0` and `∞` appear, so any such product is
    /// taken to be `1`, the value it has along every path into the boundary
    /// where the factors telescope.
    pub fn product(factors: &[ExtendedRatio]) -> ExtendedRatio {
        let zero = factors.iter().any(|f| f.is_zero());
        let inf = factors.iter().any(|f| f.is_infinite());
        match (zero, inf) {
            (true, true) => Self::ONE,
            (true, false) => Self::ZERO,
            (false, true) => Self::INFINITY,
            (false, false) => Self(factors.iter().map(|f| f.0).product()),
        }
    }

    /// Distance from one, relative for large values, `∞` for `∞`.
    pub fn distance_from_one(self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            (self.0 - 1.0).abs()
        }
    }
}

impl Mul for ExtendedRatio {
    type Output = ExtendedRatio;

    fn mul(self, rhs: Self) -> Self {
        Self::product(&[self, rhs])
    }
}

impl fmt::Display for ExtendedRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
