use std::fmt;

use crate::scalar::Rat;

/// A supremum of absolute values: a rational or `∞`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Bound {
    Finite(Rat),
    Infinite,
}

impl Bound {
    pub fn zero() -> Bound {
        Bound::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Bound::Finite(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Bound::Finite(r) => Some(r),
            Bound::Infinite => None,
        }
    }

    /// `sup |c·x|` given `sup |x| = self`. A zero coefficient kills the
    /// coordinate even when it is unbounded.
    pub fn times_coef(&self, c: &Rat) -> Bound {
        if c.is_zero() {
            return Bound::zero();
        }
        match self {
            Bound::Finite(r) => Bound::Finite(r * &c.abs()),
            Bound::Infinite => Bound::Infinite,
        }
    }

    /// `δ·self ≤ ε` for a positive `δ`; never true when `self` is `∞`.
    pub fn scaled_within(&self, delta: &Rat, eps: &Rat) -> bool {
        match self {
            Bound::Finite(r) => &(r * delta) <= eps,
            Bound::Infinite => false,
        }
    }

    pub fn add(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a + b),
            _ => Bound::Infinite,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            Bound::Finite(r) => &x.abs() <= r,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(r) => write!(f, "{r}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

/// Per-coordinate bounds `β(i)`; sequences carry a tail bound for all
/// indices past the stored head. Always kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BoundFn {
    head: Vec<Bound>,
    tail: Option<Bound>,
}

impl BoundFn {
    pub fn new(mut head: Vec<Bound>, tail: Option<Bound>) -> BoundFn {
        if let Some(t) = &tail {
            while head.last() == Some(t) {
                head.pop();
            }
        }
        BoundFn { head, tail }
    }

    pub fn head(&self) -> &[Bound] {
        &self.head
    }

    pub fn tail(&self) -> Option<&Bound> {
        self.tail.as_ref()
    }

    /// `β(i)`; indices past a finite dimension are reported as `0`.
    pub fn at(&self, i: usize) -> Bound {
        match (self.head.get(i), &self.tail) {
            (Some(b), _) => b.clone(),
            (None, Some(t)) => t.clone(),
            (None, None) => Bound::zero(),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.head.iter().chain(&self.tail).all(Bound::is_finite)
    }

    pub fn is_zero(&self) -> bool {
        self.head.iter().chain(&self.tail).all(Bound::is_zero)
    }

    /// The least index with `β = ∞`.
    pub fn first_infinite(&self) -> Option<usize> {
        if let Some(i) = self.head.iter().position(|b| !b.is_finite()) {
            return Some(i);
        }
        match &self.tail {
            Some(Bound::Infinite) => Some(self.head.len()),
            _ => None,
        }
    }

    /// `sup_i β(i)` over every index.
    pub fn sup(&self) -> Bound {
        self.head.iter().chain(&self.tail).max().cloned().unwrap_or_else(Bound::zero)
    }

    pub fn max_over(&self, coords: impl IntoIterator<Item = usize>) -> Bound {
        coords.into_iter().map(|i| self.at(i)).max().unwrap_or_else(Bound::zero)
    }

    /// Number of explicit coordinates needed to see every distinct value.
    pub fn frame_len(&self) -> usize {
        self.head.len()
    }
}

impl fmt::Display for BoundFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.head.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")?;
        if let Some(t) = &self.tail {
            write!(f, " tail {t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_dominates_and_zero_kills() {
        assert!(Bound::Infinite > Bound::Finite(Rat::from_int(1_000_000)));
        assert_eq!(Bound::Infinite.times_coef(&Rat::zero()), Bound::zero());
        assert_eq!(Bound::Infinite.times_coef(&Rat::new(1, 1000)), Bound::Infinite);
        assert!(!Bound::Infinite.scaled_within(&Rat::new(1, 1_000_000), &Rat::from_int(1)));
    }

    #[test]
    fn canonical_trim() {
        let b = BoundFn::new(vec![Bound::Finite(Rat::one()), Bound::Infinite, Bound::Infinite], Some(Bound::Infinite));
        assert_eq!(b.head().len(), 1);
        assert_eq!(b.first_infinite(), Some(1));
        assert_eq!(b.at(7), Bound::Infinite);
        assert_eq!(b.to_string(), "(1) tail inf");
    }
}
