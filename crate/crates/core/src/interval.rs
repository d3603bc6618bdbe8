use crate::error::Error;
use crate::real::Real;

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self, Error> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Construction(format!(
                "interval endpoints must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    #[inline]
    pub fn len(&self) -> T {
        self.hi - self.lo
    }

    #[inline]
    pub fn mid(&self) -> T {
        (self.lo + self.hi) * T::of(0.5)
    }

    #[inline]
    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersect(&self, other: &Interval<T>) -> Option<Interval<T>> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo < hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }
}
