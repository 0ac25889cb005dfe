//! Closed f64 intervals with outward rounding.
//!
//! Every arithmetic result is widened by one ulp on each side before it is
//! returned, so the returned interval encloses the exact real result of the
//! operation applied to any reals inside the operands. Endpoints may reach
//! infinity under overflow; an infinite endpoint is still a sound enclosure.

use crate::error::{GeomError, Result};

/// A closed interval `[lo, hi]` of f64 endpoints, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

// Outward nudges. `next_down`/`next_up` step one ulp toward -inf/+inf and
// leave infinities in place, which keeps enclosures sound under overflow.
#[inline]
fn down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    /// Builds `[lo, hi]`. Endpoints must be finite and ordered.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(GeomError::BadEndpoints { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[x, x]`; exact, no widening.
    pub fn point(x: f64) -> Self {
        debug_assert!(x.is_finite());
        Self { lo: x, hi: x }
    }

    /// Unchecked constructor for internal results whose ordering is known.
    #[inline]
    fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Midpoint as an f64; not guaranteed to be the exact real midpoint.
    pub fn mid(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    /// Largest absolute value attained on the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value attained on the interval.
    pub fn mig(&self) -> f64 {
        if self.lo <= 0.0 && 0.0 <= self.hi {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Strict containment in the interior.
    pub fn contains_interval_strict(&self, other: &Interval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Signed gap to another interval: positive when disjoint (the distance
    /// between the closest endpoints), zero or negative when they touch or
    /// overlap (negative magnitude = overlap depth).
    pub fn gap(&self, other: &Interval) -> f64 {
        if self.hi < other.lo {
            other.lo - self.hi
        } else if other.hi < self.lo {
            self.lo - other.hi
        } else {
            -(self.hi.min(other.hi) - self.lo.max(other.lo))
        }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Interval::raw(lo, hi))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Interval {
        // Negation of f64 endpoints is exact: no widening.
        Interval::raw(-self.hi, -self.lo)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::raw(down(self.lo + other.lo), up(self.hi + other.hi))
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::raw(down(self.lo - other.hi), up(self.hi - other.lo))
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let mut lo = c[0];
        let mut hi = c[0];
        for &v in &c[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Interval::raw(down(lo), up(hi))
    }

    /// Division; errors when the denominator encloses zero.
    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains(0.0) {
            return Err(GeomError::DivisionByZero {
                lo: other.lo,
                hi: other.hi,
            });
        }
        let c = [
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        ];
        let mut lo = c[0];
        let mut hi = c[0];
        for &v in &c[1..] {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok(Interval::raw(down(lo), up(hi)))
    }

    /// Tight square: `[0, max^2]` when the interval straddles zero.
    pub fn sqr(&self) -> Interval {
        if self.contains(0.0) {
            Interval::raw(0.0, up(self.mag() * self.mag()))
        } else {
            let a = self.lo * self.lo;
            let b = self.hi * self.hi;
            Interval::raw(down(a.min(b)), up(a.max(b)))
        }
    }

    /// Enclosure of `sqrt` on the nonnegative part of the interval.
    ///
    /// A slightly negative lower endpoint (from outward rounding of a
    /// nonnegative quantity) is clamped to zero; an entirely negative
    /// interval is an error.
    pub fn sqrt(&self) -> Result<Interval> {
        if self.hi < 0.0 {
            return Err(GeomError::SqrtNegative {
                lo: self.lo,
                hi: self.hi,
            });
        }
        let lo = self.lo.max(0.0);
        let rlo = down(lo.sqrt()).max(0.0);
        let rhi = up(self.hi.sqrt());
        Ok(Interval::raw(rlo, rhi))
    }

    pub fn abs(&self) -> Interval {
        Interval::raw(self.mig(), self.mag())
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    /// Scales by an exact f64 factor.
    pub fn scale(&self, k: f64) -> Interval {
        self.mul(&Interval::point(k))
    }

    /// Translates by an exact f64 offset.
    pub fn shift(&self, k: f64) -> Interval {
        self.add(&Interval::point(k))
    }

    /// Splits at the midpoint. Returns `None` when the midpoint does not lie
    /// strictly between the endpoints (the interval is at f64 resolution).
    pub fn bisect(&self) -> Option<(Interval, Interval)> {
        let m = self.mid();
        if m <= self.lo || m >= self.hi {
            return None;
        }
        Some((Interval::raw(self.lo, m), Interval::raw(m, self.hi)))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}
