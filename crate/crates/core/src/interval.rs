use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Sub-interval of the non-negative half line. All spectra and function
/// domains in the workbench live here; `hi` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
    closed_lo: bool,
    closed_hi: bool,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T, closed_lo: bool, closed_hi: bool) -> Result<Self> {
        if !Float::is_finite(lo) || Float::is_nan(hi) {
            return Err(Error::Usage("interval endpoints must not be NaN and lo must be finite".into()));
        }
        if lo < T::zero() {
            return Err(Error::DomainViolation { value: lo.as_f64(), lo: 0.0, hi: f64::INFINITY });
        }
        // a single point [c, c] is allowed; anything else needs hi > lo
        if hi < lo || (hi == lo && !(closed_lo && closed_hi)) {
            return Err(Error::Usage(format!(
                "interval upper endpoint {} must exceed lower endpoint {}",
                hi.as_f64(),
                lo.as_f64()
            )));
        }
        Ok(Self { lo, hi, closed_lo, closed_hi })
    }

    pub fn closed(lo: T, hi: T) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    /// The unit interval [0, 1].
    pub fn unit() -> Self {
        Self { lo: T::zero(), hi: T::one(), closed_lo: true, closed_hi: true }
    }

    /// The half-open unit interval (0, 1].
    pub fn unit_open_lo() -> Self {
        Self { lo: T::zero(), hi: T::one(), closed_lo: false, closed_hi: true }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn closed_lo(&self) -> bool {
        self.closed_lo
    }

    pub fn closed_hi(&self) -> bool {
        self.closed_hi
    }

    pub fn is_bounded(&self) -> bool {
        Float::is_finite(self.hi)
    }

    pub fn contains(&self, x: T) -> bool {
        let above = if self.closed_lo { x >= self.lo } else { x > self.lo };
        let below = if self.closed_hi { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// Membership with the interval widened by `slack` at each finite
    /// endpoint. Open/closed flags are ignored here: at floating precision
    /// the distinction is below the slack anyway.
    pub fn contains_within(&self, x: T, slack: T) -> bool {
        x >= self.lo - slack && (!self.is_bounded() || x <= self.hi + slack)
    }

    /// Distance from `x` to the interval (0 when inside).
    pub fn distance(&self, x: T) -> T {
        if x < self.lo {
            self.lo - x
        } else if self.is_bounded() && x > self.hi {
            x - self.hi
        } else {
            T::zero()
        }
    }

    /// Nearest point of the closure of the interval.
    pub fn clamp_into(&self, x: T) -> T {
        let upper = if self.is_bounded() { self.hi } else { x };
        Float::min(Float::max(x, self.lo), Float::max(upper, self.lo))
    }

    /// Bounded stand-in for samplers: an unbounded interval is replaced by
    /// `[lo, lo + width]`, a bounded one is returned as-is.
    pub fn capped(&self, width: T) -> Self {
        if self.is_bounded() {
            *self
        } else {
            Self { lo: self.lo, hi: self.lo + width, closed_lo: self.closed_lo, closed_hi: true }
        }
    }

    /// Default sampler cap of width 10.
    pub fn capped_default(&self) -> Self {
        self.capped(real(10.0))
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rules() {
        assert!(Interval::closed(0.0, 1.0).is_ok());
        assert!(Interval::closed(-0.1, 1.0).is_err());
        assert!(Interval::closed(1.0, 1.0).is_ok(), "point interval");
        assert!(Interval::new(1.0, 1.0, false, true).is_err());
        assert!(Interval::new(2.0, 1.0, true, true).is_err());
        assert!(Interval::new(0.0, f64::INFINITY, true, false).is_ok());
        assert!(Interval::new(f64::NAN, 1.0, true, true).is_err());
    }

    #[test]
    fn membership_respects_endpoints() {
        let half_open = Interval::new(0.0, 1.0, false, true).unwrap();
        assert!(!half_open.contains(0.0));
        assert!(half_open.contains(1.0));
        assert!(half_open.contains(0.5));

        let k = Interval::closed(0.0, 1.0).unwrap();
        assert!(k.contains_within(1.0 + 5e-10, 1e-9));
        assert!(!k.contains_within(1.0 + 2e-9, 1e-9));
    }

    #[test]
    fn capping_unbounded() {
        let k = Interval::new(0.5, f64::INFINITY, true, false).unwrap();
        let capped = k.capped_default();
        assert_eq!(capped.lo(), 0.5);
        assert_eq!(capped.hi(), 10.5);
        let bounded = Interval::closed(0.0, 3.0).unwrap();
        assert_eq!(bounded.capped_default(), bounded);
    }

    #[test]
    fn clamp_into_interval() {
        let k = Interval::closed(1.0, 2.0).unwrap();
        assert_eq!(k.clamp_into(0.5), 1.0);
        assert_eq!(k.clamp_into(2.5), 2.0);
        assert_eq!(k.clamp_into(1.5), 1.5);
        let unbounded = Interval::new(1.0, f64::INFINITY, true, false).unwrap();
        assert_eq!(unbounded.clamp_into(1e12), 1e12);
        assert_eq!(unbounded.clamp_into(0.0), 1.0);
    }
}
