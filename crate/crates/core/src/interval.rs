//! Exact rational interval arithmetic.
//!
//! Intervals carry exact rational endpoints, so every enclosure computed
//! here is a proof: if an interval evaluation of `p` over a box is
//! strictly positive, then `p > 0` everywhere on that box.

use crate::rational::Rational;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Rational::zero())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn nonneg(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn nonpos(&self) -> bool {
        !self.hi.is_positive()
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    pub fn scale(&self, s: &Rational) -> RatInterval {
        if s.is_negative() {
            RatInterval::new(&self.hi * s, &self.lo * s)
        } else {
            RatInterval::new(&self.lo * s, &self.hi * s)
        }
    }

    pub fn shift(&self, s: &Rational) -> RatInterval {
        RatInterval::new(&self.lo + s, &self.hi + s)
    }

    /// Tight power: even powers of sign-straddling intervals floor at zero.
    pub fn pow(&self, n: u32) -> RatInterval {
        if n == 0 {
            return RatInterval::point(Rational::from_integer(1.into()));
        }
        let lo_p = pow_rat(&self.lo, n);
        let hi_p = pow_rat(&self.hi, n);
        if n % 2 == 1 {
            return RatInterval::new(lo_p, hi_p);
        }
        if !self.lo.is_negative() {
            RatInterval::new(lo_p, hi_p)
        } else if !self.hi.is_positive() {
            RatInterval::new(hi_p, lo_p)
        } else {
            RatInterval::new(Rational::zero(), lo_p.max(hi_p))
        }
    }

    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        RatInterval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (RatInterval, RatInterval) {
        let m = self.midpoint();
        (
            RatInterval::new(self.lo.clone(), m.clone()),
            RatInterval::new(m, self.hi.clone()),
        )
    }

    pub fn abs_hi(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }
}

fn pow_rat(x: &Rational, n: u32) -> Rational {
    crate::rational::pow_i(x, n as i32)
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Axis-aligned box: one interval per coordinate.
pub type BoxDomain = Vec<RatInterval>;

/// Interval Horner evaluation of a dense univariate polynomial.
pub fn uni_eval_interval(c: &[Rational], t: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::zero();
    for coeff in c.iter().rev() {
        acc = acc.mul(t).shift(coeff);
    }
    acc
}

/// Corner candidates of a box (used to pick witnesses).
pub fn box_midpoint(b: &BoxDomain) -> Vec<Rational> {
    b.iter().map(|iv| iv.midpoint()).collect()
}

pub fn box_max_width(b: &BoxDomain) -> Rational {
    b.iter()
        .map(|iv| iv.width())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Splits the box along its widest coordinate.
pub fn box_bisect(b: &BoxDomain) -> (BoxDomain, BoxDomain) {
    let mut widest = 0;
    let mut w = b[0].width();
    for (i, iv) in b.iter().enumerate().skip(1) {
        let wi = iv.width();
        if wi > w {
            w = wi;
            widest = i;
        }
    }
    let (l, r) = b[widest].bisect();
    let mut left = b.to_vec();
    let mut right = b.to_vec();
    left[widest] = l;
    right[widest] = r;
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn mul_and_pow_are_tight() {
        let a = RatInterval::new(int(-2), int(3));
        let sq = a.pow(2);
        assert_eq!(sq.lo, int(0));
        assert_eq!(sq.hi, int(9));
        let cube = a.pow(3);
        assert_eq!(cube.lo, int(-8));
        assert_eq!(cube.hi, int(27));
    }

    #[test]
    fn horner_encloses_values() {
        // p(t) = 1 - t + 2 t^2 on [-1, 1/2]
        let c = vec![int(1), int(-1), int(2)];
        let iv = RatInterval::new(int(-1), rat(1, 2));
        let enc = uni_eval_interval(&c, &iv);
        for k in -4..=2 {
            let t = rat(k, 4);
            let v = crate::poly::uni::eval(&c, &t);
            assert!(enc.lo <= v && v <= enc.hi);
        }
    }
}
