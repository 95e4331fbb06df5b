//! Search and verification budgets.
//!
//! All searches in this crate are budgeted: they either return constants
//! that were re-validated against fresh samples, or fail with a witness.
//! The single knob `POLYREP_BUDGET_SCALE` (a positive rational, e.g. `2`
//! or `1/2`) scales every count below.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_traits::{Signed, ToPrimitive};

/// Budgets for exponent searches, constant searches, sampling and
/// certification. Constructed via [`SearchBudget::default`] and scaled with
/// [`SearchBudget::scaled`].
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Master RNG seed; every sampler derives a sub-seed from this and a
    /// textual label, so runs are reproducible end to end.
    pub seed: u64,
    /// Largest exponent tried by doubling searches.
    pub max_exponent: u32,
    /// Samples drawn per set and per candidate while searching.
    pub search_samples: usize,
    /// Samples drawn per set during final sampled verification.
    pub verify_samples: usize,
    /// Cap on the number of terms any polynomial may expand to.
    pub max_terms: usize,
    /// Cap on the total degree of any constructed polynomial.
    pub max_degree: u32,
    /// Certified subdivision stops once boxes are this wide.
    pub cert_resolution: Rational,
    /// Hard cap on boxes visited by one certification run.
    pub cert_max_boxes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            seed: 0x706f_6c79_7265_70,
            max_exponent: 64,
            search_samples: 1500,
            verify_samples: 10_000,
            max_terms: 400_000,
            max_degree: 96,
            cert_resolution: rational::dyadic(1, 8),
            cert_max_boxes: 4_000_000,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        SearchBudget { seed, ..SearchBudget::default() }
    }

    /// Returns a copy with every count multiplied by `scale` (rounded up,
    /// floors keep the budget usable for tiny scales).
    pub fn scaled(&self, scale: &Rational) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::Parse(format!(
                "budget scale must be positive, got {}",
                rational::format_rational(scale)
            )));
        }
        let mul = |n: usize, floor: usize| -> usize {
            let scaled = Rational::from_integer(n.into()) * scale;
            let v = scaled.ceil().to_integer().to_usize().unwrap_or(usize::MAX);
            v.max(floor)
        };
        let mul32 = |n: u32, floor: u32| -> u32 {
            let scaled = Rational::from_integer(n.into()) * scale;
            let v = scaled.ceil().to_integer().to_u32().unwrap_or(u32::MAX);
            v.max(floor)
        };
        Ok(SearchBudget {
            seed: self.seed,
            max_exponent: mul32(self.max_exponent, 4),
            search_samples: mul(self.search_samples, 64),
            verify_samples: mul(self.verify_samples, 256),
            max_terms: mul(self.max_terms, 10_000),
            max_degree: mul32(self.max_degree, 16),
            cert_resolution: self.cert_resolution.clone(),
            cert_max_boxes: mul(self.cert_max_boxes, 10_000),
        })
    }

    /// Applies `POLYREP_BUDGET_SCALE` from the environment, if set.
    pub fn scaled_from_env(&self) -> Result<Self> {
        match std::env::var("POLYREP_BUDGET_SCALE") {
            Ok(s) => {
                let r = rational::parse_rational(s.trim())?;
                self.scaled(&r)
            }
            Err(_) => Ok(self.clone()),
        }
    }
}

/// Deterministic sub-seed from a master seed and a textual label (FNV-1a;
/// the std hasher is randomized per process and would break reproducible
/// output).
pub fn sub_seed(seed: u64, label: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in label.as_bytes().iter().chain(seed.to_le_bytes().iter()) {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn sub_seed_distinguishes_labels_and_seeds() {
        assert_ne!(sub_seed(1, "a"), sub_seed(1, "b"));
        assert_ne!(sub_seed(1, "a"), sub_seed(2, "a"));
        assert_eq!(sub_seed(7, "x"), sub_seed(7, "x"));
    }

    #[test]
    fn scaling_keeps_floors() {
        let b = SearchBudget::default().scaled(&rat(1, 1_000_000)).unwrap();
        assert!(b.search_samples >= 64);
        assert!(b.max_exponent >= 4);
        assert!(SearchBudget::default().scaled(&rat(-1, 2)).is_err());
    }
}
