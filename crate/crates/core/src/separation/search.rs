//! Budgeted searches for exponents and constants.
//!
//! Existence arguments in the underlying constructions promise that "some
//! sufficiently large N works" without naming one. Here those promises
//! become doubling searches against sampled predicates: a candidate is
//! accepted only after it passes, its successor passes, and a recheck with
//! a fresh sample seed passes, and the search reports how it spent its
//! budget either way. Sampled evidence is labeled as such; nothing in this
//! module upgrades it to a proof.

use crate::budget::{sub_seed, SearchBudget};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use serde::{Deserialize, Serialize};

/// Outcome of one sampled predicate evaluation.
#[derive(Clone, Debug)]
pub enum PredOutcome {
    Pass,
    Fail { witness: Vec<Rational>, detail: String },
}

impl PredOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, PredOutcome::Pass)
    }
}

/// Result of a successful exponent search.
#[derive(Clone, Debug)]
pub struct ExponentSearch {
    pub value: u32,
    /// Rungs evaluated, in order.
    pub tried: Vec<u32>,
}

/// Finds the smallest exponent in a doubling-then-bisection ladder for
/// which `pred` passes. `pred(n, seed)` must be (mathematically) monotone
/// in `n`: once true it stays true. Acceptance of a rung requires `pred(n)`,
/// `pred(n + 1)` and a recheck of `pred(n)` with an independent seed, which
/// keeps single lucky sample sets from terminating the search.
pub fn find_exponent<F>(label: &str, budget: &SearchBudget, mut pred: F) -> Result<ExponentSearch>
where
    F: FnMut(u32, u64) -> Result<PredOutcome>,
{
    let base_seed = sub_seed(budget.seed, label);
    let mut tried = Vec::new();
    let accept = |n: u32, pred: &mut F, tried: &mut Vec<u32>| -> Result<Option<PredOutcome>> {
        tried.push(n);
        let first = pred(n, sub_seed(base_seed, &format!("n{n}")))?;
        if !first.is_pass() {
            return Ok(Some(first));
        }
        let next = pred(n + 1, sub_seed(base_seed, &format!("n{}", n + 1)))?;
        if !next.is_pass() {
            return Ok(Some(next));
        }
        let again = pred(n, sub_seed(base_seed, &format!("confirm{n}")))?;
        if !again.is_pass() {
            return Ok(Some(again));
        }
        Ok(None)
    };

    let mut last_fail = 0u32;
    let mut passing: Option<u32> = None;
    let mut n = 1u32;
    let mut last_outcome: Option<PredOutcome> = None;
    while n <= budget.max_exponent {
        match accept(n, &mut pred, &mut tried)? {
            None => {
                passing = Some(n);
                break;
            }
            Some(out) => {
                last_fail = n;
                last_outcome = Some(out);
            }
        }
        n = n.saturating_mul(2);
    }
    let mut hi = match passing {
        Some(h) => h,
        None => {
            let detail = match last_outcome {
                Some(PredOutcome::Fail { witness, detail }) => format!(
                    "{detail}; witness {}",
                    format_point(&witness)
                ),
                _ => "no failing witness recorded".into(),
            };
            return Err(Error::BudgetExhausted(format!(
                "{label}: no exponent up to {} passed ({detail})",
                budget.max_exponent
            )));
        }
    };
    // Bisect down to the smallest passing rung; monotonicity makes the
    // bracket valid, and every candidate still has to clear the full
    // acceptance check.
    let mut lo = last_fail;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match accept(mid, &mut pred, &mut tried)? {
            None => hi = mid,
            Some(_) => lo = mid,
        }
    }
    Ok(ExponentSearch { value: hi, tried })
}

/// Halves `init` while `pred` keeps passing (up to `max_halvings` times)
/// and returns the smallest passing value; `init` itself must pass.
pub fn shrink_constant<F>(
    label: &str,
    budget: &SearchBudget,
    init: Rational,
    max_halvings: u32,
    mut pred: F,
) -> Result<Rational>
where
    F: FnMut(&Rational, u64) -> Result<PredOutcome>,
{
    let base_seed = sub_seed(budget.seed, label);
    let passes = |c: &Rational, step: u32, pred: &mut F| -> Result<bool> {
        let first = pred(c, sub_seed(base_seed, &format!("c{step}")))?;
        if !first.is_pass() {
            return Ok(false);
        }
        Ok(pred(c, sub_seed(base_seed, &format!("cc{step}")))?.is_pass())
    };
    let mut current = init;
    if !passes(&current, 0, &mut pred)? {
        return Err(Error::BudgetExhausted(format!(
            "{label}: initial constant {} fails its own check",
            rational::format_rational(&current)
        )));
    }
    for step in 1..=max_halvings {
        let half = &current / rational::int(2);
        if passes(&half, step, &mut pred)? {
            current = half;
        } else {
            break;
        }
    }
    Ok(current)
}

/// A named constant produced by a search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoundConstant {
    pub name: String,
    #[serde(with = "crate::json::serde_rational")]
    pub value: Rational,
}

/// What kind of check backs a batch of found constants.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Checked at finitely many sampled points.
    Sampled { samples: usize },
    /// Checked by exhaustive interval subdivision.
    Certified { boxes: usize },
}

/// The constants a construction settled on, with their evidence.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoundConstants {
    pub items: Vec<FoundConstant>,
    pub evidence: Evidence,
    /// True once an independent verification pass has rechecked the
    /// construction built from these constants.
    pub revalidated: bool,
}

impl FoundConstants {
    pub fn sampled(samples: usize) -> Self {
        FoundConstants {
            items: Vec::new(),
            evidence: Evidence::Sampled { samples },
            revalidated: false,
        }
    }

    pub fn certified(boxes: usize) -> Self {
        FoundConstants {
            items: Vec::new(),
            evidence: Evidence::Certified { boxes },
            revalidated: false,
        }
    }

    pub fn push(&mut self, name: &str, value: Rational) {
        self.items.push(FoundConstant { name: name.into(), value });
    }

    pub fn push_exponent(&mut self, name: &str, n: u32) {
        self.push(name, rational::int(n as i64));
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.items.iter().find(|c| c.name == name).map(|c| &c.value)
    }

    /// Folds another batch in, keeping the weaker evidence kind and the
    /// larger sample/box count within a kind.
    pub fn absorb(&mut self, other: FoundConstants) {
        self.items.extend(other.items);
        self.evidence = match (&self.evidence, &other.evidence) {
            (Evidence::Sampled { samples: a }, Evidence::Sampled { samples: b }) => {
                Evidence::Sampled { samples: *a.max(b) }
            }
            (Evidence::Certified { boxes: a }, Evidence::Certified { boxes: b }) => {
                Evidence::Certified { boxes: *a.max(b) }
            }
            (Evidence::Sampled { samples }, _) | (_, Evidence::Sampled { samples }) => {
                Evidence::Sampled { samples: *samples }
            }
        };
        self.revalidated = self.revalidated && other.revalidated;
    }
}

fn format_point(x: &[Rational]) -> String {
    let coords: Vec<String> = x.iter().map(rational::format_rational).collect();
    format!("({})", coords.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::SearchBudget;
    use crate::rational::{int, rat};

    #[test]
    fn finds_minimal_exponent() {
        let budget = SearchBudget::default();
        let found = find_exponent("test", &budget, |n, _seed| {
            Ok(if n >= 11 {
                PredOutcome::Pass
            } else {
                PredOutcome::Fail { witness: vec![int(n as i64)], detail: "too small".into() }
            })
        })
        .unwrap();
        assert_eq!(found.value, 11);
        assert!(found.tried.contains(&16));
    }

    #[test]
    fn exponent_one_is_reachable() {
        let budget = SearchBudget::default();
        let found = find_exponent("test", &budget, |_n, _seed| Ok(PredOutcome::Pass)).unwrap();
        assert_eq!(found.value, 1);
    }

    #[test]
    fn exhaustion_reports_witness() {
        let mut budget = SearchBudget::default();
        budget.max_exponent = 8;
        let err = find_exponent("hopeless", &budget, |_n, _seed| {
            Ok(PredOutcome::Fail { witness: vec![rat(1, 3)], detail: "margin negative".into() })
        })
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("hopeless"), "{msg}");
        assert!(msg.contains("1/3"), "{msg}");
        assert!(matches!(err, Error::BudgetExhausted(_)));
    }

    #[test]
    fn acceptance_needs_successor_and_fresh_seed() {
        let budget = SearchBudget::default();
        // Passes only at exactly n = 4: the n + 1 confirmation fails, so the
        // search must keep going and eventually exhaust.
        let mut budget8 = budget.clone();
        budget8.max_exponent = 8;
        let err = find_exponent("spiky", &budget8, |n, _seed| {
            Ok(if n == 4 {
                PredOutcome::Pass
            } else {
                PredOutcome::Fail { witness: vec![], detail: "off the spike".into() }
            })
        });
        assert!(err.is_err());
    }

    #[test]
    fn shrink_stops_at_first_failure() {
        let budget = SearchBudget::default();
        let got = shrink_constant("c", &budget, int(8), 10, |c, _seed| {
            Ok(if *c >= int(2) {
                PredOutcome::Pass
            } else {
                PredOutcome::Fail { witness: vec![c.clone()], detail: "too small".into() }
            })
        })
        .unwrap();
        assert_eq!(got, int(2));
    }

    #[test]
    fn shrink_rejects_failing_init() {
        let budget = SearchBudget::default();
        let err = shrink_constant("c", &budget, int(1), 4, |_c, _seed| {
            Ok(PredOutcome::Fail { witness: vec![], detail: "never".into() })
        });
        assert!(matches!(err, Err(Error::BudgetExhausted(_))));
    }

    #[test]
    fn constants_serde_and_absorb() {
        let mut a = FoundConstants::certified(100);
        a.push("rho", rat(1, 4));
        let mut b = FoundConstants::sampled(500);
        b.push_exponent("N", 6);
        a.absorb(b);
        assert!(matches!(a.evidence, Evidence::Sampled { samples: 500 }));
        assert_eq!(a.get("N"), Some(&int(6)));
        let s = serde_json::to_string(&a).unwrap();
        let back: FoundConstants = serde_json::from_str(&s).unwrap();
        assert_eq!(back.items.len(), 2);
        assert_eq!(back.get("rho"), Some(&rat(1, 4)));
    }
}
