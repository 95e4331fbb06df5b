//! Representation and separation checks against independent oracles.
//!
//! `check_representation` compares `{all p_i >= 0}` with a polyhedron
//! whose membership is decided from its linear inequalities alone; the
//! polynomials are evaluated through their own expression trees and never
//! consult the target. `check_separation` tests the three separator
//! conditions (sign on each side, vanishing confined to the declared zero
//! set) at every sample a side yields.
//!
//! Far fields are handled twice: far members at radii 1e3 and 1e6 appear
//! among the samples, and along every provable recession direction the
//! restriction of each polynomial to the ray is analyzed by leading
//! coefficient, which decides the sign at every sufficiently large radius
//! at once.

use std::time::Instant;

use crate::budget::{sub_seed, SearchBudget};
use crate::error::{Error, Result};
use crate::expr::PolyExpr;
use crate::geometry::HPolyhedron;
use crate::interval::{BoxDomain, RatInterval};
use crate::poly::uni;
use crate::rational::{self, Rational};
use crate::separation::sides::{SideDesc, ZariskiSet};
use num_traits::{Signed, Zero};

use super::certify;
use super::sample::{core_window, exact_recession_dirs, stratified_sample};
use super::{Counterexample, StratumCount, VerificationReport, VerifyMode};

/// A separation claim: `p >= 0` on `s`, `p <= 0` on `t`, and `p` vanishes
/// on either side only inside `allowed_zeros`.
#[derive(Clone, Debug)]
pub struct SeparationContract {
    pub s: SideDesc,
    pub t: SideDesc,
    pub p: PolyExpr,
    pub allowed_zeros: ZariskiSet,
}

pub(crate) fn rep_values(polys: &[PolyExpr], x: &[Rational]) -> String {
    if polys.is_empty() {
        return "no polynomials (whole space)".to_string();
    }
    polys
        .iter()
        .map(|p| rational::format_rational(&p.eval(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn far_point(anchor: &[Rational], dir: &[Rational], radius: i64) -> Vec<Rational> {
    let r = rational::int(radius);
    anchor.iter().zip(dir).map(|(a, d)| a + &r * d).collect()
}

/// Region for certified representation checks: the coordinate bounds of
/// the target (unbounded coordinates clipped), widened by half a width
/// plus one on every side so the exterior is covered too.
fn cert_region(target: &HPolyhedron) -> Result<BoxDomain> {
    let w = core_window(target)?;
    Ok(w.lo
        .iter()
        .zip(&w.hi)
        .map(|(l, h)| {
            let margin = (h - l) / rational::int(2) + rational::int(1);
            RatInterval::new(l - &margin, h + &margin)
        })
        .collect())
}

/// Checks `{x : p_i(x) >= 0 for all i} == target`.
///
/// Sampled mode evaluates exact membership on both sides at stratified
/// samples and analyzes every polynomial along every provable recession
/// direction. Certified mode additionally subdivides a region covering the
/// target and its exterior; see the module docs for the gap taxonomy.
pub fn check_representation(
    polys: &[PolyExpr],
    target: &HPolyhedron,
    mode: VerifyMode,
    budget: &SearchBudget,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(mode);
    for p in polys {
        if p.dim() != target.dim {
            return Err(Error::Precondition(format!(
                "polynomial dimension {} does not match target dimension {}",
                p.dim(),
                target.dim
            )));
        }
    }

    let set = stratified_sample(
        target,
        budget.verify_samples,
        sub_seed(budget.seed, "verify-strata"),
    )?;
    for lp in &set.points {
        let t_in = target.contains(&lp.point);
        let r_in = polys.iter().all(|p| !p.eval(&lp.point).is_negative());
        if t_in != r_in {
            report.push_cex(Counterexample {
                value: rep_values(polys, &lp.point),
                detail: format!(
                    "stratum {}: target membership {t_in}, description membership {r_in}",
                    lp.label
                ),
                point: lp.point.clone(),
            });
        }
    }
    report.strata = set.counts();

    // Along a recession direction the target contains the whole ray, so
    // each polynomial restricted to the ray must have a nonnegative
    // leading coefficient; a negative one is eventually a counterexample.
    let anchor = set
        .points
        .iter()
        .find(|lp| lp.label == "interior")
        .map(|lp| lp.point.clone());
    if let Some(anchor) = anchor {
        for dir in exact_recession_dirs(target) {
            for (i, p) in polys.iter().enumerate() {
                let c = uni::trim(p.restrict_line(&anchor, &dir));
                let leading_bad = match c.len() {
                    0 => false,
                    _ => c.last().unwrap().is_negative(),
                };
                if leading_bad {
                    let far = far_point(&anchor, &dir, 1_000_000);
                    report.push_cex(Counterexample {
                        value: rational::format_rational(&p.eval(&far)),
                        detail: format!(
                            "polynomial {i} has negative leading coefficient along a recession direction"
                        ),
                        point: far,
                    });
                }
            }
        }
    }

    if mode == VerifyMode::Certified && report.counterexamples_total == 0 {
        let region = cert_region(target)?;
        certify::certify_representation(polys, target, region, budget, &mut report)?;
    }
    report.finalize(started);
    Ok(report)
}

/// Checks a separation contract: sign of `p` on each side, vanishing only
/// inside the declared zero set, and far-field behavior on polyhedral
/// sides by leading-coefficient analysis.
pub fn check_separation(
    contract: &SeparationContract,
    mode: VerifyMode,
    budget: &SearchBudget,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new(mode);
    if contract.s.dim() != contract.t.dim() || contract.p.dim() != contract.s.dim() {
        return Err(Error::Precondition(
            "separation contract mixes dimensions".into(),
        ));
    }

    for (side, label, positive) in [
        (&contract.s, "s-members", true),
        (&contract.t, "t-members", false),
    ] {
        let pts = side.sample(budget.verify_samples, sub_seed(budget.seed, label));
        for x in &pts {
            let v = contract.p.eval(x);
            let bad_sign = if positive { v.is_negative() } else { v.is_positive() };
            if bad_sign {
                report.push_cex(Counterexample {
                    value: rational::format_rational(&v),
                    detail: format!("wrong separator sign at a {label} sample"),
                    point: x.clone(),
                });
            } else if v.is_zero() && !contract.allowed_zeros.admits(x) {
                report.push_cex(Counterexample {
                    value: "0".to_string(),
                    detail: format!(
                        "separator vanishes at a {label} sample outside the declared zero set"
                    ),
                    point: x.clone(),
                });
            }
        }
        report.strata.push(StratumCount {
            label: label.to_string(),
            tested: pts.len(),
        });

        if let SideDesc::Polyhedron { poly } = side {
            if let Some(anchor) = pts.first() {
                for dir in exact_recession_dirs(poly) {
                    let c = uni::trim(contract.p.restrict_line(anchor, &dir));
                    if c.len() < 2 {
                        continue; // constant along the ray: settled pointwise
                    }
                    let leading = c.last().unwrap();
                    let bad = if positive {
                        leading.is_negative()
                    } else {
                        leading.is_positive()
                    };
                    if bad {
                        let far = far_point(anchor, &dir, 1_000_000);
                        report.push_cex(Counterexample {
                            value: rational::format_rational(&contract.p.eval(&far)),
                            detail: format!(
                                "separator leading coefficient has the wrong sign along a {label} recession direction"
                            ),
                            point: far,
                        });
                    }
                }
            }
        }
    }

    if mode == VerifyMode::Certified && report.counterexamples_total == 0 {
        certify::certify_separation(contract, budget, &mut report)?;
    }
    report.finalize(started);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{LinearForm, SparsePoly};
    use crate::rational::{int, rat};

    fn hp(dim: usize, rows: Vec<(Vec<i64>, i64)>) -> HPolyhedron {
        HPolyhedron::new(
            dim,
            rows.into_iter()
                .map(|(a, c)| LinearForm::new(a.into_iter().map(int).collect(), int(c)))
                .collect(),
        )
        .unwrap()
    }

    fn unit_square() -> HPolyhedron {
        hp(2, vec![(vec![1, 0], 0), (vec![-1, 0], 1), (vec![0, 1], 0), (vec![0, -1], 1)])
    }

    fn x_poly() -> SparsePoly {
        SparsePoly::var(2, 0)
    }

    fn y_poly() -> SparsePoly {
        SparsePoly::var(2, 1)
    }

    fn coord_band(v: SparsePoly) -> PolyExpr {
        // v (1 - v), nonnegative exactly on 0 <= v <= 1.
        let one = SparsePoly::constant(2, int(1));
        PolyExpr::leaf(&v * &(&one - &v))
    }

    fn small_budget() -> SearchBudget {
        SearchBudget {
            verify_samples: 400,
            cert_resolution: rat(1, 16),
            ..SearchBudget::default()
        }
    }

    #[test]
    fn exact_square_description_passes_certified() {
        let polys = vec![coord_band(x_poly()), coord_band(y_poly())];
        let report = check_representation(
            &polys,
            &unit_square(),
            VerifyMode::Certified,
            &small_budget(),
        )
        .unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.counterexamples_total, 0);
        assert_eq!(report.strict_unresolved, 0);
        assert!(report.gap_boxes > 0);
        assert!(report.certified_boxes > 10);
        assert!(report.strata.iter().any(|s| s.label == "interior" && s.tested > 0));
    }

    #[test]
    fn missing_constraint_is_caught() {
        // Only the x band: claims the infinite strip, not the square.
        let polys = vec![coord_band(x_poly())];
        let report = check_representation(
            &polys,
            &unit_square(),
            VerifyMode::Sampled,
            &small_budget(),
        )
        .unwrap();
        assert!(!report.passed);
        assert!(report.counterexamples_total > 0);
        assert!(report
            .counterexamples
            .iter()
            .any(|c| c.detail.contains("description membership true")));
    }

    #[test]
    fn quadrant_far_field_flags_eventually_negative_polynomial() {
        let quadrant = hp(2, vec![(vec![1, 0], 0), (vec![0, 1], 0)]);
        // x (100 - x) stays positive on the whole sampling window but goes
        // negative far out on a recession ray; y stays honest.
        let hundred = SparsePoly::constant(2, int(100));
        let bad = PolyExpr::leaf(&x_poly() * &(&hundred - &x_poly()));
        let polys = vec![bad, PolyExpr::leaf(y_poly())];
        let report =
            check_representation(&polys, &quadrant, VerifyMode::Sampled, &small_budget())
                .unwrap();
        assert!(!report.passed);
        assert!(report
            .counterexamples
            .iter()
            .any(|c| c.detail.contains("recession direction")));
        assert!(report
            .counterexamples
            .iter()
            .any(|c| c.detail.starts_with("stratum far")));
    }

    #[test]
    fn whole_space_description_is_empty_and_passes() {
        let report = check_representation(
            &[],
            &HPolyhedron::whole_space(2),
            VerifyMode::Sampled,
            &small_budget(),
        )
        .unwrap();
        assert!(report.passed);
        assert!(report.strata.iter().any(|s| s.label == "exterior-shell" && s.tested == 0));
    }

    #[test]
    fn halfplane_separator_passes_both_modes() {
        let s = SideDesc::Polyhedron { poly: hp(2, vec![(vec![-1, 0], 0)]) };
        let t = SideDesc::Polyhedron { poly: hp(2, vec![(vec![1, 0], -1)]) };
        let p = PolyExpr::linear(&LinearForm::new(vec![int(-2), int(0)], int(1)));
        let contract = SeparationContract {
            s,
            t,
            p,
            allowed_zeros: ZariskiSet::Empty { dim: 2 },
        };
        let sampled =
            check_separation(&contract, VerifyMode::Sampled, &small_budget()).unwrap();
        assert!(sampled.passed, "{sampled:?}");
        assert!(sampled
            .strata
            .iter()
            .all(|s| s.tested > 0));
        let certified =
            check_separation(&contract, VerifyMode::Certified, &small_budget()).unwrap();
        assert!(certified.passed, "{certified:?}");
        assert!(certified.certified_boxes > 0);
    }

    #[test]
    fn undeclared_zero_is_strict_in_certified_mode() {
        // p = (x^2 - 2)^2 vanishes at sqrt(2), an interior point of
        // s = [0, 2] no rational sample can hit.
        let s = SideDesc::Polyhedron { poly: hp(1, vec![(vec![1], 0), (vec![-1], 2)]) };
        let t = SideDesc::Empty { dim: 1 };
        let x = SparsePoly::var(1, 0);
        let shifted = &(&x * &x) - &SparsePoly::constant(1, int(2));
        let p = PolyExpr::leaf(shifted.clone()).pow(2);
        let mut contract = SeparationContract {
            s,
            t,
            p,
            allowed_zeros: ZariskiSet::Empty { dim: 1 },
        };
        let report =
            check_separation(&contract, VerifyMode::Certified, &small_budget()).unwrap();
        assert!(!report.passed);
        assert!(report.strict_unresolved > 0, "{report:?}");

        // Declaring the zero turns those boxes into reported gaps.
        contract.allowed_zeros = ZariskiSet::ZeroOf { poly: shifted };
        let report =
            check_separation(&contract, VerifyMode::Certified, &small_budget()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.gap_boxes > 0);
    }

    #[test]
    fn wrong_sign_side_is_fatal_in_certified_mode() {
        let s = SideDesc::Polyhedron { poly: hp(1, vec![(vec![1], 0), (vec![-1], 1)]) };
        let t = SideDesc::Empty { dim: 1 };
        let p = PolyExpr::linear(&LinearForm::new(vec![int(-1)], rat(1, 2)));
        let contract = SeparationContract {
            s,
            t,
            p,
            allowed_zeros: ZariskiSet::Empty { dim: 1 },
        };
        let report =
            check_separation(&contract, VerifyMode::Certified, &small_budget()).unwrap();
        assert!(!report.passed);
        assert!(report.counterexamples_total > 0);
    }
}
