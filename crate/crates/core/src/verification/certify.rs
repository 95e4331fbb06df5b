//! Certified sign determination by adaptive box subdivision.
//!
//! Every enclosure below uses exact rational interval arithmetic, so a box
//! classified `In` or `Out` is proven, not estimated. Boxes that stay
//! undecided at the resolution limit are counted: boxes within one
//! resolution width of the target boundary (or of a declared zero set)
//! are reported as gaps, boxes further inside or outside fail the run.
//! The one-width margin exists because a polynomial that vanishes on the
//! boundary has an enclosure whose slack decays only linearly in the box
//! width, so the cell next to a boundary cell can straddle zero without
//! anything being wrong. Before any counterexample is recorded, the box
//! center is re-tested with exact pointwise arithmetic; a disagreement
//! between the interval proof and the pointwise oracle is an internal
//! error, never a report entry.

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::expr::PolyExpr;
use crate::geometry::HPolyhedron;
use crate::interval::{box_bisect, box_max_width, box_midpoint, BoxDomain, RatInterval};
use crate::poly::{LinearForm, SparsePoly};
use crate::rational;
use crate::separation::sides::{SideDesc, ZariskiSet};
use num_traits::{Signed, Zero};

use super::checks::{rep_values, SeparationContract};
use super::{Counterexample, VerificationReport};

/// Status of a box relative to a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxStatus {
    /// Every point of the box belongs to the set.
    In,
    /// No point of the box belongs to the set.
    Out,
    /// Undecided at this box size.
    Unknown,
}

fn lin_interval(l: &LinearForm, b: &BoxDomain) -> RatInterval {
    let mut acc = RatInterval::point(l.constant.clone());
    for (c, iv) in l.coeffs.iter().zip(b) {
        acc = acc.add(&iv.scale(c));
    }
    acc
}

pub(crate) fn poly_interval(p: &SparsePoly, b: &BoxDomain) -> RatInterval {
    let mut acc = RatInterval::zero();
    for (m, c) in p.terms() {
        let mut t = RatInterval::point(c.clone());
        for (iv, &e) in b.iter().zip(&m.0) {
            if e > 0 {
                t = t.mul(&iv.pow(e));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Enclosure-based membership status of a polyhedron over a box.
pub fn target_status(p: &HPolyhedron, b: &BoxDomain) -> BoxStatus {
    let mut all_in = true;
    for l in &p.ineqs {
        let iv = lin_interval(l, b);
        if iv.strictly_negative() {
            return BoxStatus::Out;
        }
        if !iv.nonneg() {
            all_in = false;
        }
    }
    if all_in {
        BoxStatus::In
    } else {
        BoxStatus::Unknown
    }
}

/// Enclosure-based status of `{all p_i >= 0}` over a box.
pub fn rep_status(polys: &[PolyExpr], b: &BoxDomain) -> BoxStatus {
    let mut all_in = true;
    for p in polys {
        let iv = p.interval_eval(b);
        if iv.strictly_negative() {
            return BoxStatus::Out;
        }
        if !iv.nonneg() {
            all_in = false;
        }
    }
    if all_in {
        BoxStatus::In
    } else {
        BoxStatus::Unknown
    }
}

/// Enclosure-based membership status of a side description over a box.
/// `In` and `Out` answers are proofs about every point of the box.
pub fn side_box_status(side: &SideDesc, b: &BoxDomain) -> BoxStatus {
    match side {
        SideDesc::Empty { .. } => BoxStatus::Out,
        SideDesc::BasicClosed { polys, .. } => {
            let mut all_in = true;
            for p in polys {
                let iv = poly_interval(p, b);
                if iv.strictly_negative() {
                    return BoxStatus::Out;
                }
                if !iv.nonneg() {
                    all_in = false;
                }
            }
            if all_in {
                BoxStatus::In
            } else {
                BoxStatus::Unknown
            }
        }
        SideDesc::Polyhedron { poly } => target_status(poly, b),
        SideDesc::ComplementOfInterior { poly } => {
            if poly.ineqs.is_empty() {
                return BoxStatus::Out;
            }
            let ivs: Vec<RatInterval> =
                poly.ineqs.iter().map(|l| lin_interval(l, b)).collect();
            if ivs.iter().any(|iv| iv.nonpos()) {
                BoxStatus::In
            } else if ivs.iter().all(|iv| iv.strictly_positive()) {
                BoxStatus::Out
            } else {
                BoxStatus::Unknown
            }
        }
        SideDesc::Points { points, .. } => {
            let inside: Vec<_> = points
                .iter()
                .filter(|p| p.iter().zip(b).all(|(x, iv)| iv.contains(x)))
                .collect();
            if inside.is_empty() {
                BoxStatus::Out
            } else if b.iter().all(|iv| iv.lo == iv.hi) {
                BoxStatus::In
            } else {
                BoxStatus::Unknown
            }
        }
        SideDesc::Union { parts } => {
            let mut any_unknown = false;
            for p in parts {
                match side_box_status(p, b) {
                    BoxStatus::In => return BoxStatus::In,
                    BoxStatus::Unknown => any_unknown = true,
                    BoxStatus::Out => {}
                }
            }
            if any_unknown {
                BoxStatus::Unknown
            } else {
                BoxStatus::Out
            }
        }
        SideDesc::Intersection { parts } => {
            let mut any_unknown = false;
            for p in parts {
                match side_box_status(p, b) {
                    BoxStatus::Out => return BoxStatus::Out,
                    BoxStatus::Unknown => any_unknown = true,
                    BoxStatus::In => {}
                }
            }
            if any_unknown {
                BoxStatus::Unknown
            } else {
                BoxStatus::In
            }
        }
        SideDesc::Residual { sigmas, qs, .. } => {
            let sig: Vec<RatInterval> = sigmas.iter().map(|p| poly_interval(p, b)).collect();
            let qiv: Vec<RatInterval> = qs.iter().map(|q| poly_interval(q, b)).collect();
            if sig.iter().any(|iv| iv.strictly_negative()) || qiv.iter().all(|iv| iv.nonneg()) {
                BoxStatus::Out
            } else if sig.iter().all(|iv| iv.nonneg())
                && qiv.iter().any(|iv| iv.strictly_negative())
            {
                BoxStatus::In
            } else {
                BoxStatus::Unknown
            }
        }
    }
}

fn zariski_touches(z: &ZariskiSet, b: &BoxDomain) -> bool {
    match z {
        ZariskiSet::Empty { .. } => false,
        ZariskiSet::Points { points, .. } => points
            .iter()
            .any(|p| p.iter().zip(b).all(|(x, iv)| iv.contains(x))),
        ZariskiSet::ZeroOf { poly } => poly_interval(poly, b).contains_zero(),
    }
}

fn split_into(stack: &mut Vec<BoxDomain>, bx: &BoxDomain) {
    let (l, r) = box_bisect(bx);
    stack.push(r);
    stack.push(l);
}

fn dilated(b: &BoxDomain, w: &crate::rational::Rational) -> BoxDomain {
    b.iter()
        .map(|iv| RatInterval::new(&iv.lo - w, &iv.hi + w))
        .collect()
}

/// Certifies `{all p_i >= 0} == target` over `region` by subdivision.
/// Records counterexamples and gap counts in `report`; returns an error
/// only for budget exhaustion or an internal inconsistency.
pub(crate) fn certify_representation(
    polys: &[PolyExpr],
    target: &HPolyhedron,
    region: BoxDomain,
    budget: &SearchBudget,
    report: &mut VerificationReport,
) -> Result<()> {
    let mut stack = vec![region];
    let mut boxes: u64 = 0;
    while let Some(bx) = stack.pop() {
        boxes += 1;
        if boxes > budget.cert_max_boxes as u64 {
            return Err(Error::BudgetExhausted(format!(
                "certification exceeded {} boxes",
                budget.cert_max_boxes
            )));
        }
        let t = target_status(target, &bx);
        let r = rep_status(polys, &bx);
        match (t, r) {
            (BoxStatus::In, BoxStatus::In) | (BoxStatus::Out, BoxStatus::Out) => {}
            (BoxStatus::In, BoxStatus::Out) | (BoxStatus::Out, BoxStatus::In) => {
                let c = box_midpoint(&bx);
                let t_in = target.contains(&c);
                let r_in = polys.iter().all(|p| !p.eval(&c).is_negative());
                if t_in == r_in {
                    return Err(Error::Internal(
                        "interval conflict vanished at the box center".into(),
                    ));
                }
                report.push_cex(Counterexample {
                    value: rep_values(polys, &c),
                    detail: format!(
                        "certified conflict box: target membership {t_in}, description membership {r_in}"
                    ),
                    point: c,
                });
                break;
            }
            _ => {
                if box_max_width(&bx) <= budget.cert_resolution {
                    let c = box_midpoint(&bx);
                    let t_in = target.contains(&c);
                    let r_in = polys.iter().all(|p| !p.eval(&c).is_negative());
                    if t_in != r_in {
                        report.push_cex(Counterexample {
                            value: rep_values(polys, &c),
                            detail: format!(
                                "center of unresolved box: target membership {t_in}, description membership {r_in}"
                            ),
                            point: c,
                        });
                        break;
                    }
                    // Boundary-adjacent means the target boundary passes
                    // within one resolution width of the box; description
                    // polynomials legitimately vanish on the boundary, so
                    // enclosures over such boxes cannot clear zero.
                    let near = dilated(&bx, &budget.cert_resolution);
                    let boundary_adjacent = t == BoxStatus::Unknown
                        || target
                            .ineqs
                            .iter()
                            .any(|l| lin_interval(l, &near).contains_zero());
                    if boundary_adjacent {
                        report.gap_boxes += 1;
                    } else {
                        report.strict_unresolved += 1;
                    }
                } else {
                    split_into(&mut stack, &bx);
                }
            }
        }
    }
    report.certified_boxes += boxes;
    report.resolution = Some(rational::format_rational(&budget.cert_resolution));
    Ok(())
}

/// Certifies one sign half of a separation contract over the side window.
fn certify_side(
    side: &SideDesc,
    p: &PolyExpr,
    z: &ZariskiSet,
    positive: bool,
    budget: &SearchBudget,
    report: &mut VerificationReport,
) -> Result<()> {
    let mut stack = vec![side.window().to_box()];
    let mut boxes: u64 = 0;
    let side_name = if positive { "first side" } else { "second side" };
    while let Some(bx) = stack.pop() {
        boxes += 1;
        if boxes + report.certified_boxes > budget.cert_max_boxes as u64 {
            return Err(Error::BudgetExhausted(format!(
                "certification exceeded {} boxes",
                budget.cert_max_boxes
            )));
        }
        let a = side_box_status(side, &bx);
        if a == BoxStatus::Out {
            continue;
        }
        let iv = p.interval_eval(&bx);
        let iv = if positive { iv } else { iv.neg() };
        if iv.strictly_positive() {
            continue;
        }
        if iv.strictly_negative() && a == BoxStatus::In {
            let c = box_midpoint(&bx);
            let v = p.eval(&c);
            let ok_sign = if positive { !v.is_negative() } else { !v.is_positive() };
            if ok_sign || !side.contains(&c) {
                return Err(Error::Internal(
                    "interval conflict vanished at the box center".into(),
                ));
            }
            report.push_cex(Counterexample {
                value: rational::format_rational(&v),
                detail: format!("wrong separator sign on a certified {side_name} box"),
                point: c,
            });
            break;
        }
        if box_max_width(&bx) > budget.cert_resolution {
            split_into(&mut stack, &bx);
            continue;
        }
        let c = box_midpoint(&bx);
        if side.contains(&c) {
            let v = p.eval(&c);
            let bad_sign = if positive { v.is_negative() } else { v.is_positive() };
            if bad_sign {
                report.push_cex(Counterexample {
                    value: rational::format_rational(&v),
                    detail: format!("wrong separator sign on the {side_name}"),
                    point: c,
                });
                break;
            }
            if v.is_zero() && !z.admits(&c) {
                report.push_cex(Counterexample {
                    value: "0".to_string(),
                    detail: format!(
                        "separator vanishes on the {side_name} outside the declared zero set"
                    ),
                    point: c,
                });
                break;
            }
        }
        if a == BoxStatus::Unknown || zariski_touches(z, &dilated(&bx, &budget.cert_resolution)) {
            report.gap_boxes += 1;
        } else {
            report.strict_unresolved += 1;
        }
    }
    report.certified_boxes += boxes;
    report.resolution = Some(rational::format_rational(&budget.cert_resolution));
    Ok(())
}

/// Certifies both sign halves of a separation contract.
pub(crate) fn certify_separation(
    contract: &SeparationContract,
    budget: &SearchBudget,
    report: &mut VerificationReport,
) -> Result<()> {
    certify_side(
        &contract.s,
        &contract.p,
        &contract.allowed_zeros,
        true,
        budget,
        report,
    )?;
    if report.counterexamples_total > 0 {
        return Ok(());
    }
    certify_side(
        &contract.t,
        &contract.p,
        &contract.allowed_zeros,
        false,
        budget,
        report,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ival(a: i64, b: i64) -> RatInterval {
        RatInterval::new(int(a), int(b))
    }

    #[test]
    fn poly_interval_encloses_samples() {
        // x^2 y - y + 3 over [-1,2] x [0,1]
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let xxy = &(&x * &x) * &y;
        let p = &(&xxy - &y) + &SparsePoly::constant(2, int(3));
        let b = vec![ival(-1, 2), ival(0, 1)];
        let enc = poly_interval(&p, &b);
        for (u, v) in [(0i64, 0i64), (2, 1), (-1, 1), (1, 1)] {
            let val = p.eval(&[int(u), int(v)]);
            assert!(enc.lo <= val && val <= enc.hi);
        }
    }

    #[test]
    fn residual_status_needs_a_negative_q() {
        let x = SparsePoly::var(1, 0);
        let side = SideDesc::Residual {
            sigmas: vec![x.clone()],
            qs: vec![&x - &SparsePoly::constant(1, int(2))],
            window: crate::separation::sides::Window::cube(1, 4),
            unbounded: false,
        };
        // x in [1/2, 1]: sigma >= 0 proven, q <= -1 proven.
        let b_in = vec![RatInterval::new(rat(1, 2), int(1))];
        assert_eq!(side_box_status(&side, &b_in), BoxStatus::In);
        // x in [3, 4]: q >= 1 everywhere.
        assert_eq!(side_box_status(&side, &vec![ival(3, 4)]), BoxStatus::Out);
        // x in [-2, -1]: sigma < 0 everywhere.
        assert_eq!(side_box_status(&side, &vec![ival(-2, -1)]), BoxStatus::Out);
        // x in [-1, 1]: undecided.
        assert_eq!(side_box_status(&side, &vec![ival(-1, 1)]), BoxStatus::Unknown);
    }

    #[test]
    fn complement_of_interior_status() {
        use crate::poly::LinearForm;
        // Complement of the open unit square interior.
        let sq = HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], int(0)),
                LinearForm::new(vec![int(-1), int(0)], int(1)),
                LinearForm::new(vec![int(0), int(1)], int(0)),
                LinearForm::new(vec![int(0), int(-1)], int(1)),
            ],
        )
        .unwrap();
        let side = SideDesc::ComplementOfInterior { poly: sq };
        assert_eq!(side_box_status(&side, &vec![ival(2, 3), ival(0, 1)]), BoxStatus::In);
        let core = vec![
            RatInterval::new(rat(1, 4), rat(3, 4)),
            RatInterval::new(rat(1, 4), rat(3, 4)),
        ];
        assert_eq!(side_box_status(&side, &core), BoxStatus::Out);
        assert_eq!(side_box_status(&side, &vec![ival(0, 2), ival(0, 1)]), BoxStatus::Unknown);
    }
}
