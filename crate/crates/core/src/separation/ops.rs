//! Separator constructions driven by budgeted exponent searches.
//!
//! Every operation here follows the same discipline. The output polynomial
//! has a fixed algebraic shape with one or two free integer exponents; the
//! parts of its sign contract that follow from exact facts (interval bounds
//! over a window, even powers, certified endpoint inequalities) are treated
//! as structural, and everything else is earned by sampling under a seeded
//! budget, with unbounded sides additionally pinned down by the sign of the
//! leading coefficient along their recession lines. Constructions never
//! certify themselves: callers hand the result to the verification layer,
//! which re-derives membership from the side oracles.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{sub_seed, SearchBudget};
use crate::error::{Error, Result};
use crate::expr::PolyExpr;
use crate::poly::{uni, SparsePoly};
use crate::rational::{self, Rational};

use super::cushion::mu_poly;
use super::search::{find_exponent, FoundConstants, PredOutcome};
use super::sides::{sample_in_ball, SideDesc, ZariskiSet};

/// A constructed separator together with the evidence behind it.
///
/// `allowed_zeros` is the declared zero allowance: the construction claims
/// `{p = 0}` meets the union of the two sides only inside this set. The
/// verification layer treats any other zero as a counterexample.
#[derive(Clone, Debug)]
pub struct SepOutput {
    pub p: PolyExpr,
    pub constants: FoundConstants,
    pub allowed_zeros: ZariskiSet,
}

/// A local separator: valid on a ball around `center`.
#[derive(Clone, Debug)]
pub struct LocalSep {
    pub center: Vec<Rational>,
    pub p: PolyExpr,
}

/// Result of the cushion adjustment, which has a three-part sign contract
/// (`p >= f` on S, `sign p <= sign f` on T1, `p < 0` on T2) rather than a
/// separation contract, so no zero allowance is declared.
#[derive(Clone, Debug)]
pub struct AdjustOutput {
    pub p: PolyExpr,
    pub constants: FoundConstants,
}

/// Separates a bounded basic closed side from a disjoint closed side.
///
/// With defining inequalities `f_1 >= 0, ..., f_k >= 0` for `s`, each is
/// rescaled by a certified interval bound `sigma_i` so that `f_i / sigma_i`
/// maps the window of `s` into `[0, 2]`. The output is
///
/// `p = k + 1/m - sum_i (f_i / sigma_i - 1)^{2m}`.
///
/// On `s` every summand is at most 1, so `p >= 1/m > 0` holds structurally.
/// The exponent `m` is searched until every sample of `t` is strictly
/// negative; the rescaling keeps the exponent proportional to the relative
/// violation margin on `t` instead of the absolute one. For unbounded `t`
/// the restriction of `p` to a recession line has leading coefficient
/// `-sum (lead_i / sigma_i)^{2m} < 0` whenever some `f_i` is nonconstant
/// along the line, so the far field only needs that nonconstancy check.
pub fn separate_disjoint(s: &SideDesc, t: &SideDesc, budget: &SearchBudget) -> Result<SepOutput> {
    let dim = s.dim();
    if t.dim() != dim {
        return Err(Error::Precondition(format!(
            "side dimensions differ: {} vs {}",
            dim,
            t.dim()
        )));
    }
    let trivial = |c: i64| {
        let mut constants = FoundConstants::sampled(0);
        constants.revalidated = true;
        SepOutput {
            p: PolyExpr::constant(dim, rational::int(c)),
            constants,
            allowed_zeros: ZariskiSet::Empty { dim },
        }
    };
    if matches!(t, SideDesc::Empty { .. }) {
        return Ok(trivial(1));
    }
    if matches!(s, SideDesc::Empty { .. }) {
        return Ok(trivial(-1));
    }
    if s.is_unbounded() {
        return Err(Error::Precondition(
            "separation of disjoint sets needs a bounded first side".into(),
        ));
    }
    let fs = basic_polys(s)?;
    if fs.is_empty() {
        return Err(Error::Precondition(
            "first side has no defining inequalities".into(),
        ));
    }
    let k = fs.len();

    // Certified normalizers: f_i <= 2 sigma_i over the window, hence over s.
    let bx = s.window().to_box();
    let sigma_floor = rational::dyadic(1, 12);
    let sigmas: Vec<Rational> = fs
        .iter()
        .map(|f| {
            let hi = PolyExpr::leaf(f.clone()).interval_eval(&bx).hi;
            let sg = rational::round_dyadic_up(&(hi / rational::int(2)), 12);
            if sg > sigma_floor { sg } else { sigma_floor.clone() }
        })
        .collect();

    // Sampled disjointness and window-containment checks.
    let pre_seed = sub_seed(budget.seed, "separate-disjoint-pre");
    let s_pre = s.sample(budget.search_samples, sub_seed(pre_seed, "s"));
    let t_pre = t.sample(budget.search_samples, sub_seed(pre_seed, "t"));
    for x in &s_pre {
        if t.contains(x) {
            return Err(Error::Precondition(format!(
                "sides are not disjoint: both contain {}",
                fmt_point(x)
            )));
        }
        for (f, sg) in fs.iter().zip(&sigmas) {
            let v = f.eval(x);
            if v.is_negative() || v > rational::int(2) * sg {
                return Err(Error::Precondition(format!(
                    "first side escapes its declared window: inequality value {} at {}",
                    rational::format_rational(&v),
                    fmt_point(x)
                )));
            }
        }
    }
    for x in &t_pre {
        if s.contains(x) {
            return Err(Error::Precondition(format!(
                "sides are not disjoint: both contain {}",
                fmt_point(x)
            )));
        }
    }

    // Far-field precheck: along every recession line of t, some defining
    // inequality must vary, which already forces the leading coefficient of
    // the output negative for every exponent.
    if t.is_unbounded() {
        if t_pre.is_empty() {
            return Err(Error::Precondition(
                "could not sample the unbounded second side".into(),
            ));
        }
        for dir in &t.recession_dirs() {
            for anchor in t_pre.iter().take(3) {
                let varies = fs.iter().any(|f| {
                    uni::trim(PolyExpr::leaf(f.clone()).restrict_line(anchor, dir)).len() > 1
                });
                if !varies {
                    return Err(Error::BudgetExhausted(format!(
                        "separate-disjoint: every defining inequality of the first side \
                         is constant along the recession direction {} of the second side; \
                         the far field cannot be certified",
                        fmt_point(dir)
                    )));
                }
            }
        }
    }

    let norms: Vec<SparsePoly> = fs
        .iter()
        .zip(&sigmas)
        .map(|(f, sg)| f.scale(&(Rational::one() / sg)))
        .collect();
    let g_expr = |m: u32| -> PolyExpr {
        let offset = rational::int(k as i64) + Rational::one() / rational::int(m as i64);
        let mut parts = vec![PolyExpr::constant(dim, offset)];
        for g in &norms {
            let shifted = PolyExpr::sum(vec![
                PolyExpr::leaf(g.clone()),
                PolyExpr::constant(dim, rational::int(-1)),
            ]);
            parts.push(shifted.pow(2 * m).scale(rational::int(-1)));
        }
        PolyExpr::sum(parts)
    };

    let search = find_exponent("separate-disjoint", budget, |m, seed| {
        let offset = rational::int(k as i64) + Rational::one() / rational::int(m as i64);
        let t_pts = t.sample(budget.search_samples, seed);
        for x in &t_pts {
            let mut val = offset.clone();
            for g in &norms {
                val -= rational::pow_i(&(g.eval(x) - rational::int(1)), 2 * m as i32);
            }
            if !val.is_negative() {
                return Ok(PredOutcome::Fail {
                    witness: x.clone(),
                    detail: "not strictly negative at a second-side sample".into(),
                });
            }
        }
        Ok(PredOutcome::Pass)
    })?;

    let mut constants = FoundConstants::sampled(budget.search_samples);
    let sigma_max = sigmas.iter().cloned().max().unwrap();
    constants.push("sigma_max", sigma_max);
    constants.push_exponent("m", search.value);
    constants.push_exponent("k", k as u32);
    constants.revalidated = true;
    Ok(SepOutput {
        p: g_expr(search.value),
        constants,
        allowed_zeros: ZariskiSet::Empty { dim },
    })
}

/// Extends a local separator `f`, valid where `r <= eps`, to a global one.
///
/// Requires `r >= 0` with `{r = 0}` meeting `s` and `t` exactly in their
/// intersection. A coarse separator `g` is built for the trimmed sides
/// `{r >= eps/4}`, and the output is `p = f + (2r/eps)^N g`. The searched
/// exponent `N` must make the correction term dominated by `f` where
/// `r <= eps/4` and dominating where `r >= eps`, with a factor 2 margin on
/// both sides; in the hand-off band both ingredients are sign-valid.
pub fn globalize_local_separator(
    s: &SideDesc,
    t: &SideDesc,
    f: &PolyExpr,
    r: &SparsePoly,
    eps: &Rational,
    budget: &SearchBudget,
) -> Result<SepOutput> {
    let dim = s.dim();
    if t.dim() != dim || f.dim() != dim || r.dim() != dim {
        return Err(Error::Precondition("dimension mismatch in globalization".into()));
    }
    if !eps.is_positive() || eps > &rational::rat(1, 2) {
        return Err(Error::Precondition(format!(
            "globalization needs 0 < eps <= 1/2, got {}",
            rational::format_rational(eps)
        )));
    }
    if r.total_degree() == 0 {
        return Err(Error::Precondition(
            "r must be a nonconstant nonnegative polynomial".into(),
        ));
    }
    let quarter = eps / rational::int(4);

    let pre_seed = sub_seed(budget.seed, "globalize-pre");
    let s_pre = s.sample(budget.search_samples, sub_seed(pre_seed, "s"));
    let t_pre = t.sample(budget.search_samples, sub_seed(pre_seed, "t"));
    for (on_s, x) in tagged(&s_pre, &t_pre) {
        check_r_and_f(on_s, x, s, t, f, r, eps)?;
        let _ = quarter; // zone split happens inside the search predicate
    }

    // Coarse separator for the trimmed sides {r >= eps/4}.
    let cut = |side: &SideDesc| -> SideDesc {
        let shifted = r - &SparsePoly::constant(dim, quarter.clone());
        SideDesc::Intersection {
            parts: vec![
                side.clone(),
                SideDesc::BasicClosed {
                    polys: vec![shifted],
                    window: side.window(),
                    unbounded: true,
                },
            ],
        }
    };
    let mut gb = budget.clone();
    gb.seed = sub_seed(budget.seed, "globalize-core");
    let g = separate_disjoint(&cut(s), &cut(t), &gb)?;

    let scale = rational::int(2) / eps;
    let p_expr = |n: u32| -> PolyExpr {
        PolyExpr::sum(vec![
            f.clone(),
            PolyExpr::prod(vec![
                PolyExpr::leaf(r.clone()).scale(scale.clone()).pow(n),
                g.p.clone(),
            ]),
        ])
    };

    // Exact line restrictions along recession directions of t, computed
    // once; each search rung only combines their degrees and leading
    // coefficients.
    let mut lines: Vec<LineCtx> = Vec::new();
    if t.is_unbounded() {
        if t_pre.is_empty() {
            return Err(Error::Precondition(
                "could not sample the unbounded second side".into(),
            ));
        }
        for dir in &t.recession_dirs() {
            for anchor in t_pre.iter().take(3) {
                lines.push(LineCtx::new(f, r, &g.p, anchor, dir));
            }
        }
    }

    let two = rational::int(2);
    let search = find_exponent("globalize", budget, |n, seed| {
        let s_pts = s.sample(budget.search_samples, sub_seed(seed, "s"));
        let t_pts = t.sample(budget.search_samples, sub_seed(seed, "t"));
        for (on_s, x) in tagged(&s_pts, &t_pts) {
            check_r_and_f(on_s, x, s, t, f, r, eps)?;
            let rv = r.eval(x);
            let fv = f.eval(x);
            let w = rational::pow_i(&(&scale * &rv), n as i32) * g.p.eval(x);
            if rv <= quarter {
                if &two * w.abs() > fv.abs() {
                    return Ok(PredOutcome::Fail {
                        witness: x.clone(),
                        detail: "inner zone: correction not dominated by the local separator"
                            .into(),
                    });
                }
            } else if &rv >= eps && &two * fv.abs() > w.abs() {
                return Ok(PredOutcome::Fail {
                    witness: x.clone(),
                    detail: "outer zone: correction does not dominate the local separator".into(),
                });
            }
            let pv = fv + w;
            let sign_ok = if rv.is_zero() {
                pv.is_zero()
            } else if on_s {
                pv.is_positive()
            } else {
                pv.is_negative()
            };
            if !sign_ok {
                return Ok(PredOutcome::Fail {
                    witness: x.clone(),
                    detail: "sign contract fails at a sample".into(),
                });
            }
        }
        for line in &lines {
            if !line.leading_negative(&scale, n) {
                return Ok(PredOutcome::Fail {
                    witness: line.far.clone(),
                    detail: "leading coefficient along a recession line not negative".into(),
                });
            }
        }
        Ok(PredOutcome::Pass)
    })?;

    let mut constants = FoundConstants::sampled(budget.search_samples);
    constants.push("eps", eps.clone());
    constants.push_exponent("big_n", search.value);
    constants.revalidated = true;
    constants.absorb(g.constants);
    Ok(SepOutput {
        p: p_expr(search.value),
        constants,
        allowed_zeros: ZariskiSet::ZeroOf { poly: r.clone() },
    })
}

/// Merges local separators around pairwise distant centers into one that is
/// valid on the union of the balls `B(center_i, rho)`.
///
/// The output is `p = prod_i (p_i + (r_i / delta^2)^N)` with
/// `r_i = ||X - center_i||^2`. The search enforces, per ball: the cushion
/// term is dominated (`2 (r_i/delta^2)^N <= |p_i|`) at second-side members,
/// and every foreign factor is strictly positive on the whole ball. On the
/// first side the cushion only lifts values, so a correct sign of `p_i`
/// suffices there; in particular the locals may vanish on first-side
/// boundary patches through the center. Needs `rho < delta` and
/// `delta + rho < ||center_i - center_j||`.
pub fn merge_local_separators(
    s: &SideDesc,
    t: &SideDesc,
    locals: &[LocalSep],
    rho: &Rational,
    delta: &Rational,
    budget: &SearchBudget,
) -> Result<SepOutput> {
    let dim = s.dim();
    if locals.is_empty() {
        return Err(Error::Precondition("no local separators to merge".into()));
    }
    for l in locals {
        if l.center.len() != dim || l.p.dim() != dim {
            return Err(Error::Precondition("dimension mismatch in merge".into()));
        }
    }
    if t.dim() != dim {
        return Err(Error::Precondition("dimension mismatch in merge".into()));
    }
    if !rho.is_positive() || rho >= delta {
        return Err(Error::Precondition(format!(
            "merge needs 0 < rho < delta, got rho = {}, delta = {}",
            rational::format_rational(rho),
            rational::format_rational(delta)
        )));
    }
    let reach = delta + rho;
    let reach_sq = &reach * &reach;
    for (i, a) in locals.iter().enumerate() {
        for (j, b) in locals.iter().enumerate().skip(i + 1) {
            if rational::dist_sq(&a.center, &b.center) <= reach_sq {
                return Err(Error::Precondition(format!(
                    "centers {} and {} are closer than delta + rho = {}",
                    i,
                    j,
                    rational::format_rational(&reach)
                )));
            }
        }
    }

    let delta_sq = delta * delta;
    let per_ball = (budget.search_samples / locals.len()).clamp(32, 512);
    let two = rational::int(2);
    let search = find_exponent("merge", budget, |n, seed| {
        for (i, l) in locals.iter().enumerate() {
            let mut members = sample_in_ball(s, &l.center, rho, per_ball, sub_seed(seed, &format!("s{i}")));
            members.extend(sample_in_ball(t, &l.center, rho, per_ball, sub_seed(seed, &format!("t{i}"))));
            for x in &members {
                let pv = l.p.eval(x);
                let rv = rational::dist_sq(x, &l.center);
                if s.contains(x) {
                    // The cushion term only lifts values, so on the first
                    // side a correct sign settles the factor; zeros away
                    // from the center are absorbed, not amplified.
                    if pv.is_negative() {
                        return Err(Error::Precondition(format!(
                            "local separator {} has the wrong sign at {}",
                            i,
                            fmt_point(x)
                        )));
                    }
                    continue;
                }
                if pv.is_positive() {
                    return Err(Error::Precondition(format!(
                        "local separator {} has the wrong sign at {}",
                        i,
                        fmt_point(x)
                    )));
                }
                if pv.is_zero() && !rv.is_zero() {
                    return Err(Error::Precondition(format!(
                        "local separator {} vanishes away from its center at {}",
                        i,
                        fmt_point(x)
                    )));
                }
                let a = rational::pow_i(&(&rv / &delta_sq), n as i32);
                if &two * a > pv.abs() {
                    return Ok(PredOutcome::Fail {
                        witness: x.clone(),
                        detail: format!("cushion term not dominated inside ball {i}"),
                    });
                }
            }
        }
        for (j, lj) in locals.iter().enumerate() {
            let pts = ball_points(&lj.center, rho, per_ball, sub_seed(seed, &format!("b{j}")));
            for (i, li) in locals.iter().enumerate() {
                if i == j {
                    continue;
                }
                for y in &pts {
                    let val = li.p.eval(y)
                        + rational::pow_i(&(rational::dist_sq(y, &li.center) / &delta_sq), n as i32);
                    if !val.is_positive() {
                        return Ok(PredOutcome::Fail {
                            witness: y.clone(),
                            detail: format!("factor {i} not positive on ball {j}"),
                        });
                    }
                }
            }
        }
        Ok(PredOutcome::Pass)
    })?;

    let n = search.value;
    let factors: Vec<PolyExpr> = locals
        .iter()
        .map(|l| {
            PolyExpr::sum(vec![
                l.p.clone(),
                PolyExpr::dist_sq(&l.center)
                    .scale(Rational::one() / &delta_sq)
                    .pow(n),
            ])
        })
        .collect();
    let mut constants = FoundConstants::sampled(budget.search_samples);
    constants.push("rho", rho.clone());
    constants.push("delta", delta.clone());
    constants.push_exponent("big_n", n);
    constants.revalidated = true;
    Ok(SepOutput {
        p: PolyExpr::prod(factors),
        constants,
        allowed_zeros: ZariskiSet::Points {
            dim,
            points: locals.iter().map(|l| l.center.clone()).collect(),
        },
    })
}

/// Separates two sides whose intersection is the finite set of declared
/// contact points, given a local separator near each of them.
///
/// Composition of `merge_local_separators` and `globalize_local_separator`
/// with `r = prod_i ||X - center_i||^2`: `r` is nonnegative, vanishes
/// exactly on the contact set, and grows at infinity. The ball radius
/// starts at a quarter of the minimal pairwise center distance and is
/// halved on budget exhaustion (local separators are only trusted near
/// their centers, and this routine has no way to know how near).
pub fn separate_finite_intersection(
    s: &SideDesc,
    t: &SideDesc,
    locals: &[LocalSep],
    budget: &SearchBudget,
) -> Result<SepOutput> {
    if locals.is_empty() {
        return separate_disjoint(s, t, budget);
    }
    let dim = s.dim();
    for (i, a) in locals.iter().enumerate() {
        if !s.contains(&a.center) || !t.contains(&a.center) {
            return Err(Error::Precondition(format!(
                "declared contact point {} is not on both sides",
                fmt_point(&a.center)
            )));
        }
        for b in locals.iter().skip(i + 1) {
            if a.center == b.center {
                return Err(Error::Precondition(format!(
                    "duplicate contact point {}",
                    fmt_point(&a.center)
                )));
            }
        }
    }
    let centers: Vec<&Vec<Rational>> = locals.iter().map(|l| &l.center).collect();
    let pre_seed = sub_seed(budget.seed, "finite-intersection-pre");
    let s_pre = s.sample(budget.search_samples, sub_seed(pre_seed, "s"));
    let t_pre = t.sample(budget.search_samples, sub_seed(pre_seed, "t"));
    for (on_s, x) in tagged(&s_pre, &t_pre) {
        let other = if on_s { t.contains(x) } else { s.contains(x) };
        if other && !centers.iter().any(|c| *c == x) {
            return Err(Error::Precondition(format!(
                "sides intersect at undeclared point {}",
                fmt_point(x)
            )));
        }
    }

    let rho0 = if locals.len() >= 2 {
        let mut d2min: Option<Rational> = None;
        for (i, a) in locals.iter().enumerate() {
            for b in locals.iter().skip(i + 1) {
                let d2 = rational::dist_sq(&a.center, &b.center);
                if d2min.as_ref().map_or(true, |m| &d2 < m) {
                    d2min = Some(d2);
                }
            }
        }
        let d_lo = rational::sqrt_lower(&d2min.unwrap(), 24);
        let cand = rational::round_dyadic_down(&(d_lo / rational::int(4)), 20);
        if cand.is_positive() {
            cand
        } else {
            return Err(Error::Precondition(
                "contact points are too close together to build merge balls".into(),
            ));
        }
    } else {
        rational::rat(1, 2)
    };

    let mut last_err = String::new();
    for attempt in 0..5u32 {
        let rho = &rho0 / rational::pow_i(&rational::int(2), attempt as i32);
        let delta = rational::int(2) * &rho;
        let mut mb = budget.clone();
        mb.seed = sub_seed(budget.seed, &format!("finite-intersection-merge{attempt}"));
        let merged = match merge_local_separators(s, t, locals, &rho, &delta, &mb) {
            Ok(m) => m,
            Err(Error::BudgetExhausted(e)) => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut r = SparsePoly::one(dim);
        for l in locals {
            r = &r * &SparsePoly::dist_sq_poly(&l.center);
        }
        let mut eps = rational::pow_i(&rho, 2 * locals.len() as i32);
        let cap = rational::rat(1, 4);
        if eps > cap {
            eps = cap;
        }
        let mut gb = budget.clone();
        gb.seed = sub_seed(budget.seed, &format!("finite-intersection-glob{attempt}"));
        match globalize_local_separator(s, t, &merged.p, &r, &eps, &gb) {
            Ok(glob) => {
                let mut constants = FoundConstants::sampled(budget.search_samples);
                constants.push("ball_rho", rho);
                constants.push("eps", eps);
                constants.revalidated = true;
                constants.absorb(merged.constants);
                constants.absorb(glob.constants);
                return Ok(SepOutput {
                    p: glob.p,
                    constants,
                    allowed_zeros: ZariskiSet::Points {
                        dim,
                        points: locals.iter().map(|l| l.center.clone()).collect(),
                    },
                });
            }
            Err(Error::BudgetExhausted(e)) => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted(format!(
        "finite-intersection separation failed after 5 ball radii: {last_err}"
    )))
}

/// Adds a cushioned correction to `f` so that the result stays above `f` on
/// `s`, keeps the sign bound `sign p <= sign f` on `t1`, and turns strictly
/// negative on `t2`.
///
/// Hypotheses: `s` and `t2` are disjoint; `h >= 0` vanishes exactly on the
/// contact set of `s` and `t1` and is positive (growing at infinity) on
/// `t2`; `f` vanishes on `t1` only inside `s`; `t1` is compact. The
/// interior-emptiness of the contact set is not sample-checkable and is
/// trusted. Shape: `p = f + q h^k [mu(h - delta)]^{2k}` where `q` separates
/// `s` from `(t1 n {h >= delta}) u t2`, and `mu` is the cushion ramp that
/// is below 1/2 for arguments below 0 and above 2 beyond `delta`. On `s`
/// the correction is nonnegative (structural); where `h < delta` on `t1` it
/// decays geometrically in `k` (searched); on `t2` it dominates (searched).
/// `delta` starts at `min(alpha/4, 1)` for the sampled floor `alpha` of `h`
/// on `t2` and is halved when the search exhausts.
pub fn adjust_with_cushion(
    s: &SideDesc,
    t1: &SideDesc,
    t2: &SideDesc,
    h: &SparsePoly,
    f: &PolyExpr,
    budget: &SearchBudget,
) -> Result<AdjustOutput> {
    let dim = s.dim();
    if t1.dim() != dim || t2.dim() != dim || h.dim() != dim || f.dim() != dim {
        return Err(Error::Precondition("dimension mismatch in adjustment".into()));
    }
    if t1.is_unbounded() {
        return Err(Error::Precondition("adjustment needs a compact t1".into()));
    }

    let pre_seed = sub_seed(budget.seed, "adjust-pre");
    let s_pre = s.sample(budget.search_samples, sub_seed(pre_seed, "s"));
    let t1_pre = t1.sample(budget.search_samples, sub_seed(pre_seed, "t1"));
    let t2_pre = t2.sample(budget.search_samples, sub_seed(pre_seed, "t2"));
    for x in s_pre.iter().chain(&t1_pre).chain(&t2_pre) {
        if h.eval(x).is_negative() {
            return Err(Error::Precondition(format!(
                "h must be nonnegative, fails at {}",
                fmt_point(x)
            )));
        }
    }
    for x in &s_pre {
        if t2.contains(x) {
            return Err(Error::Precondition(format!(
                "s and t2 are not disjoint: both contain {}",
                fmt_point(x)
            )));
        }
    }
    for x in &t2_pre {
        if s.contains(x) {
            return Err(Error::Precondition(format!(
                "s and t2 are not disjoint: both contain {}",
                fmt_point(x)
            )));
        }
        if h.eval(x).is_zero() {
            return Err(Error::Precondition(format!(
                "h vanishes on t2 at {}",
                fmt_point(x)
            )));
        }
    }
    check_t1_zeros(&t1_pre, s, h, f)?;

    // Exact line restrictions of f and h along recession directions of t2.
    // h must grow there; the searched correction then dominates the far
    // field with a leading coefficient assembled from these restrictions.
    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>, Vec<Rational>, Vec<Rational>)> = Vec::new();
    if t2.is_unbounded() {
        if t2_pre.is_empty() {
            return Err(Error::Precondition(
                "could not sample the unbounded negative side".into(),
            ));
        }
        for dir in &t2.recession_dirs() {
            for anchor in t2_pre.iter().take(3) {
                let h_line = uni::trim(PolyExpr::leaf(h.clone()).restrict_line(anchor, dir));
                let grows = h_line.len() > 1 && h_line.last().map_or(false, |l| l.is_positive());
                if !grows {
                    return Err(Error::Precondition(format!(
                        "h does not grow along the recession direction {} of t2",
                        fmt_point(dir)
                    )));
                }
                let f_line = uni::trim(f.restrict_line(anchor, dir));
                pairs.push((anchor.clone(), dir.clone(), f_line, h_line));
            }
        }
    }

    let alpha = t2_pre.iter().map(|x| h.eval(x)).min();
    let delta0 = match &alpha {
        Some(a) => {
            let mut cand = a / rational::int(4);
            let one = Rational::one();
            if cand > one {
                cand = one;
            }
            let snapped = rational::round_dyadic_down(&cand, 24);
            if snapped.is_positive() {
                snapped
            } else {
                cand
            }
        }
        None => rational::rat(1, 4),
    };

    let two = rational::int(2);
    let mut last_err = String::new();
    for attempt in 0..6u32 {
        let delta = &delta0 / rational::pow_i(&two, attempt as i32);
        let t0 = SideDesc::Intersection {
            parts: vec![
                t1.clone(),
                SideDesc::BasicClosed {
                    polys: vec![h - &SparsePoly::constant(dim, delta.clone())],
                    window: t1.window(),
                    unbounded: true,
                },
            ],
        };
        let t_neg = if matches!(t2, SideDesc::Empty { .. }) {
            t0
        } else {
            SideDesc::Union { parts: vec![t0, t2.clone()] }
        };
        let mut qb = budget.clone();
        qb.seed = sub_seed(budget.seed, &format!("adjust-q{attempt}"));
        let q = separate_disjoint(s, &t_neg, &qb)?;
        let mu = mu_poly(&delta, &(&two * &delta))?;
        let mu_lead = mu.coeffs.last().cloned().unwrap_or_else(Rational::zero);
        let mu_deg = (mu.coeffs.len() - 1) as u32;
        let q_lines: Vec<Vec<Rational>> = pairs
            .iter()
            .map(|(anchor, dir, _, _)| uni::trim(q.p.restrict_line(anchor, dir)))
            .collect();

        let p_expr = |kk: u32| -> PolyExpr {
            let mu_of_h = PolyExpr::compose_univar(
                mu.coeffs.clone(),
                PolyExpr::sum(vec![
                    PolyExpr::leaf(h.clone()),
                    PolyExpr::constant(dim, -delta.clone()),
                ]),
            );
            PolyExpr::sum(vec![
                f.clone(),
                PolyExpr::prod(vec![
                    q.p.clone(),
                    PolyExpr::leaf(h.clone()).pow(kk),
                    mu_of_h.pow(2 * kk),
                ]),
            ])
        };

        let mut kb = budget.clone();
        kb.seed = sub_seed(budget.seed, &format!("adjust-k{attempt}"));
        let outcome = find_exponent("adjust", &kb, |kk, seed| {
            let s_pts = s.sample(budget.search_samples, sub_seed(seed, "s"));
            for x in &s_pts {
                if h.eval(x).is_negative() {
                    return Err(Error::Precondition(format!(
                        "h must be nonnegative, fails at {}",
                        fmt_point(x)
                    )));
                }
                if q.p.eval(x).is_negative() {
                    return Err(Error::Internal(format!(
                        "structural positivity of the disjoint separator fails at {}",
                        fmt_point(x)
                    )));
                }
            }
            let t1_pts = t1.sample(budget.search_samples, sub_seed(seed, "t1"));
            check_t1_zeros(&t1_pts, s, h, f)?;
            for x in &t1_pts {
                let fv = f.eval(x);
                if !fv.is_negative() {
                    continue;
                }
                let hv = h.eval(x);
                if hv >= delta {
                    if !q.p.eval(x).is_negative() {
                        return Ok(PredOutcome::Fail {
                            witness: x.clone(),
                            detail: "separator q not negative on the cushion support".into(),
                        });
                    }
                } else {
                    let mv = mu.eval(&(&hv - &delta));
                    let term = q.p.eval(x).abs()
                        * rational::pow_i(&(&hv * &mv * &mv), kk as i32);
                    if &two * term > fv.abs() {
                        return Ok(PredOutcome::Fail {
                            witness: x.clone(),
                            detail: "cushion decay too slow below the support threshold".into(),
                        });
                    }
                }
            }
            let t2_pts = t2.sample(budget.search_samples, sub_seed(seed, "t2"));
            for x in &t2_pts {
                let hv = h.eval(x);
                let mv = mu.eval(&(&hv - &delta));
                let pv = f.eval(x)
                    + q.p.eval(x) * rational::pow_i(&(&hv * &mv * &mv), kk as i32);
                if !pv.is_negative() {
                    return Ok(PredOutcome::Fail {
                        witness: x.clone(),
                        detail: "adjusted polynomial not negative on t2".into(),
                    });
                }
            }
            for ((anchor, dir, f_line, h_line), q_line) in pairs.iter().zip(&q_lines) {
                // term = q h^kk (mu o (h - delta))^{2kk} along the line
                let w = dl(q_line).and_then(|(dq, lq)| {
                    let (dh, lh) = dl(h_line).expect("h grows along the line");
                    let deg = dq + kk as usize * dh + 2 * kk as usize * mu_deg as usize * dh;
                    let lead = lq
                        * rational::pow_i(lh, kk as i32)
                        * rational::pow_i(
                            &(&mu_lead * rational::pow_i(lh, mu_deg as i32)),
                            2 * kk as i32,
                        );
                    Some((deg, lead))
                });
                let fl = dl(f_line).map(|(d, l)| (d, l.clone()));
                if !leading_negative(fl, w) {
                    return Ok(PredOutcome::Fail {
                        witness: far_point(anchor, dir),
                        detail: "leading coefficient along a t2 recession line not negative"
                            .into(),
                    });
                }
            }
            Ok(PredOutcome::Pass)
        });
        match outcome {
            Ok(found) => {
                let mut constants = FoundConstants::sampled(budget.search_samples);
                constants.push("delta", delta.clone());
                if let Some(a) = &alpha {
                    constants.push("alpha", a.clone());
                }
                constants.push_exponent("l", found.value);
                constants.push_exponent("m", found.value);
                constants.push_exponent("mu_k", mu.k);
                constants.revalidated = true;
                constants.absorb(q.constants);
                return Ok(AdjustOutput { p: p_expr(found.value), constants });
            }
            Err(Error::BudgetExhausted(e)) => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted(format!(
        "cushion adjustment failed after 6 delta halvings: {last_err}"
    )))
}

/// Defining polynomials of a basic closed side; the side equals
/// `{x : all returned polynomials >= 0}` exactly.
fn basic_polys(side: &SideDesc) -> Result<Vec<SparsePoly>> {
    match side {
        SideDesc::BasicClosed { polys, .. } => Ok(polys.clone()),
        SideDesc::Polyhedron { poly } => {
            Ok(poly.ineqs.iter().map(|l| l.to_poly()).collect())
        }
        SideDesc::Points { dim, points } => {
            if points.is_empty() {
                return Ok(vec![SparsePoly::constant(*dim, rational::int(-1))]);
            }
            let mut prod = SparsePoly::one(*dim);
            for p in points {
                prod = &prod * &SparsePoly::dist_sq_poly(p);
            }
            Ok(vec![prod.scale(&rational::int(-1))])
        }
        SideDesc::Intersection { parts } => {
            let mut out = Vec::new();
            for p in parts {
                out.extend(basic_polys(p)?);
            }
            Ok(out)
        }
        _ => Err(Error::Precondition(
            "first separation side must be basic closed: polynomial inequalities, \
             a polyhedron, finitely many points, or an intersection of those"
                .into(),
        )),
    }
}

/// Shared precondition checks for globalization: `r` nonnegative, `{r = 0}`
/// exactly the two-sided locus, and `f` sign-valid where `r <= eps`.
fn check_r_and_f(
    on_s: bool,
    x: &[Rational],
    s: &SideDesc,
    t: &SideDesc,
    f: &PolyExpr,
    r: &SparsePoly,
    eps: &Rational,
) -> Result<()> {
    let rv = r.eval(x);
    if rv.is_negative() {
        return Err(Error::Precondition(format!(
            "r is negative at {}",
            fmt_point(x)
        )));
    }
    let both = if on_s { t.contains(x) } else { s.contains(x) };
    if both && !rv.is_zero() {
        return Err(Error::Precondition(format!(
            "r misses the intersection point {}",
            fmt_point(x)
        )));
    }
    if !both && rv.is_zero() {
        return Err(Error::Precondition(format!(
            "r vanishes at the one-sided point {}",
            fmt_point(x)
        )));
    }
    if &rv <= eps {
        let fv = f.eval(x);
        let bad = if on_s {
            fv.is_negative() || (fv.is_zero() && !rv.is_zero())
        } else {
            fv.is_positive() || (fv.is_zero() && !rv.is_zero())
        };
        if bad {
            return Err(Error::Precondition(format!(
                "local separator is not valid at {} inside its validity region",
                fmt_point(x)
            )));
        }
    }
    Ok(())
}

/// `f` may vanish on `t1` only inside `s`, where `h` vanishes too.
fn check_t1_zeros(t1_pts: &[Vec<Rational>], s: &SideDesc, h: &SparsePoly, f: &PolyExpr) -> Result<()> {
    for x in t1_pts {
        if f.eval(x).is_zero() && (!s.contains(x) || !h.eval(x).is_zero()) {
            return Err(Error::Precondition(format!(
                "f vanishes on t1 away from the contact set at {}",
                fmt_point(x)
            )));
        }
    }
    Ok(())
}

/// Restrictions of the globalization ingredients to one recession line,
/// trimmed once up front; per-rung far-field checks only combine degrees
/// and leading coefficients instead of expanding the full line polynomial.
struct LineCtx {
    f: Vec<Rational>,
    r: Vec<Rational>,
    g: Vec<Rational>,
    far: Vec<Rational>,
}

impl LineCtx {
    fn new(
        f: &PolyExpr,
        r: &SparsePoly,
        g: &PolyExpr,
        anchor: &[Rational],
        dir: &[Rational],
    ) -> Self {
        LineCtx {
            f: uni::trim(f.restrict_line(anchor, dir)),
            r: uni::trim(PolyExpr::leaf(r.clone()).restrict_line(anchor, dir)),
            g: uni::trim(g.restrict_line(anchor, dir)),
            far: far_point(anchor, dir),
        }
    }

    /// The restriction of `f + (scale r)^n g` to the line has negative
    /// leading coefficient.
    fn leading_negative(&self, scale: &Rational, n: u32) -> bool {
        let w = match (dl(&self.r), dl(&self.g)) {
            (Some((dr, lr)), Some((dg, lg))) => Some((
                n as usize * dr + dg,
                rational::pow_i(&(scale * lr), n as i32) * lg,
            )),
            _ => None,
        };
        let fl = dl(&self.f).map(|(d, l)| (d, l.clone()));
        leading_negative(fl, w)
    }
}

/// Trimmed degree and leading coefficient; `None` for the zero polynomial.
fn dl(c: &[Rational]) -> Option<(usize, &Rational)> {
    c.last().map(|l| (c.len() - 1, l))
}

/// Sign of the leading coefficient of a sum of two line restrictions given
/// as (degree, leading) pairs. An exact tie that cancels counts as not
/// negative, so the check fails closed.
fn leading_negative(a: Option<(usize, Rational)>, b: Option<(usize, Rational)>) -> bool {
    match (a, b) {
        (None, None) => false,
        (Some((_, l)), None) | (None, Some((_, l))) => l.is_negative(),
        (Some((da, la)), Some((db, lb))) => {
            if da > db {
                la.is_negative()
            } else if db > da {
                lb.is_negative()
            } else {
                (la + lb).is_negative()
            }
        }
    }
}

fn far_point(anchor: &[Rational], dir: &[Rational]) -> Vec<Rational> {
    anchor
        .iter()
        .zip(dir)
        .map(|(a, d)| a + rational::int(1000) * d)
        .collect()
}

/// Deterministic points of the closed ball `B(center, rho)`: the center,
/// the axis extremes, and dyadic rejection samples.
fn ball_points(center: &[Rational], rho: &Rational, n: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = center.len();
    let rho2 = rho * rho;
    let mut out = vec![center.to_vec()];
    for i in 0..dim {
        for sign in [1i64, -1] {
            let mut p = center.to_vec();
            p[i] = &p[i] + rational::int(sign) * rho;
            out.push(p);
        }
    }
    let mut tries = 0usize;
    while out.len() < n + 2 * dim + 1 && tries < 8 * n {
        tries += 1;
        let x: Vec<Rational> = center
            .iter()
            .map(|c| {
                let k = rng.gen_range(-(1i64 << 12)..=(1i64 << 12));
                c + rational::dyadic(k, 12) * rho
            })
            .collect();
        if rational::dist_sq(&x, center) <= rho2 {
            out.push(x);
        }
    }
    out
}

fn tagged<'a>(
    s_pts: &'a [Vec<Rational>],
    t_pts: &'a [Vec<Rational>],
) -> impl Iterator<Item = (bool, &'a Vec<Rational>)> {
    s_pts
        .iter()
        .map(|x| (true, x))
        .chain(t_pts.iter().map(|x| (false, x)))
}

fn fmt_point(x: &[Rational]) -> String {
    let coords: Vec<String> = x.iter().map(rational::format_rational).collect();
    format!("({})", coords.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HPolyhedron;
    use crate::poly::LinearForm;
    use crate::rational::{int, rat};
    use crate::separation::search::Evidence;
    use crate::separation::sides::Window;

    fn small_budget() -> SearchBudget {
        SearchBudget { search_samples: 220, ..SearchBudget::default() }
    }

    fn unit_square() -> SideDesc {
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let one = SparsePoly::constant(2, int(1));
        SideDesc::BasicClosed {
            polys: vec![x.clone(), &one - &x, y.clone(), &one - &y],
            window: Window::new(vec![int(0), int(0)], vec![int(1), int(1)]).unwrap(),
            unbounded: false,
        }
    }

    fn halfplane_x_le(c: Rational) -> SideDesc {
        SideDesc::Polyhedron {
            poly: HPolyhedron { dim: 2, ineqs: vec![LinearForm::new(vec![int(-1), int(0)], c)] },
        }
    }

    fn halfplane_x_ge(c: Rational) -> SideDesc {
        SideDesc::Polyhedron {
            poly: HPolyhedron { dim: 2, ineqs: vec![LinearForm::new(vec![int(1), int(0)], -c)] },
        }
    }

    fn pt(a: i64, b: i64) -> Vec<Rational> {
        vec![int(a), int(b)]
    }

    fn ptr(a: Rational, b: Rational) -> Vec<Rational> {
        vec![a, b]
    }

    #[test]
    fn separates_square_from_halfplane() {
        let out = separate_disjoint(&unit_square(), &halfplane_x_le(rat(-1, 2)), &small_budget())
            .unwrap();
        assert!(out.p.eval(&ptr(rat(1, 2), rat(1, 2))).is_positive());
        assert!(out.p.eval(&ptr(rat(-1, 2), int(0))).is_negative());
        assert!(out.p.eval(&pt(-3, 7)).is_negative());
        assert!(out.constants.get("m").is_some());
        assert!(out.constants.revalidated);
        assert!(matches!(out.constants.evidence, Evidence::Sampled { .. }));
    }

    #[test]
    fn empty_sides_give_constants() {
        let empty = SideDesc::Empty { dim: 2 };
        let one = separate_disjoint(&unit_square(), &empty, &small_budget()).unwrap();
        assert_eq!(one.p.eval(&pt(5, 5)), int(1));
        let minus = separate_disjoint(&empty, &unit_square(), &small_budget()).unwrap();
        assert_eq!(minus.p.eval(&pt(5, 5)), int(-1));
    }

    #[test]
    fn overlap_is_a_precondition_failure() {
        let err = separate_disjoint(&unit_square(), &halfplane_x_le(rat(1, 2)), &small_budget())
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "got {err}");
    }

    #[test]
    fn disk_vs_far_halfplane_controls_the_far_field() {
        let one = SparsePoly::constant(2, int(1));
        let x2 = SparsePoly::monomial(2, vec![2, 0], int(1));
        let y2 = SparsePoly::monomial(2, vec![0, 2], int(1));
        let disk = SideDesc::BasicClosed {
            polys: vec![&(&one - &x2) - &y2],
            window: Window::new(vec![int(-1), int(-1)], vec![int(1), int(1)]).unwrap(),
            unbounded: false,
        };
        let out =
            separate_disjoint(&disk, &halfplane_x_ge(int(2)), &small_budget()).unwrap();
        assert!(out.p.eval(&pt(0, 0)).is_positive());
        assert!(out.p.eval(&pt(2, 0)).is_negative());
        assert!(out.p.eval(&pt(3, 5)).is_negative());
        assert!(out.p.eval(&pt(1_000_000, 0)).is_negative());
    }

    /// Region below the parabola `y = x^2 - x`, touching the unit square
    /// exactly at (0,0) and (1,0).
    fn parabola_region() -> SideDesc {
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let x2 = SparsePoly::monomial(2, vec![2, 0], int(1));
        SideDesc::BasicClosed {
            polys: vec![&(&x2 - &x) - &y],
            window: Window::new(vec![int(-1), int(-2)], vec![int(2), int(1)]).unwrap(),
            unbounded: true,
        }
    }

    /// Local separator `y + x - 2 x^2` for the square vs parabola region
    /// near the origin, and its mirror image near (1, 0).
    fn parabola_locals() -> Vec<LocalSep> {
        let x = SparsePoly::var(2, 0);
        let y = SparsePoly::var(2, 1);
        let x2 = SparsePoly::monomial(2, vec![2, 0], int(1));
        let near_zero = &(&y + &x) - &x2.scale(&int(2));
        // substitute x -> 1 - x for the mirror
        let one_minus_x = &SparsePoly::constant(2, int(1)) - &x;
        let near_one = near_zero.substitute(&[one_minus_x, y.clone()]);
        vec![
            LocalSep { center: pt(0, 0), p: PolyExpr::leaf(near_zero) },
            LocalSep { center: pt(1, 0), p: PolyExpr::leaf(near_one) },
        ]
    }

    #[test]
    fn merges_two_touch_point_separators() {
        let out = merge_local_separators(
            &unit_square(),
            &parabola_region(),
            &parabola_locals(),
            &rat(1, 8),
            &rat(1, 2),
            &small_budget(),
        )
        .unwrap();
        assert!(out.p.eval(&pt(0, 0)).is_zero());
        assert!(out.p.eval(&pt(1, 0)).is_zero());
        assert!(out.p.eval(&ptr(rat(1, 10), rat(1, 10))).is_positive());
        assert!(out.p.eval(&ptr(rat(9, 10), rat(1, 10))).is_positive());
        assert!(out.p.eval(&ptr(rat(1, 10), rat(-1, 10))).is_negative());
        assert!(matches!(out.allowed_zeros, ZariskiSet::Points { .. }));
    }

    #[test]
    fn merge_rejects_close_centers() {
        let err = merge_local_separators(
            &unit_square(),
            &parabola_region(),
            &parabola_locals(),
            &rat(3, 4),
            &rat(7, 8),
            &small_budget(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "got {err}");
    }

    #[test]
    fn globalizes_a_disjoint_pair_with_margin() {
        let s = unit_square();
        let t = halfplane_x_ge(int(2));
        let center = ptr(rat(3, 2), rat(1, 2));
        let r = SparsePoly::dist_sq_poly(&center);
        let f = PolyExpr::leaf(LinearForm::new(vec![int(-1), int(0)], rat(3, 2)).to_poly());
        let out =
            globalize_local_separator(&s, &t, &f, &r, &rat(1, 2), &small_budget()).unwrap();
        assert!(out.p.eval(&ptr(rat(1, 2), rat(1, 2))).is_positive());
        assert!(out.p.eval(&pt(1, 1)).is_positive());
        assert!(out.p.eval(&pt(2, 0)).is_negative());
        assert!(out.p.eval(&pt(5, 5)).is_negative());
        assert!(out.p.eval(&pt(1_000_000, 3)).is_negative());
        assert!(matches!(out.allowed_zeros, ZariskiSet::ZeroOf { .. }));
    }

    #[test]
    fn separates_square_from_parabola_region_through_touch_points() {
        let s = unit_square();
        let t = parabola_region();
        let out =
            separate_finite_intersection(&s, &t, &parabola_locals(), &small_budget()).unwrap();
        assert!(out.p.eval(&pt(0, 0)).is_zero());
        assert!(out.p.eval(&pt(1, 0)).is_zero());
        assert!(out.p.eval(&ptr(rat(1, 2), rat(1, 2))).is_positive());
        assert!(out.p.eval(&ptr(rat(1, 4), rat(3, 4))).is_positive());
        assert!(out.p.eval(&ptr(rat(1, 2), int(-1))).is_negative());
        assert!(out.p.eval(&pt(-2, -5)).is_negative());
        assert!(out.p.eval(&pt(0, -1_000_000)).is_negative());
    }

    #[test]
    fn empty_contact_list_delegates_to_disjoint_separation() {
        let out = separate_finite_intersection(
            &unit_square(),
            &halfplane_x_le(rat(-1, 2)),
            &[],
            &small_budget(),
        )
        .unwrap();
        assert!(out.p.eval(&ptr(rat(1, 2), rat(1, 2))).is_positive());
        assert!(out.p.eval(&pt(-1, 0)).is_negative());
        assert!(matches!(out.allowed_zeros, ZariskiSet::Empty { .. }));
    }

    fn far_box() -> SideDesc {
        SideDesc::Polyhedron {
            poly: HPolyhedron {
                dim: 2,
                ineqs: vec![
                    LinearForm::new(vec![int(1), int(0)], int(-2)),
                    LinearForm::new(vec![int(-1), int(0)], int(3)),
                    LinearForm::new(vec![int(0), int(1)], int(0)),
                    LinearForm::new(vec![int(0), int(-1)], int(1)),
                ],
            },
        }
    }

    #[test]
    fn adjusts_against_a_disjoint_compact_t1() {
        let one_plus_x2 =
            &SparsePoly::constant(2, int(1)) + &SparsePoly::monomial(2, vec![2, 0], int(1));
        let f = PolyExpr::constant(2, int(-1));
        let out = adjust_with_cushion(
            &unit_square(),
            &far_box(),
            &SideDesc::Empty { dim: 2 },
            &one_plus_x2,
            &f,
            &small_budget(),
        )
        .unwrap();
        // p >= f on s, p < 0 on t1
        assert!(out.p.eval(&ptr(rat(1, 2), rat(1, 2))) >= int(-1));
        assert!(out.p.eval(&ptr(rat(5, 2), rat(1, 2))).is_negative());
        assert!(out.p.eval(&ptr(rat(11, 5), rat(1, 5))).is_negative());
        assert!(out.constants.get("l").is_some());
    }

    #[test]
    fn adjust_rejects_negative_h_and_unbounded_t1() {
        let minus_one = SparsePoly::constant(2, int(-1));
        let f = PolyExpr::constant(2, int(-1));
        let err = adjust_with_cushion(
            &unit_square(),
            &far_box(),
            &SideDesc::Empty { dim: 2 },
            &minus_one,
            &f,
            &small_budget(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "got {err}");

        let h = SparsePoly::constant(2, int(1));
        let err = adjust_with_cushion(
            &unit_square(),
            &halfplane_x_ge(int(2)),
            &SideDesc::Empty { dim: 2 },
            &h,
            &f,
            &small_budget(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "got {err}");
    }
}
