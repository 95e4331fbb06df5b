//! Cushion polynomials.
//!
//! `kappa_poly` builds a univariate polynomial `kappa(t) = t^2 pi(t)` that
//! is tiny on `[-rho, 0]`, sits in a band `[2, cap]` on `[delta, rho]`, and
//! stays below `cap` on `[0, rho]`. The cofactor profile is found
//! heuristically (floating-point Chebyshev interpolation of an analytic
//! plateau shape), snapped to dyadic coefficients, and then every condition
//! is certified in exact rational arithmetic with first-order Taylor
//! enclosures, so nothing depends on the quality of the heuristic.
//! `mu_poly` is the even-power ramp whose two conditions reduce to exact
//! endpoint checks by monotonicity.

use crate::error::{Error, Result};
use crate::poly::{uni, SparsePoly};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};

/// Parameters of `kappa_{delta,rho,m}`.
#[derive(Clone, Debug)]
pub struct CushionParams {
    pub delta: Rational,
    pub rho: Rational,
    pub m: u32,
}

impl CushionParams {
    pub fn new(delta: Rational, rho: Rational, m: u32) -> Result<Self> {
        if !delta.is_positive() || delta >= rho {
            return Err(Error::Precondition(format!(
                "cushion parameters need 0 < delta < rho, got delta = {}, rho = {}",
                rational::format_rational(&delta),
                rational::format_rational(&rho)
            )));
        }
        if m == 0 {
            return Err(Error::Precondition("cushion exponent m must be >= 1".into()));
        }
        Ok(CushionParams { delta, rho, m })
    }
}

/// A certified cushion polynomial in the original variable `t`.
#[derive(Clone, Debug)]
pub struct Cushion {
    /// Dense coefficients, ascending powers of `t`.
    pub coeffs: Vec<Rational>,
    pub params: CushionParams,
    /// Upper bound certified on `[0, rho]` (3 by default).
    pub cap: Rational,
    /// Positive lower bound certified for the cofactor `pi` on `[-rho, rho]`.
    pub pi_floor: Rational,
    /// Interval boxes visited by the certification run.
    pub boxes: usize,
}

impl Cushion {
    pub fn eval(&self, t: &Rational) -> Rational {
        uni::eval(&self.coeffs, t)
    }

    pub fn to_poly(&self) -> SparsePoly {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c.clone()))
            .collect();
        SparsePoly::from_terms(1, terms).expect("well-formed univariate terms")
    }
}

/// `kappa_{delta,rho,m}` with the default upper cap 3.
pub fn kappa_poly(params: &CushionParams) -> Result<Cushion> {
    kappa_poly_capped(params, &rational::int(3))
}

/// `kappa` with a custom upper cap in (2, 3]. The tighter 9/4 cap is used
/// where downstream products need the plateau close to 2.
pub fn kappa_poly_capped(params: &CushionParams, cap: &Rational) -> Result<Cushion> {
    if cap <= &rational::int(2) {
        return Err(Error::Precondition("kappa cap must exceed 2".into()));
    }
    let a = &params.delta / &params.rho;
    let small = rational::pow_i(&rational::rat(1, 4), params.m as i32);
    let ladder = [24usize, 32, 40, 48, 56, 64, 80, 96, 112];
    let mut last_err = String::from("no degree passed the floating-point pre-check");
    for &deg in &ladder {
        let cheb_f = fit_profile(
            rational::to_f64(&a),
            rational::to_f64(&small),
            rational::to_f64(cap),
            deg,
        );
        let cheb: Vec<Rational> = trim_snapped(cheb_f.iter().map(|&c| float_to_dyadic(c, 44)).collect());
        // Cheap float screen; exact certification only runs on plausible fits.
        if !float_gate(&cheb, rational::to_f64(&a), rational::to_f64(&small), rational::to_f64(cap)) {
            continue;
        }
        match certify_unit(&cheb, &a, &small, cap) {
            Ok((floor, boxes)) => {
                return Ok(Cushion {
                    coeffs: rescale_to_t(&cheb, &params.rho),
                    params: params.clone(),
                    cap: cap.clone(),
                    pi_floor: floor,
                    boxes,
                });
            }
            Err(e) => last_err = e.to_string(),
        }
    }
    Err(Error::BudgetExhausted(format!(
        "kappa certification failed up to cofactor degree {}: {last_err}",
        ladder.last().unwrap()
    )))
}

/// Monomial coefficients of `kappa(t) = (t/rho)^2 pi(t/rho)` from the
/// Chebyshev coefficients of `pi` in the unit variable.
fn rescale_to_t(cheb: &[Rational], rho: &Rational) -> Vec<Rational> {
    let mono = cheb_to_monomial(cheb);
    let mut unit = vec![Rational::zero(), Rational::zero()];
    unit.extend(mono);
    let mut out = Vec::with_capacity(unit.len());
    let mut scale = Rational::one();
    for c in unit {
        out.push(c * &scale);
        scale /= rho;
    }
    uni::trim(out)
}

/// `mu_{delta,rho}(t) = ((t + 2 rho - delta/2) / (2 rho))^{2k}` with the
/// smallest `k >= 1` satisfying the two endpoint conditions. The base is
/// affine and positive on `[-rho, oo)`, so mu is increasing there and the
/// endpoint checks `mu(0) < 1/2`, `mu(delta) > 2` certify the conditions on
/// the whole intervals exactly.
#[derive(Clone, Debug)]
pub struct Mu {
    pub coeffs: Vec<Rational>,
    pub k: u32,
    pub delta: Rational,
    pub rho: Rational,
}

impl Mu {
    pub fn eval(&self, t: &Rational) -> Rational {
        uni::eval(&self.coeffs, t)
    }
}

pub fn mu_poly(delta: &Rational, rho: &Rational) -> Result<Mu> {
    if !delta.is_positive() || delta >= rho {
        return Err(Error::Precondition(format!(
            "mu parameters need 0 < delta < rho, got delta = {}, rho = {}",
            rational::format_rational(delta),
            rational::format_rational(rho)
        )));
    }
    let two_rho = rational::int(2) * rho;
    let b0 = (&two_rho - delta / rational::int(2)) / &two_rho; // base at t = 0, in (0,1)
    let b1 = (delta + &two_rho - delta / rational::int(2)) / &two_rho; // base at t = delta, > 1
    let half = rational::rat(1, 2);
    let two = rational::int(2);
    let mut k = 1u32;
    loop {
        let lo = rational::pow_i(&b0, 2 * k as i32);
        let hi = rational::pow_i(&b1, 2 * k as i32);
        if lo < half && hi > two {
            break;
        }
        k += 1;
        if k > 10_000 {
            return Err(Error::Internal("mu exponent search runaway".into()));
        }
    }
    // ((t + 2 rho - delta/2) / (2 rho))^{2k} expanded exactly.
    let shift = (&two_rho - delta / rational::int(2)) / &two_rho;
    let lin = vec![shift, Rational::one() / &two_rho];
    let coeffs = uni::pow(&lin, 2 * k);
    Ok(Mu { coeffs, k, delta: delta.clone(), rho: rho.clone() })
}

// ---------------------------------------------------------------------------
// Heuristic profile fit (floating point; correctness never depends on it).

/// erf to about 1e-14 via the Taylor series, clamped in the far tails.
fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x > 5.5 {
        return 1.0;
    }
    let mut term = x;
    let mut acc = x;
    let x2 = x * x;
    let mut n = 0usize;
    while term.abs() > 1e-18 && n < 200 {
        n += 1;
        term *= -x2 / n as f64;
        acc += term / (2 * n + 1) as f64;
    }
    acc * 2.0 / std::f64::consts::PI.sqrt()
}

const FLAT_B2: f64 = 0.09; // b^2 with b = 3/10, pole offset of the compensator
const FLAT_K: usize = 10; // truncation of the geometric compensator

/// Truncated geometric compensator: sum_{k<=K} b^{2k} / (u^2+b^2)^{k+1}.
/// Satisfies u^2 g(u) = 1 - r^{K+1} <= 1 with r = b^2/(u^2+b^2), so the
/// plateau of u^2 g is flat to 0.4% for u >= 1/8 while g stays bounded.
fn flat_inv_sq(u: f64) -> f64 {
    let s = u * u + FLAT_B2;
    let r = FLAT_B2 / s;
    let mut acc = 0.0;
    let mut pw = 1.0 / s;
    for _ in 0..=FLAT_K {
        acc += pw;
        pw *= r;
    }
    acc
}

/// Target for the cofactor `pi(u)`: a floor plus an analytic step times the
/// compensator, so that `u^2 pi(u)` is a step from ~0 to a plateau around
/// `p_mid` with the transition inside `(0, a)`.
fn profile(u: f64, a: f64, fl: f64, p_mid: f64) -> f64 {
    let w = a / 6.5;
    let sigma = 0.5 * (1.0 + erf((u - a / 2.0) / (w * std::f64::consts::SQRT_2)));
    2.0 * fl + p_mid * sigma * flat_inv_sq(u)
}

/// Chebyshev interpolation coefficients of the profile at `deg + 1`
/// Gauss-Chebyshev nodes.
fn fit_profile(a: f64, small: f64, cap: f64, deg: usize) -> Vec<f64> {
    let fl = small / 6.0;
    let p_mid = 2.0 + 0.45 * (cap - 2.0);
    let n = deg + 1;
    let vals: Vec<f64> = (0..n)
        .map(|k| {
            let x = (std::f64::consts::PI * (k as f64 + 0.5) / n as f64).cos();
            profile(x, a, fl, p_mid)
        })
        .collect();
    let mut coeffs = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = 0.0;
        for (k, v) in vals.iter().enumerate() {
            acc += v * (std::f64::consts::PI * j as f64 * (k as f64 + 0.5) / n as f64).cos();
        }
        let w = if j == 0 { 1.0 } else { 2.0 };
        coeffs.push(acc * w / n as f64);
    }
    coeffs
}

fn float_to_dyadic(x: f64, bits: u32) -> Rational {
    let scaled = (x * (1u64 << bits) as f64).round();
    Rational::new(
        num_bigint::BigInt::from(scaled as i64),
        num_bigint::BigInt::from(1u64 << bits),
    )
}

// ---------------------------------------------------------------------------
// Exact certification in the unit variable u = t / rho.

/// sum j^2 |c_j| bounds |series'| on [-1,1] (|T_j'| <= j^2 there).
fn slope_bound(cheb: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (j, c) in cheb.iter().enumerate() {
        acc += rational::int((j * j) as i64) * c.abs();
    }
    acc
}

/// sum j^2 (j^2 - 1) / 3 |c_j| bounds |series''| on [-1,1].
fn curvature_bound(cheb: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (j, c) in cheb.iter().enumerate() {
        let j2 = (j * j) as i64;
        acc += rational::rat(j2 * (j2 - 1), 3) * c.abs();
    }
    acc
}

/// sum j^2 (j^2-1)(j^2-4) / 15 |c_j| bounds |series'''| on [-1,1].
fn third_bound(cheb: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (j, c) in cheb.iter().enumerate() {
        let j2 = (j * j) as i64;
        acc += rational::rat(j2 * (j2 - 1) * (j2 - 4), 15) * c.abs();
    }
    acc
}

/// Drop snapped-to-zero trailing coefficients.
fn trim_snapped(mut cheb: Vec<Rational>) -> Vec<Rational> {
    while cheb.len() > 1 && cheb.last().map(|c| c.is_zero()) == Some(true) {
        cheb.pop();
    }
    cheb
}

/// Float screen: all four conditions on a dense grid with extra margin.
/// Purely a filter; the exact certifier is the authority.
fn float_gate(cheb: &[Rational], a: f64, small: f64, cap: f64) -> bool {
    let cf: Vec<f64> = cheb.iter().map(rational::to_f64).collect();
    let eval = |u: f64| -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for c in cf.iter().rev() {
            let b0 = c + 2.0 * u * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        b1 - u * b2
    };
    let n = 8192;
    for i in 0..=n {
        let u = -1.0 + 2.0 * i as f64 / n as f64;
        let v = eval(u);
        let kap = u * u * v;
        if v < 1.3 * small / 10.0 {
            return false;
        }
        if u <= 0.0 && kap > small / 1.15 {
            return false;
        }
        if u >= a && kap < 2.05 {
            return false;
        }
        if u >= 0.0 && kap > cap - 0.03 {
            return false;
        }
    }
    true
}

// Fixed-point exact arithmetic: numbers are num / 2^bits with BigInt num.
// Box endpoints live on the grid of unit 2^-UNIT_BITS, so every midpoint
// evaluation is exact integer work with no gcd reduction anywhere.

const UNIT_BITS: u32 = 28;

use num_bigint::BigInt;

#[derive(Clone, Debug)]
struct Scaled {
    num: BigInt,
    bits: u32,
}

impl Scaled {
    fn mul(&self, o: &Scaled) -> Scaled {
        Scaled { num: &self.num * &o.num, bits: self.bits + o.bits }
    }

    fn abs(&self) -> Scaled {
        Scaled { num: self.num.magnitude().clone().into(), bits: self.bits }
    }

    fn add(&self, o: &Scaled) -> Scaled {
        let bits = self.bits.max(o.bits);
        Scaled {
            num: (&self.num << (bits - self.bits)) + (&o.num << (bits - o.bits)),
            bits,
        }
    }

    fn halve(&self) -> Scaled {
        Scaled { num: self.num.clone(), bits: self.bits + 1 }
    }

    /// self <=> p/q with q > 0.
    fn cmp_rational(&self, r: &Rational) -> std::cmp::Ordering {
        let lhs = &self.num * r.denom();
        let rhs = r.numer() << self.bits;
        lhs.cmp(&rhs)
    }

    /// An upper bound for a nonnegative rational at the given scale.
    fn ceil_of(r: &Rational, bits: u32) -> Scaled {
        let num = (r.numer() << bits) / r.denom() + 1;
        Scaled { num, bits }
    }
}

/// Coefficients c_j * 2^cs as integers; the dyadic snap guarantees exactness.
fn to_scaled(cheb: &[Rational], cs: u32) -> Result<Vec<BigInt>> {
    cheb.iter()
        .map(|c| {
            let scaled = c * rational::pow_i(&rational::int(2), cs as i32);
            if !scaled.is_integer() {
                return Err(Error::Internal("cushion coefficient is not dyadic at the working scale".into()));
            }
            Ok(scaled.to_integer())
        })
        .collect()
}

/// Derivative of a Chebyshev series with integer coefficients at scale cs;
/// the result is exact at scale cs + 2.
fn derivative_scaled(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len();
    if n <= 1 {
        return vec![BigInt::from(0)];
    }
    // D_{k-1} = D_{k+1} + 4k C_k at scale cs+1, then the 0th coefficient is
    // halved; doubling everything else keeps integers at scale cs+2.
    let mut d = vec![BigInt::from(0); n];
    for k in (1..n).rev() {
        let up = if k + 1 < n { d[k + 1].clone() } else { BigInt::from(0) };
        d[k - 1] = up + BigInt::from(4 * k as i64) * &coeffs[k];
    }
    d.truncate(n - 1);
    let mut out = Vec::with_capacity(n - 1);
    for (k, v) in d.into_iter().enumerate() {
        out.push(if k == 0 { v } else { v << 1 });
    }
    out
}

/// Exact Clenshaw over integers: coefficients at scale cs, u = u_num/2^P.
/// Scaling the recurrence b_k = c_k + 2u b_{k+1} - b_{k+2} by
/// 2^{cs + (n-k)(P+1)} turns it into
/// B_k = C_k << ((n-k)(P+1)) + 4 U B_{k+1} - (B_{k+2} << (2P+2)),
/// and the value is (B_0 - 2 U B_1) at scale cs + n(P+1).
fn clenshaw_scaled(coeffs: &[BigInt], cs: u32, u_num: i64) -> Scaled {
    let n = coeffs.len() - 1;
    let p1 = UNIT_BITS + 1;
    let u = BigInt::from(u_num);
    let four_u = BigInt::from(4 * u_num);
    let mut b1 = BigInt::from(0);
    let mut b2 = BigInt::from(0);
    for (k, c) in coeffs.iter().enumerate().rev() {
        let b0 = (c << ((n - k) as u32 * p1)) + &four_u * &b1 - (&b2 << (2 * p1));
        b2 = std::mem::replace(&mut b1, b0);
    }
    Scaled { num: b1 - (u << 1) * b2, bits: cs + n as u32 * p1 }
}

enum Req {
    AtMost(Rational),
    AtLeast(Rational),
}

struct Certifier {
    c0: Vec<BigInt>,
    c1: Vec<BigInt>,
    c2: Vec<BigInt>,
    cs: u32,
    /// ceil(B3/6) for pi and for kappa = u^2 pi, at a fixed small scale.
    b3_pi_over6: Scaled,
    b3_kappa_over6: Scaled,
    boxes: usize,
}

impl Certifier {
    fn new(cheb: &[Rational], cs: u32) -> Result<Self> {
        let c0 = to_scaled(cheb, cs)?;
        let c1 = derivative_scaled(&c0);
        let c2 = derivative_scaled(&c1);
        let b1 = slope_bound(cheb);
        let b2 = curvature_bound(cheb);
        let b3 = third_bound(cheb);
        // (u^2 pi)''' = 6 pi' + 6 u pi'' + u^2 pi'''.
        let b3_kappa = rational::int(6) * &b1 + rational::int(6) * &b2 + &b3;
        Ok(Certifier {
            c0,
            c1,
            c2,
            cs,
            b3_pi_over6: Scaled::ceil_of(&(b3 / rational::int(6)), 24),
            b3_kappa_over6: Scaled::ceil_of(&(b3_kappa / rational::int(6)), 24),
            boxes: 0,
        })
    }

    /// Exact (value, first, second derivative) of pi or kappa at u_num/2^P.
    fn jets(&self, u_num: i64, kappa_mode: bool) -> (Scaled, Scaled, Scaled) {
        let v = clenshaw_scaled(&self.c0, self.cs, u_num);
        let d = clenshaw_scaled(&self.c1, self.cs + 2, u_num);
        let d2 = clenshaw_scaled(&self.c2, self.cs + 4, u_num);
        if !kappa_mode {
            return (v, d, d2);
        }
        let u = Scaled { num: BigInt::from(u_num), bits: UNIT_BITS };
        let u2 = u.mul(&u);
        let two_u = Scaled { num: BigInt::from(2 * u_num), bits: UNIT_BITS };
        let vk = u2.mul(&v);
        let dk = two_u.mul(&v).add(&u2.mul(&d));
        let two_v = Scaled { num: &v.num << 1, bits: v.bits };
        let four_u = Scaled { num: BigInt::from(4 * u_num), bits: UNIT_BITS };
        let d2k = two_v.add(&four_u.mul(&d)).add(&u2.mul(&d2));
        (vk, dk, d2k)
    }

    /// Certify a bound on [lo, hi] (in units of 2^-P) via second-order
    /// Taylor enclosures around exact midpoint jets:
    /// |f(x) - f(m) - f'(m)(x-m) - f''(m)(x-m)^2/2| <= B3 r^3 / 6.
    /// Midpoint values are true values, so reported violations are genuine
    /// witnesses.
    fn certify(&mut self, kappa_mode: bool, lo: i64, hi: i64, req: &Req, label: &str) -> Result<()> {
        let b3_over6 = if kappa_mode { self.b3_kappa_over6.clone() } else { self.b3_pi_over6.clone() };
        let mut stack = vec![(lo, hi)];
        while let Some((l, h)) = stack.pop() {
            self.boxes += 1;
            if self.boxes > 4_000_000 {
                return Err(Error::BudgetExhausted(format!(
                    "kappa certification exceeded the box budget on condition {label}"
                )));
            }
            let mid = l + (h - l) / 2;
            let r = Scaled { num: BigInt::from(h - mid), bits: UNIT_BITS };
            let (v, d, d2) = self.jets(mid, kappa_mode);
            let pad = d
                .abs()
                .mul(&r)
                .add(&d2.abs().mul(&r).mul(&r).halve())
                .add(&b3_over6.mul(&r).mul(&r).mul(&r));
            let (ok, violated) = match req {
                Req::AtMost(b) => (
                    v.add(&pad).cmp_rational(b) != std::cmp::Ordering::Greater,
                    v.cmp_rational(b) == std::cmp::Ordering::Greater,
                ),
                Req::AtLeast(b) => (
                    {
                        let neg = Scaled { num: -pad.num.clone(), bits: pad.bits };
                        v.add(&neg).cmp_rational(b) != std::cmp::Ordering::Less
                    },
                    v.cmp_rational(b) == std::cmp::Ordering::Less,
                ),
            };
            if violated {
                return Err(Error::Verification(format!(
                    "kappa condition {label} fails at u = {}/2^{} ",
                    mid, UNIT_BITS
                )));
            }
            if ok {
                continue;
            }
            if h - l <= 1 {
                return Err(Error::BudgetExhausted(format!(
                    "kappa condition {label} undecided at the width floor near u = {}/2^{}",
                    mid, UNIT_BITS
                )));
            }
            stack.push((l, mid));
            stack.push((mid, h));
        }
        Ok(())
    }
}

/// Certify the four conditions in the unit variable. Returns the certified
/// positive floor of `pi` and the number of boxes visited.
fn certify_unit(
    cheb: &[Rational],
    a: &Rational,
    small: &Rational,
    cap: &Rational,
) -> Result<(Rational, usize)> {
    let floor = small / rational::int(10);
    let mut cert = Certifier::new(cheb, 44)?;
    let one_u: i64 = 1 << UNIT_BITS;
    // Conservative grid snap of a (downward, enlarging the interval).
    let a_units: i64 = {
        let scaled = (a.numer() << UNIT_BITS) / a.denom();
        i64::try_from(&scaled).map_err(|_| Error::Internal("kappa transition point out of range".into()))?
    };
    // (i) pi >= floor > 0 on [-1,1]; makes kappa >= 0 with a zero only at 0.
    cert.certify(false, -one_u, one_u, &Req::AtLeast(floor.clone()), "pi-floor")?;
    // (ii) kappa <= 4^-m on [-1, 0].
    cert.certify(true, -one_u, 0, &Req::AtMost(small.clone()), "small-side")?;
    // (iii) kappa >= 2 on [a, 1].
    cert.certify(true, a_units, one_u, &Req::AtLeast(rational::int(2)), "plateau-low")?;
    // (iv) kappa <= cap on [0, 1].
    cert.certify(true, 0, one_u, &Req::AtMost(cap.clone()), "cap")?;
    Ok((floor, cert.boxes))
}

/// Exact Chebyshev-to-monomial conversion.
fn cheb_to_monomial(cheb: &[Rational]) -> Vec<Rational> {
    let n = cheb.len();
    let mut t_prev: Vec<Rational> = vec![Rational::one()]; // T_0
    let mut t_cur: Vec<Rational> = vec![Rational::zero(), Rational::one()]; // T_1
    let mut acc = vec![Rational::zero(); n.max(1)];
    for (j, c) in cheb.iter().enumerate() {
        let tj: &[Rational] = match j {
            0 => &t_prev,
            _ => {
                if j >= 2 {
                    let mut next = vec![Rational::zero()];
                    next.extend(t_cur.iter().map(|x| rational::int(2) * x));
                    for (i, x) in t_prev.iter().enumerate() {
                        next[i] -= x;
                    }
                    t_prev = std::mem::replace(&mut t_cur, next);
                }
                &t_cur
            }
        };
        for (i, x) in tj.iter().enumerate() {
            if i >= acc.len() {
                acc.resize(i + 1, Rational::zero());
            }
            acc[i] += c * x;
        }
    }
    uni::trim(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    /// Reference evaluation of a Chebyshev series in plain rationals.
    fn clenshaw(cheb: &[Rational], u: &Rational) -> Rational {
        let mut b1 = Rational::zero();
        let mut b2 = Rational::zero();
        let two_u = rational::int(2) * u;
        for c in cheb.iter().rev() {
            let b0 = c + &two_u * &b1 - &b2;
            b2 = std::mem::replace(&mut b1, b0);
        }
        &b1 - u * &b2
    }

    #[test]
    fn clenshaw_matches_direct() {
        // Series 3 T_0 - 2 T_1 + 5 T_2 + T_3 at a few rational points.
        let cheb = vec![int(3), int(-2), int(5), int(1)];
        for u in [rat(1, 3), rat(-7, 8), int(1), int(0)] {
            let t0 = Rational::one();
            let t1 = u.clone();
            let t2 = rat(2, 1) * &u * &u - &t0;
            let t3 = rat(2, 1) * &u * &t2 - &t1;
            let direct = int(3) * t0 - int(2) * t1 + int(5) * t2 + t3;
            assert_eq!(clenshaw(&cheb, &u), direct);
        }
    }

    #[test]
    fn scaled_clenshaw_matches_rational() {
        let cheb = vec![rat(3, 8), rat(-5, 16), rat(7, 4), rat(1, 1024), rat(-9, 2)];
        let c0 = to_scaled(&cheb, 44).unwrap();
        for u_num in [0i64, 1, -7, 1 << 20, -(1 << 27), 1 << UNIT_BITS] {
            let got = clenshaw_scaled(&c0, 44, u_num);
            let u = Rational::new(BigInt::from(u_num), BigInt::from(1i64 << UNIT_BITS));
            let want = clenshaw(&cheb, &u);
            let got_rat = Rational::new(got.num.clone(), BigInt::from(1) << got.bits as usize);
            assert_eq!(got_rat, want, "u_num = {u_num}");
        }
    }

    #[test]
    fn scaled_derivative_matches() {
        // d/du of 1 T_1 + 1 T_3 = 1 + 3 (4u^2 - 1) evaluated a few places.
        let cheb = vec![int(0), int(1), int(0), int(1)];
        let c0 = to_scaled(&cheb, 44).unwrap();
        let c1 = derivative_scaled(&c0);
        for u_num in [0i64, 1 << 27, -(1 << 26)] {
            let got = clenshaw_scaled(&c1, 46, u_num);
            let u = Rational::new(BigInt::from(u_num), BigInt::from(1i64 << UNIT_BITS));
            let expect = int(1) + int(3) * (int(4) * &u * &u - int(1));
            let got_rat = Rational::new(got.num.clone(), BigInt::from(1) << got.bits as usize);
            assert_eq!(got_rat, expect);
        }
    }

    #[test]
    fn cheb_to_monomial_matches_eval() {
        let cheb = vec![rat(1, 2), int(-1), rat(3, 4), int(2), rat(-1, 8)];
        let mono = cheb_to_monomial(&cheb);
        for u in [rat(1, 5), rat(-2, 3), int(1)] {
            assert_eq!(uni::eval(&mono, &u), clenshaw(&cheb, &u));
        }
    }

    #[test]
    fn kappa_certifies_for_default_params() {
        let params = CushionParams::new(rat(1, 4), int(1), 2).unwrap();
        let k = kappa_poly(&params).unwrap();
        // kappa(0) = 0 exactly by the t^2 factor.
        assert_eq!(k.eval(&int(0)), int(0));
        // Spot values inside the certified regions.
        assert!(k.eval(&rat(-1, 2)) <= rat(1, 16));
        assert!(k.eval(&rat(1, 2)) >= int(2));
        assert!(k.eval(&rat(9, 10)) <= int(3));
        assert!(k.eval(&rat(-9, 10)) >= int(0));
    }

    #[test]
    fn kappa_rescales_rho() {
        let params = CushionParams::new(rat(1, 2), int(2), 1).unwrap();
        let k = kappa_poly(&params).unwrap();
        assert!(k.eval(&int(-2)) <= rat(1, 4));
        assert!(k.eval(&int(1)) >= int(2));
        assert!(k.eval(&int(2)) >= int(2));
    }

    #[test]
    fn kappa_capped_stays_below_cap() {
        let params = CushionParams::new(rat(1, 4), int(1), 1).unwrap();
        let k = kappa_poly_capped(&params, &rat(9, 4)).unwrap();
        for i in 0..=16 {
            let t = rat(i, 16);
            assert!(k.eval(&t) <= rat(9, 4), "cap violated at {t}");
        }
    }

    #[test]
    fn kappa_rejects_bad_params() {
        assert!(CushionParams::new(int(1), int(1), 1).is_err());
        assert!(CushionParams::new(rat(1, 2), int(1), 0).is_err());
    }

    #[test]
    fn mu_endpoint_conditions() {
        for (delta, rho) in [(rat(1, 4), int(1)), (rat(1, 2), int(1)), (rat(1, 2), int(2))] {
            let mu = mu_poly(&delta, &rho).unwrap();
            assert!(mu.eval(&int(0)) < rat(1, 2));
            assert!(mu.eval(&delta) > int(2));
            // Positivity at the left end of the certified range.
            assert!(mu.eval(&(-&rho)) > int(0));
        }
    }

    #[test]
    fn mu_rho_twice_delta_uses_k3() {
        // The construction-internal convention rho = 2 delta pins k = 3.
        let mu = mu_poly(&rat(1, 4), &rat(1, 2)).unwrap();
        assert_eq!(mu.k, 3);
    }
}
