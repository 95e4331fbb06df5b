//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors in ascending
//! lexicographic order, which makes every textual and JSON emission
//! canonical without extra sorting. Coefficient zero terms are never
//! stored.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a single term; ordering is lexicographic (derived
/// from `Vec<u32>`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Affine form `a . x + c`; the building block of H-representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        LinearForm { coeffs, constant }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        rational::dot(&self.coeffs, x) + &self.constant
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, v)| rational::to_f64(a) * v)
            .sum::<f64>()
            + rational::to_f64(&self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Divides through by the sup-norm of the coefficient vector, so the
    /// gradient has infinity-norm one. Constant forms are returned as is.
    pub fn normalize_sup(&self) -> LinearForm {
        let n = rational::sup_norm(&self.coeffs);
        if n.is_zero() {
            return self.clone();
        }
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c / &n).collect(),
            constant: &self.constant / &n,
        }
    }

    pub fn scale(&self, s: &Rational) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        assert_eq!(self.dim(), other.dim());
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -self.constant.clone(),
        }
    }

    pub fn to_poly(&self) -> SparsePoly {
        let dim = self.dim();
        let mut p = SparsePoly::constant(dim, self.constant.clone());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0u32; dim];
                exps[i] = 1;
                p.add_term(Monomial(exps), c.clone());
            }
        }
        p
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(dim: usize) -> Self {
        SparsePoly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; dim]), c);
        }
        p
    }

    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut exps = vec![0u32; dim];
        exps[i] = 1;
        Self::monomial(dim, exps, Rational::one())
    }

    pub fn monomial(dim: usize, exps: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), dim);
        let mut p = Self::zero(dim);
        p.add_term(Monomial(exps), coeff);
        p
    }

    /// Builds from raw term pairs, merging duplicates.
    pub fn from_terms(dim: usize, terms: Vec<(Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (exps, c) in terms {
            if exps.len() != dim {
                return Err(Error::Parse(format!(
                    "term exponent arity {} does not match dim {}",
                    exps.len(),
                    dim
                )));
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total_degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Terms of exactly total degree `d`, as a polynomial (the degree-`d`
    /// homogeneous component).
    pub fn homogeneous_component(&self, d: u32) -> SparsePoly {
        let mut p = SparsePoly::zero(self.dim);
        for (m, c) in &self.terms {
            if m.total_degree() == d {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn leading_form(&self) -> SparsePoly {
        self.homogeneous_component(self.total_degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.0.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> SparsePoly {
        if s.is_zero() {
            return SparsePoly::zero(self.dim);
        }
        SparsePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn max_coeff_abs(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim);
        let mut maxdeg = vec![0u32; self.dim];
        for m in self.terms.keys() {
            for (i, e) in m.0.iter().enumerate() {
                maxdeg[i] = maxdeg[i].max(*e);
            }
        }
        // Memoized powers per variable keep repeated exponents cheap.
        let powers: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| {
                let mut v = Vec::with_capacity(maxdeg[i] as usize + 1);
                v.push(Rational::one());
                for e in 1..=maxdeg[i] as usize {
                    let next = &v[e - 1] * &x[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t *= &powers[i][*e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational::to_f64(c);
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t *= x[i].powi(*e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.dim);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Composition `self(f_1, ..., f_dim)`. All `f_i` must share a common
    /// dimension, which becomes the output dimension.
    pub fn substitute(&self, fs: &[SparsePoly]) -> SparsePoly {
        assert_eq!(fs.len(), self.dim);
        let out_dim = fs.first().map(|f| f.dim).unwrap_or(0);
        for f in fs {
            assert_eq!(f.dim, out_dim);
        }
        let mut maxdeg = vec![0u32; self.dim];
        for m in self.terms.keys() {
            for (i, e) in m.0.iter().enumerate() {
                maxdeg[i] = maxdeg[i].max(*e);
            }
        }
        let powers: Vec<Vec<SparsePoly>> = (0..self.dim)
            .map(|i| {
                let mut v = Vec::with_capacity(maxdeg[i] as usize + 1);
                v.push(SparsePoly::one(out_dim));
                for e in 1..=maxdeg[i] as usize {
                    let next = &v[e - 1] * &fs[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = SparsePoly::zero(out_dim);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(out_dim, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t = &t * &powers[i][*e as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `self(x0 + t v)` as a dense univariate polynomial in `t`.
    pub fn restrict_line(&self, x0: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(x0.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let lines: Vec<SparsePoly> = (0..self.dim)
            .map(|i| {
                let mut p = SparsePoly::constant(1, x0[i].clone());
                p.add_term(Monomial(vec![1]), v[i].clone());
                p
            })
            .collect();
        let uni = self.substitute(&lines);
        let deg = uni.total_degree() as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in &uni.terms {
            coeffs[m.0[0] as usize] = c.clone();
        }
        coeffs
    }

    /// Translate: `self(x + o)`, cheap special case of composition.
    pub fn translate(&self, o: &[Rational]) -> SparsePoly {
        let shifts: Vec<SparsePoly> = (0..self.dim)
            .map(|i| {
                let mut p = SparsePoly::var(self.dim, i);
                p.add_term(Monomial(vec![0; self.dim]), o[i].clone());
                p
            })
            .collect();
        self.substitute(&shifts)
    }

    /// Homogenization about an apex `o` with respect to a linear form `l`
    /// vanishing at `o`: the unique polynomial of degree `deg self`,
    /// homogeneous under dilations centered at `o`, that agrees with
    /// `eps^deg * self` on the section hyperplane `{l = eps}`.
    pub fn homogenize_about(
        &self,
        o: &[Rational],
        l: &LinearForm,
        eps: &Rational,
    ) -> Result<SparsePoly> {
        if !l.eval(o).is_zero() {
            return Err(Error::Precondition(
                "homogenize_about requires the form to vanish at the apex".into(),
            ));
        }
        if eps.is_zero() {
            return Err(Error::Precondition(
                "homogenize_about requires a nonzero section level".into(),
            ));
        }
        let n = self.total_degree();
        // self(o + y) = sum c_a y^a; output = sum c_a eps^|a| (x-o)^a l^(n-|a|).
        let shifted = self.translate(o);
        let lpoly = l.to_poly();
        let mut lpow = Vec::with_capacity(n as usize + 1);
        lpow.push(SparsePoly::one(self.dim));
        for j in 1..=n as usize {
            let next = &lpow[j - 1] * &lpoly;
            lpow.push(next);
        }
        let minus_o: Vec<Rational> = o.iter().map(|c| -c.clone()).collect();
        let mut acc = SparsePoly::zero(self.dim);
        for (m, c) in &shifted.terms {
            let a = m.total_degree();
            let mono = SparsePoly::monomial(self.dim, m.0.clone(), c.clone());
            // y^a with y = x - o.
            let in_x = mono.translate(&minus_o);
            let scaled = in_x.scale(&rational::pow_i(eps, a as i32));
            acc = &acc + &(&scaled * &lpow[(n - a) as usize]);
        }
        Ok(acc)
    }

    /// Squared euclidean distance to a fixed point, as a polynomial.
    pub fn dist_sq_poly(center: &[Rational]) -> SparsePoly {
        let dim = center.len();
        let mut acc = SparsePoly::zero(dim);
        for (i, c) in center.iter().enumerate() {
            let mut li = SparsePoly::var(dim, i);
            li.add_term(Monomial(vec![0; dim]), -c.clone());
            acc = &acc + &(&li * &li);
        }
        acc
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.dim, rhs.dim);
        let mut out = SparsePoly::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let exps: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Print highest degree first for readability.
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| {
            b.0.total_degree()
                .cmp(&a.0.total_degree())
                .then_with(|| a.0.cmp(b.0))
        });
        for (m, c) in items {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = m.total_degree() == 0;
            if !mag.is_one() || is_const_term {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut firstvar = true;
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !firstvar {
                    write!(f, "*")?;
                }
                firstvar = false;
                if *e == 1 {
                    write!(f, "x{i}")?;
                } else {
                    write!(f, "x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Elementary symmetric polynomials `e_0..e_upto` of the given polynomials,
/// built by the incremental product recurrence.
pub fn elementary_symmetric(qs: &[SparsePoly], upto: usize) -> Vec<SparsePoly> {
    let dim = qs.first().map(|q| q.dim()).unwrap_or(0);
    let upto = upto.min(qs.len());
    let mut e: Vec<SparsePoly> = Vec::with_capacity(upto + 1);
    e.push(SparsePoly::one(dim));
    for (j, q) in qs.iter().enumerate() {
        let reach = (j + 1).min(upto);
        if e.len() <= reach {
            e.push(SparsePoly::zero(dim));
        }
        for i in (1..=reach).rev() {
            let bump = &e[i - 1] * q;
            e[i] = &e[i] + &bump;
        }
    }
    while e.len() <= upto {
        e.push(SparsePoly::zero(dim));
    }
    e
}

/// Dense univariate helpers (coefficients `c[0] + c[1] t + ...`). Used for
/// line restrictions and one-dimensional certification.
pub mod uni {
    use super::*;

    pub fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
        while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        c
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len()).max(1);
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] += x;
        }
        trim(out)
    }

    pub fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
        trim(a.iter().map(|c| c * s).collect())
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return vec![Rational::zero()];
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(out)
    }

    pub fn pow(a: &[Rational], n: u32) -> Vec<Rational> {
        let mut acc = vec![Rational::one()];
        let mut base = a.to_vec();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = mul(&base, &base);
            }
        }
        acc
    }

    /// `outer(inner(t))` for dense univariate `outer`.
    pub fn compose(outer: &[Rational], inner: &[Rational]) -> Vec<Rational> {
        // Horner in the polynomial ring.
        let mut acc = vec![Rational::zero()];
        for c in outer.iter().rev() {
            acc = mul(&acc, inner);
            if acc.is_empty() {
                acc.push(Rational::zero());
            }
            acc[0] += c;
            acc = trim(acc);
        }
        acc
    }

    pub fn eval(c: &[Rational], t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for coeff in c.iter().rev() {
            acc = acc * t + coeff;
        }
        acc
    }

    pub fn eval_f64(c: &[Rational], t: f64) -> f64 {
        let mut acc = 0.0;
        for coeff in c.iter().rev() {
            acc = acc * t + rational::to_f64(coeff);
        }
        acc
    }

    pub fn degree(c: &[Rational]) -> usize {
        let t = trim(c.to_vec());
        t.len() - 1
    }

    /// Leading coefficient after trimming.
    pub fn leading(c: &[Rational]) -> Rational {
        trim(c.to_vec()).last().cloned().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn xy() -> (SparsePoly, SparsePoly) {
        (SparsePoly::var(2, 0), SparsePoly::var(2, 1))
    }

    #[test]
    fn arithmetic_and_eval() {
        let (x, y) = xy();
        // p = (x + y)^2 - (x - y)^2 = 4xy
        let s = &x + &y;
        let d = &x - &y;
        let p = &(&s * &s) - &(&d * &d);
        assert_eq!(p.num_terms(), 1);
        let at = [rat(3, 2), rat(-1, 3)];
        assert_eq!(p.eval(&at), rat(4 * 3 * -1, 2 * 3));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let (x, _) = xy();
        let p = &x - &x;
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn substitute_matches_pointwise() {
        let (x, y) = xy();
        let p = &(&x * &x) - &(&y * &y);
        let f = &x + &y;
        let g = &(&x * &y) + &SparsePoly::constant(2, int(1));
        let comp = p.substitute(&[f.clone(), g.clone()]);
        let at = [rat(2, 3), rat(-5, 7)];
        let lhs = comp.eval(&at);
        let rhs = p.eval(&[f.eval(&at), g.eval(&at)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restrict_line_matches_eval() {
        let (x, y) = xy();
        let p = &(&x * &(&x * &y)) - &y;
        let x0 = [rat(1, 2), int(-1)];
        let v = [int(2), rat(1, 3)];
        let c = p.restrict_line(&x0, &v);
        let t = rat(5, 4);
        let pt: Vec<Rational> = x0.iter().zip(&v).map(|(a, b)| a + b * &t).collect();
        assert_eq!(uni::eval(&c, &t), p.eval(&pt));
    }

    #[test]
    fn homogenize_about_cone_property() {
        // q = x0^2 - x1^2 on the section {x2 = 1} about the origin.
        let q3 = {
            let x = SparsePoly::var(3, 0);
            let y = SparsePoly::var(3, 1);
            &(&x * &x) - &(&y * &y)
        };
        let l = LinearForm::new(vec![int(0), int(0), int(1)], int(0));
        let o = [int(0), int(0), int(0)];
        let h = q3.homogenize_about(&o, &l, &int(1)).unwrap();
        // On the section it agrees with q.
        let at = [rat(2, 5), rat(-3, 7), int(1)];
        assert_eq!(h.eval(&at), q3.eval(&at));
        // Homogeneous of degree 2 along rays through the apex.
        let t = rat(7, 3);
        let scaled: Vec<Rational> = at.iter().map(|c| c * &t).collect();
        assert_eq!(h.eval(&scaled), &(&t * &t) * &h.eval(&at));
    }

    #[test]
    fn elementary_symmetric_small() {
        let (x, y) = xy();
        let e = elementary_symmetric(&[x.clone(), y.clone()], 2);
        assert_eq!(e[0], SparsePoly::one(2));
        assert_eq!(e[1], &x + &y);
        assert_eq!(e[2], &x * &y);
    }

    #[test]
    fn uni_compose_matches() {
        let outer = vec![int(1), int(0), int(-2)]; // 1 - 2 t^2
        let inner = vec![int(3), int(1)]; // 3 + t
        let c = uni::compose(&outer, &inner);
        let t = rat(1, 2);
        let want = uni::eval(&outer, &uni::eval(&inner, &t));
        assert_eq!(uni::eval(&c, &t), want);
    }
}
