//! Structured polynomial expressions.
//!
//! The constructions in this crate are naturally products and compositions
//! of small factors. Expanding those first and asking questions later is a
//! disaster twice over: expanded interval bounds on products of shifted
//! squares are catastrophically loose, and term counts explode. So
//! polynomials are carried as expression DAGs over sparse leaves;
//! evaluation, interval certification and line restriction run on the
//! structure, and expansion happens once, at output time, under a term cap.

use crate::error::{Error, Result};
use crate::interval::{BoxDomain, RatInterval};
use crate::poly::{uni, LinearForm, SparsePoly};
use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum PolyExpr {
    Leaf(Arc<SparsePoly>),
    Sum(Vec<PolyExpr>),
    Prod(Vec<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
    Scale(Rational, Box<PolyExpr>),
    /// Dense univariate outer polynomial composed with an inner expression.
    ComposeUnivar(Vec<Rational>, Box<PolyExpr>),
}

impl PolyExpr {
    pub fn leaf(p: SparsePoly) -> Self {
        PolyExpr::Leaf(Arc::new(p))
    }

    pub fn linear(l: &LinearForm) -> Self {
        Self::leaf(l.to_poly())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::leaf(SparsePoly::constant(dim, c))
    }

    pub fn sum(parts: Vec<PolyExpr>) -> Self {
        PolyExpr::Sum(parts)
    }

    pub fn prod(parts: Vec<PolyExpr>) -> Self {
        PolyExpr::Prod(parts)
    }

    pub fn pow(self, n: u32) -> Self {
        PolyExpr::Pow(Box::new(self), n)
    }

    pub fn scale(self, s: Rational) -> Self {
        PolyExpr::Scale(s, Box::new(self))
    }

    pub fn compose_univar(outer: Vec<Rational>, inner: PolyExpr) -> Self {
        PolyExpr::ComposeUnivar(outer, Box::new(inner))
    }

    /// `sum (x_i - c_i)^2` built from linear leaves so interval bounds stay
    /// tight.
    pub fn dist_sq(center: &[Rational]) -> Self {
        let dim = center.len();
        let parts = center
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut coeffs = vec![Rational::zero(); dim];
                coeffs[i] = Rational::one();
                PolyExpr::linear(&LinearForm::new(coeffs, -c.clone())).pow(2)
            })
            .collect();
        PolyExpr::Sum(parts)
    }

    pub fn dim(&self) -> usize {
        match self {
            PolyExpr::Leaf(p) => p.dim(),
            PolyExpr::Sum(v) | PolyExpr::Prod(v) => {
                v.first().map(|e| e.dim()).unwrap_or(0)
            }
            PolyExpr::Pow(e, _) | PolyExpr::Scale(_, e) | PolyExpr::ComposeUnivar(_, e) => {
                e.dim()
            }
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        match self {
            PolyExpr::Leaf(p) => p.eval(x),
            PolyExpr::Sum(v) => v.iter().map(|e| e.eval(x)).sum(),
            PolyExpr::Prod(v) => {
                let mut acc = Rational::one();
                for e in v {
                    acc *= e.eval(x);
                    if acc.is_zero() {
                        return acc;
                    }
                }
                acc
            }
            PolyExpr::Pow(e, n) => rational::pow_i(&e.eval(x), *n as i32),
            PolyExpr::Scale(s, e) => s * e.eval(x),
            PolyExpr::ComposeUnivar(outer, e) => uni::eval(outer, &e.eval(x)),
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        match self {
            PolyExpr::Leaf(p) => p.eval_f64(x),
            PolyExpr::Sum(v) => v.iter().map(|e| e.eval_f64(x)).sum(),
            PolyExpr::Prod(v) => v.iter().map(|e| e.eval_f64(x)).product(),
            PolyExpr::Pow(e, n) => e.eval_f64(x).powi(*n as i32),
            PolyExpr::Scale(s, e) => rational::to_f64(s) * e.eval_f64(x),
            PolyExpr::ComposeUnivar(outer, e) => uni::eval_f64(outer, e.eval_f64(x)),
        }
    }

    /// Guaranteed enclosure of the range over a box.
    pub fn interval_eval(&self, b: &BoxDomain) -> RatInterval {
        match self {
            PolyExpr::Leaf(p) => leaf_interval(p, b),
            PolyExpr::Sum(v) => {
                let mut acc = RatInterval::zero();
                for e in v {
                    acc = acc.add(&e.interval_eval(b));
                }
                acc
            }
            PolyExpr::Prod(v) => {
                let mut acc = RatInterval::point(Rational::one());
                for e in v {
                    acc = acc.mul(&e.interval_eval(b));
                }
                acc
            }
            PolyExpr::Pow(e, n) => e.interval_eval(b).pow(*n),
            PolyExpr::Scale(s, e) => e.interval_eval(b).scale(s),
            PolyExpr::ComposeUnivar(outer, e) => {
                crate::interval::uni_eval_interval(outer, &e.interval_eval(b))
            }
        }
    }

    /// Restriction to the line `x0 + t v` as a dense univariate polynomial.
    /// Exact, and never expands the multivariate expression.
    pub fn restrict_line(&self, x0: &[Rational], v: &[Rational]) -> Vec<Rational> {
        match self {
            PolyExpr::Leaf(p) => p.restrict_line(x0, v),
            PolyExpr::Sum(parts) => {
                let mut acc = vec![Rational::zero()];
                for e in parts {
                    acc = uni::add(&acc, &e.restrict_line(x0, v));
                }
                acc
            }
            PolyExpr::Prod(parts) => {
                let mut acc = vec![Rational::one()];
                for e in parts {
                    acc = uni::mul(&acc, &e.restrict_line(x0, v));
                }
                acc
            }
            PolyExpr::Pow(e, n) => uni::pow(&e.restrict_line(x0, v), *n),
            PolyExpr::Scale(s, e) => uni::scale(&e.restrict_line(x0, v), s),
            PolyExpr::ComposeUnivar(outer, e) => {
                uni::compose(outer, &e.restrict_line(x0, v))
            }
        }
    }

    /// Upper bound on the total degree (exact unless cancellation lowers it).
    pub fn degree_bound(&self) -> u32 {
        match self {
            PolyExpr::Leaf(p) => p.total_degree(),
            PolyExpr::Sum(v) => v.iter().map(|e| e.degree_bound()).max().unwrap_or(0),
            PolyExpr::Prod(v) => v.iter().map(|e| e.degree_bound()).sum(),
            PolyExpr::Pow(e, n) => e.degree_bound() * n,
            PolyExpr::Scale(_, e) => e.degree_bound(),
            PolyExpr::ComposeUnivar(outer, e) => {
                (uni::degree(outer) as u32) * e.degree_bound().max(1)
            }
        }
    }

    /// Expands to a sparse polynomial, failing if any intermediate exceeds
    /// `max_terms`.
    pub fn expand(&self, max_terms: usize) -> Result<SparsePoly> {
        let p = self.expand_inner(max_terms)?;
        Ok(p)
    }

    fn expand_inner(&self, cap: usize) -> Result<SparsePoly> {
        let check = |p: SparsePoly| -> Result<SparsePoly> {
            if p.num_terms() > cap {
                Err(Error::BudgetExhausted(format!(
                    "expansion exceeded the {cap}-term cap (got {})",
                    p.num_terms()
                )))
            } else {
                Ok(p)
            }
        };
        match self {
            PolyExpr::Leaf(p) => check(p.as_ref().clone()),
            PolyExpr::Sum(v) => {
                let mut acc = SparsePoly::zero(self.dim());
                for e in v {
                    acc = check(&acc + &e.expand_inner(cap)?)?;
                }
                Ok(acc)
            }
            PolyExpr::Prod(v) => {
                let mut acc = SparsePoly::one(self.dim());
                for e in v {
                    acc = check(&acc * &e.expand_inner(cap)?)?;
                }
                Ok(acc)
            }
            PolyExpr::Pow(e, n) => {
                let base = e.expand_inner(cap)?;
                let mut acc = SparsePoly::one(self.dim());
                let mut b = base;
                let mut k = *n;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = check(&acc * &b)?;
                    }
                    k >>= 1;
                    if k > 0 {
                        b = check(&b * &b)?;
                    }
                }
                Ok(acc)
            }
            PolyExpr::Scale(s, e) => Ok(e.expand_inner(cap)?.scale(s)),
            PolyExpr::ComposeUnivar(outer, e) => {
                let inner = e.expand_inner(cap)?;
                let mut acc = SparsePoly::zero(self.dim());
                for c in outer.iter().rev() {
                    acc = check(&acc * &inner)?;
                    acc.add_term(crate::poly::Monomial(vec![0; self.dim()]), c.clone());
                }
                Ok(acc)
            }
        }
    }
}

/// Interval evaluation of a sparse leaf over a box, term by term with tight
/// per-variable powers. Exact for affine leaves.
fn leaf_interval(p: &SparsePoly, b: &BoxDomain) -> RatInterval {
    let mut acc = RatInterval::zero();
    for (m, c) in p.terms() {
        let mut t = RatInterval::point(c.clone());
        for (i, e) in m.0.iter().enumerate() {
            if *e > 0 {
                t = t.mul(&b[i].pow(*e));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn sample_expr() -> PolyExpr {
        // ((x + y)^3 - 2) * (x - y) + 5, mixed constructors.
        let x = PolyExpr::leaf(SparsePoly::var(2, 0));
        let y = PolyExpr::leaf(SparsePoly::var(2, 1));
        let s = PolyExpr::sum(vec![x.clone(), y.clone()]).pow(3);
        let shifted = PolyExpr::sum(vec![s, PolyExpr::constant(2, int(-2))]);
        let d = PolyExpr::sum(vec![x, y.scale(int(-1))]);
        PolyExpr::sum(vec![
            PolyExpr::prod(vec![shifted, d]),
            PolyExpr::constant(2, int(5)),
        ])
    }

    #[test]
    fn dag_matches_expansion_on_points() {
        let e = sample_expr();
        let p = e.expand(10_000).unwrap();
        for (a, b) in [(rat(1, 3), rat(-2, 5)), (int(2), int(7)), (rat(-9, 4), rat(1, 7))] {
            let x = [a, b];
            assert_eq!(e.eval(&x), p.eval(&x));
        }
    }

    #[test]
    fn interval_encloses_samples() {
        let e = sample_expr();
        let b = vec![
            RatInterval::new(int(-1), int(1)),
            RatInterval::new(rat(-1, 2), rat(3, 2)),
        ];
        let enc = e.interval_eval(&b);
        for i in 0..=4 {
            for j in 0..=4 {
                let x = [
                    rat(-4 + 2 * i, 4),
                    rat(-2 + 4 * j, 8) + rat(1, 8) * int(j),
                ];
                if b[0].contains(&x[0]) && b[1].contains(&x[1]) {
                    let v = e.eval(&x);
                    assert!(enc.lo <= v && v <= enc.hi);
                }
            }
        }
    }

    #[test]
    fn restrict_line_matches_eval() {
        let e = sample_expr();
        let x0 = [rat(1, 2), int(-1)];
        let v = [int(1), rat(2, 3)];
        let c = e.restrict_line(&x0, &v);
        for k in -3..=3 {
            let t = rat(k, 2);
            let pt: Vec<Rational> = x0.iter().zip(&v).map(|(a, w)| a + w * &t).collect();
            assert_eq!(uni::eval(&c, &t), e.eval(&pt));
        }
    }

    #[test]
    fn expand_respects_cap() {
        let e = sample_expr().pow(6);
        assert!(e.expand(3).is_err());
        assert!(e.expand(100_000).is_ok());
    }

    #[test]
    fn dist_sq_interval_is_tight_on_center() {
        let c = [rat(1, 2), rat(1, 2)];
        let d = PolyExpr::dist_sq(&c);
        let b = vec![
            RatInterval::new(int(0), int(1)),
            RatInterval::new(int(0), int(1)),
        ];
        let enc = d.interval_eval(&b);
        // Structured form keeps the lower bound exactly zero.
        assert_eq!(enc.lo, int(0));
        assert_eq!(enc.hi, rat(1, 2));
    }
}
