//! Affine coordinates on a hyperplane section `{l = eps}`.
//!
//! The frame drops one ambient coordinate (one with the largest form
//! coefficient) and solves for it, giving exact rational charts both ways.

use crate::error::{Error, Result};
use crate::poly::{LinearForm, SparsePoly};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct SectionFrame {
    /// Ambient dimension.
    pub dim: usize,
    /// Dropped coordinate index.
    pub drop: usize,
    pub form: LinearForm,
    pub eps: Rational,
}

impl SectionFrame {
    pub fn new(form: LinearForm, eps: Rational) -> Result<Self> {
        let dim = form.dim();
        let drop = (0..dim)
            .max_by(|&i, &j| form.coeffs[i].abs().cmp(&form.coeffs[j].abs()))
            .ok_or_else(|| Error::Precondition("section of a 0-dimensional space".into()))?;
        if form.coeffs[drop].is_zero() {
            return Err(Error::Precondition(
                "section form has a zero gradient".into(),
            ));
        }
        Ok(SectionFrame { dim, drop, form, eps })
    }

    /// Solved coordinate as an affine function of the kept ones:
    /// `x_drop = (eps - c - sum a_i x_i) / a_drop`.
    fn solved(&self) -> LinearForm {
        let a_drop = &self.form.coeffs[self.drop];
        let mut coeffs = Vec::with_capacity(self.dim - 1);
        for (i, a) in self.form.coeffs.iter().enumerate() {
            if i != self.drop {
                coeffs.push(-a / a_drop);
            }
        }
        let constant = (&self.eps - &self.form.constant) / a_drop;
        LinearForm::new(coeffs, constant)
    }

    pub fn embed_point(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.dim - 1);
        let solved = self.solved().eval(y);
        let mut x = Vec::with_capacity(self.dim);
        let mut yi = y.iter();
        for i in 0..self.dim {
            if i == self.drop {
                x.push(solved.clone());
            } else {
                x.push(yi.next().unwrap().clone());
            }
        }
        x
    }

    pub fn project_point(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim);
        x.iter()
            .enumerate()
            .filter(|(i, _)| *i != self.drop)
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Ambient affine form restricted to the section, in `y`-coordinates.
    pub fn section_form(&self, f: &LinearForm) -> LinearForm {
        let solved = self.solved();
        let a_drop = f.coeffs[self.drop].clone();
        let mut coeffs = Vec::with_capacity(self.dim - 1);
        let mut si = solved.coeffs.iter();
        for (i, a) in f.coeffs.iter().enumerate() {
            if i != self.drop {
                let s = si.next().unwrap();
                coeffs.push(a + &a_drop * s);
            }
        }
        let constant = &f.constant + &a_drop * &solved.constant;
        LinearForm::new(coeffs, constant)
    }

    /// Extends a section polynomial to the ambient space, constant along
    /// the dropped axis (its restriction to `{l = eps}` is the original in
    /// the chart).
    pub fn lift_poly(&self, p: &SparsePoly) -> SparsePoly {
        assert_eq!(p.dim(), self.dim - 1);
        let mut vars = Vec::with_capacity(self.dim - 1);
        for i in 0..self.dim {
            if i != self.drop {
                vars.push(SparsePoly::var(self.dim, i));
            }
        }
        p.substitute(&vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn frame_round_trips() {
        // Section {x + 2y + z = 1} drops y.
        let form = LinearForm::new(vec![int(1), int(2), int(1)], int(0));
        let frame = SectionFrame::new(form.clone(), int(1)).unwrap();
        assert_eq!(frame.drop, 1);
        let y = vec![rat(1, 3), rat(-1, 2)];
        let x = frame.embed_point(&y);
        assert_eq!(form.eval(&x), int(1));
        assert_eq!(frame.project_point(&x), y);
    }

    #[test]
    fn section_form_agrees() {
        let form = LinearForm::new(vec![int(0), int(0), int(4)], int(-4));
        let frame = SectionFrame::new(form, int(1)).unwrap();
        let f = LinearForm::new(vec![int(1), int(-1), int(2)], rat(1, 2));
        let g = frame.section_form(&f);
        let y = vec![rat(2, 7), rat(-3, 5)];
        let x = frame.embed_point(&y);
        assert_eq!(g.eval(&y), f.eval(&x));
    }

    #[test]
    fn lift_poly_agrees_on_section() {
        let form = LinearForm::new(vec![int(1), int(1), int(1)], int(0));
        let frame = SectionFrame::new(form, int(1)).unwrap();
        let p2 = {
            let u = SparsePoly::var(2, 0);
            let v = SparsePoly::var(2, 1);
            &(&u * &v) - &u
        };
        let lifted = frame.lift_poly(&p2);
        let y = vec![rat(1, 4), rat(1, 3)];
        let x = frame.embed_point(&y);
        assert_eq!(lifted.eval(&x), p2.eval(&y));
    }
}
