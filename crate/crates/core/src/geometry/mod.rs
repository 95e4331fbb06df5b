//! Polyhedral geometry over exact rationals.
//!
//! An [`HPolyhedron`] is a finite list of affine inequalities `a . x + c >= 0`.
//! Everything downstream (support chains, face lattices, representation
//! pipelines) assumes the facet list has been run through
//! [`HPolyhedron::irredundant`] first; the subset-LP face lattice relies on
//! it.

mod faces;
mod sections;
mod supports;

pub use faces::{Face, FaceLattice};
pub use sections::SectionFrame;
pub use supports::{covering_depth, SupportChain, SupportLevel};

use crate::error::{Error, Result};
use crate::interval::{BoxDomain, RatInterval};
use crate::lp::{Cmp, LinProg, LpOutcome};
use crate::poly::LinearForm;
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Closed convex polyhedron `{x : a_i . x + c_i >= 0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPolyhedron {
    pub dim: usize,
    pub ineqs: Vec<LinearForm>,
}

/// Outcome of the interior-point LP.
#[derive(Clone, Debug)]
pub enum Feasibility {
    /// No point satisfies all inequalities.
    Empty,
    /// Nonempty but with empty interior (some inequality is tight
    /// everywhere); the witness satisfies all inequalities.
    Degenerate { witness: Vec<Rational> },
    /// Full-dimensional; the witness is interior.
    FullDim { witness: Vec<Rational> },
}

impl HPolyhedron {
    pub fn new(dim: usize, ineqs: Vec<LinearForm>) -> Result<Self> {
        for (i, f) in ineqs.iter().enumerate() {
            if f.dim() != dim {
                return Err(Error::Parse(format!(
                    "inequality {i} has arity {}, expected {dim}",
                    f.dim()
                )));
            }
        }
        Ok(HPolyhedron { dim, ineqs })
    }

    /// Whole space (no inequalities).
    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron { dim, ineqs: Vec::new() }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.ineqs.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn contains_strict(&self, x: &[Rational]) -> bool {
        self.ineqs.iter().all(|f| f.eval(x).is_positive())
    }

    pub fn contains_f64(&self, x: &[f64]) -> bool {
        self.ineqs.iter().all(|f| f.eval_f64(x) >= 0.0)
    }

    /// Minimum margin `min_i l_i(x)` (`+inf`-ish absent constraints means
    /// whole space; callers treat `None` as unconstrained).
    pub fn min_margin(&self, x: &[Rational]) -> Option<Rational> {
        self.ineqs.iter().map(|f| f.eval(x)).min()
    }

    /// Interior-point LP: `max t` s.t. `l_i(x) >= t`, `t <= 1`, with
    /// sup-normalized forms so `t` measures depth.
    pub fn feasibility(&self) -> Result<Feasibility> {
        if self.ineqs.is_empty() {
            return Ok(Feasibility::FullDim { witness: vec![Rational::zero(); self.dim] });
        }
        let n = self.dim + 1;
        let mut lp = LinProg::new(n);
        for f in &self.ineqs {
            let g = f.normalize_sup();
            let mut row = g.coeffs.clone();
            row.push(-Rational::one());
            lp.constraint(row, Cmp::Ge, -g.constant.clone());
        }
        let mut trow = vec![Rational::zero(); n];
        trow[self.dim] = Rational::one();
        lp.constraint(trow.clone(), Cmp::Le, Rational::one());
        lp.maximize(trow);
        match lp.solve()? {
            LpOutcome::Infeasible => Ok(Feasibility::Empty),
            LpOutcome::Unbounded => Err(Error::Internal("capped LP unbounded".into())),
            LpOutcome::Optimal { x, value } => {
                let witness = x[..self.dim].to_vec();
                if value.is_positive() {
                    Ok(Feasibility::FullDim { witness })
                } else if value.is_zero() {
                    Ok(Feasibility::Degenerate { witness })
                } else {
                    Ok(Feasibility::Empty)
                }
            }
        }
    }

    /// Greedily removes redundant inequalities. Returns the reduced
    /// polyhedron and the kept original indices.
    pub fn irredundant(&self) -> Result<(HPolyhedron, Vec<usize>)> {
        let mut kept: Vec<usize> = (0..self.ineqs.len()).collect();
        // Test candidates from the back so that when two constraints tie
        // (e.g. duplicates) the earliest occurrence is the one kept.
        let mut i = kept.len();
        while i > 0 {
            i -= 1;
            let candidate = kept[i];
            // Minimize l_candidate subject to the others.
            let mut lp = LinProg::new(self.dim);
            for &j in &kept {
                if j != candidate {
                    let f = &self.ineqs[j];
                    lp.constraint(f.coeffs.clone(), Cmp::Ge, -f.constant.clone());
                }
            }
            let f = &self.ineqs[candidate];
            lp.minimize(f.coeffs.clone());
            let redundant = match lp.solve()? {
                LpOutcome::Unbounded => false,
                LpOutcome::Infeasible => true, // others already empty
                LpOutcome::Optimal { value, .. } => value + &f.constant >= Rational::zero(),
            };
            if redundant {
                kept.remove(i);
            }
        }
        let forms = kept.iter().map(|&j| self.ineqs[j].clone()).collect();
        Ok((HPolyhedron { dim: self.dim, ineqs: forms }, kept))
    }

    /// Exact coordinate extremes; `None` entries mean unbounded in that
    /// direction.
    pub fn coordinate_bounds(&self) -> Result<Vec<(Option<Rational>, Option<Rational>)>> {
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut obj = vec![Rational::zero(); self.dim];
            obj[i] = Rational::one();
            let mut lo = None;
            let mut hi = None;
            for minimize in [true, false] {
                let mut lp = LinProg::new(self.dim);
                for f in &self.ineqs {
                    lp.constraint(f.coeffs.clone(), Cmp::Ge, -f.constant.clone());
                }
                if minimize {
                    lp.minimize(obj.clone());
                } else {
                    lp.maximize(obj.clone());
                }
                match lp.solve()? {
                    LpOutcome::Optimal { value, .. } => {
                        if minimize {
                            lo = Some(value);
                        } else {
                            hi = Some(value);
                        }
                    }
                    LpOutcome::Unbounded => {}
                    LpOutcome::Infeasible => {
                        return Err(Error::Precondition(
                            "coordinate bounds of an empty polyhedron".into(),
                        ))
                    }
                }
            }
            out.push((lo, hi));
        }
        Ok(out)
    }

    pub fn is_bounded(&self) -> Result<bool> {
        Ok(self
            .coordinate_bounds()?
            .iter()
            .all(|(lo, hi)| lo.is_some() && hi.is_some()))
    }

    /// Exact bounding box; `None` when unbounded.
    pub fn bounding_box(&self) -> Result<Option<BoxDomain>> {
        let bounds = self.coordinate_bounds()?;
        let mut out = Vec::with_capacity(self.dim);
        for (lo, hi) in bounds {
            match (lo, hi) {
                (Some(a), Some(b)) => out.push(RatInterval::new(a, b)),
                _ => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Basis of the lineality space (directions with `A u = 0`).
    pub fn lineality_basis(&self) -> Vec<Vec<Rational>> {
        if self.ineqs.is_empty() {
            return (0..self.dim)
                .map(|i| {
                    let mut v = vec![Rational::zero(); self.dim];
                    v[i] = Rational::one();
                    v
                })
                .collect();
        }
        let rows: Vec<Vec<Rational>> = self.ineqs.iter().map(|f| f.coeffs.clone()).collect();
        crate::linalg::nullspace(&rows)
    }

    /// Extreme rays of the recession cone `{u : A u >= 0}`. Requires the
    /// cone to be pointed (trivial lineality).
    pub fn recession_rays(&self) -> Result<Vec<Vec<Rational>>> {
        if !self.lineality_basis().is_empty() {
            return Err(Error::Precondition(
                "recession cone is not pointed; split the lineality space first".into(),
            ));
        }
        let d = self.dim;
        let rows: Vec<Vec<Rational>> = self.ineqs.iter().map(|f| f.coeffs.clone()).collect();
        let m = rows.len();
        let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
        let mut subsets = vec![Vec::new()];
        for _ in 1..d {
            let mut next = Vec::new();
            for s in &subsets {
                let start = s.last().map(|&x| x + 1).unwrap_or(0);
                for j in start..m {
                    let mut t = s.clone();
                    t.push(j);
                    next.push(t);
                }
            }
            subsets = next;
        }
        if d == 1 {
            subsets = vec![Vec::new()];
        }
        for s in &subsets {
            let sub: Vec<Vec<Rational>> = s.iter().map(|&i| rows[i].clone()).collect();
            let ns = crate::linalg::nullspace(&sub);
            if ns.len() != 1 {
                continue;
            }
            for cand in [ns[0].clone(), ns[0].iter().map(|c| -c.clone()).collect()] {
                if rows
                    .iter()
                    .all(|r| !rational::dot(r, &cand).is_negative())
                {
                    let norm = rational::sup_norm(&cand);
                    let canon: Vec<Rational> = cand.iter().map(|c| c / &norm).collect();
                    found.insert(canon);
                }
            }
        }
        // Drop rays that are convex combinations of others (non-extreme):
        // a ray is extreme iff the active set at it has rank d-1.
        let rays: Vec<Vec<Rational>> = found
            .into_iter()
            .filter(|v| {
                let active: Vec<Vec<Rational>> = rows
                    .iter()
                    .filter(|r| rational::dot(r, v).is_zero())
                    .cloned()
                    .collect();
                if d == 1 {
                    true
                } else {
                    crate::linalg::rank(&active) == d - 1
                }
            })
            .collect();
        Ok(rays)
    }

    /// Homothety with the given center and positive rational factor.
    pub fn dilate(&self, center: &[Rational], lambda: &Rational) -> HPolyhedron {
        assert!(lambda.is_positive());
        let ineqs = self
            .ineqs
            .iter()
            .map(|f| {
                let az = rational::dot(&f.coeffs, center);
                let c = (lambda - Rational::one()) * &az + lambda * &f.constant;
                LinearForm::new(f.coeffs.clone(), c)
            })
            .collect();
        HPolyhedron { dim: self.dim, ineqs }
    }

    /// Subset-LP face lattice. Requires an irredundant, full-dimensional
    /// description with at most 16 facets.
    pub fn face_lattice(&self) -> Result<FaceLattice> {
        faces::build_lattice(self)
    }

    /// Support chain `D_0, ..., D_{d-1}` (see [`supports`]).
    pub fn support_chain(&self) -> Result<SupportChain> {
        supports::build_chain(self)
    }
}

/// Centroid of a point set.
pub fn centroid(points: &[Vec<Rational>]) -> Vec<Rational> {
    assert!(!points.is_empty());
    let d = points[0].len();
    let n = Rational::from_integer((points.len() as i64).into());
    (0..d)
        .map(|i| points.iter().map(|p| p[i].clone()).sum::<Rational>() / &n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn square() -> HPolyhedron {
        // x >= 0, 1 - x >= 0, y >= 0, 1 - y >= 0
        HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], int(0)),
                LinearForm::new(vec![int(-1), int(0)], int(1)),
                LinearForm::new(vec![int(0), int(1)], int(0)),
                LinearForm::new(vec![int(0), int(-1)], int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn feasibility_classifies() {
        let s = square();
        assert!(matches!(s.feasibility().unwrap(), Feasibility::FullDim { .. }));
        let mut thin = s.clone();
        thin.ineqs.push(LinearForm::new(vec![int(0), int(-1)], int(0))); // y <= 0
        assert!(matches!(thin.feasibility().unwrap(), Feasibility::Degenerate { .. }));
        let mut empty = s.clone();
        empty.ineqs.push(LinearForm::new(vec![int(1), int(0)], int(-2))); // x >= 2
        assert!(matches!(empty.feasibility().unwrap(), Feasibility::Empty));
    }

    #[test]
    fn irredundant_removes_extra() {
        let mut s = square();
        s.ineqs.push(LinearForm::new(vec![int(1), int(1)], int(1))); // x + y + 1 >= 0, slack
        s.ineqs.push(LinearForm::new(vec![int(1), int(0)], int(0))); // duplicate of x >= 0
        let (red, kept) = s.irredundant().unwrap();
        assert_eq!(red.ineqs.len(), 4);
        assert_eq!(kept, vec![0, 1, 2, 3]);
    }

    #[test]
    fn bounds_and_rays() {
        let s = square();
        let bb = s.bounding_box().unwrap().unwrap();
        assert_eq!(bb[0].lo, int(0));
        assert_eq!(bb[1].hi, int(1));
        assert!(s.is_bounded().unwrap());
        assert!(s.recession_rays().unwrap().is_empty());

        // Quadrant: rays are the two axes.
        let q = HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], int(0)),
                LinearForm::new(vec![int(0), int(1)], int(0)),
            ],
        )
        .unwrap();
        let rays = q.recession_rays().unwrap();
        assert_eq!(rays.len(), 2);
        assert!(!q.is_bounded().unwrap());

        // Slab in the plane: lineality along y.
        let slab = HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], int(0)),
                LinearForm::new(vec![int(-1), int(0)], int(1)),
            ],
        )
        .unwrap();
        assert_eq!(slab.lineality_basis().len(), 1);
        assert!(slab.recession_rays().is_err());
    }

    #[test]
    fn dilate_scales_about_center() {
        let s = square();
        let c = vec![rat(1, 2), rat(1, 2)];
        let big = s.dilate(&c, &rat(3, 2));
        assert!(big.contains(&[rat(-1, 8), rat(1, 2)]));
        assert!(!big.contains(&[rat(-3, 8), rat(1, 2)]));
        assert!(big.contains(&[rat(5, 4), rat(5, 4)]));
    }
}
