//! Exact rational linear programming (dense two-phase simplex).
//!
//! Small problems only: geometry predicates (redundancy, face witnesses,
//! interior points) and cushion-polynomial fitting. Free variables are
//! split into differences of nonnegatives; Dantzig pricing runs first and
//! switches to Bland's rule after a fixed number of pivots, so the solver
//! always terminates.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Unbounded,
    Infeasible,
}

/// LP over free rational variables: optimize `c . x` subject to rows
/// `a . x (<=|>=|=) b`.
#[derive(Clone, Debug)]
pub struct LinProg {
    n: usize,
    rows: Vec<(Vec<Rational>, Cmp, Rational)>,
    objective: Vec<Rational>,
    maximize: bool,
}

impl LinProg {
    pub fn new(n: usize) -> Self {
        LinProg {
            n,
            rows: Vec::new(),
            objective: vec![Rational::zero(); n],
            maximize: true,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn constraint(&mut self, coeffs: Vec<Rational>, cmp: Cmp, rhs: Rational) {
        assert_eq!(coeffs.len(), self.n);
        self.rows.push((coeffs, cmp, rhs));
    }

    pub fn maximize(&mut self, c: Vec<Rational>) {
        assert_eq!(c.len(), self.n);
        self.objective = c;
        self.maximize = true;
    }

    pub fn minimize(&mut self, c: Vec<Rational>) {
        assert_eq!(c.len(), self.n);
        self.objective = c;
        self.maximize = false;
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        // Standard form: min c.y, A y = b, y >= 0, b >= 0.
        // Free x_j -> y_{2j} - y_{2j+1}; Le rows gain a slack (+1, basic when
        // rhs >= 0 after normalization), Ge rows a surplus (-1), Eq nothing;
        // rows whose rhs is negative are negated; rows without a ready basic
        // column get an artificial.
        let m = self.rows.len();
        let nf = 2 * self.n;
        let mut ncols = nf;
        let mut slack_col = vec![usize::MAX; m];
        for (i, (_, cmp, _)) in self.rows.iter().enumerate() {
            if matches!(cmp, Cmp::Le | Cmp::Ge) {
                slack_col[i] = ncols;
                ncols += 1;
            }
        }
        let mut a: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut b: Vec<Rational> = Vec::with_capacity(m);
        for (i, (coeffs, cmp, rhs)) in self.rows.iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols];
            for (j, c) in coeffs.iter().enumerate() {
                row[2 * j] = c.clone();
                row[2 * j + 1] = -c.clone();
            }
            match cmp {
                Cmp::Le => row[slack_col[i]] = Rational::one(),
                Cmp::Ge => row[slack_col[i]] = -Rational::one(),
                Cmp::Eq => {}
            }
            let mut rhs = rhs.clone();
            if rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                rhs = -rhs;
            }
            a.push(row);
            b.push(rhs);
        }
        // Basic column per row: a slack with coefficient +1, else artificial.
        let mut basis = vec![usize::MAX; m];
        let mut art_cols = Vec::new();
        for i in 0..m {
            let sc = slack_col[i];
            if sc != usize::MAX && a[i][sc].is_one() {
                basis[i] = sc;
            }
        }
        for i in 0..m {
            if basis[i] == usize::MAX {
                for row in a.iter_mut() {
                    row.push(Rational::zero());
                }
                a[i][ncols] = Rational::one();
                basis[i] = ncols;
                art_cols.push(ncols);
                ncols += 1;
            }
        }
        let mut t = Tableau { a, b, basis, ncols };

        if !art_cols.is_empty() {
            // Phase 1: minimize the sum of artificials.
            let mut c1 = vec![Rational::zero(); ncols];
            for &j in &art_cols {
                c1[j] = Rational::one();
            }
            let (opt, val) = t.run(&c1)?;
            if !opt {
                return Err(Error::Internal("phase-1 LP unbounded".into()));
            }
            if val.is_positive() {
                return Ok(LpOutcome::Infeasible);
            }
            // Pivot remaining artificials out of the basis where possible.
            for i in 0..m {
                if art_cols.contains(&t.basis[i]) {
                    if let Some(j) = (0..nf + (slack_col.iter().filter(|&&s| s != usize::MAX).count()))
                        .find(|&j| !art_cols.contains(&j) && !t.a[i][j].is_zero())
                    {
                        t.pivot(i, j);
                    }
                    // Otherwise the row is all zeros outside artificials
                    // (redundant); a zero-valued artificial may stay basic.
                }
            }
        }

        // Phase 2.
        let mut c2 = vec![Rational::zero(); ncols];
        for j in 0..self.n {
            let cj = if self.maximize {
                -self.objective[j].clone()
            } else {
                self.objective[j].clone()
            };
            c2[2 * j] = cj.clone();
            c2[2 * j + 1] = -cj;
        }
        // Forbid artificials from re-entering.
        for &j in &art_cols {
            c2[j] = Rational::zero();
        }
        let banned = art_cols;
        let (opt, val) = t.run_banned(&c2, &banned)?;
        if !opt {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![Rational::zero(); self.n];
        for (i, &bi) in t.basis.iter().enumerate() {
            if bi < nf {
                let j = bi / 2;
                if bi % 2 == 0 {
                    x[j] += &t.b[i];
                } else {
                    x[j] -= &t.b[i];
                }
            }
        }
        let value = if self.maximize { -val } else { val };
        Ok(LpOutcome::Optimal { x, value })
    }
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            *x *= &inv;
        }
        self.b[r] *= &inv;
        for i in 0..self.a.len() {
            if i != r && !self.a[i][c].is_zero() {
                let f = self.a[i][c].clone();
                for j in 0..self.ncols {
                    let sub = &self.a[r][j] * &f;
                    self.a[i][j] -= sub;
                }
                let sub = &self.b[r] * &f;
                self.b[i] -= sub;
            }
        }
        self.basis[r] = c;
    }

    fn run(&mut self, c: &[Rational]) -> Result<(bool, Rational)> {
        self.run_banned(c, &[])
    }

    /// Simplex iterations for `min c.y`; returns (optimal?, value). Dantzig
    /// pricing for a while, then Bland's rule for guaranteed termination.
    fn run_banned(&mut self, c: &[Rational], banned: &[usize]) -> Result<(bool, Rational)> {
        let m = self.a.len();
        let dantzig_limit = 200usize;
        let hard_limit = 20_000usize;
        for iter in 0..hard_limit {
            // Reduced costs r_j = c_j - c_B . col_j (tableau is B^-1 A).
            let cb: Vec<Rational> = self.basis.iter().map(|&j| c[j].clone()).collect();
            let mut entering: Option<usize> = None;
            let mut best = Rational::zero();
            for j in 0..self.ncols {
                if banned.contains(&j) || self.basis.contains(&j) {
                    continue;
                }
                let mut rj = c[j].clone();
                for i in 0..m {
                    if !cb[i].is_zero() && !self.a[i][j].is_zero() {
                        let sub = &cb[i] * &self.a[i][j];
                        rj -= sub;
                    }
                }
                if rj.is_negative() {
                    if iter >= dantzig_limit {
                        entering = Some(j);
                        break; // Bland: first improving index.
                    }
                    if entering.is_none() || rj < best {
                        best = rj;
                        entering = Some(j);
                    }
                }
            }
            let Some(e) = entering else {
                let mut val = Rational::zero();
                for i in 0..m {
                    if !cb[i].is_zero() {
                        val += &cb[i] * &self.b[i];
                    }
                }
                return Ok((true, val));
            };
            // Ratio test (Bland tie-break on basis index).
            let mut leave: Option<usize> = None;
            let mut best_ratio: Option<Rational> = None;
            for i in 0..m {
                if self.a[i][e].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][e];
                    let better = match &best_ratio {
                        None => true,
                        Some(br) => {
                            ratio < *br
                                || (ratio == *br
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best_ratio = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(l) = leave else {
                return Ok((false, Rational::zero()));
            };
            self.pivot(l, e);
        }
        Err(Error::Internal("simplex exceeded the pivot limit".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn maximize_over_triangle() {
        // max x + y st x >= 0, y >= 0, x + 2y <= 4, 3x + y <= 6
        let mut lp = LinProg::new(2);
        lp.constraint(vec![int(1), int(0)], Cmp::Ge, int(0));
        lp.constraint(vec![int(0), int(1)], Cmp::Ge, int(0));
        lp.constraint(vec![int(1), int(2)], Cmp::Le, int(4));
        lp.constraint(vec![int(3), int(1)], Cmp::Le, int(6));
        lp.maximize(vec![int(1), int(1)]);
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(x, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        let mut lp = LinProg::new(1);
        lp.constraint(vec![int(1)], Cmp::Ge, int(2));
        lp.constraint(vec![int(1)], Cmp::Le, int(1));
        lp.maximize(vec![int(1)]);
        assert!(matches!(lp.solve().unwrap(), LpOutcome::Infeasible));
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinProg::new(2);
        lp.constraint(vec![int(1), int(-1)], Cmp::Ge, int(0));
        lp.maximize(vec![int(1), int(0)]);
        assert!(matches!(lp.solve().unwrap(), LpOutcome::Unbounded));
    }

    #[test]
    fn equality_constraints_and_free_vars() {
        // min x - y st x + y = 1, x - y = -3  ->  x = -1, y = 2.
        let mut lp = LinProg::new(2);
        lp.constraint(vec![int(1), int(1)], Cmp::Eq, int(1));
        lp.constraint(vec![int(1), int(-1)], Cmp::Eq, int(-3));
        lp.minimize(vec![int(1), int(-1)]);
        match lp.solve().unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![int(-1), int(2)]);
                assert_eq!(value, int(-3));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_guard() {
        // Klee-Minty-ish small instance still terminates.
        let mut lp = LinProg::new(3);
        lp.constraint(vec![int(1), int(0), int(0)], Cmp::Le, int(1));
        lp.constraint(vec![int(4), int(1), int(0)], Cmp::Le, int(8));
        lp.constraint(vec![int(8), int(4), int(1)], Cmp::Le, int(64));
        for j in 0..3 {
            let mut e = vec![int(0), int(0), int(0)];
            e[j] = int(1);
            lp.constraint(e, Cmp::Ge, int(0));
        }
        lp.maximize(vec![int(4), int(2), int(1)]);
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(64)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
