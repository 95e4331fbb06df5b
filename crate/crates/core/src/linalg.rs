//! Exact dense linear algebra over the rationals (small systems only).

use crate::rational::Rational;
use num_traits::{One, Zero};

/// Row-reduces a copy of `m` (any shape), returning (rref, pivot columns).
pub fn rref(m: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (Vec::new(), Vec::new());
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let sub = &a[r][j] * &f;
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m).1.len()
}

/// Solves `A x = b` (A square or tall). Returns `None` when inconsistent or
/// underdetermined.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    if rows == 0 {
        return None;
    }
    let cols = a[0].len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (rr, pivots) = {
        let (rr, p) = rref(&aug);
        aug = rr.clone();
        (rr, p)
    };
    let _ = rr;
    // Inconsistent if a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    if pivots.len() < cols {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the nullspace of `A` (vectors `v` with `A v = 0`).
pub fn nullspace(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let (rr, pivots) = rref(a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rr[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Matrix-vector product.
pub fn matvec(a: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| crate::rational::dot(row, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn solve_small_system() {
        let a = vec![
            vec![int(2), int(1)],
            vec![int(1), int(-1)],
        ];
        let b = vec![int(5), int(1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![int(1), int(2), int(-1)]];
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(crate::rational::dot(&a[0], v), int(0));
        }
    }

    #[test]
    fn inconsistent_detected() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&a, &[int(1), int(3)]).is_none());
        assert_eq!(rank(&a), 1);
        let x = solve(&a, &[int(1), int(2)]);
        // Underdetermined also yields None.
        assert!(x.is_none());
        let _ = rat(1, 2);
    }
}
