//! Face lattice by exhaustive active-set LPs.
//!
//! For every subset `A` of the (irredundant) facets, solve
//! `max t` s.t. `l_i(x) = 0 (i in A)`, `l_j(x) >= t (j not in A)`, `t <= 1`.
//! A strictly positive optimum certifies that `A` is exactly the active set
//! of a nonempty face and the witness is a relative-interior point. This is
//! exponential in the facet count and entirely adequate below 16 facets,
//! bounded or not.

use super::HPolyhedron;
use crate::error::{Error, Result};
use crate::lp::{Cmp, LinProg, LpOutcome};
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Face {
    /// Indices of facets active on the face (its exact active set).
    pub active: Vec<usize>,
    /// Affine dimension of the face.
    pub dim: usize,
    /// Relative-interior point.
    pub witness: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    /// Ambient (= polytope) dimension.
    pub dim: usize,
    /// All nonempty faces, including the body itself (empty active set).
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn faces_of_dim(&self, k: usize) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.dim == k).collect()
    }

    /// Vertices in deterministic (lexicographic) order.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let mut vs: Vec<Vec<Rational>> = self
            .faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.witness.clone())
            .collect();
        vs.sort();
        vs
    }

    /// Face counts by dimension, `f[k] = #k-faces`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.dim + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// Euler relation for bounded polytopes:
    /// `sum_k (-1)^k f_k = 1` (the body included).
    pub fn euler_ok(&self) -> bool {
        let f = self.f_vector();
        let mut acc: i64 = 0;
        for (k, &count) in f.iter().enumerate() {
            let signed = count as i64;
            if k % 2 == 0 {
                acc += signed;
            } else {
                acc -= signed;
            }
        }
        acc == 1
    }

    /// True when every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> bool {
        self.faces
            .iter()
            .filter(|f| f.dim == 0)
            .all(|f| f.active.len() == self.dim)
    }

    /// Largest number of facets through any face; `dim` for simple
    /// polytopes, larger at non-simple vertices (octahedron: 4).
    pub fn simplicity_profile(&self) -> usize {
        self.faces.iter().map(|f| f.active.len()).max().unwrap_or(0)
    }

    /// Containment test between canonical faces: `f <= g` iff
    /// `active(g) subset-of active(f)`.
    pub fn face_leq(f: &Face, g: &Face) -> bool {
        g.active.iter().all(|i| f.active.contains(i))
    }
}

pub(super) fn build_lattice(p: &HPolyhedron) -> Result<FaceLattice> {
    let m = p.ineqs.len();
    if m > 16 {
        return Err(Error::Precondition(format!(
            "face lattice enumeration is capped at 16 facets, got {m}"
        )));
    }
    match p.feasibility()? {
        super::Feasibility::FullDim { .. } => {}
        _ => {
            return Err(Error::Precondition(
                "face lattice requires a full-dimensional polyhedron".into(),
            ))
        }
    }
    let d = p.dim;
    let mut faces = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let active: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        // max t, l_i(x) = 0 on active, l_j(x) >= t off it, t <= 1.
        let mut lp = LinProg::new(d + 1);
        for (i, f) in p.ineqs.iter().enumerate() {
            let g = f.normalize_sup();
            let mut row = g.coeffs.clone();
            if active.contains(&i) {
                row.push(Rational::zero());
                lp.constraint(row, Cmp::Eq, -g.constant.clone());
            } else {
                row.push(-Rational::one());
                lp.constraint(row, Cmp::Ge, -g.constant.clone());
            }
        }
        let mut trow = vec![Rational::zero(); d + 1];
        trow[d] = Rational::one();
        lp.constraint(trow.clone(), Cmp::Le, Rational::one());
        lp.maximize(trow);
        match lp.solve()? {
            LpOutcome::Optimal { x, value } if value.is_positive() => {
                let rows: Vec<Vec<Rational>> = active
                    .iter()
                    .map(|&i| p.ineqs[i].coeffs.clone())
                    .collect();
                let rank = if rows.is_empty() { 0 } else { crate::linalg::rank(&rows) };
                faces.push(Face {
                    active,
                    dim: d - rank,
                    witness: x[..d].to_vec(),
                });
            }
            _ => {}
        }
    }
    // Sanity: facets of the input reappear as (d-1)-faces.
    let facet_count = faces.iter().filter(|f| f.dim == d - 1).count();
    if facet_count != m {
        return Err(Error::Internal(format!(
            "face lattice lost facets: {facet_count} of {m} (input not irredundant?)"
        )));
    }
    Ok(FaceLattice { dim: d, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LinearForm;
    use crate::rational::int;

    fn hp(dim: usize, rows: Vec<(Vec<i64>, i64)>) -> HPolyhedron {
        HPolyhedron::new(
            dim,
            rows.into_iter()
                .map(|(a, c)| {
                    LinearForm::new(a.into_iter().map(int).collect(), int(c))
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn unit_square_lattice() {
        let s = hp(2, vec![
            (vec![1, 0], 0),
            (vec![-1, 0], 1),
            (vec![0, 1], 0),
            (vec![0, -1], 1),
        ]);
        let l = s.face_lattice().unwrap();
        assert_eq!(l.f_vector(), vec![4, 4, 1]);
        assert!(l.euler_ok());
        assert!(l.is_simple());
        assert_eq!(l.simplicity_profile(), 2);
        let vs = l.vertices();
        assert_eq!(vs.len(), 4);
        assert_eq!(vs[0], vec![int(0), int(0)]);
        assert_eq!(vs[3], vec![int(1), int(1)]);
    }

    #[test]
    fn octahedron_lattice() {
        let mut rows = Vec::new();
        for sx in [1i64, -1] {
            for sy in [1i64, -1] {
                for sz in [1i64, -1] {
                    rows.push((vec![-sx, -sy, -sz], 1i64));
                }
            }
        }
        let oct = hp(3, rows);
        let l = oct.face_lattice().unwrap();
        assert_eq!(l.f_vector(), vec![6, 12, 8, 1]);
        assert!(l.euler_ok());
        assert!(!l.is_simple());
        assert_eq!(l.simplicity_profile(), 4);
    }

    #[test]
    fn unbounded_quadrant_lattice() {
        let q = hp(2, vec![(vec![1, 0], 0), (vec![0, 1], 0)]);
        let l = q.face_lattice().unwrap();
        // Vertex, two edges, body.
        assert_eq!(l.f_vector(), vec![1, 2, 1]);
        assert_eq!(l.vertices(), vec![vec![int(0), int(0)]]);
    }
}
