//! Support chains.
//!
//! For a polytope `S` with sup-normalized facet forms `lam_i`, the level-`k`
//! support polyhedron `D_k` is cut out by one form per `k`-face `F`:
//! `l_F := sum of lam_i over facets containing F`. Then
//! `S = D_{d-1} subset ... subset D_0`, each `l_F` vanishes exactly on the
//! affine hull of `F` within the relevant region, and the chain drives the
//! level-by-level construction of polytope representations.

use super::{Face, FaceLattice, HPolyhedron};
use crate::error::{Error, Result};
use crate::poly::LinearForm;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct SupportLevel {
    pub k: usize,
    /// Indices into the lattice's face list, aligned with `forms`.
    pub faces: Vec<usize>,
    pub forms: Vec<LinearForm>,
}

#[derive(Clone, Debug)]
pub struct SupportChain {
    pub lattice: FaceLattice,
    /// Sup-normalized facet forms, aligned with the polyhedron's rows.
    pub facets: Vec<LinearForm>,
    /// Levels `0..dim` (level `dim-1` repeats the facet forms).
    pub levels: Vec<SupportLevel>,
}

impl SupportChain {
    /// The polyhedron `D_k`.
    pub fn d_k(&self, k: usize) -> HPolyhedron {
        HPolyhedron {
            dim: self.lattice.dim,
            ineqs: self.levels[k].forms.clone(),
        }
    }

    pub fn level(&self, k: usize) -> &SupportLevel {
        &self.levels[k]
    }

    /// Lattice face behind `levels[k].faces[i]`.
    pub fn face(&self, k: usize, i: usize) -> &Face {
        &self.lattice.faces[self.levels[k].faces[i]]
    }

    /// True when the face of `levels[kv].faces[iv]` is contained in the face
    /// of `levels[kg].faces[ig]`.
    pub fn face_contained(&self, kv: usize, iv: usize, kg: usize, ig: usize) -> bool {
        let small = self.face(kv, iv);
        let big = self.face(kg, ig);
        FaceLattice::face_leq(small, big)
    }
}

pub(super) fn build_chain(p: &HPolyhedron) -> Result<SupportChain> {
    let lattice = p.face_lattice()?;
    let d = p.dim;
    let facets: Vec<LinearForm> = p.ineqs.iter().map(|f| f.normalize_sup()).collect();
    let mut levels = Vec::with_capacity(d);
    for k in 0..d {
        let mut faces = Vec::new();
        let mut forms = Vec::new();
        for (idx, face) in lattice.faces.iter().enumerate() {
            if face.dim != k {
                continue;
            }
            let mut acc = LinearForm::new(vec![Rational::from_integer(0.into()); d], Rational::from_integer(0.into()));
            for &fi in &face.active {
                acc = acc.add(&facets[fi]);
            }
            faces.push(idx);
            forms.push(acc);
        }
        if faces.is_empty() && k == 0 {
            return Err(Error::Precondition(
                "support chain needs at least one vertex (polyhedron is not pointed)".into(),
            ));
        }
        levels.push(SupportLevel { k, faces, forms });
    }
    Ok(SupportChain { lattice, facets, levels })
}

/// Depth of `w` in the level-`k` vertex covering: the best over vertices
/// `v` of the worst margin `l_G(w)` over level-`k` faces `G` not containing
/// `v`. Positive depth at every point of interest certifies the covering
/// used by the recursive construction. Returns `None` when some vertex sees
/// no non-incident face (then the covering is vacuous at `w`).
pub fn covering_depth(chain: &SupportChain, k: usize, w: &[Rational]) -> Option<Rational> {
    let level = &chain.levels[k];
    let vertices: Vec<usize> = chain
        .lattice
        .faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.dim == 0)
        .map(|(i, _)| i)
        .collect();
    let mut best: Option<Rational> = None;
    for &vi in &vertices {
        let v = &chain.lattice.faces[vi];
        let mut worst: Option<Rational> = None;
        for (gi, form) in level.forms.iter().enumerate() {
            let g = chain.face(k, gi);
            if FaceLattice::face_leq(v, g) {
                continue; // face contains the vertex
            }
            let val = form.eval(w);
            worst = Some(match worst {
                None => val,
                Some(cur) => cur.min(val),
            });
        }
        match worst {
            None => return None,
            Some(wv) => {
                best = Some(match best {
                    None => wv,
                    Some(cur) => cur.max(wv),
                });
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn square() -> HPolyhedron {
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
    fn square_chain_levels() {
        let chain = square().support_chain().unwrap();
        assert_eq!(chain.levels.len(), 2);
        // D_0: four vertex forms, e.g. x + y at the origin vertex.
        let d0 = chain.d_k(0);
        assert_eq!(d0.ineqs.len(), 4);
        assert!(d0.contains(&[rat(1, 2), rat(1, 2)]));
        // D_0 is the diamond |x + y - 1| + ... : corner of the square is on
        // its boundary, outside points of the square's bounding box are out.
        assert!(d0.contains(&[int(0), int(0)]));
        assert!(!d0.contains(&[rat(-1, 4), rat(-1, 4)]));
        // D_1 = S itself.
        let d1 = chain.d_k(1);
        assert_eq!(d1.ineqs.len(), 4);
        assert!(d1.contains(&[rat(1, 2), rat(1, 2)]));
        assert!(!d1.contains(&[rat(3, 2), rat(1, 2)]));
    }

    #[test]
    fn covering_depth_positive_inside() {
        let chain = square().support_chain().unwrap();
        let depth = covering_depth(&chain, 0, &[rat(1, 2), rat(1, 2)]).unwrap();
        assert!(depth > int(0));
        // Outside the diamond along an axis every vertex sees a negative
        // non-incident form, so the depth goes negative.
        let out = covering_depth(&chain, 0, &[int(3), int(0)]).unwrap();
        assert!(out < int(0));
    }
}
