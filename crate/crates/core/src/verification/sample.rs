//! Stratified sampling of polyhedra for representation checks.
//!
//! A single uniform sampler concentrates points where volume is, which is
//! exactly where representations rarely fail. The sampler here builds one
//! stratum per face of the target (the relative interior of every vertex,
//! edge, ..., facet, plus the interior itself), an exterior shell around
//! the bounding window, and far-field shells at radii 1e3 and 1e6 along
//! validated recession directions and random directions. Every emitted
//! point has exact rational coordinates, so membership checks downstream
//! stay exact.
//!
//! Samplers are best effort: strata that yield no points (the exterior of
//! the whole space, say) are flagged, not fatal.

use crate::budget::sub_seed;
use crate::error::{Error, Result};
use crate::geometry::HPolyhedron;
use crate::linalg;
use crate::rational::{self, Rational};
use crate::separation::sides::Window;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StratumCount;

/// A sample point tagged with the stratum that produced it.
#[derive(Clone, Debug)]
pub struct LabeledPoint {
    pub label: String,
    pub point: Vec<Rational>,
}

/// All samples of one run plus the strata that came up empty.
#[derive(Clone, Debug, Default)]
pub struct SampleSet {
    pub points: Vec<LabeledPoint>,
    pub empty_strata: Vec<String>,
}

impl SampleSet {
    fn push(&mut self, label: &str, point: Vec<Rational>) {
        self.points.push(LabeledPoint { label: label.to_string(), point });
    }

    /// Per-stratum counts in first-appearance order; empty strata last.
    pub fn counts(&self) -> Vec<StratumCount> {
        let mut out: Vec<StratumCount> = Vec::new();
        for p in &self.points {
            match out.iter_mut().find(|c| c.label == p.label) {
                Some(c) => c.tested += 1,
                None => out.push(StratumCount { label: p.label.clone(), tested: 1 }),
            }
        }
        for label in &self.empty_strata {
            out.push(StratumCount { label: label.clone(), tested: 0 });
        }
        out
    }
}

/// Directions `v` with `<a, v> >= 0` for every inequality `a.x + c >= 0`,
/// i.e. exactly the directions along which the polyhedron recedes from any
/// of its points. Candidates are the signed axes, the signed all-ones
/// vector, the lineality basis, and the extreme rays when the recession
/// cone is pointed; the filter below is exact, so every returned direction
/// is provably a recession direction.
pub fn exact_recession_dirs(p: &HPolyhedron) -> Vec<Vec<Rational>> {
    let d = p.dim;
    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = rational::int(1);
        candidates.push(e.clone());
        e[i] = rational::int(-1);
        candidates.push(e);
    }
    candidates.push(vec![rational::int(1); d]);
    candidates.push(vec![rational::int(-1); d]);
    for b in p.lineality_basis() {
        candidates.push(b.iter().map(|v| -v).collect());
        candidates.push(b);
    }
    if p.lineality_basis().is_empty() {
        if let Ok(rays) = p.recession_rays() {
            candidates.extend(rays);
        }
    }
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for v in candidates {
        if v.iter().all(|c| c.is_zero()) || out.contains(&v) {
            continue;
        }
        let recedes = p
            .ineqs
            .iter()
            .all(|l| !rational::dot(&l.coeffs, &v).is_negative());
        if recedes {
            out.push(v);
        }
    }
    out
}

/// A bounded window around the target used by the interior and exterior
/// samplers; unbounded coordinates are clipped.
pub(crate) fn core_window(p: &HPolyhedron) -> Result<Window> {
    let bounds = p.coordinate_bounds()?;
    let mut lo = Vec::with_capacity(p.dim);
    let mut hi = Vec::with_capacity(p.dim);
    for (l, h) in bounds {
        let lo_i = match (&l, &h) {
            (Some(l), _) => l.clone(),
            (None, Some(h)) => (h - rational::int(8)).min(rational::int(-4)),
            (None, None) => rational::int(-4),
        };
        let hi_i = match (&l, &h) {
            (_, Some(h)) => h.clone(),
            (Some(l), None) => (l + rational::int(8)).max(rational::int(4)),
            (None, None) => rational::int(4),
        };
        lo.push(lo_i);
        hi.push(hi_i);
    }
    Window::new(lo, hi)
}

fn rand_unit(rng: &mut ChaCha8Rng) -> Rational {
    rational::dyadic(rng.gen_range(0..=(1i64 << 12)), 12)
}

fn rand_signed(rng: &mut ChaCha8Rng) -> Rational {
    rational::dyadic(rng.gen_range(-(1i64 << 12)..=(1i64 << 12)), 12)
}

fn rand_in_window(w: &Window, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    w.lo
        .iter()
        .zip(&w.hi)
        .map(|(l, h)| l + (h - l) * rand_unit(rng))
        .collect()
}

/// Stratified samples of `p`: interior, relative interior of every proper
/// face, an exterior shell, and far-field shells at radii 1e3 and 1e6.
/// Deterministic in `seed`; returns at least `n` points when the interior
/// sampler can top up the total.
pub fn stratified_sample(p: &HPolyhedron, n: usize, seed: u64) -> Result<SampleSet> {
    if p.dim == 0 {
        return Err(Error::Precondition("sampling needs dimension >= 1".into()));
    }
    let lattice = p.face_lattice()?;
    let body = lattice
        .faces
        .iter()
        .find(|f| f.active.is_empty())
        .ok_or_else(|| Error::Internal("face lattice lacks the body face".into()))?;
    let window = core_window(p)?;
    let spread0 = window
        .lo
        .iter()
        .zip(&window.hi)
        .map(|(l, h)| h - l)
        .max()
        .unwrap_or_else(|| rational::int(2))
        / rational::int(2);
    let spread0 = spread0.max(rational::int(1));
    let mut set = SampleSet::default();

    // Interior: the body witness first, then rejection in the window.
    let n_interior = (n / 4).max(1);
    if p.contains_strict(&body.witness) {
        set.push("interior", body.witness.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "strata-interior"));
    let mut got = set.points.len();
    let mut tries = 0usize;
    while got < n_interior && tries < 16 * n_interior {
        tries += 1;
        let x = rand_in_window(&window, &mut rng);
        if p.contains_strict(&x) {
            set.push("interior", x);
            got += 1;
        }
    }
    if got == 0 {
        set.empty_strata.push("interior".to_string());
    }

    // Relative interiors of proper faces: jitter the witness inside the
    // affine hull of the face, keeping the inactive inequalities strictly
    // positive.
    let proper: Vec<_> = lattice.faces.iter().filter(|f| !f.active.is_empty()).collect();
    let per_face = ((n / 2) / proper.len().max(1)).max(1);
    let mut dim_counters = vec![0usize; p.dim + 1];
    for face in &proper {
        let idx = dim_counters[face.dim];
        dim_counters[face.dim] += 1;
        let label = format!("face{}-{}", face.dim, idx);
        set.push(&label, face.witness.clone());
        let rows: Vec<Vec<Rational>> =
            face.active.iter().map(|&i| p.ineqs[i].coeffs.clone()).collect();
        let basis = linalg::nullspace(&rows);
        if basis.is_empty() {
            continue; // vertex: the witness is the whole stratum
        }
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, &label));
        let mut spread = spread0.clone();
        let mut got = 1usize;
        let mut fails = 0usize;
        let mut tries = 0usize;
        while got < per_face && tries < 32 * per_face {
            tries += 1;
            let mut x = face.witness.clone();
            for b in &basis {
                let c = rand_signed(&mut rng) * &spread;
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += &c * bi;
                }
            }
            let relint = p.contains(&x)
                && p.ineqs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !face.active.contains(i))
                    .all(|(_, l)| l.eval(&x).is_positive());
            if relint {
                set.push(&label, x);
                got += 1;
            } else {
                fails += 1;
                if fails % 8 == 0 {
                    spread /= rational::int(2);
                }
            }
        }
    }

    // Exterior shell: rejection in the dilated window, outside the target.
    let n_ext = (n / 8).max(1);
    let shell = window.dilate(2);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "strata-exterior"));
    let mut got = 0usize;
    let mut tries = 0usize;
    while got < n_ext && tries < 16 * n_ext {
        tries += 1;
        let x = rand_in_window(&shell, &mut rng);
        if !p.contains(&x) {
            set.push("exterior-shell", x);
            got += 1;
        }
    }
    if got == 0 {
        set.empty_strata.push("exterior-shell".to_string());
    }

    // Far field: exact members along recession directions, plus random
    // directions whose membership the checker decides exactly either way.
    let dirs = exact_recession_dirs(p);
    let k_rand = (n / 64).max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "strata-far"));
    for (radius, label) in [(1_000i64, "far-1e3"), (1_000_000, "far-1e6")] {
        let r = rational::int(radius);
        for v in &dirs {
            let far: Vec<Rational> = body
                .witness
                .iter()
                .zip(v)
                .map(|(a, d)| a + &r * d)
                .collect();
            set.push(label, far);
        }
        for _ in 0..k_rand {
            let mut v: Vec<Rational> = Vec::new();
            for attempt in 0..16 {
                v = (0..p.dim).map(|_| rand_signed(&mut rng)).collect();
                if rational::sup_norm(&v) >= rational::rat(1, 4) || attempt == 15 {
                    break;
                }
            }
            let far: Vec<Rational> = body
                .witness
                .iter()
                .zip(&v)
                .map(|(a, d)| a + &r * d)
                .collect();
            set.push(label, far);
        }
    }

    // Top up with interior points so the total reaches `n` when possible.
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "strata-topup"));
    let mut tries = 0usize;
    while set.points.len() < n && tries < 16 * n {
        tries += 1;
        let x = rand_in_window(&window, &mut rng);
        if p.contains_strict(&x) {
            set.push("interior", x);
        }
    }

    Ok(set)
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
                .map(|(a, c)| LinearForm::new(a.into_iter().map(int).collect(), int(c)))
                .collect(),
        )
        .unwrap()
    }

    fn unit_square() -> HPolyhedron {
        hp(2, vec![(vec![1, 0], 0), (vec![-1, 0], 1), (vec![0, 1], 0), (vec![0, -1], 1)])
    }

    #[test]
    fn square_covers_all_face_strata() {
        let set = stratified_sample(&unit_square(), 200, 7).unwrap();
        let counts = set.counts();
        let faces = counts.iter().filter(|c| c.label.starts_with("face")).count();
        assert_eq!(faces, 8); // 4 vertices + 4 edges
        assert!(counts.iter().all(|c| !c.label.starts_with("face") || c.tested >= 1));
        assert!(counts.iter().any(|c| c.label == "interior" && c.tested >= 50));
        assert!(counts.iter().any(|c| c.label == "far-1e3" && c.tested >= 4));
        assert!(set.points.len() >= 200);
    }

    #[test]
    fn samples_are_deterministic_per_seed() {
        let square = unit_square();
        let a = stratified_sample(&square, 120, 11).unwrap();
        let b = stratified_sample(&square, 120, 11).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (x, y) in a.points.iter().zip(&b.points) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.point, y.point);
        }
        let c = stratified_sample(&square, 120, 12).unwrap();
        assert!(a.points.iter().zip(&c.points).any(|(x, y)| x.point != y.point));
    }

    #[test]
    fn quadrant_far_field_follows_both_rays() {
        let q = hp(2, vec![(vec![1, 0], 0), (vec![0, 1], 0)]);
        let dirs = exact_recession_dirs(&q);
        assert!(dirs.contains(&vec![int(1), int(0)]));
        assert!(dirs.contains(&vec![int(0), int(1)]));
        assert!(!dirs.contains(&vec![int(-1), int(0)]));
        let set = stratified_sample(&q, 150, 3).unwrap();
        let far_members = set
            .points
            .iter()
            .filter(|lp| lp.label == "far-1e6" && q.contains(&lp.point))
            .count();
        assert!(far_members >= 2);
    }

    #[test]
    fn whole_space_flags_empty_exterior() {
        let all = HPolyhedron::whole_space(3);
        let set = stratified_sample(&all, 80, 5).unwrap();
        assert!(set.empty_strata.contains(&"exterior-shell".to_string()));
        assert!(set.points.iter().all(|lp| lp.label != "exterior-shell"));
        assert!(set.points.len() >= 80);
    }
}
