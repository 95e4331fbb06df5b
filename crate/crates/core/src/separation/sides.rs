//! Side descriptions: exact membership oracles with deterministic samplers.
//!
//! Separator searches never get to certify themselves against their own
//! construction; both sides of every separation problem are described by a
//! `SideDesc`, whose `contains` answers are exact rational arithmetic and
//! whose samples are reproducible from a seed. Samplers are heuristics and
//! may miss regions; exactness only ever lives in `contains` and in the
//! far-field line analysis done by the verification layer.

use crate::budget::sub_seed;
use crate::error::{Error, Result};
use crate::geometry::{Feasibility, HPolyhedron};
use crate::interval::{BoxDomain, RatInterval};
use crate::linalg;
use crate::lp::{Cmp, LinProg, LpOutcome};
use crate::poly::SparsePoly;
use crate::rational::{self, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Axis-aligned rational box used as a sampling window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    #[serde(with = "crate::json::serde_rational_vec")]
    pub lo: Vec<Rational>,
    #[serde(with = "crate::json::serde_rational_vec")]
    pub hi: Vec<Rational>,
}

impl Window {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Precondition("window bounds are inconsistent".into()));
        }
        Ok(Window { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn cube(dim: usize, half_width: i64) -> Window {
        Window {
            lo: vec![rational::int(-half_width); dim],
            hi: vec![rational::int(half_width); dim],
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim()
            && self.lo.iter().zip(x).all(|(l, v)| l <= v)
            && self.hi.iter().zip(x).all(|(h, v)| v <= h)
    }

    pub fn to_box(&self) -> BoxDomain {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| RatInterval::new(l.clone(), h.clone()))
            .collect()
    }

    pub fn hull(&self, other: &Window) -> Window {
        Window {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(b).clone()).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(b).clone()).collect(),
        }
    }

    /// Scales around the center by an integer factor.
    pub fn dilate(&self, factor: i64) -> Window {
        let f = rational::int(factor);
        let two = rational::int(2);
        let lo = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (l + h) / &two - (h - l) / &two * &f)
            .collect();
        let hi = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (l + h) / &two + (h - l) / &two * &f)
            .collect();
        Window { lo, hi }
    }

    pub fn hull_point(&self, x: &[Rational]) -> Window {
        Window {
            lo: self.lo.iter().zip(x).map(|(l, v)| l.min(v).clone()).collect(),
            hi: self.hi.iter().zip(x).map(|(h, v)| h.max(v).clone()).collect(),
        }
    }

    fn from_points(points: &[Vec<Rational>], dim: usize) -> Window {
        let mut w = Window::cube(dim, 1);
        if let Some(first) = points.first() {
            w = Window { lo: first.clone(), hi: first.clone() };
            for p in &points[1..] {
                w = w.hull_point(p);
            }
        }
        w
    }
}

/// A side of a separation problem.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SideDesc {
    Empty {
        dim: usize,
    },
    /// `{x in window-or-beyond : all polys >= 0}`; `window` bounds where the
    /// rejection sampler looks, `unbounded` marks that the set may extend
    /// beyond any window.
    BasicClosed {
        polys: Vec<SparsePoly>,
        window: Window,
        unbounded: bool,
    },
    Polyhedron {
        poly: HPolyhedron,
    },
    /// `{x : min_i l_i(x) <= 0}`, the complement of the interior.
    ComplementOfInterior {
        poly: HPolyhedron,
    },
    Points {
        dim: usize,
        #[serde(with = "crate::json::serde_rational_mat")]
        points: Vec<Vec<Rational>>,
    },
    Union {
        parts: Vec<SideDesc>,
    },
    Intersection {
        parts: Vec<SideDesc>,
    },
    /// `{x : all sigmas >= 0 and min_i q_i(x) < 0}`.
    Residual {
        sigmas: Vec<SparsePoly>,
        qs: Vec<SparsePoly>,
        window: Window,
        unbounded: bool,
    },
}

/// Zariski-side data: where a separator is allowed to vanish.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZariskiSet {
    Empty {
        dim: usize,
    },
    Points {
        dim: usize,
        #[serde(with = "crate::json::serde_rational_mat")]
        points: Vec<Vec<Rational>>,
    },
    ZeroOf {
        poly: SparsePoly,
    },
}

impl ZariskiSet {
    pub fn admits(&self, x: &[Rational]) -> bool {
        match self {
            ZariskiSet::Empty { .. } => false,
            ZariskiSet::Points { points, .. } => points.iter().any(|p| p == x),
            ZariskiSet::ZeroOf { poly } => poly.eval(x).is_zero(),
        }
    }
}

impl SideDesc {
    pub fn dim(&self) -> usize {
        match self {
            SideDesc::Empty { dim } => *dim,
            SideDesc::BasicClosed { window, .. } => window.dim(),
            SideDesc::Polyhedron { poly } | SideDesc::ComplementOfInterior { poly } => poly.dim,
            SideDesc::Points { dim, .. } => *dim,
            SideDesc::Union { parts } | SideDesc::Intersection { parts } => {
                parts.first().map(|p| p.dim()).unwrap_or(0)
            }
            SideDesc::Residual { window, .. } => window.dim(),
        }
    }

    /// Exact membership.
    pub fn contains(&self, x: &[Rational]) -> bool {
        match self {
            SideDesc::Empty { .. } => false,
            SideDesc::BasicClosed { polys, .. } => polys.iter().all(|p| !p.eval(x).is_negative()),
            SideDesc::Polyhedron { poly } => poly.contains(x),
            SideDesc::ComplementOfInterior { poly } => {
                if poly.ineqs.is_empty() {
                    return false; // interior of the whole space has no complement
                }
                poly.ineqs.iter().any(|l| !l.eval(x).is_positive())
            }
            SideDesc::Points { points, .. } => points.iter().any(|p| p == x),
            SideDesc::Union { parts } => parts.iter().any(|p| p.contains(x)),
            SideDesc::Intersection { parts } => parts.iter().all(|p| p.contains(x)),
            SideDesc::Residual { sigmas, qs, .. } => {
                sigmas.iter().all(|p| !p.eval(x).is_negative())
                    && qs.iter().any(|q| q.eval(x).is_negative())
            }
        }
    }

    /// Whether the set may be unbounded (conservative).
    pub fn is_unbounded(&self) -> bool {
        match self {
            SideDesc::Empty { .. } | SideDesc::Points { .. } => false,
            SideDesc::BasicClosed { unbounded, .. } | SideDesc::Residual { unbounded, .. } => *unbounded,
            SideDesc::Polyhedron { poly } => !poly.is_bounded().unwrap_or(false),
            SideDesc::ComplementOfInterior { poly } => !poly.ineqs.is_empty() && poly.dim > 0,
            SideDesc::Union { parts } => parts.iter().any(|p| p.is_unbounded()),
            SideDesc::Intersection { parts } => parts.iter().all(|p| p.is_unbounded()),
        }
    }

    /// A window enclosing the bounded core of the set (sampling focus).
    pub fn window(&self) -> Window {
        let dim = self.dim();
        match self {
            SideDesc::Empty { .. } => Window::cube(dim, 1),
            SideDesc::BasicClosed { window, .. } | SideDesc::Residual { window, .. } => window.clone(),
            SideDesc::Polyhedron { poly } | SideDesc::ComplementOfInterior { poly } => {
                let fallback = Window::cube(dim, 4);
                match poly.coordinate_bounds() {
                    Ok(bounds) => {
                        let mut lo = Vec::with_capacity(dim);
                        let mut hi = Vec::with_capacity(dim);
                        for (i, (l, h)) in bounds.into_iter().enumerate() {
                            lo.push(l.unwrap_or_else(|| fallback.lo[i].clone()));
                            hi.push(h.unwrap_or_else(|| fallback.hi[i].clone()));
                        }
                        let w = Window { lo, hi };
                        if matches!(self, SideDesc::ComplementOfInterior { .. }) {
                            w.dilate(2)
                        } else {
                            w
                        }
                    }
                    Err(_) => fallback,
                }
            }
            SideDesc::Points { points, .. } => Window::from_points(points, dim),
            SideDesc::Union { parts } | SideDesc::Intersection { parts } => {
                let mut w = Window::cube(dim, 1);
                for (i, p) in parts.iter().enumerate() {
                    let pw = p.window();
                    w = if i == 0 { pw } else { w.hull(&pw) };
                }
                w
            }
        }
    }

    /// Directions along which the set provably or plausibly recedes; each
    /// returned direction is validated by exact membership of a far point.
    pub fn recession_dirs(&self) -> Vec<Vec<Rational>> {
        let dim = self.dim();
        if dim == 0 || !self.is_unbounded() {
            return Vec::new();
        }
        let mut candidates: Vec<Vec<Rational>> = Vec::new();
        match self {
            SideDesc::Polyhedron { poly } => {
                if let Ok(rays) = poly.recession_rays() {
                    candidates.extend(rays);
                }
                for b in poly.lineality_basis() {
                    candidates.push(b.iter().map(|v| -v).collect());
                    candidates.push(b);
                }
            }
            SideDesc::ComplementOfInterior { poly } => {
                for l in &poly.ineqs {
                    // Straight out through a facet.
                    candidates.push(l.coeffs.iter().map(|v| -v).collect());
                }
            }
            SideDesc::Union { parts } | SideDesc::Intersection { parts } => {
                for p in parts {
                    candidates.extend(p.recession_dirs());
                }
            }
            _ => {}
        }
        // Generic probes for every unbounded side.
        for i in 0..dim {
            let mut e = vec![Rational::zero(); dim];
            e[i] = rational::int(1);
            candidates.push(e.clone());
            e[i] = rational::int(-1);
            candidates.push(e);
        }
        candidates.push(vec![rational::int(1); dim]);
        candidates.push(vec![rational::int(-1); dim]);
        let anchor = self.anchor();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for v in candidates {
            if v.iter().all(|c| c.is_zero()) || out.contains(&v) {
                continue;
            }
            let far: Vec<Rational> = anchor
                .iter()
                .zip(&v)
                .map(|(a, d)| a + rational::int(1000) * d)
                .collect();
            if self.contains(&far) {
                out.push(v);
            }
        }
        out
    }

    /// A representative point used as the base for far probes (not
    /// necessarily a member).
    fn anchor(&self) -> Vec<Rational> {
        let w = self.window();
        w.lo.iter().zip(&w.hi).map(|(l, h)| (l + h) / rational::int(2)).collect()
    }

    /// Deterministic members of the set. Best effort: the sampler may
    /// return fewer than `n` points (including none when it cannot find
    /// any); every returned point satisfies `contains` exactly. Far-field
    /// members at radii 1e3 and 1e6 are appended for unbounded sets.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<Vec<Rational>> {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "side-sample"));
        let mut out = self.sample_core(n, &mut rng);
        if self.is_unbounded() {
            let anchor = self.anchor();
            for dir in self.recession_dirs() {
                for radius in [1_000i64, 1_000_000] {
                    let far: Vec<Rational> = anchor
                        .iter()
                        .zip(&dir)
                        .map(|(a, d)| a + rational::int(radius) * d)
                        .collect();
                    if self.contains(&far) && !out.contains(&far) {
                        out.push(far);
                    }
                }
            }
        }
        out
    }

    fn sample_core(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
        match self {
            SideDesc::Empty { .. } => Vec::new(),
            SideDesc::Points { points, .. } => points.clone(),
            SideDesc::BasicClosed { .. } | SideDesc::Residual { .. } => {
                let window = self.window();
                let mut pts = rejection_sample(self, &window, n, rng);
                // Densify around scattered hits: thin or curved sets reward
                // a second, localized pass.
                let hits = pts.clone();
                for hit in hits.iter().take(16) {
                    let local = local_window(hit, &window);
                    pts.extend(rejection_sample(self, &local, n / 8 + 4, rng));
                }
                dedup(pts)
            }
            SideDesc::Polyhedron { poly } => sample_polyhedron(poly, n, rng),
            SideDesc::ComplementOfInterior { poly } => {
                let mut pts = rejection_sample(self, &self.window(), n, rng);
                pts.extend(boundary_witnesses(poly));
                dedup(pts.into_iter().filter(|p| self.contains(p)).collect())
            }
            SideDesc::Union { parts } => {
                let per = (n / parts.len().max(1)).max(8);
                let mut pts = Vec::new();
                for p in parts {
                    pts.extend(p.sample_core(per, rng));
                }
                dedup(pts)
            }
            SideDesc::Intersection { parts } => {
                let per = (n / parts.len().max(1)).max(8);
                let mut pts: Vec<Vec<Rational>> = Vec::new();
                for p in parts {
                    pts.extend(
                        p.sample_core(per, rng)
                            .into_iter()
                            .filter(|x| self.contains(x)),
                    );
                }
                pts.extend(rejection_sample(self, &self.window(), n, rng));
                dedup(pts)
            }
        }
    }
}

/// Members of `side` inside a ball `B(center, rho)` (exact filter).
pub fn sample_in_ball(
    side: &SideDesc,
    center: &[Rational],
    rho: &Rational,
    n: usize,
    seed: u64,
) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, "ball-sample"));
    let window = Window {
        lo: center.iter().map(|c| c - rho).collect(),
        hi: center.iter().map(|c| c + rho).collect(),
    };
    let rho2 = rho * rho;
    let mut out = Vec::new();
    for _ in 0..n * 6 {
        let x = random_point(&window, rng.gen::<u64>());
        if rational::dist_sq(&x, center) <= rho2 && side.contains(&x) {
            out.push(x);
            if out.len() >= n {
                break;
            }
        }
    }
    if side.contains(&center.to_vec()) {
        out.push(center.to_vec());
    }
    dedup(out)
}

fn dedup(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    pts
}

fn local_window(center: &[Rational], outer: &Window) -> Window {
    let r = rational::rat(1, 8);
    Window {
        lo: center
            .iter()
            .zip(&outer.lo)
            .map(|(c, l)| (c - &r).max(l.clone()))
            .collect(),
        hi: center
            .iter()
            .zip(&outer.hi)
            .map(|(c, h)| (c + &r).min(h.clone()))
            .collect(),
    }
}

/// A dyadic point inside the window (denominators at most 2^12).
fn random_point(window: &Window, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denom = 1i64 << 12;
    window
        .lo
        .iter()
        .zip(&window.hi)
        .map(|(l, h)| {
            let k = rng.gen_range(0..=denom);
            l + (h - l) * rational::rat(k, denom)
        })
        .collect()
}

fn rejection_sample(
    side: &SideDesc,
    window: &Window,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for _ in 0..n.saturating_mul(8) {
        let x = random_point(window, rng.gen::<u64>());
        if side.contains(&x) {
            out.push(x);
            if out.len() >= n {
                break;
            }
        }
    }
    out
}

/// One point on each facet, via LP with the facet row forced tight.
fn boundary_witnesses(poly: &HPolyhedron) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for (i, li) in poly.ineqs.iter().enumerate() {
        let mut lp = LinProg::new(poly.dim);
        for (j, l) in poly.ineqs.iter().enumerate() {
            let cmp = if i == j { Cmp::Eq } else { Cmp::Ge };
            lp.constraint(l.coeffs.clone(), cmp, -l.constant.clone());
        }
        // Push the other margins up, boxed artificially so the LP stays
        // bounded; the result may sit on a lower face, which is still a
        // boundary point.
        let mut obj = vec![Rational::zero(); poly.dim];
        for (j, l) in poly.ineqs.iter().enumerate() {
            if j != i {
                for (o, c) in obj.iter_mut().zip(&l.coeffs) {
                    *o += c;
                }
            }
        }
        for k in 0..poly.dim {
            let mut e = vec![Rational::zero(); poly.dim];
            e[k] = rational::int(1);
            lp.constraint(e.clone(), Cmp::Le, rational::int(1 << 20));
            e[k] = rational::int(-1);
            lp.constraint(e, Cmp::Le, rational::int(1 << 20));
        }
        lp.maximize(obj);
        if let Ok(LpOutcome::Optimal { x, .. }) = lp.solve() {
            if li.eval(&x).is_zero() {
                out.push(x);
            }
        }
    }
    out
}

/// Samples a polyhedron: affine-hull rejection for degenerate ones, window
/// rejection plus LP vertices otherwise.
fn sample_polyhedron(poly: &HPolyhedron, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let feas = match poly.feasibility() {
        Ok(f) => f,
        Err(_) => return Vec::new(),
    };
    let witness = match feas {
        Feasibility::Empty => return Vec::new(),
        Feasibility::Degenerate { ref witness } | Feasibility::FullDim { ref witness } => witness.clone(),
    };
    let mut out = vec![witness.clone()];
    let window = SideDesc::Polyhedron { poly: poly.clone() }.window();
    if matches!(feas, Feasibility::FullDim { .. }) {
        for _ in 0..n.saturating_mul(8) {
            let x = random_point(&window, rng.gen::<u64>());
            if poly.contains(&x) {
                out.push(x);
                if out.len() >= n {
                    break;
                }
            }
        }
    } else {
        // Implicit equalities squeeze the body into an affine subspace;
        // parametrize it and sample coefficients instead.
        let eq_normals = implicit_equalities(poly);
        let basis = linalg::nullspace(&eq_normals);
        for _ in 0..n {
            let mut x = witness.clone();
            for b in &basis {
                let k = rng.gen_range(-(1i64 << 12)..=(1i64 << 12));
                let t = rational::rat(k, 1 << 10);
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi += &t * bi;
                }
            }
            if poly.contains(&x) {
                out.push(x);
            }
        }
    }
    // A few LP-extreme points in deterministic directions.
    for probe in 0..(2 * poly.dim).min(12) {
        let mut obj = Vec::with_capacity(poly.dim);
        let mut probe_rng = ChaCha8Rng::seed_from_u64(sub_seed(probe as u64, "poly-extreme"));
        for _ in 0..poly.dim {
            obj.push(rational::rat(probe_rng.gen_range(-64..=64), 16));
        }
        let mut lp = LinProg::new(poly.dim);
        for l in &poly.ineqs {
            lp.constraint(l.coeffs.clone(), Cmp::Ge, -l.constant.clone());
        }
        lp.maximize(obj);
        if let Ok(LpOutcome::Optimal { x, .. }) = lp.solve() {
            if poly.contains(&x) {
                out.push(x);
            }
        }
    }
    dedup(out)
}

/// Inequalities that hold with equality on the whole body.
fn implicit_equalities(poly: &HPolyhedron) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for (i, li) in poly.ineqs.iter().enumerate() {
        let mut lp = LinProg::new(poly.dim);
        for l in &poly.ineqs {
            lp.constraint(l.coeffs.clone(), Cmp::Ge, -l.constant.clone());
        }
        lp.maximize(li.coeffs.clone());
        if let Ok(LpOutcome::Optimal { value, .. }) = lp.solve() {
            if value + &li.constant == Rational::zero() {
                out.push(poly.ineqs[i].coeffs.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LinearForm;
    use crate::rational::{int, rat};

    fn square() -> HPolyhedron {
        HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], int(0)),
                LinearForm::new(vec![int(0), int(1)], int(0)),
                LinearForm::new(vec![int(-1), int(0)], int(1)),
                LinearForm::new(vec![int(0), int(-1)], int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn polyhedron_samples_are_members() {
        let side = SideDesc::Polyhedron { poly: square() };
        let pts = side.sample(64, 7);
        assert!(pts.len() >= 16, "got {}", pts.len());
        assert!(pts.iter().all(|p| side.contains(p)));
    }

    #[test]
    fn sampling_is_deterministic() {
        let side = SideDesc::Polyhedron { poly: square() };
        assert_eq!(side.sample(32, 5), side.sample(32, 5));
        assert_ne!(side.sample(32, 5), side.sample(32, 6));
    }

    #[test]
    fn complement_contains_boundary_and_outside() {
        let side = SideDesc::ComplementOfInterior { poly: square() };
        assert!(side.contains(&[int(0), rat(1, 2)]));
        assert!(side.contains(&[int(5), int(5)]));
        assert!(!side.contains(&[rat(1, 2), rat(1, 2)]));
        let pts = side.sample(64, 3);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| side.contains(p)));
    }

    #[test]
    fn complement_sampler_reaches_far_field() {
        let side = SideDesc::ComplementOfInterior { poly: square() };
        let pts = side.sample(32, 1);
        let far = rational::int(1_000_000);
        assert!(
            pts.iter().any(|p| p.iter().any(|c| c.abs() >= far)),
            "no far-field member found"
        );
    }

    #[test]
    fn degenerate_polyhedron_sampler_uses_affine_hull() {
        // The segment {0 <= x <= 1, y = 0} written with two opposite rows.
        let seg = HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], int(0)),
                LinearForm::new(vec![int(-1), int(0)], int(1)),
                LinearForm::new(vec![int(0), int(1)], int(0)),
                LinearForm::new(vec![int(0), int(-1)], int(0)),
            ],
        )
        .unwrap();
        let side = SideDesc::Polyhedron { poly: seg };
        let pts = side.sample(48, 11);
        assert!(pts.len() >= 4, "got {}", pts.len());
        assert!(pts.iter().all(|p| p[1].is_zero()));
        assert!(pts.iter().any(|p| p[0].is_positive()));
    }

    #[test]
    fn residual_oracle_matches_definition() {
        // sigmas = [x], qs = [x - 1]: points with x >= 0 and x < 1.
        let x = SparsePoly::var(1, 0);
        let side = SideDesc::Residual {
            sigmas: vec![x.clone()],
            qs: vec![&x - &SparsePoly::constant(1, int(1))],
            window: Window::cube(1, 4),
            unbounded: false,
        };
        assert!(side.contains(&[rat(1, 2)]));
        assert!(!side.contains(&[int(2)]));
        assert!(!side.contains(&[rat(-1, 2)]));
        let pts = side.sample(64, 9);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| side.contains(p)));
    }

    #[test]
    fn union_and_intersection_oracles() {
        let a = SideDesc::Polyhedron { poly: square() };
        let shifted = HPolyhedron::new(
            2,
            vec![
                LinearForm::new(vec![int(1), int(0)], rat(-1, 2)),
                LinearForm::new(vec![int(0), int(1)], int(0)),
                LinearForm::new(vec![int(-1), int(0)], rat(3, 2)),
                LinearForm::new(vec![int(0), int(-1)], int(1)),
            ],
        )
        .unwrap();
        let b = SideDesc::Polyhedron { poly: shifted };
        let u = SideDesc::Union { parts: vec![a.clone(), b.clone()] };
        let i = SideDesc::Intersection { parts: vec![a, b] };
        let p = vec![rat(5, 4), rat(1, 2)];
        assert!(u.contains(&p) && !i.contains(&p));
        let q = vec![rat(3, 4), rat(1, 2)];
        assert!(u.contains(&q) && i.contains(&q));
        assert!(i.sample(32, 2).iter().all(|x| i.contains(x)));
    }

    #[test]
    fn ball_sampler_filters_exactly() {
        let side = SideDesc::Polyhedron { poly: square() };
        let c = vec![int(0), int(0)];
        let pts = sample_in_ball(&side, &c, &rat(1, 4), 24, 3);
        assert!(!pts.is_empty());
        for p in &pts {
            assert!(side.contains(p));
            assert!(rational::dist_sq(p, &c) <= rat(1, 16));
        }
    }

    #[test]
    fn side_desc_serde_round_trip() {
        let side = SideDesc::Union {
            parts: vec![
                SideDesc::Polyhedron { poly: square() },
                SideDesc::Points { dim: 2, points: vec![vec![int(3), rat(-1, 2)]] },
            ],
        };
        let s = serde_json::to_string(&side).unwrap();
        let back: SideDesc = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert!(back.contains(&[int(3), rat(-1, 2)]));
    }
}
