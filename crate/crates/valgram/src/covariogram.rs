//! Covariogram evaluation `g(x) = phi(K ∩ (K+x))`, dense grids, the
//! geometric witnesses of radial derivatives (inscribed parallelograms and
//! boundary caps), the width-covariogram core, and the integral identity.

use crate::geom::{
    difference_body, intersect, line_intersection, locate_on_boundary, segment_sum,
    BoundaryLocus, ChordProfile, Overlap, Polygon, Segment, Vec2, EPS_GEOM,
};
use crate::valuation::{len_b, SeminormBall, Valuation};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};
use thiserror::Error;

/// Tolerance for covariogram value comparisons at unit scale.
pub const EPS_VAL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovError {
    #[error("x must lie in the interior of the difference body, away from the origin")]
    OutsideDifferenceBodyInterior,
}

/// `g_{K,phi}(x) = phi(K ∩ (K+x))`; zero outside the difference body.
pub fn cov_at(k: &Polygon, phi: &Valuation, x: Vec2) -> f64 {
    phi.eval(&intersect(k, &k.translate(x)))
}

/// Row-major grid of covariogram values covering the difference body.
#[derive(Clone, Debug)]
pub struct CovGrid {
    pub origin: Vec2,
    pub step: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    pub phi: Valuation,
}

#[derive(Serialize, Deserialize)]
pub struct CovGridMeta {
    pub origin: Vec2,
    pub step: f64,
    pub nx: usize,
    pub ny: usize,
    pub phi: Valuation,
}

impl CovGrid {
    pub fn node(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(
            self.origin.x + self.step * i as f64,
            self.origin.y + self.step * j as f64,
        )
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Midpoint-rule integral: each node is the center of a step × step cell.
    pub fn integral(&self) -> f64 {
        self.step * self.step * self.values.iter().sum::<f64>()
    }

    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut val = f64::NEG_INFINITY;
        for j in 0..self.ny {
            for i in 0..self.nx {
                if self.value(i, j) > val {
                    val = self.value(i, j);
                    best = (i, j);
                }
            }
        }
        best
    }

    /// CSV with header `x,y,value` at 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "x,y,value")?;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let p = self.node(i, j);
                writeln!(w, "{:.16e},{:.16e},{:.16e}", p.x, p.y, self.value(i, j))?;
            }
        }
        Ok(())
    }

    pub fn meta(&self) -> CovGridMeta {
        CovGridMeta {
            origin: self.origin,
            step: self.step,
            nx: self.nx,
            ny: self.ny,
            phi: self.phi.clone(),
        }
    }
}

/// Evaluate the covariogram on a grid covering the bounding box of `DK`
/// inflated by one step. Nodes sit at the centers of step × step cells, so
/// the grid sum is a proper midpoint rule and nodes avoid the boundary of
/// `DK`, where the value is the degenerate-intersection one. Rows are
/// evaluated in parallel; the result does not depend on the schedule.
pub fn cov_grid(k: &Polygon, phi: &Valuation, step: f64) -> CovGrid {
    assert!(step > 0.0, "grid step must be positive");
    let dk = difference_body(k);
    let (lo, hi) = dk.bbox();
    let origin = Vec2::new(lo.x - 0.5 * step, lo.y - 0.5 * step);
    let nx = ((hi.x + 0.5 * step - origin.x) / step).ceil() as usize + 1;
    let ny = ((hi.y + 0.5 * step - origin.y) / step).ceil() as usize + 1;
    let values: Vec<f64> = (0..ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            let phi = phi.clone();
            let k = k.clone();
            let y = origin.y + step * j as f64;
            (0..nx).map(move |i| cov_at(&k, &phi, Vec2::new(origin.x + step * i as f64, y)))
        })
        .collect();
    CovGrid {
        origin,
        step,
        nx,
        ny,
        values,
        phi: phi.clone(),
    }
}

/// Parallelogram inscribed in `K` whose horizontal edges are translates of
/// `[o, x]`; vertices in counterclockwise order with `x = p1−p2 = p4−p3`.
#[derive(Clone, Copy, Debug)]
pub struct InscribedParallelogram {
    pub p1: Vec2,
    pub p2: Vec2,
    pub p3: Vec2,
    pub p4: Vec2,
}

impl InscribedParallelogram {
    pub fn vertices(&self) -> [Vec2; 4] {
        [self.p1, self.p2, self.p3, self.p4]
    }

    pub fn area(&self) -> f64 {
        (self.p2 - self.p1).cross(self.p4 - self.p1).abs()
    }
}

/// The two chords of `K` parallel to `x` with Euclidean length `‖x‖`,
/// located on the concave piecewise-linear chord-length profile.
///
/// When `K` has a boundary edge parallel to `x` longer than `‖x‖` the chord
/// on that side is the sub-segment centered at the edge midpoint; the same
/// choice applies to `−x`, so `ip(x) = ip(−x)` as a set.
pub fn inscribed_parallelogram(
    k: &Polygon,
    x: Vec2,
) -> Result<InscribedParallelogram, CovError> {
    let r = x.norm();
    if r < EPS_GEOM {
        return Err(CovError::OutsideDifferenceBodyInterior);
    }
    let u = x / r;
    let prof = ChordProfile::new(k, u);
    if r >= prof.max_length() {
        return Err(CovError::OutsideDifferenceBodyInterior);
    }
    let (lo_t, hi_t) = prof
        .superlevel(r)
        .ok_or(CovError::OutsideDifferenceBodyInterior)?;
    let upper = placed_chord(&prof, u, r, hi_t, prof.t_max());
    let lower = placed_chord(&prof, u, r, lo_t, prof.t_min());
    Ok(InscribedParallelogram {
        p1: upper.b,
        p2: upper.a,
        p3: lower.a,
        p4: lower.b,
    })
}

/// Chord of length `r` at the given offset, oriented along `u`. At an
/// extreme offset the full face is longer than `r` and the sub-segment is
/// centered on the face.
fn placed_chord(prof: &ChordProfile, u: Vec2, r: f64, t: f64, t_extreme: f64) -> Segment {
    let chord = prof.chord_at(t).expect("offset inside the profile range");
    if t == t_extreme && chord.len() > r {
        let mid = chord.midpoint();
        Segment::new(mid - u * (r * 0.5), mid + u * (r * 0.5))
    } else {
        Segment::new(chord.a, chord.a + u * r)
    }
}

/// Two-segment polyline from `p1` over the tangent-line intersection `p12`
/// to `p2`; degenerates to the chord midpoint when the boundary arc is the
/// chord itself.
#[derive(Clone, Copy, Debug)]
pub struct Cap {
    pub p1: Vec2,
    pub p12: Vec2,
    pub p2: Vec2,
}

impl Cap {
    pub fn polyline(&self) -> [Vec2; 3] {
        [self.p1, self.p12, self.p2]
    }
}

/// Cap of `K` cut off by the chord of `ip(x)` on the `R(x)` side.
pub fn cap(k: &Polygon, x: Vec2) -> Result<Cap, CovError> {
    let ip = inscribed_parallelogram(k, x)?;
    Ok(build_cap(k, ip.p1, ip.p2))
}

/// Cap between two boundary points: right tangent at the arc's left
/// endpoint meets left tangent at its right endpoint. Any choice of `p12`
/// on a straight arc gives the same seminorm length; the midpoint is used.
fn build_cap(k: &Polygon, p1: Vec2, p2: Vec2) -> Cap {
    let n = k.len();
    let loc1 = locate_on_boundary(k, p1, 1e-7).expect("p1 lies on the boundary");
    let loc2 = locate_on_boundary(k, p2, 1e-7).expect("p2 lies on the boundary");
    // Tangent to the boundary portion following p1 / preceding p2.
    let e1 = match loc1 {
        BoundaryLocus::Vertex(i) => i,
        BoundaryLocus::EdgeInterior(i) => i,
    };
    let e2 = match loc2 {
        BoundaryLocus::Vertex(j) => (j + n - 1) % n,
        BoundaryLocus::EdgeInterior(j) => j,
    };
    if e1 == e2 {
        return Cap {
            p1,
            p12: (p1 + p2) * 0.5,
            p2,
        };
    }
    let s1 = k.edge(e1);
    let s2 = k.edge(e2);
    match line_intersection(s1.a, s1.direction(), s2.a, s2.direction()) {
        Some(p12) => Cap { p1, p12, p2 },
        None => Cap {
            p1,
            p12: (p1 + p2) * 0.5,
            p2,
        },
    }
}

/// Negative left radial derivative `-∂⁻/∂t  g(tx) |_{t=1}`, computed from
/// its geometric witnesses: the seminorm lengths of the two caps plus
/// `alpha` times the inscribed parallelogram area, all under `phi.scale`.
pub fn radial_derivative(k: &Polygon, phi: &Valuation, x: Vec2) -> Result<f64, CovError> {
    let ip = inscribed_parallelogram(k, x)?;
    let mut total = phi.alpha * ip.area();
    if !matches!(phi.ball, SeminormBall::Full) {
        let upper = build_cap(k, ip.p1, ip.p2);
        let lower = build_cap(k, ip.p3, ip.p4);
        total += len_b(&phi.ball, &upper.polyline()) + len_b(&phi.ball, &lower.polyline());
    }
    Ok(phi.scale * total)
}

/// The width core `(F(K,z) − K) ∩ (K − F(K,−z))`: the set where the
/// width-covariogram equals `g(o) − ⟨x,z⟩`.
pub fn width_core(k: &Polygon, z: Vec2) -> Overlap {
    let z = z.normalized().expect("direction must be nonzero");
    let fz = k.face(z);
    let fmz = k.face(-z);
    let left = segment_sum(&fz, &k.negate());
    let right = segment_sum(&Segment::new(-fmz.a, -fmz.b), k);
    intersect(&left, &right)
}

/// Whether `g_w(x) = g_w(o) − ⟨x,z⟩` holds within [`EPS_VAL`]; by the core
/// lemma this is membership in [`width_core`].
pub fn core_criterion_check(k: &Polygon, z: Vec2, x: Vec2) -> bool {
    let z = z.normalized().expect("direction must be nonzero");
    let w = Valuation::width(z);
    let g0 = cov_at(k, &w, Vec2::ZERO);
    (cov_at(k, &w, x) - (g0 - x.dot(z))).abs() < EPS_VAL
}

/// Grid integral of the covariogram against the closed form
/// `scale · vol(K) (2 per_B(K) + alpha vol(K))`.
pub fn integral_identity_check(k: &Polygon, phi: &Valuation, step: f64) -> (f64, f64) {
    let numeric = cov_grid(k, phi, step).integral();
    let v = k.area();
    let p = crate::valuation::per_b(&phi.ball, k);
    let analytic = phi.scale * v * (2.0 * p + phi.alpha * v);
    (numeric, analytic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_convex_polygon;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_square() -> Polygon {
        Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap()
    }

    fn vol() -> Valuation {
        Valuation::volume()
    }

    fn per() -> Valuation {
        Valuation::euclidean_perimeter()
    }

    fn width_y() -> Valuation {
        Valuation::width(Vec2::new(0.0, 1.0))
    }

    #[test]
    fn cov_at_square_closed_forms() {
        let k = unit_square();
        let g_vol = |x: f64, y: f64| (1.0 - x.abs()).max(0.0) * (1.0 - y.abs()).max(0.0);
        let g_per = |x: f64, y: f64| {
            if x.abs() <= 1.0 && y.abs() <= 1.0 {
                2.0 * (2.0 - x.abs() - y.abs())
            } else {
                0.0
            }
        };
        let g_w = |x: f64, y: f64| {
            if x.abs() <= 1.0 && y.abs() <= 1.0 {
                1.0 - y.abs()
            } else {
                let _ = x;
                0.0
            }
        };
        let pts = [
            (0.5, 0.5),
            (0.0, 0.0),
            (-0.3, 0.7),
            (1.0, 0.3),
            (0.5, 1.0),
            (1.0, 1.0),
            (1.5, 0.0),
            (0.25, -0.75),
        ];
        for &(x, y) in &pts {
            let p = Vec2::new(x, y);
            assert!((cov_at(&k, &vol(), p) - g_vol(x, y)).abs() < 1e-13, "vol at {p:?}");
            assert!((cov_at(&k, &per(), p) - g_per(x, y)).abs() < 1e-13, "per at {p:?}");
            assert!((cov_at(&k, &width_y(), p) - g_w(x, y)).abs() < 1e-13, "width at {p:?}");
        }
        assert!((cov_at(&k, &per(), Vec2::new(0.5, 0.5)) - 2.0).abs() < 1e-13);
    }

    #[test]
    fn grid_support_and_integral() {
        let k = unit_square();
        let g = cov_grid(&k, &vol(), 0.25);
        let dk = difference_body(&k);
        let mut nonzero = 0;
        let mut interior = 0;
        for j in 0..g.ny {
            for i in 0..g.nx {
                let p = g.node(i, j);
                if dk.signed_distance(p) < -1e-9 {
                    interior += 1;
                }
                if g.value(i, j) > 0.0 {
                    nonzero += 1;
                    assert!(dk.contains(p, 1e-9));
                }
            }
        }
        // The vol-covariogram is positive exactly on the interior of DK.
        assert_eq!(nonzero, interior);
        assert!(nonzero > 0);
        // Maximum at the origin: the best grid node sits next to o and no
        // node beats g(o).
        let (ai, aj) = g.argmax();
        assert!(g.node(ai, aj).norm() <= g.step);
        assert!(g.value(ai, aj) <= cov_at(&k, &vol(), Vec2::ZERO) + 1e-12);

        // Quadrature refinement toward vol(K)^2 = 1.
        let coarse = (cov_grid(&k, &vol(), 0.1).integral() - 1.0).abs();
        let fine = (cov_grid(&k, &vol(), 0.05).integral() - 1.0).abs();
        assert!(fine <= coarse + 1e-12);
        assert!(fine < 5e-3);
    }

    #[test]
    fn inscribed_parallelogram_square() {
        let k = unit_square();
        let ip = inscribed_parallelogram(&k, Vec2::new(0.5, 0.0)).unwrap();
        let expect = [
            Vec2::new(0.75, 1.0),
            Vec2::new(0.25, 1.0),
            Vec2::new(0.25, 0.0),
            Vec2::new(0.75, 0.0),
        ];
        for (got, want) in ip.vertices().iter().zip(expect.iter()) {
            assert!(got.dist(*want) < 1e-12, "{got:?} vs {want:?}");
        }
        assert!((ip.area() - 0.5).abs() < 1e-12);

        let ip = inscribed_parallelogram(&k, Vec2::new(0.5, 0.5)).unwrap();
        assert!((ip.area() - 0.5).abs() < 1e-12);

        // ip(x) = ip(−x) as a set.
        let a = inscribed_parallelogram(&k, Vec2::new(0.3, 0.2)).unwrap();
        let b = inscribed_parallelogram(&k, Vec2::new(-0.3, -0.2)).unwrap();
        for v in a.vertices() {
            assert!(b.vertices().iter().any(|w| w.dist(v) < 1e-10));
        }

        assert_eq!(
            inscribed_parallelogram(&k, Vec2::new(1.0, 0.0)).unwrap_err(),
            CovError::OutsideDifferenceBodyInterior
        );
        assert_eq!(
            inscribed_parallelogram(&k, Vec2::ZERO).unwrap_err(),
            CovError::OutsideDifferenceBodyInterior
        );
    }

    #[test]
    fn cap_square_degenerate_and_corner() {
        let k = unit_square();
        let disk = SeminormBall::unit_disk();

        // Chord along the top face: cap degenerates, length = ‖x‖_B.
        let c = cap(&k, Vec2::new(0.5, 0.0)).unwrap();
        assert!((len_b(&disk, &c.polyline()) - 0.5).abs() < 1e-12);

        // Diagonal: caps are the two corner wedges at (0,1) and (1,0).
        let ip = inscribed_parallelogram(&k, Vec2::new(0.5, 0.5)).unwrap();
        let upper = build_cap(&k, ip.p1, ip.p2);
        assert!(upper.p12.dist(Vec2::new(0.0, 1.0)) < 1e-12);
        let lower = build_cap(&k, ip.p3, ip.p4);
        assert!(lower.p12.dist(Vec2::new(1.0, 0.0)) < 1e-12);
        let total = len_b(&disk, &upper.polyline()) + len_b(&disk, &lower.polyline());
        assert!((total - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cap_apex_is_supporting_line_intersection() {
        // Arc holding exactly one vertex: p12 must be that vertex.
        let t = Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(0.6, 1.4),
        ])
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let dk = difference_body(&t);
        for _ in 0..40 {
            let x = Vec2::new(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0));
            if dk.signed_distance(x) > -1e-3 || x.norm() < 1e-3 {
                continue;
            }
            let ip = inscribed_parallelogram(&t, x).unwrap();
            for (a, b) in [(ip.p1, ip.p2), (ip.p3, ip.p4)] {
                let c = build_cap(&t, a, b);
                let on_vertex = t.vertices().iter().any(|v| v.dist(c.p12) < 1e-9);
                let on_chord = (c.p12 - a).cross(b - a).abs() < 1e-9;
                assert!(on_vertex || on_chord, "cap apex {:?}", c.p12);
            }
        }
    }

    #[test]
    fn radial_derivative_square_examples() {
        let k = unit_square();
        for s in [0.25, 0.5, 0.75] {
            let d = radial_derivative(&k, &vol(), Vec2::new(s, 0.0)).unwrap();
            assert!((d - s).abs() < 1e-12, "vol derivative at offset {s}");
        }
        let d = radial_derivative(&k, &per(), Vec2::new(0.5, 0.0)).unwrap();
        assert!((d - 1.0).abs() < 1e-12);

        let d = radial_derivative(&k, &per(), Vec2::new(0.5, 0.5)).unwrap();
        assert!((d - 2.0).abs() < 1e-12);

        // Width derivative fixed by the finite-difference oracle: g(t·x) =
        // 1 − t/2 along x = (0, 1/2), so the left derivative is 1/2.
        let x = Vec2::new(0.0, 0.5);
        let d = radial_derivative(&k, &width_y(), x).unwrap();
        let h = 1e-6;
        let fd = (cov_at(&k, &width_y(), x * (1.0 - h)) - cov_at(&k, &width_y(), x)) / h;
        assert!((d - fd).abs() < 1e-6);
        assert!((d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn radial_derivative_matches_backward_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let phis = [
            vol(),
            per(),
            Valuation::perimeter(SeminormBall::strip(Vec2::new(0.8, 0.6), 1.0).unwrap()),
            Valuation::new(SeminormBall::unit_disk(), 1.5, 1.0).unwrap(),
        ];
        let h = 1e-5;
        for phi in &phis {
            let mut done = 0;
            while done < 25 {
                let k = random_convex_polygon(&mut rng, 5, 1.0);
                let dk = difference_body(&k);
                let x = Vec2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                if dk.signed_distance(x) > -1e-2 || x.norm() < 1e-2 {
                    continue;
                }
                let analytic = radial_derivative(&k, phi, x).unwrap();
                let fd = (cov_at(&k, phi, x * (1.0 - h)) - cov_at(&k, phi, x)) / h;
                assert!(
                    (analytic - fd).abs() < 1e-4 * (1.0 + analytic.abs()),
                    "analytic {analytic} vs fd {fd}"
                );
                done += 1;
            }
        }
    }

    #[test]
    fn width_core_square_and_triangle() {
        let k = unit_square();
        let core = width_core(&k, Vec2::new(0.0, 1.0));
        match core {
            Overlap::Polygon(p) => {
                let expect = Polygon::rect(-1.0, 0.0, 1.0, 1.0).unwrap();
                assert!(crate::geom::hausdorff_distance(&p, &expect) < 1e-12);
            }
            other => panic!("expected polygon core, got {other:?}"),
        }

        // Vertex face on top: the core of the triangle still satisfies the
        // value criterion pointwise.
        let t = Polygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)])
            .unwrap();
        let z = Vec2::new(0.0, 1.0);
        let Overlap::Polygon(core_t) = width_core(&t, z) else {
            panic!("triangle core should be full-dimensional")
        };
        for v in core_t.vertices() {
            assert!(v.dot(z) >= -1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let dk = difference_body(&t);
        let (lo, hi) = dk.bbox();
        for _ in 0..300 {
            let x = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            if !dk.contains(x, 0.0) || core_t.signed_distance(x).abs() < 1e-7 {
                continue;
            }
            assert_eq!(core_t.contains(x, 0.0), core_criterion_check(&t, z, x));
        }

        // core ⊆ {⟨x, z⟩ ≥ 0} on random polygons.
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..10 {
            let p = random_convex_polygon(&mut rng, 5, 1.0);
            let z = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                .normalized()
                .unwrap_or(Vec2::new(0.0, 1.0));
            if let Overlap::Polygon(c) = width_core(&p, z) {
                for v in c.vertices() {
                    assert!(v.dot(z) >= -1e-9);
                }
            }
        }
    }

    #[test]
    fn core_criterion_examples_and_agreement() {
        let k = unit_square();
        let z = Vec2::new(0.0, 1.0);
        assert!(core_criterion_check(&k, z, Vec2::new(0.3, 0.4)));
        assert!(!core_criterion_check(&k, z, Vec2::new(0.3, -0.4)));

        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let p = random_convex_polygon(&mut rng, 6, 1.0);
        let zr = Vec2::new(0.3, 1.0).normalized().unwrap();
        let core = width_core(&p, zr);
        let Overlap::Polygon(core) = core else {
            panic!("full-dimensional core expected")
        };
        let dk = difference_body(&p);
        let (lo, hi) = dk.bbox();
        let mut checked = 0;
        let mut mismatches = 0;
        for j in 0..32 {
            for i in 0..32 {
                let x = Vec2::new(
                    lo.x + (hi.x - lo.x) * (i as f64 + 0.5) / 32.0,
                    lo.y + (hi.y - lo.y) * (j as f64 + 0.5) / 32.0,
                );
                if !dk.contains(x, 0.0) || core.signed_distance(x).abs() < 1e-6 {
                    continue;
                }
                checked += 1;
                let member = core.contains(x, 0.0);
                if member != core_criterion_check(&p, zr, x) {
                    mismatches += 1;
                }
            }
        }
        assert!(checked > 400);
        assert_eq!(mismatches, 0);
    }

    #[test]
    fn integral_identity_square() {
        let k = unit_square();
        let cases = [
            (vol(), 1.0),
            (per(), 8.0),
            (Valuation::new(SeminormBall::unit_disk(), 1.0, 1.0).unwrap(), 9.0),
        ];
        for (phi, expect) in &cases {
            let (num, ana) = integral_identity_check(&k, phi, 0.02);
            assert!((ana - expect).abs() < 1e-12);
            assert!((num - ana).abs() < 5e-3 * ana.abs(), "num={num} ana={ana}");
        }
    }

    #[test]
    fn evenness_and_concavity() {
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        let k = random_convex_polygon(&mut rng, 6, 1.0);
        let dk = difference_body(&k);
        let phi = Valuation::new(SeminormBall::unit_disk(), 1.0, 1.0).unwrap();
        let (lo, hi) = dk.bbox();
        let sample = |rng: &mut ChaCha8Rng| loop {
            let x = Vec2::new(
                rng.random_range(lo.x..hi.x),
                rng.random_range(lo.y..hi.y),
            );
            if dk.contains(x, 0.0) {
                return x;
            }
        };
        for _ in 0..200 {
            let x = sample(&mut rng);
            assert!((cov_at(&k, &phi, x) - cov_at(&k, &phi, -x)).abs() < 1e-12);
        }
        let per = per();
        for _ in 0..200 {
            let x = sample(&mut rng);
            let y = sample(&mut rng);
            let m = (x + y) * 0.5;
            let gp = cov_at(&k, &per, m);
            assert!(gp >= 0.5 * (cov_at(&k, &per, x) + cov_at(&k, &per, y)) - 1e-9);
            let gv = cov_at(&k, &vol(), m).sqrt();
            let hv = 0.5 * (cov_at(&k, &vol(), x).sqrt() + cov_at(&k, &vol(), y).sqrt());
            assert!(gv >= hv - 1e-9);
        }
    }
}
