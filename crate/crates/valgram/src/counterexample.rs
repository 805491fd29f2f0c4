//! Nondetermination constructions: product bodies whose factor can be
//! reflected without changing the covariogram, and width prismatoids built
//! from a symmetrized base, evaluated at desk scale through 2-D primitives
//! only.
//!
//! A z-prismatoid is stored by its two faces at heights ±1; every other
//! horizontal slice is the Minkowski average of the faces, so 3-D
//! intersection questions reduce to 2-D polygon intersections over a slice
//! parameter.

use crate::geom::{
    convex_hull, difference_body, hausdorff_distance, intersect, minkowski_sum, Overlap, Polygon,
    Vec2, EPS_GEOM,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CounterexampleError {
    #[error("slice parameter must lie in [-1, 1]")]
    ParameterOutOfRange,
    #[error("the decomposition requires DF = DG")]
    HypothesisViolated,
}

/// Closed interval on the line, the 1-D factor of product bodies.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a <= b, "interval endpoints out of order");
        Interval { a, b }
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    /// Length of `I ∩ (I + x)`, or `None` when the translates are disjoint.
    pub fn overlap_len(&self, x: f64) -> Option<f64> {
        let l = self.len() - x.abs();
        if l < 0.0 {
            None
        } else {
            Some(l)
        }
    }
}

/// Surface-area covariogram of the prism `I × H` at `(x, y)`: with
/// `I' = I ∩ (I+x)` and `Q' = H ∩ (H+y)`, the value is
/// `2 area(Q') + len(I') per(Q')`, zero when either factor is empty.
/// Degenerate cross sections keep the limit values: flat slabs count both
/// sides, segments twice.
pub fn prism_surface_cov(i: &Interval, h: &Polygon, x: f64, y: Vec2) -> f64 {
    let Some(ilen) = i.overlap_len(x) else {
        return 0.0;
    };
    match intersect(h, &h.translate(y)) {
        Overlap::Empty => 0.0,
        Overlap::Degenerate(s) => ilen * 2.0 * s.len(),
        Overlap::Polygon(q) => 2.0 * q.area() + ilen * q.euclid_perimeter(),
    }
}

/// Width covariogram (width along the interval factor) of `H × K` at
/// `(x, y)`: the indicator of `x ∈ DH` times `len(K ∩ (K+y))`. The value
/// only sees `DH`, so replacing `H` by any body with the same difference
/// set leaves it unchanged.
pub fn product_width_cov(h: &Polygon, k: &Interval, x: Vec2, y: f64) -> f64 {
    if !difference_body(h).contains(x, 0.0) {
        return 0.0;
    }
    k.overlap_len(y).unwrap_or(0.0)
}

/// Minkowski combination `ca·A ⊕ cb·B` with nonnegative coefficients;
/// vanishing coefficients drop their summand.
fn scaled_sum(a: &Polygon, ca: f64, b: &Polygon, cb: f64) -> Polygon {
    const TINY: f64 = 1e-12;
    if ca < TINY {
        b.scale(cb)
    } else if cb < TINY {
        a.scale(ca)
    } else {
        minkowski_sum(&a.scale(ca), &b.scale(cb))
    }
}

/// Convex hull of two faces at heights +1 and −1.
#[derive(Clone, Debug, Serialize)]
pub struct Prismatoid {
    /// `F`: the face at height +1.
    pub upper: Polygon,
    /// `G`: the face at height −1.
    pub lower: Polygon,
}

impl Prismatoid {
    pub fn new(upper: Polygon, lower: Polygon) -> Self {
        Prismatoid { upper, lower }
    }

    /// Horizontal slice at height `t ∈ [−1, 1]`: the Minkowski average
    /// `((1+t)/2)·F ⊕ ((1−t)/2)·G`; the endpoints give the faces exactly.
    pub fn slice(&self, t: f64) -> Result<Polygon, CounterexampleError> {
        if !(-1.0..=1.0).contains(&t) {
            return Err(CounterexampleError::ParameterOutOfRange);
        }
        if t == 1.0 {
            return Ok(self.upper.clone());
        }
        if t == -1.0 {
            return Ok(self.lower.clone());
        }
        Ok(scaled_sum(
            &self.upper,
            (1.0 + t) * 0.5,
            &self.lower,
            (1.0 - t) * 0.5,
        ))
    }

    pub fn is_origin_symmetric(&self, eps: f64) -> bool {
        let neg = self.upper.negate();
        if self.lower.len() != neg.len() {
            return false;
        }
        hausdorff_distance(&self.lower, &neg) <= eps
    }

    /// Slice of the difference body at height `s ∈ [−2, 2]`: the hull of
    /// the two extreme products `S(t) ⊕ (−S(t−s))`, because the support of
    /// that sum is linear in the slice parameter `t`.
    pub fn dk_height_slice(&self, s: f64) -> Option<Polygon> {
        let t_lo = (-1.0f64).max(-1.0 + s);
        let t_hi = 1.0f64.min(1.0 + s);
        if t_lo > t_hi {
            return None;
        }
        // Clamp against the half-ulp the endpoint arithmetic can lose.
        let product = |t: f64| {
            let a = self.slice(t.clamp(-1.0, 1.0)).expect("t in range");
            let b = self.slice((t - s).clamp(-1.0, 1.0)).expect("t - s in range");
            minkowski_sum(&a, &b.negate())
        };
        let a = product(t_lo);
        if t_hi - t_lo < 1e-12 {
            return Some(a);
        }
        let b = product(t_hi);
        let mut pts = a.vertices().to_vec();
        pts.extend_from_slice(b.vertices());
        Some(convex_hull(&pts).expect("full-dimensional slice"))
    }
}

/// Width (along the prismatoid axis) of `K ∩ (K + (v, s))`: the length of
/// the slice-parameter interval where `slice(t)` meets `slice(t−s) + v`.
/// The feasible set is an interval by convexity; a feasible seed is
/// located on the concave support margin and the endpoints by bisection on
/// the 2-D intersection predicate, to `1e-9` within at most 60 steps.
pub fn prismatoid_width_cov(kp: &Prismatoid, v: Vec2, s: f64) -> f64 {
    let t_lo = (-1.0f64).max(-1.0 + s);
    let t_hi = 1.0f64.min(1.0 + s);
    if t_lo > t_hi {
        return 0.0;
    }

    // h(S(t) ⊕ (−S(t−s)), w) is linear in t for every direction w, and
    // membership of v needs only the edge normals of the four face
    // polygons, a fixed set.
    let mut normals: Vec<Vec2> = Vec::new();
    for p in [&kp.upper, &kp.lower] {
        for i in 0..p.len() {
            for n in [p.outward_normal(i), -p.outward_normal(i)] {
                if !normals.iter().any(|m| m.dist(n) < 1e-12) {
                    normals.push(n);
                }
            }
        }
    }
    let neg_upper = kp.upper.negate();
    let neg_lower = kp.lower.negate();
    let hf: Vec<f64> = normals.iter().map(|&w| kp.upper.support(w)).collect();
    let hg: Vec<f64> = normals.iter().map(|&w| kp.lower.support(w)).collect();
    let hnf: Vec<f64> = normals.iter().map(|&w| neg_upper.support(w)).collect();
    let hng: Vec<f64> = normals.iter().map(|&w| neg_lower.support(w)).collect();
    let margin = |t: f64| -> f64 {
        let mut m = f64::INFINITY;
        for (idx, w) in normals.iter().enumerate() {
            let h_slice = 0.5 * (1.0 + t) * hf[idx] + 0.5 * (1.0 - t) * hg[idx];
            let h_neg = 0.5 * (1.0 + t - s) * hnf[idx] + 0.5 * (1.0 - t + s) * hng[idx];
            m = m.min(h_slice + h_neg - v.dot(*w));
        }
        m
    };

    // Concave piecewise-linear margin: ternary search for a feasible seed.
    let (mut a, mut b) = (t_lo, t_hi);
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if margin(m1) < margin(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let t_seed = 0.5 * (a + b);
    // Clamp against the half-ulp the endpoint arithmetic can lose.
    let feasible = |t: f64| {
        let p = kp.slice(t.clamp(-1.0, 1.0)).expect("t in range");
        let q = kp
            .slice((t - s).clamp(-1.0, 1.0))
            .expect("t - s in range")
            .translate(v);
        !intersect(&p, &q).is_empty()
    };
    if margin(t_seed) < 0.0 || !feasible(t_seed) {
        return 0.0;
    }

    let bisect = |mut bad: f64, mut good: f64| -> f64 {
        if feasible(bad) {
            return bad;
        }
        for _ in 0..60 {
            if (bad - good).abs() < 1e-9 {
                break;
            }
            let mid = 0.5 * (bad + good);
            if feasible(mid) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        0.5 * (bad + good)
    };
    let lo = bisect(t_lo, t_seed);
    let hi = bisect(t_hi, t_seed);
    hi - lo
}

/// The equal-width-covariogram pair: a centrally symmetric prismatoid over
/// the symmetrized triangle base, and its sibling over the plain triangle.
/// The faces share their difference sets, so the width covariograms agree
/// while the bodies are not translates of each other.
pub fn build_equal_width_pair() -> (Prismatoid, Prismatoid) {
    let base = Polygon::new(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap();
    let symmetrized = difference_body(&base).scale(0.5);
    let top = Polygon::new(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(0.75, 0.0),
        Vec2::new(0.25, 0.5),
    ])
    .unwrap();
    let sym_pair = Prismatoid::new(
        minkowski_sum(&symmetrized, &top),
        minkowski_sum(&symmetrized, &top.negate()),
    );
    let asym_pair = Prismatoid::new(
        minkowski_sum(&base, &top),
        minkowski_sum(&base, &top.negate()),
    );
    (sym_pair, asym_pair)
}

/// Verify slice-by-slice that `DK` is the hull of `F−G`, `DF` and `G−F`
/// placed at heights 2, 0, −2: each horizontal slice of `DK` must equal
/// the matching Minkowski combination. Requires `DF = DG`.
pub fn dk_decomposition_check(
    kp: &Prismatoid,
    heights: usize,
) -> Result<bool, CounterexampleError> {
    let df = difference_body(&kp.upper);
    let dg = difference_body(&kp.lower);
    if hausdorff_distance(&df, &dg) > 10.0 * EPS_GEOM {
        return Err(CounterexampleError::HypothesisViolated);
    }
    let fg = minkowski_sum(&kp.upper, &kp.lower.negate());
    let gf = fg.negate();
    for i in 0..heights {
        let s = -2.0 + 4.0 * (i as f64 + 0.5) / heights as f64;
        let Some(direct) = kp.dk_height_slice(s) else {
            return Ok(false);
        };
        let lam = s.abs() * 0.5;
        let extreme = if s >= 0.0 { &fg } else { &gf };
        let combo = scaled_sum(extreme, lam, &df, 1.0 - lam);
        if hausdorff_distance(&direct, &combo) > 10.0 * EPS_GEOM {
            return Ok(false);
        }
    }
    Ok(true)
}
