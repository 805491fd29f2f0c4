//! Seeded Monte-Carlo samplers for the random chords associated with
//! covariograms, their analytic laws, Kolmogorov-Smirnov comparison, and
//! the boundary-interior difference variable whose density is a scaled
//! covariogram.
//!
//! All randomness flows through ChaCha8 seeded with an explicit 64-bit
//! value, so every sampler is a pure function of its arguments.

use crate::covariogram::{cov_at, radial_derivative};
use crate::geom::{difference_body, ChordProfile, Polygon, Vec2};
use crate::valuation::{per_b, SeminormBall, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StochasticError {
    #[error("the seminorm perimeter vanishes; boundary density is undefined")]
    DegenerateSeminormPerimeter,
    #[error("this chord law needs a seminorm ball with positive perimeter")]
    KindPreconditionViolated,
    #[error("the requested mixture density is degenerate")]
    DegenerateDensity,
}

/// How a random chord parallel to a direction is selected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChordKind {
    /// Uniform random line among those meeting the body.
    Mu,
    /// Chord through a uniform random interior point.
    Nu,
    /// Chord through a boundary point with seminorm-length density.
    Gamma,
}

/// Sorted sample set with survival-function accessors.
#[derive(Clone, Debug)]
pub struct Ecdf {
    samples: Vec<f64>,
}

impl Ecdf {
    pub fn new(mut samples: Vec<f64>) -> Self {
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ecdf { samples }
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Fraction of samples `≥ r`.
    pub fn survival(&self, r: f64) -> f64 {
        let idx = self.samples.partition_point(|&x| x < r);
        (self.samples.len() - idx) as f64 / self.samples.len() as f64
    }

    /// Fraction of samples `> r`.
    pub fn survival_after(&self, r: f64) -> f64 {
        let idx = self.samples.partition_point(|&x| x <= r);
        (self.samples.len() - idx) as f64 / self.samples.len() as f64
    }

    /// Order-insensitive merge of two sample sets.
    pub fn merge(mut self, other: Ecdf) -> Ecdf {
        self.samples.extend(other.samples);
        Ecdf::new(self.samples)
    }

    /// Two-column CSV `r,survival` at 17 significant digits.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "r,survival")?;
        let n = self.samples.len() as f64;
        for (i, r) in self.samples.iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e}", r, (n - i as f64) / n)?;
        }
        Ok(())
    }
}

/// Uniform points in a convex polygon: fan triangle chosen by area, point
/// by the square-root barycentric map.
pub fn sample_uniform(k: &Polygon, seed: u64, n: usize) -> Vec<Vec2> {
    sample_uniform_rng(k, &mut ChaCha8Rng::seed_from_u64(seed), n)
}

pub fn sample_uniform_rng<R: Rng>(k: &Polygon, rng: &mut R, n: usize) -> Vec<Vec2> {
    let tri_count = k.len() - 2;
    let mut cum = Vec::with_capacity(tri_count);
    let mut total = 0.0;
    for i in 1..k.len() - 1 {
        let a = k.vertex(0);
        let b = k.vertex(i);
        let c = k.vertex(i + 1);
        total += 0.5 * (b - a).cross(c - a);
        cum.push(total);
    }
    (0..n)
        .map(|_| {
            let target: f64 = rng.random_range(0.0..total);
            let t = cum.partition_point(|&x| x < target).min(tri_count - 1);
            let a = k.vertex(0);
            let b = k.vertex(t + 1);
            let c = k.vertex(t + 2);
            let su = rng.random_range(0.0_f64..1.0).sqrt();
            let v: f64 = rng.random_range(0.0..1.0);
            a * (1.0 - su) + b * (su * (1.0 - v)) + c * (su * v)
        })
        .collect()
}

/// Boundary points with density `len_B / per_B(K)`: an edge is chosen with
/// probability proportional to its seminorm length, then uniformly along
/// it (the density is constant on straight edges). Vertex ties resolve to
/// the edge they start.
pub fn sample_boundary(
    k: &Polygon,
    ball: &SeminormBall,
    seed: u64,
    n: usize,
) -> Result<Vec<Vec2>, StochasticError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_boundary_edges_rng(k, ball, &mut rng, n)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}

fn sample_boundary_edges_rng<R: Rng>(
    k: &Polygon,
    ball: &SeminormBall,
    rng: &mut R,
    n: usize,
) -> Result<Vec<(usize, Vec2)>, StochasticError> {
    let mut cum = Vec::with_capacity(k.len());
    let mut total = 0.0;
    for i in 0..k.len() {
        total += ball.seminorm(k.edge_vec(i));
        cum.push(total);
    }
    if total < 1e-12 {
        return Err(StochasticError::DegenerateSeminormPerimeter);
    }
    Ok((0..n)
        .map(|_| {
            let target: f64 = rng.random_range(0.0..total);
            let e = cum.partition_point(|&x| x < target).min(k.len() - 1);
            let t: f64 = rng.random_range(0.0..1.0);
            (e, k.vertex(e) + k.edge_vec(e) * t)
        })
        .collect())
}

/// One boundary edge reduced to its offset interval along the chord axis
/// and its seminorm length.
#[derive(Clone, Copy, Debug)]
struct BoundarySpan {
    t_a: f64,
    t_b: f64,
    len_b: f64,
}

/// Boundary data of the boundary-point chord law.
struct BoundaryLaw {
    spans: Vec<BoundarySpan>,
    per: f64,
}

/// Analytic distribution of the chord length for one body, direction and
/// selection rule. Values are left-continuous survival probabilities
/// `P(L ≥ r)`; the laws carry atoms at the lengths of the faces parallel
/// to the direction.
pub struct ChordLaw {
    k: Polygon,
    pub profile: ChordProfile,
    kind: ChordKind,
    vol: f64,
    /// `min/max{len F(K,Ru), len F(K,−Ru)}`.
    pub r_faces: (f64, f64),
    /// Normalizer of the line law: superlevel measure at `r = 1e-7`.
    mu_norm: f64,
    gamma: Option<BoundaryLaw>,
}

impl ChordLaw {
    pub fn new(
        k: &Polygon,
        ball: Option<&SeminormBall>,
        u: Vec2,
        kind: ChordKind,
    ) -> Result<ChordLaw, StochasticError> {
        let u = u.normalized().expect("direction must be nonzero");
        let profile = ChordProfile::new(k, u);
        let lo = profile.length_at(profile.t_min());
        let hi = profile.length_at(profile.t_max());
        let gamma = if kind == ChordKind::Gamma {
            let ball = ball.ok_or(StochasticError::KindPreconditionViolated)?;
            if matches!(ball, SeminormBall::Full) {
                return Err(StochasticError::KindPreconditionViolated);
            }
            let per = per_b(ball, k);
            if per < 1e-12 {
                return Err(StochasticError::KindPreconditionViolated);
            }
            let axis = profile.axis;
            let spans = (0..k.len())
                .map(|i| BoundarySpan {
                    t_a: k.vertex(i).dot(axis),
                    t_b: k.vertex(i + 1).dot(axis),
                    len_b: ball.seminorm(k.edge_vec(i)),
                })
                .collect();
            Some(BoundaryLaw { spans, per })
        } else {
            None
        };
        let mu_norm = profile.superlevel_measure(1e-7);
        Ok(ChordLaw {
            k: k.clone(),
            profile,
            kind,
            vol: k.area(),
            r_faces: (lo.min(hi), lo.max(hi)),
            mu_norm,
            gamma,
        })
    }

    /// Largest attainable chord length: the radial function of the
    /// difference body in the chord direction.
    pub fn support_radius(&self) -> f64 {
        self.profile.max_length()
    }

    /// `P(L ≥ r)`.
    pub fn survival(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 1.0;
        }
        let rho = self.support_radius();
        if r > rho {
            return 0.0;
        }
        match self.kind {
            ChordKind::Mu => (self.profile.superlevel_measure(r) / self.mu_norm).clamp(0.0, 1.0),
            ChordKind::Nu => {
                // vol·P = g(ru) − r g'(ru), realized through the inscribed
                // parallelogram; on the outer boundary the superlevel slab
                // provides the left limit directly.
                let x = self.profile.dir * r;
                let val = if r < rho {
                    match radial_derivative(&self.k, &Valuation::volume(), x) {
                        Ok(d) => cov_at(&self.k, &Valuation::volume(), x) + d,
                        Err(_) => self.profile.slab_area(r),
                    }
                } else {
                    self.profile.slab_area(r)
                };
                (val / self.vol).clamp(0.0, 1.0)
            }
            ChordKind::Gamma => {
                // Direct form of the branch expressions: the chord through
                // a boundary point y is at least r exactly when the offset
                // of y lies in the superlevel set of the length profile
                // (faces parallel to the direction sit at extreme offsets
                // and enter exactly when their length is at least r).
                let law = self.gamma.as_ref().expect("gamma law has ball data");
                let Some((lo_t, hi_t)) = self.profile.superlevel(r) else {
                    return 0.0;
                };
                let (t_min, t_max) = (self.profile.t_min(), self.profile.t_max());
                let mut mass = 0.0;
                for s in &law.spans {
                    let span = (s.t_b - s.t_a).abs();
                    if span < 1e-13 {
                        // Face parallel to the chord direction, sitting at
                        // an extreme offset. It belongs to the event
                        // exactly when the superlevel interval reaches its
                        // extreme, which `superlevel` reports bit-exactly;
                        // a tolerance here would erase the one-ulp atoms.
                        let at_top = (s.t_a - t_max).abs() < (s.t_a - t_min).abs();
                        if (at_top && hi_t == t_max) || (!at_top && lo_t == t_min) {
                            mass += s.len_b;
                        }
                    } else {
                        let (a, b) = (s.t_a.min(s.t_b), s.t_a.max(s.t_b));
                        let overlap = (hi_t.min(b) - lo_t.max(a)).max(0.0);
                        mass += s.len_b * overlap / span;
                    }
                }
                (mass / law.per).clamp(0.0, 1.0)
            }
        }
    }

    /// Right limit `P(L > r)`; differs from [`Self::survival`] at the
    /// atoms. One ulp suffices: atoms sit at exactly representable face
    /// lengths and may be closer together than any fixed step.
    pub fn survival_after(&self, r: f64) -> f64 {
        self.survival(r.next_up())
    }
}

/// One-shot evaluation of `P(L ≥ r)` for the chosen chord law.
pub fn chord_cdf_analytic(
    k: &Polygon,
    ball: Option<&SeminormBall>,
    u: Vec2,
    kind: ChordKind,
    r: f64,
) -> Result<f64, StochasticError> {
    Ok(ChordLaw::new(k, ball, u, kind)?.survival(r))
}

/// Simulate `n` chord lengths under the chosen law. Chords on a boundary
/// edge parallel to the direction take the full edge length, matching the
/// atoms of the analytic law exactly.
pub fn simulate_chords(
    k: &Polygon,
    ball: Option<&SeminormBall>,
    u: Vec2,
    kind: ChordKind,
    seed: u64,
    n: usize,
) -> Result<Ecdf, StochasticError> {
    let u = u.normalized().expect("direction must be nonzero");
    let profile = ChordProfile::new(k, u);
    let axis = profile.axis;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lengths: Vec<f64> = match kind {
        ChordKind::Mu => {
            let (a, b) = (profile.t_min(), profile.t_max());
            (0..n)
                .map(|_| profile.length_at(rng.random_range(a..b)))
                .collect()
        }
        ChordKind::Nu => sample_uniform_rng(k, &mut rng, n)
            .into_iter()
            .map(|x| profile.length_at(x.dot(axis)))
            .collect(),
        ChordKind::Gamma => {
            let ball = ball.ok_or(StochasticError::KindPreconditionViolated)?;
            sample_boundary_edges_rng(k, ball, &mut rng, n)?
                .into_iter()
                .map(|(e, y)| {
                    let ev = k.edge_vec(e);
                    if ev.dot(axis).abs() < 1e-12 * ev.norm() {
                        // Edge parallel to the chord direction: the chord
                        // is the whole edge.
                        ev.norm()
                    } else {
                        profile.length_at(y.dot(axis))
                    }
                })
                .collect()
        }
    };
    Ok(Ecdf::new(lengths))
}

/// Exact Kolmogorov-Smirnov distance between the empirical survival
/// function and the analytic law, accounting for atoms on both sides.
pub fn ks_distance(ecdf: &Ecdf, law: &ChordLaw) -> f64 {
    let mut d: f64 = 0.0;
    let samples = ecdf.samples();
    let n = samples.len() as f64;
    let mut i = 0;
    let mut prev_after = 1.0;
    while i < samples.len() {
        let v = samples[i];
        let mut j = i;
        while j < samples.len() && samples[j] == v {
            j += 1;
        }
        let emp_at = (samples.len() - i) as f64 / n;
        let emp_after = (samples.len() - j) as f64 / n;
        let ana_at = law.survival(v);
        let ana_after = law.survival_after(v);
        d = d
            .max((prev_after - ana_at).abs())
            .max((emp_at - ana_at).abs())
            .max((emp_after - ana_after).abs());
        prev_after = emp_after;
        i = j;
    }
    d.max(prev_after)
}

/// Result of comparing the empirical `Σ(X−Z)` histogram with the scaled
/// covariogram density.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaXzReport {
    /// Total-variation distance between the two binned measures,
    /// `½ Σ_cells |empirical − analytic|`.
    pub l1_error: f64,
    pub bins: usize,
    pub origin: Vec2,
    pub cell: Vec2,
    pub empirical: Vec<f64>,
    pub analytic: Vec<f64>,
}

impl SigmaXzReport {
    /// Cell-center CSV `x,y,mass` for one of the two histograms.
    pub fn write_csv<W: Write>(&self, w: &mut W, values: &[f64]) -> io::Result<()> {
        writeln!(w, "x,y,mass")?;
        for j in 0..self.bins {
            for i in 0..self.bins {
                let x = self.origin.x + self.cell.x * (i as f64 + 0.5);
                let y = self.origin.y + self.cell.y * (j as f64 + 0.5);
                writeln!(w, "{:.16e},{:.16e},{:.16e}", x, y, values[j * self.bins + i])?;
            }
        }
        Ok(())
    }
}

/// Sample `Σ(X−Z)` with `X` uniform in `K`, `Z` the boundary-interior
/// mixture weighted `β₁ per_B(K) : β₂ vol(K)`, and `Σ` a fair sign; bin
/// over the difference body and compare with the cell integrals of
/// `g_φ / (2c vol K)` for `φ = β₁ per_B + 2 β₂ vol` and
/// `c = β₁ per_B(K) + β₂ vol(K)`.
pub fn sigma_xz_density_check(
    k: &Polygon,
    ball: &SeminormBall,
    beta1: f64,
    beta2: f64,
    seed: u64,
    n: usize,
    bins: usize,
) -> Result<SigmaXzReport, StochasticError> {
    if beta1 <= 0.0 || beta2 < 0.0 {
        return Err(StochasticError::DegenerateDensity);
    }
    let per = per_b(ball, k);
    let vol = k.area();
    let wb = beta1 * per;
    let wi = beta2 * vol;
    let c = wb + wi;
    if c <= 0.0 {
        return Err(StochasticError::DegenerateDensity);
    }
    let phi = Valuation::new(ball.clone(), 2.0 * beta2 / beta1, beta1)
        .expect("valid mixture coefficients");

    let dk = difference_body(k);
    let (lo, hi) = dk.bbox();
    let cell = Vec2::new((hi.x - lo.x) / bins as f64, (hi.y - lo.y) / bins as f64);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; bins * bins];
    for _ in 0..n {
        let x = sample_uniform_rng(k, &mut rng, 1)[0];
        let z = if rng.random_range(0.0..c) < wb {
            sample_boundary_edges_rng(k, ball, &mut rng, 1)?[0].1
        } else {
            sample_uniform_rng(k, &mut rng, 1)[0]
        };
        let sigma = if rng.random_range(0.0..1.0) < 0.5 { 1.0 } else { -1.0 };
        let v = (x - z) * sigma;
        let bi = (((v.x - lo.x) / cell.x) as usize).min(bins - 1);
        let bj = (((v.y - lo.y) / cell.y) as usize).min(bins - 1);
        counts[bj * bins + bi] += 1;
    }
    let empirical: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();

    // 3×3 midpoint quadrature of the density per cell.
    let norm = 2.0 * c * vol;
    let analytic: Vec<f64> = {
        use rayon::prelude::*;
        (0..bins * bins)
            .into_par_iter()
            .map(|idx| {
                let (bi, bj) = (idx % bins, idx / bins);
                let mut acc = 0.0;
                for sj in 0..3 {
                    for si in 0..3 {
                        let p = Vec2::new(
                            lo.x + cell.x * (bi as f64 + (si as f64 + 0.5) / 3.0),
                            lo.y + cell.y * (bj as f64 + (sj as f64 + 0.5) / 3.0),
                        );
                        acc += cov_at(k, &phi, p) / norm;
                    }
                }
                acc / 9.0 * cell.x * cell.y
            })
            .collect()
    };

    let l1_error = 0.5
        * empirical
            .iter()
            .zip(analytic.iter())
            .map(|(e, a)| (e - a).abs())
            .sum::<f64>();
    Ok(SigmaXzReport {
        l1_error,
        bins,
        origin: lo,
        cell,
        empirical,
        analytic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_convex_polygon;

    fn unit_square() -> Polygon {
        Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap()
    }

    fn scalene() -> Polygon {
        Polygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.4, 0.1), Vec2::new(0.4, 1.0)]).unwrap()
    }

    fn hexagon() -> Polygon {
        Polygon::regular(6, 1.0).unwrap()
    }

    fn chi2_ok(observed: &[u64], expected: &[f64], quantile: f64) -> bool {
        // Pearson statistic against the 0.999 chi² quantile for the dof.
        let n: u64 = observed.iter().sum();
        let stat: f64 = observed
            .iter()
            .zip(expected.iter())
            .map(|(&o, &p)| {
                let e = p * n as f64;
                (o as f64 - e) * (o as f64 - e) / e
            })
            .sum();
        stat < quantile
    }

    #[test]
    fn uniform_sampling_square() {
        let k = unit_square();
        let pts = sample_uniform(&k, 42, 100_000);
        assert!(pts.iter().all(|p| k.contains(*p, 1e-12)));
        let mean = pts.iter().fold(Vec2::ZERO, |a, &b| a + b) / pts.len() as f64;
        // std of the mean is (1/√12)/√n ≈ 9.1e-4.
        assert!((mean.x - 0.5).abs() < 3.0 * 9.2e-4, "mean.x = {}", mean.x);
        assert!((mean.y - 0.5).abs() < 3.0 * 9.2e-4, "mean.y = {}", mean.y);
    }

    #[test]
    fn uniform_sampling_triangle_chi2() {
        let t = scalene();
        let pts = sample_uniform(&t, 7, 40_000);
        // Split by the midpoint triangle: all four pieces have equal area.
        let (a, b, c) = (t.vertex(0), t.vertex(1), t.vertex(2));
        let (mab, mbc, mca) = ((a + b) * 0.5, (b + c) * 0.5, (c + a) * 0.5);
        let sub = [
            Polygon::new(vec![a, mab, mca]).unwrap(),
            Polygon::new(vec![mab, b, mbc]).unwrap(),
            Polygon::new(vec![mca, mbc, c]).unwrap(),
            Polygon::new(vec![mab, mbc, mca]).unwrap(),
        ];
        let mut counts = [0u64; 4];
        for p in &pts {
            for (i, s) in sub.iter().enumerate() {
                if s.contains(*p, 1e-9) {
                    counts[i] += 1;
                    break;
                }
            }
        }
        assert!(counts.iter().sum::<u64>() >= 39_990);
        // chi²(3 dof) 0.999 quantile ≈ 16.27.
        assert!(chi2_ok(&counts, &[0.25; 4], 16.27), "{counts:?}");
    }

    #[test]
    fn boundary_sampling_weights() {
        let k = unit_square();
        let disk = SeminormBall::unit_disk();
        let pts = sample_boundary(&k, &disk, 3, 40_000).unwrap();
        let mut counts = [0u64; 4];
        for p in &pts {
            if (p.y - 0.0).abs() < 1e-12 {
                counts[0] += 1;
            } else if (p.x - 1.0).abs() < 1e-12 {
                counts[1] += 1;
            } else if (p.y - 1.0).abs() < 1e-12 {
                counts[2] += 1;
            } else {
                counts[3] += 1;
            }
        }
        assert!(chi2_ok(&counts, &[0.25; 4], 16.27), "{counts:?}");

        // Strip seminorm kills horizontal edges entirely.
        let strip = SeminormBall::strip(Vec2::new(0.0, 1.0), 1.0).unwrap();
        let pts = sample_boundary(&k, &strip, 5, 20_000).unwrap();
        let mut vertical = [0u64; 2];
        for p in &pts {
            assert!(p.x.abs() < 1e-12 || (p.x - 1.0).abs() < 1e-12);
            vertical[usize::from(p.x > 0.5)] += 1;
        }
        // chi²(1 dof) 0.999 quantile ≈ 10.83.
        assert!(chi2_ok(&vertical, &[0.5; 2], 10.83), "{vertical:?}");

        assert_eq!(
            sample_boundary(&k, &SeminormBall::Full, 1, 10).unwrap_err(),
            StochasticError::DegenerateSeminormPerimeter
        );

        // Mixed-ball hexagon frequencies follow the seminorm weights.
        let hex = hexagon();
        let ball = SeminormBall::bounded_polygon(
            Polygon::new(vec![
                Vec2::new(1.0, 0.0),
                Vec2::new(0.0, 2.0),
                Vec2::new(-1.0, 0.0),
                Vec2::new(0.0, -2.0),
            ])
            .unwrap(),
        )
        .unwrap();
        let pts = sample_boundary(&hex, &ball, 11, 60_000).unwrap();
        let total: f64 = (0..hex.len()).map(|i| ball.seminorm(hex.edge_vec(i))).sum();
        let expected: Vec<f64> = (0..hex.len())
            .map(|i| ball.seminorm(hex.edge_vec(i)) / total)
            .collect();
        let mut counts = vec![0u64; hex.len()];
        'outer: for p in &pts {
            for (i, count) in counts.iter_mut().enumerate() {
                let e = hex.edge(i);
                let d = e.direction();
                let t = (*p - e.a).dot(d) / d.norm2();
                if (0.0..=1.0).contains(&t) && (e.a + d * t).dist(*p) < 1e-9 {
                    *count += 1;
                    continue 'outer;
                }
            }
            panic!("boundary sample off the boundary");
        }
        // chi²(5 dof) 0.999 quantile ≈ 20.52.
        assert!(chi2_ok(&counts, &expected, 20.52), "{counts:?}");
    }

    #[test]
    fn square_axis_laws_are_degenerate() {
        let k = unit_square();
        let u = Vec2::new(0.0, 1.0);
        for kind in [ChordKind::Mu, ChordKind::Nu] {
            let law = ChordLaw::new(&k, None, u, kind).unwrap();
            assert_eq!(law.survival(0.5), 1.0);
            assert_eq!(law.survival(1.0), 1.0);
            assert_eq!(law.survival_after(1.0), 0.0);
        }
        let disk = SeminormBall::unit_disk();
        let law = ChordLaw::new(&k, Some(&disk), u, ChordKind::Gamma).unwrap();
        assert_eq!(law.survival(0.7), 1.0);
        assert_eq!(law.survival(1.0), 1.0);
        assert_eq!(law.survival_after(1.0), 0.0);
        // Beyond the faces: the g_per(ru)/per branch.
        let oblique = Vec2::new(1.0, 1.0).normalized().unwrap();
        let law = ChordLaw::new(&k, Some(&disk), oblique, ChordKind::Gamma).unwrap();
        let r = 1.2;
        let expect = cov_at(&k, &Valuation::euclidean_perimeter(), oblique * r) / 4.0;
        assert!((law.survival(r) - expect).abs() < 1e-12);
    }

    #[test]
    fn analytic_survival_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let disk = SeminormBall::unit_disk();
        for _ in 0..50 {
            let k = random_convex_polygon(&mut rng, 5, 1.0);
            let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let u = Vec2::new(a.cos(), a.sin());
            for kind in [ChordKind::Mu, ChordKind::Nu, ChordKind::Gamma] {
                let law = ChordLaw::new(&k, Some(&disk), u, kind).unwrap();
                let rho = law.support_radius();
                assert_eq!(law.survival(0.0), 1.0);
                assert!(law.survival(rho * 1.0001) == 0.0);
                let mut prev = 1.0;
                for i in 0..40 {
                    let r = rho * i as f64 / 39.0;
                    let s = law.survival(r);
                    assert!(s <= prev + 1e-9, "survival must be nonincreasing");
                    prev = s;
                }
            }
        }
    }

    /// The survival of the boundary-point law drops by the atom
    /// `r_i ‖u‖_B / per_B(K)` exactly at each face length, so adjacent
    /// branches agree once the atoms are accounted for; with no face
    /// parallel to `u` the junction is literally continuous.
    #[test]
    fn gamma_branch_junctions() {
        let disk = SeminormBall::unit_disk();

        // Atomless: generic direction on a triangle.
        let t = scalene();
        let u = Vec2::new(0.31, 0.95).normalized().unwrap();
        let law = ChordLaw::new(&t, Some(&disk), u, ChordKind::Gamma).unwrap();
        assert_eq!(law.r_faces, (0.0, 0.0));
        assert!((law.survival(1e-12) - 1.0).abs() < 1e-9);
        assert!((law.survival_after(0.0) - 1.0).abs() < 1e-9);

        // Faces parallel to u on a trapezoid probed along them.
        let trap = Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(3.0, 0.0),
            Vec2::new(2.0, 1.0),
            Vec2::new(1.0, 1.0),
        ])
        .unwrap();
        let u = Vec2::new(1.0, 0.0);
        let law = ChordLaw::new(&trap, Some(&disk), u, ChordKind::Gamma).unwrap();
        let per = per_b(&disk, &trap);
        let (r1, r2) = law.r_faces;
        assert!((r1 - 1.0).abs() < 1e-12 && (r2 - 3.0).abs() < 1e-12);
        assert!(
            ((law.survival(r1) - law.survival_after(r1)) - r1 / per).abs() < 1e-9,
            "atom at r1"
        );
        assert!(
            ((law.survival(r2) - law.survival_after(r2)) - r2 / per).abs() < 1e-6,
            "atom at r2"
        );
    }

    /// vol·P(L ≥ r) for the interior-point law computed through g − r g′
    /// must match the direct slab area of the chord-length profile.
    #[test]
    fn nu_two_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(63);
        for _ in 0..20 {
            let k = random_convex_polygon(&mut rng, 5, 1.0);
            let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let u = Vec2::new(a.cos(), a.sin());
            let law = ChordLaw::new(&k, None, u, ChordKind::Nu).unwrap();
            let rho = law.support_radius();
            for i in 1..20 {
                let r = rho * i as f64 / 20.0;
                let via_derivative = law.survival(r) * k.area();
                let via_slab = law.profile.slab_area(r);
                assert!(
                    (via_derivative - via_slab).abs() < 1e-9,
                    "r={r}: {via_derivative} vs {via_slab}"
                );
            }
        }
    }

    #[test]
    fn ks_simulated_vs_analytic_small() {
        let disk = SeminormBall::unit_disk();
        let bodies = [unit_square(), scalene(), hexagon()];
        let dirs = [
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0).normalized().unwrap(),
            Vec2::new(-0.37, 0.93).normalized().unwrap(),
        ];
        let n = 20_000;
        let bound = 1.63 / (n as f64).sqrt() + 0.002;
        for (bi, k) in bodies.iter().enumerate() {
            for (di, &u) in dirs.iter().enumerate() {
                for (ki, kind) in [ChordKind::Mu, ChordKind::Nu, ChordKind::Gamma]
                    .into_iter()
                    .enumerate()
                {
                    let seed = 1000 + (bi * 16 + di * 4 + ki) as u64;
                    let ecdf = simulate_chords(k, Some(&disk), u, kind, seed, n).unwrap();
                    let law = ChordLaw::new(k, Some(&disk), u, kind).unwrap();
                    let d = ks_distance(&ecdf, &law);
                    assert!(d < bound, "body {bi} dir {di} kind {kind:?}: KS = {d}");
                }
            }
        }
    }

    #[test]
    fn seed_determinism() {
        let k = scalene();
        let disk = SeminormBall::unit_disk();
        let u = Vec2::new(0.6, 0.8);
        let a = simulate_chords(&k, Some(&disk), u, ChordKind::Gamma, 99, 5000).unwrap();
        let b = simulate_chords(&k, Some(&disk), u, ChordKind::Gamma, 99, 5000).unwrap();
        assert_eq!(a.samples(), b.samples());
        let c = simulate_chords(&k, Some(&disk), u, ChordKind::Gamma, 100, 5000).unwrap();
        assert_ne!(a.samples(), c.samples());
    }

    #[test]
    fn sigma_xz_small_run() {
        let k = unit_square();
        let disk = SeminormBall::unit_disk();
        let report = sigma_xz_density_check(&k, &disk, 1.0, 0.0, 17, 200_000, 25).unwrap();
        assert!(report.l1_error < 0.03, "l1 = {}", report.l1_error);
        // Total analytic mass is 1 up to quadrature error.
        let total: f64 = report.analytic.iter().sum();
        assert!((total - 1.0).abs() < 1e-3, "total analytic mass {total}");

        // Histogram symmetry under reflection, within noise.
        let b = report.bins;
        let mut asym: f64 = 0.0;
        for j in 0..b {
            for i in 0..b {
                let e = report.empirical[j * b + i];
                let r = report.empirical[(b - 1 - j) * b + (b - 1 - i)];
                asym += (e - r).abs();
            }
        }
        assert!(asym < 0.1, "reflection asymmetry {asym}");

        // beta2 > 0 adds the classical two-point-difference part.
        let report = sigma_xz_density_check(&k, &disk, 1.0, 1.0, 19, 200_000, 25).unwrap();
        assert!(report.l1_error < 0.03, "l1 = {}", report.l1_error);

        assert_eq!(
            sigma_xz_density_check(&k, &disk, 0.0, 1.0, 1, 10, 5).unwrap_err(),
            StochasticError::DegenerateDensity
        );
    }
}
