//! The verification suite: each check pins one of the structural
//! identities or pipelines to an explicit tolerance and reports a single
//! pass/fail line. The `check` command of the CLI and the acceptance test
//! target both run these.

use crate::counterexample::{
    build_equal_width_pair, dk_decomposition_check, prism_surface_cov, prismatoid_width_cov,
    Interval,
};
use crate::covariogram::{cov_at, integral_identity_check, radial_derivative, width_core};
use crate::determination::{recover_scale, symmetry_test_and_reconstruct};
use crate::geom::{
    difference_body, hausdorff_distance, random_convex_polygon, Overlap, Polygon, Vec2,
};
use crate::stochastic::{
    sigma_xz_density_check, simulate_chords, ks_distance, ChordKind, ChordLaw,
};
use crate::valuation::{SeminormBall, Valuation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} {} ({:.2}s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.details
        )
    }
}

fn outcome(name: &'static str, start: Instant, pass: bool, details: String) -> CheckOutcome {
    CheckOutcome {
        name,
        pass,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn unit_square() -> Polygon {
    Polygon::rect(0.0, 0.0, 1.0, 1.0).unwrap()
}

fn mixed_phi() -> Valuation {
    Valuation::new(SeminormBall::unit_disk(), 1.0, 1.0).unwrap()
}

/// Closed-form covariograms of the unit square on a 201×201 grid:
/// volume, Euclidean perimeter and vertical width against their explicit
/// piecewise formulas, each within 1e-12, in under 5 seconds.
pub fn closed_form_covariograms() -> CheckOutcome {
    let start = Instant::now();
    let k = unit_square();
    let vol = Valuation::volume();
    let per = Valuation::euclidean_perimeter();
    let wid = Valuation::width(Vec2::new(0.0, 1.0));
    let mut worst = [0.0f64; 3];
    for i in 0..=200 {
        for j in 0..=200 {
            let x = (i as f64 - 100.0) / 100.0;
            let y = (j as f64 - 100.0) / 100.0;
            let p = Vec2::new(x, y);
            let on_dk = x.abs() <= 1.0 && y.abs() <= 1.0;
            let g_vol = (1.0 - x.abs()).max(0.0) * (1.0 - y.abs()).max(0.0);
            worst[0] = worst[0].max((cov_at(&k, &vol, p) - g_vol).abs());
            if on_dk {
                let g_per = 2.0 * (2.0 - x.abs() - y.abs()).max(0.0);
                worst[1] = worst[1].max((cov_at(&k, &per, p) - g_per).abs());
                let g_w = (1.0 - y.abs()).max(0.0);
                worst[2] = worst[2].max((cov_at(&k, &wid, p) - g_w).abs());
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst.iter().all(|&w| w < 1e-12) && elapsed < 5.0;
    outcome(
        "closed-form covariograms (square, 201x201)",
        start,
        pass,
        format!(
            "max errors: vol {:.2e}, per {:.2e}, width {:.2e}; {:.2}s",
            worst[0], worst[1], worst[2], elapsed
        ),
    )
}

/// Grid integral of the covariogram against
/// `vol(K)(2 per_B(K) + alpha vol(K))` at step `diam(DK)/400`, within
/// 0.5% relative for 5 random polygons and 3 valuation families, in under
/// 60 seconds.
pub fn integral_identity(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1dc0ffee);
    let phis = [
        Valuation::volume(),
        Valuation::euclidean_perimeter(),
        mixed_phi(),
    ];
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let k = random_convex_polygon(&mut rng, 5, 1.0);
        let step = difference_body(&k).diameter() / 400.0;
        for phi in &phis {
            let (num, ana) = integral_identity_check(&k, phi, step);
            worst = worst.max((num - ana).abs() / ana.abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst < 5e-3 && elapsed < 60.0;
    outcome(
        "integral identity (5 polygons x 3 valuations)",
        start,
        pass,
        format!("worst relative error {:.2e}; {:.2}s", worst, elapsed),
    )
}

/// Analytic radial derivative against the backward finite difference
/// (h = 1e-5) within `1e-4 (1 + |value|)`, at 100 random interior points
/// per valuation family.
pub fn derivative_witness(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x2b5948d3);
    let families: [(&str, Valuation); 4] = [
        ("vol", Valuation::volume()),
        ("per", Valuation::euclidean_perimeter()),
        (
            "strip",
            Valuation::perimeter(SeminormBall::strip(Vec2::new(0.28, 0.96), 1.0).unwrap()),
        ),
        ("mixed", mixed_phi()),
    ];
    let h = 1e-5;
    let mut worst = 0.0f64;
    let mut fails = 0usize;
    for (_, phi) in &families {
        let mut done = 0;
        while done < 100 {
            let k = random_convex_polygon(&mut rng, 5, 1.0);
            let dk = difference_body(&k);
            let x = Vec2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            if dk.signed_distance(x) > -1e-2 || x.norm() < 1e-2 {
                continue;
            }
            let analytic = radial_derivative(&k, phi, x).unwrap();
            let fd = (cov_at(&k, phi, x * (1.0 - h)) - cov_at(&k, phi, x)) / h;
            let err = (analytic - fd).abs() / (1.0 + analytic.abs());
            worst = worst.max(err);
            if err >= 1e-4 {
                fails += 1;
            }
            done += 1;
        }
    }
    let pass = fails == 0;
    outcome(
        "radial derivative witness (400 probes)",
        start,
        pass,
        format!("worst scaled error {:.2e}, violations {}", worst, fails),
    )
}

/// The width-covariogram value identity classifies grid points exactly as
/// membership in the core, away from a 1e-6 collar around its boundary.
pub fn core_criterion(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3355aa11);
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    for _ in 0..5 {
        let k = random_convex_polygon(&mut rng, 5, 1.0);
        let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let z = Vec2::new(a.cos(), a.sin());
        let Overlap::Polygon(core) = width_core(&k, z) else {
            continue;
        };
        let dk = difference_body(&k);
        let (lo, hi) = dk.bbox();
        let mut local = 0usize;
        let mut i = 0u64;
        while local < 1000 {
            i += 1;
            let x = Vec2::new(
                lo.x + (hi.x - lo.x) * crate::checks::halton(i, 2),
                lo.y + (hi.y - lo.y) * crate::checks::halton(i, 3),
            );
            if !dk.contains(x, 0.0) || core.signed_distance(x).abs() < 1e-6 {
                continue;
            }
            local += 1;
            checked += 1;
            let member = core.contains(x, 0.0);
            if member != crate::covariogram::core_criterion_check(&k, z, x) {
                mismatches += 1;
            }
        }
    }
    let pass = mismatches == 0 && checked >= 5000;
    outcome(
        "width-core value criterion (5 polygons x 1000 points)",
        start,
        pass,
        format!("{} points, {} mismatches", checked, mismatches),
    )
}

pub(crate) fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// Symmetry pipeline: centrally symmetric test bodies are detected and
/// reconstructed within Hausdorff 1e-6 up to translation; the triangle is
/// rejected with the exact Brunn-Minkowski volume gap 1.5.
pub fn symmetry_pipeline() -> CheckOutcome {
    let start = Instant::now();
    let phi = mixed_phi();
    let tri = Polygon::new(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap();
    let bodies = [
        unit_square(),
        Polygon::regular(6, 1.0).unwrap(),
        difference_body(&tri).scale(0.5).translate(Vec2::new(3.0, -1.0)),
    ];
    let mut ok = true;
    let mut details = String::new();
    for (i, body) in bodies.iter().enumerate() {
        let dk = difference_body(body);
        let verdict =
            symmetry_test_and_reconstruct(|x| cov_at(body, &phi, x), &phi, &dk).unwrap();
        let rec_ok = verdict.symmetric
            && verdict.reconstructed.as_ref().is_some_and(|rec| {
                let a = rec.translate(-rec.centroid());
                let b = body.translate(-body.centroid());
                hausdorff_distance(&a, &b) < 1e-6
            });
        ok &= rec_ok;
        details.push_str(&format!("body{}: {} ", i, if rec_ok { "ok" } else { "BAD" }));
    }
    let verdict =
        symmetry_test_and_reconstruct(|x| cov_at(&tri, &phi, x), &phi, &difference_body(&tri))
            .unwrap();
    let ratio = verdict.vol_half_support / verdict.vol_body;
    let tri_ok = !verdict.symmetric && (ratio - 1.5).abs() < 1e-9;
    ok &= tri_ok;
    details.push_str(&format!("triangle ratio {:.12}", ratio));
    outcome("central-symmetry test and reconstruction", start, ok, details)
}

/// Scale recovery round trip on the unit square with the mixed valuation
/// (hand instance p = 4, v = 1, c = 9/5): every beta in
/// {1e-3, 1, 3.7, 1e3} comes back within 1e-5 relative.
pub fn scale_recovery() -> CheckOutcome {
    let start = Instant::now();
    let k = unit_square();
    let phi = mixed_phi();
    let support = difference_body(&k);
    let mut worst = 0.0f64;
    let mut c_seen = 0.0;
    for beta in [1e-3, 1.0, 3.7, 1e3] {
        match recover_scale(|x| beta * cov_at(&k, &phi, x), &support, &phi) {
            Ok(rec) => {
                worst = worst.max((rec.beta - beta).abs() / beta);
                c_seen = rec.integral_ratio;
            }
            Err(e) => {
                return outcome(
                    "scale recovery round trip",
                    start,
                    false,
                    format!("recovery failed: {e}"),
                )
            }
        }
    }
    let pass = worst < 1e-5 && (c_seen - 1.8).abs() < 1e-4;
    outcome(
        "scale recovery round trip (beta in {1e-3,1,3.7,1e3})",
        start,
        pass,
        format!("worst relative error {:.2e}, c = {:.6}", worst, c_seen),
    )
}

/// Reflecting the polygonal factor of a prism leaves the surface-area
/// covariogram unchanged, to 1e-12 at 100 random probes for three
/// non-symmetric cross sections.
pub fn prism_reflection(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77aa55cc);
    let i = Interval::new(0.0, 1.0);
    let bodies = [
        Polygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.3, 0.2), Vec2::new(0.3, 0.9)]).unwrap(),
        Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.1),
            Vec2::new(1.2, 0.8),
            Vec2::new(0.2, 0.6),
        ])
        .unwrap(),
        Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.9, -0.2),
            Vec2::new(1.4, 0.5),
            Vec2::new(0.8, 1.0),
            Vec2::new(0.1, 0.7),
        ])
        .unwrap(),
    ];
    let mut worst = 0.0f64;
    for h in &bodies {
        let hneg = h.negate();
        for _ in 0..100 {
            let x = rng.random_range(-1.2..1.2);
            let y = Vec2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            worst = worst
                .max((prism_surface_cov(&i, h, x, y) - prism_surface_cov(&i, &hneg, x, y)).abs());
        }
    }
    let pass = worst < 1e-12;
    outcome(
        "prism surface-area reflection equality (300 probes)",
        start,
        pass,
        format!("worst |difference| {:.2e}", worst),
    )
}

/// The prismatoid pair: equal width covariograms at 200 probes, the
/// closed form `w(K,z) − |⟨z,x⟩|` against bisection on the difference
/// body, exact origin symmetry of one body, non-congruence of the other,
/// and the slice decomposition of the difference body; under 120 seconds.
pub fn prismatoid_pair(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0badf00d);
    let (sym, asym) = build_equal_width_pair();
    let mut worst_eq = 0.0f64;
    let mut worst_cf = 0.0f64;
    for _ in 0..200 {
        let s = rng.random_range(-2.0..2.0);
        let slice = sym.dk_height_slice(s).expect("height inside DK");
        let (lo, hi) = slice.bbox();
        let v = loop {
            let v = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            if slice.contains(v, -1e-9) {
                break v;
            }
        };
        let ga = prismatoid_width_cov(&sym, v, s);
        let gb = prismatoid_width_cov(&asym, v, s);
        worst_eq = worst_eq.max((ga - gb).abs());
        worst_cf = worst_cf.max((ga - (2.0 - s.abs())).abs());
        worst_cf = worst_cf.max((gb - (2.0 - s.abs())).abs());
    }
    let sym_ok = sym.is_origin_symmetric(0.0);
    let not_translate = !sym.upper.is_translate_of(&asym.upper, 1e-6)
        && hausdorff_distance(
            &sym.upper.translate(-sym.upper.centroid()),
            &asym.upper.translate(-asym.upper.centroid()),
        ) > 0.05;
    let decomposition = dk_decomposition_check(&sym, 12).unwrap_or(false)
        && dk_decomposition_check(&asym, 12).unwrap_or(false);
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst_eq < 1e-6
        && worst_cf < 1e-6
        && sym_ok
        && not_translate
        && decomposition
        && elapsed < 120.0;
    outcome(
        "width prismatoid pair (200 probes)",
        start,
        pass,
        format!(
            "equality {:.2e}, closed form {:.2e}, symmetric {}, distinct {}, decomposition {}; {:.2}s",
            worst_eq, worst_cf, sym_ok, not_translate, decomposition, elapsed
        ),
    )
}

/// Kolmogorov-Smirnov distances between simulated and analytic chord laws
/// at n = 1e5 stay below `1.63/sqrt(n) + 0.002` for all three selection
/// rules, three bodies and four directions.
pub fn chord_laws(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let disk = SeminormBall::unit_disk();
    let bodies = [
        unit_square(),
        Polygon::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.4, 0.1), Vec2::new(0.4, 1.0)]).unwrap(),
        Polygon::regular(6, 1.0).unwrap(),
    ];
    let dirs = [
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
        Vec2::new(1.0, 1.0).normalized().unwrap(),
        Vec2::new(-0.37, 0.93).normalized().unwrap(),
    ];
    let n = 100_000;
    let bound = 1.63 / (n as f64).sqrt() + 0.002;
    let mut worst = 0.0f64;
    let mut fails = 0usize;
    for (bi, k) in bodies.iter().enumerate() {
        for (di, &u) in dirs.iter().enumerate() {
            for (ki, kind) in [ChordKind::Mu, ChordKind::Nu, ChordKind::Gamma]
                .into_iter()
                .enumerate()
            {
                let run_seed = seed
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add((bi * 16 + di * 4 + ki) as u64);
                let ecdf = simulate_chords(k, Some(&disk), u, kind, run_seed, n).unwrap();
                let law = ChordLaw::new(k, Some(&disk), u, kind).unwrap();
                let d = ks_distance(&ecdf, &law);
                worst = worst.max(d);
                if d >= bound {
                    fails += 1;
                }
            }
        }
    }
    let pass = fails == 0;
    outcome(
        "chord laws, KS at n = 1e5 (36 runs)",
        start,
        pass,
        format!("worst KS {:.4} (bound {:.4}), violations {}", worst, bound, fails),
    )
}

/// Total-variation distance between the binned law of `Σ(X−Z)` and the
/// scaled covariogram density, below 0.02 at n = 1e6 on a 50×50 grid for
/// the boundary-only and the mixed-density cases.
pub fn sigma_density(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let k = unit_square();
    let disk = SeminormBall::unit_disk();
    let mut details = String::new();
    let mut pass = true;
    for (b1, b2) in [(1.0, 0.0), (1.0, 1.0)] {
        let report = sigma_xz_density_check(&k, &disk, b1, b2, seed ^ 0x51f15eed, 1_000_000, 50)
            .expect("valid density parameters");
        pass &= report.l1_error < 0.02;
        details.push_str(&format!("beta=({b1},{b2}): {:.4} ", report.l1_error));
    }
    outcome(
        "boundary-interior difference density (n = 1e6, 50x50)",
        start,
        pass,
        details + "(bound 0.02)",
    )
}

/// Discrete midpoint concavity of the perimeter covariogram and of the
/// square root of the volume covariogram, slack at least -1e-9 over 1e4
/// random midpoint triples on each of 5 bodies.
pub fn concavity(seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4444dddd);
    let per = Valuation::euclidean_perimeter();
    let vol = Valuation::volume();
    let mut worst = f64::INFINITY;
    for _ in 0..5 {
        let k = random_convex_polygon(&mut rng, 5, 1.0);
        let dk = difference_body(&k);
        let (lo, hi) = dk.bbox();
        let sample = |rng: &mut ChaCha8Rng| loop {
            let x = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            if dk.contains(x, 0.0) {
                return x;
            }
        };
        for _ in 0..10_000 {
            let x = sample(&mut rng);
            let y = sample(&mut rng);
            let m = (x + y) * 0.5;
            let slack_per =
                cov_at(&k, &per, m) - 0.5 * (cov_at(&k, &per, x) + cov_at(&k, &per, y));
            let slack_vol = cov_at(&k, &vol, m).sqrt()
                - 0.5 * (cov_at(&k, &vol, x).sqrt() + cov_at(&k, &vol, y).sqrt());
            worst = worst.min(slack_per).min(slack_vol);
        }
    }
    let pass = worst >= -1e-9;
    outcome(
        "midpoint concavity (5 bodies x 1e4 triples)",
        start,
        pass,
        format!("worst slack {:.2e}", worst),
    )
}

/// Run every check with sub-seeds derived from `seed`.
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    vec![
        closed_form_covariograms(),
        integral_identity(seed),
        derivative_witness(seed),
        core_criterion(seed),
        symmetry_pipeline(),
        scale_recovery(),
        prism_reflection(seed),
        prismatoid_pair(seed),
        chord_laws(seed),
        sigma_density(seed),
        concavity(seed),
    ]
}
