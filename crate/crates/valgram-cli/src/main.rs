//! `valgram` — covariogram experiments on convex polygons from the
//! command line. Every stochastic subcommand requires an explicit seed and
//! all numeric output carries 17 significant digits, so identical
//! invocations produce byte-identical files.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use valgram::checks;
use valgram::counterexample::{
    build_equal_width_pair, dk_decomposition_check, prism_surface_cov, prismatoid_width_cov,
    Interval, Prismatoid,
};
use valgram::covariogram::{cov_at, cov_grid, radial_derivative, width_core};
use valgram::determination::{recover_scale, symmetry_test_and_reconstruct};
use valgram::geom::{difference_body, Overlap, Polygon, Vec2};
use valgram::stochastic::{
    ks_distance, sigma_xz_density_check, simulate_chords, ChordKind, ChordLaw,
};
use valgram::valuation::{SeminormBall, Valuation};

#[derive(Parser)]
#[command(
    name = "valgram",
    version,
    about = "Covariograms of convex polygons under perimeter+volume valuations",
    after_help = "Set VALGRAM_THREADS to cap the data-parallel worker count."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChordKindArg {
    Mu,
    Nu,
    Gamma,
}

impl From<ChordKindArg> for ChordKind {
    fn from(k: ChordKindArg) -> ChordKind {
        match k {
            ChordKindArg::Mu => ChordKind::Mu,
            ChordKindArg::Nu => ChordKind::Nu,
            ChordKindArg::Gamma => ChordKind::Gamma,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CounterexampleKind {
    /// Prism with a reflected cross section: equal surface-area covariograms.
    Product,
    /// Prismatoid with equal face difference sets: closed-form width covariogram.
    Prismatoid,
    /// The centrally-symmetric / asymmetric prismatoid pair with equal width covariograms.
    Theorem15,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a covariogram on a grid and write CSV plus a JSON sidecar.
    Covgrid {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the analytic radial derivative with a backward difference.
    Radial {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        /// Probe point "x,y"; omit to probe randomly.
        #[arg(long)]
        x: Option<String>,
        /// Seed for random probes.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random probes when no explicit point is given.
        #[arg(long, default_value_t = 32)]
        count: usize,
        /// Backward difference step.
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the width core and scan the value criterion against membership.
    Core {
        #[arg(long)]
        polygon: PathBuf,
        /// Width direction "x,y".
        #[arg(long)]
        z: String,
        /// Number of scan points.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Central-symmetry test from the covariogram of a hidden body.
    Symtest {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        /// Optional unknown scale applied to the covariogram first.
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a scale factor from a scaled covariogram.
    Recoverbeta {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a nondetermination example and verify its equalities.
    Counterexample {
        #[arg(value_enum)]
        which: CounterexampleKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        probes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a random-chord law and compare with the analytic survival.
    Chords {
        #[arg(value_enum)]
        kind: ChordKindArg,
        #[arg(long)]
        polygon: PathBuf,
        /// Seminorm ball JSON (required for gamma).
        #[arg(long)]
        ball: Option<PathBuf>,
        /// Chord direction "x,y".
        #[arg(long)]
        u: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        /// Output prefix; writes <out>.ecdf.csv and <out>.analytic.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample the signed boundary-interior difference and compare its
    /// histogram with the covariogram density.
    Sigmaxz {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long)]
        ball: PathBuf,
        #[arg(long)]
        beta1: f64,
        #[arg(long)]
        beta2: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        bins: usize,
        /// Output prefix; writes <out>.empirical.csv and <out>.analytic.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the full verification suite; nonzero exit on any failure.
    Check {
        #[arg(long)]
        seed: u64,
    },
}

fn read_polygon(path: &Path) -> Result<Polygon> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading polygon file {}", path.display()))?;
    Polygon::from_json(&text).with_context(|| format!("parsing polygon {}", path.display()))
}

fn read_valuation(path: &Path) -> Result<Valuation> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading valuation file {}", path.display()))?;
    Valuation::from_json(&text).with_context(|| format!("parsing valuation {}", path.display()))
}

fn read_ball(path: &Path) -> Result<SeminormBall> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading ball file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing ball {}", path.display()))
}

fn parse_vec2(s: &str) -> Result<Vec2> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        bail!("expected \"x,y\", got {s:?}");
    }
    Ok(Vec2::new(parts[0].trim().parse()?, parts[1].trim().parse()?))
}

fn emit(out: Option<&Path>, json: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(json)?;
    match out {
        Some(path) => fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn overlap_json(o: &Overlap) -> serde_json::Value {
    match o {
        Overlap::Polygon(p) => serde_json::json!({ "polygon": p }),
        Overlap::Degenerate(s) => serde_json::json!({ "segment": s }),
        Overlap::Empty => serde_json::json!({ "empty": true }),
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("VALGRAM_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Covgrid {
            polygon,
            valuation,
            step,
            out,
        } => {
            if step <= 0.0 {
                bail!("--step must be positive");
            }
            let k = read_polygon(&polygon)?;
            let phi = read_valuation(&valuation)?;
            let grid = cov_grid(&k, &phi, step);
            let mut csv = Vec::new();
            grid.write_csv(&mut csv)?;
            fs::write(&out, csv).with_context(|| format!("writing {}", out.display()))?;
            let sidecar = out.with_extension(match out.extension() {
                Some(e) => format!("{}.json", e.to_string_lossy()),
                None => "json".to_string(),
            });
            fs::write(&sidecar, serde_json::to_string_pretty(&grid.meta())? + "\n")?;
            eprintln!(
                "wrote {} ({}x{} nodes) and {}",
                out.display(),
                grid.nx,
                grid.ny,
                sidecar.display()
            );
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Radial {
            polygon,
            valuation,
            x,
            seed,
            count,
            h,
            out,
        } => {
            let k = read_polygon(&polygon)?;
            let phi = read_valuation(&valuation)?;
            let dk = difference_body(&k);
            let probes: Vec<Vec2> = match x {
                Some(s) => vec![parse_vec2(&s)?],
                None => {
                    use rand::{Rng, SeedableRng};
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    let (lo, hi) = dk.bbox();
                    let mut pts = Vec::new();
                    while pts.len() < count {
                        let p = Vec2::new(
                            rng.random_range(lo.x..hi.x),
                            rng.random_range(lo.y..hi.y),
                        );
                        if dk.signed_distance(p) < -1e-2 && p.norm() > 1e-2 {
                            pts.push(p);
                        }
                    }
                    pts
                }
            };
            let mut rows = Vec::new();
            let mut pass = true;
            for p in probes {
                let analytic = radial_derivative(&k, &phi, p)
                    .map_err(|e| anyhow::anyhow!("at {p:?}: {e}"))?;
                let fd = (cov_at(&k, &phi, p * (1.0 - h)) - cov_at(&k, &phi, p)) / h;
                let err = (analytic - fd).abs();
                let ok = err < 1e-4 * (1.0 + analytic.abs());
                pass &= ok;
                rows.push(serde_json::json!({
                    "x": p, "analytic": analytic, "finite_difference": fd,
                    "abs_error": err, "pass": ok,
                }));
            }
            emit(
                out.as_deref(),
                &serde_json::json!({ "h": h, "probes": rows, "pass": pass }),
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Cmd::Core { polygon, z, grid, out } => {
            let k = read_polygon(&polygon)?;
            let z = parse_vec2(&z)?
                .normalized()
                .context("--z must be a nonzero vector")?;
            let core = width_core(&k, z);
            let dk = difference_body(&k);
            let (lo, hi) = dk.bbox();
            let mut checked = 0usize;
            let mut mismatches = 0usize;
            if let Overlap::Polygon(core_poly) = &core {
                let mut i = 0u64;
                while checked < grid && i < 100 * grid as u64 {
                    i += 1;
                    let x = Vec2::new(
                        lo.x + (hi.x - lo.x) * halton(i, 2),
                        lo.y + (hi.y - lo.y) * halton(i, 3),
                    );
                    if !dk.contains(x, 0.0) || core_poly.signed_distance(x).abs() < 1e-6 {
                        continue;
                    }
                    checked += 1;
                    let member = core_poly.contains(x, 0.0);
                    if member != valgram::covariogram::core_criterion_check(&k, z, x) {
                        mismatches += 1;
                    }
                }
            }
            let pass = mismatches == 0;
            emit(
                out.as_deref(),
                &serde_json::json!({
                    "z": z,
                    "core": overlap_json(&core),
                    "criterion_scan": { "points": checked, "mismatches": mismatches },
                    "pass": pass,
                }),
            )?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Cmd::Symtest {
            polygon,
            valuation,
            beta,
            out,
        } => {
            if beta <= 0.0 {
                bail!("--beta must be positive");
            }
            let k = read_polygon(&polygon)?;
            let phi = read_valuation(&valuation)?;
            let dk = difference_body(&k);
            // The pipeline sees only the scaled covariogram and its
            // support: normalize via scale recovery, then test symmetry.
            let scaled = |x: Vec2| beta * cov_at(&k, &phi, x);
            let rec = recover_scale(scaled, &dk, &phi)?;
            let verdict =
                symmetry_test_and_reconstruct(|x| scaled(x) / rec.beta, &phi, &dk)?;
            let mut json = serde_json::to_value(&verdict)?;
            json["beta"] = serde_json::json!(rec.beta);
            emit(out.as_deref(), &json)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Recoverbeta {
            polygon,
            valuation,
            beta,
            out,
        } => {
            if beta <= 0.0 {
                bail!("--beta must be positive");
            }
            let k = read_polygon(&polygon)?;
            let phi = read_valuation(&valuation)?;
            let dk = difference_body(&k);
            let rec = recover_scale(|x| beta * cov_at(&k, &phi, x), &dk, &phi)?;
            let rel = (rec.beta - beta).abs() / beta;
            emit(
                out.as_deref(),
                &serde_json::json!({
                    "beta_true": beta,
                    "beta": rec.beta,
                    "relative_error": rel,
                    "volume": rec.volume,
                    "integral_ratio": rec.integral_ratio,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Counterexample {
            which,
            seed,
            probes,
            out,
        } => {
            let (json, pass) = match which {
                CounterexampleKind::Product => product_example(seed, probes),
                CounterexampleKind::Prismatoid => prismatoid_example(seed, probes),
                CounterexampleKind::Theorem15 => equal_width_pair_example(seed, probes),
            };
            emit(out.as_deref(), &json)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Cmd::Chords {
            kind,
            polygon,
            ball,
            u,
            seed,
            n,
            out,
        } => {
            let k = read_polygon(&polygon)?;
            let ball = ball.as_deref().map(read_ball).transpose()?;
            let u = parse_vec2(&u)?
                .normalized()
                .context("--u must be a nonzero vector")?;
            let kind: ChordKind = kind.into();
            let ecdf = simulate_chords(&k, ball.as_ref(), u, kind, seed, n)?;
            let law = ChordLaw::new(&k, ball.as_ref(), u, kind)?;
            let d = ks_distance(&ecdf, &law);

            let ecdf_path = suffixed(&out, "ecdf.csv");
            let mut buf = Vec::new();
            ecdf.write_csv(&mut buf)?;
            fs::write(&ecdf_path, buf)?;

            let ana_path = suffixed(&out, "analytic.csv");
            let mut buf = Vec::new();
            writeln!(buf, "r,survival")?;
            let rho = law.support_radius();
            for i in 0..=400 {
                let r = rho * i as f64 / 400.0;
                writeln!(buf, "{:.16e},{:.16e}", r, law.survival(r))?;
            }
            fs::write(&ana_path, buf)?;

            let bound = 1.63 / (n as f64).sqrt() + 0.002;
            let pass = d < bound;
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "ks_distance": d,
                    "bound": bound,
                    "n": n,
                    "pass": pass,
                    "ecdf_csv": ecdf_path,
                    "analytic_csv": ana_path,
                }))?
            );
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Cmd::Sigmaxz {
            polygon,
            ball,
            beta1,
            beta2,
            seed,
            n,
            bins,
            out,
        } => {
            let k = read_polygon(&polygon)?;
            let ball = read_ball(&ball)?;
            let report = sigma_xz_density_check(&k, &ball, beta1, beta2, seed, n, bins)?;
            let emp_path = suffixed(&out, "empirical.csv");
            let mut buf = Vec::new();
            report.write_csv(&mut buf, &report.empirical)?;
            fs::write(&emp_path, buf)?;
            let ana_path = suffixed(&out, "analytic.csv");
            let mut buf = Vec::new();
            report.write_csv(&mut buf, &report.analytic)?;
            fs::write(&ana_path, buf)?;
            let pass = report.l1_error < 0.02;
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "l1_error": report.l1_error,
                    "bound": 0.02,
                    "n": n,
                    "bins": bins,
                    "pass": pass,
                    "empirical_csv": emp_path,
                    "analytic_csv": ana_path,
                }))?
            );
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Cmd::Check { seed } => {
            let outcomes = checks::run_all(seed);
            let mut all = true;
            for o in &outcomes {
                println!("{}", o.line());
                all &= o.pass;
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

fn product_example(seed: u64, probes: usize) -> (serde_json::Value, bool) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let i = Interval::new(0.0, 1.0);
    let h = Polygon::new(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(1.3, 0.2),
        Vec2::new(0.3, 0.9),
    ])
    .unwrap();
    let hneg = h.negate();
    let mut worst = 0.0f64;
    for _ in 0..probes {
        let x = rng.random_range(-1.2..1.2);
        let y = Vec2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        worst =
            worst.max((prism_surface_cov(&i, &h, x, y) - prism_surface_cov(&i, &hneg, x, y)).abs());
    }
    let pass = worst < 1e-12;
    (
        serde_json::json!({
            "construction": {
                "interval": i,
                "cross_section": h,
                "reflected_cross_section": hneg,
            },
            "verification": {
                "probes": probes,
                "max_abs_difference": worst,
                "equal_covariograms": pass,
            },
        }),
        pass,
    )
}

fn prismatoid_example(seed: u64, probes: usize) -> (serde_json::Value, bool) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let f = Polygon::new(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.1),
        Vec2::new(1.2, 0.8),
        Vec2::new(0.2, 0.6),
    ])
    .unwrap();
    let g = f.negate().translate(Vec2::new(0.3, 0.2));
    let kp = Prismatoid::new(f, g);
    let mut worst = 0.0f64;
    for _ in 0..probes {
        let s = rng.random_range(-2.0..2.0);
        let slice = kp.dk_height_slice(s).expect("inside the height range");
        let (lo, hi) = slice.bbox();
        let v = loop {
            let v = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            if slice.contains(v, -1e-9) {
                break v;
            }
        };
        worst = worst.max((prismatoid_width_cov(&kp, v, s) - (2.0 - s.abs())).abs());
    }
    let decomposition = dk_decomposition_check(&kp, 12).unwrap_or(false);
    let pass = worst < 1e-6 && decomposition;
    (
        serde_json::json!({
            "construction": { "F": kp.upper, "G": kp.lower },
            "verification": {
                "probes": probes,
                "max_closed_form_error": worst,
                "dk_decomposition": decomposition,
            },
        }),
        pass,
    )
}

fn equal_width_pair_example(seed: u64, probes: usize) -> (serde_json::Value, bool) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (sym, asym) = build_equal_width_pair();
    let mut worst = 0.0f64;
    for _ in 0..probes {
        let s = rng.random_range(-2.0..2.0);
        let slice = sym.dk_height_slice(s).expect("inside the height range");
        let (lo, hi) = slice.bbox();
        let v = loop {
            let v = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
            if slice.contains(v, -1e-9) {
                break v;
            }
        };
        worst =
            worst.max((prismatoid_width_cov(&sym, v, s) - prismatoid_width_cov(&asym, v, s)).abs());
    }
    let symmetric = sym.is_origin_symmetric(0.0);
    let distinct = !sym.upper.is_translate_of(&asym.upper, 1e-6);
    let pass = worst < 1e-6 && symmetric && distinct;
    (
        serde_json::json!({
            "symmetric_body": { "F": sym.upper, "G": sym.lower },
            "asymmetric_body": { "F": asym.upper, "G": asym.lower },
            "verification": {
                "probes": probes,
                "max_abs_difference": worst,
                "equal_covariograms": worst < 1e-6,
                "first_body_origin_symmetric": symmetric,
                "bodies_not_translates": distinct,
            },
        }),
        pass,
    )
}
