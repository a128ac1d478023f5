//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use duality_core::oracle::{antilinear_amplitude, wootters_concurrence};
use duality_core::projection::projected_coords;
use duality_core::sampling::{generate, Ensemble, SampleSpec, SampleStream};
use duality_core::state::{
    embed_correlated, fringe_visibility, purity, reduced_density_photon, triad, visibility, DEFAULT_FRINGE_GRID,
};
use duality_core::{
    ball_point, coords_from_state, quaternify, schmidt_decompose, stereo_project, CorrelatedState, TwoQubitState,
};
use num_complex::Complex64;

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn max_over<T>(items: &[T], f: impl Fn(&T) -> f64) -> f64 {
    // NaN must not hide behind f64::max
    items.iter().map(f).fold(0.0, |m, e| if e.is_nan() { f64::INFINITY } else { m.max(e) })
}

fn haar(n: usize, seed: u64) -> Vec<TwoQubitState> {
    generate(&SampleSpec::new(n, seed, Ensemble::Haar).unwrap()).unwrap()
}

fn identity() -> Outcome {
    let start = Instant::now();
    let states = haar(100_000, SEED);
    let err = max_over(&states, |s| (triad(s).sum_of_squares() - 1.0).abs());
    let elapsed = start.elapsed();
    outcome(
        err <= 1e-10 && elapsed < Duration::from_secs(10),
        format!("n=100000 max|V²+D²+C²−1|={err:.3e} (tol 1e-10) time={:.2}s (limit 10s)", elapsed.as_secs_f64()),
    )
}

fn dual_route() -> Outcome {
    let states: Vec<_> =
        haar(100_000, SEED + 1).into_iter().filter(|s| quaternify(s).q2.norm() >= 1e-7).collect();
    let route = max_over(&states, |s| coords_from_state(s).max_abs_diff(projected_coords(s)));
    let sphere = max_over(&states, |s| {
        let a = (coords_from_state(s).norm_sqr() - 1.0).abs();
        let b = (projected_coords(s).norm_sqr() - 1.0).abs();
        a.max(b)
    });
    outcome(
        route <= 1e-9 && sphere <= 1e-10,
        format!("n={} route={route:.3e} (tol 1e-9) |Σx²−1|={sphere:.3e} (tol 1e-10)", states.len()),
    )
}

fn concurrence_oracle() -> Outcome {
    let states = haar(100_000, SEED + 2);
    let err = max_over(&states, |s| {
        let direct = 2.0 * s.entanglement_amplitude().norm();
        (direct - wootters_concurrence(s)).abs().max((direct - antilinear_amplitude(&s.amplitudes()).norm()).abs())
    });
    outcome(err <= 1e-12, format!("n=100000 max|2|π₂| − |⟨ψ*|σy⊗σy|ψ⟩||={err:.3e} (tol 1e-12)"))
}

fn fringe() -> Outcome {
    let states = haar(10_000, SEED + 3);
    let err = max_over(&states, |s| (fringe_visibility(s, DEFAULT_FRINGE_GRID) - visibility(s)).abs());
    outcome(err <= 1e-10, format!("n=10000 max|V_fringe − V|={err:.3e} (tol 1e-10)"))
}

fn purity_relation() -> Outcome {
    let relation = |s: &TwoQubitState| {
        let t = triad(s);
        let lhs = t.visibility.powi(2) + t.distinguishability.powi(2);
        (lhs, 2.0 * purity(&reduced_density_photon(s)) - 1.0)
    };
    let states = haar(100_000, SEED + 4);
    let err = max_over(&states, |s| {
        let (l, r) = relation(s);
        (l - r).abs()
    });
    let (bl, br) = relation(&TwoQubitState::bell());
    let bell = bl.abs().max(br.abs());
    outcome(
        err <= 1e-10 && bell <= 1e-12,
        format!("n=100000 max|V²+D² − (2Trρ²−1)|={err:.3e} (tol 1e-10) bell={bell:.3e} (tol 1e-12)"),
    )
}

fn pure_circle() -> Outcome {
    let states = generate(&SampleSpec::new(1000, SEED + 5, Ensemble::Bloch).unwrap()).unwrap();
    let circle = max_over(&states, |s| {
        let t = triad(s);
        (t.visibility.powi(2) + t.distinguishability.powi(2) - 1.0).abs()
    });
    let c = max_over(&states, |s| triad(s).concurrence);
    outcome(
        circle <= 1e-12 && c <= 1e-14,
        format!("θ-grid=1000 max|V²+D²−1|={circle:.3e} (tol 1e-12) max C={c:.3e} (tol 1e-14)"),
    )
}

fn separable_plane() -> Outcome {
    let states = generate(&SampleSpec::new(10_000, SEED + 6, Ensemble::Separable).unwrap()).unwrap();
    let pi2 = max_over(&states, |s| s.entanglement_amplitude().norm());
    // ∞ counts as a failure: product states must land on a finite Q
    let plane = max_over(&states, |s| stereo_project(&quaternify(s)).finite().map_or(f64::INFINITY, |q| q.z2.norm()));
    outcome(
        pi2 <= 1e-12 && plane <= 1e-12,
        format!("n=10000 max|π₂|={pi2:.3e} (tol 1e-12) max|Q_e2,e3|={plane:.3e} (tol 1e-12, Q finite)"),
    )
}

fn shells() -> Outcome {
    let mut worst = 0.0f64;
    let mut origin = 0.0f64;
    for (k, c) in [0.0, 0.3, 0.6, 0.9, 1.0].into_iter().enumerate() {
        let spec = SampleSpec::new(1000, SEED + 7 + k as u64, Ensemble::FixedConcurrence(c)).unwrap();
        let states = generate(&spec).unwrap();
        let want = (1.0 - c * c).sqrt();
        worst = worst.max(max_over(&states, |s| (ball_point(s).radius - want).abs()));
        if c == 1.0 {
            origin = max_over(&states, |s| ball_point(s).radius);
        }
    }
    outcome(
        worst <= 1e-10 && origin <= 1e-10,
        format!("C∈{{0,0.3,0.6,0.9,1}}×1000 max|r−√(1−C²)|={worst:.3e} (tol 1e-10) C=1 max r={origin:.3e}"),
    )
}

// States with (α₀, α₁) ⊥ (α₂, α₃), so π₁ = 0.
fn coherence_free(i: u64) -> TwoQubitState {
    let mut rng = SampleStream::new(SEED + 12, i);
    let [u0, u1] = rng.unit_vector::<2>();
    let [w0, w1] = rng.unit_vector::<2>();
    let (a, b) = (w0.norm(), w1.norm());
    let ph = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.uniform());
    TwoQubitState::new([u0 * a, u1 * a, -u1.conj() * b * ph, u0.conj() * b * ph], Default::default()).unwrap()
}

fn schmidt_bridge() -> Outcome {
    let states = haar(10_000, SEED + 8);
    let cerr = max_over(&states, |s| {
        let f = schmidt_decompose(s);
        (triad(s).concurrence - 2.0 * f.lambda1 * f.lambda2).abs()
    });
    let flat: Vec<_> = (0..10_000).map(coherence_free).filter(|s| visibility(s) <= 1e-12).collect();
    let lerr = max_over(&flat, |s| {
        let f = schmidt_decompose(s);
        let sp = quaternify(s);
        let (a, b) = (sp.q1.norm(), sp.q2.norm());
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        (f.lambda1 - hi).abs().max((f.lambda2 - lo).abs())
    });
    outcome(
        cerr <= 1e-12 && lerr <= 1e-12 && !flat.is_empty(),
        format!(
            "n=10000 max|C−2λ₁λ₂|={cerr:.3e} (tol 1e-12) V=0 states={} max|{{λ}}−{{|q₁|,|q₂|}}|={lerr:.3e} (tol 1e-12)",
            flat.len()
        ),
    )
}

fn embedding() -> Outcome {
    let mut rho_err = 0.0f64;
    let mut c_err = 0.0f64;
    for d in [2usize, 3, 5] {
        for i in 0..1000u64 {
            let mut rng = SampleStream::new(SEED + 9 + d as u64, i);
            let [mu, nu] = rng.unit_vector::<2>();
            let mut vec = || {
                let v: Vec<Complex64> = (0..d).map(|_| rng.complex_normal()).collect();
                let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v.into_iter().map(|z| z / n).collect::<Vec<_>>()
            };
            let (chi1, chi2) = (vec(), vec());
            let c = CorrelatedState::new(mu, nu, chi1, chi2).unwrap();
            let direct = c.reduced_density_photon();
            let emb = embed_correlated(&c);
            let via = reduced_density_photon(&emb.state);
            let (de, ve) = (direct.entries(), via.entries());
            for r in 0..2 {
                for k in 0..2 {
                    rho_err = rho_err.max((de[r][k] - ve[r][k]).norm());
                }
            }
            let cc = triad(&emb.state).concurrence;
            c_err = c_err.max((cc * cc - 2.0 * (1.0 - purity(&direct))).abs());
        }
    }
    outcome(
        rho_err <= 1e-12 && c_err <= 1e-10,
        format!("d∈{{2,3,5}}×1000 max|Δρ|={rho_err:.3e} (tol 1e-12) max|C²−2(1−Trρ²)|={c_err:.3e} (tol 1e-10)"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, extra: &[&str]| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_duality"))
            .args(["sample", "--seed", "42", "--count", "1000", "--out"])
            .arg(&path)
            .args(extra)
            .status()
            .expect("run duality");
        assert!(status.success());
        std::fs::read(&path).unwrap()
    };
    let a = run("a.csv", &[]);
    let b = run("b.csv", &[]);
    let serial = run("c.csv", &["--serial"]);
    let single = {
        let path = dir.path().join("d.csv");
        let status = Command::new(env!("CARGO_BIN_EXE_duality"))
            .env("RAYON_NUM_THREADS", "1")
            .args(["sample", "--seed", "42", "--count", "1000", "--out"])
            .arg(&path)
            .status()
            .expect("run duality");
        assert!(status.success());
        std::fs::read(&path).unwrap()
    };
    let rows = a.iter().filter(|&&c| c == b'\n').count();
    outcome(
        a == b && a == serial && a == single && rows == 1001,
        format!(
            "bytes={} rows={} repeat={} serial={} one-thread={}",
            a.len(),
            rows,
            a == b,
            a == serial,
            a == single
        ),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("duality-entanglement identity", identity),
        ("dual-route geometry", dual_route),
        ("concurrence oracle", concurrence_oracle),
        ("fringe/visibility equivalence", fringe),
        ("purity relation", purity_relation),
        ("pure-state circle", pure_circle),
        ("separable-plane mapping", separable_plane),
        ("shell geometry", shells),
        ("schmidt bridge", schmidt_bridge),
        ("embedding fidelity", embedding),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2}. {:<30} {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, name, o.detail);
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
