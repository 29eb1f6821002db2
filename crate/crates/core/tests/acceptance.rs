//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p lagrange-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lagrange_core::bounds::{
    ball_optimum, bound_report, h_table, theta_cube_lower, theta_upper, BodyTag, THETA_UPPER_MAX,
};
use lagrange_core::constructions::{
    catalog, hadamard_norm_bound_check, maxvol_simplex_cube, regular_simplex_in_ball, MaxVolMode,
};
use lagrange_core::evolume::{e_volume_mc, EnGamma};
use lagrange_core::geometry::{Body, Point, Simplex};
use lagrange_core::hadamard::hadamard;
use lagrange_core::legendre::{chi, chi_inv};
use lagrange_core::optimizer::exhaustive_cube_vertex_search;
use lagrange_core::projector::{absorption, sandwich_check, Projector};

const TOL: f64 = 1e-9;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            ok,
            detail: detail.into(),
        }
    }
}

/// Collects failure notes; an empty list means the criterion passed.
#[derive(Default)]
struct Notes(Vec<String>);

impl Notes {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn finish(self, summary: String, elapsed: Duration, limit: Option<Duration>) -> Outcome {
        let mut failures = self.0;
        if let Some(l) = limit {
            if elapsed > l {
                failures.push(format!("runtime {elapsed:.2?} exceeds {l:?}"));
            }
        }
        let detail = if failures.is_empty() {
            format!("{summary} [{elapsed:.2?}]")
        } else {
            format!("{summary} [{elapsed:.2?}]; {}", failures.join("; "))
        };
        Outcome::new(failures.is_empty(), detail)
    }
}

fn cube_norm(s: &Simplex<f64>) -> f64 {
    Projector::new(s.clone())
        .unwrap()
        .norm_over_cube()
        .unwrap()
        .value
}

fn legendre_identity() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    let mut worst_z = 0f64;
    for n in 1..=4usize {
        for gamma in [1.0, 1.5, 2.0, 3.0] {
            let e = EnGamma::new(n, gamma).unwrap();
            let exact = chi(n as u32, gamma) / (1..=n).product::<usize>() as f64;
            let mc = e_volume_mc(&e, 1_000_000, 0).unwrap();
            let z = (mc.estimate - exact).abs() / mc.std_error;
            worst_z = worst_z.max(z);
            notes.check(z <= 3.0, || {
                format!(
                    "n={n} gamma={gamma}: mc {} vs {exact} ({z:.2} SE)",
                    mc.estimate
                )
            });
        }
    }
    for (n, expected) in [(1, 2.0), (2, 11.0 / 4.0), (3, 17.0 / 6.0)] {
        let v: f64 = EnGamma::new(n, 2.0).unwrap().volume_exact();
        notes.check((v - expected).abs() <= 1e-12, || {
            format!("mes_{n}(E_{n},2) = {v}, want {expected}")
        });
    }
    notes.finish(
        format!("16 MC cells, worst |z| = {worst_z:.2}"),
        start.elapsed(),
        Some(Duration::from_secs(30)),
    )
}

fn exact_cube_optima() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    let targets = [
        ("golden_triangle", 2.0 * 5f64.sqrt() / 5.0 + 1.0),
        ("S_prime_3", 2.0),
        ("S_doubleprime_3", 2.0),
        ("hadamard_7", 2.5),
    ];
    for (name, want) in targets {
        let got = cube_norm(&catalog(name).unwrap());
        notes.check((got - want).abs() <= TOL, || {
            format!("{name}: {got} vs {want}")
        });
    }
    let ex = exhaustive_cube_vertex_search(3).unwrap();
    notes.check((ex.norm - 2.0).abs() <= TOL, || {
        format!("exhaustive n=3: {}", ex.norm)
    });
    notes.finish(
        "catalog norms and exhaustive n=3".into(),
        start.elapsed(),
        Some(Duration::from_secs(10)),
    )
}

fn absorption_values() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    for (name, n, want) in [
        ("golden_triangle", 2, 3.0 * 5f64.sqrt() / 5.0 + 1.0),
        ("S_prime_3", 3, 3.0),
        ("hadamard_7", 7, 7.0),
    ] {
        let xi = absorption(&Body::cube(n).unwrap(), &catalog(name).unwrap())
            .unwrap()
            .xi;
        notes.check((xi - want).abs() <= TOL, || {
            format!("xi(Q_{n}; {name}) = {xi}, want {want}")
        });
    }
    for n in 1..=10 {
        let s = regular_simplex_in_ball(n, &Point::origin(n), 1.0).unwrap();
        let xi = absorption(&Body::unit_ball(n).unwrap(), &s).unwrap().xi;
        notes.check((xi - n as f64).abs() <= TOL, || {
            format!("xi(B_{n}; regular) = {xi}")
        });
    }
    notes.finish(
        "cube catalog and ball n <= 10".into(),
        start.elapsed(),
        None,
    )
}

fn random_simplex_in_cube(n: usize, rng: &mut ChaCha8Rng) -> Simplex<f64> {
    loop {
        let rows: Vec<Vec<f64>> = (0..=n)
            .map(|_| (0..n).map(|_| rng.random::<f64>()).collect())
            .collect();
        if let Ok(s) = Simplex::from_rows(rows) {
            if Projector::new(s.clone()).is_ok() {
                return s;
            }
        }
    }
}

fn sandwich() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    let mut count = 0;
    for n in 2..=6 {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let cube = Body::cube(n).unwrap();
        for i in 0..100 {
            let s = random_simplex_in_cube(n, &mut rng);
            let norm = cube_norm(&s);
            let xi = absorption(&cube, &s).unwrap().xi;
            count += 1;
            notes.check(sandwich_check(norm, xi, n), || {
                format!("n={n} #{i}: norm {norm}, xi {xi}")
            });
        }
    }
    let violations = notes.0.len();
    notes.finish(
        format!("{count} simplices, {violations} violations"),
        start.elapsed(),
        None,
    )
}

fn ball_theory() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    for n in 1..=25 {
        let p = ball_optimum(n).unwrap().p;
        let s = regular_simplex_in_ball(n, &Point::origin(n), 1.0).unwrap();
        let norm = Projector::new(s)
            .unwrap()
            .norm_over_ball(&Point::origin(n), 1.0)
            .unwrap()
            .value;
        notes.check((p - norm).abs() <= TOL, || {
            format!("n={n}: p = {p}, ball norm = {norm}")
        });
    }
    for n in 1..=200 {
        let p = ball_optimum(n).unwrap().p;
        let nf = n as f64;
        notes.check(nf.sqrt() <= p + TOL && p <= (nf + 1.0).sqrt() + TOL, || {
            format!("n={n}: p = {p}")
        });
    }
    let printed = [
        (1, 1),
        (2, 1),
        (3, 1),
        (4, 1),
        (5, 2),
        (6, 2),
        (7, 3),
        (8, 3),
        (9, 3),
        (10, 4),
        (11, 4),
        (12, 5),
        (13, 5),
        (14, 6),
        (15, 6),
        (50, 22),
        (100, 45),
        (1000, 485),
    ];
    for (n, k) in printed {
        let got = ball_optimum(n).unwrap().k;
        notes.check(got == k, || format!("k_{n} = {got}, printed {k}"));
    }
    notes.finish(
        "p_n vs ball norm n <= 25, sqrt bracket n <= 200, 18 k_n".into(),
        start.elapsed(),
        None,
    )
}

fn tables() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    for n in 1..=THETA_UPPER_MAX {
        let lo = theta_cube_lower(n);
        let up = theta_upper(n).unwrap().entry.sup();
        notes.check(lo <= up + TOL, || format!("n={n}: lower {lo} > upper {up}"));
    }
    for n in 1..=5 {
        let d = maxvol_simplex_cube(n, MaxVolMode::Exhaustive, 0)
            .unwrap()
            .determinant;
        notes.check(d as i64 == h_table(n).unwrap(), || {
            format!("exhaustive n={n}: {d}")
        });
    }
    let mut hits = Vec::new();
    for n in 6..=12 {
        let r = maxvol_simplex_cube(n, MaxVolMode::Heuristic { restarts: 50 }, 0).unwrap();
        let h = h_table(n).unwrap() as u64;
        hits.push(r.trace.iter().filter(|&&d| d == h).count());
        notes.check(r.determinant == h, || {
            format!("heuristic n={n}: {} < {h}", r.determinant)
        });
    }
    notes.finish(
        format!("heuristic restarts hitting h_n for n = 6..12: {hits:?}"),
        start.elapsed(),
        None,
    )
}

fn hadamard_checks() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    for m in [1, 2, 4, 8, 12, 16, 20, 24, 28] {
        let h = hadamard(m).unwrap();
        let g = h.gram();
        let ok = (0..m).all(|i| (0..m).all(|j| g[i][j] == if i == j { m as i64 } else { 0 }));
        notes.check(ok, || format!("H H^T != {m} I for order {m}"));
    }
    let mut norms = Vec::new();
    for n in [1, 3, 7, 11, 15, 19, 23, 27] {
        let c = hadamard_norm_bound_check(n).unwrap();
        norms.push(format!("{n}:{:.4}", c.norm));
        notes.check(c.norm <= ((n + 1) as f64).sqrt() + TOL, || {
            format!("n={n}: norm {} > {}", c.norm, c.bound)
        });
    }
    notes.finish(format!("norms {}", norms.join(" ")), start.elapsed(), None)
}

fn bound_consistency() -> Outcome {
    let start = Instant::now();
    let mut notes = Notes::default();
    for n in 1..=50 {
        for tag in [BodyTag::Cube, BodyTag::Ball] {
            let r = bound_report(tag, n).unwrap();
            notes.check(r.is_consistent(), || {
                format!(
                    "{tag:?} n={n}: max lower {} > min upper {}",
                    r.max_lower(),
                    r.min_upper()
                )
            });
        }
    }
    let mut worst = 0f64;
    for n in 1..=50u32 {
        for e in 0..=24 {
            let s = 10f64.powf(e as f64 / 2.0);
            let t = chi_inv(n, s).unwrap();
            let rel = ((chi(n, t) - s) / s).abs();
            worst = worst.max(rel);
            notes.check(rel < 1e-9, || {
                format!("chi_inv round trip n={n} s={s}: rel {rel:e}")
            });
        }
    }
    notes.finish(
        format!("n <= 50 both bodies; worst round trip {worst:.1e}"),
        start.elapsed(),
        None,
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("legendre identity", legendre_identity),
        ("exact cube optima", exact_cube_optima),
        ("absorption values", absorption_values),
        ("sandwich inequality", sandwich),
        ("ball theory", ball_theory),
        ("tables", tables),
        ("hadamard", hadamard_checks),
        ("bound consistency", bound_consistency),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} {}. {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
