//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use monoid_holes::diophantine::minimal_inhomogeneous_solutions;
use monoid_holes::holes::SemigroupProblem;
use monoid_holes::linalg::{IntMatrix, IntVector};
use monoid_holes::monomial::{standard_pairs, Monomial, MonomialIdeal};
use monoid_holes::saturation::{certify_infinite, hole_bound, saturation_points};
use monoid_holes::transport::verify_vlach;
use monoid_holes::Limits;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tempfile::TempDir;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn v(xs: &[i64]) -> IntVector {
    IntVector::from_i64s(xs)
}

fn quartic() -> IntMatrix {
    IntMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[0, 2, 3, 4]])
}

const QUARTIC_FILE: &str = "2 4\n1 1 1 1\n0 2 3 4\n";

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().expect("temporary directory"),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).expect("write input file");
        path
    }
}

struct Run {
    stdout: String,
    code: i32,
}

fn cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_monoid-holes"))
        .args(args)
        .env_remove("MONOID_HOLES_LIMITS")
        .env_remove("RUST_LOG")
        .output()
        .expect("spawn monoid-holes");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 report"),
        code: out.status.code().unwrap_or(-1),
    }
}

fn path_arg(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

/// Indented items following `key: count`.
fn section(report: &str, key: &str) -> Vec<String> {
    let prefix = format!("{key}: ");
    let mut lines = report.lines().skip_while(|l| !l.starts_with(&prefix));
    let Some(header) = lines.next() else { return Vec::new() };
    let count: usize = header[prefix.len()..].parse().unwrap_or(0);
    lines.take(count).map(|l| l.trim().to_string()).collect()
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        Ok(String::new())
    } else {
        Err(format!("took {:.2}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()))
    }
}

fn criterion_1() -> Outcome {
    let ws = Workspace::new();
    let path = ws.file("quartic.mat", QUARTIC_FILE);
    let run = cli(&["fundamental", path_arg(&path)]);
    ensure!(run.code == 10, "exit code {}, expected 10", run.code);
    let basis: BTreeSet<String> = section(&run.stdout, "hilbert_basis").into_iter().collect();
    let expected: BTreeSet<String> = ["1 0", "1 1", "1 2", "1 3", "1 4"].iter().map(|s| s.to_string()).collect();
    ensure!(basis == expected, "hilbert basis {basis:?}");
    Ok("B = {(1,0),(1,1),(1,2),(1,3),(1,4)}".into())
}

fn criterion_2() -> Outcome {
    let sols = minimal_inhomogeneous_solutions(&quartic(), &v(&[1, 1]), &Limits::default()).map_err(|e| e.to_string())?;
    let got: BTreeSet<IntVector> = sols.stacked().into_iter().collect();
    let expected: BTreeSet<IntVector> = [
        [0, 0, 0, 2, 0, 0, 3, 0],
        [0, 1, 0, 0, 1, 0, 1, 0],
        [0, 0, 1, 0, 1, 0, 0, 1],
        [0, 0, 1, 0, 0, 2, 0, 0],
        [0, 0, 0, 1, 0, 1, 1, 0],
    ]
    .iter()
    .map(|x| v(x))
    .collect();
    ensure!(got == expected, "solutions {got:?}");
    Ok("5 minimal (lambda, mu) solutions".into())
}

fn criterion_3() -> Outcome {
    let err = |e: monoid_holes::Error| e.to_string();
    let p = SemigroupProblem::new(quartic(), Limits::default()).map_err(err)?;
    let f = p.fundamental_holes().map_err(err)?;
    ensure!(f.holes == vec![v(&[1, 1])], "F = {:?}", f.holes);

    let ideal = p.hole_ideal(&v(&[1, 1])).map_err(err)?;
    let expected = MonomialIdeal::new(4, (1..4).map(|i| Monomial::var(4, i))).map_err(err)?;
    ensure!(ideal == expected, "hole ideal {ideal}");

    let rep = p.holes_representation().map_err(err)?;
    ensure!(rep.cells.len() == 1, "{} cells", rep.cells.len());
    let cell = &rep.cells[0];
    ensure!(
        cell.shift == v(&[1, 1]) && cell.generators == vec![v(&[1, 0])],
        "cell {} + <{:?}>",
        cell.shift,
        cell.generators
    );

    let sat = saturation_points(&p).map_err(err)?;
    ensure!(sat.points == vec![v(&[1, 2]), v(&[1, 3]), v(&[1, 4])], "saturation points {:?}", sat.points);

    let b = hole_bound(p.matrix(), p.limits()).map_err(err)?;
    ensure!(
        (b.d_plus_1, b.m_f.clone(), b.d_a.clone(), b.bound.clone())
            == (3, BigInt::from(9), BigInt::from(4), BigInt::from(972)),
        "bound {b:?}"
    );
    let z = certify_infinite(&p, &rep, &b).map_err(err)?.ok_or("no certificate")?;
    ensure!(z[0] > BigInt::from(972), "certificate {z}");
    ensure!(p.is_hole(&z).map_err(err)?, "certificate {z} is not a hole");
    Ok(format!("F = {{(1,1)}}, I = {ideal}, bound 972, certificate {z}"))
}

/// Exact data for the numerical semigroup generated by coprime `a < b`.
struct Numerical {
    a: i64,
    b: i64,
    gaps: BTreeSet<i64>,
    fundamental: BTreeSet<i64>,
    saturation_minimal: BTreeSet<i64>,
}

impl Numerical {
    fn brute_force(a: i64, b: i64) -> Self {
        let top = a * b;
        let member = |x: i64| x >= 0 && (0..=x / a).any(|i| (x - i * a) % b == 0);
        let gaps: BTreeSet<i64> = (0..=top).filter(|&x| !member(x)).collect();
        let fundamental = gaps
            .iter()
            .copied()
            .filter(|&g| !gaps.iter().any(|&h| h < g && member(g - h)))
            .collect();
        // s + k in Q for all k >= 0 iff s exceeds every gap.
        let conductor = gaps.iter().next_back().map_or(0, |g| g + 1);
        let saturated: Vec<i64> = (conductor..=conductor + top).collect();
        let saturation_minimal = saturated
            .iter()
            .copied()
            .filter(|&s| !saturated.iter().any(|&t| t < s && member(s - t)))
            .collect();
        Numerical {
            a,
            b,
            gaps,
            fundamental,
            saturation_minimal,
        }
    }

    fn problem(&self) -> SemigroupProblem {
        SemigroupProblem::new(IntMatrix::from_i64_rows(&[&[self.a, self.b]]), Limits::default())
            .expect("numerical semigroup is pointed")
    }
}

fn coprime_pairs() -> Vec<(i64, i64)> {
    let gcd = |mut x: i64, mut y: i64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    (2..=12)
        .flat_map(|a| (a + 1..=12).map(move |b| (a, b)))
        .filter(|&(a, b)| gcd(a, b) == 1)
        .collect()
}

fn scalars(vs: &[IntVector]) -> BTreeSet<i64> {
    vs.iter().map(|x| i64::try_from(&x[0]).expect("small hole")).collect()
}

fn criterion_4() -> Outcome {
    let pairs = coprime_pairs();
    let mut mismatches = Vec::new();
    for &(a, b) in &pairs {
        let oracle = Numerical::brute_force(a, b);
        let p = oracle.problem();
        let rep = p.holes_representation().map_err(|e| e.to_string())?;
        match rep.finite_holes() {
            Some(h) if scalars(&h) == oracle.gaps => {}
            other => mismatches.push(format!("({a},{b}) holes {other:?}")),
        }
        let f = p.fundamental_holes().map_err(|e| e.to_string())?;
        if scalars(&f.holes) != oracle.fundamental {
            mismatches.push(format!("({a},{b}) F {:?}", scalars(&f.holes)));
        }
        let sat = saturation_points(&p).map_err(|e| e.to_string())?;
        if scalars(&sat.points) != oracle.saturation_minimal || !sat.filtered_out.is_empty() {
            mismatches.push(format!("({a},{b}) saturation {:?}", scalars(&sat.points)));
        }
    }
    ensure!(mismatches.is_empty(), "{} mismatches: {}", mismatches.len(), mismatches.join(", "));
    Ok(format!("{} coprime pairs, zero mismatches", pairs.len()))
}

fn criterion_5() -> Outcome {
    let r = verify_vlach(&Limits::default()).map_err(|e| e.to_string())?;
    let halves = r.z_star.entries().iter().filter(|x| x.to_string() == "1/2").count();
    let zeros = r.z_star.entries().iter().filter(|x| x.to_string() == "0").count();
    ensure!(halves == 24 && zeros == 48, "z* has {halves} halves and {zeros} zeros");
    ensure!(r.support_rank == 24, "support rank {}", r.support_rank);
    ensure!(
        r.off_support_maxima.len() == 48 && r.off_support_maxima.iter().all(|(_, m)| m.to_string() == "0"),
        "off-support maxima {:?}",
        r.off_support_maxima
    );
    let witnesses = r.non_hole_witnesses.iter().filter(|(_, w)| w.is_some()).count();
    ensure!(witnesses == 48, "{witnesses} of 48 incremented systems have witnesses");
    ensure!(r.conclusions.all(), "conclusions {:?}: {:?}", r.conclusions, r.diagnostics);
    Ok("z* = 24 halves + 48 zeros, unique, 48 witnesses, H in f+Q = f + monoid(A')".into())
}

fn random_ideal(rng: &mut StdRng, n: usize) -> MonomialIdeal {
    let count = rng.gen_range(0..=6);
    let gens = (0..count).map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=5)).collect()));
    MonomialIdeal::new(n, gens).expect("valid ideal")
}

fn box_points(n: usize, bound: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u64; n];
    loop {
        out.push(Monomial::new(e.clone()));
        let Some(i) = (0..n).find(|&i| e[i] < bound) else { break };
        e[i] += 1;
        e[..i].iter_mut().for_each(|x| *x = 0);
    }
    out
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let limits = Limits::default();
    let mut failures = Vec::new();
    for trial in 0..200 {
        let n = rng.gen_range(1..=5);
        let ideal = random_ideal(&mut rng, n);
        let other = random_ideal(&mut rng, n);
        let pairs = standard_pairs(&ideal, &limits).map_err(|e| e.to_string())?;
        let meet = ideal.intersect(&other).map_err(|e| e.to_string())?;
        for m in box_points(n, 6) {
            let hits = pairs.iter().filter(|p| p.contains(&m)).count();
            let inside = ideal.contains(&m);
            if hits != usize::from(!inside) {
                failures.push(format!("trial {trial}: {m} covered {hits} times in {ideal}"));
                break;
            }
            if meet.contains(&m) != (inside && other.contains(&m)) {
                failures.push(format!("trial {trial}: {m} in {ideal} and {other}"));
                break;
            }
        }
    }
    ensure!(failures.is_empty(), "{} failures: {}", failures.len(), failures.join("; "));
    Ok("200 random ideals, pairs partition the box complement, intersections agree".into())
}

fn criterion_7() -> Outcome {
    let mut holes = 0usize;
    let mut largest = BigInt::from(0);
    for (a, b) in coprime_pairs() {
        let p = Numerical::brute_force(a, b).problem();
        let bound = hole_bound(p.matrix(), p.limits()).map_err(|e| e.to_string())?;
        let rep = p.holes_representation().map_err(|e| e.to_string())?;
        let all = rep.finite_holes().ok_or(format!("({a},{b}) has infinitely many holes"))?;
        for h in &all {
            ensure!(h.norm_inf() <= bound.bound, "({a},{b}): hole {h} exceeds {}", bound.bound);
            largest = largest.max(h.norm_inf());
        }
        holes += all.len();
    }
    Ok(format!("{holes} holes checked, largest norm {largest}"))
}

fn criterion_8() -> Outcome {
    let ws = Workspace::new();
    let quartic = ws.file("quartic.mat", QUARTIC_FILE);
    let gaps = ws.file("gaps.mat", "1 2\n3 5\n");
    let normal = ws.file("normal.mat", "2 2\n1 0\n0 1\n");
    let margins = ws.file("margins.txt", "2 2\n1 1\n1 1\n\n2 2\n1 1\n1 1\n\n2 2\n1 1\n1 1\n");
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for m in [&quartic, &gaps, &normal] {
        for cmd in ["fundamental", "holes", "saturation", "bound"] {
            invocations.push(vec![cmd.into(), path_arg(m).into()]);
        }
    }
    invocations.push(vec!["member".into(), path_arg(&quartic).into(), "1".into(), "1".into()]);
    invocations.push(vec!["member".into(), path_arg(&gaps).into(), "7".into()]);
    invocations.push(vec!["transport".into(), "--dims".into(), "2".into(), "2".into(), "2".into()]);
    invocations.push(vec!["transport".into(), "--margins".into(), path_arg(&margins).into()]);
    invocations.push(vec!["transport".into(), "--vlach".into()]);

    for args in &invocations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = cli(&args);
        ensure!(first.code == 0 || first.code == 10, "{args:?} exited with {}", first.code);
        let second = cli(&args);
        ensure!(first.stdout == second.stdout && first.code == second.code, "{args:?} differs on re-run");
        let mut parallel = vec!["--jobs", "4"];
        parallel.extend(&args);
        let third = cli(&parallel);
        ensure!(first.stdout == third.stdout, "{args:?} differs with --jobs 4");
    }
    Ok(format!("{} invocations byte-identical across re-runs and --jobs 4", invocations.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "quartic curve Hilbert basis", limit: secs(1), run: criterion_1 },
        Criterion { id: 2, name: "quartic curve minimal solutions", limit: secs(1), run: criterion_2 },
        Criterion { id: 3, name: "quartic curve end to end", limit: secs(5), run: criterion_3 },
        Criterion { id: 4, name: "numerical semigroup oracles", limit: secs(30), run: criterion_4 },
        Criterion { id: 5, name: "Vlach 3x4x6 certificate", limit: secs(600), run: criterion_5 },
        Criterion { id: 6, name: "monomial ideal properties", limit: secs(30), run: criterion_6 },
        Criterion { id: 7, name: "hole norm bound", limit: None, run: criterion_7 },
        Criterion { id: 8, name: "determinism", limit: None, run: criterion_8 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| match c.limit {
            Some(limit) => within(elapsed, limit).map(|_| detail),
            None => Ok(detail),
        });
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!(
            "{tag} criterion {}: {} [{:.2}s] {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
