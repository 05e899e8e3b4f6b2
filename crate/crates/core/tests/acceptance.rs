//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines are always shown.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dhurwitz::chambers::{adjacent_chamber, sample_chamber, walls, ChamberWitness, Wall};
use dhurwitz::exact::{rational_from_int, MultiPoly};
use dhurwitz::hurwitz::{all_profiles, frobenius_connected, oracle_count, RamificationProfile};
use dhurwitz::identities::verify_identities;
use dhurwitz::piecewise::{
    degree_bound, fit_chamber, matching_conventions, product_formula_terms, product_formula_wc,
    wall_crossing, ChamberPolynomial, ProductConvention, WallCrossing,
};

const P: [i64; 5] = [7, 1, -2, -3, -3];
const Q: [i64; 5] = [9, 4, -5, -5, -3];

const N4_WITNESSES: [[i64; 4]; 3] = [[3, 1, -2, -2], [2, 3, -1, -4], [1, 2, -4, 1]];
const N5_WITNESSES: [[i64; 5]; 3] = [P, Q, [11, 2, -3, 5, -15]];

/// Candidates tried per wall when looking for a neighbouring chamber.
const ADJACENCY_BUDGET: usize = 20_000;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn profile(x: &[i64]) -> RamificationProfile {
    RamificationProfile::new(x.to_vec()).unwrap()
}

fn witness(x: &[i64]) -> ChamberWitness {
    ChamberWitness::from_entries(x.to_vec()).unwrap()
}

fn wall_2_5() -> Wall {
    Wall::new(5, &[2, 5]).unwrap().0
}

fn x1_times(indices: &[usize]) -> MultiPoly {
    let six = rational_from_int(6);
    (&MultiPoly::var(5, 1) * &MultiPoly::linear_form(5, indices)).scale(&six)
}

fn criterion_1() -> Outcome {
    let (p, q) = (witness(&P), witness(&Q));
    let diff = p.signature().differing_walls(q.signature());
    ensure!(diff == [wall_2_5()], "P and Q differ at {diff:?}");
    for (x, want) in [(P, 294), (Q, 540)] {
        let o = oracle_count(&profile(&x), 0).map_err(|e| e.to_string())?;
        let f = frobenius_connected(&profile(&x), 0).map_err(|e| e.to_string())?;
        ensure!(
            o.value == rational_from_int(want),
            "oracle {x:?} = {}",
            o.value
        );
        ensure!(
            f.value == rational_from_int(want),
            "frobenius {x:?} = {}",
            f.value
        );
    }
    Ok("H0(P) = 294, H0(Q) = 540 by both evaluators".into())
}

fn criterion_2() -> Outcome {
    let c1 = fit_chamber(&witness(&P), 0, 5).map_err(|e| e.to_string())?;
    let c2 = fit_chamber(&witness(&Q), 0, 5).map_err(|e| e.to_string())?;
    let wc = wall_crossing(&c1, &c2, &wall_2_5()).map_err(|e| e.to_string())?;
    let six_x1_sq = MultiPoly::var(5, 1).pow(2).scale(&rational_from_int(6));
    ensure!(c1.polynomial == six_x1_sq, "P chamber: {}", c1.polynomial);
    ensure!(
        c2.polynomial == x1_times(&[1, 2, 5]),
        "Q chamber: {}",
        c2.polynomial
    );
    ensure!(wc.polynomial == x1_times(&[2, 5]), "WC: {}", wc.polynomial);
    ensure!(
        wc.polynomial.display_form() == "6*x1*x2 + 6*x1*x5",
        "WC display: {}",
        wc.polynomial.display_form()
    );
    Ok(format!(
        "{} | {} | WC {}",
        c1.polynomial.display_form(),
        c2.polynomial.display_form(),
        wc.polynomial.display_form()
    ))
}

/// Genus-0 fits at the matrix witnesses plus the crossings of every wall
/// for which a neighbouring chamber turns up.
struct Matrix {
    fits: Vec<ChamberPolynomial>,
    crossings: Vec<WallCrossing>,
}

fn genus_zero_matrix() -> Result<Matrix, String> {
    let mut fits = Vec::new();
    let mut crossings = Vec::new();
    let witnesses: Vec<Vec<i64>> = N4_WITNESSES
        .iter()
        .map(|w| w.to_vec())
        .chain(N5_WITNESSES.iter().map(|w| w.to_vec()))
        .collect();
    for x in &witnesses {
        let w = witness(x);
        let base = fit_chamber(&w, 0, 3).map_err(|e| format!("{x:?}: {e}"))?;
        for wall in walls(x.len()) {
            let Ok(adj) = adjacent_chamber(&w, &wall, ADJACENCY_BUDGET) else {
                continue;
            };
            let other = fit_chamber(&adj, 0, 3).map_err(|e| format!("{adj:?}: {e}"))?;
            crossings.push(wall_crossing(&base, &other, &wall).map_err(|e| e.to_string())?);
            fits.push(other);
        }
        fits.push(base);
    }
    Ok(Matrix { fits, crossings })
}

fn criterion_3(matrix: &Matrix) -> Outcome {
    for n in [4, 5] {
        let mut sigs: Vec<String> = N4_WITNESSES
            .iter()
            .map(|w| w.to_vec())
            .chain(N5_WITNESSES.iter().map(|w| w.to_vec()))
            .filter(|w| w.len() == n)
            .map(|w| witness(&w).signature().to_string())
            .collect();
        sigs.sort();
        sigs.dedup();
        ensure!(
            sigs.len() >= 3,
            "only {} distinct chambers for n = {n}",
            sigs.len()
        );
    }
    for f in &matrix.fits {
        let bound = degree_bound(0, f.n());
        let deg = f.polynomial.total_degree().unwrap_or(0);
        ensure!(
            deg <= bound,
            "{}: degree {deg} > {bound}",
            f.witness.point()
        );
    }
    let g1 = fit_chamber(&witness(&[1, -1]), 1, 5).map_err(|e| e.to_string())?;
    ensure!(
        g1.polynomial.total_degree() == Some(3) && degree_bound(1, 2) == 3,
        "g = 1, n = 2 fit has degree {:?}",
        g1.polynomial.total_degree()
    );
    ensure!(
        g1.validation.len() >= 2,
        "only {} held-out points",
        g1.validation.len()
    );
    for v in &g1.validation {
        let fitted = g1
            .polynomial
            .eval(v.point.entries())
            .map_err(|e| e.to_string())?;
        ensure!(
            fitted == v.value,
            "held-out {}: {fitted} != {}",
            v.point,
            v.value
        );
    }
    Ok(format!(
        "{} genus-0 fits within bound; g=1,n=2 fit {} has degree 3",
        matrix.fits.len(),
        g1.polynomial
    ))
}

/// Labeled zero-sum vectors enumerated directly.
fn grid() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let vals: Vec<i64> = (-4..=4).filter(|&v| v != 0).collect();
    for n in 2..=4u32 {
        for idx in 0..vals.len().pow(n) {
            let mut k = idx;
            let x: Vec<i64> = (0..n)
                .map(|_| {
                    let v = vals[k % vals.len()];
                    k /= vals.len();
                    v
                })
                .collect();
            let pos: i64 = x.iter().filter(|&&v| v > 0).sum();
            if x.iter().sum::<i64>() == 0 && pos <= 4 {
                out.push(x);
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let grid = grid();
    ensure!(
        grid.len() == all_profiles(4, 4).len(),
        "grid has {} profiles, library enumerates {}",
        grid.len(),
        all_profiles(4, 4).len()
    );
    let mut cases = 0;
    for x in &grid {
        for g in 0..=1 {
            let p = profile(x);
            let o = oracle_count(&p, g).map_err(|e| format!("{x:?}: {e}"))?;
            let f = frobenius_connected(&p, g).map_err(|e| format!("{x:?}: {e}"))?;
            ensure!(
                o.value == f.value,
                "{x:?} g = {g}: oracle {} frobenius {}",
                o.value,
                f.value
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} profiles agree exactly"))
}

fn criterion_5() -> Outcome {
    let report = verify_identities(30).map_err(|e| e.to_string())?;
    for c in &report.checks {
        ensure!(c.failures.is_empty(), "{}: {:?}", c.name, c.failures);
    }
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    ensure!(
        names.contains(&"alternating_sum") && names.contains(&"beta_integral"),
        "missing checks: {names:?}"
    );
    Ok(format!(
        "{} cases per identity, 0 failures",
        report.checks[0].cases
    ))
}

fn criterion_6() -> Outcome {
    let wall = wall_2_5();
    let q = witness(&Q);
    let c1 = fit_chamber(&witness(&P), 0, 5).map_err(|e| e.to_string())?;
    let c2 = fit_chamber(&q, 0, 5).map_err(|e| e.to_string())?;
    let wc = wall_crossing(&c1, &c2, &wall).map_err(|e| e.to_string())?;
    let at_q = wc.polynomial.eval(&Q).map_err(|e| e.to_string())?;
    ensure!(at_q == rational_from_int(54), "WC(Q) = {at_q}");
    let terms = product_formula_terms(&wall, q.point()).map_err(|e| e.to_string())?;
    let matching = matching_conventions(&terms, &at_q);
    ensure!(
        matching == [ProductConvention::RESOLVED],
        "conventions matching 54: {matching:?}"
    );
    let points = sample_chamber(&q, 12, 1_000_000).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for pt in points.iter().filter(|p| p.entries() != Q) {
        let want = wc
            .polynomial
            .eval(pt.entries())
            .map_err(|e| e.to_string())?;
        let got = product_formula_wc(&wall, pt, ProductConvention::RESOLVED)
            .map_err(|e| e.to_string())?;
        ensure!(got == want, "at {pt}: product formula {got}, WC {want}");
        checked += 1;
    }
    ensure!(checked >= 5, "only {checked} extra points");
    Ok(format!(
        "unique convention {} gives 54 at Q; holds at {checked} more points",
        ProductConvention::RESOLVED
    ))
}

fn criterion_7(matrix: &Matrix) -> Outcome {
    for f in &matrix.fits {
        let n = f.n() as u32;
        ensure!(
            f.polynomial.is_homogeneous() && f.polynomial.total_degree() == Some(n - 3),
            "{}: {} is not homogeneous of degree {}",
            f.witness.point(),
            f.polynomial,
            n - 3
        );
    }
    let mut per_n = [0usize; 6];
    for wc in &matrix.crossings {
        ensure!(
            wc.quotient_by_wall_form().is_some(),
            "WC across {} from {} is not divisible: {}",
            wc.wall,
            wc.from.point(),
            wc.polynomial
        );
        per_n[wc.wall.n()] += 1;
    }
    ensure!(
        per_n[4] >= 3 && per_n[5] >= 3,
        "too few crossings: {per_n:?}"
    );
    Ok(format!(
        "{} fits homogeneous; {} crossings (n=4: {}, n=5: {}) divisible by their wall forms",
        matrix.fits.len(),
        matrix.crossings.len(),
        per_n[4],
        per_n[5]
    ))
}

fn criterion_8() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dhurwitz::cli::run(["dhurwitz", "selftest", "--json"], &mut out, &mut err);
    let report: serde_json::Value =
        serde_json::from_slice(&out).map_err(|e| format!("selftest output: {e}"))?;
    ensure!(
        code == 0,
        "selftest exit {code}: {}",
        String::from_utf8_lossy(&err)
    );
    let checks = report["checks"].as_array().ok_or("no checks")?;
    for name in [
        "relabeling_symmetry",
        "integrality_nonnegativity",
        "character_orthogonality",
        "interpolation_round_trip",
    ] {
        let c = checks
            .iter()
            .find(|c| c["name"] == name)
            .ok_or_else(|| format!("selftest lacks {name}"))?;
        ensure!(c["passed"] == true, "{name} failed: {c}");
    }
    Ok(format!("{} selftest checks green", checks.len()))
}

fn main() -> ExitCode {
    let mut matrix = None;
    let mut all_ok = true;
    let mut record =
        |id: u32, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
            let start = Instant::now();
            let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
            let elapsed = start.elapsed();
            let res = match (res, limit) {
                (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
                (r, _) => r,
            };
            let (status, detail) = match &res {
                Ok(d) => ("PASS", d.clone()),
                Err(d) => ("FAIL", d.clone()),
            };
            all_ok &= res.is_ok();
            println!("criterion {id} {name:<28} {status} [{elapsed:.2?}] {detail}");
        };

    record(
        1,
        "example values",
        Some(Duration::from_secs(60)),
        &mut criterion_1,
    );
    record(
        2,
        "example polynomials",
        Some(Duration::from_secs(600)),
        &mut criterion_2,
    );
    record(3, "degree bound", None, &mut || {
        let m = genus_zero_matrix()?;
        let r = criterion_3(&m);
        matrix = Some(m);
        r
    });
    record(
        4,
        "oracle/character agreement",
        Some(Duration::from_secs(300)),
        &mut criterion_4,
    );
    record(
        5,
        "identities",
        Some(Duration::from_secs(10)),
        &mut criterion_5,
    );
    record(6, "product formula", None, &mut criterion_6);
    record(7, "genus-0 structure", None, &mut || match &matrix {
        Some(m) => criterion_7(m),
        None => Err("chamber matrix unavailable".into()),
    });
    record(8, "invariant suites", None, &mut criterion_8);

    if all_ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
