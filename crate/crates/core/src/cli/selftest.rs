use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chambers::{ChamberWitness, Wall};
use crate::exact::{interpolate, monomials_up_to, rational_from_int, MultiPoly};
use crate::hurwitz::{
    all_profiles, frobenius_connected_with, oracle_count_with, HurwitzError, Normalization,
    OracleConfig, RamificationProfile,
};
use crate::identities::verify_identities;
use crate::piecewise::{
    fit_chamber, matching_conventions, product_formula_terms, wall_crossing, ProductConvention,
};
use crate::symgroup::{mn_character, Partition};

/// Reference points of the worked genus-0, five-point example.
pub const POINT_P: [i64; 5] = [7, 1, -2, -3, -3];
pub const POINT_Q: [i64; 5] = [9, 4, -5, -5, -3];

const MAX_REPORTED: usize = 10;

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub r_max: u64,
    pub normalization: Normalization,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            r_max: 30,
            normalization: Normalization::Labeled,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// At most the first ten failures.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(mut self) -> CheckOutcome {
        let passed = self.failures.is_empty();
        let extra = self.failures.len().saturating_sub(MAX_REPORTED);
        self.failures.truncate(MAX_REPORTED);
        if extra > 0 {
            self.failures.push(format!("... and {extra} more"));
        }
        CheckOutcome {
            name: self.name.to_string(),
            passed,
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    let checks = vec![
        identities(config.r_max),
        evaluator_grid(config.normalization),
        example_values(config.normalization),
        example_polynomials(),
        product_formula(),
        relabeling_symmetry(),
        integrality_and_sign(),
        character_orthogonality(),
        interpolation_round_trip(),
    ];
    SelftestReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn identities(r_max: u64) -> CheckOutcome {
    let mut check = Check::new("identities");
    match verify_identities(r_max) {
        Ok(report) => {
            for c in &report.checks {
                check.cases += c.cases;
                for f in &c.failures {
                    check.failures.push(format!(
                        "{} at r = {}, r2 = {}: expected {}, got {}",
                        c.name, f.r, f.r2, f.expected, f.got
                    ));
                }
            }
        }
        Err(e) => check.expect(false, || e.to_string()),
    }
    check.finish()
}

fn show(v: &Result<BigRational, HurwitzError>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn oracle_config(normalization: Normalization) -> OracleConfig {
    OracleConfig {
        normalization,
        ..OracleConfig::default()
    }
}

fn evaluator_grid(normalization: Normalization) -> CheckOutcome {
    let mut check = Check::new("oracle_frobenius_grid");
    let oracle = oracle_config(normalization);
    for p in all_profiles(4, 4) {
        for g in 0..=1 {
            let a = oracle_count_with(&p, g, &oracle).map(|r| r.value);
            let b = frobenius_connected_with(&p, g, normalization).map(|r| r.value);
            check.expect(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || {
                format!("{p} g = {g}: oracle {}, frobenius {}", show(&a), show(&b))
            });
        }
    }
    check.finish()
}

fn example_values(normalization: Normalization) -> CheckOutcome {
    let mut check = Check::new("example_values");
    let oracle = oracle_config(normalization);
    for (x, want) in [(POINT_P, 294), (POINT_Q, 540)] {
        let p = RamificationProfile::new(x.to_vec()).expect("valid reference point");
        let want = rational_from_int(want);
        let a = oracle_count_with(&p, 0, &oracle).map(|r| r.value);
        let b = frobenius_connected_with(&p, 0, normalization).map(|r| r.value);
        check.expect(a.as_ref() == Ok(&want), || {
            format!("oracle {p}: {}, expected {want}", show(&a))
        });
        check.expect(b.as_ref() == Ok(&want), || {
            format!("frobenius {p}: {}, expected {want}", show(&b))
        });
    }
    check.finish()
}

/// `6 x_1^2`, `6 x_1 (x_1 + x_2 + x_5)` and `6 x_1 (x_2 + x_5)` on five points.
pub fn reference_polynomials() -> (MultiPoly, MultiPoly, MultiPoly) {
    let six = rational_from_int(6);
    let x1 = MultiPoly::var(5, 1);
    let c1 = x1.pow(2).scale(&six);
    let c2 = (&x1 * &MultiPoly::linear_form(5, &[1, 2, 5])).scale(&six);
    let wc = (&x1 * &MultiPoly::linear_form(5, &[2, 5])).scale(&six);
    (c1, c2, wc)
}

fn example_polynomials() -> CheckOutcome {
    let mut check = Check::new("example_polynomials");
    let (c1, c2, wc) = reference_polynomials();
    let wall = Wall::new(5, &[2, 5]).expect("valid wall").0;
    let fits = ChamberWitness::from_entries(POINT_P.to_vec())
        .and_then(|p| Ok((p, ChamberWitness::from_entries(POINT_Q.to_vec())?)))
        .map_err(|e| e.to_string())
        .and_then(|(p, q)| {
            let diff = p.signature().differing_walls(q.signature());
            if diff != [wall.clone()] {
                return Err(format!("reference points differ at {diff:?}"));
            }
            let fp = fit_chamber(&p, 0, 5).map_err(|e| e.to_string())?;
            let fq = fit_chamber(&q, 0, 5).map_err(|e| e.to_string())?;
            let cross = wall_crossing(&fp, &fq, &wall).map_err(|e| e.to_string())?;
            Ok((fp.polynomial, fq.polynomial, cross.polynomial))
        });
    match fits {
        Ok((f1, f2, f3)) => {
            check.expect(f1 == c1, || format!("first chamber: {f1}, expected {c1}"));
            check.expect(f2 == c2, || format!("second chamber: {f2}, expected {c2}"));
            check.expect(f3 == wc, || format!("wall crossing: {f3}, expected {wc}"));
        }
        Err(e) => check.expect(false, || e),
    }
    check.finish()
}

fn product_formula() -> CheckOutcome {
    let mut check = Check::new("product_formula");
    let q = RamificationProfile::new(POINT_Q.to_vec()).expect("valid reference point");
    let wall = Wall::new(5, &[2, 5]).expect("valid wall").0;
    match product_formula_terms(&wall, &q) {
        Ok(terms) => {
            let m = matching_conventions(&terms, &rational_from_int(54));
            check.expect(m == [ProductConvention::RESOLVED], || {
                format!("conventions matching 54 at {q}: {m:?}")
            });
        }
        Err(e) => check.expect(false, || e.to_string()),
    }
    check.finish()
}

fn permutations_of(x: &[i64]) -> Vec<Vec<i64>> {
    if x.len() <= 1 {
        return vec![x.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..x.len() {
        let mut rest = x.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn relabeling_symmetry() -> CheckOutcome {
    let mut check = Check::new("relabeling_symmetry");
    let oracle = OracleConfig::default();
    for p in all_profiles(4, 4) {
        let g = 1;
        let base = oracle_count_with(&p, g, &oracle).map(|r| r.value);
        for perm in permutations_of(p.entries()).into_iter().skip(1) {
            let q = RamificationProfile::new(perm).expect("permuted profile is valid");
            let v = oracle_count_with(&q, g, &oracle).map(|r| r.value);
            check.expect(v == base, || {
                format!("{p} vs {q}: {} != {}", show(&base), show(&v))
            });
        }
    }
    check.finish()
}

fn integrality_and_sign() -> CheckOutcome {
    let mut check = Check::new("integrality_nonnegativity");
    let mut profiles = all_profiles(5, 4);
    profiles.push(RamificationProfile::new(POINT_P.to_vec()).expect("valid"));
    profiles.push(RamificationProfile::new(POINT_Q.to_vec()).expect("valid"));
    for p in &profiles {
        for g in 0..=2 {
            match frobenius_connected_with(p, g, Normalization::Labeled) {
                Ok(res) => {
                    let scaled = res.scaled_by_alpha_parts(p);
                    check.expect(scaled.is_integer(), || {
                        format!("{p} g = {g}: H * prod alpha = {scaled}")
                    });
                    check.expect(!res.value.is_negative(), || {
                        format!("{p} g = {g}: negative value {}", res.value)
                    });
                }
                Err(e) => check.expect(false, || format!("{p} g = {g}: {e}")),
            }
        }
    }
    check.finish()
}

fn character_orthogonality() -> CheckOutcome {
    let mut check = Check::new("character_orthogonality");
    for d in 1..=8 {
        let parts = Partition::all(d);
        let table: Vec<Vec<BigInt>> = parts
            .iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|m| mn_character(l, m).expect("same size"))
                    .collect()
            })
            .collect();
        let k = parts.len();
        for i in 0..k {
            for j in 0..k {
                // Columns: sum_lambda chi(mu) chi(nu) = delta z_mu.
                let col: BigInt = (0..k).map(|l| &table[l][i] * &table[l][j]).sum();
                let want = if i == j { parts[i].z() } else { BigInt::zero() };
                check.expect(col == want, || {
                    format!("columns {} {}: {col}", parts[i], parts[j])
                });
                // Rows: sum_mu chi_lambda(mu) chi_rho(mu) / z_mu = delta.
                let row: BigRational = (0..k)
                    .map(|m| BigRational::new(&table[i][m] * &table[j][m], parts[m].z()))
                    .sum();
                let want = rational_from_int(i64::from(i == j));
                check.expect(row == want, || {
                    format!("rows {} {}: {row}", parts[i], parts[j])
                });
            }
        }
    }
    check.finish()
}

fn interpolation_round_trip() -> CheckOutcome {
    let mut check = Check::new("interpolation_round_trip");
    for n in 2..=4usize {
        for degree in 0..=3u32 {
            let mut seed = (n as i64) * 31 + degree as i64;
            let terms = monomials_up_to(n - 1, degree).into_iter().map(|m| {
                seed = (seed * 1103 + 12345).rem_euclid(7919);
                let c = BigRational::new(BigInt::from(seed % 13 - 6), BigInt::from(seed % 5 + 1));
                (m.0, c)
            });
            let p = MultiPoly::from_canonical_terms(n, terms).expect("n - 1 exponents");
            let mut points = Vec::new();
            let mut coords = vec![-3i64; n - 1];
            loop {
                let mut x = coords.clone();
                x.push(-coords.iter().sum::<i64>());
                points.push(x);
                let Some(k) = coords.iter().position(|&v| v < 3) else {
                    break;
                };
                coords[k] += 1;
                for v in &mut coords[..k] {
                    *v = -3;
                }
            }
            let values: Vec<BigRational> = points
                .iter()
                .map(|x| p.eval(x).expect("zero-sum point"))
                .collect();
            let got = interpolate(&points, &values, degree);
            check.expect(got.as_ref() == Ok(&p), || {
                let got = match &got {
                    Ok(q) => q.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                format!("n = {n}, degree {degree}: {got} != {p}")
            });
        }
    }
    check.finish()
}
