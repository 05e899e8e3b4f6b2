//! Two binomial identities behind the genus-0 wall-crossing sign: an
//! alternating sum and a beta integral, both equal to `(-1)^{r_1 - 1}` with
//! `r_1 = r - r_2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{rational_string, ExactRational};
use crate::symgroup::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("parameters out of range: {0}")]
    Range(String),
}

type Binomial<'a> = &'a dyn Fn(u64, u64) -> BigInt;

fn sign(e: u64) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `sum_{k=r_2}^{r-1} C(r-1, k) C(k-1, r_2-1) (-1)^{r-1-k}`.
pub fn alternating_sum(r: u64, r2: u64) -> Result<BigInt, IdentityError> {
    alternating_sum_with(r, r2, &binomial)
}

fn alternating_sum_with(r: u64, r2: u64, c: Binomial) -> Result<BigInt, IdentityError> {
    if r < 2 || r2 < 1 || r2 > r - 1 {
        return Err(IdentityError::Range(format!(
            "need r >= 2 and 1 <= r2 <= r - 1, got r = {r}, r2 = {r2}"
        )));
    }
    let mut acc = BigInt::zero();
    for k in r2..r {
        acc += c(r - 1, k) * c(k - 1, r2 - 1) * sign(r - 1 - k);
    }
    Ok(acc)
}

/// `r_2 C(r-1, r_2) int_0^1 t^{r_2-1} (t-1)^{r_1-1} dt`, integrated term by
/// term after expanding `(t-1)^{r_1-1}`.
pub fn beta_integral_exact(r1: u64, r2: u64) -> Result<ExactRational, IdentityError> {
    beta_integral_with(r1, r2, &binomial)
}

fn beta_integral_with(r1: u64, r2: u64, c: Binomial) -> Result<ExactRational, IdentityError> {
    if r1 < 1 || r2 < 1 {
        return Err(IdentityError::Range(format!(
            "need r1, r2 >= 1, got r1 = {r1}, r2 = {r2}"
        )));
    }
    let r = r1 + r2;
    let mut integral = BigRational::zero();
    for j in 0..r1 {
        let coeff = c(r1 - 1, j) * sign(r1 - 1 - j);
        integral += BigRational::new(coeff, BigInt::from(r2 + j));
    }
    Ok(BigRational::from_integer(c(r - 1, r2) * r2) * integral)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub r: u64,
    pub r2: u64,
    #[serde(with = "rational_string")]
    pub expected: ExactRational,
    #[serde(with = "rational_string")]
    pub got: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<IdentityFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// Checked for `2 <= r <= r_max`, `1 <= r_2 <= r - 1`.
    pub r_max: u64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }
}

pub fn verify_identities(r_max: u64) -> Result<IdentityReport, IdentityError> {
    verify_identities_with(r_max, &binomial)
}

/// [`verify_identities`] with the binomial coefficient supplied by the caller,
/// so the harness itself can be tested against a broken one.
pub fn verify_identities_with(r_max: u64, c: Binomial) -> Result<IdentityReport, IdentityError> {
    if r_max < 2 {
        return Err(IdentityError::Range(format!(
            "need r_max >= 2, got {r_max}"
        )));
    }
    let mut alt = IdentityCheck {
        name: "alternating_sum".into(),
        cases: 0,
        failures: Vec::new(),
    };
    let mut beta = IdentityCheck {
        name: "beta_integral".into(),
        cases: 0,
        failures: Vec::new(),
    };
    let mut agree = IdentityCheck {
        name: "alternating_sum_equals_beta_integral".into(),
        cases: 0,
        failures: Vec::new(),
    };
    for r in 2..=r_max {
        for r2 in 1..r {
            let r1 = r - r2;
            let expected = BigRational::from_integer(BigInt::from(sign(r1 - 1)));
            let a = BigRational::from_integer(alternating_sum_with(r, r2, c)?);
            let b = beta_integral_with(r1, r2, c)?;
            for (check, got, want) in [
                (&mut alt, &a, &expected),
                (&mut beta, &b, &expected),
                (&mut agree, &b, &a),
            ] {
                check.cases += 1;
                if got != want {
                    check.failures.push(IdentityFailure {
                        r,
                        r2,
                        expected: want.clone(),
                        got: got.clone(),
                    });
                }
            }
        }
    }
    Ok(IdentityReport {
        r_max,
        checks: vec![alt, beta, agree],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_int;
    use num_traits::One;

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_sum(2, 1).unwrap(), BigInt::one());
        assert_eq!(alternating_sum(3, 1).unwrap(), BigInt::from(-1));
        assert_eq!(alternating_sum(3, 2).unwrap(), BigInt::one());
        assert!(alternating_sum(1, 1).is_err());
        assert!(alternating_sum(3, 3).is_err());
        assert!(alternating_sum(3, 0).is_err());
    }

    #[test]
    fn beta_examples() {
        for r2 in 1..8 {
            assert_eq!(beta_integral_exact(1, r2).unwrap(), rational_from_int(1));
        }
        assert_eq!(beta_integral_exact(2, 1).unwrap(), rational_from_int(-1));
        assert_eq!(beta_integral_exact(3, 2).unwrap(), rational_from_int(1));
        assert!(beta_integral_exact(0, 2).is_err());
    }

    #[test]
    fn beta_integral_against_closed_form() {
        // int_0^1 t^{a-1}(1-t)^{b-1} dt = (a-1)!(b-1)!/(a+b-1)!
        use crate::symgroup::factorial;
        for r1 in 1..10u32 {
            for r2 in 1..10u32 {
                let b = BigRational::new(
                    factorial(r2 - 1) * factorial(r1 - 1),
                    factorial(r1 + r2 - 1),
                );
                let b = if (r1 - 1) % 2 == 1 { -b } else { b };
                let r = (r1 + r2) as u64;
                let expected = BigRational::from_integer(binomial(r - 1, r2 as u64) * r2) * b;
                assert_eq!(beta_integral_exact(r1 as u64, r2 as u64).unwrap(), expected);
            }
        }
    }

    #[test]
    fn verified_up_to_thirty() {
        let report = verify_identities(30).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks[0].cases, 29 * 30 / 2);
        assert!(verify_identities(2).unwrap().passed());
        assert!(verify_identities(1).is_err());
    }

    #[test]
    fn harness_catches_a_broken_binomial() {
        let off_by_one = |n: u64, k: u64| {
            let b = binomial(n, k);
            if n == 5 && k == 2 {
                b + 1
            } else {
                b
            }
        };
        let report = verify_identities_with(30, &off_by_one).unwrap();
        assert!(!report.passed());
        assert!(report.failure_count() > 0);
    }

    #[test]
    fn report_json() {
        let json = serde_json::to_value(verify_identities(3).unwrap()).unwrap();
        assert_eq!(json["r_max"], 3);
        assert_eq!(json["checks"][0]["name"], "alternating_sum");
        assert_eq!(json["checks"][0]["failures"].as_array().unwrap().len(), 0);
    }
}
