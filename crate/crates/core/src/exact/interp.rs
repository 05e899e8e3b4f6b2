use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_zero_sum, ExactError, ExactRational, Monomial, MultiPoly};

/// All monomials of total degree `<= degree_bound` in `vars` variables,
/// descending graded-lex.
pub fn monomials_up_to(vars: usize, degree_bound: u32) -> Vec<Monomial> {
    fn rec(vars: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == vars {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(vars, remaining - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, degree_bound, &mut Vec::with_capacity(vars), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Fits the unique polynomial of total degree `<= degree_bound` (in canonical
/// coordinates) through `(points[i], values[i])` by exact Gaussian
/// elimination. Extra rows beyond the number of monomials are consistency
/// checks.
pub fn interpolate(
    points: &[Vec<i64>],
    values: &[ExactRational],
    degree_bound: u32,
) -> Result<MultiPoly, ExactError> {
    if points.len() != values.len() {
        return Err(ExactError::LengthMismatch {
            points: points.len(),
            values: values.len(),
        });
    }
    let Some(first) = points.first() else {
        return Err(ExactError::Underdetermined {
            rank: 0,
            unknowns: 1,
        });
    };
    let n = first.len();
    if n == 0 {
        return Err(ExactError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    for p in points {
        check_zero_sum(p, n)?;
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i][..n - 1] == points[j][..n - 1] {
                return Err(ExactError::DuplicateNode {
                    first: i,
                    second: j,
                });
            }
        }
    }

    let monomials = monomials_up_to(n - 1, degree_bound);
    let cols = monomials.len();
    let mut rows: Vec<Vec<BigRational>> = points
        .iter()
        .zip(values)
        .map(|(p, v)| {
            let mut row: Vec<BigRational> = monomials
                .iter()
                .map(|m| {
                    let mut t = BigInt::one();
                    for (&xi, &e) in p.iter().zip(&m.0) {
                        t *= num_traits::pow(BigInt::from(xi), e as usize);
                    }
                    BigRational::from_integer(t)
                })
                .collect();
            row.push(v.clone());
            row
        })
        .collect();

    // Reduced row echelon form on the augmented matrix.
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                *v -= &f * pv;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    if rows[r..].iter().any(|row| !row[cols].is_zero()) {
        return Err(ExactError::Inconsistent { degree_bound });
    }
    if r < cols {
        return Err(ExactError::Underdetermined {
            rank: r,
            unknowns: cols,
        });
    }
    let terms = pivots
        .iter()
        .enumerate()
        .map(|(i, &c)| (monomials[c].0.clone(), rows[i][cols].clone()));
    MultiPoly::from_canonical_terms(n, terms)
}
