use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{check_zero_sum, parse_rational, ExactError, ExactRational};

/// Exponent vector. Ordered graded-lexicographically with `x1 > x2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Terms = BTreeMap<Monomial, BigRational>;

fn add_term(terms: &mut Terms, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            add_term(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

fn pow_terms(base: &Terms, mut e: u32, vars: usize) -> Terms {
    let mut acc = Terms::new();
    acc.insert(Monomial::one(vars), BigRational::one());
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_terms(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul_terms(&b, &b);
        }
    }
    acc
}

/// Polynomial on the zero-sum space `{x in Q^n : x_1 + ... + x_n = 0}`.
///
/// Terms are stored over the free variables `x_1 .. x_{n-1}`; `x_n` never
/// appears. Construction from any `n`-variable expression goes through
/// [`MultiPoly::from_raw_terms`] or the arithmetic on [`MultiPoly::var`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: Terms,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "ambient dimension must be positive");
        MultiPoly {
            n,
            terms: Terms::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        add_term(&mut p.terms, Monomial::one(n - 1), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    /// The coordinate `x_i` (1-based), with `x_n` replaced by `-(x_1+...+x_{n-1})`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(
            (1..=n).contains(&i),
            "variable index {i} out of range 1..={n}"
        );
        let mut p = Self::zero(n);
        if i < n {
            let mut e = vec![0; n - 1];
            e[i - 1] = 1;
            p.terms.insert(Monomial(e), BigRational::one());
        } else {
            for j in 0..n - 1 {
                let mut e = vec![0; n - 1];
                e[j] = 1;
                p.terms.insert(Monomial(e), -BigRational::one());
            }
        }
        p
    }

    /// `sum_{i in indices} x_i` (1-based indices).
    pub fn linear_form(n: usize, indices: &[usize]) -> Self {
        indices
            .iter()
            .fold(Self::zero(n), |acc, &i| &acc + &Self::var(n, i))
    }

    /// Canonicalizes a polynomial given over all `n` variables.
    pub fn from_raw_terms<I>(n: usize, raw: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let vars: Vec<MultiPoly> = (1..=n).map(|i| Self::var(n, i)).collect();
        let mut out = Self::zero(n);
        for (exps, c) in raw {
            assert_eq!(exps.len(), n, "raw exponent vector must have length n");
            let mut t = Self::constant(n, c);
            for (v, &e) in vars.iter().zip(&exps) {
                if e > 0 {
                    t = &t * &v.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Builds directly from canonical terms (exponents over `x_1..x_{n-1}`).
    pub fn from_canonical_terms<I>(n: usize, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n - 1 {
                return Err(ExactError::DimensionMismatch {
                    expected: n - 1,
                    got: e.len(),
                });
            }
            add_term(&mut p.terms, Monomial(e), c);
        }
        Ok(p)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree in canonical coordinates; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            add_term(&mut out.terms, m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        MultiPoly {
            n: self.n,
            terms: pow_terms(&self.terms, e, self.n - 1),
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), ExactError> {
        if self.n != other.n {
            return Err(ExactError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Evaluates at a zero-sum integer point of length `n`.
    pub fn eval(&self, x: &[i64]) -> Result<ExactRational, ExactError> {
        check_zero_sum(x, self.n)?;
        let free: Vec<BigRational> = x[..self.n - 1]
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        Ok(self.eval_free(&free))
    }

    /// Evaluates at arbitrary values of the free coordinates `x_1..x_{n-1}`.
    pub fn eval_free(&self, free: &[BigRational]) -> BigRational {
        assert_eq!(free.len(), self.n - 1);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in free.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_dim(other)?;
        Ok(self - other)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_dim(other)?;
        Ok(self + other)
    }

    /// Splits by total degree; the components sum back to `self`.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>, ExactError> {
        self.check_same_dim(divisor)?;
        let Some((lead_m, lead_c)) = divisor.terms.iter().next_back() else {
            return Ok(None);
        };
        let mut rem = self.terms.clone();
        let mut quot = Terms::new();
        // A single divisor is its own Groebner basis, so a zero remainder is
        // equivalent to divisibility.
        while let Some(pos) = rem.keys().rev().find(|m| m.checked_div(lead_m).is_some()) {
            let m = pos.clone();
            let c = rem[&m].clone() / lead_c;
            let q = m.checked_div(lead_m).expect("checked above");
            for (dm, dc) in &divisor.terms {
                add_term(&mut rem, q.mul(dm), -(&c * dc));
            }
            add_term(&mut quot, q, c);
        }
        if rem.is_empty() {
            Ok(Some(MultiPoly {
                n: self.n,
                terms: quot,
            }))
        } else {
            Ok(None)
        }
    }

    /// Re-expresses `self` over all variables except `x_k` (1-based).
    /// Exponent vectors in the result have length `n`, with a zero at `k`.
    pub fn eliminating(&self, k: usize) -> BTreeMap<Monomial, BigRational> {
        assert!((1..=self.n).contains(&k));
        if k == self.n {
            return self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(0);
                    (Monomial(e), c.clone())
                })
                .collect();
        }
        let n = self.n;
        let mut subst = Terms::new();
        for j in 1..=n {
            if j != k {
                let mut e = vec![0; n];
                e[j - 1] = 1;
                subst.insert(Monomial(e), -BigRational::one());
            }
        }
        let mut out = Terms::new();
        for (m, c) in &self.terms {
            let mut base = m.0.clone();
            base.push(0);
            let ek = base[k - 1];
            base[k - 1] = 0;
            let mut head = Terms::new();
            head.insert(Monomial(base), c.clone());
            for (mm, cc) in mul_terms(&head, &pow_terms(&subst, ek, n)) {
                add_term(&mut out, mm, cc);
            }
        }
        out
    }

    /// Human-oriented form using all `n` variables: picks the eliminated
    /// variable giving the fewest negative coefficients, then the fewest
    /// terms, preferring the highest index on ties.
    pub fn display_form(&self) -> String {
        if self.n == 1 || self.is_zero() {
            return self.to_string();
        }
        let best = (1..=self.n)
            .rev()
            .map(|k| self.eliminating(k))
            .min_by_key(|t| (t.values().filter(|c| c.is_negative()).count(), t.len()))
            .expect("n >= 1");
        format_terms(best.iter().rev())
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exponents: m.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

fn format_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a Monomial, &'a BigRational)>,
{
    let mut out = String::new();
    for (idx, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let vars: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
        if vars.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical form, terms in descending graded-lex order.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(self.terms()))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "ambient dimension mismatch");
        MultiPoly {
            n: self.n,
            terms: mul_terms(&self.terms, &rhs.terms),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}

/// Storage form of a [`MultiPoly`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = ExactError;

    fn try_from(j: PolyJson) -> Result<Self, ExactError> {
        if j.n == 0 {
            return Err(ExactError::Encoding("n must be positive".into()));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c = parse_rational(&t.coeff)?;
            if c.is_zero() {
                return Err(ExactError::Encoding("zero coefficient stored".into()));
            }
            terms.push((t.exponents, c));
        }
        MultiPoly::from_canonical_terms(j.n, terms)
    }
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        p.to_json()
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        MultiPoly::try_from(j).map_err(serde::de::Error::custom)
    }
}
