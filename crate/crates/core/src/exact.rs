//! Exact arbitrary-precision combinatorics behind the raw moments of
//! `B(n, p)`.
//!
//! Everything here is integer or rational arithmetic; no floating point is
//! involved until a caller asks for a logarithm through [`ExactRational::ln_abs`].
//! Two independent routes to `E(R^k)` are provided:
//!
//! * [`raw_moment_direct`] sums `C(n,i) p^i (1-p)^(n-i) i^k` over the number
//!   of red balls `i`;
//! * [`raw_moment_stirling`] sums `{k j} (n)_j p^j` over the number of
//!   distinct balls `j` in a sample of size `k` drawn with replacement.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// Exact ratio of arbitrary-precision integers, always in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return domain("rational with zero denominator");
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn sign(&self) -> Sign {
        self.0.numer().sign()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn pow(&self, exp: u32) -> Self {
        Self(Pow::pow(&self.0, exp))
    }

    /// Nearest double; saturates to infinity for magnitudes beyond `f64`.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Out of range for the library conversion: go through the log.
            let mag = self.ln_abs().exp();
            if self.sign() == Sign::Minus {
                -mag
            } else {
                mag
            }
        })
    }

    /// Natural logarithm of `|self|`; negative infinity for zero.
    ///
    /// Works from bit lengths and a 64-bit scaled quotient, so thousand-digit
    /// operands neither overflow nor lose relative accuracy.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_ratio(self.numer().magnitude(), self.denom().magnitude())
    }

    /// The exact value as `(sign, ln |x|)`.
    pub fn signed_ln(&self) -> (Sign, f64) {
        (self.sign(), self.ln_abs())
    }

    /// `num/den` with the denominator always written, for machine-readable
    /// output.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl From<BigRational> for ExactRational {
    fn from(value: BigRational) -> Self {
        Self(value)
    }
}

impl From<Natural> for ExactRational {
    fn from(value: Natural) -> Self {
        Self::from_integer(BigInt::from(value))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Accepts `a/b`, integers, and decimal literals with an optional exponent.
/// Decimals are read exactly, so `"0.1"` is `1/10`.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            return Ok(Self(BigRational::new(num, den)));
        }

        let (mantissa, exponent) = match t.find(['e', 'E']) {
            Some(pos) => {
                let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
                (&t[..pos], e)
            }
            None => (t, 0),
        };
        let (negative, body) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let scale = exponent - frac_part.len() as i32;
        let ten = BigInt::from(10u32);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * Pow::pow(&ten, scale as u32))
        } else {
            BigRational::new(numer, Pow::pow(&ten, scale.unsigned_abs()))
        };
        Ok(Self(value))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

/// `ln(num / den)` for positive integers.
pub(crate) fn ln_ratio(num: &BigUint, den: &BigUint) -> f64 {
    debug_assert!(!num.is_zero() && !den.is_zero());
    // Choose e so that num / (den * 2^e) lies in [2/3, 4/3]; then
    // ln = e ln 2 + ln1p(x) with |x| <= 1/3 and no cancellation between the
    // two terms beyond a small constant factor.
    let mut e = num.bits() as i64 - den.bits() as i64;
    let scaled = |e: i64| -> (BigUint, BigUint) {
        if e >= 0 {
            (num.clone(), den << (e as u64))
        } else {
            (num << (e.unsigned_abs()), den.clone())
        }
    };
    let (mut m, mut d) = scaled(e);
    let three = BigUint::from(3u32);
    if &three * &m < (&d << 1u32) {
        e -= 1;
        (m, d) = scaled(e);
    } else if &three * &m > (&d << 2u32) {
        e += 1;
        (m, d) = scaled(e);
    }

    let (diff, negative) = if m >= d {
        (&m - &d, false)
    } else {
        (&d - &m, true)
    };
    let x = if diff.is_zero() {
        0.0
    } else {
        // 64 significant bits of diff / d.
        let shift = d.bits() - diff.bits() + 64;
        let q = (diff << shift) / &d;
        let mag = q.to_f64().unwrap_or(f64::INFINITY) * pow2_neg(shift);
        if negative {
            -mag
        } else {
            mag
        }
    };
    e as f64 * std::f64::consts::LN_2 + x.ln_1p()
}

fn pow2_neg(shift: u64) -> f64 {
    if shift > 1100 {
        0.0
    } else {
        2f64.powi(-(shift as i32))
    }
}

/// One raw-moment instance: `n` balls, paint probability `p`, moment order `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentQuery {
    n: u64,
    p: ExactRational,
    k: u64,
}

impl MomentQuery {
    pub fn new(n: u64, p: ExactRational, k: u64) -> Result<Self> {
        if n == 0 {
            return domain("ball count n must be at least 1");
        }
        if k == 0 {
            return domain("moment order k must be at least 1");
        }
        if p.sign() == Sign::Minus || p > ExactRational::one() {
            return domain(format!("probability p = {p} outside [0, 1]"));
        }
        Ok(Self { n, p, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> &ExactRational {
        &self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `p = a / b` as nonnegative integers.
    fn p_parts(&self) -> (Natural, Natural) {
        let a = self.p.numer().magnitude().clone();
        let b = self.p.denom().magnitude().clone();
        (a, b)
    }
}

impl fmt::Display for MomentQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, p={}, k={})", self.n, self.p, self.k)
    }
}

/// Row `k` of the Stirling numbers of the second kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingRow {
    k: u64,
    entries: Vec<Natural>,
}

impl StirlingRow {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// `entries()[j] = {k j}` for `j = 0..=k`.
    pub fn entries(&self) -> &[Natural] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> Option<&Natural> {
        self.entries.get(j)
    }

    /// `sum_j {k j} (x)_j`, which equals `x^k`.
    pub fn falling_factorial_sum(&self, x: u64) -> Natural {
        let mut ff = Natural::one();
        let mut total = Natural::zero();
        for (j, s) in self.entries.iter().enumerate() {
            if j > 0 {
                if j as u64 > x {
                    break;
                }
                ff *= x - (j as u64 - 1);
            }
            total += s * &ff;
        }
        total
    }
}

/// Iterator over rows 1, 2, 3, ... of the Stirling triangle, advancing a
/// single row in place.
#[derive(Clone, Debug)]
pub struct StirlingRows {
    row: Vec<Natural>,
}

impl StirlingRows {
    pub fn new() -> Self {
        Self {
            row: vec![Natural::one()],
        }
    }
}

impl Default for StirlingRows {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for StirlingRows {
    type Item = StirlingRow;

    fn next(&mut self) -> Option<StirlingRow> {
        advance_row(&mut self.row);
        Some(StirlingRow {
            k: self.row.len() as u64 - 1,
            entries: self.row.clone(),
        })
    }
}

// {m+1 j} = {m j-1} + j {m j}, updated from the top so that entries[j-1]
// still holds row m when entries[j] is overwritten.
fn advance_row(row: &mut Vec<Natural>) {
    row.push(Natural::zero());
    for j in (1..row.len()).rev() {
        let carried = &row[j] * j;
        row[j] = carried + &row[j - 1];
    }
    row[0] = Natural::zero();
}

/// Row `k` of the Stirling numbers of the second kind, via the triangle
/// recurrence with `O(k)` big integers held at any time.
pub fn stirling_row(k: u64) -> Result<StirlingRow> {
    if k == 0 {
        return domain("Stirling row requires k >= 1");
    }
    let mut row = vec![Natural::one()];
    for _ in 0..k {
        advance_row(&mut row);
    }
    Ok(StirlingRow { k, entries: row })
}

/// `(n)_j = n (n-1) ... (n-j+1)`; zero when `j > n`, one when `j = 0`.
pub fn falling_factorial(n: &Natural, j: u64) -> Natural {
    let mut acc = Natural::one();
    let mut factor = n.clone();
    for _ in 0..j {
        if factor.is_zero() {
            return Natural::zero();
        }
        acc *= &factor;
        factor -= 1u32;
    }
    acc
}

/// `E(R^k) = sum_i C(n,i) p^i (1-p)^(n-i) i^k`, exactly.
pub fn raw_moment_direct(q: &MomentQuery) -> ExactRational {
    let n = q.n;
    let k = q.k;
    let (a, b) = q.p_parts();
    let c = &b - &a;

    // (1-p)^(n-i) numerators, indexed by i.
    let mut c_pows = vec![Natural::one(); n as usize + 1];
    for i in (0..n as usize).rev() {
        c_pows[i] = &c_pows[i + 1] * &c;
    }

    let mut binom = Natural::one();
    let mut a_pow = Natural::one();
    let mut total = Natural::zero();
    for i in 0..=n {
        if i > 0 {
            binom = binom * (n - i + 1) / i;
            a_pow *= &a;
            let ik = Pow::pow(Natural::from(i), k);
            total += &binom * &a_pow * &c_pows[i as usize] * ik;
        }
    }
    let denom = Pow::pow(&b, n);
    ratio(total, denom)
}

/// Integer-scaled summands of the Stirling form of `E(R^k)`.
///
/// With `p = a/b`, `terms[j-1] = {k j} (n)_j a^j b^(k-j)` for
/// `j = 1..=min(k, n)` and `E(R^k) = sum(terms) / b^k`. The common factor
/// `b^-k` leaves ratios between terms, hence concavity and the mode, intact.
#[derive(Clone, Debug)]
pub struct MomentTerms {
    pub terms: Vec<Natural>,
    pub denominator: Natural,
}

impl MomentTerms {
    pub fn sum(&self) -> ExactRational {
        let total = self.terms.iter().fold(Natural::zero(), |acc, t| acc + t);
        ratio(total, self.denominator.clone())
    }
}

pub fn moment_terms(q: &MomentQuery) -> MomentTerms {
    let row = stirling_row(q.k).expect("query has k >= 1");
    moment_terms_with_row(q, &row)
}

pub(crate) fn moment_terms_with_row(q: &MomentQuery, row: &StirlingRow) -> MomentTerms {
    debug_assert_eq!(row.k, q.k);
    let (a, b) = q.p_parts();
    let top = q.k.min(q.n);

    let mut b_pows = vec![Natural::one(); (q.k - 1) as usize + 1];
    for i in 1..b_pows.len() {
        b_pows[i] = &b_pows[i - 1] * &b;
    }

    let mut ff = Natural::one();
    let mut a_pow = Natural::one();
    let mut terms = Vec::with_capacity(top as usize);
    for j in 1..=top {
        ff *= q.n - j + 1;
        a_pow *= &a;
        let term = &row.entries[j as usize] * &ff * &a_pow * &b_pows[(q.k - j) as usize];
        terms.push(term);
    }
    MomentTerms {
        terms,
        denominator: &b_pows[(q.k - 1) as usize] * &b,
    }
}

/// `E(R^k) = sum_{j=1}^{min(k,n)} {k j} (n)_j p^j`, exactly.
pub fn raw_moment_stirling(q: &MomentQuery) -> ExactRational {
    moment_terms(q).sum()
}

/// `P(S = j) = {k j} (n)_j / n^k` for `j = 1..=min(k, n)`, where `S` is the
/// number of distinct balls in `k` draws with replacement from `n`.
pub fn sample_size_pmf(k: u64, n: u64) -> Result<Vec<ExactRational>> {
    if k == 0 || n == 0 {
        return domain("sample_size_pmf requires k >= 1 and n >= 1");
    }
    let row = stirling_row(k)?;
    let nk = Pow::pow(Natural::from(n), k);
    let mut ff = Natural::one();
    let mut out = Vec::with_capacity(k.min(n) as usize);
    for j in 1..=k.min(n) {
        ff *= n - j + 1;
        out.push(ratio(&row.entries[j as usize] * &ff, nk.clone()));
    }
    Ok(out)
}

/// Probability that `k` draws with replacement from the painted urn are all
/// red: `E(R^k) / n^k`.
pub fn all_red_probability(q: &MomentQuery) -> ExactRational {
    let moment = raw_moment_stirling(q);
    let nk = ExactRational::from(Pow::pow(Natural::from(q.n), q.k));
    moment / nk
}

fn ratio(num: Natural, den: Natural) -> ExactRational {
    let g = num.gcd(&den);
    let (num, den) = if g.is_one() || g.is_zero() {
        (num, den)
    } else {
        (num / &g, den / &g)
    };
    ExactRational(BigRational::new_raw(
        BigInt::from_biguint(if num.is_zero() { Sign::NoSign } else { Sign::Plus }, num),
        BigInt::from(den),
    ))
}
