//! Dense univariate polynomials over arbitrary-precision integers, with
//! unimodality and log-concavity testers for coefficient sequences.
//!
//! Coefficients are stored in ascending order of exponent (`coeffs[e]` is the
//! coefficient of `q^e`) and kept canonical: no trailing zeros, so the zero
//! polynomial is the empty sequence. Multiplication is schoolbook convolution;
//! every polynomial in this crate has modest degree and (near-)contiguous
//! support, so anything fancier would not pay for itself.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A dense polynomial in the formal variable `q` with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// A negative coefficient was found where a nonnegative sequence is required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCoefficient {
    pub exponent: usize,
}

impl fmt::Display for NegativeCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "negative coefficient at exponent {}", self.exponent)
    }
}

/// Witness that a coefficient sequence is not unimodal: exponents
/// `left < valley < right` with `a[left] > a[valley] < a[right]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValleyWitness {
    pub left: usize,
    pub valley: usize,
    pub right: usize,
}

/// Witness that a coefficient sequence is not log-concave: the exponent `e`
/// (inside the support window) with `a[e]^2 < a[e-1] * a[e+1]`, or an internal
/// zero coefficient between positive ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogConcavityBreak {
    pub exponent: usize,
}

impl IntPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `q^e`.
    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs = coeffs.into_iter().map(Into::into).collect();
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients `a_0, ..., a_deg` (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The coefficient of `q^e` (zero beyond the degree).
    pub fn coeff(&self, e: usize) -> BigInt {
        self.coeffs.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `q^e`, moving every coefficient up `e` places.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[e + i] = c.clone();
        }
        IntPolynomial { coeffs }
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Evaluates the reversed coefficient sequence at an integer point:
    /// `sum_e a_e * x^(deg - e)`. Zero polynomial evaluates to zero.
    pub fn reversed_eval(&self, x: u64) -> BigInt {
        let x = BigInt::from(x);
        // Horner on descending exponents of the reversal = ascending of self.
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc = acc * &x + c;
        }
        acc
    }

    fn check_nonnegative(&self) -> Result<(), NegativeCoefficient> {
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_negative() {
                return Err(NegativeCoefficient { exponent: e });
            }
        }
        Ok(())
    }

    /// Looks for a unimodality violation in the full coefficient vector from
    /// exponent 0. Returns `Ok(None)` when some peak index `m` exists with
    /// coefficients nondecreasing up to `m` and nonincreasing after it
    /// (leading zeros are harmless under this convention). Requires
    /// nonnegative coefficients.
    pub fn unimodality_failure(&self) -> Result<Option<ValleyWitness>, NegativeCoefficient> {
        self.check_nonnegative()?;
        let v = &self.coeffs;
        if v.len() < 3 {
            return Ok(None);
        }
        // First strict descent; any strict ascent after it is a valley.
        let mut i = 0;
        while i + 1 < v.len() && v[i] <= v[i + 1] {
            i += 1;
        }
        let peak = i;
        while i + 1 < v.len() {
            if v[i] < v[i + 1] {
                // Coefficients are nonincreasing from `peak` to `i`, so
                // a[peak] > a[i] < a[i+1].
                return Ok(Some(ValleyWitness {
                    left: peak,
                    valley: i,
                    right: i + 1,
                }));
            }
            i += 1;
        }
        Ok(None)
    }

    /// True iff the coefficient sequence is unimodal.
    pub fn is_unimodal(&self) -> Result<bool, NegativeCoefficient> {
        Ok(self.unimodality_failure()?.is_none())
    }

    /// Looks for a log-concavity violation over the support-trimmed
    /// coefficient window (exponents from the minimal nonzero one up to the
    /// degree). Fails at exponent `e` when `a_e^2 < a_{e-1} a_{e+1}`; an
    /// internal zero coefficient inside the window also fails, even where the
    /// product inequality would hold vacuously. Requires nonnegative
    /// coefficients.
    pub fn log_concavity_failure(&self) -> Result<Option<LogConcavityBreak>, NegativeCoefficient> {
        self.check_nonnegative()?;
        let v = &self.coeffs;
        let Some(lo) = v.iter().position(|c| !c.is_zero()) else {
            return Ok(None);
        };
        let hi = v.len() - 1;
        for e in lo + 1..hi {
            if v[e].is_zero() || &v[e] * &v[e] < &v[e - 1] * &v[e + 1] {
                return Ok(Some(LogConcavityBreak { exponent: e }));
            }
        }
        Ok(None)
    }

    /// True iff the coefficient sequence is log-concave on its support window.
    pub fn is_log_concave(&self) -> Result<bool, NegativeCoefficient> {
        Ok(self.log_concavity_failure()?.is_none())
    }
}

/// The q-integer `[n]_q = 1 + q + ... + q^(n-1)`; zero polynomial for `n <= 0`.
pub fn q_integer(n: i64) -> IntPolynomial {
    if n <= 0 {
        return IntPolynomial::zero();
    }
    IntPolynomial {
        coeffs: vec![BigInt::one(); n as usize],
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        self.normalize();
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_one() {
                    coeffs[i + j] += a;
                } else if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending-power form, e.g. `q^22 + 3*q^21 + ... + 2*q^7 + q^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", mag)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}*q^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}
