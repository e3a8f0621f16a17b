//! Negative (Hirzebruch–Jung) continued fractions and the point-rule duality.
//!
//! A fraction `p/q` with `p > q > 0` coprime has a unique expansion
//! `p/q = a_1 - 1/(a_2 - 1/(...))` with every `a_i >= 2`.  The dual string
//! is the expansion of `p/(p-q)`; on strings it is realized combinatorially
//! by Riemenschneider's point rule.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced fraction `p/q` with `p > q > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        let q = q.into();
        if !q.is_positive() || p <= q || !p.gcd(&q).is_one() {
            return Err(Error::InvalidFraction { p, q });
        }
        Ok(Fraction { p, q })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// The fraction `p/(p-q)`, whose expansion is the dual string.
    pub fn complement(&self) -> Fraction {
        // gcd(p, p-q) = gcd(p, q) = 1 and 0 < p-q < p, so this cannot fail.
        Fraction::new(self.p.clone(), &self.p - &self.q).expect("complement is always valid")
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A nonempty string of integers `a_i >= 2`: linear plumbing weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CfString {
    coeffs: Vec<i64>,
}

impl CfString {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidCfString("empty coefficient string".into()));
        }
        if let Some(&a) = coeffs.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidCfString(format!("coefficient {a} < 2")));
        }
        Ok(CfString { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Number of coefficients, written `m` throughout.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn reversed(&self) -> CfString {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        CfString { coeffs }
    }

    /// True iff every coefficient is at least 6 (the theorem hypothesis).
    pub fn in_obstruction_family(&self) -> bool {
        self.coeffs.iter().all(|&a| a >= 6)
    }
}

impl std::fmt::Display for CfString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Expand `p/q` into its negative continued fraction.
///
/// `a_1 = ceil(p/q)`, then recurse on `(q, a_1 q - p)`.
pub fn expand(f: &Fraction) -> Result<CfString> {
    let mut p = f.p().clone();
    let mut q = f.q().clone();
    let mut coeffs = Vec::new();
    while !q.is_zero() {
        let a = p.div_ceil(&q);
        let r = &a * &q - &p;
        let a: i64 = a.try_into().map_err(|_| Error::CoefficientOverflow)?;
        coeffs.push(a);
        p = q;
        q = r;
    }
    CfString::new(coeffs)
}

/// Evaluate `a_1 - 1/(a_2 - 1/(...))` to a reduced fraction.
pub fn eval(s: &CfString) -> Result<Fraction> {
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for &a in s.coeffs().iter().rev() {
        let next = BigInt::from(a) * &num - &den;
        den = num;
        num = next;
    }
    Fraction::new(num, den)
}

/// The dual string: the expansion of `p/(p-q)` where `p/q = eval(s)`.
pub fn dual(s: &CfString) -> Result<CfString> {
    expand(&eval(s)?.complement())
}

/// Direct point-rule transcription of the dual string.
///
/// Only defined when all `a_i >= 3`: for `m >= 2` the pattern is
/// `[2^(a_1-2), 3, 2^(a_2-3), 3, ..., 3, 2^(a_m-2)]`; for `m = 1` it is
/// `[2^(a_1-1)]`.  Agrees with [`dual`] on its domain (tested).
pub fn point_rule_transcription(s: &CfString) -> Result<CfString> {
    let coeffs = s.coeffs();
    if let Some(&a) = coeffs.iter().find(|&&a| a < 3) {
        return Err(Error::InvalidCfString(format!(
            "point rule transcription needs a_i >= 3, got {a}"
        )));
    }
    let m = coeffs.len();
    let mut out = Vec::new();
    if m == 1 {
        out.extend(std::iter::repeat(2).take(coeffs[0] as usize - 1));
    } else {
        for (i, &a) in coeffs.iter().enumerate() {
            let twos = if i == 0 || i == m - 1 { a - 2 } else { a - 3 };
            out.extend(std::iter::repeat(2).take(twos as usize));
            if i < m - 1 {
                out.push(3);
            }
        }
    }
    CfString::new(out)
}
