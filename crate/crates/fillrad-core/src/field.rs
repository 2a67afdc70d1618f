//! Coefficient fields for simplicial chains: exact rationals and GF(2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// A field of chain coefficients.
///
/// The reduction engine is generic over this trait; the two instances are
/// arbitrary-precision rationals (exact, no false boundary verdicts) and
/// GF(2) (bit-cheap, used where orientation is irrelevant).
pub trait CoeffField: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn from_int(v: i64) -> Self;
    /// Short human-readable name used in reports.
    fn name() -> &'static str;
}

/// Exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn to_f64(&self) -> f64 {
        let num = self.0.numer();
        let den = self.0.denom();
        // Exact for everything the samplers produce; falls back to a
        // logarithmic quotient when the parts exceed f64 range.
        let nf = big_to_f64(num);
        let df = big_to_f64(den);
        if nf.is_finite() && df.is_finite() && df != 0.0 {
            nf / df
        } else {
            let sign = if num.is_negative() { -1.0 } else { 1.0 };
            sign * ((num.magnitude().bits() as f64) - (den.bits() as f64)).exp2()
        }
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    let s = v.to_string();
    s.parse::<f64>().unwrap_or(f64::INFINITY)
}

impl CoeffField for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn neg(&self) -> Self {
        Rational(-self.0.clone())
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn inv(&self) -> Self {
        Rational(self.0.recip())
    }
    fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn name() -> &'static str {
        "Q"
    }
}

/// GF(2) coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Z2(pub bool);

impl CoeffField for Z2 {
    fn zero() -> Self {
        Z2(false)
    }
    fn one() -> Self {
        Z2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn neg(&self) -> Self {
        *self
    }
    fn add(&self, other: &Self) -> Self {
        Z2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Z2(self.0 & other.0)
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
    fn from_int(v: i64) -> Self {
        Z2(v.rem_euclid(2) == 1)
    }
    fn name() -> &'static str {
        "Z2"
    }
}

/// A sparse vector over `F`, kept sorted by row index with no zero entries.
pub type SparseVec<F> = Vec<(u32, F)>;

/// result = a + scale * b, merging sorted supports and dropping zeros.
pub fn axpy_sorted<F: CoeffField>(a: &SparseVec<F>, b: &SparseVec<F>, scale: &F) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let v = b[j].1.mul(scale);
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a[i].1.add(&b[j].1.mul(scale));
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (row, v) in &b[j..] {
        let v = v.mul(scale);
        if !v.is_zero() {
            out.push((*row, v));
        }
    }
    out
}
