//! Exact scalars over the rationals and over prime fields of odd characteristic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("CharTwoForbidden: fields of characteristic 2 are not supported")]
    CharTwoForbidden,
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("FieldMismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("MissingOperand: binary operation needs a second scalar")]
    MissingOperand,
    #[error("ParseScalar: cannot read {text:?} as an element of {field}")]
    ParseScalar { text: String, field: FieldSpec },
}

/// The ground field: ℚ or 𝔽_p with p an odd prime.
///
/// Only constructible through [`FieldSpec::rationals`] and [`FieldSpec::prime`],
/// so a `Prime(p)` value always carries a validated odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// Selector used by [`make_field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

pub fn make_field(kind: FieldKind, p: Option<u64>) -> Result<FieldSpec, FieldError> {
    match kind {
        FieldKind::Rationals => Ok(FieldSpec::Rationals),
        FieldKind::PrimeField => FieldSpec::prime(p.ok_or(FieldError::NotPrime(0))?),
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharTwoForbidden);
        }
        // Residues are multiplied in u128, which keeps any u64 modulus exact.
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Characteristic (0 for ℚ).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let r = (v as i128).rem_euclid(*p as i128) as u64;
                Scalar::Residue { value: r, modulus: *p }
            }
        }
    }

    /// The residue `v mod p`; for ℚ the integer `v`.
    pub fn from_u64(&self, v: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue { value: v % p, modulus: *p },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses `"a"` or `"a/b"`; over 𝔽_p the value is reduced mod p.
    pub fn parse(&self, text: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::ParseScalar { text: text.to_string(), field: *self };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(t).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.try_into().expect("residue fits in u64")
                };
                let n = Scalar::Residue { value: reduce(num), modulus: *p };
                let d = Scalar::Residue { value: reduce(den), modulus: *p };
                n.checked_div(&d)
            }
        }
    }

    /// All field elements in canonical order, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|p| (0..p).map(|v| self.from_u64(v)).collect())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Name(String),
    Prime { p: u64 },
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rationals => FieldRepr::Name("Q".into()).serialize(s),
            FieldSpec::Prime(p) => FieldRepr::Prime { p: *p }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match FieldRepr::deserialize(d)? {
            FieldRepr::Name(n) if n == "Q" => Ok(FieldSpec::Rationals),
            FieldRepr::Name(n) => Err(D::Error::custom(format!("unknown field {n:?}"))),
            FieldRepr::Prime { p } => FieldSpec::prime(p).map_err(D::Error::custom),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// Operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithResult {
    Value(Scalar),
    Bool(bool),
}

/// Dispatches one exact field operation. Unary operations ignore `b`.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<ArithResult, FieldError> {
    let rhs = || b.ok_or(FieldError::MissingOperand);
    Ok(match op {
        ArithOp::Add => ArithResult::Value(a.checked_add(rhs()?)?),
        ArithOp::Sub => ArithResult::Value(a.checked_sub(rhs()?)?),
        ArithOp::Mul => ArithResult::Value(a.checked_mul(rhs()?)?),
        ArithOp::Div => ArithResult::Value(a.checked_div(rhs()?)?),
        ArithOp::Neg => ArithResult::Value(-a),
        ArithOp::Inv => ArithResult::Value(a.inv()?),
        ArithOp::Eq => {
            let b = rhs()?;
            a.same_field(b)?;
            ArithResult::Bool(a == b)
        }
    })
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2) = a^(-1)
                let p = *modulus as u128;
                let (mut base, mut exp, mut acc) = (*value as u128, p - 2, 1u128);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Residue { value: acc as u64, modulus: *modulus }
            }
        })
    }
}

// Operator forms panic on mixed fields. Every container in this crate pins a
// single field at construction, so a mismatch here is a logic error.
impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Signed integer view of a scalar, used when printing defects: residues above
/// p/2 are shown negative.
pub fn signed_repr(s: &Scalar) -> String {
    match s {
        Scalar::Rational(_) => s.to_string(),
        Scalar::Residue { value, modulus } => {
            if *value > modulus / 2 {
                format!("-{}", modulus - value)
            } else {
                value.to_string()
            }
        }
    }
}
