//! Exact ground fields: the rationals and prime fields GF(p).
//!
//! Computations are generic over [`Field`], a field *context* that owns the
//! arithmetic (for GF(p) the context carries `p`). [`FieldSpec`] is the
//! runtime description used by file formats and the CLI, and [`Scalar`] is a
//! self-describing value that rejects mixed-field arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

/// Runtime description of a ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    /// GF(p), verifying primality by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + std::hash::Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// All elements, zero first, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p as u64),
        }
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc + a * b`
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(acc, &self.mul(a, b))
    }
}

/// The field of rational numbers with arbitrary-precision numerators and
/// denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn parse(&self, text: &str) -> Result<BigRational> {
        parse_rational(text).ok_or_else(|| Error::ParseScalar {
            text: text.to_string(),
            field: "Q".into(),
        })
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num = parse_signed_int(num)?;
    let den = match den {
        Some(d) => {
            // denominator must be a positive integer without sign
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                return None;
            }
            d
        }
        None => BigInt::one(),
    };
    Some(BigRational::new(num, den))
}

fn parse_signed_int(text: &str) -> Option<BigInt> {
    let digits = text
        .strip_prefix('-')
        .or_else(|| text.strip_prefix('+'))
        .unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(text.strip_prefix('+').unwrap_or(text)).ok()
}

/// The prime field GF(p); elements are residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        match FieldSpec::prime(p)? {
            FieldSpec::PrimeField(p) => Ok(PrimeField { p }),
            FieldSpec::Rationals => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let e = (*a as i64).extended_gcd(&(self.p as i64));
        Some(self.reduce(e.x))
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn parse(&self, text: &str) -> Result<u32> {
        let v = parse_signed_int(text.trim()).ok_or_else(|| Error::ParseScalar {
            text: text.to_string(),
            field: self.spec().to_string(),
        })?;
        let r = v.mod_floor(&BigInt::from(self.p));
        Ok(r.to_u32().expect("residue fits in u32"))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }
}

/// Arithmetic operations accepted by [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, p: u32 },
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn residue(value: i64, p: u32) -> Self {
        Scalar::Residue {
            value: value.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        match field {
            FieldSpec::Rationals => Rationals.parse(text).map(Scalar::Rational),
            FieldSpec::PrimeField(p) => PrimeField { p }
                .parse(text)
                .map(|value| Scalar::Residue { value, p }),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(self, other, ArithOp::Add)
    }
    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(self, other, ArithOp::Sub)
    }
    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(self, other, ArithOp::Mul)
    }
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        scalar_arith(self, other, ArithOp::Div)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Residue { p, .. } => Scalar::residue(1, *p),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", Rationals.format(r)),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Exact field operation between two scalars of the same field.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => {
            let f = Rationals;
            let r = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => f.div(x, y).ok_or(Error::DivisionByZero)?,
            };
            Ok(Scalar::Rational(r))
        }
        (Scalar::Residue { value: x, p }, Scalar::Residue { value: y, p: q }) if p == q => {
            let f = PrimeField { p: *p };
            let r = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => f.div(x, y).ok_or(Error::DivisionByZero)?,
            };
            Ok(Scalar::Residue { value: r, p: *p })
        }
        _ => Err(Error::FieldMismatch(
            a.field().to_string(),
            b.field().to_string(),
        )),
    }
}

/// Every element of a finite field, zero first.
pub fn enumerate_field(field: FieldSpec) -> Result<impl Iterator<Item = Scalar>> {
    match field {
        FieldSpec::Rationals => Err(Error::InfiniteField(field.to_string())),
        FieldSpec::PrimeField(p) => Ok((0..p).map(move |value| Scalar::Residue { value, p })),
    }
}

/// Convert a rational to a small integer when it is one.
pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let a = Scalar::residue(3, 5);
        let b = Scalar::residue(4, 5);
        assert_eq!(a.mul(&b).unwrap(), Scalar::residue(2, 5));

        let x = Scalar::rational(1, 3).unwrap();
        let y = Scalar::rational(1, 6).unwrap();
        assert_eq!(x.add(&y).unwrap(), Scalar::rational(1, 2).unwrap());

        let one = Scalar::residue(1, 5);
        let two = Scalar::residue(2, 5);
        assert_eq!(one.div(&two).unwrap(), Scalar::residue(3, 5));
    }

    #[test]
    fn mismatch_and_division_errors() {
        let a = Scalar::residue(1, 5);
        let b = Scalar::residue(1, 7);
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_, _))));
        let q = Scalar::rational(1, 2).unwrap();
        assert!(matches!(a.mul(&q), Err(Error::FieldMismatch(_, _))));
        assert_eq!(a.div(&Scalar::residue(0, 5)), Err(Error::DivisionByZero));
        assert_eq!(
            q.div(&Scalar::rational(0, 1).unwrap()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn enumeration() {
        let gf2: Vec<_> = enumerate_field(FieldSpec::PrimeField(2)).unwrap().collect();
        assert_eq!(gf2, vec![Scalar::residue(0, 2), Scalar::residue(1, 2)]);
        let gf3: Vec<_> = enumerate_field(FieldSpec::PrimeField(3)).unwrap().collect();
        assert_eq!(gf3.len(), 3);
        assert!(gf3[0].is_zero());
        assert!(matches!(
            enumerate_field(FieldSpec::Rationals),
            Err(Error::InfiniteField(_))
        ));
    }

    #[test]
    fn primality() {
        assert_eq!(FieldSpec::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(7), Ok(FieldSpec::PrimeField(7)));
        assert_eq!(
            FieldSpec::prime(2_147_483_647),
            Ok(FieldSpec::PrimeField(2_147_483_647))
        );
        assert!(matches!(
            FieldSpec::prime((1 << 31) + 11),
            Err(Error::PrimeTooLarge(_))
        ));
    }

    #[test]
    fn parsing() {
        let q = Rationals;
        assert_eq!(q.parse("-2/4").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(q.parse("+7").unwrap(), q.from_i64(7));
        assert!(q.parse("1/-2").is_err());
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        assert_eq!(q.format(&q.parse("6/4").unwrap()), "3/2");
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse("7").unwrap(), 2);
        assert_eq!(f.parse("-1").unwrap(), 4);
        assert!(f.parse("1/2").is_err());
    }

    #[test]
    fn fermat_exhaustive() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            for a in enumerate_field(FieldSpec::PrimeField(p)).unwrap() {
                assert_eq!(a.pow(p as u64), a);
            }
        }
    }

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13u32 {
            let ia = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ia), 1);
        }
        assert_eq!(f.inv(&0), None);
    }
}
