use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::text::parse_constant;
use super::{EuclideanDomain, Ring, RingInfo, RingKind};
use crate::Error;

/// The integers ℤ with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn info(&self) -> RingInfo {
        RingInfo {
            kind: RingKind::Integers,
            is_field: false,
            is_pid: true,
        }
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn from_rational(&self, r: &BigRational) -> Option<BigInt> {
        r.is_integer().then(|| r.to_integer())
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }

    fn divide_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<BigInt, Error> {
        let r = parse_constant(s)?;
        self.from_rational(&r)
            .ok_or_else(|| Error::Parse(format!("`{s}` is not an integer")))
    }

    fn to_rational(&self, a: &BigInt) -> Option<BigRational> {
        Some(BigRational::from_integer(a.clone()))
    }
}

impl EuclideanDomain for Integers {
    type Size = BigInt;

    fn size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }

    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // floor division keeps |r| < |b|
        a.div_mod_floor(b)
    }

    fn normal_unit(&self, a: &BigInt) -> BigInt {
        match a.sign() {
            Sign::Minus => -BigInt::one(),
            _ => BigInt::one(),
        }
    }
}
