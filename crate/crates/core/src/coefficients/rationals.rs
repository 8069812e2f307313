use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::text::{parse_constant, render_rational};
use super::{field_euclidean, Field, Ring, RingInfo, RingKind};
use crate::Error;

/// The rational numbers ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn info(&self) -> RingInfo {
        RingInfo {
            kind: RingKind::Rationals,
            is_field: true,
            is_pid: true,
        }
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn divide_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }

    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }

    fn parse(&self, s: &str) -> Result<BigRational, Error> {
        parse_constant(s)
    }

    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

field_euclidean!(Rationals);

impl Field for Rationals {}
