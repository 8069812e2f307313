use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::text::parse_constant;
use super::{field_euclidean, Field, Ring, RingInfo, RingKind};
use crate::Error;

/// The prime field 𝔽ₚ, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "{p} is not a prime below 2^32"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn reduce(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring for PrimeField {
    type Elem = u64;

    fn info(&self) -> RingInfo {
        RingInfo {
            kind: RingKind::IntegersModP(self.p),
            is_field: true,
            is_pid: true,
        }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce(n)
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn from_rational(&self, r: &BigRational) -> Option<u64> {
        let num = self.reduce(r.numer());
        let den = self.reduce(r.denom());
        self.inverse(&den).map(|d| self.mul(&num, &d))
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inverse(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^(p-2) by Fermat
        Some(self.pow(a, self.p - 2))
    }

    fn divide_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        self.inverse(b).map(|ib| self.mul(a, &ib))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<u64, Error> {
        let r = parse_constant(s)?;
        self.from_rational(&r)
            .ok_or_else(|| Error::Parse(format!("`{s}` has a denominator divisible by {}", self.p)))
    }
}

field_euclidean!(PrimeField);

impl Field for PrimeField {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn arithmetic_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.mul(&6, &6), 1);
    }
}
