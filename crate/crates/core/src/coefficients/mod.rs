//! Exact coefficient arithmetic.
//!
//! Rings are values (`Integers`, `PrimeField { p }`, `LaurentRing<K>`, ...)
//! that own whatever context their elements need. Elements are plain data
//! and every operation goes through the ring object, so the same generic
//! code runs over ℤ, 𝔽ₚ, ℚ[q^±] or a cyclotomic field.

mod cyclotomic;
mod integers;
mod laurent;
mod laurent2;
pub mod linalg;
mod matrix;
mod prime_field;
mod rationals;
mod snf;
mod text;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use cyclotomic::{
    cyclotomic, cyclotomic_factorization, divisors, q_binomial, q_factorial, q_integer,
    CyclotomicFactorization, CyclotomicField, IntPoly,
};
pub use integers::Integers;
pub use laurent::{Laurent, LaurentRing};
pub use laurent2::{Laurent2, Laurent2Ring};
pub use matrix::Matrix;
pub use prime_field::PrimeField;
pub use rationals::Rationals;
pub use snf::{elementary_divisors, smith_normal_form, SmithForm};
pub use text::{parse_terms, ParsedTerm};

use crate::Error;

/// What kind of ring a value is, independent of its element type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    IntegersModP(u64),
    LaurentPoly { base: Box<RingKind>, variables: u8 },
    CyclotomicQuotient(u64),
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::IntegersModP(p) => write!(f, "F{p}"),
            RingKind::LaurentPoly { base, variables: 1 } => write!(f, "{base}[q]"),
            RingKind::LaurentPoly { base, .. } => write!(f, "{base}[q1,q2]"),
            RingKind::CyclotomicQuotient(h) => write!(f, "Q[q]/phi{h}"),
        }
    }
}

/// Ring metadata: the kind plus the two structural flags the algorithms care about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingInfo {
    pub kind: RingKind,
    pub is_field: bool,
    pub is_pid: bool,
}

/// A commutative ring with identity whose elements are exact values.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn info(&self) -> RingInfo;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Image of a rational number, if the denominator is invertible.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Inverse of `a` when `a` is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// `a / b` when `b` divides `a` exactly.
    fn divide_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Canonical text form, see [`text`](self) for the grammar.
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, Error>;

    /// The element as a rational number, for rings embedded in ℚ.
    fn to_rational(&self, _a: &Self::Elem) -> Option<BigRational> {
        None
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A Euclidean domain (hence a PID): the rings Smith normal form runs over.
pub trait EuclideanDomain: Ring {
    type Size: Ord + Clone + fmt::Debug;

    /// Euclidean size of a nonzero element.
    fn size(&self, a: &Self::Elem) -> Self::Size;

    /// `(quotient, remainder)` with `remainder == 0` or `size(remainder) < size(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` such that `u * a` is the canonical associate of `a`.
    fn normal_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// Associate whose lowest-order coefficient is one. Only differs from
    /// [`normalize`](Self::normalize) for polynomial rings.
    fn normalize_low(&self, a: &Self::Elem) -> Self::Elem {
        self.normalize(a)
    }

    /// Factorization into cyclotomic polynomials, for ℚ[q^±].
    fn cyclotomic_factors(&self, _a: &Self::Elem, _bound: u64) -> Option<CyclotomicFactorization> {
        None
    }

    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return a.clone();
        }
        self.mul(&self.normal_unit(a), a)
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }

    /// Normalized greatest common divisor.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut x = a.clone();
        let mut y = b.clone();
        while !self.is_zero(&y) {
            let r = self.div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        self.normalize(&x)
    }

    /// Normalized least common multiple.
    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        let q = self.div_rem(a, &g).0;
        self.normalize(&self.mul(&q, b))
    }
}

/// A field: every nonzero element is invertible.
pub trait Field: EuclideanDomain {
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.inverse(a).expect("inverse of zero in a field")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Blanket Euclidean structure shared by all fields.
macro_rules! field_euclidean {
    ($t:ty) => {
        impl $crate::coefficients::EuclideanDomain for $t {
            type Size = u8;

            fn size(&self, _a: &Self::Elem) -> u8 {
                0
            }

            fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
                use $crate::coefficients::Field;
                (self.div(a, b), self.zero())
            }

            fn normal_unit(&self, a: &Self::Elem) -> Self::Elem {
                use $crate::coefficients::Field;
                self.inv(a)
            }
        }
    };
}
pub(crate) use field_euclidean;

/// `(gcd, lcm)` of two elements, both normalized.
pub fn poly_gcd_lcm<R: EuclideanDomain>(ring: &R, a: &R::Elem, b: &R::Elem) -> (R::Elem, R::Elem) {
    (ring.gcd(a, b), ring.lcm(a, b))
}

/// `(rank, nullity)` of a matrix over a field.
pub fn rank_nullity<F: Field>(field: &F, a: &Matrix<F::Elem>) -> (usize, usize) {
    let rank = linalg::rank(field, a);
    (rank, a.cols() - rank)
}
